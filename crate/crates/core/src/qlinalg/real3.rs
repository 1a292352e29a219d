use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::matrix::{pauli, ComplexMatrix, C64};

pub type Vec3 = [f64; 3];

/// Real 3×3 matrix, row-major. Holds the correlation matrix T and rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub fn zeros() -> Self {
        Self([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([1.0, 1.0, 1.0])
    }

    pub fn diag(d: Vec3) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_columns(cols: [Vec3; 3]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m.0[i][j] = col[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[j][i] = self.0[i][j];
            }
        }
        m
    }

    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let a = &self.0;
        [
            a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
            a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
            a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    m = m.max(self.0[i][j].abs());
                }
            }
        }
        m
    }

    pub fn diagonal(&self) -> Vec3 {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi.
    /// Returns ascending eigenvalues and the eigenvector matrix (columns).
    pub fn symmetric_eig(&self) -> (Vec3, RealMatrix3) {
        let mut a = self.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let avg = 0.5 * (a[i][j] + a[j][i]);
                a[i][j] = avg;
                a[j][i] = avg;
            }
        }
        let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let scale = self.max_abs().max(1.0);
        for _ in 0..64 {
            let off = (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2)).sqrt();
            if off < 1e-15 * scale {
                break;
            }
            for p in 0..3 {
                for q in (p + 1)..3 {
                    if a[p][q] == 0.0 {
                        continue;
                    }
                    let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // a ← Rᵀ a R with R_pp = R_qq = c, R_pq = s, R_qp = -s
                    for k in 0..3 {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..3 {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    for row in v.iter_mut() {
                        let vp = row[p];
                        let vq = row[q];
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
        let vals = idx.map(|k| a[k][k]);
        let vm = RealMatrix3(v);
        let vecs = RealMatrix3::from_columns(idx.map(|k| vm.column(k)));
        (vals, vecs)
    }
}

impl Mul for RealMatrix3 {
    type Output = RealMatrix3;

    fn mul(self, rhs: RealMatrix3) -> RealMatrix3 {
        let mut m = RealMatrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl Add for RealMatrix3 {
    type Output = RealMatrix3;

    fn add(self, rhs: RealMatrix3) -> RealMatrix3 {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for RealMatrix3 {
    type Output = RealMatrix3;

    fn sub(self, rhs: RealMatrix3) -> RealMatrix3 {
        self + (-rhs)
    }
}

impl Neg for RealMatrix3 {
    type Output = RealMatrix3;

    fn neg(self) -> RealMatrix3 {
        RealMatrix3(self.0.map(|row| row.map(|x| -x)))
    }
}

/// Adjoint action of a 2×2 unitary on the Pauli vector:
/// u σ_j u† = Σ_i R_ij σ_i.
pub fn rotation_of(u: &ComplexMatrix) -> RealMatrix3 {
    let mut r = RealMatrix3::zeros();
    for j in 0..3 {
        let rotated = u.conjugate(&pauli(j));
        for i in 0..3 {
            r.0[i][j] = 0.5 * rotated.trace_product(&pauli(i)).re;
        }
    }
    r
}

/// SU(2) preimage of a proper rotation under the double cover; either sign
/// of the lift maps to the same rotation.
pub fn su2_lift(r: &RealMatrix3) -> ComplexMatrix {
    let q = quaternion_from_rotation(r);
    // exp(-iθ n·σ/2) = q0 I - i (q1 σx + q2 σy + q3 σz)
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::new2(
        C64::new(q[0], 0.0) - i * q[3],
        -i * q[1] - C64::new(q[2], 0.0),
        -i * q[1] + C64::new(q[2], 0.0),
        C64::new(q[0], 0.0) + i * q[3],
    )
}

/// Unit quaternion (w, x, y, z) of a proper rotation, largest-component branch.
fn quaternion_from_rotation(r: &RealMatrix3) -> [f64; 4] {
    let m = &r.0;
    let trace = m[0][0] + m[1][1] + m[2][2];
    let q = if trace > m[0][0].max(m[1][1]).max(m[2][2]) {
        let s = (1.0 + trace).max(0.0).sqrt() * 2.0;
        [
            0.25 * s,
            (m[2][1] - m[1][2]) / s,
            (m[0][2] - m[2][0]) / s,
            (m[1][0] - m[0][1]) / s,
        ]
    } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).max(0.0).sqrt() * 2.0;
        [
            (m[2][1] - m[1][2]) / s,
            0.25 * s,
            (m[0][1] + m[1][0]) / s,
            (m[0][2] + m[2][0]) / s,
        ]
    } else if m[1][1] >= m[2][2] {
        let s = (1.0 - m[0][0] + m[1][1] - m[2][2]).max(0.0).sqrt() * 2.0;
        [
            (m[0][2] - m[2][0]) / s,
            (m[0][1] + m[1][0]) / s,
            0.25 * s,
            (m[1][2] + m[2][1]) / s,
        ]
    } else {
        let s = (1.0 - m[0][0] - m[1][1] + m[2][2]).max(0.0).sqrt() * 2.0;
        [
            (m[1][0] - m[0][1]) / s,
            (m[0][2] + m[2][0]) / s,
            (m[1][2] + m[2][1]) / s,
            0.25 * s,
        ]
    };
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.map(|x| x / n)
}
