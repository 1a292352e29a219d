use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Maximum |a_ij - conj(a_ji)| accepted by [`herm_eig`].
pub const TOL_HERM: f64 = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-14;
/// Minimum eigenvalue accepted by [`sqrt_psd`] before it is clamped to zero.
pub const TOL_PSD: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct HermEig {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column k is the normalized eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// Σ λ_k |v_k><v_k|
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }

    /// Σ g(λ_k) |v_k><v_k|
    pub fn map_values(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros_unchecked(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            let w = g(lambda);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn herm_eig(a: &ComplexMatrix) -> Result<HermEig> {
    let asym = a.max_asymmetry();
    if asym > TOL_HERM {
        return Err(Error::NotHermitian {
            asymmetry: asym,
            tolerance: TOL_HERM,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n)?;
    let scale = m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < JACOBI_OFFDIAG_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let mut vectors = ComplexMatrix::zeros_unchecked(n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok(HermEig {
        values: order.iter().map(|&k| diag[k]).collect(),
        vectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating m[p][q]: m ← J† m J, v ← v J.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = m[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    // Phase D = diag(1, .., e^{-iφ} at q, ..) turns m[p][q] into |g|,
    // then a real rotation finishes the job.
    let phase = g / g_abs;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.dim();
    let mut j = ComplexMatrix::identity(n).expect("supported dimension");
    j[(p, p)] = ONE * c;
    j[(q, q)] = phase.conj() * c;
    j[(p, q)] = ONE * s;
    j[(q, p)] = -phase.conj() * s;
    // Columns of J: e_p ↦ c e_p - s e^{-iφ} e_q, e_q ↦ s e_p + c e^{-iφ} e_q.

    *m = j.dagger() * *m * j;
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    for i in 0..n {
        let d = m[(i, i)].re;
        m[(i, i)] = C64::new(d, 0.0);
    }
    *v = *v * j;
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in [-TOL_PSD, 0) are clamped to zero.
pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(a)?;
    if eig.min_value() < -TOL_PSD {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min_value(),
            tolerance: TOL_PSD,
        });
    }
    Ok(eig.map_values(|x| x.max(0.0).sqrt()).hermitian_part())
}
