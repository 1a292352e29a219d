use super::eig::herm_eig;
use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use super::real3::{RealMatrix3, Vec3};

/// Below this a singular value is treated as zero when completing a basis.
const TINY: f64 = 1e-300;

#[derive(Debug, Clone, Copy)]
pub struct Svd2 {
    pub u: ComplexMatrix,
    /// Descending, nonnegative.
    pub s: [f64; 2],
    pub v: ComplexMatrix,
}

impl Svd2 {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::real_diag(&self.s).expect("dim 2");
        self.u * d * self.v.dagger()
    }
}

/// SVD of a complex 2×2 matrix: a = u · diag(s) · v†.
pub fn svd2c(a: &ComplexMatrix) -> Svd2 {
    assert_eq!(a.dim(), 2, "svd2c takes a 2x2 matrix");
    let gram = (a.dagger() * *a).hermitian_part();
    let eig = herm_eig(&gram).expect("Gram matrix is Hermitian");
    // descending
    let v1 = eig.vector(1);
    let v0 = eig.vector(0);
    let mut v = ComplexMatrix::identity2();
    v.set_column(0, &v1);
    v.set_column(1, &v0);

    let av1 = a.apply(&v1);
    let s1 = super::matrix::vec_norm(&av1);
    let u1: Vec<C64> = if s1 > TINY {
        av1.iter().map(|z| z / s1).collect()
    } else {
        vec![ONE, ZERO]
    };
    let mut u2 = vec![-u1[1].conj(), u1[0].conj()];
    let av0 = a.apply(&v0);
    let proj = super::matrix::inner(&u2, &av0);
    let s2 = proj.norm();
    if s2 > TINY {
        let phase = proj / s2;
        u2 = u2.iter().map(|z| z * phase).collect();
    }
    let mut u = ComplexMatrix::identity2();
    u.set_column(0, &u1);
    u.set_column(1, &u2);
    Svd2 { u, s: [s1, s2], v }
}

#[derive(Debug, Clone, Copy)]
pub struct Svd3 {
    pub o1: RealMatrix3,
    /// Sorted by descending magnitude; only the last entry may be negative.
    pub d: Vec3,
    pub o2: RealMatrix3,
}

impl Svd3 {
    pub fn reconstruct(&self) -> RealMatrix3 {
        self.o1 * RealMatrix3::diag(self.d) * self.o2.transpose()
    }
}

/// Real 3×3 SVD with both factors in SO(3): t = o1 · diag(d) · o2ᵀ.
///
/// Any reflection is absorbed as a sign on the smallest-magnitude entry of `d`.
pub fn svd3r(t: &RealMatrix3) -> Svd3 {
    let gram = t.transpose() * *t;
    let (vals, vecs) = gram.symmetric_eig();
    // eigenvalues ascending; we want descending
    let order = [2usize, 1, 0];
    let v_cols: [Vec3; 3] = order.map(|k| vecs.column(k));
    let _ = vals;

    let tv: [Vec3; 3] = v_cols.map(|v| t.apply(v));

    let s1 = norm3(tv[0]);
    let u1 = if s1 > TINY {
        scale3(tv[0], 1.0 / s1)
    } else {
        [1.0, 0.0, 0.0]
    };

    let resid = sub3(tv[1], scale3(u1, dot3(u1, tv[1])));
    let s2 = norm3(resid);
    let u2 = if s2 > TINY {
        scale3(resid, 1.0 / s2)
    } else {
        any_orthogonal(u1)
    };

    let u3 = cross3(u1, u2);
    let mut d3 = dot3(u3, tv[2]);
    let mut v3 = v_cols[2];

    let mut o2 = RealMatrix3::from_columns([v_cols[0], v_cols[1], v3]);
    if o2.det() < 0.0 {
        v3 = scale3(v3, -1.0);
        d3 = -d3;
        o2 = RealMatrix3::from_columns([v_cols[0], v_cols[1], v3]);
    }
    let o1 = RealMatrix3::from_columns([u1, u2, u3]);
    Svd3 {
        o1,
        d: [s1, s2, d3],
        o2,
    }
}

fn any_orthogonal(u: Vec3) -> Vec3 {
    let pick = if u[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let w = sub3(pick, scale3(u, dot3(u, pick)));
    scale3(w, 1.0 / norm3(w))
}

pub(crate) fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn scale3(a: Vec3, s: f64) -> Vec3 {
    a.map(|x| x * s)
}

pub(crate) fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::pauli;
    use std::f64::consts::FRAC_1_SQRT_2;

    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self) -> f64 {
            self.0 = self
                .0
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (self.0 >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        }
    }

    fn random_rotation(rng: &mut Lcg) -> RealMatrix3 {
        // Gram-Schmidt on random columns, then fix orientation.
        let a = [rng.next(), rng.next(), rng.next()];
        let b = [rng.next(), rng.next(), rng.next()];
        let e1 = scale3(a, 1.0 / norm3(a));
        let b = sub3(b, scale3(e1, dot3(e1, b)));
        let e2 = scale3(b, 1.0 / norm3(b));
        RealMatrix3::from_columns([e1, e2, cross3(e1, e2)])
    }

    fn is_rotation(o: &RealMatrix3) -> bool {
        (o.transpose() * *o - RealMatrix3::identity()).max_abs() < 1e-12 && (o.det() - 1.0).abs() < 1e-12
    }

    #[test]
    fn svd2c_simple() {
        let s = svd2c(&ComplexMatrix::identity2());
        assert_eq!(s.s, [1.0, 1.0]);
        let d = ComplexMatrix::real_diag(&[0.9, 0.1]).unwrap();
        let s = svd2c(&d);
        assert!((s.s[0] - 0.9).abs() < 1e-15 && (s.s[1] - 0.1).abs() < 1e-15);
        assert!(s.reconstruct().distance(&d) < 1e-12);
    }

    #[test]
    fn svd2c_singlet_coefficients() {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let m = ComplexMatrix::new2(ZERO, h, -h, ZERO);
        let s = svd2c(&m);
        assert!((s.s[0] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((s.s[1] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!(s.reconstruct().distance(&m) < 1e-12);
    }

    #[test]
    fn svd2c_random_reconstruction() {
        let mut rng = Lcg(7);
        for _ in 0..1000 {
            let m = ComplexMatrix::new2(
                C64::new(rng.next(), rng.next()),
                C64::new(rng.next(), rng.next()),
                C64::new(rng.next(), rng.next()),
                C64::new(rng.next(), rng.next()),
            );
            let s = svd2c(&m);
            assert!(s.reconstruct().distance(&m) < 1e-11);
            assert!(s.s[0] >= s.s[1] && s.s[1] >= 0.0);
            assert!((s.u.dagger() * s.u).distance(&ComplexMatrix::identity2()) < 1e-12);
            assert!((s.v.dagger() * s.v).distance(&ComplexMatrix::identity2()) < 1e-12);
        }
    }

    #[test]
    fn svd2c_rank_one() {
        let m = pauli(2) + ComplexMatrix::identity2();
        let s = svd2c(&m);
        assert!((s.s[0] - 2.0).abs() < 1e-14);
        assert!(s.s[1].abs() < 1e-14);
        assert!(s.reconstruct().distance(&m) < 1e-12);
    }

    #[test]
    fn svd3r_identity_and_inversion() {
        let s = svd3r(&RealMatrix3::identity());
        assert_eq!(s.d.map(f64::abs), [1.0, 1.0, 1.0]);
        assert!(is_rotation(&s.o1) && is_rotation(&s.o2));

        let neg = RealMatrix3::diag([-1.0, -1.0, -1.0]);
        let s = svd3r(&neg);
        assert!(is_rotation(&s.o1) && is_rotation(&s.o2));
        assert!(s.d.iter().all(|x| (x.abs() - 1.0).abs() < 1e-12));
        assert!(s.d.iter().product::<f64>() < 0.0);
        assert!((s.reconstruct() - neg).max_abs() < 1e-12);
    }

    #[test]
    fn svd3r_recovers_rotated_diagonal() {
        let mut rng = Lcg(99);
        for _ in 0..100 {
            let r1 = random_rotation(&mut rng);
            let r2 = random_rotation(&mut rng);
            let t = r1 * RealMatrix3::diag([0.9, 0.5, 0.1]) * r2.transpose();
            let s = svd3r(&t);
            let mags = s.d.map(f64::abs);
            assert!((mags[0] - 0.9).abs() < 1e-12);
            assert!((mags[1] - 0.5).abs() < 1e-12);
            assert!((mags[2] - 0.1).abs() < 1e-12);
            assert!((s.reconstruct() - t).max_abs() < 1e-12);
        }
    }

    #[test]
    fn svd3r_random_reconstruction() {
        let mut rng = Lcg(3);
        for _ in 0..1000 {
            let mut t = RealMatrix3::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    t.0[i][j] = rng.next();
                }
            }
            let s = svd3r(&t);
            assert!((s.reconstruct() - t).max_abs() < 1e-11);
            assert!(is_rotation(&s.o1) && is_rotation(&s.o2));
            assert!(s.d[0] >= s.d[1].abs() - 1e-15 && s.d[1] >= s.d[2].abs() - 1e-15);
            assert!(s.d[0] >= 0.0 && s.d[1] >= 0.0);
            // sign of the determinant lands on the last entry
            assert_eq!(t.det() < 0.0, s.d[2] < 0.0);
        }
    }

    #[test]
    fn svd3r_rank_deficient() {
        let t = RealMatrix3::diag([0.0, 0.0, 1.0]);
        let s = svd3r(&t);
        assert!((s.reconstruct() - t).max_abs() < 1e-12);
        assert!((s.d[0] - 1.0).abs() < 1e-15);
        let zero = svd3r(&RealMatrix3::zeros());
        assert_eq!(zero.d, [0.0, 0.0, 0.0]);
        assert!(is_rotation(&zero.o1) && is_rotation(&zero.o2));
    }
}
