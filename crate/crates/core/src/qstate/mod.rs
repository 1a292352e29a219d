//! Two-qubit states: validation, canonical constructors, partial transposition,
//! local operations and the singlet fraction.

mod file;
mod fraction;

pub use file::{parse_state_file, write_state_file, StateFile};
pub use fraction::{singlet_fraction, SingletFractionResult};

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::qlinalg::{herm_eig, kron2, vec_norm, ComplexMatrix, C64, ONE, ZERO};
use crate::rng;

/// Hermiticity tolerance for a valid state.
pub const TOL_STATE_HERM: f64 = 1e-12;
/// Trace tolerance for a valid state.
pub const TOL_STATE_TRACE: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a valid state.
pub const TOL_STATE_PSD: f64 = 1e-10;
/// Norm tolerance for pure state vectors.
pub const TOL_NORM: f64 = 1e-12;
/// Local operations with a smaller success weight are rejected.
pub const MIN_WEIGHT: f64 = 1e-14;

/// A validated two-qubit density matrix (Hermitian, unit trace, PSD).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Normalizes a positive operator produced by our own arithmetic.
    /// Returns the state and the trace that was divided out.
    pub(crate) fn from_unnormalized(m: ComplexMatrix) -> Result<(Self, f64)> {
        let h = m.hermitian_part();
        let weight = h.trace().re;
        if !(weight > MIN_WEIGHT) {
            return Err(Error::ZeroWeight { weight });
        }
        Ok((Self { mat: h.scale(1.0 / weight) }, weight))
    }

    /// Wraps a matrix known to be a state up to rounding.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self::from_unnormalized(m).expect("trusted state has positive trace").0
    }

    pub fn maximally_mixed() -> Self {
        Self {
            mat: ComplexMatrix::identity4().scale(0.25),
        }
    }

    pub fn pure(psi: &PureStateVector) -> Self {
        Self::from_trusted(ComplexMatrix::projector(psi.amplitudes()).expect("dim 4"))
    }

    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        for m in [a, b] {
            if m.dim() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, got: m.dim() });
            }
        }
        make_density(kron2(a, b))
    }

    /// <ψ|ρ|ψ>
    pub fn overlap(&self, psi: &PureStateVector) -> f64 {
        self.mat.expectation(psi.amplitudes())
    }

    /// Overlap with the singlet Ψ−.
    pub fn singlet_overlap(&self) -> f64 {
        self.overlap(&bell_state(Bell::PsiMinus))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        herm_eig(&self.mat).expect("state is Hermitian").min_value()
    }

    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        self.mat.distance(&other.mat)
    }

    /// Reduced state of party A (`party == 0`) or B.
    pub fn reduced(&self, party: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2).expect("dim 2");
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..2)
                    .map(|k| {
                        if party == 0 {
                            self.mat[(2 * i + k, 2 * j + k)]
                        } else {
                            self.mat[(2 * k + i, 2 * k + j)]
                        }
                    })
                    .sum();
            }
        }
        out
    }

    /// (A ⊗ B) ρ (A ⊗ B)† for unitary A, B; skips the weight bookkeeping.
    pub fn rotate_local(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> DensityMatrix {
        Self::from_trusted(kron2(a, b).conjugate(&self.mat))
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(self)
    }
}

/// Validates a 4×4 matrix as a density matrix; nothing is renormalized.
pub fn make_density(mat: ComplexMatrix) -> Result<DensityMatrix> {
    check_shape(&mat)?;
    let asym = mat.max_asymmetry();
    if asym > TOL_STATE_HERM {
        return Err(Error::NotHermitian { asymmetry: asym, tolerance: TOL_STATE_HERM });
    }
    let tr = mat.trace().re;
    if (tr - 1.0).abs() > TOL_STATE_TRACE {
        return Err(Error::NotUnitTrace { trace: tr, tolerance: TOL_STATE_TRACE });
    }
    let h = mat.hermitian_part();
    let min = herm_eig(&h)?.min_value();
    if min < -TOL_STATE_PSD {
        return Err(Error::NotPositive { min_eigenvalue: min, tolerance: TOL_STATE_PSD });
    }
    Ok(DensityMatrix { mat: h })
}

/// Like [`make_density`] but clamps eigenvalues in `[-1e-10, 0)` to zero and
/// renormalizes the trace. Larger violations are still rejected.
pub fn make_density_repaired(mat: ComplexMatrix) -> Result<DensityMatrix> {
    check_shape(&mat)?;
    let asym = mat.max_asymmetry();
    if asym > TOL_STATE_HERM {
        return Err(Error::NotHermitian { asymmetry: asym, tolerance: TOL_STATE_HERM });
    }
    let eig = herm_eig(&mat.hermitian_part())?;
    if eig.min_value() < -TOL_STATE_PSD {
        return Err(Error::NotPositive {
            min_eigenvalue: eig.min_value(),
            tolerance: TOL_STATE_PSD,
        });
    }
    let clamped = eig.map_values(|x| x.max(0.0));
    let tr = clamped.trace().re;
    if !(tr > MIN_WEIGHT) {
        return Err(Error::NotUnitTrace { trace: tr, tolerance: TOL_STATE_TRACE });
    }
    Ok(DensityMatrix { mat: clamped.hermitian_part().scale(1.0 / tr) })
}

/// Nearest-state projection used after noisy estimation: every negative
/// eigenvalue of the Hermitian part is set to zero, then the trace is
/// renormalized.
pub fn project_to_state(mat: &ComplexMatrix) -> Result<DensityMatrix> {
    check_shape(mat)?;
    let eig = herm_eig(&mat.hermitian_part())?;
    let clamped = eig.map_values(|x| x.max(0.0));
    let (state, _) = DensityMatrix::from_unnormalized(clamped)?;
    Ok(state)
}

fn check_shape(mat: &ComplexMatrix) -> Result<()> {
    if mat.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: mat.dim() });
    }
    if !mat.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// A normalized two-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureStateVector {
    amp: [C64; 4],
}

impl PureStateVector {
    pub fn new(amp: [C64; 4]) -> Result<Self> {
        let n = vec_norm(&amp);
        if (n - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { amp })
    }

    pub fn normalized(amp: [C64; 4]) -> Result<Self> {
        let n = vec_norm(&amp);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { amp: amp.map(|z| z / n) })
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amp
    }

    /// M[i][j] = amplitude of e_i ⊗ e_j.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::new2(self.amp[0], self.amp[1], self.amp[2], self.amp[3])
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Vec<C64> {
        op.apply(&self.amp)
    }

    /// |<self|other>|
    pub fn fidelity_with(&self, other: &PureStateVector) -> f64 {
        crate::qlinalg::inner(&self.amp, &other.amp).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];
}

pub fn bell_state(which: Bell) -> PureStateVector {
    let h = ONE * FRAC_1_SQRT_2;
    let amp = match which {
        Bell::PhiPlus => [h, ZERO, ZERO, h],
        Bell::PhiMinus => [h, ZERO, ZERO, -h],
        Bell::PsiPlus => [ZERO, h, h, ZERO],
        Bell::PsiMinus => [ZERO, h, -h, ZERO],
    };
    PureStateVector { amp }
}

/// The singlet projector P₀.
pub fn singlet_projector() -> ComplexMatrix {
    ComplexMatrix::projector(bell_state(Bell::PsiMinus).amplitudes()).expect("dim 4")
}

/// f·P₀ + (1−f)(I−P₀)/3
pub fn werner_state(f: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidParameter { name: "f", value: f, reason: "must lie in [0, 1]" });
    }
    let p0 = singlet_projector();
    let rest = (ComplexMatrix::identity4() - p0).scale((1.0 - f) / 3.0);
    Ok(DensityMatrix::from_trusted(p0.scale(f) + rest))
}

/// p|ψ₁><ψ₁| + (1−p)|ψ₂><ψ₂| with ψ₁ = c|00> + d|11>, ψ₂ = c|01> + d|10>.
pub fn eq10_state(c: f64, d: f64, p: f64) -> Result<DensityMatrix> {
    check_cd(c, d)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter { name: "p", value: p, reason: "must lie in [0, 1]" });
    }
    let psi1 = [ONE * c, ZERO, ZERO, ONE * d];
    let psi2 = [ZERO, ONE * c, ONE * d, ZERO];
    let m = ComplexMatrix::projector(&psi1)?.scale(p) + ComplexMatrix::projector(&psi2)?.scale(1.0 - p);
    Ok(DensityMatrix::from_trusted(m))
}

pub(crate) fn check_cd(c: f64, d: f64) -> Result<()> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter { name: "c", value: c, reason: "must be positive" });
    }
    if !(d > 0.0) {
        return Err(Error::InvalidParameter { name: "d", value: d, reason: "must be positive" });
    }
    let norm = c * c + d * d;
    if (norm - 1.0).abs() > TOL_NORM {
        return Err(Error::InvalidParameter {
            name: "c^2 + d^2",
            value: norm,
            reason: "must equal 1",
        });
    }
    Ok(())
}

fn haar_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = vec_norm(&v);
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

fn dirichlet_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Haar-random pure state on C²⊗C².
pub fn random_pure(seed: u64) -> PureStateVector {
    let mut rng = rng::seeded(seed);
    let v = haar_vector(&mut rng, 4);
    PureStateVector::normalized([v[0], v[1], v[2], v[3]]).expect("nonzero vector")
}

/// Mixture of `terms` Haar-random pure states with flat Dirichlet weights.
pub fn random_mixed(seed: u64, terms: usize) -> Result<DensityMatrix> {
    if terms < 1 {
        return Err(Error::InvalidParameter {
            name: "rank_pure_terms",
            value: terms as f64,
            reason: "must be at least 1",
        });
    }
    let mut rng = rng::seeded(seed);
    let weights = dirichlet_weights(&mut rng, terms);
    let mut acc = ComplexMatrix::zeros(4)?;
    for w in weights {
        let v = haar_vector(&mut rng, 4);
        acc = acc + ComplexMatrix::projector(&v)?.scale(w);
    }
    Ok(DensityMatrix::from_trusted(acc))
}

/// Mixture of `terms` random pure product states with flat Dirichlet weights.
pub fn random_separable(seed: u64, terms: usize) -> Result<DensityMatrix> {
    if terms < 1 {
        return Err(Error::InvalidParameter {
            name: "terms",
            value: terms as f64,
            reason: "must be at least 1",
        });
    }
    let mut rng = rng::seeded(seed);
    let weights = dirichlet_weights(&mut rng, terms);
    let mut acc = ComplexMatrix::zeros(4)?;
    for w in weights {
        let a = ComplexMatrix::projector(&haar_vector(&mut rng, 2))?;
        let b = ComplexMatrix::projector(&haar_vector(&mut rng, 2))?;
        acc = acc + kron2(&a, &b).scale(w);
    }
    Ok(DensityMatrix::from_trusted(acc))
}

/// Transpose on party B: (ρ^T2)_{(ij),(kl)} = ρ_{(il),(kj)}.
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    partial_transpose_matrix(rho.matrix())
}

pub fn partial_transpose_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = *m;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + j, 2 * k + l)] = m[(2 * i + l, 2 * k + j)];
                }
            }
        }
    }
    out
}

/// Applies A ⊗ B and renormalizes. `weight` is the success probability
/// Tr((A⊗B) ρ (A⊗B)†).
pub fn apply_local(rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(DensityMatrix, f64)> {
    for m in [a, b] {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: m.dim() });
        }
    }
    let k = kron2(a, b);
    DensityMatrix::from_unnormalized(k.conjugate(rho.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{pauli, sigma_y, sigma_z};
    use proptest::prelude::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn make_density_accepts_valid_states() {
        assert!(make_density(ComplexMatrix::identity4().scale(0.25)).is_ok());
        assert!(make_density(singlet_projector()).is_ok());
    }

    #[test]
    fn make_density_error_taxonomy() {
        let m = ComplexMatrix::real_diag(&[0.6, 0.6, -0.1, -0.1]).unwrap();
        assert!(matches!(make_density(m), Err(Error::NotPositive { .. })));

        let m = ComplexMatrix::real_diag(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(matches!(make_density(m), Err(Error::NotUnitTrace { .. })));

        let mut m = ComplexMatrix::identity4().scale(0.25);
        m[(0, 3)] = c(0.1);
        assert!(matches!(make_density(m), Err(Error::NotHermitian { .. })));

        let m = ComplexMatrix::identity2().scale(0.5);
        assert!(matches!(make_density(m), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trace_is_not_silently_renormalized() {
        let m = ComplexMatrix::identity4().scale(0.25 + 1e-9);
        assert!(matches!(make_density(m), Err(Error::NotUnitTrace { .. })));
    }

    #[test]
    fn repair_clamps_only_tiny_negatives() {
        let m = ComplexMatrix::real_diag(&[0.5, 0.5 + 5e-11, -5e-11, 0.0]).unwrap();
        assert!(make_density(m).is_ok());
        let r = make_density_repaired(m).unwrap();
        assert!(r.min_eigenvalue() >= 0.0);
        assert!((r.matrix().trace().re - 1.0).abs() < 1e-15);

        let bad = ComplexMatrix::real_diag(&[0.6, 0.6, -0.2, 0.0]).unwrap();
        assert!(matches!(make_density_repaired(bad), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn bell_states() {
        let h = FRAC_1_SQRT_2;
        assert_eq!(bell_state(Bell::PhiPlus).amplitudes(), &[c(h), ZERO, ZERO, c(h)]);
        assert_eq!(bell_state(Bell::PsiMinus).amplitudes(), &[ZERO, c(h), c(-h), ZERO]);
        for a in Bell::ALL {
            for b in Bell::ALL {
                let ov = bell_state(a).fidelity_with(&bell_state(b));
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ov - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn werner_special_points() {
        let w1 = werner_state(1.0).unwrap();
        assert!(w1.matrix().distance(&singlet_projector()) < 1e-15);
        let wq = werner_state(0.25).unwrap();
        assert!(wq.distance(&DensityMatrix::maximally_mixed()) < 1e-15);
        let pt = partial_transpose(&werner_state(0.75).unwrap());
        let min = herm_eig(&pt).unwrap().min_value();
        assert!((min + 0.25).abs() < 1e-12);
        assert!(werner_state(1.5).is_err());
        assert!(werner_state(-0.1).is_err());
    }

    #[test]
    fn eq10_cases() {
        let h = FRAC_1_SQRT_2;
        let s = eq10_state(h, h, 1.0).unwrap();
        let phi = DensityMatrix::pure(&bell_state(Bell::PhiPlus));
        assert!(s.distance(&phi) < 1e-15);
        assert!(eq10_state(0.9, 0.1, 0.5).is_err());
        assert!(eq10_state(h, h, 1.2).is_err());
        assert!(eq10_state(-h, h, 0.2).is_err());
    }

    #[test]
    fn eq10_inseparable_off_half() {
        // Block {00,11} of the partial transpose has det c²d²(p² − (1−p)²),
        // block {01,10} has det c²d²((1−p)² − p²): exactly one is negative.
        let (c0, d0) = (0.9f64.sqrt(), 0.1f64.sqrt());
        let rho = eq10_state(c0, d0, 0.8).unwrap();
        let min = herm_eig(&partial_transpose(&rho)).unwrap().min_value();
        let block = [[0.2 * 0.9, 0.8 * c0 * d0], [0.8 * c0 * d0, 0.2 * 0.1]];
        let tr = block[0][0] + block[1][1];
        let det = block[0][0] * block[1][1] - block[0][1] * block[1][0];
        let oracle = 0.5 * (tr - (tr * tr - 4.0 * det).sqrt());
        assert!((min - oracle).abs() < 1e-12);
        assert!(min < -1e-10);

        let half = eq10_state(c0, d0, 0.5).unwrap();
        assert!(herm_eig(&partial_transpose(&half)).unwrap().min_value() >= -1e-10);
    }

    #[test]
    fn partial_transpose_examples() {
        let a = ComplexMatrix::new2(c(0.7), C64::new(0.1, 0.2), C64::new(0.1, -0.2), c(0.3));
        let b = ComplexMatrix::new2(c(0.4), C64::new(0.0, 0.3), C64::new(0.0, -0.3), c(0.6));
        let prod = DensityMatrix::product(&a, &b).unwrap();
        let want = kron2(&a, &b.transpose());
        assert!(partial_transpose(&prod).distance(&want) < 1e-15);

        let p0 = make_density(singlet_projector()).unwrap();
        let e = herm_eig(&partial_transpose(&p0)).unwrap();
        for (got, want) in e.values.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
        let rho = random_mixed(3, 2).unwrap();
        let twice = partial_transpose_matrix(&partial_transpose(&rho));
        assert_eq!(&twice, rho.matrix());
    }

    #[test]
    fn apply_local_cases() {
        let rho = random_mixed(11, 3).unwrap();
        let id = ComplexMatrix::identity2();
        let (s, w) = apply_local(&rho, &id, &id).unwrap();
        assert!((w - 1.0).abs() < 1e-14);
        assert!(s.distance(&rho) < 1e-14);

        let (s, w) = apply_local(&rho, &sigma_y(), &sigma_z()).unwrap();
        assert!((w - 1.0).abs() < 1e-14);
        assert!((s.min_eigenvalue() - rho.min_eigenvalue()).abs() < 1e-12);

        let (c0, d0) = (0.9f64.sqrt(), 0.1f64.sqrt());
        let rho = eq10_state(c0, d0, 0.8).unwrap();
        let wf = ComplexMatrix::real_diag(&[c0, d0]).unwrap();
        let (_, w) = apply_local(&rho, &id, &wf).unwrap();
        let k = kron2(&id, &wf);
        let direct = (k * *rho.matrix() * k.dagger()).trace().re;
        assert!((w - direct).abs() < 1e-15);

        let kill = ComplexMatrix::real_diag(&[0.0, 1.0]).unwrap();
        let e00 = DensityMatrix::product(
            &ComplexMatrix::real_diag(&[1.0, 0.0]).unwrap(),
            &ComplexMatrix::real_diag(&[1.0, 0.0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(apply_local(&e00, &id, &kill), Err(Error::ZeroWeight { .. })));
    }

    #[test]
    fn random_states_are_valid_and_deterministic() {
        for seed in 0..50 {
            let m = random_mixed(seed, 1 + (seed as usize % 4)).unwrap();
            assert!(make_density(*m.matrix()).is_ok());
            assert_eq!(m, random_mixed(seed, 1 + (seed as usize % 4)).unwrap());
            let s = random_separable(seed, 1 + (seed as usize % 5)).unwrap();
            assert!(make_density(*s.matrix()).is_ok());
        }
        assert!(random_mixed(0, 0).is_err());
        assert!(random_separable(0, 0).is_err());
    }

    #[test]
    fn product_states_are_ppt() {
        for seed in 0..100 {
            let s = random_separable(seed, 1).unwrap();
            let min = herm_eig(&partial_transpose(&s)).unwrap().min_value();
            assert!(min >= -1e-12, "seed {seed}: {min}");
        }
    }

    #[test]
    fn random_mixed_mean_is_maximally_mixed() {
        // Haar mixtures are unitarily invariant in distribution, so the
        // ensemble mean converges to I/4.
        let n = 10_000;
        let mut acc = ComplexMatrix::zeros(4).unwrap();
        for seed in 0..n {
            acc = acc + *random_mixed(seed, 4).unwrap().matrix();
        }
        let mean = acc.scale(1.0 / n as f64);
        assert!(mean.distance(DensityMatrix::maximally_mixed().matrix()) < 0.02);
    }

    #[test]
    fn reduced_states() {
        let p0 = DensityMatrix::pure(&bell_state(Bell::PsiMinus));
        let half = ComplexMatrix::identity2().scale(0.5);
        assert!(p0.reduced(0).distance(&half) < 1e-15);
        assert!(p0.reduced(1).distance(&half) < 1e-15);
        let a = ComplexMatrix::real_diag(&[0.3, 0.7]).unwrap();
        let b = (ComplexMatrix::identity2() + pauli(0).scale(0.5)).scale(0.5);
        let prod = DensityMatrix::product(&a, &b).unwrap();
        assert!(prod.reduced(0).distance(&a) < 1e-15);
        assert!(prod.reduced(1).distance(&b) < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn partial_transpose_keeps_hermiticity_and_trace(seed in any::<u64>(), terms in 1usize..5) {
            let rho = random_mixed(seed, terms).unwrap();
            let pt = partial_transpose(&rho);
            prop_assert!(pt.max_asymmetry() < 1e-15);
            prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        }
    }
}
