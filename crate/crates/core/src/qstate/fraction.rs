//! Singlet fraction: max <ψ|ρ|ψ> over maximally entangled ψ.
//!
//! Every maximally entangled vector is (I ⊗ U)|Φ+> for some U ∈ SU(2), up to
//! a global phase. The search seeds from a 16³ Euler-angle grid and refines by
//! coordinate ascent along the three generators U ← U·exp(iθσ_k/2). Along one
//! generator the objective is exactly a + b·cos θ + c·sin θ, so each line
//! search is solved in closed form.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::{DensityMatrix, PureStateVector};
use crate::qlinalg::{pauli, ComplexMatrix, C64, I};

const GRID: usize = 16;
const GRAD_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct SingletFractionResult {
    pub f: f64,
    /// Maximally entangled maximizer, (I ⊗ unitary)|Φ+>.
    pub maximizer: PureStateVector,
    pub unitary: ComplexMatrix,
    /// Norm of the generator gradient at the returned point.
    pub gradient_norm: f64,
}

pub fn singlet_fraction(rho: &DensityMatrix) -> SingletFractionResult {
    let m = rho.matrix();

    let mut best_u = ComplexMatrix::identity2();
    let mut best_f = f64::NEG_INFINITY;
    for ia in 0..GRID {
        let alpha = 2.0 * PI * ia as f64 / GRID as f64;
        for ib in 0..GRID {
            let beta = PI * (ib as f64 + 0.5) / GRID as f64;
            for ig in 0..GRID {
                let gamma = 2.0 * PI * ig as f64 / GRID as f64;
                let u = euler(alpha, beta, gamma);
                let f = m.expectation(&max_entangled(&u));
                if f > best_f {
                    best_f = f;
                    best_u = u;
                }
            }
        }
    }

    let generators = [pauli(0), pauli(1), pauli(2)];
    let mut u = best_u;
    let mut grad_norm = f64::INFINITY;
    for sweep in 0..MAX_SWEEPS {
        let mut grad_sq = 0.0;
        for g in &generators {
            let psi0 = max_entangled(&u);
            let psik = max_entangled(&(u * *g));
            let a0 = m.expectation(&psi0);
            let ak = m.expectation(&psik);
            let x = m.sandwich(&psi0, &psik);
            let p = 0.5 * (a0 - ak);
            let q = -x.im;
            grad_sq += q * q;
            let theta = q.atan2(p);
            let (s, c) = (0.5 * theta).sin_cos();
            u = u * (ComplexMatrix::identity2().scale(c) + g.scale_c(I * s));
        }
        grad_norm = grad_sq.sqrt();
        if sweep % 16 == 15 {
            u = reunitarize(&u);
        }
        if grad_norm < GRAD_TOL {
            break;
        }
    }
    u = reunitarize(&u);
    let psi = max_entangled(&u);
    let maximizer = PureStateVector::normalized([psi[0], psi[1], psi[2], psi[3]]).expect("unit vector");
    SingletFractionResult {
        f: m.expectation(maximizer.amplitudes()),
        maximizer,
        unitary: u,
        gradient_norm: grad_norm,
    }
}

/// (I ⊗ U)|Φ+>: amplitude of |i j> is U_ji / √2.
pub(crate) fn max_entangled(u: &ComplexMatrix) -> [C64; 4] {
    [
        u[(0, 0)] * FRAC_1_SQRT_2,
        u[(1, 0)] * FRAC_1_SQRT_2,
        u[(0, 1)] * FRAC_1_SQRT_2,
        u[(1, 1)] * FRAC_1_SQRT_2,
    ]
}

/// Rz(α) Ry(β) Rz(γ)
fn euler(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let rz = |t: f64| ComplexMatrix::diag2(C64::from_polar(1.0, -0.5 * t), C64::from_polar(1.0, 0.5 * t));
    let (s, c) = (0.5 * beta).sin_cos();
    let ry = ComplexMatrix::new2(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0));
    rz(alpha) * ry * rz(gamma)
}

/// Projects a nearly-SU(2) matrix back onto SU(2) via its quaternion.
fn reunitarize(u: &ComplexMatrix) -> ComplexMatrix {
    // SU(2): [[a, b], [-b*, a*]]
    let a = 0.5 * (u[(0, 0)] + u[(1, 1)].conj());
    let b = 0.5 * (u[(0, 1)] - u[(1, 0)].conj());
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    ComplexMatrix::new2(a, b, -b.conj(), a.conj())
}
