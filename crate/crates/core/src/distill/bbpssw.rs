//! One BBPSSW recurrence step, computed on the full two-pair density matrix.
//!
//! Qubits are ordered (A1, B1, A2, B2) so ρ⊗ρ is the plain Kronecker product
//! of the two pairs. Internally the pairs are held in the Φ+ convention
//! (σ_y applied on B), where the bilateral CNOT maps Φ+⊗Φ+ to itself.

use super::twirl_werner;
use crate::error::{Error, Result};
use crate::qlinalg::{sigma_y, ComplexMatrix, C64};
use crate::qstate::{singlet_fraction, DensityMatrix};

/// Inputs at or below f = 1/2 + this are rejected.
const F_MARGIN: f64 = 1e-12;

type Big = [[C64; 16]; 16];

#[derive(Debug, Clone, Copy)]
pub struct BbpsswStep {
    /// Kept pair, twirled to Werner form in the singlet convention.
    pub state: DensityMatrix,
    pub f_new: f64,
    pub p_success: f64,
}

/// Closed form of one step on Werner input with singlet weight f:
/// returns (f', p_success).
pub fn bbpssw_recurrence(f: f64) -> (f64, f64) {
    let g = (1.0 - f) / 3.0;
    let p = f * f + 2.0 * f * g + 5.0 * g * g;
    ((f * f + g * g) / p, p)
}

pub fn bbpssw_step(rho: &DensityMatrix) -> Result<BbpsswStep> {
    let sf = singlet_fraction(rho);
    if !(sf.f > 0.5 + F_MARGIN) {
        return Err(Error::FidelityTooLow { fidelity: sf.f });
    }
    // (I⊗U)Φ+ is the maximizer and (I⊗σ_y)Φ+ = iΨ−, so I⊗σ_yU† aligns it with the singlet.
    let align = sigma_y() * sf.unitary.dagger();
    let aligned = rho.rotate_local(&ComplexMatrix::identity2(), &align);
    let werner = twirl_werner(&aligned);
    let pair = werner.rotate_local(&ComplexMatrix::identity2(), &sigma_y());

    let (kept, p_success) = cnot_and_postselect(pair.matrix());
    let (kept, _) = DensityMatrix::from_unnormalized(kept)?;
    let back = kept.rotate_local(&ComplexMatrix::identity2(), &sigma_y());
    let state = twirl_werner(&back);
    Ok(BbpsswStep { f_new: state.singlet_overlap(), state, p_success })
}

/// Bilateral CNOT (pair 1 controls pair 2), Z measurement of pair 2 on both
/// sides, keep equal outcomes. Returns the unnormalized kept pair-1 state and
/// its trace.
fn cnot_and_postselect(pair: &ComplexMatrix) -> (ComplexMatrix, f64) {
    let mut joint: Big = [[C64::new(0.0, 0.0); 16]; 16];
    for x in 0..16 {
        for y in 0..16 {
            joint[permute(x)][permute(y)] = pair[(x >> 2, y >> 2)] * pair[(x & 3, y & 3)];
        }
    }
    let mut kept = ComplexMatrix::zeros(4).expect("dim 4");
    for i in 0..4 {
        for j in 0..4 {
            // target outcomes 00 and 11
            kept[(i, j)] = joint[4 * i][4 * j] + joint[4 * i + 3][4 * j + 3];
        }
    }
    let p = kept.trace().re;
    (kept, p)
}

/// (a1, b1, a2, b2) → (a1, b1, a2 ⊕ a1, b2 ⊕ b1) on the index 8a1+4b1+2a2+b2.
fn permute(x: usize) -> usize {
    let (a1, b1) = ((x >> 3) & 1, (x >> 2) & 1);
    x ^ (a1 << 1) ^ b1
}
