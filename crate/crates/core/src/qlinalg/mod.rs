//! Dense complex linear algebra at the two fixed sizes a pair of qubits needs
//! (2 and 4), plus the real 3×3 routines used on correlation matrices.
//!
//! Everything here is a pure function on `Copy` values.

mod eig;
mod matrix;
mod real3;
mod svd;

pub use eig::{herm_eig, sqrt_psd, HermEig, JACOBI_OFFDIAG_TOL, TOL_HERM, TOL_PSD};
pub use matrix::{inner, pauli, sigma_x, sigma_y, sigma_z, vec_norm, ComplexMatrix, C64, I, ONE, ZERO};
pub use real3::{rotation_of, su2_lift, RealMatrix3, Vec3};
pub use svd::{svd2c, svd3r, Svd2, Svd3};

use crate::error::{Error, Result};

/// Kronecker product of two 2×2 matrices, `(i ⊗ j) ↦ 2i + j`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: m.dim(),
            });
        }
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Same as [`kron`] for callers that already hold 2×2 operators.
pub(crate) fn kron2(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    kron(a, b).expect("both factors are 2x2")
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}
