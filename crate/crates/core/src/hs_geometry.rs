//! Hilbert-Schmidt picture of a two-qubit state:
//!
//! ρ = ¼ (I⊗I + r·σ⊗I + I⊗s·σ + Σ t[n][m] σ_n⊗σ_m)
//!
//! with r_i = Tr(ρ σ_i⊗I), s_i = Tr(ρ I⊗σ_i) and t[n][m] = Tr(ρ σ_n⊗σ_m).
//! Local unitaries act on (r, s, T) as rotations, so the singular values of T
//! are local invariants; diagonal T vectors of physical states live in the
//! tetrahedron with vertices (−1,−1,−1), (−1,1,1), (1,−1,1), (1,1,−1), and the
//! separable T-states fill the octahedron |t₁|+|t₂|+|t₃| ≤ 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{kron2, pauli, su2_lift, svd3r, ComplexMatrix, RealMatrix3, Vec3};
use crate::qstate::{make_density, DensityMatrix};

/// Membership slack for the tetrahedron and octahedron tests.
pub const TOL_MEMBERSHIP: f64 = 1e-9;
/// Bloch vectors shorter than this count as zero for T-state checks.
pub const TOL_T_STATE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HsForm {
    pub r: Vec3,
    pub s: Vec3,
    pub t: RealMatrix3,
}

impl HsForm {
    /// N(ρ) = Tr √(TᵀT), the sum of the singular values of T.
    pub fn n_value(&self) -> f64 {
        svd3r(&self.t).d.iter().map(|x| x.abs()).sum()
    }

    pub fn is_t_state(&self) -> bool {
        norm(self.r) < TOL_T_STATE && norm(self.s) < TOL_T_STATE
    }
}

fn norm(v: Vec3) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn decompose(rho: &DensityMatrix) -> HsForm {
    let m = rho.matrix();
    let id = ComplexMatrix::identity2();
    let mut r = [0.0; 3];
    let mut s = [0.0; 3];
    let mut t = RealMatrix3::zeros();
    for i in 0..3 {
        r[i] = m.trace_product(&kron2(&pauli(i), &id)).re;
        s[i] = m.trace_product(&kron2(&id, &pauli(i))).re;
        for j in 0..3 {
            t.0[i][j] = m.trace_product(&kron2(&pauli(i), &pauli(j))).re;
        }
    }
    HsForm { r, s, t }
}

/// Operator ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ t[n][m] σ_n⊗σ_m), not yet validated.
pub fn reconstruct_matrix(form: &HsForm) -> ComplexMatrix {
    let id = ComplexMatrix::identity2();
    let mut acc = ComplexMatrix::identity4();
    for i in 0..3 {
        acc = acc + kron2(&pauli(i), &id).scale(form.r[i]);
        acc = acc + kron2(&id, &pauli(i)).scale(form.s[i]);
        for j in 0..3 {
            acc = acc + kron2(&pauli(i), &pauli(j)).scale(form.t.0[i][j]);
        }
    }
    acc.scale(0.25)
}

/// Inverse of [`decompose`]; fails with `NotPositive` when (r, s, T) is not a state.
pub fn reconstruct(form: &HsForm) -> Result<DensityMatrix> {
    make_density(reconstruct_matrix(form))
}

pub fn n_value(rho: &DensityMatrix) -> f64 {
    decompose(rho).n_value()
}

/// f = ¼(1 + N) when N > 1; `None` otherwise, where the relation is not claimed.
pub fn fidelity_from_n(rho: &DensityMatrix) -> Option<f64> {
    let n = n_value(rho);
    (n > 1.0).then(|| 0.25 * (1.0 + n))
}

#[derive(Debug, Clone, Copy)]
pub struct TDiagonalization {
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
    /// Diagonal of the rotated T, descending in magnitude.
    pub d: Vec3,
}

impl TDiagonalization {
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        rho.rotate_local(&self.u1, &self.u2)
    }
}

/// Product unitary u1 ⊗ u2 that brings T to diagonal form.
///
/// (u1⊗u2) ρ (u1⊗u2)† has T' = R1 T R2ᵀ where R_k is the rotation induced by
/// u_k, so with T = O1 diag(d) O2ᵀ we lift R1 = O1ᵀ and R2 = O2ᵀ.
pub fn diagonalize_t(rho: &DensityMatrix) -> TDiagonalization {
    diagonalize_form(&decompose(rho))
}

pub fn diagonalize_form(form: &HsForm) -> TDiagonalization {
    let svd = svd3r(&form.t);
    TDiagonalization {
        u1: su2_lift(&svd.o1.transpose()),
        u2: su2_lift(&svd.o2.transpose()),
        d: svd.d,
    }
}

/// The four Bell-diagonal weights ¼(1 ∓ ...) of a diagonal T vector.
pub fn bell_weights(d: Vec3) -> [f64; 4] {
    [
        0.25 * (1.0 - d[0] - d[1] - d[2]),
        0.25 * (1.0 - d[0] + d[1] + d[2]),
        0.25 * (1.0 + d[0] - d[1] + d[2]),
        0.25 * (1.0 + d[0] + d[1] - d[2]),
    ]
}

pub fn in_tetrahedron(d: Vec3) -> bool {
    bell_weights(d).iter().all(|&w| w >= -TOL_MEMBERSHIP)
}

pub fn in_octahedron(d: Vec3) -> bool {
    d.iter().map(|x| x.abs()).sum::<f64>() <= 1.0 + TOL_MEMBERSHIP
}

/// The octahedron as the intersection of the tetrahedron with its mirror image.
pub fn in_octahedron_via_tetrahedra(d: Vec3) -> bool {
    in_tetrahedron(d) && in_tetrahedron(d.map(|x| -x))
}

/// Separability of a state with r = s = 0, decided by the octahedron.
pub fn t_state_separable(rho: &DensityMatrix) -> Result<bool> {
    let form = decompose(rho);
    if !form.is_t_state() {
        return Err(Error::NotTState {
            r_norm: norm(form.r),
            s_norm: norm(form.s),
        });
    }
    Ok(in_octahedron(diagonalize_form(&form).d))
}

/// Everything the geometry report prints for one state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryReport {
    pub r: Vec3,
    pub s: Vec3,
    pub t: RealMatrix3,
    pub d: Vec3,
    pub n: f64,
    pub in_tetrahedron: bool,
    pub in_octahedron: bool,
    pub f_from_n: Option<f64>,
}

pub fn geometry_report(rho: &DensityMatrix) -> GeometryReport {
    let form = decompose(rho);
    let diag = diagonalize_form(&form);
    let n = diag.d.iter().map(|x| x.abs()).sum::<f64>();
    GeometryReport {
        r: form.r,
        s: form.s,
        t: form.t,
        d: diag.d,
        n,
        in_tetrahedron: in_tetrahedron(diag.d),
        in_octahedron: in_octahedron(diag.d),
        f_from_n: (n > 1.0).then(|| 0.25 * (1.0 + n)),
    }
}
