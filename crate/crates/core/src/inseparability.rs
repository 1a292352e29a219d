//! Partial-transpose test and the local filter built from its witness.
//!
//! If ψ is an eigenvector of ρ^T2 with negative eigenvalue, local unitaries
//! bring it to a|00> + b|11> (a ≥ b ≥ 0). Since (I⊗W)|Φ+> ∝ a|00> + b|11> for
//! W = diag(a, b), the filtered state ρ̃ ∝ (I⊗W)ρ(I⊗W) has
//! <Φ+|ρ̃^T2|Φ+> < 0, i.e. Tr(V ρ̃) < 0 for the swap V, which forces
//! <Ψ−|ρ̃|Ψ−> > 1/2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{herm_eig, kron2, svd2c, ComplexMatrix, ONE};
use crate::qstate::{bell_state, partial_transpose, partial_transpose_matrix, Bell, DensityMatrix, PureStateVector};

/// A partial-transpose eigenvalue below this marks the state inseparable.
pub const INSEPARABLE_THRESHOLD: f64 = -1e-10;
/// Schmidt coefficients closer than this count as a maximally entangled witness.
pub const TOL_MAX_ENTANGLED: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct PptVerdict {
    pub min_eigenvalue: f64,
    /// Eigenvector of ρ^T2 for `min_eigenvalue`.
    pub witness: PureStateVector,
    pub inseparable: bool,
}

pub fn ppt_test(rho: &DensityMatrix) -> PptVerdict {
    let eig = herm_eig(&partial_transpose(rho)).expect("partial transpose of a state is Hermitian");
    let v = eig.vector(0);
    let witness = PureStateVector::normalized([v[0], v[1], v[2], v[3]]).expect("eigenvectors are unit vectors");
    PptVerdict {
        min_eigenvalue: eig.min_value(),
        witness,
        inseparable: eig.min_value() < INSEPARABLE_THRESHOLD,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SchmidtForm {
    pub a: f64,
    pub b: f64,
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
}

impl SchmidtForm {
    pub fn is_maximally_entangled(&self) -> bool {
        (self.a - self.b).abs() < TOL_MAX_ENTANGLED
    }
}

/// Local unitaries with (u1 ⊗ u2)·witness = a|00> + b|11>, a ≥ b ≥ 0.
///
/// With coefficient matrix M = U·diag(a,b)·V†, (A⊗B)ψ has coefficients
/// A M Bᵀ, so A = U† and B = Vᵀ.
pub fn schmidt_form(witness: &PureStateVector) -> SchmidtForm {
    let svd = svd2c(&witness.coefficient_matrix());
    SchmidtForm {
        a: svd.s[0],
        b: svd.s[1],
        u1: svd.u.dagger(),
        u2: svd.v.transpose(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
}

/// Diagonal local contraction on one party. Pass probability of a state ρ is
/// Tr(K ρ K†) with K = I⊗w (party B) or w⊗I (party A).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Filter {
    w: ComplexMatrix,
    side: Party,
}

impl Filter {
    /// Entries must be nonnegative with the larger at most 1.
    pub fn new(w0: f64, w1: f64, side: Party) -> Result<Self> {
        for (name, v) in [("w0", w0), ("w1", w1)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter { name, value: v, reason: "filter entries must be nonnegative" });
            }
        }
        let norm = w0.max(w1);
        if norm > 1.0 + 1e-12 {
            return Err(Error::FilterTooLarge { norm });
        }
        if norm == 0.0 {
            return Err(Error::InvalidParameter { name: "w", value: 0.0, reason: "filter must be nonzero" });
        }
        Ok(Self { w: ComplexMatrix::real_diag(&[w0, w1]).expect("dim 2"), side })
    }

    /// diag(w0, w1) rescaled to spectral norm 1.
    pub fn normalized(w0: f64, w1: f64, side: Party) -> Result<Self> {
        let norm = w0.max(w1);
        if !(norm > 0.0) {
            return Err(Error::InvalidParameter { name: "w", value: norm, reason: "filter must be nonzero" });
        }
        Self::new(w0 / norm, w1 / norm, side)
    }

    pub fn identity(side: Party) -> Self {
        Self { w: ComplexMatrix::identity2(), side }
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn entries(&self) -> [f64; 2] {
        [self.w[(0, 0)].re, self.w[(1, 1)].re]
    }

    pub fn side(&self) -> Party {
        self.side
    }

    pub fn with_side(self, side: Party) -> Self {
        Self { side, ..self }
    }

    pub fn spectral_norm(&self) -> f64 {
        let [a, b] = self.entries();
        a.max(b)
    }

    pub fn is_identity(&self) -> bool {
        let [a, b] = self.entries();
        a == 1.0 && b == 1.0
    }

    /// Same filter rescaled so the diagonal has unit Euclidean norm (a² + b² = 1).
    pub fn unit_frobenius(&self) -> Self {
        let [a, b] = self.entries();
        let n = (a * a + b * b).sqrt();
        Self { w: ComplexMatrix::real_diag(&[a / n, b / n]).expect("dim 2"), side: self.side }
    }

    /// The 4×4 operator acting on the pair.
    pub fn operator(&self) -> ComplexMatrix {
        let id = ComplexMatrix::identity2();
        match self.side {
            Party::A => kron2(&self.w, &id),
            Party::B => kron2(&id, &self.w),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DerivedFilter {
    pub filter: Filter,
    /// ρ after the local unitaries that put the witness in Schmidt form.
    pub rotated: DensityMatrix,
    pub schmidt: SchmidtForm,
    pub verdict: PptVerdict,
}

/// Filter on party B from the most negative partial-transpose eigenvector.
pub fn derive_filter(rho: &DensityMatrix) -> Result<DerivedFilter> {
    derive_filter_on(rho, Party::B)
}

pub fn derive_filter_on(rho: &DensityMatrix, side: Party) -> Result<DerivedFilter> {
    let verdict = ppt_test(rho);
    if !verdict.inseparable {
        return Err(Error::NotInseparable { min_eigenvalue: verdict.min_eigenvalue });
    }
    let schmidt = schmidt_form(&verdict.witness);
    // Conjugating ρ by u1 ⊗ conj(u2) conjugates ρ^T2 by u1 ⊗ u2.
    let rotated = rho.rotate_local(&schmidt.u1, &schmidt.u2.conj());
    let filter = if schmidt.is_maximally_entangled() {
        Filter::identity(side)
    } else {
        Filter::normalized(schmidt.a, schmidt.b, side)?
    };
    Ok(DerivedFilter { filter, rotated, schmidt, verdict })
}

/// <(K)Φ+| ρ^T2 |(K)Φ+> for the filter operator K: negative whenever the
/// filter was derived from this (rotated) state's witness.
pub fn filtered_witness_value(rotated: &DensityMatrix, filter: &Filter) -> f64 {
    let phi = bell_state(Bell::PhiPlus);
    let v = filter.operator().apply(phi.amplitudes());
    partial_transpose(rotated).expectation(&v)
}

/// Tr(P₂^T2 ρ) with P₂ = |Φ+><Φ+|; equals Tr(Vρ)/2 for the swap V.
pub fn swap_witness(rho: &DensityMatrix) -> f64 {
    let p2 = ComplexMatrix::projector(bell_state(Bell::PhiPlus).amplitudes()).expect("dim 4");
    partial_transpose_matrix(&p2).trace_product(rho.matrix()).re
}

/// diag(c, d) on party B, rescaled to spectral norm 1.
pub fn family_filter(c: f64, d: f64) -> Result<Filter> {
    crate::qstate::check_cd(c, d)?;
    Filter::normalized(c, d, Party::B)
}

/// Swap operator on C²⊗C².
pub fn swap_operator() -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4).expect("dim 4");
    for i in 0..2 {
        for j in 0..2 {
            v[(2 * i + j, 2 * j + i)] = ONE;
        }
    }
    v
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub min_eigenvalue: f64,
    pub inseparable: bool,
    pub schmidt_a: Option<f64>,
    pub schmidt_b: Option<f64>,
    pub filter: Option<[f64; 2]>,
    pub filter_side: Option<Party>,
}

pub fn verdict_record(rho: &DensityMatrix) -> VerdictRecord {
    let verdict = ppt_test(rho);
    match derive_filter(rho) {
        Ok(d) => VerdictRecord {
            min_eigenvalue: verdict.min_eigenvalue,
            inseparable: true,
            schmidt_a: Some(d.schmidt.a),
            schmidt_b: Some(d.schmidt.b),
            filter: Some(d.filter.entries()),
            filter_side: Some(d.filter.side()),
        },
        Err(_) => VerdictRecord {
            min_eigenvalue: verdict.min_eigenvalue,
            inseparable: false,
            schmidt_a: None,
            schmidt_b: None,
            filter: None,
            filter_side: None,
        },
    }
}
