//! Filtering, twirling, BBPSSW purification and the end-to-end pipeline.

mod bbpssw;
mod ensemble;
mod measurement;
mod pipeline;
mod tomography;

pub use bbpssw::{bbpssw_recurrence, bbpssw_step, BbpsswStep};
pub use ensemble::{
    simulate_ensemble, simulate_ensemble_with, EnsembleOptions, EnsembleRun, EnsembleState, PairRecord,
};
pub use measurement::{
    make_two_outcome, measure_branches, recursive_filter, AcceptedBranch, BranchOutcome, GeneralizedMeasurement,
    RecursionRound, RecursiveFiltering, TOL_COMPLETENESS,
};
pub use pipeline::{
    distill_pipeline, pipeline_report, DistillationReport, Outcome, Stage, DEFAULT_MAX_STEPS,
};
pub use tomography::estimate_state;

use crate::error::Result;
use crate::inseparability::Filter;
use crate::qstate::{werner_state, DensityMatrix};

/// Passes ρ through the filter. Returns the post-selected state and the
/// pass probability Tr(K ρ K†).
pub fn filter_ensemble(rho: &DensityMatrix, filter: &Filter) -> Result<(DensityMatrix, f64)> {
    DensityMatrix::from_unnormalized(filter.operator().conjugate(rho.matrix()))
}

/// Exact average over bilateral rotations U⊗U: the Werner state with the
/// same singlet overlap.
pub fn twirl_werner(rho: &DensityMatrix) -> DensityMatrix {
    let f = rho.singlet_overlap().clamp(0.0, 1.0);
    werner_state(f).expect("overlap clamped to [0, 1]")
}
