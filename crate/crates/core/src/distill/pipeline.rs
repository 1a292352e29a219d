use serde::{Deserialize, Serialize};

use super::{bbpssw_step, filter_ensemble};
use crate::error::{Error, Result};
use crate::hs_geometry::diagonalize_t;
use crate::inseparability::derive_filter;
use crate::qlinalg::Vec3;
use crate::qstate::{singlet_fraction, DensityMatrix};

pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Reached,
    NotDistillable,
    TargetUnreachable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub label: String,
    pub fidelity_before: f64,
    pub fidelity_after: f64,
    pub pass_probability: f64,
    /// Input pairs spent per attempt.
    pub pairs_consumed_ratio: f64,
}

impl Stage {
    pub fn efficiency_factor(&self) -> f64 {
        self.pass_probability / self.pairs_consumed_ratio
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistillationReport {
    pub f_target: f64,
    pub max_steps: usize,
    pub min_pt_eigenvalue: f64,
    pub initial_fidelity: f64,
    pub stages: Vec<Stage>,
    pub cumulative_efficiency: f64,
    /// Diagonalized T of the input, then of the state after each stage.
    pub geometry_trail: Vec<Vec3>,
    pub reached_target: bool,
    pub outcome: Outcome,
}

impl DistillationReport {
    pub fn final_fidelity(&self) -> f64 {
        self.stages.last().map_or(self.initial_fidelity, |s| s.fidelity_after)
    }

    pub fn bbpssw_steps(&self) -> usize {
        self.stages.iter().filter(|s| s.pairs_consumed_ratio == 2.0).count()
    }

    /// `stage,fidelity,pass_probability,cumulative_efficiency`, one row per stage.
    pub fn stages_csv(&self) -> String {
        let mut out = String::from("stage,fidelity,pass_probability,cumulative_efficiency\n");
        let mut eff = 1.0;
        for s in &self.stages {
            eff *= s.efficiency_factor();
            out.push_str(&format!("{},{:?},{:?},{:?}\n", s.label, s.fidelity_after, s.pass_probability, eff));
        }
        out
    }

    /// `t1,t2,t3`, one row per trail point.
    pub fn trail_csv(&self) -> String {
        let mut out = String::from("t1,t2,t3\n");
        for d in &self.geometry_trail {
            out.push_str(&format!("{:?},{:?},{:?}\n", d[0], d[1], d[2]));
        }
        out
    }
}

fn product(stages: &[Stage]) -> f64 {
    stages.iter().fold(1.0, |acc, s| acc * s.efficiency_factor())
}

/// Runs the full protocol and always returns the report; `outcome` says
/// whether the target was reached. Errors only on invalid parameters.
pub fn pipeline_report(rho: &DensityMatrix, f_target: f64, max_steps: usize) -> Result<DistillationReport> {
    if !(f_target > 0.5 && f_target < 1.0) {
        return Err(Error::InvalidParameter { name: "f_target", value: f_target, reason: "must lie in (1/2, 1)" });
    }
    let initial_fidelity = singlet_fraction(rho).f;
    let mut report = DistillationReport {
        f_target,
        max_steps,
        min_pt_eigenvalue: 0.0,
        initial_fidelity,
        stages: Vec::new(),
        cumulative_efficiency: 0.0,
        geometry_trail: vec![diagonalize_t(rho).d],
        reached_target: false,
        outcome: Outcome::NotDistillable,
    };
    let derived = match derive_filter(rho) {
        Ok(d) => d,
        Err(Error::NotInseparable { min_eigenvalue }) => {
            report.min_pt_eigenvalue = min_eigenvalue;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.min_pt_eigenvalue = derived.verdict.min_eigenvalue;

    let (mut state, p, label) = if derived.filter.is_identity() {
        (*rho, 1.0, "filter-identity")
    } else {
        let (s, p) = filter_ensemble(&derived.rotated, &derived.filter)?;
        (s, p, "filter")
    };
    let mut f = singlet_fraction(&state).f;
    report.stages.push(Stage {
        label: label.into(),
        fidelity_before: initial_fidelity,
        fidelity_after: f,
        pass_probability: p,
        pairs_consumed_ratio: 1.0,
    });
    report.geometry_trail.push(diagonalize_t(&state).d);

    let mut steps = 0;
    while f < f_target && steps < max_steps {
        let step = bbpssw_step(&state)?;
        steps += 1;
        report.stages.push(Stage {
            label: format!("bbpssw-{steps}"),
            fidelity_before: f,
            fidelity_after: step.f_new,
            pass_probability: step.p_success,
            pairs_consumed_ratio: 2.0,
        });
        state = step.state;
        f = step.f_new;
        report.geometry_trail.push(diagonalize_t(&state).d);
    }
    report.cumulative_efficiency = product(&report.stages);
    report.reached_target = f >= f_target;
    report.outcome = if report.reached_target { Outcome::Reached } else { Outcome::TargetUnreachable };
    Ok(report)
}

/// Like [`pipeline_report`] but a separable input or an exhausted step
/// budget is an error.
pub fn distill_pipeline(rho: &DensityMatrix, f_target: f64, max_steps: usize) -> Result<DistillationReport> {
    let report = pipeline_report(rho, f_target, max_steps)?;
    match report.outcome {
        Outcome::Reached => Ok(report),
        Outcome::NotDistillable => Err(Error::NotDistillable { min_eigenvalue: report.min_pt_eigenvalue }),
        Outcome::TargetUnreachable => Err(Error::TargetUnreachable {
            steps: max_steps,
            fidelity: report.final_fidelity(),
            target: f_target,
        }),
    }
}
