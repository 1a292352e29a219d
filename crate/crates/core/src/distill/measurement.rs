use crate::error::{Error, Result};
use crate::inseparability::{derive_filter, Filter, Party};
use crate::qlinalg::{kron2, sqrt_psd, ComplexMatrix};
use crate::qstate::{DensityMatrix, MIN_WEIGHT};

pub const TOL_COMPLETENESS: f64 = 1e-10;
/// Elements with every entry below this are dropped as zero.
const TOL_ZERO_ELEMENT: f64 = 1e-14;
/// Recursion stops once the rejected branch carries less weight than this.
const MIN_RECURSION_WEIGHT: f64 = 1e-6;

/// Operators {V_i} on the pair with Σ V_i†V_i = I.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedMeasurement {
    elements: Vec<ComplexMatrix>,
}

impl GeneralizedMeasurement {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidMeasurement("no elements".into()));
        }
        for (i, v) in elements.iter().enumerate() {
            if v.dim() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, got: v.dim() });
            }
            if v.max_abs() < TOL_ZERO_ELEMENT {
                return Err(Error::InvalidMeasurement(format!("element {i} is zero")));
            }
        }
        let m = Self { elements };
        let residual = m.completeness_residual();
        if !(residual <= TOL_COMPLETENESS) {
            return Err(Error::InvalidMeasurement(format!("completeness residual {residual:e}")));
        }
        Ok(m)
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// max |Σ V_i†V_i − I|
    pub fn completeness_residual(&self) -> f64 {
        let sum = self
            .elements
            .iter()
            .fold(ComplexMatrix::zeros(4).expect("dim 4"), |acc, v| acc + v.dagger() * *v);
        (sum - ComplexMatrix::identity4()).max_abs()
    }

    /// Precomposes every element with the unitary `u`: V_i → V_i u.
    pub fn after(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.elements.iter().map(|v| *v * *u).collect())
    }
}

/// {K, complement} where K is the filter operator and the complement is
/// sqrt(I − w†w) on the same party. A vanishing complement is dropped.
pub fn make_two_outcome(filter: &Filter) -> Result<GeneralizedMeasurement> {
    let norm = filter.spectral_norm();
    if norm > 1.0 + 1e-12 {
        return Err(Error::FilterTooLarge { norm });
    }
    let w = filter.w();
    let rest = sqrt_psd(&(ComplexMatrix::identity2() - w.dagger() * *w))?;
    let id = ComplexMatrix::identity2();
    let complement = match filter.side() {
        Party::A => kron2(&rest, &id),
        Party::B => kron2(&id, &rest),
    };
    let mut elements = vec![filter.operator()];
    if complement.max_abs() >= TOL_ZERO_ELEMENT {
        elements.push(complement);
    }
    GeneralizedMeasurement::new(elements)
}

#[derive(Debug, Clone, Copy)]
pub struct BranchOutcome {
    pub index: usize,
    pub probability: f64,
    pub state: DensityMatrix,
}

/// Outcome i has probability Tr(V_i ρ V_i†) and post-state V_i ρ V_i† / Tr.
/// Outcomes that cannot occur (probability ≤ 1e-14) are omitted.
pub fn measure_branches(rho: &DensityMatrix, m: &GeneralizedMeasurement) -> Vec<BranchOutcome> {
    m.elements
        .iter()
        .enumerate()
        .filter_map(|(index, v)| {
            let (state, probability) = DensityMatrix::from_unnormalized(v.conjugate(rho.matrix())).ok()?;
            Some(BranchOutcome { index, probability, state })
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct AcceptedBranch {
    pub round: usize,
    pub state: DensityMatrix,
    /// Probability of reaching and accepting this branch.
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RecursionRound {
    pub round: usize,
    pub filter: [f64; 2],
    /// Acceptance probability conditioned on reaching this round.
    pub accept_probability: f64,
    pub accepted_weight: f64,
    pub rejected_weight: f64,
}

#[derive(Debug, Clone)]
pub struct RecursiveFiltering {
    pub accepted: Vec<AcceptedBranch>,
    pub rounds: Vec<RecursionRound>,
}

impl RecursiveFiltering {
    pub fn total_weight(&self) -> f64 {
        self.accepted.iter().map(|a| a.weight).sum()
    }
}

/// Repeated two-outcome filtering. Each round derives a filter from the
/// current rejected branch, measures, keeps the accepting branch and recurses
/// on the rejecting one until it is separable, lighter than 1e-6, or
/// `max_rounds` is used up.
///
/// The filter is scaled to a² + b² = 1 so the complement diag(b, a) has full
/// rank; with the larger entry at 1 the rejected branch would always be a
/// product state and nothing would be left to recurse on.
pub fn recursive_filter(rho: &DensityMatrix, max_rounds: usize) -> Result<RecursiveFiltering> {
    if max_rounds < 1 {
        return Err(Error::InvalidParameter {
            name: "max_rounds",
            value: max_rounds as f64,
            reason: "must be at least 1",
        });
    }
    let mut out = RecursiveFiltering { accepted: Vec::new(), rounds: Vec::new() };
    let mut current = *rho;
    let mut path = 1.0;
    for round in 1..=max_rounds {
        let Ok(derived) = derive_filter(&current) else {
            break;
        };
        let measurement = if derived.filter.is_identity() {
            GeneralizedMeasurement::new(vec![ComplexMatrix::identity4()])?
        } else {
            let frame = kron2(&derived.schmidt.u1, &derived.schmidt.u2.conj());
            make_two_outcome(&derived.filter.unit_frobenius())?.after(&frame)?
        };
        let branches = measure_branches(&current, &measurement);
        let accept = branches.iter().find(|b| b.index == 0);
        let reject = branches.iter().find(|b| b.index == 1);
        let p_accept = accept.map_or(0.0, |b| b.probability);
        let p_reject = reject.map_or(0.0, |b| b.probability);
        if let Some(b) = accept {
            out.accepted.push(AcceptedBranch { round, state: b.state, weight: path * b.probability });
        }
        out.rounds.push(RecursionRound {
            round,
            filter: derived.filter.unit_frobenius().entries(),
            accept_probability: p_accept,
            accepted_weight: path * p_accept,
            rejected_weight: path * p_reject,
        });
        match reject {
            Some(b) if path * b.probability >= MIN_RECURSION_WEIGHT && b.probability > MIN_WEIGHT => {
                path *= b.probability;
                current = b.state;
            }
            _ => break,
        }
    }
    Ok(out)
}
