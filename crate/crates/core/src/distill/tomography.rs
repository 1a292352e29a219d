use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::hs_geometry::{decompose, reconstruct_matrix, HsForm};
use crate::qstate::{project_to_state, DensityMatrix};
use crate::rng;

/// Simulated tomography from the 15 product-Pauli expectations.
///
/// Each observable has outcomes ±1; `shots` samples give the estimate
/// 2k/shots − 1 with k ~ Bin(shots, (1 + e)/2). `shots == 0` uses the exact
/// expectations. The reconstruction is projected back onto the state space.
pub fn estimate_state(rho_true: &DensityMatrix, shots: u64, seed: u64) -> Result<DensityMatrix> {
    let exact = decompose(rho_true);
    if shots == 0 {
        return project_to_state(&reconstruct_matrix(&exact));
    }
    let sample = |index: u64, e: f64| -> Result<f64> {
        let p = (0.5 * (1.0 + e)).clamp(0.0, 1.0);
        let dist = Binomial::new(shots, p).map_err(|_| Error::InvalidParameter {
            name: "expectation",
            value: e,
            reason: "not a valid ±1 expectation",
        })?;
        let k = dist.sample(&mut rng::stream(seed, index));
        Ok(2.0 * k as f64 / shots as f64 - 1.0)
    };
    let mut est = HsForm { r: [0.0; 3], s: [0.0; 3], t: exact.t };
    for i in 0..3 {
        est.r[i] = sample(i as u64, exact.r[i])?;
        est.s[i] = sample(3 + i as u64, exact.s[i])?;
        for j in 0..3 {
            est.t.0[i][j] = sample(6 + (3 * i + j) as u64, exact.t.0[i][j])?;
        }
    }
    project_to_state(&reconstruct_matrix(&est))
}
