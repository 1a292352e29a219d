//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::process::Command;

use qdistill::distill::{
    bbpssw_step, distill_pipeline, filter_ensemble, simulate_ensemble_with, twirl_werner, EnsembleOptions,
};
use qdistill::hs_geometry::{diagonalize_t, in_octahedron, in_octahedron_via_tetrahedra, in_tetrahedron, n_value};
use qdistill::inseparability::{derive_filter, family_filter, ppt_test};
use qdistill::qlinalg::Vec3;
use qdistill::qstate::{eq10_state, random_mixed, random_separable, singlet_fraction, werner_state, DensityMatrix};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

/// Random states of mixed rank, so the samples cover pure to nearly mixed.
fn sample(seed: u64) -> DensityMatrix {
    random_mixed(seed, 1 + (seed % 4) as usize).unwrap()
}

fn criterion_1() -> Verdict {
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    for seed in 0..1000 {
        let v = ppt_test(&random_separable(seed, 1 + (seed % 4) as usize).unwrap());
        worst = worst.min(v.min_eigenvalue);
        if v.inseparable || v.min_eigenvalue < -1e-10 {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("1000 separable states, {failures} flagged, lowest PT eigenvalue {worst:.3e}"))
}

fn criterion_2() -> Verdict {
    let (mut checked, mut failures, mut margin) = (0, 0, f64::INFINITY);
    let mut seed = 0;
    while checked < 1000 {
        seed += 1;
        let rho = sample(seed);
        if !ppt_test(&rho).inseparable {
            continue;
        }
        checked += 1;
        let d = derive_filter(&rho).unwrap();
        let (out, _) = filter_ensemble(&d.rotated, &d.filter).unwrap();
        let f = singlet_fraction(&out).f;
        margin = margin.min(f - 0.5);
        if f <= 0.5 {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("1000 inseparable states, {failures} failures, smallest f - 1/2 = {margin:.3e}"))
}

fn criterion_3() -> Verdict {
    let (mut above, mut below) = (0, 0);
    let (mut err_above, mut excess_below) = (0.0f64, f64::NEG_INFINITY);
    let mut seed = 100_000;
    while above < 500 || below < 500 {
        seed += 1;
        let rho = sample(seed);
        let n = n_value(&rho);
        let f = singlet_fraction(&rho).f;
        if n > 1.0 && above < 500 {
            above += 1;
            err_above = err_above.max((f - 0.25 * (1.0 + n)).abs());
        } else if n <= 1.0 && below < 500 {
            below += 1;
            excess_below = excess_below.max(f - 0.5);
        }
    }
    verdict(
        err_above < 1e-6 && excess_below <= 1e-6,
        format!("N > 1: max |f - (1+N)/4| = {err_above:.3e}; N <= 1: max f - 1/2 = {excess_below:.3e}"),
    )
}

fn criterion_4() -> Verdict {
    let mut worst: f64 = 0.0;
    for f in [0.3, 0.5, 0.6, 0.75, 0.9] {
        let rho = werner_state(f).unwrap();
        worst = worst.max((ppt_test(&rho).min_eigenvalue - (1.0 - 2.0 * f) / 2.0).abs());
        worst = worst.max((n_value(&rho) - (4.0 * f - 1.0).abs()).abs());
    }
    verdict(worst < 1e-10, format!("max deviation from closed forms {worst:.3e}"))
}

/// Bell weights (f, g, g, g) with g = (1-f)/3: the step keeps a pair when
/// both inputs lie in the same {Φ±} or {Ψ±} class, and the kept pair is the
/// target Bell state when both inputs were (Φ+, Φ+) or (Φ-, Φ-).
fn recurrence(f: f64) -> (f64, f64) {
    let g = (1.0 - f) / 3.0;
    let keep = (f + g).powi(2) + (2.0 * g).powi(2);
    ((f * f + g * g) / keep, keep)
}

fn criterion_5() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in 0..9 {
        let f = 0.55 + 0.05 * k as f64;
        let step = bbpssw_step(&werner_state(f).unwrap()).unwrap();
        let (fo, po) = recurrence(f);
        worst = worst.max((step.f_new - fo).abs()).max((step.p_success - po).abs());
    }
    let spot = bbpssw_step(&werner_state(0.75).unwrap()).unwrap();
    let spot_ok = (spot.f_new - 0.78846).abs() < 5e-6 && (spot.p_success - 0.72222).abs() < 5e-6;
    verdict(
        worst < 1e-10 && spot_ok,
        format!("max deviation {worst:.3e}; f = 0.75 gives f' = {:.5}, p = {:.5}", spot.f_new, spot.p_success),
    )
}

const VERTICES: [Vec3; 4] = [[-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];

/// Barycentric coordinates of d with respect to the four vertices.
fn in_hull(d: Vec3) -> bool {
    let mut a = [[0.0f64; 5]; 4];
    for row in 0..3 {
        for k in 0..4 {
            a[row][k] = VERTICES[k][row];
        }
        a[row][4] = d[row];
    }
    a[3] = [1.0; 5];
    for col in 0..4 {
        let piv = (col..4).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, piv);
        for row in 0..4 {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..5 {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    (0..4).all(|k| a[k][4] / a[k][k] >= -1e-9)
}

fn criterion_6() -> Verdict {
    let (mut hull_mismatch, mut octa_mismatch) = (0, 0);
    let axis = |i: usize| -1.2 + 2.4 * i as f64 / 40.0;
    for i in 0..41 {
        for j in 0..41 {
            for k in 0..41 {
                let d = [axis(i), axis(j), axis(k)];
                hull_mismatch += usize::from(in_tetrahedron(d) != in_hull(d));
                octa_mismatch += usize::from(in_octahedron(d) != in_octahedron_via_tetrahedra(d));
            }
        }
    }
    let (mut twirled, mut twirl_failures) = (0, 0);
    let mut seed = 200_000;
    while twirled < 200 {
        seed += 1;
        let rho = sample(seed);
        let d = diagonalize_t(&rho).d;
        if d.iter().map(|x| x.abs()).sum::<f64>() >= 1.0 - 1e-9 {
            continue;
        }
        twirled += 1;
        twirl_failures += usize::from(ppt_test(&twirl_werner(&rho)).inseparable);
    }
    verdict(
        hull_mismatch == 0 && octa_mismatch == 0 && twirl_failures == 0,
        format!(
            "41^3 grid: {hull_mismatch} hull and {octa_mismatch} octahedron mismatches; 200 twirls, {twirl_failures} inseparable"
        ),
    )
}

fn criterion_7() -> Verdict {
    let inputs = [
        ("werner(0.75)", werner_state(0.75).unwrap()),
        ("eq10(sqrt 0.9, sqrt 0.1, 0.8)", eq10_state(0.9f64.sqrt(), 0.1f64.sqrt(), 0.8).unwrap()),
        ("eq10(sqrt 0.8, sqrt 0.2, 0.3)", eq10_state(0.8f64.sqrt(), 0.2f64.sqrt(), 0.3).unwrap()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (seed, (name, rho)) in (2024..).zip(inputs) {
        let exact = distill_pipeline(&rho, 0.9, 64).unwrap();
        let opts = EnsembleOptions { n_pairs: 1_000_000, f_target: 0.9, max_steps: 64, seed, workers: 0 };
        let run = simulate_ensemble_with(&rho, &opts).unwrap();
        let expected = exact.cumulative_efficiency * 1e6;
        let z = (run.surviving_pairs as f64 - expected) / run.sigma;
        pass &= z.abs() <= 5.0;
        parts.push(format!("{name}: eps {:.4e}, z = {z:+.2}", exact.cumulative_efficiency));
    }
    verdict(pass, parts.join("; "))
}

fn criterion_8() -> Verdict {
    let c2s = [0.6, 0.6875, 0.775, 0.8625, 0.95];
    let ps = [0.1, 0.3, 0.7, 0.9];
    let (mut separable, mut failures) = (0, Vec::new());
    for c2 in c2s {
        for p in ps {
            let (c, d) = (f64::sqrt(c2), f64::sqrt(1.0 - c2));
            let rho = eq10_state(c, d, p).unwrap();
            separable += usize::from(!ppt_test(&rho).inseparable);
            let (out, _) = filter_ensemble(&rho, &family_filter(c, d).unwrap()).unwrap();
            let f = singlet_fraction(&out).f;
            if f <= 0.5 {
                failures.push(format!("(c^2 = {c2}, p = {p}) f = {f:.4}"));
            }
        }
    }
    verdict(
        separable == 0 && failures.is_empty(),
        format!(
            "20 grid states, {separable} separable; filter diag(c, d) leaves f <= 1/2 at {} points {}",
            failures.len(),
            failures.join(", ")
        ),
    )
}

fn criterion_9() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_qdistill");
    let run = |args: &[&str]| Command::new(exe).args(args).output().expect("binary runs");
    let commands: [&[&str]; 6] = [
        &["analyze", "--random", "11"],
        &["geometry", "--random", "11"],
        &["distill", "--random", "11", "--target", "0.95", "--csv"],
        &["estimate", "--random", "11", "--seed", "5", "--shots", "1000"],
        &["simulate", "--werner", "0.75", "--target", "0.85", "--pairs", "200000", "--seed", "3", "--workers", "1"],
        &["simulate", "--werner", "0.75", "--target", "0.85", "--pairs", "200000", "--seed", "3", "--workers", "4"],
    ];
    let outputs: Vec<_> = commands.iter().map(|a| (run(a), run(a))).collect();
    let mut pass = true;
    for ((a, b), args) in outputs.iter().zip(commands) {
        pass &= a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
        if !pass {
            return verdict(false, format!("{args:?} not reproducible"));
        }
    }
    pass &= outputs[4].0.stdout == outputs[5].0.stdout;
    verdict(pass, "5 commands byte-identical across runs; simulate identical for 1 and 4 workers")
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let v = check();
        println!("criterion {n}: {}  {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
