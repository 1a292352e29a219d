"""Smoke test for the pyqdistill extension module."""

import json
import math

import pyqdistill as q


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    w = q.DensityMatrix.werner(0.75)
    min_eig, inseparable = q.ppt_test(w)
    assert inseparable and close(min_eig, -0.25)
    assert close(q.singlet_fraction(w), 0.75)

    f, p = q.bbpssw_recurrence(0.75)
    _, f_step, p_step = q.bbpssw_step(w)
    assert close(f, f_step) and close(p, p_step)

    geo = q.geometry(q.DensityMatrix.werner(1.0))
    assert close(geo["n"], 3.0)

    rho = q.DensityMatrix.eq10(math.sqrt(0.9), math.sqrt(0.1), 0.8)
    _, pass_probability, filtered = q.derive_filter(rho)
    assert 0.0 < pass_probability <= 1.0
    assert q.singlet_fraction(filtered) > 0.5

    report = q.distill_report(rho, 0.9)
    assert report["reached_target"]

    run = q.simulate(w, 100_000, 0.85, 7)
    assert run["within_5_sigma"]

    back = q.DensityMatrix.from_json(w.to_json())
    assert back.distance(w) < 1e-12
    assert q.estimate_state(w, 0, 0).distance(w) < 1e-12
    assert len(w.matrix()) == 4

    try:
        q.DensityMatrix.from_json(json.dumps({"dim": 4, "matrix": [[[0, 0]] * 4] * 4}))
    except q.QdistillError as e:
        print("rejected zero matrix:", e)
    else:
        raise AssertionError("zero matrix accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
