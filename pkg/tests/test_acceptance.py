"""Acceptance checks: one test per numbered criterion of the verification
suite, all driven from a single deterministic run so criteria that share
state (10 and 11) see the same intermediate results."""

import pytest

from cbens import verify

NAMES = {
    1: "determinant identity",
    2: "truncation",
    3: "perturbation endpoints",
    4: "algebraic involutions",
    5: "path constructions",
    6: "canonical system cross-check",
    7: "secular zeros",
    8: "operator traces",
    9: "radial density",
    10: "edge kernel mean count",
    11: "limit cross-validation",
    12: "sde integrator checks",
    13: "distributional identities",
    14: "deformed truncated density",
    15: "reflection symmetry at the edge",
}


@pytest.fixture(scope="session")
def report():
    return verify.run_suite("all", seed=verify.DEFAULT_SEED)


@pytest.mark.parametrize("number", sorted(NAMES))
def test_criterion(report, number):
    result = next(r for r in report["results"] if r["criterion"] == number)
    status = "PASS" if result["passed"] else "FAIL"
    print(f"criterion {number:2d} ({result['name']}): {status} "
          f"{result['details']}")
    assert result["passed"], result
