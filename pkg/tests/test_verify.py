import pytest

from corrcm.verify import FAULTS, run_suites

NAMES = [
    "oracle-vs-ccm",
    "M-vs-M_alt",
    "transfer-vs-superop",
    "transfer-vs-xi",
    "closed-form-vs-matrix-power",
    "dprime-closed-vs-matrix-power",
]


@pytest.mark.parametrize("seed", [0, 7])
def test_all_suites_pass(seed):
    results = run_suites(n_max=4, seed=seed)
    assert [r.name for r in results] == NAMES
    assert all(r.ok for r in results), results


def test_pure_path_beyond_mixed_budget():
    results = run_suites(n_max=9, seed=1)
    assert results[0].ok


@pytest.mark.parametrize("fault", FAULTS)
def test_fault_is_caught_by_one_suite(fault):
    bad = [r.name for r in run_suites(n_max=2, fault=fault) if not r.ok]
    assert bad == ["transfer-vs-superop"]


@pytest.mark.parametrize("kwargs", [{"fault": "nope"}, {"n_max": -1}, {"n_max": 99}])
def test_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        run_suites(**kwargs)
