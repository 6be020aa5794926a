import math

import numpy as np
import pytest

from qalphabet import assembly as asm
from qalphabet.assembly import AssemblyConfig
from qalphabet.errors import DomainError, RangeError
from qalphabet.queries import residual_error


def test_per_site_error():
    assert asm.per_site_error(4, 1) <= 1e-12
    assert asm.per_site_error(21, 3) == pytest.approx(9.533012736e-4, abs=1e-12)
    assert asm.per_site_error(10, 2) == pytest.approx(1.44e-3, abs=1e-12)
    for n, q in [(7, 2), (33, 5)]:
        assert asm.per_site_error(n, q) == residual_error(n, q)


def test_chain_fidelity():
    for length in (1, 10, 10**6):
        assert asm.chain_fidelity(0.0, length) == 1.0
    assert asm.chain_fidelity(9.7e-4, 1000) == pytest.approx(0.379, abs=5e-4)
    assert asm.chain_fidelity(9.7e-4, 1000) == pytest.approx(math.exp(1000 * math.log1p(-9.7e-4)), rel=1e-12)
    assert asm.chain_fidelity(0.25, 1) == 0.75
    with pytest.raises(DomainError):
        asm.chain_fidelity(1.5, 3)
    with pytest.raises(DomainError):
        asm.chain_fidelity(0.1, 0)


def test_config_validation():
    with pytest.raises(DomainError):
        AssemblyConfig(1, 1, 10, 10, 0)
    with pytest.raises(DomainError):
        AssemblyConfig(4, 0, 10, 10, 0)
    with pytest.raises(DomainError):
        AssemblyConfig(4, 1, 10, 10, -1)
    with pytest.raises(DomainError):
        AssemblyConfig(4, 1, 10, 10, 2**64)
    with pytest.raises(RangeError):
        AssemblyConfig(4, 1, 2**30, 2**30, 0)


def test_exact_alphabet_never_errs(backend):
    report = asm.simulate_assembly(AssemblyConfig(4, 1, 10**4, 10, 3), backend=backend)
    assert report.error_sites == 0
    assert report.empirical_site_error == 0.0
    assert report.empirical_chain_fidelity == 1.0
    assert report.error_count_histogram == ((0, 10),)


def test_site_error_converges_21_3(backend):
    config = AssemblyConfig(21, 3, 1000, 200, 11)
    report = asm.simulate_assembly(config, backend=backend)
    eps = residual_error(21, 3)
    assert report.total_sites == 200_000
    assert abs(report.empirical_site_error - eps) <= 3 * math.sqrt(eps * (1 - eps) / report.total_sites)


def test_chain_fidelity_converges():
    config = AssemblyConfig(10, 2, 500, 4000, 123)
    r = asm.simulate_assembly(config)
    f = r.expected_chain_fidelity
    assert abs(r.empirical_chain_fidelity - f) <= 3 * math.sqrt(f * (1 - f) / config.trials)
    assert sum(c for _, c in r.error_count_histogram) == config.trials
    assert sum(k * c for k, c in r.error_count_histogram) == r.error_sites


def test_determinism_and_backend_agreement():
    config = AssemblyConfig(21, 3, 777, 50, 2**63 + 5)
    a = asm.simulate_assembly(config)
    assert asm.simulate_assembly(config) == a
    assert asm.simulate_assembly(config, backend="numpy") == a


def test_trial_streams_are_order_free():
    # a trial's draws depend only on (seed, trial index)
    x = asm.trial_stream(9, 3).random(5)
    for _ in range(3):
        asm.trial_stream(9, 0).random(100)
    np.testing.assert_array_equal(asm.trial_stream(9, 3).random(5), x)
    assert not np.array_equal(asm.trial_stream(9, 4).random(5), x)


def test_chunking_does_not_change_counts(monkeypatch):
    config = AssemblyConfig(10, 2, 5000, 7, 42)
    whole = asm.simulate_assembly(config)
    monkeypatch.setattr(asm, "_CHUNK", 333)
    assert asm.simulate_assembly(config) == whole


def test_disjoint_seeds_agree_within_4_sigma():
    eps = residual_error(10, 2)
    a = asm.simulate_assembly(AssemblyConfig(10, 2, 1000, 150, 1))
    b = asm.simulate_assembly(AssemblyConfig(10, 2, 1000, 150, 2))
    assert a != b
    sigma = math.sqrt(2 * eps * (1 - eps) / a.total_sites)
    assert abs(a.empirical_site_error - b.empirical_site_error) <= 4 * sigma


@pytest.mark.parametrize("n,q", [(10, 2), (5, 1), (21, 3)])
def test_state_vector_mode_agrees_with_closed_form(n, q, backend):
    config = AssemblyConfig(n, q, 2000, 60, 77)
    slow = asm.simulate_assembly(config, mode="state_vector", backend=backend)
    eps = residual_error(n, q)
    assert slow.per_site_error == eps
    assert abs(slow.empirical_site_error - eps) <= 3 * math.sqrt(eps * (1 - eps) / config.total_sites)


def test_state_vector_mode_exact_alphabet():
    r = asm.simulate_assembly(AssemblyConfig(4, 1, 3000, 5, 1), mode="state_vector")
    assert r.error_sites == 0


def test_state_vector_mode_limits():
    with pytest.raises(DomainError):
        asm.simulate_assembly(AssemblyConfig(33, 3, 10, 1, 0), mode="state_vector")
    with pytest.raises(ValueError):
        asm.simulate_assembly(AssemblyConfig(4, 1, 10, 1, 0), mode="bogus")


def test_report_ranges():
    r = asm.simulate_assembly(AssemblyConfig(3, 1, 50, 40, 8))
    for v in (r.empirical_site_error, r.empirical_chain_fidelity):
        assert 0.0 <= v <= 1.0
    assert r.site_error_stderr >= 0 and r.chain_fidelity_stderr >= 0
    d = r.to_dict()
    assert set(d["error_count_histogram"]) == {str(k) for k, _ in r.error_count_histogram}


def test_alphabet_scorecard():
    rows = asm.alphabet_scorecard()
    assert [(r.queries, r.alphabet_size) for r in rows] == [(1, 4), (2, 10), (3, 20), (3, 21)]
    assert rows[0].site_error <= 1e-12
    assert rows[0].chain_fidelity == pytest.approx(1.0, abs=1e-9)
    assert rows[1].site_error == pytest.approx(1.44e-3, abs=1e-12)
    assert rows[2].site_error == pytest.approx(6.08e-5, abs=1e-12)
    assert rows[3].chain_fidelity == pytest.approx((1 - rows[3].site_error) ** 1000, rel=1e-12)
    assert asm.alphabet_scorecard() == rows
