import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qalphabet import queries as qo
from qalphabet.amplitude import SearchSpec, run_grover, success_probability
from qalphabet.errors import DomainError, RangeError

from oracles import bisect_root, exact_success


def _size_by_bisection(q):
    return bisect_root(lambda n: (2 * q + 1) * math.asin(1 / math.sqrt(n)) - math.pi / 2, 2.0, 1e6)


def test_optimal_database_size_reproduces_table():
    assert qo.optimal_database_size(1) == pytest.approx(4.0, abs=1e-12)
    assert qo.optimal_database_size(2) == pytest.approx(10.472135955, abs=1e-9)
    assert round(qo.optimal_database_size(2), 1) == 10.5
    assert qo.optimal_database_size(3) == pytest.approx(20.195669358, abs=1e-9)
    assert round(qo.optimal_database_size(3), 1) == 20.2


@pytest.mark.parametrize("q", [1, 2, 3, 5, 12, 40])
def test_optimal_size_matches_root_finder(q):
    assert qo.optimal_database_size(q) == pytest.approx(_size_by_bisection(q), rel=1e-10)


def test_optimal_database_size_domain():
    for bad in (0, -1, 1.5):
        with pytest.raises(DomainError):
            qo.optimal_database_size(bad)


def test_minimal_queries_examples():
    assert qo.minimal_queries(4) == 1
    assert qo.minimal_queries(21) == 3
    assert qo.minimal_queries(2) == 1
    assert qo.minimal_queries(10) == 2
    assert qo.minimal_queries(10.5) == 2
    with pytest.raises(DomainError):
        qo.minimal_queries(1.9)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 10, 20, 21, 50, 100, 1000])
def test_minimal_queries_maximises_success(n):
    q = qo.minimal_queries(n)
    # search only the first half-turn, (2k+1)*theta <= pi; later revivals need more queries
    theta = math.asin(1 / math.sqrt(n))
    first_turn = [k for k in range(1, n + 2) if (2 * k + 1) * theta <= math.pi] or [1]
    best = max(first_turn, key=lambda k: (round(1 - qo.residual_error(n, k), 12), -k))
    assert q == best


def test_round_trip_and_exactness():
    prev = 0.0
    for q in range(1, 51):
        n = qo.optimal_database_size(q)
        assert n > prev
        prev = n
        assert qo.minimal_queries(n) == q
        assert qo.residual_error(n, q) <= 1e-12
        assert abs((2 * q + 1) * math.asin(1 / math.sqrt(n)) - math.pi / 2) <= 1e-12


def test_residual_error_values():
    assert qo.residual_error(4, 1) <= 1e-12
    # exact rationals: 36/25000 and 1 - exact_success(21, 3)
    assert float(1 - exact_success(10, 2)) == pytest.approx(1.44e-3, abs=1e-15)
    assert qo.residual_error(10, 2) == pytest.approx(1.44e-3, abs=1e-12)
    assert qo.residual_error(21, 3) == pytest.approx(float(1 - exact_success(21, 3)), abs=1e-12)
    assert qo.residual_error(21, 3) == pytest.approx(9.533012736e-4, abs=1e-12)
    assert qo.residual_error(20, 3) == pytest.approx(6.08e-5, abs=1e-12)
    assert float(1 - exact_success(20, 3)) == pytest.approx(6.08e-5, abs=1e-15)


@given(n=st.floats(2.0, 1e4), q=st.integers(0, 60))
def test_residual_error_clamped(n, q):
    assert 0.0 <= qo.residual_error(n, q) <= 1.0


def test_residual_error_domain():
    with pytest.raises(DomainError):
        qo.residual_error(1, 1)
    with pytest.raises(DomainError):
        qo.residual_error(4, -1)


def test_residual_matches_state_vector():
    for n in range(2, 65):
        for q in range(0, 11):
            spec = SearchSpec(n, 0)
            p = success_probability(run_grover(spec, q), spec)
            assert qo.residual_error(n, q) == pytest.approx(1 - p, abs=1e-10)


def test_boolean_capacity():
    assert qo.boolean_capacity(0) == 1
    assert qo.boolean_capacity(1) == 2
    assert qo.boolean_capacity(3) == 8
    with pytest.raises(RangeError):
        qo.boolean_capacity(5000)


def test_classical_guess_success():
    assert qo.classical_guess_success(4, 1) == 0.5
    for n in (2, 5, 17):
        assert qo.classical_guess_success(n, 0) == pytest.approx(1 / n)
        assert qo.classical_guess_success(n, n - 1) == 1.0
        assert qo.classical_guess_success(n, n + 3) == 1.0


def _classical_by_enumeration(n, q):
    # average over target positions; probe items 0..q-1 in order, then guess uniformly
    total = 0.0
    for target in range(n):
        if target < q:
            total += 1.0
        else:
            total += 1.0 / (n - q)
    return total / n


@pytest.mark.parametrize("n,q", [(4, 1), (5, 2), (10, 0), (10, 7), (21, 3)])
def test_classical_matches_enumeration(n, q):
    assert qo.classical_guess_success(n, q) == pytest.approx(_classical_by_enumeration(n, q), abs=1e-15)


def test_comparison_table():
    rows = qo.comparison_table(5)
    assert [r.queries for r in rows] == [1, 2, 3, 4, 5]
    assert rows[0].quantum_capacity == pytest.approx(4.0, abs=1e-12)
    assert rows[0].boolean_capacity == 2
    assert (rows[0].floor_size, rows[0].ceiling_size) == (4, 4)
    assert rows[0].residual_error_at_floor <= 1e-12
    assert rows[1].quantum_capacity == pytest.approx(10.47, abs=5e-3)
    assert rows[1].boolean_capacity == 4
    assert (rows[1].floor_size, rows[1].ceiling_size) == (10, 11)
    assert rows[1].residual_error_at_floor == pytest.approx(1.44e-3, abs=1e-12)
    assert rows[2].quantum_capacity == pytest.approx(20.20, abs=5e-3)
    assert rows[2].boolean_capacity == 8
    assert rows[2].residual_error_at_ceiling == pytest.approx(9.533012736e-4, abs=1e-12)
    assert qo.comparison_table(5) == rows


def test_query_plan():
    plan = qo.QueryPlan.for_(4, 1)
    assert plan.angle == pytest.approx(math.pi / 6)
    assert plan.residual_error <= 1e-12
