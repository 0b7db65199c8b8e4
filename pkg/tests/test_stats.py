from fractions import Fraction

import pytest

from delaymoments.algebra import (
    Polynomial,
    RationalFunction,
    SYM_G,
    SYM_M,
    VAR_GAMMA,
    VAR_INV_GAMMA,
    VAR_INV_M,
)
from delaymoments.stats import (
    RegimeRequest,
    StatisticRequest,
    compute_statistic,
    cumulant,
    moments_from_cumulants,
    power_sum_moment,
    validate_conjectures,
    variance,
    wigner_moment,
    _cumulant,
    _wigner_moment,
)


def pm(*coeffs):
    return Polynomial(SYM_M, coeffs)


def pg(*coeffs):
    return Polynomial(SYM_G, coeffs)


def test_power_sum_single_row_is_schur():
    from delaymoments.engine import delay_schur_moment

    req = RegimeRequest(VAR_GAMMA, 2)
    assert power_sum_moment((1,), req) == delay_schur_moment((1,), VAR_GAMMA, 2)


def test_power_sum_character_combinations():
    # Tr(Q^2) = s_(2) - s_(1,1) and (Tr Q)^2 = s_(2) + s_(1,1).
    from delaymoments.engine import delay_schur_moment

    req = RegimeRequest(VAR_GAMMA, 2)
    s2 = delay_schur_moment((2,), VAR_GAMMA, 2)
    s11 = delay_schur_moment((1, 1), VAR_GAMMA, 2)
    assert power_sum_moment((2,), req) == s2 - s11
    assert power_sum_moment((1, 1), req) == s2 + s11


def test_wigner_moment_mean_all_regimes():
    m = wigner_moment(1, RegimeRequest(VAR_INV_M, 2))
    assert m.coefficient(0) == RationalFunction(pg(1), pg(1, 1))
    m = wigner_moment(1, RegimeRequest(VAR_GAMMA, 1))
    assert m.coefficient(0) == RationalFunction(pm(1))
    m = wigner_moment(1, RegimeRequest(VAR_INV_GAMMA, 2))
    assert m.coefficient(1) == RationalFunction(pm(1))
    assert m.coefficient(2) == RationalFunction(pm(-1))


def test_second_moment_is_variance_plus_square():
    for regime, order in ((VAR_INV_M, 4), (VAR_GAMMA, 2), (VAR_INV_GAMMA, 6)):
        req = RegimeRequest(regime, order)
        m1 = wigner_moment(1, req)
        m2 = wigner_moment(2, req)
        var = variance(req)
        diff = m2 - (var + m1 * m1)
        for p in range(diff.min_power, diff.order + 1):
            assert diff.coefficient(p).is_zero


@pytest.mark.parametrize("regime,order", [(VAR_INV_M, 4), (VAR_GAMMA, 2),
                                          (VAR_INV_GAMMA, 8)])
def test_moment_cumulant_round_trip(regime, order):
    cums = {j: _cumulant(j, regime, order) for j in range(1, 5)}
    for n in range(1, 5):
        rebuilt = moments_from_cumulants(cums, n)
        direct = _wigner_moment(n, regime, order)
        lo = max(rebuilt.min_power, direct.min_power)
        hi = min(rebuilt.order, direct.order)
        assert hi >= order - 1
        for p in range(lo, hi + 1):
            assert rebuilt.coefficient(p) == direct.coefficient(p), (n, p)


def test_compute_statistic_dispatch():
    from delaymoments.partitions import Partition

    req = RegimeRequest(VAR_GAMMA, 1)
    sr = StatisticRequest("variance", req)
    assert compute_statistic(sr) == variance(req)
    sr = StatisticRequest("wigner_moment", req, n=2)
    assert compute_statistic(sr) == wigner_moment(2, req)
    sr = StatisticRequest("schur_r", req, partition=Partition())
    assert compute_statistic(sr).coefficient(0) == RationalFunction(pm(1))
    with pytest.raises(ValueError):
        StatisticRequest("cumulant", req)
    with pytest.raises(ValueError):
        StatisticRequest("schur_q", req, partition=Partition())
    with pytest.raises(ValueError):
        StatisticRequest("nonsense", req)


def test_validate_conjectures_small():
    report = validate_conjectures(2)
    assert report.all_passed
    ids = {item.item_id for item in report.items}
    assert {"a.n=1", "a.n=2", "b.n=1", "c.n=2", "d1.n=2", "d2.n=1",
            "e.n=2"} <= ids
    payload = report.to_dict()
    assert payload["all_passed"] is True
    assert len(payload["items"]) == len(report.items)


def test_summation_order_invariance():
    # Exact arithmetic: accumulating the dimension-weighted Schur moments in
    # reversed enumeration order reproduces every coefficient.
    from delaymoments.engine import delay_schur_moment
    from delaymoments.partitions import dimension, enumerate_partitions

    req = RegimeRequest(VAR_GAMMA, 2)
    reference = wigner_moment(3, req)
    total = None
    for mu in reversed(enumerate_partitions(3)):
        term = delay_schur_moment(mu, VAR_GAMMA, 2).scale(dimension(mu))
        total = term if total is None else total + term
    total = total.scale(RationalFunction(pm(1), pm(0, 0, 0, 1)))
    for p in range(0, 3):
        assert total.coefficient(p) == reference.coefficient(p)


def test_conjecture_b_example():
    # First slope identity at n=1: slope of the mean equals minus half the
    # zero-absorption second trace moment.
    from delaymoments.stats import _trace_moment

    p1 = _trace_moment(1, VAR_GAMMA, 1)
    p2 = _trace_moment(2, VAR_GAMMA, 0)
    assert p1.coefficient(1) == p2.coefficient(0) * Fraction(-1, 2)
    assert p2.coefficient(0) == RationalFunction(pm(0, 0, 2), pm(-1, 0, 1))
