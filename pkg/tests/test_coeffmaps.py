import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstar.coeffmaps import (
    CaratheodoryJet,
    a4_taus,
    caratheodory_to_schwarz,
    coeffs_classical,
    coeffs_q,
    schwarz_b2_b3,
    schwarz_jet,
    schwarz_slack,
    tau_table,
)
from qstar.qcalc import CLASSICAL, QContext


def test_schwarz_jet_examples():
    j = schwarz_jet(1.0, 0.3, 0.2j)
    assert (j.b2, j.b3) == (0, 0)
    j = schwarz_jet(0.0, 0.5, 1.0)
    assert j.b2 == 0.5 and j.b3 == pytest.approx(0.75)
    j = schwarz_jet(0.5, 0.5, 1.0)
    assert j.b2 == pytest.approx(0.375) and j.b3 == pytest.approx(0.46875)


@pytest.mark.parametrize("args", [(-0.1, 0, 0), (1.1, 0, 0), (0.5, 1.2, 0), (0.5, 0, 2j), (0.5j, 0, 0)])
def test_schwarz_jet_domain(args):
    with pytest.raises(ValueError):
        schwarz_jet(*args)


def test_slack_nonnegative_on_random_jets():
    rng = np.random.default_rng(7)
    n = 20000
    b1 = rng.uniform(0, 1, n)
    alpha = np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    beta = np.exp(2j * np.pi * rng.uniform(0, 1, n))
    b2, b3 = schwarz_b2_b3(b1, alpha, beta)
    for s in schwarz_slack(b1, b2, b3):
        assert s.min() >= -1e-12


def test_caratheodory_bridge():
    assert caratheodory_to_schwarz(CaratheodoryJet(2, 2)) == (1, 0)
    assert caratheodory_to_schwarz(CaratheodoryJet(0, 2)) == (0, 1)
    assert caratheodory_to_schwarz(CaratheodoryJet(1, 1)) == (0.5, 0.25)
    with pytest.raises(ValueError):
        caratheodory_to_schwarz(CaratheodoryJet(2.5, 0))


@settings(max_examples=50, deadline=None)
@given(st.complex_numbers(max_magnitude=1), st.complex_numbers(max_magnitude=1))
def test_caratheodory_round_trip(b1, b2):
    c = CaratheodoryJet(2 * b1, (4 * b2 + 4 * b1 * b1) / 2)
    r1, r2 = caratheodory_to_schwarz(c)
    assert abs(r1 - b1) < 1e-12 and abs(r2 - b2) < 1e-12


def test_classical_map_examples():
    c = coeffs_classical(schwarz_jet(1, 0, 0))
    assert (c.a2, c.a3, c.a4) == pytest.approx((1, 1, 17 / 18))
    c = coeffs_classical(schwarz_jet(0, 1, 0))
    assert (c.a2, c.a3, c.a4) == pytest.approx((0, 0.5, 0))
    c = coeffs_classical(schwarz_jet(0, 0, 1))
    assert c.a4 == pytest.approx(1 / 3)


def test_q_map_at_half():
    c = coeffs_q(QContext(0.5), schwarz_jet(1, 0, 0))
    assert c.a2 == pytest.approx(2) and c.a3 == pytest.approx(10 / 3)
    assert c.a4.real == pytest.approx(5.19047619047619, abs=1e-12)


def test_q_map_delegates_in_classical_mode():
    j = schwarz_jet(0.4, 0.3 + 0.2j, -0.6j)
    assert coeffs_q(CLASSICAL, j) == coeffs_classical(j)


def test_q_map_tends_to_classical_monotonically():
    j = schwarz_jet(0.7, 0.4 - 0.3j, 0.2 + 0.5j)
    ref = coeffs_classical(j)
    gaps = []
    for q in (0.9, 0.99, 0.999):
        c = coeffs_q(QContext(q), j)
        gaps.append(max(abs(c.a2 - ref.a2), abs(c.a3 - ref.a3), abs(c.a4 - ref.a4)))
    assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-2


def test_tau_table_first_three():
    for q in (0.3, 0.8):
        t = tau_table(q)
        assert (t.tau1, t.tau2, t.tau3) == a4_taus(q)
        assert t.tau1 == pytest.approx(6 * q * q * (1 + q))


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.05, 0.95),
    st.floats(0, 1),
    st.complex_numbers(max_magnitude=1),
    st.complex_numbers(max_magnitude=1),
)
def test_h22_expansion_in_tau4_to_tau7(q, b1, alpha, beta):
    t = tau_table(q)
    j = schwarz_jet(b1, alpha, beta)
    c = coeffs_q(QContext(q), j)
    b1, b2, b3 = j.b1, j.b2, j.b3
    expanded = (b1 * b3 * t.tau4 - b2**2 * t.tau5 + b1**2 * b2 * t.tau6 - b1**4 * t.tau7) / (
        6 * q**2 * (1 + q) ** 2 * (1 + q + q * q)
    )
    assert abs((c.a2 * c.a4 - c.a3**2) - expanded) <= 1e-9 * max(1.0, abs(expanded))
