import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmetro.channels import ModelParams, random_params
from relmetro.errors import DegenerateSupport, NoOptimum, ParamOutOfRange, SingularTheta
from relmetro.qfi import (
    StateFamily,
    block_sld,
    grid_argmax,
    model_family,
    model_sld,
    optimal_p,
    optimal_p_q0,
    optimal_q,
    optimal_r,
    optimal_r_p0,
    optimal_value,
    qfi_block,
    qfi_numeric,
    qfi_phase_closed,
    qfi_weight_closed,
    qfi_weight_q0,
    weight_qfi_array,
)

# (theta, phi, p, q, r) -> (F_theta, F_phi), frozen from a 40-digit spectral sum
ORACLE = [
    ((1.0, 0.3, 0.2, 0.4, 0.5), 1.1014538943749295771, 0.68924815939144579513),
    ((2.5, 1.0, 0.6, 0.1, 0.7), 1.8255204292624711266, 0.57789720853171045518),
    ((0.4, 0.0, 0.9, 0.9, 0.2), 0.96718765143915232598, 0.146093330035236908),
]


@pytest.mark.parametrize("args, f_theta, f_phi", ORACLE)
def test_closed_forms_against_oracle(args, f_theta, f_phi):
    p = ModelParams(*args)
    assert qfi_weight_closed(p) == pytest.approx(f_theta, abs=1e-13)
    assert qfi_phase_closed(p) == pytest.approx(f_phi, abs=1e-13)


@pytest.mark.parametrize("args, f_theta, f_phi", ORACLE)
def test_numeric_and_block_against_oracle(args, f_theta, f_phi):
    p = ModelParams(*args)
    for wrt, ref in (("theta", f_theta), ("phi", f_phi)):
        x = getattr(p, wrt)
        assert qfi_numeric(model_family(p, wrt), x).value == pytest.approx(ref, abs=1e-8)
        assert qfi_block(p, wrt).value == pytest.approx(ref, abs=1e-8)


def test_pure_state_examples():
    # |psi(x)> = cos(x)|0> + sin(x)|1> has F = 4
    def qubit(x):
        v = np.array([np.cos(x), np.sin(x)])
        return np.outer(v, v).astype(complex)

    res = qfi_numeric(StateFamily(qubit), 0.3)
    assert res.value == pytest.approx(4, abs=1e-8)
    assert res.support_dim == 1
    # no measurement, no decoherence: F_theta = 1, F_phi = sin^2 theta
    p = ModelParams(1.1, 0.4)
    assert qfi_weight_closed(p) == pytest.approx(1, abs=1e-14)
    assert qfi_phase_closed(p) == pytest.approx(np.sin(1.1) ** 2, abs=1e-14)


def test_constant_family_has_zero_qfi():
    rho = np.diag([0.3, 0.7, 0, 0]).astype(complex)
    assert qfi_numeric(StateFamily(lambda x: rho), 0.0).value == 0


def test_degenerate_support():
    with pytest.raises(DegenerateSupport):
        qfi_numeric(StateFamily(lambda x: np.zeros((2, 2), complex)), 0.0)


def test_block_sld_examples():
    # diagonal 1x1 blocks: L = x'/x, zero block -> 0
    l = block_sld([np.array([[0.5]]), np.array([[0.0]])], [np.array([[0.25]]), np.array([[0.0]])])
    np.testing.assert_allclose(l, np.diag([0.5, 0]))
    # full-rank qubit: rho = (I + z Z)/2 with dz/dx = 1 -> L = Z / (1 - z^2) - z I / (1 - z^2)
    z = 0.6
    rho = np.diag([(1 + z) / 2, (1 - z) / 2])
    drho = np.diag([0.5, -0.5])
    l = block_sld([rho], [drho])
    expected = np.diag([1 / (1 + z), -1 / (1 - z)])
    np.testing.assert_allclose(l, expected, atol=1e-14)
    with pytest.raises(ValueError):
        block_sld([rho], [])


def test_model_sld_solves_lyapunov_equation(rng):
    for _ in range(200):
        params = random_params(rng, 0.95, 0.95)
        params = params.replace(theta=float(np.clip(params.theta, 0.05, np.pi - 0.05)))
        for wrt in ("theta", "phi"):
            l, rho, drho = model_sld(params, wrt)
            assert np.max(np.abs((rho @ l + l @ rho) / 2 - drho)) <= 1e-8


def test_three_routes_agree(rng):
    for _ in range(300):
        params = random_params(rng, 0.95, 0.95)
        params = params.replace(theta=float(np.clip(params.theta, 0.05, np.pi - 0.05)))
        fn = qfi_numeric(model_family(params, "theta"), params.theta).value
        fb = qfi_block(params, "theta").value
        assert fn == pytest.approx(qfi_weight_closed(params), abs=1e-6)
        assert fb == pytest.approx(fn, abs=1e-6)
        fn = qfi_numeric(model_family(params, "phi"), params.phi).value
        assert fn == pytest.approx(qfi_phase_closed(params), abs=1e-6)


def test_phase_closed_singular_theta():
    with pytest.raises(SingularTheta):
        qfi_phase_closed(ModelParams(0.0))
    with pytest.raises(SingularTheta):
        qfi_phase_closed(ModelParams(np.pi))


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, np.pi - 0.01), st.floats(0, 0.99), st.floats(0, np.pi / 4))
def test_weight_qfi_unaffected_by_acceleration_without_reversal(theta, p, r):
    f = qfi_weight_closed(ModelParams(theta, 0, p, 0, r))
    assert f == pytest.approx(qfi_weight_q0(theta, p), abs=1e-10)
    assert f == pytest.approx(qfi_weight_closed(ModelParams(theta, 0, p, 0, 0)), abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, np.pi - 0.01), st.floats(0, 2 * np.pi), st.floats(0, 0.99),
       st.floats(0, 0.99), st.floats(0, np.pi / 4))
def test_qfi_bounded_by_optimum_and_phase_free(theta, phi, p, q, r):
    params = ModelParams(theta, phi, p, q, r)
    f = qfi_weight_closed(params)
    assert 0 <= f <= optimal_value(theta) * (1 + 1e-9)
    assert f == pytest.approx(qfi_weight_closed(params.replace(phi=0)), abs=1e-12)
    assert qfi_phase_closed(params) == pytest.approx(qfi_phase_closed(params.replace(phi=0)), abs=1e-12)


def test_projective_limit():
    for kw in (dict(p=1 - 1e-6), dict(q=1 - 1e-6)):
        params = ModelParams(1.5, 0, r=0.3, **kw)
        assert qfi_weight_closed(params) < 1e-3
        assert qfi_phase_closed(params) < 1e-3


def test_optimal_p_q0_examples():
    p, f = optimal_p_q0(2 * np.pi / 3)
    assert p == pytest.approx(2 / 3, abs=1e-14)
    assert f == pytest.approx(4 / 3, abs=1e-14)
    assert optimal_p_q0(np.pi / 2) == (0.0, 1.0)
    with pytest.raises(NoOptimum):
        optimal_p_q0(1.0)


@pytest.mark.parametrize("theta, p, q, r_grid", [
    (0.8, 0.0, 0.9, 0.7749), (0.8, 0.25, 0.9, 0.5602), (1.3, 0.0, 0.5, 0.546),
    (1.3, 0.5, 0.75, 0.4378), (1.8, 0.5, 0.25, 0.4902), (1.8, 0.75, 0.75, 0.7791),
])
def test_optimal_r_examples(theta, p, q, r_grid):
    r = optimal_r(theta, p, q)
    assert r == pytest.approx(r_grid, abs=2e-4)
    f = qfi_weight_closed(ModelParams(theta, 0, p, q, r))
    assert f == pytest.approx(optimal_value(theta), abs=1e-8)
    if p == 0:
        assert optimal_r_p0(theta, q) == pytest.approx(r, abs=1e-12)


def test_optimal_r_none_cases():
    assert optimal_r(2.0, 0.2, 0.8) is None
    assert optimal_r(1.0, 0.2, 0.0) is None
    with pytest.raises(ParamOutOfRange):
        optimal_r(0.0, 0.2, 0.5)


def test_optimal_p_and_q_examples():
    p = optimal_p(0.5, 0.3, 2.3)
    assert p == pytest.approx(0.8952869234070794, abs=1e-12)
    assert qfi_weight_closed(ModelParams(2.3, 0, p, 0.5, 0.3)) == pytest.approx(optimal_value(2.3), abs=1e-8)
    q = optimal_q(0.5, 0.3, 1.0)
    assert q == pytest.approx(0.8620105068322125, abs=1e-12)
    assert qfi_weight_closed(ModelParams(1.0, 0, 0.5, q, 0.3)) == pytest.approx(optimal_value(1.0), abs=1e-8)
    with pytest.raises(ParamOutOfRange):
        optimal_p(0.5, 0.3, 1.0)
    with pytest.raises(ParamOutOfRange):
        optimal_q(0.5, 0.3, 2.0)


def test_optimal_p_matches_grid():
    for theta in (1.8, 2.3, 2.8):
        for q in (0.25, 0.5):
            p = optimal_p(q, 0.3, theta)
            if p is None:
                continue
            g, _ = grid_argmax(lambda x: weight_qfi_array(theta, x, q, 0.3), 0, 1 - 1e-4)
            assert p == pytest.approx(g, abs=2e-4)


def test_optimal_value_monotone_away_from_half_pi():
    th = np.linspace(0.1, np.pi / 2, 50)
    assert np.all(np.diff([optimal_value(t) for t in th]) < 0)


def test_grid_argmax_ties_go_left():
    x, y = grid_argmax(lambda x: np.ones_like(x), 0.0, 1.0, 0.25)
    assert (x, y) == (0.0, 1.0)
    x, _ = grid_argmax(lambda x: -(x - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-9)


def test_equal_strength_enhancement_beyond_half_pi():
    """With p = q and theta > pi/2 the reversed, accelerated probe beats the bare one."""
    for p in (0.2, 0.4, 0.6):
        for theta in (1.8, 2.3, 2.8):
            if optimal_r(theta, p, p) is not None:
                continue
            r = np.linspace(1e-3, np.pi / 4, 200)
            assert np.all(weight_qfi_array(theta, p, p, r) > 1)


def test_equal_strength_no_acceleration_is_neutral():
    # the reversal exactly undoes the weak measurement when r = 0
    for p in (0.2, 0.4, 0.6):
        for theta in (0.3, 1.3, 2.8):
            assert qfi_weight_closed(ModelParams(theta, 0, p, p, 0)) == pytest.approx(1, abs=1e-12)
