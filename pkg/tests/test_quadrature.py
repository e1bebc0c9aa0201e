import numpy as np
import pytest

from lpzeros import AbsolutelyContinuous, ConfigError, Discrete, NumericError, build_rule, integrate
from lpzeros.quadrature import _panel_boundaries


def test_two_point_rule_on_reference_interval():
    # [DERIVED] the 2-point Gauss-Legendre nodes on [-1, 1] are -+1/sqrt(3),
    # weights 1; standard closed form
    rule = build_rule(AbsolutelyContinuous(-1.0, 1.0, panels=1, nodes_per_panel=2))
    assert rule.nodes == pytest.approx([-1 / np.sqrt(3), 1 / np.sqrt(3)], abs=1e-15)
    assert rule.weights == pytest.approx([1.0, 1.0], abs=1e-15)


def test_discrete_atoms_returned_verbatim():
    atoms = ((-1.0, 0.5), (0.25, 1.5), (2.0, 0.25))
    rule = build_rule(Discrete(atoms))
    assert rule.nodes.tolist() == [-1.0, 0.25, 2.0]
    assert rule.weights.tolist() == [0.5, 1.5, 0.25]


def test_breakpoint_splits_single_panel():
    # [TRIVIAL] one panel of [-1, 1] with a breakpoint at 0 becomes two
    # panels, so a 4-point rule yields 8 nodes, none at the breakpoint
    base = AbsolutelyContinuous(-1.0, 1.0, panels=1, nodes_per_panel=4)
    rule = build_rule(base, breakpoints=[0.0])
    assert len(rule) == 8
    assert np.all(rule.nodes != 0.0)
    assert np.all((rule.nodes > -1) & (rule.nodes < 1))
    assert integrate(rule, lambda x: x * x) == pytest.approx(2 / 3, abs=1e-13)


def test_breakpoints_outside_support_are_ignored():
    base = AbsolutelyContinuous(-1.0, 1.0, panels=2, nodes_per_panel=8)
    plain = build_rule(base)
    padded = build_rule(base, breakpoints=[-3.0, 1.0, 5.0, -1.0])
    assert np.array_equal(plain.nodes, padded.nodes)


def test_near_duplicate_breakpoints_collapse():
    base = AbsolutelyContinuous(-1.0, 1.0, panels=1, nodes_per_panel=4)
    rule = build_rule(base, breakpoints=[0.5, 0.5 + 1e-15])
    assert len(rule) == 8  # one split, not two


def test_panel_boundaries_union():
    base = AbsolutelyContinuous(0.0, 4.0, panels=4, nodes_per_panel=2)
    cuts = _panel_boundaries(base, [2.5, 0.5])
    assert cuts.tolist() == [0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0]


@pytest.mark.parametrize("npp", [2, 3, 5, 8])
def test_monomial_exactness(npp):
    # [DERIVED] an npp-point Gauss rule is exact for degree <= 2 npp - 1;
    # verified against the closed-form integral of x^m over [a, b]
    a, b = -0.7, 1.3
    base = AbsolutelyContinuous(a, b, panels=3, nodes_per_panel=npp)
    rule = build_rule(base, breakpoints=[0.1])
    for mdeg in range(2 * npp):
        exact = (b ** (mdeg + 1) - a ** (mdeg + 1)) / (mdeg + 1)
        got = integrate(rule, lambda x, mdeg=mdeg: x**mdeg)
        assert got == pytest.approx(exact, rel=1e-12, abs=1e-14)


def test_odd_symmetry_cancellation():
    rule = build_rule(AbsolutelyContinuous(-1.0, 1.0))
    assert integrate(rule, lambda x: x**7) == pytest.approx(0.0, abs=1e-15)


def test_weights_positive():
    for base in (
        AbsolutelyContinuous(-1.0, 1.0),
        AbsolutelyContinuous(-2.0, 7.0, panels=3, nodes_per_panel=5),
    ):
        rule = build_rule(base, breakpoints=[0.3])
        assert np.all(rule.weights > 0)


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0, 5.5])
def test_self_convergence_under_panel_doubling(p):
    # kinked integrand |P|^p with breakpoints at the kinks: doubling the
    # panel count must not move the value beyond 1e-9 relative
    zeros = np.array([-np.sqrt(0.6), 0.0, np.sqrt(0.6)])

    def f(x):
        prod = np.ones_like(x)
        for z in zeros:
            prod = prod * (x - z)
        return np.abs(prod) ** p

    coarse = build_rule(AbsolutelyContinuous(-1.0, 1.0, panels=16, nodes_per_panel=64), zeros)
    fine = build_rule(AbsolutelyContinuous(-1.0, 1.0, panels=32, nodes_per_panel=64), zeros)
    a = integrate(coarse, f)
    b = integrate(fine, f)
    assert a == pytest.approx(b, rel=1e-9)


def test_nonfinite_integrand_reports_node():
    rule = build_rule(AbsolutelyContinuous(-1.0, 1.0, panels=1, nodes_per_panel=4))
    with pytest.raises(NumericError, match="not finite at node"):
        integrate(rule, lambda x: np.where(x > 0, np.inf, 1.0))


def test_malformed_interval_rejected():
    with pytest.raises(ConfigError):
        AbsolutelyContinuous(1.0, -1.0)
    with pytest.raises(ConfigError):
        AbsolutelyContinuous(1.0, 1.0)
    with pytest.raises(ConfigError):
        AbsolutelyContinuous(-1.0, 1.0, panels=0)
    with pytest.raises(ConfigError):
        AbsolutelyContinuous(-1.0, 1.0, nodes_per_panel=1)


def test_malformed_atoms_rejected():
    with pytest.raises(ConfigError):
        Discrete(())
    with pytest.raises(ConfigError):
        Discrete(((0.0, 1.0), (0.0, 1.0)))  # not strictly increasing
    with pytest.raises(ConfigError):
        Discrete(((0.0, 1.0), (1.0, -2.0)))  # negative weight
    with pytest.raises(ConfigError):
        Discrete(((0.0, 0.0),))  # zero weight
