"""Shared measure builders for the test suite."""

from lpzeros import (
    AbsolutelyContinuous,
    AffineScalar,
    ConstantScalar,
    ConstantWeight,
    Discrete,
    ExponentialScalar,
    ExponentialWeight,
    JacobiVaryAlpha,
    JacobiVaryBeta,
    ParametricMeasure,
)


def lebesgue(a=-1.0, b=1.0, panels=16, npp=64):
    return AbsolutelyContinuous(a, b, panels, npp)


def plain_measure(**kw):
    """Lebesgue on [-1, 1], constant weight, nothing moves with t."""
    return ParametricMeasure(
        base=lebesgue(**kw), weight=ConstantWeight(), t_domain=(-5.0, 5.0)
    )


def mass_measure(y0=2.0, y_slope=1.0, j0=1.0, j_slope=0.0, t_domain=(-1.0, 2.0)):
    """Unit Lebesgue with a point mass j(t) = j0 + j_slope t at y(t) = y0 + y_slope t."""
    return ParametricMeasure(
        base=lebesgue(),
        weight=ConstantWeight(),
        t_domain=t_domain,
        mass_size=AffineScalar(j0, j_slope) if j_slope else ConstantScalar(j0),
        mass_position=AffineScalar(y0, y_slope) if y_slope else ConstantScalar(y0),
    )


def exp_weight_measure(t_domain=(-2.0, 2.0)):
    return ParametricMeasure(base=lebesgue(), weight=ExponentialWeight(), t_domain=t_domain)


def kitchen_sink_measure():
    """Exponential weight, growing exponential mass, drifting position."""
    return ParametricMeasure(
        base=lebesgue(),
        weight=ExponentialWeight(),
        t_domain=(-1.0, 1.0),
        mass_size=ExponentialScalar(1.0, 0.3),
        mass_position=AffineScalar(2.0, 0.5),
    )


def jacobi_alpha_measure(beta=0.5, a=-0.8, b=0.8):
    return ParametricMeasure(
        base=lebesgue(a=a, b=b),
        weight=JacobiVaryAlpha(beta),
        t_domain=(-0.9, 3.0),
    )


def jacobi_beta_measure(alpha=0.5, a=-0.8, b=0.8):
    return ParametricMeasure(
        base=lebesgue(a=a, b=b),
        weight=JacobiVaryBeta(alpha),
        t_domain=(-0.9, 3.0),
    )


def discrete_measure(atoms=((-1.0, 0.5), (0.0, 1.0), (1.0, 0.5)), t_domain=(-1.0, 1.0)):
    return ParametricMeasure(base=Discrete(atoms), weight=ConstantWeight(), t_domain=t_domain)
