"""Cost minimization, allocative efficiency, and most-productive scale size.

Everything here works on the technologies from :mod:`pubtfp.technology`.
Cobb-Douglas problems are solved in closed form. CES and homothetic
translog cost minimization first finds the capital-labor ratio that
equates the marginal rate of technical substitution to the factor price
ratio (bisection on the log ratio, where the condition is strictly
monotone), then scales along that ray to reach the target isoquant. The
most-productive scale size maximizes the ray average product by golden
section search on the log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoConvergenceError, NoInteriorMpssError
from .technology import (
    Ces,
    CobbDouglas,
    FactorPrices,
    HomotheticTranslog,
    InputBundle,
    Technology,
    TechnologyShift,
)

__all__ = [
    "CostMinResult",
    "MpssResult",
    "min_cost_bundle",
    "allocative_gap",
    "find_mpss",
    "apply_technical_progress",
]

# solver brackets and tolerances, in log space
_LOG_RATIO_BRACKET = 40.0  # ln(K/L) searched over [-40, 40]
_RATIO_TOL = 1e-10
_RATIO_MAX_ITER = 200
_LOG_SCALE_BRACKET = 20.0  # ln(scale) searched over [-20, 20]
_SCALE_TOL = 1e-10
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CostMinResult:
    """Cheapest bundle producing a target output, and its cost."""

    bundle: InputBundle
    cost: float
    target_output: float


@dataclass(frozen=True)
class MpssResult:
    """Scale that maximizes output per unit of a reference bundle.

    ``scale_factor`` multiplies the reference bundle to reach
    ``bundle_at_mpss``; ``ray_average_product`` is output there divided by
    the scale factor. ``scale_elasticity`` at the optimum equals 1 up to
    solver tolerance.
    """

    scale_factor: float
    bundle_at_mpss: InputBundle
    output: float
    ray_average_product: float
    scale_elasticity: float


def _cobb_douglas_min_cost(
    tech: CobbDouglas, prices: FactorPrices, target_output: float
) -> CostMinResult:
    # With p_i x_i proportional to alpha_i at the optimum, x_i = (alpha_i / p_i) T
    # and T follows from the production constraint.
    terms: list[tuple[float, float]] = [
        (tech.alpha_capital, prices.capital_price),
        (tech.alpha_labor, prices.wage),
    ]
    if tech.alpha_intermediates is not None:
        if prices.intermediates_price is None:
            raise DomainError(
                "cost minimization over a gross-output technology needs an intermediates price"
            )
        terms.append((tech.alpha_intermediates, prices.intermediates_price))
    total_alpha = sum(alpha for alpha, _ in terms)
    log_t = (
        math.log(target_output)
        - math.log(tech.level)
        - sum(alpha * (math.log(alpha) - math.log(p)) for alpha, p in terms)
    ) / total_alpha
    t = math.exp(log_t)
    quantities = [alpha / p * t for alpha, p in terms]
    bundle = InputBundle(
        quantities[0], quantities[1], quantities[2] if len(quantities) == 3 else None
    )
    return CostMinResult(bundle=bundle, cost=t * total_alpha, target_output=target_output)


def _log_mrts_at_ratio(tech: Technology, x: float) -> float:
    """ln(MRTS) as a function of x = ln(K/L); strictly decreasing for both families."""
    if isinstance(tech, Ces):
        w = tech.capital_weight
        return math.log(w / (1.0 - w)) + (tech.substitution - 1.0) * x
    if isinstance(tech, HomotheticTranslog):
        a = tech.inner_alpha_capital
        return math.log(a / (1.0 - a)) - x
    raise DomainError(f"no ratio condition for family {tech.family!r}")


def _solve_ratio(tech: Technology, prices: FactorPrices) -> float:
    """Find x = ln(K/L) with MRTS(x) = capital_price / wage by bisection."""
    target = math.log(prices.capital_price) - math.log(prices.wage)
    lo, hi = -_LOG_RATIO_BRACKET, _LOG_RATIO_BRACKET
    g_lo = _log_mrts_at_ratio(tech, lo) - target
    g_hi = _log_mrts_at_ratio(tech, hi) - target
    if g_lo < 0.0 or g_hi > 0.0:
        raise NoConvergenceError(
            "factor price ratio lies outside the bracketed range of capital-labor ratios"
        )
    for _ in range(_RATIO_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if _log_mrts_at_ratio(tech, mid) - target > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _RATIO_TOL:
            return 0.5 * (lo + hi)
    raise NoConvergenceError("capital-labor ratio search did not converge")


def _scale_to_isoquant(tech: Technology, direction: InputBundle, target_output: float) -> float:
    """Scale s with output(s * direction) = target_output, along a fixed ray."""
    if isinstance(tech, Ces):
        base = tech.output(direction)
        return math.exp((math.log(target_output) - math.log(base)) / tech.returns_to_scale)
    if isinstance(tech, HomotheticTranslog):
        b, c = tech.slope, tech.curvature
        log_target = math.log(target_output) - math.log(tech.level)
        a = tech.inner_alpha_capital
        u0 = a * math.log(direction.capital) + (1.0 - a) * math.log(direction.labor)
        if c == 0.0:
            return math.exp(log_target / b - u0)
        disc = b * b + 4.0 * c * log_target
        if disc < 0.0:
            max_output = tech.level * math.exp(-b * b / (4.0 * c))
            raise DomainError(
                f"target output {target_output!r} exceeds the frontier maximum "
                f"{max_output!r} for this technology"
            )
        # root on the increasing branch: scale elasticity there is +sqrt(disc)
        u_star = (-b + math.sqrt(disc)) / (2.0 * c)
        return math.exp(u_star - u0)
    raise DomainError(f"no isoquant scaling rule for family {tech.family!r}")


def min_cost_bundle(
    tech: Technology, prices: FactorPrices, target_output: float
) -> CostMinResult:
    """Cheapest input bundle on the ``target_output`` isoquant at given prices."""
    if not math.isfinite(target_output) or target_output <= 0.0:
        raise DomainError(f"target output must be strictly positive, got {target_output!r}")
    if isinstance(tech, CobbDouglas):
        return _cobb_douglas_min_cost(tech, prices, target_output)
    if isinstance(tech, (Ces, HomotheticTranslog)):
        x = _solve_ratio(tech, prices)
        direction = InputBundle(math.exp(x), 1.0)
        s = _scale_to_isoquant(tech, direction, target_output)
        bundle = direction.scaled(s)
        cost = prices.capital_price * bundle.capital + prices.wage * bundle.labor
        return CostMinResult(bundle=bundle, cost=cost, target_output=target_output)
    raise DomainError(f"cost minimization is not implemented for family {tech.family!r}")


def allocative_gap(tech: Technology, prices: FactorPrices, bundle: InputBundle) -> float:
    """Minimum cost of the bundle's own output divided by its actual cost.

    Lies in (0, 1]; equals 1 exactly when the bundle is cost-minimizing at
    these prices. Only the capital and labor components are priced, so the
    technology must be a value-added one.
    """
    if tech.uses_intermediates:
        raise DomainError("allocative gap is defined for value-added technologies only")
    if bundle.capital <= 0.0 or bundle.labor <= 0.0:
        raise DomainError("allocative gap requires strictly positive capital and labor")
    actual_cost = prices.capital_price * bundle.capital + prices.wage * bundle.labor
    target = tech.output(bundle)
    best = min_cost_bundle(tech, prices, target)
    # guard against ratios such as 1 + 1e-16 when the bundle is already optimal
    return min(best.cost / actual_cost, 1.0)


def _ray_log_average_product(tech: Technology, bundle: InputBundle, x: float) -> float:
    return math.log(tech.output(bundle.scaled(math.exp(x)))) - x


def find_mpss(tech: Technology, ray_bundle: InputBundle) -> MpssResult:
    """Most productive scale size along the ray through ``ray_bundle``.

    Maximizes output per unit of scale over scales in [e^-20, e^20]. The
    optimum is interior only when the scale elasticity crosses 1 from
    above along the ray, which rules out every constant-elasticity family;
    those raise :class:`NoInteriorMpssError`.
    """
    if ray_bundle.capital <= 0.0 or ray_bundle.labor <= 0.0:
        raise DomainError("scale search requires strictly positive capital and labor")
    eps_lo = tech.scale_elasticity(ray_bundle.scaled(math.exp(-_LOG_SCALE_BRACKET)))
    eps_hi = tech.scale_elasticity(ray_bundle.scaled(math.exp(_LOG_SCALE_BRACKET)))
    if not (eps_lo > 1.0 > eps_hi):
        raise NoInteriorMpssError(
            "no interior most-productive scale: scale elasticity does not cross 1 "
            f"along this ray (elasticity {eps_lo!r} at the lower bracket, "
            f"{eps_hi!r} at the upper)"
        )
    lo, hi = -_LOG_SCALE_BRACKET, _LOG_SCALE_BRACKET
    inner_lo = hi - _INV_GOLDEN * (hi - lo)
    inner_hi = lo + _INV_GOLDEN * (hi - lo)
    value_lo = _ray_log_average_product(tech, ray_bundle, inner_lo)
    value_hi = _ray_log_average_product(tech, ray_bundle, inner_hi)
    while hi - lo > _SCALE_TOL:
        if value_lo >= value_hi:  # ties move left, keeping the smaller scale
            hi = inner_hi
            inner_hi = inner_lo
            value_hi = value_lo
            inner_lo = hi - _INV_GOLDEN * (hi - lo)
            value_lo = _ray_log_average_product(tech, ray_bundle, inner_lo)
        else:
            lo = inner_lo
            inner_lo = inner_hi
            value_lo = value_hi
            inner_hi = lo + _INV_GOLDEN * (hi - lo)
            value_hi = _ray_log_average_product(tech, ray_bundle, inner_hi)
    x_star = 0.5 * (lo + hi)
    scale_factor = math.exp(x_star)
    scaled = ray_bundle.scaled(scale_factor)
    output = tech.output(scaled)
    return MpssResult(
        scale_factor=scale_factor,
        bundle_at_mpss=scaled,
        output=output,
        ray_average_product=output / scale_factor,
        scale_elasticity=tech.scale_elasticity(scaled),
    )


def apply_technical_progress(tech: Technology, shift: TechnologyShift) -> Technology:
    """Return the same technology with its Hicks-neutral level raised by ``shift``.

    Isoquant shapes, hence every marginal rate of technical substitution,
    are unchanged; only the output attached to each isoquant grows.
    """
    return tech.with_level(tech.level * shift.factor)
