"""Five measurement paradoxes, run as numerically checked scenarios.

Each paradox starts from an economy in which nothing real deteriorates,
changes exactly one thing for the better (or for nothing at all), and
shows that measured TFP under the relevant cost-based convention falls:

1. Hicks-neutral technical progress with unchanged spending.
2. A move from a wasteful input mix to the cost-minimizing one.
3. A move along a ray to the most productive scale size.
4. A drop in real input prices with production unchanged.
5. A cut in regulated markups with production unchanged.

The runners compute measured and true TFP before and after, guard the
preconditions that make each comparison meaningful, and return a
:class:`ParadoxReport` whose ``paradox_confirmed`` property states the
paradox: measured TFP fell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable, Mapping, Union

from .efficiency import allocative_gap, apply_technical_progress, find_mpss, min_cost_bundle
from .errors import (
    AlreadyEfficientError,
    InvalidParameterError,
    MarkupNotReducedError,
    NoConvergenceError,
    PricesNotDominatedError,
    PubTfpError,
    ScenarioError,
)
from .measurement import (
    COST_BASED_VA,
    DISTORTED_REVENUE,
    PricingScheme,
    measured_tfp_cost_based,
    measured_tfp_revenue,
)
from .technology import (
    FactorPrices,
    InputBundle,
    Technology,
    TechnologyShift,
    true_tfp,
)

__all__ = [
    "PARADOX_IDS",
    "WELFARE_IMPROVED",
    "WELFARE_UNCHANGED",
    "Tolerances",
    "EconomyState",
    "Scenario",
    "FailedScenario",
    "ParadoxReport",
    "ScenarioOutcome",
    "run_paradox_1",
    "run_paradox_2",
    "run_paradox_3",
    "run_paradox_4",
    "run_paradox_5",
    "run_scenario",
    "run_all",
]

PARADOX_IDS = (1, 2, 3, 4, 5)

WELFARE_IMPROVED = "improved"
WELFARE_UNCHANGED = "unchanged-productivity"


@dataclass(frozen=True)
class Tolerances:
    """Numerical guards used by the paradox runners.

    ``allocative_efficiency``: a bundle whose allocative gap is within this
    distance of 1 counts as already cost-minimizing.
    ``mpss_log_scale``: a rescaling within this distance of 1 in logs
    counts as already at the best scale; it must stay above the scale
    search's resolution near a flat optimum (about 1e-8).
    ``identity_check``: relative tolerance on the internal identities the
    runners recompute as self-checks (isoquant preservation, the ray
    average product ratio).
    """

    allocative_efficiency: float = 1e-9
    mpss_log_scale: float = 1e-6
    identity_check: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("allocative_efficiency", "mpss_log_scale", "identity_check"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0 or value >= 1.0:
                raise InvalidParameterError(f"tolerance {name} must lie in (0, 1), got {value!r}")

    def replaced(self, overrides: Mapping[str, float]) -> "Tolerances":
        unknown = set(overrides) - {"allocative_efficiency", "mpss_log_scale", "identity_check"}
        if unknown:
            raise InvalidParameterError(f"unknown tolerance names: {sorted(unknown)!r}")
        merged = {
            "allocative_efficiency": self.allocative_efficiency,
            "mpss_log_scale": self.mpss_log_scale,
            "identity_check": self.identity_check,
        }
        merged.update(overrides)
        return Tolerances(**merged)


@dataclass(frozen=True)
class EconomyState:
    """Snapshot of everything a convention can see at one point in time."""

    technology: Technology
    bundle: InputBundle
    prices: FactorPrices | None = None
    pricing: PricingScheme | None = None


@dataclass(frozen=True)
class ParadoxReport:
    """Before and after measurement for one paradox run."""

    paradox_id: int
    convention: str
    measured_before: float
    measured_after: float
    true_tfp_before: float
    true_tfp_after: float
    welfare_direction: str
    before: EconomyState
    after: EconomyState
    details: dict[str, float] = field(default_factory=dict)

    @property
    def paradox_confirmed(self) -> bool:
        """True when measured TFP fell."""
        return self.measured_after < self.measured_before


@dataclass(frozen=True)
class Scenario:
    """Declarative input to one paradox run.

    Which optional fields must be set depends on ``paradox_id``; a field
    that the paradox does not use must stay unset, so the before and after
    economies can only differ in the one dimension the paradox varies.
    """

    name: str
    paradox_id: int
    technology: Technology
    bundle: InputBundle
    prices: FactorPrices | None = None
    shift: TechnologyShift | None = None
    prices_after: FactorPrices | None = None
    pricing: PricingScheme | None = None
    markups_after: tuple[float, ...] | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise ScenarioError("scenario name must be a nonempty string")
        if self.paradox_id not in PARADOX_IDS:
            raise ScenarioError(
                f"scenario {self.name!r}: paradox_id must be one of {PARADOX_IDS}, "
                f"got {self.paradox_id!r}"
            )


@dataclass(frozen=True)
class FailedScenario:
    """Placeholder for a scenario entry that could not even be constructed."""

    name: str
    error: str
    paradox_id: int = 0


@dataclass(frozen=True)
class ScenarioOutcome:
    """Result of running one scenario, with any failure captured in place."""

    name: str
    paradox_id: int
    report: ParadoxReport | None = None
    error: str | None = None
    error_kind: str | None = None  # "input" or "internal" when error is set


def _true_level(tech: Technology, bundle: InputBundle) -> float:
    return true_tfp(tech.output(bundle), tech, bundle)


def _factor_bill(prices: FactorPrices, bundle: InputBundle) -> float:
    return prices.capital_price * bundle.capital + prices.wage * bundle.labor


def run_paradox_1(
    tech: Technology,
    bundle: InputBundle,
    prices: FactorPrices,
    shift: TechnologyShift,
    tolerances: Tolerances = Tolerances(),
) -> ParadoxReport:
    """Technical progress: the frontier rises, spending does not, measured TFP falls."""
    before = EconomyState(tech, bundle, prices=prices)
    measured_before = measured_tfp_cost_based(prices, bundle, tech)
    true_before = _true_level(tech, bundle)

    improved = apply_technical_progress(tech, shift)
    after = EconomyState(improved, bundle, prices=prices)
    measured_after = measured_tfp_cost_based(prices, bundle, improved)
    true_after = _true_level(improved, bundle)

    return ParadoxReport(
        paradox_id=1,
        convention=COST_BASED_VA,
        measured_before=measured_before.value,
        measured_after=measured_after.value,
        true_tfp_before=true_before,
        true_tfp_after=true_after,
        welfare_direction=WELFARE_IMPROVED,
        before=before,
        after=after,
        details={"shift_factor": shift.factor},
    )


def run_paradox_2(
    tech: Technology,
    prices: FactorPrices,
    initial_bundle: InputBundle,
    tolerances: Tolerances = Tolerances(),
) -> ParadoxReport:
    """Allocative improvement: same output from the cost-minimizing mix."""
    gap = allocative_gap(tech, prices, initial_bundle)
    if gap >= 1.0 - tolerances.allocative_efficiency:
        raise AlreadyEfficientError(
            f"bundle is already cost-minimizing at these prices (allocative gap {gap!r})"
        )
    target = tech.output(initial_bundle)
    best = min_cost_bundle(tech, prices, target)
    reached = tech.output(best.bundle)
    if not math.isclose(reached, target, rel_tol=tolerances.identity_check, abs_tol=0.0):
        raise NoConvergenceError(
            f"cost minimizer left the isoquant: output {reached!r} for target {target!r}"
        )

    before = EconomyState(tech, initial_bundle, prices=prices)
    after = EconomyState(tech, best.bundle, prices=prices)
    measured_before = measured_tfp_cost_based(prices, initial_bundle, tech)
    measured_after = measured_tfp_cost_based(prices, best.bundle, tech)

    return ParadoxReport(
        paradox_id=2,
        convention=COST_BASED_VA,
        measured_before=measured_before.value,
        measured_after=measured_after.value,
        true_tfp_before=_true_level(tech, initial_bundle),
        true_tfp_after=_true_level(tech, best.bundle),
        welfare_direction=WELFARE_IMPROVED,
        before=before,
        after=after,
        details={
            "allocative_gap": gap,
            "cost_before": _factor_bill(prices, initial_bundle),
            "cost_after": best.cost,
        },
    )


def run_paradox_3(
    tech: Technology,
    prices: FactorPrices,
    bundle: InputBundle,
    tolerances: Tolerances = Tolerances(),
) -> ParadoxReport:
    """Scale improvement: move along the ray to the most productive scale size.

    A bundle already at that scale is reported as an unconfirmed fixed
    point (scale factor 1, measurement unchanged) rather than an error.
    """
    mpss = find_mpss(tech, bundle)
    measured_before = measured_tfp_cost_based(prices, bundle, tech)
    before = EconomyState(tech, bundle, prices=prices)

    if abs(math.log(mpss.scale_factor)) <= tolerances.mpss_log_scale:
        return ParadoxReport(
            paradox_id=3,
            convention=COST_BASED_VA,
            measured_before=measured_before.value,
            measured_after=measured_before.value,
            true_tfp_before=_true_level(tech, bundle),
            true_tfp_after=_true_level(tech, bundle),
            welfare_direction=WELFARE_UNCHANGED,
            before=before,
            after=before,
            details={"mpss_scale_factor": 1.0},
        )

    after = EconomyState(tech, mpss.bundle_at_mpss, prices=prices)
    measured_after = measured_tfp_cost_based(prices, mpss.bundle_at_mpss, tech)

    # the proofs' intermediate inequality: when scaling up, output grows more
    # than proportionally; when scaling down, it shrinks less than
    # proportionally. Both read f(s*b)/f(b) > s.
    output_ratio = mpss.output / tech.output(bundle)
    if output_ratio <= mpss.scale_factor:
        raise NoConvergenceError(
            f"scale move is not productivity-improving: output ratio {output_ratio!r} "
            f"at scale factor {mpss.scale_factor!r}"
        )
    # cost is linear along the ray, so the measured ratio must collapse to
    # the ray average product ratio
    rap_before = tech.output(bundle)
    measured_ratio = measured_after.value / measured_before.value
    predicted_ratio = rap_before / mpss.ray_average_product
    if not math.isclose(
        measured_ratio, predicted_ratio, rel_tol=tolerances.identity_check, abs_tol=0.0
    ):
        raise NoConvergenceError(
            f"scale run failed its identity check: measured ratio {measured_ratio!r} "
            f"vs ray average product ratio {predicted_ratio!r}"
        )

    return ParadoxReport(
        paradox_id=3,
        convention=COST_BASED_VA,
        measured_before=measured_before.value,
        measured_after=measured_after.value,
        true_tfp_before=_true_level(tech, bundle),
        true_tfp_after=_true_level(tech, mpss.bundle_at_mpss),
        welfare_direction=WELFARE_IMPROVED,
        before=before,
        after=after,
        details={
            "mpss_scale_factor": mpss.scale_factor,
            "output_ratio": output_ratio,
            "ray_average_product_before": rap_before,
            "ray_average_product_after": mpss.ray_average_product,
            "measured_ratio": measured_ratio,
        },
    )


def run_paradox_4(
    tech: Technology,
    bundle: InputBundle,
    prices_before: FactorPrices,
    prices_after: FactorPrices,
    tolerances: Tolerances = Tolerances(),
) -> ParadoxReport:
    """Cheaper inputs: production is untouched, the factor bill shrinks."""
    if not (
        prices_after.capital_price < prices_before.capital_price
        and prices_after.wage < prices_before.wage
    ):
        raise PricesNotDominatedError(
            "both prices must fall strictly: "
            f"capital {prices_before.capital_price!r} -> {prices_after.capital_price!r}, "
            f"wage {prices_before.wage!r} -> {prices_after.wage!r}"
        )

    before = EconomyState(tech, bundle, prices=prices_before)
    after = EconomyState(tech, bundle, prices=prices_after)
    measured_before = measured_tfp_cost_based(prices_before, bundle, tech)
    measured_after = measured_tfp_cost_based(prices_after, bundle, tech)
    level = _true_level(tech, bundle)

    return ParadoxReport(
        paradox_id=4,
        convention=COST_BASED_VA,
        measured_before=measured_before.value,
        measured_after=measured_after.value,
        true_tfp_before=level,
        true_tfp_after=level,
        welfare_direction=WELFARE_UNCHANGED,
        before=before,
        after=after,
        details={
            "cost_before": _factor_bill(prices_before, bundle),
            "cost_after": _factor_bill(prices_after, bundle),
        },
    )


def run_paradox_5(
    pricing_before: PricingScheme,
    pricing_after: PricingScheme,
    tech: Technology,
    bundle: InputBundle,
    tolerances: Tolerances = Tolerances(),
) -> ParadoxReport:
    """Markup regulation: revenue falls with quantities and costs untouched."""
    if len(pricing_after.items) != len(pricing_before.items):
        raise InvalidParameterError(
            f"pricing schemes differ in length: {len(pricing_before.items)} before, "
            f"{len(pricing_after.items)} after"
        )
    for position, (old, new) in enumerate(zip(pricing_before.items, pricing_after.items)):
        if new.marginal_cost != old.marginal_cost or new.quantity != old.quantity:
            raise InvalidParameterError(
                f"output {position}: marginal cost and quantity must be unchanged, "
                f"got ({old.marginal_cost!r}, {old.quantity!r}) -> "
                f"({new.marginal_cost!r}, {new.quantity!r})"
            )
        if new.markup >= old.markup:
            raise MarkupNotReducedError(
                f"output {position}: markup must fall strictly, "
                f"got {old.markup!r} -> {new.markup!r}"
            )

    before = EconomyState(tech, bundle, pricing=pricing_before)
    after = EconomyState(tech, bundle, pricing=pricing_after)
    measured_before = measured_tfp_revenue(pricing_before, tech, bundle)
    measured_after = measured_tfp_revenue(pricing_after, tech, bundle)
    level = _true_level(tech, bundle)

    return ParadoxReport(
        paradox_id=5,
        convention=DISTORTED_REVENUE,
        measured_before=measured_before.value,
        measured_after=measured_after.value,
        true_tfp_before=level,
        true_tfp_after=level,
        welfare_direction=WELFARE_UNCHANGED,
        before=before,
        after=after,
        details={
            "revenue_before": measured_before.numerator,
            "revenue_after": measured_after.numerator,
        },
    )


_REQUIRED_FIELDS: dict[int, frozenset[str]] = {
    1: frozenset({"prices", "shift"}),
    2: frozenset({"prices"}),
    3: frozenset({"prices"}),
    4: frozenset({"prices", "prices_after"}),
    5: frozenset({"pricing", "markups_after"}),
}
_OPTIONAL_FIELD_NAMES = ("prices", "shift", "prices_after", "pricing", "markups_after")


def run_scenario(scenario: Scenario, tolerances: Tolerances = Tolerances()) -> ParadoxReport:
    """Validate a scenario's field set against its paradox and run it."""
    required = _REQUIRED_FIELDS[scenario.paradox_id]
    present = {
        name for name in _OPTIONAL_FIELD_NAMES if getattr(scenario, name) is not None
    }
    missing = required - present
    extra = present - required
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing {sorted(missing)!r}")
        if extra:
            parts.append(f"unexpected {sorted(extra)!r}")
        raise ScenarioError(
            f"scenario {scenario.name!r} (paradox {scenario.paradox_id}): "
            + ", ".join(parts)
        )
    if scenario.paradox_id == 1:
        return run_paradox_1(
            scenario.technology, scenario.bundle, scenario.prices, scenario.shift, tolerances
        )
    if scenario.paradox_id == 2:
        return run_paradox_2(scenario.technology, scenario.prices, scenario.bundle, tolerances)
    if scenario.paradox_id == 3:
        return run_paradox_3(scenario.technology, scenario.prices, scenario.bundle, tolerances)
    if scenario.paradox_id == 4:
        return run_paradox_4(
            scenario.technology,
            scenario.bundle,
            scenario.prices,
            scenario.prices_after,
            tolerances,
        )
    pricing_after = scenario.pricing.with_markups(scenario.markups_after)
    return run_paradox_5(
        scenario.pricing, pricing_after, scenario.technology, scenario.bundle, tolerances
    )


def run_all(
    scenarios: Union[str, "PathLike[str]", Iterable[Union[Scenario, FailedScenario]]],
    tolerances: Tolerances = Tolerances(),
) -> list[ScenarioOutcome]:
    """Run every scenario, isolating failures so one bad entry cannot stop the rest.

    Accepts a scenario file path or already-built scenarios. Outcomes are
    ordered by paradox id, then by the scenarios' original order. Entries
    that failed to parse pass through as input errors.
    """
    if isinstance(scenarios, (str, PathLike)):
        from .scenario_io import load_scenarios

        scenarios = load_scenarios(scenarios)
    outcomes: list[ScenarioOutcome] = []
    for scenario in sorted(scenarios, key=lambda s: s.paradox_id):
        if isinstance(scenario, FailedScenario):
            outcomes.append(
                ScenarioOutcome(
                    name=scenario.name,
                    paradox_id=scenario.paradox_id,
                    error=scenario.error,
                    error_kind="input",
                )
            )
            continue
        try:
            report = run_scenario(scenario, tolerances)
        except NoConvergenceError as exc:
            outcomes.append(
                ScenarioOutcome(
                    name=scenario.name,
                    paradox_id=scenario.paradox_id,
                    error=str(exc),
                    error_kind="internal",
                )
            )
        except PubTfpError as exc:
            outcomes.append(
                ScenarioOutcome(
                    name=scenario.name,
                    paradox_id=scenario.paradox_id,
                    error=str(exc),
                    error_kind="input",
                )
            )
        else:
            outcomes.append(
                ScenarioOutcome(name=scenario.name, paradox_id=scenario.paradox_id, report=report)
            )
    return outcomes
