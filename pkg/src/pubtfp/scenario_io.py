"""YAML readers for paradox scenario files and panel simulation configs.

Scenario files are read leniently per entry: a malformed scenario becomes
a :class:`~pubtfp.paradoxes.FailedScenario` carrying its diagnostic, so
one bad entry never blocks the rest of the batch. Problems with the file
itself (unparseable YAML, wrong top-level shape, duplicate names) raise
:class:`~pubtfp.errors.ScenarioError`.

Simulation configs are strict; they describe a single run and there is
nothing sensible to salvage from a partial one.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping

import yaml

from .accounting import SimulationSpec
from .errors import PubTfpError, ScenarioError
from .measurement import PricedOutput, PricingScheme
from .paradoxes import PARADOX_IDS, FailedScenario, Scenario
from .technology import (
    Ces,
    CobbDouglas,
    FactorPrices,
    HomotheticTranslog,
    InputBundle,
    Technology,
    TechnologyShift,
    TwoLevelCes,
)

__all__ = ["load_scenarios", "load_simulation"]

_FAMILIES: dict[str, tuple[type, frozenset[str], frozenset[str]]] = {
    "cobb-douglas": (
        CobbDouglas,
        frozenset({"alpha_capital", "alpha_labor"}),
        frozenset({"level", "alpha_intermediates"}),
    ),
    "ces": (
        Ces,
        frozenset({"capital_weight", "substitution"}),
        frozenset({"returns_to_scale", "level"}),
    ),
    "homothetic-translog": (
        HomotheticTranslog,
        frozenset({"inner_alpha_capital", "slope", "curvature"}),
        frozenset({"level"}),
    ),
    "two-level-ces": (
        TwoLevelCes,
        frozenset(
            {"capital_weight", "inner_substitution", "value_added_weight", "outer_substitution"}
        ),
        frozenset({"returns_to_scale", "level"}),
    ),
}

_SCENARIO_REQUIRED = frozenset({"name", "paradox", "technology", "bundle"})
_SCENARIO_OPTIONAL = frozenset(
    {"description", "prices", "shift_factor", "prices_after", "outputs", "markups_after"}
)


def _require_mapping(value: Any, where: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise ScenarioError(f"{where} must be a mapping, got {type(value).__name__}")
    return value


def _check_keys(
    mapping: Mapping[str, Any], required: frozenset[str], optional: frozenset[str], where: str
) -> None:
    keys = set(mapping)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise ScenarioError(f"{where} is missing keys {sorted(missing)!r}")
    if unknown:
        raise ScenarioError(f"{where} has unknown keys {sorted(unknown)!r}")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where} must be a number, got {value!r}")
    return float(value)


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{where} must be an integer, got {value!r}")
    return value


def _string(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise ScenarioError(f"{where} must be a nonempty string, got {value!r}")
    return value


def _number_list(value: Any, where: str) -> tuple[float, ...]:
    if not isinstance(value, list) or not value:
        raise ScenarioError(f"{where} must be a nonempty list of numbers")
    return tuple(_number(item, f"{where}[{position}]") for position, item in enumerate(value))


def _technology(value: Any, where: str) -> Technology:
    mapping = _require_mapping(value, where)
    family = mapping.get("family")
    if family not in _FAMILIES:
        raise ScenarioError(
            f"{where}: family must be one of {sorted(_FAMILIES)!r}, got {family!r}"
        )
    cls, required, optional = _FAMILIES[family]
    _check_keys(mapping, required | {"family"}, optional, where)
    params = {
        key: _number(val, f"{where}.{key}") for key, val in mapping.items() if key != "family"
    }
    return cls(**params)


def _bundle(value: Any, where: str) -> InputBundle:
    mapping = _require_mapping(value, where)
    _check_keys(mapping, frozenset({"capital", "labor"}), frozenset({"intermediates"}), where)
    return InputBundle(**{key: _number(val, f"{where}.{key}") for key, val in mapping.items()})


def _prices(value: Any, where: str) -> FactorPrices:
    mapping = _require_mapping(value, where)
    _check_keys(
        mapping,
        frozenset({"capital_price", "wage"}),
        frozenset({"intermediates_price"}),
        where,
    )
    return FactorPrices(**{key: _number(val, f"{where}.{key}") for key, val in mapping.items()})


def _pricing(value: Any, where: str) -> PricingScheme:
    if not isinstance(value, list) or not value:
        raise ScenarioError(f"{where} must be a nonempty list of outputs")
    outputs = []
    for position, entry in enumerate(value):
        entry_where = f"{where}[{position}]"
        mapping = _require_mapping(entry, entry_where)
        _check_keys(
            mapping,
            frozenset({"quantity", "marginal_cost", "markup"}),
            frozenset(),
            entry_where,
        )
        outputs.append(
            PricedOutput(
                marginal_cost=_number(mapping["marginal_cost"], f"{entry_where}.marginal_cost"),
                markup=_number(mapping["markup"], f"{entry_where}.markup"),
                quantity=_number(mapping["quantity"], f"{entry_where}.quantity"),
            )
        )
    return PricingScheme(tuple(outputs))


def _scenario(entry: Any, where: str) -> Scenario:
    mapping = _require_mapping(entry, where)
    _check_keys(mapping, _SCENARIO_REQUIRED, _SCENARIO_OPTIONAL, where)
    name = _string(mapping["name"], f"{where}.name")
    paradox = _integer(mapping["paradox"], f"{where}.paradox")
    shift = None
    if "shift_factor" in mapping:
        shift = TechnologyShift(_number(mapping["shift_factor"], f"{where}.shift_factor"))
    return Scenario(
        name=name,
        paradox_id=paradox,
        technology=_technology(mapping["technology"], f"{where}.technology"),
        bundle=_bundle(mapping["bundle"], f"{where}.bundle"),
        prices=_prices(mapping["prices"], f"{where}.prices") if "prices" in mapping else None,
        shift=shift,
        prices_after=(
            _prices(mapping["prices_after"], f"{where}.prices_after")
            if "prices_after" in mapping
            else None
        ),
        pricing=_pricing(mapping["outputs"], f"{where}.outputs") if "outputs" in mapping else None,
        markups_after=(
            _number_list(mapping["markups_after"], f"{where}.markups_after")
            if "markups_after" in mapping
            else None
        ),
        description=(
            _string(mapping["description"], f"{where}.description")
            if "description" in mapping
            else ""
        ),
    )


def _entry_identity(entry: Any, position: int) -> tuple[str, int]:
    """Best-effort name and paradox id for reporting a failed entry."""
    name = f"scenario-{position + 1}"
    paradox_id = 0
    if isinstance(entry, Mapping):
        raw_name = entry.get("name")
        if isinstance(raw_name, str) and raw_name:
            name = raw_name
        raw_id = entry.get("paradox")
        if not isinstance(raw_id, bool) and raw_id in PARADOX_IDS:
            paradox_id = raw_id
    return name, paradox_id


def _load_yaml(path: Path) -> Any:
    try:
        with path.open(encoding="utf-8") as handle:
            return yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{path} is not valid YAML: {exc}") from None


def load_scenarios(path: str | Path) -> list[Scenario | FailedScenario]:
    """Read a scenario file: a mapping with one ``scenarios`` list.

    An empty file or an empty list yields an empty result. Entries that
    cannot be built are returned as :class:`FailedScenario` records in
    place, preserving file order.
    """
    path = Path(path)
    document = _load_yaml(path)
    if document is None:
        return []
    document = _require_mapping(document, f"{path}")
    _check_keys(document, frozenset({"scenarios"}), frozenset(), f"{path}")
    entries = document["scenarios"]
    if entries is None:
        return []
    if not isinstance(entries, list):
        raise ScenarioError(f"{path}: scenarios must be a list")
    result: list[Scenario | FailedScenario] = []
    for position, entry in enumerate(entries):
        where = f"{path}: scenario {position + 1}"
        try:
            result.append(_scenario(entry, where))
        except PubTfpError as exc:
            name, paradox_id = _entry_identity(entry, position)
            result.append(FailedScenario(name=name, error=str(exc), paradox_id=paradox_id))
    names = [s.name for s in result]
    if len(set(names)) != len(names):
        raise ScenarioError(f"{path}: scenario names must be unique, got {names!r}")
    return result


_SIMULATION_REQUIRED = frozenset({"technology", "convention", "start_year"})
_SIMULATION_OPTIONAL = frozenset(
    {
        "years",
        "levels",
        "level_growth",
        "bundle",
        "capital",
        "labor",
        "prices",
        "capital_price",
        "wage",
        "country",
        "industry",
        "description",
    }
)


def _exactly_one(mapping: Mapping[str, Any], keys: tuple[str, ...], where: str) -> str:
    present = [key for key in keys if key in mapping]
    if len(present) != 1:
        raise ScenarioError(f"{where} needs exactly one of {keys!r}, got {present!r}")
    return present[0]


def load_simulation(path: str | Path) -> SimulationSpec:
    """Read a simulation config: a mapping with one ``simulation`` mapping.

    Each of the technology level, the input bundle, and the factor prices
    may be given either as a constant (``level_growth``, ``bundle``,
    ``prices``) or as explicit per-year lists (``levels``, ``capital`` and
    ``labor``, ``capital_price`` and ``wage``). All lists must have the
    same length; ``years`` pins the length and is required when every
    piece is constant.
    """
    path = Path(path)
    document = _require_mapping(_load_yaml(path), f"{path}")
    _check_keys(document, frozenset({"simulation"}), frozenset(), f"{path}")
    where = f"{path}: simulation"
    mapping = _require_mapping(document["simulation"], where)
    _check_keys(mapping, _SIMULATION_REQUIRED, _SIMULATION_OPTIONAL, where)

    technology = _technology(mapping["technology"], f"{where}.technology")
    level_key = _exactly_one(mapping, ("levels", "level_growth"), where)
    if "bundle" in mapping and ("capital" in mapping or "labor" in mapping):
        raise ScenarioError(f"{where}: give bundle or capital/labor lists, not both")
    if ("capital" in mapping) != ("labor" in mapping):
        raise ScenarioError(f"{where}: capital and labor lists must come together")
    if "bundle" not in mapping and "capital" not in mapping:
        raise ScenarioError(f"{where}: needs bundle or capital/labor lists")
    if "prices" in mapping and ("capital_price" in mapping or "wage" in mapping):
        raise ScenarioError(f"{where}: give prices or capital_price/wage lists, not both")
    if ("capital_price" in mapping) != ("wage" in mapping):
        raise ScenarioError(f"{where}: capital_price and wage lists must come together")
    if "prices" not in mapping and "capital_price" not in mapping:
        raise ScenarioError(f"{where}: needs prices or capital_price/wage lists")

    series: dict[str, tuple[float, ...]] = {}
    if level_key == "levels":
        series["levels"] = _number_list(mapping["levels"], f"{where}.levels")
    if "capital" in mapping:
        series["capital"] = _number_list(mapping["capital"], f"{where}.capital")
        series["labor"] = _number_list(mapping["labor"], f"{where}.labor")
    if "capital_price" in mapping:
        series["capital_price"] = _number_list(mapping["capital_price"], f"{where}.capital_price")
        series["wage"] = _number_list(mapping["wage"], f"{where}.wage")

    lengths = {name: len(values) for name, values in series.items()}
    if "years" in mapping:
        lengths["years"] = _integer(mapping["years"], f"{where}.years")
    if not lengths:
        raise ScenarioError(f"{where}: years is required when every piece is constant")
    if len(set(lengths.values())) != 1:
        raise ScenarioError(f"{where}: per-year lengths disagree: {lengths!r}")
    n = next(iter(lengths.values()))
    if n < 2:
        raise ScenarioError(f"{where}: a simulation needs at least 2 years, got {n}")

    if level_key == "level_growth":
        growth = _number(mapping["level_growth"], f"{where}.level_growth")
        if growth <= -1.0:
            raise ScenarioError(f"{where}.level_growth must exceed -1, got {growth!r}")
        series["levels"] = tuple(technology.level * (1.0 + growth) ** t for t in range(n))
    if "capital" not in series:
        bundle = _bundle(mapping["bundle"], f"{where}.bundle")
        series["capital"] = (bundle.capital,) * n
        series["labor"] = (bundle.labor,) * n
    if "capital_price" not in series:
        prices = _prices(mapping["prices"], f"{where}.prices")
        series["capital_price"] = (prices.capital_price,) * n
        series["wage"] = (prices.wage,) * n

    extras: dict[str, str] = {}
    if "country" in mapping:
        extras["country"] = _string(mapping["country"], f"{where}.country")
    if "industry" in mapping:
        extras["industry"] = _string(mapping["industry"], f"{where}.industry")
    return SimulationSpec(
        technology=technology,
        levels=series["levels"],
        capital=series["capital"],
        labor=series["labor"],
        capital_price=series["capital_price"],
        wage=series["wage"],
        start_year=_integer(mapping["start_year"], f"{where}.start_year"),
        convention=_string(mapping["convention"], f"{where}.convention"),
        **extras,
    )
