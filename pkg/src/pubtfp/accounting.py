"""Growth accounting on industry panels and index-number simulation.

The pipeline mirrors how statistical offices turn national-accounts panels
into TFP index series: deflate nominal value added, apply a Tornqvist
decomposition (log output growth minus share-weighted log input growth,
with two-period average factor shares), cumulate the growth rates in logs,
and rebase so the base year equals 100.

:func:`simulate_sna_panel` manufactures synthetic panels from year-by-year
paths of the technology level, the input bundle, and factor prices. Under
the ``market`` convention nominal value added is frontier output at price
1 with marginal-product factor shares, so the pipeline recovers the true
TFP path. Under the ``sna-cost`` convention nominal value added is the
factor bill (the national-accounts income approach for non-market
producers), shares are cost shares, and the deflator column carries the
frontier-output volume index level_t / level_base, so deflated spending
is cost per unit of frontier output. The resulting index is the
cost-based TFP level convention in index form: it falls at exactly the
rate of technical progress when spending is flat.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    InvalidParameterError,
    MissingBaseYearError,
    PanelSchemaError,
    SeriesError,
)
from .technology import InputBundle, Technology

__all__ = [
    "PANEL_COLUMNS",
    "INDEX_COLUMNS",
    "SIMULATION_CONVENTIONS",
    "PanelObservation",
    "TfpIndexSeries",
    "SimulationSpec",
    "deflate",
    "tornqvist_tfp_growth",
    "build_index",
    "build_indices",
    "ingest_panel",
    "write_panel",
    "write_indices",
    "simulate_sna_panel",
]

logger = logging.getLogger(__name__)

PANEL_COLUMNS = (
    "year",
    "country",
    "industry",
    "va_nominal",
    "va_deflator",
    "capital_services",
    "labor_input",
    "labor_share",
    "capital_share",
)
INDEX_COLUMNS = ("year", "country", "industry", "tfp_index")

SIMULATION_CONVENTIONS = ("sna-cost", "market")

_SHARE_SUM_TOL = 1e-6


@dataclass(frozen=True)
class PanelObservation:
    """One industry-year row of a growth-accounting panel.

    Factor shares must each lie in [0, 1]. When their sum strays from 1
    by more than 1e-6 they are renormalized, with a warning, since
    published shares are often rounded.
    """

    year: int
    country: str
    industry: str
    va_nominal: float
    va_deflator: float
    capital_services: float
    labor_input: float
    labor_share: float
    capital_share: float

    def __post_init__(self) -> None:
        if isinstance(self.year, bool) or not isinstance(self.year, int):
            raise InvalidParameterError(f"year must be an integer, got {self.year!r}")
        if not self.country or not self.industry:
            raise InvalidParameterError("country and industry must be nonempty strings")
        for name in ("va_nominal", "va_deflator", "capital_services", "labor_input"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidParameterError(
                    f"{name} must be strictly positive, got {getattr(self, name)!r}"
                )
            object.__setattr__(self, name, value)
        for name in ("labor_share", "capital_share"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise InvalidParameterError(
                    f"{name} must lie in [0, 1], got {getattr(self, name)!r}"
                )
            object.__setattr__(self, name, value)
        total = self.labor_share + self.capital_share
        if total <= 0.0:
            raise InvalidParameterError("factor shares cannot both be zero")
        if abs(total - 1.0) > _SHARE_SUM_TOL:
            logger.warning(
                "factor shares for %s/%s/%d sum to %.9f; renormalizing to 1",
                self.country,
                self.industry,
                self.year,
                total,
            )
            object.__setattr__(self, "labor_share", self.labor_share / total)
            object.__setattr__(self, "capital_share", self.capital_share / total)

    @property
    def real_value_added(self) -> float:
        return deflate(self.va_nominal, self.va_deflator)

    @property
    def key(self) -> tuple[str, str]:
        return (self.country, self.industry)


def deflate(nominal: float, deflator: float) -> float:
    """Real value: nominal divided by a strictly positive deflator."""
    if not math.isfinite(deflator) or deflator <= 0.0:
        raise InvalidParameterError(f"deflator must be strictly positive, got {deflator!r}")
    return nominal / deflator


def tornqvist_tfp_growth(previous: PanelObservation, current: PanelObservation) -> float:
    """Log TFP growth between two adjacent observations of one industry.

    Real value added growth minus share-weighted input growth, where each
    factor's weight is the mean of its shares in the two periods.
    """
    if previous.key != current.key:
        raise SeriesError(
            f"observations belong to different series: {previous.key!r} vs {current.key!r}"
        )
    if current.year <= previous.year:
        raise SeriesError(
            f"observations out of order: year {previous.year} then {current.year}"
        )
    dlog_va = math.log(current.real_value_added) - math.log(previous.real_value_added)
    dlog_k = math.log(current.capital_services) - math.log(previous.capital_services)
    dlog_l = math.log(current.labor_input) - math.log(previous.labor_input)
    mean_capital_share = 0.5 * (previous.capital_share + current.capital_share)
    mean_labor_share = 0.5 * (previous.labor_share + current.labor_share)
    return dlog_va - mean_capital_share * dlog_k - mean_labor_share * dlog_l


@dataclass(frozen=True)
class TfpIndexSeries:
    """A cumulated TFP index for one industry, equal to 100 in the base year."""

    country: str
    industry: str
    base_year: int
    years: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.years or len(self.years) != len(self.values):
            raise SeriesError(
                f"series needs matching years and values, got {len(self.years)} "
                f"and {len(self.values)}"
            )
        if any(not math.isfinite(v) or v <= 0.0 for v in self.values):
            raise SeriesError("index values must all be positive")
        if self.base_year not in self.years:
            raise MissingBaseYearError(
                f"base year {self.base_year} is not in the series "
                f"({self.years[0]}..{self.years[-1]})"
            )
        if self.values[self.years.index(self.base_year)] != 100.0:
            raise SeriesError("index must equal 100 exactly in the base year")

    @property
    def points(self) -> tuple[tuple[int, float], ...]:
        """(year, value) pairs in year order."""
        return tuple(zip(self.years, self.values))

    def value_at(self, year: int) -> float:
        try:
            return self.values[self.years.index(year)]
        except ValueError:
            raise SeriesError(
                f"year {year} is not in the series ({self.years[0]}..{self.years[-1]})"
            ) from None

    def rebased(self, base_year: int) -> "TfpIndexSeries":
        """Same trajectory expressed relative to a different base year."""
        pivot = self.value_at(base_year)
        values = tuple(
            100.0 if year == base_year else 100.0 * value / pivot
            for year, value in zip(self.years, self.values)
        )
        return TfpIndexSeries(
            country=self.country,
            industry=self.industry,
            base_year=base_year,
            years=self.years,
            values=values,
        )


def build_index(observations: Iterable[PanelObservation], base_year: int) -> TfpIndexSeries:
    """Cumulate Tornqvist growth into a level index with base year = 100.

    The observations must all belong to one (country, industry) series and
    must cover consecutive years with no duplicates; the base year must be
    one of them.
    """
    rows = sorted(observations, key=lambda o: o.year)
    if not rows:
        raise SeriesError("cannot build an index from an empty series")
    keys = {row.key for row in rows}
    if len(keys) != 1:
        raise SeriesError(f"observations span multiple series: {sorted(keys)!r}")
    for earlier, later in zip(rows, rows[1:]):
        if later.year == earlier.year:
            raise SeriesError(f"duplicate observation for year {later.year} in {later.key!r}")
        if later.year != earlier.year + 1:
            raise SeriesError(
                f"gap in series {later.key!r}: year {earlier.year} is followed by {later.year}"
            )
    years = tuple(row.year for row in rows)
    if base_year not in years:
        raise MissingBaseYearError(
            f"base year {base_year} is outside the series range {years[0]}..{years[-1]}"
        )
    log_levels = [0.0]
    for earlier, later in zip(rows, rows[1:]):
        log_levels.append(log_levels[-1] + tornqvist_tfp_growth(earlier, later))
    base_log = log_levels[years.index(base_year)]
    values = tuple(100.0 * math.exp(level - base_log) for level in log_levels)
    country, industry = rows[0].key
    return TfpIndexSeries(
        country=country, industry=industry, base_year=base_year, years=years, values=values
    )


def build_indices(
    observations: Iterable[PanelObservation], base_year: int
) -> dict[tuple[str, str], TfpIndexSeries]:
    """One index per (country, industry) series found in the observations."""
    groups: dict[tuple[str, str], list[PanelObservation]] = {}
    for row in observations:
        groups.setdefault(row.key, []).append(row)
    return {key: build_index(rows, base_year) for key, rows in sorted(groups.items())}


def _parse_row(row: Mapping[str, str], line: int) -> PanelObservation:
    try:
        year = int(row["year"])
    except ValueError:
        raise PanelSchemaError(f"row {line}: year {row['year']!r} is not an integer") from None
    numbers: dict[str, float] = {}
    for name in PANEL_COLUMNS[3:]:
        raw = row[name]
        try:
            numbers[name] = float(raw)
        except (TypeError, ValueError):
            raise PanelSchemaError(f"row {line}: {name} {raw!r} is not a number") from None
    try:
        return PanelObservation(
            year=year, country=row["country"], industry=row["industry"], **numbers
        )
    except InvalidParameterError as exc:
        raise PanelSchemaError(f"row {line}: {exc}") from None


def ingest_panel(path: str | Path) -> list[PanelObservation]:
    """Read a panel CSV, validating the schema and every row.

    The header must contain all panel columns (extras are ignored). Rows
    with missing fields, unparsable numbers, or out-of-range values are
    reported together with their line numbers; duplicated
    (year, country, industry) keys are rejected. Observations come back
    sorted by country, industry, and year.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [name for name in PANEL_COLUMNS if name not in header]
        if missing:
            raise PanelSchemaError(f"panel {path} is missing columns {missing!r}")
        observations: list[PanelObservation] = []
        problems: list[str] = []
        seen: dict[tuple[int, str, str], int] = {}
        for line, row in enumerate(reader, start=2):
            if any(row.get(name) in (None, "") for name in PANEL_COLUMNS):
                problems.append(f"row {line}: empty or missing fields")
                continue
            try:
                obs = _parse_row(row, line)
            except PanelSchemaError as exc:
                problems.append(str(exc))
                continue
            key = (obs.year, obs.country, obs.industry)
            if key in seen:
                problems.append(
                    f"row {line}: duplicate of row {seen[key]} for {key!r}"
                )
                continue
            seen[key] = line
            observations.append(obs)
    if problems:
        raise PanelSchemaError(
            f"panel {path} has {len(problems)} bad row(s):\n" + "\n".join(problems)
        )
    if not observations:
        raise PanelSchemaError(f"panel {path} contains no data rows")
    observations.sort(key=lambda o: (o.country, o.industry, o.year))
    return observations


def write_panel(observations: Iterable[PanelObservation], path: str | Path) -> None:
    """Write observations as a panel CSV with the canonical column order."""
    path = Path(path)
    rows = sorted(observations, key=lambda o: (o.country, o.industry, o.year))
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(PANEL_COLUMNS)
        for o in rows:
            writer.writerow(
                [
                    o.year,
                    o.country,
                    o.industry,
                    repr(o.va_nominal),
                    repr(o.va_deflator),
                    repr(o.capital_services),
                    repr(o.labor_input),
                    repr(o.labor_share),
                    repr(o.capital_share),
                ]
            )


def write_indices(series: Iterable[TfpIndexSeries], path: str | Path) -> None:
    """Write index series as CSV rows (year, country, industry, tfp_index)."""
    path = Path(path)
    ordered = sorted(series, key=lambda s: (s.country, s.industry))
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(INDEX_COLUMNS)
        for one in ordered:
            for year, value in one.points:
                writer.writerow([year, one.country, one.industry, repr(value)])


@dataclass(frozen=True)
class SimulationSpec:
    """Year-by-year paths for a simulated sector.

    The five paths (technology level, capital, labor, capital price,
    wage) must have the same length, one entry per year starting at
    ``start_year``. The technology argument supplies the functional form;
    its own level is overridden by the ``levels`` path each year.
    """

    technology: Technology
    levels: tuple[float, ...]
    capital: tuple[float, ...]
    labor: tuple[float, ...]
    capital_price: tuple[float, ...]
    wage: tuple[float, ...]
    start_year: int
    convention: str
    country: str = "SIM"
    industry: str = "public"

    def __post_init__(self) -> None:
        if self.technology.uses_intermediates:
            raise InvalidParameterError(
                "panel simulation works with value-added technologies only"
            )
        if isinstance(self.start_year, bool) or not isinstance(self.start_year, int):
            raise InvalidParameterError(f"start_year must be an integer, got {self.start_year!r}")
        if self.convention not in SIMULATION_CONVENTIONS:
            raise InvalidParameterError(
                f"convention must be one of {SIMULATION_CONVENTIONS}, got {self.convention!r}"
            )
        paths = ("levels", "capital", "labor", "capital_price", "wage")
        for name in paths:
            values = tuple(float(v) for v in getattr(self, name))
            if any(not math.isfinite(v) or v <= 0.0 for v in values):
                raise InvalidParameterError(f"{name} path must be strictly positive throughout")
            object.__setattr__(self, name, values)
        lengths = {name: len(getattr(self, name)) for name in paths}
        if len(set(lengths.values())) != 1:
            raise InvalidParameterError(f"per-year paths differ in length: {lengths!r}")
        if len(self.levels) < 2:
            raise InvalidParameterError("a simulation needs at least 2 years")

    @property
    def years(self) -> int:
        return len(self.levels)


def simulate_sna_panel(spec: SimulationSpec) -> list[PanelObservation]:
    """Panel rows for a sector measured under one of two conventions.

    ``market``: nominal value added is frontier output at price 1, the
    deflator is 1, and factor shares are marginal-product payments over
    output; the accounting pipeline then recovers the true TFP path.
    ``sna-cost``: nominal value added is the factor bill, shares are cost
    shares, and the deflator is the frontier-output volume index
    level_t / level_base, so deflated spending tracks cost per unit of
    frontier output; the pipeline then mirrors frontier growth, falling
    at the rate of technical progress when spending is flat.
    """
    observations: list[PanelObservation] = []
    for step in range(spec.years):
        current = spec.technology.with_level(spec.levels[step])
        bundle = InputBundle(capital=spec.capital[step], labor=spec.labor[step])
        factor_bill = (
            spec.capital_price[step] * bundle.capital + spec.wage[step] * bundle.labor
        )
        if spec.convention == "market":
            output = current.output(bundle)
            mp_capital, mp_labor = current.marginal_products(bundle)
            va_nominal = output
            va_deflator = 1.0
            capital_share = mp_capital * bundle.capital / output
            labor_share = mp_labor * bundle.labor / output
        else:  # sna-cost
            va_nominal = factor_bill
            va_deflator = spec.levels[step] / spec.levels[0]
            capital_share = spec.capital_price[step] * bundle.capital / factor_bill
            labor_share = spec.wage[step] * bundle.labor / factor_bill
        observations.append(
            PanelObservation(
                year=spec.start_year + step,
                country=spec.country,
                industry=spec.industry,
                va_nominal=va_nominal,
                va_deflator=va_deflator,
                capital_services=bundle.capital,
                labor_input=bundle.labor,
                labor_share=labor_share,
                capital_share=capital_share,
            )
        )
    return observations
