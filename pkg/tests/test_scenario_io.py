from pathlib import Path

import pytest

from pubtfp.errors import InvalidParameterError, ScenarioError
from pubtfp.paradoxes import FailedScenario, Scenario, run_all
from pubtfp.scenario_io import load_scenarios, load_simulation
from pubtfp.technology import Ces, CobbDouglas, HomotheticTranslog, TwoLevelCes

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"

SIM_HEADER = """\
simulation:
  convention: sna-cost
  start_year: 2000
  technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
"""


def write(tmp_path, text, name="file.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadScenarios:
    def test_shipped_file_parses_to_five_scenarios(self):
        scenarios = load_scenarios(SCENARIO_DIR / "paradoxes.yaml")
        assert [s.name for s in scenarios] == [
            "technical-progress",
            "allocative-gain",
            "scale-to-best",
            "cheaper-inputs",
            "markup-cut",
        ]
        assert [s.paradox_id for s in scenarios] == [1, 2, 3, 4, 5]
        assert all(isinstance(s, Scenario) for s in scenarios)
        assert scenarios[0].shift.factor == 1.25
        assert isinstance(scenarios[2].technology, HomotheticTranslog)
        last = scenarios[4]
        assert len(last.pricing.items) == 2
        assert last.markups_after == (0.1, 0.05)
        assert last.technology.alpha_intermediates == 0.3

    def test_shipped_file_runs_clean_and_confirmed(self):
        outcomes = run_all(SCENARIO_DIR / "paradoxes.yaml")
        assert len(outcomes) == 5
        assert all(o.error is None for o in outcomes)
        assert all(o.report.paradox_confirmed for o in outcomes)

    def test_empty_documents_yield_no_scenarios(self, tmp_path):
        assert load_scenarios(write(tmp_path, "")) == []
        assert load_scenarios(write(tmp_path, "scenarios:\n", name="null.yaml")) == []

    def test_unparseable_yaml_is_a_file_error(self, tmp_path):
        with pytest.raises(ScenarioError, match="not valid YAML"):
            load_scenarios(write(tmp_path, "scenarios: [\n"))

    def test_wrong_top_level_shapes_are_file_errors(self, tmp_path):
        with pytest.raises(ScenarioError, match="mapping"):
            load_scenarios(write(tmp_path, "- a\n- b\n"))
        with pytest.raises(ScenarioError, match="unknown keys"):
            load_scenarios(write(tmp_path, "scenarios: []\nextra: 1\n"))
        with pytest.raises(ScenarioError, match="must be a list"):
            load_scenarios(write(tmp_path, "scenarios: 5\n"))

    def test_duplicate_names_are_a_file_error(self, tmp_path):
        text = """\
scenarios:
  - name: twin
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
  - name: twin
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 2.0
"""
        with pytest.raises(ScenarioError, match="unique"):
            load_scenarios(write(tmp_path, text))

    def test_broken_entries_become_failed_scenarios_in_place(self, tmp_path):
        text = """\
scenarios:
  - name: broken-tech
    paradox: 3
    technology: {family: warp-drive}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
  - 42
  - name: ok
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
"""
        loaded = load_scenarios(write(tmp_path, text))
        assert isinstance(loaded[0], FailedScenario)
        assert loaded[0].name == "broken-tech"
        assert loaded[0].paradox_id == 3
        assert "family" in loaded[0].error
        assert isinstance(loaded[1], FailedScenario)
        assert loaded[1].name == "scenario-2"
        assert loaded[1].paradox_id == 0
        assert isinstance(loaded[2], Scenario)

    def test_out_of_range_paradox_id_fails_that_entry(self, tmp_path):
        text = """\
scenarios:
  - name: beyond
    paradox: 9
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
"""
        loaded = load_scenarios(write(tmp_path, text))
        assert isinstance(loaded[0], FailedScenario)
        assert loaded[0].paradox_id == 0

    def test_unknown_entry_key_fails_that_entry(self, tmp_path):
        text = """\
scenarios:
  - name: typo
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift: 1.5
"""
        loaded = load_scenarios(write(tmp_path, text))
        assert isinstance(loaded[0], FailedScenario)
        assert "unknown keys" in loaded[0].error

    def test_non_numeric_field_fails_that_entry(self, tmp_path):
        text = """\
scenarios:
  - name: words
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: big
"""
        loaded = load_scenarios(write(tmp_path, text))
        assert isinstance(loaded[0], FailedScenario)
        assert "must be a number" in loaded[0].error

    def test_all_four_families_parse(self, tmp_path):
        text = """\
scenarios:
  - name: cd
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7, level: 1.5}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
  - name: ces
    paradox: 1
    technology: {family: ces, capital_weight: 0.4, substitution: -1.0, returns_to_scale: 0.9}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
  - name: translog
    paradox: 1
    technology: {family: homothetic-translog, inner_alpha_capital: 0.5, slope: 1.2, curvature: -0.1}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
  - name: nested
    paradox: 1
    technology:
      family: two-level-ces
      capital_weight: 0.4
      inner_substitution: -1.0
      value_added_weight: 0.7
      outer_substitution: 0.5
    bundle: {capital: 1, labor: 1, intermediates: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.5
"""
        loaded = load_scenarios(write(tmp_path, text))
        assert [type(s.technology) for s in loaded] == [
            CobbDouglas, Ces, HomotheticTranslog, TwoLevelCes,
        ]
        assert loaded[0].technology.level == 1.5
        assert loaded[1].technology.returns_to_scale == 0.9
        assert loaded[3].bundle.intermediates == 1.0


class TestLoadSimulation:
    def test_shipped_config(self):
        spec = load_simulation(SCENARIO_DIR / "simulate_tech_progress.yaml")
        assert spec.country == "SIM"
        assert spec.industry == "education"
        assert spec.convention == "sna-cost"
        assert spec.start_year == 1995
        assert spec.years == 26
        assert spec.levels[0] == 1.0
        assert spec.levels[25] == pytest.approx(1.01**25, rel=1e-12)
        assert spec.capital == (1.0,) * 26
        assert spec.wage == (1.0,) * 26

    def test_explicit_per_year_lists(self, tmp_path):
        text = SIM_HEADER + """\
  levels: [1.0, 1.1, 1.21]
  capital: [1.0, 1.5, 2.0]
  labor: [2.0, 2.0, 2.0]
  prices: {capital_price: 1, wage: 1}
"""
        spec = load_simulation(write(tmp_path, text))
        assert spec.years == 3
        assert spec.levels == (1.0, 1.1, 1.21)
        assert spec.capital == (1.0, 1.5, 2.0)
        assert spec.capital_price == (1.0, 1.0, 1.0)
        assert spec.country == "SIM"

    def test_price_trajectories(self, tmp_path):
        text = SIM_HEADER + """\
  level_growth: 0.0
  bundle: {capital: 1, labor: 1}
  capital_price: [1.0, 0.9]
  wage: [1.0, 0.95]
"""
        spec = load_simulation(write(tmp_path, text))
        assert spec.wage == (1.0, 0.95)
        assert spec.levels == (1.0, 1.0)

    @pytest.mark.parametrize(
        "body,message",
        [
            ("  levels: [1, 1.1]\n  level_growth: 0.01\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n", "exactly one"),
            ("  bundle: {capital: 1, labor: 1}\n  prices: {capital_price: 1, wage: 1}\n"
             "  years: 5\n", "exactly one"),
            ("  level_growth: 0.01\n  bundle: {capital: 1, labor: 1}\n"
             "  capital: [1, 1]\n  labor: [1, 1]\n  prices: {capital_price: 1, wage: 1}\n",
             "not both"),
            ("  level_growth: 0.01\n  capital: [1, 1]\n  prices: {capital_price: 1, wage: 1}\n",
             "come together"),
            ("  level_growth: 0.01\n  prices: {capital_price: 1, wage: 1}\n  years: 5\n",
             "needs bundle"),
            ("  level_growth: 0.01\n  bundle: {capital: 1, labor: 1}\n  years: 5\n",
             "needs prices"),
            ("  levels: [1, 1.1, 1.2]\n  capital: [1, 1]\n  labor: [1, 1]\n"
             "  prices: {capital_price: 1, wage: 1}\n", "disagree"),
            ("  levels: [1, 1.1]\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n  years: 3\n", "disagree"),
            ("  level_growth: 0.01\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n", "years is required"),
            ("  levels: [1.0]\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n", "at least 2 years"),
            ("  level_growth: -1.0\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n  years: 5\n", "exceed -1"),
            ("  level_growth: 0.01\n  bundle: {capital: 1, labor: 1}\n"
             "  prices: {capital_price: 1, wage: 1}\n  years: 5\n  seed: 7\n", "unknown keys"),
        ],
    )
    def test_malformed_configs(self, tmp_path, body, message):
        with pytest.raises(ScenarioError, match=message):
            load_simulation(write(tmp_path, SIM_HEADER + body))

    def test_unknown_convention_is_rejected_downstream(self, tmp_path):
        text = """\
simulation:
  convention: hedonic
  start_year: 2000
  technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
  level_growth: 0.01
  bundle: {capital: 1, labor: 1}
  prices: {capital_price: 1, wage: 1}
  years: 5
"""
        with pytest.raises(InvalidParameterError, match="convention"):
            load_simulation(write(tmp_path, text))

    def test_intermediates_technology_is_rejected(self, tmp_path):
        text = """\
simulation:
  convention: sna-cost
  start_year: 2000
  technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.4, alpha_intermediates: 0.3}
  level_growth: 0.01
  bundle: {capital: 1, labor: 1}
  prices: {capital_price: 1, wage: 1}
  years: 5
"""
        with pytest.raises(InvalidParameterError):
            load_simulation(write(tmp_path, text))
