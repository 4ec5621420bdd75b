"""
TEST DOC: Run Configuration

WHAT: Tests for parse_and_validate and the per-command parameter schemas.
WHY: Every command must refuse bad parameters before it computes anything,
     with a message naming the offending field.
HOW: Feed flag dictionaries and TOML config files and inspect the RunConfig
     or the UsageError.

CASES:
- Valid counterexample flags build a RunConfig
- Regime violations are rejected per command
- Config-file values are overridden by flags
- Comma-separated lists and windows parse
- Domain sources need exactly one of --domain / --gallery

EDGE CASES:
- A missing domain file
- A config table that is not a table
- Flags left at None do not override the config file
"""

import math

import pytest

from fracpoincare.errors import UsageError
from fracpoincare.models import Command, parse_and_validate
from fracpoincare.models.run import parse_window, split_list


class TestHelpers:
    """Tests for flag parsing helpers."""

    def test_split_list(self):
        """Comma-separated strings split and strip."""
        assert split_list("8, 16,32") == ["8", "16", "32"]
        assert split_list([1, 2]) == [1, 2]

    def test_parse_window_string(self):
        """x0,x1,y0,y1 becomes a planar box."""
        window = parse_window("-1,1,0,2")
        assert window is not None
        assert window.bounds == ((-1.0, 1.0), (0.0, 2.0))

    def test_parse_window_pairs(self):
        """Lists of pairs and infinite bounds are accepted."""
        window = parse_window([[0, 1], ["-inf", 3]])
        assert window is not None
        assert window.bounds == ((0.0, 1.0), (-math.inf, 3.0))

    def test_parse_window_odd(self):
        """An odd number of values is rejected."""
        with pytest.raises(ValueError, match="pairs"):
            parse_window("0,1,2")


class TestCounterexampleParams:
    """Tests for the counterexample command schema."""

    def test_valid(self):
        """The documented invocation validates."""
        config = parse_and_validate(
            Command.COUNTEREXAMPLE, {"s": 0.25, "beta": 3, "A": 3, "k": "8,16"}
        )
        assert config.command is Command.COUNTEREXAMPLE
        assert config.params.k == (8, 16)
        assert config.seed == 42

    def test_supercritical_rejected(self):
        """s = 0.6 fails before any computation and cites s < 1/2."""
        with pytest.raises(UsageError, match="s < 1/2"):
            parse_and_validate(Command.COUNTEREXAMPLE, {"s": 0.6, "k": "8,16"})

    def test_missing_s(self):
        """The error names the missing field."""
        with pytest.raises(UsageError, match="^counterexample: s"):
            parse_and_validate(Command.COUNTEREXAMPLE, {})

    def test_cex_conversion(self):
        """The params convert to CexParams."""
        config = parse_and_validate(Command.COUNTEREXAMPLE, {"s": 0.25, "k": "2,3"})
        cex = config.params.cex()
        assert cex.k_list == (2, 3)
        assert cex.beta == 3.0


class TestConfigFile:
    """Tests for TOML config files."""

    def test_values_from_file(self, fixtures_dir):
        """A command table supplies parameters."""
        config = parse_and_validate(
            Command.ASYMPTOTICS, {"s": None}, config_file=fixtures_dir / "config.toml"
        )
        assert config.params.ells == (1.0, 2.0)
        assert config.params.h == 0.25

    def test_flags_override_file(self, fixtures_dir):
        """Given flags win over file values."""
        config = parse_and_validate(
            Command.COUNTEREXAMPLE,
            {"s": 0.3, "k": None},
            config_file=fixtures_dir / "config.toml",
        )
        assert config.params.s == 0.3
        assert config.params.k == (2, 3)

    def test_missing_file(self, tmp_path):
        """A missing config file is a usage error."""
        with pytest.raises(UsageError, match="not found"):
            parse_and_validate(Command.COUNTEREXAMPLE, {}, config_file=tmp_path / "none.toml")

    def test_table_required(self, tmp_path):
        """A command entry must be a table."""
        path = tmp_path / "bad.toml"
        path.write_text('counterexample = "oops"\n')
        with pytest.raises(UsageError, match="must be a table"):
            parse_and_validate(Command.COUNTEREXAMPLE, {}, config_file=path)


class TestCheckParams:
    """Tests for the check command schema."""

    def test_density_needs_radius(self):
        """The density condition needs R."""
        with pytest.raises(UsageError, match="--R"):
            parse_and_validate(
                Command.CHECK, {"gallery": "strip", "condition": "density", "s": 0.25}
            )

    def test_ls_needs_supercritical(self):
        """LS(s) requires s > 1/2."""
        with pytest.raises(UsageError, match="s > 1/2"):
            parse_and_validate(Command.CHECK, {"gallery": "strip", "condition": "ls", "s": 0.25})

    def test_extended_needs_subcritical(self):
        """Extended balls require s < 1/2."""
        with pytest.raises(UsageError, match="s < 1/2"):
            parse_and_validate(
                Command.CHECK,
                {"gallery": "strip", "condition": "necessary", "mode": "extended", "s": 0.75},
            )

    def test_arc_parsing(self):
        """The direction arc parses into (a, b, count)."""
        config = parse_and_validate(
            Command.CHECK,
            {"gallery": "strip", "condition": "ls", "s": 0.75, "directions": "arc:0:1.5:4"},
        )
        assert config.params.arc() == (0.0, 1.5, 4)

    def test_bad_arc(self):
        """Malformed arcs are rejected."""
        with pytest.raises(UsageError, match="directions"):
            parse_and_validate(
                Command.CHECK,
                {"gallery": "strip", "condition": "ls", "s": 0.75, "directions": "cone:0:1"},
            )

    def test_window(self):
        """The window flag becomes a box."""
        config = parse_and_validate(
            Command.CHECK,
            {
                "gallery": "strip",
                "condition": "density",
                "s": 0.25,
                "R": 2.0,
                "window": "0,1,-2,2",
            },
        )
        assert config.params.window.bounds == ((0.0, 1.0), (-2.0, 2.0))

    def test_unknown_condition(self):
        """Only the four conditions exist."""
        with pytest.raises(UsageError, match="condition"):
            parse_and_validate(Command.CHECK, {"gallery": "strip", "condition": "x", "s": 0.25})


class TestDomainSource:
    """Tests for --domain / --gallery handling."""

    def test_missing_domain_file(self, tmp_path):
        """A missing domain file exits before computing."""
        with pytest.raises(UsageError, match="not found"):
            parse_and_validate(Command.EIGEN, {"domain": tmp_path / "missing.json", "s": 0.25})

    def test_neither_source(self):
        """One source is required."""
        with pytest.raises(UsageError, match="exactly one"):
            parse_and_validate(Command.EIGEN, {"s": 0.25})

    def test_both_sources(self, fixtures_dir):
        """Two sources are ambiguous."""
        with pytest.raises(UsageError, match="exactly one"):
            parse_and_validate(
                Command.EIGEN,
                {"domain": fixtures_dir / "unit_square.json", "gallery": "strip", "s": 0.25},
            )


class TestEigenAndAsymptoticsParams:
    """Tests for eigenvalue command schemas."""

    def test_grid_parsing(self):
        """64x16 becomes a two-axis grid."""
        config = parse_and_validate(
            Command.EIGEN, {"gallery": "unit_square", "s": 0.25, "grid": "64x16", "k": 4}
        )
        assert config.params.grid == (64, 16)
        assert config.params.k == 4

    def test_grid_and_ladder_exclusive(self):
        """A fixed grid and a ladder cannot be combined."""
        with pytest.raises(UsageError, match="either"):
            parse_and_validate(
                Command.EIGEN,
                {"gallery": "unit_square", "s": 0.25, "grid": "8x8", "ladder": "8,12,16"},
            )

    def test_ladder(self):
        """The ladder parses from a comma list."""
        config = parse_and_validate(
            Command.EIGEN, {"gallery": "unit_square", "s": 0.25, "ladder": "8,12,16"}
        )
        assert config.params.ladder == (8, 12, 16)

    def test_asymptotics_lists(self):
        """omega and ells parse from comma lists."""
        config = parse_and_validate(
            Command.ASYMPTOTICS, {"s": 0.25, "omega": "0,1", "ells": "2,4,8", "k": 2}
        )
        assert config.params.omega == (0.0, 1.0)
        assert config.params.ells == (2.0, 4.0, 8.0)

    def test_asymptotics_ascending(self):
        """ells must increase."""
        with pytest.raises(UsageError, match="ascending"):
            parse_and_validate(Command.ASYMPTOTICS, {"s": 0.25, "ells": "4,2"})

    def test_asymptotics_regime(self):
        """The experiment needs s < 1/2."""
        with pytest.raises(UsageError, match="s < 1/2"):
            parse_and_validate(Command.ASYMPTOTICS, {"s": 0.75})
