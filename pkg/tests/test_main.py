"""
Tests for the command-line front end: output, formats and exit codes.
"""

import json

import pytest

from cli.rendering import to_json
from config.paths import PATHS
from tests.conftest import fixture_path, load_fixture

ABS_KINK = "n=2; L: -abs(x1)+x2^2; U: abs(x1)+x2^2"
OSCILLATING = "n=1; L: branch p [x1>0]: x1 * sin(1 / x1) | branch o [x1=0]: 0 | branch n [x1<0]: 0; U: 5"


def corpus_file(name: str) -> str:
    return str(PATHS.specs / f"{name}.ivf")


class TestDifferences:

    def test_gh_difference_where_h_fails(self, run_cli):
        """ghdiff prints the gH-difference and notes the missing H-difference."""
        result = run_cli("ghdiff", "0", "4", "0", "10")
        assert result.exit_code == 0
        assert result.stdout.strip() == "[-6, 0] (H-difference undefined)"

    def test_self_difference(self, run_cli):
        """a gH-minus a prints [0, 0]."""
        assert run_cli("ghdiff", "0", "1", "0", "1").stdout.startswith("[0, 0]")

    def test_h_difference_defined(self, run_cli):
        """ghdiff notes when the H-difference exists."""
        assert run_cli("ghdiff", "3", "7", "1", "2").stdout.strip() == "[2, 5] (H-difference defined)"

    def test_hdiff_undefined(self, run_cli):
        """hdiff prints undefined and still exits 0."""
        result = run_cli("hdiff", "0", "4", "0", "10")
        assert result.exit_code == 0
        assert result.stdout.strip() == "undefined"

    def test_malformed_interval(self, run_cli):
        """A reversed interval exits 2 with an error on stderr."""
        result = run_cli("ghdiff", "2", "1", "0", "1")
        assert result.exit_code == 2
        assert "Error" in result.stderr

    def test_missing_endpoint(self, run_cli):
        """Three endpoints for two intervals exit 2."""
        assert run_cli("ghdiff", "0", "1", "0").exit_code == 2

    def test_json(self, run_cli):
        """JSON output carries both differences."""
        data = json.loads(run_cli("--format", "json", "ghdiff", "0", "4", "0", "10").stdout)
        assert data == {"gh_diff": [-6.0, 0.0], "h_diff": None}


class TestProduct:

    def test_compare(self, run_cli):
        """--compare prints the gH and Ghosh products."""
        result = run_cli("ghproduct", "-v", "1", "-1", "-K", "1", "2", "1", "2", "--compare")
        assert result.stdout.splitlines() == ["gH: [0, 0]", "Ghosh: [-1, 1]"]

    def test_orthogonal(self, run_cli):
        """An orthogonal vector gives [0, 0]."""
        assert run_cli("ghproduct", "-v", "1", "-2", "-K", "3", "5", "1.5", "2.5").stdout.strip() == "[0, 0]"

    def test_zero_vector(self, run_cli):
        """The zero vector gives [0, 0]."""
        assert run_cli("ghproduct", "-v", "0", "0", "-K", "1", "2", "3", "6").stdout.strip() == "[0, 0]"

    def test_dimension_mismatch(self, run_cli):
        """Vector and intervals of different lengths exit 2."""
        assert run_cli("ghproduct", "-v", "1", "2", "3", "-K", "1", "2", "3", "6").exit_code == 2

    def test_odd_endpoint_count(self, run_cli):
        """An odd number of endpoints exits 2."""
        assert run_cli("ghproduct", "-v", "1", "-K", "1", "2", "3").exit_code == 2


class TestPartial:

    def test_exists(self, run_cli):
        """partial prints the value and the decision case."""
        result = run_cli("partial", "--spec", ABS_KINK, "--point", "0", "0", "-i", "1")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "exists [-1, 1] (case i)"

    def test_not_exists_from_file(self, run_cli):
        """A spec file with disagreeing sides prints both pairs."""
        result = run_cli("partial", "--spec-file", corpus_file("shifted_kink"), "--point", "0", "0", "-i", "1")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "not_exists: right [-6, 2] ≠ left [-8, 0]"

    def test_case_iii(self, run_cli):
        """Complementary right quotients are case iii."""
        result = run_cli("partial", "--spec-file", corpus_file("complementary_right"), "--point", "0", "0", "-i", "1")
        assert result.stdout.splitlines()[0] == "exists [1, 2] (case iii)"

    def test_parse_error(self, run_cli):
        """A syntax error exits 2 and names the line."""
        result = run_cli("partial", "--spec-file", str(fixture_path("specs/bad_syntax.ivf")), "--point", "0", "-i", "1")
        assert result.exit_code == 2
        assert "line 2" in result.stderr

    def test_evaluation_error(self, run_cli):
        """Division by zero at the point exits 3."""
        result = run_cli("partial", "--spec", "n=1; L: 1/x1; U: 1/x1 + 1", "--point", "0", "-i", "1")
        assert result.exit_code == 3

    def test_inconclusive(self, run_cli):
        """An oscillating quotient exits 4."""
        result = run_cli("partial", "--spec", OSCILLATING, "--point", "0", "-i", "1")
        assert result.exit_code == 4
        assert result.stdout.startswith("inconclusive")

    def test_invalid_plan_override(self, run_cli):
        """A ratio above 1 exits 2."""
        assert run_cli("--ratio", "1.5", "partial", "--spec", ABS_KINK, "--point", "0", "0", "-i", "1").exit_code == 2

    def test_spec_sources_are_exclusive(self, run_cli):
        """--spec and --spec-file together exit 2."""
        result = run_cli("partial", "--spec", ABS_KINK, "--spec-file", corpus_file("abs_kink"),
                         "--point", "0", "0", "-i", "1")
        assert result.exit_code == 2

    def test_missing_spec_file(self, run_cli, tmp_path):
        """A missing spec file exits 2."""
        result = run_cli("partial", "--spec-file", str(tmp_path / "absent.ivf"), "--point", "0", "-i", "1")
        assert result.exit_code == 2

    def test_plan_overrides_apply(self, run_cli):
        """Global plan options change the sampled steps."""
        result = run_cli("--format", "json", "--count", "24", "--t0", "1e-3",
                         "partial", "--spec-file", str(fixture_path("specs/parabola.ivf")), "--point", "3", "-i", "1")
        data = json.loads(result.stdout)
        assert len(data["profiles"]["lower"]["right"]["steps"]) == 24
        assert data["value"] == pytest.approx([6, 6], abs=2e-4)

    def test_inline_spec_matches_file(self, run_cli):
        """An inline spec and the same spec from a file print the same."""
        inline = run_cli("partial", "--spec", load_fixture("specs/parabola.ivf"), "--point", "3", "-i", "1")
        from_file = run_cli("partial", "--spec-file", str(fixture_path("specs/parabola.ivf")), "--point", "3", "-i", "1")
        assert inline.stdout == from_file.stdout
        assert inline.stdout.splitlines()[0] == "exists [6, 6] (case i)"


class TestGradient:

    def test_abs_kink(self, run_cli):
        """gradient prints one interval per coordinate."""
        result = run_cli("gradient", "--spec", ABS_KINK, "--point", "0", "0")
        assert result.stdout.splitlines()[0] == "([-1, 1], [0, 0])"

    def test_degenerate(self, run_cli):
        """A real function prints its ordinary gradient."""
        result = run_cli("gradient", "--spec", "n=2; L: x1 + 2*x2; U: x1 + 2*x2", "--point", "1", "1")
        assert result.stdout.splitlines()[0] == "([1, 1], [2, 2])"

    def test_one_component_missing(self, run_cli):
        """A missing component is printed by status and still exits 0."""
        result = run_cli("gradient", "--spec-file", corpus_file("shifted_kink"), "--point", "0", "0")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "(not_exists, [0, 0])"

    def test_failures_exit_3(self, run_cli):
        """Evaluation failures in the gradient exit 3."""
        assert run_cli("gradient", "--spec", "n=2; L: 1/x2; U: 1/x2 + 1", "--point", "0", "0").exit_code == 3

    @pytest.mark.parametrize("argv", [
        ("partial", "--spec", ABS_KINK, "--point", "1e12", "0", "-i", "1"),
        ("gradient", "--spec", ABS_KINK, "--point", "1e12", "0"),
    ])
    def test_unresolvable_scale_exits_2(self, run_cli, argv):
        """A step too small for the coordinate scale is bad input for partial and gradient alike."""
        assert run_cli(*argv).exit_code == 2


class TestQuotient:

    def test_quotient(self, run_cli):
        """quotient prints the gH quotient at one step."""
        result = run_cli("quotient", "--spec", ABS_KINK, "--point", "0", "0", "-i", "1", "-t", "0.1")
        assert result.stdout.strip() == "[-1, 1]"

    def test_unknown_branch(self, run_cli):
        """An unknown branch label exits 2."""
        result = run_cli("quotient", "--spec", ABS_KINK, "--point", "0", "0", "-i", "1", "-t", "0.1",
                         "--lower-branch", "rat")
        assert result.exit_code == 2


class TestJsonRoundTrip:
    """Loading and re-rendering JSON output gives identical bytes."""

    @pytest.mark.parametrize("argv", [
        ("ghproduct", "-v", "1", "-1", "-K", "1", "2", "1", "2", "--compare"),
        ("partial", "--spec", ABS_KINK, "--point", "0", "0", "-i", "1"),
        ("gradient", "--spec", ABS_KINK, "--point", "0", "0"),
    ])
    def test_round_trip(self, run_cli, argv):
        """Re-rendering parsed JSON reproduces the output."""
        output = run_cli("--format", "json", *argv).stdout
        assert to_json(json.loads(output)) + "\n" == output
