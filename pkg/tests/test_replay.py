"""
Tests for replaying the reference corpus and for corpus loading.
"""

import json

import pytest
import yaml

from cli.replay import FAIL, PASS, cmd_replay_paper, replay, run_case
from config.paths import PATHS
from corpus.corpus import CorpusError, get_spec, get_spec_source, load_cases, spec_names

MUTATED_CASE = "partial-complementary-left"


@pytest.fixture
def tampered_corpus(tmp_path):
    """The bundled corpus with one expected derivative value changed."""
    data = yaml.safe_load(PATHS.reference_examples.read_text(encoding='utf-8'))
    for case in data["cases"]:
        if case["name"] == MUTATED_CASE:
            case["expected"]["value"] = [1, 3]
    path = tmp_path / "tampered.yaml"
    path.write_text(yaml.safe_dump(data, sort_keys=False), encoding='utf-8')
    return path


class TestCorpus:

    def test_bundled_specs_parse(self):
        """Every bundled spec parses as a function of two variables."""
        for name in spec_names():
            spec = get_spec(name)
            assert spec.arity == 2

    def test_unknown_spec(self):
        """An unknown spec name lists the available ones."""
        with pytest.raises(CorpusError, match="abs_kink"):
            get_spec_source("no_such_spec")

    def test_cases_have_unique_names(self):
        """Case names in the bundled corpus are unique."""
        names = [case["name"] for case in load_cases()]
        assert len(names) == len(set(names))

    def test_missing_file(self, tmp_path):
        """A missing corpus file is a CorpusError."""
        with pytest.raises(CorpusError):
            load_cases(tmp_path / "absent.yaml")

    def test_invalid_yaml(self, tmp_path):
        """Malformed YAML is a CorpusError."""
        path = tmp_path / "broken.yaml"
        path.write_text("cases: [\n", encoding='utf-8')
        with pytest.raises(CorpusError):
            load_cases(path)

    def test_missing_cases_list(self, tmp_path):
        """A corpus without a cases list is a CorpusError."""
        path = tmp_path / "empty.yaml"
        path.write_text("notes: nothing here\n", encoding='utf-8')
        with pytest.raises(CorpusError):
            load_cases(path)

    def test_case_without_expected(self, tmp_path):
        """A case without an expected value is a CorpusError."""
        path = tmp_path / "partial.yaml"
        path.write_text("cases:\n  - name: x\n    kind: ghdiff\n", encoding='utf-8')
        with pytest.raises(CorpusError):
            load_cases(path)

    def test_empty_corpus_fails(self, tmp_path):
        """A corpus with no cases is not a passing replay."""
        path = tmp_path / "none.yaml"
        path.write_text("cases: []\n", encoding='utf-8')
        result = cmd_replay_paper(path)
        assert result.exit_code == 1
        assert result.data["passed"] is False
        assert "no cases to replay" in result.text


class TestRunCase:

    def test_exact_difference(self, plan):
        """Differences are compared exactly."""
        case = {"name": "d", "kind": "ghdiff", "a": [0, 4], "b": [0, 10], "expected": [-6, 0]}
        assert run_case(case, plan).passed

    def test_wrong_product_fails(self, plan):
        """A wrong product fails and keeps the computed value."""
        case = {"name": "p", "kind": "ghproduct", "v": [1, -1], "K": [[1, 2], [1, 2]], "expected": [-1, 1]}
        result = run_case(case, plan)
        assert not result.passed
        assert result.got == [0.0, 0.0]

    def test_unknown_kind(self, plan):
        """An unknown case kind fails with its name in the detail."""
        result = run_case({"name": "u", "kind": "integral", "expected": None}, plan)
        assert not result.passed
        assert "integral" in result.detail

    def test_partial_mismatch_detail(self, plan):
        """A wrong derivative value is named in the detail."""
        case = {"name": "k", "kind": "partial", "spec": "abs_kink", "point": [0, 0], "i": 1,
                "expected": {"status": "exists", "value": [-1, 2], "case": "i"}}
        result = run_case(case, plan)
        assert not result.passed
        assert "value" in result.detail

    @pytest.mark.parametrize("pair", [[-1, 1, 0], [-1]])
    def test_pair_length_must_match(self, plan, pair):
        """An expected endpoint pair of the wrong length fails."""
        case = {"name": "k", "kind": "partial", "spec": "abs_kink", "point": [0, 0], "i": 1,
                "expected": {"status": "exists", "right_pair": pair}}
        result = run_case(case, plan)
        assert not result.passed
        assert "right_pair" in result.detail

    def test_matching_pair_passes(self, plan):
        """A matching endpoint pair passes."""
        case = {"name": "k", "kind": "partial", "spec": "abs_kink", "point": [0, 0], "i": 1,
                "expected": {"status": "exists", "right_pair": [-1, 1]}}
        assert run_case(case, plan).passed

    def test_gradient_with_complementary_component(self, plan):
        """The bundled gradient case for complementary_left passes."""
        case = next(c for c in load_cases() if c["name"] == "gradient-complementary-left")
        result = run_case(case, plan)
        assert result.passed, result.detail
        assert [r["status"] for r in result.got] == ["exists", "not_exists"]


@pytest.mark.slow
class TestReplay:

    def test_bundled_corpus_passes(self):
        """Every bundled case passes."""
        results = replay()
        failed = [r.name for r in results if not r.passed]
        assert failed == []

    def test_exit_code_ok(self):
        """A clean replay exits 0 with an all-passed summary."""
        result = cmd_replay_paper()
        assert result.exit_code == 0
        assert result.text.splitlines()[-1] == f"{len(load_cases())}/{len(load_cases())} passed"

    def test_tampered_value_is_caught(self, tampered_corpus):
        """Only the tampered case fails."""
        result = cmd_replay_paper(tampered_corpus)
        assert result.exit_code == 1
        rows = {line.split()[1]: line.split()[0] for line in result.text.splitlines()[:-1]}
        assert rows[MUTATED_CASE] == FAIL
        assert all(status == PASS for name, status in rows.items() if name != MUTATED_CASE)

    def test_cli_json(self, run_cli):
        """JSON output lists one result per case."""
        result = run_cli("replay-paper", "--json")
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["passed"] is True
        assert {r["name"] for r in data["results"]} == {c["name"] for c in load_cases()}

    def test_cli_tampered_corpus(self, run_cli, tampered_corpus):
        """A tampered corpus given on the command line exits 1."""
        result = run_cli("replay-paper", "--corpus", str(tampered_corpus))
        assert result.exit_code == 1
        assert f"FAIL  {MUTATED_CASE}" in result.stdout
