"""
Basic tests for configuration, memo tables and search budgets.
"""

import pytest
import os
import sys

# Add the project root to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.core.config import Config, DEFAULT_CAPS, check_cap, get_config, reset_config, resolve_cap
from cliquesparse.core.exceptions import CapacityError, ConfigurationError, GraphParseError, DomainError
from cliquesparse.core.report import CheckReport, Report, digest
from cliquesparse.utils.budget import SearchBudget
from cliquesparse.utils.cache import MemoTable


@pytest.fixture(autouse=True)
def fresh_config():
    reset_config()
    yield
    reset_config()


class TestConfig:
    """Test configuration management."""

    def test_defaults(self):
        """Every cap starts at its default."""
        config = Config()
        assert config.caps == DEFAULT_CAPS
        assert config.default_seed == 0
        assert config.default_trials == 50
        config.validate()

    def test_environment_override(self, monkeypatch):
        """CLIQUESPARSE_<CAP> overrides a cap."""
        monkeypatch.setenv('CLIQUESPARSE_LINKAGE_CAP', '9')
        config = Config()
        assert config.get_cap('linkage_cap') == 9

    def test_non_integer_cap(self, monkeypatch):
        """A cap that is not an integer is a configuration error."""
        monkeypatch.setenv('CLIQUESPARSE_TW_CARD_CAP', 'many')
        with pytest.raises(ConfigurationError):
            Config()

    def test_validation_rejects_bad_values(self, monkeypatch):
        """Non-positive caps, unknown log levels and oracle caps above exact caps fail."""
        monkeypatch.setenv('CLIQUESPARSE_PATTERN_CAP', '0')
        with pytest.raises(ConfigurationError):
            Config().validate()
        monkeypatch.delenv('CLIQUESPARSE_PATTERN_CAP')

        monkeypatch.setenv('CLIQUESPARSE_LOG_LEVEL', 'CHATTY')
        with pytest.raises(ConfigurationError):
            Config().validate()
        monkeypatch.delenv('CLIQUESPARSE_LOG_LEVEL')

        monkeypatch.setenv('CLIQUESPARSE_RANKWIDTH_ORACLE_CAP', '12')
        with pytest.raises(ConfigurationError):
            Config().validate()

    def test_unknown_cap(self):
        """Asking for a cap that does not exist is a configuration error."""
        with pytest.raises(ConfigurationError):
            Config().get_cap('no_such_cap')

    def test_process_wide_config(self, monkeypatch):
        """get_config caches until reset_config."""
        first = get_config()
        assert get_config() is first
        monkeypatch.setenv('CLIQUESPARSE_CLIQUE_CAP', '5')
        assert resolve_cap('clique_cap') == DEFAULT_CAPS['clique_cap']
        reset_config()
        assert resolve_cap('clique_cap') == 5

    def test_check_cap(self):
        """check_cap names the cap it enforces and honours overrides."""
        check_cap('linkage_cap', 14)
        with pytest.raises(CapacityError) as info:
            check_cap('linkage_cap', 15, entry='induced Menger')
        assert info.value.cap_name == 'linkage_cap'
        assert info.value.limit == 14
        assert info.value.actual == 15
        assert 'linkage_cap' in str(info.value)
        check_cap('linkage_cap', 15, override=20)


class TestMemoTable:
    """Test memo table behaviour."""

    def test_get_and_set(self):
        """Stored values come back and count as hits."""
        table = MemoTable(max_size=4, name='t')
        assert table.get(1) is None
        table.set(1, 'one')
        assert table.get(1) == 'one'
        assert 1 in table
        stats = table.get_stats()
        assert stats['hits'] == 1
        assert stats['misses'] == 1
        assert stats['name'] == 't'

    def test_lru_eviction(self):
        """The least recently used entry goes first."""
        table = MemoTable(max_size=2)
        table.set('a', 1)
        table.set('b', 2)
        table.get('a')
        table.set('c', 3)
        assert 'a' in table
        assert 'b' not in table
        assert table.size() == 2

    def test_get_or_compute(self):
        """compute runs only on a miss, even when the stored value is falsy."""
        table = MemoTable(max_size=8)
        calls = []

        def compute():
            calls.append(1)
            return 0

        assert table.get_or_compute('x', compute) == 0
        assert table.get_or_compute('x', compute) == 0
        assert len(calls) == 1

    def test_clear(self):
        """clear drops entries and statistics."""
        table = MemoTable(max_size=8)
        table.set(1, 1)
        table.get(1)
        table.clear()
        assert table.size() == 0
        assert table.get_stats()['hits'] == 0

    def test_default_size_from_config(self):
        """Without max_size the memo_max_size cap applies."""
        assert MemoTable().max_size == DEFAULT_CAPS['memo_max_size']


class TestSearchBudget:
    """Test search budgets."""

    def test_tick_until_exhausted(self):
        """The step after the limit raises CapacityError."""
        budget = SearchBudget.from_config(limit=3)
        budget.tick(3)
        assert budget.remaining == 0
        with pytest.raises(CapacityError) as info:
            budget.tick()
        assert info.value.cap_name == 'search_node_budget'

    def test_reset(self):
        """reset starts counting again."""
        budget = SearchBudget.from_config(limit=2)
        budget.tick(2)
        budget.reset()
        assert budget.steps == 0
        assert budget.remaining == 2


class TestReports:
    """Test report models."""

    def test_first_counterexample_kept(self):
        """A clause keeps the counterexample of its first failure."""
        report = CheckReport(check='demo')
        assert report.record('c', True)
        assert not report.record('c', False, {'n': 1})
        report.record('c', False, {'n': 2})
        clause = report.clause('c')
        assert clause.checked == 3
        assert clause.counterexample == {'n': 1}
        assert report.failed_clauses() == ['c']
        assert not report.passed

    def test_findings_never_fail(self):
        """Findings are informational and deduplicated."""
        report = CheckReport(check='demo')
        report.add_finding('note')
        report.add_finding('note')
        assert report.findings == ['note']
        assert report.passed

    def test_merge(self):
        """Merging sums evaluations and carries failures."""
        left = CheckReport(check='left')
        left.record('a', True)
        right = CheckReport(check='right')
        right.record('a', True)
        right.record('b', False, {'x': 1})
        left.merge(right)
        assert left.clause('a').checked == 2
        assert left.failed_clauses() == ['b']
        assert not left.passed

    def test_report_json_is_sorted_and_versioned(self):
        """The JSON report has a schema key and sorted keys."""
        report = Report(command='params', input_digest=digest(b'n 1\n'), version='1.0.0',
                        results={'b': 1, 'a': 2})
        text = report.to_json()
        assert text.startswith('{"command":"params"')
        assert '"schema":"cliquesparse/1"' in text
        assert text.index('"a"') < text.index('"b"')
        assert report.to_json() == text


class TestExceptions:
    """Test the exception tree."""

    def test_parse_error_is_domain_error(self):
        """Parse errors carry their line and are domain errors."""
        error = GraphParseError("bad token", line=3)
        assert isinstance(error, DomainError)
        assert error.line == 3
        assert str(error).startswith('line 3')


if __name__ == "__main__":
    pytest.main([__file__])
