"""
Tests for the command-line application: reports, text output and exit codes.
"""

import pytest
import io
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.core.app import (
    EXIT_CAPACITY,
    EXIT_CONFIG,
    EXIT_DOMAIN,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    CliqueSparseApp,
)
from cliquesparse.core.config import reset_config
from cliquesparse.core.report import SCHEMA_VERSION, digest


@pytest.fixture(autouse=True)
def fresh_config():
    reset_config()
    yield
    reset_config()


@pytest.fixture
def graph_file(tmp_path):
    """Write graph text to a file and return its path."""
    def write(text, name='graph.txt'):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = CliqueSparseApp().run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


P4_TEXT = "a b\nb c\nc d\n"


class TestGraphCommands:
    """Test params, quotient, cliques and gen."""

    def test_params(self, graph_file):
        """P_4 reports its parameters inside a versioned report."""
        path = graph_file(P4_TEXT)
        code, out, _ = run_cli('params', '--input', path)
        assert code == EXIT_OK
        report = json.loads(out)
        assert report['schema'] == SCHEMA_VERSION
        assert report['command'] == 'params'
        assert report['input_digest'] == digest(P4_TEXT.encode())
        parameters = report['results']['parameters']
        assert (parameters['cid'], parameters['cideg'], parameters['cdeg']) == (2, 2, 2)
        assert report['results']['labels'] == ['a', 'b', 'c', 'd']

    def test_identical_runs_give_identical_bytes(self, graph_file):
        """Reports are deterministic."""
        path = graph_file(P4_TEXT)
        assert run_cli('params', '--input', path)[1] == run_cli('params', '--input', path)[1]

    def test_quotient(self, graph_file):
        """The twins of a triangle with a pendant form one class."""
        path = graph_file("0 1\n1 2\n0 2\n0 3\n")
        code, out, _ = run_cli('quotient', '--input', path)
        results = json.loads(out)['results']
        assert code == EXIT_OK
        assert results['classes'] == [[0], [1, 2], [3]]
        assert results['quotient']['edges'] == [[0, 1], [0, 2]]
        assert results['twin_free'] is False

    def test_cliques(self, graph_file):
        """Maximal cliques come with their incidence."""
        code, out, _ = run_cli('cliques', '--input', graph_file(P4_TEXT))
        results = json.loads(out)['results']
        assert results['cliques'] == [[0, 1], [1, 2], [2, 3]]
        assert results['incidence'] == [[0], [0, 1], [1, 2], [2]]

    def test_gen_text(self):
        """gen prints the graph itself by default."""
        code, out, _ = run_cli('gen', '--family', 'Path', '--n', '3')
        assert code == EXIT_OK
        assert out == "n 3\n0 1\n1 2\n"

    def test_gen_json(self):
        """With --json gen describes the family member."""
        code, out, _ = run_cli('gen', '--family', 'Q', '--inner', 'MKK', '--n', '2', '--k', '3', '--json')
        results = json.loads(out)['results']
        assert code == EXIT_OK
        assert results['family'] == 'Q_3(MKK_2)'
        assert results['n'] == 9

    def test_gen_q_needs_inner(self):
        """Q without an inner family is a usage error."""
        code, _, err = run_cli('gen', '--family', 'Q', '--n', '2')
        assert code == EXIT_USAGE
        assert '--inner' in err

    def test_gen_unknown_family(self):
        """Unknown family names are domain errors."""
        assert run_cli('gen', '--family', 'Petersen', '--n', '3')[0] == EXIT_DOMAIN


class TestWidthCommands:
    """Test tw, rankwidth and vm-check."""

    def test_alpha_treewidth(self, graph_file):
        """The 4-cycle has alpha-treewidth 2 and a valid decomposition."""
        path = graph_file("0 1\n1 2\n2 3\n3 0\n")
        code, out, _ = run_cli('tw', '--input', path, '--measure', 'alpha')
        results = json.loads(out)['results']
        assert code == EXIT_OK
        assert (results['measure'], results['width']) == ('alpha', 2)
        assert {v for bag in results['decomposition']['bags'] for v in bag} == {0, 1, 2, 3}

    def test_standard_convention(self, graph_file):
        """K_4 has card width 4, or 3 in the usual convention."""
        path = graph_file("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        results = json.loads(run_cli('tw', '--input', path, '--standard')[1])['results']
        assert (results['width'], results['standard_width']) == (4, 3)

    def test_capacity_exit(self, graph_file):
        """Graphs above the alpha-treewidth cap exit 3 and name the cap."""
        path = graph_file("".join(f"{i} {i + 1}\n" for i in range(11)))
        code, out, err = run_cli('tw', '--input', path, '--measure', 'alpha')
        assert code == EXIT_CAPACITY
        assert out == ""
        assert 'tw_measure_cap' in err

    def test_rankwidth(self, graph_file):
        """C_5 has rankwidth 2."""
        path = graph_file("0 1\n1 2\n2 3\n3 4\n4 0\n")
        code, out, _ = run_cli('rankwidth', '--input', path)
        assert code == EXIT_OK
        assert json.loads(out)['results']['rankwidth'] == 2

    def test_vm_check(self):
        """The MKK reduction passes."""
        code, out, _ = run_cli('vm-check', '--family', 'MKK', '--n', '3')
        assert code == EXIT_OK
        assert json.loads(out)['results']['passed'] is True

    def test_vm_check_unsupported_family(self):
        """Families without a reduction are domain errors."""
        assert run_cli('vm-check', '--family', 'MII')[0] == EXIT_DOMAIN


class TestLinkageCommands:
    """Test menger and certify."""

    def test_menger_linkage(self, graph_file):
        """The ends of P_4 are joined by the path itself."""
        code, out, _ = run_cli('menger', '--input', graph_file(P4_TEXT), '--A', 'a', '--B', 'd')
        results = json.loads(out)['results']
        assert code == EXIT_OK
        assert results['kind'] == 'linkage'
        assert results['paths'] == [[0, 1, 2, 3]]

    def test_menger_separator(self, graph_file):
        """Two paths cannot leave a single vertex."""
        code, out, _ = run_cli('menger', '--input', graph_file(P4_TEXT), '--A', 'a', '--B', 'd', '--k', '2')
        results = json.loads(out)['results']
        assert results['kind'] == 'separator'
        assert results['theta'] == 1
        assert results['theta'] <= results['paper_bound']

    def test_menger_needs_sets(self, graph_file):
        """A missing side is a usage error and an unknown label a domain error."""
        path = graph_file(P4_TEXT)
        assert run_cli('menger', '--input', path, '--A', 'a')[0] == EXIT_USAGE
        assert run_cli('menger', '--input', path, '--A', 'a', '--B', 'z')[0] == EXIT_DOMAIN

    def test_certify(self, graph_file):
        """The 4-cycle is MKK_2."""
        path = graph_file("0 1\n1 2\n2 3\n3 0\n")
        code, out, _ = run_cli('certify', '--input', path, '--k', '2', '--family-set', 'A')
        results = json.loads(out)['results']
        assert code == EXIT_OK
        assert results['found'] is True
        assert results['certificate']['family'] == 'MKK'
        assert results['pg_parameter'] == 2

    def test_certify_order(self, graph_file):
        """Pattern orders start at one."""
        assert run_cli('certify', '--input', graph_file(P4_TEXT), '--k', '0')[0] == EXIT_DOMAIN


class TestVerifyCommand:
    """Test the verify command."""

    def test_witness_values(self):
        """The witness suite passes and prints its findings."""
        code, out, _ = run_cli('verify', '--suite', 'witness-values', '--seed', '1', '--trials', '1')
        assert code == EXIT_OK
        assert out.startswith("PASS witness-values")
        assert "finding: AKK_1" in out
        assert out.endswith("all suites passed (seed 1, trials 1)\n")

    def test_json_report_carries_seed(self):
        """The JSON report records the seed."""
        code, out, _ = run_cli('verify', '--suite', 'witness-values', '--seed', '7', '--trials', '1', '--json')
        report = json.loads(out)
        assert report['seed'] == 7
        assert report['results']['passed'] is True

    def test_zero_trials(self):
        """Trial counts must be positive."""
        assert run_cli('verify', '--suite', 'witness-values', '--trials', '0')[0] == EXIT_USAGE


class TestErrors:
    """Test the error-to-exit-code mapping."""

    def test_unknown_command(self):
        """Unknown commands are usage errors."""
        code, _, err = run_cli('frobnicate')
        assert code == EXIT_USAGE
        assert 'usage error' in err

    def test_missing_file(self, tmp_path):
        """An unreadable input is a domain error."""
        assert run_cli('params', '--input', str(tmp_path / 'absent.txt'))[0] == EXIT_DOMAIN

    def test_malformed_input(self, graph_file):
        """Parse errors name their line."""
        code, _, err = run_cli('params', '--input', graph_file("0 1\n2 2\n"))
        assert code == EXIT_DOMAIN
        assert 'line 2' in err

    def test_invalid_configuration(self, monkeypatch):
        """A bad environment value exits 78."""
        monkeypatch.setenv('CLIQUESPARSE_LOG_LEVEL', 'LOUD')
        assert run_cli('gen', '--family', 'Path', '--n', '2')[0] == EXIT_CONFIG

    def test_exit_codes_are_distinct(self):
        """Every error class has its own code."""
        codes = {EXIT_OK, EXIT_FAILURE, EXIT_DOMAIN, EXIT_CAPACITY, EXIT_USAGE, EXIT_CONFIG}
        assert len(codes) == 6


if __name__ == "__main__":
    pytest.main([__file__])
