"""
Named property suites run by the verify command.

Every suite takes a seed and a trial count and returns CheckReports whose
asserted clauses must all pass. Statements that only hold in a corrected
form are asserted in that form; the literal form is evaluated alongside
and any deviation is kept as a finding.
"""

import random
from typing import Callable, Dict, List

from ..core.exceptions import DomainError, VerificationError
from ..core.logger import get_logger
from ..core.report import CheckReport
from ..structure.cliques import maximal_cliques, twin_partition, verify_quotient_preservation
from ..structure.decomposition import (
    Measure,
    brute_force_mu_treewidth,
    check_td,
    exact_mu_treewidth,
    lift_td,
    mu_width,
    quotient_td,
)
from ..structure.generators import Family, family_graph
from ..structure.graph import are_isomorphic, popcount, to_list
from ..structure.menger import (
    Linkage,
    Separation,
    induced_linkage_search,
    induced_menger,
    is_induced_linkage,
    is_separation,
    lift_separation,
    project_separation,
    separates,
    theta_order,
)
from ..structure.parameters import parameter_profile, verify_inequalities
from ..structure.patterns import FAMILIES_A, FAMILIES_S, pattern_certificate, pg_parameter, star_certificate
from ..structure.rank import (
    REDUCIBLE_FAMILIES,
    brute_force_rankwidth,
    check_rd,
    exact_rankwidth,
    lift_rankdec,
    local_complement,
    qk_reduction_check,
    qk_width_certificate,
    rank_dec_width,
    rankdec_to_treedec,
)
from ..utils.cache import MemoTable
from .corpus import erdos_renyi_corpus

logger = get_logger(__name__)

SuiteRunner = Callable[[int, int], List[CheckReport]]

QUOTIENT_INVARIANTS = ('cid', 'cideg', 'alpha', 'theta', 'local_alpha', 'local_theta')


def _cell_count(trials: int, divisor: int) -> int:
    return max(1, trials // divisor)


# ---------------------------------------------------------------------------
# Witness values
# ---------------------------------------------------------------------------

def witness_values(seed: int, trials: int) -> List[CheckReport]:
    """Exact parameter values of the extremal families."""
    report = CheckReport(check='witness-values')

    for n in range(3, 7):
        p = parameter_profile(family_graph(Family.STAR, n))
        report.record('star-cid-cideg-delta', (p.cid, p.cideg, p.delta_tilde) == (2, n, n),
                      {'n': n, 'profile': p.to_dict()})
        p = parameter_profile(family_graph(Family.MKI, n))
        report.record('mki-cid-delta-cideg', (p.cid, p.delta_tilde, p.cideg) == (n, n, 2),
                      {'n': n, 'profile': p.to_dict()})

    for n in range(3, 6):
        p = parameter_profile(family_graph(Family.AKK, n))
        report.record('akk-localtheta-cideg', (p.local_theta, p.cideg) == (2, 2 ** (n - 1)),
                      {'n': n, 'profile': p.to_dict()})

    for n in (2, 3):
        G = family_graph(Family.MOON_MOSER_UNIVERSAL, n)
        count = len(maximal_cliques(G))
        delta = twin_partition(G).quotient.max_degree()
        report.record('moon-moser-cliques-and-delta', (count, delta) == (3 ** n, 3 * n),
                      {'n': n, 'cliques': count, 'delta_tilde': delta})

    k2 = family_graph(Family.KN, 2)
    for family in (Family.MKI, Family.MKK, Family.HKK):
        report.record('order-one-members-are-k2', are_isomorphic(family_graph(family, 1), k2),
                      {'family': family.value})
    akk_1 = family_graph(Family.AKK, 1)
    if report.record('akk-order-one-is-edgeless', akk_1.edge_count == 0, {'edges': akk_1.edges()}):
        report.add_finding("AKK_1 has no cross edge, so it is two isolated vertices rather than K2")
    return [report]


# ---------------------------------------------------------------------------
# Parameter inequalities and quotient preservation
# ---------------------------------------------------------------------------

def inequalities(seed: int, trials: int) -> List[CheckReport]:
    report = CheckReport(check='inequalities')
    graphs = 0
    for entry in erdos_renyi_corpus(seed, trials):
        single = verify_inequalities(entry.graph, seed=entry.seed, trials=5)
        if not single.passed:
            for clause in single.clauses:
                if not clause.passed and clause.counterexample is not None:
                    clause.counterexample['graph'] = entry.describe()
        report.merge(single)
        graphs += 1
    report.data['graphs'] = graphs
    return [report]


def quotient_preservation(seed: int, trials: int) -> List[CheckReport]:
    report = CheckReport(check='quotient-preservation')
    memo_g, memo_q = MemoTable(name='graph'), MemoTable(name='quotient')
    graphs = 0
    for entry in erdos_renyi_corpus(seed, trials):
        G = entry.graph
        report.merge(verify_quotient_preservation(G, seed=entry.seed, trials=5))
        mine = parameter_profile(G, memo_g).to_dict()
        theirs = parameter_profile(twin_partition(G).quotient, memo_q).to_dict()
        for name in QUOTIENT_INVARIANTS:
            report.record(f"{name}-equal-on-quotient", mine[name] == theirs[name],
                          {'graph': entry.describe(), 'graph_value': mine[name], 'quotient_value': theirs[name]})
        memo_g.clear()
        memo_q.clear()
        graphs += 1
    report.data['graphs'] = graphs
    return [report]


# ---------------------------------------------------------------------------
# Widths on the quotient
# ---------------------------------------------------------------------------

def quotient_widths(seed: int, trials: int) -> List[CheckReport]:
    """alpha- and theta-treewidth are quotient invariants and sit inside the width chain."""
    report = CheckReport(check='quotient-widths')
    for entry in erdos_renyi_corpus(seed, _cell_count(trials, 4), orders=range(4, 9)):
        G = entry.graph
        Q = twin_partition(G)
        H = Q.quotient
        data = {'graph': entry.describe()}
        alpha_tw, alpha_td = exact_mu_treewidth(G, Measure.ALPHA)
        theta_tw, _ = exact_mu_treewidth(G, Measure.THETA)
        alpha_q, alpha_q_td = exact_mu_treewidth(H, Measure.ALPHA)
        theta_q, _ = exact_mu_treewidth(H, Measure.THETA)
        tw_q, _ = exact_mu_treewidth(H, Measure.CARD)
        cid = max((popcount(K) for K in maximal_cliques(H).cliques), default=0)
        delta = H.max_degree()
        data.update({'alpha_tw': alpha_tw, 'theta_tw': theta_tw, 'quotient_tw': tw_q, 'cid': cid, 'delta': delta})

        report.record('alpha-tw-equals-quotient', alpha_tw == alpha_q, data)
        report.record('theta-tw-equals-quotient', theta_tw == theta_q, data)
        report.record('alpha-tw-le-theta-tw', alpha_tw <= theta_tw, data)
        report.record('theta-tw-le-quotient-tw', theta_tw <= tw_q, data)
        report.record('quotient-tw-le-theta-tw-times-cid', tw_q <= theta_tw * cid, data)
        report.record('quotient-tw-le-alpha-tw-times-delta-plus-one', tw_q <= alpha_tw * (delta + 1), data)
        if tw_q > alpha_tw * delta:
            report.add_finding(
                "quotient treewidth can exceed alpha-treewidth times the quotient degree "
                "(edgeless quotients give 1 > 0); the bound is asserted with the degree plus one"
            )

        projected = quotient_td(G, alpha_td)
        report.record('projected-decomposition-valid', check_td(H, projected) is None, data)
        report.record('projected-decomposition-keeps-alpha-width',
                      mu_width(H, projected, Measure.ALPHA) == alpha_tw, data)
        lifted = lift_td(G, alpha_q_td)
        report.record('lifted-decomposition-valid', check_td(G, lifted) is None, data)
        report.record('lifted-decomposition-keeps-alpha-width',
                      mu_width(G, lifted, Measure.ALPHA) == alpha_q, data)
    return [report]


# ---------------------------------------------------------------------------
# Induced Menger
# ---------------------------------------------------------------------------

def _random_nonempty(rng: random.Random, n: int, most: int) -> int:
    size = rng.randint(1, min(most, n))
    return sum(1 << v for v in rng.sample(range(n), size))


def menger(seed: int, trials: int) -> List[CheckReport]:
    """The induced Menger pipeline and the separation transfer between G and its quotient."""
    pipeline = CheckReport(check='induced-menger')
    transfer = CheckReport(check='separation-transfer')
    for entry in erdos_renyi_corpus(seed, _cell_count(trials, 7)):
        G = entry.graph
        rng = random.Random(entry.seed)
        A = _random_nonempty(rng, G.n, 3)
        B = _random_nonempty(rng, G.n, 3)
        k = rng.randint(1, 3)
        data = {'graph': entry.describe(), 'A': to_list(A), 'B': to_list(B), 'k': k}
        try:
            result = induced_menger(G, A, B, k)
        except VerificationError as e:
            data['error'] = str(e)
            pipeline.record('pipeline-self-check', False, data)
            continue
        pipeline.record('pipeline-self-check', True)
        if result.kind == 'linkage':
            linkage = Linkage(tuple(tuple(p) for p in result.paths))
            pipeline.record('linkage-is-induced',
                            linkage.order == k and is_induced_linkage(G, linkage, A, B), data)
        else:
            S = result.vertices
            data.update({'separator': to_list(S), 'theta': result.theta})
            pipeline.record('separator-separates', separates(G, A, B, S), data)
            pipeline.record('separator-theta-le-quotient-order', result.theta <= result.quotient_order, data)
            pipeline.record('separator-theta-le-bound', result.theta <= result.bound, data)
            pipeline.record('no-linkage-when-separated', induced_linkage_search(G, A, B, k) is None, data)

        Q = twin_partition(G)
        H = Q.quotient
        cid = max((popcount(Q.project_set(K)) for K in maximal_cliques(G).cliques), default=0)
        X = rng.getrandbits(G.n)
        sep = Separation(G.closed_neighbourhood(X), G.vertex_mask & ~X)
        projected = project_separation(G, sep)
        sep_data = {'graph': entry.describe(), 'A': to_list(sep.a), 'B': to_list(sep.b)}
        transfer.record('projection-is-separation', is_separation(H, projected), sep_data)
        transfer.record('projection-order-le-theta-order-times-cid',
                        popcount(projected.separator) <= theta_order(G, sep) * cid, sep_data)
        Xq = rng.getrandbits(H.n)
        sep_q = Separation(H.closed_neighbourhood(Xq), H.vertex_mask & ~Xq)
        lifted = lift_separation(G, sep_q)
        lift_data = {'graph': entry.describe(), 'A': to_list(sep_q.a), 'B': to_list(sep_q.b)}
        transfer.record('lift-is-separation', is_separation(G, lifted), lift_data)
        transfer.record('lift-theta-order-le-quotient-order',
                        theta_order(G, lifted) <= popcount(sep_q.separator), lift_data)
    return [pipeline, transfer]


# ---------------------------------------------------------------------------
# Rankwidth and alpha-treewidth
# ---------------------------------------------------------------------------

def width_bridge(seed: int, trials: int) -> List[CheckReport]:
    report = CheckReport(check='width-bridge')

    for n in range(2, 5):
        G = family_graph(Family.KNN, n)
        alpha_tw, _ = exact_mu_treewidth(G, Measure.ALPHA)
        rw, _ = exact_rankwidth(G)
        report.record('complete-bipartite-widths', (alpha_tw, rw) == (n, 1),
                      {'n': n, 'alpha_tw': alpha_tw, 'rankwidth': rw})

    for n, expected in ((3, 2), (4, 3)):
        grid = family_graph(Family.GRID, n)
        alpha_tw, _ = exact_mu_treewidth(grid, Measure.ALPHA, cap=grid.n)
        report.record('grid-alpha-tw', alpha_tw == expected, {'n': n, 'alpha_tw': alpha_tw})
        if alpha_tw != -(-n // 2):
            report.add_finding(f"alpha-treewidth of the {n}x{n} grid is {alpha_tw}, not ceil({n}/2)")

    for entry in erdos_renyi_corpus(seed, _cell_count(trials, 4), orders=range(4, 9)):
        G = entry.graph
        rng = random.Random(entry.seed)
        data = {'graph': entry.describe()}
        alpha_tw, _ = exact_mu_treewidth(G, Measure.ALPHA)
        rw, rd = exact_rankwidth(G)
        local_alpha = parameter_profile(G).local_alpha
        data.update({'alpha_tw': alpha_tw, 'rankwidth': rw, 'local_alpha': local_alpha})

        report.record('alpha-tw-le-3-localalpha-rw', alpha_tw <= 3 * local_alpha * max(rw, 1), data)
        if rw == 0 and alpha_tw > 0:
            report.add_finding("edgeless graphs have rankwidth 0 but alpha-treewidth 1; the bound uses max(rw, 1)")
        td = rankdec_to_treedec(G, rd)
        report.record('rank-to-tree-decomposition-valid', check_td(G, td) is None, data)
        report.record('rank-to-tree-alpha-width-le-3dk',
                      mu_width(G, td, Measure.ALPHA) <= 3 * local_alpha * max(rank_dec_width(G, rd), 1), data)

        Q = twin_partition(G)
        rw_q, rd_q = exact_rankwidth(Q.quotient)
        report.record('quotient-rw-le-rw-le-max-one-quotient-rw', rw_q <= rw <= max(1, rw_q), data)
        lifted = lift_rankdec(G, rd_q)
        report.record('lifted-rank-decomposition-valid', check_rd(G, lifted) is None, data)
        report.record('lifted-rank-decomposition-width',
                      rank_dec_width(G, lifted) <= max(1, rw_q), data)

        v = rng.randrange(G.n)
        rw_lc, _ = exact_rankwidth(local_complement(G, v))
        report.record('local-complement-keeps-rw', rw_lc == rw, dict(data, vertex=v))
    return [report]


# ---------------------------------------------------------------------------
# Q constructions
# ---------------------------------------------------------------------------

def q_constructions(seed: int, trials: int) -> List[CheckReport]:
    widths = CheckReport(check='q-widths')
    for family in REDUCIBLE_FAMILIES:
        expected = 1 if family == Family.HKK else 2
        for n in (3, 4):
            cert = qk_width_certificate(family, n)
            data = {key: cert[key] for key in ('family', 'n', 'witness_width', 'chordal', 'local_alpha')}
            widths.record('alpha-tw-value', cert['alpha_treewidth'] == expected, data)
            widths.record('local-alpha-le-3', cert['local_alpha'] <= 3, data)

    reports = [widths]
    for family in REDUCIBLE_FAMILIES:
        combined = CheckReport(check=f"vertex-minor-{family.value}")
        for m in (3, 4):
            combined.merge(qk_reduction_check(family, m))
        reports.append(combined)
    return reports


# ---------------------------------------------------------------------------
# Patterns
# ---------------------------------------------------------------------------

def patterns(seed: int, trials: int) -> List[CheckReport]:
    report = CheckReport(check='patterns')
    for family in FAMILIES_A:
        for t in range(2, 5):
            cert = pattern_certificate(family_graph(family, t), t)
            report.record('certificate-in-own-member', cert is not None and cert.order == t,
                          {'family': family.value, 't': t})

    for entry in erdos_renyi_corpus(seed, _cell_count(trials, 5), orders=range(4, 9)):
        G = entry.graph
        profile = parameter_profile(G)
        data = {'graph': entry.describe(), 'profile': profile.to_dict()}
        report.record('pg-a-le-cid', pg_parameter(G, FAMILIES_A) <= profile.cid, data)
        star_order = pg_parameter(G, FAMILIES_S)
        if G.edge_count:
            report.record('pg-star-equals-local-alpha', star_order == profile.local_alpha, data)
            star = star_certificate(G)
            report.record('star-certificate-order', star is not None and star.order == profile.local_alpha, data)
        else:
            report.record('pg-star-zero-when-edgeless', star_order == 0, data)
            report.add_finding("edgeless graphs have star containment 0 while local alpha is 1")
    return [report]


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

def oracles(seed: int, trials: int) -> List[CheckReport]:
    """Exact solvers against independent brute-force enumerations."""
    tw_report = CheckReport(check='treewidth-oracle')
    for entry in erdos_renyi_corpus(seed, _cell_count(trials, 10), orders=range(3, 7)):
        G = entry.graph
        for mu in Measure:
            width, td = exact_mu_treewidth(G, mu)
            oracle = brute_force_mu_treewidth(G, mu)
            data = {'graph': entry.describe(), 'measure': mu.value, 'exact': width, 'oracle': oracle}
            tw_report.record('exact-equals-oracle', width == oracle, data)
            tw_report.record('witness-attains-width', check_td(G, td) is None and mu_width(G, td, mu) == width, data)

    rw_report = CheckReport(check='rankwidth-oracle')
    for entry in erdos_renyi_corpus(seed + 1, _cell_count(trials, 10), orders=range(3, 8)):
        G = entry.graph
        width, rd = exact_rankwidth(G)
        oracle = brute_force_rankwidth(G)
        data = {'graph': entry.describe(), 'exact': width, 'oracle': oracle}
        rw_report.record('exact-equals-oracle', width == oracle, data)
        rw_report.record('witness-attains-width', check_rd(G, rd) is None and rank_dec_width(G, rd) == width, data)
    return [tw_report, rw_report]


SUITES: Dict[str, SuiteRunner] = {
    'witness-values': witness_values,
    'inequalities': inequalities,
    'quotient-preservation': quotient_preservation,
    'quotient-widths': quotient_widths,
    'menger': menger,
    'width-bridge': width_bridge,
    'q-constructions': q_constructions,
    'patterns': patterns,
    'oracles': oracles,
}


def run_suite(name: str, seed: int, trials: int) -> List[CheckReport]:
    """
    Run one named suite, or every suite for 'all'.

    Raises:
        DomainError: for an unknown suite name
    """
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise DomainError(f"unknown suite {name!r}; expected 'all' or one of {sorted(SUITES)}")

    reports: List[CheckReport] = []
    for suite in names:
        logger.info(f"running suite {suite} (seed {seed}, trials {trials})")
        produced = SUITES[suite](seed, trials)
        for report in produced:
            if report.passed:
                logger.info(f"{report.check}: {sum(c.checked for c in report.clauses)} evaluations passed")
            else:
                logger.warning(f"{report.check}: failed clauses {report.failed_clauses()}")
        reports.extend(produced)
    return reports
