import json
import math

import numpy as np
import pytest

from qweigh.designs import TernaryMatrix, W43, identity, sylvester, w43_power, paley_one
from qweigh.field import field_for_order, make_field
from qweigh.protocols import RunReport, wm_recover, bv_recover, inner_product_table
from qweigh.protocols import sls_quantum, sls_quantum_branches, sls_psi_basis, sls_classical, SlsSolver
from qweigh.protocols import sls_classical_budget, optimal_tree, family_tables, sls_family, classical_bounds
from qweigh.protocols.classical import _shift_counts
from qweigh.utils import NotWeighingError, SizeCapError, VerificationError

WM_MATRICES = [('identity', 4), ('identity', 8), ('w43', 1), ('w43', 2), ('w43', 3)] + \
              [('sylvester', t) for t in range(1, 7)] + [('paley1', 7)]
_BUILD = {'identity': identity, 'w43': w43_power, 'sylvester': sylvester, 'paley1': paley_one}


@pytest.mark.parametrize('name,param', WM_MATRICES)
def test_wm_recover_exact(name, param):
    M = _BUILD[name](param)
    n, k = M.n, M.claimed_weight
    budget = math.ceil(math.pi/4*math.sqrt(n/k)) + 1
    for s in range(n):
        report = wm_recover(M, s)
        assert report.recovered_s == s
        assert report.success_probability == pytest.approx(1.0, abs=1e-9)
        assert report.exact
        assert report.queries_used <= budget
        if(k == n):
            assert report.queries_used == 1


def test_wm_recover_examples():
    assert wm_recover(w43_power(1), 2).queries_used <= 2
    assert wm_recover(identity(4), 3).queries_used <= 3
    report = wm_recover(w43_power(2), 5, mode='sample', seed=7)
    assert report.recovered_s == 5
    assert report.seed == 7


def test_wm_recover_rejects():
    with pytest.raises(NotWeighingError):
        wm_recover(TernaryMatrix(W43), 0)
    with pytest.raises(ValueError):
        wm_recover(identity(4), 4)
    with pytest.raises(ValueError):
        wm_recover(identity(4), 0, mode='guess')


def test_bv_examples():
    report = bv_recover(2, '11')
    assert (report.recovered_s, report.queries_used) == (3, 1)
    report = bv_recover(1, '0')
    assert (report.recovered_s, report.queries_used) == (0, 1)
    rng = np.random.default_rng(8)
    s = int(rng.integers(0, 256))
    assert bv_recover(8, s).recovered_s == s


@pytest.mark.parametrize('n_bits', range(1, 9))
def test_bv_all_masks(n_bits):
    for s in range(2**n_bits):
        report = bv_recover(n_bits, s)
        assert report.recovered_s == s
        assert report.queries_used == 1
        assert report.exact


@pytest.mark.parametrize('n_bits', range(1, 6))
def test_bv_matches_wm_on_sylvester(n_bits):
    M = sylvester(n_bits)
    for s in range(2**n_bits):
        assert np.array_equal(inner_product_table(n_bits, s), M.row(s))
        bv, wm = bv_recover(n_bits, s), wm_recover(M, s)
        assert (bv.recovered_s, bv.queries_used) == (wm.recovered_s, wm.queries_used)


def test_bv_rejects():
    with pytest.raises(SizeCapError):
        bv_recover(13, 0)
    with pytest.raises(ValueError):
        bv_recover(0, 0)
    with pytest.raises(ValueError):
        bv_recover(3, '0110')


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_sls_quantum_all_shifts(q):
    F = field_for_order(q)
    for s in range(q):
        early, late = sls_quantum_branches(F, s)
        assert early.probability == pytest.approx(1/(q+1), abs=1e-9)
        assert late.probability == pytest.approx(q/(q+1), abs=1e-9)
        for branch in (early, late):
            assert branch.recovered_s == s
            assert branch.success_probability == pytest.approx(1.0, abs=1e-9)
            assert branch.filler_probability <= 1e-9
        assert (early.queries_used, late.queries_used) == (1, 2)
        report = sls_quantum(F, s)
        assert report.recovered_s == s
        assert report.success_probability == pytest.approx(1.0, abs=1e-9)
        assert report.queries_used <= 2


def test_sls_quantum_sample_mode():
    F = field_for_order(7)
    labels = set()
    for seed in range(20):
        report = sls_quantum(F, 4, mode='sample', seed=seed)
        assert report.recovered_s == 4
        assert report.queries_used == (1 if report.branch_taken == 'early' else 2)
        labels.add(report.branch_taken)
    assert labels <= {'early', 'late'}
    again = [sls_quantum(F, 4, mode='sample', seed=3).to_json() for _ in range(3)]
    assert len(set(again)) == 1


def test_sls_psi_basis_orthonormal():
    F = field_for_order(9)
    B = sls_psi_basis(F).matrix
    assert np.allclose(B.conj().T @ B, np.eye(10), atol=1e-10)


def test_sls_quantum_cap():
    with pytest.raises(SizeCapError):
        sls_quantum(field_for_order(2187), 0)


@pytest.mark.parametrize('q', [9, 27, 49, 121, 343])
def test_sls_classical_all_shifts(q):
    F = field_for_order(q)
    budget = math.ceil(math.log(q)/math.log(4/3)) + 3
    assert sls_classical_budget(q) == budget
    for s in range(q):
        solver = SlsSolver(F, s)
        report = solver.run()
        assert report.recovered_s == s
        assert report.queries_used <= budget
        for before, after in zip(solver.rounds, solver.rounds[1:]):
            assert 4*after.size < 3*before.size
            assert s in before.candidates


def test_sls_classical_examples():
    F3 = field_for_order(3)
    for s in range(3):
        report = sls_classical(F3, s)
        assert report.recovered_s == s
        assert report.queries_used <= 2
    assert sls_classical(F3, 2).branch_taken == 'survivor'
    report = sls_classical(field_for_order(9), 0)
    assert (report.branch_taken, report.queries_used, report.recovered_s) == ('zero-hit', 1, 0)
    assert sls_classical_budget(49) == 17


def test_run_report_json():
    report = wm_recover(identity(4), 1)
    data = json.loads(report.to_json())
    assert list(data) == RunReport.keys()
    assert data['parameters'] == {'n': 4, 'k': 1}


@pytest.mark.parametrize('n', range(3, 9))
def test_identity_tree_depth(n):
    tree, depth = optimal_tree(family_tables(identity(n)))
    assert depth == n-1
    for s, row in enumerate(family_tables(identity(n))):
        assert tree.classify(row)[0] == s


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13])
def test_sls_tree_depth(q):
    tables = sls_family(field_for_order(q))
    tree, depth = optimal_tree(tables)
    assert depth > math.log2(q) - 1
    assert 2**(depth+1) - 1 >= q
    for path, guess in tree.paths():
        indices = [i for i, _ in path]
        assert len(indices) == len(set(indices))
        assert all(tables[guess][i] == a for i, a in path)
    if(q == 3):
        assert depth == 1


@pytest.mark.parametrize('M', [w43_power(1), sylvester(1), sylvester(2), sylvester(3)])
def test_matrix_tree_meets_lower_bounds(M):
    _, depth = optimal_tree(family_tables(M))
    b = classical_bounds(M.n, M.claimed_weight)
    assert depth >= math.ceil(b.bound_log3 - 1e-9)
    assert depth >= math.ceil(b.bound_nk - 1e-9)
    assert depth >= math.ceil(b.bound_log2 - 1e-9)
    if(M.n == 4 and M.claimed_weight == 3):
        assert depth >= 2


def test_tree_rejects():
    with pytest.raises(VerificationError):
        optimal_tree([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        optimal_tree([(1, 0), (1,)])
    with pytest.raises(SizeCapError):
        optimal_tree(family_tables(identity(17)))
    with pytest.raises(ValueError):
        optimal_tree([(1, 0), (0, 1), (1, 1)], cap=2)


@pytest.mark.parametrize('q', [7, 9, 25, 27])
def test_shift_counts_match_direct_count(q):
    F = field_for_order(q)
    rng = np.random.default_rng(q)
    S = np.flatnonzero(rng.random(q) < 0.5)
    member = np.zeros(q)
    member[S] = 1.0
    counts = _shift_counts(F, member, F.chi_table == 1)
    for i in range(q):
        assert counts[i] == np.count_nonzero(F.chi_table[F.add_ranks(i, S)] == 1)


def test_sls_classical_large_field():
    F = make_field(3, 10)
    report = sls_classical(F, 12345)
    assert report.recovered_s == 12345
    assert report.queries_used <= sls_classical_budget(F.q)


def test_bv_at_bit_cap():
    rng = np.random.default_rng(12)
    for s in rng.integers(0, 2**12, size=4):
        report = bv_recover(12, int(s))
        assert report.recovered_s == s
        assert report.queries_used == 1
        assert report.success_probability == pytest.approx(1.0, abs=1e-9)
    assert bv_recover(12, '1'*12).recovered_s == 2**12 - 1
