import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from qweigh.qsim import QueryOracle, MeasurementBasis, StateVector, Sample, Branch
from qweigh.qsim import basis_state, apply_unitary, apply_controlled, construct_signed_state, kickback
from qweigh.qsim import oracle_xor4, measure_register, measure_membership, measure_in_basis, outcome_distribution
from qweigh.utils import NotWeighingError, VerificationError, check_cap, defaults
from .bounds import wm_budget
from .reports import RunReport

logger = logging.getLogger(__name__)


def _measure_mode(mode, seed):
    if(mode == 'full'):
        return None
    if(mode == 'sample'):
        return Sample(defaults.getpar('default_seed') if seed is None else int(seed))
    raise ValueError(f"mode must be 'full' or 'sample', got {mode!r}")


def _check_budget(report):
    if(not report.within_budget):
        raise VerificationError(f'{report.protocol}: {report.queries_used} queries exceed the budget {report.query_budget}')
    return report


def _read_out(state, basis, mode):
    '''
    Final measurement: the whole distribution in full mode, a seeded draw in sample mode.
    Returns (outcome index, distribution).
    '''
    probs = outcome_distribution(state, basis)
    if(mode is None):
        return int(np.argmax(probs)), probs
    return measure_in_basis(state, basis, mode).index, probs


#------------------------------------------------------------------------------------
def wm_recover(M, hidden_s, mode='full', seed=None):
    '''
    Quantum weighing matrix protocol: prepare |f_s> = 1/sqrt(k) sum M[s][i]|i> and measure
    in the basis of the rows of M (columns of M^T/sqrt(k)).

    Parameters
    ----------
    M : TernaryMatrix
     Verified W(n,k)
    hidden_s : int
     Row index hidden in the oracle
    mode : str, optional
     'full' (exact distribution) or 'sample' (seeded draw)
    seed : int, optional
     Seed for sample mode

    Returns
    ----------
    RunReport
    '''
    if(not M.verified):
        raise NotWeighingError('wm_recover needs a verified weighing matrix')
    n, k = M.n, M.claimed_weight
    if(not 0 <= hidden_s < n):
        raise ValueError(f'hidden row {hidden_s} out of range [0, {n})')
    measure = _measure_mode(mode, seed)
    oracle = QueryOracle(M.row(hidden_s))
    state, used = construct_signed_state(oracle, n, k)
    basis = MeasurementBasis(M.entries.T.astype(np.float64)/math.sqrt(k))
    recovered, probs = _read_out(state, basis, measure)
    report = RunReport(protocol='wm', parameters={'n': n, 'k': k}, hidden_s=int(hidden_s),
                       recovered_s=recovered, queries_used=used, query_budget=wm_budget(n, k),
                       success_probability=float(probs[hidden_s]), branch_taken=mode,
                       seed=None if measure is None else measure.seed)
    logger.info('wm W(%d,%d) s=%d: recovered %d with %d queries', n, k, hidden_s, recovered, used)
    return _check_budget(report)


def _parse_mask(n_bits, hidden_s):
    if(isinstance(hidden_s, str)):
        if(len(hidden_s) != n_bits or any(c not in '01' for c in hidden_s)):
            raise ValueError(f'mask {hidden_s!r} is not a {n_bits}-bit string')
        return int(hidden_s, 2)
    s = int(hidden_s)
    if(not 0 <= s < 2**n_bits):
        raise ValueError(f'mask {s} does not fit in {n_bits} bits')
    return s


def inner_product_table(n_bits, s):
    '''
    g_s(x) = <x, s> mod 2 lifted to the phases (-1)^{g_s(x)}, x = 0..2^n - 1
    '''
    x = np.arange(2**n_bits)
    parity = np.array([bin(v).count('1') % 2 for v in (x & s)])
    return 1 - 2*parity


def bv_recover(n_bits, hidden_s):
    '''
    Inner-product (Bernstein-Vazirani) problem with one kick-back query between two Hadamard layers.

    Parameters
    ----------
    n_bits : int
     1 <= n_bits <= 12
    hidden_s : str or int
     Bit string such as '011', or its integer value

    Returns
    ----------
    RunReport
     hidden_s and recovered_s are integer masks
    '''
    if(n_bits < 1):
        raise ValueError(f'n_bits = {n_bits} must be positive')
    check_cap(n_bits, 'bv_cap', 'number of bits')
    s = _parse_mask(n_bits, hidden_s)
    dims = (2,)*n_bits
    H = np.array([[1, 1], [1, -1]])/math.sqrt(2)
    oracle = QueryOracle(inner_product_table(n_bits, s))
    state = basis_state(dims, (0,)*n_bits)
    for qubit in range(n_bits):
        state = apply_unitary(state, H, register=qubit)
    #qubit 0 is the most significant bit of the flat query index
    state = kickback(StateVector((state.size,), state.amplitudes), oracle)
    state = StateVector(dims, state.amplitudes)
    for qubit in range(n_bits):
        state = apply_unitary(state, H, register=qubit)
    probs = state.probabilities()
    recovered = int(np.argmax(probs))
    if(abs(probs.sum() - 1) > defaults.getpar('prob_tol')):
        raise VerificationError(f'outcome probabilities sum to {probs.sum()}')
    report = RunReport(protocol='bv', parameters={'n_bits': n_bits}, hidden_s=s, recovered_s=recovered,
                       queries_used=oracle.queries, query_budget=1, success_probability=float(probs[s]),
                       branch_taken='full')
    return _check_budget(report)


#------------------------------------------------------------------------------------
def shifted_legendre_table(F, s):
    '''
    f_s(i) = chi(i + s) for i in rank order
    '''
    return F.chi_table[F.add_ranks(np.arange(F.q), int(s))]


def sls_psi_basis(F):
    '''
    Columns psi_r = (sum_i chi(i+r)|i> + |dummy>)/sqrt(q) for r = 0..q-1, completed by one
    orthonormal filler vector in the last column.  The dummy index is q.
    '''
    q = F.q
    chi = F.chi_table.astype(np.float64)
    psi = np.ones((q+1, q))
    psi[:q, :] = chi[F.add_table]
    psi /= math.sqrt(q)
    filler = null_space(psi.T)
    if(filler.shape[1] != 1):
        raise VerificationError(f'psi vectors span {q+1-filler.shape[1]} dimensions, expected {q}')
    return MeasurementBasis(np.hstack([psi, filler]))


@dataclass(frozen=True)
class SlsBranch:
    label: str
    probability: float
    recovered_s: int
    success_probability: float
    queries_used: int
    filler_probability: float


_X01 = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
_PHASE3 = np.diag([1, 1, 1, -1])


def _sls_prepare(F, s):
    q = F.q
    oracle = QueryOracle(shifted_legendre_table(F, s))
    t = np.zeros((q+1, 4), dtype=np.complex128)
    t[:q, 0] = 1
    t[q, 1] = 1
    state = StateVector((q+1, 4), t/math.sqrt(q+1))
    return oracle_xor4(state, oracle, main=0, answer=1), oracle


def _sls_early(F, s, state, oracle, mode):
    '''
    Answer register read 0: the main register holds -s
    '''
    index = int(np.argmax(state.probabilities(0))) if mode is None else None
    outcome = measure_register(state, 0, Branch(index) if mode is None else mode)
    recovered = int(F.neg_table[outcome.index])
    return recovered, (outcome.probability if recovered == s else 0.0), oracle.queries, 0.0


def _sls_late(F, s, state, oracle, mode):
    '''
    Answer register nonzero: sign by chi, erase with a second query, reset the dummy, measure in the psi basis
    '''
    q = F.q
    state = apply_unitary(state, _PHASE3, 1)
    state = oracle_xor4(state, oracle, main=0, answer=1, inverse=True)
    state = apply_controlled(state, _X01, target=1, control=0, value=q)
    cleared = measure_register(state, 1, Branch(0))
    if(1 - cleared.probability > defaults.getpar('prob_tol')):
        raise VerificationError(f'answer register not erased (residual {1-cleared.probability:.3e})')
    main = StateVector((q+1,), cleared.state.tensor()[:, 0])
    basis = sls_psi_basis(F)
    probs = outcome_distribution(main, basis)
    if(mode is None):
        index = int(np.argmax(probs[:q]))
    else:
        index = measure_in_basis(main, basis, Sample(mode.seed + 1)).index
    if(index == q):
        raise VerificationError('measurement returned the filler vector')
    return index, float(probs[s]), oracle.queries, float(probs[q])


def sls_quantum_branches(F, hidden_s):
    '''
    Run both branches of the two-query shifted Legendre protocol.

    Returns
    ----------
    list of SlsBranch
     'early' (answer register 0, one query) and 'late' (two queries)
    '''
    q = F.q
    check_cap(q, 'sls_quantum_cap', 'field order q')
    s = int(hidden_s)
    if(not 0 <= s < q):
        raise ValueError(f'hidden shift {s} out of range [0, {q})')
    state, oracle = _sls_prepare(F, s)
    branches = []
    zero = measure_membership(state, 1, [0], Branch(1))
    rec, p, used, filler = _sls_early(F, s, zero.state, oracle, None)
    branches.append(SlsBranch('early', zero.probability, rec, p, used, filler))
    rest = measure_membership(state, 1, [0], Branch(0))
    rec, p, used, filler = _sls_late(F, s, rest.state, oracle, None)
    branches.append(SlsBranch('late', rest.probability, rec, p, used, filler))
    for branch in branches:
        logger.debug('sls q=%d s=%d branch %s: p=%.12f recovered %d, %d queries',
                     q, s, branch.label, branch.probability, branch.recovered_s, branch.queries_used)
    return branches


def sls_quantum(F, hidden_s, mode='full', seed=None):
    '''
    Two-query quantum protocol for the shifted Legendre sequence problem.

    Parameters
    ----------
    F : FieldSpec
     q <= 2^11
    hidden_s : int
     Rank of the hidden shift
    mode : str, optional
     'full' traverses both branches and reports the total success probability;
     'sample' follows one seeded measurement record
    seed : int, optional

    Returns
    ----------
    RunReport
    '''
    measure = _measure_mode(mode, seed)
    params = {'p': F.p, 'k': F.k, 'q': F.q}
    if(measure is None):
        branches = sls_quantum_branches(F, hidden_s)
        total = sum(b.probability*b.success_probability for b in branches)
        late = branches[-1]
        report = RunReport(protocol='sls-quantum', parameters=params, hidden_s=int(hidden_s),
                           recovered_s=late.recovered_s, queries_used=max(b.queries_used for b in branches),
                           query_budget=2, success_probability=float(total), branch_taken='full')
        return _check_budget(report)
    check_cap(F.q, 'sls_quantum_cap', 'field order q')
    s = int(hidden_s)
    state, oracle = _sls_prepare(F, s)
    first = measure_membership(state, 1, [0], measure)
    if(first.index == 1):
        rec, p, used, _ = _sls_early(F, s, first.state, oracle, measure)
        label = 'early'
    else:
        rec, p, used, _ = _sls_late(F, s, first.state, oracle, measure)
        label = 'late'
    report = RunReport(protocol='sls-quantum', parameters=params, hidden_s=s, recovered_s=rec,
                       queries_used=used, query_budget=2, success_probability=float(p),
                       branch_taken=label, seed=measure.seed)
    return _check_budget(report)
