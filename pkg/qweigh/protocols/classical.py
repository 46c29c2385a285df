import logging
from dataclasses import dataclass

import numpy as np
import scipy.fft

from qweigh.qsim import QueryOracle
from qweigh.utils import VerificationError, check_cap
from .bounds import sls_classical_budget
from .protocols import shifted_legendre_table
from .reports import RunReport

logger = logging.getLogger(__name__)


def _shift_counts(F, member, mask):
    '''
    counts[i] = sum over c of member[c] * mask[i + c], for every rank i at once.

    Ranks reshape to the grid (p,)*k, where field addition is digit-wise addition mod p,
    so the sum is a cyclic cross-correlation on that grid.
    '''
    shape = (F.p,)*F.k
    a = scipy.fft.fftn(np.reshape(member, shape))
    b = scipy.fft.fftn(np.reshape(mask.astype(np.float64), shape))
    counts = scipy.fft.ifftn(np.conj(a)*b).real
    return np.rint(counts).astype(np.int64).ravel()


@dataclass(frozen=True)
class SlsState:
    '''
    One round of the classical solver: candidate shifts before the query, the query index,
    the partition sizes |S_i^+|, |S_i^-|, |S_i^0| and the answer received
    '''
    candidates: tuple
    index: int
    plus: int
    minus: int
    zero: int
    answer: int

    @property
    def size(self):
        return len(self.candidates)


class SlsSolver():
    '''
    Deterministic classical solver for the shifted Legendre sequence problem.

    While at least 4 candidates remain, query the index i minimizing max(|S_i^+|, |S_i^-|)
    (smallest i on ties) and keep the matching part; a zero answer at i means s = -i.
    At most 3 candidates are then checked by querying i = -c, where f(-c) = 0 iff c = s.

    Parameters
    ----------
    F : FieldSpec
     q <= 2^16
    hidden_s : int
     Rank of the hidden shift
    '''
    def __init__(self, F, hidden_s):
        check_cap(F.q, 'sls_classical_cap', 'field order q')
        if(not 0 <= hidden_s < F.q):
            raise ValueError(f'hidden shift {hidden_s} out of range [0, {F.q})')
        self.F = F
        self.hidden_s = int(hidden_s)
        self.oracle = QueryOracle(shifted_legendre_table(F, hidden_s))
        self.rounds = []

    def _choose(self, S):
        F = self.F
        member = np.zeros(F.q)
        member[S] = 1.0
        plus = _shift_counts(F, member, F.chi_table == 1)
        minus = _shift_counts(F, member, F.chi_table == -1)
        i = int(np.argmin(np.maximum(plus, minus)))
        return i, int(plus[i]), int(minus[i]), int(S.size - plus[i] - minus[i])

    def run(self):
        F = self.F
        S = np.arange(F.q)
        while(S.size >= 4):
            i, plus, minus, zero = self._choose(S)
            answer = self.oracle.query(i)
            self.rounds.append(SlsState(tuple(int(c) for c in S), i, plus, minus, zero, answer))
            if(answer == 0):
                return self._report(int(F.neg_table[i]), 'zero-hit')
            shrunk = S[F.chi_table[F.add_ranks(i, S)] == answer]
            if(not 4*shrunk.size < 3*S.size):
                raise VerificationError(f'round {len(self.rounds)}: |S| went from {S.size} to {shrunk.size}')
            logger.debug('sls classical q=%d: query %d -> %+d, |S| %d -> %d', F.q, i, answer, S.size, shrunk.size)
            S = shrunk
        if(S.size == 1):
            return self._report(int(S[0]), 'narrowed')
        for c in S[:-1]:
            if(self.oracle.query(int(F.neg_table[c])) == 0):
                return self._report(int(c), 'verified')
        return self._report(int(S[-1]), 'survivor')

    def _report(self, recovered, label):
        report = RunReport(protocol='sls-classical', parameters={'p': self.F.p, 'k': self.F.k, 'q': self.F.q},
                           hidden_s=self.hidden_s, recovered_s=recovered, queries_used=self.oracle.queries,
                           query_budget=sls_classical_budget(self.F.q),
                           success_probability=1.0 if recovered == self.hidden_s else 0.0, branch_taken=label)
        if(recovered != self.hidden_s):
            raise VerificationError(f'classical solver recovered {recovered}, hidden shift was {self.hidden_s}')
        if(not report.within_budget):
            raise VerificationError(f'{report.queries_used} queries exceed the budget {report.query_budget}')
        return report


def sls_classical(F, hidden_s):
    '''
    Classical shifted Legendre sequence solver with at most ceil(log q / log(4/3)) + 3 queries
    '''
    return SlsSolver(F, hidden_s).run()
