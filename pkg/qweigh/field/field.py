import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import sympy

from qweigh.utils import FieldError, VerificationError, check_cap
from .helpers import _poly_mul, _poly_mod, _smallest_irreducible, _is_irreducible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldElement:
    '''
    Element of F_{p^k}: coefficient vector in the modulus basis, constant term first.
    '''
    coeffs: tuple

    def __repr__(self):
        return 'FieldElement' + str(self.coeffs)


class FieldSpec():
    '''
    The finite field F_q, q = p^k, realized as Z_p[x]/(modulus).

    Parameters
    ----------
    p : int
     Odd prime
    k : int
     Extension degree
    modulus : tuple of int
     Monic irreducible polynomial of degree k, constant term first.  For k=1 this is x, i.e. (0, 1).
    generator : FieldElement, optional
     Element of multiplicative order q-1.  Searched for (smallest rank) when not given.
    '''
    def __init__(self, p, k, modulus, generator=None):
        self.p = int(p)
        self.k = int(k)
        self.q = self.p**self.k
        self.modulus = tuple(int(c) for c in modulus)
        if(len(self.modulus) != self.k+1 or self.modulus[-1] != 1):
            raise FieldError(f'modulus must be monic of degree {self.k}')
        if(not _is_irreducible(self.modulus, self.p)):
            raise FieldError(f'modulus {self.modulus} is reducible over Z_{self.p}')
        self.zero = FieldElement((0,)*self.k)
        self.one = FieldElement((1,) + (0,)*(self.k-1))
        self.minus_one = FieldElement((self.p-1,) + (0,)*(self.k-1))
        if(generator is None):
            generator = self._find_generator()
        elif(not self.is_generator(generator)):
            raise FieldError(f'{generator} does not generate the multiplicative group of F_{self.q}')
        self.generator = generator

    def __repr__(self):
        return f'FieldSpec(p={self.p}, k={self.k}, q={self.q}, modulus={self.modulus}, generator={self.generator.coeffs})'

    #------------------------------------------------------------------------------------
    def check(self, x):
        if(not isinstance(x, FieldElement) or len(x.coeffs) != self.k
           or any((c < 0 or c >= self.p) for c in x.coeffs)):
            raise FieldError(f'{x!r} is not an element of F_{self.q}')
        return x

    def element(self, rank):
        rank = int(rank)
        if(rank < 0 or rank >= self.q):
            raise FieldError(f'rank {rank} out of range [0, {self.q})')
        coeffs = []
        for _ in range(self.k):
            rank, c = divmod(rank, self.p)
            coeffs.append(c)
        return FieldElement(tuple(coeffs))

    def rank(self, x):
        self.check(x)
        return sum(c*self.p**j for j, c in enumerate(x.coeffs))

    def elements(self):
        return [self.element(r) for r in range(self.q)]

    #------------------------------------------------------------------------------------
    def add(self, x, y):
        return FieldElement(tuple((a+b) % self.p for a, b in zip(self.check(x).coeffs, self.check(y).coeffs)))

    def neg(self, x):
        return FieldElement(tuple((-a) % self.p for a in self.check(x).coeffs))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        prod = _poly_mul(self.check(x).coeffs, self.check(y).coeffs, self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return FieldElement(tuple(red) + (0,)*(self.k-len(red)))

    def pow(self, x, e):
        '''
        Square-and-multiply powering.  Exponents of nonzero bases are reduced mod q-1.
        '''
        self.check(x)
        e = int(e)
        if(x == self.zero):
            if(e < 0):
                raise FieldError('negative power of zero')
            return self.one if e == 0 else self.zero
        e = e % (self.q-1)
        result = self.one
        base = x
        while(e > 0):
            if(e & 1):
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x):
        if(self.check(x) == self.zero):
            raise FieldError('inversion of zero')
        return self.pow(x, self.q-2)

    #------------------------------------------------------------------------------------
    def is_generator(self, g):
        self.check(g)
        if(g == self.zero):
            return False
        if(self.pow(g, self.q-1) != self.one):
            return False
        return all(self.pow(g, (self.q-1)//r) != self.one for r in sympy.primefactors(self.q-1))

    def _find_generator(self):
        for r in range(1, self.q):
            g = self.element(r)
            if(self.is_generator(g)):
                logger.debug('F_%d generator: rank %d', self.q, r)
                return g
        raise RuntimeError(f'no generator found for F_{self.q}')

    def legendre(self, x):
        if(self.check(x) == self.zero):
            return 0
        t = self.pow(x, (self.q-1)//2)
        if(t == self.one):
            return 1
        if(t == self.minus_one):
            return -1
        raise VerificationError(f'x^((q-1)/2) = {t} is neither 1 nor -1')

    #Rank-indexed lookup tables, built once per field
    @cached_property
    def chi_table(self):
        '''
        chi by rank, from the set of nonzero squares (one multiplication per element)
        '''
        table = np.full(self.q, -1, dtype=np.int8)
        table[0] = 0
        for x in self.elements()[1:]:
            table[self.rank(self.mul(x, x))] = 1
        table.flags.writeable = False
        return table

    def add_ranks(self, a, b):
        '''
        Rank of elem(a) + elem(b), vectorized with numpy broadcasting
        '''
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for j in range(self.k):
            pj = self.p**j
            out += ((a//pj + b//pj) % self.p) * pj
        return out

    @cached_property
    def digits(self):
        ranks = np.arange(self.q)
        return np.stack([(ranks // self.p**j) % self.p for j in range(self.k)], axis=1)

    @cached_property
    def add_table(self):
        '''
        q x q array of ranks, add_table[a, b] = rank(elem(a) + elem(b))
        '''
        ranks = np.arange(self.q)
        table = self.add_ranks(ranks[:, None], ranks[None, :])
        table.flags.writeable = False
        return table

    @cached_property
    def neg_table(self):
        d = self.digits
        table = (((-d) % self.p) * self.p**np.arange(self.k)).sum(axis=1)
        table.flags.writeable = False
        return table

    @cached_property
    def log_table(self):
        '''
        Discrete logarithm by rank: log_table[rank(zeta^i)] = i for i in 0..q-2; entry 0 (zero element) is -1.
        '''
        table = np.full(self.q, -1, dtype=np.int64)
        x = self.one
        for i in range(self.q-1):
            table[self.rank(x)] = i
            x = self.mul(x, self.generator)
        table.flags.writeable = False
        return table


#------------------------------------------------------------------------------------
def is_prime_power(q):
    '''
    Return (p, k) if q = p^k for a prime p, else None
    '''
    q = int(q)
    if(q < 2):
        return None
    factors = sympy.factorint(q)
    if(len(factors) != 1):
        return None
    (p, k), = factors.items()
    return int(p), int(k)


def make_field(p, k):
    '''
    Construct F_{p^k} with the lexicographically smallest irreducible monic modulus
    and the rank-smallest generator.

    Parameters
    ----------
    p : int
     Odd prime
    k : int
     Positive degree

    Returns
    ----------
    F : FieldSpec
    '''
    p = int(p)
    k = int(k)
    if(not sympy.isprime(p)):
        raise FieldError(f'p = {p} is not prime')
    if(p == 2):
        raise FieldError('p must be odd')
    if(k < 1):
        raise FieldError(f'degree k = {k} must be positive')
    check_cap(p**k, 'field_cap', 'field order q')
    modulus = _smallest_irreducible(p, k)
    logger.debug('F_%d: modulus %s', p**k, modulus)
    return FieldSpec(p, k, modulus)


def field_for_order(q):
    pk = is_prime_power(q)
    if(pk is None):
        raise FieldError(f'q = {q} is not a prime power')
    return make_field(*pk)


def elem_rank(F, x):
    return F.rank(x)


def elem_from_rank(F, rank):
    return F.element(rank)


_ARITH_OPS = ('add', 'neg', 'sub', 'mul', 'inv', 'pow')

def arith(F, op, x, y=None):
    '''
    Field arithmetic dispatcher.

    Parameters
    ----------
    F : FieldSpec
    op : str
     One of 'add', 'neg', 'sub', 'mul', 'inv', 'pow'
    x : FieldElement
    y : FieldElement or int, optional
     Second operand, or the exponent for 'pow'

    Returns
    ----------
    FieldElement
    '''
    if(op not in _ARITH_OPS):
        raise FieldError(f'unknown operation {op!r}')
    if(op in ('neg', 'inv')):
        return getattr(F, op)(x)
    if(y is None):
        raise FieldError(f'operation {op!r} needs a second operand')
    return getattr(F, op)(x, y)


def legendre(F, x):
    '''
    Quadratic character chi(x) in {-1, 0, +1}, computed as x^((q-1)/2)
    '''
    return F.legendre(x)


def legendre_bruteforce(F, x):
    '''
    chi(x) by enumerating all squares j^2, j in F_q
    '''
    F.check(x)
    if(x == F.zero):
        return 0
    for j in F.elements():
        if(j != F.zero and F.mul(j, j) == x):
            return 1
    return -1


def chi_inner_shifted(F, r, s):
    '''
    Sum over i in F_q of chi(i+r) chi(i+s).  Equals q-1 for r = s and -1 otherwise.
    '''
    chi = F.chi_table.astype(np.int64)
    ranks = np.arange(F.q)
    total = int(np.sum(chi[F.add_ranks(ranks, F.rank(r))] * chi[F.add_ranks(ranks, F.rank(s))]))
    expected = F.q-1 if r == s else -1
    if(total != expected):
        raise VerificationError(f'shifted character sum {total} != {expected} in F_{F.q}')
    return total


def trivial_character_inner(F):
    '''
    Inner product of chi with the trivial character, sum over x of chi(x).  Zero for nontrivial chi.
    '''
    return int(np.sum(F.chi_table.astype(np.int64)))
