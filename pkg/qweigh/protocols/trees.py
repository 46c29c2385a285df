import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from qweigh.utils import VerificationError, check_cap
from .protocols import shifted_legendre_table

logger = logging.getLogger(__name__)

_ANSWERS = (-1, 0, 1)


@dataclass
class TreeNode:
    '''
    Internal node (query set, children keyed by the answers -1, 0, +1 that occur) or
    leaf (query None, guess = index of the identified family member).
    '''
    query: Optional[int] = None
    children: dict = field(default_factory=dict)
    guess: Optional[int] = None

    @property
    def is_leaf(self):
        return self.query is None


@dataclass
class DecisionTree:
    root: TreeNode
    depth: int
    n_members: int

    def classify(self, table):
        '''
        Follow the tree on a function table; returns (guess, number of queries made)
        '''
        node = self.root
        used = 0
        while(not node.is_leaf):
            answer = int(table[node.query])
            if(answer not in node.children):
                raise VerificationError(f'answer {answer} at index {node.query} is not consistent with the family')
            node = node.children[answer]
            used += 1
        return node.guess, used

    def paths(self):
        '''
        All root-to-leaf paths as (list of (index, answer), guess)
        '''
        out = []
        stack = [(self.root, [])]
        while(stack):
            node, path = stack.pop()
            if(node.is_leaf):
                out.append((path, node.guess))
                continue
            for answer in sorted(node.children, reverse=True):
                stack.append((node.children[answer], path + [(node.query, answer)]))
        return out


def _members(mask):
    return [m for m in range(mask.bit_length()) if mask >> m & 1]


class _TreeSearch():
    '''
    Memoized minimax over candidate subsets (bitmasks of family members).

    depth(S) = 0 for |S| <= 1, else the minimum over indices i of 1 + max over the nonempty
    answer classes of depth.  An index that does not split S never helps, so only splitting
    indices are tried; every index already queried on the path is constant on S and is skipped.
    '''
    def __init__(self, tables):
        self.tables = tables
        self._cache = {}

    def _split(self, mask, i):
        parts = {}
        for m in _members(mask):
            a = int(self.tables[m, i])
            parts[a] = parts.get(a, 0) | (1 << m)
        return parts

    def depth(self, mask):
        if(mask in self._cache):
            return self._cache[mask][0]
        if(bin(mask).count('1') <= 1):
            self._cache[mask] = (0, None)
            return 0
        best = None
        for i in range(self.tables.shape[1]):
            parts = self._split(mask, i)
            if(len(parts) < 2):
                continue
            d = 1 + max(self.depth(part) for part in parts.values())
            if(best is None or d < best[0]):
                best = (d, i)
        if(best is None):
            raise VerificationError(f'family members {_members(mask)} cannot be told apart')
        self._cache[mask] = best
        return best[0]

    def build(self, mask):
        self.depth(mask)
        if(bin(mask).count('1') <= 1):
            return TreeNode(guess=_members(mask)[0] if mask else None)
        i = self._cache[mask][1]
        children = {a: self.build(part) for a, part in sorted(self._split(mask, i).items())}
        return TreeNode(query=i, children=children)


def optimal_tree(family, cap=None):
    '''
    Minimum worst-case depth deterministic decision tree that identifies every member
    of a family of ternary function tables exactly.

    Parameters
    ----------
    family : sequence of sequences of int
     Function tables with values in {-1, 0, +1}, all of the same length and pairwise distinct
    cap : int, optional
     Maximum family size, config value tree_cap (16) when not given

    Returns
    ----------
    tree : DecisionTree
    depth : int
    '''
    tables = [np.asarray(t, dtype=np.int64).reshape(-1) for t in family]
    if(len(tables) == 0):
        raise ValueError('empty family')
    if(len(set(t.size for t in tables)) != 1):
        raise ValueError('family tables must all have the same length')
    if(cap is None):
        check_cap(len(tables), 'tree_cap', 'family size')
    elif(len(tables) > cap):
        raise ValueError(f'family size {len(tables)} exceeds the cap {cap}')
    tables = np.stack(tables)
    if(not np.all(np.isin(tables, _ANSWERS))):
        raise ValueError('family tables must have values in {-1, 0, +1}')
    seen = {}
    for m, t in enumerate(tables):
        key = t.tobytes()
        if(key in seen):
            raise VerificationError(f'family members {seen[key]} and {m} are identical')
        seen[key] = m
    search = _TreeSearch(tables)
    full = (1 << len(tables)) - 1
    depth = search.depth(full)
    tree = DecisionTree(root=search.build(full), depth=depth, n_members=len(tables))
    logger.info('optimal tree for %d members: depth %d (%d subsets searched)', len(tables), depth, len(search._cache))
    return tree, depth


def family_tables(M):
    '''
    Rows of a ternary matrix as a function-table family
    '''
    return [tuple(int(v) for v in row) for row in M.entries]


def sls_family(F):
    '''
    The q shifted Legendre tables f_s, s = 0..q-1
    '''
    return [tuple(int(v) for v in shifted_legendre_table(F, s)) for s in range(F.q)]
