import numpy as np

from qweigh.utils import MatrixFormatError
from .designs import TernaryMatrix

_SYMBOLS = {'+': 1, '-': -1, '0': 0}
_CHARS = {1: '+', -1: '-', 0: '0'}


def parse_matrix(text):
    '''
    Read a matrix in the text format: header "n k" (k = -1 if unverified), then n rows of n
    symbols from {+, -, 0}.

    Parameters
    ----------
    text : str

    Returns
    ----------
    M : TernaryMatrix
     Verified against k when the header carries k >= 0
    '''
    lines = [line.strip() for line in text.strip().splitlines()]
    if(len(lines) == 0):
        raise MatrixFormatError('empty matrix text')
    header = lines[0].split()
    try:
        n, k = (int(v) for v in header)
    except ValueError:
        raise MatrixFormatError(f'malformed header {lines[0]!r}, expected "n k"')
    if(n < 1 or k < -1 or k > n):
        raise MatrixFormatError(f'malformed header {lines[0]!r}')
    rows = lines[1:]
    if(len(rows) != n):
        raise MatrixFormatError(f'expected {n} rows, found {len(rows)}')
    entries = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(rows):
        if(len(row) != n):
            raise MatrixFormatError(f'row {i} has {len(row)} symbols, expected {n}')
        for j, ch in enumerate(row):
            if(ch not in _SYMBOLS):
                raise MatrixFormatError(f'non-ternary symbol {ch!r} at row {i}, column {j}')
            entries[i, j] = _SYMBOLS[ch]
    return TernaryMatrix(entries, claimed_weight=None if k == -1 else k)


def serialize_matrix(M):
    '''
    Write M in the text format; newline terminated, no trailing spaces
    '''
    k = M.claimed_weight if M.claimed_weight is not None else -1
    out = [f'{M.n} {k}']
    for row in M.entries:
        out.append(''.join(_CHARS[int(v)] for v in row))
    return '\n'.join(out) + '\n'


def read_matrix(filename):
    with open(filename, 'r') as file:
        return parse_matrix(file.read())


def write_matrix(M, filename):
    with open(filename, 'w') as file:
        file.write(serialize_matrix(M))
