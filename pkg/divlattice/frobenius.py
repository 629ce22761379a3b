"""
Semi-simple and nilpotent parts of a Frobenius action.

Over the prime field ``F_p`` the Frobenius acts linearly, so the stable image
and the stable kernel are the image and kernel of ``M**n`` for an ``n x n``
matrix ``M``.
"""
import logging

from sympy import isprime

from . import _linalg
from .errors import PreconditionError

logger = logging.getLogger(__name__)


class FrobeniusSplit(object):

    def __init__(self, dim_s, dim_n, p):
        self.dim_s = dim_s
        self.dim_n = dim_n
        self.p = p

    def __iter__(self):
        return iter((self.dim_s, self.dim_n))

    def __eq__(self, other):
        if isinstance(other, tuple):
            return tuple(self) == other
        if not isinstance(other, FrobeniusSplit):
            return NotImplemented
        return (self.dim_s, self.dim_n, self.p) == (other.dim_s, other.dim_n, other.p)

    def __repr__(self):
        return 'FrobeniusSplit(<p: %d dim_s: %d dim_n: %d>)' % (self.p, self.dim_s, self.dim_n)


def frobenius_split(matrix, p):
    """
    :param matrix: square list of integer rows, read modulo ``p``
    :param p: prime characteristic
    :return: :class:`FrobeniusSplit` with ``dim_s = rank(M**n)`` and ``dim_n = n - dim_s``
    """
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise PreconditionError('frobenius_split works over a prime field, got p = %r' % (p,))
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise PreconditionError('frobenius_split needs a square matrix')
    for row in matrix:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise PreconditionError('matrix entries must be integers modulo %d, got %r' % (p, x))
    rank = _linalg.rank_of_power_mod_p(matrix, p, max(n, 1))
    logger.debug('frobenius over F_%d: rank of M^%d is %d', p, n, rank)
    return FrobeniusSplit(rank, n - rank, p)


def parse_matrix(text):
    """Rows separated by ``;``, entries by whitespace or commas: ``1 0; 0 1``"""
    text = (text or '').strip()
    if not text:
        return []
    rows = []
    for row in text.split(';'):
        try:
            rows.append([int(x) for x in row.replace(',', ' ').split()])
        except ValueError:
            raise PreconditionError('malformed matrix row %r' % row.strip())
    return rows
