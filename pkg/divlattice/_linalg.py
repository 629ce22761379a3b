"""
Exact linear algebra used by the lattice code.

Everything funnels through sympy's ``DomainMatrix`` over ``QQ`` (or ``GF(p)``)
so that no floating point value is ever produced. Values cross this module as
``fractions.Fraction`` and come back the same way.
"""
from fractions import Fraction

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(element, domain=QQ):
    r = domain.to_sympy(element)
    return Fraction(int(r.p), int(r.q))


def rational_matrix(rows):
    """
    A ``DomainMatrix`` over QQ from a list of rows of rationals.

    >>> rational_matrix([[1, Fraction(1, 2)], [0, 3]]).shape
    (2, 2)
    """
    rows = [[_to_qq(x) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def determinant(rows):
    if not rows:
        return Fraction(1)
    return _to_fraction(rational_matrix(rows).det())


def solve(rows, rhs):
    """
    Solve ``rows * x = rhs`` exactly.

    :param rows: square, non-singular matrix given as a list of rows
    :param rhs: list of rationals
    :return: list of ``Fraction``
    """
    if not rows:
        return []
    if determinant(rows) == 0:
        raise ZeroDivisionError('singular system')
    a = rational_matrix(rows)
    b = rational_matrix([[x] for x in rhs])
    x = a.lu_solve(b).to_Matrix()
    return [Fraction(int(v.p), int(v.q)) for v in x]


def principal_minor(rows, indices):
    return determinant([[rows[i][j] for j in indices] for i in indices])


def matrix_mod_p(rows, p):
    field = GF(p)
    rows = [[field(int(x) % p) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), field)


def rank_of_power_mod_p(rows, p, exponent):
    """Rank over F_p of ``rows ** exponent``"""
    if not rows:
        return 0
    m = matrix_mod_p(rows, p)
    if exponent > 1:
        m = m ** exponent
    return int(m.rank())
