"""Syzygies of the realified conjugate-Fueter matrix.

The conjugate-Fueter system in n hypercomplex variables realifies to an
(n*d) x d matrix over the commutative polynomial ring Q[d_0, ..., d_{N-1}]
(N = n*d partial-derivative symbols):

    M[(h, gamma), beta]  =  sum over alpha of  sign * d_{h,alpha}
                            where  i_alpha * i_beta = sign * i_gamma.

Block h of M is, entry for entry, the realified one-variable operator matrix
(:data:`crfbench.hypercomplex.OCT_DBAR_MATRIX` for octonions, its quaternion
analog for H).

A (left) syzygy of degree k is a row vector v of homogeneous degree-k
operator polynomials with v . M = 0.  The compatibility operators yield
syzygy rows mechanically:

* octonionic pair (l, m):   z_{l,m} g = Lap_m g_l - dbar_l(d_m g_m)
      row gamma:  v[(l, beta)] = delta_{gamma beta} * Lap_m
                  v[(m, beta)] = -(A_l . B_m)[gamma, beta]
  with A_l the dbar block of variable l and B_m the realified d block of
  variable m.  (Operator composition realifies to a matrix product; the
  identity B_m . A_m = Lap_m * Id is the alternative law.)
* quaternionic pair (l, m) uses the opposite overall sign, matching the
  published P-bar operators.

``syzygy_dim`` counts all degree-k syzygies by exact linear algebra over Q.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .hypercomplex import DIM, MUL_TABLE, HNumber
from .linalg import Echelon, rank_of
from .polycalc import HPoly, compat_pbar


class ResourceBudget(Exception):
    """A computation would exceed the caller-supplied size budget."""


class OperatorPoly:
    """Polynomial in commuting derivative symbols with rational coefficients."""

    __slots__ = ("nsyms", "terms")

    def __init__(self, nsyms, terms=None):
        self.nsyms = nsyms
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nsyms:
                    raise ValueError("exponent width mismatch")
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, nsyms):
        return cls(nsyms)

    @classmethod
    def symbol(cls, nsyms, i, coeff=1):
        exp = [0] * nsyms
        exp[i] = 1
        return cls(nsyms, {tuple(exp): coeff})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, k=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return k is None or degs == {k}

    def __add__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        out = OperatorPoly.__new__(OperatorPoly)
        out.nsyms, out.terms = self.nsyms, terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = OperatorPoly.__new__(OperatorPoly)
        out.nsyms = self.nsyms
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            out = OperatorPoly.__new__(OperatorPoly)
            out.nsyms = self.nsyms
            out.terms = {e: c * other for e, c in self.terms.items()} if other else {}
            return out
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        out = OperatorPoly.__new__(OperatorPoly)
        out.nsyms = self.nsyms
        out.terms = {e: c for e, c in acc.items() if c}
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self.nsyms == other.nsyms and self.terms == other.terms

    def __hash__(self):
        return hash((self.nsyms, frozenset(self.terms.items())))

    def __repr__(self):
        items = sorted(self.terms.items())
        return "OperatorPoly(" + " + ".join(
            f"{c}*d^{list(e)}" for e, c in items[:4]
        ) + (" + ..." if len(items) > 4 else "") + ")"

    def apply(self, poly, var_of_sym):
        """Apply to an HPoly; symbol i differentiates flat coordinate
        ``var_of_sym[i]``.  Used to cross-check rows against the polynomial
        calculus."""
        out = HPoly.zero(poly.algebra, poly.n)
        for exp, c in self.terms.items():
            q = poly
            for i, e in enumerate(exp):
                for _ in range(e):
                    q = q.partial_flat(var_of_sym[i])
            out = out + q.scale(c)
        return out


def _conj_table(algebra):
    """Structure constants of conj(i_alpha) * i_beta."""
    d = DIM[algebra]
    table = [[None] * d for _ in range(d)]
    for alpha in range(d):
        for beta in range(d):
            gamma, sign = MUL_TABLE[algebra][alpha][beta]
            if alpha != 0:
                sign = -sign
            table[alpha][beta] = (gamma, sign)
    return table


def _block(algebra, n, h, conj):
    """Realified d x d operator block for variable h.

    ``conj=True`` gives the conjugate-Fueter (dbar) block, ``conj=False`` the
    Fueter (d) block.
    """
    d = DIM[algebra]
    nsyms = d * n
    table = MUL_TABLE[algebra] if conj else _conj_table(algebra)
    rows = [[OperatorPoly.zero(nsyms) for _ in range(d)] for _ in range(d)]
    for alpha in range(d):
        for beta in range(d):
            gamma, sign = table[alpha][beta]
            rows[gamma][beta] = rows[gamma][beta] + OperatorPoly.symbol(
                nsyms, d * h + alpha, sign)
    return rows


def build_dbar_matrix(algebra, n):
    """The (n*d) x d realified conjugate-Fueter matrix; row (h, gamma) is at
    flat index d*h + gamma."""
    out = []
    for h in range(n):
        out.extend(_block(algebra, n, h, conj=True))
    return out


def laplace_operator(algebra, n, h):
    d = DIM[algebra]
    nsyms = d * n
    out = OperatorPoly.zero(nsyms)
    for alpha in range(d):
        exp = [0] * nsyms
        exp[d * h + alpha] = 2
        out = out + OperatorPoly(nsyms, {tuple(exp): 1})
    return out


def _mat_mul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = OperatorPoly.zero(a[0][0].nsyms)
            for t in range(mid):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def compat_syzygy_rows(l, m, algebra, n):
    """The d syzygy rows realifying the compatibility operator of pair (l, m).

    Returns a list of d row vectors, each of length n*d, of OperatorPolys.
    Quaternionic rows carry the published P-bar sign (overall minus of the
    octonionic z-form); see the module docstring.
    """
    if l == m or not (0 <= l < n and 0 <= m < n):
        raise ValueError("need an ordered pair of distinct variable indices")
    d = DIM[algebra]
    nsyms = d * n
    lap_m = laplace_operator(algebra, n, m)
    prod = _mat_mul(_block(algebra, n, l, conj=True), _block(algebra, n, m, conj=False))
    sign = -1 if algebra == "H" else 1
    rows = []
    for gamma in range(d):
        row = [OperatorPoly.zero(nsyms) for _ in range(n * d)]
        row[d * l + gamma] = lap_m * sign
        for beta in range(d):
            row[d * m + beta] = prod[gamma][beta] * (-sign)
        rows.append(row)
    return rows


def all_compat_rows(algebra, n):
    """Compat syzygy rows for every ordered pair, lexicographic."""
    rows = []
    for l in range(n):
        for m in range(n):
            if l != m:
                rows.extend(compat_syzygy_rows(l, m, algebra, n))
    return rows


def verify_syzygy(row, matrix):
    """Exact symbolic check that row . matrix == 0."""
    ncols = len(matrix[0])
    for j in range(ncols):
        acc = OperatorPoly.zero(row[0].nsyms)
        for i, entry in enumerate(row):
            if not entry.is_zero() and not matrix[i][j].is_zero():
                acc = acc + entry * matrix[i][j]
        if not acc.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# graded dimension count
# ---------------------------------------------------------------------------

def _monomials(nsyms, k):
    """Degree-k exponent tuples in deterministic (lexicographic) order."""
    out = []
    for combo in combinations_with_replacement(range(nsyms), k):
        exp = [0] * nsyms
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return out


def row_coefficient_vector(row, k, mono_index):
    """Flatten a degree-k syzygy row into a sparse coefficient vector."""
    nmono = len(mono_index)
    vec = {}
    for j, entry in enumerate(row):
        if entry.is_zero():
            continue
        if not entry.is_homogeneous(k):
            raise ValueError("row entry is not homogeneous of the right degree")
        for exp, c in entry.terms.items():
            vec[j * nmono + mono_index[exp]] = c
    return vec


def syzygy_dim(algebra, n, k, max_unknowns=None):
    """Dimension of the space of degree-k syzygy rows of the realified matrix.

    Pure exact linear algebra: unknowns are the coefficients of the n*d row
    entries on degree-k monomials; equations say each column of row . matrix
    vanishes coefficientwise.  ``max_unknowns`` guards runaway sizes (raises
    :class:`ResourceBudget`).
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    d = DIM[algebra]
    nsyms = d * n
    monos = _monomials(nsyms, k)
    mono_index = {e: i for i, e in enumerate(monos)}
    nunknowns = n * d * len(monos)
    if max_unknowns is not None and nunknowns > max_unknowns:
        raise ResourceBudget(
            f"{nunknowns} unknowns exceed budget {max_unknowns}")
    matrix = build_dbar_matrix(algebra, n)
    # equations indexed by (column beta, degree-(k+1) monomial)
    equations = {}
    for j in range(n * d):
        for beta in range(d):
            entry = matrix[j][beta]
            for s_exp, c in entry.terms.items():
                s = next(i for i, e in enumerate(s_exp) if e)
                for mi, mu in enumerate(monos):
                    mu_s = mu[:s] + (mu[s] + 1,) + mu[s + 1:]
                    key = (beta, mu_s)
                    row = equations.get(key)
                    if row is None:
                        row = equations[key] = {}
                    col = j * len(monos) + mi
                    row[col] = row.get(col, Fraction(0)) + c
    ech = Echelon()
    for key in sorted(equations):
        row = {c: v for c, v in equations[key].items() if v}
        if row:
            ech.add_row(row)
    return nunknowns - ech.rank


def compat_rows_rank(algebra, n, k=2):
    """Rank of the compat syzygy rows as degree-k coefficient vectors."""
    d = DIM[algebra]
    monos = _monomials(d * n, k)
    mono_index = {e: i for i, e in enumerate(monos)}
    vecs = [row_coefficient_vector(r, k, mono_index) for r in all_compat_rows(algebra, n)]
    return rank_of(vecs)


def independence_witness(a, b, algebra, n):
    """Residual table for the rank-probing right-hand side g_k = x_{b,0}^2
    delta_{k,a}: maps each ordered pair (l, m) to its residual polynomial.

    For a != b exactly the (a, b) entry is nonzero (the constant 2 for
    octonions; quaternionic pairs carry the opposite sign convention).
    """
    if a == b:
        raise ValueError("need distinct variable indices")
    g = [HPoly.zero(algebra, n) for _ in range(n)]
    x = HPoly.coordinate(algebra, n, b, 0)
    g[a] = x * x
    residuals = compat_pbar(g)
    out = {}
    idx = 0
    if algebra == "H":
        # published pair order for the quaternionic system: (0,1), (1,0)
        for l, m in ((0, 1), (1, 0)):
            out[(l, m)] = residuals[idx]
            idx += 1
        return out
    for l in range(n):
        for m in range(n):
            if l != m:
                out[(l, m)] = residuals[idx]
                idx += 1
    return out
