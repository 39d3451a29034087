"""Differential forms with polynomial or pole coefficients.

The engine works over R^(4n) with quaternion-valued coefficients, which is
enough for every identity in the workbench (octonionic data never enters the
form layer).  A coefficient is an element of the *pole ring*: a polynomial
numerator divided by an even power of the distance to a marked point,

    N / r^(2m),     r^2 = sum_i (xi_i - p_i)^2,

closed under derivatives.  ``m = 0`` elements are plain polynomials and
combine with any pole.

Conventions, fixed once and validated by the identity suites:

* coordinates: variable h occupies flat indices 4h..4h+3; for n = 2 the
  blocks are written x (first variable) and y (second);
* orientation of R^(4n): dxi_0 ^ dxi_1 ^ ... ^ dxi_{4n-1} is positive,
  and the Hodge star uses this orientation with the Euclidean metric;
* ``dq_form`` / ``dqbar_form``: degree-1 forms sum_a i_a dx_{h,a} and its
  conjugate;
* ``Dq_form``: the degree-3 form sum_a (-1)^a i_a dX_{h,a-hat} where
  dX_{h,a-hat} drops dx_{h,a} from the variable's volume factor dx_{h,0} ^
  ... ^ dx_{h,3}; ``Dqbar_form`` conjugates the coefficients;
* wedge products multiply coefficients in left-to-right order (the
  coefficients are quaternions!).

Key exact identities available as functions: ``identity_lu1`` (one variable:
d(Dq . F) = dbar F dx), ``identity_lub`` (two variables, 7-forms, mixing the
conjugate-Fueter derivatives with the Hodge star of dF).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .hypercomplex import DIM, HNumber
from .polycalc import HPoly, fueter_dbar

SCHEMA_VERSION = 1


def _r_squared(pole, algebra, n):
    """The squared distance polynomial to the pole point."""
    width = DIM[algebra] * n
    if len(pole) != width:
        raise ValueError("pole width mismatch")
    out = HPoly.zero(algebra, n)
    for i, p in enumerate(pole):
        exp1 = tuple(1 if j == i else 0 for j in range(width))
        mono = HPoly(algebra, n, {exp1: HNumber.one(algebra)})
        lin = mono - HPoly.constant(algebra, n, Fraction(p))
        out = out + lin * lin
    return out


class PoleRingElement:
    """num / r^(2m) with polynomial numerator; m = 0 means no pole."""

    __slots__ = ("num", "pole", "m")

    def __init__(self, num, pole=None, m=0):
        if not isinstance(num, HPoly):
            raise TypeError("numerator must be an HPoly")
        if m < 0:
            raise ValueError("pole order must be nonnegative")
        if m > 0 and pole is None:
            raise ValueError("pole point required when m > 0")
        self.num = num
        self.m = m if not num.is_zero() else 0
        if self.m == 0:
            self.pole = tuple(Fraction(p) for p in pole) if pole is not None else None
        else:
            self.pole = tuple(Fraction(p) for p in pole)

    @classmethod
    def from_poly(cls, p):
        return cls(p, None, 0)

    @property
    def algebra(self):
        return self.num.algebra

    @property
    def n(self):
        return self.num.n

    def is_zero(self):
        return self.num.is_zero()

    def _common(self, other):
        """Lift self and other to a common pole and order; returns
        (num_a, num_b, pole, m)."""
        if self.m == 0 and other.m == 0:
            return self.num, other.num, self.pole or other.pole, 0
        pole = self.pole if self.m else other.pole
        if self.m and other.m and self.pole != other.pole:
            raise ValueError("mixed poles")
        m = max(self.m, other.m)
        r2 = _r_squared(pole, self.algebra, self.n)
        a = self.num
        for _ in range(m - self.m):
            a = a * r2
        b = other.num
        for _ in range(m - other.m):
            b = b * r2
        return a, b, pole, m

    def __add__(self, other):
        if isinstance(other, HPoly):
            other = PoleRingElement.from_poly(other)
        if not isinstance(other, PoleRingElement):
            return NotImplemented
        a, b, pole, m = self._common(other)
        return PoleRingElement(a + b, pole, m)

    def __sub__(self, other):
        if isinstance(other, HPoly):
            other = PoleRingElement.from_poly(other)
        if not isinstance(other, PoleRingElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PoleRingElement(-self.num, self.pole, self.m)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PoleRingElement(self.num.scale(other), self.pole, self.m)
        if isinstance(other, HNumber):
            return PoleRingElement(self.num.mul_const_right(other), self.pole, self.m)
        if isinstance(other, HPoly):
            other = PoleRingElement.from_poly(other)
        if not isinstance(other, PoleRingElement):
            return NotImplemented
        if self.m and other.m and self.pole != other.pole:
            raise ValueError("mixed poles")
        pole = self.pole if self.m else other.pole
        return PoleRingElement(self.num * other.num, pole, self.m + other.m)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PoleRingElement(self.num.scale(other), self.pole, self.m)
        if isinstance(other, HNumber):
            return PoleRingElement(self.num.mul_const_left(other), self.pole, self.m)
        if isinstance(other, HPoly):
            return PoleRingElement(other * self.num, self.pole, self.m)
        return NotImplemented

    def partial_flat(self, i):
        """d/d xi_i:  (dN) r^-2m  -  m N d(r^2) r^-2(m+1)."""
        dn = self.num.partial_flat(i)
        if self.m == 0:
            return PoleRingElement(dn, self.pole, 0)
        r2 = _r_squared(self.pole, self.algebra, self.n)
        dr2 = r2.partial_flat(i)
        num = dn * r2 - self.num.scale(self.m) * dr2
        return PoleRingElement(num, self.pole, self.m + 1)

    def evaluate(self, point):
        v = self.num.evaluate(point)
        if self.m == 0:
            return v
        r2 = _r_squared(self.pole, self.algebra, self.n).evaluate(point)
        den = r2.coeffs[0] ** self.m
        if den == 0:
            raise ZeroDivisionError("evaluation at the pole")
        if v.backend == "float":
            return v.scale(1.0 / den)
        return v.scale(Fraction(1, 1) / den)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            other = PoleRingElement.from_poly(other)
        if not isinstance(other, PoleRingElement):
            return NotImplemented
        try:
            a, b, _, _ = self._common(other)
        except ValueError:
            return False
        return a == b

    def __hash__(self):
        raise TypeError("unhashable (non-canonical representation)")

    def __repr__(self):
        if self.m == 0:
            return f"PoleRingElement({self.num!r})"
        return f"PoleRingElement({self.num!r} / r^{2 * self.m} @ {self.pole})"


class Form:
    """Exterior form on R^width with pole-ring coefficients.

    ``terms`` maps strictly increasing index tuples of length ``degree`` to
    :class:`PoleRingElement` coefficients.
    """

    __slots__ = ("algebra", "n", "degree", "terms")

    def __init__(self, algebra, n, degree, terms=None):
        self.algebra = algebra
        self.n = n
        self.degree = degree
        width = DIM[algebra] * n
        clean = {}
        if terms:
            for idx, coef in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError("index tuple has wrong length")
                if any(not (0 <= i < width) for i in idx):
                    raise IndexError("index out of range")
                if list(idx) != sorted(set(idx)):
                    raise ValueError("indices must be strictly increasing")
                if isinstance(coef, HPoly):
                    coef = PoleRingElement.from_poly(coef)
                if isinstance(coef, HNumber):
                    coef = PoleRingElement.from_poly(
                        HPoly.constant(algebra, n, coef))
                if not coef.is_zero():
                    clean[idx] = clean[idx] + coef if idx in clean else coef
        self.terms = {i: c for i, c in clean.items() if not c.is_zero()}

    @property
    def width(self):
        return DIM[self.algebra] * self.n

    @classmethod
    def zero(cls, algebra, n, degree):
        return cls(algebra, n, degree)

    @classmethod
    def coordinate_differential(cls, algebra, n, i):
        one = HPoly.constant(algebra, n, 1)
        return cls(algebra, n, 1, {(i,): PoleRingElement.from_poly(one)})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if (self.algebra, self.n, self.degree) != (other.algebra, other.n, other.degree):
            raise ValueError("form spaces differ")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for idx, coef in other.terms.items():
            s = terms[idx] + coef if idx in terms else coef
            if s.is_zero():
                terms.pop(idx, None)
            else:
                terms[idx] = s
        out = Form.__new__(Form)
        out.algebra, out.n, out.degree, out.terms = self.algebra, self.n, self.degree, terms
        return out

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = Form.__new__(Form)
        out.algebra, out.n, out.degree = self.algebra, self.n, self.degree
        out.terms = {i: -c for i, c in self.terms.items()}
        return out

    def scale(self, s):
        out = Form.__new__(Form)
        out.algebra, out.n, out.degree = self.algebra, self.n, self.degree
        out.terms = {i: c * s for i, c in self.terms.items()}
        return out

    def mul_left(self, g):
        """g * omega: multiply every coefficient by g on the left."""
        terms = {i: g * c for i, c in self.terms.items()}
        return Form(self.algebra, self.n, self.degree, terms)

    def mul_right(self, g):
        """omega * g: multiply every coefficient by g on the right."""
        terms = {i: c * g for i, c in self.terms.items()}
        return Form(self.algebra, self.n, self.degree, terms)

    def wedge(self, other):
        if not isinstance(other, Form):
            raise TypeError("wedge needs a Form")
        if (self.algebra, self.n) != (other.algebra, other.n):
            raise ValueError("form spaces differ")
        deg = self.degree + other.degree
        acc = {}
        for i1, c1 in self.terms.items():
            s1 = set(i1)
            for i2, c2 in other.terms.items():
                if s1 & set(i2):
                    continue
                merged, sign = _merge_sorted(i1, i2)
                c = c1 * c2 if sign == 1 else -(c1 * c2)
                acc[merged] = acc[merged] + c if merged in acc else c
        out = Form(self.algebra, self.n, deg)
        out.terms = {i: c for i, c in acc.items() if not c.is_zero()}
        return out

    def exterior_d(self):
        acc = {}
        for idx, coef in self.terms.items():
            present = set(idx)
            for i in range(self.width):
                if i in present:
                    continue
                dc = coef.partial_flat(i)
                if dc.is_zero():
                    continue
                merged, sign = _merge_sorted((i,), idx)
                c = dc if sign == 1 else -dc
                acc[merged] = acc[merged] + c if merged in acc else c
        out = Form(self.algebra, self.n, self.degree + 1)
        out.terms = {i: c for i, c in acc.items() if not c.is_zero()}
        return out

    def hodge_star(self):
        """Euclidean star for the positive orientation (0, 1, ..., width-1).

        Acts on the index part only; coefficients ride along unchanged.
        """
        width = self.width
        out = Form(self.algebra, self.n, width - self.degree)
        terms = {}
        full = tuple(range(width))
        for idx, coef in self.terms.items():
            comp = tuple(i for i in full if i not in idx)
            sign = _permutation_sign(idx + comp)
            terms[comp] = coef if sign == 1 else -coef
        out.terms = {i: c for i, c in terms.items() if not c.is_zero()}
        return out

    def pullback_at(self, frame, point):
        """Evaluate on tangent vectors at a point: sum_I c_I(point) det(frame_I).

        ``frame`` is a sequence of ``degree`` vectors (length ``width``).
        Exact when everything is rational, float otherwise.
        """
        if len(frame) != self.degree:
            raise ValueError("frame size must equal form degree")
        is_float = any(isinstance(x, float) for v in frame for x in v) or \
            any(isinstance(x, float) for x in point)
        acc = None
        for idx, coef in self.terms.items():
            rows = [[v[i] for i in idx] for v in frame]
            det = _det_float(rows) if is_float else _det_exact(rows)
            if det == 0:
                continue
            val = coef.evaluate(point)
            if is_float:
                val = val.to_float().scale(float(det))
            else:
                val = val.scale(det)
            acc = val if acc is None else acc + val
        if acc is None:
            backend = "float" if is_float else "exact"
            return HNumber.zero(self.algebra, backend)
        return acc

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("unhashable")

    def __repr__(self):
        keys = sorted(self.terms)
        return f"Form(deg={self.degree}, {len(keys)} terms: {keys[:4]}...)"

    def to_json(self):
        terms = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            terms.append({
                "idx": list(idx),
                "num": c.num.to_json(),
                "pole": [str(p) for p in c.pole] if c.pole is not None else None,
                "m": c.m,
            })
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": self.algebra,
            "n": self.n,
            "degree": self.degree,
            "terms": terms,
        }

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for t in obj["terms"]:
            pole = [Fraction(p) for p in t["pole"]] if t["pole"] is not None else None
            terms[tuple(t["idx"])] = PoleRingElement(
                HPoly.from_json(t["num"]), pole, t["m"])
        return cls(obj["algebra"], obj["n"], obj["degree"], terms)


def _merge_sorted(a, b):
    """Merge two disjoint ascending tuples; return (merged, sign) where sign
    is the parity of the permutation that sorts a + b."""
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a) - i entries of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return tuple(merged), sign


def _permutation_sign(perm):
    seen = [False] * len(perm)
    pos = {v: i for i, v in enumerate(sorted(perm))}
    sign = 1
    norm = [pos[v] for v in perm]
    for start in range(len(norm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = norm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_exact(rows):
    n = len(rows)
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = Fraction(1) / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                f = mat[r][col] * inv
                for c in range(col, n):
                    mat[r][c] -= f * mat[col][c]
    return det


def _det_float(rows):
    import numpy as np
    return float(np.linalg.det(np.array(rows, dtype=float)))


# ---------------------------------------------------------------------------
# standard forms
# ---------------------------------------------------------------------------

def dq_form(algebra, n, h):
    """sum_a i_a dx_{h,a}."""
    d = DIM[algebra]
    terms = {}
    one = HPoly.constant(algebra, n, 1)
    for alpha in range(d):
        terms[(d * h + alpha,)] = PoleRingElement.from_poly(
            one.mul_const_left(HNumber.unit(algebra, alpha)))
    return Form(algebra, n, 1, terms)


def dqbar_form(algebra, n, h):
    """sum_a conj(i_a) dx_{h,a}."""
    d = DIM[algebra]
    terms = {}
    one = HPoly.constant(algebra, n, 1)
    for alpha in range(d):
        u = HNumber.unit(algebra, alpha).conj()
        terms[(d * h + alpha,)] = PoleRingElement.from_poly(one.mul_const_left(u))
    return Form(algebra, n, 1, terms)


def volume_block_form(algebra, n, h):
    """dx_{h,0} ^ dx_{h,1} ^ dx_{h,2} ^ dx_{h,3} (one variable's volume)."""
    d = DIM[algebra]
    idx = tuple(d * h + a for a in range(d))
    one = HPoly.constant(algebra, n, 1)
    return Form(algebra, n, d, {idx: PoleRingElement.from_poly(one)})


def dq_hat_form(algebra, n, h, alpha):
    """The (d-1)-form dropping dx_{h,alpha} from the variable's volume."""
    d = DIM[algebra]
    idx = tuple(d * h + a for a in range(d) if a != alpha)
    one = HPoly.constant(algebra, n, 1)
    return Form(algebra, n, d - 1, {idx: PoleRingElement.from_poly(one)})


def Dq_form(algebra, n, h):
    """sum_a (-1)^a i_a dX_{h,a-hat}: the degree-3 kernel pairing form."""
    d = DIM[algebra]
    out = Form.zero(algebra, n, d - 1)
    for alpha in range(d):
        u = HNumber.unit(algebra, alpha)
        if alpha % 2:
            u = -u
        out = out + dq_hat_form(algebra, n, h, alpha).mul_left(
            HPoly.constant(algebra, n, u))
    return out


def Dqbar_form(algebra, n, h):
    """Conjugate-coefficient variant of :func:`Dq_form`."""
    d = DIM[algebra]
    out = Form.zero(algebra, n, d - 1)
    for alpha in range(d):
        u = HNumber.unit(algebra, alpha).conj()
        if alpha % 2:
            u = -u
        out = out + dq_hat_form(algebra, n, h, alpha).mul_left(
            HPoly.constant(algebra, n, u))
    return out


def full_volume_form(algebra, n):
    width = DIM[algebra] * n
    one = HPoly.constant(algebra, n, 1)
    return Form(algebra, n, width, {tuple(range(width)): PoleRingElement.from_poly(one)})


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def identity_lu1(F):
    """One-variable reproduction identity: d(Dq . F) = (dbar F) dx.

    Returns the pair (lhs, rhs); they agree exactly for every polynomial F.
    """
    if F.n != 1:
        raise ValueError("one-variable identity")
    lhs = Dq_form(F.algebra, 1, 0).mul_right(F).exterior_d()
    rhs = volume_block_form(F.algebra, 1, 0).mul_left(fueter_dbar(F, 0))
    return lhs, rhs


def identity_lub(F):
    """Two-variable 7-form identity mixing dbar derivatives with *dF.

    lhs = 1/2 (dqbar_1 ^ dq_1 ^ dy ^ dF  +  dx ^ dqbar_2 ^ dq_2 ^ dF)
    rhs = -(Dqbar_1 . (dbar_1 F)) ^ dy  -  dx ^ (Dqbar_2 . (dbar_2 F))  +  *dF

    (first variable = x block, second = y block).  Exact for polynomial F.
    """
    if F.algebra != "H" or F.n != 2:
        raise ValueError("two quaternionic variables required")
    dx = volume_block_form("H", 2, 0)
    dy = volume_block_form("H", 2, 1)
    dF = Form.zero("H", 2, 1)
    for i in range(8):
        dF = dF + Form.coordinate_differential("H", 2, i).mul_left(F.partial_flat(i))
    lhs = (
        dqbar_form("H", 2, 0).wedge(dq_form("H", 2, 0)).wedge(dy).wedge(dF)
        + dx.wedge(dqbar_form("H", 2, 1).wedge(dq_form("H", 2, 1)).wedge(dF))
    ).scale(Fraction(1, 2))
    term1 = Dqbar_form("H", 2, 0).mul_right(fueter_dbar(F, 0)).wedge(dy)
    term2 = dx.wedge(Dqbar_form("H", 2, 1).mul_right(fueter_dbar(F, 1)))
    rhs = -(term1 + term2) + dF.hodge_star()
    return lhs, rhs


# ---------------------------------------------------------------------------
# reproducing kernels
# ---------------------------------------------------------------------------

def cf_kernel(q0):
    """Components of the one-variable reproducing kernel
    G(q) = conj(q - q0) / |q - q0|^4 as pole-ring elements."""
    q0 = tuple(Fraction(c) for c in q0)
    if len(q0) != 4:
        raise ValueError("kernel pole is a quaternion point")
    comps = []
    for beta in range(4):
        exp = tuple(1 if i == beta else 0 for i in range(4))
        lin = HPoly("H", 1, {exp: HNumber.one("H")}) - \
            HPoly.constant("H", 1, q0[beta])
        if beta:
            lin = -lin
        comps.append(PoleRingElement(lin, q0, 2))
    return comps


def cf_kernel_quaternion(q0):
    """The kernel as a single quaternion-valued pole-ring element."""
    comps = cf_kernel(q0)
    acc = comps[0].num
    for beta in range(1, 4):
        acc = acc + comps[beta].num.mul_const_left(HNumber.unit("H", beta))
    return PoleRingElement(acc, tuple(Fraction(c) for c in q0), 2)


def pole_fueter_dbar(g, h=0):
    """Conjugate-Fueter derivative of a pole-ring element (left units)."""
    d = DIM[g.algebra]
    out = None
    for alpha in range(d):
        term = HNumber.unit(g.algebra, alpha) * g.partial_flat(d * h + alpha)
        out = term if out is None else out + term
    return out


def pole_fueter_dbar_right(g, h=0):
    """Right-module variant (quaternionic)."""
    d = DIM[g.algebra]
    out = None
    for alpha in range(d):
        term = g.partial_flat(d * h + alpha) * HNumber.unit(g.algebra, alpha)
        out = term if out is None else out + term
    return out


#: Scalar normalization of the two-variable kernel form: 1 / (8 pi^4).
#: Kept outside the form so its coefficients stay exact rationals.
OMEGA2_PREFACTOR = 1.0 / (8.0 * math.pi ** 4)

#: The two complex wedge monomials of the two-variable kernel form, in the
#: complex differentials (zbar1, z1, wbar1, w1, zbar2, z2, wbar2, w2).
OMEGA2_COMPLEX_MONOMIALS = (
    ("zbar1", "w1", "zbar2", "z2", "wbar2", "w2"),
    ("zbar1", "z1", "wbar1", "w1", "zbar2", "w2"),
)

_COMPLEX_DIFFERENTIALS = {
    # label -> (flat index pair, sign of the imaginary part)
    "z1": (0, 1, 1), "zbar1": (0, 1, -1),
    "w1": (2, 3, 1), "wbar1": (2, 3, -1),
    "z2": (4, 5, 1), "zbar2": (4, 5, -1),
    "w2": (6, 7, 1), "wbar2": (6, 7, -1),
}


def complex_differential(label):
    """dz = dx + i dy (or conjugate) in the span{1, i} coefficient engine."""
    re_idx, im_idx, sign = _COMPLEX_DIFFERENTIALS[label]
    i_unit = HNumber.unit("H", 1)
    re = Form.coordinate_differential("H", 2, re_idx)
    im = Form.coordinate_differential("H", 2, im_idx).mul_left(
        HPoly.constant("H", 2, i_unit if sign > 0 else -i_unit))
    return re + im


def omega2(pole):
    """The two-variable kernel 6-form (without the 1/(8 pi^4) prefactor).

    Complex-coefficient 6-form over R^8, coefficients in span{1, i} inside the
    quaternion engine, with a sixth-order pole at ``pole``:

        (wedge of the two monomials in :data:`OMEGA2_COMPLEX_MONOMIALS`) / r^6.
    """
    pole = tuple(Fraction(c) for c in pole)
    if len(pole) != 8:
        raise ValueError("pole is a point of R^8")
    acc = Form.zero("H", 2, 6)
    for mono in OMEGA2_COMPLEX_MONOMIALS:
        w = complex_differential(mono[0])
        for label in mono[1:]:
            w = w.wedge(complex_differential(label))
        acc = acc + w
    inv_r6 = PoleRingElement(HPoly.constant("H", 2, 1), pole, 3)
    return acc.mul_left(inv_r6)


def k2(pole):
    """Exterior derivative of the kernel form (same prefactor convention)."""
    return omega2(pole).exterior_d()
