"""Exact polynomial arithmetic.

``IntPoly`` and ``RatPoly`` are dense univariate polynomials (ascending
coefficients, no trailing zeros). ``LaurentPoly2`` is a sparse Laurent
polynomial in ``v`` and ``z`` used for HOMFLY values.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "IntPoly",
    "RatPoly",
    "LaurentPoly2",
    "reverse_with_sign",
    "interpolate",
    "hstar_from_counts",
    "series_coefficients",
    "substitute_v2",
    "parse_univariate",
    "parse_laurent",
]


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _fmt_coeff_term(c, var: str, k: int) -> tuple[str, str]:
    """Return ``(sign, body)`` for one univariate term."""
    sign = "-" if c < 0 else "+"
    mag = -c if c < 0 else c
    mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
    if k == 0:
        body = str(mag)
    elif mag == 1:
        body = mono
    else:
        body = f"{mag}*{mono}"
    return sign, body


class _Dense:
    """Shared behaviour of the dense univariate types."""

    __slots__ = ("coeffs",)
    _coerce = int
    var = "x"

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([self._coerce(c) for c in coeffs])

    # -- basic protocol ------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, _Dense):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self):
        return self.render()

    def render(self, var: str | None = None) -> str:
        var = var or self.var
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign, body = _fmt_coeff_term(c, var, k)
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def terms(self) -> list[tuple[str, int]]:
        """Machine form: ``[(coefficient as string, exponent), ...]``."""
        return [(str(c), k) for k, c in enumerate(self.coeffs) if c != 0]

    @classmethod
    def from_terms(cls, terms):
        out: dict[int, object] = {}
        for c, k in terms:
            out[int(k)] = out.get(int(k), 0) + cls._coerce(Fraction(c) if cls is RatPoly else int(c))
        if not out:
            return cls()
        top = max(out)
        return cls([out.get(k, 0) for k in range(top + 1)])

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _Dense):
            return type(self)(other.coeffs)
        if isinstance(other, (int, Fraction)):
            return type(self)([other])
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return type(self)([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return type(self)()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = type(self)([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return type(self)([c * a for a in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


class IntPoly(_Dense):
    """Dense polynomial with integer coefficients in ``x``."""

    __slots__ = ()
    _coerce = staticmethod(int)


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational, str)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class RatPoly(_Dense):
    """Dense polynomial with rational coefficients; the Ehrhart polynomial lives here (variable ``s``)."""

    __slots__ = ()
    _coerce = staticmethod(_to_fraction)
    var = "s"

    def to_intpoly(self) -> IntPoly:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError(f"{self} has non-integer coefficients")
        return IntPoly(int(c) for c in self.coeffs)


X = IntPoly([0, 1])
ONE_MINUS_X = IntPoly([1, -1])


# ---------------------------------------------------------------------------
# Laurent polynomials in v, z


class LaurentPoly2:
    """Sparse map ``(v_exp, z_exp) -> int``; zero coefficients are never stored."""

    __slots__ = ("terms_",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = int(c)
        self.terms_ = clean

    @classmethod
    def const(cls, c: int = 1):
        return cls({(0, 0): c})

    @classmethod
    def mono(cls, v_exp: int, z_exp: int = 0, c: int = 1):
        return cls({(v_exp, z_exp): c})

    def items(self):
        return self.terms_.items()

    def __eq__(self, other):
        if isinstance(other, LaurentPoly2):
            return self.terms_ == other.terms_
        if isinstance(other, int):
            return self.terms_ == LaurentPoly2.const(other).terms_
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms_.items()))

    def __bool__(self):
        return bool(self.terms_)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        out = dict(self.terms_)
        for k, c in other.terms_.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self.terms_.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: c * other for k, c in self.terms_.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms_.items():
            for (a2, b2), c2 in other.terms_.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = LaurentPoly2.const(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: int):
        return self * c

    def shift(self, dv: int, dz: int = 0, c: int = 1) -> LaurentPoly2:
        """``c * v^dv * z^dz`` times this polynomial."""
        out = LaurentPoly2()
        if c == 0:
            return out
        out.terms_ = {(a + dv, b + dz): c * k for (a, b), k in self.terms_.items()}
        return out

    def max_z(self):
        return max((b for _, b in self.terms_), default=None)

    def z_coefficient(self, z_exp: int) -> dict[int, int]:
        """Coefficient of ``z^z_exp`` as a map ``v_exp -> c``."""
        return {a: c for (a, b), c in self.terms_.items() if b == z_exp}

    def coefficient_of_z(self, z_exp: int) -> LaurentPoly2:
        return LaurentPoly2({(a, 0): c for a, c in self.z_coefficient(z_exp).items()})

    def mirror(self) -> LaurentPoly2:
        """Substitute ``v -> -1/v``."""
        return LaurentPoly2({(-a, b): (-c if a % 2 else c) for (a, b), c in self.terms_.items()})

    def __repr__(self):
        return f"LaurentPoly2({dict(sorted(self.terms_.items(), key=lambda kv: (kv[0][1], kv[0][0])))!r})"

    @staticmethod
    def _mono(a: int, b: int) -> str:
        parts = []
        if a:
            parts.append("v" if a == 1 else f"v^{a}")
        if b:
            parts.append("z" if b == 1 else f"z^{b}")
        return "*".join(parts)

    @classmethod
    def _join(cls, items) -> str:
        out = []
        for (a, b), c in items:
            mono = cls._mono(a, b)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out) if out else "0"

    def __str__(self):
        items = sorted(self.terms_.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return self._join(items)

    def grouped(self) -> str:
        """Render grouped by powers of ``z``, highest first: ``v*z + (v - v^3)*z^-1``."""
        if not self.terms_:
            return "0"
        z_exps = sorted({b for _, b in self.terms_}, reverse=True)
        chunks = []
        for b in z_exps:
            inner = sorted(((a, 0), c) for (a, bb), c in self.terms_.items() if bb == b)
            zpart = self._mono(0, b)
            if len(inner) == 1 and zpart:
                (a, _), c = inner[0]
                chunk = self._join([((a, b), c)])
            elif zpart:
                chunk = f"({self._join(inner)})*{zpart}"
            else:
                chunk = self._join(inner)
            chunks.append(chunk)
        text = chunks[0]
        for chunk in chunks[1:]:
            if chunk.startswith("-"):
                text += " - " + chunk[1:]
            else:
                text += " + " + chunk
        return text

    def terms(self) -> list[tuple[str, list[int]]]:
        items = sorted(self.terms_.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return [(str(c), [a, b]) for (a, b), c in items]

    @classmethod
    def from_terms(cls, terms):
        out: dict[tuple[int, int], int] = {}
        for c, (a, b) in terms:
            out[(int(a), int(b))] = out.get((int(a), int(b)), 0) + int(c)
        return cls(out)


DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})


# ---------------------------------------------------------------------------
# operations


def reverse_with_sign(p: IntPoly, n: int, sign: int) -> IntPoly:
    """``sign * x^n * p(1/x)``."""
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds {n}")
    return IntPoly([sign * p[n - k] for k in range(n + 1)])


def interpolate(points: Sequence[tuple[int, int]]) -> RatPoly:
    """Exact Lagrange interpolation over the rationals."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa")
    result = RatPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = RatPoly([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * RatPoly([-xj, 1])
                denom *= xi - xj
        result = result + basis.scale(Fraction(yi) / denom)
    return result


def hstar_from_counts(counts: Sequence[int], d: int) -> IntPoly:
    """Numerator of ``sum_s counts[s] x^s`` over ``(1-x)^(d+1)``, coefficients 0..d."""
    if len(counts) != d + 1:
        raise ValueError(f"need {d + 1} counts, got {len(counts)}")
    h = []
    for k in range(d + 1):
        hk = sum((-1) ** j * comb(d + 1, j) * counts[k - j] for j in range(k + 1))
        if isinstance(hk, Fraction):
            if hk.denominator != 1:
                raise ValueError(f"non-integer h*-coefficient {hk}")
            hk = int(hk)
        h.append(hk)
    return IntPoly(h)


def series_coefficients(numerator: IntPoly, power: int, order: int) -> list[int]:
    """Coefficients 0..order of ``numerator / (1-x)^power``."""
    # 1/(1-x)^p = sum_k C(k+p-1, p-1) x^k
    out = []
    for k in range(order + 1):
        if power == 0:
            out.append(numerator[k])
            continue
        out.append(sum(numerator[j] * comb(k - j + power - 1, power - 1) for j in range(min(k, numerator.degree) + 1)))
    return out


def substitute_v2(p: IntPoly, shift: int) -> LaurentPoly2:
    """``v^shift * p(v^2)`` as a z-free Laurent polynomial."""
    return LaurentPoly2({(2 * k + shift, 0): c for k, c in enumerate(p.coeffs) if c})


# ---------------------------------------------------------------------------
# parsing of the canonical renderings

def _split_terms(text: str):
    text = text.replace(" ", "")
    if not text or text == "0":
        return []
    out = []
    i = 0
    sign = 1
    buf = ""
    while i < len(text):
        ch = text[i]
        if ch in "+-" and (i == 0 or text[i - 1] not in "^"):
            if buf:
                out.append((sign, buf))
                buf = ""
            sign = -1 if ch == "-" else 1
        else:
            buf += ch
        i += 1
    if buf:
        out.append((sign, buf))
    return out


def parse_univariate(text: str, var: str = "x", rational: bool = False):
    """Inverse of the canonical rendering ``c0 + c1*x + c2*x^2``."""
    cls = RatPoly if rational else IntPoly
    acc: dict[int, object] = {}
    for sign, body in _split_terms(text):
        coeff, exp = Fraction(1), 0
        for factor in body.split("*"):
            if factor == var:
                exp += 1
            elif factor.startswith(var + "^"):
                exp += int(factor[len(var) + 1:])
            else:
                coeff *= Fraction(factor)
        acc[exp] = acc.get(exp, 0) + sign * coeff
    if not acc:
        return cls()
    values = [acc.get(k, 0) for k in range(max(acc) + 1)]
    if not rational:
        if any(Fraction(c).denominator != 1 for c in values):
            raise ValueError(f"non-integer coefficient in {text!r}")
        values = [int(c) for c in values]
    return cls(values)


def parse_laurent(text: str) -> LaurentPoly2:
    """Parse the flat rendering ``c*v^a*z^b`` terms (the grouped form is not accepted)."""
    acc: dict[tuple[int, int], int] = {}
    for sign, body in _split_terms(text):
        coeff, a, b = 1, 0, 0
        for factor in body.split("*"):
            if factor == "v":
                a += 1
            elif factor.startswith("v^"):
                a += int(factor[2:])
            elif factor == "z":
                b += 1
            elif factor.startswith("z^"):
                b += int(factor[2:])
            else:
                coeff *= int(factor)
        acc[(a, b)] = acc.get((a, b), 0) + sign * coeff
    return LaurentPoly2(acc)
