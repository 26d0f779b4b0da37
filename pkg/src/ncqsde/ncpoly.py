"""Normal-ordered polynomials in canonical position/momentum operators.

Generators are ordered q1..qm, p1..pm and satisfy [q_k, p_l] = i delta_kl
(hbar = 1). Every :class:`NcPoly` is stored in q-p order: a monomial is an
exponent tuple ``(k_q1, .., k_qm, k_p1, .., k_pm)`` standing for the ordered
product q1^k.. qm^k p1^k.. pm^k. Coefficients are exact Gaussian rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb, factorial
from typing import Iterable, Mapping

from .errors import DegreeOverflow, ModeMismatch


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}: {x!r}")


class Scalar:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError(f"non-integral complex literal {x!r}; use Scalar(Fraction, Fraction)")
            return cls(int(x.real), int(x.imag))
        return cls(x)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("Scalar division by zero")
        num = self * o.conj()
        return Scalar(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return render_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
_MINUS_I_POWERS = (Scalar(1), Scalar(0, -1), Scalar(-1), Scalar(0, 1))


def render_scalar(c: Scalar) -> str:
    """``a/b + c/d*i`` form; pure parts drop the zero half."""
    if c.im == 0:
        return str(c.re)
    im = _imag_text(abs(c.im))
    if c.re == 0:
        return ("-" if c.im < 0 else "") + im
    return f"{c.re} {'-' if c.im < 0 else '+'} {im}"


def _imag_text(mag: Fraction) -> str:
    return "i" if mag == 1 else f"{mag}*i"


@dataclass(frozen=True, order=True)
class VarId:
    kind: str  # "q" or "p"
    mode: int

    def __post_init__(self):
        if self.kind not in ("q", "p"):
            raise ValueError(f"kind must be 'q' or 'p', got {self.kind!r}")
        if self.mode < 1:
            raise ValueError("modes are numbered from 1")

    def index(self, modes: int) -> int:
        if self.mode > modes:
            raise ModeMismatch(f"{self} does not exist with {modes} mode(s)")
        return self.mode - 1 if self.kind == "q" else modes + self.mode - 1

    @classmethod
    def from_index(cls, index: int, modes: int) -> "VarId":
        if index < modes:
            return cls("q", index + 1)
        return cls("p", index - modes + 1)

    def name(self, modes: int) -> str:
        return self.kind if modes == 1 else f"{self.kind}{self.mode}"

    def __str__(self):
        return f"{self.kind}{self.mode}"


@dataclass(frozen=True)
class Word:
    """A coefficient times an arbitrary-order product of generators."""

    coefficient: Scalar
    factors: tuple

    def __init__(self, coefficient=1, factors: Iterable[VarId] = ()):
        object.__setattr__(self, "coefficient", Scalar.coerce(coefficient))
        object.__setattr__(self, "factors", tuple(factors))


def mono_degree(mono: tuple) -> int:
    return sum(mono)


def canonical_key(mono: tuple):
    """Sort key for rendering and iteration.

    Higher degree first; within a degree, pure powers before mixed products,
    then lexicographic on the exponent vector (largest first).
    """
    return (-sum(mono), sum(1 for e in mono if e), tuple(-e for e in mono))


@lru_cache(maxsize=None)
def _reorder(b: int, c: int) -> tuple:
    """p^b q^c = sum_k k! C(b,k) C(c,k) (-i)^k q^(c-k) p^(b-k) within one mode."""
    return tuple(
        (k, _MINUS_I_POWERS[k % 4] * (factorial(k) * comb(b, k) * comb(c, k)))
        for k in range(min(b, c) + 1)
    )


@lru_cache(maxsize=1 << 17)
def mono_product(a: tuple, b: tuple) -> tuple:
    """Normal-ordered expansion of the product of two q-p ordered monomials."""
    m = len(a) // 2
    base = [x + y for x, y in zip(a, b)]
    clash = [j for j in range(m) if a[m + j] and b[j]]
    if not clash:
        return ((tuple(base), ONE),)
    out = []
    for choice in cartesian(*(_reorder(a[m + j], b[j]) for j in clash)):
        mono = list(base)
        coeff = ONE
        for j, (k, c) in zip(clash, choice):
            mono[j] -= k
            mono[m + j] -= k
            coeff = coeff * c
        out.append((tuple(mono), coeff))
    return tuple(out)


def _merge_caps(a: "NcPoly", b: "NcPoly"):
    ca, cb = a.degree_cap, b.degree_cap
    truncated = a.truncated or b.truncated
    if ca is None:
        return cb, truncated
    if cb is None:
        return ca, truncated
    if ca != cb:
        return min(ca, cb), True
    return ca, truncated


class NcPoly:
    """Normal-ordered noncommutative polynomial; immutable."""

    __slots__ = ("_terms", "modes", "degree_cap", "truncated")

    def __init__(self, terms: Mapping | None = None, modes: int = 1, degree_cap: int | None = None,
                 truncated: bool = False):
        if modes < 1:
            raise ValueError("modes must be >= 1")
        clean: dict = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != 2 * modes:
                raise ModeMismatch(f"monomial {mono} has wrong length for {modes} mode(s)")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if degree_cap is not None and sum(mono) > degree_cap:
                raise DegreeOverflow(f"monomial of degree {sum(mono)} exceeds cap {degree_cap}")
            clean[mono] = clean.get(mono, ZERO) + Scalar.coerce(c)
        self._set(
            {k: v for k, v in clean.items() if v}, modes, degree_cap, truncated)

    def _set(self, terms, modes, cap, truncated):
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "degree_cap", cap)
        object.__setattr__(self, "truncated", truncated)

    def __setattr__(self, name, value):
        raise AttributeError("NcPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict, modes: int, cap=None, truncated=False) -> "NcPoly":
        """Trusted constructor: drops zeros and enforces the cap by truncation."""
        if cap is not None:
            kept = {k: v for k, v in terms.items() if v and sum(k) <= cap}
            if len(kept) != sum(1 for v in terms.values() if v):
                truncated = True
        else:
            kept = {k: v for k, v in terms.items() if v}
        obj = cls.__new__(cls)
        obj._set(kept, modes, cap, truncated)
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, modes: int = 1, degree_cap=None) -> "NcPoly":
        return cls._raw({}, modes, degree_cap)

    @classmethod
    def const(cls, c, modes: int = 1, degree_cap=None) -> "NcPoly":
        return cls._raw({(0,) * (2 * modes): Scalar.coerce(c)}, modes, degree_cap)

    @classmethod
    def var(cls, v: VarId, modes: int = 1, degree_cap=None) -> "NcPoly":
        mono = [0] * (2 * modes)
        mono[v.index(modes)] = 1
        return cls._raw({tuple(mono): ONE}, modes, degree_cap)

    @classmethod
    def monomial(cls, mono, coeff=1, modes: int | None = None) -> "NcPoly":
        mono = tuple(mono)
        return cls({mono: coeff}, modes or len(mono) // 2)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return {k: self._terms[k] for k in sorted(self._terms, key=canonical_key)}

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: canonical_key(kv[0]))

    def monomials(self):
        return sorted(self._terms, key=canonical_key)

    def coefficient(self, mono) -> Scalar:
        return self._terms.get(tuple(mono), ZERO)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * (2 * self.modes), ZERO)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * (2 * self.modes)
        return all(k == zero for k in self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def uses(self, index: int) -> bool:
        return any(k[index] for k in self._terms)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "NcPoly":
        if isinstance(other, NcPoly):
            if other.modes != self.modes:
                raise ModeMismatch(f"{self.modes} vs {other.modes} modes")
            return other
        return NcPoly.const(Scalar.coerce(other), self.modes)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        cap, trunc = _merge_caps(self, o)
        out = dict(self._terms)
        for k, v in o._terms.items():
            out[k] = out.get(k, ZERO) + v
        return NcPoly._raw(out, self.modes, cap, trunc)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({k: -v for k, v in self._terms.items()}, self.modes,
                           self.degree_cap, self.truncated)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NcPoly":
        c = Scalar.coerce(c)
        if not c:
            return NcPoly._raw({}, self.modes, self.degree_cap, self.truncated)
        return NcPoly._raw({k: v * c for k, v in self._terms.items()}, self.modes,
                           self.degree_cap, self.truncated)

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        o = self._coerce(other)
        cap, trunc = _merge_caps(self, o)
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in o._terms.items():
                if cap is not None and sum(ma) + sum(mb) - 2 * min(sum(ma), sum(mb)) > cap:
                    # even maximal contraction cannot bring this product under the cap
                    trunc = True
                    continue
                c = ca * cb
                for mono, k in mono_product(ma, mb):
                    out[mono] = out.get(mono, ZERO) + c * k
        return NcPoly._raw(out, self.modes, cap, trunc)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        # scalar division only; the algebra has no operator-valued inverse
        if isinstance(other, NcPoly):
            return NotImplemented
        return self.scale(ONE / Scalar.coerce(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = NcPoly._raw({(0,) * (2 * self.modes): ONE}, self.modes, self.degree_cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def adjoint(self) -> "NcPoly":
        m = self.modes
        zeros = (0,) * m
        out: dict = {}
        for mono, c in self._terms.items():
            cc = c.conj()
            # (q^a p^b)* = p^b q^a, re-normal-ordered
            for m2, k in mono_product(zeros + mono[m:], mono[:m] + zeros):
                out[m2] = out.get(m2, ZERO) + cc * k
        return NcPoly._raw(out, m, self.degree_cap, self.truncated)

    def herm(self) -> "NcPoly":
        return (self + self.adjoint()).scale(Fraction(1, 2))

    def antiherm(self) -> "NcPoly":
        return (self - self.adjoint()).scale(Fraction(1, 2))

    def is_self_adjoint(self) -> bool:
        return self.adjoint() == self

    def truncate(self, degree: int) -> "NcPoly":
        """Drop terms above ``degree``; the result carries no cap."""
        return NcPoly._raw({k: v for k, v in self._terms.items() if sum(k) <= degree},
                           self.modes)

    def with_cap(self, degree_cap: int | None) -> "NcPoly":
        return NcPoly(self._terms, self.modes, degree_cap)

    def map_coefficients(self, fn) -> "NcPoly":
        return NcPoly._raw({k: Scalar.coerce(fn(v)) for k, v in self._terms.items()},
                           self.modes, self.degree_cap, self.truncated)

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self._terms == other._terms
        try:
            return self._terms == NcPoly.const(Scalar.coerce(other), self.modes)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        return render(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NcPoly({render(self)!r}, modes={self.modes})"


def render_monomial(mono: tuple, modes: int) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if e:
            name = VarId.from_index(idx, modes).name(modes)
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _render_term(mono_text: str, c: Scalar) -> tuple[str, str]:
    """Return (sign, body) for one term; sign is '+' or '-'."""
    if not mono_text:
        if c.im == 0:
            return ("-" if c.re < 0 else "+"), str(abs(c.re))
        if c.re == 0:
            return ("-" if c.im < 0 else "+"), _imag_text(abs(c.im))
        return ("-" if c.re < 0 else "+"), (
            f"{abs(c.re)} {'-' if c.im < 0 else '+'} {_imag_text(abs(c.im))}")
    if c.im == 0:
        mag = abs(c.re)
        return ("-" if c.re < 0 else "+"), (mono_text if mag == 1 else f"{mag}*{mono_text}")
    if c.re == 0:
        return ("-" if c.im < 0 else "+"), f"{_imag_text(abs(c.im))}*{mono_text}"
    return "+", f"({render_scalar(c)})*{mono_text}"


def render(poly: NcPoly) -> str:
    """Canonical text: the bit-exact golden format used by the CLI and JSON."""
    if poly.is_zero():
        return "0"
    out = []
    for mono, c in poly.items():
        sign, body = _render_term(render_monomial(mono, poly.modes), c)
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- generators ---------------------------------------------------------------

def q(k: int = 1, modes: int = 1) -> NcPoly:
    return NcPoly.var(VarId("q", k), modes)


def p(k: int = 1, modes: int = 1) -> NcPoly:
    return NcPoly.var(VarId("p", k), modes)


def generators(modes: int) -> tuple:
    """The vector x = (q1..qm, p1..pm)."""
    return tuple(NcPoly.var(VarId.from_index(i, modes), modes) for i in range(2 * modes))


def const(c, modes: int = 1) -> NcPoly:
    return NcPoly.const(c, modes)


# -- normal ordering by rewriting -----------------------------------------------

def normal_order(word: Word, modes: int | None = None, degree_cap: int | None = None,
                 rng=None) -> NcPoly:
    """Rewrite a word into q-p order.

    Applies p_j q_j -> q_j p_j - i and free transposition of generators from
    different modes (or of equal kind) until no adjacent pair is out of
    order. ``rng`` (a ``random.Random``) picks the rewrite site at random;
    the default always rewrites the leftmost site.
    """
    if modes is None:
        modes = max((v.mode for v in word.factors), default=1)
    seq = tuple(v.index(modes) for v in word.factors)
    if degree_cap is not None and len(seq) > degree_cap:
        raise DegreeOverflow(f"word of degree {len(seq)} exceeds cap {degree_cap}")
    pending = {seq: word.coefficient}
    done: dict = {}
    while pending:
        if rng is None:
            s, c = pending.popitem()
        else:
            s = rng.choice(list(pending))
            c = pending.pop(s)
        if not c:
            continue
        sites = [k for k in range(len(s) - 1) if s[k] > s[k + 1]]
        if not sites:
            mono = [0] * (2 * modes)
            for idx in s:
                mono[idx] += 1
            mono = tuple(mono)
            done[mono] = done.get(mono, ZERO) + c
            continue
        k = sites[0] if rng is None else rng.choice(sites)
        a, b = s[k], s[k + 1]
        swapped = s[:k] + (b, a) + s[k + 2:]
        pending[swapped] = pending.get(swapped, ZERO) + c
        if a == b + modes:
            shorter = s[:k] + s[k + 2:]
            pending[shorter] = pending.get(shorter, ZERO) + c * _MINUS_I_POWERS[1]
    return NcPoly._raw(done, modes, degree_cap)


def words_to_poly(words: Iterable[Word], modes: int, rng=None) -> NcPoly:
    total = NcPoly.zero(modes)
    for w in words:
        total = total + normal_order(w, modes, rng=rng)
    return total


# -- functional API -------------------------------------------------------------

def add(a: NcPoly, b: NcPoly) -> NcPoly:
    return a + b


def scale(c, a: NcPoly) -> NcPoly:
    return a.scale(c)


def mul(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b


def adjoint(a: NcPoly) -> NcPoly:
    return a.adjoint()


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def is_self_adjoint(a: NcPoly) -> bool:
    return a.is_self_adjoint()


def herm(a: NcPoly) -> NcPoly:
    return a.herm()


def antiherm(a: NcPoly) -> NcPoly:
    return a.antiherm()
