"""Commutator derivatives, zero integrals, projections and gradient tests on P_x."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .errors import DegreeOverflow, DimensionMismatch, NotAGradient
from .ncpoly import I, NcPoly, VarId, commutator


def _as_var(v, modes: int) -> VarId:
    if isinstance(v, VarId):
        return v
    if isinstance(v, str):
        kind, mode = v[0], v[1:]
        return VarId(kind, int(mode) if mode else 1)
    return VarId.from_index(int(v), modes)


# -- derivatives and zero integrals -------------------------------------------

def deriv(X: NcPoly, v) -> NcPoly:
    """dX/dp_k = (1/i)[q_k, X] and dX/dq_k = (-1/i)[p_k, X]."""
    v = _as_var(v, X.modes)
    if v.kind == "p":
        return commutator(NcPoly.var(VarId("q", v.mode), X.modes), X).scale(-I)
    return commutator(NcPoly.var(VarId("p", v.mode), X.modes), X).scale(I)


def zero_integral(X: NcPoly, v) -> NcPoly:
    """The anti-derivative in v having no v-free component."""
    v = _as_var(v, X.modes)
    idx = v.index(X.modes)
    cap = X.degree_cap
    out = {}
    for mono, c in X._terms.items():
        if cap is not None and sum(mono) >= cap:
            raise DegreeOverflow(
                f"zero integral of a degree-{sum(mono)} term exceeds cap {cap}")
        m2 = list(mono)
        m2[idx] += 1
        out[tuple(m2)] = c * Fraction(1, mono[idx] + 1)
    return NcPoly._raw(out, X.modes, cap, X.truncated)


# -- subspaces -------------------------------------------------------------------

@dataclass(frozen=True)
class BasisSelector:
    """Selects P_z (polynomials in exactly the variables z) or, complemented, P_{z^c}."""

    vars: frozenset
    complemented: bool = False

    def allowed(self, modes: int) -> set:
        idx = {_as_var(v, modes).index(modes) for v in self.vars}
        if self.complemented:
            return set(range(2 * modes)) - idx
        return idx


def P(*vars) -> BasisSelector:
    return BasisSelector(frozenset(vars))


def Pbar(*vars) -> BasisSelector:
    return BasisSelector(frozenset(vars), complemented=True)


def project(X: NcPoly, sel: BasisSelector) -> NcPoly:
    allowed = sel.allowed(X.modes)
    kept = {k: c for k, c in X._terms.items()
            if all(e == 0 or i in allowed for i, e in enumerate(k))}
    return NcPoly._raw(kept, X.modes, X.degree_cap, X.truncated)


def quotient_part(X: NcPoly, sel: BasisSelector) -> NcPoly:
    return X - project(X, sel)


def project_indices(X: NcPoly, allowed) -> NcPoly:
    allowed = set(allowed)
    kept = {k: c for k, c in X._terms.items()
            if all(e == 0 or i in allowed for i, e in enumerate(k))}
    return NcPoly._raw(kept, X.modes, X.degree_cap, X.truncated)


# -- signed axes -------------------------------------------------------------------

@dataclass(frozen=True)
class AxisMap:
    """Signed permutation y_i = sign_i * x_target(i) of the generators."""

    entries: tuple  # ((VarId, +1|-1), ...)

    @property
    def modes(self) -> int:
        return len(self.entries) // 2

    def __len__(self):
        return len(self.entries)

    @classmethod
    def identity(cls, modes: int) -> "AxisMap":
        return cls(tuple((VarId.from_index(i, modes), 1) for i in range(2 * modes)))

    @classmethod
    def sigma(cls, modes: int) -> "AxisMap":
        """y = Sigma_m x = (p_1..p_m, -q_1..-q_m)."""
        return cls(tuple([(VarId("p", k), 1) for k in range(1, modes + 1)]
                         + [(VarId("q", k), -1) for k in range(1, modes + 1)]))

    def permuted(self, order) -> "AxisMap":
        return AxisMap(tuple(self.entries[i] for i in order))

    def index(self, i: int) -> int:
        return self.entries[i][0].index(self.modes)


def deriv_axis(X: NcPoly, axis: AxisMap, i: int) -> NcPoly:
    v, sign = axis.entries[i]
    d = deriv(X, v)
    return d if sign == 1 else -d


def zero_integral_axis(X: NcPoly, axis: AxisMap, i: int) -> NcPoly:
    v, sign = axis.entries[i]
    z = zero_integral(X, v)
    return z if sign == 1 else -z


@dataclass(frozen=True)
class GradVector:
    """2m candidate gradient entries (or a 2m x n matrix) on a signed axis."""

    entries: tuple
    axis: AxisMap

    def __post_init__(self):
        if len(self.entries) != len(self.axis):
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {len(self.axis)}-axis map")

    @property
    def is_matrix(self) -> bool:
        return bool(self.entries) and not isinstance(self.entries[0], NcPoly)

    def columns(self) -> list:
        if not self.is_matrix:
            return [tuple(self.entries)]
        n = len(self.entries[0])
        return [tuple(row[k] for row in self.entries) for k in range(n)]


# -- integral-series expansion ----------------------------------------------------

def expand_integral_series(f: NcPoly, axis: AxisMap):
    """Split f into projected zero integrals of its axis derivatives plus a constant.

    Summand i is the zero integral of df/dy_i along y_i restricted to
    polynomials in y_i..y_2m only; the summands and the constant add back to f.
    """
    grads = [deriv_axis(f, axis, i) for i in range(len(axis))]
    return _integral_sum(grads, axis), f.constant_term()


def _integral_sum(grads, axis: AxisMap) -> list:
    n = len(axis)
    out = []
    for i in range(n):
        allowed = {axis.index(j) for j in range(i, n)}
        out.append(project_indices(zero_integral_axis(grads[i], axis, i), allowed))
    return out


# -- gradient tests -------------------------------------------------------------------

@dataclass(frozen=True)
class CurlFailure:
    i: int
    j: int
    residual: NcPoly
    column: int = 0


@dataclass
class CurlReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "curl-free"
        return "; ".join(f"column {f.column}: d g{f.i}/d y{f.j} - d g{f.j}/d y{f.i} = {f.residual}"
                         for f in self.failures)


def curl_test(g: GradVector) -> CurlReport:
    """Pairwise cross-derivative check; matrix columns are tested independently."""
    failures = []
    for col, entries in enumerate(g.columns()):
        n = len(entries)
        for i in range(n):
            for j in range(i + 1, n):
                r = deriv_axis(entries[i], g.axis, j) - deriv_axis(entries[j], g.axis, i)
                if not r.is_zero():
                    failures.append(CurlFailure(i, j, r, col))
    return CurlReport(not failures, failures)


def potential_from_gradient(g: GradVector) -> NcPoly:
    """The potential (constant fixed to 0) of a curl-free vector."""
    if g.is_matrix:
        raise DimensionMismatch("potential_from_gradient takes a single column")
    report = curl_test(g)
    if not report.ok:
        raise NotAGradient(f"not a gradient: {report.describe()}", report)
    modes = g.axis.modes
    total = NcPoly.zero(modes)
    for s in _integral_sum(list(g.entries), g.axis):
        total = total + s
    return total


def gradient(f: NcPoly, axis: AxisMap) -> GradVector:
    return GradVector(tuple(deriv_axis(f, axis, i) for i in range(len(axis))), axis)


def axis_permutations(axis: AxisMap, limit: int | None = None):
    for k, order in enumerate(permutations(range(len(axis)))):
        if limit is not None and k >= limit:
            return
        yield order, axis.permuted(order)

