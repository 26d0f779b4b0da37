"""Physical-realizability checking and (S, L, H) synthesis for polynomial QSDEs.

A model dx = f dt + g dA* + g^# dA (g^# the entrywise adjoint) is realizable
when there are a self-adjoint H, couplings L and a constant unitary S with

    g = [x, L^T] S^#
    f = -i[x, H] + herm((L^dagger S g^T)^T)

The checker decides this with curl tests on the symplectic axis
y = Sigma_m x and, on success, builds (S, L, H) and replays them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import AxisMap, CurlReport, GradVector, curl_test, potential_from_gradient
from .errors import (DimensionMismatch, InternalContractViolation, InvalidS, NotConservative,
                     NotHermitianizable)
from .ncpoly import I, NcPoly, ONE, Scalar, ZERO, commutator, generators

F_NOT_SELF_ADJOINT = "f_not_self_adjoint"
G_NOT_CONSERVATIVE = "g_not_conservative"
FC_NOT_CONSERVATIVE = "fC_not_conservative"


# -- scalar matrices ------------------------------------------------------------------

def _smat(rows) -> tuple:
    return tuple(tuple(Scalar.coerce(c) for c in row) for row in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def sigma(m: int) -> tuple:
    """Sigma_m = [[0, I_m], [-I_m, 0]]."""
    if m < 1:
        raise ValueError("m >= 1")
    out = [[ZERO] * (2 * m) for _ in range(2 * m)]
    for k in range(m):
        out[k][m + k] = ONE
        out[m + k][k] = -ONE
    return tuple(tuple(r) for r in out)


def matmul(a, b) -> tuple:
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO)
                       for j in range(len(b[0]))) for i in range(len(a)))


def dagger(a) -> tuple:
    return tuple(tuple(a[j][i].conj() for j in range(len(a))) for i in range(len(a[0])))


def is_unitary(S) -> bool:
    n = len(S)
    if any(len(row) != n for row in S):
        return False
    eye = identity(n)
    return matmul(S, dagger(S)) == eye and matmul(dagger(S), S) == eye


# -- data types -------------------------------------------------------------------------

@dataclass(frozen=True)
class QsdeModel:
    modes: int
    channels: int
    f: tuple
    g: tuple
    S: tuple = None

    def __post_init__(self):
        m, n = self.modes, self.channels
        f = tuple(self.f)
        g = tuple(tuple(row) for row in self.g)
        S = identity(n) if self.S is None else _smat(self.S)
        if len(f) != 2 * m:
            raise DimensionMismatch(f"f needs {2 * m} entries, got {len(f)}")
        if len(g) != 2 * m or any(len(row) != n for row in g):
            raise DimensionMismatch(f"g must be {2 * m}x{n}")
        if len(S) != n or any(len(row) != n for row in S):
            raise DimensionMismatch(f"S must be {n}x{n}")
        for e in f + tuple(c for row in g for c in row):
            if e.modes != m:
                raise DimensionMismatch(f"entry {e} has {e.modes} mode(s), model has {m}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "S", S)

    def column(self, k: int) -> tuple:
        return tuple(row[k] for row in self.g)


@dataclass(frozen=True)
class Realization:
    H: NcPoly
    L: tuple
    S: tuple
    C_used: tuple

    @property
    def modes(self) -> int:
        return self.H.modes


@dataclass
class RealizabilityReport:
    verdict: str
    stage: str | None = None
    details: object = None
    realization: Realization | None = None
    f_L: tuple | None = None
    f_C: tuple | None = None

    @property
    def realizable(self) -> bool:
        return self.verdict == "realizable"


@dataclass(frozen=True)
class LinearModel:
    """Single-mode linear QSDE dx = A x dt + B dA* + B^# dA with B = i Sigma C."""

    A: tuple
    c1: Scalar
    c2: Scalar

    def __post_init__(self):
        A = tuple(tuple(Fraction(a) for a in row) for row in self.A)
        if len(A) != 2 or any(len(r) != 2 for r in A):
            raise DimensionMismatch("A must be 2x2")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c1", Scalar.coerce(self.c1))
        object.__setattr__(self, "c2", Scalar.coerce(self.c2))

    @property
    def B(self) -> tuple:
        return (I * self.c2, -(I * self.c1))

    @property
    def gamma(self) -> Fraction:
        return -2 * (self.c2.conj() * self.c1).im

    def model(self) -> QsdeModel:
        x = generators(1)
        f = tuple(x[0].scale(row[0]) + x[1].scale(row[1]) for row in self.A)
        g = tuple((NcPoly.const(b),) for b in self.B)
        return QsdeModel(1, 1, f, g, identity(1))


# -- commutator-conservative mappings ----------------------------------------------------

def _columns(j) -> list:
    j = tuple(j)
    if j and not isinstance(j[0], NcPoly):
        n = len(j[0])
        return [tuple(row[k] for row in j) for k in range(n)]
    return [j]


def is_commutator_conservative(j) -> CurlReport:
    """Curl test on y = Sigma_m x; holds iff j = -i[x, J^T] for some J."""
    j = tuple(j)
    m = len(j) // 2
    return curl_test(GradVector(j, AxisMap.sigma(m)))


def bracket_x(J: NcPoly) -> tuple:
    """-i[x, J] entrywise."""
    return tuple(commutator(xi, J).scale(-I) for xi in generators(J.modes))


def potential_operator(j) -> NcPoly:
    """J with j = -i[x, J], integration constant 0."""
    j = tuple(j)
    report = is_commutator_conservative(j)
    if not report.ok:
        raise NotConservative(f"not commutator-conservative: {report.describe()}", report)
    J = potential_from_gradient(GradVector(j, AxisMap.sigma(len(j) // 2)))
    if bracket_x(J) != j:
        raise InternalContractViolation("potential does not reproduce -i[x, J]")
    return J


def hermitianize_potential(J: NcPoly, strict: bool = True) -> NcPoly:
    """herm(J). With strict=True a non-constant anti-Hermitian part is an error,
    since then -i[x, herm(J)] differs from -i[x, J]."""
    ah = J.antiherm()
    if strict and not ah.is_constant():
        raise NotHermitianizable(f"anti-Hermitian part {ah} is not constant")
    return J.herm()


def normalize_constant(H: NcPoly) -> NcPoly:
    """Zero the real part of the constant term (a physically irrelevant shift)."""
    c = H.constant_term()
    if c.re == 0:
        return H
    return H - Scalar(c.re)


# -- coupling and drift pieces ----------------------------------------------------------------

def compute_Z_L(g, S=None, C=None):
    """Column potentials Z and couplings L = -i S (Z + C); checks g = [x, L^T] S^#."""
    g = tuple(tuple(row) for row in g)
    if not g:
        raise DimensionMismatch("empty g")
    n = len(g[0])
    m = len(g) // 2
    S = identity(n) if S is None else _smat(S)
    C = (ZERO,) * n if C is None else tuple(Scalar.coerce(c) for c in C)
    if len(S) != n or len(C) != n:
        raise DimensionMismatch("S, C must match the channel count")
    Z = []
    for k, col in enumerate(_columns(g)):
        report = is_commutator_conservative(col)
        if not report.ok:
            raise NotConservative(f"g column {k}: {report.describe()}", report)
        Z.append(potential_operator(col))
    Z = tuple(Z)
    L = tuple(sum((NcPoly.const(S[l][k], m) * (Z[k] + C[k]) for k in range(n)),
                  NcPoly.zero(m)).scale(-I) for l in range(n))
    if couplings_to_g(L, S) != g:
        raise InternalContractViolation("g != [x, L^T] S^# after constructing L")
    return Z, L


def couplings_to_g(L, S) -> tuple:
    """[x, L^T] S^#, a 2m x n matrix."""
    n = len(L)
    m = L[0].modes
    x = generators(m)
    br = [[commutator(xi, L[l]) for l in range(n)] for xi in x]
    return tuple(tuple(sum((br[i][l].scale(S[l][k].conj()) for l in range(n)), NcPoly.zero(m))
                       for k in range(n)) for i in range(2 * m))


def compute_fL(g, L, S=None) -> tuple:
    """f_L = herm((L^dagger S g^T)^T), entrywise."""
    g = tuple(tuple(row) for row in g)
    n = len(L)
    S = identity(n) if S is None else _smat(S)
    if any(len(row) != n for row in g) or len(S) != n:
        raise DimensionMismatch("g, L, S dimensions disagree")
    m = L[0].modes if L else g[0][0].modes
    out = []
    for row in g:
        acc = NcPoly.zero(m)
        for l in range(n):
            Sg = sum((row[k].scale(S[l][k]) for k in range(n)), NcPoly.zero(m))
            acc = acc + L[l].adjoint() * Sg
        out.append(acc.herm())
    return tuple(out)


def reconstruct_fg(r: Realization):
    """(f, g) generated by a realization."""
    m = r.modes
    g = couplings_to_g(r.L, r.S)
    fL = compute_fL(g, r.L, r.S)
    f = tuple(a + b for a, b in zip(bracket_x(r.H), fL))
    assert len(f) == 2 * m
    return f, g


# -- the checker -------------------------------------------------------------------------------

def check_realizable(model: QsdeModel, C=None) -> RealizabilityReport:
    if not is_unitary(model.S):
        raise InvalidS("S is not unitary")
    bad_f = [i for i, fi in enumerate(model.f) if not fi.is_self_adjoint()]
    if bad_f:
        return RealizabilityReport("not_realizable", F_NOT_SELF_ADJOINT,
                                   {"entries": bad_f, "antiherm": [model.f[i].antiherm() for i in bad_f]})
    g_report = is_commutator_conservative(model.g)
    if not g_report.ok:
        return RealizabilityReport("not_realizable", G_NOT_CONSERVATIVE, g_report)
    _, L = compute_Z_L(model.g, model.S, C)
    fL = compute_fL(model.g, L, model.S)
    fC = tuple(a - b for a, b in zip(model.f, fL))
    c_report = is_commutator_conservative(fC)
    if not c_report.ok:
        return RealizabilityReport("not_realizable", FC_NOT_CONSERVATIVE, c_report, f_L=fL, f_C=fC)
    H = normalize_constant(hermitianize_potential(potential_operator(fC)))
    C_used = (ZERO,) * model.channels if C is None else tuple(Scalar.coerce(c) for c in C)
    r = Realization(H, L, model.S, C_used)
    f2, g2 = reconstruct_fg(r)
    if f2 != model.f or g2 != model.g:
        raise InternalContractViolation("realization does not reproduce (f, g)")
    return RealizabilityReport("realizable", None, c_report, r, f_L=fL, f_C=fC)


# -- commutation preservation ------------------------------------------------------------------

@dataclass
class PreservationReport:
    A1: tuple
    A2: tuple
    A3: tuple
    B1: tuple  # one 2m x 2m matrix per channel
    B2: tuple
    split: bool  # False when f_L is undefined and A1 holds the whole drift bracket
    dt_total: tuple = field(init=False)

    def __post_init__(self):
        self.dt_total = _madd(_madd(self.A1, self.A2), self.A3)

    @property
    def ok(self) -> bool:
        return (_mzero(self.dt_total) and all(_mzero(b) for b in self.B1)
                and all(_mzero(b) for b in self.B2))

    def residuals(self) -> dict:
        out = {}
        for name, mats in (("dt", [self.dt_total]), ("B1", self.B1), ("B2", self.B2)):
            for k, mat in enumerate(mats):
                for a, row in enumerate(mat):
                    for b, e in enumerate(row):
                        if not e.is_zero():
                            out[(name, k, a, b)] = e
        return out


def _madd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mzero(a) -> bool:
    return all(e.is_zero() for row in a for e in row)


def _drift_bracket(h, x) -> tuple:
    """[h, x^T] + [x, h^T]: entry (a, b) = [h_a, x_b] + [x_a, h_b]."""
    n = len(x)
    return tuple(tuple(commutator(h[a], x[b]) + commutator(x[a], h[b]) for b in range(n))
                 for a in range(n))


def commutation_preservation(model: QsdeModel, C=None) -> PreservationReport:
    """Ito expansion of d[x, x^T] under the vacuum table dA_k dA_l* = delta_kl dt."""
    m, n = model.modes, model.channels
    x = generators(m)
    g = model.g
    gs = tuple(tuple(e.adjoint() for e in row) for row in g)
    split = bool(is_commutator_conservative(g).ok)
    if split:
        _, L = compute_Z_L(g, model.S, C)
        fL = compute_fL(g, L, model.S)
        fC = tuple(a - b for a, b in zip(model.f, fL))
        A1, A2 = _drift_bracket(fC, x), _drift_bracket(fL, x)
    else:
        A1 = _drift_bracket(model.f, x)
        A2 = tuple(tuple(NcPoly.zero(m) for _ in range(2 * m)) for _ in range(2 * m))
    A3 = tuple(tuple(sum((gs[a][k] * g[b][k] - gs[b][k] * g[a][k] for k in range(n)), NcPoly.zero(m))
                     for b in range(2 * m)) for a in range(2 * m))
    B1 = tuple(_drift_bracket(tuple(row[k] for row in g), x) for k in range(n))
    B2 = tuple(_drift_bracket(tuple(row[k] for row in gs), x) for k in range(n))
    return PreservationReport(A1, A2, A3, B1, B2, split)


# -- linear systems ----------------------------------------------------------------------------

def linear_matrix_condition(lm: LinearModel) -> tuple:
    """i(A Sigma + Sigma A^T) + [B^#, B^T], where [B^#, B^T]_ab = B_a^# B_b - B_b^# B_a."""
    A = _smat(lm.A)
    Sg = sigma(1)
    At = tuple(zip(*A))
    M = _madd(matmul(A, Sg), matmul(Sg, At))
    B = lm.B
    return tuple(tuple(I * M[a][b] + B[a].conj() * B[b] - B[b].conj() * B[a] for b in range(2))
                 for a in range(2))


def quadratic_hamiltonian(lm: LinearModel) -> NcPoly:
    """1/4 x^T (Sigma^T A + A^T Sigma) x, normal-ordered."""
    A = _smat(lm.A)
    Sg = sigma(1)
    St = tuple(zip(*Sg))
    At = tuple(zip(*A))
    M = _madd(matmul(St, A), matmul(At, Sg))
    x = generators(1)
    H = NcPoly.zero(1)
    for a in range(2):
        for b in range(2):
            H = H + (x[a] * x[b]).scale(M[a][b] * Fraction(1, 4))
    return normalize_constant(H)


def linear_check(lm: LinearModel) -> RealizabilityReport:
    residual = linear_matrix_condition(lm)
    matrix_ok = all(not e for row in residual for e in row)
    report = check_realizable(lm.model())
    if matrix_ok != report.realizable:
        raise InternalContractViolation(
            f"matrix condition says {matrix_ok}, general pipeline says {report.verdict}")
    report.details = {"matrix_residual": residual, "pipeline": report.details}
    if report.realizable:
        H = quadratic_hamiltonian(lm)
        if H != report.realization.H:
            raise InternalContractViolation(f"quadratic-form H {H} != pipeline H {report.realization.H}")
    return report
