"""Single-mode drift completion: fill in one drift component so the QSDE is realizable."""
from __future__ import annotations

from dataclasses import dataclass

from .calculus import P, deriv, project, zero_integral
from .errors import InternalContractViolation, NotCompletable, NotConservative
from .ncpoly import NcPoly, Scalar, ZERO
from .realize import (QsdeModel, check_realizable, compute_fL, compute_Z_L,
                      is_commutator_conservative)


@dataclass(frozen=True)
class SynthesisProblem:
    """Exactly one of f1, f2 is given; the other is completed."""

    g: tuple
    f1: NcPoly | None = None
    f2: NcPoly | None = None
    C_choice: Scalar = ZERO

    def __post_init__(self):
        if (self.f1 is None) == (self.f2 is None):
            raise ValueError("give exactly one of f1, f2")
        g = tuple(e if isinstance(e, NcPoly) else e[0] for e in self.g)
        if len(g) != 2 or any(e.modes != 1 for e in g):
            raise ValueError("drift completion is single-mode, single-channel")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "C_choice", Scalar.coerce(self.C_choice))

    @property
    def direction(self) -> str:
        return "f2" if self.f2 is None else "f1"


def complete_drift(prob: SynthesisProblem):
    """Return (completed component, Realization).

    Completing f2 from f1 solves -d f_c1/dq = d f_c2/dp with
    f_c2 = -int_o (d f_c1/dq) dp + R(q) and picks the unique R in P_q that
    makes f_c2 self-adjoint; the f1 direction swaps the roles of q and p.
    """
    g = prob.g
    g_col = tuple((e,) for e in g)
    report = is_commutator_conservative(g)
    if not report.ok:
        raise NotConservative(f"g is not commutator-conservative: {report.describe()}", report)
    _, L = compute_Z_L(g_col, None, (prob.C_choice,))
    fL = compute_fL(g_col, L)
    if prob.direction == "f2":
        known, k, dvar, ivar = prob.f1, 0, "q", "p"
    else:
        known, k, dvar, ivar = prob.f2, 1, "p", "q"
    if not known.is_self_adjoint():
        raise NotCompletable(f"given drift component {known} is not self-adjoint")
    fc_known = known - fL[k]
    T = -zero_integral(deriv(fc_known, dvar), ivar)
    ah = T.antiherm()
    if project(ah, P(dvar)) != ah:
        raise NotCompletable(
            f"anti-Hermitian part {ah} is not a function of {dvar} alone")
    completed = T.herm() + fL[1 - k]
    f = (prob.f1, completed) if k == 0 else (completed, prob.f2)
    result = check_realizable(QsdeModel(1, 1, f, g_col), C=(prob.C_choice,))
    if not result.realizable:
        raise InternalContractViolation(f"completed model failed at {result.stage}")
    return completed, result.realization


def synthesized_hamiltonian(prob: SynthesisProblem, completed: NcPoly | None = None) -> NcPoly:
    done, r = complete_drift(prob)
    if completed is not None and completed != done:
        raise ValueError("completed drift does not belong to this problem")
    return r.H


def completion_residual(prob: SynthesisProblem, completed: NcPoly) -> NcPoly:
    """-d f_c1/dq - d f_c2/dp for the assembled model; zero on success."""
    g_col = tuple((e,) for e in prob.g)
    _, L = compute_Z_L(g_col, None, (prob.C_choice,))
    fL = compute_fL(g_col, L)
    f1, f2 = (prob.f1, completed) if prob.direction == "f2" else (completed, prob.f2)
    return -deriv(f1 - fL[0], "q") - deriv(f2 - fL[1], "p")

