"""Numerical oracle: truncated harmonic-oscillator matrices.

Floating point lives only here. Results are used to accept or reject symbolic
identities and never flow back into the exact modules.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import DegreeTooHighForDim
from .ncpoly import NcPoly, VarId, Word


@dataclass(frozen=True)
class FockConfig:
    dim: int = 40
    tol: float = 1e-9
    modes: int = 1

    def __post_init__(self):
        if self.dim < 2 or self.tol <= 0 or self.modes < 1:
            raise ValueError(f"bad FockConfig {self}")


def _single_mode(N: int):
    a = sp.diags(np.sqrt(np.arange(1, N, dtype=float)), 1, shape=(N, N), format="csr",
                 dtype=complex)
    ad = a.conj().T.tocsr()
    s = np.sqrt(2.0)
    return ((a + ad) / s).tocsr(), ((a - ad) / (1j * s)).tocsr()


class _Oracle:
    def __init__(self, cfg: FockConfig):
        self.cfg = cfg
        N, m = cfg.dim, cfg.modes
        q1, p1 = _single_mode(N)
        eye = sp.identity(N, dtype=complex, format="csr")
        mats = []
        for kind in (q1, p1):
            for k in range(m):
                ops = [eye] * m
                ops[k] = kind
                M = ops[0]
                for op in ops[1:]:
                    M = sp.kron(M, op, format="csr")
                mats.append(M.tocsr())
        # canonical order q1..qm, p1..pm
        self.gens = mats
        self.size = N ** m
        self._powers = {}

    def power(self, idx: int, e: int):
        key = (idx, e)
        if key not in self._powers:
            if e == 0:
                self._powers[key] = sp.identity(self.size, dtype=complex, format="csr")
            else:
                self._powers[key] = (self.power(idx, e - 1) @ self.gens[idx]).tocsr()
        return self._powers[key]

    def monomial(self, mono: tuple):
        M = None
        for idx, e in enumerate(mono):
            if e:
                P = self.power(idx, e)
                M = P if M is None else M @ P
        if M is None:
            return sp.identity(self.size, dtype=complex, format="csr")
        return M.tocsr()


@lru_cache(maxsize=8)
def _oracle(cfg: FockConfig) -> _Oracle:
    return _Oracle(cfg)


def generator_matrices(cfg: FockConfig):
    """Sparse matrices (qs, ps) for each mode, of size dim**modes."""
    o = _oracle(cfg)
    m = cfg.modes
    return o.gens[:m], o.gens[m:]


def _check_degree(d: int, cfg: FockConfig):
    if d > cfg.dim - 2:
        raise DegreeTooHighForDim(f"degree {d} needs dim >= {d + 2}, have {cfg.dim}")


def evaluate(X: NcPoly, cfg: FockConfig):
    """Substitute generator matrices into the normal-ordered monomials."""
    if X.modes != cfg.modes:
        raise ValueError(f"polynomial has {X.modes} modes, config {cfg.modes}")
    _check_degree(X.degree, cfg)
    o = _oracle(cfg)
    M = sp.csr_matrix((o.size, o.size), dtype=complex)
    for mono, c in X.items():
        M = M + complex(float(c.re), float(c.im)) * o.monomial(mono)
    return M.tocsr()


def evaluate_words(words, cfg: FockConfig):
    """Evaluate a sum of words, multiplying generators in written order."""
    o = _oracle(cfg)
    words = list(words)
    _check_degree(max((len(w.factors) for w in words), default=0), cfg)
    M = sp.csr_matrix((o.size, o.size), dtype=complex)
    for w in words:
        T = sp.identity(o.size, dtype=complex, format="csr")
        for v in w.factors:
            T = T @ o.gens[v.index(cfg.modes)]
        c = w.coefficient
        M = M + complex(float(c.re), float(c.im)) * T
    return M.tocsr()


def inner_indices(cfg: FockConfig, degree: int) -> np.ndarray:
    """Flat indices of basis states with every occupation below dim - degree - 1."""
    K = cfg.dim - degree - 1
    if K < 1:
        raise DegreeTooHighForDim(f"no reliable block for degree {degree} at dim {cfg.dim}")
    grids = np.meshgrid(*([np.arange(K)] * cfg.modes), indexing="ij")
    flat = np.zeros_like(grids[0])
    for g in grids:
        flat = flat * cfg.dim + g
    return np.sort(flat.ravel())


def block_residual(A, B, cfg: FockConfig, degree: int) -> float:
    idx = inner_indices(cfg, degree)
    D = (A - B).tocsr()[idx][:, idx]
    return float(abs(D).max()) if D.nnz else 0.0


def _degree_of(obj) -> int:
    if isinstance(obj, NcPoly):
        return obj.degree
    return max((len(w.factors) for w in obj), default=0)


def _matrix_of(obj, cfg):
    if isinstance(obj, NcPoly):
        return evaluate(obj, cfg)
    return evaluate_words(obj, cfg)


def residual(X, Y, cfg: FockConfig) -> float:
    """Max inner-block entry of X - Y; X, Y are NcPoly or lists of Words."""
    d = max(_degree_of(X), _degree_of(Y))
    return block_residual(_matrix_of(X, cfg), _matrix_of(Y, cfg), cfg, d)


def agree(X, Y, cfg: FockConfig) -> bool:
    return residual(X, Y, cfg) < cfg.tol


def verify_realization(model, realization, cfg: FockConfig | None = None) -> float:
    """Recompute (f, g) from matrices of H and L and return the worst inner-block residual.

    Matrix commutators replace the symbolic ones, so this checks the replay
    of the realization independently of the normal-ordering code.
    """
    m = model.modes
    if cfg is None:
        cfg = FockConfig(modes=m)
    H, L, S = realization.H, realization.L, realization.S
    n = len(L)
    d = max([H.degree + 1] + [2 * l.degree + 1 for l in L]
            + [e.degree for e in model.f] + [e.degree for row in model.g for e in row])
    _check_degree(d, cfg)
    o = _oracle(cfg)
    X = o.gens
    Hm = evaluate(H, cfg)
    Lm = [evaluate(l, cfg) for l in L]
    Ld = [M.conj().T.tocsr() for M in Lm]
    worst = 0.0
    for i in range(2 * m):
        xi = X[i]
        br = [xi @ Lm[l] - Lm[l] @ xi for l in range(n)]
        for k in range(n):
            gk = sum((np.conj(complex(float(S[l][k].re), float(S[l][k].im))) * br[l]
                      for l in range(n)), sp.csr_matrix(Hm.shape, dtype=complex))
            worst = max(worst, block_residual(gk, evaluate(model.g[i][k], cfg), cfg, d))
        drift = -1j * (xi @ Hm - Hm @ xi)
        for l in range(n):
            drift = drift + 0.5 * (Ld[l] @ br[l] + (Ld[l] @ xi - xi @ Ld[l]) @ Lm[l])
        worst = max(worst, block_residual(drift, evaluate(model.f[i], cfg), cfg, d))
    return worst


def word(coefficient, *names) -> Word:
    """Convenience: word(1, 'p1', 'q1')."""
    return Word(coefficient, [VarId(n[0], int(n[1:]) if n[1:] else 1) for n in names])
