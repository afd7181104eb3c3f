"""Vectorised numerics for scalarized systems.

:class:`NumericSystem` compiles a list of ``MultiPoly`` into monomial
tables so that values and Jacobians are evaluated for a whole batch of
points at once. Newton's method and homotopy path tracking below operate
on batches (one row per start or path).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .multipoly import MultiPoly


class NumericSystem:
    def __init__(self, polys: Sequence[MultiPoly]):
        polys = list(polys)
        if not polys:
            raise ValueError("empty system")
        self.n = polys[0].nvars
        self.m = len(polys)
        self.polys = polys
        index: dict[tuple, int] = {}

        def slot(e):
            if e not in index:
                index[e] = len(index)
            return index[e]

        fvals, jvals = [], []
        for i, p in enumerate(polys):
            for e, c in p.terms.items():
                fvals.append((slot(e), i, c))
                for v, k in enumerate(e):
                    if k:
                        f = list(e)
                        f[v] -= 1
                        jvals.append((slot(tuple(f)), i * self.n + v, c * k))
        self.exps = np.array(list(index), dtype=np.int64).reshape(len(index), self.n)
        complex_coeffs = any(isinstance(c, complex) for p in polys for c in p.terms.values())
        dtype = complex if complex_coeffs else float
        self.cf = np.zeros((len(index), self.m), dtype=dtype)
        for u, i, c in fvals:
            self.cf[u, i] += complex(c) if complex_coeffs else float(c)
        self.cj = np.zeros((len(index), self.m * self.n), dtype=dtype)
        for u, col, c in jvals:
            self.cj[u, col] += complex(c) if complex_coeffs else float(c)
        self.maxdeg = int(self.exps.max()) if self.exps.size else 0
        self.degrees = [p.total_degree() for p in polys]
        self._cols = np.arange(self.n)[None, :]

    def _monomials(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        S = X.shape[0]
        powers = np.ones((S, self.n, self.maxdeg + 1), dtype=X.dtype)
        for k in range(1, self.maxdeg + 1):
            powers[:, :, k] = powers[:, :, k - 1] * X
        # powers[s, v, exps[u, v]] -> (S, U, n)
        picked = powers[:, self._cols, self.exps]
        return picked.prod(axis=2)

    def eval(self, X: np.ndarray) -> np.ndarray:
        return self._monomials(X) @ self.cf

    def jac(self, X: np.ndarray) -> np.ndarray:
        mons = self._monomials(X)
        return (mons @ self.cj).reshape(-1, self.m, self.n)

    def eval_jac(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mons = self._monomials(X)
        return mons @ self.cf, (mons @ self.cj).reshape(-1, self.m, self.n)


def batched_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A[s] x[s] = b[s]``; singular or non-square rows fall back to least squares."""
    if A.shape[1] == A.shape[2]:
        try:
            return np.linalg.solve(A, b[..., None])[..., 0]
        except np.linalg.LinAlgError:
            pass
    out = np.empty((A.shape[0], A.shape[2]), dtype=np.result_type(A, b))
    for s in range(A.shape[0]):
        out[s] = np.linalg.lstsq(A[s], b[s], rcond=None)[0]
    return out


# Newton -----------------------------------------------------------------

@dataclass
class NewtonResult:
    x: np.ndarray
    residual: np.ndarray
    converged: np.ndarray
    iterations: np.ndarray
    history: list = field(default_factory=list)


def newton_batch(
    system: NumericSystem,
    X0: np.ndarray,
    tol: float = 1e-10,
    max_iters: int = 50,
    max_halvings: int = 20,
    keep_history: bool = False,
) -> NewtonResult:
    """Damped Newton (least-squares steps) from every row of ``X0``.

    A step is halved until the residual norm decreases, at most
    ``max_halvings`` times. A row stops once its max-norm residual is
    ``<= tol``.
    """
    X = np.array(X0, dtype=np.result_type(X0, system.cf), copy=True)
    S = X.shape[0]
    F = system.eval(X)
    res = np.abs(F).max(axis=1) if system.m else np.zeros(S)
    conv = res <= tol
    iters = np.zeros(S, dtype=int)
    history = [X.copy()] if keep_history else []
    for _ in range(max_iters):
        act = np.flatnonzero(~conv & np.isfinite(res))
        if act.size == 0:
            break
        Fa, Ja = system.eval_jac(X[act])
        step = batched_solve(Ja, Fa)
        base = np.linalg.norm(Fa, axis=1)
        alpha = np.ones(act.size)
        trial = X[act] - step
        Ft = system.eval(trial)
        better = np.linalg.norm(Ft, axis=1) < base
        for _h in range(max_halvings):
            if better.all():
                break
            bad = np.flatnonzero(~better)
            alpha[bad] *= 0.5
            trial[bad] = X[act[bad]] - alpha[bad, None] * step[bad]
            Ft[bad] = system.eval(trial[bad])
            better[bad] = np.linalg.norm(Ft[bad], axis=1) < base[bad]
        X[act] = trial
        iters[act] += 1
        res[act] = np.abs(Ft).max(axis=1)
        res[~np.isfinite(res)] = np.inf
        conv[act] = res[act] <= tol
        if keep_history:
            history.append(X.copy())
    return NewtonResult(X, res, conv, iters, history)


# homotopy ---------------------------------------------------------------

CONVERGED = "converged"
DIVERGED = "diverged"
SINGULAR = "singular-endpoint"
FAILED = "failed"


@dataclass
class PathResult:
    endpoints: np.ndarray
    status: list
    steps: np.ndarray
    residual: np.ndarray
    condition: np.ndarray


def total_degree_starts(degrees: Sequence[int]) -> np.ndarray:
    roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    return np.array(list(itertools.product(*roots)), dtype=complex).reshape(-1, len(degrees))


def track_total_degree(
    system: NumericSystem,
    gamma: complex,
    dt_init: float = 0.05,
    dt_min: float = 1e-8,
    dt_max: float = 0.1,
    track_tol: float = 1e-8,
    endpoint_tol: float = 1e-12,
    residual_tol: float = 1e-10,
    max_steps: int = 10_000,
    diverge_norm: float = 1e8,
) -> PathResult:
    """Track all paths of ``H(x, t) = (1 - t) gamma G(x) + t F(x)`` from ``t = 0`` to 1.

    ``G_i = x_i^{d_i} - 1`` with ``d_i`` the total degree of ``F_i``. Euler
    predictor, Newton corrector (3 iterations), step halving on rejection
    and doubling after three consecutive successes.
    """
    if system.m != system.n:
        raise ValueError(f"homotopy needs a square system, got {system.m} equations in {system.n} unknowns")
    degs = np.array(system.degrees)
    if (degs < 1).any():
        raise ValueError("every equation needs positive degree")
    X = total_degree_starts(degs)
    P = X.shape[0]
    T = np.zeros(P)
    H = np.full(P, dt_init)
    succ = np.zeros(P, dtype=int)
    steps = np.zeros(P, dtype=int)
    status = np.array([""] * P, dtype=object)
    active = np.ones(P, dtype=bool)

    def parts(x, t):
        F, J = system.eval_jac(x)
        xd1 = x ** (degs - 1)
        G = x * xd1 - 1
        JG = degs * xd1
        s = (1 - t)[:, None]
        Hval = s * gamma * G + t[:, None] * F
        Hx = t[:, None, None] * J
        idx = np.arange(system.n)
        Hx[:, idx, idx] += s * gamma * JG
        Ht = F - gamma * G
        return Hval, Hx, Ht

    while active.any():
        A = np.flatnonzero(active)
        x, t = X[A], T[A]
        h = np.minimum(H[A], 1 - t)
        _, Hx, Ht = parts(x, t)
        with np.errstate(all="ignore"):
            dx = -batched_solve(Hx, Ht)
            x1 = x + h[:, None] * dx
            t1 = t + h
            nd = np.full(A.size, np.inf)
            for _ in range(3):
                Hv, Hx1, _ = parts(x1, t1)
                delta = batched_solve(Hx1, Hv)
                x1 = x1 - delta
                nd = np.linalg.norm(delta, axis=1)
            scale = 1 + np.linalg.norm(x1, axis=1)
            ok = np.isfinite(nd) & (nd <= track_tol * scale) & np.isfinite(scale)
        steps[A] += 1
        acc = A[ok]
        X[acc] = x1[ok]
        T[acc] = t1[ok]
        succ[acc] += 1
        grow = acc[succ[acc] >= 3]
        H[grow] = np.minimum(H[grow] * 2, dt_max)
        succ[grow] = 0
        rej = A[~ok]
        H[rej] *= 0.5
        succ[rej] = 0
        norms = np.linalg.norm(X[A], axis=1)
        done = A[T[A] >= 1.0 - 1e-13]
        active[done] = False
        big = A[(norms > diverge_norm) & active[A]]
        status[big] = DIVERGED
        active[big] = False
        small = A[(H[A] < dt_min) & active[A]]
        status[small] = FAILED
        active[small] = False
        over = A[(steps[A] >= max_steps) & active[A]]
        status[over] = FAILED
        active[over] = False

    # endpoint polish on F alone
    reached = np.flatnonzero(status == "")
    residual = np.full(P, np.inf)
    cond = np.full(P, np.inf)
    if reached.size:
        nr = newton_batch(system, X[reached], tol=endpoint_tol, max_iters=20)
        X[reached] = nr.x
        residual[reached] = nr.residual
        with np.errstate(all="ignore"):
            J = system.jac(X[reached])
            cond[reached] = np.linalg.cond(J)
        for r, res, c in zip(reached, residual[reached], cond[reached]):
            if res <= residual_tol * max(1.0, float(np.linalg.norm(X[r]))):
                status[r] = CONVERGED if c < 1e10 else SINGULAR
            elif np.linalg.norm(X[r]) > 1e6:
                status[r] = DIVERGED
            else:
                status[r] = SINGULAR if c >= 1e10 else FAILED
    # failed paths that were heading to infinity count as diverged
    for r in np.flatnonzero(status == FAILED):
        if np.linalg.norm(X[r]) > 1e4:
            status[r] = DIVERGED
    return PathResult(X, list(status), steps, residual, cond)


def dedup(points: np.ndarray, tol: float) -> list[int]:
    """Indices of representatives after greedy clustering within ``tol`` (order-independent)."""
    if len(points) == 0:
        return []
    keys = np.round(np.real(points), 6).tolist()
    order = sorted(range(len(points)), key=lambda i: (keys[i], np.round(np.imag(points[i]), 6).tolist()))
    reps: list[int] = []
    for i in order:
        if all(np.linalg.norm(points[i] - points[j]) > tol * max(1.0, float(np.linalg.norm(points[j]))) for j in reps):
            reps.append(i)
    return reps


def relative_rank_deficiency(J: np.ndarray) -> float:
    """Smallest singular value over the largest (0 for the zero matrix)."""
    s = np.linalg.svd(J, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0.0
    if J.shape[0] < J.shape[1]:
        return 0.0
    return float(s[-1] / s[0])


def unit_complex(rng: np.random.Generator) -> complex:
    return complex(np.exp(1j * rng.uniform(0, 2 * math.pi)))
