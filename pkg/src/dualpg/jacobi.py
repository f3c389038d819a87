"""Normalized Jacobi polynomials and Gauss-Jacobi quadrature.

Everything is expressed through R_n^{(a,b)} = P_n^{(a,b)} / P_n^{(a,b)}(1),
the Jacobi polynomial normalized to R_n(1) = 1, generated by its three-term
recurrence.  Derivatives use the index-shift relation

    D^q R_n^{(a,b)} = (n-q+1)_q (n+a+b+1)_q / (2^q (a+1)_q) * R_{n-q}^{(a+q,b+q)},

never Rodrigues' formula or a monomial expansion.  Quadrature nodes are the
roots of R_count, located by safeguarded Newton iteration bracketed by the
interlacing roots of the count-1 rule; weights come from the derivative
formula and are validated by the degree-(2*count-1) exactness contract.

All functions are pure and all types immutable, so everything here is safe
to share across threads.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "JacobiParams",
    "QuadratureRule",
    "pochhammer",
    "eval_R",
    "eval_R_table",
    "eval_R_derivative",
    "norm_h",
    "gauss_jacobi_rule",
]

NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 200


class ConvergenceError(RuntimeError):
    """An iterative kernel failed to reach its tolerance."""


@dataclass(frozen=True)
class JacobiParams:
    """Index pair (alpha, beta) of a classical Jacobi family, both > -1."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ValueError(
                f"classical Jacobi family needs alpha, beta > -1, "
                f"got ({self.alpha}, {self.beta})"
            )

    @property
    def lam(self) -> float:
        """alpha + beta + 1, the recurring combination of the two indexes."""
        return self.alpha + self.beta + 1.0


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); empty product for k = 0.

    Computed as a direct product (k stays small here), which avoids the
    cancellation a gamma-ratio would suffer for negative or tiny bases.
    """
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def eval_R_table(params: JacobiParams, nmax: int, x: np.ndarray) -> np.ndarray:
    """Table of R_0 .. R_nmax at the points x, shape (nmax+1, x.size)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    a, b = params.alpha, params.beta
    lam = params.lam
    table = np.empty((nmax + 1, x.size))
    table[0] = 1.0
    if nmax >= 1:
        table[1] = (a - b + (lam + 1.0) * x) / (2.0 * (a + 1.0))
    for n in range(1, nmax):
        s = 2.0 * n + lam
        c0 = 2.0 * (n + lam) * (n + a + 1.0) * (s - 1.0)
        c1 = (s - 1.0) * s * (s + 1.0)
        c2 = (a * a - b * b) * s
        c3 = 2.0 * n * (n + b) * (s + 1.0)
        table[n + 1] = ((c1 * x + c2) * table[n] - c3 * table[n - 1]) / c0
    return table


def eval_R(params: JacobiParams, n: int, x):
    """R_n^{(alpha,beta)}(x) via the three-term recurrence.

    Accepts a scalar or an array of points and matches the input shape.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    arr = np.asarray(x, dtype=float)
    vals = eval_R_table(params, n, arr.ravel())[n].reshape(arr.shape)
    return float(vals) if arr.ndim == 0 else vals


def eval_R_derivative(params: JacobiParams, n: int, q: int, x):
    """q-th derivative D^q R_n^{(alpha,beta)}(x); zero when q > n."""
    if q < 0:
        raise ValueError("derivative order must be nonnegative")
    if q == 0:
        return eval_R(params, n, x)
    arr = np.asarray(x, dtype=float)
    if q > n:
        zeros = np.zeros(arr.shape)
        return float(zeros) if arr.ndim == 0 else zeros
    scale = (
        pochhammer(n - q + 1, q)
        * pochhammer(n + params.lam, q)
        / (2.0 ** q * pochhammer(params.alpha + 1.0, q))
    )
    shifted = JacobiParams(params.alpha + q, params.beta + q)
    return scale * eval_R(shifted, n - q, x)


def norm_h(params: JacobiParams, n: int) -> float:
    """Squared weighted norm h_n = integral of (1-x)^a (1+x)^b R_n^2.

    h_n = 2^lam n! Gamma(n+b+1) Gamma(a+1)^2 / ((2n+lam) Gamma(n+lam)
    Gamma(n+a+1)).  Integral indexes reduce to short exact products; the
    general case goes through lgamma.
    """
    a, b = params.alpha, params.beta
    lam = params.lam
    if float(a).is_integer() and float(b).is_integer():
        ia, ib = int(a), int(b)
        val = 2.0 ** (ia + ib + 1) * math.factorial(ia) ** 2 / (2 * n + ia + ib + 1)
        for i in range(n + 1, n + ia + 1):
            val /= i
        for i in range(n + ib + 1, n + ia + ib + 1):
            val /= i
        return val
    return math.exp(
        lam * math.log(2.0)
        + math.lgamma(n + 1)
        + math.lgamma(n + b + 1)
        + 2.0 * math.lgamma(a + 1)
        - math.log(2 * n + lam)
        - math.lgamma(n + lam)
        - math.lgamma(n + a + 1)
    )


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi rule: exact to degree 2*count-1 against (1-x)^a (1+x)^b."""

    params: JacobiParams
    nodes: np.ndarray
    weights: np.ndarray
    count: int

    def __post_init__(self) -> None:
        nodes, weights = self.nodes, self.weights
        if nodes.shape != (self.count,) or weights.shape != (self.count,):
            raise ValueError("node/weight arrays must have length count")
        if not (np.all(np.diff(nodes) > 0) and nodes[0] > -1.0 and nodes[-1] < 1.0):
            raise ValueError("nodes must be strictly increasing inside (-1, 1)")
        if not np.all(weights > 0):
            raise ValueError("weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of integrand values sampled at the nodes."""
        return float(np.dot(self.weights, values))


def _newton_refine(params: JacobiParams, n: int, prev: np.ndarray) -> np.ndarray:
    """Roots of R_n, bracketed by the interlacing roots of R_{n-1}."""
    lo = np.concatenate(([-1.0], prev))
    hi = np.concatenate((prev, [1.0]))
    x = 0.5 * (lo + hi)
    # Chebyshev-point guesses for the two outermost roots, clipped inward
    outer = math.cos(math.pi / (2.0 * n))
    x[0] = np.clip(-outer, lo[0] + 0.25 * (hi[0] - lo[0]), x[0])
    x[-1] = np.clip(outer, x[-1], hi[-1] - 0.25 * (hi[-1] - lo[-1]))
    # sign of R_n at the top of bracket i: alternates, +1 at x = 1
    sign_hi = np.where((n - 1 - np.arange(n)) % 2 == 0, 1.0, -1.0)
    for _ in range(NEWTON_MAX_ITER):
        table = eval_R_table(params, n, x)
        f = table[n]
        shrinking = f * sign_hi > 0
        hi = np.where(shrinking, x, hi)
        lo = np.where(shrinking, lo, x)
        df = np.asarray(eval_R_derivative(params, n, 1, x))
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0.0, f / df, np.inf)
        cand = x - step
        inside = (cand > lo) & (cand < hi)
        new = np.where(inside, cand, 0.5 * (lo + hi))
        moved = np.abs(new - x)
        x = new
        if np.all(moved <= NEWTON_TOL):
            # two unguarded polishing sweeps push the roots from the 1e-14
            # stopping level down to the evaluation noise floor; the final
            # rule accuracy feeds straight into the projection moments
            for _ in range(2):
                f = eval_R_table(params, n, x)[n]
                df = np.asarray(eval_R_derivative(params, n, 1, x))
                x = np.where(df != 0.0, x - f / df, x)
            return x
    worst = int(np.argmax(np.abs(moved)))
    raise ConvergenceError(
        f"Gauss-Jacobi node search for count={n}, params="
        f"({params.alpha}, {params.beta}) did not reach {NEWTON_TOL:g} within "
        f"{NEWTON_MAX_ITER} iterations (root {worst}, last step {moved[worst]:.3e})"
    )


def _make_rule(params: JacobiParams, count: int, nodes: np.ndarray) -> QuadratureRule:
    # weights from the Gauss-Jacobi derivative formula; the leading factor
    # is the leading-coefficient ratio K_n / K_{n-1} of R_n over R_{n-1}
    lam = params.lam
    n = count
    kratio = (2 * n + lam - 1.0) * (2 * n + lam - 2.0) / (
        2.0 * (n + lam - 1.0) * (n + params.alpha)
    )
    hprev = norm_h(params, n - 1)
    rn_prev = eval_R(params, n - 1, nodes)
    rn_der = np.asarray(eval_R_derivative(params, n, 1, nodes))
    weights = kratio * hprev / (rn_prev * rn_der)
    return QuadratureRule(params=params, nodes=nodes, weights=weights, count=count)


_RULE_LADDERS: dict[tuple[float, float], list[QuadratureRule]] = {}
_RULE_LOCK = threading.Lock()


def gauss_jacobi_rule(params: JacobiParams, count: int) -> QuadratureRule:
    """Gauss-Jacobi rule with `count` nodes for the given weight indexes.

    Rules are built bottom-up (the count-1 roots bracket the new ones), so
    the whole ladder up to `count` is cached per parameter pair; the cache
    is the one piece of shared state here, hence the lock.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    with _RULE_LOCK:
        ladder = _RULE_LADDERS.setdefault((params.alpha, params.beta), [])
        if not ladder:
            first = np.array([(params.beta - params.alpha) / (params.lam + 1.0)])
            ladder.append(_make_rule(params, 1, first))
        while len(ladder) < count:
            n = len(ladder) + 1
            nodes = _newton_refine(params, n, ladder[-1].nodes)
            ladder.append(_make_rule(params, n, nodes))
        return ladder[count - 1]
