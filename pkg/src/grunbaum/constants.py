"""Sharp constants for volume cuts and sections of centered convex bodies.

``c1``/``c2`` bound the volume fraction cut off by the hyperplane at
relative height alpha; ``d_const`` bounds the section at that hyperplane
against the maximal parallel section.  The only non-closed-form quantity
is the supremum branch of ``c2`` for alpha > 0, taken over the family of
truncated cones.

The truncated-cone family is indexed by z = b/m (the ratio of the radius
intercept to its slope) on (-inf, -1] U [0, inf).  Evaluating the cut
fraction directly in z cancels catastrophically for large |z|, so
internally every cone is reparametrized by s in [0, 1] via its homothety
coefficient lambda = 1 + 1/z, s = lambda/(1+lambda): the radius is then
r(t) = (1-s)(1-t) + s*t on [0, 1] and all integrals become short binomial
sums that are stable on the whole closed interval, slab (s=1/2) and cone
(s in {0, 1}) endpoints included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: method tags for C2Result
CLOSED_FORM_NEG_ALPHA = "closed_form_neg_alpha"
CLOSED_FORM_N2 = "closed_form_n2"
NUMERIC_SUP = "numeric_sup"

_SCAN_POINTS = 4097
_NEAR_OPTIMUM = 1e-9


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    return int(n)


def _check_alpha(alpha: float, n: int) -> float:
    alpha = float(alpha)
    if not -1.0 < alpha < n:
        raise ValueError(f"alpha must lie in (-1, {n}), got {alpha}")
    return alpha


def grunbaum_bound(n: int) -> float:
    """Lower bound (n/(n+1))**n on the volume fraction cut at the centroid."""
    n = _check_n(n)
    return (n / (n + 1)) ** n


def makai_martini_bound(n: int) -> float:
    """Lower bound (n/(n+1))**(n-1) on centroid section over maximal section."""
    n = _check_n(n)
    return (n / (n + 1)) ** (n - 1)


def c1(alpha: float, n: int) -> float:
    """Sharp lower bound on the cut volume fraction at relative height alpha."""
    n = _check_n(n)
    alpha = _check_alpha(alpha, n)
    if alpha <= 0.0:
        return ((n - alpha) / (n + 1)) ** n
    if alpha < 1.0 / n:
        return (n / (n + 1)) ** n * (alpha + 1.0) ** (n - 1) * (1.0 - alpha * n)
    return 0.0


def d_const(alpha: float, n: int) -> float:
    """Sharp lower bound on section at height alpha over the maximal section."""
    n = _check_n(n)
    alpha = _check_alpha(alpha, n)
    if alpha <= 0.0:
        return (n * (alpha + 1.0) / (n + 1)) ** (n - 1)
    if alpha <= 1.0 / n:
        return ((n - alpha) / (n + 1)) ** (n - 1)
    return 0.0


def beta0(alpha: float, n: int) -> float:
    """The base height minimizing the double-cone cut fraction."""
    n = _check_n(n)
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0 / n:
        raise ValueError(f"beta0 requires alpha in (0, 1/{n}), got {alpha}")
    return (n + 1) * alpha / (alpha + 1.0)


def psi(beta: float, alpha: float, n: int) -> float:
    """Cut fraction of the normalized double cone with base at height beta."""
    n = _check_n(n)
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0 / n:
        raise ValueError(f"psi requires alpha in (0, 1/{n}), got {alpha}")
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    g_m = (alpha + 1.0) * (beta * (n - 1) + 1.0) / (n + 1)
    threshold = (alpha + 1.0) / (2.0 - (n - 1) * alpha)
    if beta <= threshold:
        return (1.0 - g_m) ** n / (1.0 - beta) ** (n - 1)
    return 1.0 - g_m**n / beta ** (n - 1)


# ---------------------------------------------------------------------------
# the truncated-cone cut fraction, stable over the compactified family


def _z_to_s(z: float) -> float:
    if math.isinf(z):
        return 0.5
    return (z + 1.0) / (2.0 * z + 1.0)


def _s_to_z(s: float) -> float:
    d = 2.0 * s - 1.0
    if abs(d) < 1e-15:
        return math.inf
    return (1.0 - s) / d


def _s_to_lambda(s: float) -> float:
    if s >= 1.0:
        return math.inf
    return s / (1.0 - s)


def _cone_centroid_s(s, n: int):
    """Centroid height of the cone family member r(t) = (1-s)(1-t) + s*t."""
    s = np.asarray(s, dtype=float)
    a = 1.0 - s
    m = 2.0 * s - 1.0
    i0 = np.zeros_like(s)
    i1 = np.zeros_like(s)
    for k in range(n):
        term = math.comb(n - 1, k) * a ** (n - 1 - k) * m**k
        i0 += term / (k + 1)
        i1 += term / (k + 2)
    return i1 / i0, i0


def _phi_s(s, alpha: float, n: int):
    """Cut fraction above the hyperplane at (alpha+1) times the centroid height."""
    s = np.asarray(s, dtype=float)
    a = 1.0 - s
    m = 2.0 * s - 1.0
    g, i0 = _cone_centroid_s(s, n)
    big_g = (alpha + 1.0) * g
    # integral of r**(n-1) over [G, 1], written to stay stable as G -> 1
    r_g = a + m * np.clip(big_g, 0.0, 1.0)
    m_g = m * (1.0 - np.clip(big_g, 0.0, 1.0))
    tail = np.zeros_like(s)
    for k in range(n):
        tail += math.comb(n - 1, k) * r_g ** (n - 1 - k) * m_g**k / (k + 1)
    tail *= 1.0 - np.clip(big_g, 0.0, 1.0)
    phi_vals = np.where(big_g >= 1.0, 0.0, np.where(big_g <= 0.0, 1.0, tail / i0))
    return float(phi_vals) if phi_vals.ndim == 0 else phi_vals


def _check_z(z: float) -> float:
    z = float(z)
    if -1.0 < z < 0.0:
        raise ValueError(f"z must lie in (-inf, -1] or [0, inf), got {z}")
    return z


def g_sub_l(z: float, alpha: float, n: int) -> float:
    """Scaled centroid height (alpha+1)*g of the truncated cone indexed by z."""
    n = _check_n(n)
    z = _check_z(z)
    g, _ = _cone_centroid_s(_z_to_s(z), n)
    return (alpha + 1.0) * float(g)


def phi(z: float, alpha: float, n: int) -> float:
    """Volume fraction of the truncated cone above its alpha-cut, clamped to [0, 1]."""
    n = _check_n(n)
    z = _check_z(z)
    return _phi_s(_z_to_s(z), float(alpha), n)


def c2_closed_n2(alpha: float) -> float:
    """Closed form of the planar supremum branch, valid for alpha in (0, 2)."""
    alpha = float(alpha)
    if not 0.0 < alpha < 2.0:
        raise ValueError(f"the closed form needs alpha in (0, 2), got {alpha}")
    if alpha < 1.0:
        return (5.0 - 3.0 * alpha) / (9.0 * (alpha + 1.0))
    return (2.0 - alpha) ** 2 / 9.0


@dataclass(frozen=True)
class C2Result:
    """The sharp upper cut-fraction bound and the cone attaining it.

    ``argmax_lambda`` is the homothety coefficient of the extremal truncated
    cone (0 = cone with apex on top, inf = cone with apex at the bottom);
    ``near_optima_lambda`` lists other maximizers within 1e-9 in value.
    """

    value: float
    argmax_z: float
    argmax_lambda: float
    method: str
    near_optima_lambda: tuple[float, ...] = ()


@dataclass(frozen=True)
class BoundsTriple:
    c1: float
    c2: C2Result
    d: float


def _phi_scalar(s: float, alpha: float, n: int) -> float:
    """Scalar fast path of _phi_s for the golden-section refinements."""
    a = 1.0 - s
    m = 2.0 * s - 1.0
    i0 = 0.0
    i1 = 0.0
    for k in range(n):
        term = math.comb(n - 1, k) * a ** (n - 1 - k) * m**k
        i0 += term / (k + 1)
        i1 += term / (k + 2)
    big_g = (alpha + 1.0) * i1 / i0
    if big_g >= 1.0:
        return 0.0
    if big_g <= 0.0:
        return 1.0
    r_g = a + m * big_g
    m_g = m * (1.0 - big_g)
    tail = 0.0
    for k in range(n):
        tail += math.comb(n - 1, k) * r_g ** (n - 1 - k) * m_g**k / (k + 1)
    return (1.0 - big_g) * tail / i0


def _golden_max_scalar(f, a, b, xtol=1e-12):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while d - c > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _numeric_sup(alpha: float, n: int):
    """Scan the compactified cone family, refine every bracketed maximum.

    Candidates are the endpoints, the best grid point and every strict
    interior local maximum; plateaus (e.g. the clamped-to-zero region for
    large alpha) contribute no interior candidates, which keeps the number
    of refinements small.
    """
    grid = np.linspace(0.0, 1.0, _SCAN_POINTS)
    vals = _phi_s(grid, alpha, n)
    cand = {0, len(grid) - 1, int(np.argmax(vals))}
    interior = np.nonzero((vals[1:-1] > vals[:-2]) & (vals[1:-1] > vals[2:]))[0] + 1
    cand.update(int(i) for i in interior)
    candidates = []
    for i in sorted(cand):
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, len(grid) - 1)]
        s_star, v_star = _golden_max_scalar(lambda s: _phi_scalar(s, alpha, n), lo, hi)
        if v_star < vals[i]:
            s_star, v_star = float(grid[i]), float(vals[i])
        candidates.append((v_star, s_star))
    candidates.sort(reverse=True)
    best_v, best_s = candidates[0]
    near = []
    for v, s in candidates[1:]:
        if best_v - v > _NEAR_OPTIMUM:
            break
        if all(abs(s - other) > 1e-9 for other in near) and abs(s - best_s) > 1e-9:
            near.append(s)
    return best_v, best_s, tuple(near)


def c2_numeric_sup(alpha: float, n: int, tol: float = 1e-9) -> C2Result:
    """The supremum branch evaluated numerically (any alpha, any n >= 2)."""
    n = _check_n(n)
    alpha = _check_alpha(alpha, n)
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    value, s_star, near = _numeric_sup(alpha, n)
    return C2Result(
        value=value,
        argmax_z=_s_to_z(s_star),
        argmax_lambda=_s_to_lambda(s_star),
        method=NUMERIC_SUP,
        near_optima_lambda=tuple(_s_to_lambda(s) for s in near),
    )


@lru_cache(maxsize=4096)
def c2(alpha: float, n: int, tol: float = 1e-9) -> C2Result:
    """Sharp upper bound on the cut volume fraction at relative height alpha.

    For alpha <= 0 the bound is closed-form and attained by the cone with
    apex at the bottom (lambda = inf).  For alpha > 0 it is the supremum
    over truncated cones; in the plane the supremum has a closed form that
    the numeric search must reproduce to 1e-6.
    """
    n = _check_n(n)
    alpha = _check_alpha(alpha, n)
    if alpha <= 0.0:
        value = 1.0 - (n * (alpha + 1.0) / (n + 1)) ** n
        return C2Result(value, argmax_z=0.0, argmax_lambda=math.inf, method=CLOSED_FORM_NEG_ALPHA)
    numeric = c2_numeric_sup(alpha, n, tol)
    if n == 2:
        closed = c2_closed_n2(alpha)
        if abs(closed - numeric.value) > 1e-6:
            raise ArithmeticError(
                f"numeric supremum {numeric.value!r} disagrees with the planar "
                f"closed form {closed!r} at alpha={alpha}"
            )
        return C2Result(
            closed,
            numeric.argmax_z,
            numeric.argmax_lambda,
            CLOSED_FORM_N2,
            numeric.near_optima_lambda,
        )
    return numeric


def bounds(alpha: float, n: int, tol: float = 1e-9) -> BoundsTriple:
    """All three sharp constants at (alpha, n)."""
    return BoundsTriple(c1=c1(alpha, n), c2=c2(alpha, n, tol), d=d_const(alpha, n))
