"""Inequality verification: center a body, cut it, compare against the bounds.

Every check first recenters the body at its centroid (the bounds are
stated for centered bodies, and translating the body once is equivalent to
relocating the cut).  Checks return a ``VerifyReport``; a report passes
when ``lower - tolerance <= measured <= upper + tolerance`` with absent
sides skipped.  Exact backends use tolerance 1e-9; the Monte Carlo backend
uses four standard errors of the measured ratio.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import constants, measure, oracle
from .bodies import (
    AnalyticProfile,
    Body,
    CutSpec,
    Direction,
    Polytope,
    translate,
)

EXACT = "exact"
MONTE_CARLO = "monte_carlo"

#: factor on the standard error used by Monte Carlo backed checks
MC_SIGMAS = 4.0
_STRATUM_EPS = 1e-3


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one bound check.

    ``lower``/``upper`` are the applicable bounds (None = one-sided);
    ``equality`` flags a measured value sitting on a bound, i.e. an
    extremal body.  ``context`` carries whatever identifies the check:
    body descriptor, direction, alpha, seed.
    """

    quantity: str
    measured: float
    lower: Optional[float]
    upper: Optional[float]
    tolerance: float
    backend: str
    passed: bool
    context: dict = field(default_factory=dict)
    equality: bool = False

    def margin(self) -> float:
        """Distance to the nearest bound; negative means the bound is broken."""
        sides = []
        if self.lower is not None:
            sides.append(self.measured - self.lower)
        if self.upper is not None:
            sides.append(self.upper - self.measured)
        return min(sides) if sides else math.inf

    def to_json(self) -> str:
        obj = {
            "quantity": self.quantity,
            "measured": self.measured,
            "lower": self.lower,
            "upper": self.upper,
            "tolerance": self.tolerance,
            "backend": self.backend,
            "pass": self.passed,
            "equality": self.equality,
            "context": self.context,
        }
        return json.dumps(obj, sort_keys=True)


def report_from_json(line: str) -> VerifyReport:
    obj = json.loads(line)
    return VerifyReport(
        quantity=obj["quantity"],
        measured=obj["measured"],
        lower=obj["lower"],
        upper=obj["upper"],
        tolerance=obj["tolerance"],
        backend=obj["backend"],
        passed=obj["pass"],
        context=obj["context"],
        equality=obj.get("equality", False),
    )


def _make_report(quantity, measured, lower, upper, tolerance, backend, context):
    ok_low = lower is None or measured >= lower - tolerance
    ok_high = upper is None or measured <= upper + tolerance
    # equality detection only makes sense at exact-backend resolution
    at_bound = backend == EXACT and (
        (lower is not None and abs(measured - lower) <= 100.0 * tolerance)
        or (upper is not None and abs(measured - upper) <= 100.0 * tolerance)
    )
    return VerifyReport(
        quantity=quantity,
        measured=float(measured),
        lower=None if lower is None else float(lower),
        upper=None if upper is None else float(upper),
        tolerance=float(tolerance),
        backend=backend,
        passed=bool(ok_low and ok_high),
        context=dict(context or {}),
        equality=bool(at_bound),
    )


def describe(body: Body) -> dict:
    if isinstance(body, Polytope):
        return {"type": "polytope", "dim": body.dim, "vertices": len(body.vertices)}
    if isinstance(body, AnalyticProfile):
        return {"type": "profile", "dim": body.dim, "knots": len(body.knots)}
    return {"type": "numeric_profile", "dim": body.dim}


# ---------------------------------------------------------------------------
# centering and the two ratios


def center(body: Body) -> Body:
    """Translate the body so its centroid is at the origin."""
    if isinstance(body, Polytope):
        return translate(body, [-c for c in measure.centroid(body)])
    shift = measure.centroid_coordinate(body, Direction.axis(body.dim))
    return translate(body, -shift)


def cut_height(body: Body, cut: CutSpec) -> float:
    """Signed height of the cut hyperplane for an already centered body."""
    return cut.alpha * measure.support(body, cut.direction.negated())


def cut_ratio(body: Body, cut: CutSpec) -> float:
    """Volume fraction of the centered body above its alpha-cut."""
    centered = center(body)
    t = cut_height(centered, cut)
    return measure.cut_volume(centered, cut.direction, t) / measure.volume(centered)


def section_ratio(body: Body, cut: CutSpec) -> float:
    """Section at the alpha-cut of the centered body over its maximal section."""
    centered = center(body)
    t = cut_height(centered, cut)
    sec = measure.section_area(centered, cut.direction, t)
    _, best = measure.max_section(centered, cut.direction)
    return sec / best


# ---------------------------------------------------------------------------
# individual checks


def _mc_ratio(body, direction, t, samples, seed):
    vol = oracle.mc_volume(body, samples, seed)
    cut = oracle.mc_cut_volume(body, direction, t, samples, seed + 1)
    ratio = cut.value / vol.value
    # independent estimates: first-order error propagation for the quotient
    var = (cut.std_error / vol.value) ** 2 + (
        cut.value * vol.std_error / vol.value**2
    ) ** 2
    return ratio, math.sqrt(var)


def check_theorem4(
    body: Body,
    cut: CutSpec,
    tol: float = 1e-9,
    backend: str = EXACT,
    mc_samples: int = 100_000,
    seed: int = 0,
    context: Optional[dict] = None,
) -> VerifyReport:
    """c1(alpha, n) <= cut fraction <= c2(alpha, n)."""
    n = body.dim
    lower = constants.c1(cut.alpha, n)
    upper = constants.c2(cut.alpha, n).value
    ctx = {**describe(body), "alpha": cut.alpha, "direction": list(cut.direction.coords)}
    ctx.update(context or {})
    if backend == EXACT:
        measured = cut_ratio(body, cut)
        tolerance = tol
    else:
        centered = center(body)
        t = cut_height(centered, cut)
        measured, sigma = _mc_ratio(centered, cut.direction, t, mc_samples, seed)
        tolerance = max(MC_SIGMAS * sigma, 1e-12)
        ctx.update(seed=seed, samples=mc_samples)
    return _make_report("cut_ratio", measured, lower, upper, tolerance, backend, ctx)


def check_theorem5(
    body: Body, cut: CutSpec, tol: float = 1e-9, context: Optional[dict] = None
) -> VerifyReport:
    """Section at the alpha-cut >= d_const(alpha, n) times the maximal section."""
    lower = constants.d_const(cut.alpha, body.dim)
    ctx = {**describe(body), "alpha": cut.alpha, "direction": list(cut.direction.coords)}
    ctx.update(context or {})
    measured = section_ratio(body, cut)
    return _make_report("section_ratio", measured, lower, None, tol, EXACT, ctx)


def check_grunbaum(
    body: Body,
    direction: Direction,
    tol: float = 1e-9,
    backend: str = EXACT,
    mc_samples: int = 100_000,
    seed: int = 0,
    context: Optional[dict] = None,
) -> VerifyReport:
    """The centroid-cut special case with its closed-form two-sided bound."""
    n = body.dim
    bound = constants.grunbaum_bound(n)
    ctx = {**describe(body), "alpha": 0.0, "direction": list(direction.coords)}
    ctx.update(context or {})
    if backend == EXACT:
        measured = cut_ratio(body, CutSpec(direction, 0.0))
        tolerance = tol
    else:
        centered = center(body)
        measured, sigma = _mc_ratio(centered, direction, 0.0, mc_samples, seed)
        tolerance = max(MC_SIGMAS * sigma, 1e-12)
        ctx.update(seed=seed, samples=mc_samples)
    return _make_report(
        "cut_ratio", measured, bound, 1.0 - bound, tolerance, backend, ctx
    )


def check_minkowski_radon(
    body: Body, direction: Direction, tol: float = 1e-9, context: Optional[dict] = None
) -> VerifyReport:
    """1/n <= h(-xi)/h(xi) <= n for the centered body."""
    n = body.dim
    centered = center(body)
    h_plus = measure.support(centered, direction)
    h_minus = measure.support(centered, direction.negated())
    ctx = {**describe(body), "direction": list(direction.coords)}
    ctx.update(context or {})
    return _make_report(
        "support_ratio", h_minus / h_plus, 1.0 / n, float(n), tol, EXACT, ctx
    )


def _worst_midpoint_violation(values: np.ndarray) -> float:
    worst = -math.inf
    for gap in range(1, (len(values) - 1) // 2 + 1):
        gaps = 0.5 * (values[: -2 * gap] + values[2 * gap :]) - values[gap:-gap]
        worst = max(worst, float(gaps.max()))
    return worst


def check_concavity(
    body: Body,
    direction: Direction,
    which: str = "A",
    grid_points: int = 257,
    tol: float = 1e-9,
    context: Optional[dict] = None,
) -> VerifyReport:
    """Midpoint concavity of A^(1/(n-1)) (which="A") or V^(1/n) (which="V")
    on a uniform grid in the open support; measured is the worst violation."""
    n = body.dim
    if which == "A":
        curve = measure.section_curve(body, direction)
        lo, hi = curve.support
        grid = np.linspace(lo, hi, grid_points + 2)[1:-1]
        vals = np.asarray([float(curve.evaluate(t)) for t in grid])
        root = np.maximum(vals, 0.0) ** (1.0 / (n - 1))
        quantity = "concavity_A"
    elif which == "V":
        lo = -measure.support(body, direction.negated())
        hi = measure.support(body, direction)
        grid = np.linspace(lo, hi, grid_points + 2)[1:-1]
        vals = np.asarray([measure.cut_volume(body, direction, t) for t in grid])
        root = np.maximum(vals, 0.0) ** (1.0 / n)
        quantity = "concavity_V"
    else:
        raise ValueError(f"which must be 'A' or 'V', got {which!r}")
    worst = _worst_midpoint_violation(root)
    ctx = {**describe(body), "direction": list(direction.coords), "which": which}
    ctx.update(context or {})
    return _make_report(quantity, worst, None, 0.0, tol, EXACT, ctx)


def check_symmetral_consistency(
    body: Body, cut: CutSpec, tol: float = 1e-9, context: Optional[dict] = None
) -> VerifyReport:
    """Rounding the body must preserve volume and every cut-off volume;
    measured is the worst relative deviation over 64 sampled heights."""
    centered = center(body)
    sym = measure.schwarz_symmetral(centered, cut.direction)
    axis = Direction.axis(sym.dim)
    vol = measure.volume(centered)
    worst = abs(vol - measure.volume(sym)) / vol
    lo = -measure.support(centered, cut.direction.negated())
    hi = measure.support(centered, cut.direction)
    for t in np.linspace(lo, hi, 64):
        a = measure.cut_volume(centered, cut.direction, float(t))
        b = measure.cut_volume(sym, axis, float(t))
        worst = max(worst, abs(a - b) / vol)
    ctx = {**describe(body), "direction": list(cut.direction.coords)}
    ctx.update(context or {})
    return _make_report("symmetral_consistency", worst, None, 0.0, tol, EXACT, ctx)


# ---------------------------------------------------------------------------
# the fuzzing harness


@dataclass(frozen=True)
class FuzzConfig:
    """Corpus layout for the fuzz suite.

    Profiles are generated for every dimension in ``dims``; polytopes only
    for dimensions 2 and 3.  Each body is cut at ``alphas_per_body``
    heights sampled round-robin from the strata (-1, 0], (0, 1/n] and
    (1/n, n) so that every branch of the piecewise constants is hit.
    ``mc_samples`` > 0 additionally runs Monte Carlo backed cut checks on
    every polytope.
    """

    dims: tuple[int, ...] = (2, 3, 4, 5)
    profiles_per_dim: int = 25
    polytopes_per_dim: int = 25
    alphas_per_body: int = 3
    mc_samples: int = 0
    seed: int = 20240802
    tol: float = 1e-9
    profile_knots: int = 6
    polytope_points: int = 12


@dataclass(frozen=True)
class FuzzReport:
    total: int
    failures: tuple[VerifyReport, ...]
    reports: tuple[VerifyReport, ...]
    worst_margins: dict

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{self.total - len(self.failures)}/{self.total} checks passed"]
        for quantity in sorted(self.worst_margins):
            lines.append(f"  worst margin {quantity}: {self.worst_margins[quantity]:.3e}")
        for rep in self.failures:
            lines.append(f"  FAILED {rep.to_json()}")
        return "\n".join(lines)


def _stratified_alphas(gen: np.random.Generator, n: int, count: int) -> list[float]:
    strata = [
        (-1.0 + _STRATUM_EPS, 0.0),
        (0.0 + _STRATUM_EPS / n, 1.0 / n),
        (1.0 / n, n - _STRATUM_EPS),
    ]
    out = []
    for k in range(count):
        lo, hi = strata[k % len(strata)]
        out.append(float(gen.uniform(lo, hi)))
    return out


def _fuzz_one_body(body, direction, body_seed, config, reports):
    gen = oracle.rng_for(body_seed, shard=2)
    alphas = _stratified_alphas(gen, body.dim, config.alphas_per_body)
    ctx = {"body_seed": body_seed}
    for alpha in alphas:
        cut = CutSpec(direction, alpha)
        reports.append(check_theorem4(body, cut, tol=config.tol, context=ctx))
        reports.append(check_theorem5(body, cut, tol=config.tol, context=ctx))
    reports.append(check_grunbaum(body, direction, tol=config.tol, context=ctx))
    reports.append(check_minkowski_radon(body, direction, tol=config.tol, context=ctx))
    reports.append(check_concavity(body, direction, "A", tol=config.tol, context=ctx))
    reports.append(check_concavity(body, direction, "V", tol=config.tol, context=ctx))
    reports.append(
        check_symmetral_consistency(body, CutSpec(direction, alphas[0]), tol=config.tol, context=ctx)
    )
    if config.mc_samples > 0 and isinstance(body, Polytope):
        cut = CutSpec(direction, alphas[0])
        reports.append(
            check_theorem4(
                body,
                cut,
                tol=config.tol,
                backend=MONTE_CARLO,
                mc_samples=config.mc_samples,
                seed=body_seed,
                context=ctx,
            )
        )
        reports.append(
            check_grunbaum(
                body,
                direction,
                tol=config.tol,
                backend=MONTE_CARLO,
                mc_samples=config.mc_samples,
                seed=body_seed + 7,
                context=ctx,
            )
        )


def fuzz_corpus(config: FuzzConfig = FuzzConfig()):
    """The deterministic corpus as (body, direction, body_seed) triples."""
    corpus = []
    counter = 0
    for n in config.dims:
        for _ in range(config.profiles_per_dim):
            body_seed = (config.seed * 1_000_003 + counter) % (1 << 63)
            counter += 1
            body = oracle.random_profile(n, config.profile_knots, body_seed)
            corpus.append((body, Direction.axis(n), body_seed))
        if n not in (2, 3):
            continue
        for _ in range(config.polytopes_per_dim):
            body_seed = (config.seed * 1_000_003 + counter) % (1 << 63)
            counter += 1
            body = oracle.random_polytope(n, config.polytope_points, body_seed)
            vec = oracle.rng_for(body_seed, shard=1).standard_normal(n)
            corpus.append((body, Direction.from_vector(vec), body_seed))
    return tuple(corpus)


def fuzz_suite(config: FuzzConfig = FuzzConfig()) -> FuzzReport:
    """Run every check over a deterministic corpus of random bodies."""
    reports: list[VerifyReport] = []
    for body, direction, body_seed in fuzz_corpus(config):
        _fuzz_one_body(body, direction, body_seed, config, reports)
    reports.sort(key=lambda r: r.to_json())
    worst: dict = {}
    for rep in reports:
        m = rep.margin()
        if math.isfinite(m):
            worst[rep.quantity] = min(worst.get(rep.quantity, math.inf), m)
    failures = tuple(r for r in reports if not r.passed)
    return FuzzReport(
        total=len(reports),
        failures=failures,
        reports=tuple(reports),
        worst_margins=worst,
    )
