"""Numeric replay of a centering certificate.

Points are sampled on each source subtorus and in the complement, pushed
through the certificate's chain, and tested against the target equations.
This is an independent check of the exact pushforward: it only uses the
chain's action on points, never its action on equations.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .arrangement import TorusEquation
from .centering import CenteringCertificate, verify_certificate_exact
from .errors import DegenerateEquation, ShapeMismatch, ZeroCoordinate
from .numeric import GUARD_BITS, check_precision, context, decimal, magnitude_bits, to_point

DEFAULT_PRECISION = 128
DEFAULT_TOLERANCE = 1e-25
DEFAULT_TRIALS = 64
# Complement images must keep a residual above tolerance * COMPLEMENT_GUARD.
COMPLEMENT_GUARD = 0.5
# Sampled points satisfy their equation to within 2**(-P + SAMPLE_SLACK_BITS).
SAMPLE_SLACK_BITS = 24

log = logging.getLogger(__name__)


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def residual(eq: TorusEquation, z, precision_bits: int = DEFAULT_PRECISION):
    """Relative defect ``|prod z^p - alpha| / |alpha|`` as an mpmath real."""
    check_precision(precision_bits)
    if len(z) != eq.dim:
        raise ShapeMismatch(f"point has {len(z)} coordinates, equation has {eq.dim}")
    work = context(
        precision_bits + GUARD_BITS + magnitude_bits(sum(abs(p) for p in eq.exponents)) + 2
    )
    pt = to_point(z, work)
    if any(c == 0 for c in pt):
        raise ZeroCoordinate("points of (C*)^n have no zero coordinate")
    value = work.mpc(1)
    for c, p in zip(pt, eq.exponents):
        if p:
            value *= c**p
    alpha = eq.constant._evaluate_in(work)
    return context(precision_bits).mpf(abs(value - alpha) / abs(alpha))


def _unit_circle(rng: random.Random, n: int, ctx) -> list:
    out = []
    for _ in range(n):
        angle = 2 * ctx.mpf(rng.random())
        out.append(ctx.mpc(ctx.cospi(angle), ctx.sinpi(angle)))
    return out


def sample_on_subtorus(eq: TorusEquation, seed=0, precision_bits: int = DEFAULT_PRECISION):
    """A point of the subtorus ``eq``.

    All coordinates except the first one with a nonzero exponent are drawn
    uniformly on the unit circle; that pivot coordinate is then solved for
    with the principal branch of the root.
    """
    check_precision(precision_bits)
    if eq.is_degenerate():
        raise DegenerateEquation("all exponents are zero")
    rng = _rng(seed)
    work = context(
        precision_bits + GUARD_BITS + magnitude_bits(sum(abs(p) for p in eq.exponents)) + 2
    )
    pivot = next(i for i, p in enumerate(eq.exponents) if p)
    z = _unit_circle(rng, eq.dim, work)
    w = eq.constant._evaluate_in(work)
    for j, p in enumerate(eq.exponents):
        if p and j != pivot:
            w *= z[j] ** -p
    z[pivot] = work.exp(work.log(w) / eq.exponents[pivot])
    out = context(precision_bits)
    return tuple(out.mpc(c) for c in z)


def chain_exponent_magnitude(cert: CenteringCertificate) -> int:
    """Exponent magnitude that roundoff in a replayed residual is amplified by.

    ``DiffeoChain.apply`` widens its working precision by the row norms of
    its monomial steps, so those cancel out; what remains is rounding the
    sample (source exponents) and the image (target exponents) to the
    caller's precision.
    """
    return max(
        sum(abs(p) for p in s.exponents) + sum(abs(p) for p in t.exponents)
        for s, t in zip(cert.source.equations, cert.target.equations)
    )


def tolerance_floor(cert: CenteringCertificate, precision_bits: int) -> float:
    """Conservative roundoff bound ``2**(-P + 24) * (1 + magnitude)``.

    The bound carries 24 bits of slack; observed residuals sit far below it.
    """
    return 2.0 ** (-precision_bits + SAMPLE_SLACK_BITS) * (1 + chain_exponent_magnitude(cert))


@dataclass
class VerifyReport:
    trials_per_equation: int
    precision_bits: int
    tolerance: float
    seed: int
    tolerance_floor: float = 0.0
    max_residuals: list = field(default_factory=list)
    failing_equations: list[int] = field(default_factory=list)
    complement_trials: int = 0
    complement_rejected: int = 0
    min_complement_residual: object = None
    complement_failures: int = 0
    exact_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.failing_equations or self.complement_failures or self.exact_failures)

    @property
    def max_residual(self):
        return max(self.max_residuals, default=0)

    def to_json(self) -> dict:
        bits = self.precision_bits

        def fmt(x):
            return None if x is None else decimal(x, bits)

        return {
            "verdict": "pass" if self.passed else "fail",
            "trials_per_equation": self.trials_per_equation,
            "precision_bits": bits,
            "tolerance": repr(self.tolerance),
            "seed": self.seed,
            "tolerance_floor": repr(self.tolerance_floor),
            "max_residuals": [fmt(r) for r in self.max_residuals],
            "failing_equations": list(self.failing_equations),
            "complement_trials": self.complement_trials,
            "complement_rejected": self.complement_rejected,
            "min_complement_residual": fmt(self.min_complement_residual),
            "complement_failures": self.complement_failures,
            "exact_failures": list(self.exact_failures),
        }


def verify_diffeo(
    cert: CenteringCertificate,
    trials: int = DEFAULT_TRIALS,
    precision_bits: int = DEFAULT_PRECISION,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
    check_exact: bool = False,
) -> VerifyReport:
    """Sample, push through ``cert.chain`` and compare against ``cert.target``.

    Source equation ``i`` must land on target equation ``i``; complement
    samples (those farther than ``tolerance`` from every source subtorus)
    must stay off every target subtorus. Failures are reported, not raised.
    """
    check_precision(precision_bits)
    if trials < 0:
        raise ValueError(f"trials must be >= 0, got {trials}")
    if not tolerance > 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    rng = random.Random(seed)
    report = VerifyReport(trials, precision_bits, tolerance, seed)
    report.tolerance_floor = tolerance_floor(cert, precision_bits)
    if not tolerance > report.tolerance_floor:
        log.warning(
            "tolerance %g is below the conservative roundoff bound %g at %d bits",
            tolerance, report.tolerance_floor, precision_bits,
        )
    if check_exact:
        report.exact_failures = verify_certificate_exact(cert).failures

    chain = cert.chain
    zero = context(precision_bits).mpf(0)
    for i, (src, tgt) in enumerate(zip(cert.source.equations, cert.target.equations), start=1):
        worst = zero
        for _ in range(trials):
            z = sample_on_subtorus(src, rng, precision_bits)
            r = residual(tgt, chain.apply(z, precision_bits), precision_bits)
            worst = max(worst, r)
        report.max_residuals.append(worst)
        if trials and not worst < tolerance:
            report.failing_equations.append(i)

    ctx = context(precision_bits)
    for _ in range(trials):
        z = tuple(_unit_circle(rng, cert.n, ctx))
        if any(residual(eq, z, precision_bits) < tolerance for eq in cert.source.equations):
            report.complement_rejected += 1
            continue
        report.complement_trials += 1
        image = chain.apply(z, precision_bits)
        r = min(residual(eq, image, precision_bits) for eq in cert.target.equations)
        if report.min_complement_residual is None or r < report.min_complement_residual:
            report.min_complement_residual = r
        if not r > tolerance * COMPLEMENT_GUARD:
            report.complement_failures += 1
    return report
