"""The certified existence pipeline.

Five checks run in order -- dimension count, self-intersection, smallest
singular value, length-defect (rho), and displacement -- and the run stops at
the first failure.  Every pass decision is an exact rational comparison or a
certified interval comparison; floating point only ever seeds interval
endpoints that are re-verified exactly.  A structured ProofReport records the
numbers behind each decision, and render_proof_log turns it into the
human-readable log.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complexes import (ComplexError, Realization, SquaredLengthSpec,
                        collision_distance_squared, length_jacobian,
                        squared_lengths)
from .lcp import LemkeError
from .linalg import sigma_min_bounds
from .rationals import (CertificationError, RatInterval, Tri, certified_less,
                        format_rational, interval_sqrt, sqrt_bounds)

__all__ = [
    "StageDimension",
    "StageSelfIntersection",
    "StageSigma",
    "StageRho",
    "StageDisplacement",
    "ProofReport",
    "check_dimension_inequality",
    "check_non_self_intersection",
    "check_sigma_inequality",
    "check_rho_inequality",
    "check_displacement_inequality",
    "prove_existence",
    "render_proof_log",
]

# Stage identifiers, also used in ProofReport.failed_at.
DIMENSION = "inequality1"
SELF_INTERSECTION = "self_intersection"
SIGMA = "inequality2"
RHO = "inequality3"
DISPLACEMENT = "inequality4"


@dataclass(frozen=True)
class StageDimension:
    d: int
    n_vertices: int
    n_edges: int
    passed: bool


@dataclass(frozen=True)
class StageSelfIntersection:
    cd_squared: Optional[Fraction]   # None when there are no non-adjacent pairs
    cd_interval: Optional[RatInterval]
    pair: Optional[tuple]
    witness: Optional[tuple]
    vacuous: bool
    passed: bool


@dataclass(frozen=True)
class StageSigma:
    interval: Optional[RatInterval]
    error: Optional[str]
    passed: bool


@dataclass(frozen=True)
class StageRho:
    rho_squared: Fraction
    rho_interval: RatInterval
    bound_interval: RatInterval
    passed: bool


@dataclass(frozen=True)
class StageDisplacement:
    lhs_num: Optional[RatInterval]
    lhs_den: Optional[RatInterval]
    lhs: Optional[RatInterval]
    rhs: Optional[RatInterval]       # None when collision distance is vacuous
    vacuous: bool
    passed: bool


@dataclass
class ProofReport:
    realization: Realization
    lengths: SquaredLengthSpec
    digits: int
    inequality1: Optional[StageDimension] = None
    self_intersection: Optional[StageSelfIntersection] = None
    inequality2: Optional[StageSigma] = None
    inequality3: Optional[StageRho] = None
    inequality4: Optional[StageDisplacement] = None
    verdict: str = "FAILED"
    failed_at: Optional[str] = None
    error: Optional[str] = None
    displacement_bound: Optional[RatInterval] = None

    @property
    def proven(self) -> bool:
        return self.verdict == "PROVEN"


def check_dimension_inequality(r: Realization) -> StageDimension:
    """Inequality 1: d |V| >= |E|, compared exactly over the integers."""
    c = r.complex
    return StageDimension(r.dim, c.n_vertices, c.n_edges,
                          r.dim * c.n_vertices >= c.n_edges)


def check_non_self_intersection(r: Realization, digits: int = 8) -> StageSelfIntersection:
    """Exact squared collision distance; passes iff it is strictly positive.

    Also certifies a square-root interval around the collision distance for
    later use in inequality 4.  A complex with no non-adjacent pairs cannot
    self-intersect; that passes vacuously.
    """
    result = collision_distance_squared(r)
    if result is None:
        return StageSelfIntersection(None, None, None, None, True, True)
    cd_iv = sqrt_bounds(result.value, digits) if result.value > 0 else None
    return StageSelfIntersection(result.value, cd_iv, result.pair,
                                 result.witness, False, result.value > 0)


def check_sigma_inequality(r: Realization, digits: int = 8) -> StageSigma:
    """Inequality 2: certified sigma_min lower bound strictly positive."""
    try:
        iv = sigma_min_bounds(length_jacobian(r), digits)
    except CertificationError as exc:
        return StageSigma(None, str(exc), False)
    return StageSigma(iv, None, iv.lo > 0)


def check_rho_inequality(r: Realization, lengths: SquaredLengthSpec,
                         sigma_interval: RatInterval,
                         digits: int = 8) -> StageRho:
    """Inequality 3: rho < sigma_min^2 / (16 sqrt(|E|)).

    rho^2 is the exact sum of squared length defects; both sides become
    certified intervals before the comparison.
    """
    want = lengths.vector_for(r.complex)
    have = squared_lengths(r)
    rho2 = sum((w - h) ** 2 for w, h in zip(want, have))
    rho_iv = sqrt_bounds(rho2, digits)
    sqrt_e = sqrt_bounds(r.complex.n_edges, digits)
    bound_iv = sigma_interval * sigma_interval / (16 * sqrt_e)
    return StageRho(rho2, rho_iv, bound_iv,
                    certified_less(rho_iv, bound_iv) is Tri.TRUE)


def check_displacement_inequality(r: Realization, sigma_interval: RatInterval,
                                  rho_interval: RatInterval,
                                  cd_interval: Optional[RatInterval],
                                  digits: int = 8) -> StageDisplacement:
    """Inequality 4: the displacement bound is beaten by CD / sqrt(|V|).

    LHS = (sigma - sqrt(sigma^2 - 16 rho sqrt(|E|))) / (8 sqrt(|E|)); its
    interval doubles as the certified bound on how far the exact realization
    may sit from the starting one.  With no non-adjacent pairs the right side
    is +infinity and the check passes vacuously.
    """
    sqrt_e = sqrt_bounds(r.complex.n_edges, digits)
    inner = sigma_interval * sigma_interval - 16 * rho_interval * sqrt_e
    if inner.hi < 0:
        raise CertificationError("inner radicand certified negative; "
                                 "inequality 3 should have failed")
    # The true radicand is positive once inequality 3 holds; clamping the
    # lower endpoint to 0 keeps containment.
    inner = RatInterval(max(inner.lo, Fraction(0)), inner.hi)
    lhs_num = sigma_interval - interval_sqrt(inner, digits)
    lhs_den = 8 * sqrt_e
    lhs = lhs_num / lhs_den
    if cd_interval is None:
        return StageDisplacement(lhs_num, lhs_den, lhs, None, True, True)
    rhs = cd_interval / sqrt_bounds(r.complex.n_vertices, digits)
    return StageDisplacement(lhs_num, lhs_den, lhs, rhs, False,
                             certified_less(lhs, rhs) is Tri.TRUE)


def prove_existence(r: Realization, lengths: SquaredLengthSpec,
                    digits: int = 8, verbose: bool = False) -> ProofReport:
    """Run all five checks in order, stopping at the first failure.

    Internal certification errors mark the active stage failed rather than
    propagating: the prover may fail noisily but never claims PROVEN without
    every certificate in hand.
    """
    if r.complex.n_edges == 0:
        # inequality 3 compares against a bound scaled by 1/sqrt(|E|); the
        # whole argument assumes at least one length constraint.
        raise ComplexError("cannot certify a complex with no edges")
    report = ProofReport(r, lengths, digits)
    try:
        _run_stages(report, r, lengths, digits)
    except (CertificationError, LemkeError, ZeroDivisionError) as exc:
        report.error = str(exc)
        report.verdict = "FAILED"
    if verbose:
        print(render_proof_log(report))
    return report


def _run_stages(report, r, lengths, digits):
    # failed_at is set before each stage so an exception mid-stage still
    # names where the run died; it is cleared on full success.
    report.failed_at = DIMENSION
    report.inequality1 = check_dimension_inequality(r)
    if not report.inequality1.passed:
        return
    report.failed_at = SELF_INTERSECTION
    report.self_intersection = check_non_self_intersection(r, digits)
    if not report.self_intersection.passed:
        return
    report.failed_at = SIGMA
    report.inequality2 = check_sigma_inequality(r, digits)
    if not report.inequality2.passed:
        return
    report.failed_at = RHO
    report.inequality3 = check_rho_inequality(r, lengths,
                                              report.inequality2.interval, digits)
    if not report.inequality3.passed:
        return
    report.failed_at = DISPLACEMENT
    report.inequality4 = check_displacement_inequality(
        r, report.inequality2.interval, report.inequality3.rho_interval,
        report.self_intersection.cd_interval, digits)
    report.displacement_bound = report.inequality4.lhs
    if not report.inequality4.passed:
        return
    report.failed_at = None
    report.verdict = "PROVEN"


def _approx(x) -> str:
    return repr(round(float(x), 5))


def _iv(iv: RatInterval) -> str:
    return "[%s, %s] ~ [%s, %s]" % (format_rational(iv.lo), format_rational(iv.hi),
                                    _approx(iv.lo), _approx(iv.hi))


def _verdict_line(passed: bool, claim: str) -> str:
    if passed:
        return "\tSuccess: %s" % claim
    return "\tFailed: unable to verify %s" % claim


def render_proof_log(report: ProofReport) -> str:
    """The proof log: one section per executed stage, exact fractions plus
    5-place decimal approximations, ending in an overall verdict line."""
    r = report.realization
    c = r.complex
    lines = ["Attempting to prove existence", ""]

    lines.append("Starting realization:")
    lines.append("\tAbstract data:")
    lines.append("\t\tmode: maximal_simplices")
    lines.append("\t\tdata: %r" % (c.source_data if c.source_data is not None
                                   else c.maximal_simplices()))
    lines.append("\tCoordinate Data:")
    for v in c.vertices:
        coords = ", ".join(format_rational(x) for x in r.coords[v])
        lines.append("\t\t%s : [%s]" % (v, coords))
    lines.append("")
    lines.append("Desired square lengths:")
    for label, value in report.lengths.display_items():
        lines.append("\t%s : %s" % (label, format_rational(value)))
    lines.append("")

    s1 = report.inequality1
    if s1 is None:
        return _finish(lines, report)
    lines.append("Checking inequality 1:")
    lines.append("\t d  = %d" % s1.d)
    lines.append("\t|V| = %d" % s1.n_vertices)
    lines.append("\t|E| = %d" % s1.n_edges)
    lines.append(_verdict_line(s1.passed, "d|V| >= |E|"))
    if not s1.passed:
        return _finish(lines, report)
    lines.append("")

    s2 = report.self_intersection
    if s2 is None:
        return _finish(lines, report)
    lines.append("Checking self-intersection:")
    if s2.vacuous:
        lines.append("\tSquare collision distance = infinity "
                     "(no non-adjacent simplex pairs)")
    else:
        lines.append("\tSquare collision distance = %s"
                     % format_rational(s2.cd_squared))
        if s2.cd_interval is not None:
            lines.append("\tCollision distance in %s" % _iv(s2.cd_interval))
    lines.append(_verdict_line(s2.passed, "starting realization non-self-intersecting"))
    if not s2.passed:
        return _finish(lines, report)
    lines.append("")

    s3 = report.inequality2
    if s3 is None:
        return _finish(lines, report)
    lines.append("Checking inequality 2:")
    if s3.interval is not None:
        lines.append("\tsigma_min in %s" % _iv(s3.interval))
    else:
        lines.append("\tsigma_min bounds unavailable: %s" % s3.error)
    lines.append(_verdict_line(s3.passed, "sigma_min > 0"))
    if not s3.passed:
        return _finish(lines, report)
    lines.append("")

    s4 = report.inequality3
    if s4 is None:
        return _finish(lines, report)
    lines.append("Checking inequality 3:")
    lines.append("\trho_squared = %s" % format_rational(s4.rho_squared))
    lines.append("\trho in %s" % _iv(s4.rho_interval))
    lines.append("\tsigma_min ^ 2 / (16 * E ^ .5) in %s" % _iv(s4.bound_interval))
    lines.append(_verdict_line(s4.passed, "rho < sigma_min ^ 2 / (16 * E ^ .5)"))
    if not s4.passed:
        return _finish(lines, report)
    lines.append("")

    s5 = report.inequality4
    if s5 is None:
        return _finish(lines, report)
    lines.append("Checking inequality 4:")
    lines.append("\tLHS NUM := sigma_min - [sigma_min ^ 2 - 16 * rho * |E| ^ .5 ] ^ .5 in %s"
                 % _iv(s5.lhs_num))
    lines.append("\tLHS DEN := 8 * |E| ^ .5 in %s" % _iv(s5.lhs_den))
    lines.append("\tLHS     := (LHS NUM) / (LHS DEN) in %s" % _iv(s5.lhs))
    if s5.vacuous:
        lines.append("\tCD / |V| ^ .5 = infinity (no non-adjacent simplex pairs)")
    else:
        lines.append("\tCD / |V| ^ .5 in %s" % _iv(s5.rhs))
    lines.append(_verdict_line(s5.passed, "LHS < CD / |V| ^ .5"))
    if not s5.passed:
        return _finish(lines, report)

    lines.append("")
    lines.append("Success: existence proven")
    return "\n".join(lines)


def _finish(lines, report):
    if report.error:
        lines.append("\tError: %s" % report.error)
        lines.append("\tFailed: unable to verify (internal certification error)")
    return "\n".join(lines)
