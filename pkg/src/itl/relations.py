"""Tri-state evaluators for the interval relations.

``True``/``False`` are returned only when the representation proves them; all
other cases come back ``Unknown`` with the horizon that was scanned and, for
goals of the "infinitely often" shape, the number of witnesses found inside
it.  On the decidable fragment (EPDiff stream against word-form set, windowed
partition, or periodic measurable set) everything is settled exactly through
the profile kernel; Ramp streams against word-form sets are settled by an
analytic divergence bound whenever that bound is conclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import BadParams, MalformedSpec, ProgramDivergence
from .kernel.measures import MeasurableSet
from .kernel.partitions import Partition
from .kernel.profiles import colored_count_profile, interval_count_profile, measure_profile
from .kernel.sets import EPWord, OmegaSet
from .kernel.streams import EPDiff, Ramp, UpStream

DEFAULT_HORIZON = 256

FORALL = "forall"
EXISTS = "exists"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a relation query: true, false, or unknown-with-evidence."""

    kind: str
    horizon: Optional[int] = None
    evidence: Optional[int] = None
    warnings: Tuple[str, ...] = ()

    @property
    def is_true(self) -> bool:
        return self.kind == "true"

    @property
    def is_false(self) -> bool:
        return self.kind == "false"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def truth(self) -> Optional[bool]:
        if self.kind == "true":
            return True
        if self.kind == "false":
            return False
        return None

    def negate(self) -> "Verdict":
        if self.kind == "true":
            return Verdict("false", warnings=self.warnings)
        if self.kind == "false":
            return Verdict("true", warnings=self.warnings)
        return self

    def with_warning(self, message: str) -> "Verdict":
        return Verdict(self.kind, self.horizon, self.evidence, self.warnings + (message,))

    def to_json(self):
        out = {"verdict": self.kind}
        if self.horizon is not None:
            out["horizon"] = self.horizon
        if self.evidence is not None:
            out["evidence"] = self.evidence
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def true_verdict(evidence: Optional[int] = None) -> Verdict:
    return Verdict("true", evidence=evidence)


def false_verdict(evidence: Optional[int] = None) -> Verdict:
    return Verdict("false", evidence=evidence)


def unknown_verdict(horizon: int, evidence: int = 0) -> Verdict:
    return Verdict("unknown", horizon=horizon, evidence=evidence)


# ---------------------------------------------------------------------------
# thresholds


@dataclass(frozen=True)
class Const:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise BadParams("count thresholds are naturals")


@dataclass(frozen=True)
class Identity:
    """Admit up to n points in the n-th interval."""


@dataclass(frozen=True)
class FnThreshold:
    """Admit up to g(n) points in the n-th interval (g nondecreasing)."""

    g: UpStream


@dataclass(frozen=True)
class BoundedExistential:
    """Some fixed bound works: ∃k followed by the chosen quantifier."""


ThresholdSpec = Union[Const, Identity, FnThreshold, BoundedExistential]


@dataclass(frozen=True)
class ConstEps:
    eps: Fraction

    def __post_init__(self):
        if self.eps <= 0:
            raise BadParams("measure thresholds must be positive")


@dataclass(frozen=True)
class VecEps:
    """A rational null sequence: finitely many explicit values then zero, or
    a geometric decay scale * ratio^n with ratio < 1."""

    kind: str
    values: Tuple[Fraction, ...] = ()
    scale: Fraction = Fraction(1)
    ratio: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.kind not in ("ultimately_zero", "geometric"):
            raise BadParams(f"unknown vanishing-sequence kind {self.kind!r}")
        if self.kind == "geometric" and not (0 < self.ratio < 1 and self.scale > 0):
            raise BadParams("geometric sequences need scale > 0 and 0 < ratio < 1")

    def value_at(self, n: int) -> Fraction:
        if self.kind == "ultimately_zero":
            return self.values[n] if n < len(self.values) else Fraction(0)
        return self.scale * self.ratio**n


@dataclass(frozen=True)
class SumFinite:
    """The per-interval measures form a convergent series."""


MeasureThreshold = Union[ConstEps, VecEps, SumFinite]


def _require_quant(quant: str):
    if quant not in (FORALL, EXISTS):
        raise BadParams(f"quantifier must be {FORALL!r} or {EXISTS!r}, got {quant!r}")


# ---------------------------------------------------------------------------
# counting relations


def eval_count_relation(
    f: UpStream,
    x: OmegaSet,
    threshold: ThresholdSpec,
    quant: str,
    horizon: int = DEFAULT_HORIZON,
    witness_target: Optional[int] = None,
) -> Verdict:
    """Decide quant-infinitely-many n: |[f(n), f(n+1)) ∩ X| <= threshold(n)."""
    _require_quant(quant)
    warnings = _domain_warnings(f, threshold, quant)

    if isinstance(f, EPDiff) and isinstance(x, EPWord):
        profile = interval_count_profile(f, x)
        verdict = _decide_from_profile(profile, threshold, quant)
        return _attach(verdict, warnings)

    if isinstance(x, EPWord):
        verdict = _divergence_rule(f, x, threshold, quant)
        if verdict is not None:
            return _attach(verdict, warnings)

    verdict = _scan_counts(f, x, threshold, quant, horizon, witness_target)
    return _attach(verdict, warnings)


def _attach(verdict: Verdict, warnings) -> Verdict:
    for w in warnings:
        verdict = verdict.with_warning(w)
    return verdict


def _domain_warnings(f: UpStream, threshold, quant) -> list[str]:
    out = []
    if quant == FORALL and isinstance(threshold, Identity):
        if f.traits().in_gt_id is False:
            out.append("DomainViolation: stream gaps do not stay above the index")
    if quant == FORALL and isinstance(threshold, FnThreshold):
        tr = f.traits()
        if tr.divergent_diffs is False:
            out.append("DomainViolation: stream gaps do not dominate the threshold function")
    return out


def _decide_from_profile(profile, threshold, quant) -> Verdict:
    cycle = profile.cycle
    if isinstance(threshold, Const):
        if quant == FORALL:
            return true_verdict() if all(c <= threshold.k for c in cycle) else false_verdict()
        return true_verdict() if any(c <= threshold.k for c in cycle) else false_verdict()
    if isinstance(threshold, (Identity, FnThreshold)):
        # counts are eventually periodic hence bounded; the threshold diverges
        return true_verdict()
    if isinstance(threshold, BoundedExistential):
        bound = max(cycle) if quant == FORALL else min(cycle)
        return true_verdict(evidence=bound)
    raise MalformedSpec(f"unknown threshold {threshold!r}")


def _ramp_like_alpha(f: UpStream) -> Optional[Tuple[int, int]]:
    """(alpha, beta) when gaps are alpha*n + beta exactly; None otherwise."""
    if isinstance(f, Ramp):
        return f.alpha, f.beta
    return None


def _diverging_gaps(f: UpStream) -> bool:
    return f.traits().divergent_diffs is True


def _divergence_rule(f: UpStream, x: EPWord, threshold, quant) -> Optional[Verdict]:
    """Counts against a word-form set grow like gap * density; with diverging
    gaps that settles constant and bounded thresholds negatively, and the
    exact Ramp slope settles identity/function thresholds when strict."""
    if not _diverging_gaps(f):
        return None
    length = x.period
    weight = x.ones_per_cycle  # >= 1 for an infinite set
    if isinstance(threshold, (Const, BoundedExistential)):
        # counts >= floor(gap/L) * w eventually exceed every fixed bound
        return false_verdict()
    ramp = _ramp_like_alpha(f)
    if ramp is None:
        return None
    alpha, beta = ramp
    if isinstance(threshold, Identity):
        if alpha * weight < length:
            return true_verdict()
        if alpha * weight > length:
            return false_verdict()
        if beta >= length:
            return false_verdict()
        return None
    if isinstance(threshold, FnThreshold):
        g = threshold.g
        if isinstance(g, Ramp):
            return true_verdict()  # linear counts against a quadratic allowance
        if isinstance(g, EPDiff):
            rate = Fraction(alpha * weight, length)
            slope = g.slope()
            if rate < slope:
                return true_verdict()
            if rate > slope:
                return false_verdict()
        return None
    return None


def _threshold_at(threshold, n: int) -> int:
    if isinstance(threshold, Const):
        return threshold.k
    if isinstance(threshold, Identity):
        return n
    if isinstance(threshold, FnThreshold):
        return threshold.g.value(n)
    raise MalformedSpec(f"threshold {threshold!r} has no pointwise value")


def _scan_counts(f, x, threshold, quant, horizon, witness_target) -> Verdict:
    if isinstance(threshold, BoundedExistential):
        # a finite scan can neither produce nor refute a uniform bound
        return unknown_verdict(horizon=0, evidence=0)
    hits = 0
    n = 0
    try:
        for n in range(horizon):
            c = x.count_in(f.value(n), f.value(n + 1))
            ok = c <= _threshold_at(threshold, n)
            # FORALL scans tally violations: those witness the dual goal,
            # so the early stop applies to both orientations
            if ok == (quant == EXISTS):
                hits += 1
                if witness_target is not None and hits >= witness_target:
                    return unknown_verdict(horizon=n + 1, evidence=hits)
    except ProgramDivergence:
        return unknown_verdict(horizon=n, evidence=hits)
    return unknown_verdict(horizon=horizon, evidence=hits)


# ---------------------------------------------------------------------------
# colored relations


def eval_colored_relation(
    f: UpStream,
    p: Partition,
    k: int,
    quant: str,
    horizon: int = DEFAULT_HORIZON,
    witness_target: Optional[int] = None,
) -> Verdict:
    """Decide quant-infinitely-many n: at most k blocks meet [f(n), f(n+1))."""
    _require_quant(quant)
    if k < 1:
        raise BadParams("colored relations need k >= 1")
    if isinstance(f, EPDiff):
        profile = colored_count_profile(f, p)
        return _decide_from_profile(profile, Const(k), quant)
    if _diverging_gaps(f):
        # an interval of diverging length meets ever more windows, each
        # holding at least one block
        return false_verdict()
    hits = 0
    n = 0
    try:
        for n in range(horizon):
            c = p.blocks_meeting(f.value(n), f.value(n + 1))
            ok = c <= k
            if ok == (quant == EXISTS):
                hits += 1
                if witness_target is not None and hits >= witness_target:
                    return unknown_verdict(horizon=n + 1, evidence=hits)
    except ProgramDivergence:
        return unknown_verdict(horizon=n, evidence=hits)
    return unknown_verdict(horizon=horizon, evidence=hits)


# ---------------------------------------------------------------------------
# interval nesting (Blass inclusion)


def eval_blass_inclusion(f: UpStream, g: UpStream, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """Decide: for all but finitely many n some f-interval nests inside
    [g(n), g(n+1))."""
    if isinstance(f, EPDiff) and isinstance(g, EPDiff):
        return _blass_exact(f, g)
    hits = 0
    n = 0
    try:
        for n in range(horizon):
            if not _nests_in(f, g.value(n), g.value(n + 1)):
                hits += 1
    except ProgramDivergence:
        return unknown_verdict(horizon=n, evidence=hits)
    return unknown_verdict(horizon=horizon, evidence=hits)


def _nests_in(f: UpStream, lo: int, hi: int) -> bool:
    m = _first_index_geq(f, lo)
    while f.value(m) < hi:
        if f.value(m + 1) <= hi:
            return True
        m += 1
    return False


def _first_index_geq(f: UpStream, x: int) -> int:
    if f.value(0) >= x:
        return 0
    lo, hi = 0, 1
    while f.value(hi) < x:
        lo, hi = hi, hi * 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if f.value(mid) < x:
            lo = mid
        else:
            hi = mid
    return hi


def _blass_exact(f: EPDiff, g: EPDiff) -> Verdict:
    p_f = len(f.prefix_diffs)
    p_g = len(g.prefix_diffs)
    max_gap = max(f.prefix_diffs + f.cycle_diffs)
    state_bound = len(f.cycle_diffs) * len(g.cycle_diffs) * (max_gap + 1)
    seen = {}
    flags: list[bool] = []
    n = 0
    m0 = _first_index_geq(f, g.value(0))
    guard = 0
    while True:
        if n >= p_g and m0 >= p_f:
            state = (g.diff_phase(n), f.diff_phase(m0), f.value(m0) - g.value(n))
            if state in seen:
                t_raw = seen[state]
                cycle = flags[t_raw:n]
                return true_verdict() if all(cycle) else false_verdict()
            seen[state] = n
            guard += 1
            if guard > state_bound + 2:
                raise RuntimeError("nesting decision exceeded its state bound")
        lo, hi = g.value(n), g.value(n + 1)
        nested = False
        m = m0
        while f.value(m) < hi:
            if f.value(m) >= lo and f.value(m + 1) <= hi:
                nested = True
            m += 1
        flags.append(nested)
        n += 1
        m0 = _first_index_geq(f, g.value(n))


# ---------------------------------------------------------------------------
# eventual domination


def eval_leq_star(f: UpStream, g: UpStream, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """Decide: f(n) <= g(n) for all but finitely many n."""
    if isinstance(f, EPDiff) and isinstance(g, EPDiff):
        sf, sg = f.slope(), g.slope()
        if sf < sg:
            return true_verdict()
        if sf > sg:
            return false_verdict()
        n0 = max(len(f.prefix_diffs), len(g.prefix_diffs))
        window = _lcm(len(f.cycle_diffs), len(g.cycle_diffs))
        # equal slopes: f - g is periodic from n0 on
        bad = sum(1 for n in range(n0, n0 + window) if f.value(n) > g.value(n))
        return false_verdict(evidence=bad) if bad else true_verdict()
    if isinstance(f, Ramp) and isinstance(g, Ramp):
        lead = (
            f.alpha - g.alpha,
            2 * f.beta - f.alpha - (2 * g.beta - g.alpha),
            2 * (f.start - g.start),
        )
        for coeff in lead:
            if coeff > 0:
                return false_verdict()
            if coeff < 0:
                return true_verdict()
        return true_verdict()
    if isinstance(f, EPDiff) and isinstance(g, Ramp):
        return true_verdict()
    if isinstance(f, Ramp) and isinstance(g, EPDiff):
        return false_verdict()
    hits = 0
    n = 0
    try:
        for n in range(horizon):
            if f.value(n) > g.value(n):
                hits += 1
    except ProgramDivergence:
        return unknown_verdict(horizon=n, evidence=hits)
    return unknown_verdict(horizon=horizon, evidence=hits)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# measure relations


def eval_measure_relation(
    f: UpStream,
    y: MeasurableSet,
    threshold: MeasureThreshold,
    quant: str = FORALL,
    horizon: int = DEFAULT_HORIZON,
    witness_target: Optional[int] = None,
) -> Verdict:
    """Decide the measure analogue: μ([f(n), f(n+1)) ∩ Y) below the threshold."""
    _require_quant(quant)
    if isinstance(f, EPDiff):
        profile = measure_profile(f, y)
        cycle = profile.cycle
        if isinstance(threshold, ConstEps):
            if quant == FORALL:
                return true_verdict() if all(v <= threshold.eps for v in cycle) else false_verdict()
            return true_verdict() if any(v <= threshold.eps for v in cycle) else false_verdict()
        if isinstance(threshold, VecEps):
            # the allowance vanishes, so only vanishing measures survive
            if quant == FORALL:
                return true_verdict() if all(v == 0 for v in cycle) else false_verdict()
            return true_verdict() if any(v == 0 for v in cycle) else false_verdict()
        if isinstance(threshold, SumFinite):
            # contiguous intervals tile [f(0), ∞); a positive cycle value
            # recurs and the series diverges
            return true_verdict() if all(v == 0 for v in cycle) else false_verdict()
        raise MalformedSpec(f"unknown measure threshold {threshold!r}")
    if isinstance(threshold, SumFinite):
        return unknown_verdict(horizon=0, evidence=0)
    hits = 0
    n = 0
    try:
        for n in range(horizon):
            mu = y.measure_in(f.value(n), f.value(n + 1))
            if isinstance(threshold, ConstEps):
                ok = mu <= threshold.eps
            else:
                ok = mu <= threshold.value_at(n)
            if ok == (quant == EXISTS):
                hits += 1
                if witness_target is not None and hits >= witness_target:
                    return unknown_verdict(horizon=n + 1, evidence=hits)
    except ProgramDivergence:
        return unknown_verdict(horizon=n, evidence=hits)
    return unknown_verdict(horizon=horizon, evidence=hits)


# ---------------------------------------------------------------------------
# relation registry (stable identifiers for systems, CLI, JSON)

RELATION_IDS = (
    "forall_k",
    "exists_k",
    "col_forall_k",
    "col_exists_k",
    "blass_incl",
    "leq_star",
    "measure_forall",
    "measure_exists",
    "measure_sum",
    "measure_vec",
    "id_forall",
    "id_exists",
    "bd_forall",
    "bd_exists",
)


def relation_is_exists_style(rel_id: str) -> bool:
    """Whether the outer asymptotic quantifier is of the ∃∞ shape."""
    return "exists" in rel_id


def evaluate_relation(
    rel_id: str,
    params: dict,
    lhs,
    rhs,
    horizon: int = DEFAULT_HORIZON,
    witness_target: Optional[int] = None,
) -> Verdict:
    """Evaluate a relation by its stable identifier."""
    kw = dict(horizon=horizon, witness_target=witness_target)
    if rel_id in ("forall_k", "exists_k"):
        quant = FORALL if rel_id == "forall_k" else EXISTS
        return eval_count_relation(lhs, rhs, Const(int(params["k"])), quant, **kw)
    if rel_id in ("col_forall_k", "col_exists_k"):
        quant = FORALL if rel_id == "col_forall_k" else EXISTS
        return eval_colored_relation(lhs, rhs, int(params["k"]), quant, **kw)
    if rel_id == "blass_incl":
        return eval_blass_inclusion(lhs, rhs, horizon=horizon)
    if rel_id == "leq_star":
        return eval_leq_star(lhs, rhs, horizon=horizon)
    if rel_id in ("measure_forall", "measure_exists"):
        quant = FORALL if rel_id == "measure_forall" else EXISTS
        eps = params.get("eps", 1)
        return eval_measure_relation(lhs, rhs, ConstEps(Fraction(eps)), quant, **kw)
    if rel_id == "measure_sum":
        return eval_measure_relation(lhs, rhs, SumFinite(), FORALL, **kw)
    if rel_id == "measure_vec":
        vec = params.get("vec")
        if vec is None:
            vec = VecEps(kind="geometric", scale=Fraction(1), ratio=Fraction(1, 2))
        return eval_measure_relation(lhs, rhs, vec, params.get("quant", FORALL), **kw)
    if rel_id in ("id_forall", "id_exists"):
        quant = FORALL if rel_id == "id_forall" else EXISTS
        return eval_count_relation(lhs, rhs, Identity(), quant, **kw)
    if rel_id in ("bd_forall", "bd_exists"):
        quant = FORALL if rel_id == "bd_forall" else EXISTS
        return eval_count_relation(lhs, rhs, BoundedExistential(), quant, **kw)
    from .errors import UnknownId

    raise UnknownId(f"unknown relation id {rel_id!r}")
