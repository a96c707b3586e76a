"""Relational-system registry, duals, and the constructive Tukey connections.

A relational system pairs two object domains with a relation evaluator; a
Tukey connection between systems is a pair of maps whose defining implication
``premise(map_minus(x), y') => conclusion(x, map_plus(y'))`` is the contract
the harness verifies.  Every connection here is a concrete executable map;
each also registers one or more *mutants* (deliberately corrupted copies)
used to confirm that the harness can detect broken morphisms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import BadParams, ProgramDivergence, TypeMismatch, UnknownId
from .kernel.measures import MeasurableSet, contract_set, unit_blocks
from .kernel.partitions import Partition, interval_partition_of, minima_set
from .kernel.sets import EPWord, OmegaSet, RangeOf, range_set, sample_enumeration
from .kernel.streams import (
    EPDiff,
    Program,
    Ramp,
    StreamTraits,
    UpStream,
    recurrence_program,
    reindex_stream,
    scale_values,
)
from .rand import Rng
from .relations import (
    DEFAULT_HORIZON,
    Verdict,
    evaluate_relation,
    relation_is_exists_style,
    true_verdict,
)

# ---------------------------------------------------------------------------
# relational systems


@dataclass(frozen=True)
class Domain:
    """Machine-readable side descriptor used by generators and the CLI."""

    kind: str  # "stream" | "set" | "partition" | "measure"
    gap_gt: int = 0  # streams: every gap exceeds this
    id_gaps: bool = False  # streams: gap at n exceeds n
    divergent: bool = False  # streams: gaps tend to infinity
    co_infinite: bool = False  # sets: complement must be infinite

    def describe(self) -> str:
        bits = [self.kind]
        if self.gap_gt:
            bits.append(f"gaps>{self.gap_gt}")
        if self.id_gaps:
            bits.append("gaps>index")
        if self.divergent:
            bits.append("gaps->oo")
        if self.co_infinite:
            bits.append("co-infinite")
        return ",".join(bits)


@dataclass(frozen=True)
class RelationalSystem:
    sid: str
    x_domain: Domain
    y_domain: Domain
    relation_id: str
    params: dict = field(default_factory=dict)
    dualized: bool = False
    metadata: str = ""
    base: Optional["RelationalSystem"] = None

    def holds(self, x, y, horizon: int = DEFAULT_HORIZON,
              witness_target: Optional[int] = None) -> Verdict:
        if self.dualized:
            assert self.base is not None
            return self.base.holds(y, x, horizon=horizon, witness_target=witness_target).negate()
        return evaluate_relation(self.relation_id, self.params, x, y,
                                 horizon=horizon, witness_target=witness_target)

    def dual(self) -> "RelationalSystem":
        if self.dualized:
            assert self.base is not None
            return self.base
        return RelationalSystem(
            sid=f"dual({self.sid})",
            x_domain=self.y_domain,
            y_domain=self.x_domain,
            relation_id=self.relation_id,
            params=self.params,
            dualized=True,
            metadata=f"dual of {self.sid}: bounding and dominating numbers swap",
            base=self,
        )

    @property
    def exists_style(self) -> bool:
        """Whether a positive instance is witnessed infinitely often."""
        if self.dualized:
            assert self.base is not None
            return not self.base.exists_style
        return relation_is_exists_style(self.relation_id)

    def same_system(self, other: "RelationalSystem") -> bool:
        return (self.sid, self.relation_id, tuple(sorted(self.params.items())),
                self.dualized) == (
            other.sid, other.relation_id, tuple(sorted(other.params.items())),
            other.dualized)


def dualize_system(system: RelationalSystem) -> RelationalSystem:
    return system.dual()


_STREAM = Domain("stream")
_SET = Domain("set")


def system_D() -> RelationalSystem:
    return RelationalSystem(
        "D", _STREAM, _STREAM, "leq_star",
        metadata="b(D) = b and d(D) = d: the classical bounding/dominating pair",
    )


def system_I() -> RelationalSystem:
    return RelationalSystem(
        "I", _STREAM, _STREAM, "blass_incl",
        metadata="interval nesting system: b(I) = b and d(I) = d",
    )


def system_R(quant: str, k: int) -> RelationalSystem:
    if k < 0:
        raise BadParams("counting systems need k >= 0")
    rel = "forall_k" if quant == "forall" else "exists_k"
    if quant == "forall":
        meta = ("b = 1 and the dominating number is not well-defined or infinity"
                if k == 0 else
                f"b(R_forall_{k}) = b and d(R_forall_{k}) = d")
    else:
        meta = f"b(R_exists_{k}) = d and d(R_exists_{k}) = b"
    return RelationalSystem(f"R_{quant}_k{{k={k}}}", _STREAM, _SET, rel, {"k": k},
                            metadata=meta)


def system_col(quant: str, k: int) -> RelationalSystem:
    if k < 1:
        raise BadParams("colored systems need k >= 1")
    rel = "col_forall_k" if quant == "forall" else "col_exists_k"
    if quant == "forall":
        meta = ("b(R_col_forall_1) = 2: two strictly interleaved streams already "
                "defeat every partition" if k == 1 else
                f"b(R_col_forall_{k}) = b and d(R_col_forall_{k}) = d (k >= 2)")
    else:
        meta = f"b(R_col_exists_{k}) = d and d(R_col_exists_{k}) = b (k >= 2)"
    return RelationalSystem(f"R_col_{quant}_k{{k={k}}}", _STREAM,
                            Domain("partition"), rel, {"k": k}, metadata=meta)


def system_L(quant: str, k: int) -> RelationalSystem:
    if k < 0:
        raise BadParams("restricted systems need k >= 0")
    rel = "forall_k" if quant == "forall" else "exists_k"
    if quant == "forall":
        meta = (f"b(L_forall_{k}) = b and d(L_forall_{k}) = d (k > 0)" if k else
                "b = 1 and the dominating number is not well-defined for k = 0")
    else:
        meta = f"b(L_exists_{k}) = d and d(L_exists_{k}) = b"
    return RelationalSystem(
        f"L_{quant}_k{{k={k}}}", Domain("stream", gap_gt=k),
        Domain("set", co_infinite=True), rel, {"k": k}, metadata=meta)


def system_M(quant: str, eps) -> RelationalSystem:
    eps = Fraction(eps)
    if eps <= 0:
        raise BadParams("measure systems need eps > 0")
    rel = "measure_forall" if quant == "forall" else "measure_exists"
    swap = quant == "exists"
    meta = (f"b(M_{quant}{{eps}}) = {'d' if swap else 'b'} and "
            f"d(M_{quant}{{eps}}) = {'b' if swap else 'd'} for every eps > 0")
    return RelationalSystem(f"M_{quant}{{eps={eps}}}", _STREAM, Domain("measure"),
                            rel, {"eps": eps}, metadata=meta)


def system_id(quant: str) -> RelationalSystem:
    rel = "id_forall" if quant == "forall" else "id_exists"
    if quant == "forall":
        meta = ("index-sized allowance: d(R_id) = d and b(R_id) = b "
                "(stated without the quantifier subscript)")
    else:
        meta = "d(R_id_exists) = b and b(R_id_exists) = d"
    return RelationalSystem(f"R_id_{quant}", Domain("stream", id_gaps=True), _SET,
                            rel, metadata=meta)


def system_bd(quant: str) -> RelationalSystem:
    rel = "bd_forall" if quant == "forall" else "bd_exists"
    if quant == "forall":
        meta = "d(R_bd_forall) = d and b(R_bd_forall) = b"
    else:
        meta = "d(R_bd_exists) = b and b(R_bd_exists) = d"
    return RelationalSystem(f"R_bd_{quant}", Domain("stream", divergent=True), _SET,
                            rel, metadata=meta)


_SYSTEM_FAMILIES = {
    "D": lambda params: system_D(),
    "I": lambda params: system_I(),
    "R_forall_k": lambda params: system_R("forall", int(params.get("k", 1))),
    "R_exists_k": lambda params: system_R("exists", int(params.get("k", 1))),
    "R_col_forall_k": lambda params: system_col("forall", int(params.get("k", 2))),
    "R_col_exists_k": lambda params: system_col("exists", int(params.get("k", 2))),
    "L_forall_k": lambda params: system_L("forall", int(params.get("k", 1))),
    "L_exists_k": lambda params: system_L("exists", int(params.get("k", 1))),
    "M_forall": lambda params: system_M("forall", params.get("eps", 1)),
    "M_exists": lambda params: system_M("exists", params.get("eps", 1)),
    "R_id_forall": lambda params: system_id("forall"),
    "R_id_exists": lambda params: system_id("exists"),
    "R_bd_forall": lambda params: system_bd("forall"),
    "R_bd_exists": lambda params: system_bd("exists"),
}

_NUM_SUFFIX = re.compile(
    r"^(R_forall|R_exists|R_col_forall|R_col_exists|L_forall|L_exists)_(\d+)$")


def get_system(spec: str) -> RelationalSystem:
    """Resolve a system id like ``D``, ``R_forall_k{k=1}``, ``R_forall_0`` or
    ``dual(...)``."""
    spec = spec.strip()
    if spec.startswith("dual(") and spec.endswith(")"):
        return get_system(spec[5:-1]).dual()
    m = _NUM_SUFFIX.match(spec)
    if m:
        return get_system(f"{m.group(1)}_k{{k={m.group(2)}}}")
    name, params = _parse_id(spec)
    if name not in _SYSTEM_FAMILIES:
        raise UnknownId(f"unknown system {spec!r}")
    return _SYSTEM_FAMILIES[name](params)


def _parse_id(spec: str):
    m = re.match(r"^([A-Za-z0-9_]+)(\{(.*)\})?$", spec)
    if not m:
        raise UnknownId(f"cannot parse id {spec!r}")
    name = m.group(1)
    params = {}
    if m.group(3):
        for item in m.group(3).split(","):
            if not item.strip():
                continue
            key, _, val = item.partition("=")
            params[key.strip()] = val.strip()
    return name, params


def list_systems() -> list[RelationalSystem]:
    reps = [
        "D", "I",
        "R_forall_k{k=0}", "R_forall_k{k=1}", "R_exists_k{k=1}",
        "R_col_forall_k{k=2}", "R_col_exists_k{k=2}",
        "L_forall_k{k=1}", "L_exists_k{k=1}",
        "M_forall{eps=1}", "M_exists{eps=1}",
        "R_id_forall", "R_id_exists", "R_bd_forall", "R_bd_exists",
    ]
    out = [get_system(r) for r in reps]
    out.extend(s.dual() for s in (get_system("D"), get_system("I")))
    return out


# ---------------------------------------------------------------------------
# constructive maps


def sparse_selector(f: UpStream) -> Program:
    """f'(0) = 0 and f'(n+1) = f(f'(n)) + 2, the least choice keeping
    f(f'(n)) + 1 < f'(n+1); its range is co-infinite."""
    declared = StreamTraits(min_diff=None, in_gt_id=None, divergent_diffs=None,
                            declared_gap_gt=1)
    return recurrence_program("sparse_selector", 0,
                              lambda v, n: f.value(v) + 2, declared=declared)


def double_count_bound(x: OmegaSet, k: int) -> Program:
    """Monotone envelope g of f_X(n) = min{m > n : |[n, m) ∩ X| > 2k}."""
    if k < 1:
        raise BadParams("double_count_bound needs k >= 1")

    def f_x(n: int) -> int:
        below = x.count_in(0, n)
        # the (2k+1)-th member at or beyond n; one past it is minimal
        return max(x.enumerate(below + 2 * k) + 1, n + 1)

    def gen():
        g = f_x(0)
        n = 0
        while True:
            yield g
            n += 1
            g = max(f_x(n), g + 1)

    return Program("double_count_bound", gen)


def recursive_spreader(h: UpStream, k: int) -> Program:
    """h'(0) = 0 and h'(n+1) = k + 1 + h'(n) + h(h'(n)); every gap exceeds k."""
    if k < 0:
        raise BadParams("recursive_spreader needs k >= 0")
    declared = StreamTraits(min_diff=None, in_gt_id=True, divergent_diffs=True,
                            declared_gap_gt=k)
    return recurrence_program(f"recursive_spreader(k={k})", 0,
                              lambda v, n: k + 1 + v + h.value(v), declared=declared)


def id_majorant(x: OmegaSet) -> Program:
    """h(0) = x_0 and h(n) = max(x_{n*n}, h(n-1) + n + 1): majorizes the
    square-sampled enumeration while keeping gaps above the index."""
    declared = StreamTraits(min_diff=None, in_gt_id=True, divergent_diffs=True,
                            declared_gap_gt=1)
    return recurrence_program(
        "id_majorant", x.enumerate(0),
        lambda v, n: max(x.enumerate((n + 1) * (n + 1)), v + n + 2),
        declared=declared)


def nested_accelerator(f: UpStream) -> Program:
    """h(0) = 0 and h(n+1) = f(h(n) + n + 1); gaps exceed the index."""
    declared = StreamTraits(min_diff=None, in_gt_id=True, divergent_diffs=True,
                            declared_gap_gt=0)
    return recurrence_program("nested_accelerator", 0,
                              lambda v, n: f.value(v + n + 1), declared=declared)


def bd_forall_spreader(g: UpStream) -> Program:
    """f(0) = g(0) and f(n+1) = g(f(n)) + n + 1; the gap at n is at least n + 2."""
    declared = StreamTraits(min_diff=None, in_gt_id=True, divergent_diffs=True,
                            declared_gap_gt=1)
    return recurrence_program("bd_forall_spreader", g.value(0),
                              lambda v, n: g.value(v) + n + 1, declared=declared)


def greedy_mass_points(y: MeasurableSet, threshold: int = 2,
                       budget: int = 200_000) -> OmegaSet:
    """Greedy points y_0 = 0, y_{j+1} = min{m : μ([y_j, m) ∩ Y) >= threshold}.

    Beyond the prefix the measure pattern is invariant under integer shifts by
    the motif's integer period, so the gap sequence cycles; when the cycle is
    found the result is emitted in word form, otherwise range-backed.
    """
    if threshold < 1:
        raise BadParams("greedy mass threshold must be >= 1")
    shift = (y.period * y.period.denominator).numerator  # least integer multiple of L
    points = [0]
    seen: dict = {}
    steps = 0
    while True:
        cur = points[-1]
        idx = len(points) - 1
        if cur >= y.p0:
            # past the prefix the pattern is shift-invariant, so the residue
            # of the current point determines every later gap
            state = cur % shift
            if state in seen:
                j0 = seen[state]
                diffs = [points[i + 1] - points[i] for i in range(idx)]
                return range_set(EPDiff(0, diffs[:j0], diffs[j0:]))
            seen[state] = idx
        acc = Fraction(0)
        m = cur
        while acc < threshold:
            acc += y.measure_in(m, m + 1)
            m += 1
            steps += 1
            if steps > budget:
                raise ProgramDivergence("greedy point scan exceeded its budget")
        points.append(m)


def interleaved_pair(seed: int):
    """A random EPDiff pair with f(n) < g(n) < f(n+1) < g(n+1) at every index."""
    rng = Rng(seed)
    cyc_len = rng.randint(1, 4)
    prefix_len = rng.randint(0, 2)
    f = EPDiff(
        rng.randint(0, 3),
        [rng.randint(2, 6) for _ in range(prefix_len)],
        [rng.randint(2, 6) for _ in range(cyc_len)],
    )
    # one strictly interior offset per difference position
    offsets = [rng.randint(1, f.diff(n) - 1) for n in range(prefix_len + cyc_len + 1)]

    def off(n: int) -> int:
        if n < prefix_len:
            return offsets[n]
        return offsets[prefix_len + (n - prefix_len) % cyc_len]

    top = prefix_len + cyc_len + 1
    g_vals = [f.value(n) + off(n) for n in range(top + 1)]
    g = EPDiff(
        g_vals[0],
        [g_vals[n + 1] - g_vals[n] for n in range(prefix_len)],
        [g_vals[prefix_len + i + 1] - g_vals[prefix_len + i] for i in range(cyc_len)],
    )
    return f, g


def word_complement(x: EPWord) -> EPWord:
    """Complement of a co-infinite word-form set (mutant helper)."""
    prefix = tuple(1 - b for b in x.prefix)
    cycle = tuple(1 - b for b in x.cycle)
    if 1 not in cycle:
        return x  # complement finite; keep the original to stay in [ω]^ω
    return EPWord(prefix, cycle)


def word_dilate(x: EPWord) -> EPWord:
    """X ∪ (X + 1) as a word (mutant helper)."""
    p = len(x.prefix)
    c = len(x.cycle)
    prefix = [0] * p
    for i in range(p):
        if x.member(i) or (i > 0 and x.member(i - 1)):
            prefix[i] = 1
    cycle = [0] * c
    for i in range(c):
        a = p + i
        if x.member(a) or x.member(a - 1):
            cycle[i] = 1
    # membership at p + i for i in [0, c) matches all later cycles: the
    # predecessor of a cycle position is either in the prefix's last slot or
    # another cycle position, both period-stable
    return EPWord(prefix, cycle)


# ---------------------------------------------------------------------------
# connections


@dataclass(frozen=True)
class TukeyConnection:
    cid: str
    params: dict
    source: RelationalSystem
    target: RelationalSystem
    map_minus: Callable
    map_plus: Callable
    anchor: str
    closure_note: str
    mutant_of: Optional[str] = None


@dataclass(frozen=True)
class CheckOutcome:
    premise: Verdict
    conclusion: Optional[Verdict]
    status: str  # pass | pass_with_evidence | vacuous | fail | inconclusive
    vacuous_reason: Optional[str] = None  # premise_false | premise_unknown
    witnesses: Optional[int] = None


@dataclass(frozen=True)
class Policy:
    horizon: int = 4096
    evidence: int = 25
    premise_horizon: int = 256
    settle_horizon: int = 64


PASS = "pass"
PASS_WITH_EVIDENCE = "pass_with_evidence"
VACUOUS = "vacuous"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def check_connection(conn: TukeyConnection, x, y_prime, policy: Policy = Policy(),
                     premise_certified: bool = False) -> CheckOutcome:
    """Evaluate the defining implication on one instance."""
    try:
        mapped_x = conn.map_minus(x)
        if premise_certified:
            premise = true_verdict()
        else:
            premise = conn.target.holds(mapped_x, y_prime,
                                        horizon=policy.premise_horizon)
    except ProgramDivergence:
        premise = Verdict("unknown", horizon=0, evidence=0,
                          warnings=("premise evaluation hit the step budget",))
    if not premise.is_true:
        reason = "premise_false" if premise.is_false else "premise_unknown"
        return CheckOutcome(premise, None, VACUOUS, vacuous_reason=reason)
    exists_goal = conn.source.exists_style
    try:
        mapped_y = conn.map_plus(y_prime)
        conclusion = conn.source.holds(
            x, mapped_y,
            horizon=policy.horizon if exists_goal else policy.settle_horizon,
            witness_target=policy.evidence if exists_goal else None,
        )
    except ProgramDivergence:
        conclusion = Verdict("unknown", horizon=0, evidence=0,
                             warnings=("conclusion evaluation hit the step budget",))
    if conclusion.is_true:
        return CheckOutcome(premise, conclusion, PASS)
    if conclusion.is_false:
        return CheckOutcome(premise, conclusion, FAIL)
    if exists_goal and (conclusion.evidence or 0) >= policy.evidence:
        return CheckOutcome(premise, conclusion, PASS_WITH_EVIDENCE,
                            witnesses=conclusion.evidence)
    return CheckOutcome(premise, conclusion, INCONCLUSIVE)


def compose_connections(c1: TukeyConnection, c2: TukeyConnection) -> TukeyConnection:
    """Standard composition: premises chain through the middle system."""
    if not c1.target.same_system(c2.source):
        raise TypeMismatch(
            f"cannot compose: {c1.cid} targets {c1.target.sid}, "
            f"{c2.cid} starts at {c2.source.sid}")
    return TukeyConnection(
        cid=f"{c2.cid}∘{c1.cid}",
        params={**c1.params, **{f"second.{k}": v for k, v in c2.params.items()}},
        source=c1.source,
        target=c2.target,
        map_minus=lambda x: c2.map_minus(c1.map_minus(x)),
        map_plus=lambda y: c1.map_plus(c2.map_plus(y)),
        anchor=f"composition of {c1.anchor} with {c2.anchor}",
        closure_note="composite of the factors' closure notes",
    )


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class MutantSpec:
    name: str
    build: Callable[[dict], TukeyConnection]
    # True when the corruption touches the premise side (map_minus or the
    # target system), which invalidates premise-by-construction certificates
    invalidates_certificates: bool


@dataclass(frozen=True)
class ConnectionSpec:
    cid: str
    build: Callable[[dict], TukeyConnection]
    defaults: dict
    mutants: tuple


def _need_k(params, minimum, what):
    k = int(params.get("k", minimum))
    if k < minimum:
        raise BadParams(f"{what} needs k >= {minimum}, got {k}")
    return k


def _quant(params, default="forall"):
    q = params.get("quant", default)
    if q not in ("forall", "exists"):
        raise BadParams(f"quantifier must be forall or exists, got {q!r}")
    return q


def _conn(cid, params, source, target, minus, plus, anchor, closure,
          mutant_of=None) -> TukeyConnection:
    return TukeyConnection(cid=cid, params=dict(params), source=source,
                           target=target, map_minus=minus, map_plus=plus,
                           anchor=anchor, closure_note=closure,
                           mutant_of=mutant_of)


def _identity(v):
    return v


# Each builder returns the genuine connection; mutants rebuild with one
# deliberate corruption.

def _build_vojtas(params, step_delta=0, mutant=None):
    k = _need_k(params, 1, "vojtas_forall_k")
    step = k + 1 + step_delta
    return _conn(
        "vojtas_forall_k", {"k": k}, system_D(), system_R("forall", k),
        _identity, lambda x: sample_enumeration(x, ("arith", step)),
        anchor=f"D below R_forall_{k}: dominate via every ({k + 1})-th member",
        closure="minus: identity; plus: word-form sets give EPDiff streams",
        mutant_of=mutant)


def _build_exists1_to_dualD(params, k_conc=1, mutant=None):
    return _conn(
        "exists1_to_dualD", {}, system_R("exists", k_conc), system_D().dual(),
        _identity, range_set,
        anchor="R_exists_1 below dual(D): an escaping stream leaves sparse range",
        closure="minus: identity; plus: EPDiff ranges give word-form sets",
        mutant_of=mutant)


def _build_iperp_to_exists(params, step_delta=0, mutant=None):
    k = _need_k(params, 1, "Iperp_to_exists_k")
    step = k + 1 + step_delta
    return _conn(
        "Iperp_to_exists_k", {"k": k}, system_I().dual(), system_R("exists", k),
        _identity, lambda x: sample_enumeration(x, ("arith", step)),
        anchor=f"dual(I) below R_exists_{k}: blocks of {k + 1} members refute nesting",
        closure="minus: identity; plus: word-form sets give EPDiff streams",
        mutant_of=mutant)


def _build_exists0_glue(params, glue=True, mutant=None):
    minus = (lambda f: reindex_stream(f, "pairs")) if glue else _identity
    return _conn(
        "exists0_glue", {}, system_R("exists", 0), system_R("exists", 1),
        minus, _identity,
        anchor="R_exists_0 below R_exists_1: glue consecutive interval pairs",
        closure="minus: pairs reindex preserves EPDiff and Ramp; plus: identity",
        mutant_of=mutant)


def _build_L_exists0_glue(params, glue=True, mutant=None):
    minus = (lambda f: reindex_stream(f, "pairs")) if glue else _identity
    return _conn(
        "L_exists0_glue", {}, system_L("exists", 0), system_L("exists", 1),
        minus, _identity,
        anchor="L_exists_0 below L_exists_1: glue consecutive interval pairs",
        closure="minus: pairs reindex preserves EPDiff and Ramp; plus: identity",
        mutant_of=mutant)


def _build_col2_forall_to_I(params, k_conc=2, mutant=None):
    return _conn(
        "col2_forall_to_I", {}, system_col("forall", k_conc), system_I(),
        _identity, lambda g: interval_partition_of(g, False),
        anchor="R_col_forall_2 below I: nested streams color intervals by pairs",
        closure="minus: identity; plus: EPDiff boundaries give windowed partitions",
        mutant_of=mutant)


def _build_Rk_to_colk(params, quant, k_delta=0, mutant=None):
    k = _need_k(params, 2, "Rk_to_colk")
    cid = f"Rk_to_colk_{quant}"
    return _conn(
        cid, {"k": k}, system_R(quant, k - k_delta), system_col(quant, k),
        _identity, minima_set,
        anchor=f"R_{quant}_{k} below R_col_{quant}_{k}: keep each block's minimum",
        closure="minus: identity; plus: cyclic partitions give word-form sets",
        mutant_of=mutant)


def _build_col2_exists_to_Iperp(params, k_conc=2, mutant=None):
    return _conn(
        "col2_exists_to_Iperp", {}, system_col("exists", k_conc), system_I().dual(),
        _identity, lambda g: interval_partition_of(g, True),
        anchor="R_col_exists_2 below dual(I): boundary blocks with a merged head",
        closure="minus: identity; plus: EPDiff boundaries give windowed partitions",
        mutant_of=mutant)


def _build_L_forall_to_D(params, keep_f=True, mutant=None):
    k = _need_k(params, 1, "L_forall_to_D")
    if keep_f:
        plus = lambda f: range_set(sparse_selector(f))
    else:
        plus = lambda f: range_set(EPDiff(0, (), (2,)))
    return _conn(
        "L_forall_to_D", {"k": k}, system_L("forall", k), system_D(),
        lambda h: reindex_stream(h, "shift"), plus,
        anchor=f"L_forall_{k} below D: a selector range one point per wide interval",
        closure="minus: shift preserves EPDiff and Ramp; plus: program range",
        mutant_of=mutant)


def _build_L_forall_dual_to_dualD(params, keep_h=True, mutant=None):
    k = _need_k(params, 1, "L_forall_dual_to_dualD")
    if keep_h:
        plus = lambda h: recursive_spreader(h, k)
    else:
        plus = lambda h: EPDiff(0, (), (k + 1,))
    return _conn(
        "L_forall_dual_to_dualD", {"k": k},
        system_L("forall", k).dual(), system_D().dual(),
        lambda x: double_count_bound(x, k), plus,
        anchor=f"dual(L_forall_{k}) below dual(D): double-count bound vs spreader",
        closure="minus: program stream; plus: program stream with gaps > k",
        mutant_of=mutant)


def _build_L1_R1_iso_fwd(params, always_fallback=False, mutant=None):
    fallback = EPWord((), (1, 0))

    def plus(x):
        if always_fallback:
            return fallback
        return x if x.co_infinite() else fallback

    return _conn(
        "L1_R1_iso_fwd", {}, system_L("exists", 1), system_R("exists", 1),
        _identity, plus,
        anchor="L_exists_1 below R_exists_1: wide intervals force co-infinite sets",
        closure="minus: identity; plus: identity or a fixed co-infinite fallback",
        mutant_of=mutant)


def _build_L1_R1_iso_bwd(params, complement=False, mutant=None):
    plus = word_complement if complement else _identity
    return _conn(
        "L1_R1_iso_bwd", {}, system_R("exists", 1), system_L("exists", 1),
        lambda f: reindex_stream(f, "pairs"), plus,
        anchor="R_exists_1 below L_exists_1: glue pairs to widen every interval",
        closure="minus: pairs reindex preserves EPDiff and Ramp; plus: identity",
        mutant_of=mutant)


def _build_M_from_R(params, quant, dilate=False, mutant=None):
    k = _need_k(params, 1, "M_from_R")
    plus = (lambda x: unit_blocks(word_dilate(x))) if dilate else unit_blocks
    return _conn(
        f"M_{quant}_from_R", {"k": k}, system_M(quant, k), system_R(quant, k),
        _identity, plus,
        anchor=f"M_{quant}(eps={k}) below R_{quant}_{k}: unit blocks carry the count",
        closure="minus: identity; plus: word-form sets give periodic measure sets",
        mutant_of=mutant)


def _build_M_to_R(params, quant, threshold=2, mutant=None):
    k = _need_k(params, 1, "M_to_R")
    return _conn(
        f"M_{quant}_to_R", {"k": k}, system_R(quant, k), system_M(quant, k),
        _identity, lambda y: greedy_mass_points(y, threshold=threshold),
        anchor=f"R_{quant}_{k} below M_{quant}(eps={k}): greedy mass-2 points",
        closure="minus: identity; plus: periodic measure sets give word-form sets",
        mutant_of=mutant)


def _scaling_factor(eps: Fraction, delta: Fraction) -> int:
    b = 1
    while eps * b <= delta:
        b += 1
    return b


def _build_M_scaling(params, quant, b_delta=0, mutant=None):
    eps = Fraction(params.get("eps", Fraction(2, 5)))
    delta = Fraction(params.get("delta", 1))
    if eps <= 0 or delta <= 0:
        raise BadParams("measure scaling needs positive eps and delta")
    b = _scaling_factor(eps, delta) + b_delta
    if b < 1:
        raise BadParams("scaling factor collapsed below 1")
    return _conn(
        f"M_scaling_{quant}", {"eps": eps, "delta": delta},
        system_M(quant, eps), system_M(quant, delta),
        lambda f: scale_values(f, b), lambda y: contract_set(y, b),
        anchor=f"M_{quant}(eps={eps}) below M_{quant}(eps={delta}): scale by B={b}",
        closure="minus: scaling preserves every stream kind; plus: exact rational",
        mutant_of=mutant)


def _build_id_forall_to_Rk(params, reverse=False, mutant=None):
    k = _need_k(params, 1, "id_forall_to_Rk")
    src, tgt = system_id("forall"), system_R("forall", k)
    if reverse:
        src, tgt = tgt, src
    return _conn(
        "id_forall_to_Rk", {"k": k}, src, tgt, _identity, _identity,
        anchor=f"R_id_forall below R_forall_{k}: a fixed allowance is below the index",
        closure="both maps identities; the id-gap domain embeds in all streams",
        mutant_of=mutant)


def _build_D_to_id_forall(params, ramp_only=False, mutant=None):
    plus = (lambda x: Ramp(x.enumerate(0), 1, 2)) if ramp_only else id_majorant
    return _conn(
        "D_to_id_forall", {}, system_D(), system_id("forall"),
        _identity, plus,
        anchor="D below R_id_forall: majorize the square-sampled enumeration",
        closure="minus: identity; plus: program stream with gaps above the index",
        mutant_of=mutant)


def _build_id_exists_iso_fwd(params, reverse=False, mutant=None):
    src, tgt = system_id("exists"), system_R("exists", 0)
    if reverse:
        src, tgt = tgt, src
    return _conn(
        "id_exists_iso_fwd", {}, src, tgt, _identity, _identity,
        anchor="R_id_exists below R_exists_0: an empty interval is below any index",
        closure="both maps identities",
        mutant_of=mutant)


def _build_exists0_to_id_exists(params, keep_f=True, mutant=None):
    minus = nested_accelerator if keep_f else (lambda f: Ramp(0, 1, 1))
    return _conn(
        "exists0_to_id_exists", {}, system_R("exists", 0), system_id("exists"),
        minus, _identity,
        anchor="R_exists_0 below R_id_exists: accelerate to hold n+1 subintervals",
        closure="minus: program stream with gaps above the index; plus: identity",
        mutant_of=mutant)


def _build_bd_exists_from_Rk(params, accelerate=True, mutant=None):
    k = _need_k(params, 0, "bd_exists_from_Rk")
    minus = (lambda f: reindex_stream(f, "squares")) if accelerate else _identity
    return _conn(
        "bd_exists_from_Rk", {"k": k}, system_R("exists", k), system_bd("exists"),
        minus, _identity,
        anchor=f"R_exists_{k} below R_bd_exists: square reindexing spreads gaps",
        closure="minus: squares reindex gives program streams; plus: identity",
        mutant_of=mutant)


def _build_D_to_bd_forall(params, schedule="squares", mutant=None):
    plus = lambda x: sample_enumeration(x, schedule if schedule == "squares" else ("arith", 1))
    return _conn(
        "D_to_bd_forall", {}, system_D(), system_bd("forall"),
        bd_forall_spreader, plus,
        anchor="D below R_bd_forall: spreader vs square-sampled enumeration",
        closure="minus: program stream with diverging gaps; plus: program stream",
        mutant_of=mutant)


def _fact_family(cid, sysf, anchor_fmt):
    """Monotonicity facts: identity maps between two parametrizations."""

    def build(params, swap=False, mutant=None):
        quant = _quant(params)
        k = int(params.get("k", 1))
        l = int(params.get("l", k + 1))
        if not 0 <= k < l:
            raise BadParams(f"{cid} needs 0 <= k < l, got k={k}, l={l}")
        src = sysf(quant, l)
        tgt = sysf(quant, k)
        if swap:
            src, tgt = tgt, src
        return _conn(cid, {"k": k, "l": l, "quant": quant}, src, tgt,
                     _identity, _identity,
                     anchor=anchor_fmt.format(k=k, l=l, quant=quant),
                     closure="both maps identities", mutant_of=mutant)

    return build


def _dual_dir_family(cid, sysf, anchor_fmt):
    """Exists below forall at the same bound, identity maps."""

    def build(params, reverse=False, mutant=None):
        k = int(params.get("k", 1))
        src = sysf("exists", k)
        tgt = sysf("forall", k)
        if reverse:
            src, tgt = tgt, src
        return _conn(cid, {"k": k}, src, tgt, _identity, _identity,
                     anchor=anchor_fmt.format(k=k),
                     closure="both maps identities", mutant_of=mutant)

    return build


_build_fact_k_le_l = _fact_family(
    "fact_k_le_l", system_R,
    "R_{quant}_{l} below R_{quant}_{k} for k < l: a bound of {k} is a bound of {l}")
_build_fact_exists_le_forall = _dual_dir_family(
    "fact_exists_le_forall", system_R,
    "R_exists_{k} below R_forall_{k}: cofinitely many witnesses are infinitely many")
_build_fact_col_k_le_l = _fact_family(
    "fact_col_k_le_l", system_col,
    "R_col_{quant}_{l} below R_col_{quant}_{k} for k < l")
_build_fact_col_exists_le_forall = _dual_dir_family(
    "fact_col_exists_le_forall", system_col,
    "R_col_exists_{k} below R_col_forall_{k}")
_build_fact_L_k_le_l = _fact_family(
    "fact_L_k_le_l", system_L,
    "L_{quant}_{l} below L_{quant}_{k} for k < l")
_build_fact_L_exists_le_forall = _dual_dir_family(
    "fact_L_exists_le_forall", system_L,
    "L_exists_{k} below L_forall_{k}")


def _build_R_to_L(params, k_delta=0, mutant=None):
    quant = _quant(params)
    k = _need_k(params, 1, "R_to_L")
    return _conn(
        "R_to_L", {"k": k, "quant": quant},
        system_R(quant, k - k_delta), system_L(quant, k),
        _identity, _identity,
        anchor=f"R_{quant}_{k} below L_{quant}_{k}: restrict to wide streams "
               "and co-infinite sets",
        closure="both maps identities (domain restriction only)",
        mutant_of=mutant)


def _build_bd_below_Rk(params, reverse=False, mutant=None):
    quant = _quant(params)
    k = _need_k(params, 0, "bd_below_Rk")
    src = system_bd(quant)
    tgt = system_R(quant, k)
    if reverse:
        src, tgt = tgt, src
    return _conn(
        "bd_below_Rk", {"k": k, "quant": quant}, src, tgt,
        _identity, _identity,
        anchor=f"R_bd_{quant} below R_{quant}_{k}: the fixed bound {k} is a bound",
        closure="both maps identities",
        mutant_of=mutant)


CONNECTIONS: dict[str, ConnectionSpec] = {}


def _register(cid, build, defaults, mutants):
    CONNECTIONS[cid] = ConnectionSpec(cid=cid, build=build, defaults=defaults,
                                      mutants=tuple(mutants))


_register("vojtas_forall_k", _build_vojtas, {"k": 2}, [
    MutantSpec("sample_step_minus_one",
               lambda p: _build_vojtas(p, step_delta=-1, mutant="sample_step_minus_one"),
               invalidates_certificates=False),
])
_register("exists1_to_dualD", _build_exists1_to_dualD, {}, [
    MutantSpec("conclusion_bound_zero",
               lambda p: _build_exists1_to_dualD(p, k_conc=0, mutant="conclusion_bound_zero"),
               invalidates_certificates=False),
])
_register("Iperp_to_exists_k", _build_iperp_to_exists, {"k": 1}, [
    MutantSpec("sample_step_minus_one",
               lambda p: _build_iperp_to_exists(p, step_delta=-1, mutant="sample_step_minus_one"),
               invalidates_certificates=False),
])
_register("exists0_glue", _build_exists0_glue, {}, [
    MutantSpec("no_glue",
               lambda p: _build_exists0_glue(p, glue=False, mutant="no_glue"),
               invalidates_certificates=True),
])
_register("L_exists0_glue", _build_L_exists0_glue, {}, [
    MutantSpec("no_glue",
               lambda p: _build_L_exists0_glue(p, glue=False, mutant="no_glue"),
               invalidates_certificates=True),
])
_register("col2_forall_to_I", _build_col2_forall_to_I, {}, [
    MutantSpec("conclusion_colors_minus_one",
               lambda p: _build_col2_forall_to_I(p, k_conc=1, mutant="conclusion_colors_minus_one"),
               invalidates_certificates=False),
])
_register("Rk_to_colk_forall",
          lambda p: _build_Rk_to_colk(p, "forall"), {"k": 2}, [
    MutantSpec("conclusion_bound_minus_one",
               lambda p: _build_Rk_to_colk(p, "forall", k_delta=1,
                                           mutant="conclusion_bound_minus_one"),
               invalidates_certificates=False),
])
_register("Rk_to_colk_exists",
          lambda p: _build_Rk_to_colk(p, "exists"), {"k": 2}, [
    MutantSpec("conclusion_bound_minus_one",
               lambda p: _build_Rk_to_colk(p, "exists", k_delta=1,
                                           mutant="conclusion_bound_minus_one"),
               invalidates_certificates=False),
])
_register("col2_exists_to_Iperp", _build_col2_exists_to_Iperp, {}, [
    MutantSpec("conclusion_colors_minus_one",
               lambda p: _build_col2_exists_to_Iperp(p, k_conc=1,
                                                     mutant="conclusion_colors_minus_one"),
               invalidates_certificates=False),
])
_register("L_forall_to_D", _build_L_forall_to_D, {"k": 1}, [
    MutantSpec("selector_drops_composition",
               lambda p: _build_L_forall_to_D(p, keep_f=False,
                                              mutant="selector_drops_composition"),
               invalidates_certificates=False),
])
_register("L_forall_dual_to_dualD", _build_L_forall_dual_to_dualD, {"k": 1}, [
    MutantSpec("spreader_drops_composition",
               lambda p: _build_L_forall_dual_to_dualD(p, keep_h=False,
                                                       mutant="spreader_drops_composition"),
               invalidates_certificates=False),
])
_register("L1_R1_iso_fwd", _build_L1_R1_iso_fwd, {}, [
    MutantSpec("always_fallback",
               lambda p: _build_L1_R1_iso_fwd(p, always_fallback=True,
                                              mutant="always_fallback"),
               invalidates_certificates=False),
])
_register("L1_R1_iso_bwd", _build_L1_R1_iso_bwd, {}, [
    MutantSpec("complement_plus",
               lambda p: _build_L1_R1_iso_bwd(p, complement=True,
                                              mutant="complement_plus"),
               invalidates_certificates=False),
])
_register("M_forall_from_R",
          lambda p: _build_M_from_R(p, "forall"), {"k": 1}, [
    MutantSpec("dilated_blocks",
               lambda p: _build_M_from_R(p, "forall", dilate=True,
                                         mutant="dilated_blocks"),
               invalidates_certificates=False),
])
_register("M_exists_from_R",
          lambda p: _build_M_from_R(p, "exists"), {"k": 1}, [
    MutantSpec("dilated_blocks",
               lambda p: _build_M_from_R(p, "exists", dilate=True,
                                         mutant="dilated_blocks"),
               invalidates_certificates=False),
])
_register("M_forall_to_R",
          lambda p: _build_M_to_R(p, "forall"), {"k": 1}, [
    MutantSpec("greedy_threshold_one",
               lambda p: _build_M_to_R(p, "forall", threshold=1,
                                       mutant="greedy_threshold_one"),
               invalidates_certificates=False),
])
_register("M_exists_to_R",
          lambda p: _build_M_to_R(p, "exists"), {"k": 1}, [
    MutantSpec("greedy_threshold_one",
               lambda p: _build_M_to_R(p, "exists", threshold=1,
                                       mutant="greedy_threshold_one"),
               invalidates_certificates=False),
])
_register("M_scaling_forall",
          lambda p: _build_M_scaling(p, "forall"),
          {"eps": Fraction(2, 5), "delta": Fraction(1)}, [
    MutantSpec("scale_minus_one",
               lambda p: _build_M_scaling(p, "forall", b_delta=-1,
                                          mutant="scale_minus_one"),
               invalidates_certificates=True),
])
_register("M_scaling_exists",
          lambda p: _build_M_scaling(p, "exists"),
          {"eps": Fraction(2, 5), "delta": Fraction(1)}, [
    MutantSpec("scale_minus_one",
               lambda p: _build_M_scaling(p, "exists", b_delta=-1,
                                          mutant="scale_minus_one"),
               invalidates_certificates=True),
])
_register("id_forall_to_Rk", _build_id_forall_to_Rk, {"k": 1}, [
    MutantSpec("reversed_direction",
               lambda p: _build_id_forall_to_Rk(p, reverse=True,
                                                mutant="reversed_direction"),
               invalidates_certificates=True),
])
_register("D_to_id_forall", _build_D_to_id_forall, {}, [
    MutantSpec("majorant_drops_samples",
               lambda p: _build_D_to_id_forall(p, ramp_only=True,
                                               mutant="majorant_drops_samples"),
               invalidates_certificates=False),
])
_register("id_exists_iso_fwd", _build_id_exists_iso_fwd, {}, [
    MutantSpec("reversed_direction",
               lambda p: _build_id_exists_iso_fwd(p, reverse=True,
                                                  mutant="reversed_direction"),
               invalidates_certificates=True),
])
_register("exists0_to_id_exists", _build_exists0_to_id_exists, {}, [
    MutantSpec("accelerator_drops_composition",
               lambda p: _build_exists0_to_id_exists(p, keep_f=False,
                                                     mutant="accelerator_drops_composition"),
               invalidates_certificates=True),
])
_register("bd_exists_from_Rk", _build_bd_exists_from_Rk, {"k": 0}, [
    MutantSpec("no_acceleration",
               lambda p: _build_bd_exists_from_Rk(p, accelerate=False,
                                                  mutant="no_acceleration"),
               invalidates_certificates=True),
])
_register("D_to_bd_forall", _build_D_to_bd_forall, {}, [
    MutantSpec("sample_linear",
               lambda p: _build_D_to_bd_forall(p, schedule="linear",
                                               mutant="sample_linear"),
               invalidates_certificates=False),
])
_register("fact_k_le_l", _build_fact_k_le_l, {"k": 1, "l": 2, "quant": "forall"}, [
    MutantSpec("swapped_bounds",
               lambda p: _build_fact_k_le_l(p, swap=True, mutant="swapped_bounds"),
               invalidates_certificates=True),
])
_register("fact_exists_le_forall", _build_fact_exists_le_forall, {"k": 1}, [
    MutantSpec("reversed_direction",
               lambda p: _build_fact_exists_le_forall(p, reverse=True,
                                                      mutant="reversed_direction"),
               invalidates_certificates=True),
])
_register("fact_col_k_le_l", _build_fact_col_k_le_l,
          {"k": 1, "l": 2, "quant": "forall"}, [
    MutantSpec("swapped_bounds",
               lambda p: _build_fact_col_k_le_l(p, swap=True, mutant="swapped_bounds"),
               invalidates_certificates=True),
])
_register("fact_col_exists_le_forall", _build_fact_col_exists_le_forall, {"k": 1}, [
    MutantSpec("reversed_direction",
               lambda p: _build_fact_col_exists_le_forall(p, reverse=True,
                                                          mutant="reversed_direction"),
               invalidates_certificates=True),
])
_register("fact_L_k_le_l", _build_fact_L_k_le_l,
          {"k": 1, "l": 2, "quant": "forall"}, [
    MutantSpec("swapped_bounds",
               lambda p: _build_fact_L_k_le_l(p, swap=True, mutant="swapped_bounds"),
               invalidates_certificates=True),
])
_register("fact_L_exists_le_forall", _build_fact_L_exists_le_forall, {"k": 1}, [
    MutantSpec("reversed_direction",
               lambda p: _build_fact_L_exists_le_forall(p, reverse=True,
                                                        mutant="reversed_direction"),
               invalidates_certificates=True),
])
_register("R_to_L", _build_R_to_L, {"k": 1, "quant": "forall"}, [
    MutantSpec("conclusion_bound_minus_one",
               lambda p: _build_R_to_L(p, k_delta=1,
                                       mutant="conclusion_bound_minus_one"),
               invalidates_certificates=False),
])
_register("bd_below_Rk", _build_bd_below_Rk, {"k": 1, "quant": "forall"}, [
    MutantSpec("reversed_direction",
               lambda p: _build_bd_below_Rk(p, reverse=True,
                                            mutant="reversed_direction"),
               invalidates_certificates=True),
])


def list_connections() -> list[str]:
    return list(CONNECTIONS)


def connection_defaults(cid: str) -> dict:
    if cid not in CONNECTIONS:
        raise UnknownId(f"unknown connection {cid!r}")
    return dict(CONNECTIONS[cid].defaults)


def build_connection(cid: str, params: Optional[dict] = None) -> TukeyConnection:
    """Build a registered connection; unknown ids and bad parameters raise."""
    if cid not in CONNECTIONS:
        raise UnknownId(f"unknown connection {cid!r}")
    spec = CONNECTIONS[cid]
    merged = dict(spec.defaults)
    if params:
        merged.update(params)
    return spec.build(merged)


def list_mutants(cid: str) -> list[str]:
    if cid not in CONNECTIONS:
        raise UnknownId(f"unknown connection {cid!r}")
    return [m.name for m in CONNECTIONS[cid].mutants]


def build_mutant(cid: str, name: str, params: Optional[dict] = None):
    """Build a deliberately corrupted copy of a connection.

    Returns ``(connection, certificates_still_valid)``: premise-by-construction
    certificates survive only corruptions confined to the conclusion side.
    """
    if cid not in CONNECTIONS:
        raise UnknownId(f"unknown connection {cid!r}")
    spec = CONNECTIONS[cid]
    merged = dict(spec.defaults)
    if params:
        merged.update(params)
    for m in spec.mutants:
        if m.name == name:
            return m.build(merged), not m.invalidates_certificates
    raise UnknownId(f"connection {cid!r} has no mutant {name!r}")
