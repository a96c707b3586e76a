"""Generators, brute-force oracles, certified instances, and suite runners.

Instances mix 50/50 between random draws and *certified* builds whose premise
is true by construction (several premises are almost never true under naive
random generation, and vacuous implications test nothing).  All randomness is
counter-based and splittable: trial ``i`` of seed ``s`` always sees the same
objects, in parallel or not.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import BadParams, ProgramDivergence, UnknownId
from .jsoncodec import encode_object
from .kernel.measures import MeasurableSet, unit_blocks
from .kernel.partitions import Partition, interval_partition_of
from .kernel.sets import EPWord, OmegaSet, RangeOf, range_set
from .kernel.streams import EPDiff, Ramp, UpStream, offset_values, reindex_stream
from .rand import Rng, split_seed
from .relations import EXISTS, FORALL, Verdict
from .tukey import (
    CONNECTIONS,
    CheckOutcome,
    Domain,
    Policy,
    TukeyConnection,
    bd_forall_spreader,
    build_connection,
    build_mutant,
    check_connection,
    double_count_bound,
    interleaved_pair,
    nested_accelerator,
    system_col,
)

# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_prefix: int = 3
    max_cycle: int = 4
    max_diff: int = 5


def generate(kind: str, params: GenParams):
    """Deterministic, invariant-satisfying random object of the given kind."""
    rng = Rng(params.seed)
    if kind == "stream":
        return _gen_stream(rng, params, Domain("stream"))
    if kind == "set":
        return _gen_word(rng, params)
    if kind == "partition":
        return _gen_partition(rng, params)
    if kind == "measure":
        return _gen_measurable(rng, params)
    raise BadParams(f"unknown object kind {kind!r}")


def _gen_stream(rng: Rng, gp: GenParams, dom: Domain) -> UpStream:
    if dom.id_gaps or dom.divergent:
        return Ramp(rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 4))
    lo = dom.gap_gt + 1
    hi = dom.gap_gt + gp.max_diff
    prefix = [rng.randint(lo, hi) for _ in range(rng.randint(0, gp.max_prefix))]
    cycle = [rng.randint(lo, hi) for _ in range(rng.randint(1, gp.max_cycle))]
    return EPDiff(rng.randint(0, 3), prefix, cycle)


def _gen_word(rng: Rng, gp: GenParams, co_infinite: bool = False) -> EPWord:
    prefix = [rng.randint(0, 1) for _ in range(rng.randint(0, gp.max_prefix))]
    clen = rng.randint(1, gp.max_cycle + 1)
    cycle = [rng.randint(0, 1) for _ in range(clen)]
    if 1 not in cycle:
        cycle[rng.randint(0, clen - 1)] = 1
    if co_infinite and 0 not in cycle:
        if clen == 1:
            cycle.append(0)
        else:
            cycle[rng.randint(0, clen - 1)] = 0
            if 1 not in cycle:
                cycle[0] = 1
    return EPWord(prefix, cycle)


def _gen_pattern(rng: Rng, width: int):
    blocks = rng.randint(1, min(width, 3))
    labels = [rng.randint(0, blocks - 1) for _ in range(width)]
    for b in range(blocks):
        labels[b % width] = b if rng.chance(1, 2) else labels[b % width]
    return tuple(labels)


def _gen_partition(rng: Rng, gp: GenParams) -> Partition:
    plen = rng.randint(0, 2)
    clen = rng.randint(1, gp.max_cycle)
    prefix_diffs = [rng.randint(1, gp.max_diff) for _ in range(plen)]
    cycle_diffs = [rng.randint(1, gp.max_diff) for _ in range(clen)]
    w = EPDiff(0, prefix_diffs, cycle_diffs)
    merge = rng.choice([0, 0, 0, 1, 2])
    pats_needed = max(plen, merge)
    prefix_pats = tuple(_gen_pattern(rng, w.diff(j)) for j in range(pats_needed))
    cycle_pats = tuple(_gen_pattern(rng, w.diff(pats_needed + i)) for i in range(clen))
    return Partition(w, prefix_pats, cycle_pats, merge)


def _gen_measurable(rng: Rng, gp: GenParams) -> MeasurableSet:
    den = rng.choice([1, 1, 2, 3])
    period = Fraction(rng.randint(2, 6), den)
    grid = rng.randint(2, 5)
    cuts = sorted({Fraction(rng.randint(0, grid), grid) * period for _ in range(3)})
    cuts = [c for c in cuts if c < period]
    if len(cuts) >= 2 and rng.chance(1, 2):
        motif = [(cuts[0], cuts[1])]
        if len(cuts) >= 3 and cuts[2] > cuts[1]:
            motif.append((cuts[1] + (cuts[2] - cuts[1]) / 2, cuts[2]))
    else:
        lo = cuts[0] if cuts else Fraction(0)
        motif = [(lo, lo + max(period - lo, Fraction(1, grid)) / 2)]
    motif = [(lo, hi) for lo, hi in motif if hi > lo and hi <= period]
    if not motif:
        motif = [(Fraction(0), period / 2)]
    p0 = period
    prefix = [] if rng.chance(1, 2) else [(Fraction(0), p0 / 2)]
    return MeasurableSet(prefix, motif, p0, period)


def _gen_for_domain(dom: Domain, rng: Rng, gp: GenParams):
    if dom.kind == "stream":
        return _gen_stream(rng, gp, dom)
    if dom.kind == "set":
        return _gen_word(rng, gp, co_infinite=dom.co_infinite)
    if dom.kind == "partition":
        return _gen_partition(rng, gp)
    if dom.kind == "measure":
        return _gen_measurable(rng, gp)
    raise BadParams(f"unknown domain kind {dom.kind!r}")


def random_instance(conn: TukeyConnection, seed: int, gp: GenParams = GenParams()):
    rng = Rng(seed)
    x = _gen_for_domain(conn.source.x_domain, rng.spawn(1), gp)
    y = _gen_for_domain(conn.target.y_domain, rng.spawn(2), gp)
    return x, y


# ---------------------------------------------------------------------------
# brute-force horizon oracle


@dataclass(frozen=True)
class OracleReport:
    counts: tuple
    witnesses: int
    violations: int
    horizon: int


def _member_count(x: OmegaSet, a: int, b: int) -> int:
    return sum(1 for v in range(a, b) if x.member(v))


def _blocks_by_points(p: Partition, a: int, b: int) -> int:
    return len({p.block_id(v) for v in range(a, b)})


def _measure_by_pieces(y: MeasurableSet, a: int, b: int) -> Fraction:
    pieces = []
    for lo, hi in y.prefix_intervals:
        pieces.append((lo, hi))
    j = 0
    base = y.p0
    while base < b:
        if base + y.period >= a:
            for lo, hi in y.motif_intervals:
                pieces.append((base + lo, base + hi))
        base = y.p0 + (j + 1) * y.period
        j += 1
    total = Fraction(0)
    for lo, hi in pieces:
        left, right = max(lo, Fraction(a)), min(hi, Fraction(b))
        if right > left:
            total += right - left
    return total


def horizon_oracle(f: UpStream, other, relation_id: str, params: dict,
                   horizon: int) -> OracleReport:
    """Direct per-interval counts for n < horizon, independent of the profile
    kernel: membership loops for sets, per-point block ids for partitions,
    piecewise interval clipping for measures."""
    if horizon < 1:
        raise BadParams("oracle horizon must be >= 1")
    counts = []
    witnesses = violations = 0
    for n in range(horizon):
        a, b = f.value(n), f.value(n + 1)
        if relation_id in ("forall_k", "exists_k", "id_forall", "id_exists",
                           "bd_forall", "bd_exists"):
            c = _member_count(other, a, b)
        elif relation_id in ("col_forall_k", "col_exists_k"):
            c = _blocks_by_points(other, a, b)
        elif relation_id.startswith("measure"):
            c = _measure_by_pieces(other, a, b)
        else:
            raise UnknownId(f"no oracle for relation {relation_id!r}")
        counts.append(c)
        thr = _oracle_threshold(relation_id, params, n)
        if thr is not None:
            if c <= thr:
                witnesses += 1
            else:
                violations += 1
    return OracleReport(tuple(counts), witnesses, violations, horizon)


def _oracle_threshold(relation_id: str, params: dict, n: int):
    if relation_id in ("forall_k", "exists_k", "col_forall_k", "col_exists_k"):
        return int(params["k"])
    if relation_id in ("id_forall", "id_exists"):
        return n
    if relation_id in ("bd_forall", "bd_exists"):
        k = params.get("k")
        return int(k) if k is not None else None
    if relation_id in ("measure_forall", "measure_exists"):
        return Fraction(params.get("eps", 1))
    return None


# ---------------------------------------------------------------------------
# certified instances


@dataclass(frozen=True)
class Certificate:
    connection: str
    reason: str
    premise: str = "true"


def _word_marking(g: EPDiff, k: int) -> EPWord:
    """Exactly k consecutive members at the start of every g-interval
    (requires every gap of g to exceed k)."""
    if any(d <= k for d in g.prefix_diffs + g.cycle_diffs):
        raise BadParams("marking k members per interval needs gaps > k")
    p = len(g.prefix_diffs)
    anchor = g.value(p)
    prefix_bits = [0] * anchor
    for i in range(p):
        for j in range(k):
            prefix_bits[g.value(i) + j] = 1
    cycle_bits = [0] * g.cycle_sum
    for i in range(len(g.cycle_diffs)):
        base = g.value(p + i) - anchor
        for j in range(k):
            cycle_bits[base + j] = 1
    return EPWord(prefix_bits, cycle_bits)


def _with_prefix_surplus(word: EPWord, rng: Rng, extra: int = 2) -> EPWord:
    """Flip a few early zeros to ones; tail behaviour is untouched."""
    prefix = list(word.prefix)
    zeros = [i for i, b in enumerate(prefix) if not b]
    for _ in range(min(extra, len(zeros))):
        pos = zeros.pop(rng.randint(0, len(zeros) - 1))
        prefix[pos] = 1
    return EPWord(prefix, word.cycle)


def _gen_stream_gaps(rng: Rng, gp: GenParams, min_gap: int) -> EPDiff:
    lo = min_gap
    hi = min_gap + gp.max_diff
    prefix = [rng.randint(lo, hi) for _ in range(rng.randint(0, gp.max_prefix))]
    cycle = [rng.randint(lo, hi) for _ in range(rng.randint(1, gp.max_cycle))]
    return EPDiff(rng.randint(0, 3), prefix, cycle)


def certified_instance(cid: str, params: dict, seed: int,
                       gp: GenParams = GenParams()):
    """An (x, y') pair whose premise is true by construction, with the
    constructive reason recorded.  Degenerate parametrizations whose premise
    is unsatisfiable return no certificate."""
    if cid not in _CERTIFIED:
        raise UnknownId(f"no certified builder for connection {cid!r}")
    rng = Rng(seed)
    x, y, reason = _CERTIFIED[cid](rng, params, gp)
    cert = Certificate(connection=cid, reason=reason) if reason else None
    return x, y, cert


def _cert_vojtas(rng, params, gp):
    k = int(params.get("k", 1))
    f = _gen_stream_gaps(rng, gp, 1)
    word = range_set(f)
    assert isinstance(word, EPWord)
    x_set = _with_prefix_surplus(word, rng)
    return f, x_set, "at most one member per interval beyond a finite prefix"


def _cert_exists1_to_dualD(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    b = offset_values(f, 1)
    return f, b, "the pointwise successor is never eventually dominated"


def _cert_iperp_to_exists(rng, params, gp):
    k = int(params.get("k", 1))
    g = _gen_stream_gaps(rng, gp, k + 1)
    return g, _word_marking(g, k), f"exactly {k} consecutive members per interval"


def _cert_exists0_glue(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    word = range_set(reindex_stream(f, "pairs"))
    return f, word, "one member per glued interval pair"


def _cert_col2_forall_to_I(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    g = reindex_stream(f, "pairs")
    return f, g, "every window of the doubled stream contains an interval"


def _cert_Rk_to_colk(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    return f, interval_partition_of(f, False), "each interval is exactly one block"


def _cert_col2_exists_to_Iperp(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    cap = max(f.prefix_diffs + f.cycle_diffs)
    g = _gen_stream_gaps(rng, gp, cap + 1)
    return f, g, "wider intervals never fit inside narrower ones"


def _cert_L_forall_to_D(rng, params, gp):
    k = int(params.get("k", 1))
    h = _gen_stream_gaps(rng, gp, k + 1)
    f = reindex_stream(h, "shift")
    return h, f, "the shifted stream dominates pointwise by construction"


def _cert_L_forall_dual_to_dualD(rng, params, gp):
    k = int(params.get("k", 1))
    x_set = _gen_word(rng, gp, co_infinite=True)
    h = offset_values(double_count_bound(x_set, k), 1)
    return x_set, h, "pointwise successor of the double-count bound"


def _cert_L1_R1_iso_fwd(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 2)
    word = range_set(reindex_stream(f, "pairs"))
    return f, word, "alternate intervals hold one member, the rest none"


def _cert_L1_R1_iso_bwd(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    quad = reindex_stream(reindex_stream(f, "pairs"), "pairs")
    word = range_set(quad)
    return f, word, "one member per glued pair, infinitely many gaps"


def _cert_M_from_R(rng, params, gp):
    k = int(params.get("k", 1))
    f = _gen_stream_gaps(rng, gp, 1)
    word = range_set(f)
    assert isinstance(word, EPWord)
    return f, _with_prefix_surplus(word, rng), \
        "at most one member per interval beyond a finite prefix"


def _cert_M_to_R(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    word = range_set(f)
    assert isinstance(word, EPWord)
    return f, unit_blocks(word), "unit mass per interval"


def _cert_M_scaling(rng, params, gp):
    from .tukey import _scaling_factor

    eps = Fraction(params.get("eps", Fraction(2, 5)))
    delta = Fraction(params.get("delta", 1))
    b = _scaling_factor(eps, delta)
    f = _gen_stream_gaps(rng, gp, 1)
    span = b * f.cycle_sum
    y = MeasurableSet([], [(Fraction(0), delta / 2)], Fraction(span), Fraction(span))
    return f, y, "at most two half-allowance lumps per scaled interval"


def _cert_id_forall_to_Rk(rng, params, gp):
    k = int(params.get("k", 1))
    f = _gen_stream_gaps(rng, gp, 1)
    word = range_set(f)
    assert isinstance(word, EPWord)
    return f, _with_prefix_surplus(word, rng), \
        "at most one member per interval beyond a finite prefix"


def _cert_D_to_id_forall(rng, params, gp):
    f = Ramp(rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 4))
    return f, range_set(f), "one member per interval of an index-gapped stream"


def _cert_id_exists_iso_fwd(rng, params, gp):
    f = Ramp(rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 4))
    return f, range_set(reindex_stream(f, "pairs")), "alternate intervals are empty"


def _cert_exists0_to_id_exists(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    h = nested_accelerator(f)
    return f, range_set(h), "one member per accelerated interval"


def _cert_bd_exists_from_Rk(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    sq = reindex_stream(f, "squares")
    return f, range_set(sq), "one member per square-indexed interval"


def _cert_D_to_bd_forall(rng, params, gp):
    g = _gen_stream_gaps(rng, gp, 1)
    spread = bd_forall_spreader(g)
    return g, range_set(spread), "one member per spreader interval"


def _cert_fact_R(rng, params, gp):
    k = int(params.get("k", 1))
    f = _gen_stream_gaps(rng, gp, k + 1)
    if k == 0:
        word = range_set(reindex_stream(f, "pairs"))
        if params.get("quant", "forall") == "forall":
            # no infinite set meets cofinitely many intervals zero times
            return f, word, None
        return f, word, "alternate intervals are empty"
    return f, _word_marking(f, k), f"exactly {k} members per interval"


def _cert_fact_col(rng, params, gp):
    f = _gen_stream_gaps(rng, gp, 1)
    return f, interval_partition_of(f, False), "each interval is exactly one block"


def _cert_bd_below_Rk(rng, params, gp):
    k = int(params.get("k", 1))
    if k == 0:
        f = _gen_stream_gaps(rng, gp, 1)
        word = range_set(reindex_stream(f, "pairs"))
        if params.get("quant", "forall") == "forall":
            return f, word, None
        return f, word, "alternate intervals are empty"
    f = _gen_stream_gaps(rng, gp, k + 1)
    return f, _word_marking(f, k), f"exactly {k} members per interval"


_CERTIFIED: dict[str, Callable] = {
    "vojtas_forall_k": _cert_vojtas,
    "exists1_to_dualD": _cert_exists1_to_dualD,
    "Iperp_to_exists_k": _cert_iperp_to_exists,
    "exists0_glue": _cert_exists0_glue,
    "L_exists0_glue": _cert_exists0_glue,
    "col2_forall_to_I": _cert_col2_forall_to_I,
    "Rk_to_colk_forall": _cert_Rk_to_colk,
    "Rk_to_colk_exists": _cert_Rk_to_colk,
    "col2_exists_to_Iperp": _cert_col2_exists_to_Iperp,
    "L_forall_to_D": _cert_L_forall_to_D,
    "L_forall_dual_to_dualD": _cert_L_forall_dual_to_dualD,
    "L1_R1_iso_fwd": _cert_L1_R1_iso_fwd,
    "L1_R1_iso_bwd": _cert_L1_R1_iso_bwd,
    "M_forall_from_R": _cert_M_from_R,
    "M_exists_from_R": _cert_M_from_R,
    "M_forall_to_R": _cert_M_to_R,
    "M_exists_to_R": _cert_M_to_R,
    "M_scaling_forall": _cert_M_scaling,
    "M_scaling_exists": _cert_M_scaling,
    "id_forall_to_Rk": _cert_id_forall_to_Rk,
    "D_to_id_forall": _cert_D_to_id_forall,
    "id_exists_iso_fwd": _cert_id_exists_iso_fwd,
    "exists0_to_id_exists": _cert_exists0_to_id_exists,
    "bd_exists_from_Rk": _cert_bd_exists_from_Rk,
    "D_to_bd_forall": _cert_D_to_bd_forall,
    "fact_k_le_l": _cert_fact_R,
    "fact_exists_le_forall": _cert_fact_R,
    "fact_col_k_le_l": _cert_fact_col,
    "fact_col_exists_le_forall": _cert_fact_col,
    "fact_L_k_le_l": _cert_fact_R,
    "fact_L_exists_le_forall": _cert_fact_R,
    "R_to_L": _cert_fact_R,
    "bd_below_Rk": _cert_bd_below_Rk,
}


# ---------------------------------------------------------------------------
# suites


@dataclass
class SuiteReport:
    lemma: str
    params: dict
    trials: int
    seed: int
    passed: int = 0
    evidence: int = 0
    vacuous: int = 0
    vacuous_false: int = 0
    vacuous_unknown: int = 0
    fail: int = 0
    inconclusive: int = 0
    witnesses: list = field(default_factory=list)
    wall_time_s: float = 0.0
    mutant: Optional[str] = None

    @property
    def insufficient(self) -> bool:
        return self.trials > 0 and self.vacuous / self.trials > 0.95

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "trials": self.trials,
            "pass": self.passed,
            "evidence": self.evidence,
            "vacuous": self.vacuous,
            "vacuous_false": self.vacuous_false,
            "vacuous_unknown": self.vacuous_unknown,
            "fail": self.fail,
            "inconclusive": self.inconclusive,
            "witnesses": self.witnesses,
            "seed": self.seed,
            "mutant": self.mutant,
            "insufficient": self.insufficient,
            "wall_time_s": round(self.wall_time_s, 3),
        }


MAX_WITNESSES = 5


def run_suite(cid: str, trials: int, seed: int, policy: Policy = Policy(),
              params: Optional[dict] = None, mutant: Optional[str] = None,
              stop_on_fail: bool = False) -> SuiteReport:
    """Mixed random/certified trials of one connection's defining implication."""
    if trials < 1:
        raise BadParams("suites need at least one trial")
    if cid not in CONNECTIONS:
        raise UnknownId(f"unknown connection {cid!r}")
    merged = dict(CONNECTIONS[cid].defaults)
    if params:
        merged.update(params)
    if mutant is None:
        conn = build_connection(cid, merged)
        certs_usable = True
    else:
        conn, certs_usable = build_mutant(cid, mutant, merged)
    report = SuiteReport(lemma=cid, params=merged, trials=trials, seed=seed,
                         mutant=mutant)
    started = time.perf_counter()
    for t in range(trials):
        child = split_seed(seed, t)
        certified = t % 2 == 1
        if certified:
            x, y, cert = certified_instance(cid, merged, child)
        else:
            x, y = random_instance(conn, child)
            cert = None
        outcome = check_connection(
            conn, x, y, policy,
            premise_certified=cert is not None and certs_usable)
        _tally(report, outcome, x, y)
        if stop_on_fail and report.fail:
            report.trials = t + 1
            break
    report.wall_time_s = time.perf_counter() - started
    return report


def _tally(report: SuiteReport, outcome: CheckOutcome, x, y):
    from .tukey import FAIL, INCONCLUSIVE, PASS, PASS_WITH_EVIDENCE, VACUOUS

    if outcome.status == PASS:
        report.passed += 1
    elif outcome.status == PASS_WITH_EVIDENCE:
        report.evidence += 1
    elif outcome.status == VACUOUS:
        report.vacuous += 1
        if outcome.vacuous_reason == "premise_false":
            report.vacuous_false += 1
        else:
            report.vacuous_unknown += 1
    elif outcome.status == FAIL:
        report.fail += 1
        if len(report.witnesses) < MAX_WITNESSES:
            report.witnesses.append({
                "x": encode_object(x),
                "y": encode_object(y),
                "premise": outcome.premise.to_json(),
                "conclusion": outcome.conclusion.to_json()
                if outcome.conclusion else None,
            })
    else:
        report.inconclusive += 1


def run_all_suites(trials: int, seed: int, policy: Policy = Policy(),
                   progress: Optional[Callable[[SuiteReport], None]] = None):
    """One suite per registered connection.

    Suites are independent (each gets its own derived seed), so the optional
    ITL_THREADS cap only bounds concurrency; reports always come back in
    registry order and are identical either way.
    """
    import os

    cids = list(CONNECTIONS)
    workers = 1
    raw = os.environ.get("ITL_THREADS")
    if raw:
        try:
            workers = max(1, min(int(raw), len(cids)))
        except ValueError:
            workers = 1
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(
                lambda pair: run_suite(pair[1], trials, split_seed(seed, pair[0]),
                                       policy),
                enumerate(cids)))
    else:
        reports = [run_suite(cid, trials, split_seed(seed, i), policy)
                   for i, cid in enumerate(cids)]
    if progress:
        for rep in reports:
            progress(rep)
    return reports


# ---------------------------------------------------------------------------
# counterexample search


PREDICATE_IDS = ("both_col1", "forall0_holds", "fail_fact_monotone")


def search_counterexample(predicate_id: str, budget: int, seed: int) -> dict:
    """Search for a witness contradicting a structurally impossible claim;
    the expected outcome is exhaustion."""
    if predicate_id == "both_col1":
        return _search_both_col1(budget, seed)
    if predicate_id == "forall0_holds":
        return _search_forall0(budget, seed)
    if predicate_id == "fail_fact_monotone":
        return _search_fact_monotone(budget, seed)
    raise UnknownId(f"unknown predicate {predicate_id!r}")


def _search_both_col1(budget: int, seed: int) -> dict:
    f, g = interleaved_pair(seed)
    system = system_col("forall", 1)
    gp = GenParams()
    for i in range(budget):
        p = _gen_partition(Rng(split_seed(seed, i + 1)), gp)
        if system.holds(f, p).is_true and system.holds(g, p).is_true:
            return {"predicate": "both_col1", "found": True, "examined": i + 1,
                    "witness": encode_object(p)}
    return {"predicate": "both_col1", "found": False, "examined": budget,
            "witness": None,
            "pair": {"f": encode_object(f), "g": encode_object(g)}}


def _search_forall0(budget: int, seed: int) -> dict:
    from .relations import Const, eval_count_relation

    gp = GenParams()
    for i in range(budget):
        rng = Rng(split_seed(seed, i))
        f = _gen_stream(rng.spawn(1), gp, Domain("stream"))
        x = _gen_word(rng.spawn(2), gp)
        if eval_count_relation(f, x, Const(0), FORALL).is_true:
            return {"predicate": "forall0_holds", "found": True, "examined": i + 1,
                    "witness": {"f": encode_object(f), "x": encode_object(x)}}
    return {"predicate": "forall0_holds", "found": False, "examined": budget,
            "witness": None}


def _search_fact_monotone(budget: int, seed: int) -> dict:
    from .relations import Const, eval_count_relation

    gp = GenParams()
    for i in range(budget):
        rng = Rng(split_seed(seed, i))
        f = _gen_stream(rng.spawn(1), gp, Domain("stream"))
        x = _gen_word(rng.spawn(2), gp)
        k = rng.randint(0, 2)
        l = k + rng.randint(1, 2)
        lower = eval_count_relation(f, x, Const(k), FORALL)
        upper = eval_count_relation(f, x, Const(l), FORALL)
        if lower.is_true and upper.is_false:
            return {"predicate": "fail_fact_monotone", "found": True,
                    "examined": i + 1,
                    "witness": {"f": encode_object(f), "x": encode_object(x),
                                "k": k, "l": l}}
    return {"predicate": "fail_fact_monotone", "found": False, "examined": budget,
            "witness": None}
