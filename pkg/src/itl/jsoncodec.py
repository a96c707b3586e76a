"""Canonical JSON encodings for the domain objects.

Rationals travel as ``"p/q"`` strings so round-trips stay exact.  Program
streams expose only their identifier: they carry opaque closures, so they
encode for reporting but do not decode.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedSpec
from .kernel.measures import MeasurableSet
from .kernel.partitions import Partition
from .kernel.sets import EPWord, OmegaSet, RangeOf
from .kernel.streams import EPDiff, Program, Ramp, UpStream


def _frac_str(x: Fraction) -> str:
    return str(x)


def encode_stream(f: UpStream) -> dict:
    if isinstance(f, EPDiff):
        return {"kind": "ep", "start": f.start, "prefix": list(f.prefix_diffs),
                "cycle": list(f.cycle_diffs)}
    if isinstance(f, Ramp):
        return {"kind": "ramp", "start": f.start, "alpha": f.alpha, "beta": f.beta}
    if isinstance(f, Program):
        return {"kind": "program", "id": f.pid}
    raise MalformedSpec(f"cannot encode stream {f!r}")


def encode_set(x: OmegaSet) -> dict:
    if isinstance(x, EPWord):
        return {"kind": "word", "prefix": "".join(map(str, x.prefix)),
                "cycle": "".join(map(str, x.cycle))}
    if isinstance(x, RangeOf):
        return {"kind": "range", "stream": encode_stream(x.stream)}
    raise MalformedSpec(f"cannot encode set {x!r}")


def encode_partition(p: Partition) -> dict:
    return {
        "boundaries": encode_stream(p.boundaries),
        "pattern": {"prefix": [list(pat) for pat in p.prefix_patterns],
                    "cycle": [list(pat) for pat in p.cycle_patterns]},
        "merge_prefix": p.merge_prefix,
    }


def encode_measurable(y: MeasurableSet) -> dict:
    return {
        "prefix": [[_frac_str(lo), _frac_str(hi)] for lo, hi in y.prefix_intervals],
        "motif": [[_frac_str(lo), _frac_str(hi)] for lo, hi in y.motif_intervals],
        "p0": _frac_str(y.p0),
        "L": _frac_str(y.period),
    }


def encode_object(obj) -> dict:
    if isinstance(obj, UpStream):
        return encode_stream(obj)
    if isinstance(obj, OmegaSet):
        return encode_set(obj)
    if isinstance(obj, Partition):
        return encode_partition(obj)
    if isinstance(obj, MeasurableSet):
        return encode_measurable(obj)
    raise MalformedSpec(f"cannot encode {type(obj).__name__}")


def decode_object(data: dict):
    """Dispatch on the descriptor shape."""
    if not isinstance(data, dict):
        raise MalformedSpec("object descriptors are JSON objects")
    kind = data.get("kind")
    if kind in ("ep", "ramp", "program"):
        from .kernel.streams import make_up_stream

        return make_up_stream(data)
    if kind in ("word", "range"):
        from .kernel.sets import make_omega_set

        return make_omega_set(data)
    if "boundaries" in data:
        from .kernel.partitions import make_partition

        return make_partition(data)
    if "motif" in data:
        from .kernel.measures import make_measurable_set

        return make_measurable_set(data)
    raise MalformedSpec(f"unrecognized object descriptor with keys {sorted(data)}")
