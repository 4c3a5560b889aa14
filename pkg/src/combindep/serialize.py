"""Versioned JSON documents for subshifts, clopen tuples, trace sets and constructions.

Words are digit strings over ``0-9a-z``.  Every top-level document carries
``"format"`` and ``"version"``; trace sets also load from the bare
``{window, k, patterns}`` form.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .constructions import ToeplitzShift, ToeplitzSpec, WapShift, WapSpec
from .covers import TraceSet
from .errors import FormatError
from .symbolic import SFT, ClopenSet, Cylinder, FullShift, ProductShift, Subshift, format_word, parse_word

VERSION = 1
CORPUS = ("toeplitz_level1", "toeplitz_level2", "toeplitz_level3")


def _check_header(doc, fmt):
    if not isinstance(doc, dict):
        raise FormatError(f"{fmt}: expected a JSON object")
    got = doc.get("format", fmt)
    if got != fmt:
        raise FormatError(f"expected format {fmt!r}, got {got!r}")
    version = doc.get("version", VERSION)
    if version != VERSION:
        raise FormatError(f"{fmt}: unsupported version {version!r}")


def _field(doc, name, kind=None):
    if name not in doc:
        raise FormatError(f"missing field {name!r}")
    value = doc[name]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"field {name!r} has the wrong type")
    return value


def _int(doc, name, low=None):
    v = _field(doc, name)
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"field {name!r} must be an integer")
    if low is not None and v < low:
        raise FormatError(f"field {name!r} must be at least {low}")
    return v


def _word(text, alphabet=None):
    if not isinstance(text, str):
        raise FormatError(f"word {text!r} must be a digit string")
    try:
        w = parse_word(text)
    except ValueError as e:
        raise FormatError(str(e)) from None
    if alphabet is not None and any(a >= alphabet for a in w):
        raise FormatError(f"word {text!r} uses symbols outside the alphabet of size {alphabet}")
    return w


# -- constructions -----------------------------------------------------------


def toeplitz_to_json(spec: ToeplitzSpec) -> dict:
    return {
        "format": "toeplitz",
        "version": VERSION,
        "levels": spec.levels,
        "periods": list(spec.periods),
        "residues": [list(r) for r in spec.residues],
        "translations": [list(t) for t in spec.translations],
        "values": [list(v) for v in spec.values],
    }


def toeplitz_from_json(doc) -> ToeplitzSpec:
    _check_header(doc, "toeplitz")
    try:
        spec = ToeplitzSpec(
            tuple(_field(doc, "periods", list)),
            tuple(_field(doc, "residues", list)),
            tuple(_field(doc, "translations", list)),
            tuple(_field(doc, "values", list)),
        )
    except (TypeError, ValueError) as e:
        raise FormatError(f"toeplitz: {e}") from None
    if doc.get("levels", spec.levels) != spec.levels:
        raise FormatError("toeplitz: 'levels' disagrees with the stored periods")
    return spec


def wap_to_json(spec: WapSpec) -> dict:
    return {
        "format": "wap",
        "version": VERSION,
        "levels": spec.levels,
        "positions": list(spec.positions),
        "block_sizes": list(spec.block_sizes),
    }


def wap_from_json(doc) -> WapSpec:
    _check_header(doc, "wap")
    levels = _int(doc, "levels", 1)
    positions = tuple(_field(doc, "positions", list))
    sizes = tuple(_field(doc, "block_sizes", list))
    if len(sizes) < levels + 1 or sum(sizes) > len(positions):
        raise FormatError("wap: need block sizes and positions through block levels+1")
    return WapSpec(positions, sizes, levels)


def load_corpus(name: str) -> ToeplitzSpec:
    """A shipped, verified Toeplitz spec, e.g. ``"toeplitz_level3"``."""
    if name not in CORPUS:
        raise FormatError(f"unknown corpus entry {name!r}; have {', '.join(CORPUS)}")
    text = resources.files("combindep").joinpath("data", f"{name}.json").read_text()
    return toeplitz_from_json(json.loads(text))


# -- subshifts ----------------------------------------------------------------


def subshift_to_json(spec: Subshift, *, top=True) -> dict:
    if isinstance(spec, FullShift):
        doc = {"variant": "full", "alphabet": spec.alphabet}
    elif isinstance(spec, SFT):
        doc = {
            "variant": "sft",
            "alphabet": spec.alphabet,
            "memory": spec.memory,
            "forbidden": sorted(format_word(w) for w in spec.forbidden),
        }
    elif isinstance(spec, ProductShift):
        doc = {
            "variant": "product",
            "alphabet": spec.alphabet,
            "left": subshift_to_json(spec.left, top=False),
            "right": subshift_to_json(spec.right, top=False),
        }
    elif isinstance(spec, ToeplitzShift):
        doc = {"variant": "toeplitz", "alphabet": 2, "level": spec.level, "spec": toeplitz_to_json(spec.spec)}
    elif isinstance(spec, WapShift):
        doc = {"variant": "wap", "alphabet": 2, "levels": spec.spec.levels, "spec": wap_to_json(spec.spec)}
    else:
        raise FormatError(f"cannot serialize {type(spec).__name__}")
    if top:
        doc = {"format": "subshift", "version": VERSION, **doc}
    return doc


def subshift_from_json(doc, *, top=True) -> Subshift:
    if top:
        _check_header(doc, "subshift")
    elif not isinstance(doc, dict):
        raise FormatError("subshift: expected a JSON object")
    variant = _field(doc, "variant", str)
    if variant == "full":
        return FullShift(_int(doc, "alphabet", 1))
    if variant == "sft":
        k = _int(doc, "alphabet", 1)
        words = [_word(w, k) for w in _field(doc, "forbidden", list)]
        memory = doc.get("memory")
        try:
            return SFT(k, words, memory)
        except ValueError as e:
            raise FormatError(f"sft: {e}") from None
    if variant == "product":
        spec = ProductShift(subshift_from_json(_field(doc, "left"), top=False), subshift_from_json(_field(doc, "right"), top=False))
        if doc.get("alphabet", spec.alphabet) != spec.alphabet:
            raise FormatError("product: alphabet must be the product of the factor alphabets")
        return spec
    if variant == "toeplitz":
        inner = _field(doc, "spec")
        t = load_corpus(inner) if isinstance(inner, str) else toeplitz_from_json(inner)
        try:
            return ToeplitzShift(t, doc.get("level"))
        except ValueError as e:
            raise FormatError(f"toeplitz: {e}") from None
    if variant == "wap":
        return WapShift(wap_from_json(_field(doc, "spec")))
    raise FormatError(f"unknown subshift variant {variant!r}")


# -- clopen tuples and traces ---------------------------------------------------


def clopen_to_json(a: ClopenSet) -> dict:
    return {"support": list(a.support), "patterns": sorted(format_word(p) for p in a.patterns)}


def clopen_from_json(doc, alphabet: int) -> ClopenSet:
    if not isinstance(doc, dict):
        raise FormatError("clopen set: expected a JSON object")
    if "cylinders" in doc:
        cyls = []
        for c in _field(doc, "cylinders", list):
            if not isinstance(c, dict):
                raise FormatError("cylinder: expected a JSON object")
            cyls.append(Cylinder(_int(c, "offset"), _word(_field(c, "word"), alphabet)))
        return ClopenSet.from_cylinders(cyls, alphabet)
    support = _field(doc, "support", list)
    if any(isinstance(z, bool) or not isinstance(z, int) for z in support):
        raise FormatError("clopen set: support must be integers")
    pats = [_word(p, alphabet) for p in _field(doc, "patterns", list)]
    if any(len(p) != len(support) for p in pats):
        raise FormatError("clopen set: pattern length differs from support size")
    try:
        return ClopenSet.make(alphabet, support, pats)
    except ValueError as e:
        raise FormatError(f"clopen set: {e}") from None


def tuple_to_json(sets, alphabet: int) -> dict:
    return {"format": "tuple", "version": VERSION, "alphabet": alphabet, "sets": [clopen_to_json(a) for a in sets]}


def tuple_from_json(doc) -> tuple:
    """``(alphabet, sets)``; each set is ``{support, patterns}`` or ``{cylinders}``."""
    _check_header(doc, "tuple")
    k = _int(doc, "alphabet", 1)
    sets = _field(doc, "sets", list)
    if not sets:
        raise FormatError("tuple: at least one set is required")
    return k, tuple(clopen_from_json(a, k) for a in sets)


def trace_to_json(s: TraceSet) -> dict:
    return {"format": "trace", "version": VERSION, "window": list(s.window), "k": s.k, "patterns": sorted(format_word(p) for p in s.patterns)}


def trace_from_json(doc) -> TraceSet:
    _check_header(doc, "trace")
    window = _field(doc, "window", list)
    k = _int(doc, "k", 1)
    pats = [_word(p, k + 1) for p in _field(doc, "patterns", list)]
    try:
        return TraceSet(tuple(window), k, frozenset(pats))
    except (TypeError, ValueError) as e:
        raise FormatError(f"trace: {e}") from None


# -- files ----------------------------------------------------------------------


def dumps(doc) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def read_json(path):
    """Parse ``path`` (``-`` for stdin)."""
    import sys

    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
