"""JSON instance documents and DOT export.

Rationals are written as bare integers or ``"p/q"`` strings; JSON floats are
rejected. Unknown keys are rejected. ``order`` (the tie-break order) is only
written when it differs from the default topological order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .addition import AdditionInstance, Candidate
from .deletion import DeletionInstance, FPDeletionInstance
from .kernel import KernelTrace, Rule1Removed, Rule2TrivialNo, Rule3Merged
from .model import (
    INF,
    Arc,
    FPModel,
    GraphError,
    Model,
    TaskGraph,
    TraversalResult,
    topological_order,
)
from .reductions import KsumInstance, SpmveInstance

FORMAT_VERSION = 1

_GRAPH = {"vertices", "arcs", "s", "t"}
_KEYS = {
    "model": _GRAPH | {"beta", "reward"},
    "deletion": _GRAPH | {"beta", "reward", "k", "T"},
    "fp_deletion": _GRAPH | {"beta", "reward", "k", "T"},
    "addition": _GRAPH | {"beta", "reward", "k", "T", "pool"},
    "spmve": _GRAPH | {"k", "ell"},
    "ksum": {"sets", "Z"},
}
_OPTIONAL = {"order"}

Instance = Union[Model, DeletionInstance, FPDeletionInstance, AdditionInstance,
                 SpmveInstance, KsumInstance]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def fmt_rational(x) -> Union[int, str]:
    if x is INF:
        return "inf"
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"{where}: expected an integer or 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{where}: bad rational {value!r}") from None


def _line_of(text: str, *needles) -> int | None:
    for needle in needles:
        token = json.dumps(needle)
        for i, line in enumerate(text.splitlines(), 1):
            if token in line:
                return i
    return None


def _arc_doc(a) -> dict:
    return {"id": a.id, "tail": a.tail, "head": a.head, "weight": fmt_rational(a.weight)}


def _graph_doc(graph: TaskGraph, s, t) -> dict:
    return {"vertices": list(graph.vertices), "arcs": [_arc_doc(a) for a in graph.arcs],
            "s": s, "t": t}


def _model_fields(model) -> dict:
    doc = _graph_doc(model.graph, model.s, model.t)
    doc["beta"] = fmt_rational(model.beta)
    if isinstance(model, FPModel):
        doc["reward"] = {v: fmt_rational(r) for v, r in model.reward_of.items()}
    else:
        doc["reward"] = fmt_rational(model.reward)
    if list(model.order) != topological_order(model.graph):
        doc["order"] = list(model.order)
    return doc


def to_document(obj: Instance) -> dict:
    """Plain-dict form of any instance type, with ``format_version`` and ``kind`` first."""
    head: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if isinstance(obj, Model):
        return {**head, "kind": "model", **_model_fields(obj)}
    if isinstance(obj, (DeletionInstance, FPDeletionInstance)):
        kind = "deletion" if isinstance(obj, DeletionInstance) else "fp_deletion"
        doc = {**head, "kind": kind, **_model_fields(obj.model)}
        doc["k"] = obj.k
        doc["T"] = sorted(obj.T)
        return doc
    if isinstance(obj, AdditionInstance):
        doc = {**head, "kind": "addition", **_model_fields(obj.model)}
        doc["k"] = obj.k
        doc["T"] = sorted(obj.T)
        doc["pool"] = [_arc_doc(c) for c in obj.pool]
        return doc
    if isinstance(obj, SpmveInstance):
        return {**head, "kind": "spmve", **_graph_doc(obj.graph, obj.s, obj.t),
                "k": obj.k, "ell": obj.ell}
    if isinstance(obj, KsumInstance):
        return {**head, "kind": "ksum", "sets": [list(xs) for xs in obj.sets], "Z": obj.Z}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj: Instance) -> str:
    return json.dumps(to_document(obj), indent=2) + "\n"


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{where}: expected an integer, got {value!r}")
    return value


def _arcs(raw, where, cls):
    if not isinstance(raw, list):
        raise ValueError(f"{where}: expected a list")
    out = []
    for i, a in enumerate(raw):
        if not isinstance(a, dict) or set(a) != {"id", "tail", "head", "weight"}:
            raise ValueError(f"{where}[{i}]: arcs need exactly id, tail, head, weight")
        out.append(cls(a["id"], a["tail"], a["head"], _rational(a["weight"], f"{where}[{i}].weight")))
    return out


def _build(doc: dict):
    kind = doc["kind"]
    if kind == "ksum":
        sets = doc["sets"]
        if not isinstance(sets, list) or not all(isinstance(xs, list) for xs in sets):
            raise ValueError("sets: expected a list of lists")
        return KsumInstance(tuple(tuple(_int(x, "sets") for x in xs) for xs in sets),
                            _int(doc["Z"], "Z"))
    graph = TaskGraph(tuple(doc["vertices"]), tuple(_arcs(doc["arcs"], "arcs", Arc)))
    if kind == "spmve":
        return SpmveInstance(graph, doc["s"], doc["t"], _int(doc["k"], "k"),
                             _int(doc["ell"], "ell"))
    beta = _rational(doc["beta"], "beta")
    order = tuple(doc["order"]) if "order" in doc else None
    if kind == "fp_deletion":
        if not isinstance(doc["reward"], dict):
            raise ValueError("reward: fp_deletion needs a per-vertex map")
        rewards = {v: _rational(r, f"reward[{v}]") for v, r in doc["reward"].items()}
        model = FPModel(graph, doc["s"], doc["t"], beta, rewards, order)
    else:
        model = Model(graph, doc["s"], doc["t"], beta,
                      _rational(doc["reward"], "reward"), order)
    if kind == "model":
        return model
    k = _int(doc["k"], "k")
    if not isinstance(doc["T"], list):
        raise ValueError("T: expected a list of arc ids")
    T = frozenset(doc["T"])
    if kind == "deletion":
        return DeletionInstance(model, k, T)
    if kind == "fp_deletion":
        return FPDeletionInstance(model, k, T)
    pool = _arcs(doc["pool"], "pool", Candidate)
    return AdditionInstance(model, k, T, tuple(pool))


def parse_instance(text: Union[str, bytes]) -> Instance:
    """Parse and validate a document; errors carry the offending line when known."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1)
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}",
                         _line_of(text, "format_version"))
    kind = doc.get("kind")
    if kind not in _KEYS:
        raise ParseError(f"unknown kind {kind!r}", _line_of(text, "kind"))
    present = set(doc) - {"format_version", "kind"}
    unknown = present - _KEYS[kind] - _OPTIONAL
    if unknown:
        name = sorted(unknown)[0]
        raise ParseError(f"unknown field {name!r} for kind {kind}", _line_of(text, name))
    missing = _KEYS[kind] - present
    if missing:
        raise ParseError(f"missing fields {sorted(missing)} for kind {kind}")
    if "order" in doc and kind in ("spmve", "ksum"):
        raise ParseError(f"field 'order' is not valid for kind {kind}", _line_of(text, "order"))
    try:
        return _build(doc)
    except GraphError as exc:
        raise ParseError(f"invariant violated: {exc}", _line_for_error(text, str(exc))) from None
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(str(exc), _line_for_error(text, str(exc))) from None


def _line_for_error(text: str, message: str) -> int | None:
    for word in message.replace("(", " ").replace(")", " ").replace(",", " ").split():
        word = word.strip("'[]:")
        if len(word) > 1 and json.dumps(word) in text:
            return _line_of(text, word)
    return None


def trace_to_json(trace: KernelTrace) -> list[dict]:
    out = []
    for step in trace:
        if isinstance(step, Rule1Removed):
            out.append({"rule": 1, "vertex": step.v, "removed_arcs": list(step.removed_arcs)})
        elif isinstance(step, Rule2TrivialNo):
            out.append({"rule": 2, "trivial_no": True})
        elif isinstance(step, Rule3Merged):
            out.append({"rule": 3, "x": step.x, "y": step.y, "z": step.z,
                        "old_arcs": list(step.old_arcs), "new_arc": step.new_arc,
                        "old_rewards": [fmt_rational(r) for r in step.old_rewards]})
    return out


def traversal_to_json(res: TraversalResult) -> dict:
    outcome = "reached" if res.reached else {"abandoned": res.at}
    return {"steps": list(res.steps), "outcome": outcome,
            "perceived": {v: fmt_rational(z) for v, z in res.perceived_at}}


def _dot_id(x: str) -> str:
    return json.dumps(x)


def export_dot(obj) -> str:
    """Graphviz text: weights as labels, ``T`` arcs bold, candidate arcs dashed."""
    T: frozenset = frozenset()
    pool = ()
    if isinstance(obj, (DeletionInstance, FPDeletionInstance, AdditionInstance)):
        model, T = obj.model, obj.T
        pool = getattr(obj, "pool", ())
        graph, s, t, order = model.graph, model.s, model.t, model.order
    elif isinstance(obj, (Model, FPModel)):
        graph, s, t, order = obj.graph, obj.s, obj.t, obj.order
    elif isinstance(obj, SpmveInstance):
        graph, s, t = obj.graph, obj.s, obj.t
        order = tuple(topological_order(graph))
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    lines = ["digraph task_graph {", "  rankdir=LR;"]
    for v in order:
        attrs = []
        if v == s:
            attrs.append('xlabel="s"')
        if v == t:
            attrs += ['xlabel="t"', "shape=doublecircle"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(v)}{suffix};")
    for a in graph.arcs:
        style = ", style=bold" if a.id in T else ""
        lines.append(f"  {_dot_id(a.tail)} -> {_dot_id(a.head)} "
                     f"[label=\"{a.weight}\", id={_dot_id(a.id)}{style}];")
    for c in pool:
        lines.append(f"  {_dot_id(c.tail)} -> {_dot_id(c.head)} "
                     f"[label=\"{c.weight}\", id={_dot_id(c.id)}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
