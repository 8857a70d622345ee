import json
import random
from fractions import Fraction

import pytest

from present_bias.deletion import DeletionInstance
from present_bias.documents import ParseError, export_dot, parse_instance, serialize, to_document
from present_bias.kernel import TRIVIAL_NO, apply_rules, to_false_promises
from present_bias.model import Model, simulate_agent
from present_bias.random_instances import (
    random_deletion_instance,
    random_model,
    random_path_with_detours,
)
from present_bias.reductions import random_ksum, random_spmve

from .conftest import running_model


def test_running_round_trip(running):
    text = serialize(running)
    back = parse_instance(text)
    assert isinstance(back, Model)
    assert serialize(back) == text
    assert back.beta == Fraction(1, 3)
    assert simulate_agent(back).steps == simulate_agent(running).steps


def _random_document(rng):
    kind = rng.randrange(6)
    if kind == 0:
        return random_model(rng)
    if kind == 1:
        return random_deletion_instance(rng)
    if kind == 2:
        fp = to_false_promises(random_deletion_instance(rng))
        kernel, _ = apply_rules(fp)
        return fp if kernel is TRIVIAL_NO else kernel
    if kind == 3:
        return random_path_with_detours(rng).instance
    if kind == 4:
        return random_spmve(rng)
    return random_ksum(rng, rng.randint(1, 4))


def test_round_trip_fuzz():
    rng = random.Random(2024)
    kinds = set()
    for _ in range(1000):
        obj = _random_document(rng)
        text = serialize(obj)
        again = serialize(parse_instance(text))
        assert again == text
        kinds.add(json.loads(text)["kind"])
    assert kinds == {"model", "deletion", "fp_deletion", "addition", "spmve", "ksum"}


def _doc(**changes):
    doc = to_document(running_model())
    doc.update(changes)
    return doc


def test_rational_strings_are_exact():
    m = parse_instance(json.dumps(_doc(beta="1/3", reward="7/2")))
    assert m.beta == Fraction(1, 3) and m.reward == Fraction(7, 2)


def test_cycle_rejected():
    doc = _doc()
    doc["arcs"].append({"id": "back", "tail": "t", "head": "s", "weight": 1})
    with pytest.raises(ParseError, match="acyclic"):
        parse_instance(json.dumps(doc, indent=2))


def test_float_rejected_with_line():
    text = json.dumps(_doc(beta=0.5), indent=2)
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == text.splitlines().index('  "beta": 0.5,') + 1


def test_unknown_field_rejected_with_line():
    text = json.dumps(_doc(colour="red"), indent=2)
    with pytest.raises(ParseError, match="colour") as err:
        parse_instance(text)
    assert "colour" in text.splitlines()[err.value.line - 1]


@pytest.mark.parametrize("version", [0, 2, "1", None])
def test_version_rejected(version):
    with pytest.raises(ParseError, match="format_version") as err:
        parse_instance(json.dumps(_doc(format_version=version), indent=2))
    assert err.value.line == 2


def test_missing_field_and_malformed_json():
    doc = _doc()
    del doc["reward"]
    with pytest.raises(ParseError, match="missing"):
        parse_instance(json.dumps(doc))
    with pytest.raises(ParseError) as err:
        parse_instance('{\n  "kind": \n}')
    assert err.value.line is not None


def test_dot_export_running(running):
    text = export_dot(running)
    lines = text.splitlines()
    nodes = [l for l in lines if l.strip().startswith('"') and "->" not in l]
    edges = [l for l in lines if "->" in l]
    assert len(nodes) == 7 and len(edges) == 8
    labels = [l.split('label="')[1].split('"')[0] for l in edges]
    assert labels == ["6", "2", "2", "2", "1", "6", "3", "7"]
    assert "bold" not in text
    assert export_dot(running) == text


def test_dot_marks_prescribed_arcs():
    text = export_dot(DeletionInstance(running_model(), 1, frozenset({"dt"})))
    bold = [l for l in text.splitlines() if "bold" in l]
    assert len(bold) == 1 and '"dt"' in bold[0]
