"""Scenario files: a quantum group, an action and a measure, with expectations.

A scenario is JSON with ``"schema": 1``. Complex scalars are ``[re, im]``
pairs and tensors are nested arrays indexed ``[i][j][k]``. Group tables are
integer matrices whose element 0 is the identity. Each of the three parts is
either an explicit tensor (``"construct": "load"``) or a constructor
directive, for example::

    {"schema": 1, "name": "z2_walk",
     "quantum_group": {"construct": "function_algebra", "group": {"named": "Z2"}},
     "action": {"construct": "comultiplication"},
     "measure": {"construct": "point_mass", "element": 1},
     "expected": {"ergodic": true, "nondegenerate": true, "dim_H": 1}}

Loading expands the directives and verifies every axiom before returning.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from .actions import ActionData, check_action, comultiplication_as_action, from_automorphism_action, \
    from_group_action_on_set, pauli_action, verify_action
from .algebra import ModuleAlgebra, matrix_algebra
from .checks import AxiomError
from .groups import GroupError, coset_action, named_group, validate_group
from .hopf import HopfData, HopfError, compute_haar, dual_hopf, function_algebra, group_algebra, verify_hopf
from .measures import Functional, counit, haar, point_mass, verify_state
from .numeric import DEFAULT_TOL, Tolerance

SCHEMA_VERSION = 1

def _tensor(depth: int) -> dict:
    # shape and entries are checked by the loader with numpy; per-entry schema
    # validation of a few thousand numbers costs more than the analysis itself
    return {"type": "array", "minItems": 1,
            "description": f"rank-{depth} complex tensor, innermost entries [re, im]"}


_int_matrix = {"type": "array", "minItems": 1,
               "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}}

_group = {
    "type": "object",
    "oneOf": [
        {"required": ["named"], "properties": {"named": {"type": "string"}}, "additionalProperties": False},
        {"required": ["table"], "properties": {"table": _int_matrix}, "additionalProperties": False},
    ],
}

_hopf_tensors = {
    "type": "object",
    "required": ["mult", "unit", "invol", "comult", "counit", "antipode"],
    "properties": {
        "labels": {"type": "array", "items": {"type": "string"}},
        "name": {"type": "string"},
        "mult": _tensor(3), "unit": _tensor(1), "invol": _tensor(2), "comult": _tensor(3),
        "counit": _tensor(1), "antipode": _tensor(2), "haar": _tensor(1),
    },
    "additionalProperties": False,
}

_algebra_tensors = {
    "type": "object",
    "required": ["mult", "unit", "invol"],
    "properties": {
        "mult": _tensor(3), "unit": _tensor(1), "invol": _tensor(2), "trace": _tensor(1),
        "labels": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

_target = {
    "if": {"type": "object", "required": ["matrix_algebra"]},
    "then": {"type": "object", "properties": {"matrix_algebra": {"type": "integer", "minimum": 1}},
             "additionalProperties": False},
    "else": _algebra_tensors,
}


def _directive(name: str, props: dict | None = None, required: list | None = None) -> dict:
    props = dict(props or {})
    props["construct"] = {"const": name}
    return {"type": "object", "required": ["construct"] + (required or []),
            "properties": props, "additionalProperties": False}


def _dispatch(*directives: dict) -> dict:
    """Select the directive by its ``construct`` value, so only that branch is validated.

    A plain oneOf would validate large tensors once per alternative.
    """
    names = [d["properties"]["construct"]["const"] for d in directives]
    return {"type": "object", "required": ["construct"],
            "properties": {"construct": {"enum": names}},
            "allOf": [{"if": {"properties": {"construct": {"const": n}}}, "then": d}
                      for n, d in zip(names, directives)]}


_quantum_group = _dispatch(
    _directive("function_algebra", {"group": _group, "name": {"type": "string"}}, ["group"]),
    _directive("group_algebra", {"group": _group, "name": {"type": "string"}}, ["group"]),
    _directive("dual", {"of": {"$ref": "#/$defs/quantum_group"}}, ["of"]),
    _directive("load", {"hopf": _hopf_tensors}, ["hopf"]),
)

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "quantum random walk scenario",
    "type": "object",
    "required": ["schema", "name", "quantum_group", "action", "measure"],
    "$defs": {"quantum_group": _quantum_group},
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "name": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "quantum_group": {"$ref": "#/$defs/quantum_group"},
        "action": _dispatch(
            _directive("comultiplication"),
            _directive("group_set", {"points": {"type": "integer", "minimum": 1}, "act": _int_matrix},
                       ["points", "act"]),
            _directive("cosets", {"subgroup": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
                       ["subgroup"]),
            _directive("automorphisms", {"target": _target, "automorphisms": _tensor(3)},
                       ["target", "automorphisms"]),
            _directive("pauli"),
            _directive("load", {"target": _target, "tensor": _tensor(3)}, ["target", "tensor"]),
        ),
        "measure": _dispatch(
            _directive("counit"),
            _directive("haar"),
            _directive("point_mass", {"element": {"type": "integer", "minimum": 0}}, ["element"]),
            _directive("group_measure", {"weights": {"type": "array", "items": {"type": "number", "minimum": 0},
                                                     "minItems": 1}}, ["weights"]),
            _directive("positive_definite", {"values": _tensor(1)}, ["values"]),
            _directive("coords", {"coords": _tensor(1)}, ["coords"]),
        ),
        "expected": {
            "type": "object",
            "properties": {
                "ergodic": {"type": "boolean"},
                "nondegenerate": {"type": "boolean"},
                "dim_H": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "tags": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

WEIGHT_SUM_TOL = 1e-12


class ScenarioSchemaError(ValueError):
    """The file is not a valid scenario; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"schema violation at {path}: {message}")


@dataclass(eq=False)
class Scenario:
    name: str
    hopf: HopfData
    action: ActionData
    measure: Functional
    expected: dict = field(default_factory=dict)
    classical: dict | None = None
    tags: tuple[str, ...] = ()
    source: dict | None = None

    def verify(self, tol: Tolerance = DEFAULT_TOL) -> dict:
        """Axiom reports for the quantum group, the action and the state."""
        return {"hopf": verify_hopf(self.hopf, tol), "action": verify_action(self.action, tol),
                "state": verify_state(self.measure, tol)}

    def check(self, tol: Tolerance = DEFAULT_TOL) -> "Scenario":
        for rep in self.verify(tol).values():
            rep.raise_if_failed()
        return self


def _path(parts) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def validate_document(doc: dict):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        # report the deepest error inside a failing oneOf, which names the real field
        err = errors[0]
        while err.context:
            err = max(err.context, key=lambda e: len(e.absolute_path))
        raise ScenarioSchemaError(_path(err.absolute_path), err.message)


def _c(a, where: str, depth: int) -> np.ndarray:
    """A rank-``depth`` complex tensor from nested lists ending in [re, im] pairs."""
    try:
        arr = np.asarray(a, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioSchemaError(where, "tensor is ragged or has non-numeric entries") from None
    if arr.ndim != depth + 1 or arr.shape[-1] != 2 or 0 in arr.shape:
        raise ScenarioSchemaError(where, f"expected a rank-{depth} tensor of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def to_pairs(a) -> list:
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _group_table(spec: dict, where: str) -> np.ndarray:
    try:
        if "named" in spec:
            return named_group(spec["named"])
        return validate_group(np.asarray(spec["table"]))
    except (GroupError, ValueError) as exc:
        raise ScenarioSchemaError(where, str(exc)) from exc


def _build_quantum_group(spec: dict, where: str, tol: Tolerance):
    kind = spec["construct"]
    if kind in ("function_algebra", "group_algebra"):
        T = _group_table(spec["group"], where + ".group")
        gname = spec["group"].get("named", f"G{T.shape[0]}")
        if kind == "function_algebra":
            return function_algebra(T, spec.get("name", f"C({gname})")), T, kind
        return group_algebra(T, spec.get("name", f"C[{gname}]")), T, kind
    if kind == "dual":
        inner, T, inner_kind = _build_quantum_group(spec["of"], where + ".of", tol)
        return dual_hopf(inner, tol), T, f"dual {inner_kind}"
    h = spec["hopf"]
    ranks = {"mult": 3, "unit": 1, "invol": 2, "comult": 3, "counit": 1, "antipode": 2}
    fields = {k: _c(h[k], f"{where}.hopf.{k}", r) for k, r in ranks.items()}
    d = fields["mult"].shape[0]
    labels = tuple(h["labels"]) if "labels" in h else None
    try:
        H = HopfData(**fields, haar=_c(h["haar"], where + ".hopf.haar", 1) if "haar" in h else np.zeros(d), labels=labels,
                     name=h.get("name", "loaded"))
    except HopfError as exc:
        raise ScenarioSchemaError(where + ".hopf", str(exc)) from exc
    if "haar" not in h:
        H = H.replace(haar=compute_haar(H, tol))
    return H, None, kind


def _build_target(spec: dict, where: str) -> ModuleAlgebra:
    if "matrix_algebra" in spec:
        return matrix_algebra(spec["matrix_algebra"])
    try:
        return ModuleAlgebra(_c(spec["mult"], where + ".mult", 3), _c(spec["unit"], where + ".unit", 1),
                             _c(spec["invol"], where + ".invol", 2),
                             _c(spec["trace"], where + ".trace", 1) if "trace" in spec else None,
                             tuple(spec["labels"]) if "labels" in spec else None)
    except ScenarioSchemaError:
        raise
    except ValueError as exc:
        raise ScenarioSchemaError(where, str(exc)) from exc


def _build_action(spec: dict, H: HopfData, T, qg_kind: str, where: str, tol: Tolerance):
    kind = spec["construct"]
    classical_act = None
    needs_c_of_g = kind in ("group_set", "cosets", "automorphisms", "pauli")
    if needs_c_of_g and qg_kind != "function_algebra":
        raise ScenarioSchemaError(where + ".construct", f"'{kind}' needs a function_algebra quantum group")
    try:
        if kind == "comultiplication":
            alpha = comultiplication_as_action(H)
            if qg_kind == "function_algebra":
                classical_act = (T.shape[0], np.asarray(T))
        elif kind == "group_set":
            act = np.asarray(spec["act"])
            alpha = from_group_action_on_set(T, spec["points"], act, H)
            classical_act = (spec["points"], act)
        elif kind == "cosets":
            K = sorted(set(spec["subgroup"]))
            if max(K) >= T.shape[0] or 0 not in K or any(T[a, b] not in K for a in K for b in K):
                raise ScenarioSchemaError(where + ".subgroup", f"{K} is not a subgroup")
            act = coset_action(T, K)
            alpha = from_group_action_on_set(T, act.shape[1], act, H, name="coset space")
            classical_act = (act.shape[1], act)
        elif kind == "automorphisms":
            N = _build_target(spec["target"], where + ".target")
            alpha = from_automorphism_action(T, N, _c(spec["automorphisms"], where + ".automorphisms", 3), H, tol)
        elif kind == "pauli":
            base = pauli_action()
            if H.dim != base.parent.dim:
                raise ScenarioSchemaError(where, "the Pauli action needs C(Z2xZ2)")
            alpha = ActionData(H, base.target, base.tensor, base.name)
        else:
            N = _build_target(spec["target"], where + ".target")
            alpha = ActionData(H, N, _c(spec["tensor"], where + ".tensor", 3), "loaded")
    except (GroupError, ValueError) as exc:
        if isinstance(exc, (ScenarioSchemaError, AxiomError)):
            raise
        raise ScenarioSchemaError(where, str(exc)) from exc
    return alpha, classical_act


def _build_measure(spec: dict, H: HopfData, T, qg_kind: str, where: str) -> Functional:
    kind = spec["construct"]
    d = H.dim
    if kind == "counit":
        return counit(H)
    if kind == "haar":
        return haar(H)
    if kind == "point_mass":
        if qg_kind != "function_algebra":
            raise ScenarioSchemaError(where + ".construct", "point masses need a function_algebra quantum group")
        if spec["element"] >= d:
            raise ScenarioSchemaError(where + ".element", f"element {spec['element']} out of range")
        return point_mass(H, spec["element"])
    if kind == "group_measure":
        w = np.asarray(spec["weights"], dtype=float)
        if qg_kind != "function_algebra":
            raise ScenarioSchemaError(where + ".construct", "group measures need a function_algebra quantum group")
        if w.shape != (d,):
            raise ScenarioSchemaError(where + ".weights", f"expected {d} weights, got {w.shape[0]}")
        if abs(w.sum() - 1) > WEIGHT_SUM_TOL:
            raise ScenarioSchemaError(where + ".weights", f"weights sum to {w.sum():.15g}, not 1")
        return Functional(H, w)
    if kind == "positive_definite":
        u = _c(spec["values"], where + ".values", 1)
        if qg_kind != "group_algebra":
            raise ScenarioSchemaError(where + ".construct", "positive-definite functions need a group_algebra")
        if u.shape != (d,):
            raise ScenarioSchemaError(where + ".values", f"expected {d} values, got {u.shape[0]}")
        return Functional(H, u)
    c = _c(spec["coords"], where + ".coords", 1)
    if c.shape != (d,):
        raise ScenarioSchemaError(where + ".coords", f"expected {d} coordinates, got {c.shape[0]}")
    return Functional(H, c)


def build_scenario(doc: dict, tol: Tolerance = DEFAULT_TOL, verify: bool = True) -> Scenario:
    validate_document(doc)
    H, T, qg_kind = _build_quantum_group(doc["quantum_group"], "$.quantum_group", tol)
    if verify:
        verify_hopf(H, tol).raise_if_failed()
    alpha, classical_act = _build_action(doc["action"], H, T, qg_kind, "$.action", tol)
    if verify:
        check_action(alpha, tol)
    mu = _build_measure(doc["measure"], H, T, qg_kind, "$.measure")
    if verify:
        verify_state(mu, tol).raise_if_failed()
    classical = None
    if classical_act is not None:
        n_points, act = classical_act
        classical = {"table": np.asarray(T), "n_points": int(n_points), "act": np.asarray(act),
                     "weights": mu.coords.real.copy()}
    return Scenario(doc["name"], H, alpha, mu, dict(doc.get("expected", {})), classical,
                    tuple(doc.get("tags", ())), doc)


def load_scenario(path, tol: Tolerance = DEFAULT_TOL) -> Scenario:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioSchemaError("$", f"invalid JSON: {exc}") from exc
    return build_scenario(doc, tol)


def serialize(s: Scenario) -> dict:
    """Explicit-tensor form of a scenario; loading it gives the same tensors."""
    H, alpha = s.hopf, s.action
    N = alpha.target
    doc = {
        "schema": SCHEMA_VERSION,
        "name": s.name,
        "quantum_group": {"construct": "load", "hopf": {
            "labels": list(H.labels), "name": H.name,
            **{k: to_pairs(getattr(H, k)) for k in ("mult", "unit", "invol", "comult", "counit",
                                                    "antipode", "haar")}}},
        "action": {"construct": "load",
                   "target": {"mult": to_pairs(N.mult), "unit": to_pairs(N.unit), "invol": to_pairs(N.invol),
                              "trace": to_pairs(N.trace)},
                   "tensor": to_pairs(alpha.tensor)},
        "measure": {"construct": "coords", "coords": to_pairs(s.measure.coords)},
    }
    if s.expected:
        doc["expected"] = dict(s.expected)
    if s.tags:
        doc["tags"] = list(s.tags)
    return doc


def save_scenario(s: Scenario | dict, path):
    doc = serialize(s) if isinstance(s, Scenario) else s
    Path(path).write_text(json.dumps(doc, indent=1))
