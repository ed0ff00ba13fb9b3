"""Bit-exact JSON document formats for every toolkit object.

All field coefficients travel as decimal strings ("num/den" over the
rationals, residue strings over prime fields); matrices are row-major
arrays; serialization is canonical (sorted keys, two-space indent,
trailing newline) so parse . serialize is the identity on canonical
documents.  Cross-file references use {"$ref": "relative/path.json"}.
"""

from __future__ import annotations

import json
import os

from .algebras import (
    Algebra,
    AlgebraMorphism,
    ExtensionTag,
    Quiver,
    exterior_algebra,
    field_algebra,
    path_algebra,
    scalar_restriction,
    tensor_extension,
    verify_algebra_morphism,
)
from .descent import k_linear_module
from .errors import DocumentError
from .fields import FieldElem, FieldTower, PrimeBase, RationalBase, make_tower
from .linalg import Matrix
from .modrep import Module, ModuleMorphism, make_module
from .orders import RiedtmannWitness, ShortExactSequence, VdegChain

SCHEMA_VERSION = 1

KINDS = ("field", "algebra", "module", "morphism", "sequence", "family",
         "report")


def canonical_dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_document(path, doc):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(doc))


def read_raw(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DocumentError(f"document not found: {path}")
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in {path}: {exc}")


# -- serializers --


def elem_to_json(e):
    if e.tower.degree == 1:
        return e.tower.base.format(e.coeffs[0])
    return [e.tower.base.format(c) for c in e.coeffs]


def matrix_to_json(m):
    return [[elem_to_json(e) for e in row] for row in m.entries]


def tower_to_json(tower, name=None):
    doc = {
        "kind": "field",
        "schema_version": SCHEMA_VERSION,
        "base": "Q" if isinstance(tower.base, RationalBase)
        else {"p": str(tower.base.p)},
        "gen_name": tower.gen_name,
        "min_poly": [tower.base.format(c) for c in tower.min_poly],
    }
    if tower.degree > 1:
        doc["automorphisms"] = [[tower.base.format(c) for c in b.coeffs]
                                for b in tower.automorphisms]
    if name:
        doc["name"] = name
    return doc


def algebra_to_json(alg, name=None, field_ref=None):
    doc = {
        "kind": "algebra",
        "schema_version": SCHEMA_VERSION,
        "field": field_ref or tower_to_json(alg.field),
        "dim": alg.dim,
        "basis_names": list(alg.basis_names),
        "unit": [elem_to_json(c) for c in alg.unit],
        "table": [[[elem_to_json(c) for c in vec] for vec in row]
                  for row in alg.table],
    }
    if alg.gens is not None:
        doc["gens"] = [{"name": nm, "coords": [elem_to_json(c) for c in vec]}
                       for nm, vec in alg.gens]
    if alg.basis_exprs is not None:
        doc["basis_exprs"] = [_expr_to_json(e) for e in alg.basis_exprs]
    if name or alg.name:
        doc["name"] = name or alg.name
    return doc


def _expr_to_json(expr):
    kind, payload = expr
    if kind == "unit":
        return ["unit"]
    if kind == "gen":
        return ["gen", payload]
    if kind == "word":
        return ["word", list(payload)]
    if kind == "unit_minus":
        return ["unit_minus", list(payload)]
    if kind == "unit_minus_shifted":
        power, gens = payload
        return ["unit_minus_shifted", power, list(gens)]
    raise DocumentError(f"unknown expression kind {kind}")


def _expr_from_json(raw):
    kind = raw[0]
    if kind == "unit":
        return ("unit", ())
    if kind == "gen":
        return ("gen", raw[1])
    if kind == "word":
        return ("word", tuple(raw[1]))
    if kind == "unit_minus":
        return ("unit_minus", tuple(raw[1]))
    if kind == "unit_minus_shifted":
        return ("unit_minus_shifted", (raw[1], tuple(raw[2])))
    raise DocumentError(f"unknown expression kind {kind}")


def module_to_json(mod, algebra_ref=None, name=None):
    doc = {
        "kind": "module",
        "schema_version": SCHEMA_VERSION,
        "algebra": algebra_ref or algebra_to_json(mod.algebra),
        "dim": mod.dim,
        "matrices": [matrix_to_json(m) for m in mod.actions],
    }
    if name or mod.name:
        doc["name"] = name or mod.name
    return doc


def k_module_to_json(algebra_ref, k_matrices, name=None):
    return {
        "kind": "module",
        "schema_version": SCHEMA_VERSION,
        "algebra": algebra_ref,
        "k_matrices": [matrix_to_json(m) for m in k_matrices],
        **({"name": name} if name else {}),
    }


def morphism_to_json(mor, source_ref=None, target_ref=None, name=None,
                     between="modules"):
    if between == "algebras":
        src = source_ref or algebra_to_json(mor.source)
        tgt = target_ref or algebra_to_json(mor.target)
    else:
        src = source_ref or module_to_json(mor.source)
        tgt = target_ref or module_to_json(mor.target)
    doc = {
        "kind": "morphism",
        "schema_version": SCHEMA_VERSION,
        "between": between,
        "source": src,
        "target": tgt,
        "matrix": matrix_to_json(mor.matrix),
    }
    if name:
        doc["name"] = name
    return doc


def riedtmann_to_json(w, refs=None, name=None):
    refs = refs or {}
    return {
        "kind": "sequence",
        "schema_version": SCHEMA_VERSION,
        "form": "riedtmann",
        "x": refs.get("x") or module_to_json(w.x),
        "m": refs.get("m") or module_to_json(w.m),
        "n": refs.get("n") or module_to_json(w.n),
        "g": matrix_to_json(w.g.matrix),
        "h": matrix_to_json(w.h.matrix),
        **({"name": name} if name else {}),
    }


def ses_to_json(ses, refs=None, name=None):
    refs = refs or {}
    return {
        "kind": "sequence",
        "schema_version": SCHEMA_VERSION,
        "form": "ses",
        "a": refs.get("a") or module_to_json(ses.a),
        "b": refs.get("b") or module_to_json(ses.b),
        "c": refs.get("c") or module_to_json(ses.c),
        "incl": matrix_to_json(ses.incl.matrix),
        "proj": matrix_to_json(ses.proj.matrix),
        **({"name": name} if name else {}),
    }


def chain_to_json(chain, refs=None, name=None):
    refs = refs or {}
    return {
        "kind": "sequence",
        "schema_version": SCHEMA_VERSION,
        "form": "vdeg_chain",
        "m": refs.get("m") or module_to_json(chain.m),
        "n": refs.get("n") or module_to_json(chain.n),
        "z": refs.get("z") or module_to_json(chain.z),
        "steps": [riedtmann_to_json(w) for w in chain.steps],
        "start_link": matrix_to_json(chain.start_link.matrix),
        "end_link": matrix_to_json(chain.end_link.matrix),
        "links": [matrix_to_json(l.matrix) for l in chain.links],
        **({"name": name} if name else {}),
    }


def family_to_json(members, refs=None, name=None):
    refs = refs or [None] * len(members)
    return {
        "kind": "family",
        "schema_version": SCHEMA_VERSION,
        "members": [r or module_to_json(m) for m, r in zip(members, refs)],
        **({"name": name} if name else {}),
    }


def report_to_json(body, name=None):
    return {
        "kind": "report",
        "schema_version": SCHEMA_VERSION,
        **({"name": name} if name else {}),
        "body": body,
    }


# -- loader --


class DocumentLoader:
    """Resolves $ref links relative to each document and caches results."""

    def __init__(self):
        self._by_path = {}
        self._algebras = {}

    def load(self, path):
        path = os.path.abspath(path)
        if path in self._by_path:
            return self._by_path[path]
        raw = read_raw(path)
        obj = self.from_raw(raw, os.path.dirname(path))
        self._by_path[path] = obj
        return obj

    def from_raw(self, raw, base_dir="."):
        raw = self._deref(raw, base_dir)
        kind = raw.get("kind")
        if kind not in KINDS:
            raise DocumentError(f"unknown document kind: {kind!r}")
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise DocumentError("unsupported schema_version")
        handler = getattr(self, f"_load_{kind}")
        return handler(raw, base_dir)

    def _deref(self, raw, base_dir):
        if isinstance(raw, dict) and "$ref" in raw:
            target = os.path.normpath(os.path.join(base_dir, raw["$ref"]))
            inner = read_raw(target)
            return self._deref(inner, os.path.dirname(target))
        return raw

    def _sub(self, raw, base_dir, expected_kind):
        """Load a nested document (inline or $ref)."""
        if isinstance(raw, dict) and "$ref" in raw:
            target = os.path.normpath(os.path.join(base_dir, raw["$ref"]))
            obj = self.load(target)
        else:
            obj = self.from_raw(raw, base_dir)
        return obj

    # field ---------------------------------------------------------------

    def _load_field(self, raw, base_dir):
        base = raw.get("base")
        if base == "Q":
            base_arg = "Q"
        elif isinstance(base, dict) and "p" in base:
            base_arg = int(base["p"])
        else:
            raise DocumentError("field base must be \"Q\" or {\"p\": ...}")
        autos = raw.get("automorphisms")
        return make_tower(base_arg, list(raw["min_poly"]),
                          automorphism_images=autos,
                          gen_name=raw.get("gen_name", "a"))

    # algebra ---------------------------------------------------------------

    def _load_algebra(self, raw, base_dir):
        key = canonical_dumps(raw) if "constructor" not in raw else None
        if key is not None and key in self._algebras:
            return self._algebras[key]
        if "constructor" in raw:
            alg = self._construct_algebra(raw, base_dir)
        else:
            tower = self._sub(raw["field"], base_dir, "field")
            dim = raw["dim"]
            table = [[self._vec(tower, vec) for vec in row]
                     for row in raw["table"]]
            unit = self._vec(tower, raw["unit"])
            gens = None
            if "gens" in raw:
                gens = tuple((g["name"], tuple(self._vec(tower, g["coords"])))
                             for g in raw["gens"])
            exprs = None
            if "basis_exprs" in raw:
                exprs = tuple(_expr_from_json(e) for e in raw["basis_exprs"])
            alg = Algebra(tower, dim, table, unit,
                          basis_names=raw.get("basis_names"),
                          gens=gens, basis_exprs=exprs,
                          name=raw.get("name"))
        if key is not None:
            self._algebras[key] = alg
        return alg

    def _construct_algebra(self, raw, base_dir):
        ctor = raw["constructor"]
        name = raw.get("name")
        if ctor == "path_algebra":
            tower = self._sub(raw["field"], base_dir, "field")
            quiver = _quiver_from_json(raw["quiver"])
            return path_algebra(quiver, tower, name=name)
        if ctor == "exterior_algebra":
            tower = self._sub(raw["field"], base_dir, "field")
            return exterior_algebra(raw["num_vars"], tower, name=name)
        if ctor == "field_algebra":
            tower = self._sub(raw["tower"], base_dir, "field")
            return field_algebra(tower, name=name)
        if ctor == "tensor_extension":
            tower = self._sub(raw["tower"], base_dir, "field")
            lam = self._sub(raw["lambda"], base_dir, "algebra")
            return tensor_extension(tower, lam, name=name)
        if ctor == "scalar_restriction":
            inner = self._sub(raw["algebra"], base_dir, "algebra")
            return scalar_restriction(inner, name=name)
        raise DocumentError(f"unknown algebra constructor {ctor}")

    def _vec(self, tower, raw_vec):
        return tuple(self._elem(tower, r) for r in raw_vec)

    def _elem(self, tower, raw_e):
        if isinstance(raw_e, str):
            return tower.from_coeffs([raw_e])
        if isinstance(raw_e, list):
            return tower.from_coeffs(raw_e)
        raise DocumentError(f"bad coefficient {raw_e!r}")

    def _matrix(self, tower, raw_m):
        if not raw_m:
            return Matrix.zero(tower, 0, 0)
        return Matrix(tower, len(raw_m), len(raw_m[0]),
                      [[self._elem(tower, e) for e in row] for row in raw_m])

    # module ---------------------------------------------------------------

    def _load_module(self, raw, base_dir):
        alg = self._sub(raw["algebra"], base_dir, "algebra")
        name = raw.get("name")
        if "k_matrices" in raw:
            if alg.ext_tag is None:
                raise DocumentError("k_matrices need an extension algebra")
            tower = alg.ext_tag.tower
            mats = [self._matrix(tower, m) for m in raw["k_matrices"]]
            return k_linear_module(alg, mats, name=name)
        mats = [self._matrix(alg.field, m) for m in raw["matrices"]]
        mod = make_module(alg, mats, name=name)
        if raw.get("dim") is not None and raw["dim"] != mod.dim:
            raise DocumentError("declared dim disagrees with the matrices")
        return mod

    # morphism ---------------------------------------------------------------

    def _load_morphism(self, raw, base_dir):
        between = raw.get("between", "modules")
        if between == "algebras":
            src = self._sub(raw["source"], base_dir, "algebra")
            tgt = self._sub(raw["target"], base_dir, "algebra")
            mat = self._matrix(tgt.field, raw["matrix"])
            mor = AlgebraMorphism(src, tgt, mat)
            v = verify_algebra_morphism(mor)
            if not v.is_proved:
                raise DocumentError("algebra morphism fails verification")
            return mor
        src = self._sub(raw["source"], base_dir, "module")
        tgt = self._sub(raw["target"], base_dir, "module")
        mat = self._matrix(tgt.algebra.field, raw["matrix"])
        return ModuleMorphism(src, tgt, mat, check=True)

    # sequence ---------------------------------------------------------------

    def _load_sequence(self, raw, base_dir):
        form = raw.get("form", "riedtmann")
        if form == "riedtmann":
            return self._load_riedtmann(raw, base_dir)
        if form == "ses":
            a = self._sub(raw["a"], base_dir, "module")
            b = self._sub(raw["b"], base_dir, "module")
            c = self._sub(raw["c"], base_dir, "module")
            field = a.algebra.field
            incl = ModuleMorphism(a, b, self._matrix(field, raw["incl"]),
                                  check=True)
            proj = ModuleMorphism(b, c, self._matrix(field, raw["proj"]),
                                  check=True)
            return ShortExactSequence(incl=incl, proj=proj)
        if form == "vdeg_chain":
            from .modrep import direct_sum
            m = self._sub(raw["m"], base_dir, "module")
            n = self._sub(raw["n"], base_dir, "module")
            z = self._sub(raw["z"], base_dir, "module")
            steps = tuple(self._load_riedtmann(s, base_dir)
                          for s in raw["steps"])
            field = m.algebra.field
            start = ModuleMorphism(direct_sum(m, z), steps[0].m,
                                   self._matrix(field, raw["start_link"]),
                                   check=True)
            end = ModuleMorphism(steps[-1].n, direct_sum(n, z),
                                 self._matrix(field, raw["end_link"]),
                                 check=True)
            links = tuple(
                ModuleMorphism(steps[i].n, steps[i + 1].m,
                               self._matrix(field, raw_l), check=True)
                for i, raw_l in enumerate(raw.get("links", [])))
            return VdegChain(m=m, n=n, z=z, steps=steps, start_link=start,
                             end_link=end, links=links)
        raise DocumentError(f"unknown sequence form {form}")

    def _load_riedtmann(self, raw, base_dir):
        from .modrep import direct_sum
        x = self._sub(raw["x"], base_dir, "module")
        m = self._sub(raw["m"], base_dir, "module")
        n = self._sub(raw["n"], base_dir, "module")
        field = x.algebra.field
        middle = direct_sum(x, m)
        g = ModuleMorphism(x, middle, self._matrix(field, raw["g"]),
                           check=True)
        h = ModuleMorphism(middle, n, self._matrix(field, raw["h"]),
                           check=True)
        return RiedtmannWitness(x=x, m=m, n=n, g=g, h=h)

    # family ---------------------------------------------------------------

    def _load_family(self, raw, base_dir):
        return [self._sub(m, base_dir, "module") for m in raw["members"]]

    # report ---------------------------------------------------------------

    def _load_report(self, raw, base_dir):
        return raw


def _quiver_from_json(raw):
    return Quiver(raw["vertices"], [tuple(a) for a in raw["arrows"]])


def quiver_to_json(quiver):
    return {"vertices": quiver.num_vertices,
            "arrows": [[s, t, label] for s, t, label in quiver.arrows]}
