"""Canonical JSON encoding of fields, elements, polynomials, maps, matrices
and families.

Rationals serialize as "p/q" strings, cyclotomic elements as conductor plus
coefficient vector, quadratic-extension elements as base/delta/a/b records.
All dumps are canonical (sorted keys, fixed separators) so identical inputs
give byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fields import (QQ, ComplexBox, CyclotomicField, Field, FieldElement,
                     QuadraticField, RationalField)
from .mobius import GroupSpec, MobiusMap
from .moduli import (ConjugationLeg, ConnectivityCertificate, GapMarker,
                     IntervalProof, PathCertificate, PathLeg, PathSegment,
                     SturmProof)
from .poly import Poly
from .ratmap import RationalMap, make_map
from .symmetry import CyclicFamily, WitnessReport

__all__ = [
    "canon_dumps",
    "field_to_json", "field_from_json",
    "elem_to_json", "elem_from_json",
    "poly_to_json", "poly_from_json",
    "map_to_json", "map_from_json",
    "mobius_to_json", "mobius_from_json",
    "family_to_json", "family_from_json",
    "witness_to_json", "witness_from_json",
    "group_to_json", "group_from_json",
    "path_cert_to_json", "path_cert_from_json",
    "connectivity_to_json", "connectivity_from_json",
]


def canon_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _frac_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}" if fr.denominator != 1 else str(fr.numerator)


def _frac_parse(s: str) -> Fraction:
    return Fraction(s)


# --- fields -----------------------------------------------------------------

def field_to_json(field: Field):
    if isinstance(field, RationalField):
        return {"kind": "rational"}
    if isinstance(field, CyclotomicField):
        return {"kind": "cyclotomic", "conductor": field.n}
    if isinstance(field, QuadraticField):
        return {"kind": "quadratic",
                "base": field_to_json(field.base),
                "delta": elem_to_json(field.delta)}
    raise TypeError(f"unknown field {field!r}")


def field_from_json(obj) -> Field:
    kind = obj["kind"]
    if kind == "rational":
        return QQ
    if kind == "cyclotomic":
        return CyclotomicField(obj["conductor"])
    if kind == "quadratic":
        base = field_from_json(obj["base"])
        delta = elem_from_json(obj["delta"], base)
        return QuadraticField(base, delta)
    raise ValueError(f"unknown field kind {kind!r}")


# --- elements ----------------------------------------------------------------

def elem_to_json(e: FieldElement):
    f = e.field
    if isinstance(f, RationalField):
        return _frac_str(e.payload)
    if isinstance(f, CyclotomicField):
        return {"conductor": f.n, "coeffs": [_frac_str(c) for c in e.payload]}
    if isinstance(f, QuadraticField):
        a, b = e.payload
        return {"base": field_to_json(f.base), "delta": elem_to_json(f.delta),
                "a": elem_to_json(a), "b": elem_to_json(b)}
    raise TypeError(f"unknown field {f!r}")


def elem_from_json(obj, field: Field) -> FieldElement:
    if isinstance(field, RationalField):
        return QQ(_frac_parse(obj))
    if isinstance(field, CyclotomicField):
        if obj["conductor"] != field.n:
            raise ValueError("conductor mismatch")
        return field.from_coeffs([_frac_parse(c) for c in obj["coeffs"]])
    if isinstance(field, QuadraticField):
        a = elem_from_json(obj["a"], field.base)
        b = elem_from_json(obj["b"], field.base)
        return field.from_parts(a, b)
    raise TypeError(f"unknown field {field!r}")


# --- polynomials, maps, matrices ----------------------------------------------

def poly_to_json(p: Poly):
    return [elem_to_json(c) for c in p.coeffs]


def poly_from_json(obj, field: Field) -> Poly:
    return Poly(field, [elem_from_json(c, field) for c in obj])


def map_to_json(phi: RationalMap):
    return {"num": poly_to_json(phi.num), "den": poly_to_json(phi.den),
            "degree": phi.degree, "field": field_to_json(phi.field)}


def map_from_json(obj) -> RationalMap:
    field = field_from_json(obj["field"])
    phi = make_map(poly_from_json(obj["num"], field),
                   poly_from_json(obj["den"], field))
    if phi.degree != obj["degree"]:
        raise ValueError("declared degree disagrees with certified degree")
    return phi


def mobius_to_json(T: MobiusMap):
    return {"entries": [elem_to_json(e) for e in T.entries()],
            "field": field_to_json(T.field)}


def mobius_from_json(obj) -> MobiusMap:
    field = field_from_json(obj["field"])
    a, b, c, d = (elem_from_json(e, field) for e in obj["entries"])
    return MobiusMap(field, a, b, c, d)


# --- families and witnesses -----------------------------------------------------

def family_to_json(fam: CyclicFamily):
    return {"n": fam.n, "r": fam.r, "case": fam.case,
            "a": [elem_to_json(c) for c in fam.a],
            "b": [elem_to_json(c) for c in fam.b],
            "field": field_to_json(fam.field)}


def family_from_json(obj) -> CyclicFamily:
    field = field_from_json(obj["field"])
    a = tuple(elem_from_json(c, field) for c in obj["a"])
    b = tuple(elem_from_json(c, field) for c in obj["b"])
    return CyclicFamily(obj["n"], obj["r"], obj["case"], a, b)


def group_to_json(g: GroupSpec):
    out = {"kind": g.kind}
    if g.n is not None:
        out["n"] = g.n
    return out


def group_from_json(obj) -> GroupSpec:
    return GroupSpec(obj["kind"], obj.get("n"))


def witness_to_json(w: WitnessReport):
    return {
        "certificate_type": "witness",
        "map": map_to_json(w.map),
        "autos": [{"matrix": mobius_to_json(T), "order": k} for T, k in w.autos],
        "group": group_to_json(w.group),
        "family": family_to_json(w.family),
    }


def witness_from_json(obj) -> WitnessReport:
    autos = tuple((mobius_from_json(rec["matrix"]), rec["order"])
                  for rec in obj["autos"])
    return WitnessReport(map=map_from_json(obj["map"]), autos=autos,
                         group=group_from_json(obj["group"]),
                         family=family_from_json(obj["family"]))


# --- path and connectivity certificates -----------------------------------------

def _box_to_json(box: ComplexBox):
    return {"re_lo": _frac_str(box.re_lo), "re_hi": _frac_str(box.re_hi),
            "im_lo": _frac_str(box.im_lo), "im_hi": _frac_str(box.im_hi)}


def _box_from_json(obj) -> ComplexBox:
    return ComplexBox(_frac_parse(obj["re_lo"]), _frac_parse(obj["re_hi"]),
                      _frac_parse(obj["im_lo"]), _frac_parse(obj["im_hi"]))


def _proof_to_json(proof):
    if isinstance(proof, SturmProof):
        return {"type": "sturm",
                "norm_poly": [_frac_str(c.payload) for c in proof.norm_poly.coeffs],
                "roots_in_01": proof.roots_in_01,
                "value_at_0": elem_to_json(proof.value_at_0),
                "value_at_1": elem_to_json(proof.value_at_1)}
    if isinstance(proof, IntervalProof):
        return {"type": "interval", "precision": proof.precision,
                "boxes": [{"t_lo": _frac_str(lo), "t_hi": _frac_str(hi),
                           "box": _box_to_json(box)}
                          for (lo, hi, box) in proof.boxes]}
    raise TypeError(f"unknown proof {proof!r}")


def _proof_from_json(obj, field: Field):
    if obj["type"] == "sturm":
        return SturmProof(
            norm_poly=Poly(QQ, [_frac_parse(c) for c in obj["norm_poly"]]),
            roots_in_01=obj["roots_in_01"],
            value_at_0=elem_from_json(obj["value_at_0"], field),
            value_at_1=elem_from_json(obj["value_at_1"], field))
    if obj["type"] == "interval":
        boxes = tuple((_frac_parse(rec["t_lo"]), _frac_parse(rec["t_hi"]),
                       _box_from_json(rec["box"])) for rec in obj["boxes"])
        return IntervalProof(precision=obj["precision"], boxes=boxes)
    raise ValueError(f"unknown proof type {obj['type']!r}")


def path_cert_to_json(cert: PathCertificate):
    return {
        "certificate_type": "path",
        "n": cert.n, "r": cert.r, "case": cert.case,
        "field": field_to_json(cert.field),
        "strategy": cert.strategy,
        "segments": [{
            "start_a": [elem_to_json(c) for c in seg.start_a],
            "start_b": [elem_to_json(c) for c in seg.start_b],
            "end_a": [elem_to_json(c) for c in seg.end_a],
            "end_b": [elem_to_json(c) for c in seg.end_b],
            "proof": _proof_to_json(seg.proof),
        } for seg in cert.segments],
        "conjugators": [mobius_to_json(T) for T in cert.conjugators],
    }


def path_cert_from_json(obj) -> PathCertificate:
    field = field_from_json(obj["field"])
    segments = []
    for rec in obj["segments"]:
        segments.append(PathSegment(
            start_a=tuple(elem_from_json(c, field) for c in rec["start_a"]),
            start_b=tuple(elem_from_json(c, field) for c in rec["start_b"]),
            end_a=tuple(elem_from_json(c, field) for c in rec["end_a"]),
            end_b=tuple(elem_from_json(c, field) for c in rec["end_b"]),
            proof=_proof_from_json(rec["proof"], field)))
    conjugators = tuple(mobius_from_json(t) for t in obj.get("conjugators", []))
    return PathCertificate(obj["n"], obj["r"], obj["case"], field,
                           obj["strategy"], tuple(segments), conjugators)


def connectivity_to_json(cert: ConnectivityCertificate):
    legs = []
    for leg in cert.legs:
        if isinstance(leg, PathLeg):
            legs.append({"type": "path", "prime": leg.prime,
                         "cert": path_cert_to_json(leg.cert)})
        elif isinstance(leg, ConjugationLeg):
            legs.append({"type": "conjugation",
                         "conjugator": mobius_to_json(leg.conjugator),
                         "source": map_to_json(leg.source),
                         "target": map_to_json(leg.target)})
        elif isinstance(leg, GapMarker):
            legs.append({"type": "gap", "reason": leg.reason,
                         "from_family": family_to_json(leg.from_family),
                         "to_family": family_to_json(leg.to_family)})
        else:
            raise TypeError(f"unknown leg {leg!r}")
    return {"certificate_type": "connectivity", "degree": cert.degree,
            "legs": legs}


def connectivity_from_json(obj) -> ConnectivityCertificate:
    legs = []
    for rec in obj["legs"]:
        if rec["type"] == "path":
            legs.append(PathLeg(prime=rec["prime"],
                                cert=path_cert_from_json(rec["cert"])))
        elif rec["type"] == "conjugation":
            legs.append(ConjugationLeg(
                conjugator=mobius_from_json(rec["conjugator"]),
                source=map_from_json(rec["source"]),
                target=map_from_json(rec["target"])))
        elif rec["type"] == "gap":
            legs.append(GapMarker(reason=rec["reason"],
                                  from_family=family_from_json(rec["from_family"]),
                                  to_family=family_from_json(rec["to_family"])))
        else:
            raise ValueError(f"unknown leg type {rec['type']!r}")
    return ConnectivityCertificate(obj["degree"], tuple(legs))
