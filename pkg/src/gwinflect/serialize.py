"""Stable JSON encodings for fields and field elements.

Field specs are compact strings ("Q", "R", "Fq:p=13", "Fq:p=3,n=2,mod=[2,2,1]",
"Q(a)", "C((t))", "C((t^(1/2)))", "QExt:mod=[-2,0,1]"); element payloads are
encoded structurally with rationals as "num/den" strings so every value
round-trips exactly.
"""

from fractions import Fraction
import re

from .errors import GwinflectError
from .fields import (
    ExtensionField,
    FieldElement,
    FunctionField,
    GF,
    LaurentField,
    PrimeField,
    QQ,
    RationalField,
    RealField,
    RR,
)


def field_to_spec(field):
    if isinstance(field, RealField):
        return "R"
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, PrimeField):
        return f"Fq:p={field.p}"
    if isinstance(field, ExtensionField):
        if field.order is not None and isinstance(field.base, PrimeField):
            mods = ",".join(str(c) for c in field.modulus)
            return f"Fq:p={field.base.p},n={field.degree},mod=[{mods}]"
        if field.order is None:
            mods = ",".join(str(Fraction(c)) for c in field.modulus)
            return f"QExt:mod=[{mods}]"
        raise GwinflectError("nested finite towers have no string spec")
    if isinstance(field, LaurentField):
        return "C((t))" if field.m == 1 else f"C((t^(1/{field.m})))"
    if isinstance(field, FunctionField):
        return f"Q({field.var})"
    raise GwinflectError(f"no spec string for {field!r}")


def parse_field_spec(spec):
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec == "R":
        return RR
    if spec == "C((t))":
        return LaurentField(1)
    m = re.fullmatch(r"C\(\(t\^\(1/(\d+)\)\)\)", spec)
    if m:
        return LaurentField(int(m.group(1)))
    m = re.fullmatch(r"Q\((\w+)\)", spec)
    if m:
        return FunctionField(m.group(1))
    m = re.fullmatch(r"Fq:p=(\d+)(?:,n=(\d+))?(?:,mod=\[([-\d,/\s]+)\])?", spec)
    if m:
        p = int(m.group(1))
        if p == 2:
            raise GwinflectError("characteristic 2 is rejected")
        n = int(m.group(2)) if m.group(2) else 1
        mod = None
        if m.group(3):
            mod = [int(c) for c in m.group(3).split(",")]
        return GF(p, n, mod)
    m = re.fullmatch(r"QExt:mod=\[([-\d,/\s]+)\]", spec)
    if m:
        mod = [Fraction(c) for c in m.group(1).split(",")]
        return ExtensionField(QQ, mod)
    raise GwinflectError(f"unrecognized field spec {spec!r}")


def _frac_str(fr):
    return str(Fraction(fr))


def payload_to_json(field, payload):
    if isinstance(field, (RationalField, RealField)):
        return _frac_str(payload)
    if isinstance(field, PrimeField):
        return payload
    if isinstance(field, ExtensionField):
        return [payload_to_json(field.base, c) for c in payload]
    if isinstance(field, FunctionField):  # includes LaurentField
        return {"num": [_frac_str(c) for c in payload.num],
                "den": [_frac_str(c) for c in payload.den]}
    raise GwinflectError(f"no JSON encoding over {field!r}")


def payload_from_json(field, data):
    if isinstance(field, (RationalField, RealField)):
        return Fraction(data)
    if isinstance(field, PrimeField):
        return int(data) % field.p
    if isinstance(field, ExtensionField):
        return tuple(payload_from_json(field.base, c) for c in data)
    if isinstance(field, FunctionField):
        return field._make([Fraction(c) for c in data["num"]],
                           [Fraction(c) for c in data["den"]])
    raise GwinflectError(f"no JSON decoding over {field!r}")


def element_to_json(elt):
    return payload_to_json(elt.field, elt.payload)


def element_from_json(field, data):
    return FieldElement(field, payload_from_json(field, data))
