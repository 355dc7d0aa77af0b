"""Grothendieck-Witt arithmetic: formal classes, invariants, traces.

A class is a formal multiset of square-class generators <a> plus an integer
multiple of the hyperbolic form H = <1> + <-1> (possibly negative, since
the group is the groupification of the form monoid).  Classes stay formal
until an invariant reduction is requested, so the same representation
serves every base field; reduction is defined for R (rank, signature),
finite fields (rank, discriminant square class) and the C((t)) viewpoint
(rank, discriminant valuation parity).
"""

from .errors import (
    FieldMismatch,
    GwinflectError,
    NoCanonicalReduction,
    UnsupportedExtension,
    ZeroScale,
)
from .fields import (
    ExtensionField,
    FieldElement,
    LaurentField,
    PrimeField,
    QQ,
    RationalField,
    RealField,
    RR,
    norm_and_trace,
)
from .poly import DensePoly
from .serialize import element_from_json, element_to_json, field_to_spec, parse_field_spec


class GWClass:
    """Formal sum of square-class generators plus n copies of H."""

    __slots__ = ("field", "generators", "hyperbolic")

    def __init__(self, field, generators=(), hyperbolic=0):
        gens = []
        for g in generators:
            g = field(g)
            if not g:
                raise ZeroScale("<0> is not a square class")
            gens.append(g)
        gens.sort(key=lambda e: e.key())
        self.field = field
        self.generators = tuple(gens)
        self.hyperbolic = hyperbolic

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def hyperbolic_multiple(cls, field, n):
        return cls(field, (), n)

    @classmethod
    def span(cls, field, a):
        return cls(field, (a,))

    def rank(self):
        return len(self.generators) + 2 * self.hyperbolic

    def is_zero(self):
        return not self.generators and self.hyperbolic == 0

    def __add__(self, other):
        if not isinstance(other, GWClass):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return GWClass(self.field, self.generators + other.generators,
                       self.hyperbolic + other.hyperbolic)

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise GwinflectError("negative multiples are not produced by index computations")
        return GWClass(self.field, self.generators * n, self.hyperbolic * n)

    def scale(self, c):
        """<c> * self: each generator <a> becomes <c a>; H summands are unchanged."""
        c = self.field(c)
        if not c:
            raise ZeroScale("cannot scale by 0")
        return GWClass(self.field, tuple(c * g for g in self.generators), self.hyperbolic)

    def __eq__(self, other):
        """Equality as classes, not as presentations.

        Over fields with a complete invariant reduction (R, finite fields,
        the C((t)) viewpoint) two classes are equal exactly when their
        invariants agree, so <1> + <-1> == H there.  Elsewhere the test is
        a sufficient formal one: equal hyperbolic counts and generators
        pairing off with square ratios where a square test exists.
        """
        if not isinstance(other, GWClass):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.generators == other.generators and self.hyperbolic == other.hyperbolic:
            return True
        complete = (isinstance(self.field, (RealField, LaurentField))
                    or (isinstance(self.field, (PrimeField, ExtensionField))
                        and getattr(self.field, "order", None)))
        if complete:
            return gw_invariants(self) == gw_invariants(other)
        if self.hyperbolic != other.hyperbolic:
            return False
        if len(self.generators) != len(other.generators):
            return False
        try:
            unmatched = list(other.generators)
            for g in self.generators:
                for i, h in enumerate(unmatched):
                    if self.field.is_square(g * h):
                        del unmatched[i]
                        break
                else:
                    return False
            return True
        except NoCanonicalReduction:
            return False

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # equality is up to square ratios; hashing would lie

    def __str__(self):
        parts = [f"<{g}>" for g in self.generators]
        if self.hyperbolic:
            parts.append(f"{self.hyperbolic}*H" if self.hyperbolic != 1 else "H")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"GWClass({self.field!r}, {self})"

    def to_json(self):
        return {"field": field_to_spec(self.field),
                "generators": [element_to_json(g) for g in self.generators],
                "hyperbolic": self.hyperbolic}

    @classmethod
    def from_json(cls, data, field=None):
        field = field if field is not None else parse_field_spec(data["field"])
        gens = [element_from_json(field, g) for g in data["generators"]]
        return cls(field, gens, data["hyperbolic"])


def gw_add(u, v):
    return u + v


def gw_scale(c, u):
    return u.scale(c)


class GWInvariants:
    """Field-specific invariants of a class: rank plus one detail slot."""

    __slots__ = ("kind", "rank", "detail")

    def __init__(self, kind, rank, detail):
        self.kind = kind
        self.rank = rank
        self.detail = detail

    def __eq__(self, other):
        if not isinstance(other, GWInvariants):
            return NotImplemented
        return (self.kind, self.rank, self.detail) == (other.kind, other.rank, other.detail)

    def __hash__(self):
        return hash((self.kind, self.rank, self.detail))

    def __repr__(self):
        return f"GWInvariants({self.kind}, rank={self.rank}, {self.detail})"

    def to_json(self):
        detail = self.detail
        if self.kind == "Q":
            detail = list(detail)
        return {"kind": self.kind, "rank": self.rank, "detail": detail}


def gw_invariants(u):
    """Reduce a class to its complete invariants over R, F_q or C((t)).

    Over Q there is no canonical reduction; the raw generator data is
    returned with kind "Q" instead.
    """
    field = u.field
    if isinstance(field, RealField):
        sig = 0
        for g in u.generators:
            sig += 1 if g.payload > 0 else -1
        return GWInvariants("R", u.rank(), ("signature", sig))
    if isinstance(field, (PrimeField, ExtensionField)) and getattr(field, "order", None):
        prod = field.one()
        for g in u.generators:
            prod = prod * g
        if u.hyperbolic % 2:
            prod = -prod
        return GWInvariants("Fq", u.rank(), ("disc_is_square", field.is_square(prod)))
    if isinstance(field, LaurentField):
        val = 0
        for g in u.generators:
            val += field.valuation_p(g.payload)
        return GWInvariants("C((t))", u.rank(), ("disc_parity", val % 2))
    if isinstance(field, RationalField):
        return GWInvariants("Q", u.rank(),
                            ("raw", tuple(str(g) for g in u.generators), u.hyperbolic))
    raise NoCanonicalReduction(f"no invariant reduction over {field!r}")


def signature(u):
    inv = gw_invariants(u)
    if inv.kind != "R":
        raise GwinflectError("signature is an R-invariant")
    return inv.detail[1]


def deterministic_nonsquare(field):
    """First non-square in a fixed scan order; deterministic per field."""
    if isinstance(field, PrimeField):
        for a in range(2, field.p):
            if not field.is_square_p(a):
                return FieldElement(field, a)
    elif isinstance(field, ExtensionField) and field.order:
        g = field.gen_p()
        cand = g
        for _ in range(4 * field.degree * field.characteristic + 16):
            if not field.is_zero_p(cand) and not field.is_square_p(cand):
                return FieldElement(field, cand)
            cand = field.add_p(cand, field.one_p())
        import random as _random

        rng = _random.Random(1)
        while True:
            cand = field.random_p(rng)
            if not field.is_zero_p(cand) and not field.is_square_p(cand):
                return FieldElement(field, cand)
    raise GwinflectError(f"no non-square search over {field!r}")


def trace_one_form(F, d):
    """The class of Tr_{E/F}<1> for E/F of degree d over a finite field F.

    Rank d; the discriminant is a square exactly when d is odd.  GW of a
    finite field is determined by (rank, disc), so a concrete diagonal
    realization is returned.
    """
    one = F.one()
    if d % 2 == 1:
        return GWClass(F, (one,) * d)
    return GWClass(F, (one,) * (d - 1) + (deterministic_nonsquare(F),))


def gw_trace(E, F, u, real_roots=None):
    """Transfer a class along the trace form of a supported extension E/F.

    Shapes: E == F (identity); finite GF(q^d)/GF(q) built as an extension of
    F; Q[x]/(m) over Q pushed into the R viewpoint when real_roots carries
    the real embeddings of the minimal polynomial; and declared Laurent
    coverings C((t^(1/m)))/C((t)).
    """
    if u.field != E:
        raise FieldMismatch("class does not live over the top field")
    if E == F:
        return u
    if isinstance(E, ExtensionField) and E.order is not None and E.base == F:
        d = E.degree
        out = GWClass.hyperbolic_multiple(F, u.hyperbolic * d)
        t1 = trace_one_form(F, d)
        for g in u.generators:
            nrm, _ = norm_and_trace(E, F, g)
            out = out + t1.scale(nrm)
        return out
    if isinstance(E, ExtensionField) and E.order is None and isinstance(F, RealField):
        if real_roots is None:
            raise UnsupportedExtension("real embedding data required for Q[x]/(m) -> R")
        d = E.degree
        r = len(real_roots)
        if (d - r) % 2:
            raise GwinflectError("complex roots must come in pairs")
        pairs = (d - r) // 2
        out = GWClass.hyperbolic_multiple(RR, u.hyperbolic * d + pairs * (len(u.generators)))
        for g in u.generators:
            gp = DensePoly(QQ, [c for c in g.payload])
            for rho in real_roots:
                s = rho.sign_of(gp)
                if s == 0:
                    raise GwinflectError("generator vanishes at an embedding; not a unit")
                out = out + GWClass.span(RR, s)
        return out
    if isinstance(E, LaurentField) and isinstance(F, LaurentField) and F.m == 1:
        m = E.m
        out = GWClass.hyperbolic_multiple(F, u.hyperbolic * m)
        for g in u.generators:
            parity = E.valuation_p(g.payload) % 2
            out = out + laurent_trace_parity_class(F, m, parity)
        return out
    raise UnsupportedExtension(f"unsupported extension pair {E} / {F}")


def laurent_trace_parity_class(F, m, parity):
    """Tr_{C((t^(1/m)))/C((t))} of a square class of the given valuation parity.

    Tr<1> has disc parity m-1 mod 2 and Tr<t^(1/m)> has disc parity m mod 2;
    both have rank m.  Returns a concrete class realizing those invariants.
    """
    target = (m - 1 + parity) % 2
    one = F.one()
    t = F.gen()
    if target == 0:
        return GWClass(F, (one,) * m)
    return GWClass(F, (one,) * (m - 1) + (t,))
