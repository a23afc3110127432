"""Cyclic-word quotients of the free associative algebra.

Two quotients are implemented.  The plain trace identifies a word with its
rotations; a class is keyed by its lexicographically least rotation.  The
quadratic trace additionally identifies a word with its reversal up to the
sign (-1)^length, so that the projection is invariant under the
anti-involution tau.  A quadratic class whose odd-length orbit meets its own
reversed orbit is forced to zero and never stored.

Canonicalization is pure word combinatorics; both projections send products
to the same class in either factor order, which is checked in the tests and
relied on by substitution.
"""

from fractions import Fraction
from types import MappingProxyType

from .lie import LieElement
from .words import (
    ArityMismatchError,
    AssocSeries,
    Rational,
    _accumulate,
    format_rational,
    parse_rational,
    word_from_str,
    word_to_str,
)


def rotations(w: bytes) -> set[bytes]:
    if not w:
        return {b""}
    return {w[i:] + w[:i] for i in range(len(w))}


def canonical_rotation(w: bytes) -> bytes:
    """Lexicographically least rotation: the representative of the plain class."""
    return min(rotations(w))


def quad_canonical(w: bytes) -> tuple[bytes, int] | None:
    """Representative and sign of the signed rotation/reversal class of w.

    Returns None when the class is zero: odd length with the rotation orbit
    meeting the reversed orbit.  Otherwise the representative is the least
    word over both orbits, and the sign is (-1)^len(w) when the representative
    is reached only through reversal.
    """
    fwd = rotations(w)
    rev = rotations(w[::-1])
    odd = len(w) % 2 == 1
    if odd and fwd & rev:
        return None
    rep = min(min(fwd), min(rev))
    if rep in fwd:
        return rep, 1
    return rep, -1 if odd else 1


class _TraceBase:
    """Shared sparse-series mechanics of both quotients."""

    __slots__ = ("arity", "order", "_terms")
    _space = ""

    def __init__(self, arity: int, order: int, terms=None):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        if order < 0:
            raise ValueError("order must be >= 0")
        cleaned = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            w = bytes(w)
            if len(w) > order:
                raise ValueError(f"class {word_to_str(w)!r} exceeds order {order}")
            if any(letter >= arity for letter in w):
                raise ValueError(f"class {word_to_str(w)!r} uses letters beyond arity {arity}")
            self._check_canonical(w)
            cleaned[w] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def _make(cls, arity, order, terms):
        self = object.__new__(cls)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_terms", {w: c for w, c in terms.items() if c})
        return self

    @classmethod
    def zero(cls, arity, order):
        return cls._make(arity, order, {})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, w: bytes) -> Fraction:
        return self._terms.get(bytes(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def homogeneous_part(self, degree: int):
        return type(self)._make(
            self.arity, self.order,
            {w: c for w, c in self._terms.items() if len(w) == degree})

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"expected {type(self).__name__}, got {type(other).__name__}")
        if self.arity != other.arity:
            raise ArityMismatchError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.arity != other.arity:
            return False
        n = min(self.order, other.order)
        for w, c in self._terms.items():
            if len(w) <= n and other._terms.get(w) != c:
                return False
        for w in other._terms:
            if len(w) <= n and w not in self._terms:
                return False
        return True

    __hash__ = None

    def __add__(self, other):
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(out, w, c)
        return type(self)._make(
            self.arity, order, {w: c for w, c in out.items() if len(w) <= order})

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)._make(self.arity, self.order,
                                {w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar: Rational):
        scalar = Fraction(scalar)
        if not scalar:
            return type(self).zero(self.arity, self.order)
        return type(self)._make(self.arity, self.order,
                                {w: scalar * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            name = f"[{word_to_str(w)}]" if w else "[1]"
            parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"{type(self).__name__}(arity={self.arity}, order={self.order}, {self})"

    def to_json_dict(self) -> dict:
        return {
            "arity": self.arity,
            "order": self.order,
            "space": self._space,
            "terms": [{"word": word_to_str(w), "coeff": format_rational(c)}
                      for w, c in self.sorted_items()],
        }

    @classmethod
    def from_json_dict(cls, data: dict):
        if data.get("space") != cls._space:
            raise ValueError(f"expected space {cls._space!r}, got {data.get('space')!r}")
        terms = {word_from_str(t["word"]): parse_rational(t["coeff"])
                 for t in data["terms"]}
        return cls(data["arity"], data["order"], terms)


class TraceSeries(_TraceBase):
    """Series of cyclic words: the quotient by the span of commutators."""

    _space = "tr"

    def _check_canonical(self, w: bytes):
        if w != canonical_rotation(w):
            raise ValueError(f"{word_to_str(w)!r} is not a canonical rotation")


class QuadTraceSeries(_TraceBase):
    """Series of cyclic words modulo signed reversal.

    The further quotient by the (-1)-eigenspace of tau; only nonzero classes
    are representable, with their canonical orientation.
    """

    _space = "trquad"

    def _check_canonical(self, w: bytes):
        canon = quad_canonical(w)
        if canon is None:
            raise ValueError(f"{word_to_str(w)!r} denotes the zero class")
        rep, sign = canon
        if rep != w or sign != 1:
            raise ValueError(f"{word_to_str(w)!r} is not a canonical class representative")


def tr(a: AssocSeries) -> TraceSeries:
    """Project a series onto cyclic words."""
    out: dict[bytes, Fraction] = {}
    for w, c in a.terms.items():
        _accumulate(out, canonical_rotation(w), c)
    return TraceSeries._make(a.arity, a.order, out)


def tr_quad(a: AssocSeries) -> QuadTraceSeries:
    """Project a series onto cyclic words modulo signed reversal."""
    out: dict[bytes, Fraction] = {}
    for w, c in a.terms.items():
        canon = quad_canonical(w)
        if canon is None:
            continue
        rep, sign = canon
        _accumulate(out, rep, c if sign == 1 else -c)
    return QuadTraceSeries._make(a.arity, a.order, out)


def trace_pairing(a: LieElement, b: LieElement) -> TraceSeries:
    """tr of the product of two Lie elements; symmetric up to cyclic moves."""
    if a.arity != b.arity:
        raise ArityMismatchError(f"arity mismatch: {a.arity} vs {b.arity}")
    return tr(a.expand() * b.expand())


def trace_substitute(g, args):
    """Substitute Lie elements for the letters of every class of g.

    Any linear representative of a class may be expanded; the result does not
    depend on the choice because Lie arguments are tau-antisymmetric.  Works
    for both quotients and returns the same kind as g.
    """
    args = tuple(args)
    if len(args) != g.arity:
        raise ArityMismatchError(f"series of arity {g.arity} needs {g.arity} arguments")
    arity_out = args[0].arity
    order = min(g.order, *(arg.order for arg in args))
    for arg in args:
        if not isinstance(arg, LieElement):
            raise TypeError("substitution arguments must be LieElements")
        if arg.arity != arity_out:
            raise ArityMismatchError("substitution arguments must share one arity")
    expansions = [arg.expand().truncated(order) for arg in args]
    project = tr if isinstance(g, TraceSeries) else tr_quad
    result = (TraceSeries if isinstance(g, TraceSeries) else QuadTraceSeries).zero(arity_out, order)
    for w, c in g.terms.items():
        product = AssocSeries.unit(arity_out, order)
        for letter in w:
            product = product * expansions[letter]
            if product.is_zero():
                break
        result = result + project(product) * c
    return result
