"""Exact multivariate Laurent polynomials over the integers (or rationals).

Polynomials are immutable. A term is stored as a monomial key, a tuple of
``(Var, exponent)`` pairs sorted by variable, mapped to a nonzero coefficient.
Negative exponents are only allowed for the invertible variables ``d``, ``A``,
``q`` and the per-color ``x``/``y`` variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

__all__ = [
    "Var",
    "MultiPoly",
    "NonInvertibleSubstitution",
    "PolyParseError",
    "X_",
    "Y_",
    "x_",
    "y_",
    "XLOC",
    "YLOC",
    "D",
    "A",
    "Q",
    "PX",
    "PY",
    "PZ",
    "KAPPA",
    "alpha",
    "localize",
    "parse_poly",
]

Coeff = Union[int, Fraction]

COLORED_KINDS = ("X", "Y", "x", "y")
GLOBAL_KINDS = ("Xloc", "Yloc", "d", "A", "q", "px", "py", "pz", "kappa")
INDEXED_KINDS = ("alpha",)
_KIND_RANK = {k: i for i, k in enumerate(COLORED_KINDS + GLOBAL_KINDS + INDEXED_KINDS)}
_INVERTIBLE = frozenset({"d", "A", "q", "x", "y"})
_PLAIN_NAMES = {"px": "x", "py": "y", "pz": "z"}


class NonInvertibleSubstitution(ValueError):
    """A negative power would require inverting a non-monomial."""


class PolyParseError(ValueError):
    pass


class Var:
    """A polynomial variable; interned so equal variables are identical objects."""

    __slots__ = ("kind", "tag", "_key", "_hash")
    _interned: dict[tuple[str, str | None], "Var"] = {}

    def __new__(cls, kind: str, tag: str | None = None) -> "Var":
        if kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {kind!r}")
        tagged = kind in COLORED_KINDS or kind in INDEXED_KINDS
        if tagged and not tag:
            raise ValueError(f"variable kind {kind!r} needs a nonempty tag")
        if not tagged and tag is not None:
            raise ValueError(f"global variable {kind!r} takes no tag")
        ident = (kind, tag)
        var = cls._interned.get(ident)
        if var is None:
            var = object.__new__(cls)
            object.__setattr__(var, "kind", kind)
            object.__setattr__(var, "tag", tag)
            object.__setattr__(var, "_key", (_KIND_RANK[kind], _tag_key(tag)))
            object.__setattr__(var, "_hash", hash(ident))
            cls._interned[ident] = var
        return var

    def __setattr__(self, name, value):
        raise AttributeError("Var is immutable")

    def __reduce__(self):
        return (Var, (self.kind, self.tag))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Var) and self._key == other._key)

    def __lt__(self, other: "Var") -> bool:
        return self._key < other._key

    def __le__(self, other: "Var") -> bool:
        return self._key <= other._key

    def __gt__(self, other: "Var") -> bool:
        return self._key > other._key

    def __ge__(self, other: "Var") -> bool:
        return self._key >= other._key

    @property
    def invertible(self) -> bool:
        return self.kind in _INVERTIBLE

    @property
    def colored(self) -> bool:
        return self.kind in COLORED_KINDS

    def __str__(self) -> str:
        if self.tag is not None:
            return f"{self.kind}[{self.tag}]"
        return _PLAIN_NAMES.get(self.kind, self.kind)

    def __repr__(self) -> str:
        return f"Var({self.kind!r}, {self.tag!r})"


def _tag_key(tag: str | None) -> tuple:
    if tag is None:
        return ()
    # Numeric tags sort numerically so alpha[10] follows alpha[9].
    if tag.isdigit():
        return (0, int(tag), tag)
    return (1, 0, tag)


Monomial = tuple  # tuple[tuple[Var, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va is vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va._key < vb._key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _normalize_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class MultiPoly:
    """Immutable sparse Laurent polynomial with exact coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms  # type: ignore[assignment]
        else:
            clean: dict[Monomial, Coeff] = {}
            for mono, c in (terms or {}).items():
                mono = _canonical_mono(mono)
                c = _normalize_coeff(c)
                if c:
                    c = clean.get(mono, 0) + c
                    if c:
                        clean[mono] = c
                    else:
                        clean.pop(mono, None)
            self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Coeff) -> "MultiPoly":
        c = _normalize_coeff(c)
        return cls({(): c}, _trusted=True) if c else cls({}, _trusted=True)

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "MultiPoly":
        return cls({((v, exp),): 1} if exp else {(): 1})

    @classmethod
    def monomial(cls, powers: Mapping[Var, int], coeff: Coeff = 1) -> "MultiPoly":
        return cls({tuple(powers.items()): coeff})

    # -- basic access -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Coeff]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Coeff:
        """The value of a constant polynomial; raises if not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((), 0)

    def variables(self) -> frozenset[Var]:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def coefficient(self, powers: Mapping[Var, int]) -> Coeff:
        return self._terms.get(_canonical_mono(tuple(powers.items())), 0)

    def exponents(self, v: Var) -> list[int]:
        """Sorted distinct exponents of ``v`` appearing across the terms."""
        return sorted({dict(mono).get(v, 0) for mono in self._terms})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for mono, c in small.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                del out[mono]
        return MultiPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            if not mb:
                if cb == 1:
                    return self if self._terms is a else other
                return MultiPoly({m: c * cb for m, c in a.items()}, _trusted=True)
            return MultiPoly({_mono_mul(m, mb): c * cb for m, c in a.items()}, _trusted=True)
        out: dict[Monomial, Coeff] = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MultiPoly(out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "MultiPoly":
        """Inverse of a unit: a single term with coefficient +-1 over invertible variables."""
        if len(self._terms) != 1:
            raise NonInvertibleSubstitution(f"cannot invert non-monomial {self}")
        ((mono, c),) = self._terms.items()
        if c not in (1, -1):
            raise NonInvertibleSubstitution(f"cannot invert coefficient {c}")
        for v, _ in mono:
            if not v.invertible:
                raise NonInvertibleSubstitution(f"variable {v} is not invertible")
        return MultiPoly({tuple((v, -e) for v, e in mono): c}, _trusted=True)

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -------------------------------------------------------

    def substitute(self, mapping: Mapping[Var, "MultiPoly | Coeff"]) -> "MultiPoly":
        """Ring homomorphism sending each mapped variable to its image.

        Raises NonInvertibleSubstitution if a negative power of a variable is
        mapped to something that is not a unit.
        """
        images = {v: _coerce(p) for v, p in mapping.items()}
        powers: dict[tuple[Var, int], MultiPoly] = {}

        def power(v: Var, e: int) -> MultiPoly:
            key = (v, e)
            p = powers.get(key)
            if p is None:
                img = images[v]
                if e < 0:
                    try:
                        p = img.inverse() ** (-e)
                    except NonInvertibleSubstitution as exc:
                        raise NonInvertibleSubstitution(
                            f"{v}^{e} maps to a negative power of {img}: {exc}"
                        ) from None
                else:
                    p = img ** e
                powers[key] = p
            return p

        out = ZERO
        acc: dict[Monomial, Coeff] = {}
        for mono, c in self._terms.items():
            kept = []
            factor = None
            for v, e in mono:
                if v in images:
                    pe = power(v, e)
                    factor = pe if factor is None else factor * pe
                else:
                    kept.append((v, e))
            if factor is None:
                s = acc.get(mono, 0) + c
                if s:
                    acc[mono] = s
                else:
                    acc.pop(mono, None)
                continue
            term = MultiPoly({tuple(kept): c}, _trusted=True) * factor
            out = out + term
        return out + MultiPoly(acc, _trusted=True)

    def map_coefficients(self, fn: Callable[[Coeff], Coeff]) -> "MultiPoly":
        return MultiPoly({m: fn(c) for m, c in self._terms.items()})

    # -- text ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        return sorted(self._terms.items(), key=lambda t: _mono_sort_key(t[0]))

    def to_str(self, var_name: Callable[[Var, int], str] | None = None) -> str:
        """Canonical text form, e.g. ``7 + 2*x[+]^2*y[-] - A^-3`` (constant term first)."""
        return format_terms(self.sorted_terms(), var_name)

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()!r})"

    def __reduce__(self):
        return (parse_poly, (self.to_str(),))


def _canonical_mono(mono: Iterable[tuple[Var, int]]) -> Monomial:
    acc: dict[Var, int] = {}
    for v, e in mono:
        if not isinstance(v, Var):
            raise TypeError(f"expected Var, got {v!r}")
        acc[v] = acc.get(v, 0) + int(e)
    out = []
    for v in sorted(acc):
        e = acc[v]
        if e == 0:
            continue
        if e < 0 and not v.invertible:
            raise ValueError(f"negative exponent on non-invertible variable {v}")
        out.append((v, e))
    return tuple(out)


def _mono_sort_key(mono: Monomial) -> tuple:
    return tuple((v._key, e) for v, e in mono)


def _coerce(p) -> MultiPoly:
    if isinstance(p, MultiPoly):
        return p
    if isinstance(p, (int, Fraction)) and not isinstance(p, bool):
        return MultiPoly.const(p)
    return NotImplemented


def _default_var_name(v: Var, e: int) -> str:
    return str(v) if e == 1 else f"{v}^{e}"


def format_terms(
    terms: Iterable[tuple[Monomial, Coeff]],
    var_name: Callable[[Var, int], str] | None = None,
) -> str:
    var_name = var_name or _default_var_name
    pieces: list[str] = []
    for mono, c in terms:
        neg = c < 0
        mag = -c if neg else c
        factors = [var_name(v, e) for v, e in mono]
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


ZERO = MultiPoly({}, _trusted=True)
ONE = MultiPoly({(): 1}, _trusted=True)

# -- variable constructors --------------------------------------------------


def X_(color: str) -> MultiPoly:
    return MultiPoly.var(Var("X", color))


def Y_(color: str) -> MultiPoly:
    return MultiPoly.var(Var("Y", color))


def x_(color: str) -> MultiPoly:
    return MultiPoly.var(Var("x", color))


def y_(color: str) -> MultiPoly:
    return MultiPoly.var(Var("y", color))


def alpha(k: int) -> MultiPoly:
    return MultiPoly.var(Var("alpha", str(k)))


XLOC = MultiPoly.var(Var("Xloc"))
YLOC = MultiPoly.var(Var("Yloc"))
D = MultiPoly.var(Var("d"))
A = MultiPoly.var(Var("A"))
Q = MultiPoly.var(Var("q"))
PX = MultiPoly.var(Var("px"))
PY = MultiPoly.var(Var("py"))
PZ = MultiPoly.var(Var("pz"))
KAPPA = MultiPoly.var(Var("kappa"))


def localize(p: MultiPoly) -> MultiPoly:
    """Eliminate every ``X[c]``/``Y[c]`` via ``X[c] = x[c] + Xloc*y[c]``, ``Y[c] = y[c] + Yloc*x[c]``.

    Any ``Xloc``/``Yloc`` already present is left untouched.
    """
    mapping: dict[Var, MultiPoly] = {}
    for v in p.variables():
        if v.kind == "X":
            mapping[v] = x_(v.tag) + XLOC * y_(v.tag)
        elif v.kind == "Y":
            mapping[v] = y_(v.tag) + YLOC * x_(v.tag)
    return p.substitute(mapping) if mapping else p


# -- parsing ----------------------------------------------------------------

_NAME_TO_KIND = {"x": "px", "y": "py", "z": "pz"}
_FACTOR_RE = re.compile(
    r"""\s*(?:
        (?P<num>\d+(?:/\d+)?)
      | (?P<name>[A-Za-z]+)(?:\[(?P<tag>[^\]]+)\])?(?:\^(?P<exp>-?\d+))?
    )\s*""",
    re.X,
)


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise PolyParseError("empty polynomial")
    terms: list[tuple[int, str]] = []
    sign = 1
    buf: list[str] = []
    depth = 0
    prev = ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and prev != "^":
            body = "".join(buf).strip()
            if body:
                terms.append((sign, body))
                sign = 1
            elif terms or buf:
                pass
            sign = sign * (-1 if ch == "-" else 1)
            buf = []
        else:
            buf.append(ch)
        if not ch.isspace():
            prev = ch
    body = "".join(buf).strip()
    if not body:
        raise PolyParseError(f"dangling sign in {text!r}")
    terms.append((sign, body))
    return terms


def parse_poly(text: str) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.to_str`."""
    if text.strip() == "0":
        return ZERO
    acc: dict[Monomial, Coeff] = {}
    for sign, body in _split_terms(text):
        coeff: Coeff = sign
        powers: list[tuple[Var, int]] = []
        for factor in body.split("*"):
            m = _FACTOR_RE.fullmatch(factor)
            if not m:
                raise PolyParseError(f"bad factor {factor!r} in {text!r}")
            if m.group("num"):
                coeff = coeff * Fraction(m.group("num"))
                continue
            name, tag = m.group("name"), m.group("tag")
            exp = int(m.group("exp") or 1)
            kind = name if tag is not None else _NAME_TO_KIND.get(name, name)
            try:
                powers.append((Var(kind, tag), exp))
            except ValueError as exc:
                raise PolyParseError(str(exc)) from None
        mono = _canonical_mono(powers)
        acc[mono] = acc.get(mono, 0) + _normalize_coeff(coeff)
    return MultiPoly(acc)
