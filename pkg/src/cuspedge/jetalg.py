"""Exact truncated polynomial (jet) arithmetic over the rationals.

A :class:`Jet` is a polynomial in up to three variables whose terms of degree
greater than its truncation degree are discarded.  Coefficients are
:class:`fractions.Fraction` throughout.  A :class:`JetMap` is a tuple of jets
sharing one truncation degree.

Monomials are exponent tuples.  The canonical order is graded lexicographic
with the first variable largest (``u > v > w``).
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

try:  # gmpy2 rationals are much faster for the inner loops of composition
    from gmpy2 import mpq as _fastq
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _fastq = Fraction

DEGREE_CAP = 14

Monomial = tuple
Number = Union[int, Fraction, str]

VARNAMES = {1: ("x",), 2: ("x", "y"), 3: ("u", "v", "w")}


class JetError(ValueError):
    pass


class DegreeMismatch(JetError):
    pass


class DegreeCapExceeded(JetError):
    pass


def as_fraction(c: Number) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(c)


def format_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@lru_cache(maxsize=None)
def monomials_of_degree(d: int, nvars: int = 3) -> tuple:
    """Monomials of total degree ``d`` in descending graded-lex order."""
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(d - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_up_to(dmax: int, nvars: int = 3, dmin: int = 0) -> tuple:
    out = []
    for d in range(dmin, dmax + 1):
        out.extend(monomials_of_degree(d, nvars))
    return tuple(out)


def grlex_key(m: Monomial):
    return (sum(m), m)


class Jet:
    """Truncated polynomial with exact rational coefficients."""

    __slots__ = ("deg", "nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None, deg: int = DEGREE_CAP,
                 nvars: int = 3):
        if deg < 0:
            raise JetError("truncation degree must be non-negative")
        if deg > DEGREE_CAP:
            raise DegreeCapExceeded(f"truncation degree {deg} exceeds cap {DEGREE_CAP}")
        self.deg = deg
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != nvars or min(m, default=0) < 0:
                raise JetError(f"bad monomial {m} for {nvars} variables")
            if sum(m) > deg:
                continue
            c = as_fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, deg: int, nvars: int) -> "Jet":
        obj = object.__new__(cls)
        obj.deg = deg
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers ---------------------------------------------------

    @classmethod
    def zero(cls, deg: int = DEGREE_CAP, nvars: int = 3) -> "Jet":
        return cls({}, deg, nvars)

    @classmethod
    def const(cls, c: Number, deg: int = DEGREE_CAP, nvars: int = 3) -> "Jet":
        return cls({(0,) * nvars: c}, deg, nvars)

    @classmethod
    def var(cls, i: int, deg: int = DEGREE_CAP, nvars: int = 3) -> "Jet":
        m = [0] * nvars
        m[i] = 1
        return cls({tuple(m): 1}, deg, nvars)

    @classmethod
    def monomial(cls, m: Monomial, c: Number = 1, deg: int = DEGREE_CAP) -> "Jet":
        return cls({tuple(m): c}, deg, len(m))

    @classmethod
    def parse(cls, text: str, deg: int = DEGREE_CAP, nvars: int = 3,
              names: Sequence[str] | None = None) -> "Jet":
        return parse_jet(text, deg, nvars, names)

    # basic access -------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def order(self) -> int | None:
        """Lowest degree of a nonzero term, ``None`` for the zero jet."""
        if not self._terms:
            return None
        return min(sum(m) for m in self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "Jet":
        return Jet._raw({m: c for m, c in self._terms.items() if sum(m) == d}, self.deg, self.nvars)

    def truncate(self, d: int) -> "Jet":
        if d > DEGREE_CAP:
            raise DegreeCapExceeded(f"truncation degree {d} exceeds cap {DEGREE_CAP}")
        return Jet._raw({m: c for m, c in self._terms.items() if sum(m) <= d}, d, self.nvars)

    def with_degree(self, d: int) -> "Jet":
        """Relabel the truncation degree (dropping terms above ``d``)."""
        return self.truncate(d)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "Jet"):
        if self.nvars != other.nvars:
            raise JetError("jets live in different numbers of variables")
        if self.deg != other.deg:
            raise DegreeMismatch(f"truncation degrees differ: {self.deg} != {other.deg}")

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.const(as_fraction(other), self.deg, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Jet._raw(out, self.deg, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw({m: -c for m, c in self._terms.items()}, self.deg, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: Number) -> "Jet":
        c = as_fraction(c)
        if not c:
            return Jet.zero(self.deg, self.nvars)
        return Jet._raw({m: c * v for m, v in self._terms.items()}, self.deg, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check(other)
        return _mul(self, other, self.deg)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise JetError("negative powers are not supported")
        result = Jet.const(1, self.deg, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c: Number = 1, dmax: int | None = None) -> "Jet":
        """Multiply by ``c * x^m``, dropping terms above ``dmax`` (default: own degree)."""
        dmax = self.deg if dmax is None else dmax
        c = as_fraction(c)
        out = {}
        dm = sum(m)
        for k, v in self._terms.items():
            if sum(k) + dm <= dmax:
                out[tuple(a + b for a, b in zip(k, m))] = v * c
        return Jet._raw(out, self.deg, self.nvars)

    def diff(self, i: int) -> "Jet":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                k = list(m)
                k[i] = e - 1
                out[tuple(k)] = c * e
        return Jet._raw(out, self.deg, self.nvars)

    def compose(self, subs: Sequence["Jet"], deg: int | None = None) -> "Jet":
        """Substitute ``subs[i]`` for the i-th variable; result truncated at ``deg``."""
        if len(subs) != self.nvars:
            raise JetError("need one substitution per variable")
        deg = subs[0].deg if deg is None else deg
        if deg > DEGREE_CAP:
            raise DegreeCapExceeded(f"truncation degree {deg} exceeds cap {DEGREE_CAP}")
        tgt = subs[0].nvars
        fast = [_to_fast(s, deg) for s in subs]
        one = {(0,) * tgt: _fastq(1)}
        powers = [dict() for _ in subs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = one if e == 0 else _fast_mul(power(i, e - 1), fast[i], deg)
            return cache[e]

        prefix = {(): one}

        def partial(m):
            # product of the powers for the leading exponents of m, shared between terms
            if m not in prefix:
                prefix[m] = _fast_mul(partial(m[:-1]), power(len(m) - 1, m[-1]), deg)
            return prefix[m]

        result: dict = {}
        for m, c in self._terms.items():
            term = partial(m)
            cq = _fastq(c.numerator, c.denominator)
            for k, x in term.items():
                s = result.get(k, 0) + cq * x
                if s:
                    result[k] = s
                else:
                    result.pop(k, None)
        return _from_fast(result, deg, tgt)

    def evaluate(self, point: Sequence):
        total = 0
        for m, c in self._terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def exact_divide(self, other: "Jet") -> "Jet":
        """Polynomial quotient ``self / other``; raises if the division leaves a remainder.

        Both operands are treated as polynomials (the truncation degree is kept).
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_m, lead_c = other.sorted_terms()[0]
        rem = dict(self._terms)
        quot = {}
        while rem:
            m = max(rem, key=grlex_key)
            if any(a < b for a, b in zip(m, lead_m)):
                raise JetError("polynomial division is not exact")
            q_m = tuple(a - b for a, b in zip(m, lead_m))
            q_c = rem[m] / lead_c
            quot[q_m] = q_c
            for k, v in other._terms.items():
                t = tuple(a + b for a, b in zip(k, q_m))
                s = rem.get(t, 0) - q_c * v
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Jet._raw(quot, self.deg, self.nvars)

    # comparison / display -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self.deg, self.nvars) == (other.deg, other.nvars) and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.deg, self.nvars, tuple(self.sorted_terms())))
        return self._hash

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or VARNAMES.get(self.nvars) or tuple(f"x{i}" for i in range(self.nvars))
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Jet({self.to_string()!r}, deg={self.deg})"

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "deg": self.deg,
            "terms": [{"m": list(m), "c": format_fraction(c)} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Jet":
        try:
            deg = int(data["deg"])
            terms = data["terms"]
            nvars = len(terms[0]["m"]) if terms else int(data.get("nvars", 3))
            out = {}
            for t in terms:
                m = tuple(int(e) for e in t["m"])
                out[m] = out.get(m, 0) + Fraction(str(t["c"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise JetError(f"malformed jet JSON: {exc}") from exc
        return cls(out, deg, nvars)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _mul(p: Jet, q: Jet, deg: int) -> Jet:
    if len(p._terms) * len(q._terms) > 24:
        return _from_fast(_fast_mul(_to_fast(p, deg), _to_fast(q, deg), deg), deg, p.nvars)
    out: dict = {}
    qt = [(m, sum(m), c) for m, c in q._terms.items()]
    for m1, c1 in p._terms.items():
        d1 = sum(m1)
        for m2, d2, c2 in qt:
            if d1 + d2 > deg:
                continue
            k = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Jet._raw(out, deg, p.nvars)


def _to_fast(j: Jet, deg: int) -> dict:
    return {m: _fastq(c.numerator, c.denominator) for m, c in j._terms.items() if sum(m) <= deg}


def _from_fast(d: dict, deg: int, nvars: int) -> Jet:
    return Jet._raw({m: Fraction(int(c.numerator), int(c.denominator)) for m, c in d.items() if c},
                    deg, nvars)


def _fast_mul(p: dict, q: dict, deg: int) -> dict:
    out: dict = {}
    qt = [(m, sum(m), c) for m, c in q.items()]
    for m1, c1 in p.items():
        d1 = sum(m1)
        for m2, d2, c2 in qt:
            if d1 + d2 > deg:
                continue
            k = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def jet_mul(p: Jet, q: Jet) -> Jet:
    """Truncated product; both jets must share a truncation degree."""
    return p * q


class JetMap(tuple):
    """Ordered tuple of jets with a common truncation degree."""

    def __new__(cls, components: Iterable[Jet]):
        comps = tuple(components)
        if not comps:
            raise JetError("a jet map needs at least one component")
        degs = {c.deg for c in comps}
        if len(degs) != 1:
            raise DegreeMismatch(f"components have different truncation degrees {sorted(degs)}")
        if len({c.nvars for c in comps}) != 1:
            raise JetError("components live in different numbers of variables")
        return super().__new__(cls, comps)

    @property
    def deg(self) -> int:
        return self[0].deg

    @property
    def nvars(self) -> int:
        return self[0].nvars

    @property
    def p(self) -> int:
        return len(self)

    @classmethod
    def parse(cls, texts: Sequence[str], deg: int = DEGREE_CAP, nvars: int = 3) -> "JetMap":
        return cls(parse_jet(t, deg, nvars) for t in texts)

    def truncate(self, d: int) -> "JetMap":
        return JetMap(c.truncate(d) for c in self)

    def __add__(self, other):
        if not isinstance(other, JetMap) or len(other) != len(self):
            raise JetError("can only add jet maps with the same number of components")
        return JetMap(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: Number) -> "JetMap":
        return JetMap(x.scale(c) for x in self)

    def compose(self, subs: Sequence[Jet], deg: int | None = None) -> "JetMap":
        return JetMap(c.compose(subs, deg) for c in self)

    def order(self) -> int | None:
        orders = [c.order() for c in self if c.order() is not None]
        return min(orders) if orders else None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def homogeneous_part(self, d: int) -> "JetMap":
        return JetMap(c.homogeneous_part(d) for c in self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"

    def __repr__(self):
        return f"JetMap({str(self)!r}, deg={self.deg})"

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self]}

    @classmethod
    def from_json(cls, data) -> "JetMap":
        if isinstance(data, Mapping) and "components" in data:
            return cls(Jet.from_json(c) for c in data["components"])
        if isinstance(data, Mapping):
            return cls([Jet.from_json(data)])
        return cls(Jet.from_json(c) for c in data)


def as_jetmap(g) -> JetMap:
    if isinstance(g, JetMap):
        return g
    if isinstance(g, Jet):
        return JetMap([g])
    return JetMap(g)


def jet_compose_with_model(g, deg: int | None = None) -> JetMap:
    """``h(x, y) = g(x, y^2, y^3)`` for a jet map ``g`` in (u, v, w).

    ``g`` truncated at degree ``d`` determines ``h`` reliably up to degree
    ``d`` in (x, y); the result is truncated at ``deg`` (default ``d``).
    """
    g = as_jetmap(g)
    deg = g.deg if deg is None else deg
    if deg > DEGREE_CAP:
        raise DegreeCapExceeded(f"truncation degree {deg} exceeds cap {DEGREE_CAP}")
    comps = []
    for c in g:
        out = {}
        for (i, j, k), v in c.items():
            m = (i, 2 * j + 3 * k)
            if sum(m) <= deg:
                out[m] = out.get(m, 0) + v
        comps.append(Jet(out, deg, 2))
    return JetMap(comps)


# parsing --------------------------------------------------------------------

_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div,
            ast.Pow, ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load)


def parse_jet(text: str, deg: int = DEGREE_CAP, nvars: int = 3,
              names: Sequence[str] | None = None) -> Jet:
    """Parse a polynomial such as ``"w + u*v + 1/2*u^3"`` into a jet."""
    names = tuple(names or VARNAMES[nvars])
    aliases = {n: i for i, n in enumerate(names)}
    if nvars == 3:
        aliases.update({"x": 0, "y": 1, "z": 2} if names == VARNAMES[3] else {})
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise JetError(f"cannot parse polynomial {text!r}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise JetError(f"unsupported syntax in {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                raise JetError("only integer literals are allowed (use p/q for rationals)")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in aliases:
                raise JetError(f"unknown variable {node.id!r}")
            return Jet.var(aliases[node.id], deg, nvars)
        if isinstance(node, ast.UnaryOp):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        left, right = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            if isinstance(left, Jet) and isinstance(right, Jet):
                return left * right
            if isinstance(left, Jet):
                return left.scale(right)
            return right.scale(left) if isinstance(right, Jet) else left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, Jet):
                if right.order() != 0 or len(right.terms) != 1:
                    raise JetError("can only divide by constants")
                right = right.coeff((0,) * nvars)
            return left.scale(1 / right) if isinstance(left, Jet) else left / right
        if isinstance(node.op, ast.Pow):
            if isinstance(right, Jet):
                if right.order() != 0 or len(right.terms) != 1:
                    raise JetError("exponents must be integer constants")
                right = right.coeff((0,) * nvars)
            if right.denominator != 1 or right < 0:
                raise JetError("exponents must be non-negative integers")
            return left ** int(right)
        raise JetError(f"unsupported operator in {text!r}")

    val = ev(tree)
    if not isinstance(val, Jet):
        val = Jet.const(val, deg, nvars)
    return val


def all_exponents(nvars: int, dmax: int):
    return (m for m in product(range(dmax + 1), repeat=nvars) if sum(m) <= dmax)
