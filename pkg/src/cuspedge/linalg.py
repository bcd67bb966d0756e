"""Sparse exact row reduction over graded jet coordinates.

Coordinates of a jet map with ``p`` components are pairs (monomial, component).
Each coordinate gets an integer column index.  Columns are ordered by degree
first; inside a degree, monomials run in ascending graded-lex order (so
``w^d`` comes first and ``u^d`` last) and components run in descending order.
Pivots are taken at the smallest column, which leaves the ``u``-heavy,
first-component coordinates as the natural quotient representatives.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .jetalg import Jet, JetMap, monomials_of_degree, format_fraction


@lru_cache(maxsize=None)
def column_layout(nvars: int, p: int, dmax: int):
    """Return ``(index_of, coord_of, degree_start)`` for degrees ``0..dmax``."""
    index_of = {}
    coord_of = []
    start = []
    for d in range(dmax + 1):
        start.append(len(coord_of))
        for m in reversed(monomials_of_degree(d, nvars)):
            for comp in range(p - 1, -1, -1):
                index_of[(m, comp)] = len(coord_of)
                coord_of.append((m, comp))
    start.append(len(coord_of))
    return index_of, tuple(coord_of), tuple(start)


def column_degree(col: int, nvars: int, p: int, dmax: int) -> int:
    return sum(column_layout(nvars, p, dmax)[1][col][0])


def jetmap_to_vector(g: JetMap, dmax: int, dmin: int = 0) -> dict:
    """Coordinates of ``g`` restricted to degrees ``dmin..dmax``."""
    index_of = column_layout(g.nvars, len(g), dmax)[0]
    vec = {}
    for comp, jet in enumerate(g):
        for m, c in jet.items():
            d = sum(m)
            if dmin <= d <= dmax:
                vec[index_of[(m, comp)]] = c
    return vec


def vector_to_jetmap(vec: Mapping[int, Fraction], nvars: int, p: int, dmax: int,
                     deg: int | None = None) -> JetMap:
    coord_of = column_layout(nvars, p, dmax)[1]
    deg = dmax if deg is None else deg
    comps = [dict() for _ in range(p)]
    for col, c in vec.items():
        m, comp = coord_of[col]
        comps[comp][m] = c
    return JetMap(Jet(t, deg, nvars) for t in comps)


class Echelon:
    """Incremental echelon form; rows are keyed by pivot column with unit pivot."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def reduce(self, vec: Mapping[int, Fraction]) -> dict:
        """Remainder of ``vec`` after elimination against the current rows.

        Only pivot positions are cleared, so the result is zero iff the
        vector lies in the span.
        """
        v = dict(vec)
        rows = self.rows
        done = {}
        while v:
            col = min(v)
            c = v[col]
            row = rows.get(col)
            if row is None:
                done[col] = c
                del v[col]
                continue
            for k, x in row.items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return done

    def insert(self, vec: Mapping[int, Fraction]) -> bool:
        rem = self.reduce(vec)
        if not rem:
            return False
        piv = min(rem)
        inv = 1 / rem[piv]
        self.rows[piv] = {k: x * inv for k, x in rem.items()}
        return True

    def extend(self, vecs: Iterable[Mapping[int, Fraction]]) -> None:
        for v in vecs:
            self.insert(v)

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def rref(self) -> list:
        """Fully reduced rows ordered by pivot."""
        pivots = sorted(self.rows)
        out: dict[int, dict] = {}
        for piv in reversed(pivots):
            row = dict(self.rows[piv])
            for q in [k for k in row if k != piv and k in out]:
                c = row.get(q)
                if not c:
                    continue
                for k, x in out[q].items():
                    s = row.get(k, 0) - c * x
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
            out[piv] = row
        self.rows = out
        return [out[p] for p in pivots]

    def __len__(self):
        return len(self.rows)


class Subspace:
    """A linear subspace of the graded piece ``J^[dmin, dmax]`` of jet maps.

    The basis is in reduced row-echelon form with respect to the column order
    of :func:`column_layout`, so two equal subspaces have identical bases.
    """

    def __init__(self, rows: list, window: tuple, p: int, nvars: int = 3):
        self.window = (int(window[0]), int(window[1]))
        self.p = p
        self.nvars = nvars
        self.rows = rows
        self._ech = Echelon()
        self._ech.rows = {min(r): r for r in rows}

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, Fraction]], window: tuple, p: int,
             nvars: int = 3) -> "Subspace":
        """Span of ``vectors`` (given on degrees ``0..dmax``) cut down to the window.

        With the vectors truncated above ``dmax`` this is
        ``(span + M^(dmax+1)) ∩ M^dmin`` expressed in the window coordinates.
        """
        dmin, dmax = window
        ech = Echelon()
        ech.extend(vectors)
        start = column_layout(nvars, p, dmax)[2][dmin]
        rows = [r for r in ech.rref() if min(r) >= start]
        return cls(rows, window, p, nvars)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_columns(self) -> range:
        dmin, dmax = self.window
        start = column_layout(self.nvars, self.p, dmax)[2]
        return range(start[dmin], start[dmax + 1])

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_columns)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def pivots(self) -> list:
        return sorted(min(r) for r in self.rows)

    def coord(self, col: int):
        return column_layout(self.nvars, self.p, self.window[1])[1][col]

    def quotient_columns(self) -> list:
        piv = set(self.pivots())
        return [c for c in self.ambient_columns if c not in piv]

    def quotient_basis(self) -> list:
        """Monomial jet maps spanning a complement (the non-pivot coordinates)."""
        dmax = self.window[1]
        return [vector_to_jetmap({c: Fraction(1)}, self.nvars, self.p, dmax)
                for c in self.quotient_columns()]

    def contains_vector(self, vec: Mapping[int, Fraction]) -> bool:
        return self._ech.contains(vec)

    def contains(self, g: JetMap) -> bool:
        return self.contains_vector(jetmap_to_vector(g, self.window[1], self.window[0]))

    def residual(self, g: JetMap) -> JetMap:
        rem = self._ech.reduce(jetmap_to_vector(g, self.window[1], self.window[0]))
        return vector_to_jetmap(rem, self.nvars, self.p, self.window[1])

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains_vector(r) for r in self.rows)

    def basis(self) -> list:
        return [vector_to_jetmap(r, self.nvars, self.p, self.window[1]) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.window, self.p, self.nvars, self.rows) == (
            other.window, other.p, other.nvars, other.rows)

    def to_json(self) -> dict:
        def mono(col):
            m, comp = self.coord(col)
            return {"m": list(m), "component": comp}

        return {
            "window": list(self.window),
            "components": self.p,
            "dim": self.dim,
            "ambientDim": self.ambient_dim,
            "pivots": [mono(c) for c in self.pivots()],
            "basis": [[{**mono(c), "c": format_fraction(x)} for c, x in sorted(r.items())]
                      for r in self.rows],
        }


def nullspace(matrix: list) -> list:
    """Basis of ``{c : sum_i c_i * matrix[i] = 0}`` for sparse vectors ``matrix[i]``.

    Returns coefficient lists (one entry per input vector).
    """
    n = len(matrix)
    ech: dict[int, dict] = {}
    tags: dict[int, list] = {}
    kernel = []
    for i, vec in enumerate(matrix):
        v = dict(vec)
        tag = [Fraction(0)] * n
        tag[i] = Fraction(1)
        while v:
            col = min(v)
            if col not in ech:
                break
            c = v[col]
            for k, x in ech[col].items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
            tag = [a - c * b for a, b in zip(tag, tags[col])]
        if not v:
            kernel.append(tag)
            continue
        col = min(v)
        inv = 1 / v[col]
        ech[col] = {k: x * inv for k, x in v.items()}
        tags[col] = [a * inv for a in tag]
    return kernel
