"""Normal forms of the function and map classifications with their data.

Each entry records the germ, the (stratum) codimension, the determinacy
degree, the versal deformation directions and the directions that carry moduli.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .jetalg import JetMap
from .transversal import Deformation

DEFAULT_DEGREE = 12


@dataclass(frozen=True)
class NormalForm:
    name: str
    components: tuple
    codimension: int
    determinacy: int
    versal: tuple
    moduli: tuple = ()
    family: str = ""
    params: dict = field(default_factory=dict)

    def germ(self, deg: int = DEFAULT_DEGREE) -> JetMap:
        return JetMap.parse(self.components, deg)

    def deformation(self, deg: int = DEFAULT_DEGREE) -> Deformation:
        dirs = [JetMap.parse(d, deg) for d in self.versal]
        names = [f"a{i + 1}" for i in range(len(dirs))]
        return Deformation(self.germ(deg), names, dirs)

    def moduli_directions(self, deg: int = DEFAULT_DEGREE) -> list:
        return [JetMap.parse(d, deg) for d in self.moduli]


def _q(x) -> str:
    x = Fraction(x)
    return f"({x.numerator}/{x.denominator})"


def fn_wuv(a=1) -> NormalForm:
    return NormalForm(f"w+uv+({Fraction(a)})u^3", (f"w + u*v + {_q(a)}*u^3",), 2, 4,
                      (("u",), ("u^2",), ("u^3",)), (("u^3",),), "FnWUV", {"a": Fraction(a)})


TABLE1 = (
    NormalForm("u", ("u",), 0, 1, (), (), "FnU"),
    NormalForm("v+u^2", ("v + u^2",), 0, 2, (), (), "FnVk", {"k": 2}),
    NormalForm("v+u^3", ("v + u^3",), 1, 3, (("u",),), (), "FnVk", {"k": 3}),
    NormalForm("v+u^4", ("v + u^4",), 2, 4, (("u",), ("u^2",)), (), "FnVk", {"k": 4}),
    NormalForm("w+u^2", ("w + u^2",), 1, 2, (("v",),), (), "FnWU2", {}),
    fn_wuv(1),
)

# sign variants of the +-v +-u^k rows
TABLE1_SIGNS = (
    NormalForm("v-u^2", ("v - u^2",), 0, 2, (), (), "FnVk", {"k": 2}),
    NormalForm("-v+u^2", ("-v + u^2",), 0, 2, (), (), "FnVk", {"k": 2}),
    NormalForm("-v+u^3", ("-v + u^3",), 1, 3, (("u",),), (), "FnVk", {"k": 3}),
    NormalForm("v-u^4", ("v - u^4",), 2, 4, (("u",), ("u^2",)), (), "FnVk", {"k": 4}),
    NormalForm("-v-u^4", ("-v - u^4",), 2, 4, (("u",), ("u^2",)), (), "FnVk", {"k": 4}),
    NormalForm("w-u^2", ("w - u^2",), 1, 2, (("v",),), (), "FnWU2", {}),
)

TYPE7_MODULI_DIRECTIONS = (("u^2", "0"), ("0", "u^3"), ("0", "u^4"), ("0", "u^5"), ("0", "u^6"))


def type7(a, b, c=0, d=0, e=0, sign: int = 1) -> NormalForm:
    a, b, c, d, e = (Fraction(x) for x in (a, b, c, d, e))
    s = "+" if sign > 0 else "-"
    comps = (f"v + {_q(a)}*u^2 {s} u^4",
             f"w + u*v + {_q(b)}*u^3 + {_q(c)}*u^4 + {_q(d)}*u^5 + {_q(e)}*u^6")
    versal = (("0", "u"), ("0", "u^2")) + TYPE7_MODULI_DIRECTIONS
    return NormalForm(f"Type7(a={a},b={b},c={c},d={d},e={e},{s})", comps, 2, 6, versal,
                      TYPE7_MODULI_DIRECTIONS, "Type7",
                      {"a": a, "b": b, "c": c, "d": d, "e": e, "sign": 1 if sign > 0 else -1})


TABLE2 = (
    NormalForm("Type1", ("u", "v"), 0, 1, (), (), "Type1"),
    NormalForm("Type2", ("u", "w + u*v"), 0, 2, (), (), "Type2"),
    NormalForm("Type3", ("u", "w + u^2*v"), 1, 3, (("0", "v"),), (), "Type3"),
    NormalForm("Type4", ("u", "w + u^3*v"), 2, 4, (("0", "u*v"), ("0", "v")), (), "Type4"),
    NormalForm("Type5", ("v + u^3", "w + u^2"), 1, 3, (("u", "0"),), (), "Type5"),
    NormalForm("Type6", ("v + u^5", "w + u^2"), 2, 5, (("u^3", "0"), ("u", "0")), (), "Type6"),
)

TYPE7_SAMPLES = (type7(1, 2, 0, 0, 0), type7(-1, Fraction(-1, 2), 1, 0, 0))
