"""Randomized consistency drivers: recognizer invariance and the edge cross-oracle."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .normal_forms import TABLE1, TABLE1_SIGNS, TABLE2, TYPE7_SAMPLES
from .recognize import (classify_function_germ, classify_height_by_germ, classify_height_direction,
                        classify_map_germ, classify_projection_by_germ,
                        classify_projection_direction)
from .sampling import (SPECIAL_KINDS, change_germ, random_direction, random_edge, random_rx_change,
                       random_target_change)

FUNCTION_DEGREE = 6
MAP_DEGREE = 7


@dataclass
class RunSummary:
    trials: int = 0
    failures: list = field(default_factory=list)
    flagged: int = 0
    tally: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"trials": self.trials, "failures": len(self.failures), "flagged": self.flagged,
                "flaggedRate": self.flagged / self.trials if self.trials else 0.0,
                "examples": [str(f) for f in self.failures[:5]]}


def function_invariance(rng: random.Random, per_form: int, forms=TABLE1 + TABLE1_SIGNS,
                        deg: int = FUNCTION_DEGREE) -> RunSummary:
    """Labels of function normal forms under random ``R(X)`` changes (full label compared)."""
    out = RunSummary()
    for nf in forms:
        g = nf.germ(deg)
        ref = classify_function_germ(g)
        for _ in range(per_form):
            lab = classify_function_germ(change_germ(g, random_rx_change(rng, deg)))
            out.trials += 1
            if lab.key != ref.key:
                out.failures.append((nf.name, ref.name, lab.name))
    return out


def map_invariance(rng: random.Random, per_form: int, forms=TABLE2 + TYPE7_SAMPLES,
                   deg: int = MAP_DEGREE) -> RunSummary:
    """Labels of map normal forms under random ``R(X)`` and target changes.

    Types 1 to 6 compare the full label; Type 7 compares the family, since its
    moduli are only read from germs already in prenormal shape.
    """
    out = RunSummary()
    for nf in forms:
        g = nf.germ(deg)
        ref = classify_map_germ(g, certify_type7=False)
        for _ in range(per_form):
            h = change_germ(g, random_rx_change(rng, deg), random_target_change(rng, deg))
            lab = classify_map_germ(h, certify_type7=False)
            out.trials += 1
            same = lab.family == ref.family if ref.family == "Type7" else lab.key == ref.key
            if not same:
                out.failures.append((nf.name, ref.name, lab.name))
    return out


def cross_oracle(rng: random.Random, count: int) -> RunSummary:
    """Coefficient classification against direct jet analysis on random edges and directions.

    A pair counts as flagged when either side reports a non-generic or
    inconclusive label; only unflagged pairs can disagree.
    """
    out = RunSummary()
    for _ in range(count):
        E = random_edge(rng, rng.choice(SPECIAL_KINDS))
        v = random_direction(rng, E)
        out.trials += 1
        pa, pb = classify_projection_direction(E, v), classify_projection_by_germ(E, v)
        ha, hb = classify_height_direction(E, v), classify_height_by_germ(E, v)
        flagged = False
        if pa.generic and pb.generic:
            if pa.family != pb.family:
                out.failures.append(("projection", E, v, pa.name, pb.name))
        else:
            flagged = True
        if ha.generic and hb.generic:
            if ha.key != hb.key:
                out.failures.append(("height", E, v, ha.name, hb.name))
        else:
            flagged = True
        out.flagged += flagged
        out.tally[pa.family] += 1
    return out
