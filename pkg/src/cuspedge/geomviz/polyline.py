"""Labelled planar polylines and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass


@dataclass
class Polyline2:
    points: list
    label: str

    def __post_init__(self):
        pts = []
        for p in self.points:
            p = (float(p[0]), float(p[1]))
            if not pts or pts[-1] != p:
                pts.append(p)
        self.points = pts

    def __len__(self):
        return len(self.points)


def polylines_to_csv(lines) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "x", "y"])
    for pl in lines:
        for x, y in pl.points:
            w.writerow([pl.label, repr(x), repr(y)])
    return buf.getvalue()


def split_inside(points, inside, label: str, min_points: int = 2) -> list:
    """Break a sampled curve into the runs of consecutive points satisfying ``inside``."""
    out, run = [], []
    for p in points:
        if inside(p):
            run.append(p)
        else:
            if len(run) >= min_points:
                out.append(Polyline2(run, label))
            run = []
    if len(run) >= min_points:
        out.append(Polyline2(run, label))
    return out
