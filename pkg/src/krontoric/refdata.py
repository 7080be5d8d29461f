"""Reference values for the reproduction suite, in one versioned table.

Every externally checkable constant lives here so that a reproduction
failure points at either the computation or this transcription, never
both silently.  Tableaux are written as row strings, labels as two-digit
tokens `ip`.
"""
from __future__ import annotations

from .tableaux import Tableau

REFDATA_VERSION = 1


def _tab(rowspec: str) -> Tableau:
    rows = []
    for part in rowspec.split("/"):
        rows.append(tuple((int(tok[0]), int(tok[1])) for tok in part.split()))
    return Tableau(tuple(rows))


# the 20 degree-3 generators of the 4-arrow semi-standard cone, plus side
K423_DEGREE3_PLUS = tuple(_tab(s) for s in [
    "11 11 11 11 11 22 / 12 12 12 12 32 32 / 21 21 21 31 42 42",
    "11 11 11 11 11 22 / 12 12 12 22 32 32 / 21 21 21 31 42 42",
    "11 11 11 11 11 22 / 12 12 12 12 32 32 / 21 21 21 21 42 42",
    "11 11 22 22 32 32 / 21 21 31 31 41 41 / 31 32 42 42 42 42",
    "11 11 22 22 32 32 / 21 21 31 31 41 41 / 31 42 42 42 42 42",
    "11 11 22 22 32 32 / 21 21 31 31 41 41 / 31 32 32 42 42 42",
    "11 11 11 11 11 22 / 12 12 12 12 32 32 / 21 21 31 31 42 42",
    "11 11 11 11 11 22 / 12 12 22 22 32 32 / 21 21 31 31 42 42",
    "11 11 11 11 11 22 / 12 12 12 22 32 32 / 21 21 31 31 42 42",
    "11 11 22 22 32 32 / 21 21 41 41 41 41 / 31 42 42 42 42 42",
    "11 11 22 32 32 32 / 21 21 41 41 41 41 / 31 42 42 42 42 42",
    "11 11 32 32 32 32 / 21 21 41 41 41 41 / 31 42 42 42 42 42",
    "11 11 11 11 21 22 / 12 12 22 22 32 32 / 21 21 31 31 42 42",
    "11 11 11 11 21 22 / 12 12 12 22 32 32 / 21 21 31 31 42 42",
    "11 11 11 21 21 22 / 12 12 22 22 32 32 / 21 21 31 31 42 42",
    "11 11 11 11 21 22 / 12 12 12 22 32 32 / 21 21 21 31 42 42",
    "11 11 22 32 32 32 / 21 21 31 41 41 41 / 31 32 42 42 42 42",
    "11 11 22 22 32 32 / 21 21 31 41 41 41 / 31 32 42 42 42 42",
    "11 11 22 22 32 32 / 21 21 31 41 41 41 / 31 42 42 42 42 42",
    "11 11 22 32 32 32 / 21 21 31 41 41 41 / 31 42 42 42 42 42",
])

# the 20 canonical pairs of the 3-arrow 2-block matching field,
# plus side and minus side aligned index by index
K323_MF_PLUS = tuple(_tab(s) for s in [
    "21 21 / 22 31 / 32 32",
    "21 31 / 31 12 / 32 32",
    "21 31 / 22 12 / 31 32",
    "21 21 / 12 31 / 32 32",
    "21 21 / 12 31 / 22 32",
    "21 21 / 12 22 / 31 32",
    "21 21 / 12 22 / 22 31",
    "21 31 / 12 12 / 31 32",
    "21 21 / 12 12 / 31 32",
    "21 21 / 12 12 / 22 31",
    "11 21 / 12 31 / 32 32",
    "11 21 / 12 31 / 22 32",
    "11 21 / 12 22 / 21 32",
    "11 31 / 12 12 / 31 32",
    "11 31 / 12 12 / 21 32",
    "11 21 / 12 12 / 31 32",
    "11 21 / 12 12 / 22 31",
    "11 21 / 12 12 / 21 32",
    "11 21 / 12 12 / 21 22",
    "11 11 / 12 12 / 21 32",
])

K323_MF_MINUS = tuple(_tab(s) for s in [
    "21 21 32 / 22 33 33",
    "21 31 32 / 12 33 33",
    "21 31 33 / 22 33 12",
    "21 21 32 / 12 33 33",
    "21 21 32 / 12 23 33",
    "21 21 33 / 22 33 12",
    "21 21 33 / 22 23 12",
    "21 31 33 / 12 33 12",
    "21 21 33 / 12 33 12",
    "21 21 33 / 12 23 12",
    "11 21 32 / 12 33 33",
    "11 21 32 / 12 23 33",
    "11 21 23 / 12 22 33",
    "11 31 33 / 12 33 12",
    "11 23 31 / 12 12 33",
    "11 21 33 / 12 33 12",
    "11 21 33 / 12 23 12",
    "11 21 23 / 12 12 33",
    "11 21 23 / 12 23 12",
    "11 11 23 / 12 12 33",
])

# classical period of the 3-arrow 2-block mirror, terms 0..20
K323_MF_PERIOD = (
    1, 0, 0, 18, 0, 0, 4590, 0, 0, 1728720, 0, 0, 876610350, 0, 0,
    520461209268, 0, 0, 343838539188144, 0, 0,
)

EXPECTED = {
    "K323-gc": {
        "quiver": (3, 2, 3),
        "grading": "c0",
        "generator_counts": {1: 20},
        "slice_vertex_count": 18,
        "fan_ray_count": 13,
        "gorenstein": True,
        "fano": True,
        "terminal": True,
    },
    "K423-gc": {
        "quiver": (4, 2, 3),
        "grading": "c0",
        "generator_counts": {1: 126, 2: 86, 3: 20},
        "degree3_plus_tableaux": K423_DEGREE3_PLUS,
        "slice_vertex_count": 141,
        "fan_ray_count": 26,
        "fano": True,
        "gorenstein": False,
    },
    "K323-mf": {
        "quiver": (3, 2, 3),
        "grading": "c2",
        "generator_counts": {1: 20},
        "canonical_pairs": tuple(zip(K323_MF_PLUS, K323_MF_MINUS)),
        "all_lm_verified": True,
        "fallback_used": False,
        "slice_vertex_count": 20,
        "slice_vertices_are_only_lattice_points": True,
        "fan_ray_count": 12,
        "gorenstein": True,
        "fano": True,
        "terminal": True,
        "mirror_newton_reflexive": True,
        "mirror_newton_lattice_points": 13,
        "period": K323_MF_PERIOD,
    },
    "K423-mf": {
        "quiver": (4, 2, 3),
        "grading": "c2",
        "generator_counts": {1: 126, 2: 80},
        "all_lm_verified": True,
        "fallback_used": False,
        "slice_vertex_count": 142,
        "has_non_lattice_vertex": True,
        "gorenstein": True,
        "fano": True,
        "terminal": True,
        "fano_index": 4,
        "mirror_vertex_count": 30,
        "mirror_lattice_points": 31,
    },
}
