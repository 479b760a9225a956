"""Score-sheet monoids of round-robin tournaments.

Ordered, runner-up consistent and consistent score sheets as lattice
points of rational cones: membership, inequality systems, extreme rays,
Hilbert bases, triangulations, Ehrhart counting and Hilbert series.
"""

from .errors import CapExceeded, NotFullDimensional, NotPointed
from .sheets import MonoidFamily, ScoreSheet, is_member, parse_text, row_sums
from .forms import ConeSpec, LinearForm, cone_inequalities, gorenstein_witness, verify_gorenstein
from .polyhedra import (RayList, extreme_rays, hilbert_basis_bounded, irredundant_facets, multiplicity,
                        triangulate, triangulation_stats, width_one_and_vertex_check)
from .hilbert import construct_A, construct_B, decompose, hb_count_formulas, verify_minimality
from .ehrhart import (CountTable, Quasipolynomial, count_points, count_table, fit_quasipolynomial,
                      series_numerator)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "NotFullDimensional", "NotPointed", "MonoidFamily", "ScoreSheet", "is_member",
    "parse_text", "row_sums", "ConeSpec", "LinearForm", "cone_inequalities", "gorenstein_witness",
    "verify_gorenstein", "RayList", "extreme_rays", "hilbert_basis_bounded", "irredundant_facets",
    "multiplicity", "triangulate", "triangulation_stats", "width_one_and_vertex_check", "construct_A",
    "construct_B", "decompose", "hb_count_formulas", "verify_minimality", "CountTable", "Quasipolynomial",
    "count_points", "count_table", "fit_quasipolynomial", "series_numerator", "BACKEND", "__version__",
]
