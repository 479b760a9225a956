"""Reference values the acceptance checks compare against.

Coefficient tables are transcribed exactly as printed, including any
entry that the computation does not reproduce.
"""

from __future__ import annotations

from fractions import Fraction as F
from importlib import resources

from .sheets import ScoreSheet, parse_text, parse_text_many


def _load(name: str) -> list[ScoreSheet]:
    return parse_text_many(resources.files("scoresheets").joinpath("data", name).read_text())


def hb_runner_up_3() -> list[ScoreSheet]:
    """The 12 basis sheets of the runner-up consistent monoid for 3 teams."""
    return _load("hb_runner_up_3.txt")


def hb_consistent_3() -> list[ScoreSheet]:
    """The 10 basis sheets of the consistent monoid for 3 teams."""
    return _load("hb_consistent_3.txt")


# rows: residue classes; columns: coefficients of G^0 .. G^5
Q_RUNNER_UP_3 = (
    (F(1), F(59, 45), F(95, 144), F(215, 1296), F(107, 5184), F(13, 12960)),
    (F(713, 1728), F(10957, 12960), F(1453, 2592), F(23, 144), F(107, 5184), F(13, 12960)),
    (F(7, 9), F(887, 810), F(775, 1296), F(23, 144), F(107, 5184), F(13, 12960)),
    (F(43, 64), F(1573, 1440), F(181, 288), F(215, 1296), F(107, 5184), F(13, 12960)),
    (F(20, 27), F(431, 405), F(767, 1296), F(23, 144), F(107, 5184), F(13, 12960)),
    (F(259, 576), F(11357, 12960), F(1469, 2592), F(23, 144), F(107, 5184), F(13, 12960)),
)

Q_CONSISTENT_3 = (
    (F(1), F(49, 45), F(1, 2), F(299, 2592), F(91, 6912), F(91, 155520)),
    (F(34291, 62208), F(44263, 51840), F(14521, 31104), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(3245, 3888), F(1679, 1620), F(947, 1944), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(145, 256), F(5327, 5760), F(185, 384), F(229, 2592), F(91, 6912), F(91, 155520)),
    (F(214, 243), F(1649, 1620), F(943, 1944), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(35315, 62208), F(45223, 51840), F(14585, 31104), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(15, 16), F(49, 45), F(1, 2), F(299, 2592), F(91, 6912), F(91, 155520)),
    (F(30403, 62208), F(44263, 51840), F(14521, 31104), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(218, 243), F(1679, 1620), F(947, 1944), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(161, 256), F(5327, 5760), F(185, 384), F(299, 2592), F(91, 6912), F(91, 155520)),
    (F(3181, 3888), F(1649, 1620), F(943, 1944), F(889, 7776), F(91, 6912), F(91, 155520)),
    (F(31427, 62208), F(45223, 51840), F(14585, 31104), F(889, 7776), F(91, 6912), F(91, 155520)),
)

SERIES_RUNNER_UP_3 = (1, 0, 4, 3, 6, 5, 17, -2, 19, 5, 8, 3, 8, -2, 3)
SERIES_RUNNER_UP_3_EXPONENTS = (1, 1, 3, 6, 6, 6)

SERIES_CONSISTENT_3 = (1, 0, 3, 1, 6, 2, 10, 1, 13, 3, 11, 3, 13, 1, 10, 2, 6, 1, 3, 0, 1)
SERIES_CONSISTENT_3_EXPONENTS = (1, 1, 3, 6, 6, 12)

# runner-up / ordered for 3 teams, per residue mod 6: (numerator, denominator)
# coefficient lists in ascending powers of G
RATIO_RUNNER_UP_3 = (
    ((4320, 4944, 2026, 379, 26), (4320, 5064, 2246, 459, 36)),
    ((2139, 3955, 2115, 405, 26), (2079, 3825, 2205, 495, 36)),
    ((2520, 1658, 379, 26), (2160, 1638, 459, 36)),
    ((5805, 7503, 2929, 457, 26), (6345, 7833, 3299, 567, 36)),
    ((1200, 974, 275, 26), (1080, 954, 315, 36)),
    ((1665, 1342, 327, 26), (1485, 1332, 387, 36)),
)

# limits of runner-up / ordered and consistent / ordered, six decimals
LIMITS = {
    3: ("0.722222", "0.421296"),
    4: ("0.512196", "0.042183"),
    5: ("0.351755", "0.000648"),
    6: ("0.235064", None),
    7: ("0.153372", None),
    8: ("0.097947", None),
}

LIMIT_RUNNER_UP_3 = F(13, 18)
LIMIT_CONSISTENT_3 = F(91, 216)

CONSISTENT_5_RAYS = 3441
CONSISTENT_5_HB = 4643

# ordered, but the order of teams 2..5 changes once team 1 is removed
ORDER_CHANGED_5 = parse_text("""5
* 0 2 2 2
2 * 1 1 1
0 1 * 2 1
0 1 0 * 2
0 1 1 0 *
""")

# irreducible for 5 consistent teams without spanning an extreme ray
CONSISTENT_5_NON_EXTREME = parse_text("""5
* 7 5 2 3
3 * 5 4 5
3 5 * 4 2
0 4 1 * 5
3 5 2 0 *
""")
