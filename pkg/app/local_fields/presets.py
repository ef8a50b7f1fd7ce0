from typing import Dict, NamedTuple

from app.local_fields.schemas import Splitting


class QuadraticPreset(NamedTuple):
    p: int
    splitting: Splitting
    trace: int
    norm: int
    description: str


# alpha is a root of x^2 - trace*x + norm; ramified entries use an Eisenstein alpha.
PRESETS: Dict[str, QuadraticPreset] = {
    "q3split": QuadraticPreset(3, Splitting.SPLIT, 1, 0, "Q_3 x Q_3"),
    "q5split": QuadraticPreset(5, Splitting.SPLIT, 1, 0, "Q_5 x Q_5"),
    "q2unr": QuadraticPreset(2, Splitting.INERT, -1, 1, "Q_2(zeta_3)"),
    "q3i": QuadraticPreset(3, Splitting.INERT, 0, 1, "Q_3(i)"),
    "q5sqrt2": QuadraticPreset(5, Splitting.INERT, 0, -2, "Q_5(sqrt 2)"),
    "q3sqrt3": QuadraticPreset(3, Splitting.TAME_RAMIFIED, 0, -3, "Q_3(sqrt 3)"),
    "q5sqrt5": QuadraticPreset(5, Splitting.TAME_RAMIFIED, 0, -5, "Q_5(sqrt 5)"),
    "q2i": QuadraticPreset(2, Splitting.WILD_RAMIFIED, 2, 2, "Q_2(i), alpha = 1+i"),
    "q2sqrt3": QuadraticPreset(
        2, Splitting.WILD_RAMIFIED, 2, -2, "Q_2(sqrt 3), alpha = 1+sqrt 3"
    ),
    "q2sqrtm5": QuadraticPreset(
        2, Splitting.WILD_RAMIFIED, 2, 6, "Q_2(sqrt -5), alpha = 1+sqrt -5"
    ),
    "q2sqrt2": QuadraticPreset(2, Splitting.WILD_RAMIFIED, 0, -2, "Q_2(sqrt 2)"),
    "q2sqrtm2": QuadraticPreset(2, Splitting.WILD_RAMIFIED, 0, 2, "Q_2(sqrt -2)"),
    "q2sqrt6": QuadraticPreset(2, Splitting.WILD_RAMIFIED, 0, -6, "Q_2(sqrt 6)"),
    "q2sqrtm6": QuadraticPreset(2, Splitting.WILD_RAMIFIED, 0, 6, "Q_2(sqrt -6)"),
}
