"""Curves with full rational 2-torsion: arithmetic, Kummer map, local images."""

from .curve import Curve, point, same_up_to_scaling, twist
from .kummer import (
    LocalImage,
    kummer_of_point,
    local_image,
    local_membership,
    local_pair,
    torsion_images,
)
from .points import point_search, torsion_subgroup
from .rootnum import UNSUPPORTED, reduction_type, root_number, root_number_local


def make_curve(a1: int, a2: int, a3: int) -> Curve:
    return Curve(int(a1), int(a2), int(a3))


def is_torsion(E: Curve, P) -> bool:
    return E.is_torsion(P)
