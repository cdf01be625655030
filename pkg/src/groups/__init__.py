from src.groups.base import Group, GroupElement, close_under_inverse, validate_group_axioms
from src.groups.factory import GroupSpec, build_group
from src.groups.finite import TableGroup
from src.groups.free import FreeGroup
from src.groups.heisenberg import HeisenbergGroup
from src.groups.lattice import IntegerLattice
from src.groups.matrix import GeneralLinearGroup, SquareMatrix

__all__ = [
    "Group", "GroupElement", "GroupSpec", "build_group",
    "close_under_inverse", "validate_group_axioms",
    "IntegerLattice", "FreeGroup", "HeisenbergGroup",
    "GeneralLinearGroup", "SquareMatrix", "TableGroup",
]
