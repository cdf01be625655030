from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.groups.base import Group
from src.groups.finite import TableGroup
from src.groups.free import FreeGroup
from src.groups.heisenberg import HeisenbergGroup
from src.groups.lattice import IntegerLattice
from src.groups.matrix import GeneralLinearGroup

GroupKind = Literal["integer-lattice", "free", "heisenberg", "matrix", "finite"]


class GroupSpec(BaseModel):
    """Which concrete group to instantiate, with its parameters"""
    kind: GroupKind
    rank: int = Field(default=1, ge=1)
    dimension: int = Field(default=2, ge=1)
    table: list[list[int]] | None = None
    cyclic_order: int | None = Field(default=None, ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _finite_needs_table(self) -> "GroupSpec":
        if self.kind == "finite" and self.table is None and self.cyclic_order is None:
            raise ValueError("finite groups need a Cayley table or a cyclic_order")
        return self


def build_group(spec: GroupSpec) -> Group:
    """Instantiate the group named by a GroupSpec"""
    match spec.kind:
        case "integer-lattice":
            return IntegerLattice(spec.rank)
        case "free":
            return FreeGroup(spec.rank)
        case "heisenberg":
            return HeisenbergGroup()
        case "matrix":
            return GeneralLinearGroup(spec.dimension)
        case "finite":
            if spec.table is not None:
                return TableGroup(spec.table)
            return TableGroup.cyclic(spec.cyclic_order)  # type: ignore[arg-type]
