from kangaroo_core.groups.base_group import BaseGroup, Element


class MultiplicativeGroup(BaseGroup):
    """Subgroup of the units modulo p, the group used for real instances"""
    kind = "mul"

    def identity(self) -> Element:
        return Element(1)

    def _combine(self, x: int, y: int) -> int:
        return x * y % self.modulus
