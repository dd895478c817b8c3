from kangaroo_core.groups.base_group import BaseGroup, Element


class AdditiveGroup(BaseGroup):
    """Integers modulo N under addition.

    Discrete logs here are a division, but the walks, hashing and operation
    counts behave exactly as in the multiplicative backend, at a fraction of
    the arithmetic cost.
    """
    kind = "add"

    def identity(self) -> Element:
        return Element(0)

    def _combine(self, x: int, y: int) -> int:
        return (x + y) % self.modulus
