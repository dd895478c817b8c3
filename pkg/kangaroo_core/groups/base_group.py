"""Every group backend must implement: identity, _combine

Elements are canonical residues in [0, modulus). The backend only supplies the
group law; exponentiation, encoding and validation are shared here so both
backends count operations the same way.
"""
import logging
from typing import NewType, Optional

from kangaroo_core.exceptions import InvalidModulus, InvalidOrder


Element = NewType("Element", int)


class OpCounter:
    """Counts group operations. One counter belongs to one solve, never to a group.

    :param ops: starting count
    """
    def __init__(self, ops: int = 0) -> None:
        self.ops = ops

    def tick(self, count: int = 1) -> None:
        self.ops += count


class BaseGroup:
    """A cyclic group generated by a single element of known order

    :param modulus: modulus of the residue representation
    :param generator: residue of the generator
    :param order: order of the generator (any multiple of it validates)
    """
    kind = "base"

    def __init__(self, modulus: int, generator: int, order: int) -> None:
        if modulus < 2:
            raise InvalidModulus(modulus)
        if not 0 <= generator < modulus:
            raise ValueError(f"Generator residue {generator} is not in [0, {modulus}).")
        if order < 1:
            raise InvalidOrder(generator, order)
        self.modulus = modulus
        self.generator = Element(generator)
        self.order = order
        self.width = (modulus.bit_length() + 7) // 8
        if order > 1 and self.generator == self.identity():
            raise InvalidOrder(generator, order)
        if self.pow(self.generator, order) != self.identity():
            raise InvalidOrder(generator, order)
        logging.debug(f"Validated {self.kind} group mod {modulus} with generator {generator} of order {order}")

    def identity(self) -> Element:
        raise NotImplementedError

    def _combine(self, x: int, y: int) -> int:
        raise NotImplementedError

    def element(self, residue: int) -> Element:
        """Checks a residue is canonical for this group

        :param residue: integer to wrap
        :return: The element
        """
        if not 0 <= residue < self.modulus:
            raise ValueError(f"Residue {residue} is not in [0, {self.modulus}).")
        return Element(residue)

    def mul(self, x: Element, y: Element, counter: Optional[OpCounter] = None) -> Element:
        """The group law. This is the counted group operation

        :param x: left element
        :param y: right element
        :param counter: accounting hook, ticked once
        :return: The product
        """
        if counter is not None:
            counter.ops += 1
        return Element(self._combine(x, y))

    def pow(self, x: Element, e: int, counter: Optional[OpCounter] = None) -> Element:
        """Left-to-right square and multiply, at most 2*bitlen(e) operations

        :param x: base element
        :param e: non-negative exponent
        :param counter: accounting hook
        :return: x composed with itself e times
        """
        if e < 0:
            raise ValueError(f"Exponent must be non-negative, got {e}.")
        if e == 0:
            return self.identity()
        result = x
        for bit in bin(e)[3:]:
            result = self.mul(result, result, counter)
            if bit == "1":
                result = self.mul(result, x, counter)
        return result

    def encode(self, x: Element) -> bytes:
        """Fixed width big-endian encoding, ceil(bitlen(modulus)/8) bytes

        :param x: element to encode
        :return: The encoding
        """
        return x.to_bytes(self.width, "big")

    def reduce_exponent(self, e: int) -> int:
        return e % self.order

    def to_dict(self) -> dict:
        return {"kind": self.kind, "modulus": self.modulus, "generator": self.generator, "order": self.order}
