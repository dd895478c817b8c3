import logging

from kangaroo_core.exceptions import UnknownGroupKind
from kangaroo_core.groups.base_group import BaseGroup, Element, OpCounter


MERSENNE_61 = (1 << 61) - 1


def make_group(kind: str, modulus: int, generator: int, order: int) -> BaseGroup:
    """Returns either a multiplicative or an additive group, validated

    :param kind: "mul" (aliases "multiplicative") or "add" (aliases "additive")
    :param modulus: modulus of the residues
    :param generator: residue of the generator
    :param order: order of the generator
    :return: The group object for the kind
    :rtype MultiplicativeGroup or AdditiveGroup
    """
    logging.debug(f"Group kind is: {kind}")
    if kind in ("mul", "multiplicative"):
        from kangaroo_core.groups.multiplicative import MultiplicativeGroup
        return MultiplicativeGroup(modulus, generator, order)
    elif kind in ("add", "additive"):
        from kangaroo_core.groups.additive import AdditiveGroup
        return AdditiveGroup(modulus, generator, order)
    else:
        raise UnknownGroupKind(kind)


__all__ = ["BaseGroup", "Element", "OpCounter", "MERSENNE_61", "make_group"]
