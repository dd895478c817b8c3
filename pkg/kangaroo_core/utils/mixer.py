"""Keyed 64-bit hashing used as the random oracle for step assignment and
distinguished points
"""

MASK_64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def avalanche(h: int) -> int:
    """One multiply-xor-shift finalisation round (murmur3 fmix64)

    :param h: 64-bit input
    :return: 64-bit output
    """
    h ^= h >> 33
    h = (h * 0xFF51AFD7ED558CCD) & MASK_64
    h ^= h >> 33
    h = (h * 0xC4CEB9FE1A85EC53) & MASK_64
    h ^= h >> 33
    return h


def keyed_hash(key_lo: int, key_hi: int, data: bytes) -> int:
    """Hashes data under a 128-bit key, one round per 8-byte chunk plus a keyed final round

    :param key_lo: low 64 bits of the key
    :param key_hi: high 64 bits of the key
    :param data: bytes to hash
    :return: 64-bit hash
    """
    h = (key_lo ^ (len(data) * _GOLDEN)) & MASK_64
    for offset in range(0, len(data), 8):
        h = avalanche(h ^ int.from_bytes(data[offset:offset + 8], "big"))
    return avalanche(h ^ key_hi)
