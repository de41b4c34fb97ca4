"""Pure-Python coefficient kernels.

Coefficient sequences are plain lists of Python ints, lowest degree first.
The compiled backend in ``_kernels.pyx`` exposes the same three functions and
falls back to :func:`kronecker_mul` for long operands.
"""

from __future__ import annotations

# Below this operand length schoolbook multiplication beats packing.
KRONECKER_CUTOFF = 24


def _pack(coeffs, nbytes: int) -> int:
    # Signed coefficients are split into positive and negative parts so that
    # both can be serialised with to_bytes.
    zero = bytes(nbytes)
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else zero for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else zero for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, length: int, nbytes: int) -> list:
    # Shift every digit by 2**(w-1) so the packed value has no borrows.
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * length, "little")
    raw = (value + offset).to_bytes(length * nbytes, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, length * nbytes, nbytes)
    ]


def kronecker_mul(a, b) -> list:
    """Multiply two coefficient lists through one big-integer product."""
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    bound = max(map(abs, a)).bit_length() + max(map(abs, b)).bit_length()
    bound += min(la, lb).bit_length() + 2
    nbytes = (bound + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(prod, la + lb - 1, nbytes)


def mul(a, b) -> list:
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    if la > lb:
        a, b, la, lb = b, a, lb, la
    if la > KRONECKER_CUTOFF:
        return kronecker_mul(a, b)
    out = [0] * (la + lb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b, i):
                out[j] += x * y
    return out


def divmod_monic(a, b):
    """Long division of ``a`` by ``b`` whose leading coefficient is +1 or -1.

    Returns ``(quotient, remainder)``; the remainder list has ``len(b) - 1``
    entries and may contain zeros.
    """
    lb = len(b)
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +1 or -1")
    la = len(a)
    if la < lb:
        return [], list(a) + [0] * (lb - 1 - la)
    rem = list(a)
    terms = [(j, y) for j, y in enumerate(b[:-1]) if y]
    quot = [0] * (la - lb + 1)
    for i in range(la - lb, -1, -1):
        c = rem[i + lb - 1]
        if c:
            if lead == -1:
                c = -c
            quot[i] = c
            for j, y in terms:
                rem[i + j] -= c * y
    return quot, rem[: lb - 1]


def add_shifted(a, b, shift: int) -> list:
    """Return ``a + x**shift * b`` for ``shift >= 0``."""
    out = list(a)
    end = shift + len(b)
    if end > len(out):
        out.extend([0] * (end - len(out)))
    for i, y in enumerate(b, shift):
        out[i] += y
    return out
