"""Integer sequences built from the Thue-Morse sequence and its inverse series.

Naming follows the usual letters:

    t   Thue-Morse bits, t_n = s_2(n) mod 2
    o   odious numbers (1-based)          e   evil numbers (1-based)
    c   coefficients of the compositional inverse G of sum t_n X^n over F_2
    a   positions of the ones of c (a_0 = 0 by convention)
    b   integers whose base-4 digits all lie in {0, 2}
    d   positions m >= 1 of the zeros of c (0-based, d_0 = 3)
    u   positive integers with a base-4 digit equal to 1 or 3
    z   (u_n - n) mod 2

Every sequence has at least two independent ways of being computed; the test
suite cross-checks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "IPTM_METHODS",
    "SequenceHandle",
    "SEQUENCES",
    "sequence",
    "digit_sum",
    "thue_morse",
    "thue_morse_rec",
    "thue_morse_batch",
    "odious",
    "odious_batch",
    "evil",
    "evil_batch",
    "iptm",
    "iptm_batch",
    "b_seq",
    "b_seq_rec",
    "b_batch",
    "b_rank",
    "a_seq",
    "a_batch",
    "a_enum",
    "u_seq",
    "u_seq_rec",
    "u_batch",
    "u_count",
    "d_seq",
    "d_scan",
    "z_seq",
    "z_batch",
    "mdb_pred",
    "generator",
    "z_char_pred",
    "z_char_decompose",
]

IPTM_METHODS = ("recurrence4", "recurrence8", "digits4", "reversion")

_EVEN_BITS = 0x5555555555555555  # low bit of every base-4 digit, 64-bit window


def _low_digit_bits(n: int) -> int:
    # mask with a 1 at bit 2j for every base-4 digit position j of n
    width = (n.bit_length() + 1) // 2
    return int("01" * width, 2) if width else 0


def digit_sum(n: int, base: int = 2) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0
    while n:
        n, r = divmod(n, base)
        total += r
    return total


# ---------------------------------------------------------------------------
# t, o, e


def thue_morse(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return bin(n).count("1") & 1


def thue_morse_rec(n: int) -> int:
    """t via t_0 = 0, t_2n = t_n, t_2n+1 = 1 - t_n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    bit = 0
    while n:
        if n & 1:
            bit = 1 - bit
        n >>= 1
    return bit


def thue_morse_batch(count: int) -> np.ndarray:
    t = np.zeros(1, dtype=np.uint8)
    while len(t) < count:
        t = np.concatenate([t, 1 - t])
    return t[:count]


def _check_one_based(n: int) -> None:
    if n < 1:
        raise IndexError("odious and evil numbers are indexed from 1")


def odious(n: int) -> int:
    """n-th odious number, o_n = 2n - 1 - t_{n-1}."""
    _check_one_based(n)
    return 2 * n - 1 - thue_morse(n - 1)


def evil(n: int) -> int:
    """n-th evil number: each pair {2k, 2k+1} holds exactly one."""
    _check_one_based(n)
    k = n - 1
    return 2 * k + thue_morse(2 * k)


def _enumerate_bits(bit: int, count: int) -> np.ndarray:
    size = 2 * count + 2
    t = thue_morse_batch(size)
    return np.flatnonzero(t == bit)[:count].astype(np.int64)


def odious_batch(count: int) -> np.ndarray:
    """o_1..o_count by scanning t."""
    return _enumerate_bits(1, count)


def evil_batch(count: int) -> np.ndarray:
    """e_1..e_count by scanning t."""
    return _enumerate_bits(0, count)


# ---------------------------------------------------------------------------
# c


def _iptm_rec8(n: int) -> int:
    # c_{8k-1} = c_{8k} = c_{8k+1} = c_{8k+2} = c_{2k-1}, c_{8k+3..8k+6} = 0
    while n >= 7:
        k, r = divmod(n + 1, 8)
        if r >= 4:
            return 0
        n = 2 * k - 1
    return (0, 1, 1, 0, 0, 0, 0)[n]


def _iptm_digits(n: int) -> int:
    # n > 0 and every base-4 digit of n + 1 but the last lies in {0, 2}
    if n <= 0:
        return 0
    m = (n + 1) >> 2
    return int((m & _low_digit_bits(m)) == 0)


def iptm(n: int, method: str = "digits4") -> int:
    """c_n, the n-th coefficient of the inverse Thue-Morse series."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if method == "digits4":
        return _iptm_digits(n)
    if method == "recurrence8":
        return _iptm_rec8(n)
    if method in ("recurrence4", "reversion"):
        return int(iptm_batch(n + 1, method)[n])
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(IPTM_METHODS)}")


def iptm_batch(count: int, method: str = "digits4") -> np.ndarray:
    """c_0..c_{count-1} as a uint8 array."""
    if count < 0:
        raise ValueError("count must be non-negative")
    if method == "digits4":
        m = (np.arange(count, dtype=np.int64) + 1) >> 2
        c = ((m & _EVEN_BITS) == 0).astype(np.uint8)
        if count:
            c[0] = 0
        return c
    if method == "recurrence4":
        return _iptm_rec4_batch(count)
    if method == "recurrence8":
        return _iptm_rec8_batch(count)
    if method == "reversion":
        from .fps import ptm_series, series_reverse

        order = max(count - 1, 1)
        return np.asarray(series_reverse(ptm_series(order)).array()[:count], dtype=np.uint8)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(IPTM_METHODS)}")


def _iptm_rec4_batch(count: int) -> np.ndarray:
    # c_{4n} = c_{4n+1} = c_{4n+2} = c_{4n-1} and c_{4n+3} = c_{4n-1} + c_n, so
    # c_{4n+3} is the running parity of c_0..c_n; extend a known prefix 4x per pass
    c = np.array([0, 1, 1, 0], dtype=np.uint8)
    while len(c) < count:
        known = len(c)
        prefix = np.cumsum(c, dtype=np.int64) & 1
        ext = np.empty(4 * known, dtype=np.uint8)
        ext[3::4] = prefix
        ext[4::4] = prefix[:-1]
        ext[5::4] = prefix[:-1]
        ext[6::4] = prefix[:-1]
        ext[:3] = (0, 1, 1)
        c = ext
    return c[:count].copy()


def _iptm_rec8_batch(count: int) -> np.ndarray:
    c = np.array([0, 1, 1, 0, 0, 0, 0], dtype=np.uint8)
    while len(c) < count:
        size = 4 * len(c) + 1
        n = np.arange(size, dtype=np.int64)
        k, r = np.divmod(n + 1, 8)
        src = np.clip(2 * k - 1, 0, None)
        ext = np.where(r < 4, c[np.minimum(src, len(c) - 1)], 0).astype(np.uint8)
        ext[:7] = c[:7]
        c = ext
    return c[:count].copy()


# ---------------------------------------------------------------------------
# b and a


def b_seq(n: int) -> int:
    """n-th integer whose base-4 digits are all 0 or 2 (binary of n, 1 -> 2)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 2 * int(bin(n)[2:], 4)


def b_seq_rec(n: int) -> int:
    """b via b_0 = 0, b_2n = 4 b_n, b_2n+1 = 4 b_n + 2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    value = 0
    for bit in bin(n)[2:]:
        value = 4 * value + 2 * int(bit)
    return value


def _spread_bits(k: np.ndarray) -> np.ndarray:
    # bit j of k moves to bit 2j; k < 2**31
    x = k.astype(np.uint64)
    x = (x | (x << np.uint64(16))) & np.uint64(0x0000FFFF0000FFFF)
    x = (x | (x << np.uint64(8))) & np.uint64(0x00FF00FF00FF00FF)
    x = (x | (x << np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    x = (x | (x << np.uint64(2))) & np.uint64(0x3333333333333333)
    x = (x | (x << np.uint64(1))) & np.uint64(0x5555555555555555)
    return x.astype(np.int64)


def b_batch(count: int) -> np.ndarray:
    if count > 1 << 31:
        raise OverflowError("b_batch supports count <= 2**31")
    return 2 * _spread_bits(np.arange(count, dtype=np.int64))


def b_rank(x: int) -> int:
    """Number of b-values in [0, x]."""
    if x < 0:
        return 0
    k = 0
    digits = []
    while x:
        x, r = divmod(x, 4)
        digits.append(r)
    digits.reverse()
    for i, d in enumerate(digits):
        rest = len(digits) - i - 1
        if d in (1, 3):
            k = (k << 1 | (d == 3)) << rest | ((1 << rest) - 1)
            return k + 1
        k = k << 1 | (d == 2)
    return k + 1


def a_seq(n: int) -> int:
    """n-th position of a one in c, with a_0 = 0; a_{4k+r} = 4 b_k + r."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k, r = divmod(n + 1, 4)
    return 4 * b_seq(k) + r - 1


def a_batch(count: int) -> np.ndarray:
    n = np.arange(count, dtype=np.int64)
    k, r = np.divmod(n + 1, 4)
    return 4 * 2 * _spread_bits(k) + r - 1


def a_enum(count: int) -> np.ndarray:
    """a_0..a_{count-1} by scanning c for ones (a_0 = 0 prepended)."""
    size = 64
    while True:
        ones = np.flatnonzero(iptm_batch(size))
        if len(ones) + 1 >= count:
            return np.concatenate([[0], ones]).astype(np.int64)[:count]
        size *= 4


# ---------------------------------------------------------------------------
# u, d, z


def u_count(x: int) -> int:
    """Number of u-values in [1, x]."""
    if x < 1:
        return 0
    return x + 1 - b_rank(x)


def u_seq(n: int) -> int:
    """n-th positive integer with a base-4 digit equal to 1 or 3 (u_0 = 1).

    Selects the (n+1)-th non-member of b, using b_rank and a search over x.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    hi = 1
    while u_count(hi) < n + 1:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if u_count(mid) >= n + 1:
            hi = mid
        else:
            lo = mid + 1
    return lo


def u_seq_rec(n: int) -> int:
    """u by block recursion on the leading base-4 digit.

    Below 4**m there are 4**m - 2**m terms; the next block holds leading
    digit 1 (free tail), then 2 (tail itself a u-value), then 3 (free tail).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    offset = 0
    while True:
        m = 0
        while 4 ** (m + 1) - 2 ** (m + 1) <= n:
            m += 1
        i = n - (4 ** m - 2 ** m)
        q = 4 ** m
        if i < q:
            return offset + q + i
        if i < 2 * q - 2 ** m:
            offset += 2 * q
            n = i - q
            continue
        return offset + 3 * q + (i - (2 * q - 2 ** m))


def u_batch(count: int) -> np.ndarray:
    """u_0..u_{count-1} by filtering integers with a digit 1 or 3."""
    size = 8
    while True:
        x = np.arange(1, size, dtype=np.int64)
        hits = x[(x & _EVEN_BITS) != 0]
        if len(hits) >= count:
            return hits[:count]
        size *= 2


def d_seq(n: int) -> int:
    """n-th zero of c at positions >= 1 (d_0 = 3); d_{4k+i} = 4 u_k - 1 + i."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k, i = divmod(n, 4)
    return 4 * u_seq(k) - 1 + i


def d_scan(count: int) -> np.ndarray:
    """d_0..d_{count-1} by scanning c for zeros."""
    size = 64
    while True:
        c = iptm_batch(size)
        zeros = np.flatnonzero(c[1:] == 0) + 1
        if len(zeros) >= count:
            return zeros[:count].astype(np.int64)
        size *= 4


def z_seq(n: int) -> int:
    """z_n = ((d_{4n} + 1)/4 - n) mod 2 = (u_n - n) mod 2."""
    return (u_seq(n) - n) & 1


def z_batch(count: int) -> np.ndarray:
    return ((u_batch(count) - np.arange(count)) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# predicates


def mdb_pred(n: int) -> bool:
    """True iff n is a sum of distinct powers of 4 (Moser-de Bruijn)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return (n & (_low_digit_bits(n) << 1)) == 0


def generator(m: int) -> int:
    """g_m = 2**(m-1) * (2**m - 1)."""
    return (1 << (m - 1)) * ((1 << m) - 1)


def z_char_decompose(n: int) -> list[int] | None:
    """Indices m (increasing, all >= 2) with n = sum g_m, or None.

    g_{m+1} exceeds g_2 + ... + g_m, so greedy subtraction of the largest
    generator that fits finds the representation whenever one exists.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    used = []
    cap = (n.bit_length() + 2) // 2  # g_m has 2m - 1 bits
    while n:
        m = min(cap, (n.bit_length() + 1) // 2)
        if m >= 2 and generator(m) > n:
            m -= 1
        if m < 2:
            return None
        n -= generator(m)
        used.append(m)
        cap = m - 1
    return used[::-1]


def z_char_pred(n: int) -> bool:
    """True iff n is a sum of distinct g_m, m >= 2."""
    return z_char_decompose(n) is not None


# ---------------------------------------------------------------------------
# named handles


@dataclass(frozen=True)
class SequenceHandle:
    """A named sequence with single-term and batch access.

    ``first`` is the index of the first term (1 for o and e, else 0).
    ``batch(count)`` returns the first ``count`` terms.
    """

    name: str
    first: int
    _term: Callable[[int], int]
    _batch: Callable[[int], object]

    def term(self, n: int) -> int:
        return int(self._term(n))

    def batch(self, count: int) -> list[int]:
        return [int(v) for v in self._batch(count)]

    def indices(self, count: int) -> range:
        return range(self.first, self.first + count)


SEQUENCES: dict[str, SequenceHandle] = {
    "t": SequenceHandle("t", 0, thue_morse, thue_morse_batch),
    "s2": SequenceHandle("s2", 0, digit_sum, lambda k: [digit_sum(i) for i in range(k)]),
    "o": SequenceHandle("o", 1, odious, odious_batch),
    "e": SequenceHandle("e", 1, evil, evil_batch),
    "c": SequenceHandle("c", 0, iptm, iptm_batch),
    "a": SequenceHandle("a", 0, a_seq, a_batch),
    "b": SequenceHandle("b", 0, b_seq, b_batch),
    "d": SequenceHandle("d", 0, d_seq, lambda k: [d_seq(i) for i in range(k)]),
    "u": SequenceHandle("u", 0, u_seq, u_batch),
    "z": SequenceHandle("z", 0, z_seq, z_batch),
    "mdb": SequenceHandle("mdb", 0, lambda n: int(mdb_pred(n)), lambda k: [int(mdb_pred(i)) for i in range(k)]),
}


def sequence(name: str) -> SequenceHandle:
    try:
        return SEQUENCES[name]
    except KeyError:
        raise KeyError(f"unknown sequence {name!r}; known: {', '.join(SEQUENCES)}") from None
