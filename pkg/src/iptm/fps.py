"""Truncated formal power series over F_p and over the rationals.

A :class:`TruncatedSeries` is known modulo ``X**(order + 1)``.  Prime-field
series keep their coefficients in numpy arrays (bit-packed for p = 2);
rational series keep a tuple of :class:`fractions.Fraction`.  Every operation
returns a new series; nothing is mutated in place.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
from scipy.signal import fftconvolve

__all__ = [
    "QQ",
    "DomainMismatchError",
    "CompositionError",
    "NotInvertibleError",
    "PoleError",
    "InvalidPrimeError",
    "TruncatedSeries",
    "SeriesPolynomial",
    "series_mul",
    "series_inverse",
    "series_compose",
    "series_reverse",
    "series_reverse_naive",
    "substitute_monomial",
    "ptm_series",
    "sp_series",
    "equation_residual",
    "rational_expand",
    "functional_residual",
    "functional_rhs",
    "iterate_compose",
    "PTM_EQUATION",
    "G_CUBIC_EQUATION",
    "G_QUARTIC_EQUATION",
    "R_NUMERATOR",
    "R_DENOMINATOR",
]

QQ = None  # scalar-domain marker for exact rationals

# fft products are exact while |coefficient| stays well inside float64
_FFT_BOUND = 1 << 36
_DIRECT_LEN = 64
_LEAF_LEN = 32


class DomainMismatchError(ValueError):
    pass


class CompositionError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


class InvalidPrimeError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# exact integer convolution


def _kronecker_mul(a: Sequence[int], b: Sequence[int], n_out: int) -> list[int]:
    """Exact product of integer coefficient lists by Kronecker substitution."""
    la, lb = min(len(a), n_out), min(len(b), n_out)
    if la == 0 or lb == 0:
        return [0] * n_out
    a = [int(x) for x in a[:la]]
    b = [int(x) for x in b[:lb]]
    bound = max(map(abs, a)) * max(map(abs, b)) * min(la, lb)
    if bound == 0:
        return [0] * n_out
    nbytes = (bound.bit_length() + 2 + 7) // 8
    if nbytes in (3, 5, 6, 7):
        nbytes = 8 if nbytes > 4 else 4
    shift = 8 * nbytes

    def pack(xs: list[int]) -> int:
        pos = b"".join(max(x, 0).to_bytes(nbytes, "little") for x in xs)
        neg = b"".join(max(-x, 0).to_bytes(nbytes, "little") for x in xs)
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    slots = la + lb - 1
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * slots, "little")
    z = pack(a) * pack(b) + bias
    raw = z.to_bytes(slots * nbytes, "little")
    if nbytes in (1, 2, 4, 8):
        udt = np.dtype(f"<u{nbytes}")
        top = np.array(1 << (shift - 1), dtype=udt)
        vals = (np.frombuffer(raw, dtype=udt) ^ top).view(f"<i{nbytes}")
        out = [int(v) for v in vals[:n_out]]
    else:
        half = 1 << (shift - 1)
        out = [
            int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
            for i in range(min(slots, n_out))
        ]
    out.extend([0] * (n_out - len(out)))
    return out


def _mul_mod(a: np.ndarray, b: np.ndarray, p: int, n_out: int) -> np.ndarray:
    """Product of two residue arrays mod p, truncated to n_out coefficients."""
    a = a[:n_out]
    b = b[:n_out]
    out = np.zeros(n_out, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return out
    short = min(len(a), len(b))
    bound = (p - 1) ** 2 * short
    if short <= _DIRECT_LEN and bound < (1 << 62):
        prod = np.convolve(a, b)[:n_out]
    elif bound <= _FFT_BOUND:
        prod = np.rint(fftconvolve(a.astype(np.float64), b.astype(np.float64)))
        prod = prod[:n_out].astype(np.int64)
    else:
        prod = np.array([x % p for x in _kronecker_mul(a.tolist(), b.tolist(), n_out)],
                        dtype=np.int64)
    out[:len(prod)] = prod
    return out % p


def _mul_rat(a: Sequence[Fraction], b: Sequence[Fraction], n_out: int) -> list[Fraction]:
    """Exact product of rational coefficient lists, truncated to n_out terms."""
    da = reduce(math.lcm, (x.denominator for x in a[:n_out]), 1)
    db = reduce(math.lcm, (x.denominator for x in b[:n_out]), 1)
    ia = [x.numerator * (da // x.denominator) for x in a[:n_out]]
    ib = [x.numerator * (db // x.denominator) for x in b[:n_out]]
    prod = _kronecker_mul(ia, ib, n_out)
    den = da * db
    if den == 1:
        return [Fraction(v) for v in prod]
    return [Fraction(v, den) for v in prod]


# ---------------------------------------------------------------------------
# the series type


class TruncatedSeries:
    """A power series known modulo ``X**(order + 1)``.

    ``modulus`` is a prime p for F_p coefficients, or :data:`QQ` (``None``)
    for exact rationals.
    """

    __slots__ = ("_order", "_modulus", "_data")

    def __init__(self, coeffs: Iterable, order: int | None = None, modulus: int | None = 2):
        if modulus is not QQ:
            if not isinstance(modulus, (int, np.integer)) or not is_prime(int(modulus)):
                raise InvalidPrimeError(f"modulus must be prime, got {modulus!r}")
            modulus = int(modulus)
            if modulus >= 1 << 31:
                raise InvalidPrimeError("prime moduli must be below 2**31")
        if isinstance(coeffs, np.ndarray):
            vals = coeffs
        else:
            vals = list(coeffs)
        if order is None:
            order = len(vals) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        n = order + 1
        if modulus is QQ:
            data = [Fraction(x) for x in list(vals)[:n]]
            data.extend([Fraction(0)] * (n - len(data)))
            self._data = tuple(data)
        else:
            arr = np.zeros(n, dtype=np.int64)
            if isinstance(vals, np.ndarray):
                src = np.asarray(vals[:n], dtype=np.int64) % modulus
            else:
                src = np.array([int(x) % modulus for x in vals[:n]], dtype=np.int64)
            arr[:len(src)] = src
            self._data = _pack(arr, modulus)
        self._order = int(order)
        self._modulus = modulus

    @classmethod
    def _from_array(cls, arr: np.ndarray, modulus: int) -> TruncatedSeries:
        # arr is already reduced mod p
        obj = cls.__new__(cls)
        obj._order = len(arr) - 1
        obj._modulus = modulus
        obj._data = _pack(np.asarray(arr, dtype=np.int64), modulus)
        return obj

    @classmethod
    def _from_fractions(cls, vals: Sequence[Fraction]) -> TruncatedSeries:
        obj = cls.__new__(cls)
        obj._order = len(vals) - 1
        obj._modulus = QQ
        obj._data = tuple(vals)
        return obj

    @classmethod
    def zero(cls, order: int, modulus: int | None = 2) -> TruncatedSeries:
        return cls([], order, modulus)

    @classmethod
    def one(cls, order: int, modulus: int | None = 2) -> TruncatedSeries:
        return cls([1], order, modulus)

    @classmethod
    def x(cls, order: int, modulus: int | None = 2) -> TruncatedSeries:
        return cls([0, 1], order, modulus)

    @property
    def order(self) -> int:
        return self._order

    @property
    def modulus(self) -> int | None:
        return self._modulus

    @property
    def is_rational(self) -> bool:
        return self._modulus is QQ

    def array(self) -> np.ndarray:
        """Coefficients as an int64 array (prime fields only)."""
        if self._modulus is QQ:
            raise TypeError("rational series have no residue array")
        if self._modulus == 2:
            bits = np.unpackbits(np.frombuffer(self._data, dtype=np.uint8), bitorder="little")
            return bits[:self._order + 1].astype(np.int64)
        return self._data.copy()

    @property
    def coeffs(self) -> tuple:
        if self._modulus is QQ:
            return self._data
        return tuple(int(v) for v in self.array())

    def _values(self):
        return list(self._data) if self._modulus is QQ else self.array()

    def __len__(self) -> int:
        return self._order + 1

    def __getitem__(self, n: int):
        if not 0 <= n <= self._order:
            raise IndexError(f"coefficient {n} is beyond order {self._order}")
        if self._modulus is QQ:
            return self._data[n]
        if self._modulus == 2:
            return (self._data[n >> 3] >> (n & 7)) & 1
        return int(self._data[n])

    def valuation(self) -> float | int:
        if self._modulus is QQ:
            return next((i for i, v in enumerate(self._data) if v), math.inf)
        nz = np.flatnonzero(self.array())
        return int(nz[0]) if len(nz) else math.inf

    def is_zero(self) -> bool:
        return self.valuation() == math.inf

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self._order:
            raise ValueError(f"cannot raise order {self._order} to {order}")
        if self._modulus is QQ:
            return TruncatedSeries._from_fractions(self._data[:order + 1])
        return TruncatedSeries._from_array(self.array()[:order + 1], self._modulus)

    def derivative(self) -> TruncatedSeries:
        """Formal derivative; the result is known to one order less."""
        if self._order == 0:
            raise ValueError("derivative of an order-0 series is unknown")
        if self._modulus is QQ:
            return TruncatedSeries._from_fractions(
                [k * v for k, v in enumerate(self._data)][1:])
        arr = self.array()
        d = (np.arange(1, len(arr)) % self._modulus) * arr[1:] % self._modulus
        return TruncatedSeries._from_array(d, self._modulus)

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other._modulus != self._modulus:
            raise DomainMismatchError(
                f"scalar domains differ: {_domain_name(self._modulus)} vs {_domain_name(other._modulus)}")

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return TruncatedSeries([other], self._order, self._modulus)
        return NotImplemented

    def __add__(self, other) -> TruncatedSeries:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self._order, other._order) + 1
        if self._modulus is QQ:
            return TruncatedSeries._from_fractions([x + y for x, y in zip(self._data[:n], other._data[:n])])
        return TruncatedSeries._from_array((self.array()[:n] + other.array()[:n]) % self._modulus,
                                           self._modulus)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        if self._modulus is QQ:
            return TruncatedSeries._from_fractions([-x for x in self._data])
        return TruncatedSeries._from_array((-self.array()) % self._modulus, self._modulus)

    def __sub__(self, other) -> TruncatedSeries:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction, np.integer)):
            if self._modulus is QQ:
                return TruncatedSeries._from_fractions([x * other for x in self._data])
            return TruncatedSeries._from_array(self.array() * (int(other) % self._modulus) % self._modulus,
                                               self._modulus)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            raise ValueError("negative powers are not supported; use series_inverse")
        result = TruncatedSeries.one(self._order, self._modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self._modulus == other._modulus and self._order == other._order
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self._modulus, self._order, self.coeffs))

    def __repr__(self) -> str:
        shown = ", ".join(str(v) for v in self.coeffs[:12])
        more = ", ..." if self._order >= 12 else ""
        return f"TruncatedSeries([{shown}{more}], order={self._order}, domain={_domain_name(self._modulus)})"


def _domain_name(modulus: int | None) -> str:
    return "QQ" if modulus is QQ else f"F_{modulus}"


def _pack(arr: np.ndarray, modulus: int):
    if modulus == 2:
        return np.packbits(arr.astype(np.uint8), bitorder="little").tobytes()
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# array-level kernels shared by the public operations


def _frobenius(a: np.ndarray, p: int, n_out: int) -> np.ndarray:
    """A(X)**p = A(X**p) for coefficients in F_p."""
    out = np.zeros(n_out, dtype=np.int64)
    src = a[:(n_out - 1) // p + 1]
    out[::p][:len(src)] = src
    return out


def _compose_mod(u: np.ndarray, v: np.ndarray, p: int, n: int, cache: dict | None = None) -> np.ndarray:
    """u(v) mod X**(n+1) over F_p; v[0] must be 0.

    Splits u by residue class of the exponent mod p, so that
    u(v) = sum_r v**r * A_r(v)**p and each A_r(v) is needed only to order n // p.
    Every call at one recursion depth sees the same truncation of v, so the
    powers of v are tabulated once per depth in ``cache``.
    """
    if cache is None:
        cache = {}
    u = u[:n + 1]
    if len(u) == 0 or not u.any():
        return np.zeros(n + 1, dtype=np.int64)
    if len(u) <= _LEAF_LEN or n < p:
        key = ("leaf", n)
        table = cache.get(key)
        if table is None or len(table) < len(u):
            rows = [np.zeros(n + 1, dtype=np.int64)]
            rows[0][0] = 1
            for _ in range(max(len(u), _LEAF_LEN) - 1):
                rows.append(_mul_mod(rows[-1], v, p, n + 1))
            table = np.array(rows)
            cache[key] = table
        return (u @ table[:len(u)]) % p
    m = n // p
    key = ("pow", n)
    vpows = cache.get(key)
    if vpows is None:
        vpows = [None] * p
        vpows[0] = np.zeros(n + 1, dtype=np.int64)
        vpows[0][0] = 1
        for r in range(1, p):
            vpows[r] = _mul_mod(vpows[r - 1], v, p, n + 1)
        cache[key] = vpows
    total = np.zeros(n + 1, dtype=np.int64)
    for r in range(p):
        part = u[r::p]
        if len(part) and part.any():
            inner = _frobenius(_compose_mod(part, v[:m + 1], p, m, cache), p, n + 1)
            total += inner if r == 0 else _mul_mod(vpows[r], inner, p, n + 1)
    return total % p


def _inverse_mod(w: np.ndarray, p: int, n: int) -> np.ndarray:
    """1/w mod X**(n+1) over F_p by Newton iteration."""
    w0 = int(w[0]) % p
    if w0 == 0:
        raise NotInvertibleError("constant term is zero")
    y = np.array([pow(w0, -1, p)], dtype=np.int64)
    prec = 0
    while prec < n:
        prec = min(2 * prec + 1, n)
        wy = _mul_mod(w, y, p, prec + 1)
        corr = (-wy) % p
        corr[0] = (corr[0] + 2) % p
        y = _mul_mod(y, corr, p, prec + 1)
    return y[:n + 1]


def _compose_rat(u: Sequence[Fraction], v: Sequence[Fraction], n: int) -> list[Fraction]:
    acc = [Fraction(0)] * (n + 1)
    v = list(v[:n + 1])
    for coef in reversed(list(u[:n + 1])):
        acc = _mul_rat(acc, v, n + 1)
        acc[0] += coef
    return acc


def _inverse_rat(w: Sequence[Fraction], n: int) -> list[Fraction]:
    if w[0] == 0:
        raise NotInvertibleError("constant term is zero")
    y = [1 / Fraction(w[0])]
    prec = 0
    while prec < n:
        prec = min(2 * prec + 1, n)
        wy = _mul_rat(list(w), y, prec + 1)
        corr = [-x for x in wy]
        corr[0] += 2
        y = _mul_rat(y, corr, prec + 1)
    return y[:n + 1]


# ---------------------------------------------------------------------------
# public operations


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product of two series; the result has order min(a.order, b.order)."""
    a._check(b)
    n = min(a.order, b.order)
    if a.is_rational:
        return TruncatedSeries._from_fractions(_mul_rat(a._data, b._data, n + 1))
    return TruncatedSeries._from_array(_mul_mod(a.array(), b.array(), a.modulus, n + 1), a.modulus)


def series_inverse(w: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; requires an invertible constant term."""
    if w.is_rational:
        return TruncatedSeries._from_fractions(_inverse_rat(w._data, w.order))
    return TruncatedSeries._from_array(_inverse_mod(w.array(), w.modulus, w.order), w.modulus)


def series_compose(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """u(v(X)), known to order min(u.order, v.order)."""
    u._check(v)
    if v[0] != 0:
        raise CompositionError("inner series must have zero constant term")
    n = min(u.order, v.order)
    if u.is_rational:
        return TruncatedSeries._from_fractions(_compose_rat(u._data, v._data, n))
    return TruncatedSeries._from_array(_compose_mod(u.array(), v.array()[:n + 1], u.modulus, n),
                                       u.modulus)


def _check_invertible(u: TruncatedSeries) -> None:
    if u.order < 1:
        raise NotInvertibleError("need at least the linear coefficient")
    if u[0] != 0:
        raise NotInvertibleError("constant term must be zero")
    if u[1] == 0:
        raise NotInvertibleError("linear coefficient must be invertible")


def series_reverse(u: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse V with u(V) = V(u) = X, by Newton order doubling."""
    _check_invertible(u)
    n = u.order
    if u.is_rational:
        uc = list(u._data)
        du = [k * c for k, c in enumerate(uc)][1:]
        v = [Fraction(0), 1 / uc[1]]
        prec = 1
        while prec < n:
            prec = min(2 * prec + 1, n)
            vp = v + [Fraction(0)] * (prec + 1 - len(v))
            err = _compose_rat(uc, vp, prec)
            err[1] -= 1
            slope = _compose_rat(du, vp, prec)
            step = _mul_rat(err, _inverse_rat(slope, prec), prec + 1)
            v = [x - y for x, y in zip(vp, step)]
        return TruncatedSeries._from_fractions(v[:n + 1])

    p = u.modulus
    ua = u.array()
    du = (np.arange(1, n + 1) % p) * ua[1:] % p
    v = np.array([0, pow(int(ua[1]), -1, p)], dtype=np.int64)
    prec = 1
    while prec < n:
        prec = min(2 * prec + 1, n)
        vp = np.zeros(prec + 1, dtype=np.int64)
        vp[:len(v)] = v
        err = _compose_mod(ua, vp, p, prec)
        err[1] = (err[1] - 1) % p
        slope = _compose_mod(du, vp, p, prec)
        step = _mul_mod(err, _inverse_mod(slope, p, prec), p, prec + 1)
        v = (vp - step) % p
    return TruncatedSeries._from_array(v[:n + 1], p)


def series_reverse_naive(u: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term reversion; slow, kept as an independent oracle.

    Coefficient n of u(V) is u_1 v_n plus terms in v_1..v_{n-1}, so v_n is
    solved for one index at a time, recomputing every power of V directly.
    """
    _check_invertible(u)
    n = u.order
    uc = list(u.coeffs)
    if u.is_rational:
        def mul(x, y):
            out = [Fraction(0)] * (n + 1)
            for i, xi in enumerate(x):
                if xi:
                    for j in range(n + 1 - i):
                        out[i + j] += xi * y[j]
            return out

        inv1 = 1 / uc[1]
        v = [Fraction(0)] * (n + 1)
        v[1] = inv1
        zero, one = Fraction(0), Fraction(1)
    else:
        p = u.modulus

        def mul(x, y):
            return [int(c) % p for c in np.convolve(np.array(x, dtype=object),
                                                    np.array(y, dtype=object))[:n + 1]]

        inv1 = pow(uc[1], -1, p)
        v = [0] * (n + 1)
        v[1] = inv1
        zero, one = 0, 1
    for k in range(2, n + 1):
        power = [one] + [zero] * n
        coef = zero
        for j in range(1, k + 1):
            power = mul(power, v)
            coef += uc[j] * power[k]
        v[k] = -coef * inv1
        if not u.is_rational:
            v[k] %= u.modulus
    return TruncatedSeries(v, n, u.modulus)


def substitute_monomial(s: TruncatedSeries, k: int, scale=1) -> TruncatedSeries:
    """s(scale * X**k), known to order k * s.order."""
    if k < 1:
        raise ValueError("exponent must be positive")
    n = k * s.order
    if s.is_rational:
        out = [Fraction(0)] * (n + 1)
        factor = Fraction(1)
        for i, c in enumerate(s._data):
            out[k * i] = c * factor
            factor *= scale
        return TruncatedSeries._from_fractions(out)
    p = s.modulus
    arr = s.array()
    powers = np.array([pow(int(scale), i, p) for i in range(len(arr))], dtype=np.int64)
    out = np.zeros(n + 1, dtype=np.int64)
    out[::k] = arr * powers % p
    return TruncatedSeries._from_array(out, p)


def iterate_compose(base: TruncatedSeries, m: int, order: int | None = None) -> TruncatedSeries:
    """m-fold self-composition of base, truncated to the given order."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if base[0] != 0:
        raise CompositionError("base must have zero constant term")
    if order is not None:
        base = base.truncate(order)
    result = base
    for _ in range(m - 1):
        result = series_compose(result, base)
    return result


# ---------------------------------------------------------------------------
# the series and equations the library is about


def _digit_sums(n_terms: int, base: int) -> np.ndarray:
    idx = np.arange(n_terms, dtype=np.int64)
    total = np.zeros(n_terms, dtype=np.int64)
    while idx.any():
        total += idx % base
        idx //= base
    return total


def ptm_series(order: int) -> TruncatedSeries:
    """F(X) = sum t_n X**n over F_2, with t_n the binary digit-sum parity."""
    if order < 0:
        raise ValueError("order must be non-negative")
    t = np.zeros(1, dtype=np.int64)
    while len(t) < order + 1:
        t = np.concatenate([t, 1 - t])
    return TruncatedSeries._from_array(t[:order + 1], 2)


def sp_series(p: int, order: int) -> TruncatedSeries:
    """F_p(X) = sum (s_p(n) mod p) X**n over F_p."""
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    if order < 0:
        raise ValueError("order must be non-negative")
    return TruncatedSeries._from_array(_digit_sums(order + 1, p) % p, p)


class SeriesPolynomial:
    """sum_j P_j(X) Y**j with integer or rational polynomial coefficients.

    ``coefficients[j]`` lists the coefficients of P_j, lowest degree first.
    """

    def __init__(self, coefficients: Sequence[Sequence]):
        polys = [tuple(Fraction(c) for c in poly) for poly in coefficients]
        if not polys or not any(polys[-1]):
            raise ValueError("leading coefficient polynomial must be nonzero")
        self.coefficients = tuple(polys)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __repr__(self) -> str:
        return f"SeriesPolynomial({[list(map(str, p)) for p in self.coefficients]})"


def _poly_series(poly: Sequence[Fraction], order: int, modulus: int | None) -> TruncatedSeries:
    if modulus is QQ:
        return TruncatedSeries(poly, order, QQ)
    vals = []
    for c in poly:
        if c.denominator % modulus == 0:
            raise DomainMismatchError(f"coefficient {c} has no image in F_{modulus}")
        vals.append(c.numerator * pow(c.denominator, -1, modulus))
    return TruncatedSeries(vals, order, modulus)


def equation_residual(poly: SeriesPolynomial, s: TruncatedSeries) -> TruncatedSeries:
    """sum_j P_j(X) s(X)**j, evaluated by Horner's rule in s."""
    n = s.order
    res = _poly_series(poly.coefficients[-1], n, s.modulus)
    for pj in reversed(poly.coefficients[:-1]):
        res = res * s + _poly_series(pj, n, s.modulus)
    return res


# (1+X)^3 F^2 + (1+X^2) F + X = 0
PTM_EQUATION = SeriesPolynomial([[0, 1], [1, 0, 1], [1, 3, 3, 1]])
# X^2 G^3 + X(1+X) G^2 + (X^2+1) G + X(X+1) = 0
G_CUBIC_EQUATION = SeriesPolynomial([[0, 1, 1], [1, 0, 1], [0, 1, 1], [0, 0, 1]])
# X^3 G^4 + (1+X) G + X(X^2+1) = 0
G_QUARTIC_EQUATION = SeriesPolynomial([[0, 1, 0, 1], [1, 1], [], [], [0, 0, 0, 1]])

# X^3 (X^4 - 1) / ((X - 1)(X^4 + 1))
R_NUMERATOR = (0, 0, 0, -1, 0, 0, 0, 1)
R_DENOMINATOR = (-1, 1, 0, 0, -1, 1)


def _divide_by_x_minus_1(poly: list[Fraction]) -> list[Fraction]:
    # synthetic division; caller guarantees poly(1) == 0
    out = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for i in range(len(poly) - 1, 0, -1):
        carry += poly[i]
        out[i - 1] = carry
    return out


def _strip(poly: list[Fraction]) -> list[Fraction]:
    while poly and poly[-1] == 0:
        poly = poly[:-1]
    return poly


def rational_expand(numerator: Sequence, denominator: Sequence, order: int) -> TruncatedSeries:
    """Power-series expansion of numerator/denominator over the rationals.

    Common factors (X - 1) are cancelled first, so a removable singularity at
    X = 1 never reaches the division.
    """
    num = _strip([Fraction(c) for c in numerator])
    den = _strip([Fraction(c) for c in denominator])
    if not den:
        raise PoleError("denominator is the zero polynomial")
    while num and len(den) > 1 and sum(num) == 0 and sum(den) == 0:
        num = _strip(_divide_by_x_minus_1(num))
        den = _strip(_divide_by_x_minus_1(den))
    if den[0] == 0:
        raise PoleError("denominator vanishes at X = 0")
    d0 = den[0]
    tail = [(i, c) for i, c in enumerate(den) if i and c]
    integral = all(c.denominator == 1 for c in num + den) and abs(d0) == 1
    if integral:
        nums = [int(c) for c in num]
        d0i = int(d0)
        tail_i = [(i, int(c)) for i, c in tail]
        out: list = []
        for k in range(order + 1):
            acc = nums[k] if k < len(nums) else 0
            for i, c in tail_i:
                if i <= k:
                    acc -= c * out[k - i]
            out.append(acc * d0i)
        return TruncatedSeries._from_fractions([Fraction(v) for v in out])
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for i, c in tail:
            if i <= k:
                acc -= c * out[k - i]
        out.append(acc / d0)
    return TruncatedSeries._from_fractions(out)


def functional_rhs(c: Sequence[int], order: int) -> TruncatedSeries:
    """X(X+1) + R(X) C(X**4) over the rationals, with C built from c."""
    cs = TruncatedSeries([Fraction(int(v)) for v in c[:order // 4 + 1]], order // 4, QQ)
    c4 = substitute_monomial(cs, 4)
    c4 = TruncatedSeries(list(c4.coeffs) + [0] * (order - c4.order), order, QQ)
    r = rational_expand(R_NUMERATOR, R_DENOMINATOR, order)
    return TruncatedSeries([0, 1, 1], order, QQ) + r * c4


def functional_residual(order: int) -> TruncatedSeries:
    """C(X) - X(X+1) - R(X) C(X**4) over the rationals, to the given order."""
    from .seqgen import iptm_batch

    if order < 0:
        raise ValueError("order must be non-negative")
    c = iptm_batch(order + 1)
    cser = TruncatedSeries([Fraction(int(v)) for v in c], order, QQ)
    return cser - functional_rhs(c, order)
