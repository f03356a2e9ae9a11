"""Hankel determinants of the inverse Thue-Morse sequence.

H(p, n) is the determinant of the n x n matrix with entry (i, j) = c_{p+i+j}
(0-based i, j; convention ``"offset"``).  The ``"shifted"`` convention uses
c_{p+i+j+1} instead, i.e. 1-based i, j with entry c_{p+i+j-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .seqgen import iptm_batch, mdb_pred

__all__ = [
    "CONVENTIONS",
    "hankel_matrix",
    "bareiss_det",
    "hankel_det",
    "hankel_naive",
    "HankelEntry",
    "HankelReport",
    "conjecture_report",
    "conjectured_h0",
]

CONVENTIONS = ("offset", "shifted")

# int64 Bareiss stays exact while every entry is below this (products < 2**62)
_SAFE = 1 << 30


def _shift(convention: str) -> int:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    return 0 if convention == "offset" else 1


def hankel_matrix(p: int, n: int, convention: str = "offset", c=None) -> np.ndarray:
    if p < 0 or n < 0:
        raise ValueError("p and n must be non-negative")
    start = p + _shift(convention)
    if c is None or len(c) < start + 2 * n:
        c = iptm_batch(start + 2 * n + 1)
    idx = np.add.outer(np.arange(n), np.arange(n)) + start
    return c[idx].astype(np.int64)


def bareiss_det(matrix) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Runs vectorised in int64 and moves to Python integers as soon as an entry
    could overflow.
    """
    a = np.array(matrix, dtype=object if not isinstance(matrix, np.ndarray) else matrix.dtype)
    n = a.shape[0]
    if n == 0:
        return 1
    if a.dtype != object:
        a = a.astype(np.int64)
    sign = 1
    prev = 1
    for k in range(n - 1):
        col = a[k:, k]
        nz = np.flatnonzero(col != 0)
        if len(nz) == 0:
            return 0
        if nz[0]:
            r = k + int(nz[0])
            a[[k, r]] = a[[r, k]]
            sign = -sign
        if a.dtype != object and np.abs(a[k:, k:]).max() >= _SAFE:
            a = a.astype(object)
        piv = a[k, k]
        sub = a[k + 1:, k + 1:]
        upd = piv * sub - np.outer(a[k + 1:, k], a[k, k + 1:])
        if a.dtype == object:
            a[k + 1:, k + 1:] = upd // prev if prev != 1 else upd
        else:
            a[k + 1:, k + 1:] = upd // prev
        a[k + 1:, k] = 0
        prev = piv
    return sign * int(a[n - 1, n - 1])


def hankel_det(p: int, n: int, convention: str = "offset", c=None) -> int:
    if n == 0:
        if p < 0:
            raise ValueError("p must be non-negative")
        return 1
    return bareiss_det(hankel_matrix(p, n, convention, c))


def _cofactor(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, v in enumerate(rows[0]):
        if v:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * v * _cofactor(minor)
    return total


def hankel_naive(p: int, n: int, convention: str = "offset") -> int:
    """Laplace expansion along the first row; a slow oracle for n <= 8."""
    if n > 8:
        raise ValueError("hankel_naive is limited to n <= 8")
    start = p + _shift(convention)
    c = [int(v) for v in iptm_batch(start + 2 * n + 1)]
    rows = [[c[start + i + j] for j in range(n)] for i in range(n)]
    return _cofactor(rows)


def _leibniz(rows: list[list[int]]) -> int:
    # kept for tiny cross-checks of _cofactor itself
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if not prod:
                break
        total += (-1) ** inv * prod
    return total


# ---------------------------------------------------------------------------
# the conjecture


def conjectured_h0(n: int) -> int:
    """H(0, n) as printed: 1 on (4^m-1)/3 (m >= 2), -1 on the listed families, else 0.

    The -1 families read {2(4^m-1)/3 + 1, 2(4^m-1)/3 + 1, 4(4^m-1)/3 + 2}
    for m >= 1; the repeated entry is kept as printed.
    """
    m = 1
    while (4 ** m - 1) // 3 <= n:
        q = (4 ** m - 1) // 3
        if m >= 2 and n == q:
            return 1
        if n in (2 * q + 1, 4 * q + 2):
            return -1
        m += 1
    return 0


@dataclass
class HankelEntry:
    p: int
    n: int
    value: int
    oracle: int | None = None


@dataclass
class HankelReport:
    convention: str
    entries: list[HankelEntry] = field(default_factory=list)
    out_of_range: list[tuple[int, int, int]] = field(default_factory=list)
    h0_mismatches: list[tuple[int, int, int]] = field(default_factory=list)
    diag_mismatches: list[tuple[int, int, bool]] = field(default_factory=list)
    oracle_mismatches: list[tuple[int, int, int, int]] = field(default_factory=list)
    h0_nonzero: list[tuple[int, int]] = field(default_factory=list)

    @property
    def bounded(self) -> bool:
        """Every computed value lies in {-1, 0, 1}."""
        return not self.out_of_range

    def value(self, p: int, n: int) -> int:
        for e in self.entries:
            if e.p == p and e.n == n:
                return e.value
        raise KeyError((p, n))

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "entries": [
                {"p": e.p, "n": e.n, "value": str(e.value),
                 **({"oracle": str(e.oracle)} if e.oracle is not None else {})}
                for e in self.entries
            ],
            "classification": {
                "values_in_unit_set": self.bounded,
                "out_of_range": [{"p": p, "n": n, "value": str(v)} for p, n, v in self.out_of_range],
                "h0_mismatches": [{"n": n, "conjectured": str(exp), "actual": str(act)}
                                  for n, exp, act in self.h0_mismatches],
                "h0_nonzero": [{"n": n, "value": str(v)} for n, v in self.h0_nonzero],
                "diagonal_mismatches": [{"n": n, "value": str(v), "moser_de_bruijn": mdb}
                                        for n, v, mdb in self.diag_mismatches],
                "oracle_mismatches": [{"p": p, "n": n, "bareiss": str(x), "cofactor": str(y)}
                                      for p, n, x, y in self.oracle_mismatches],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def conjecture_report(n_max: int, p_max: int, convention: str = "offset",
                      oracle_n: int = 8) -> HankelReport:
    """Compute H(p, n) for 0 <= p <= p_max, 0 <= n <= n_max and classify it.

    Also fills the diagonal H(n, n) for n <= n_max, which leaves the p range
    when n > p_max.  Cells with n <= oracle_n carry the cofactor value too.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    c = iptm_batch(max(p_max, n_max) + 2 * n_max + 2)
    rep = HankelReport(convention)
    cells = [(p, n) for p in range(p_max + 1) for n in range(n_max + 1)]
    cells += [(n, n) for n in range(p_max + 1, n_max + 1)]
    for p, n in cells:
        value = hankel_det(p, n, convention, c)
        oracle = hankel_naive(p, n, convention) if n <= oracle_n else None
        rep.entries.append(HankelEntry(p, n, value, oracle))
        if oracle is not None and oracle != value:
            rep.oracle_mismatches.append((p, n, value, oracle))
        if value not in (-1, 0, 1):
            rep.out_of_range.append((p, n, value))
        if p == 0:
            expected = conjectured_h0(n)
            if value:
                rep.h0_nonzero.append((n, value))
            if n >= 1 and value != expected:
                rep.h0_mismatches.append((n, expected, value))
        if p == n:
            mdb = mdb_pred(n)
            if (value == 1) != mdb or value not in (0, 1):
                rep.diag_mismatches.append((n, value, mdb))
    return rep
