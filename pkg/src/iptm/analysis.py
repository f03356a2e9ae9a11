"""Verification procedures for the identities satisfied by c, a, o, e and z.

Each ``verify_*`` function returns a :class:`~iptm.report.CheckReport`.
Most accept an explicit array in place of the default generator so that a
deliberately corrupted input can be fed through the same code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import fps, seqgen
from .automata import dfao_equiv, figure1_dfao, kernel_dfao
from .report import CheckReport, merge

__all__ = [
    "GapRecord",
    "DensitySummary",
    "GreedyResult",
    "NoConvergenceError",
    "verify_c_recurrences",
    "verify_iptm_methods",
    "verify_a_recurrences",
    "verify_o_recurrences",
    "gap_spectrum",
    "verify_t_a_identity",
    "density_scan",
    "density_greedy",
    "density_greedy_trace",
    "z_window_check",
    "verify_z_char",
    "euler_phi",
    "divisor_witness",
    "convolution_check",
    "printed_p_table",
    "zero_run_check",
    "verify_equations",
    "verify_reversion",
    "verify_automaton",
    "verify_functional",
]


def _report_mismatch(rep: CheckReport, idx: np.ndarray, expected: np.ndarray,
                     actual: np.ndarray, label: str) -> None:
    bad = np.flatnonzero(expected != actual)
    for i in bad[:rep.max_failures]:
        rep.fail(int(idx[i]), f"{label} = {expected[i]}", actual[i])


# ---------------------------------------------------------------------------
# c


def verify_c_recurrences(limit: int, c: np.ndarray | None = None) -> CheckReport:
    """Mod-4 and mod-8 relations of c, plus c_{2n-1} + c_{2n} even, for 1 <= n < limit.

    The digit-test generator is ground truth unless ``c`` is supplied.
    """
    if limit < 4:
        raise ValueError("limit must be at least 4")
    size = 8 * limit + 8
    if c is None:
        c = seqgen.iptm_batch(size)
    if len(c) < size:
        raise ValueError(f"need at least {size} terms of c")
    c = np.asarray(c, dtype=np.int64)
    rep = CheckReport("c-recurrences", limit)
    for i, v in enumerate((0, 1, 1, 0)):
        if c[i] != v:
            rep.fail(i, f"c_{i} = {v}", c[i])
    n = np.arange(1, limit)
    base4 = c[4 * n - 1]
    for i in range(3):
        _report_mismatch(rep, n, base4, c[4 * n + i], f"c_(4n+{i}) = c_(4n-1)")
    _report_mismatch(rep, n, (base4 + c[n]) & 1, c[4 * n + 3], "c_(4n+3) = c_(4n-1) + c_n")
    odd = c[2 * n - 1]
    for i in (-1, 0, 1, 2):
        _report_mismatch(rep, n, odd, c[8 * n + i], f"c_(8n{i:+d}) = c_(2n-1)")
    m = np.arange(0, limit)
    for i in (3, 4, 5, 6):
        _report_mismatch(rep, m, np.zeros_like(m), c[8 * m + i], f"c_(8n+{i}) = 0")
    _report_mismatch(rep, n, np.zeros_like(n), (c[2 * n - 1] + c[2 * n]) & 1, "c_(2n-1) + c_(2n) mod 2")
    return rep


def verify_iptm_methods(limit: int, automaton_limit: int | None = None) -> CheckReport:
    """All c generators agree below ``limit``; the five-state automaton below ``automaton_limit``."""
    rep = CheckReport("iptm-methods", limit)
    ref = seqgen.iptm_batch(limit, "digits4")
    for method in seqgen.IPTM_METHODS:
        other = seqgen.iptm_batch(limit, method)
        _report_mismatch(rep, np.arange(limit), ref, other, f"{method} vs digits4")
    alimit = automaton_limit or limit
    ref = seqgen.iptm_batch(alimit)
    fig = figure1_dfao()
    auto = np.fromiter((fig(n) for n in range(alimit)), dtype=np.uint8, count=alimit)
    _report_mismatch(rep, np.arange(alimit), ref, auto, "figure1 vs digits4")
    return rep


# ---------------------------------------------------------------------------
# a and b


def verify_a_recurrences(limit: int, a: np.ndarray | None = None) -> CheckReport:
    """The five a-relations for 1 <= n < limit and a_{4k+r} = 4 b_k + r for k < limit.

    a comes from the b-based generator; it is tied back to c by checking
    c(a_n) = 1 on the whole range and equality with a direct scan of c on a
    prefix.
    """
    if limit < 2:
        raise ValueError("limit must be at least 2")
    size = 8 * limit + 8
    if a is None:
        a = seqgen.a_batch(size)
    a = np.asarray(a, dtype=np.int64)
    if len(a) < size:
        raise ValueError(f"need at least {size} terms of a")
    rep = CheckReport("a-recurrences", limit)
    for i, v in enumerate((0, 1, 2, 7)):
        if a[i] != v:
            rep.fail(i, f"a_{i} = {v}", a[i])
    n = np.arange(1, limit)
    _report_mismatch(rep, n, a[4 * n - 1] + 1, a[4 * n], "a_(4n) = a_(4n-1) + 1")
    _report_mismatch(rep, n, a[4 * n - 1] + 2, a[4 * n + 1], "a_(4n+1) = a_(4n-1) + 2")
    _report_mismatch(rep, n, a[4 * n - 1] + 3, a[4 * n + 2], "a_(4n+2) = a_(4n-1) + 3")
    _report_mismatch(rep, n, a[8 * n] + 7, a[8 * n + 3], "a_(8n+3) = a_(8n) + 7")
    _report_mismatch(rep, n, 4 * a[4 * n + 3] + 3, a[8 * n + 7], "a_(8n+7) = 4a_(4n+3) + 3")
    k = np.arange(limit)
    b = np.array([seqgen.b_seq_rec(int(x)) for x in k], dtype=np.int64)
    for r in (-1, 0, 1, 2):
        kk = k[1:] if r < 0 else k
        bb = b[1:] if r < 0 else b
        _report_mismatch(rep, 4 * kk + r, 4 * bb + r, a[4 * kk + r], f"a_(4k{r:+d}) = 4b_k{r:+d}")
    m = (a[1:] + 1) >> 2
    ones = (m & seqgen._EVEN_BITS) == 0
    _report_mismatch(rep, np.arange(1, len(a)), np.ones(len(a) - 1, dtype=bool), ones, "c(a_n) = 1")
    prefix = seqgen.a_enum(min(len(a), 4096))
    _report_mismatch(rep, np.arange(len(prefix)), prefix, a[:len(prefix)], "a_n from scanning c")
    return rep


# ---------------------------------------------------------------------------
# o and e

# o_{4n+j} = sum coef * o_{mult*n + add}
_OE_RELATIONS = (
    (0, ((Fraction(1), 1, 0), (Fraction(-3), 1, 1), (Fraction(3), 2, 1))),
    (1, ((Fraction(-2), 1, 1), (Fraction(3), 2, 1))),
    (2, ((Fraction(-1), 1, 0), (Fraction(-9), 1, 1), (Fraction(-1), 2, 0), (Fraction(8), 2, 1))),
    (3, ((Fraction(-5, 3), 1, 0), (Fraction(-11), 1, 1), (Fraction(-5, 3), 2, 0), (Fraction(10), 2, 1))),
)


def _check_oe(rep: CheckReport, name: str, values: np.ndarray, start: int, limit: int) -> None:
    # values[i] holds the term with 1-based index i + 1
    def term(idx):
        return values[idx - 1]

    n = np.arange(start, limit)
    for j, terms in _OE_RELATIONS:
        scale = math.lcm(*(t[0].denominator for t in terms))
        rhs = sum(int(coef * scale) * term(mult * n + add) for coef, mult, add in terms)
        _report_mismatch(rep, n, rhs, scale * term(4 * n + j), f"{scale}*{name}_(4n+{j})")


def verify_o_recurrences(limit: int, o: np.ndarray | None = None, e: np.ndarray | None = None,
                         e_start: int = 1) -> CheckReport:
    """The four rational-coefficient relations for o (and e), plus o_n = 2n - 1 - t_{n-1}."""
    if limit < 1:
        raise ValueError("limit must be positive")
    size = 4 * limit + 4
    o = seqgen.odious_batch(size) if o is None else np.asarray(o, dtype=np.int64)
    e = seqgen.evil_batch(size) if e is None else np.asarray(e, dtype=np.int64)
    rep = CheckReport("o-recurrences", limit)
    for i, v in enumerate((1, 2, 4)):
        if o[i] != v:
            rep.fail(i + 1, f"o_{i + 1} = {v}", o[i])
    _check_oe(rep, "o", o, 1, limit)
    _check_oe(rep, "e", e, e_start, limit)
    n = np.arange(1, size + 1)
    t = seqgen.thue_morse_batch(size).astype(np.int64)
    _report_mismatch(rep, n, 2 * n - 1 - t[n - 1], o[:size], "o_n = 2n - 1 - t_(n-1)")
    return rep


# ---------------------------------------------------------------------------
# gaps and the t(a_n) identity


@dataclass(frozen=True)
class GapRecord:
    n: int
    gap: int
    m: int | None  # gap == (4**m - 1) / 3, m = 1 for gap 1; None if no such m


def _gap_exponent(gap: int) -> int | None:
    x = 3 * gap + 1
    if x & (x - 1) or x.bit_length() % 2 == 0:
        return None
    return (x.bit_length() - 1) // 2


def gap_spectrum(limit: int, a: np.ndarray | None = None) -> tuple[list[GapRecord], CheckReport]:
    """Gaps a_n - a_{n-1} for 1 <= n < limit, checked against the predicted spectrum.

    Gap 1 occurs exactly for n = 0, 1, 2 mod 4; otherwise n + 1 = 2**m (2k+1)
    with m >= 2 and the gap is (4**m - 1) / 3.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    if a is None:
        a = seqgen.a_batch(limit)
    gaps = np.diff(np.asarray(a[:limit], dtype=np.int64))
    rep = CheckReport("gaps", limit)
    records = []
    for n, gap in enumerate(gaps.tolist(), start=1):
        m = _gap_exponent(gap)
        records.append(GapRecord(n, gap, m))
        if m is None:
            rep.fail(n, "gap of the form (4^m-1)/3", gap)
            continue
        if n % 4 != 3:
            expected = 1
        else:
            mm = ((n + 1) & -(n + 1)).bit_length() - 1
            expected = (4 ** mm - 1) // 3
        if gap != expected:
            rep.fail(n, expected, gap)
    return records, rep


def _parity64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    for s in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(s)
    return (x & np.uint64(1)).astype(np.int64)


def verify_t_a_identity(limit: int) -> CheckReport:
    """2 t(a_n) = (t_n + t_{n+1}) + (-1)^n (t_n - t_{n+1}) for n < limit."""
    if limit < 1:
        raise ValueError("limit must be positive")
    a = seqgen.a_batch(limit)
    ta = _parity64(a)
    t = seqgen.thue_morse_batch(limit + 1).astype(np.int64)
    n = np.arange(limit)
    sign = 1 - 2 * (n & 1)
    rhs = (t[:-1] + t[1:]) + sign * (t[:-1] - t[1:])
    rep = CheckReport("t-a-identity", limit)
    _report_mismatch(rep, n, rhs, 2 * ta, "2 t(a_n)")
    even = n[n % 2 == 0]
    _report_mismatch(rep, even, t[even // 2], ta[even], "t(a_2k) = t_k")
    odd = n[n % 2 == 1]
    _report_mismatch(rep, odd, t[(odd - 1) // 2 + 1], ta[odd], "t(a_2k+1) = t_(k+1)")
    return rep


# ---------------------------------------------------------------------------
# density of a_n / n^2


@dataclass
class DensitySummary:
    limit: int
    min_ratio: Fraction
    max_ratio: Fraction
    argmins: list[int]
    argmaxes: list[int]
    b_quarter_min: Fraction
    b_quarter_max: Fraction
    bound_check: CheckReport

    def to_dict(self) -> dict:
        return {
            "limit": self.limit,
            "min_ratio": str(self.min_ratio),
            "max_ratio": str(self.max_ratio),
            "argmins": self.argmins,
            "argmaxes": self.argmaxes,
            "b_quarter_min": str(self.b_quarter_min),
            "b_quarter_max": str(self.b_quarter_max),
            "b_bounds": self.bound_check.to_dict(),
        }


def _exact_extremes(num: np.ndarray, den: np.ndarray, idx: np.ndarray):
    # float prefilter, then exact comparison among the near-ties
    approx = num / den
    out = []
    for target in (approx.min(), approx.max()):
        cand = np.flatnonzero(np.abs(approx - target) <= 1e-9 * abs(target))
        exact = {int(idx[i]): Fraction(int(num[i]), int(den[i])) for i in cand}
        best = min(exact.values()) if target == approx.min() else max(exact.values())
        out.append((best, sorted(k for k, v in exact.items() if v == best)))
    return out


def density_scan(limit: int) -> DensitySummary:
    """Extremes of a_n / n^2 over 1 <= n < limit, and the bounds on b.

    Also checks 2/3 (k^2 + 2k) <= b_k <= 2 k^2 for 1 <= k < limit and reports
    the extremes of b_k / (4 k^2), which the a-ratio follows asymptotically.
    """
    if limit < 16:
        raise ValueError("limit must be at least 16")
    n = np.arange(1, limit, dtype=np.int64)
    a = seqgen.a_batch(limit)[1:]
    (lo, at_lo), (hi, at_hi) = _exact_extremes(a, n * n, n)
    b = seqgen.b_batch(limit)[1:]
    rep = CheckReport("b-bounds", limit)
    _report_mismatch(rep, n, np.ones(len(n), bool), b <= 2 * n * n, "b_k <= 2k^2")
    _report_mismatch(rep, n, np.ones(len(n), bool), 3 * b >= 2 * (n * n + 2 * n), "3 b_k >= 2(k^2+2k)")
    (blo, _), (bhi, _) = _exact_extremes(b, 4 * n * n, n)
    return DensitySummary(limit, lo, hi, at_lo, at_hi, blo, bhi, rep)


class GreedyResult(NamedTuple):
    n: int
    ratio: Fraction
    iterations: int
    trace: tuple[int, ...]


class NoConvergenceError(RuntimeError):
    def __init__(self, message: str, best: Fraction | None, best_n: int | None):
        super().__init__(message)
        self.best = best
        self.best_n = best_n


def _check_target(q: Fraction) -> Fraction:
    q = Fraction(q)
    if not Fraction(1, 6) < q < Fraction(1, 2):
        raise ValueError(f"target {q} must lie strictly between 1/6 and 1/2")
    return q


def density_greedy_trace(q: Fraction, steps: int) -> list[int]:
    """Iterates w_0 = 1, w_k in {2w+1, 2w} of the greedy that drives b_w/w^2 to 4q."""
    target = 4 * _check_target(q)
    w = [1]
    for _ in range(steps):
        nxt = 2 * w[-1] + 1
        w.append(nxt if target * nxt * nxt <= seqgen.b_seq(nxt) else nxt - 1)
    return w


def density_greedy(q: Fraction, tol: Fraction, max_iter: int = 60) -> GreedyResult:
    """First n = 4w + r (r in -1..2) along the greedy with |a_n/n^2 - q| < tol.

    The greedy works on b, whose ratio b_w/w^2 tends to 4q; a_{4w+r} = 4 b_w + r
    carries that over to a.  All comparisons are exact.
    """
    q = _check_target(q)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = 4 * q
    w = 1
    trace = [w]
    best, best_n = None, None
    for it in range(1, max_iter + 1):
        nxt = 2 * w + 1
        w = nxt if target * nxt * nxt <= seqgen.b_seq(nxt) else nxt - 1
        trace.append(w)
        for r in (0, -1, 1, 2):
            n = 4 * w + r
            ratio = Fraction(seqgen.a_seq(n), n * n)
            err = abs(ratio - q)
            if best is None or err < abs(best - q):
                best, best_n = ratio, n
            if err < tol:
                return GreedyResult(n, ratio, it, tuple(trace))
    raise NoConvergenceError(f"no n within {tol} of {q} after {max_iter} iterations", best, best_n)


# ---------------------------------------------------------------------------
# z


def z_window_check(m_lo: int = 2, m_hi: int = 7) -> CheckReport:
    """z_n = 0 on [4^m, floor(4^(m+1)/3)] for m_lo <= m <= m_hi."""
    if not 2 <= m_lo <= m_hi:
        raise ValueError("need 2 <= m_lo <= m_hi")
    top = 4 ** (m_hi + 1) // 3
    z = seqgen.z_batch(top + 1)
    rep = CheckReport("z-window", m_hi)
    for m in range(m_lo, m_hi + 1):
        lo, hi = 4 ** m, 4 ** (m + 1) // 3
        for n in np.flatnonzero(z[lo:hi + 1]):
            rep.fail(lo + int(n), 0, 1)
    return rep


def verify_z_char(limit: int) -> CheckReport:
    """z_n from u agrees with the sum-of-generators test for n < limit."""
    rep = CheckReport("z-char", limit)
    z = seqgen.z_batch(limit)
    for n in range(limit):
        pred = int(seqgen.z_char_pred(n))
        if pred != z[n]:
            rep.fail(n, pred, int(z[n]))
    return rep


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def divisor_witness(m: int) -> int:
    """An n divisible by m with z_n = 1.

    With m = 2^u (2v+1) and q = (u+1) phi(2v+1) + 1, the sum of the
    generators g_{i(q-1)+1}, i = 1..2v+1, is divisible by m.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    u = (m & -m).bit_length() - 1
    odd = m >> u
    q = (u + 1) * euler_phi(odd) + 1
    n = sum(seqgen.generator(i * (q - 1) + 1) for i in range(1, odd + 1))
    if n % m:
        raise ArithmeticError(f"witness for {m} is not divisible by it")
    if not seqgen.z_char_pred(n):
        raise ArithmeticError(f"witness for {m} is not a sum of distinct generators")
    return n


# ---------------------------------------------------------------------------
# the functional equation and its coefficient form


def printed_p_table(count: int) -> np.ndarray:
    """p_n = 1 for n = 0 or n = -1, 0, 1, 2 mod 8, else 0 (the tabulated form)."""
    n = np.arange(count)
    p = np.isin(n % 8, (7, 0, 1, 2)).astype(np.int64)
    if count:
        p[0] = 1
    return p


def convolution_check(limit: int, source: str = "expansion") -> CheckReport:
    """c_n = sum_k p_{n-4k} c_k for 3 <= n < limit.

    ``source`` picks the p_n: ``"expansion"`` expands the rational function,
    ``"printed"`` uses :func:`printed_p_table`.
    """
    if limit < 4:
        raise ValueError("limit must be at least 4")
    if source == "expansion":
        r = fps.rational_expand(fps.R_NUMERATOR, fps.R_DENOMINATOR, limit - 1)
        p = np.array([int(v) for v in r.coeffs], dtype=np.int64)
    elif source == "printed":
        p = printed_p_table(limit)
    else:
        raise ValueError("source must be 'expansion' or 'printed'")
    c = seqgen.iptm_batch(limit).astype(np.int64)
    conv = np.zeros(limit, dtype=np.int64)
    for k in np.flatnonzero(c[:(limit - 1) // 4 + 1]):
        conv[4 * k:] += c[k] * p[:limit - 4 * k]
    n = np.arange(3, limit)
    rep = CheckReport("convolution" if source == "expansion" else "convolution-printed", limit)
    _report_mismatch(rep, n, c[3:], conv[3:], "c_n")
    return rep


def zero_run_check(m_values: Sequence[int] = (2, 3, 4), count: int = 3) -> CheckReport:
    """Maximal zero runs of c ending before a_n, n = 2^(m+1) k + 2^m - 1.

    Each such run has exact length (4^m - 1)/3 - 1 = (4^m - 4)/3, one less
    than the gap a_n - a_{n-1}.
    """
    rep = CheckReport("zero-runs", max(m_values))
    for m in m_values:
        ns = [2 ** (m + 1) * k + 2 ** m - 1 for k in range(count)]
        top = seqgen.a_seq(ns[-1]) + 1
        c = seqgen.iptm_batch(top)
        want = (4 ** m - 4) // 3
        starts = set()
        for n in ns:
            end = seqgen.a_seq(n)
            start = end
            while start > 0 and c[start - 1] == 0:
                start -= 1
            if end - start != want:
                rep.fail(n, want, end - start)
            starts.add(start)
        if len(starts) != count:
            rep.fail(ns[0], f"{count} distinct runs", len(starts))
    return rep


def verify_functional(order: int) -> CheckReport:
    """C(X) = X(X+1) + R(X) C(X^4) over the rationals to the given order."""
    res = fps.functional_residual(order)
    rep = CheckReport("functional", order)
    for n, v in enumerate(res.coeffs):
        if v:
            rep.fail(n, 0, v)
    return rep


def verify_equations(order: int) -> CheckReport:
    """The algebraic equations of F and G have zero residual to the given order."""
    f = fps.ptm_series(order)
    g = fps.series_reverse(f)
    parts = []
    for name, poly, s in (("F quadratic", fps.PTM_EQUATION, f),
                          ("G cubic", fps.G_CUBIC_EQUATION, g),
                          ("G quartic", fps.G_QUARTIC_EQUATION, g)):
        rep = CheckReport(name, order)
        res = equation_nonzero = fps.equation_residual(poly, s)
        for n in np.flatnonzero(res.array())[:rep.max_failures]:
            rep.fail(int(n), 0, int(equation_nonzero[int(n)]))
        parts.append(rep)
    return merge("equations", order, parts)


def verify_reversion(order: int) -> CheckReport:
    """F(G) = G(F) = X for G the reversion of the Thue-Morse series."""
    f = fps.ptm_series(order)
    g = fps.series_reverse(f)
    x = fps.TruncatedSeries.x(order, 2)
    rep = CheckReport("reversion", order)
    for label, h in (("F(G)", fps.series_compose(f, g)), ("G(F)", fps.series_compose(g, f))):
        diff = (h - x).array()
        for n in np.flatnonzero(diff)[:rep.max_failures]:
            rep.fail(int(n), f"{label} coefficient {int(n == 1)}", int(h[int(n)]))
    return rep


def verify_automaton(limit: int, probe_limit: int = 1 << 12) -> CheckReport:
    """The five-state automaton vs the digit-test generator and vs a kernel-built DFAO."""
    c = seqgen.iptm_batch(max(limit, probe_limit * 4 ** 4))
    fig = figure1_dfao()
    gen = dfao_equiv(fig, lambda n: int(c[n]), limit, "figure1 vs generator")
    built = kernel_dfao(lambda n: int(c[n]), 4, probe_limit)
    ker = dfao_equiv(fig, built, limit, "figure1 vs kernel")
    return merge("automaton", limit, [gen, ker])
