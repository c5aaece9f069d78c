"""Analytic bounds on the upper directed p-domination number.

Upper bounds come from the greedy partition argument; the lower bound comes
from the first-moment count of small dominating sets in a uniformly random
orientation, certified with exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .coloring import Coloring
from .hypergraph import Hypergraph, induced_subhypergraph, to_mask
from .orientation import check_prefix_length

# working precision (bits) of the bracketing pass in first_moment_certifies
_BRACKET_BITS = 256


@dataclass
class BoundReport:
    name: str
    kind: str  # "upper" or "lower"
    value: float
    certified: bool
    parameters: dict = field(default_factory=dict)


def _check_nr(n: int, r: int) -> None:
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")


def upper_bound_thm2i(n: int, r: int) -> float:
    """r(1 + ln(n + (r-1)^2)), a strict upper bound for H(n, r) and every p."""
    _check_nr(n, r)
    return r * (1 + math.log(n + (r - 1) ** 2))


def gpl_closed_form(n: int, r: int, t: int | None = None) -> float:
    """t + integral of r/(x + (r-1)^2) over [t, n]; t defaults to 2r - 1."""
    t = 2 * r - 1 if t is None else t
    if n < t:
        raise ValueError(f"need n >= t, got n={n}, t={t}")
    s = (r - 1) ** 2
    return t + r * math.log((n + s) / (t + s))


def gpl_integral_bound(f: Callable[[float], float], t: float, n: float, samples: int = 65) -> float:
    """t + integral of 1/f over [t, max(n, t)]."""
    hi = max(n, t)
    xs = np.linspace(t, hi, samples)
    vals = [f(x) for x in xs]
    if min(vals) <= 0:
        raise ValueError("f must be positive on [t, max(n, t)]")
    if hi == t:
        return float(t)
    area, _ = integrate.quad(lambda x: 1.0 / f(x), t, hi, epsabs=1e-9, epsrel=1e-12, limit=200)
    return t + area


def gpl_linear_f(r: int) -> Callable[[float], float]:
    """f(x) = (x + (r-1)^2) / r, the per-step removal guarantee for H(n, r)."""
    return lambda x: (x + (r - 1) ** 2) / r


def _log1mexp(x: float) -> float:
    """ln(1 - e^x) for x < 0."""
    if x > -math.log(2):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def first_moment_expectation_log(n: int, r: int, t: int) -> float:
    """ln E[x], x = number of directed (r-1)-dominating t-sets in a random
    orientation of H(n, r)."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if not r - 1 <= t <= n:
        raise ValueError(f"need r-1 <= t <= n, got t={t}, n={n}, r={r}")
    if t == n:
        return 0.0
    b = comb(t, r - 1)
    return math.log(comb(n, t)) + (n - t) * _log1mexp(b * math.log((r - 1) / r))


@dataclass(frozen=True)
class FirstMomentCertificate:
    """C(n,t) * (r^B - (r-1)^B)^(n-t) < r^(B(n-t)) with B = C(t, r-1),
    which is E[x] < 1 with denominators cleared."""

    n: int
    r: int
    t: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    def verify(self) -> bool:
        """Recompute both sides from (n, r, t) and compare."""
        lhs, rhs = _certificate_sides(self.n, self.r, self.t)
        return lhs == self.lhs and rhs == self.rhs and lhs < rhs


def _certificate_sides(n: int, r: int, t: int) -> tuple[int, int]:
    b = comb(t, r - 1)
    k = n - t
    return comb(n, t) * (r**b - (r - 1) ** b) ** k, r ** (b * k)


def first_moment_certificate(n: int, r: int, t: int) -> FirstMomentCertificate:
    if r < 2 or not r - 1 <= t <= n:
        raise ValueError(f"need r >= 2 and r-1 <= t <= n, got n={n}, r={r}, t={t}")
    lhs, rhs = _certificate_sides(n, r, t)
    return FirstMomentCertificate(n, r, t, lhs, rhs)


def _trunc(m: int, e: int, up: bool) -> tuple[int, int]:
    extra = m.bit_length() - _BRACKET_BITS
    if extra <= 0:
        return m, e
    q = m >> extra
    if up and q << extra != m:
        q += 1
    return q, e + extra


def _pow_bracket(base: int, k: int, up: bool) -> tuple[int, int]:
    """(m, e) with m * 2^e <= base^k (up=False) or >= base^k (up=True)."""
    acc = (1, 0)
    sq = _trunc(base, 0, up)
    while k:
        if k & 1:
            acc = _trunc(acc[0] * sq[0], acc[1] + sq[1], up)
        k >>= 1
        if k:
            sq = _trunc(sq[0] * sq[0], 2 * sq[1], up)
    return acc


def _less(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (am, ae), (bm, be) = a, b
    if ae >= be:
        return am << (ae - be) < bm
    return am < bm << (be - ae)


def first_moment_certifies(n: int, r: int, t: int) -> bool:
    """Exact decision of E[x] < 1.

    Both sides are first bracketed by integer mantissa/exponent pairs rounded
    outward, which settles every case except near-equality; those fall back to
    the full-width integer comparison.
    """
    if r < 2 or not r - 1 <= t <= n:
        raise ValueError(f"need r >= 2 and r-1 <= t <= n, got n={n}, r={r}, t={t}")
    if t == n:
        return False
    b = comb(t, r - 1)
    k = n - t
    c = comb(n, t)
    a = r**b - (r - 1) ** b
    a_hi = _pow_bracket(a, k, up=True)
    a_lo = _pow_bracket(a, k, up=False)
    rhs_lo = _pow_bracket(r**b, k, up=False)
    rhs_hi = _pow_bracket(r**b, k, up=True)
    if _less((c * a_hi[0], a_hi[1]), rhs_lo):
        return True
    if not _less((c * a_lo[0], a_lo[1]), rhs_hi):
        return False
    return first_moment_certificate(n, r, t).holds


def first_moment_lower_bound(n: int, r: int) -> tuple[int, FirstMomentCertificate] | None:
    """Largest t with a certified E[x] < 1, with its full certificate.

    Then some orientation of H(n, r) has no directed (r-1)-dominating set of
    size <= t, so its upper (r-1)-domination number is at least t + 1.
    """
    _check_nr(n, r)
    top = min(n, math.ceil(upper_bound_thm2i(n, r)))
    t_star = None
    for t in range(r - 1, top + 1):
        if first_moment_certifies(n, r, t):
            t_star = t
    if t_star is None:
        return None
    cert = first_moment_certificate(n, r, t_star)
    assert cert.holds
    return t_star, cert


def certified_lower(n: int, r: int) -> int | None:
    found = first_moment_lower_bound(n, r)
    return None if found is None else found[0] + 1


def asymptotic_lower_constant(r: int) -> float:
    """c(r) = ((r-1)/e) * (2 ln(r/(r-1)))^(-1/(r-1)); informational only."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    return (r - 1) / math.e * (2 * math.log(r / (r - 1))) ** (-1 / (r - 1))


def asymptotic_lower_value(n: int, r: int) -> float:
    return asymptotic_lower_constant(r) * math.log(n) ** (1 / (r - 1))


def cover_bound(
    h: Hypergraph,
    cover: Sequence[Sequence[int]],
    p: int,
    per_part_bound: Callable[[Hypergraph, int], float] | None = None,
) -> float:
    """Sum of per-part bounds over the induced subhypergraphs of a cover.

    With exact per-part values this bounds the upper p-domination number of
    ``h`` from above, since a union of part dominating sets dominates ``h``.
    """
    check_prefix_length(h, p)
    covered = set()
    for part in cover:
        covered.update(part)
    if covered != set(range(h.n)):
        raise ValueError("the parts do not cover every vertex")
    if per_part_bound is None:
        from .extremal import gamma_upper_exact

        def per_part_bound(sub, p):
            return gamma_upper_exact(sub, p).value

    return sum(per_part_bound(induced_subhypergraph(h, part), p) for part in cover)


def _proper_for_complement(h: Hypergraph, coloring: Coloring) -> bool:
    """Every class of size >= r spans only edges of ``h``.

    Counting the edges inside each class avoids building the complement.
    """
    if len(coloring.assignment) != h.n:
        raise ValueError(f"coloring has {len(coloring.assignment)} entries for {h.n} vertices")
    if h.is_complete():
        return True
    for cls in coloring.classes():
        if len(cls) < h.r:
            continue
        cmask = to_mask(cls)
        inside = sum(1 for em in h.edge_masks if em & ~cmask == 0)
        if inside != comb(len(cls), h.r):
            return False
    return True


def chi_bound_thm3(h: Hypergraph, coloring: Coloring, p: int) -> tuple[float, float]:
    """(sum form, Jensen form) of the complement-coloring upper bound.

    ``coloring`` must be a proper coloring of the complement of ``h``; its
    classes are then cliques of ``h`` or smaller than r.
    """
    check_prefix_length(h, p)
    if not _proper_for_complement(h, coloring):
        raise ValueError("coloring is not proper for the complement hypergraph")
    r = h.r
    s = (r - 1) ** 2
    sizes = [len(c) for c in coloring.classes()]
    k = len(sizes)
    sum_form = sum(r * (1 + math.log(q + s)) for q in sizes)
    jensen_form = r * k * (1 + math.log(h.n / k + s)) if k else 0.0
    return sum_form, jensen_form


def bound_reports(n: int, r: int) -> list[BoundReport]:
    params = {"n": n, "r": r}
    out = [
        BoundReport("greedy_partition_upper", "upper", upper_bound_thm2i(n, r), True,
                    dict(params, p="all")),
    ]
    if n >= 2 * r - 1:
        out.append(BoundReport("greedy_partition_closed_form", "upper", gpl_closed_form(n, r),
                               True, dict(params, p="all", t=2 * r - 1)))
    found = first_moment_lower_bound(n, r)
    if found is not None:
        t_star, cert = found
        out.append(BoundReport("first_moment_lower", "lower", t_star + 1, True,
                               dict(params, p=r - 1, t=t_star,
                                    lhs_bits=cert.lhs.bit_length(),
                                    rhs_bits=cert.rhs.bit_length())))
    out.append(BoundReport("asymptotic_lower_informational", "lower",
                           asymptotic_lower_value(n, r), False, dict(params, p=r - 1)))
    return out


def bounds_row(n: int, r: int) -> dict:
    """One row of the bounds table."""
    found = first_moment_lower_bound(n, r)
    return {
        "n": n,
        "r": r,
        "thm2i_upper": upper_bound_thm2i(n, r),
        "gpl_closed": gpl_closed_form(n, r) if n >= 2 * r - 1 else None,
        "t_star": None if found is None else found[0],
        "certified_lower": None if found is None else found[0] + 1,
        "c_ln_n_informational": asymptotic_lower_value(n, r),
    }
