"""Exhaustive enumeration of valid canonical data sets of a given genus.

Two independent engines produce the same sets:

* `enumerate_sp` / `enumerate_se` prune hard: the order loop is capped by
  the proven bounds (n <= 4g side-preserving, 2n <= 4g+2 side-exchanging),
  cone signatures are solved from the genus identity, the exponent l is
  solved from the twist relation, and the final cone twist is solved from
  the residue sum.  Only tuples that are valid by construction are built.

* `enumerate_oracle` prunes nothing it can avoid: it walks every order in
  the same hard range, every admissible quotient genus, every divisor
  multiset within the weight-derived size cap, every unit residue tuple
  and every exponent, keeping whatever validates at the requested genus.
  It is deliberately slow and refuses genus above its bound.

Output contract shared by both: canonical data sets only, no duplicates,
sorted by (order, l, g0, residues, cones).  Enumeration may be sharded
over the order variable (`jobs`); shards share nothing and the merge
sorts, so the result is identical for every schedule.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from functools import partial
from itertools import combinations_with_replacement, product
from math import gcd

from .arith import cone_signatures, divisors, units_mod
from .datasets import (
    ConePair,
    SeDataSet,
    SpDataSet,
    se_genus_if_valid,
    sp_genus_if_valid,
)

# The naive engine is quadratic-ish in everything; keep it on a leash.
ORACLE_MAX_GENUS = 8

# Cap for the spectra table; the search above this is still exact, just slow.
SPECTRA_MAX_GENUS = 64


class OracleBoundError(ValueError):
    """Raised when the naive enumerator is asked for a genus above its bound."""


@dataclass(frozen=True)
class Filters:
    """Enumeration filters.

    `kind` is dispatch information for callers that handle both families;
    the enumerators themselves ignore it.  `exponent` is an unreduced
    (l, order) pair, where order means n for side-preserving sets and 2n
    for side-exchanging ones.
    """

    kind: str = "both"
    essential_only: bool = False
    exponent: tuple[int, int] | None = None
    g0: int | None = None
    cone_count: int | None = None

    def __post_init__(self):
        if self.kind not in ("sp", "se", "both"):
            raise ValueError(f"kind must be 'sp', 'se' or 'both', got {self.kind!r}")
        if self.exponent is not None and self.exponent[1] < 2:
            raise ValueError(f"exponent order must be >= 2, got {self.exponent[1]}")


@dataclass(frozen=True)
class SpectraRow:
    """Exponent/class counts of essential fractional powers at one genus."""

    genus_plus_one: int
    e_sp: int
    e_se: int
    n_sp: int
    n_se: int


def _k_assignments(ambient: int, signature, residual: int):
    """Canonical twist assignments for the cones of one signature.

    Yields tuples of (twist, order) pairs, ascending by (order, twist),
    each a unit in its order, satisfying

        sum (ambient/order) * twist = residual  (mod ambient).

    All cones but the last are enumerated (non-decreasing within runs of
    equal order); the last twist is solved from the congruence, which
    pins each canonical assignment exactly once.
    """
    if not signature:
        if residual % ambient == 0:
            yield ()
        return

    runs: list[list[int]] = []
    for order in signature:
        if runs and runs[-1][0] == order:
            runs[-1][1] += 1
        else:
            runs.append([order, 1])
    last_order, last_count = runs[-1]
    prefix_runs = [(order, count) for order, count in runs[:-1]]
    if last_count > 1:
        prefix_runs.append((last_order, last_count - 1))

    unit_lists = {order: sorted(units_mod(order)) for order, _ in runs}
    prefix_choices = [
        combinations_with_replacement(unit_lists[order], count)
        for order, count in prefix_runs
    ]
    cofactor = ambient // last_order

    for combo in product(*prefix_choices):
        partial_sum = 0
        flat: list[tuple[int, int]] = []
        for (order, _), twists in zip(prefix_runs, combo):
            step = ambient // order
            for k in twists:
                partial_sum += step * k
                flat.append((k, order))
        remainder = (residual - partial_sum) % ambient
        if remainder % cofactor:
            continue
        k_last = remainder // cofactor
        if gcd(k_last, last_order) != 1:
            continue
        if last_count > 1 and k_last < flat[-1][0]:
            continue
        yield tuple(flat) + ((k_last, last_order),)


def _sp_order_sets(g: int, f: Filters, n: int) -> list[SpDataSet]:
    """All valid canonical side-preserving sets of genus g with this order."""
    out: list[SpDataSet] = []
    if f.exponent is not None and f.exponent[1] != n:
        return out
    units = sorted(units_mod(n))
    inverse = {u: pow(u, -1, n) for u in units}
    for g0 in range(g // n + 1):
        if f.g0 is not None and g0 != f.g0:
            continue
        if f.essential_only and g0 > 0:
            break
        target = 2 * (g - g0 * n)
        if target <= 0:
            continue  # a valid set has at least one cone
        for sig in sorted(cone_signatures(n, target)):
            if not sig:
                continue
            if f.essential_only and len(sig) != 1:
                continue
            if f.cone_count is not None and len(sig) != f.cone_count:
                continue
            for i, a in enumerate(units):
                for b in units[i:]:
                    # twist relation a+b = l*a*b fixes the exponent
                    l = (a + b) * inverse[a] * inverse[b] % n
                    if l == 0:
                        continue
                    if f.exponent is not None and l != f.exponent[0]:
                        continue
                    residual = (-(a + b)) % n
                    for cones in _k_assignments(n, sig, residual):
                        out.append(SpDataSet(
                            l, n, g0, a, b,
                            tuple(ConePair(k, m) for k, m in cones)))
    return out


def _se_order_sets(g: int, f: Filters, two_n: int) -> list[SeDataSet]:
    """All valid canonical side-exchanging sets of genus g with this order."""
    out: list[SeDataSet] = []
    if f.exponent is not None and f.exponent[1] != two_n:
        return out
    n = two_n // 2
    units_n = sorted(units_mod(n))
    for g0 in range((g + n) // (2 * n) + 1):
        if f.g0 is not None and g0 != f.g0:
            continue
        if f.essential_only and g0 > 0:
            break
        target = 2 * (g + n) - 4 * g0 * n  # = sum (2n/m)(m-1)
        if target <= 0:
            continue
        for sig in sorted(cone_signatures(two_n, target)):
            if not sig:
                continue
            if f.essential_only and len(sig) != 2:
                continue
            if f.cone_count is not None and len(sig) != f.cone_count:
                continue
            if g0 == 0 and all((two_n // m) % 2 == 0 for m in sig):
                # Every residue the tuple records lies in the index-two
                # subgroup: nothing generates, no assignment can be valid.
                continue
            for a in units_n:
                exponents = []
                base = 2 * pow(a, -1, n) % n
                for l in (base, base + n):
                    if 2 <= l <= two_n - 1:
                        if f.exponent is None or l == f.exponent[0]:
                            exponents.append(l)
                if not exponents:
                    continue
                residual = (-2 * a) % two_n
                for cones in _k_assignments(two_n, sig, residual):
                    pairs = tuple(ConePair(k, m) for k, m in cones)
                    for l in exponents:
                        out.append(SeDataSet(l, two_n, g0, a, pairs))
    return out


def _map_orders(worker, g: int, f: Filters, orders, jobs: int) -> list:
    order_list = list(orders)
    if jobs > 1 and len(order_list) > 1:
        try:
            with multiprocessing.Pool(min(jobs, len(order_list))) as pool:
                chunks = pool.map(partial(worker, g, f), order_list)
        except OSError:
            # Restricted environments may deny semaphores; keep going.
            chunks = [worker(g, f, n) for n in order_list]
    else:
        chunks = [worker(g, f, n) for n in order_list]
    return [d for chunk in chunks for d in chunk]


def enumerate_sp(g: int, filters: Filters | None = None, jobs: int = 1) -> list[SpDataSet]:
    """All valid canonical side-preserving data sets of genus g, sorted."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    f = filters if filters is not None else Filters()
    out = _map_orders(_sp_order_sets, g, f, range(2, 4 * g + 1), jobs)
    out.sort(key=SpDataSet.sort_key)
    return out


def enumerate_se(g: int, filters: Filters | None = None, jobs: int = 1) -> list[SeDataSet]:
    """All valid canonical side-exchanging data sets of genus g, sorted."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    f = filters if filters is not None else Filters()
    out = _map_orders(_se_order_sets, g, f, range(4, 4 * g + 3, 2), jobs)
    out.sort(key=SeDataSet.sort_key)
    return out


def _oracle_sp(g: int) -> list[SpDataSet]:
    out = []
    for n in range(2, 4 * g + 1):
        units = sorted(units_mod(n))
        pair_choices = [(a, b) for i, a in enumerate(units) for b in units[i:]]
        parts = [m for m in divisors(n) if m > 1]
        size_cap = (2 * g) // max(1, n // 2)  # every cone weighs >= n/2 >= 1
        unit_lists = {m: sorted(units_mod(m)) for m in parts}
        for g0 in range(g // n + 1):
            for size in range(size_cap + 1):
                for sig in combinations_with_replacement(parts, size):
                    for cones in _oracle_twists(sig, unit_lists):
                        for l in range(1, n):
                            for a, b in pair_choices:
                                if sp_genus_if_valid(l, n, g0, a, b, cones) == g:
                                    out.append(SpDataSet(
                                        l, n, g0, a, b,
                                        tuple(ConePair(k, m) for k, m in cones)))
    return out


def _oracle_se(g: int) -> list[SeDataSet]:
    out = []
    for two_n in range(4, 4 * g + 3, 2):
        n = two_n // 2
        units_n = sorted(units_mod(n))
        parts = [m for m in divisors(two_n) if m > 1]
        size_cap = (2 * (g + n)) // max(1, n)  # every cone weighs >= n/2
        unit_lists = {m: sorted(units_mod(m)) for m in parts}
        for g0 in range((g + n) // (2 * n) + 1):
            for size in range(size_cap + 1):
                for sig in combinations_with_replacement(parts, size):
                    for cones in _oracle_twists(sig, unit_lists):
                        for l in range(2, two_n):
                            for a in units_n:
                                if se_genus_if_valid(l, two_n, g0, a, cones) == g:
                                    out.append(SeDataSet(
                                        l, two_n, g0, a,
                                        tuple(ConePair(k, m) for k, m in cones)))
    return out


def _oracle_twists(signature, unit_lists):
    """Every canonical unit-twist assignment for a signature, unfiltered."""
    runs: list[list[int]] = []
    for order in signature:
        if runs and runs[-1][0] == order:
            runs[-1][1] += 1
        else:
            runs.append([order, 1])
    run_choices = [
        combinations_with_replacement(unit_lists[order], count)
        for order, count in runs
    ]
    for combo in product(*run_choices):
        flat: list[tuple[int, int]] = []
        for (order, _), twists in zip(runs, combo):
            flat.extend((k, order) for k in twists)
        yield tuple(flat)


def enumerate_oracle(g: int, kind: str,
                     max_genus: int = ORACLE_MAX_GENUS) -> list:
    """Naive re-enumeration for cross-checking; refuses large genus."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if g > max_genus:
        raise OracleBoundError(
            f"oracle enumeration is bounded to genus <= {max_genus}, got {g}")
    if kind == "sp":
        out = _oracle_sp(g)
        out.sort(key=SpDataSet.sort_key)
    elif kind == "se":
        out = _oracle_se(g)
        out.sort(key=SeDataSet.sort_key)
    else:
        raise ValueError(f"kind must be 'sp' or 'se', got {kind!r}")
    return out


def spectra(g: int, jobs: int = 1) -> SpectraRow:
    """Exponent and class counts of the essential data sets of genus g."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    essential = Filters(essential_only=True)
    sp = enumerate_sp(g, essential, jobs=jobs)
    se = enumerate_se(g, essential, jobs=jobs)
    return SpectraRow(
        genus_plus_one=g + 1,
        e_sp=len({d.exponent for d in sp}),
        e_se=len({d.exponent for d in se}),
        n_sp=len(sp),
        n_se=len(se),
    )
