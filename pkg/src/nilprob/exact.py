"""Exact nilpotence probabilities.

Everything here is integer counting over a multiplication table, reduced
to a ``fractions.Fraction`` at the end; no floating point enters any
probability.  Two evaluation routes are provided:

* ``np_bruteforce`` enumerates all |H|^(k+1) tuples and is the oracle.
* ``np_fast`` runs a stage-by-stage dynamic program over the distribution
  of partial left-normed commutators: W_1 counts the elements of the coset
  x_1 H, W_{m+1}(c) sums W_m(w) over pairs with [w, x_{m+1} y] = c, and
  the final stage counts, for each accumulated commutator w, the y with
  x_{k+1} y centralizing w.  Total work is O(k |G| |H|) table lookups.

Both count the tuples (y_1, .., y_{k+1}) in H^(k+1) whose shifted
left-normed commutator [x_1 y_1, .., x_{k+1} y_{k+1}] is the identity.
The value depends on each shift x_i only through its left coset x_i H, so
suprema over shifts are taken over canonical (least-index) coset
representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import BudgetExceeded, EmptyInput
from .groups import GroupTable
from .structure import SubgroupRef, left_coset_reps, whole_group

#: Iteration budget for the brute-force oracle (|H|^(k+1) tuples).
DEFAULT_TUPLE_BUDGET = 10 ** 9

#: Budget for suprema over shift tuples ([G:H]^(k+1) evaluations).
DEFAULT_SHIFT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class NpResult:
    """An exact probability together with the counts behind it."""

    value: Fraction
    method: str
    counted_tuples: int
    total_tuples: int

    def to_json(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "method": self.method,
            "counted": self.counted_tuples,
            "total": self.total_tuples,
        }


def _check_shifts(g: GroupTable, shifts: Sequence[int]) -> tuple[int, ...]:
    if len(shifts) < 1:
        raise EmptyInput("at least one shift coordinate is required")
    out = tuple(int(x) for x in shifts)
    for x in out:
        if not 0 <= x < g.order:
            raise ValueError(f"shift {x} out of range for order {g.order}")
    return out


def identity_shifts(k: int) -> tuple[int, ...]:
    return (0,) * (k + 1)


def np_bruteforce(
    g: GroupTable,
    h: SubgroupRef,
    shifts: Sequence[int],
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> NpResult:
    """Exhaustive count of commutator-trivial shifted tuples.

    ``shifts`` has k+1 entries for the k-step probability; a single entry
    degenerates to counting y in H with x_1 y = 1.
    """
    shifts = _check_shifts(g, shifts)
    m = len(shifts)
    total = h.order ** m
    if total > budget:
        raise BudgetExceeded("brute-force tuple enumeration", total, budget)
    mul, inv = g.mul, g.inv
    elems = h.elements
    first = shifts[0]
    count = 0
    if m == 1:
        count = sum(1 for y in elems if mul[first][y] == 0)
    else:
        rest = shifts[1:]
        for ys in itertools.product(elems, repeat=m):
            w = mul[first][ys[0]]
            for x, y in zip(rest, ys[1:]):
                t = mul[x][y]
                # w = [w, t]
                w = mul[mul[mul[inv[w]][inv[t]]][w]][t]
            if w == 0:
                count += 1
    return NpResult(Fraction(count, total), "brute_force", count, total)


def _dp_count(
    mul: Sequence[Sequence[int]],
    inv: Sequence[int],
    cosets: Sequence[Sequence[int]],
) -> int:
    """Core DP: number of commutator-trivial selections, one per coset."""
    if len(cosets) == 1:
        return sum(1 for t in cosets[0] if t == 0)
    weights: dict[int, int] = dict.fromkeys(cosets[0], 1)
    for coset in cosets[1:-1]:
        nxt: dict[int, int] = {}
        for w, cnt in weights.items():
            row_wi = mul[inv[w]]
            for t in coset:
                c = mul[mul[row_wi[inv[t]]][w]][t]
                if c in nxt:
                    nxt[c] += cnt
                else:
                    nxt[c] = cnt
        weights = nxt
    last = cosets[-1]
    total = 0
    for w, cnt in weights.items():
        row_w = mul[w]
        hits = 0
        for t in last:
            if row_w[t] == mul[t][w]:
                hits += 1
        if hits:
            total += cnt * hits
    return total


def np_fast(
    g: GroupTable,
    h: SubgroupRef,
    shifts: Sequence[int],
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> NpResult:
    """Same value as ``np_bruteforce`` via the commutator-distribution DP."""
    shifts = _check_shifts(g, shifts)
    m = len(shifts)
    total = h.order ** m
    work = m * g.order * h.order
    if work > budget:
        raise BudgetExceeded("dynamic-program evaluation", work, budget)
    mul = g.mul
    cosets = [[mul[x][y] for y in h.elements] for x in shifts]
    count = _dp_count(mul, g.inv, cosets)
    return NpResult(Fraction(count, total), "dp", count, total)


def commutator_distribution(
    g: GroupTable,
    h: SubgroupRef,
    shifts: Sequence[int],
    m: int,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> dict[int, int]:
    """Counts W_m(c) of shifted m-tuples with left-normed commutator c.

    The counts always sum to |H|^m.
    """
    shifts = _check_shifts(g, shifts)
    if not 1 <= m <= len(shifts):
        raise ValueError(f"stage {m} needs at least {m} shifts")
    if m * g.order * h.order > budget:
        raise BudgetExceeded("commutator distribution", m * g.order * h.order, budget)
    mul, inv = g.mul, g.inv
    cosets = [[mul[x][y] for y in h.elements] for x in shifts[:m]]
    weights: dict[int, int] = dict.fromkeys(cosets[0], 1)
    for coset in cosets[1:]:
        nxt: dict[int, int] = {}
        for w, cnt in weights.items():
            row_wi = mul[inv[w]]
            for t in coset:
                c = mul[mul[row_wi[inv[t]]][w]][t]
                nxt[c] = nxt.get(c, 0) + cnt
        weights = nxt
    return weights


def np_k(g: GroupTable, k: int, budget: int = DEFAULT_TUPLE_BUDGET) -> NpResult:
    """Probability that k+1 uniform elements have trivial left-normed commutator."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return np_fast(g, whole_group(g), identity_shifts(k), budget)


def cp(g: GroupTable | SubgroupRef) -> Fraction:
    """Commuting probability: conjugacy classes over order.

    A subgroup is measured as a group in its own right.
    """
    from .structure import conjugacy_classes, subgroup_table

    if isinstance(g, SubgroupRef):
        if g.order == g.parent.order:
            table = g.parent
        else:
            table, _ = subgroup_table(g.parent, g)
    else:
        table = g
    return Fraction(conjugacy_classes(table).num_classes, table.order)


def iter_shift_values(
    g: GroupTable,
    h: SubgroupRef,
    k: int,
    budget: int = DEFAULT_SHIFT_BUDGET,
) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield (shift tuple, exact value) over all canonical coset-rep tuples.

    Tuples are produced in lexicographic order of representatives, which
    are the least indices of the left cosets of H.
    """
    reps = left_coset_reps(g, h)
    count = len(reps) ** (k + 1)
    if count > budget:
        raise BudgetExceeded("shift tuple enumeration", count, budget)
    mul, inv = g.mul, g.inv
    coset_of = {r: [mul[r][y] for y in h.elements] for r in reps}
    total = h.order ** (k + 1)
    for tup in itertools.product(reps, repeat=k + 1):
        cnt = _dp_count(mul, inv, [coset_of[r] for r in tup])
        yield tup, Fraction(cnt, total)


def np_sup(
    g: GroupTable,
    h: SubgroupRef,
    k: int,
    budget: int = DEFAULT_SHIFT_BUDGET,
) -> tuple[Fraction, tuple[int, ...]]:
    """Supremum of the shifted probability over all shift tuples.

    All k+1 coordinates are maximized over coset representatives; the
    witness is the lexicographically smallest maximizing tuple.  Stops
    early once the unbeatable value 1 is reached, which keeps the common
    nilpotent case (identity witness) cheap.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    best_val = Fraction(-1)
    best_tup: tuple[int, ...] = ()
    for tup, val in iter_shift_values(g, h, k, budget):
        if val > best_val:
            best_val, best_tup = val, tup
            if val == 1:
                break
    return best_val, best_tup
