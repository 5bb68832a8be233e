"""Finite groups as validated multiplication tables, plus the built-in catalog.

Element indices run from 0 to ``order - 1`` and index 0 is always the
identity.  For groups built from permutation generators the remaining
elements are sorted by their image arrays, so tables are reproducible
across runs.  The group operation for permutation-built groups is
``compose(p, q)`` ("apply p, then q") from :mod:`nilprob.perms`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NotAGroup, OrderExceeded, UnknownCatalogName
from .perms import Perm, identity_perm, perm_from_cycles, validate_perm

#: Largest group order for which a multiplication table may be built.
DEFAULT_ORDER_CAP = 4096

#: Orders up to this bound get an exhaustive associativity check (O(n^3)
#: table lookups); above it, a randomized spot check of 10*n^2 triples.
EXHAUSTIVE_ASSOC_LIMIT = 256

_SPOT_CHECK_SEED = 0x6E696C70  # fixed so validation is reproducible


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group as an immutable multiplication table.

    ``mul[a][b]`` is the index of the product, ``inv[a]`` the inverse,
    index 0 the identity.  ``table_hash`` is a content hash of the table
    (label excluded) used as a cache key.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    label: str
    table_hash: str

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:  # keep reprs short; tables can be huge
        return f"GroupTable({self.label!r}, order={self.order})"


def _hash_table(order: int, mul: Sequence[Sequence[int]]) -> str:
    h = hashlib.sha256()
    h.update(str(order).encode())
    for row in mul:
        h.update(b"|")
        h.update(",".join(map(str, row)).encode())
    return h.hexdigest()


def _check_associativity(mul_rows: list[list[int]], exhaustive: bool) -> None:
    n = len(mul_rows)
    m = np.asarray(mul_rows, dtype=np.int32)
    if exhaustive or n <= EXHAUSTIVE_ASSOC_LIMIT:
        # (a*b)*c on the left, a*(b*c) on the right, all triples at once.
        left = m[m, :]
        right = m[:, m]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            a, b, c = (int(x) for x in bad)
            raise NotAGroup("associativity", (a, b, c))
        return
    rng = np.random.Generator(np.random.PCG64(_SPOT_CHECK_SEED ^ n))
    remaining = 10 * n * n
    chunk = 1 << 20
    while remaining > 0:
        size = min(chunk, remaining)
        remaining -= size
        a = rng.integers(0, n, size=size)
        b = rng.integers(0, n, size=size)
        c = rng.integers(0, n, size=size)
        left = m[m[a, b], c]
        right = m[a, m[b, c]]
        if not np.array_equal(left, right):
            i = int(np.argwhere(left != right)[0][0])
            raise NotAGroup("associativity", (int(a[i]), int(b[i]), int(c[i])))


def build_from_table(
    n: int,
    mul: Sequence[Sequence[int]],
    label: str = "",
    *,
    force_exhaustive: bool = False,
) -> GroupTable:
    """Validate a multiplication table and return the group.

    The identity must sit at index 0.  Raises :class:`NotAGroup` with the
    violated law and a witness, or :class:`OrderExceeded` above the cap.
    """
    if n < 1:
        raise NotAGroup("identity", (), "order must be at least 1")
    if n > DEFAULT_ORDER_CAP:
        raise OrderExceeded(n, DEFAULT_ORDER_CAP)
    rows: list[list[int]] = []
    if len(mul) != n:
        raise NotAGroup("identity", (), f"table has {len(mul)} rows, order is {n}")
    for i, raw in enumerate(mul):
        row = [int(x) for x in raw]
        if len(row) != n:
            raise NotAGroup("identity", (i,), "row length differs from order")
        for x in row:
            if x < 0 or x >= n:
                raise NotAGroup("identity", (i, x), "entry out of range")
        rows.append(row)

    for g in range(n):
        if rows[0][g] != g:
            raise NotAGroup("identity", (0, g))
        if rows[g][0] != g:
            raise NotAGroup("identity", (g, 0))

    inv = [-1] * n
    for g in range(n):
        for h in range(n):
            if rows[g][h] == 0 and rows[h][g] == 0:
                inv[g] = h
                break
        if inv[g] < 0:
            raise NotAGroup("inverse", (g,))

    _check_associativity(rows, force_exhaustive)

    return GroupTable(
        order=n,
        mul=tuple(tuple(r) for r in rows),
        inv=tuple(inv),
        label=label or f"order-{n} group",
        table_hash=_hash_table(n, rows),
    )


def build_from_perm_gens(
    gens: Sequence[Sequence[int]],
    label: str = "",
    max_order: int = DEFAULT_ORDER_CAP,
) -> GroupTable:
    """Enumerate the closure of permutation generators and build its table.

    Elements are sorted by image array (which puts the identity first) and
    the table entry for (i, j) is the index of ``compose(p_i, p_j)``.
    Raises :class:`OrderExceeded` once the closure passes ``max_order``.
    """
    perms = [validate_perm(g) for g in gens]
    if not perms:
        raise ValueError("at least one generator is required")
    degree = len(perms[0])
    for p in perms:
        if len(p) != degree:
            raise ValueError("generators must share one degree")

    ident = tuple(identity_perm(degree))
    seen: set[tuple[int, ...]] = {ident}
    frontier: list[tuple[int, ...]] = [ident]
    gen_tuples = [tuple(p) for p in perms]
    while frontier:
        new: list[tuple[int, ...]] = []
        for p in frontier:
            for g in gen_tuples:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    new.append(q)
                    if len(seen) > max_order:
                        raise OrderExceeded(len(seen), max_order)
        frontier = new

    elements = sorted(seen)
    index = {p: i for i, p in enumerate(elements)}
    n = len(elements)
    mul = [[index[tuple(q[x] for x in p)] for q in elements] for p in elements]
    return build_from_table(n, mul, label or f"perm group of degree {degree}")


def direct_product(a: GroupTable, b: GroupTable, max_order: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Componentwise product; (g, h) gets index ``g * |b| + h``."""
    n = a.order * b.order
    if n > max_order:
        raise OrderExceeded(n, max_order)
    nb = b.order
    amul, bmul = a.mul, b.mul
    mul = [
        [amul[ga][gb] * nb + bmul[ha][hb] for gb in range(a.order) for hb in range(nb)]
        for ga in range(a.order)
        for ha in range(nb)
    ]
    return build_from_table(n, mul, f"{a.label}x{b.label}")


# -- catalog ------------------------------------------------------------------
#
# Every named group is defined by fixed permutation generators, so element
# orderings (and therefore every downstream report) are reproducible:
#
#   C(n)     n-cycle (0 1 .. n-1); C(1) is the trivial group on one point.
#   D(m)     dihedral of order m (m even): rotation (0 .. m/2-1) and the
#            reflection i -> -i mod m/2.  D(2) is <(0 1)>, D(4) is
#            <(0 1), (2 3)>.
#   Q8       alias for Dic(2).
#   Dic(n)   dicyclic of order 4n in its regular action on 4n points:
#            a cycles {0..2n-1} and {2n..4n-1}; b maps i -> 2n + (2n - i),
#            2n + i -> (n - i), indices mod 2n.
#   S(n)     <(0 1), (0 1 .. n-1)>, n <= 8.
#   A(n)     <(0 1 2), n-cycle (n odd) or (n-1)-cycle on 1..n-1 (n even)>,
#            n <= 8.
#   Heis(p)  unitriangular 3x3 matrices over F_p (p in {2, 3, 5}) acting on
#            the p^3 column vectors.
#   SL(2,3)  determinant-1 2x2 matrices over F_3 acting on the 9 vectors.
#
# Product expressions combine names with "x", e.g. "S(3)xS(3)"; the table
# is the direct_product of the factors, left-associated.


def _cyclic_gens(n: int) -> tuple[int, list[Perm]]:
    if n == 1:
        return 1, [identity_perm(1)]
    return n, [perm_from_cycles(n, [list(range(n))])]


def _dihedral_gens(order: int) -> tuple[int, list[Perm]]:
    if order % 2 != 0 or order < 2:
        raise UnknownCatalogName(f"dihedral order must be even and >= 2, got {order}")
    n = order // 2
    if n == 1:
        return 2, [perm_from_cycles(2, [[0, 1]])]
    if n == 2:
        return 4, [perm_from_cycles(4, [[0, 1]]), perm_from_cycles(4, [[2, 3]])]
    rot = perm_from_cycles(n, [list(range(n))])
    ref = [(n - i) % n for i in range(n)]
    return n, [rot, ref]


def _dicyclic_gens(n: int) -> tuple[int, list[Perm]]:
    if n < 1:
        raise UnknownCatalogName(f"dicyclic parameter must be >= 1, got {n}")
    m = 2 * n
    a = perm_from_cycles(4 * n, [list(range(m)), list(range(m, 2 * m))])
    b = [0] * (4 * n)
    for i in range(m):
        b[i] = m + (m - i) % m
        b[m + i] = (n - i) % m
    return 4 * n, [a, b]


def _symmetric_gens(n: int) -> tuple[int, list[Perm]]:
    if not 1 <= n <= 8:
        raise UnknownCatalogName(f"S(n) is provided for 1 <= n <= 8, got {n}")
    if n == 1:
        return 1, [identity_perm(1)]
    gens = [perm_from_cycles(n, [[0, 1]])]
    if n > 2:
        gens.append(perm_from_cycles(n, [list(range(n))]))
    return n, gens


def _alternating_gens(n: int) -> tuple[int, list[Perm]]:
    if not 1 <= n <= 8:
        raise UnknownCatalogName(f"A(n) is provided for 1 <= n <= 8, got {n}")
    if n <= 2:
        return max(n, 1), [identity_perm(max(n, 1))]
    if n == 3:
        return 3, [perm_from_cycles(3, [[0, 1, 2]])]
    gens = [perm_from_cycles(n, [[0, 1, 2]])]
    if n % 2 == 1:
        gens.append(perm_from_cycles(n, [list(range(n))]))
    else:
        gens.append(perm_from_cycles(n, [list(range(1, n))]))
    return n, gens


def _heisenberg_gens(p: int) -> tuple[int, list[Perm]]:
    if p not in (2, 3, 5):
        raise UnknownCatalogName(f"Heis(p) is provided for p in {{2, 3, 5}}, got {p}")

    def matrix_perm(m: list[list[int]]) -> Perm:
        out = [0] * (p ** 3)
        for v0 in range(p):
            for v1 in range(p):
                for v2 in range(p):
                    v = (v0, v1, v2)
                    w = [sum(m[r][c] * v[c] for c in range(3)) % p for r in range(3)]
                    out[v0 * p * p + v1 * p + v2] = w[0] * p * p + w[1] * p + w[2]
        return out

    x = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    y = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    return p ** 3, [matrix_perm(x), matrix_perm(y)]


def _sl23_gens() -> tuple[int, list[Perm]]:
    def matrix_perm(m: tuple[int, int, int, int]) -> Perm:
        out = [0] * 9
        for v0 in range(3):
            for v1 in range(3):
                w0 = (m[0] * v0 + m[1] * v1) % 3
                w1 = (m[2] * v0 + m[3] * v1) % 3
                out[3 * v0 + v1] = 3 * w0 + w1
        return out

    return 9, [matrix_perm((0, 2, 1, 0)), matrix_perm((1, 1, 0, 1))]


def _parse_int_arg(name: str, prefix: str) -> int:
    body = name[len(prefix) : -1]
    try:
        return int(body)
    except ValueError:
        raise UnknownCatalogName(f"bad argument in catalog name {name!r}") from None


def catalog_generators(name: str) -> tuple[int, list[Perm], str]:
    """Degree, permutation generators, and canonical label for a catalog name.

    Product expressions embed the factors on a disjoint union of points.
    """
    name = name.strip()
    if "x" in name:
        gens_out: list[Perm] = []
        labels = []
        parts = name.split("x")
        parts_data = [catalog_generators(part) for part in parts]
        total = sum(d for d, _, _ in parts_data)
        offset = 0
        for d, gens, lab in parts_data:
            for g in gens:
                embedded = list(range(total))
                for i, gi in enumerate(g):
                    embedded[offset + i] = offset + gi
                gens_out.append(embedded)
            labels.append(lab)
            offset += d
        return total, gens_out, "x".join(labels)

    if name.startswith("C(") and name.endswith(")"):
        degree, gens = _cyclic_gens(_parse_int_arg(name, "C("))
        return degree, gens, name
    if name.startswith("D(") and name.endswith(")"):
        degree, gens = _dihedral_gens(_parse_int_arg(name, "D("))
        return degree, gens, name
    if name == "Q8":
        degree, gens = _dicyclic_gens(2)
        return degree, gens, "Q8"
    if name.startswith("Dic(") and name.endswith(")"):
        degree, gens = _dicyclic_gens(_parse_int_arg(name, "Dic("))
        return degree, gens, name
    if name.startswith("S(") and name.endswith(")"):
        degree, gens = _symmetric_gens(_parse_int_arg(name, "S("))
        return degree, gens, name
    if name.startswith("A(") and name.endswith(")"):
        degree, gens = _alternating_gens(_parse_int_arg(name, "A("))
        return degree, gens, name
    if name.startswith("Heis(") and name.endswith(")"):
        degree, gens = _heisenberg_gens(_parse_int_arg(name, "Heis("))
        return degree, gens, name
    if name == "SL(2,3)":
        degree, gens = _sl23_gens()
        return degree, gens, name
    raise UnknownCatalogName(f"unknown catalog name {name!r}")


def catalog_get(name: str, max_order: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build the named catalog group (product expressions allowed)."""
    name = name.strip()
    if "x" in name:
        parts = name.split("x")
        table = catalog_get(parts[0], max_order)
        for part in parts[1:]:
            table = direct_product(table, catalog_get(part, max_order), max_order)
        return table
    _, gens, label = catalog_generators(name)
    return build_from_perm_gens(gens, label, max_order)


def catalog_base_names(max_order: Optional[int] = None) -> list[str]:
    """All non-product catalog names, optionally capped by group order."""
    names: list[tuple[int, str]] = []
    names += [(n, f"C({n})") for n in range(1, 65)]
    names += [(m, f"D({m})") for m in range(2, 65, 2)]
    names.append((8, "Q8"))
    names += [(4 * n, f"Dic({n})") for n in range(1, 17)]
    facts = [1, 2, 6, 24, 120, 720, 5040, 40320]
    names += [(facts[n - 1], f"S({n})") for n in range(1, 9)]
    alt = [1, 1, 3, 12, 60, 360, 2520, 20160]
    names += [(alt[n - 1], f"A({n})") for n in range(1, 9)]
    names += [(p ** 3, f"Heis({p})") for p in (2, 3, 5)]
    names.append((24, "SL(2,3)"))
    if max_order is not None:
        names = [(o, n) for o, n in names if o <= max_order]
    return [n for _, n in sorted(names, key=lambda t: (t[0], t[1]))]


# -- group-definition JSON ----------------------------------------------------

def group_from_definition(obj: dict, max_order: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build a group from a definition document.

    The document is ``{"label": str, "kind": ..., <payload>}`` with kinds
    ``mul_table`` ("mul": row-major matrix), ``perm_gens`` ("gens": list of
    image arrays), ``product`` ("factors": list of nested definitions) and
    ``catalog`` ("name": catalog key).
    """
    if not isinstance(obj, dict):
        raise ValueError("group definition must be a JSON object")
    kind = obj.get("kind")
    label = obj.get("label", "")
    if kind == "mul_table":
        mul = obj["mul"]
        return build_from_table(len(mul), mul, label)
    if kind == "perm_gens":
        return build_from_perm_gens(obj["gens"], label, max_order)
    if kind == "product":
        factors = [group_from_definition(f, max_order) for f in obj["factors"]]
        if not factors:
            raise ValueError("product definition needs at least one factor")
        table = factors[0]
        for f in factors[1:]:
            table = direct_product(table, f, max_order)
        if label:
            table = GroupTable(table.order, table.mul, table.inv, label, table.table_hash)
        return table
    if kind == "catalog":
        table = catalog_get(obj["name"], max_order)
        if label:
            table = GroupTable(table.order, table.mul, table.inv, label, table.table_hash)
        return table
    raise ValueError(f"unknown group definition kind {kind!r}")


def group_to_definition(g: GroupTable) -> dict:
    """A ``mul_table`` definition that reconstructs the identical table."""
    return {
        "label": g.label,
        "kind": "mul_table",
        "mul": [list(row) for row in g.mul],
    }
