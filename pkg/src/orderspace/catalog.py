"""Small named groups and quandles, plus exhaustive table corpora.

Permutations compose as functions: (p * q)(i) = p(q(i)).
"""

from __future__ import annotations

import itertools

from .magma import (
    FiniteGroup,
    Magma,
    MagmaError,
    Quandle,
    check_quandle,
    kei_quandle,
    trivial_quandle,
)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on permutation tuples in lexicographic order; practical n <= 4."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    rows = []
    for p in perms:
        rows.append([index[tuple(p[q[i]] for i in range(n))] for q in perms])
    return FiniteGroup(rows)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element s*n + r is flip^s rot^r."""
    if n < 1:
        raise MagmaError("dihedral index must be positive")
    size = 2 * n

    def mul(x, y):
        s1, r1 = divmod(x, n)
        s2, r2 = divmod(y, n)
        r = (r2 + (r1 if s2 == 0 else -r1)) % n
        return ((s1 + s2) % 2) * n + r

    return FiniteGroup([[mul(a, b) for b in range(size)] for a in range(size)])


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1,-1,i,-i,j,-j,k,-k in that order."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {
        ("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "i"): "-k",
        ("j", "k"): "i", ("k", "j"): "-i",
        ("k", "i"): "j", ("i", "k"): "-j",
    }

    def split(x):
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def mul(x, y):
        sx, ux = split(x)
        sy, uy = split(y)
        if ux == "1":
            prod = uy
        elif uy == "1":
            prod = ux
        else:
            prod = base[(ux, uy)]
        sp, up = split(prod)
        sign = sx * sy * sp
        return up if sign == 1 else "-" + up

    index = {nm: i for i, nm in enumerate(names)}
    return FiniteGroup([[index[mul(a, b)] for b in names] for a in names])


def direct_product_group(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    ng, nh = g.size, h.size

    def mul(x, y):
        xg, xh = divmod(x, nh)
        yg, yh = divmod(y, nh)
        return g.table[xg][yg] * nh + h.table[xh][yh]

    return FiniteGroup([[mul(a, b) for b in range(ng * nh)] for a in range(ng * nh)])


def group_corpus(max_order: int = 8) -> list[tuple[str, FiniteGroup]]:
    """One representative per isomorphism class of order <= max_order
    (complete for max_order <= 8)."""
    candidates = [
        ("C1", cyclic_group(1)),
        ("C2", cyclic_group(2)),
        ("C3", cyclic_group(3)),
        ("C4", cyclic_group(4)),
        ("C2xC2", direct_product_group(cyclic_group(2), cyclic_group(2))),
        ("C5", cyclic_group(5)),
        ("C6", cyclic_group(6)),
        ("S3", symmetric_group(3)),
        ("C7", cyclic_group(7)),
        ("C8", cyclic_group(8)),
        ("C2xC4", direct_product_group(cyclic_group(2), cyclic_group(4))),
        ("C2xC2xC2", direct_product_group(cyclic_group(2), direct_product_group(cyclic_group(2), cyclic_group(2)))),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group()),
    ]
    return [(name, g) for name, g in candidates if g.size <= max_order]


def alexander_quandle(m: int, t: int) -> Quandle:
    """a*b = t*a + (1-t)*b mod m; a quandle whenever t is a unit mod m."""
    return Quandle([[(t * a + (1 - t) * b) % m for b in range(m)] for a in range(m)])


def quandle_corpus() -> list[tuple[str, Quandle]]:
    """Named quandles of size <= 6 used across the test suite."""
    from .magma import conj_quandle

    return [
        ("trivial1", trivial_quandle(1)),
        ("trivial2", trivial_quandle(2)),
        ("trivial3", trivial_quandle(3)),
        ("trivial4", trivial_quandle(4)),
        ("trivial5", trivial_quandle(5)),
        ("kei_Z3", kei_quandle(cyclic_group(3))),
        ("kei_Z4", kei_quandle(cyclic_group(4))),
        ("kei_Z5", kei_quandle(cyclic_group(5))),
        ("alexander_5_2", alexander_quandle(5, 2)),
        ("alexander_5_3", alexander_quandle(5, 3)),
        ("conj_S3", conj_quandle(symmetric_group(3))),
    ]


def all_magmas(n: int):
    """Every operation table on n elements; practical for n <= 3."""
    cells = n * n
    for values in itertools.product(range(n), repeat=cells):
        yield Magma([values[i * n : (i + 1) * n] for i in range(n)])


def all_quandles(n: int) -> list[Quandle]:
    """Every labeled quandle table on n elements; practical for n <= 4.

    Columns are exactly the permutations fixing their own index, so the
    search space is (n-1)!^n tables filtered by right distributivity.
    """
    column_choices = []
    for b in range(n):
        perms = []
        for p in itertools.permutations(x for x in range(n) if x != b):
            col = list(p[:b]) + [b] + list(p[b:])
            perms.append(col)
        column_choices.append(perms)
    out = []
    for cols in itertools.product(*column_choices):
        rows = [[cols[b][a] for b in range(n)] for a in range(n)]
        m = Magma(rows)
        if check_quandle(m).ok:
            out.append(Quandle(rows))
    return out


def canonical_form(m: Magma) -> tuple:
    """Smallest relabeling of the table; equal forms mean isomorphic."""
    n = m.size
    best = None
    for p in itertools.permutations(range(n)):
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        relabeled = tuple(
            tuple(p[m.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n)
        )
        if best is None or relabeled < best:
            best = relabeled
    return best


def quandle_classes(n: int) -> list[Quandle]:
    """One representative per isomorphism class of labeled quandles on n
    elements, in canonical-form order."""
    reps = {}
    for q in all_quandles(n):
        reps.setdefault(canonical_form(q), q)
    return [Quandle(form) for form in sorted(reps)]
