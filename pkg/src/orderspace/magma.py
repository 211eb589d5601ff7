"""Finite magmas, groups given by multiplication tables, and quandles.

Elements are 0-based indices.  Tables are row-major with the LEFT operand
indexing the row: ``table[a][b]`` is ``a * b``.  Every text format in the
package shares this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

PRODUCT_SIZE_CAP = 10**6


class MagmaError(ValueError):
    pass


class Magma:
    """A finite set {0, ..., n-1} with one binary operation."""

    __slots__ = ("table",)

    def __init__(self, rows):
        table = tuple(tuple(row) for row in rows)
        n = len(table)
        if n == 0:
            raise MagmaError("operation table must be non-empty")
        for a, row in enumerate(table):
            if len(row) != n:
                raise MagmaError(f"row {a} has length {len(row)}, expected {n}")
            for b, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MagmaError(f"entry ({a},{b}) is {v!r}, not an element index")
        self.table = table

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(len(self.table))

    def __eq__(self, other):
        return isinstance(other, Magma) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"


class FiniteGroup(Magma):
    """A magma whose table satisfies the group laws.

    The identity and the inverse array are derived from the table when not
    supplied, and always validated.
    """

    __slots__ = ("identity", "inverse")

    def __init__(self, rows, identity=None, inverse=None):
        super().__init__(rows)
        n = self.size
        table = self.table
        if identity is None:
            identity = next(
                (e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))),
                None,
            )
            if identity is None:
                raise MagmaError("table has no two-sided identity")
        elif not all(table[identity][a] == a == table[a][identity] for a in range(n)):
            raise MagmaError(f"{identity} is not a two-sided identity")
        if inverse is None:
            inverse = []
            for a in range(n):
                try:
                    inverse.append(table[a].index(identity))
                except ValueError:
                    raise MagmaError(f"element {a} has no right inverse") from None
        inverse = tuple(inverse)
        if len(inverse) != n:
            raise MagmaError("inverse array length mismatch")
        for a in range(n):
            b = inverse[a]
            if not 0 <= b < n or table[a][b] != identity or table[b][a] != identity:
                raise MagmaError(f"inverse[{a}] = {b} fails a*b = b*a = e")
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                row_a = table[a]
                for c in range(n):
                    if table[ab][c] != row_a[table[b][c]]:
                        raise MagmaError(f"associativity fails at ({a},{b},{c})")
        self.identity = identity
        self.inverse = inverse

    def inv(self, a: int) -> int:
        return self.inverse[a]


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one exhaustive axiom scan.

    ``witness`` is the first counterexample in the canonical scan order
    (nested loops over element indices, outermost first), or None.
    """

    name: str
    ok: bool
    witness: tuple | None = None

    def __str__(self):
        if self.ok:
            return f"{self.name} pass"
        return f"{self.name} fail witness {self.witness}"


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[AxiomReport, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def summary(self) -> str:
        return "; ".join(str(c) for c in self.checks)


def _scan_idempotent(m: Magma) -> AxiomReport:
    for a in m.elements():
        if m.table[a][a] != a:
            return AxiomReport("idempotence", False, (a,))
    return AxiomReport("idempotence", True)


def _scan_columns_bijective(m: Magma) -> AxiomReport:
    # the right-translation map a -> a*b is column b of the table
    n = m.size
    for b in range(n):
        seen = {}
        for a in range(n):
            v = m.table[a][b]
            if v in seen:
                return AxiomReport("bijective-translations", False, (seen[v], a, b))
            seen[v] = a
    return AxiomReport("bijective-translations", True)


def _scan_right_distributive(m: Magma) -> AxiomReport:
    n = m.size
    t = m.table
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[t[a][c]][t[b][c]]:
                    return AxiomReport("right-distributivity", False, (a, b, c))
    return AxiomReport("right-distributivity", True)


def check_quandle(m: Magma) -> StructureReport:
    """Scan idempotence, bijectivity of right translations, and right
    self-distributivity, reporting the first counterexample of each."""
    return StructureReport(
        (_scan_idempotent(m), _scan_columns_bijective(m), _scan_right_distributive(m))
    )


def check_rack(m: Magma) -> StructureReport:
    """Quandle scan without the idempotence axiom."""
    return StructureReport((_scan_columns_bijective(m), _scan_right_distributive(m)))


def check_group(m: Magma) -> StructureReport:
    """Associativity, two-sided identity, and two-sided inverses."""
    n = m.size
    t = m.table
    assoc = AxiomReport("associativity", True)
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    assoc = AxiomReport("associativity", False, (a, b, c))
                    break
            if not assoc.ok:
                break
        if not assoc.ok:
            break
    e = next((e for e in range(n) if all(t[e][a] == a == t[a][e] for a in range(n))), None)
    ident = AxiomReport("identity", e is not None, None if e is not None else ())
    if e is None:
        return StructureReport((assoc, ident, AxiomReport("inverses", False, ())))
    inv = AxiomReport("inverses", True)
    for a in range(n):
        if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
            inv = AxiomReport("inverses", False, (a,))
            break
    return StructureReport((assoc, ident, inv))


class Quandle(Magma):
    """A magma with idempotence, bijective right translations, and right
    self-distributivity.  ``inverse_op[x][b]`` is the unique ``a`` with
    ``a * b = x``."""

    __slots__ = ("inverse_op",)

    def __init__(self, rows):
        super().__init__(rows)
        report = check_quandle(self)
        if not report.ok:
            raise MagmaError(f"not a quandle: {report.summary()}")
        n = self.size
        inv = [[0] * n for _ in range(n)]
        for b in range(n):
            for a in range(n):
                inv[self.table[a][b]][b] = a
        self.inverse_op = tuple(tuple(row) for row in inv)

    def inv_op(self, x: int, b: int) -> int:
        return self.inverse_op[x][b]


def trivial_quandle(n: int) -> Quandle:
    """The quandle with a*b = a; every total order on it is right invariant."""
    if n < 1:
        raise MagmaError("size must be positive")
    return Quandle([[a] * n for a in range(n)])


def conj_quandle(group: FiniteGroup) -> Quandle:
    """Conjugation quandle on the group carrier: a*b = b^-1 a b."""
    t = group.table
    inv = group.inverse
    n = group.size
    return Quandle([[t[t[inv[b]][a]][b] for b in range(n)] for a in range(n)])


def kei_quandle(group: FiniteGroup) -> Quandle:
    """Involutive quandle on the group carrier: b*a = a b^-1 a."""
    t = group.table
    inv = group.inverse
    n = group.size
    return Quandle([[t[t[a][inv[b]]][a] for a in range(n)] for b in range(n)])


class ProductMagma(Magma):
    """Componentwise operation on tuples of factor elements.

    Tuples are packed mixed-radix with the FIRST factor most significant,
    so the numeric order of indices is the lexicographic order of tuples.
    A basepoint per factor is stored for order constructions on products;
    it must generate a one-element submagma (b*b = b).
    """

    __slots__ = ("factors", "basepoints", "_strides")

    def __init__(self, factors, basepoints, size_cap: int = PRODUCT_SIZE_CAP):
        factors = tuple(factors)
        basepoints = tuple(basepoints)
        if not factors:
            raise MagmaError("need at least one factor")
        if len(factors) != len(basepoints):
            raise MagmaError("one basepoint per factor required")
        size = 1
        for f, b in zip(factors, basepoints):
            if not 0 <= b < f.size:
                raise MagmaError(f"basepoint {b} outside factor of size {f.size}")
            if f.table[b][b] != b:
                raise MagmaError(f"basepoint {b} does not satisfy b*b = b")
            size *= f.size
            if size > size_cap:
                raise MagmaError(f"product size exceeds cap {size_cap}")
        strides = [1] * len(factors)
        for i in range(len(factors) - 2, -1, -1):
            strides[i] = strides[i + 1] * factors[i + 1].size
        tuples = []

        def build(prefix, i):
            if i == len(factors):
                tuples.append(tuple(prefix))
                return
            for v in range(factors[i].size):
                prefix.append(v)
                build(prefix, i + 1)
                prefix.pop()

        build([], 0)
        rows = []
        for ta in tuples:
            row = []
            for tb in tuples:
                idx = 0
                for i, f in enumerate(factors):
                    idx += f.table[ta[i]][tb[i]] * strides[i]
                row.append(idx)
            rows.append(row)
        super().__init__(rows)
        self.factors = factors
        self.basepoints = basepoints
        self._strides = tuple(strides)

    def index_of(self, tup) -> int:
        return sum(v * s for v, s in zip(tup, self._strides))

    def tuple_of(self, index: int) -> tuple:
        out = []
        for f, s in zip(self.factors, self._strides):
            out.append((index // s) % f.size)
        return tuple(out)

    @property
    def basepoint_index(self) -> int:
        return self.index_of(self.basepoints)


def product_magma(factors, basepoints, size_cap: int = PRODUCT_SIZE_CAP) -> ProductMagma:
    """Direct product of magmas with chosen basepoints (at finite index
    sets the direct sum and the direct product coincide)."""
    return ProductMagma(factors, basepoints, size_cap)


def iterate_op(m: Magma, b: int, a: int, n: int) -> int:
    """n-fold right application: ((b*a)*a)*...*a."""
    if n < 1:
        raise MagmaError("iteration count must be >= 1")
    t = m.table
    x = b
    for _ in range(n):
        x = t[x][a]
    return x


@dataclass(frozen=True)
class ObstructionWitness:
    """Elements with b*a != b but b*a^{*n} = b.

    On a right-orderable quandle this configuration is impossible, so a
    witness certifies that the magma has no right-invariant total order.
    """

    a: int
    b: int
    n: int


def quandle_order_obstruction(m: Magma) -> ObstructionWitness | None:
    """First (a, b) in lexicographic order, with minimal n, such that
    b*a != b and the n-fold right application of a returns b."""
    size = m.size
    t = m.table
    for a in range(size):
        col_a = a
        for b in range(size):
            if t[b][col_a] == b:
                continue
            x = t[b][col_a]
            for n in range(2, size + 1):
                x = t[x][col_a]
                if x == b:
                    return ObstructionWitness(a, b, n)
    return None


def left_cancellative(m: Magma) -> tuple[int, int, int] | None:
    """First (c, a, b) with c*a = c*b and a != b, scanning rows; a witness
    means no left-invariant total order can exist."""
    n = m.size
    for c in range(n):
        row = m.table[c]
        for a in range(n):
            va = row[a]
            for b in range(a + 1, n):
                if row[b] == va:
                    return (c, a, b)
    return None


def right_cancellative(m: Magma) -> tuple[int, int, int] | None:
    """Column version of left_cancellative: first (c, a, b) with
    a*c = b*c and a != b."""
    n = m.size
    t = m.table
    for c in range(n):
        for a in range(n):
            va = t[a][c]
            for b in range(a + 1, n):
                if t[b][c] == va:
                    return (c, a, b)
    return None
