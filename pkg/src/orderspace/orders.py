"""Verification, constraint propagation, and backtracking enumeration of
translation-invariant strict total orders on finite magmas.

A relation is kept as a three-valued pair matrix (holds / fails /
undecided) over ordered pairs (a, b) with a != b.  The propagation rules
are: a holding pair fails its reverse; holding pairs compose transitively;
a holding pair holds at every translate on the requested side; a translate
that lands on the diagonal contradicts.  Search always picks the smallest
undecided pair and tries the holds branch first, so streams are canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .magma import Magma, ProductMagma, left_cancellative, right_cancellative

UNDECIDED, HOLDS, FAILS = 0, 1, 2

BRUTE_FORCE_BOUND = 7
SUBFAMILY_LIMIT = 12


class OrderError(ValueError):
    pass


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"
    BI = "bi"

    @classmethod
    def parse(cls, text: str) -> "Side":
        try:
            return cls(text.lower())
        except ValueError:
            raise OrderError(f"unknown side {text!r}; expected left, right or bi") from None

    @property
    def translates_left(self) -> bool:
        return self is not Side.RIGHT

    @property
    def translates_right(self) -> bool:
        return self is not Side.LEFT

    def __str__(self):
        return self.value


class OrderRelation:
    """Three-valued pair matrix; completed instances are strict total orders."""

    __slots__ = ("n", "rel")

    def __init__(self, n: int, rel: bytearray | None = None):
        if n < 1:
            raise OrderError("relation needs at least one element")
        self.n = n
        self.rel = bytearray(n * n) if rel is None else rel

    @classmethod
    def from_ranking(cls, ranking) -> "OrderRelation":
        """Completed order with ranking[0] < ranking[1] < ..."""
        seq = list(ranking)
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise OrderError(f"{seq!r} is not a permutation of 0..{n - 1}")
        r = cls(n)
        rel = r.rel
        for i in range(n):
            a = seq[i]
            for j in range(i + 1, n):
                b = seq[j]
                rel[a * n + b] = HOLDS
                rel[b * n + a] = FAILS
        return r

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "OrderRelation":
        """Partial state with the given pairs holding (reverses fail)."""
        r = cls(n)
        rel = r.rel
        for a, b in pairs:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise OrderError(f"({a},{b}) is not an off-diagonal pair")
            if rel[b * n + a] == HOLDS:
                raise OrderError(f"({a},{b}) conflicts with its reverse")
            rel[a * n + b] = HOLDS
            rel[b * n + a] = FAILS
        return r

    def state(self, a: int, b: int) -> int:
        return self.rel[a * self.n + b]

    def holds(self, a: int, b: int) -> bool:
        return self.rel[a * self.n + b] == HOLDS

    def is_complete(self) -> bool:
        n = self.n
        rel = self.rel
        for a in range(n):
            for b in range(n):
                if a != b and rel[a * n + b] == UNDECIDED:
                    return False
        return True

    def holding_pairs(self) -> list[tuple[int, int]]:
        n = self.n
        rel = self.rel
        return [(a, b) for a in range(n) for b in range(n) if a != b and rel[a * n + b] == HOLDS]

    def ranking(self) -> tuple[int, ...]:
        """Elements in ascending order; requires a completed relation."""
        if not self.is_complete():
            raise OrderError("relation is not completed")
        n = self.n
        rel = self.rel
        out = [0] * n
        for x in range(n):
            pos = sum(1 for y in range(n) if y != x and rel[y * n + x] == HOLDS)
            out[pos] = x
        return tuple(out)

    def copy(self) -> "OrderRelation":
        return OrderRelation(self.n, bytearray(self.rel))

    def key(self) -> bytes:
        return bytes(self.rel)

    def __eq__(self, other):
        return isinstance(other, OrderRelation) and self.n == other.n and self.rel == other.rel

    def __hash__(self):
        return hash((self.n, bytes(self.rel)))

    def __repr__(self):
        if self.is_complete():
            return f"OrderRelation({'<'.join(map(str, self.ranking()))})"
        decided = sum(1 for v in self.rel if v != UNDECIDED)
        return f"OrderRelation(n={self.n}, decided={decided // 2}/{self.n * (self.n - 1) // 2})"


@dataclass(frozen=True)
class ConstraintSet:
    """Ordered pairs required to hold (an intersection of subbasis sets)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.pairs:
            if a == b:
                raise OrderError(f"diagonal pair ({a},{b}) in constraint set")
            if (b, a) in seen:
                raise OrderError(f"constraint set contains both ({a},{b}) and ({b},{a})")
            seen.add((a, b))

    @classmethod
    def of(cls, *pairs) -> "ConstraintSet":
        return cls(tuple((int(a), int(b)) for a, b in pairs))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class Violation:
    """First failed order condition under the canonical scan.

    Conditions are checked in the order totality (exactly one of (a,b),
    (b,a) holds), transitivity, invariance; the witness is the offending
    pair or triple.
    """

    condition: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.condition} violated at {self.witness}{extra}"


@dataclass(frozen=True)
class Contradiction:
    """Why a partial state admits no completion.

    reason 'conflict': the pair in data was forced both ways.
    reason 'collapse': data = (side, c, a, b) where (a, b) holds but the
    c-translate of a and b is a single element.
    """

    reason: str
    data: tuple

    def __str__(self):
        return f"contradiction: {self.reason} at {self.data}"


def verify_order(m: Magma, r: OrderRelation, side: Side) -> Violation | None:
    """None when r is a completed side-invariant strict total order,
    otherwise the first violation."""
    n = m.size
    if r.n != n:
        raise OrderError(f"relation size {r.n} does not match magma size {n}")
    rel = r.rel
    for a in range(n):
        an = a * n
        for b in range(a + 1, n):
            sab = rel[an + b]
            sba = rel[b * n + a]
            if sab == UNDECIDED or sba == UNDECIDED:
                raise OrderError("relation is not completed")
            if (sab == HOLDS) == (sba == HOLDS):
                return Violation("totality", (a, b), "need exactly one of (a,b),(b,a)")
    for a in range(n):
        an = a * n
        for b in range(n):
            if b == a or rel[an + b] != HOLDS:
                continue
            bn = b * n
            for c in range(n):
                if c != a and c != b and rel[bn + c] == HOLDS and rel[an + c] != HOLDS:
                    return Violation("transitivity", (a, b, c))
    table = m.table
    holding = r.holding_pairs()
    if side.translates_left:
        for c in range(n):
            row = table[c]
            for a, b in holding:
                ca, cb = row[a], row[b]
                if ca == cb:
                    return Violation("invariance", (c, a, b), "left translate collapses")
                if rel[ca * n + cb] != HOLDS:
                    return Violation("invariance", (c, a, b), "left translate not held")
    if side.translates_right:
        for c in range(n):
            for a, b in holding:
                ac, bc = table[a][c], table[b][c]
                if ac == bc:
                    return Violation("invariance", (c, a, b), "right translate collapses")
                if rel[ac * n + bc] != HOLDS:
                    return Violation("invariance", (c, a, b), "right translate not held")
    return None


class _Engine:
    """Mutable search state: pair matrix, undo trail, rule closure."""

    __slots__ = ("n", "table", "left", "right", "rel", "trail")

    def __init__(self, m: Magma, side: Side):
        self.n = m.size
        self.table = m.table
        self.left = side.translates_left
        self.right = side.translates_right
        self.rel = bytearray(self.n * self.n)
        self.trail: list[int] = []

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        rel = self.rel
        trail = self.trail
        while len(trail) > mark:
            rel[trail.pop()] = UNDECIDED

    def close(self, queue: list) -> Contradiction | None:
        """Drive the rule set to its least fixpoint from the queued pairs."""
        rel = self.rel
        n = self.n
        table = self.table
        trail = self.trail
        left = self.left
        right = self.right
        qi = 0
        while qi < len(queue):
            a, b = queue[qi]
            qi += 1
            an = a * n
            bn = b * n
            for c in range(n):
                if rel[bn + c] == 1:
                    i = an + c
                    s = rel[i]
                    if s != 1:
                        if s == 2:
                            return Contradiction("conflict", (a, c))
                        rel[i] = 1
                        trail.append(i)
                        j = c * n + a
                        if rel[j] == 0:
                            rel[j] = 2
                            trail.append(j)
                        queue.append((a, c))
                if rel[c * n + a] == 1:
                    i = c * n + b
                    s = rel[i]
                    if s != 1:
                        if s == 2:
                            return Contradiction("conflict", (c, b))
                        rel[i] = 1
                        trail.append(i)
                        j = bn + c
                        if rel[j] == 0:
                            rel[j] = 2
                            trail.append(j)
                        queue.append((c, b))
            if left:
                for c in range(n):
                    row = table[c]
                    ta = row[a]
                    tb = row[b]
                    if ta == tb:
                        return Contradiction("collapse", ("left", c, a, b))
                    i = ta * n + tb
                    s = rel[i]
                    if s != 1:
                        if s == 2:
                            return Contradiction("conflict", (ta, tb))
                        rel[i] = 1
                        trail.append(i)
                        j = tb * n + ta
                        if rel[j] == 0:
                            rel[j] = 2
                            trail.append(j)
                        queue.append((ta, tb))
            if right:
                row_a = table[a]
                row_b = table[b]
                for c in range(n):
                    ta = row_a[c]
                    tb = row_b[c]
                    if ta == tb:
                        return Contradiction("collapse", ("right", c, a, b))
                    i = ta * n + tb
                    s = rel[i]
                    if s != 1:
                        if s == 2:
                            return Contradiction("conflict", (ta, tb))
                        rel[i] = 1
                        trail.append(i)
                        j = tb * n + ta
                        if rel[j] == 0:
                            rel[j] = 2
                            trail.append(j)
                        queue.append((ta, tb))
        return None

    def seed(self, pairs) -> Contradiction | None:
        queue = []
        rel = self.rel
        n = self.n
        trail = self.trail
        for a, b in pairs:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise OrderError(f"({a},{b}) is not an off-diagonal pair")
            i = a * n + b
            s = rel[i]
            if s == 2:
                return Contradiction("conflict", (a, b))
            if s == 0:
                rel[i] = 1
                trail.append(i)
                j = b * n + a
                if rel[j] == 0:
                    rel[j] = 2
                    trail.append(j)
                queue.append((a, b))
        return self.close(queue)

    def decide(self, a: int, b: int) -> Contradiction | None:
        return self.seed(((a, b),))

    def first_undecided(self) -> tuple[int, int] | None:
        rel = self.rel
        n = self.n
        for a in range(n):
            an = a * n
            for b in range(n):
                if b != a and rel[an + b] == UNDECIDED:
                    return a, b
        return None

    def snapshot(self) -> OrderRelation:
        return OrderRelation(self.n, bytearray(self.rel))


def propagate(m: Magma, state: OrderRelation, side: Side) -> OrderRelation | Contradiction:
    """Least fixpoint of the propagation rules over the state's holding
    pairs; a Contradiction is a result, not an error."""
    if state.n != m.size:
        raise OrderError("state size does not match magma size")
    eng = _Engine(m, side)
    res = eng.seed(state.holding_pairs())
    if res is not None:
        return res
    return eng.snapshot()


def _normalize_constraints(constraints) -> list[tuple[int, int]]:
    if constraints is None:
        return []
    return [(int(a), int(b)) for a, b in constraints]


def enumerate_orders(m: Magma, side: Side, constraints=()):
    """Yield every side-invariant strict total order containing the
    constraint pairs, in canonical search order (smallest undecided pair
    first, holds branch before fails)."""
    pairs = _normalize_constraints(constraints)
    n = m.size

    def gen():
        if n >= 2:
            if side.translates_left and left_cancellative(m) is not None:
                return
            if side.translates_right and right_cancellative(m) is not None:
                return
        eng = _Engine(m, side)
        if eng.seed(pairs) is not None:
            return

        def dfs():
            pick = eng.first_undecided()
            if pick is None:
                yield eng.snapshot()
                return
            a, b = pick
            mark = eng.mark()
            if eng.decide(a, b) is None:
                yield from dfs()
            eng.undo(mark)
            if eng.decide(b, a) is None:
                yield from dfs()
            eng.undo(mark)

        yield from dfs()

    return gen()


def collect_orders(m: Magma, side: Side, constraints=(), limit: int | None = None):
    """Materialize enumerate_orders output.  Returns (orders, truncated);
    truncated is True when the stream was cut by the limit rather than
    finishing."""
    out = []
    truncated = False
    stream = enumerate_orders(m, side, constraints)
    if limit is None:
        out = list(stream)
    else:
        for r in stream:
            if len(out) == limit:
                truncated = True
                break
            out.append(r)
    return out, truncated


def count_orders(m: Magma, side: Side, constraints=()) -> int:
    """Number of side-invariant total orders containing the constraints."""
    return sum(1 for _ in enumerate_orders(m, side, constraints))


_RANKING_CACHE: dict[int, tuple[OrderRelation, ...]] = {}


def _all_rankings(n: int) -> tuple[OrderRelation, ...]:
    if n not in _RANKING_CACHE:
        _RANKING_CACHE[n] = tuple(
            OrderRelation.from_ranking(p) for p in itertools.permutations(range(n))
        )
    return _RANKING_CACHE[n]


def brute_force_orders(m: Magma, side: Side, bound: int = BRUTE_FORCE_BOUND):
    """Filter all n! total orders through verify_order; the independent
    oracle for the backtracking enumerator."""
    n = m.size
    if n > bound:
        raise OrderError(f"brute force bound {bound} exceeded (size {n})")
    return [r for r in _all_rankings(n) if verify_order(m, r, side) is None]


@dataclass(frozen=True)
class FipReport:
    """Finite-intersection-property query over constraint-set families.

    For a finite magma the two booleans necessarily agree; both are
    computed and reported.
    """

    family_count: int
    all_finite_nonempty: bool
    whole_nonempty: bool
    witness: OrderRelation | None
    failing_subfamily: tuple[int, ...] | None


def fip_check(m: Magma, side: Side, families) -> FipReport:
    """Check every nonempty subfamily intersection and the whole
    intersection of the order sets cut out by each constraint family."""
    families = list(families)
    k = len(families)
    if k > SUBFAMILY_LIMIT:
        raise OrderError(f"at most {SUBFAMILY_LIMIT} families supported (got {k})")

    def nonempty(idxs):
        merged = []
        seen = set()
        for i in idxs:
            for p in families[i]:
                if p not in seen:
                    seen.add(p)
                    merged.append(p)
        got, _ = collect_orders(m, side, merged, limit=1)
        return got[0] if got else None

    failing = None
    for size in range(1, k + 1):
        for idxs in itertools.combinations(range(k), size):
            if nonempty(idxs) is None:
                failing = idxs
                break
        if failing is not None:
            break
    witness = nonempty(range(k))
    return FipReport(
        family_count=k,
        all_finite_nonempty=failing is None,
        whole_nonempty=witness is not None,
        witness=witness,
        failing_subfamily=failing,
    )


def lex_order(product: ProductMagma, factor_orders, side: Side | None = None) -> OrderRelation:
    """Lexicographic order on a product magma: the first differing factor
    coordinate decides, using that factor's order."""
    factor_orders = list(factor_orders)
    if len(factor_orders) != len(product.factors):
        raise OrderError("one factor order per factor required")
    for i, (f, r) in enumerate(zip(product.factors, factor_orders)):
        if r.n != f.size:
            raise OrderError(f"factor order {i} has size {r.n}, factor has {f.size}")
        if not r.is_complete():
            raise OrderError(f"factor order {i} is not completed")
        if side is not None:
            v = verify_order(f, r, side)
            if v is not None:
                raise OrderError(f"factor order {i} invalid: {v}")
    n = product.size
    out = OrderRelation(n)
    rel = out.rel
    tuples = [product.tuple_of(i) for i in range(n)]
    for i in range(n):
        ti = tuples[i]
        for j in range(n):
            if i == j:
                continue
            tj = tuples[j]
            for alpha, (x, y) in enumerate(zip(ti, tj)):
                if x != y:
                    rel[i * n + j] = HOLDS if factor_orders[alpha].holds(x, y) else FAILS
                    break
    return out
