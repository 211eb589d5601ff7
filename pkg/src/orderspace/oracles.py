"""Exact arithmetic for several infinite groups, word-metric balls,
obstruction scans, and bi-invariant comparison orders.

Canonical forms are plain hashable values owned by each oracle; element
equality is equality of forms.  Words use one letter per generator with
uppercase meaning inverse: the Klein-bottle word ``aBB`` is a * b^-2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .magma import FiniteGroup

DEFAULT_BALL_BUDGET = 50_000


class OracleError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A configured size budget was hit; results so far are partial."""


class GroupOracle:
    """Identity / multiply / invert plus named generators and a renderer."""

    name = "?"

    def identity(self):
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def generators(self):
        """Tuple of (letter, element) pairs; letters are single lowercase."""
        raise NotImplementedError

    def render(self, g) -> str:
        raise NotImplementedError

    def sort_key(self, g):
        return g

    def is_finite(self) -> bool:
        return False

    def power(self, g, k: int):
        if k < 0:
            return self.power(self.invert(g), -k)
        acc = self.identity()
        for _ in range(k):
            acc = self.multiply(acc, g)
        return acc

    def conjugate(self, g, c):
        """c^-1 g c, the operation of the conjugation quandle."""
        return self.multiply(self.multiply(self.invert(c), g), c)

    def commutes(self, g, h) -> bool:
        return self.multiply(g, h) == self.multiply(h, g)

    def word(self, text: str):
        """Parse a generator-letter word; uppercase letters are inverses."""
        table = dict(self.generators())
        g = self.identity()
        for ch in text:
            low = ch.lower()
            if low not in table:
                raise OracleError(f"unknown generator letter {ch!r} for {self.name}")
            el = table[low]
            if ch.isupper():
                el = self.invert(el)
            g = self.multiply(g, el)
        return g


def _posfirst_key(vec):
    # layer-internal order preferring positive coordinates, so canonical
    # scans visit generator words before their inverses
    return tuple((abs(v), 0 if v >= 0 else 1) for v in vec)


def _monomial(pairs) -> str:
    parts = []
    for letter, exp in pairs:
        if exp == 0:
            continue
        parts.append(letter if exp == 1 else f"{letter}^{exp}")
    return " ".join(parts) if parts else "e"


class FreeAbelianOracle(GroupOracle):
    """Integer vectors of fixed rank under addition."""

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise OracleError("rank must be between 1 and 26")
        self.rank = rank
        self.name = f"Z^{rank}"
        self._letters = "abcdefghijklmnopqrstuvwxyz"[:rank]

    def identity(self):
        return (0,) * self.rank

    def multiply(self, g, h):
        return tuple(x + y for x, y in zip(g, h))

    def invert(self, g):
        return tuple(-x for x in g)

    def generators(self):
        out = []
        for i, letter in enumerate(self._letters):
            v = [0] * self.rank
            v[i] = 1
            out.append((letter, tuple(v)))
        return tuple(out)

    def render(self, g) -> str:
        return _monomial(zip(self._letters, g))

    def sort_key(self, g):
        return _posfirst_key(g)


class HeisenbergOracle(GroupOracle):
    """Integer triples with (a,b,c)(x,y,z) = (a+x, b+y, c+z+a*y).

    The correction term cancels when leading coordinates agree, which
    makes coordinatewise lexicographic comparison two-sided invariant.
    """

    name = "heisenberg"

    def identity(self):
        return (0, 0, 0)

    def multiply(self, g, h):
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])

    def invert(self, g):
        return (-g[0], -g[1], -g[2] + g[0] * g[1])

    def generators(self):
        return (("x", (1, 0, 0)), ("y", (0, 1, 0)))

    def render(self, g) -> str:
        return f"({g[0]}, {g[1]}, {g[2]})"

    def sort_key(self, g):
        return _posfirst_key(g)


class KleinBottleOracle(GroupOracle):
    """Pairs (p, q) standing for a^p b^q with the relation a^-1 b a = b^-1,
    multiplied by (p,q)(r,s) = (p+r, (-1)^r q + s)."""

    name = "klein"

    def identity(self):
        return (0, 0)

    def multiply(self, g, h):
        p, q = g
        r, s = h
        return (p + r, (q if r % 2 == 0 else -q) + s)

    def invert(self, g):
        p, q = g
        return (-p, -q if p % 2 == 0 else q)

    def generators(self):
        return (("a", (1, 0)), ("b", (0, 1)))

    def render(self, g) -> str:
        return _monomial((("a", g[0]), ("b", g[1])))

    def sort_key(self, g):
        return _posfirst_key(g)


class FreeGroupOracle(GroupOracle):
    """Reduced syllable words over k letters: tuples of (letter_index, exp)."""

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise OracleError("rank must be between 1 and 26")
        self.rank = rank
        self.name = f"free:{rank}"
        self._letters = "abcdefghijklmnopqrstuvwxyz"[:rank]

    def identity(self):
        return ()

    def multiply(self, g, h):
        out = list(g)
        for letter, exp in h:
            if out and out[-1][0] == letter:
                merged = out[-1][1] + exp
                out.pop()
                if merged:
                    out.append((letter, merged))
            else:
                out.append((letter, exp))
        return tuple(out)

    def invert(self, g):
        return tuple((letter, -exp) for letter, exp in reversed(g))

    def generators(self):
        return tuple((letter, ((i, 1),)) for i, letter in enumerate(self._letters))

    def render(self, g) -> str:
        return _monomial((self._letters[i], e) for i, e in g)

    def sort_key(self, g):
        return tuple((i, abs(e), 0 if e > 0 else 1) for i, e in g)


class TorusKnotOracle(GroupOracle):
    """<x, y | x^n = y^m> in central-power normal form.

    An element is (zpow, syllables): z = x^n = y^m is central by
    construction, and syllables alternate x^a (1 <= a <= n-1) and
    y^b (1 <= b <= m-1), reduced at junctions with carries into z.
    """

    def __init__(self, n: int, m: int):
        if n < 2 or m < 2:
            raise OracleError("torus knot exponents must be >= 2")
        self.n = n
        self.m = m
        self.name = f"torus:{n}:{m}"

    def identity(self):
        return (0, ())

    def _push(self, stack, letter, exp):
        # merge with a same-letter top syllable, extract central powers
        if stack and stack[-1][0] == letter:
            exp += stack.pop()[1]
        mod = self.n if letter == "x" else self.m
        q, r = divmod(exp, mod)
        if r:
            stack.append((letter, r))
        return q

    def multiply(self, g, h):
        z = g[0] + h[0]
        stack = list(g[1])
        for letter, exp in h[1]:
            z += self._push(stack, letter, exp)
        return (z, tuple(stack))

    def invert(self, g):
        z = -g[0]
        stack = []
        for letter, exp in reversed(g[1]):
            z += self._push(stack, letter, -exp)
        return (z, tuple(stack))

    def generators(self):
        return (("x", (0, (("x", 1),))), ("y", (0, (("y", 1),))))

    def render(self, g) -> str:
        return _monomial(itertools.chain((("z", g[0]),), g[1]))

    def sort_key(self, g):
        return (g[1], abs(g[0]), 0 if g[0] >= 0 else 1)

    def central_power(self, g) -> bool:
        """True when g is a power of the central element z."""
        return g[1] == ()


class FiniteGroupOracle(GroupOracle):
    """A finite group table behind the oracle interface; elements are
    the table indices."""

    def __init__(self, group: FiniteGroup, name: str, gens: dict[str, int]):
        self.group = group
        self.name = name
        self._gens = dict(gens)

    def identity(self):
        return self.group.identity

    def multiply(self, g, h):
        return self.group.table[g][h]

    def invert(self, g):
        return self.group.inverse[g]

    def generators(self):
        return tuple(self._gens.items())

    def render(self, g) -> str:
        if g == self.group.identity:
            return "e"
        for letter, el in self._gens.items():
            power = el
            k = 1
            while True:
                if power == g:
                    return letter if k == 1 else f"{letter}^{k}"
                power = self.multiply(power, el)
                k += 1
                if power == el or k > self.group.size:
                    break
        return f"#{g}"

    def is_finite(self) -> bool:
        return True

    def elements(self):
        return range(self.group.size)


def cyclic_oracle(n: int) -> FiniteGroupOracle:
    from .catalog import cyclic_group

    gens = {"x": 1} if n > 1 else {}
    return FiniteGroupOracle(cyclic_group(n), f"cyclic:{n}", gens)


def oracle_from_spec(spec: str) -> GroupOracle:
    """Build an oracle from a group spec string.

    Accepted: ``Z^<k>``, ``heisenberg``, ``klein``, ``free:<k>``,
    ``torus:<n>:<m>``, ``cyclic:<n>``.
    """
    s = spec.strip()
    try:
        if s.startswith("Z^"):
            return FreeAbelianOracle(int(s[2:]))
        if s == "heisenberg":
            return HeisenbergOracle()
        if s == "klein":
            return KleinBottleOracle()
        if s.startswith("free:"):
            return FreeGroupOracle(int(s.split(":")[1]))
        if s.startswith("torus:"):
            _, n, m = s.split(":")
            return TorusKnotOracle(int(n), int(m))
        if s.startswith("cyclic:"):
            return cyclic_oracle(int(s.split(":")[1]))
    except (ValueError, IndexError):
        raise OracleError(f"malformed group spec {spec!r}") from None
    raise OracleError(f"unknown group spec {spec!r}")


def ball(oracle: GroupOracle, radius: int, budget: int = DEFAULT_BALL_BUDGET) -> list:
    """All elements of word length <= radius: identity first, then layer
    by layer, each layer sorted by the oracle's canonical key."""
    if radius < 0:
        raise OracleError("radius must be >= 0")
    steps = []
    for _, g in oracle.generators():
        steps.append(g)
        gi = oracle.invert(g)
        if gi != g:
            steps.append(gi)
    e = oracle.identity()
    seen = {e}
    out = [e]
    frontier = [e]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for s in steps:
                h = oracle.multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"ball size exceeds budget {budget}")
        nxt.sort(key=oracle.sort_key)
        out.extend(nxt)
        if not nxt:
            break
        frontier = nxt
    return out


def centralizer_check(oracle: GroupOracle, a, b) -> bool:
    """True when a commutes with b, i.e. a lies in the centralizer of b."""
    return oracle.commutes(a, b)


def center_scan(group: FiniteGroup) -> list[int]:
    """Elements commuting with everything, by exhaustive scan."""
    t = group.table
    n = group.size
    return [a for a in range(n) if all(t[a][b] == t[b][a] for b in range(n))]


def commutator(oracle: GroupOracle, a, b):
    """a^-1 b^-1 a b."""
    ai = oracle.invert(a)
    bi = oracle.invert(b)
    return oracle.multiply(oracle.multiply(oracle.multiply(ai, bi), a), b)


CENTRALITY_EXHAUSTIVE = "exhaustive"
CENTRALITY_STRUCTURAL = "structural"
CENTRALITY_BALL = "ball-evidence"


@dataclass(frozen=True)
class ConjObstruction:
    """Witness (a, b, n): a and b do not commute while a^n commutes with b.

    Both facts are exact oracle arithmetic, so the witness is a complete
    proof that the conjugation quandle admits no right-invariant total
    order.  ``centrality`` records how far a^n was certified central in
    the whole group: 'exhaustive' (finite group, full scan),
    'structural' (a^n is a power of a built-in central element), or
    'ball-evidence' (checked only against the search ball).
    """

    a: object
    b: object
    n: int
    centrality: str


def _centrality_level(oracle, g, elems) -> str:
    if oracle.is_finite():
        if all(oracle.commutes(g, h) for h in oracle.elements()):
            return CENTRALITY_EXHAUSTIVE
        return CENTRALITY_BALL
    if isinstance(oracle, TorusKnotOracle) and oracle.central_power(g):
        return CENTRALITY_STRUCTURAL
    return CENTRALITY_BALL


def conj_obstruction_oracle(
    oracle: GroupOracle,
    radius: int = 2,
    n_max: int = 6,
    ball_elements=None,
) -> ConjObstruction | None:
    """Scan ball pairs for the first (a, b, n) with ab != ba and
    a^n b = b a^n, n minimal in 2..n_max."""
    elems = ball(oracle, radius) if ball_elements is None else list(ball_elements)
    e = oracle.identity()
    for a in elems:
        if a == e:
            continue
        powers = []
        acc = a
        for _ in range(n_max - 1):
            acc = oracle.multiply(acc, a)
            powers.append(acc)
        for b in elems:
            if oracle.commutes(a, b):
                continue
            for n, an in enumerate(powers, start=2):
                if oracle.commutes(an, b):
                    return ConjObstruction(a, b, n, _centrality_level(oracle, an, elems))
    return None


@dataclass(frozen=True)
class BiOrderOracle:
    """Strict total comparison cmp(g, h) in {-1, 0, +1}, two-sided
    invariant on every tested triple."""

    name: str
    compare: object

    def less(self, g, h) -> bool:
        return self.compare(g, h) < 0


def _tuple_cmp(g, h) -> int:
    return (g > h) - (g < h)


def lex_biorder(oracle: GroupOracle) -> BiOrderOracle:
    """Coordinatewise lexicographic bi-order; supported for free abelian
    and Heisenberg oracles, where it is two-sided invariant."""
    if isinstance(oracle, (FreeAbelianOracle, HeisenbergOracle)):
        return BiOrderOracle(f"lex({oracle.name})", _tuple_cmp)
    raise OracleError(f"no lexicographic bi-order for family {oracle.name}")


class InducedConjOrder:
    """Right-invariant comparison on the conjugation quandle of a group,
    built from a two-sided invariant comparison: a < b iff e < a^-1 b."""

    def __init__(self, oracle: GroupOracle, biorder: BiOrderOracle):
        self.oracle = oracle
        self.biorder = biorder
        self._e = oracle.identity()

    def less(self, a, b) -> bool:
        return self.biorder.less(self._e, self.oracle.multiply(self.oracle.invert(a), b))

    def right_invariance_violations(self, triples) -> list:
        """Triples (a, b, c) where a < b but not a*c < b*c under the
        conjugation operation; expected empty."""
        out = []
        conj = self.oracle.conjugate
        for a, b, c in triples:
            if self.less(a, b) and not self.less(conj(a, c), conj(b, c)):
                out.append((a, b, c))
        return out


def neumann_scan(oracle: GroupOracle, elements, n_max: int) -> list:
    """Violations (a, b, n) where a^n commutes with b for some 1 <= n <=
    n_max but a does not commute with b; empty on bi-orderable input."""
    out = []
    elems = list(elements)
    for a in elems:
        powers = []
        acc = oracle.identity()
        for _ in range(n_max):
            acc = oracle.multiply(acc, a)
            powers.append(acc)
        for b in elems:
            ab_commute = oracle.commutes(a, b)
            for n, an in enumerate(powers, start=1):
                if oracle.commutes(an, b) and not ab_commute:
                    out.append((a, b, n))
                    break
    return out
