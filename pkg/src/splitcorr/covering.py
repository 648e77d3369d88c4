"""Monodromy model of a degree-n cover with an unramified double cover on top.

Elements of the monodromy group are signed permutations (pi, eps) with an
even number of sign flips.  They act on lifting choices x in B^n by

    y[pi(i)] = x[i] xor eps[i],

so that a fiber of the lifting curve is B^n and its two halves are the even
and odd weight vectors.  Orbits are found with a union-find over B^n.
"""

import json
import random
from dataclasses import dataclass, field

from .hamming import BitVector

MAX_ORBIT_N = 20


@dataclass(frozen=True)
class SignedPerm:
    """``perm[i]`` is the image of strand i (0-based); ``signs[i]`` flips the lift carried by strand i."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) & 1 for s in self.signs)
        if len(perm) != len(signs):
            raise ValueError("perm and signs have different lengths")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        if sum(signs) % 2:
            raise ValueError("odd number of sign flips")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @property
    def n(self):
        return len(self.perm)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (0,) * n)

    @classmethod
    def reflection(cls, n, i, j, flip=0):
        """Swap strands i and j, flipping both when ``flip`` is 1."""
        if i == j:
            raise ValueError("reflection needs two distinct strands")
        perm = list(range(n))
        perm[i], perm[j] = j, i
        signs = [0] * n
        signs[i] = signs[j] = flip
        return cls(tuple(perm), tuple(signs))

    def __mul__(self, other):
        """Composite acting as ``self`` after ``other``."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        signs = tuple(other.signs[i] ^ self.signs[other.perm[i]] for i in range(self.n))
        return SignedPerm(perm, signs)

    def inverse(self):
        perm = [0] * self.n
        signs = [0] * self.n
        for i, p in enumerate(self.perm):
            perm[p] = i
            signs[p] = self.signs[i]
        return SignedPerm(tuple(perm), tuple(signs))

    def is_identity(self):
        return self.perm == tuple(range(self.n)) and not any(self.signs)

    def transposition(self):
        """The swapped pair if the underlying permutation is a transposition, else None."""
        moved = [i for i, p in enumerate(self.perm) if p != i]
        return tuple(moved) if len(moved) == 2 else None

    def is_simple(self):
        """A transposition (i j) with eps_i = eps_j and no other flips."""
        pair = self.transposition()
        if pair is None:
            return False
        i, j = pair
        rest = any(s for t, s in enumerate(self.signs) if t not in pair)
        return self.signs[i] == self.signs[j] and not rest

    def to_json(self):
        return [[p + 1 for p in self.perm], list(self.signs)]

    @classmethod
    def from_json(cls, obj):
        perm, signs = obj
        return cls(tuple(p - 1 for p in perm), tuple(signs))


def commutator(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    return a * b * a.inverse() * b.inverse()


def act(g: SignedPerm, x: BitVector) -> BitVector:
    if g.n != x.n:
        raise ValueError(f"length mismatch: {g.n} vs {x.n}")
    out = [0] * g.n
    for i in range(g.n):
        out[g.perm[i]] = x.bits[i] ^ g.signs[i]
    return BitVector(g.n, tuple(out))


def _act_int(g: SignedPerm, x: int) -> int:
    y = 0
    for i in range(g.n):
        if ((x >> i) & 1) ^ g.signs[i]:
            y |= 1 << g.perm[i]
    return y


@dataclass
class MonodromyData:
    n: int
    genus_Y: int
    handles: list = field(default_factory=list)  # [(a_1, b_1), ...]
    branches: list = field(default_factory=list)

    def generators(self):
        gens = [g for pair in self.handles for g in pair] + list(self.branches)
        return gens

    def relation_product(self) -> SignedPerm:
        acc = SignedPerm.identity(self.n)
        for a, b in self.handles:
            acc = acc * commutator(a, b)
        for g in self.branches:
            acc = acc * g
        return acc

    def validate(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.genus_Y < 0 or len(self.handles) != self.genus_Y:
            raise ValueError(f"expected {self.genus_Y} handle pairs, got {len(self.handles)}")
        for g in self.generators():
            if g.n != self.n:
                raise ValueError("generator of the wrong size")
        for g in self.branches:
            if not g.is_simple():
                raise ValueError(f"branch element {g.to_json()} is not simple")
        if not self.relation_product().is_identity():
            raise ValueError("surface relation does not hold")

    def to_json(self):
        return {
            "n": self.n,
            "genus_Y": self.genus_Y,
            "handles": [g.to_json() for pair in self.handles for g in pair],
            "branches": [g.to_json() for g in self.branches],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj):
        flat = [SignedPerm.from_json(h) for h in obj["handles"]]
        if len(flat) % 2:
            raise ValueError("handles must come in pairs")
        data = cls(obj["n"], obj["genus_Y"], list(zip(flat[::2], flat[1::2])),
                   [SignedPerm.from_json(b) for b in obj["branches"]])
        data.validate()
        return data


# -- orbits -------------------------------------------------------------------


class UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self):
        groups = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def strand_orbits(n, gens):
    uf = UnionFind(n)
    for g in gens:
        for i in range(n):
            uf.union(i, g.perm[i])
    return uf.classes()


def lifting_orbits(n, gens):
    if n > MAX_ORBIT_N:
        raise ValueError(f"orbit enumeration is capped at n = {MAX_ORBIT_N}")
    uf = UnionFind(1 << n)
    for g in gens:
        for x in range(1 << n):
            uf.union(x, _act_int(g, x))
    return uf.classes()


@dataclass(frozen=True)
class ComponentCounts:
    orbits_on_strands: int
    orbits_on_liftings: int
    orbits_even: int
    orbits_odd: int

    @property
    def transitive(self):
        return self.orbits_on_strands == 1

    @property
    def split_lifting(self):
        """Two lifting components, one of each weight parity."""
        return self.orbits_on_liftings == 2 and self.orbits_even == 1 and self.orbits_odd == 1


def component_counts(M: MonodromyData) -> ComponentCounts:
    M.validate()
    gens = M.generators()
    orbits = lifting_orbits(M.n, gens)
    even = sum(1 for o in orbits if bin(o[0]).count("1") % 2 == 0)
    return ComponentCounts(len(strand_orbits(M.n, gens)), len(orbits), even, len(orbits) - even)


def two_cycles(g: SignedPerm, points=None):
    """Number of 2-cycles of g on B^n (or on the given subset)."""
    pts = range(1 << g.n) if points is None else points
    return sum(1 for x in pts if (y := _act_int(g, x)) != x and _act_int(g, y) == x and x < y)


def fixed_points(g: SignedPerm):
    return sum(1 for x in range(1 << g.n) if _act_int(g, x) == x)


@dataclass(frozen=True)
class GenusReport:
    g_X: int
    branch_count: int
    two_cycles_per_branch: tuple
    component_genera: tuple  # upstairs genus for each lifting orbit
    closed_form: object  # formula value, or None when it does not apply

    def consistent(self):
        return self.closed_form is not None and all(g == self.closed_form for g in self.component_genera)


def _riemann_hurwitz(degree, genus_base, ramification):
    twice = degree * (2 * genus_base - 2) + ramification
    if twice % 2:
        raise ValueError("Riemann-Hurwitz gives a non-integral genus")
    return twice // 2 + 1


def ramification_and_genus(M: MonodromyData) -> GenusReport:
    M.validate()
    if not M.branches:
        raise ValueError("need at least one branch point (simple ramification)")
    n = M.n
    # each transposition contributes one ramification point downstairs
    g_X = _riemann_hurwitz(n, M.genus_Y, len(M.branches))
    cycles = tuple(two_cycles(g) for g in M.branches)
    genera = []
    for orbit in lifting_orbits(n, M.generators()):
        ram = sum(two_cycles(g, orbit) for g in M.branches)
        genera.append(_riemann_hurwitz(len(orbit), M.genus_Y, ram))
    closed = None
    if n >= 3:
        twice = 2 ** n * ((g_X - 1) - (n - 4) * (M.genus_Y - 1))
        if twice % 8 == 0:
            closed = twice // 8 + 1
    return GenusReport(g_X, len(M.branches), cycles, tuple(sorted(genera)), closed)


# -- random instances -------------------------------------------------------------


class NoInstanceFound(RuntimeError):
    pass


def reflection_factorization(w: SignedPerm):
    """Simple elements r_1..r_L with r_1 * ... * r_L = w."""
    n = w.n
    steps = []
    cur = w
    for i in range(n):
        j = cur.perm[i]
        if j == i:
            continue
        # t swaps i and j; choose the flip so that t * cur fixes strand i unflipped
        for flip in (0, 1):
            t = SignedPerm.reflection(n, i, j, flip)
            nxt = t * cur
            if nxt.perm[i] == i and nxt.signs[i] == 0:
                break
        steps.append(t)
        cur = nxt
    flipped = [i for i in range(n) if cur.signs[i]]
    for i, j in zip(flipped[::2], flipped[1::2]):
        for t in (SignedPerm.reflection(n, i, j, 1), SignedPerm.reflection(n, i, j, 0)):
            steps.append(t)
            cur = t * cur
    if not cur.is_identity():
        raise AssertionError("reflection factorization failed")
    # t_L ... t_1 w = 1, so w = t_1 ... t_L
    return steps


def _random_element(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.randrange(2) for _ in range(n)]
    if sum(signs) % 2:
        signs[rng.randrange(n)] ^= 1
    return SignedPerm(tuple(perm), tuple(signs))


def _random_simple(n, rng):
    i, j = rng.sample(range(n), 2)
    return SignedPerm.reflection(n, i, j, rng.randrange(2))


def _random_handle(n, rng):
    """A random pair; half of the time a commuting pair (a, a^j), whose commutator is trivial."""
    a = _random_element(n, rng)
    if rng.randrange(2):
        return a, _random_element(n, rng)
    b = SignedPerm.identity(n)
    for _ in range(rng.randrange(4)):
        b = b * a
    return a, b


def _hurwitz_shuffle(branches, rng, moves):
    """Braid moves (g, h) -> (h, h^-1 g h) keep the product and the simple type."""
    out = list(branches)
    for _ in range(moves):
        i = rng.randrange(len(out) - 1)
        g, h = out[i], out[i + 1]
        out[i], out[i + 1] = h, h.inverse() * g * h
    return out


def random_simple_monodromy(n, branch_count, genus_Y=0, seed=0, max_tries=200) -> MonodromyData:
    """Seeded instance whose strand action is transitive and whose liftings split in two.

    The branch list starts as a reflection factorization of the inverse of
    the handle commutators, padded with pairs (r, r), and is then mixed with
    random braid moves.  Handle pairs commute half of the time so that few
    branch points still suffice when genus_Y > 0.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if branch_count < 1:
        raise ValueError("need at least one branch point")
    if branch_count % 2:
        raise ValueError("a product of simple elements is trivial only for an even count")
    if genus_Y < 0:
        raise ValueError("genus_Y must be nonnegative")
    if n * (2 * genus_Y - 2) + branch_count < -2:
        raise ValueError("Riemann-Hurwitz leaves no connected cover with these counts")
    rng = random.Random(seed)
    for _ in range(max_tries):
        handles = [_random_handle(n, rng) for _ in range(genus_Y)]
        target = SignedPerm.identity(n)
        for a, b in handles:
            target = target * commutator(a, b)
        start = reflection_factorization(target.inverse())
        if len(start) > branch_count or (branch_count - len(start)) % 2:
            continue
        while len(start) < branch_count:
            r = _random_simple(n, rng)
            pos = rng.randrange(len(start) + 1)
            start[pos:pos] = [r, r]
        branches = _hurwitz_shuffle(start, rng, 8 * branch_count * max(n, 2))
        data = MonodromyData(n, genus_Y, handles, branches)
        counts = component_counts(data)
        if counts.transitive and counts.split_lifting:
            return data
    raise NoInstanceFound(f"no instance found for n={n}, branches={branch_count}, genus_Y={genus_Y}")
