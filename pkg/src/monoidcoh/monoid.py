"""Commutative monoids, their Leech categories, and Beck modules over them.

Monoids are written additively.  A finite monoid is a validated addition
table on the dense indices ``0..size-1`` with an explicit identity; the free
monoid ``N^r`` has elements that are plain ``int`` for ``r == 1`` and
tuples of naturals otherwise.

A (left) Beck module is a functor on the Leech category ``L_X``: a free
module ``M_x`` of rank ``rank_of(x)`` for every element and a matrix
``action_of(y, x): M_x -> M_{x+y}`` for every morphism ``y_*``.  A right
module is the contravariant analogue, with ``action_of(y, x)`` the matrix of
``phi_{x,y}: M^{x+y} -> M^x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .linalg import dense_identity, dense_mul, dense_zero, is_zero_dense
from .rings import CoefficientRing


class MonoidError(ValueError):
    """Base class for invalid monoid descriptions."""


class _TripleError(MonoidError):
    def __init__(self, message, triple):
        super().__init__(f"{message}: {triple}")
        self.triple = triple


class UnitLawViolation(_TripleError):
    pass


class NotCommutative(_TripleError):
    pass


class NotAssociative(_TripleError):
    pass


class FunctorialityViolation(ValueError):
    def __init__(self, message, where=None):
        super().__init__(message if where is None else f"{message} at {where}")
        self.where = where


class InfiniteRank(ValueError):
    pass


# ---------------------------------------------------------------- monoids


class FiniteCommutativeMonoid:
    """A validated finite commutative monoid given by its addition table."""

    is_finite = True

    def __init__(self, table, identity=0, name=None):
        self.table = validate_table(table, identity)
        self.size = len(self.table)
        self.identity = identity
        self.name = name or f"table{self.size}"

    def __repr__(self):
        return f"FiniteCommutativeMonoid({self.name})"

    def __eq__(self, other):
        return (isinstance(other, FiniteCommutativeMonoid)
                and self.table == other.table and self.identity == other.identity)

    def __hash__(self):
        return hash((self.table, self.identity))

    def add(self, x, y):
        return self.table[x][y]

    def sum(self, xs):
        s = self.identity
        for x in xs:
            s = self.table[s][x]
        return s

    def elements(self):
        return list(range(self.size))

    def nonidentity(self):
        return [x for x in range(self.size) if x != self.identity]

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.size

    def is_identity(self, x):
        return x == self.identity

    def leech_hom(self, x, z) -> "LeechHomSet":
        return LeechHomSet(x, z, frozenset(y for y in range(self.size) if self.table[x][y] == z))

    def tuples(self, n, degree=None, normalized=True):
        """All ``n``-tuples (lexicographic), optionally with a fixed sum."""
        letters = self.nonidentity() if normalized else self.elements()
        return _finite_tuples(self.table, self.identity, tuple(letters), n, degree)

    def to_json(self):
        return {"table": [list(r) for r in self.table], "identity": self.identity}


@lru_cache(maxsize=None)
def _finite_tuples(table, identity, letters, n, degree):
    if n == 0:
        return [()] if degree is None or degree == identity else []
    out = []
    for t in itertools.product(letters, repeat=n):
        if degree is not None:
            s = identity
            for x in t:
                s = table[s][x]
            if s != degree:
                continue
        out.append(t)
    return out


def validate_table(table, identity=0):
    """Check a candidate addition table and return it as a tuple of tuples.

    Raises ``UnitLawViolation``, ``NotCommutative`` or ``NotAssociative``
    naming the first offending triple (``(x, y, table[x][y])`` for the unit
    and commutativity laws, ``(x, y, z)`` for associativity).
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise MonoidError("empty table")
    for r in rows:
        if len(r) != n:
            raise MonoidError("addition table must be square")
        for v in r:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise MonoidError(f"table entry {v!r} out of range 0..{n - 1}")
    if not isinstance(identity, int) or not 0 <= identity < n:
        raise MonoidError(f"identity {identity!r} out of range")
    for x in range(n):
        if rows[identity][x] != x:
            raise UnitLawViolation("unit law fails", (identity, x, rows[identity][x]))
        if rows[x][identity] != x:
            raise UnitLawViolation("unit law fails", (x, identity, rows[x][identity]))
    for x in range(n):
        for y in range(x + 1, n):
            if rows[x][y] != rows[y][x]:
                raise NotCommutative("not commutative", (x, y, rows[x][y]))
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            xy = rx[y]
            for z in range(n):
                if rows[xy][z] != rx[rows[y][z]]:
                    raise NotAssociative("not associative", (x, y, z))
    return tuple(tuple(r) for r in rows)


def validate_monoid(table, identity=0, name=None) -> FiniteCommutativeMonoid:
    return FiniteCommutativeMonoid(table, identity, name)


class FreeMonoid:
    """The free commutative monoid ``N^rank``."""

    is_finite = False

    def __init__(self, rank=1):
        if rank < 1:
            raise MonoidError("FreeMonoid rank must be positive")
        self.rank = rank
        self.identity = 0 if rank == 1 else (0,) * rank
        self.name = "N" if rank == 1 else f"N^{rank}"

    def __repr__(self):
        return f"FreeMonoid({self.rank})"

    def __eq__(self, other):
        return isinstance(other, FreeMonoid) and other.rank == self.rank

    def __hash__(self):
        return hash(("free", self.rank))

    def add(self, x, y):
        if self.rank == 1:
            return x + y
        return tuple(a + b for a, b in zip(x, y))

    def sum(self, xs):
        s = self.identity
        for x in xs:
            s = self.add(s, x)
        return s

    def contains(self, x):
        if self.rank == 1:
            return isinstance(x, int) and not isinstance(x, bool) and x >= 0
        return (isinstance(x, tuple) and len(x) == self.rank
                and all(isinstance(a, int) and a >= 0 for a in x))

    def is_identity(self, x):
        return x == self.identity

    def leech_hom(self, x, z) -> "LeechHomSet":
        if self.rank == 1:
            w = frozenset([z - x]) if z >= x else frozenset()
        else:
            diff = tuple(b - a for a, b in zip(x, z))
            w = frozenset([diff]) if min(diff) >= 0 else frozenset()
        return LeechHomSet(x, z, w)

    def tuples(self, n, degree=None, normalized=True):
        if degree is None:
            raise DegreeRequired("an internal degree is required for the free monoid")
        if self.rank == 1:
            return _compositions(degree, n, 1 if normalized else 0)
        return _vector_compositions(tuple(degree), n, normalized)

    def to_json(self):
        return {"family": "free", "rank": self.rank}


class DegreeRequired(ValueError):
    pass


@lru_cache(maxsize=None)
def _compositions(d, n, lo):
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(lo, d + 1):
        for rest in _compositions(d - first, n - 1, lo):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _vector_compositions(d, n, normalized):
    if n == 0:
        return [()] if not any(d) else []
    out = []
    for first in itertools.product(*(range(a + 1) for a in d)):
        if normalized and not any(first):
            continue
        rest_d = tuple(a - b for a, b in zip(d, first))
        for rest in _vector_compositions(rest_d, n - 1, normalized):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class LeechHomSet:
    """Morphisms ``source -> target`` of the Leech category."""

    source: object
    target: object
    witnesses: frozenset

    def __len__(self):
        return len(self.witnesses)

    def __iter__(self):
        return iter(sorted(self.witnesses))


def leech_hom(X, x, z) -> LeechHomSet:
    return X.leech_hom(x, z)


# ---- built-in families


def trivial_monoid():
    return FiniteCommutativeMonoid([[0]], 0, "trivial")


def cyclic_group(n):
    return FiniteCommutativeMonoid([[(a + b) % n for b in range(n)] for a in range(n)], 0, f"Z/{n}")


def semilattice_chain(n):
    """Chain ``0 < 1 < ... < n-1`` with ``x + y = max(x, y)``."""
    return FiniteCommutativeMonoid([[max(a, b) for b in range(n)] for a in range(n)], 0,
                                   f"chain{n}")


def cyclic_rees(i, p):
    """Cyclic monoid with index ``i`` and period ``p``: ``{0, ..., i+p-1}``."""
    if i < 0 or p < 1:
        raise MonoidError("cyclic_rees needs i >= 0 and p >= 1")
    size = i + p

    def plus(a, b):
        s = a + b
        return s if s < size else i + (s - i) % p

    return FiniteCommutativeMonoid([[plus(a, b) for b in range(size)] for a in range(size)], 0,
                                   f"C({i},{p})")


# ---------------------------------------------------------------- modules


def _as_matrix(ring, m, rows, cols, what):
    mat = tuple(tuple(ring.coerce(v) for v in r) for r in m)
    if rows == 0 and all(len(r) == 0 for r in mat):
        return ()
    if len(mat) != rows or any(len(r) != cols for r in mat):
        raise FunctorialityViolation(f"matrix for {what} has wrong shape, expected {rows}x{cols}")
    return mat


class BeckModule:
    """Left (covariant) Beck module.

    Over a finite monoid all ranks and action matrices are tabulated and the
    functor laws are checked exhaustively on construction.  Over a free
    monoid the module has constant rank and is described by commuting
    generator matrices; ``action_of(y, x)`` is the corresponding product of
    powers.
    """

    side = "left"

    def __init__(self, monoid, ring: CoefficientRing, ranks=None, actions=None,
                 generators=None, rank=None, name="custom", check=True):
        self.monoid = monoid
        self.ring = ring
        self.name = name
        if monoid.is_finite:
            self._ranks = {x: int(ranks[x]) for x in monoid.elements()}
            self._actions = {}
            for (y, x), m in actions.items():
                tgt = monoid.add(x, y) if self.side == "left" else x
                src = x if self.side == "left" else monoid.add(x, y)
                self._actions[(y, x)] = _as_matrix(ring, m, self._ranks[tgt], self._ranks[src], (y, x))
            for x in monoid.elements():
                e = monoid.identity
                self._actions.setdefault((e, x), dense_identity(ring, self._ranks[x]))
                for y in monoid.elements():
                    if (y, x) not in self._actions:
                        raise FunctorialityViolation("missing action matrix", (y, x))
            self._gens = None
        else:
            if rank is None:
                raise InfiniteRank("modules over a free monoid need a constant rank")
            self._rank = int(rank)
            gens = generators if generators is not None else [dense_identity(ring, self._rank)] * monoid.rank
            if len(gens) != monoid.rank:
                raise FunctorialityViolation("need one generator matrix per free generator")
            self._gens = tuple(_as_matrix(ring, g, self._rank, self._rank, f"generator {i}")
                               for i, g in enumerate(gens))
            self._powers = {}
        if check:
            self.check()

    def __repr__(self):
        return f"{type(self).__name__}({self.monoid.name}, {self.ring}, {self.name})"

    def rank_of(self, x):
        if self.monoid.is_finite:
            return self._ranks[x]
        return self._rank

    def action_of(self, y, x):
        if self.monoid.is_finite:
            return self._actions[(y, x)]
        ys = (y,) if self.monoid.rank == 1 else y
        out = dense_identity(self.ring, self._rank)
        for i, k in enumerate(ys):
            out = dense_mul(self.ring, out, self._generator_power(i, k), self._rank)
        return out

    def _generator_power(self, i, k):
        key = (i, k)
        if key not in self._powers:
            if k == 0:
                val = dense_identity(self.ring, self._rank)
            else:
                val = dense_mul(self.ring, self._generator_power(i, k - 1), self._gens[i], self._rank)
            self._powers[key] = val
        return self._powers[key]

    def check(self):
        """Verify the unit and composition laws (exact equality)."""
        X, R = self.monoid, self.ring
        if not X.is_finite:
            for a, b in itertools.combinations(self._gens, 2):
                if dense_mul(R, a, b, self._rank) != dense_mul(R, b, a, self._rank):
                    raise FunctorialityViolation("generator matrices do not commute")
            return
        e = X.identity
        for x in X.elements():
            if self._actions[(e, x)] != dense_identity(R, self._ranks[x]):
                raise FunctorialityViolation("identity does not act as the identity", (e, x))
        for x in X.elements():
            for y in X.elements():
                for y2 in X.elements():
                    self._check_square(x, y, y2)

    def _check_square(self, x, y, y2):
        X, R = self.monoid, self.ring
        lhs = dense_mul(R, self._actions[(y2, X.add(x, y))], self._actions[(y, x)],
                        self._ranks[x])
        if lhs != self._actions[(X.add(y, y2), x)]:
            raise FunctorialityViolation("composition law fails", (x, y, y2))

    def is_degree_preserving(self):
        """True when every non-identity ``y_*: M_x -> M_{x+y}`` with
        ``x + y != x`` is zero, so the cochain differential preserves
        tuple sums."""
        X = self.monoid
        if not X.is_finite:
            return all(is_zero_dense(g) for g in self._gens)
        for (y, x), m in self._actions.items():
            if y != X.identity and X.add(x, y) != x and not is_zero_dense(m):
                return False
        return True

    def graded_part(self):
        """The module with every action ``y_*`` that moves the degree set to
        zero.  Raises ``FunctorialityViolation`` if that is not a functor
        (e.g. over a group)."""
        X, R = self.monoid, self.ring
        if not X.is_finite:
            zero = dense_zero(R, self._rank, self._rank)
            return type(self)(X, R, generators=[zero] * X.rank, rank=self._rank,
                              name=f"gr({self.name})")
        acts = {}
        for (y, x), mat in self._actions.items():
            keep = y == X.identity or X.add(x, y) == x
            if keep:
                acts[(y, x)] = mat
            else:
                tgt, src = (X.add(x, y), x) if self.side == "left" else (x, X.add(x, y))
                acts[(y, x)] = dense_zero(R, self._ranks[tgt], self._ranks[src])
        return type(self)(X, R, ranks=self._ranks, actions=acts, name=f"gr({self.name})")

    def dual(self):
        """Transpose every action: a left module becomes a right one and
        vice versa (``Hom(-, K)`` when the ring is a field)."""
        X, R = self.monoid, self.ring
        cls = RightBeckModule if self.side == "left" else BeckModule
        name = f"{self.name}*"
        if not X.is_finite:
            gens = [tuple(zip(*g)) if self._rank else () for g in self._gens]
            return cls(X, R, generators=gens, rank=self._rank, name=name)
        acts = {k: tuple(zip(*m)) for k, m in self._actions.items()}
        for (y, x), m in self._actions.items():
            if not m or not m[0]:
                tgt, src = (X.add(x, y), x) if self.side == "left" else (x, X.add(x, y))
                acts[(y, x)] = dense_zero(R, self._ranks[src], self._ranks[tgt])
        return cls(X, R, ranks=self._ranks, actions=acts, name=name)

    def to_json(self):
        X = self.monoid
        if not X.is_finite:
            return {"rank": self._rank, "generators": [[list(r) for r in g] for g in self._gens]}
        return {"ranks": [self._ranks[x] for x in X.elements()],
                "actions": {f"{y},{x}": [list(r) for r in m]
                            for (y, x), m in sorted(self._actions.items())}}


class RightBeckModule(BeckModule):
    """Right (contravariant) Beck module; ``action_of(y, x)`` is
    ``phi_{x,y}: M^{x+y} -> M^x``."""

    side = "right"

    def _check_square(self, x, y, z):
        # phi_{x,y} . phi_{x+y,z} == phi_{x,y+z}
        X, R = self.monoid, self.ring
        lhs = dense_mul(R, self._actions[(y, x)], self._actions[(z, X.add(x, y))],
                        self._ranks[X.add(X.add(x, y), z)])
        if lhs != self._actions[(X.add(y, z), x)]:
            raise FunctorialityViolation("right composition law fails", (x, y, z))


def constant_module(X, ring, rank=1, generator_images=None, preset="identity", side="left"):
    """Constant-rank module whose action does not depend on the source degree.

    ``generator_images`` maps each element (finite ``X``) or lists one
    matrix per free generator (free ``X``).  Without it, ``preset`` picks
    ``"identity"`` (every ``y_*`` is the identity, the pullback of a module
    along ``X -> e``) or ``"augmentation"`` (every non-identity ``y_*`` is
    zero).
    """
    cls = BeckModule if side == "left" else RightBeckModule
    ident = dense_identity(ring, rank)
    zero = dense_zero(ring, rank, rank)
    if not X.is_finite:
        if generator_images is None:
            generator_images = [ident if preset == "identity" else zero] * X.rank
        elif X.rank == 1 and generator_images and not isinstance(generator_images[0][0], (list, tuple)):
            generator_images = [generator_images]
        name = preset if generator_images is None else "constant"
        return cls(X, ring, generators=generator_images, rank=rank, name=name)
    if generator_images is None:
        if preset not in ("identity", "augmentation"):
            raise ValueError(f"unknown preset {preset!r}")
        generator_images = {y: ident if (preset == "identity" or y == X.identity) else zero
                            for y in X.elements()}
        name = preset
    else:
        generator_images = {int(k): v for k, v in generator_images.items()}
        generator_images.setdefault(X.identity, ident)
        name = "constant"
    ranks = {x: rank for x in X.elements()}
    actions = {(y, x): generator_images[y] for y in X.elements() for x in X.elements()}
    return cls(X, ring, ranks=ranks, actions=actions, name=name)


def projective_module(X, ring, x, side="left"):
    """The representable module ``P^x`` (left) or ``P_x`` (right).

    Left: ``P^x_y`` is free on ``L_X(x, y)``, ``t_*`` sends witness ``z`` to
    ``z + t``.  Right: ``P_x^w`` is free on ``L_X(w, x)``, ``phi_{w,t}``
    sends ``z`` to ``t + z``.
    """
    if not X.is_finite:
        raise InfiniteRank("projective modules over a free monoid have infinite total rank")
    R = ring
    els = X.elements()
    if side == "left":
        bases = {y: sorted(X.leech_hom(x, y).witnesses) for y in els}
    else:
        bases = {w: sorted(X.leech_hom(w, x).witnesses) for w in els}
    ranks = {y: len(bases[y]) for y in els}
    actions = {}
    for t in els:
        for y in els:
            if side == "left":
                src, tgt = bases[y], bases[X.add(y, t)]
            else:
                src, tgt = bases[X.add(y, t)], bases[y]
            m = [[0] * len(src) for _ in tgt]
            index = {z: i for i, z in enumerate(tgt)}
            for j, z in enumerate(src):
                m[index[X.add(z, t)]][j] = 1
            actions[(t, y)] = m
    cls = BeckModule if side == "left" else RightBeckModule
    return cls(X, R, ranks=ranks, actions=actions,
               name=f"P^{x}" if side == "left" else f"P_{x}")


def zero_module(X, ring, side="left"):
    return constant_module(X, ring, rank=0, preset="identity", side=side)
