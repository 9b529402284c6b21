"""Finite permutation groups as fully enumerated element sets.

Permutations are tuples of images on ``0..degree-1``; the composition
convention is ``compose(a, b)(x) == a(b(x))`` (right factor applied first).
Groups are enumerated completely -- no stabilizer chains -- which is fine for
every target here (orders up to ~25000, hard cap 10**5 by default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Perm = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 100_000


class ClosureOverflowError(RuntimeError):
    """Group closure grew past the allowed cap."""


class DegreeMismatchError(ValueError):
    """Permutations of different degrees were combined."""


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def check_perm(images: Sequence[int]) -> Perm:
    """Validate that ``images`` is a bijection on 0..n-1 and return it as a tuple."""
    p = tuple(images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation of 0..{len(p) - 1}: {p!r}")
    return p


def compose(a: Perm, b: Perm) -> Perm:
    """Product a*b acting as x -> a(b(x))."""
    if len(a) != len(b):
        raise DegreeMismatchError(f"degree {len(a)} vs {len(b)}")
    return tuple(a[x] for x in b)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(g: Perm, x: Perm) -> Perm:
    """g * x * g^-1."""
    # (g x g^-1)(g(i)) = g(x(i)), so build images directly without invert().
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[g[i]] = g[xi]
    return tuple(out)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = _lcm(order, length)
    return order


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths of p, sorted descending; parts sum to the degree."""
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parts.append(length)
    parts.sort(reverse=True)
    return tuple(parts)


def _lcm(a: int, b: int) -> int:
    import math

    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Group:
    """A fully enumerated permutation group."""

    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]
    name: Optional[str] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def sorted_elements(self) -> list[Perm]:
        """Elements in the fixed total order (lexicographic on image tuples)."""
        return sorted(self.elements)

    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def subgroup(self, generators: Iterable[Perm], name: Optional[str] = None) -> "Subgroup":
        gens = tuple(check_perm(g) for g in generators)
        for g in gens:
            if g not in self.elements:
                raise ValueError("subgroup generator not in parent group")
        elems = _close(gens or (identity_perm(self.degree),), self.order)
        return Subgroup(parent=self, generators=gens, elements=frozenset(elems), name=name)

    def subgroup_from_elements(self, elements: Iterable[Perm], name: Optional[str] = None) -> "Subgroup":
        elems = frozenset(elements)
        if not elems <= self.elements:
            raise ValueError("subgroup elements not contained in parent group")
        sub = Subgroup(parent=self, generators=tuple(sorted(elems)), elements=elems, name=name)
        sub.check_closed()
        return sub


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an enumerated parent group, itself fully enumerated."""

    parent: Group
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]
    name: Optional[str] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.parent.degree

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def check_closed(self) -> None:
        """Assert closure under composition and inversion (Lagrange comes free)."""
        elems = self.elements
        for a in elems:
            if invert(a) not in elems:
                raise ValueError("element set not closed under inversion")
        gens = self.generators
        for g in gens:
            for a in elems:
                if compose(g, a) not in elems:
                    raise ValueError("element set not closed under composition")
        if self.parent.order % len(elems) != 0:
            raise ValueError("subgroup order does not divide parent order")


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class with its lex-least representative and membership set."""

    representative: Perm
    members: frozenset[Perm]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def element_order(self) -> int:
        return perm_order(self.representative)

    def __contains__(self, p: Perm) -> bool:
        return p in self.members


def _close(generators: Sequence[Perm], cap: int) -> set[Perm]:
    degree = len(generators[0])
    elems: set[Perm] = {identity_perm(degree)}
    frontier = [g for g in generators if g not in elems]
    elems.update(frontier)
    while frontier:
        new: list[Perm] = []
        for g in generators:
            for b in frontier:
                c = compose(g, b)
                if c not in elems:
                    elems.add(c)
                    new.append(c)
                    if len(elems) > cap:
                        raise ClosureOverflowError(
                            f"closure exceeded cap of {cap} elements"
                        )
        frontier = new
    return elems


def close_group(
    generators: Sequence[Perm],
    cap: int = DEFAULT_CLOSURE_CAP,
    name: Optional[str] = None,
) -> Group:
    """Enumerate the group generated by ``generators``.

    Raises ClosureOverflowError if more than ``cap`` elements appear, and
    DegreeMismatchError if the generators act on different point counts.
    """
    if not generators:
        raise ValueError("need at least one generator")
    gens = tuple(check_perm(g) for g in generators)
    degree = len(gens[0])
    for g in gens[1:]:
        if len(g) != degree:
            raise DegreeMismatchError("generators have mixed degrees")
    elems = _close(gens, cap)
    return Group(degree=degree, generators=gens, elements=frozenset(elems), name=name)


def conjugacy_classes(group: Group) -> list[ConjClass]:
    """Partition the group into conjugation orbits.

    Orbits are flood-filled under conjugation by the generators; classes are
    returned sorted by their lex-least representative, which puts the identity
    class first.
    """
    gens = group.generators
    remaining = set(group.elements)
    classes: list[ConjClass] = []
    while remaining:
        seed = remaining.pop()
        orbit = {seed}
        frontier = [seed]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = conjugate(g, x)
                    if y not in orbit:
                        orbit.add(y)
                        new.append(y)
            frontier = new
        remaining -= orbit
        classes.append(ConjClass(representative=min(orbit), members=frozenset(orbit)))
    classes.sort(key=lambda c: c.representative)
    if sum(c.size for c in classes) != group.order:
        raise AssertionError("class sizes do not sum to the group order")
    return classes


def is_conjugate_subgroup(
    group: Group, h1: Subgroup, h2: Subgroup
) -> Optional[Perm]:
    """Find g in the group with g*H1*g^-1 == H2, or None if there is none.

    The search is exhaustive over the group, pruned by the order invariant;
    a returned conjugator is verified on every generator of H1.  Fine for
    the orders in play here (<= ~25000).
    """
    if h1.parent is not group or h2.parent is not group:
        raise ValueError("subgroups must live in the given group")
    if h1.order != h2.order:
        return None
    # Conjugation preserves element orders, so mismatched order statistics
    # rule the pair out without touching the conjugator loop.
    if sorted(map(perm_order, h1.elements)) != sorted(map(perm_order, h2.elements)):
        return None
    gens1 = h1.generators if h1.generators else (group.identity(),)
    target = h2.elements
    for g in group.sorted_elements():
        if all(conjugate(g, a) in target for a in gens1):
            # Generators land in H2 and conjugation preserves order, so
            # g H1 g^-1 <= H2 with equal orders, hence equality.
            return g
    return None


@dataclass(frozen=True)
class QuotientGroup:
    """Quotient G/N realized on the coset space, with the projection recorded."""

    group: Group
    kernel: Subgroup
    projection: dict[Perm, Perm] = field(repr=False, hash=False, compare=False)

    def project(self, g: Perm) -> Perm:
        return self.projection[g]

    def project_subgroup(self, h: Subgroup, name: Optional[str] = None) -> Subgroup:
        images = {self.projection[x] for x in h.elements}
        return self.group.subgroup_from_elements(images, name=name)


def is_normal(group: Group, n: Subgroup) -> bool:
    nset = n.elements
    return all(
        conjugate(g, x) in nset for g in group.generators for x in nset
    )


def quotient(group: Group, n: Subgroup) -> QuotientGroup:
    """Quotient by a normal subgroup, as a permutation group on the cosets.

    Cosets of N are enumerated by BFS from the identity coset; the quotient
    acts by left multiplication and the projection map is returned alongside.
    Raises ValueError when N is not normal.
    """
    if n.parent is not group:
        raise ValueError("subgroup does not belong to the given group")
    if not is_normal(group, n):
        raise ValueError("subgroup is not normal")
    coset_id: dict[Perm, int] = {}
    reps: list[Perm] = []

    def add_coset(rep: Perm) -> int:
        idx = len(reps)
        reps.append(rep)
        for h in n.elements:
            coset_id[compose(rep, h)] = idx
        return idx

    add_coset(group.identity())
    frontier = [group.identity()]
    while frontier:
        new = []
        for r in frontier:
            for g in group.generators:
                x = compose(g, r)
                if x not in coset_id:
                    add_coset(x)
                    new.append(x)
        frontier = new

    m = len(reps)
    gen_image = {
        g: tuple(coset_id[compose(g, reps[i])] for i in range(m))
        for g in group.generators
    }
    # The projection is a homomorphism, so extend it over the closure by BFS.
    projection: dict[Perm, Perm] = {group.identity(): identity_perm(m)}
    elems_frontier = [group.identity()]
    while elems_frontier:
        new = []
        for x in elems_frontier:
            for g in group.generators:
                y = compose(g, x)
                if y not in projection:
                    projection[y] = compose(gen_image[g], projection[x])
                    new.append(y)
        elems_frontier = new
    gen_images = tuple(gen_image[g] for g in group.generators)
    q = close_group(gen_images, cap=m, name=f"{group.name}/{n.name}" if group.name else None)
    if q.order * n.order != group.order:
        raise AssertionError("quotient order times kernel order != group order")
    return QuotientGroup(group=q, kernel=n, projection=projection)
