"""Constructions of the named groups: PSL2/PGL2 on the projective line,
SL3(F2) on the Fano plane, and the non-conjugate A5 pair in PSL2(F29)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .perms import (
    Group,
    Perm,
    Subgroup,
    close_group,
    compose,
    conjugate,
    identity_perm,
    invert,
    is_conjugate_subgroup,
    perm_order,
)

PSL2_PRIME_CAP = 97


@dataclass(frozen=True)
class ProjectiveLineLabeling:
    """Points of P^1(F_p): labels 0..p-1 are affine x, label p is infinity."""

    p: int

    @property
    def size(self) -> int:
        return self.p + 1

    @property
    def infinity(self) -> int:
        return self.p


class A5SearchError(RuntimeError):
    """No A5 subgroup was found within the search budget."""


class ConjugatePairError(RuntimeError):
    """The constructed pair turned out to be conjugate already in PSL2."""


@dataclass(frozen=True)
class A5PairWitness:
    """Two A5 subgroups of PSL2(F_p), swapped by an element of PGL2 \\ PSL2.

    ``nonconjugacy_checked`` records that the exhaustive conjugator search
    over all of PSL2 came back empty; ``seed`` makes the generator search
    reproducible.
    """

    group: Group  # PSL2(F_p)
    overgroup: Group  # PGL2(F_p)
    h1: Subgroup
    h2: Subgroup
    tau: Perm
    seed: int
    nonconjugacy_checked: bool


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, int(p**0.5) + 1, 2))


def _mod_inverse(x: int, p: int) -> int:
    return pow(x, p - 2, p)


def psl2(p: int, name: Optional[str] = None) -> Group:
    """PSL2(F_p) acting on the p+1 points of the projective line.

    Generated by the translation x -> x+1 and the inversion x -> -1/x,
    with the point at infinity handled explicitly (0 and infinity swap
    under inversion).  The order is checked against p(p^2-1)/2.
    """
    if not _is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if p > PSL2_PRIME_CAP:
        raise ValueError(f"p is capped at {PSL2_PRIME_CAP}, got {p}")
    labeling = ProjectiveLineLabeling(p)
    inf = labeling.infinity
    translation = tuple([(x + 1) % p for x in range(p)] + [inf])
    inversion_images = [0] * (p + 1)
    inversion_images[0] = inf
    inversion_images[inf] = 0
    for x in range(1, p):
        inversion_images[x] = (-_mod_inverse(x, p)) % p
    inversion = tuple(inversion_images)
    group = close_group([translation, inversion], name=name or f"psl2:{p}")
    expected = p * (p * p - 1) // 2
    if group.order != expected:
        raise AssertionError(f"|PSL2(F_{p})| = {group.order}, expected {expected}")
    return group


def least_nonresidue(p: int) -> int:
    """Least positive quadratic non-residue mod p."""
    squares = {x * x % p for x in range(1, p)}
    for eps in range(2, p):
        if eps not in squares:
            return eps
    raise ValueError(f"no non-residue mod {p}")


def pgl2_scaling(p: int) -> Perm:
    """The coset representative x -> eps*x for PGL2 over PSL2."""
    eps = least_nonresidue(p)
    inf = p
    return tuple([x * eps % p for x in range(p)] + [inf])


def pgl2(p: int, name: Optional[str] = None) -> Group:
    """PGL2(F_p) on the projective line: PSL2 plus the scaling x -> eps*x."""
    base = psl2(p)
    scaling = pgl2_scaling(p)
    group = close_group(
        list(base.generators) + [scaling], name=name or f"pgl2:{p}"
    )
    if group.order != 2 * base.order:
        raise AssertionError(f"|PGL2(F_{p})| = {group.order}, expected {2 * base.order}")
    if not base.elements <= group.elements:
        raise AssertionError("PSL2 element set is not contained in PGL2")
    return group


@dataclass(frozen=True)
class FanoGroup:
    """SL3(F2) on the 7 points of the Fano plane, with the dual line action."""

    group: Group
    dual_action: dict[Perm, Perm]  # point permutation -> line permutation
    p1: Subgroup  # stabilizer of a point
    p2: Subgroup  # stabilizer of a line


def _gl3_f2_perm(matrix: list[list[int]]) -> Perm:
    """Permutation of the 7 nonzero vectors of F_2^3 induced by a matrix.

    Vector (a, b, c) is labeled 4a + 2b + c - 1, so labels run 0..6.
    """
    images = []
    for label in range(7):
        v = label + 1
        a, b, c = (v >> 2) & 1, (v >> 1) & 1, v & 1
        w = [
            (matrix[i][0] * a + matrix[i][1] * b + matrix[i][2] * c) % 2
            for i in range(3)
        ]
        images.append(4 * w[0] + 2 * w[1] + w[2] - 1)
    return check_label_perm(images)


def check_label_perm(images: list[int]) -> Perm:
    if sorted(images) != list(range(len(images))):
        raise ValueError("matrix is not invertible over F2")
    return tuple(images)


def _mat_inv_transpose_f2(matrix: list[list[int]]) -> list[list[int]]:
    """(M^T)^-1 over F_2, by adjugate (det is 1 for invertible M over F_2)."""
    m = matrix

    def cof(i: int, j: int) -> int:
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        return (
            m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
            - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        ) % 2

    # adj(M)[i][j] = cofactor(j, i); inverse = adj since det = 1; transpose back.
    inv = [[cof(j, i) for j in range(3)] for i in range(3)]
    return [[inv[j][i] % 2 for j in range(3)] for i in range(3)]


_SL3_GEN_MATRICES = [
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],  # transvection
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],  # coordinate 3-cycle
]


def psl3_2() -> FanoGroup:
    """SL3(F2) of order 168 with its point and line actions on the Fano plane.

    Lines are labeled by their nonzero normal covectors, with the covector
    action given by inverse-transpose; the dual action is recorded for every
    element so that line stabilizers can be pulled back into the point group.
    """
    gen_perms = [_gl3_f2_perm(m) for m in _SL3_GEN_MATRICES]
    dual_gen_perms = [
        _gl3_f2_perm(_mat_inv_transpose_f2(m)) for m in _SL3_GEN_MATRICES
    ]
    group = close_group(gen_perms, name="psl3_2")
    if group.order != 168:
        raise AssertionError(f"|SL3(F2)| = {group.order}, expected 168")

    # Extend point-perm -> line-perm over the whole closure by BFS.
    dual: dict[Perm, Perm] = {identity_perm(7): identity_perm(7)}
    frontier = list(zip(gen_perms, dual_gen_perms))
    for g, d in frontier:
        dual.setdefault(g, d)
    while frontier:
        new = []
        for g, d in frontier:
            for gg, dd in zip(gen_perms, dual_gen_perms):
                prod = compose(gg, g)
                if prod not in dual:
                    dual[prod] = compose(dd, d)
                    new.append((prod, dual[prod]))
        frontier = new
    if len(dual) != group.order:
        raise AssertionError("dual action extension did not cover the group")

    point = 0  # the vector (0,0,1)
    line = 0  # the covector (0,0,1), i.e. the plane c = 0
    p1 = group.subgroup_from_elements(
        {g for g in group.elements if g[point] == point}, name="p1"
    )
    p2 = group.subgroup_from_elements(
        {g for g in group.elements if dual[g][line] == line}, name="p2"
    )
    if p1.index != 7 or p2.index != 7:
        raise AssertionError("parabolic subgroups do not have index 7")
    return FanoGroup(group=group, dual_action=dual, p1=p1, p2=p2)


def parabolic_pair() -> tuple[Subgroup, Subgroup]:
    fano = psl3_2()
    return fano.p1, fano.p2


def is_a5(h: Subgroup | Group) -> bool:
    """(2,3,5) recognition: order 60 and generated by a, b with
    |a| = 2, |b| = 3, |ab| = 5 -- that presentation forces A5."""
    if len(h.elements) != 60:
        return False
    elems = sorted(h.elements)
    twos = [a for a in elems if perm_order(a) == 2]
    threes = [b for b in elems if perm_order(b) == 3]
    for a in twos:
        for b in threes:
            if perm_order(compose(a, b)) == 5:
                try:
                    closed = close_group([a, b], cap=60)
                except Exception:
                    continue
                if closed.order == 60:
                    return True
    return False


def find_a5_pair(p: int, seed: int = 2029) -> A5PairWitness:
    """Find H1 iso A5 in PSL2(F_p), set H2 = tau H1 tau^-1 for the PGL2
    scaling tau, and verify exhaustively that the pair is not conjugate
    in PSL2.

    The element search is seeded and the seed is recorded in the witness.
    Raises A5SearchError when no (2,3,5) pair exists within the budget and
    ConjugatePairError when every constructed pair is already conjugate in
    PSL2 (neither happens for p = 29).
    """
    group = psl2(p)
    if group.order % 60 != 0:
        raise A5SearchError(
            f"|PSL2(F_{p})| = {group.order} is not divisible by 60; no A5 subgroup"
        )
    overgroup = pgl2(p)
    tau = pgl2_scaling(p)
    if tau in group.elements:
        raise AssertionError("scaling representative unexpectedly lies in PSL2")

    rng = random.Random(seed)
    elems = group.sorted_elements()
    involutions = [g for g in elems if perm_order(g) == 2]
    order_three = [g for g in elems if perm_order(g) == 3]
    rng.shuffle(involutions)
    rng.shuffle(order_three)

    budget = 20_000
    tried = 0
    for a in involutions:
        for b in order_three:
            tried += 1
            if tried > budget:
                raise A5SearchError(f"no A5 found within {budget} candidate pairs")
            if perm_order(compose(a, b)) != 5:
                continue
            h1_group = close_group([a, b], cap=61)
            if h1_group.order != 60:
                continue
            h1 = group.subgroup([a, b], name="h1")
            tau_inv = invert(tau)
            conj_gens = [compose(compose(tau, g), tau_inv) for g in (a, b)]
            h2 = group.subgroup(conj_gens, name="h2")
            if h2.order != 60:
                raise AssertionError("conjugate subgroup has wrong order")
            conjugator = is_conjugate_subgroup(group, h1, h2)
            if conjugator is not None:
                raise ConjugatePairError(
                    "constructed A5 pair is conjugate in PSL2; "
                    f"conjugator found for seed {seed}"
                )
            return A5PairWitness(
                group=group,
                overgroup=overgroup,
                h1=h1,
                h2=h2,
                tau=tau,
                seed=seed,
                nonconjugacy_checked=True,
            )
    raise A5SearchError("exhausted involution/order-3 pairs without finding A5")


def verify_a5_witness(witness: A5PairWitness) -> None:
    """Re-check every A5PairWitness invariant; raises on any failure."""
    if witness.h1.order != 60 or witness.h2.order != 60:
        raise AssertionError("subgroup orders are not 60")
    if not (is_a5(witness.h1) and is_a5(witness.h2)):
        raise AssertionError("A5 recognition failed")
    if witness.tau in witness.group.elements:
        raise AssertionError("tau lies in PSL2")
    if witness.tau not in witness.overgroup.elements:
        raise AssertionError("tau is not in PGL2")
    conj = {conjugate(witness.tau, x) for x in witness.h1.elements}
    if conj != witness.h2.elements:
        raise AssertionError("tau does not conjugate H1 onto H2")
