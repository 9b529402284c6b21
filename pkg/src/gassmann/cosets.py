"""Coset actions G on G/H: permutation matrices, permutation characters,
and cycle-type (splitting) tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .perms import ConjClass, Group, Perm, Subgroup, compose, cycle_type
from .zmatrix import ExactMatrix


@dataclass(frozen=True)
class PermRep:
    """The action of G on the left cosets of H, with coset 0 = H itself.

    Coset representatives are found by BFS over the group generators from
    the identity, so the numbering (and hence every matrix built from it)
    is deterministic.
    """

    group: Group
    subgroup: Subgroup
    cosets: tuple[Perm, ...]  # representative of each coset
    coset_of: dict[Perm, int] = field(repr=False, hash=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.cosets)

    def act(self, g: Perm, i: int) -> int:
        """Index of the coset g * (cosets[i] H)."""
        return self.coset_of[compose(g, self.cosets[i])]

    def perm_of(self, g: Perm) -> Perm:
        """g as a permutation of coset indices."""
        if g not in self.group.elements:
            raise ValueError("element does not belong to the group")
        return tuple(self.coset_of[compose(g, r)] for r in self.cosets)

    def fixed_points(self, g: Perm) -> int:
        return sum(1 for i, r in enumerate(self.cosets) if self.coset_of[compose(g, r)] == i)


def coset_action(group: Group, subgroup: Subgroup) -> PermRep:
    """Transitive action of G on G/H of degree [G:H]."""
    if subgroup.parent is not group:
        raise ValueError("subgroup does not belong to the given group")
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []

    def add_coset(rep: Perm) -> None:
        idx = len(reps)
        reps.append(rep)
        for h in subgroup.elements:
            coset_of[compose(rep, h)] = idx

    add_coset(group.identity())
    frontier = [group.identity()]
    while frontier:
        new = []
        for r in frontier:
            for g in group.generators:
                x = compose(g, r)
                if x not in coset_of:
                    add_coset(x)
                    new.append(x)
        frontier = new
    if len(reps) != subgroup.index:
        raise AssertionError("coset enumeration did not reach the full index")
    rep = PermRep(group=group, subgroup=subgroup, cosets=tuple(reps), coset_of=coset_of)
    _check_stabilizer(rep)
    return rep


def _check_stabilizer(rep: PermRep) -> None:
    """Stabilizer of coset 0 must equal H element-wise."""
    stab = {g for g in rep.group.elements if rep.coset_of[g] == 0}
    if stab != rep.subgroup.elements:
        raise AssertionError("stabilizer of coset 0 differs from the subgroup")


def rep_matrix(rep: PermRep, g: Perm) -> ExactMatrix:
    """The 0/1 matrix of g on Z[G/H]: column j carries a 1 in row act(g, j)."""
    if g not in rep.group.elements:
        raise ValueError("element does not belong to the group")
    n = rep.degree
    rows = [[0] * n for _ in range(n)]
    for j in range(n):
        rows[rep.act(g, j)][j] = 1
    return ExactMatrix.from_rows(rows)


def perm_character(rep: PermRep, classes: Sequence[ConjClass]) -> tuple[int, ...]:
    """Fixed-coset counts per conjugacy class (a class function, so the
    representative suffices)."""
    _check_classes(rep.group, classes)
    return tuple(rep.fixed_points(c.representative) for c in classes)


def _check_classes(group: Group, classes: Sequence[ConjClass]) -> None:
    if sum(c.size for c in classes) != group.order:
        raise ValueError("classes do not partition the given group")
    for c in classes:
        if c.representative not in group.elements:
            raise ValueError("class representative outside the group")


@dataclass(frozen=True)
class SplittingTable:
    """Cycle type of each conjugacy class acting on the cosets.

    This is the unramified splitting data of the corresponding fixed field:
    one row per class, parts summing to the degree.
    """

    degree: int
    rows: tuple[tuple[int, int, tuple[int, ...]], ...]  # (class size, element order, cycle type)

    def __post_init__(self) -> None:
        for size, order, parts in self.rows:
            if sum(parts) != self.degree:
                raise ValueError("cycle type parts do not sum to the degree")


def cycle_type_table(rep: PermRep, classes: Sequence[ConjClass]) -> SplittingTable:
    """Cycle types of class representatives on the cosets, class by class."""
    _check_classes(rep.group, classes)
    rows = []
    for c in classes:
        pi = rep.perm_of(c.representative)
        rows.append((c.size, c.element_order, cycle_type(pi)))
    return SplittingTable(degree=rep.degree, rows=tuple(rows))


def character_inner_product(
    chi1: Sequence[int], chi2: Sequence[int], classes: Sequence[ConjClass], order: int
) -> int:
    """<chi1, chi2> = (1/|G|) sum over classes of |class| * chi1 * chi2.

    Permutation characters are integer-valued, so the result must be an
    exact integer; a remainder means the inputs were inconsistent.
    """
    if not (len(chi1) == len(chi2) == len(classes)):
        raise ValueError("character vectors and classes must align")
    total = sum(c.size * a * b for c, a, b in zip(classes, chi1, chi2))
    if total % order != 0:
        raise ValueError("inner product is not integral; inconsistent inputs")
    return total // order


def splitting_tables_match(t1: SplittingTable, t2: SplittingTable) -> bool:
    return t1.degree == t2.degree and t1.rows == t2.rows


def format_side_by_side(
    t1: SplittingTable, t2: SplittingTable, label1: str = "H1", label2: str = "H2"
) -> str:
    """Aligned text table: one row per class, both cycle types side by side."""
    if len(t1.rows) != len(t2.rows):
        raise ValueError("tables have different class counts")
    header = f"{'class size':>10}  {'elt order':>9}  {label1:<24}  {label2:<24}"
    lines = [header, "-" * len(header)]
    for (size, order, parts1), (_, _, parts2) in zip(t1.rows, t2.rows):
        c1 = "+".join(map(str, parts1))
        c2 = "+".join(map(str, parts2))
        lines.append(f"{size:>10}  {order:>9}  {c1:<24}  {c2:<24}")
    return "\n".join(lines)
