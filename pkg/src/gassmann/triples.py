"""Rational equivalence certificates: equal permutation characters plus a
subgroup conjugacy verdict, and the normal-quotient reduction."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .cosets import coset_action, perm_character
from .perms import (
    ConjClass,
    Group,
    Perm,
    Subgroup,
    conjugacy_classes,
    is_conjugate_subgroup,
    quotient,
)


class Verdict(str, Enum):
    GASSMANN_TRIPLE = "gassmann-triple"
    CONJUGATE_PAIR = "conjugate-pair"
    CHARACTER_MISMATCH = "character-mismatch"


@dataclass(frozen=True)
class GassmannReport:
    """Everything needed to audit a rational-equivalence check.

    verdict is gassmann-triple exactly when the character vectors agree on
    every class and no conjugator exists; the full vectors are kept so that
    downstream artifacts can be checked without recomputation.
    """

    index1: int
    index2: int
    character1: tuple[int, ...]
    character2: tuple[int, ...]
    class_sizes: tuple[int, ...]
    class_orders: tuple[int, ...]
    characters_equal: bool
    conjugate_in_g: bool
    conjugator: Optional[Perm]
    verdict: Verdict

    def __post_init__(self) -> None:
        expected = (
            Verdict.GASSMANN_TRIPLE
            if self.characters_equal and not self.conjugate_in_g
            else (Verdict.CONJUGATE_PAIR if self.conjugate_in_g else Verdict.CHARACTER_MISMATCH)
        )
        if self.verdict != expected:
            raise ValueError("verdict inconsistent with report fields")
        if self.characters_equal and self.character1[0] != self.character2[0]:
            raise ValueError("equal characters but unequal identity entries")


def check_triple(
    group: Group,
    h1: Subgroup,
    h2: Subgroup,
    classes: Optional[list[ConjClass]] = None,
) -> GassmannReport:
    """Compare the permutation characters of G/H1 and G/H2 class by class
    (exact integer equality) and search G exhaustively for a conjugator."""
    if classes is None:
        classes = conjugacy_classes(group)
    rep1 = coset_action(group, h1)
    rep2 = coset_action(group, h2)
    chi1 = perm_character(rep1, classes)
    chi2 = perm_character(rep2, classes)
    characters_equal = chi1 == chi2
    conjugator = is_conjugate_subgroup(group, h1, h2)
    conjugate_in_g = conjugator is not None
    if conjugate_in_g and not characters_equal:
        raise AssertionError("conjugate subgroups with different characters")
    if characters_equal and not conjugate_in_g:
        verdict = Verdict.GASSMANN_TRIPLE
    elif conjugate_in_g:
        verdict = Verdict.CONJUGATE_PAIR
    else:
        verdict = Verdict.CHARACTER_MISMATCH
    return GassmannReport(
        index1=rep1.degree,
        index2=rep2.degree,
        character1=chi1,
        character2=chi2,
        class_sizes=tuple(c.size for c in classes),
        class_orders=tuple(c.element_order for c in classes),
        characters_equal=characters_equal,
        conjugate_in_g=conjugate_in_g,
        conjugator=conjugator,
        verdict=verdict,
    )


def quotient_triple(
    group: Group, n: Subgroup, h1: Subgroup, h2: Subgroup
) -> GassmannReport:
    """Push the pair through G -> G/N and report the literal verdict there.

    For degenerate N (e.g. N = G) the images are conjugate and the verdict
    says so; no Gassmann conclusion is assumed.
    """
    q = quotient(group, n)
    h1_image = q.project_subgroup(h1, name="h1-image")
    h2_image = q.project_subgroup(h2, name="h2-image")
    return check_triple(q.group, h1_image, h2_image)
