"""The coefficient group G = Z^a + Z/m of a 1-palette.

Elements store literal integer exponents over the generators.  Group
identity is tested modulo the torsion order, but the stored torsion
exponent is preserved by products and powers: symbolic evaluation embeds
an element as the monomial with exactly the stored exponents, which is
what makes values like t^-2 (rather than its residue t^3) come out of
the lens computations.

Torsion orders must be odd (no 2-torsion) unless the group is built
with formal=True; formal groups exist only to drive symbolic identity
checks and refuse cyclotomic evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PaletteGroup:
    free_rank: int
    torsion_order: int = 1
    formal: bool = False

    def __post_init__(self):
        if self.free_rank < 1:
            raise ValueError("palette group needs free rank >= 1")
        if self.torsion_order < 1:
            raise ValueError("torsion order must be >= 1")
        if self.torsion_order % 2 == 0 and not self.formal:
            raise ValueError("palette group torsion must be odd "
                             "(no elements of order 2)")

    @property
    def has_torsion(self) -> bool:
        return self.torsion_order > 1

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, 0)

    def free_gen(self, i: int, power: int = 1) -> "GroupElement":
        free = [0] * self.free_rank
        free[i] = power
        return GroupElement(self, tuple(free), 0)

    def torsion_gen(self, power: int = 1) -> "GroupElement":
        if not self.has_torsion:
            raise ValueError("group has no torsion part")
        return GroupElement(self, (0,) * self.free_rank, power)

    def element(self, free=(), torsion: int = 0) -> "GroupElement":
        free = tuple(free) + (0,) * (self.free_rank - len(free))
        return GroupElement(self, free, torsion)


@dataclass(frozen=True)
class GroupElement:
    group: PaletteGroup
    free: tuple
    torsion: int

    def _check(self, other: "GroupElement"):
        if other.group != self.group:
            raise ValueError("elements of different palette groups")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.free, other.free)),
                            self.torsion + other.torsion)

    def __pow__(self, e: int) -> "GroupElement":
        return GroupElement(self.group,
                            tuple(a * e for a in self.free),
                            self.torsion * e)

    def inverse(self) -> "GroupElement":
        return self ** -1

    def is_identity(self) -> bool:
        return (all(a == 0 for a in self.free)
                and self.torsion % self.group.torsion_order == 0)

    def reduced(self) -> "GroupElement":
        """Torsion exponent in the balanced residue system; free part unchanged."""
        m = self.group.torsion_order
        t = self.torsion % m
        if 2 * t > m:
            t -= m
        return GroupElement(self.group, self.free, t)

    def same_element(self, other: "GroupElement") -> bool:
        self._check(other)
        return (self.free == other.free
                and (self.torsion - other.torsion) % self.group.torsion_order == 0)

    def __repr__(self):
        bits = [f"z{i}^{a}" for i, a in enumerate(self.free) if a]
        if self.torsion:
            bits.append(f"w^{self.torsion}")
        return "*".join(bits) if bits else "1"
