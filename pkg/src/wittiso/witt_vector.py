from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perfect_algebra import AlgebraDescriptor, AlgebraElement, AlgebraError


@dataclass(frozen=True)
class WittVector:
    """(r_0, ..., r_{n-1}) in W_n(R); also the normal form of ZR/I^n."""

    algebra: AlgebraDescriptor
    components: tuple[AlgebraElement, ...]

    def __post_init__(self):
        if not self.components:
            raise AlgebraError("a Witt vector needs at least one component")
        for c in self.components:
            if c.descriptor is not self.algebra and c.descriptor != self.algebra:
                raise AlgebraError("Witt component from a different algebra")

    @classmethod
    def of(cls, algebra: AlgebraDescriptor, comps: Sequence) -> "WittVector":
        return cls(algebra, tuple(
            c if isinstance(c, AlgebraElement) else algebra.element(c) for c in comps))

    @classmethod
    def zero(cls, algebra: AlgebraDescriptor, n: int) -> "WittVector":
        return cls(algebra, (algebra.zero,) * n)

    @classmethod
    def one(cls, algebra: AlgebraDescriptor, n: int) -> "WittVector":
        return cls(algebra, (algebra.one,) + (algebra.zero,) * (n - 1))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def p(self) -> int:
        return self.algebra.p

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def truncate(self, m: int) -> "WittVector":
        return WittVector(self.algebra, self.components[:m])

    def __str__(self):
        from .parsing import format_witt_vector
        return format_witt_vector(self)

    def to_json(self) -> dict:
        from .parsing import format_field_element
        return {"p": self.p, "n": self.n,
                "components": [format_field_element(c) for c in self.components]}
