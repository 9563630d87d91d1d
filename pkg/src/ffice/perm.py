"""Permutations of 1..N and signed permutations (the hyperoctahedral group B_r)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..N} stored as its image tuple (rho(1), ..., rho(N))."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, n: int) -> "Permutation":
        """Adjacent transposition s_i = (i, i+1)."""
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int) -> list["Permutation"]:
        return [cls(p) for p in itertools.permutations(range(1, n + 1))]

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __iter__(self):
        return iter(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def inversions(self) -> int:
        return sum(1 for a, b in itertools.combinations(self.images, 2) if a > b)

    def descents(self) -> list[int]:
        return [t for t in range(1, self.n) if self(t) > self(t + 1)]

    def reduced_word(self, reverse: bool = False) -> list[int]:
        """Indices i_1..i_l with self = s_{i_1} * ... * s_{i_l}.

        The default word comes from bubble-sorting left to right; ``reverse``
        sweeps right to left instead, which generally gives a different word.
        """
        arr = list(self.images)
        word = []
        n = self.n
        changed = True
        while changed:
            changed = False
            positions = range(n - 2, -1, -1) if reverse else range(n - 1)
            for k in positions:
                if arr[k] > arr[k + 1]:
                    arr[k], arr[k + 1] = arr[k + 1], arr[k]
                    word.append(k + 1)
                    changed = True
        # arr = self * s_{w1} * ... * s_{wl} = id, so self = s_{wl} * ... * s_{w1}
        return word[::-1]

    def __str__(self):
        return "(" + ",".join(map(str, self.images)) + ")"


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Element of B_r: ``images[i-1]`` is sigma(i) in +-{1..r}; a negative value means barred."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a signed permutation")

    @classmethod
    def identity(cls, r: int) -> "SignedPermutation":
        return cls(tuple(range(1, r + 1)))

    @classmethod
    def all(cls, r: int) -> list["SignedPermutation"]:
        out = []
        for p in itertools.permutations(range(1, r + 1)):
            for signs in itertools.product((1, -1), repeat=r):
                out.append(cls(tuple(s * x for s, x in zip(signs, p))))
        return out

    @property
    def r(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of i, with sigma(-i) = -sigma(i)."""
        s = self.images[abs(i) - 1]
        return s if i > 0 else -s

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return SignedPermutation(tuple(self(other(i)) for i in range(1, self.r + 1)))

    def __str__(self):
        return "(" + ",".join(str(x) if x > 0 else f"{-x}bar" for x in self.images) + ")"
