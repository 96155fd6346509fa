"""Ring of circulants and protographs over it.

An element is a GF(2) polynomial in x modulo x^L - 1, stored as its set of
exponents; lifting replaces x^i by the L x L cyclic permutation matrix whose
row r has its one in column (r + i) mod L. A protograph is a dense grid of
ring elements sharing one lift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import SparseBinaryMatrix


@dataclass(frozen=True)
class RingElement:
    """Polynomial over the ring of circulants with lift ``L``.

    The empty exponent set is the zero element, {0} the identity.
    """

    lift: int
    exponents: frozenset[int]

    def __post_init__(self):
        if self.lift < 1:
            raise ValueError("lift must be positive")
        if any(e < 0 or e >= self.lift for e in self.exponents):
            raise ValueError("exponent out of range [0, lift)")

    @classmethod
    def zero(cls, lift: int) -> "RingElement":
        return cls(lift, frozenset())

    @classmethod
    def one(cls, lift: int) -> "RingElement":
        return cls(lift, frozenset({0}))

    @classmethod
    def x(cls, lift: int, power: int = 1) -> "RingElement":
        return cls(lift, frozenset({power % lift}))

    @classmethod
    def from_exponents(cls, lift: int, exponents) -> "RingElement":
        return cls(lift, frozenset(int(e) % lift for e in exponents))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.lift, self.exponents ^ other.exponents)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        acc: set[int] = set()
        for a in self.exponents:
            for b in other.exponents:
                acc ^= {(a + b) % self.lift}
        return RingElement(self.lift, frozenset(acc))

    def transpose(self) -> "RingElement":
        """Transpose of the lifted matrix: exponent i maps to (L - i) mod L."""
        return RingElement(self.lift, frozenset((self.lift - e) % self.lift
                                                for e in self.exponents))

    def _check(self, other: "RingElement") -> None:
        if self.lift != other.lift:
            raise ValueError(f"lift mismatch: {self.lift} vs {other.lift}")

    @property
    def weight(self) -> int:
        return len(self.exponents)

    def __bool__(self) -> bool:
        return bool(self.exponents)


class Protograph:
    """Dense grid of ring elements, all sharing one lift."""

    def __init__(self, entries: list[list[RingElement]]):
        if not entries or not entries[0]:
            raise ValueError("protograph must be non-empty")
        lifts = {e.lift for row in entries for e in row}
        if len(lifts) != 1:
            raise ValueError("all protograph entries must share one lift")
        widths = {len(row) for row in entries}
        if len(widths) != 1:
            raise ValueError("ragged protograph")
        self.entries = [list(row) for row in entries]
        self.lift = lifts.pop()
        self.rows = len(entries)
        self.cols = len(entries[0])

    @classmethod
    def diagonal(cls, element: RingElement, size: int) -> "Protograph":
        zero = RingElement.zero(element.lift)
        return cls([[element if i == j else zero for j in range(size)]
                    for i in range(size)])

    @classmethod
    def from_exponent_grid(cls, lift: int, grid) -> "Protograph":
        """Build from a grid of exponent iterables (None or [] is the zero cell)."""
        rows = []
        for row in grid:
            rows.append([RingElement.from_exponents(lift, cell or []) for cell in row])
        return cls(rows)

    def transpose(self) -> "Protograph":
        """Matrix transpose combined with entry-wise ring transpose."""
        return Protograph([[self.entries[i][j].transpose() for i in range(self.rows)]
                           for j in range(self.cols)])

    def __matmul__(self, other: "Protograph") -> "Protograph":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = RingElement.zero(self.lift)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return Protograph(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Protograph):
            return NotImplemented
        return self.entries == other.entries


def lift_to_binary(p: Protograph | RingElement) -> SparseBinaryMatrix:
    """Expand every cell into its sum of circulant permutation matrices."""
    if isinstance(p, RingElement):
        p = Protograph([[p]])
    L = p.lift
    row_support = []
    for i in range(p.rows):
        cells = [(j, sorted(p.entries[i][j].exponents))
                 for j in range(p.cols) if p.entries[i][j]]
        for r in range(L):
            sup = [j * L + (r + e) % L for j, exps in cells for e in exps]
            row_support.append(np.asarray(sorted(sup), dtype=np.int64))
    return SparseBinaryMatrix(p.rows * L, p.cols * L, row_support)
