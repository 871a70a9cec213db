"""Value arithmetic and provenance bookkeeping for the accumulator engines.

Two arithmetic modes exist:

* ``exact`` -- arbitrary-precision signed integers.  Addition is associative
  and commutative, so any reduction order yields the same value; this is what
  makes order-independent oracle comparison possible.
* ``ieee`` -- 64-bit binary floating point with round-to-nearest-even (the
  native Python float).  Reduction order matters; results are measured, not
  judged.

Every operand carries a provenance: the multiset of (dataset ordinal,
index-in-dataset) identities it sums.  Adding two operands unions their
provenances; the additive identity has empty provenance.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, NamedTuple

from .errors import ConfigError

EXACT = "exact"
IEEE = "ieee"
MODES = (EXACT, IEEE)


class Provenance:
    """Immutable multiset of element identities with O(1) union.

    Stored as a shared binary tree so that unioning during simulation costs
    one node regardless of size.  Materialization walks the tree iteratively:
    serial feedback accumulation produces chains as deep as the dataset, which
    would overflow the recursion limit if walked recursively.
    """

    __slots__ = ("_elem", "_left", "_right", "size")

    EMPTY: "Provenance"

    def __init__(self, elem=None, left=None, right=None, size=0):
        self._elem = elem
        self._left = left
        self._right = right
        self.size = size

    @staticmethod
    def leaf(ordinal: int, index: int) -> "Provenance":
        return Provenance(elem=(ordinal, index), size=1)

    def union(self, other: "Provenance") -> "Provenance":
        if self.size == 0:
            return other
        if other.size == 0:
            return self
        return Provenance(left=self, right=other, size=self.size + other.size)

    def elements(self) -> Iterator[tuple]:
        """Yield every (ordinal, index) identity, repeats included."""
        stack = [self]
        while stack:
            node = stack.pop()
            if node.size == 0:
                continue
            if node._elem is not None:
                yield node._elem
            else:
                stack.append(node._right)
                stack.append(node._left)

    def to_counter(self) -> Counter:
        return Counter(self.elements())

    def by_ordinal(self) -> dict:
        """Map dataset ordinal -> sorted index list (repeats kept)."""
        grouped: dict = {}
        for ordinal, index in self.elements():
            grouped.setdefault(ordinal, []).append(index)
        for indices in grouped.values():
            indices.sort()
        return grouped

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Provenance(size={self.size})"


Provenance.EMPTY = Provenance()


class Operand(NamedTuple):
    """A value travelling through the datapath together with its provenance."""

    value: object
    prov: Provenance


def check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ConfigError(f"unknown arithmetic mode {mode!r}; expected one of {MODES}")


def check_value(value, mode: str):
    """Validate that a raw value belongs to the given mode's domain."""
    if mode == EXACT:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"exact mode requires int values, got {type(value).__name__}")
    elif mode == IEEE:
        if not isinstance(value, float):
            raise ConfigError(f"ieee mode requires float values, got {type(value).__name__}")
    else:
        check_mode(mode)
    return value


def identity(mode: str) -> Operand:
    """The additive identity of the mode, with empty provenance."""
    check_mode(mode)
    return Operand(0 if mode == EXACT else 0.0, Provenance.EMPTY)


def add(a: Operand, b: Operand, mode: str) -> Operand:
    """Add two operands: value sum in the mode's arithmetic, provenance union.

    exact mode is plain integer addition; ieee mode is the hardware binary64
    round-to-nearest-even addition that Python floats provide natively.
    """
    check_value(a.value, mode)
    check_value(b.value, mode)
    return Operand(a.value + b.value, a.prov.union(b.prov))
