"""Bitmask-backed integer sets on [1, n] and the sum-free predicates.

A set A within [1, n] is stored as a single Python int in which bit i is set
exactly when i is a member (bit 0 stays clear). That makes the sumset
A+B = {x+y : x in A, y in B} a handful of shift-and-OR operations, one shift
per member of A, and keeps every predicate in this module at a few word
operations per element:

  * sum-free:        A shares no element with A+A (x = y is allowed, so
                     {2,4} fails via 2+2=4),
  * difference-free: no two members differ by a member (equivalent to
                     sum-free),
  * maximal:         sum-free and not extendable by any value of [1, n],
  * maximum:         sum-free with the largest possible cardinality,
                     floor((n+1)/2).

All values are immutable; operations are pure functions and safe to share
across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

# Parsing and explicit construction accept universes up to this bound.
# Enumeration entry points apply much stricter runtime caps (see search).
MAX_UNIVERSE_BOUND = 128


class SumFreeToolkitError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SumFreeToolkitError, ValueError):
    """Set text could not be parsed; the message names the offending token."""


class UniverseMismatchError(SumFreeToolkitError, ValueError):
    """Two sets from different universes were combined."""


class PreconditionError(SumFreeToolkitError, ValueError):
    """An operation was called outside its documented domain."""


def maximum_cardinality(universe_bound: int) -> int:
    """Largest possible cardinality of a sum-free subset of [1, universe_bound]."""
    return (universe_bound + 1) // 2


@dataclass(frozen=True)
class IntegerSet:
    """An immutable subset of [1, universe_bound] stored as a bit array.

    ``bits`` has bit i set exactly when i is a member. Bit 0 is never set and
    no member may exceed ``universe_bound``. The empty set is a valid value
    (it is vacuously sum-free and never maximal).
    """

    universe_bound: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.universe_bound < 1:
            raise PreconditionError(
                f"universe bound must be >= 1, got {self.universe_bound}"
            )
        if self.universe_bound > 2 * MAX_UNIVERSE_BOUND:
            raise PreconditionError(
                f"universe bound {self.universe_bound} exceeds the supported "
                f"maximum {2 * MAX_UNIVERSE_BOUND}"
            )
        if self.bits < 0:
            raise PreconditionError("bit array must be non-negative")
        if self.bits & 1:
            raise PreconditionError("0 is not a representable member (bit 0 set)")
        if self.bits >> (self.universe_bound + 1):
            raise PreconditionError(
                f"bit array has members above the universe bound {self.universe_bound}"
            )

    @classmethod
    def from_members(cls, members: Iterable[int], universe_bound: int) -> IntegerSet:
        """Build a set from an iterable of member values."""
        if universe_bound > MAX_UNIVERSE_BOUND:
            raise PreconditionError(
                f"universe bound {universe_bound} exceeds the supported "
                f"maximum {MAX_UNIVERSE_BOUND}"
            )
        bits = 0
        for value in members:
            if not 1 <= value <= universe_bound:
                raise PreconditionError(
                    f"member {value} outside [1,{universe_bound}]"
                )
            bits |= 1 << value
        return cls(universe_bound, bits)

    @classmethod
    def parse(cls, text: str, universe_bound: int) -> IntegerSet:
        """Parse the brace text form, e.g. ``{2,5,6}``.

        Members may appear in any order with arbitrary whitespace. Members
        outside [1, universe_bound] and duplicates are rejected.
        """
        if universe_bound > MAX_UNIVERSE_BOUND:
            raise PreconditionError(
                f"universe bound {universe_bound} exceeds the supported "
                f"maximum {MAX_UNIVERSE_BOUND}"
            )
        stripped = text.strip()
        if not (stripped.startswith("{") and stripped.endswith("}")):
            raise ParseError(f"expected a brace-delimited set, got {text!r}")
        inner = stripped[1:-1].strip()
        if not inner:
            return cls(universe_bound, 0)
        bits = 0
        for token in inner.split(","):
            token = token.strip()
            try:
                value = int(token, 10)
            except ValueError:
                raise ParseError(f"invalid member token {token!r}") from None
            if not 1 <= value <= universe_bound:
                raise ParseError(f"member {value} outside [1,{universe_bound}]")
            if bits >> value & 1:
                raise ParseError(f"duplicate member {value}")
            bits |= 1 << value
        return cls(universe_bound, bits)

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def min_element(self) -> int | None:
        if self.bits == 0:
            return None
        return (self.bits & -self.bits).bit_length() - 1

    @property
    def max_element(self) -> int | None:
        if self.bits == 0:
            return None
        return self.bits.bit_length() - 1

    def with_member(self, value: int) -> IntegerSet:
        if not 1 <= value <= self.universe_bound:
            raise PreconditionError(
                f"member {value} outside [1,{self.universe_bound}]"
            )
        return IntegerSet(self.universe_bound, self.bits | 1 << value)

    def __contains__(self, value: int) -> bool:
        return 0 < value <= self.universe_bound and self.bits >> value & 1 == 1

    def __iter__(self) -> Iterator[int]:
        remaining = self.bits
        while remaining:
            low = remaining & -remaining
            yield low.bit_length() - 1
            remaining ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self) + "}"


@dataclass(frozen=True)
class SetRecord:
    """A set together with its derived attributes.

    ``is_maximum`` means sum-free of cardinality floor((n+1)/2); maximum
    implies maximal implies sum-free, never the other way around.
    """

    set: IntegerSet
    min_element: int | None
    max_element: int | None
    cardinality: int
    is_sum_free: bool
    is_maximal: bool
    is_maximum: bool

    @property
    def universe_bound(self) -> int:
        return self.set.universe_bound


def sumset(a: IntegerSet, b: IntegerSet) -> IntegerSet:
    """Return {x+y : x in a, y in b} over the widened universe [1, 2n].

    Computed by OR-ing shifted copies of b's bit array, one shift per member
    of a. Both operands must share the same universe bound.
    """
    if a.universe_bound != b.universe_bound:
        raise UniverseMismatchError(
            f"universe bounds differ: {a.universe_bound} vs {b.universe_bound}"
        )
    acc = 0
    for x in a:
        acc |= b.bits << x
    return IntegerSet(2 * a.universe_bound, acc)


def is_sum_free(a: IntegerSet) -> bool:
    """True when no x, y, z in a satisfy x + y = z (x = y allowed)."""
    acc = 0
    bits = a.bits
    for x in a:
        acc |= bits << x
    return acc & bits == 0


def is_difference_free(a: IntegerSet) -> bool:
    """True when no x > y in a have x - y in a.

    Equivalent to :func:`is_sum_free`; kept as a separate routine so the two
    can cross-check each other.
    """
    bits = a.bits
    for d in a:
        if bits >> d & bits:
            return False
    return True


def is_maximal_sum_free(a: IntegerSet) -> bool:
    """True when a is sum-free and no value of [1, n] can be added to it.

    Returns False for sets that are not sum-free in the first place.
    """
    if not is_sum_free(a):
        return False
    for k in range(1, a.universe_bound + 1):
        if k in a:
            continue
        if is_sum_free(a.with_member(k)):
            return False
    return True


def make_record(a: IntegerSet) -> SetRecord:
    """Compute all derived attributes of a set in one pass."""
    sum_free = is_sum_free(a)
    return SetRecord(
        set=a,
        min_element=a.min_element,
        max_element=a.max_element,
        cardinality=a.cardinality,
        is_sum_free=sum_free,
        is_maximal=is_maximal_sum_free(a) if sum_free else False,
        is_maximum=sum_free
        and a.cardinality == maximum_cardinality(a.universe_bound),
    )
