"""Core domain types for k-submodular optimization.

An n-element ground set is labelled by an assignment vector over
{0, 1, ..., k}: label i > 0 places an element into the i-th of k pairwise
disjoint sets, label 0 leaves the element unplaced.  A k-submodular
objective is exposed through a value oracle; every counted evaluation is
tallied in an :class:`OracleCounters` so solver query complexity can be
asserted exactly in tests.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class CapExceededError(Exception):
    """An exhaustive enumeration would exceed its configured cap."""


@dataclass
class OracleCounters:
    """Oracle-call tally owned by a single solver run.

    ``eo_calls`` counts value-oracle evaluations and ``io_calls`` counts
    independence tests.  Counts only ever increase; a fresh run starts from
    fresh counters.
    """

    eo_calls: int = 0
    io_calls: int = 0


@dataclass(frozen=True)
class Assignment:
    """Immutable placement of ground-set elements into k disjoint sets.

    ``labels[e] == i`` with ``i > 0`` puts element ``e`` into the i-th set;
    ``0`` leaves it unplaced.  The all-zero assignment is the bottom element
    of the partial order (see :func:`precedes`).
    """

    labels: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(v) for v in self.labels))
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        for e, lab in enumerate(self.labels):
            if not 0 <= lab <= self.k:
                raise ValueError(
                    f"label {lab} at element {e} outside {{0,...,{self.k}}}"
                )

    @classmethod
    def zero(cls, n: int, k: int) -> "Assignment":
        """The empty assignment on an n-element ground set."""
        return cls((0,) * n, k)

    @property
    def n(self) -> int:
        return len(self.labels)

    def support(self) -> frozenset[int]:
        """Indices of all placed elements."""
        return frozenset(e for e, lab in enumerate(self.labels) if lab != 0)

    def assign(self, e: int, i: int) -> "Assignment":
        """New assignment with unplaced element ``e`` put into set ``i``."""
        if not 0 <= e < self.n:
            raise ValueError(f"element {e} outside ground set of size {self.n}")
        if not 1 <= i <= self.k:
            raise ValueError(f"position {i} outside {{1,...,{self.k}}}")
        if self.labels[e] != 0:
            raise ValueError(f"element {e} already placed (label {self.labels[e]})")
        labels = list(self.labels)
        labels[e] = i
        return Assignment(tuple(labels), self.k)

    def restrict(self, keep: Iterable[int]) -> "Assignment":
        """Copy with labels kept only on ``keep``; everything else unplaced."""
        keep = set(keep)
        return Assignment(
            tuple(lab if e in keep else 0 for e, lab in enumerate(self.labels)),
            self.k,
        )


def _check_same_shape(a: Assignment, b: Assignment) -> None:
    if a.n != b.n or a.k != b.k:
        raise ValueError(
            f"assignment shape mismatch: (n={a.n}, k={a.k}) vs (n={b.n}, k={b.k})"
        )


def precedes(a: Assignment, b: Assignment) -> bool:
    """Partial order: ``a`` precedes ``b`` iff ``b`` extends ``a``.

    Equivalently, every set of ``a`` is contained in the matching set of
    ``b``: wherever ``a`` places an element, ``b`` places it identically.
    """
    _check_same_shape(a, b)
    return all(la == 0 or la == lb for la, lb in zip(a.labels, b.labels))


def meet(a: Assignment, b: Assignment) -> Assignment:
    """Componentwise intersection: keep a label only where both agree."""
    _check_same_shape(a, b)
    labels = tuple(la if la == lb else 0 for la, lb in zip(a.labels, b.labels))
    return Assignment(labels, a.k)


def join(a: Assignment, b: Assignment) -> Assignment:
    """Componentwise union with cancellation of conflicting labels.

    An element labelled in only one argument keeps that label; an element
    labelled identically in both keeps it; conflicting nonzero labels
    cancel to 0.
    """
    _check_same_shape(a, b)
    out = []
    for la, lb in zip(a.labels, b.labels):
        if la == 0:
            out.append(lb)
        elif lb == 0 or lb == la:
            out.append(la)
        else:
            out.append(0)
    return Assignment(tuple(out), a.k)


class KSubFunction(ABC):
    """Value-oracle interface for functions on assignments.

    Subclasses implement ``_value``; callers go through :meth:`evaluate`,
    which tallies one value-oracle call when counters are supplied.  All
    shipped families are normalized so the empty assignment evaluates to 0,
    and evaluation is deterministic.
    """

    def __init__(self, n: int, k: int):
        if n < 0:
            raise ValueError(f"ground-set size must be nonnegative, got {n}")
        if k < 1:
            raise ValueError(f"k must be a positive integer, got {k}")
        self.n = n
        self.k = k

    @abstractmethod
    def _value(self, a: Assignment) -> float:
        """Raw objective value; no counting."""

    def evaluate(self, a: Assignment, counters: Optional[OracleCounters] = None) -> float:
        """Objective value of ``a``, counted as one EO call if counters given."""
        if a.n != self.n or a.k != self.k:
            raise ValueError(
                f"function expects (n={self.n}, k={self.k}), "
                f"got assignment with (n={a.n}, k={a.k})"
            )
        if counters is not None:
            counters.eo_calls += 1
        return self._value(a)

    def zero(self) -> Assignment:
        """The empty assignment matching this function's shape."""
        return Assignment.zero(self.n, self.k)


def marginal_gain(
    f: KSubFunction,
    a: Assignment,
    e: int,
    i: int,
    counters: Optional[OracleCounters] = None,
    base: Optional[float] = None,
) -> float:
    """Gain of placing unplaced element ``e`` into set ``i`` on top of ``a``.

    Counting policy (fixed so counter assertions can be exact): when ``base``
    is None both f(a) and the extended value are evaluated, costing 2 EO
    calls; when the caller supplies ``base`` (which must equal f(a)), only
    the extended assignment is evaluated, costing 1 EO call.  Solvers pass
    their running objective value as ``base``.
    """
    extended = a.assign(e, i)  # validates e unplaced and 1 <= i <= k
    if base is None:
        base = f.evaluate(a, counters)
    return f.evaluate(extended, counters) - base


def enumerate_assignments(n: int, k: int) -> Iterator[Assignment]:
    """All (k+1)^n assignments on an n-element ground set, in label order."""
    for labels in itertools.product(range(k + 1), repeat=n):
        yield Assignment(labels, k)
