"""Shared test utilities."""

from ksubmax import Assignment, KSubFunction


class CountingWrapper(KSubFunction):
    """Forwards to another function while counting raw value-oracle hits.

    Comparing ``raw_calls`` against a solver's counted eo_calls proves the
    solver performs no hidden, uncounted evaluations.
    """

    def __init__(self, inner: KSubFunction):
        super().__init__(inner.n, inner.k)
        self.inner = inner
        self.raw_calls = 0

    def _value(self, a: Assignment) -> float:
        self.raw_calls += 1
        return self.inner._value(a)
