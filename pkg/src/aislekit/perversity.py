"""Perversity functions over a prime table, the homology-support invariant
and its canonical generator, and the classification round trip.

A perversity function assigns to each degree an up-closed subset of the
table, monotonely in the degree; it is empty below its window and constant
above it.  The invariant of a generated class is the cumulative union of
degreewise homology supports: suspensions force everything from lower
degrees to reappear, and nothing else can appear.
"""

from .complexes import direct_sum, shift
from .errors import PreconditionError, RingMismatchError
from .spectrum import module_support


class PerversityFunction:
    """Windowed monotone specialization-closed function into table subsets."""

    __slots__ = ("table", "lo", "hi", "values")

    def __init__(self, table, lo, values):
        values = tuple(frozenset(v) for v in values)
        self.table = table
        if not values:
            self.lo = 0
            self.hi = -1
            self.values = ()
            return
        self.lo = lo
        self.hi = lo + len(values) - 1
        self.values = values
        prev = frozenset()
        for i, v in enumerate(values):
            for name in v:
                if name not in table.ideals:
                    raise PreconditionError("unknown prime %r" % name)
            if not table.is_up_closed(v):
                raise PreconditionError(
                    "value at degree %d is not specialization closed" % (lo + i)
                )
            if not prev <= v:
                raise PreconditionError(
                    "values must be monotone; degree %d shrinks" % (lo + i)
                )
            prev = v

    def value(self, n):
        if self.hi < self.lo or n < self.lo:
            return frozenset()
        if n > self.hi:
            return self.values[-1]
        return self.values[n - self.lo]

    def is_empty(self):
        return all(not v for v in self.values)

    def canonical(self):
        """Trim leading empty values and trailing repeats."""
        lo = self.lo
        values = list(self.values)
        while values and not values[0]:
            values.pop(0)
            lo += 1
        while len(values) > 1 and values[-1] == values[-2]:
            values.pop()
        return PerversityFunction(self.table, lo, values)

    def __eq__(self, other):
        if not isinstance(other, PerversityFunction):
            return NotImplemented
        if self.table is not other.table:
            return False
        return self.first_discrepancy(other) is None

    def first_discrepancy(self, other):
        """Smallest degree where the two functions differ, or None."""
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi) + 1
        for n in range(lo, hi + 1):
            if self.value(n) != other.value(n):
                return n
        return None

    def __hash__(self):
        c = self.canonical()
        return hash((id(self.table), c.lo, c.values))

    def __repr__(self):
        if self.hi < self.lo:
            return "PerversityFunction(empty)"
        body = ", ".join(
            "%d: {%s}" % (self.lo + i, ",".join(sorted(v)))
            for i, v in enumerate(self.values)
        )
        return "PerversityFunction(%s)" % body


def support_invariant(complexes, table):
    """The perversity function of the class generated by the given objects:
    degree n holds every table prime supporting some H_i, i <= n."""
    complexes = list(complexes)
    for C in complexes:
        if C.ring != table.ring:
            raise RingMismatchError("complex and table over different rings")
    supports = {}
    degrees = []
    for C in complexes:
        for n in C.degrees():
            H = C.homology(n)
            if H.is_zero_module():
                continue
            degrees.append(n)
            s = module_support(H, table)
            if s:
                supports[n] = supports.get(n, frozenset()) | s
    if not degrees:
        return PerversityFunction(table, 0, ())
    lo = min(degrees)
    hi = max(degrees)
    values = []
    acc = frozenset()
    for n in range(lo, hi + 1):
        acc = acc | supports.get(n, frozenset())
        values.append(acc)
    return PerversityFunction(table, lo, values)


def canonical_generator(f):
    """S(f): the sum over the window of shifted quotient resolutions, one
    summand per prime in each degree's value."""
    table = f.table
    summands = []
    for n in range(f.lo, f.hi + 1):
        for name in sorted(f.value(n)):
            summands.append(shift(table.quotient_resolution(name), n))
    return direct_sum(summands, ring=table.ring)


def roundtrip_check(f):
    """Recompute the invariant of the generated class of S(f) and compare
    with f degree by degree; the computable half of the classification."""
    S = canonical_generator(f)
    g = support_invariant([S], f.table)
    n = f.first_discrepancy(g)
    if n is None:
        return {"status": "pass", "window": [f.lo, f.hi]}
    return {
        "status": "fail",
        "window": [f.lo, f.hi],
        "first_discrepancy": n,
        "expected": sorted(f.value(n)),
        "got": sorted(g.value(n)),
    }
