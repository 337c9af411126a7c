"""Finite prime tables standing in for the prime spectrum.

Primality of the entries is a trusted assertion: the validator checks
properness, the containment partial order and dimension consistency, and
every support computation is relative to the declared table.
"""

from .errors import EngineError, PreconditionError, RingMismatchError
from .rings import Ideal


class PrimeTable:
    """Named ideals asserted prime, ordered by containment."""

    def __init__(self, ring, entries):
        """entries: mapping name -> Ideal (or generator list)."""
        self.ring = ring
        names = []
        ideals = {}
        for name, ideal in entries.items():
            if not isinstance(ideal, Ideal):
                ideal = Ideal(ring, ideal)
            if ideal.ring != ring:
                raise RingMismatchError("table entry over a different ring")
            if not ideal.is_proper():
                raise PreconditionError("table entry %r is the unit ideal" % name)
            names.append(name)
            ideals[name] = ideal
        self.names = tuple(sorted(names))
        self.ideals = ideals
        self._leq = {}
        for a in self.names:
            for b in self.names:
                self._leq[(a, b)] = ideals[b].contains(ideals[a])
        for a in self.names:
            for b in self.names:
                if a != b and self._leq[(a, b)] and self._leq[(b, a)]:
                    raise PreconditionError(
                        "entries %r and %r are the same ideal" % (a, b)
                    )
        self.dims = {name: ideals[name].dimension() for name in self.names}
        for a in self.names:
            for b in self.names:
                if self._leq[(a, b)] and self.dims[a] < self.dims[b]:
                    raise PreconditionError(
                        "dimension inconsistent with containment: %r ⊆ %r" % (a, b)
                    )
        self._res_cache = {}

    def ref(self, name):
        return PrimeRef(self, name)

    def ideal(self, name):
        if name not in self.ideals:
            raise PreconditionError("unknown prime name %r" % name)
        return self.ideals[name]

    def leq(self, a, b):
        """a ⊆ b as ideals (so b is a specialization of a)."""
        return self._leq[(a, b)]

    def dim(self, name):
        return self.dims[name]

    def is_maximal(self, name):
        return self.dims[name] == 0

    def up_set(self, name):
        """V(p) within the table: all entries containing the entry."""
        return frozenset(q for q in self.names if self._leq[(name, q)])

    def is_up_closed(self, names):
        s = frozenset(names)
        for a in s:
            for b in self.names:
                if self._leq[(a, b)] and b not in s:
                    return False
        return True

    def minimal_in(self, names):
        """Elements of the subset with no strictly smaller element in it."""
        s = frozenset(names)
        out = set()
        for a in s:
            if not any(b != a and self._leq[(b, a)] for b in s):
                out.add(a)
        return frozenset(out)

    def quotient_resolution(self, name):
        """Cached free resolution of R/p placed in degree 0."""
        got = self._res_cache.get(name)
        if got is None:
            from .complexes import quotient_resolution

            got = quotient_resolution(self.ideal(name))
            self._res_cache[name] = got
        return got

    def report(self):
        """JSON-ready validation summary: order relations and dimensions."""
        relations = []
        for a in self.names:
            for b in self.names:
                if a != b and self._leq[(a, b)]:
                    relations.append([a, b])
        return {
            "ring": {
                "field": repr(self.ring.field),
                "vars": list(self.ring.vars),
            },
            "primes": {
                name: {
                    "dim": self.dims[name],
                    "maximal": self.is_maximal(name),
                }
                for name in self.names
            },
            "contained_in": relations,
            "trusted_primality": True,
        }

    def __repr__(self):
        return "PrimeTable(%s)" % ", ".join(self.names)


class PrimeRef:
    """A named entry of a prime table."""

    __slots__ = ("table", "name")

    def __init__(self, table, name):
        if name not in table.ideals:
            raise PreconditionError("unknown prime name %r" % name)
        self.table = table
        self.name = name

    @property
    def ideal(self):
        return self.table.ideals[self.name]

    def __eq__(self, other):
        return (
            isinstance(other, PrimeRef)
            and self.table is other.table
            and self.name == other.name
        )

    def __hash__(self):
        return hash((id(self.table), self.name))

    def __repr__(self):
        return "PrimeRef(%s)" % self.name


def supp_member(module, p):
    """p ∈ Supp M for finitely generated M, via Ann M ⊆ p."""
    if module.ring != p.table.ring:
        raise RingMismatchError("module and table over different rings")
    return p.ideal.contains(module.annihilator())


def module_support(module, table):
    """Table part of the support of a presented module."""
    ann = module.annihilator()
    return frozenset(
        name for name in table.names if table.ideals[name].contains(ann)
    )


def supp_complex(C, table):
    """Degreewise table support of the homology of a complex.

    Each degree's set is checked to be closed under specialization."""
    if C.ring != table.ring:
        raise RingMismatchError("complex and table over different rings")
    out = {}
    for n in C.degrees():
        s = module_support(C.homology(n), table)
        if not table.is_up_closed(s):
            raise EngineError("support at degree %d is not up-closed" % n)
        out[n] = s
    return out


def v_of(p):
    """Specialization closure of one prime within its table."""
    return p.table.up_set(p.name)


def minimal_in(table, names):
    return table.minimal_in(names)
