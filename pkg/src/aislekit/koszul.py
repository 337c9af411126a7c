"""Koszul complexes as iterated mapping cones, with annihilation checks,
the annihilator-power search and the minimal-support map construction."""

from .complexes import (
    ChainMap,
    cone,
    find_homotopy,
    induced_map,
    shift,
    shift_map,
    single,
    tensor,
)
from .errors import (
    BudgetExceededError,
    EngineError,
    PreconditionError,
    RingMismatchError,
)
from .modules import RingMatrix
from .spectrum import supp_member

DEFAULT_POWER_BUDGET = 16


class KoszulSequence:
    """An ordered sequence of ring elements with positive powers."""

    __slots__ = ("ring", "elements", "powers")

    def __init__(self, ring, elements, powers=None):
        elements = tuple(
            e if not isinstance(e, str) else ring.parse(e) for e in elements
        )
        if not elements:
            raise PreconditionError("a Koszul sequence needs at least one element")
        for e in elements:
            if e.ring != ring:
                raise RingMismatchError("sequence element over a different ring")
            if e.is_zero():
                raise PreconditionError("zero elements are not allowed in a Koszul sequence")
        if powers is None:
            powers = (1,) * len(elements)
        powers = tuple(powers)
        if len(powers) != len(elements) or any(p < 1 for p in powers):
            raise PreconditionError("powers must be positive and match the sequence")
        self.ring = ring
        self.elements = elements
        self.powers = powers

    @staticmethod
    def from_ideal(ideal, powers=None):
        gens = [g for g in ideal.gens if not g.is_zero()]
        return KoszulSequence(ideal.ring, gens, powers)

    def __len__(self):
        return len(self.elements)

    def powered(self):
        return [e ** p for e, p in zip(self.elements, self.powers)]

    def __repr__(self):
        return "KoszulSequence(%s)" % ", ".join(
            "%s^%d" % (e, p) if p != 1 else str(e)
            for e, p in zip(self.elements, self.powers)
        )


def koszul(seq):
    """Iterated cone over the powered sequence, starting from R in degree 0."""
    C = single(seq.ring)
    for e, p in zip(seq.elements, seq.powers):
        C = cone(ChainMap.scalar(C, e ** p))
    return C


def koszul_of_prime(p, powers=None):
    """K(p) (or K' with powers) for a table prime."""
    return koszul(KoszulSequence.from_ideal(p.ideal, powers))


def check_annihilation(M, seq):
    """Verify that each powered sequence element kills every homology of
    M ⊗ K(seq); returns a per-degree report."""
    if M.ring != seq.ring:
        raise RingMismatchError("complex and sequence over different rings")
    T = tensor(M, koszul(seq))
    killers = seq.powered()
    degrees = {}
    for n in T.degrees():
        H = T.homology(n)
        ok = True
        for x in killers:
            for i in range(H.ngens):
                v = [H.ring.zero] * H.ngens
                v[i] = x
                if not H.element_is_zero(v):
                    ok = False
                    break
            if not ok:
                break
        degrees[n] = ok
    return {
        "degrees": degrees,
        "passed": all(degrees.values()),
    }


def annihilator_power(f, x, power_budget=DEFAULT_POWER_BUDGET):
    """Least l with x^l·f null-homotopic, together with the witness.

    Preconditions: x is a nonzero nonunit and every homology of the target
    is annihilated by some power of x up to the budget (checked)."""
    ring = f.source.ring
    if x.ring != ring:
        raise RingMismatchError("element over a different ring")
    if x.is_zero() or x.is_unit():
        raise PreconditionError("the element must be a nonzero nonunit")
    _check_power_annihilates_homology(f.target, x, power_budget)
    for l in range(power_budget + 1):
        w = f.scale(x ** l)
        h = find_homotopy(w)
        if h is not None:
            return l, h
    raise BudgetExceededError(
        "no null-homotopy for powers up to %d" % power_budget
    )


def _check_power_annihilates_homology(Y, x, budget):
    for n in Y.degrees():
        H = Y.homology(n)
        for i in range(H.ngens):
            ok = False
            xp = H.ring.one
            for _ in range(budget + 1):
                v = [H.ring.zero] * H.ngens
                v[i] = xp
                if H.element_is_zero(v):
                    ok = True
                    break
                xp = xp * x
            if not ok:
                raise PreconditionError(
                    "homology at degree %d is not annihilated by a power of %s"
                    % (n, x)
                )


def minsupp_map(M, p, n, power_budget=DEFAULT_POWER_BUDGET):
    """Nonzero map Σ^n K'(p) -> M built by the triangle induction.

    Requires p ∈ Supp H_n(M) and p minimal in the table support of M.
    Returns ``(chain map, powers)``; the induced map on H_n is nonzero and
    the annihilator of its image is contained in p."""
    table = p.table
    if M.ring != table.ring:
        raise RingMismatchError("complex and table over different rings")
    if not supp_member(M.homology(n), p):
        raise PreconditionError("%s is not in the support of H_%d" % (p.name, n))
    total = set()
    for i in M.degrees():
        ann = M.homology(i).annihilator()
        for name in table.names:
            if table.ideals[name].contains(ann):
                total.add(name)
    if p.name not in table.minimal_in(total):
        raise PreconditionError(
            "%s is not minimal in the table support of the complex" % p.name
        )
    ring = M.ring
    N = shift(M, -n)
    H0 = N.homology(0)
    Z0 = N.cycles(0)
    chosen = None
    for j in range(Z0.cols):
        v = [ring.zero] * H0.ngens
        v[j] = ring.one
        if H0.element_is_zero(v):
            continue
        ann = H0.element_annihilator(v)
        if p.ideal.contains(ann):
            chosen = j
            break
    if chosen is None:
        raise PreconditionError(
            "no cycle class with annihilator inside %s" % p.name
        )
    column = RingMatrix.from_columns(ring, N.rank(0), [Z0.column(chosen)])
    K = single(ring)
    f = ChainMap(K, N, {0: column})
    powers = []
    for x in [g for g in p.ideal.gens if not g.is_zero()]:
        l, h = annihilator_power(f, x, power_budget)
        if l == 0:
            raise EngineError("annihilator power 0 contradicts a nonzero class")
        g = x ** l
        K_next = cone(ChainMap.scalar(K, g))
        mats = {}
        for d in K_next.degrees():
            left = h.mat(d - 1).scale(ring.constant(-1))
            right = f.mat(d)
            if left.cols and right.cols:
                mats[d] = left.hstack(right)
            elif left.cols:
                mats[d] = left
            elif right.cols:
                mats[d] = right
        f = ChainMap(K_next, N, mats)
        K = K_next
        powers.append(l)
    result = shift_map(f, n)
    induced = induced_map(result, n)
    if induced.is_zero_map():
        raise EngineError("constructed map vanishes on H_n")
    Hm = M.homology(n)
    image_ann = None
    for j in range(induced.matrix.cols):
        col = induced.matrix.column(j)
        if all(e.is_zero() for e in col):
            continue
        part = Hm.element_annihilator(col)
        image_ann = part if image_ann is None else image_ann.intersection(part)
    if image_ann is None or not p.ideal.contains(image_ann):
        raise EngineError("image annihilator is not contained in the prime")
    return result, powers
