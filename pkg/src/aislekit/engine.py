"""Backend selection and the facade over the term kernel.

The compiled kernel (``_kernel_cy``) is preferred when present; set
``AISLEKIT_BACKEND=py`` (or ``cy``) to force a choice.  Everything here works
on kernel-level vector polynomials: lists of ``(pos, mono, int)`` terms.
The augmented-basis helper implements syzygies, membership and lifting
through one shared Groebner computation per generator family.
"""

import os

from .errors import BudgetExceededError

DEFAULT_PAIR_BUDGET = 200_000


def _select():
    choice = os.environ.get("AISLEKIT_BACKEND", "").lower()
    if choice in ("py", "python", "pure"):
        from . import _kernel_py as k

        return k
    if choice in ("c", "cy", "cython", "compiled"):
        from . import _kernel_cy as k

        return k
    try:
        from . import _kernel_cy as k
    except ImportError:
        from . import _kernel_py as k
    return k


kernel = _select()


def backend_name():
    return kernel.BACKEND


def load_backend(name):
    """Explicit backend module by name; used by the benchmark."""
    if name in ("py", "python", "pure"):
        from . import _kernel_py as k
    elif name in ("c", "cy", "cython", "compiled"):
        from . import _kernel_cy as k
    else:
        raise ValueError("unknown backend %r" % name)
    return k


def set_pair_budget(budget):
    """Change the global S-pair budget; returns the previous value."""
    global DEFAULT_PAIR_BUDGET
    old = DEFAULT_PAIR_BUDGET
    DEFAULT_PAIR_BUDGET = budget
    return old


def _run(fn, *args):
    try:
        return fn(*args)
    except kernel.KernelBudgetError as exc:
        raise BudgetExceededError(str(exc)) from None


def reduced_basis(columns, mod, rank1, pair_budget=None):
    """Reduced Groebner basis of the module generated by the columns."""
    if pair_budget is None:
        pair_budget = DEFAULT_PAIR_BUDGET
    return _run(kernel.buchberger, columns, mod, rank1, pair_budget)


def normal_form(v, basis_index, mod):
    """Fraction-free normal form against ``kernel.group_by_pos`` output."""
    return kernel.vp_nf(v, basis_index, mod)


class AugmentedBasis:
    """Groebner data for the graph module of a matrix with t rows.

    The generators must be the already-augmented columns a_j + u_j·e_{t+j}
    inside R^(t+s), with the real positions 0..t-1 dominating and the unit
    tag scaled consistently with the column (the caller clears denominators
    of the combined vector, so the tag records the scaling).  One basis then
    yields membership tests, lifts through the columns, and the syzygy
    module of the original columns.
    """

    def __init__(self, aug_columns, t, mod, pair_budget=None):
        if pair_budget is None:
            pair_budget = DEFAULT_PAIR_BUDGET
        self.t = t
        self.s = len(aug_columns)
        self.mod = mod
        self.basis = _run(kernel.buchberger, aug_columns, mod, False, pair_budget)
        self.by_pos = kernel.group_by_pos(self.basis)

    def syzygies(self):
        """Generators of {v : A v = 0} as vecpolys over positions 0..s-1."""
        out = []
        for g in self.basis:
            if g and g[0][0] >= self.t:
                out.append([(pos - self.t, mono, c) for pos, mono, c in g])
        return out

    def reduce(self, v):
        """Normal form of the real-block vector v.

        Returns ``(front, back, mult)``: the irreducible real-block part,
        the augmented-block coordinates, and the fraction-free multiplier.
        ``front == []`` means v lies in the column module, in which case
        A(-back) = mult * v.
        """
        rem, mult = kernel.vp_nf(v, self.by_pos, self.mod)
        front = [term for term in rem if term[0] < self.t]
        back = [(pos - self.t, mono, c) for pos, mono, c in rem if pos >= self.t]
        return front, back, mult

    def contains(self, v):
        front, _, _ = self.reduce(v)
        return not front
