"""Finitely presented modules as cokernels of matrices.

Every module is the cokernel of an explicit matrix; submodules come back as
presented modules through syzygy generators.  Membership, lifting and syzygy
computations all run through one cached augmented Groebner basis per matrix.
"""

import threading
from fractions import Fraction

from . import engine
from .errors import PreconditionError, RingMismatchError, ShapeMismatchError
from .rings import Ideal, Poly, column_to_vec, vec_to_polys


class RingMatrix:
    """Immutable matrix of polynomials, row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeMismatchError(
                "entry count %d does not match %dx%d" % (len(entries), rows, cols)
            )
        for e in entries:
            if not isinstance(e, Poly) or e.ring != ring:
                raise RingMismatchError("matrix entry from a different ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(ring, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        entries = []
        for r in rows_list:
            if len(r) != cols:
                raise ShapeMismatchError("ragged rows")
            entries.extend(e if isinstance(e, Poly) else ring.parse(e) for e in r)
        return RingMatrix(ring, rows, cols, entries)

    @staticmethod
    def from_columns(ring, rows, columns):
        cols = len(columns)
        entries = [ring.zero] * (rows * cols)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ShapeMismatchError("column of wrong height")
            for i, e in enumerate(col):
                entries[i * cols + j] = e
        return RingMatrix(ring, rows, cols, entries)

    @staticmethod
    def zero(ring, rows, cols):
        return RingMatrix(ring, rows, cols, [ring.zero] * (rows * cols))

    @staticmethod
    def identity(ring, n):
        e = [ring.zero] * (n * n)
        for i in range(n):
            e[i * n + i] = ring.one
        return RingMatrix(ring, n, n, e)

    @staticmethod
    def scalar(ring, n, value):
        e = [ring.zero] * (n * n)
        for i in range(n):
            e[i * n + i] = value
        return RingMatrix(ring, n, n, e)

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def transpose(self):
        e = []
        for j in range(self.cols):
            for i in range(self.rows):
                e.append(self.entry(i, j))
        return RingMatrix(self.ring, self.cols, self.rows, e)

    def __mul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        if self.cols != other.rows:
            raise ShapeMismatchError(
                "cannot multiply %dx%d by %dx%d"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        zero = self.ring.zero
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entry(i, k)
                    b = other.entry(k, j)
                    if a.terms and b.terms:
                        acc = acc + a * b
                out.append(acc)
        return RingMatrix(self.ring, self.rows, other.cols, out)

    def __add__(self, other):
        self._same_shape(other)
        return RingMatrix(
            self.ring,
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RingMatrix(
            self.ring,
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return RingMatrix(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def scale(self, value):
        return RingMatrix(
            self.ring, self.rows, self.cols, [value * a for a in self.entries]
        )

    def _same_shape(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("shape mismatch")

    def hstack(self, other):
        if other.rows != self.rows:
            raise ShapeMismatchError("hstack needs equal row counts")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return RingMatrix(self.ring, self.rows, self.cols + other.cols, out)

    def vstack(self, other):
        if other.cols != self.cols:
            raise ShapeMismatchError("vstack needs equal column counts")
        return RingMatrix(
            self.ring,
            self.rows + other.rows,
            self.cols,
            self.entries + other.entries,
        )

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def apply(self, vector):
        """Matrix times a column of polynomials."""
        if len(vector) != self.cols:
            raise ShapeMismatchError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = self.ring.zero
            for k in range(self.cols):
                a = self.entry(i, k)
                if a.terms and vector[k].terms:
                    acc = acc + a * vector[k]
            out.append(acc)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        return "RingMatrix(%dx%d)" % (self.rows, self.cols)


# ---------------------------------------------------------------------------
# engine access


_aug_cache = {}
_aug_lock = threading.Lock()


def augmented_basis(mat):
    """Cached augmented Groebner data for the column module of ``mat``.

    Computed under a once-only guard so concurrent readers observe one
    basis object."""
    got = _aug_cache.get(mat)
    if got is None:
        with _aug_lock:
            got = _aug_cache.get(mat)
            if got is None:
                ring = mat.ring
                t = mat.rows
                s = mat.cols
                cols = []
                for j in range(s):
                    col = mat.column(j) + [ring.zero] * s
                    col[t + j] = ring.one
                    cols.append(column_to_vec(col)[0])
                got = engine.AugmentedBasis(cols, t, ring.mod)
                _aug_cache[mat] = got
    return got


def column_contains(mat, vector):
    """Is the column vector in the module generated by the matrix columns?"""
    vec, _ = column_to_vec(vector)
    if not vec:
        return True
    return augmented_basis(mat).contains(vec)


def lift_columns(mat, target):
    """X with mat · X = target, or None when some column is not liftable."""
    aug = augmented_basis(mat)
    cols = []
    for j in range(target.cols):
        vec, scale = column_to_vec(target.column(j))
        if not vec:
            cols.append([mat.ring.zero] * mat.cols)
            continue
        front, back, mult = aug.reduce(vec)
        if front:
            return None
        w = vec_to_polys(back, mat.cols, mat.ring, -scale / mult)
        cols.append(w)
    return RingMatrix.from_columns(mat.ring, mat.cols, cols)


def syzygy_matrix(mat):
    """Generators of {v : mat · v = 0} as the columns of a matrix."""
    aug = augmented_basis(mat)
    syz = aug.syzygies()
    cols = [vec_to_polys(s, mat.cols, mat.ring) for s in syz]
    return RingMatrix.from_columns(mat.ring, mat.cols, cols)


def drop_redundant_columns(mat):
    """Inclusion-minimal subset of columns generating the same submodule."""
    cols = [c for c in mat.columns() if any(not e.is_zero() for e in c)]
    changed = True
    while changed and len(cols) > 1:
        changed = False
        for j in range(len(cols)):
            others = cols[:j] + cols[j + 1 :]
            other_mat = RingMatrix.from_columns(mat.ring, mat.rows, others)
            if column_contains(other_mat, cols[j]):
                cols = others
                changed = True
                break
    return RingMatrix.from_columns(mat.ring, mat.rows, cols)


# ---------------------------------------------------------------------------
# presented modules


class PresentedModule:
    """Cokernel of a presentation matrix; generators are the matrix rows."""

    __slots__ = ("ring", "presentation", "_ann", "_zero")

    def __init__(self, presentation):
        self.ring = presentation.ring
        self.presentation = presentation
        self._ann = None
        self._zero = None

    @staticmethod
    def free(ring, rank):
        return PresentedModule(RingMatrix.zero(ring, rank, 0))

    @staticmethod
    def quotient_by_ideal(ideal):
        """R/I as a presented module on one generator."""
        gens = [g for g in ideal.gens if not g.is_zero()]
        return PresentedModule(RingMatrix(ideal.ring, 1, len(gens), gens))

    @property
    def ngens(self):
        return self.presentation.rows

    def unit_vector(self, i):
        v = [self.ring.zero] * self.ngens
        v[i] = self.ring.one
        return v

    def element_is_zero(self, vector):
        """Does a generator combination lie in the relation submodule?"""
        return column_contains(self.presentation, vector)

    def is_zero_module(self):
        if self._zero is None:
            self._zero = all(
                self.element_is_zero(self.unit_vector(i)) for i in range(self.ngens)
            )
        return self._zero

    def element_annihilator(self, vector):
        """{r in R : r·v = 0 in the module} via an augmented syzygy run."""
        first = RingMatrix.from_columns(self.ring, self.ngens, [vector])
        stacked = first.hstack(self.presentation)
        gens = []
        for syz in augmented_basis(stacked).syzygies():
            coeff = vec_to_polys(syz, stacked.cols, self.ring)[0]
            if not coeff.is_zero():
                gens.append(coeff)
        return Ideal(self.ring, gens)

    def annihilator(self):
        """Ann M, the intersection of the colon ideals of the generators."""
        if self._ann is not None:
            return self._ann
        if self.ngens == 0:
            self._ann = Ideal(self.ring, (self.ring.one,))
            return self._ann
        result = None
        for i in range(self.ngens):
            part = self.element_annihilator(self.unit_vector(i))
            result = part if result is None else result.intersection(part)
        self._ann = result
        return result

    def prune(self):
        """Cancel unit entries of the presentation.

        Returns ``(module, to_new, from_new)`` where ``to_new`` maps old
        generators to new ones and ``from_new`` maps back; both induce
        mutually inverse isomorphisms.
        """
        ring = self.ring
        A = self.presentation
        gens = list(range(A.rows))
        rows = [A.row(i) for i in range(A.rows)]
        to_new = RingMatrix.identity(ring, A.rows)
        while True:
            hit = None
            for i in range(len(rows)):
                for j in range(len(rows[0]) if rows else 0):
                    e = rows[i][j]
                    if e.is_unit():
                        hit = (i, j, e)
                        break
                if hit:
                    break
            if hit is None:
                break
            i, j, e = hit
            inv = _unit_inverse(ring, e)
            ncols = len(rows[0])
            # substitute generator i using relation j, then delete both
            subst = [(-inv) * rows[k][j] for k in range(len(rows))]
            for l in range(ncols):
                if l == j:
                    continue
                coeff = rows[i][l]
                if coeff.is_zero():
                    continue
                for k in range(len(rows)):
                    if k == i:
                        continue
                    rows[k][l] = rows[k][l] + coeff * subst[k]
            # update the generator-level witness: old gen i maps to the
            # substituted combination of the surviving generators
            new_to = []
            for k in range(len(rows)):
                if k == i:
                    continue
                row = []
                for g in range(to_new.cols):
                    val = to_new.entry(k, g) + subst[k] * to_new.entry(i, g)
                    row.append(val)
                new_to.append(row)
            to_new = RingMatrix.from_rows(ring, new_to) if new_to else RingMatrix(
                ring, 0, to_new.cols, []
            )
            rows = [
                [r[l] for l in range(ncols) if l != j]
                for k, r in enumerate(rows)
                if k != i
            ]
            gens.pop(i)
        # drop zero relation columns
        if rows:
            ncols = len(rows[0])
            keep = [
                l
                for l in range(ncols)
                if any(not rows[k][l].is_zero() for k in range(len(rows)))
            ]
            rows = [[r[l] for l in keep] for r in rows]
        new_mod = PresentedModule(
            RingMatrix.from_rows(ring, rows)
            if rows
            else RingMatrix(ring, 0, 0, [])
        )
        from_new_cols = []
        for idx, g in enumerate(gens):
            col = [ring.zero] * self.ngens
            col[g] = ring.one
            from_new_cols.append(col)
        from_new = RingMatrix.from_columns(ring, self.ngens, from_new_cols)
        return new_mod, to_new, from_new

    def __eq__(self, other):
        return (
            isinstance(other, PresentedModule)
            and self.presentation == other.presentation
        )

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return "PresentedModule(%d gens, %d relations)" % (
            self.ngens,
            self.presentation.cols,
        )


def _unit_inverse(ring, e):
    c = e.lead_coeff()
    if ring.mod:
        return ring.constant(engine.kernel.inv_mod(c, ring.mod))
    return ring.constant(Fraction(1) / c)


def subquotient(gens_matrix, rel_matrix):
    """(im gens)/(im rel) presented on the generator columns.

    Requires im rel ⊆ im gens; the relations of the result are the syzygies
    of the generators together with lifts of the relation columns.
    """
    ring = gens_matrix.ring
    syz = syzygy_matrix(gens_matrix)
    lifted = lift_columns(gens_matrix, rel_matrix)
    if lifted is None:
        raise PreconditionError("relation columns do not lie in the generated module")
    return PresentedModule(syz.hstack(lifted))


class ModuleMap:
    """Map of presented modules given by a matrix on generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, validate=True):
        if matrix.rows != target.ngens or matrix.cols != source.ngens:
            raise ShapeMismatchError(
                "map matrix must be (target gens) x (source gens)"
            )
        if source.ring != target.ring or matrix.ring != source.ring:
            raise RingMismatchError("map pieces over different rings")
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate and not self._respects_relations():
            raise PreconditionError("matrix does not carry relations into relations")

    def _respects_relations(self):
        image = self.matrix * self.source.presentation
        for j in range(image.cols):
            if not self.target.element_is_zero(image.column(j)):
                return False
        return True

    @staticmethod
    def identity(module):
        return ModuleMap(
            module, module, RingMatrix.identity(module.ring, module.ngens), False
        )

    def compose(self, other):
        """self ∘ other."""
        if other.target is not self.source and other.target != self.source:
            raise ShapeMismatchError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix * other.matrix, False)

    def is_zero_map(self):
        for j in range(self.matrix.cols):
            if not self.target.element_is_zero(self.matrix.column(j)):
                return False
        return True

    def cokernel(self):
        return PresentedModule(self.matrix.hstack(self.target.presentation))

    def kernel(self):
        """Returns ``(module, inclusion)``: the kernel presented on its own
        generators plus the matrix expressing them in source generators."""
        stacked = self.matrix.hstack(self.target.presentation)
        pre_cols = []
        for syz in augmented_basis(stacked).syzygies():
            col = vec_to_polys(syz, stacked.cols, self.matrix.ring)[: self.source.ngens]
            if any(not e.is_zero() for e in col):
                pre_cols.append(col)
        pre = RingMatrix.from_columns(self.matrix.ring, self.source.ngens, pre_cols)
        module = subquotient(pre, self.source.presentation)
        return module, pre

    def is_isomorphism(self):
        if not self.cokernel().is_zero_module():
            return False
        kernel_module, _ = self.kernel()
        return kernel_module.is_zero_module()

    def __repr__(self):
        return "ModuleMap(%d -> %d gens)" % (self.source.ngens, self.target.ngens)


def kernel_cokernel(f):
    """Both ends of a module map at once: ``(kernel, cokernel)``."""
    kernel_module, _ = f.kernel()
    return kernel_module, f.cokernel()


def resolution_matrices(presentation, max_len, minimize=True):
    """Iterated syzygies: matrices d1, d2, ... with exact columns.

    ``d1`` is the (column-minimized) presentation; each later matrix
    generates the kernel of the previous one.  Stops when the kernel is
    zero; raises when more than ``max_len`` steps are needed.
    """
    mats = []
    cur = drop_redundant_columns(presentation) if minimize else presentation
    while cur.cols > 0:
        if len(mats) >= max_len:
            raise PreconditionError(
                "resolution exceeded the maximum length %d" % max_len
            )
        mats.append(cur)
        nxt = syzygy_matrix(cur)
        if minimize:
            nxt = drop_redundant_columns(nxt)
        cur = nxt
    return mats
