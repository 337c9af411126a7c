"""Bounded chain complexes of finitely generated free modules.

Homological (lower) indexing: the differential d_n maps degree n to degree
n-1 and is stored as a matrix with rank(n-1) rows and rank(n) columns acting
on column vectors.  Suspension is the shift by +1.  The cone sign convention
is fixed once and for all as [[-d_src, 0], [-f, d_tgt]].
"""

from . import engine
from .errors import (
    EngineError,
    InvalidComplexError,
    InvalidMapError,
    PreconditionError,
    RingMismatchError,
    ShapeMismatchError,
)
from .modules import (
    ModuleMap,
    PresentedModule,
    RingMatrix,
    drop_redundant_columns,
    lift_columns,
    resolution_matrices,
    subquotient,
    syzygy_matrix,
)


class FreeComplex:
    """Bounded complex; ranks outside [lo, hi] are zero."""

    __slots__ = ("ring", "lo", "hi", "_ranks", "_diffs", "_homology", "_hash")

    def __init__(self, ring, ranks, diffs, check=True):
        """ranks: {degree: rank}; diffs: {degree n: matrix for d_n}."""
        self.ring = ring
        ranks = {n: r for n, r in ranks.items() if r}
        if ranks:
            lo = min(ranks)
            hi = max(ranks)
        else:
            lo, hi = 0, -1
        self.lo = lo
        self.hi = hi
        self._ranks = {n: ranks.get(n, 0) for n in range(lo, hi + 1)}
        kept = {}
        for n in range(lo + 1, hi + 1):
            rows = self.rank(n - 1)
            cols = self.rank(n)
            if rows == 0 or cols == 0:
                continue
            mat = diffs.get(n)
            if mat is None:
                mat = RingMatrix.zero(ring, rows, cols)
            if mat.ring != ring:
                raise RingMismatchError("differential over a different ring")
            if (mat.rows, mat.cols) != (rows, cols):
                raise InvalidComplexError(
                    "d_%d must be %dx%d, got %dx%d"
                    % (n, rows, cols, mat.rows, mat.cols)
                )
            kept[n] = mat
        self._diffs = kept
        self._homology = {}
        self._hash = None
        if check:
            bad = self.violations()
            if bad:
                raise InvalidComplexError(bad[0])

    # -- shape ----------------------------------------------------------------

    def rank(self, n):
        return self._ranks.get(n, 0)

    def diff(self, n):
        """d_n as a matrix of shape rank(n-1) x rank(n)."""
        mat = self._diffs.get(n)
        if mat is not None:
            return mat
        return RingMatrix.zero(self.ring, self.rank(n - 1), self.rank(n))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_empty(self):
        return self.lo > self.hi

    def total_rank(self):
        return sum(self._ranks.values())

    def violations(self):
        """d∘d checks; empty list when the complex is valid."""
        out = []
        for n in range(self.lo + 1, self.hi):
            prod = self.diff(n) * self.diff(n + 1)
            if not prod.is_zero():
                out.append("d_%d ∘ d_%d is nonzero" % (n, n + 1))
        return out

    # -- homology ---------------------------------------------------------------

    def cycles(self, n):
        """Matrix whose columns generate ker d_n inside degree n."""
        Z, _ = self._homology_data(n)
        return Z

    def homology(self, n):
        _, H = self._homology_data(n)
        return H

    def _homology_data(self, n):
        got = self._homology.get(n)
        if got is None:
            if self.rank(n) == 0:
                Z = RingMatrix.zero(self.ring, 0, 0)
                H = PresentedModule(Z)
            else:
                Z = syzygy_matrix(self.diff(n))
                H = subquotient(Z, self.diff(n + 1))
            got = (Z, H)
            self._homology[n] = got
        return got

    def homology_range(self):
        return self.lo, self.hi

    def is_acyclic(self):
        return all(self.homology(n).is_zero_module() for n in self.degrees())

    # -- identity -----------------------------------------------------------------

    def _key(self):
        return (
            self.ring,
            self.lo,
            self.hi,
            tuple(sorted(self._ranks.items())),
            tuple(sorted(self._diffs.items(), key=lambda kv: kv[0])),
        )

    def __eq__(self, other):
        return isinstance(other, FreeComplex) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        if self.is_empty():
            return "FreeComplex(empty)"
        ranks = ",".join(str(self.rank(n)) for n in self.degrees())
        return "FreeComplex([%d,%d] ranks %s)" % (self.lo, self.hi, ranks)


def single(ring, rank=1, degree=0):
    """R^rank concentrated in one degree."""
    return FreeComplex(ring, {degree: rank}, {})


def empty_complex(ring):
    return FreeComplex(ring, {}, {})


class ChainMap:
    """Degree-0 map of complexes given by per-degree matrices."""

    __slots__ = ("source", "target", "_mats")

    def __init__(self, source, target, mats, check=True):
        if source.ring != target.ring:
            raise RingMismatchError("chain map between different rings")
        self.source = source
        self.target = target
        kept = {}
        for n, mat in mats.items():
            rows = target.rank(n)
            cols = source.rank(n)
            if rows == 0 or cols == 0:
                if mat is not None and not mat.is_zero():
                    raise ShapeMismatchError("matrix outside the window at %d" % n)
                continue
            if (mat.rows, mat.cols) != (rows, cols):
                raise ShapeMismatchError(
                    "f_%d must be %dx%d" % (n, rows, cols)
                )
            kept[n] = mat
        self._mats = kept
        if check:
            bad = self.violations()
            if bad:
                raise InvalidMapError(bad[0])

    def mat(self, n):
        got = self._mats.get(n)
        if got is not None:
            return got
        return RingMatrix.zero(self.source.ring, self.target.rank(n), self.source.rank(n))

    def violations(self):
        out = []
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 1):
            left = self.target.diff(n) * self.mat(n)
            right = self.mat(n - 1) * self.source.diff(n)
            if left != right:
                out.append("square at degree %d does not commute" % n)
        return out

    @staticmethod
    def identity(C):
        mats = {n: RingMatrix.identity(C.ring, C.rank(n)) for n in C.degrees()}
        return ChainMap(C, C, mats, check=False)

    @staticmethod
    def zero(source, target):
        return ChainMap(source, target, {}, check=False)

    @staticmethod
    def scalar(C, value):
        """Multiplication by a ring element, as a chain self-map."""
        mats = {
            n: RingMatrix.scalar(C.ring, C.rank(n), value) for n in C.degrees()
        }
        return ChainMap(C, C, mats, check=False)

    def compose(self, other):
        """self ∘ other (other first)."""
        if other.target != self.source:
            raise ShapeMismatchError("chain maps are not composable")
        mats = {}
        for n in other.source.degrees():
            if self.target.rank(n) and other.source.rank(n):
                mats[n] = self.mat(n) * other.mat(n)
        return ChainMap(other.source, self.target, mats, check=False)

    def __add__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatchError("chain map sum needs equal ends")
        mats = {}
        for n in set(self._mats) | set(other._mats):
            mats[n] = self.mat(n) + other.mat(n)
        return ChainMap(self.source, self.target, mats, check=False)

    def __sub__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatchError("chain map difference needs equal ends")
        mats = {}
        for n in set(self._mats) | set(other._mats):
            mats[n] = self.mat(n) - other.mat(n)
        return ChainMap(self.source, self.target, mats, check=False)

    def scale(self, value):
        mats = {n: m.scale(value) for n, m in self._mats.items()}
        return ChainMap(self.source, self.target, mats, check=False)

    def is_zero(self):
        return all(m.is_zero() for m in self._mats.values())

    def induced(self, n):
        return induced_map(self, n)

    def __repr__(self):
        return "ChainMap(%r -> %r)" % (self.source, self.target)


class Homotopy:
    """Degree +1 system of matrices h_n : X_n -> Y_{n+1}."""

    __slots__ = ("source", "target", "_mats")

    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        kept = {}
        for n, mat in mats.items():
            rows = target.rank(n + 1)
            cols = source.rank(n)
            if rows == 0 or cols == 0:
                continue
            if (mat.rows, mat.cols) != (rows, cols):
                raise ShapeMismatchError("h_%d must be %dx%d" % (n, rows, cols))
            kept[n] = mat
        self._mats = kept

    def mat(self, n):
        got = self._mats.get(n)
        if got is not None:
            return got
        return RingMatrix.zero(
            self.source.ring, self.target.rank(n + 1), self.source.rank(n)
        )

    @staticmethod
    def zero(source, target):
        return Homotopy(source, target, {})


def check_homotopy(f, g, h):
    """Exact degreewise check of f - g = dh + hd for parallel maps."""
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatchError("maps are not parallel")
    if h.source != f.source or h.target != f.target:
        raise ShapeMismatchError("homotopy endpoints do not match")
    X = f.source
    Y = f.target
    lo = min(X.lo, Y.lo)
    hi = max(X.hi, Y.hi)
    for n in range(lo, hi + 1):
        want = f.mat(n) - g.mat(n)
        got = Y.diff(n + 1) * h.mat(n) + h.mat(n - 1) * X.diff(n)
        if want != got:
            return False
    return True


# ---------------------------------------------------------------------------
# constructions


def shift(C, s):
    """Suspension by s: degree n of the result is degree n-s of C, with the
    differentials negated when s is odd."""
    if s == 0:
        return C
    ranks = {n + s: C.rank(n) for n in C.degrees()}
    sign = -1 if s % 2 else 1
    diffs = {}
    for n in range(C.lo + 1, C.hi + 1):
        m = C.diff(n)
        diffs[n + s] = m if sign == 1 else m.scale(C.ring.constant(-1))
    return FreeComplex(C.ring, ranks, diffs, check=False)


def shift_map(f, s):
    mats = {n + s: f.mat(n) for n in f.source.degrees() if f.source.rank(n)}
    return ChainMap(shift(f.source, s), shift(f.target, s), mats, check=False)


def cone(f):
    """Mapping cone with the fixed block convention [[-d_src,0],[-f,d_tgt]]."""
    X = f.source
    Y = f.target
    ring = X.ring
    lo = min(X.lo + 1, Y.lo)
    hi = max(X.hi + 1, Y.hi)
    ranks = {}
    for n in range(lo, hi + 1):
        ranks[n] = X.rank(n - 1) + Y.rank(n)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        xr = X.rank(n - 1)
        yr = Y.rank(n)
        xr_out = X.rank(n - 2)
        yr_out = Y.rank(n - 1)
        rows = xr_out + yr_out
        cols = xr + yr
        if rows == 0 or cols == 0:
            continue
        entries = [ring.zero] * (rows * cols)
        dx = X.diff(n - 1)
        for i in range(xr_out):
            for j in range(xr):
                entries[i * cols + j] = -dx.entry(i, j)
        fm = f.mat(n - 1)
        for i in range(yr_out):
            for j in range(xr):
                entries[(xr_out + i) * cols + j] = -fm.entry(i, j)
        dy = Y.diff(n)
        for i in range(yr_out):
            for j in range(yr):
                entries[(xr_out + i) * cols + (xr + j)] = dy.entry(i, j)
        diffs[n] = RingMatrix(ring, rows, cols, entries)
    return FreeComplex(ring, ranks, diffs, check=False)


def cone_inclusion(f):
    """The target complex includes into the cone."""
    C = cone(f)
    Y = f.target
    mats = {}
    for n in Y.degrees():
        xr = f.source.rank(n - 1)
        rows = C.rank(n)
        cols = Y.rank(n)
        if rows == 0 or cols == 0:
            continue
        entries = [Y.ring.zero] * (rows * cols)
        for i in range(cols):
            entries[(xr + i) * cols + i] = Y.ring.one
        mats[n] = RingMatrix(Y.ring, rows, cols, entries)
    return ChainMap(Y, C, mats, check=False)


def cone_projection(f):
    """The cone projects onto the suspension of the source."""
    C = cone(f)
    SX = shift(f.source, 1)
    mats = {}
    for n in SX.degrees():
        xr = f.source.rank(n - 1)
        rows = xr
        cols = C.rank(n)
        if rows == 0 or cols == 0:
            continue
        entries = [f.source.ring.zero] * (rows * cols)
        for i in range(xr):
            entries[i * cols + i] = f.source.ring.one
        mats[n] = RingMatrix(f.source.ring, rows, cols, entries)
    return ChainMap(C, SX, mats, check=False)


def direct_sum(summands, ring=None):
    """Degreewise direct sum, blocks in the given order."""
    summands = list(summands)
    if ring is None:
        if not summands:
            raise PreconditionError("empty sum needs an explicit ring")
        ring = summands[0].ring
    for C in summands:
        if C.ring != ring:
            raise RingMismatchError("summands over different rings")
    if not summands:
        return empty_complex(ring)
    lo = min(C.lo for C in summands)
    hi = max(C.hi for C in summands)
    ranks = {}
    for n in range(lo, hi + 1):
        ranks[n] = sum(C.rank(n) for C in summands)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        rows = sum(C.rank(n - 1) for C in summands)
        cols = ranks.get(n, 0)
        if rows == 0 or cols == 0:
            continue
        entries = [ring.zero] * (rows * cols)
        roff = 0
        coff = 0
        for C in summands:
            d = C.diff(n)
            for i in range(d.rows):
                for j in range(d.cols):
                    entries[(roff + i) * cols + (coff + j)] = d.entry(i, j)
            roff += C.rank(n - 1)
            coff += C.rank(n)
        diffs[n] = RingMatrix(ring, rows, cols, entries)
    return FreeComplex(ring, ranks, diffs, check=False)


def sum_inclusion(summands, index, total=None):
    """Inclusion of one summand into the direct sum."""
    total = direct_sum(summands) if total is None else total
    C = summands[index]
    mats = {}
    for n in C.degrees():
        rows = total.rank(n)
        cols = C.rank(n)
        if rows == 0 or cols == 0:
            continue
        off = sum(S.rank(n) for S in summands[:index])
        entries = [C.ring.zero] * (rows * cols)
        for i in range(cols):
            entries[(off + i) * cols + i] = C.ring.one
        mats[n] = RingMatrix(C.ring, rows, cols, entries)
    return ChainMap(C, total, mats, check=False)


def sum_projection(summands, index, total=None):
    total = direct_sum(summands) if total is None else total
    C = summands[index]
    mats = {}
    for n in C.degrees():
        rows = C.rank(n)
        cols = total.rank(n)
        if rows == 0 or cols == 0:
            continue
        off = sum(S.rank(n) for S in summands[:index])
        entries = [C.ring.zero] * (rows * cols)
        for i in range(rows):
            entries[i * cols + (off + i)] = C.ring.one
        mats[n] = RingMatrix(C.ring, rows, cols, entries)
    return ChainMap(total, C, mats, check=False)


def _tensor_blocks(C, D, n):
    """Blocks (p, q=n-p, rankC, rankD, offset) of degree n of C ⊗ D."""
    blocks = []
    off = 0
    for p in range(C.lo, C.hi + 1):
        q = n - p
        rc = C.rank(p)
        rd = D.rank(q)
        if rc and rd:
            blocks.append((p, q, rc, rd, off))
            off += rc * rd
    return blocks, off


def tensor(C, D):
    """Tensor product with the Koszul sign (-1)^p on the second factor."""
    if C.ring != D.ring:
        raise RingMismatchError("tensor factors over different rings")
    ring = C.ring
    if C.is_empty() or D.is_empty():
        return empty_complex(ring)
    lo = C.lo + D.lo
    hi = C.hi + D.hi
    ranks = {}
    layout = {}
    for n in range(lo, hi + 1):
        blocks, total = _tensor_blocks(C, D, n)
        layout[n] = blocks
        if total:
            ranks[n] = total
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks_in, cols = _tensor_blocks(C, D, n)
        blocks_out, rows = _tensor_blocks(C, D, n - 1)
        if rows == 0 or cols == 0:
            continue
        out_off = {(p, q): off for p, q, _, _, off in blocks_out}
        out_shape = {(p, q): (rc, rd) for p, q, rc, rd, _ in blocks_out}
        entries = [ring.zero] * (rows * cols)
        for p, q, rc, rd, off in blocks_in:
            # d_C ⊗ id : block (p, q) -> (p-1, q)
            key = (p - 1, q)
            if key in out_off:
                dC = C.diff(p)
                o2 = out_off[key]
                rd2 = out_shape[key][1]
                for i2 in range(dC.rows):
                    for i in range(rc):
                        e = dC.entry(i2, i)
                        if e.is_zero():
                            continue
                        for j in range(rd):
                            r = o2 + i2 * rd2 + j
                            c = off + i * rd + j
                            entries[r * cols + c] = e
            # (-1)^p id ⊗ d_D : block (p, q) -> (p, q-1)
            key = (p, q - 1)
            if key in out_off:
                dD = D.diff(q)
                o2 = out_off[key]
                rd2 = out_shape[key][1]
                neg = p % 2 == 1
                for j2 in range(dD.rows):
                    for j in range(rd):
                        e = dD.entry(j2, j)
                        if e.is_zero():
                            continue
                        if neg:
                            e = -e
                        for i in range(rc):
                            r = o2 + i * rd2 + j2
                            c = off + i * rd + j
                            entries[r * cols + c] = e
        diffs[n] = RingMatrix(ring, rows, cols, entries)
    return FreeComplex(ring, ranks, diffs, check=False)


def tensor_map(f, M):
    """f ⊗ id_M for a chain map f."""
    X = f.source
    Y = f.target
    TX = tensor(X, M)
    TY = tensor(Y, M)
    ring = X.ring
    mats = {}
    for n in TX.degrees():
        blocks_in, cols = _tensor_blocks(X, M, n)
        blocks_out, rows = _tensor_blocks(Y, M, n)
        if rows == 0 or cols == 0:
            continue
        out_off = {(p, q): (off, rd) for p, q, _, rd, off in blocks_out}
        entries = [ring.zero] * (rows * cols)
        for p, q, rc, rd, off in blocks_in:
            key = (p, q)
            if key not in out_off:
                continue
            o2, rd2 = out_off[key]
            fm = f.mat(p)
            for i2 in range(fm.rows):
                for i in range(rc):
                    e = fm.entry(i2, i)
                    if e.is_zero():
                        continue
                    for j in range(rd):
                        r = o2 + i2 * rd2 + j
                        c = off + i * rd + j
                        entries[r * cols + c] = e
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return ChainMap(TX, TY, mats, check=False)


def tensor_homotopy(h, M):
    """h ⊗ id_M; no extra signs are needed for a degree +1 system."""
    X = h.source
    Y = h.target
    TX = tensor(X, M)
    TY = tensor(Y, M)
    ring = X.ring
    mats = {}
    for n in TX.degrees():
        blocks_in, cols = _tensor_blocks(X, M, n)
        blocks_out, rows = _tensor_blocks(Y, M, n + 1)
        if rows == 0 or cols == 0:
            continue
        out_off = {(p, q): (off, rd) for p, q, _, rd, off in blocks_out}
        entries = [ring.zero] * (rows * cols)
        for p, q, rc, rd, off in blocks_in:
            key = (p + 1, q)
            if key not in out_off:
                continue
            o2, rd2 = out_off[key]
            hm = h.mat(p)
            for i2 in range(hm.rows):
                for i in range(rc):
                    e = hm.entry(i2, i)
                    if e.is_zero():
                        continue
                    for j in range(rd):
                        r = o2 + i2 * rd2 + j
                        c = off + i * rd + j
                        entries[r * cols + c] = e
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return Homotopy(TX, TY, mats)


# ---------------------------------------------------------------------------
# homology-level maps


def induced_map(f, n):
    """H_n(f) on the presented homology modules."""
    X = f.source
    Y = f.target
    HX = X.homology(n)
    HY = Y.homology(n)
    ZX = X.cycles(n)
    ZY = Y.cycles(n)
    if HX.ngens == 0 or HY.ngens == 0:
        mat = RingMatrix.zero(X.ring, HY.ngens, HX.ngens)
        return ModuleMap(HX, HY, mat, validate=False)
    images = f.mat(n) * ZX
    lifted = lift_columns(ZY, images)
    if lifted is None:
        raise EngineError("image of a cycle failed to lift to target cycles")
    return ModuleMap(HX, HY, lifted, validate=False)


def is_quasi_iso(f):
    lo = min(f.source.lo, f.target.lo)
    hi = max(f.source.hi, f.target.hi)
    for n in range(lo, hi + 1):
        if not induced_map(f, n).is_isomorphism():
            return False
    return True


# ---------------------------------------------------------------------------
# truncation


def truncate_ge(C, n):
    """Standard truncation from below, returned as a free complex with a
    chain map into C inducing isomorphisms on H_i for i >= n."""
    ring = C.ring
    if C.is_empty() or n > C.hi:
        T = empty_complex(ring)
        return T, ChainMap(T, C, {}, check=False)
    dmat = C.diff(n)
    Z = syzygy_matrix(dmat) if C.rank(n) else RingMatrix.zero(ring, 0, 0)
    z = Z.cols
    L = lift_columns(Z, C.diff(n + 1)) if z else None
    if z and L is None:
        raise EngineError("boundaries failed to lift through the cycle module")
    # resolve ker d_n: tower of iterated syzygies glued along correction maps
    tower = []
    cur = Z
    while cur.cols:
        nxt = syzygy_matrix(cur)
        if nxt.cols == 0:
            break
        tower.append(nxt)
        cur = nxt
    ranks = {n: z}
    diffs = {}
    mats = {n: Z} if z and C.rank(n) else {}
    deltas = {1: L if L is not None else RingMatrix.zero(ring, z, C.rank(n + 1))}
    hi = max(C.hi, n + len(tower))
    for k in range(1, hi - n + 1):
        deg = n + k
        g_k = tower[k - 1] if k - 1 < len(tower) else None
        gcols = g_k.cols if g_k is not None else 0
        ranks[deg] = C.rank(deg) + gcols
        # differential into degree deg-1
        if k == 1:
            left = deltas[1]
            right = tower[0] if tower else None
            if z:
                dmat_k = left if right is None else left.hstack(right)
                if dmat_k.cols:
                    diffs[deg] = dmat_k
        else:
            g_prev = tower[k - 2] if k - 2 < len(tower) else None
            delta_k = deltas.get(k)
            top = C.diff(deg)
            rows_top = C.rank(deg - 1)
            rows_bot = g_prev.cols if g_prev is not None else 0
            cols_left = C.rank(deg)
            cols_right = gcols
            if rows_top + rows_bot and cols_left + cols_right:
                entries = [ring.zero] * ((rows_top + rows_bot) * (cols_left + cols_right))
                ncols = cols_left + cols_right
                for i in range(rows_top):
                    for j in range(cols_left):
                        entries[i * ncols + j] = top.entry(i, j)
                if delta_k is not None:
                    for i in range(rows_bot):
                        for j in range(cols_left):
                            entries[(rows_top + i) * ncols + j] = delta_k.entry(i, j)
                if g_k is not None:
                    for i in range(rows_bot):
                        for j in range(cols_right):
                            entries[(rows_top + i) * ncols + (cols_left + j)] = g_k.entry(i, j)
                diffs[deg] = RingMatrix(ring, rows_top + rows_bot, ncols, entries)
        # correction map for the next step: G_k δ_{k+1} = -δ_k d_C
        if k < hi - n:
            delta_k = deltas.get(k)
            if g_k is not None and delta_k is not None:
                rhs = (delta_k * C.diff(n + k + 1)).scale(ring.constant(-1))
                nxt = lift_columns(g_k, rhs)
                if nxt is None:
                    raise EngineError("truncation correction failed to lift")
                deltas[k + 1] = nxt
            else:
                deltas[k + 1] = None
        # chain map component: identity on the C-part
        if C.rank(deg):
            rows = C.rank(deg)
            cols = ranks[deg]
            entries = [ring.zero] * (rows * cols)
            for i in range(rows):
                entries[i * cols + i] = ring.one
            mats[deg] = RingMatrix(ring, rows, cols, entries)
    T = FreeComplex(ring, ranks, diffs, check=False)
    incl = ChainMap(T, C, mats, check=False)
    return T, incl


# ---------------------------------------------------------------------------
# resolutions and comparisons


def free_resolution(M, max_len=None):
    """Free complex F with H_0(F) = M and vanishing higher homology.

    The length is bounded by the number of variables; exceeding it signals
    an engine bug and raises EngineError.
    """
    ring = M.ring
    bound = ring.nvars
    if max_len is None:
        max_len = bound
    if max_len < bound:
        raise PreconditionError("max_len must be at least the variable count")
    if M.ngens == 0:
        return empty_complex(ring)
    try:
        mats = resolution_matrices(M.presentation, max_len)
    except PreconditionError:
        raise EngineError(
            "free resolution exceeded the Hilbert length bound"
        ) from None
    if len(mats) > bound:
        raise EngineError("free resolution exceeded the Hilbert length bound")
    ranks = {0: M.ngens}
    diffs = {}
    for k, mat in enumerate(mats):
        ranks[k + 1] = mat.cols
        diffs[k + 1] = mat
    return FreeComplex(ring, ranks, diffs, check=False)


def quotient_resolution(ideal, max_len=None):
    """Free resolution of R/I placed in degree 0."""
    return free_resolution(PresentedModule.quotient_by_ideal(ideal), max_len)


def partial_resolution(M, length):
    """Iterated syzygies of the raw presentation, without minimization and
    without the length bound; exact in degrees 0 < i < length."""
    ring = M.ring
    if M.ngens == 0:
        return empty_complex(ring)
    ranks = {0: M.ngens}
    diffs = {}
    cur = M.presentation
    for k in range(1, length + 1):
        if cur.cols == 0:
            break
        ranks[k] = cur.cols
        diffs[k] = cur
        cur = syzygy_matrix(cur)
    return FreeComplex(ring, ranks, diffs, check=False)


def bottom_comparison(F, C, phi0):
    """Chain map F -> C extending a generator-level matrix at the common
    bottom degree.

    Requires both complexes to start at the same degree b, C to be exact in
    degrees above b, and phi0 to send relations of H_b(F) into relations of
    H_b(C) (i.e. to induce a module map on bottom homology).
    """
    if F.is_empty():
        return ChainMap(F, C, {}, check=False)
    b = F.lo
    if C.lo != b:
        raise PreconditionError("comparison requires equal bottom degrees")
    mats = {b: phi0}
    prev = phi0
    for k in range(b + 1, F.hi + 1):
        if F.rank(k) == 0:
            prev = None
            continue
        rhs = prev * F.diff(k) if prev is not None else None
        if rhs is None or C.rank(k) == 0:
            if rhs is not None and not rhs.is_zero():
                raise PreconditionError("comparison lift failed: target too short")
            prev = None
            continue
        lifted = lift_columns(C.diff(k), rhs)
        if lifted is None:
            raise PreconditionError("comparison lift failed at degree %d" % k)
        mats[k] = lifted
        prev = lifted
    return ChainMap(F, C, mats, check=False)


def resolution_map(module_map, F, G):
    """Lift a map of presented modules to a chain map of resolutions.

    F resolves the source and G the target; the bottom matrix is the map's
    generator matrix."""
    return bottom_comparison(F, G, module_map.matrix)


# ---------------------------------------------------------------------------
# homotopy search


def find_homotopy(w):
    """Solve dh + hd = w for a degree +1 system h, or return None.

    This is the degreewise linear system over the ring, flattened row-major
    and solved by one module lift."""
    X = w.source
    Y = w.target
    ring = X.ring
    h_blocks = []  # (n, rows, cols, offset)
    off = 0
    for n in X.degrees():
        rows = Y.rank(n + 1)
        cols = X.rank(n)
        if rows and cols:
            h_blocks.append((n, rows, cols, off))
            off += rows * cols
    unknowns = off
    eq_blocks = []
    off = 0
    lo = min(X.lo, Y.lo)
    hi = max(X.hi, Y.hi)
    for n in range(lo, hi + 1):
        rows = Y.rank(n)
        cols = X.rank(n)
        if rows and cols:
            eq_blocks.append((n, rows, cols, off))
            off += rows * cols
    neqs = off
    if unknowns == 0:
        if all(w.mat(n).is_zero() for n in range(lo, hi + 1)):
            return Homotopy.zero(X, Y)
        return None
    entries = [ring.zero] * (neqs * unknowns)
    hoff = {n: (o, r, c) for n, r, c, o in h_blocks}
    for n, rows, cols, eoff in eq_blocks:
        # d_{n+1} h_n contribution
        if n in hoff:
            o, hr, hc = hoff[n]
            d = Y.diff(n + 1)
            for i in range(rows):
                for k in range(hr):
                    e = d.entry(i, k)
                    if e.is_zero():
                        continue
                    for j in range(cols):
                        r = eoff + i * cols + j
                        c = o + k * hc + j
                        entries[r * unknowns + c] = e
        # h_{n-1} d_n contribution
        if n - 1 in hoff:
            o, hr, hc = hoff[n - 1]
            d = X.diff(n)
            for i in range(rows):
                for k in range(hc):
                    for j in range(cols):
                        e = d.entry(k, j)
                        if e.is_zero():
                            continue
                        r = eoff + i * cols + j
                        c = o + i * hc + k
                        entries[r * unknowns + c] = e
    system = RingMatrix(ring, neqs, unknowns, entries)
    wvec = [ring.zero] * neqs
    for n, rows, cols, eoff in eq_blocks:
        m = w.mat(n)
        for i in range(rows):
            for j in range(cols):
                wvec[eoff + i * cols + j] = m.entry(i, j)
    target = RingMatrix.from_columns(ring, neqs, [wvec])
    sol = lift_columns(system, target)
    if sol is None:
        return None
    mats = {}
    for n, rows, cols, o in h_blocks:
        entries = [ring.zero] * (rows * cols)
        for i in range(rows):
            for j in range(cols):
                entries[i * cols + j] = sol.entry(o + i * cols + j, 0)
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return Homotopy(X, Y, mats)
