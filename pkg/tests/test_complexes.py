from fractions import Fraction

import pytest

import gen
import oracles
from aislekit import (
    ChainMap,
    FreeComplex,
    Homotopy,
    Ideal,
    InvalidComplexError,
    KoszulSequence,
    ModuleMap,
    PresentedModule,
    RingMatrix,
    check_homotopy,
    cone,
    direct_sum,
    empty_complex,
    find_homotopy,
    free_resolution,
    induced_map,
    is_quasi_iso,
    koszul,
    quotient_resolution,
    shift,
    single,
    tensor,
    truncate_ge,
)
from aislekit.complexes import _tensor_blocks


def two_term(ring, text, degree=0):
    return gen.two_term(ring, ring.parse(text), degree)


class TestValidation:
    def test_valid(self, QX):
        C = two_term(QX, "x")
        assert C.violations() == []

    def test_dd_nonzero_located(self, QX):
        t = QX.var("x")
        with pytest.raises(InvalidComplexError) as err:
            FreeComplex(
                QX,
                {0: 1, 1: 1, 2: 1},
                {
                    1: RingMatrix.from_rows(QX, [["x"]]),
                    2: RingMatrix.from_rows(QX, [["x"]]),
                },
            )
        assert "d_1" in str(err.value)

    def test_empty_ok(self, QX):
        assert empty_complex(QX).violations() == []


class TestShift:
    def test_identity_case(self, QX):
        C = two_term(QX, "x")
        assert shift(C, 0) == C

    def test_degree_move(self, QX):
        S = shift(single(QX), 2)
        assert (S.lo, S.hi) == (2, 2)

    def test_homology_shifts(self, QX):
        C = two_term(QX, "x")
        S = shift(C, 1)
        H = S.homology(1)
        Rx = PresentedModule(RingMatrix.from_rows(QX, [["x"]]))
        assert ModuleMap(H, Rx, RingMatrix.identity(QX, 1)).is_isomorphism()

    def test_double_shift_signs(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        assert shift(shift(C, 1), -1) == C
        assert shift(shift(C, 3), -3) == C


class TestCone:
    def test_koszul_cone(self, QX):
        f = ChainMap.scalar(single(QX), QX.var("x"))
        C = cone(f)
        assert [C.rank(n) for n in C.degrees()] == [1, 1]
        Rx = PresentedModule(RingMatrix.from_rows(QX, [["x"]]))
        assert ModuleMap(
            C.homology(0), Rx, RingMatrix.identity(QX, 1)
        ).is_isomorphism()
        assert C.homology(1).is_zero_module()

    def test_cone_of_identity_acyclic(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        assert cone(ChainMap.identity(C)).is_acyclic()

    def test_cone_of_zero(self, QX):
        c = cone(ChainMap.zero(single(QX), single(QX)))
        assert not c.homology(0).is_zero_module()
        assert not c.homology(1).is_zero_module()

    def test_long_exact_sequence_small(self, QX, QXY, rng):
        for ring in (QX, QXY):
            for _ in range(8):
                X = gen.random_complex(ring, rng, max_pieces=2, window=2)
                f = gen.random_chain_map(X, X, rng)
                assert f.violations() == []
                assert gen.cone_les_exact(f)
        # and maps between different complexes
        for _ in range(4):
            X = gen.random_complex(QXY, rng, max_pieces=2, window=2)
            Y = gen.random_complex(QXY, rng, max_pieces=2, window=2)
            f = gen.random_chain_map(X, Y, rng)
            assert f.violations() == []
            assert gen.cone_les_exact(f)


class TestDirectSum:
    def test_zero_sum(self, QX):
        assert direct_sum([empty_complex(QX), empty_complex(QX)]).is_empty()

    def test_componentwise_homology(self, QX, QXY):
        F = quotient_resolution(Ideal(QXY, [QXY.var("x")]))
        G = quotient_resolution(Ideal(QXY, [QXY.var("x"), QXY.var("y")]))
        S = direct_sum([F, shift(G, 2)])
        assert not S.homology(0).is_zero_module()
        assert S.homology(1).is_zero_module()
        assert not S.homology(2).is_zero_module()

    def test_singleton(self, QX):
        C = two_term(QX, "x^2")
        assert direct_sum([C]) == C


class TestTensor:
    def test_unit(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        assert tensor(C, single(QXY)) == C
        assert tensor(single(QXY), C) == C

    def test_acyclic_after_unit_quotient(self, QXY):
        # tensoring with the resolution of R/(1) = 0 kills everything
        trivial = two_term(QXY, "1")
        T = tensor(two_term(QXY, "x"), trivial)
        assert T.is_acyclic()

    def test_tor_symmetric(self, QX):
        F = quotient_resolution(Ideal(QX, [QX.var("x")]))
        T = tensor(F, F)
        Rx = PresentedModule(RingMatrix.from_rows(QX, [["x"]]))
        for n in (0, 1):
            H = T.homology(n)
            assert ModuleMap(H, Rx, RingMatrix.identity(QX, 1)).is_isomorphism()

    def test_koszul_as_iterated_tensor(self, QXY):
        """Explicit chain isomorphism between the iterated-cone Koszul
        complex and the tensor of the two-term factors, for k <= 4."""
        from aislekit import tensor_map

        ring = QXY
        x, y = ring.gens()
        for elements in ([x], [x, y], [x, y, x + y], [x, y, x + y, x - y]):
            iso = ChainMap.identity(koszul(KoszulSequence(ring, elements[:1])))
            for e in elements[1:]:
                unfold = _left_cone_unfold(iso.source, e)
                iso = tensor_map(iso, gen.two_term(ring, -e)).compose(unfold)
            K_full = koszul(KoszulSequence(ring, elements))
            assert iso.source == K_full
            assert iso.violations() == []
            assert is_quasi_iso(iso)
            assert [K_full.rank(n) for n in K_full.degrees()] == [
                iso.target.rank(n) for n in iso.target.degrees()
            ]

    def test_associative_with_witness(self, QXY, rng):
        for _ in range(3):
            C = gen.koszul_pair(QXY, rng)
            D = gen.two_term(QXY, gen.random_poly(QXY, rng, 2, 2, 2, nonzero=True))
            E = gen.two_term(QXY, gen.random_poly(QXY, rng, 2, 2, 2, nonzero=True))
            left = tensor(tensor(C, D), E)
            right = tensor(C, tensor(D, E))
            iso = _associator(C, D, E)
            assert iso.source == left and iso.target == right
            assert iso.violations() == []
            assert is_quasi_iso(iso)

    def test_commutative_with_witness(self, QXY, rng):
        for _ in range(3):
            C = gen.two_term(QXY, gen.random_poly(QXY, rng, 2, 2, 2, nonzero=True))
            D = gen.koszul_pair(QXY, rng)
            braid = _braiding(C, D)
            assert braid.violations() == []
            assert is_quasi_iso(braid)


def _left_cone_unfold(C, g):
    """cone(g·id_C) -> C ⊗ K(g) with the sign (-1)^(n-1) on the shifted
    block; the standard unfolding of a cone of a scalar."""
    ring = C.ring
    Kg = gen.two_term(ring, -g)
    source = cone(ChainMap.scalar(C, g))
    target = tensor(C, Kg)
    mats = {}
    for n in source.degrees():
        rows = target.rank(n)
        cols = source.rank(n)
        if rows == 0 or cols == 0:
            continue
        blocks, _ = _tensor_blocks(C, Kg, n)
        tgt = {(p, q): off for p, q, _, _, off in blocks}
        entries = [ring.zero] * (rows * cols)
        xr = C.rank(n - 1)
        sign = ring.constant(-1 if (n - 1) % 2 else 1)
        for i in range(xr):
            entries[(tgt[(n - 1, 1)] + i) * cols + i] = sign
        for i in range(C.rank(n)):
            entries[(tgt[(n, 0)] + i) * cols + (xr + i)] = ring.one
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return ChainMap(source, target, mats)


def _associator(C, D, E):
    """(C ⊗ D) ⊗ E -> C ⊗ (D ⊗ E), a sign-free permutation."""
    ring = C.ring
    CD = tensor(C, D)
    DE = tensor(D, E)
    source = tensor(CD, E)
    target = tensor(C, DE)
    mats = {}
    for n in source.degrees():
        rows = target.rank(n)
        cols = source.rank(n)
        if rows == 0 or cols == 0:
            continue
        entries = [ring.zero] * (rows * cols)
        out_blocks, _ = _tensor_blocks(C, DE, n)
        out = {(p, t): off for p, t, _, _, off in out_blocks}
        src_blocks, _ = _tensor_blocks(CD, E, n)
        for s, r, rcd, re, off in src_blocks:
            inner, _ = _tensor_blocks(C, D, s)
            for p, q, rc, rd, ioff in inner:
                t = q + r
                tgt_off = out[(p, t)]
                de_blocks, _ = _tensor_blocks(D, E, t)
                de_off = {(q2, r2): o for q2, r2, _, _, o in de_blocks}[(q, r)]
                rdt = DE.rank(t)
                for i in range(rc):
                    for j in range(rd):
                        for k in range(re):
                            src_idx = off + (ioff + i * rd + j) * re + k
                            dst_idx = tgt_off + i * rdt + (de_off + j * E.rank(r) + k)
                            entries[dst_idx * cols + src_idx] = ring.one
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return ChainMap(source, target, mats)


def _braiding(C, D):
    """C ⊗ D -> D ⊗ C with the Koszul sign (-1)^(pq)."""
    ring = C.ring
    source = tensor(C, D)
    target = tensor(D, C)
    mats = {}
    for n in source.degrees():
        rows = target.rank(n)
        cols = source.rank(n)
        if rows == 0 or cols == 0:
            continue
        entries = [ring.zero] * (rows * cols)
        out_blocks, _ = _tensor_blocks(D, C, n)
        out = {(q, p): off for q, p, _, _, off in out_blocks}
        src_blocks, _ = _tensor_blocks(C, D, n)
        for p, q, rc, rd, off in src_blocks:
            tgt_off = out[(q, p)]
            sign = ring.constant(-1 if (p * q) % 2 else 1)
            for i in range(rc):
                for j in range(rd):
                    src_idx = off + i * rd + j
                    dst_idx = tgt_off + j * rc + i
                    entries[dst_idx * cols + src_idx] = sign
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return ChainMap(source, target, mats)


class TestTruncation:
    def test_koszul_above_one(self, QXY):
        K = koszul(KoszulSequence(QXY, QXY.gens()))
        T, incl = truncate_ge(K, 1)
        assert T.is_acyclic()
        assert incl.violations() == []

    def test_below_window_quasi_iso(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        T, incl = truncate_ge(C, C.lo - 1)
        assert is_quasi_iso(incl)

    def test_above_window_empty(self, QXY):
        T, _ = truncate_ge(single(QXY), 1)
        assert T.is_empty()

    def test_homology_window_contract(self, QXY, rng):
        for _ in range(5):
            C = gen.random_complex(QXY, rng, max_pieces=3, window=3)
            n = rng.randrange(C.lo, C.hi + 1)
            T, incl = truncate_ge(C, n)
            assert T.violations() == []
            assert incl.violations() == []
            for i in range(C.lo - 1, C.hi + 2):
                if i < n:
                    assert T.homology(i).is_zero_module()
                else:
                    assert induced_map(incl, i).is_isomorphism()


class TestHomology:
    def test_principal(self, QX):
        C = two_term(QX, "x")
        H = C.homology(0)
        Rx = PresentedModule(RingMatrix.from_rows(QX, [["x"]]))
        assert ModuleMap(H, Rx, RingMatrix.identity(QX, 1)).is_isomorphism()

    def test_koszul_regular(self, QXY):
        K = koszul(KoszulSequence(QXY, QXY.gens()))
        assert K.homology(1).is_zero_module()
        quotient = PresentedModule(RingMatrix.from_rows(QXY, [["x", "y"]]))
        wit = ModuleMap(K.homology(0), quotient, RingMatrix.identity(QXY, 1))
        assert wit.is_isomorphism()

    def test_univariate_oracle_small(self, QX, rng):
        """Engine homology matches the elementary-divisor oracle."""
        for _ in range(30):
            C = gen.random_complex(QX, rng, max_pieces=3, window=3)
            for n in C.degrees():
                assert _divisor_data(C, n) == _oracle_divisor_data(C, n)

    def test_graded_oracle_small(self, QXY, rng):
        for _ in range(10):
            C, weights = gen.random_graded_complex(QXY, rng)
            for n in C.degrees():
                H = C.homology(n)
                gw = _cycle_weights(C, weights, n)
                for d in range(0, 5):
                    left = oracles.presented_graded_dim(H, gw, d)
                    right = oracles.complex_graded_dim(C, weights, n, d)
                    assert left == right

    def test_euler_characteristic_graded(self, QXY, rng):
        for _ in range(5):
            C, weights = gen.random_graded_complex(QXY, rng)
            for d in range(0, 5):
                total = 0
                ranks = 0
                for n in C.degrees():
                    sign = -1 if n % 2 else 1
                    total += sign * oracles.complex_graded_dim(C, weights, n, d)
                    ranks += sign * sum(
                        len(oracles.monomials_of_degree(QXY.nvars, d - w))
                        for w in weights.get(n, [])
                        if d >= w
                    )
                assert total == ranks


def _upoly(p):
    out = [Fraction(0)] * (p.total_degree() + 1 if not p.is_zero() else 0)
    for mono, c in p.terms:
        out[mono[0]] = Fraction(c)
    return out


def _mat_to_udata(mat):
    entries = [
        [_upoly(mat.entry(i, j)) for j in range(mat.cols)] for i in range(mat.rows)
    ]
    return entries, mat.rows, mat.cols


def _oracle_divisor_data(C, n):
    return oracles.univariate_homology_invariants(
        _mat_to_udata(C.diff(n)), _mat_to_udata(C.diff(n + 1)), C.rank(n)
    )


def _divisor_data(C, n):
    H = C.homology(n)
    pres = H.presentation
    entries = [
        [_upoly(pres.entry(i, j)) for j in range(pres.cols)] for i in range(pres.rows)
    ]
    return oracles.presentation_invariants(entries, pres.rows, pres.cols)


def _cycle_weights(C, weights, n):
    Z = C.cycles(n)
    here = weights.get(n, [])
    out = []
    for j in range(Z.cols):
        w = None
        for i in range(Z.rows):
            e = Z.entry(i, j)
            if not e.is_zero():
                w = e.total_degree() + here[i]
                break
        out.append(w if w is not None else 0)
    return out


class TestConstructionsStayValid:
    def test_every_construction_validates(self, QXY, rng):
        for _ in range(6):
            C = gen.random_complex(QXY, rng, max_pieces=2, window=2)
            D = gen.random_complex(QXY, rng, max_pieces=2, window=2)
            f = gen.random_chain_map(C, C, rng)
            assert shift(C, 2).violations() == []
            assert shift(C, -1).violations() == []
            assert cone(f).violations() == []
            assert direct_sum([C, D]).violations() == []
            assert tensor(C, D).violations() == []
            T, incl = truncate_ge(C, C.lo + 1)
            assert T.violations() == []
            assert incl.violations() == []


class TestPrimeFieldCoefficients:
    def test_koszul_homology_mod_p(self, GF5XY):
        x, y = GF5XY.gens()
        K = koszul(KoszulSequence(GF5XY, [x, y]))
        assert K.violations() == []
        assert K.homology(1).is_zero_module()
        quotient = PresentedModule(RingMatrix.from_rows(GF5XY, [["x", "y"]]))
        assert ModuleMap(
            K.homology(0), quotient, RingMatrix.identity(GF5XY, 1)
        ).is_isomorphism()

    def test_truncation_mod_p(self, GF5XY):
        K = koszul(KoszulSequence(GF5XY, GF5XY.gens()))
        T, incl = truncate_ge(K, 1)
        assert T.is_acyclic()
        assert incl.violations() == []


class TestQuasiIso:
    def test_identity(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        assert is_quasi_iso(ChainMap.identity(C))

    def test_resolution_comparison(self, QXY):
        from aislekit import bottom_comparison

        K = koszul(KoszulSequence(QXY, QXY.gens()))
        F = free_resolution(PresentedModule(RingMatrix.from_rows(QXY, [["x", "y"]])))
        cmp_map = bottom_comparison(K, F, RingMatrix.identity(QXY, 1))
        assert is_quasi_iso(cmp_map)

    def test_zero_map_not_quasi_iso(self, QX):
        C = two_term(QX, "x")
        assert not is_quasi_iso(ChainMap.zero(C, C))


class TestHomotopy:
    def test_trivial(self, QXY, rng):
        C = gen.random_complex(QXY, rng)
        f = gen.random_chain_map(C, C, rng)
        assert check_homotopy(f, f, Homotopy.zero(C, C))

    def test_x2_null_homotopy(self, QX):
        t = QX.var("x")
        C = two_term(QX, "x^2")
        f = ChainMap.scalar(C, t * t)
        h = Homotopy(C, C, {0: RingMatrix.identity(QX, 1)})
        assert check_homotopy(f, ChainMap.zero(C, C), h)

    def test_failure_detected(self, QX):
        C = two_term(QX, "x^2")
        f = ChainMap.scalar(C, QX.var("x"))
        h = Homotopy(C, C, {0: RingMatrix.identity(QX, 1)})
        assert not check_homotopy(f, ChainMap.zero(C, C), h)

    def test_find_homotopy_roundtrip(self, QXY, rng):
        for _ in range(6):
            X = gen.random_complex(QXY, rng, max_pieces=2, window=2)
            h = gen.random_homotopy(X, X, rng)
            mats = {}
            for n in X.degrees():
                if X.rank(n):
                    mats[n] = X.diff(n + 1) * h.mat(n) + h.mat(n - 1) * X.diff(n)
            w = ChainMap(X, X, mats, check=False)
            found = find_homotopy(w)
            assert found is not None
            assert check_homotopy(w, ChainMap.zero(X, X), found)
