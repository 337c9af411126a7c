import pytest

import gen
from aislekit import (
    Certificate,
    ChainMap,
    ExtendNode,
    GeneratorNode,
    Homotopy,
    Ideal,
    PreconditionError,
    ReplaceNode,
    RetractNode,
    RingMatrix,
    SumNode,
    SuspendNode,
    bottom_comparison,
    cellular_certificate,
    check_certificate,
    cone,
    direct_sum,
    koszul,
    KoszulSequence,
    quotient_resolution,
    shift,
    single,
    sum_inclusion,
    sum_projection,
    support_invariant,
    tensor,
    tensor_certificate,
)
from aislekit.certify import cone_distribute, sum_distribute, transpose_permutation
from aislekit.complexes import is_quasi_iso, tensor_map


def extension_certificate_x2(QX):
    """E = res R/(x) kills res R/(x^2) through one extension."""
    t = QX.var("x")
    E = quotient_resolution(Ideal(QX, [t]))
    F = quotient_resolution(Ideal(QX, [t * t]))
    attach = ChainMap(
        E, F, {0: RingMatrix.from_rows(QX, [["x"]]), 1: RingMatrix.identity(QX, 1)}
    )
    witness = bottom_comparison(E, cone(attach), RingMatrix.identity(QX, 1))
    cert = Certificate(
        QX,
        [GeneratorNode("g", E), ExtendNode("root", "g", F, attach, "g", witness)],
        "root",
    )
    return cert, E, F


class TestChecker:
    def test_suspension(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        cert = Certificate(
            QX, [GeneratorNode("g", E), SuspendNode("root", "g", 1)], "root"
        )
        assert check_certificate(cert, E).accepted
        assert cert.root_complex() == shift(E, 1)

    def test_negative_suspension_rejected(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        for s in (0, -1):
            cert = Certificate(
                QX, [GeneratorNode("g", E), SuspendNode("root", "g", s)], "root"
            )
            result = check_certificate(cert, E)
            assert not result.accepted
            assert "suspension" in result.reason

    def test_extension(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        result = check_certificate(cert, E)
        assert result.accepted
        assert cert.root_complex() == F

    def test_cycle_rejected(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        cert = Certificate(
            QX,
            [SuspendNode("a", "b", 1), SuspendNode("b", "a", 1), GeneratorNode("g", E)],
            "a",
        )
        result = check_certificate(cert, E)
        assert not result.accepted
        assert result.reason == "dependency cycle"

    def test_generator_needs_witness(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        other = quotient_resolution(Ideal(QX, [QX.var("x") ** 2]))
        cert = Certificate(QX, [GeneratorNode("root", other)], "root")
        result = check_certificate(cert, E)
        assert not result.accepted
        assert "witness" in result.reason

    def test_generator_witness_to_node(self, QX):
        t = QX.var("x")
        E = quotient_resolution(Ideal(QX, [t]))
        K = koszul(KoszulSequence(QX, [t]))
        witness = bottom_comparison(E, K, RingMatrix.identity(QX, 1))
        cert = Certificate(
            QX,
            [
                GeneratorNode("g", E),
                GeneratorNode("k", K, witness.compose(ChainMap.identity(E)), "g"),
                SuspendNode("root", "k", 1),
            ],
            "root",
        )
        assert check_certificate(cert, E).accepted

    def test_retract(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        parts = [E, shift(E, 1)]
        DS = direct_sum(parts)
        cert = Certificate(
            QX,
            [
                GeneratorNode("g", E),
                SuspendNode("s", "g", 1),
                SumNode("ds", ("g", "s")),
                RetractNode(
                    "root",
                    "ds",
                    E,
                    sum_inclusion(parts, 0, DS),
                    sum_projection(parts, 0, DS),
                    Homotopy.zero(E, E),
                ),
            ],
            "root",
        )
        assert check_certificate(cert, E).accepted

    def test_bad_retract_rejected(self, QX):
        E = quotient_resolution(Ideal(QX, [QX.var("x")]))
        parts = [E, shift(E, 1)]
        DS = direct_sum(parts)
        bad_retraction = sum_projection(parts, 0, DS).scale(QX.var("x"))
        cert = Certificate(
            QX,
            [
                GeneratorNode("g", E),
                SuspendNode("s", "g", 1),
                SumNode("ds", ("g", "s")),
                RetractNode(
                    "root", "ds", E, sum_inclusion(parts, 0, DS), bad_retraction,
                    Homotopy.zero(E, E),
                ),
            ],
            "root",
        )
        result = check_certificate(cert, E)
        assert not result.accepted


class TestMutations:
    def test_corrupted_witness(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        node = cert.nodes["root"]
        bad = ChainMap(
            node.witness.source,
            node.witness.target,
            {
                0: node.witness.mat(0) + RingMatrix.from_rows(QX, [["x"]]),
                1: node.witness.mat(1),
                2: node.witness.mat(2),
            },
            check=False,
        )
        mutated = Certificate(
            QX,
            [cert.nodes["g"], ExtendNode("root", "g", F, node.attach, "g", bad)],
            "root",
        )
        assert not check_certificate(mutated, E).accepted

    def test_corrupted_attach(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        node = cert.nodes["root"]
        bad_attach = ChainMap(
            E,
            F,
            {0: node.attach.mat(0), 1: node.attach.mat(1).scale(QX.var("x"))},
            check=False,
        )
        mutated = Certificate(
            QX,
            [cert.nodes["g"], ExtendNode("root", "g", F, bad_attach, "g", node.witness)],
            "root",
        )
        assert not check_certificate(mutated, E).accepted

    def test_wrong_generator(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        wrong = quotient_resolution(Ideal(QX, [QX.var("x") ** 3]))
        assert not check_certificate(cert, wrong).accepted


class TestCellular:
    def test_single_generator(self, QX):
        cert = cellular_certificate(single(QX))
        assert check_certificate(cert, single(QX)).accepted

    def test_koszul(self, QXY):
        K = koszul(KoszulSequence(QXY, QXY.gens()))
        cert = cellular_certificate(K)
        result = check_certificate(cert, single(QXY))
        assert result.accepted
        assert cert.root_complex() == K

    def test_window_precondition(self, QXY):
        K = shift(koszul(KoszulSequence(QXY, QXY.gens())), -1)
        with pytest.raises(PreconditionError):
            cellular_certificate(K)

    def test_random_connective(self, QXY, rng):
        for _ in range(10):
            M = gen.random_connective_complex(QXY, rng, max_pieces=2, window=2)
            cert = cellular_certificate(M)
            assert check_certificate(cert, single(QXY)).accepted

    def test_soundness_hook(self, QXY, table_xy, rng):
        """Accepted cellular certificates respect the support-invariant
        ordering: the target's invariant is bounded by the generator's."""
        from aislekit.lemmas import verify_phi_monotone

        for _ in range(5):
            M = gen.random_connective_complex(QXY, rng, max_pieces=2, window=2)
            cert = cellular_certificate(M)
            assert check_certificate(cert, single(QXY)).accepted
            assert verify_phi_monotone(single(QXY), M, table_xy)


class TestTensorTransport:
    def test_identity_tensor(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        transported = tensor_certificate(cert, single(QX))
        assert check_certificate(transported, tensor(E, single(QX))).accepted

    def test_cellular_tensor(self, QXY):
        x, y = QXY.gens()
        Kx = koszul(KoszulSequence(QXY, [x]))
        Fy = quotient_resolution(Ideal(QXY, [y]))
        cert = tensor_certificate(cellular_certificate(Kx), Fy)
        E = tensor(single(QXY), Fy)
        assert E == Fy
        result = check_certificate(cert, Fy)
        assert result.accepted
        assert cert.root_complex() == tensor(Kx, Fy)

    def test_extension_tensor(self, QX):
        cert, E, F = extension_certificate_x2(QX)
        M = quotient_resolution(Ideal(QX, [QX.var("x") ** 2]))
        transported = tensor_certificate(cert, M)
        assert check_certificate(transported, tensor(E, M)).accepted

    def test_permutation_witnesses_are_isos(self, QXY, rng):
        x, y = QXY.gens()
        M = quotient_resolution(Ideal(QXY, [y]))
        summands = [
            quotient_resolution(Ideal(QXY, [x])),
            shift(single(QXY), 1),
        ]
        perm = sum_distribute(summands, M)
        assert perm.violations() == []
        assert is_quasi_iso(perm)
        inv = transpose_permutation(perm)
        assert inv.violations() == []
        f = ChainMap.scalar(koszul(KoszulSequence(QXY, [x])), y)
        cperm = cone_distribute(f, M)
        assert cperm.violations() == []
        assert is_quasi_iso(cperm)
