import pytest

import gen
from aislekit import (
    Certificate,
    ChainMap,
    ExtendNode,
    GeneratorNode,
    Ideal,
    PreconditionError,
    PrimeTable,
    ReplaceNode,
    RingMatrix,
    bottom_comparison,
    cone,
    direct_sum,
    koszul,
    KoszulSequence,
    quotient_resolution,
    shift,
    single,
)
from aislekit.lemmas import (
    killing_generator,
    verify_genkilling,
    verify_kil_ringdim,
    verify_killkp,
    verify_localcase,
    verify_thereismap,
    verify_transit,
)


@pytest.fixture(scope="module")
def table(QXY_mod):
    return QXY_mod


@pytest.fixture(scope="session")
def table_rich(QXY):
    x, y = QXY.gens()
    one = QXY.one
    return PrimeTable(
        QXY,
        {
            "px": Ideal(QXY, [x]),
            "py": Ideal(QXY, [y]),
            "m00": Ideal(QXY, [x, y]),
            "m10": Ideal(QXY, [x - one, y]),
        },
    )


class TestTransit:
    def test_invertible_coordinate(self, QXY, table_rich):
        M = table_rich.quotient_resolution("px")
        report = verify_transit(M, table_rich.ref("m10"), 0)
        assert report["status"] == "pass"
        assert report["witness"]["koszul_homology_zero"]
        assert report["witness"]["localization_zero"]

    def test_vacuous(self, QXY, table_rich):
        M = table_rich.quotient_resolution("m00")
        assert verify_transit(M, table_rich.ref("m00"), 0)["status"] == "vacuous"

    def test_acyclic(self, QXY, table_rich):
        M = cone(ChainMap.identity(table_rich.quotient_resolution("px")))
        assert verify_transit(M, table_rich.ref("m10"), 0)["status"] == "pass"

    def test_non_maximal_rejected(self, QXY, table_rich):
        with pytest.raises(PreconditionError):
            verify_transit(single(QXY), table_rich.ref("px"), 0)


class TestLocalcase:
    def test_witness_found(self, QXY, table_rich):
        M = table_rich.quotient_resolution("px")
        report = verify_localcase(M, 0, table_rich)
        assert report["status"] == "pass"
        assert report["witness"]["prime"] in {"px", "m00"}

    def test_precondition(self, QXY, table_rich):
        M = cone(ChainMap.identity(table_rich.quotient_resolution("px")))
        assert verify_localcase(M, 0, table_rich)["status"] == "precondition-failed"

    def test_table_insufficiency(self, QXY):
        x, y = QXY.gens()
        lonely = PrimeTable(QXY, {"py": Ideal(QXY, [y])})
        M = quotient_resolution(Ideal(QXY, [x]))
        assert verify_localcase(M, 0, lonely)["status"] == "table-insufficient"


class TestKillkp:
    def test_basic(self, QXY, table_rich):
        M = table_rich.quotient_resolution("m00")
        report = verify_killkp(M, table_rich.ref("m00"), 0)
        assert report["status"] == "pass"
        assert report["witness"]["suspension_offset"] == 0
        assert report["witness"]["certificate_accepted"]

    def test_shifted(self, QXY, table_rich):
        M = shift(table_rich.quotient_resolution("m00"), 2)
        report = verify_killkp(M, table_rich.ref("m00"), 2)
        assert report["status"] == "pass"

    def test_preconditions(self, QXY, table_rich):
        # (x) is not contained in (x-1, y), so the support misses m10
        M = table_rich.quotient_resolution("px")
        with pytest.raises(PreconditionError):
            verify_killkp(M, table_rich.ref("m10"), 0)
        with pytest.raises(PreconditionError):
            verify_killkp(table_rich.quotient_resolution("py"), table_rich.ref("py"), 0)


class TestThereismap:
    def test_koszul(self, QX, table_x):
        M = table_x.quotient_resolution("p0")
        report = verify_thereismap(M, table_x.ref("p0"), 0)
        assert report["status"] == "pass"

    def test_hits_shifted_summand(self, QXY, table_rich):
        M = direct_sum(
            [
                table_rich.quotient_resolution("px"),
                shift(table_rich.quotient_resolution("py"), 1),
            ]
        )
        report = verify_thereismap(M, table_rich.ref("py"), 1)
        assert report["status"] == "pass"
        assert report["witness"]["kernel_dies_at_p"]
        assert report["witness"]["cokernel_dies_at_p"]

    def test_lower_support_precondition(self, QXY, table_rich):
        M = direct_sum(
            [
                table_rich.quotient_resolution("py"),
                shift(table_rich.quotient_resolution("py"), 1),
            ]
        )
        report = verify_thereismap(M, table_rich.ref("py"), 1)
        assert report["status"] == "precondition-failed"


class TestGenkilling:
    def test_extension_instance(self, QX, table_x):
        t = QX.var("x")
        M = quotient_resolution(Ideal(QX, [t * t]))
        E = killing_generator(M, table_x)
        attach = ChainMap(
            E, M, {0: RingMatrix.from_rows(QX, [["x"]]), 1: RingMatrix.identity(QX, 1)}
        )
        witness = bottom_comparison(E, cone(attach), RingMatrix.identity(QX, 1))
        cert = Certificate(
            QX,
            [GeneratorNode("g", E), ExtendNode("root", "g", M, attach, "g", witness)],
            "root",
        )
        assert verify_genkilling(M, table_x, cert)["status"] == "accept"

    def test_replace_instance(self, QXY, table_rich):
        K = koszul(KoszulSequence(QXY, QXY.gens()))
        E = killing_generator(K, table_rich)
        witness = bottom_comparison(E, K, RingMatrix.identity(QXY, 1))
        cert = Certificate(
            QXY,
            [GeneratorNode("g", E), ReplaceNode("root", "g", K, witness)],
            "root",
        )
        assert verify_genkilling(K, table_rich, cert)["status"] == "accept"

    def test_malformed_rejected(self, QX, table_x):
        t = QX.var("x")
        M = quotient_resolution(Ideal(QX, [t * t]))
        E = killing_generator(M, table_x)
        cert = Certificate(QX, [GeneratorNode("root", E)], "root")
        report = verify_genkilling(M, table_x, cert)
        assert report["status"] == "reject"
        assert "root" in report["reason"]


class TestKilRingdim:
    def test_maximal_trivial(self, QXY, table_rich):
        E = direct_sum(
            [table_rich.quotient_resolution(n) for n in sorted(table_rich.up_set("m00"))],
            ring=QXY,
        )
        cert = Certificate(QXY, [GeneratorNode("root", E)], "root")
        report = verify_kil_ringdim(
            table_rich.ref("m00"), table_rich.ref("m00"), table_rich, cert
        )
        assert report["status"] == "accept"

    def test_rational_point(self, QXY, table_rich):
        E = direct_sum(
            [table_rich.quotient_resolution(n) for n in sorted(table_rich.up_set("m10"))],
            ring=QXY,
        )
        cert = Certificate(QXY, [GeneratorNode("root", E)], "root")
        report = verify_kil_ringdim(
            table_rich.ref("m10"), table_rich.ref("m10"), table_rich, cert
        )
        assert report["status"] == "accept"

    def test_non_maximal_flagged(self, QXY, table_rich):
        cert = Certificate(
            QXY, [GeneratorNode("root", table_rich.quotient_resolution("px"))], "root"
        )
        report = verify_kil_ringdim(
            table_rich.ref("px"), table_rich.ref("px"), table_rich, cert
        )
        assert report["status"] == "flagged-unchecked"

    def test_containment_required(self, QXY, table_rich):
        cert = Certificate(
            QXY, [GeneratorNode("root", table_rich.quotient_resolution("px"))], "root"
        )
        with pytest.raises(PreconditionError):
            verify_kil_ringdim(table_rich.ref("px"), table_rich.ref("py"), table_rich, cert)
