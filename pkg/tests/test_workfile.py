import json

import pytest

from aislekit import (
    InvalidComplexError,
    ParseError,
    PreconditionError,
    UnresolvedReferenceError,
    check_certificate,
)
from aislekit import workfile


def sample_document():
    return {
        "ring": {"field": "QQ", "vars": ["x", "y"]},
        "primes": {"px": ["x"], "py": ["y"], "m": ["x", "y"]},
        "tables": {"T": ["px", "py", "m"]},
        "modules": {"Mx": {"rows": 1, "cols": 1, "entries": ["x"]}},
        "complexes": {
            "K": {
                "window": [0, 1],
                "ranks": {"0": 1, "1": 1},
                "differentials": {"1": {"rows": 1, "cols": 1, "entries": ["x"]}},
            },
            "E": {"window": [0, 0], "ranks": {"0": 1}},
        },
        "maps": {
            "f": {
                "source": "K",
                "target": "K",
                "matrices": {
                    "0": {"rows": 1, "cols": 1, "entries": ["x"]},
                    "1": {"rows": 1, "cols": 1, "entries": ["x"]},
                },
            }
        },
        "homotopies": {
            "h": {
                "source": "K",
                "target": "K",
                "matrices": {"0": {"rows": 1, "cols": 1, "entries": ["1"]}},
            }
        },
        "perversities": {
            "pf": {
                "table": "T",
                "window": [0, 1],
                "values": {"0": ["m"], "1": ["m", "px"]},
            }
        },
        "certificates": {
            "c": {
                "root": "r",
                "nodes": {
                    "g": {"kind": "generator", "complex": "K"},
                    "r": {"kind": "suspend", "node": "g", "s": 1},
                },
            }
        },
    }


class TestParse:
    def test_minimal(self):
        wf = workfile.parse(
            '{"ring": {"field": "QQ", "vars": ["x"]}, "complexes": '
            '{"K": {"window": [0, 1], "ranks": {"0": 1, "1": 1}, '
            '"differentials": {"1": {"rows": 1, "cols": 1, "entries": ["x"]}}}}}'
        )
        assert wf.complex("K").violations() == []

    def test_full_document(self):
        wf = workfile.parse(json.dumps(sample_document()))
        assert wf.table("T").is_maximal("m")
        assert wf.chain_map("f").violations() == []
        tname, pf = wf.perversity("pf")
        assert tname == "T"
        cert = wf.certificate("c")
        assert check_certificate(cert, wf.complex("K")).accepted

    def test_dd_violation_located(self):
        doc = {
            "ring": {"field": "QQ", "vars": ["x"]},
            "complexes": {
                "B": {
                    "window": [0, 2],
                    "ranks": {"0": 1, "1": 1, "2": 1},
                    "differentials": {
                        "1": {"rows": 1, "cols": 1, "entries": ["x"]},
                        "2": {"rows": 1, "cols": 1, "entries": ["x"]},
                    },
                }
            },
        }
        with pytest.raises(InvalidComplexError) as err:
            workfile.parse(json.dumps(doc))
        assert "d_1" in str(err.value)

    def test_unresolved_reference(self):
        doc = {"ring": {"field": "QQ", "vars": ["x"]}, "primes": {},
               "tables": {"T": ["ghost"]}}
        with pytest.raises(UnresolvedReferenceError):
            workfile.parse(json.dumps(doc))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            workfile.parse('{"ring": \n  }')
        assert err.value.line == 2

    def test_improper_prime_rejected(self):
        doc = {"ring": {"field": "QQ", "vars": ["x"]}, "primes": {"bad": ["1"]}}
        with pytest.raises(PreconditionError):
            workfile.parse(json.dumps(doc))

    def test_gf_field(self):
        wf = workfile.parse('{"ring": {"field": {"p": 5}, "vars": ["x"]}}')
        assert wf.ring.field.char == 5


class TestSerialize:
    def test_roundtrip_is_identity_on_canonical_form(self):
        wf = workfile.parse(json.dumps(sample_document()))
        text = workfile.serialize(wf)
        again = workfile.parse(text)
        assert workfile.serialize(again) == text

    def test_deterministic(self):
        wf1 = workfile.parse(json.dumps(sample_document()))
        wf2 = workfile.parse(json.dumps(sample_document(), sort_keys=True))
        assert workfile.serialize(wf1) == workfile.serialize(wf2)
