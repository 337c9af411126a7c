"""Command line interface: every subcommand reads one workbench file and
prints a JSON report with a stable schema on stdout.

Exit codes: 0 = computed or checked-and-passed, 1 = checked-and-failed
(rejected certificate, failed round trip, failed lemma instance),
2 = usage, parse or internal error.
"""

import argparse
import json
import sys

from . import certify, lemmas, workfile
from .complexes import cone as cone_op
from .complexes import tensor as tensor_op
from .complexes import truncate_ge
from .errors import WorkbenchError
from .koszul import KoszulSequence, koszul
from .perversity import canonical_generator, roundtrip_check, support_invariant
from .rings import poly_str
from .spectrum import supp_complex

SCHEMA = workfile.SCHEMA

PASS_STATUSES = {"pass", "accept", "vacuous", "flagged-unchecked", "ok"}


def _report(command, payload, status="ok"):
    out = {"schema": SCHEMA, "command": command, "status": status}
    out.update(payload)
    return out


def _homology_summary(C):
    out = {}
    for n in C.degrees():
        H = C.homology(n)
        out[str(n)] = {
            "generators": H.ngens,
            "is_zero": H.is_zero_module(),
            "annihilator": [poly_str(g) for g in H.annihilator().groebner()],
        }
    return out


def _complex_payload(C):
    return {
        "complex": workfile.complex_json(C),
        "homology": _homology_summary(C),
    }


def _load(path):
    with open(path, "r", encoding="utf-8") as handle:
        return workfile.parse(handle.read())


def cmd_homology(wf, args):
    C = wf.complex(args.complex)
    if args.degree is not None:
        H = C.homology(args.degree)
        return _report(
            "homology",
            {
                "complex_name": args.complex,
                "degree": args.degree,
                "presentation": workfile.matrix_json(H.presentation),
                "is_zero": H.is_zero_module(),
                "annihilator": [poly_str(g) for g in H.annihilator().groebner()],
            },
        )
    return _report(
        "homology",
        {"complex_name": args.complex, "homology": _homology_summary(C)},
    )


def cmd_koszul(wf, args):
    if args.prime:
        ideal = wf.primes.get(args.prime)
        if ideal is None:
            raise WorkbenchError("undefined prime %r" % args.prime)
        elements = [g for g in ideal.gens if not g.is_zero()]
    elif args.elements:
        elements = [wf.ring.parse(e) for e in args.elements.split(",")]
    else:
        raise WorkbenchError("koszul needs --prime or --elements")
    powers = None
    if args.powers:
        powers = [int(p) for p in args.powers.split(",")]
    K = koszul(KoszulSequence(wf.ring, elements, powers))
    return _report("koszul", _complex_payload(K))


def cmd_tensor(wf, args):
    C = tensor_op(wf.complex(args.left), wf.complex(args.right))
    return _report("tensor", _complex_payload(C))


def cmd_cone(wf, args):
    C = cone_op(wf.chain_map(args.map))
    return _report("cone", _complex_payload(C))


def cmd_truncate(wf, args):
    T, _ = truncate_ge(wf.complex(args.complex), args.at)
    return _report("truncate", _complex_payload(T))


def cmd_supp(wf, args):
    table = wf.table(args.table)
    C = wf.complex(args.complex)
    supports = supp_complex(C, table)
    return _report(
        "supp",
        {
            "complex_name": args.complex,
            "table": args.table,
            "table_report": table.report(),
            "support": {str(n): sorted(s) for n, s in sorted(supports.items())},
        },
    )


def cmd_phi(wf, args):
    table = wf.table(args.table)
    names = args.complexes.split(",")
    pf = support_invariant([wf.complex(n) for n in names], table)
    return _report(
        "phi",
        {
            "complexes": names,
            "function": workfile.perversity_json(pf, args.table),
        },
    )


def cmd_build_s(wf, args):
    tname, pf = wf.perversity(args.pf)
    S = canonical_generator(pf)
    payload = _complex_payload(S)
    payload["table"] = tname
    payload["note"] = (
        "the constant tail above the window is generated by suspensions of "
        "the window summands and is omitted"
    )
    return _report("build-s", payload)


def cmd_roundtrip(wf, args):
    tname, pf = wf.perversity(args.pf)
    result = roundtrip_check(pf)
    status = result.pop("status")
    payload = {"pf": args.pf, "table": tname}
    payload.update(result)
    return _report("roundtrip", payload, status=status)


def cmd_check_cert(wf, args):
    cert = wf.certificate(args.cert)
    E = wf.complex(args.generator)
    result = certify.check_certificate(cert, E)
    payload = {
        "certificate": args.cert,
        "generator": args.generator,
        "result": result.to_json(),
    }
    return _report("check-cert", payload, status="pass" if result.accepted else "fail")


def cmd_cellular_cert(wf, args):
    M = wf.complex(args.complex)
    cert = certify.cellular_certificate(M)
    from .complexes import single

    result = certify.check_certificate(cert, single(wf.ring))
    return _report(
        "cellular-cert",
        {
            "complex_name": args.complex,
            "nodes": sorted(cert.nodes),
            "root": cert.root,
            "result": result.to_json(),
        },
        status="pass" if result.accepted else "fail",
    )


def cmd_verify(wf, args):
    lemma = args.lemma
    if lemma == "transit":
        table = wf.table(args.table)
        report = lemmas.verify_transit(
            wf.complex(args.complex), table.ref(args.prime), args.degree
        )
    elif lemma == "localcase":
        report = lemmas.verify_localcase(
            wf.complex(args.complex), args.degree, wf.table(args.table)
        )
    elif lemma == "killkp":
        table = wf.table(args.table)
        report = lemmas.verify_killkp(
            wf.complex(args.complex), table.ref(args.prime), args.degree
        )
    elif lemma == "thereismap":
        table = wf.table(args.table)
        report = lemmas.verify_thereismap(
            wf.complex(args.complex), table.ref(args.prime), args.degree
        )
    elif lemma == "genkilling":
        report = lemmas.verify_genkilling(
            wf.complex(args.complex), wf.table(args.table), wf.certificate(args.cert)
        )
    elif lemma == "kil-ringdim":
        table = wf.table(args.table)
        report = lemmas.verify_kil_ringdim(
            table.ref(args.p), table.ref(args.q), table, wf.certificate(args.cert)
        )
    else:
        raise WorkbenchError("unknown lemma %r" % lemma)
    status = report.pop("status")
    return _report("verify", report, status=status)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="aislekit",
        description="Exact workbench for Koszul complexes, homology supports "
        "and the perversity classification of aisles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **arguments):
        p = sub.add_parser(name)
        p.add_argument("--file", required=True, help="workbench file")
        for arg, kw in arguments.items():
            p.add_argument("--" + arg.replace("_", "-"), **kw)
        p.set_defaults(fn=fn)
        return p

    add("homology", cmd_homology, complex={"required": True}, degree={"type": int})
    add("koszul", cmd_koszul, prime={}, elements={}, powers={})
    add("tensor", cmd_tensor, left={"required": True}, right={"required": True})
    add("cone", cmd_cone, map={"required": True})
    add(
        "truncate",
        cmd_truncate,
        complex={"required": True},
        at={"type": int, "required": True},
    )
    add("supp", cmd_supp, complex={"required": True}, table={"required": True})
    add("phi", cmd_phi, complexes={"required": True}, table={"required": True})
    add("build-s", cmd_build_s, pf={"required": True})
    add("roundtrip", cmd_roundtrip, pf={"required": True})
    add(
        "check-cert",
        cmd_check_cert,
        cert={"required": True},
        generator={"required": True},
    )
    add("cellular-cert", cmd_cellular_cert, complex={"required": True})
    verify = sub.add_parser("verify")
    verify.add_argument("lemma")
    verify.add_argument("--file", required=True)
    verify.add_argument("--complex")
    verify.add_argument("--prime")
    verify.add_argument("--degree", type=int)
    verify.add_argument("--table")
    verify.add_argument("--cert")
    verify.add_argument("--p")
    verify.add_argument("--q")
    verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        wf = _load(args.file)
        report = args.fn(wf, args)
    except WorkbenchError as exc:
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "command": args.command,
                    "status": "error",
                    "error": str(exc),
                },
                indent=2,
                sort_keys=True,
            )
        )
        return 2
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["status"] in PASS_STATUSES else 1


if __name__ == "__main__":
    sys.exit(main())
