"""The workbench file: one JSON document defining a ring, primes, tables,
modules, complexes, maps, homotopies, perversity functions and certificates.

Parsing fully validates the object graph: every reference must resolve,
every complex must satisfy d∘d = 0 (reported with its degree), every prime
must be proper.  Serialization emits a canonical form (sorted keys, two
space indent) so that parse ∘ serialize is the identity on it.
"""

import json

from .certify import (
    Certificate,
    ExtendNode,
    GeneratorNode,
    ReplaceNode,
    RetractNode,
    SumNode,
    SuspendNode,
    cone,
    node_complex_shallow,
)
from .complexes import ChainMap, FreeComplex, Homotopy
from .errors import (
    InvalidComplexError,
    ParseError,
    PreconditionError,
    UnresolvedReferenceError,
)
from .modules import PresentedModule, RingMatrix
from .perversity import PerversityFunction
from .rings import Field, Ideal, PolyRing, poly_str
from .spectrum import PrimeTable

SCHEMA = "aislekit/1"


class WorkbenchFile:
    def __init__(self, ring):
        self.ring = ring
        self.primes = {}
        self.tables = {}
        self.modules = {}
        self.complexes = {}
        self.maps = {}
        self.homotopies = {}
        self.perversities = {}
        self.certificates = {}

    # -- lookups -------------------------------------------------------------

    def _get(self, section, name, label):
        if name not in section:
            raise UnresolvedReferenceError("undefined %s %r" % (label, name))
        return section[name]

    def table(self, name):
        return self._get(self.tables, name, "table")

    def complex(self, name):
        return self._get(self.complexes, name, "complex")

    def chain_map(self, name):
        return self._get(self.maps, name, "map")

    def module(self, name):
        return self._get(self.modules, name, "module")

    def perversity(self, name):
        return self._get(self.perversities, name, "perversity function")

    def certificate(self, name):
        return self._get(self.certificates, name, "certificate")


def _parse_matrix(ring, obj, where):
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise ParseError("%s: matrix needs rows, cols, entries" % where)
    rows = obj["rows"]
    cols = obj["cols"]
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ParseError(
            "%s: expected %d entries, got %d" % (where, rows * cols, len(entries))
        )
    polys = [ring.parse(e) if e else ring.zero for e in entries]
    return RingMatrix(ring, rows, cols, polys)


def _matrix_json(mat):
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "entries": [poly_str(e) for e in mat.entries],
    }


def _parse_complex(ring, obj, name):
    where = "complex %r" % name
    if "window" not in obj or "ranks" not in obj:
        raise ParseError("%s: needs window and ranks" % where)
    lo, hi = obj["window"]
    ranks = {}
    for key, val in obj["ranks"].items():
        n = int(key)
        if n < lo or n > hi:
            raise ParseError("%s: rank outside the window at degree %d" % (where, n))
        ranks[n] = val
    diffs = {}
    for key, val in obj.get("differentials", {}).items():
        diffs[int(key)] = _parse_matrix(ring, val, "%s d_%s" % (where, key))
    try:
        return FreeComplex(ring, ranks, diffs)
    except InvalidComplexError as exc:
        raise InvalidComplexError("%s: %s" % (where, exc)) from None


def _complex_json(C):
    out = {
        "window": [C.lo, C.hi],
        "ranks": {str(n): C.rank(n) for n in C.degrees() if C.rank(n)},
        "differentials": {},
    }
    for n in range(C.lo + 1, C.hi + 1):
        d = C.diff(n)
        if d.rows and d.cols:
            out["differentials"][str(n)] = _matrix_json(d)
    return out


def _parse_degree_matrices(ring, obj, where):
    return {int(k): _parse_matrix(ring, v, "%s[%s]" % (where, k)) for k, v in obj.items()}


def _degree_matrices_json(get_mat, degrees):
    out = {}
    for n in degrees:
        m = get_mat(n)
        if m.rows and m.cols and not m.is_zero():
            out[str(n)] = _matrix_json(m)
    return out


def _load_witness(ring, obj, a, b, where):
    """Chain map between two known complexes from {matrices, direction}."""
    if "direction" not in obj or "matrices" not in obj:
        raise ParseError("%s: witness needs direction and matrices" % where)
    direction = obj["direction"]
    mats = _parse_degree_matrices(ring, obj["matrices"], where)
    if direction == "forward":
        return ChainMap(a, b, mats, check=False)
    if direction == "backward":
        return ChainMap(b, a, mats, check=False)
    raise ParseError("%s: direction must be forward or backward" % where)


def _witness_json(w, a):
    direction = "forward" if w.source == a else "backward"
    degrees = range(
        min(w.source.lo, w.target.lo), max(w.source.hi, w.target.hi) + 1
    )
    return {
        "direction": direction,
        "matrices": _degree_matrices_json(w.mat, degrees),
    }


def parse(text):
    """Parse and validate a workbench file from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict) or "ring" not in data:
        raise ParseError("a workbench file needs a ring section")
    ring_obj = data["ring"]
    field_obj = ring_obj.get("field", "QQ")
    if field_obj == "QQ":
        field = Field.rationals()
    elif isinstance(field_obj, dict) and "p" in field_obj:
        field = Field.prime_field(field_obj["p"])
    else:
        raise ParseError("field must be \"QQ\" or {\"p\": prime}")
    ring = PolyRing(field, ring_obj.get("vars", []))
    wf = WorkbenchFile(ring)

    for name, gens in sorted(data.get("primes", {}).items()):
        ideal = Ideal(ring, [ring.parse(g) for g in gens])
        if not ideal.is_proper():
            raise PreconditionError("prime %r is not a proper ideal" % name)
        wf.primes[name] = ideal

    tables = data.get("tables")
    if tables is None and wf.primes:
        tables = {"all": sorted(wf.primes)}
    for tname, members in sorted((tables or {}).items()):
        entries = {}
        for pname in members:
            if pname not in wf.primes:
                raise UnresolvedReferenceError(
                    "table %r refers to undefined prime %r" % (tname, pname)
                )
            entries[pname] = wf.primes[pname]
        wf.tables[tname] = PrimeTable(ring, entries)

    for name, obj in sorted(data.get("modules", {}).items()):
        wf.modules[name] = PresentedModule(
            _parse_matrix(ring, obj, "module %r" % name)
        )

    for name, obj in sorted(data.get("complexes", {}).items()):
        wf.complexes[name] = _parse_complex(ring, obj, name)

    for name, obj in sorted(data.get("maps", {}).items()):
        source = wf.complex(obj["source"])
        target = wf.complex(obj["target"])
        mats = _parse_degree_matrices(ring, obj.get("matrices", {}), "map %r" % name)
        wf.maps[name] = ChainMap(source, target, mats)

    for name, obj in sorted(data.get("homotopies", {}).items()):
        source = wf.complex(obj["source"])
        target = wf.complex(obj["target"])
        mats = _parse_degree_matrices(
            ring, obj.get("matrices", {}), "homotopy %r" % name
        )
        wf.homotopies[name] = Homotopy(source, target, mats)

    for name, obj in sorted(data.get("perversities", {}).items()):
        table = wf.table(obj["table"])
        lo, hi = obj["window"]
        values = []
        vals = obj.get("values", {})
        for n in range(lo, hi + 1):
            got = vals.get(str(n))
            if got is None:
                raise ParseError(
                    "perversity %r: missing value at degree %d" % (name, n)
                )
            values.append(frozenset(got))
        pf = PerversityFunction(table, lo, values)
        wf.perversities[name] = (obj["table"], pf)

    for name, obj in sorted(data.get("certificates", {}).items()):
        wf.certificates[name] = _parse_certificate(wf, obj, name)

    return wf


def _parse_certificate(wf, obj, name):
    ring = wf.ring
    nodes_obj = obj.get("nodes", {})
    root = obj.get("root")
    if root not in nodes_obj:
        raise UnresolvedReferenceError(
            "certificate %r: root %r is not a node" % (name, root)
        )
    # resolve in dependency order so witness endpoints can be built
    resolved = {}
    nodes = []
    pending = dict(nodes_obj)
    guard = len(pending) + 1
    temp = Certificate.__new__(Certificate)
    temp.ring = ring
    temp.nodes = {}
    while pending and guard:
        guard -= 1
        progressed = False
        for nname in sorted(pending):
            nobj = pending[nname]
            deps = []
            kind = nobj.get("kind")
            if kind == "generator":
                deps = [nobj["witness_to"]] if nobj.get("witness_to") else []
            elif kind == "suspend":
                deps = [nobj.get("node")]
            elif kind == "sum":
                deps = list(nobj.get("nodes", []))
            elif kind == "extend":
                deps = [nobj.get("x"), nobj.get("z")]
            elif kind in ("replace", "retract"):
                deps = [nobj.get("node")]
            else:
                raise ParseError(
                    "certificate %r node %r: unknown kind %r" % (name, nname, kind)
                )
            if any(d not in resolved for d in deps):
                if any(d not in nodes_obj for d in deps):
                    bad = [d for d in deps if d not in nodes_obj][0]
                    raise UnresolvedReferenceError(
                        "certificate %r node %r refers to undefined node %r"
                        % (name, nname, bad)
                    )
                continue
            node = _parse_node(wf, temp, nname, nobj, name)
            temp.nodes[nname] = node
            resolved[nname] = node_complex_shallow(node, temp)
            nodes.append(node)
            del pending[nname]
            progressed = True
        if not progressed:
            raise ParseError("certificate %r has a dependency cycle" % name)
    return Certificate(ring, nodes, root)


def _parse_node(wf, temp, nname, nobj, cert_name):
    ring = wf.ring
    where = "certificate %r node %r" % (cert_name, nname)
    kind = nobj["kind"]
    if kind == "generator":
        cx = wf.complex(nobj["complex"])
        witness = None
        to = nobj.get("witness_to")
        if "witness" in nobj:
            if to is None:
                raise ParseError(
                    "%s: generator witnesses to the class generator must use "
                    "witness_to or be omitted" % where
                )
            ref = node_complex_shallow(temp.nodes[to], temp)
            witness = _load_witness(ring, nobj["witness"], cx, ref, where)
        return GeneratorNode(nname, cx, witness, to)
    if kind == "suspend":
        return SuspendNode(nname, nobj["node"], nobj["s"])
    if kind == "sum":
        return SumNode(nname, tuple(nobj.get("nodes", [])))
    if kind == "extend":
        x_complex = node_complex_shallow(temp.nodes[nobj["x"]], temp)
        y = wf.complex(nobj["y"])
        attach_obj = nobj["map"]
        if isinstance(attach_obj, str):
            attach = wf.chain_map(attach_obj)
        else:
            attach = ChainMap(
                x_complex,
                y,
                _parse_degree_matrices(ring, attach_obj.get("matrices", {}), where),
                check=False,
            )
        z_complex = node_complex_shallow(temp.nodes[nobj["z"]], temp)
        witness = _load_witness(
            ring, nobj["witness"], cone(attach), z_complex, where
        )
        return ExtendNode(nname, nobj["x"], y, attach, nobj["z"], witness)
    if kind == "replace":
        target = wf.complex(nobj["target"])
        src = node_complex_shallow(temp.nodes[nobj["node"]], temp)
        witness = _load_witness(ring, nobj["witness"], src, target, where)
        return ReplaceNode(nname, nobj["node"], target, witness)
    if kind == "retract":
        target = wf.complex(nobj["target"])
        src = node_complex_shallow(temp.nodes[nobj["node"]], temp)
        section = ChainMap(
            target,
            src,
            _parse_degree_matrices(ring, nobj["section"], where + " section"),
            check=False,
        )
        retraction = ChainMap(
            src,
            target,
            _parse_degree_matrices(ring, nobj["retraction"], where + " retraction"),
            check=False,
        )
        homotopy = Homotopy(
            target,
            target,
            _parse_degree_matrices(ring, nobj.get("homotopy", {}), where + " homotopy"),
        )
        return RetractNode(nname, nobj["node"], target, section, retraction, homotopy)
    raise ParseError("%s: unknown kind %r" % (where, kind))


# ---------------------------------------------------------------------------
# serialization


def to_json(wf):
    """Canonical JSON object for a workbench file."""
    ring = wf.ring
    out = {
        "ring": {
            "field": "QQ" if ring.field.is_rationals else {"p": ring.field.char},
            "vars": list(ring.vars),
        }
    }
    if wf.primes:
        out["primes"] = {
            name: [poly_str(g) for g in ideal.gens]
            for name, ideal in sorted(wf.primes.items())
        }
        out["tables"] = {
            name: sorted(table.names) for name, table in sorted(wf.tables.items())
        }
    if wf.modules:
        out["modules"] = {
            name: _matrix_json(m.presentation)
            for name, m in sorted(wf.modules.items())
        }
    if wf.complexes:
        out["complexes"] = {
            name: _complex_json(C) for name, C in sorted(wf.complexes.items())
        }
    if wf.maps:
        out["maps"] = {}
        for name, f in sorted(wf.maps.items()):
            src = _name_of(wf.complexes, f.source)
            tgt = _name_of(wf.complexes, f.target)
            out["maps"][name] = {
                "source": src,
                "target": tgt,
                "matrices": _degree_matrices_json(
                    f.mat, range(f.source.lo, f.source.hi + 1)
                ),
            }
    if wf.homotopies:
        out["homotopies"] = {}
        for name, h in sorted(wf.homotopies.items()):
            out["homotopies"][name] = {
                "source": _name_of(wf.complexes, h.source),
                "target": _name_of(wf.complexes, h.target),
                "matrices": _degree_matrices_json(
                    h.mat, range(h.source.lo, h.source.hi + 1)
                ),
            }
    if wf.perversities:
        out["perversities"] = {}
        for name, (tname, pf) in sorted(wf.perversities.items()):
            out["perversities"][name] = perversity_json(pf, tname)
    return out


def perversity_json(pf, table_name):
    return {
        "table": table_name,
        "window": [pf.lo, pf.hi],
        "values": {
            str(n): sorted(pf.value(n)) for n in range(pf.lo, pf.hi + 1)
        },
    }


def _name_of(section, value):
    for name, candidate in section.items():
        if candidate == value:
            return name
    raise UnresolvedReferenceError("value has no name in the file")


def serialize(wf):
    return json.dumps(to_json(wf), indent=2, sort_keys=True) + "\n"


def complex_json(C):
    return _complex_json(C)


def matrix_json(mat):
    return _matrix_json(mat)
