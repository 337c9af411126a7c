"""Machine-checkable certificates for the killing relation.

A certificate is a DAG of closure steps: suspensions (by positive shifts
only), finite sums, extensions realized as mapping cones with explicit
quasi-isomorphism witnesses, quasi-isomorphism transports, and retracts
with explicit section/retraction/homotopy data.  The checker validates
every witness; it never searches for one.
"""

from dataclasses import dataclass
from typing import Optional

from .complexes import (
    ChainMap,
    FreeComplex,
    Homotopy,
    _tensor_blocks,
    check_homotopy,
    cone,
    direct_sum,
    is_quasi_iso,
    shift,
    single,
    tensor,
    tensor_homotopy,
    tensor_map,
)
from .errors import PreconditionError
from .modules import RingMatrix


@dataclass(frozen=True)
class GeneratorNode:
    """A complex quasi-isomorphic to the generator E or to an earlier node.

    ``witness`` may be omitted when the complex is structurally equal to its
    reference; otherwise it must be a quasi-isomorphism in either direction.
    ``witness_to`` is None for E itself, or the name of an earlier node."""

    name: str
    complex: FreeComplex
    witness: Optional[ChainMap] = None
    witness_to: Optional[str] = None


@dataclass(frozen=True)
class SuspendNode:
    name: str
    node: str
    s: int


@dataclass(frozen=True)
class SumNode:
    name: str
    nodes: tuple


@dataclass(frozen=True)
class ExtendNode:
    """Admit y from the triangle x -> y -> cone; the cone witness identifies
    cone(attach) with the complex of the admitted node z."""

    name: str
    x: str
    y: FreeComplex
    attach: ChainMap
    z: str
    witness: ChainMap


@dataclass(frozen=True)
class ReplaceNode:
    name: str
    node: str
    target: FreeComplex
    witness: ChainMap


@dataclass(frozen=True)
class RetractNode:
    name: str
    node: str
    target: FreeComplex
    section: ChainMap
    retraction: ChainMap
    homotopy: Homotopy


NODE_KINDS = (GeneratorNode, SuspendNode, SumNode, ExtendNode, ReplaceNode, RetractNode)


class Certificate:
    """Named nodes with a designated root; the claim is E < root complex."""

    def __init__(self, ring, nodes, root):
        self.ring = ring
        self.nodes = {}
        for node in nodes:
            if node.name in self.nodes:
                raise PreconditionError("duplicate node name %r" % node.name)
            self.nodes[node.name] = node
        if root not in self.nodes:
            raise PreconditionError("root %r is not a node" % root)
        self.root = root

    def root_complex(self):
        node = self.nodes[self.root]
        return node_complex_shallow(node, self)

    def __repr__(self):
        return "Certificate(%d nodes, root=%s)" % (len(self.nodes), self.root)


def _dependencies(node):
    if isinstance(node, GeneratorNode):
        return [node.witness_to] if node.witness_to else []
    if isinstance(node, SuspendNode):
        return [node.node]
    if isinstance(node, SumNode):
        return list(node.nodes)
    if isinstance(node, ExtendNode):
        return [node.x, node.z]
    if isinstance(node, (ReplaceNode, RetractNode)):
        return [node.node]
    raise PreconditionError("unknown node kind %r" % type(node).__name__)


def node_complex_shallow(node, cert):
    """The complex a node stands for, assuming its references are valid."""
    if isinstance(node, GeneratorNode):
        return node.complex
    if isinstance(node, SuspendNode):
        return shift(node_complex_shallow(cert.nodes[node.node], cert), node.s)
    if isinstance(node, SumNode):
        return direct_sum(
            [node_complex_shallow(cert.nodes[v], cert) for v in node.nodes],
            ring=cert.ring,
        )
    if isinstance(node, ExtendNode):
        return node.y
    if isinstance(node, (ReplaceNode, RetractNode)):
        return node.target
    raise PreconditionError("unknown node kind %r" % type(node).__name__)


@dataclass
class CheckResult:
    accepted: bool
    reason: Optional[str] = None
    node: Optional[str] = None

    def to_json(self):
        out = {"accepted": self.accepted}
        if self.reason is not None:
            out["reason"] = self.reason
            out["node"] = self.node
        return out


def _reject(node, reason):
    return CheckResult(False, reason, node)


def _witness_connects(w, a, b):
    """Does the chain map run between the two complexes (either way)?"""
    if w.source == a and w.target == b:
        return True
    return w.source == b and w.target == a


def check_certificate(cert, generator):
    """Verify every node of the certificate against the generator complex.

    Accepts exactly when the ladder of closure steps is sound, so the root
    complex lies in the smallest nullity class containing the generator."""
    order, cyclic = _topo_order(cert)
    if cyclic is not None:
        return _reject(cyclic, "dependency cycle")
    admitted = {}
    for name in order:
        node = cert.nodes[name]
        for dep in _dependencies(node):
            if dep not in admitted:
                return _reject(name, "unresolved reference %r" % dep)
        if isinstance(node, GeneratorNode):
            if node.complex.ring != generator.ring:
                return _reject(name, "ring mismatch")
            ref = generator if node.witness_to is None else admitted[node.witness_to]
            if node.witness is None:
                if node.complex != ref:
                    return _reject(
                        name, "generator complex differs and no witness supplied"
                    )
            else:
                if not _witness_connects(node.witness, node.complex, ref):
                    return _reject(name, "witness endpoints do not match")
                if node.witness.violations():
                    return _reject(name, "witness is not a chain map")
                if not is_quasi_iso(node.witness):
                    return _reject(name, "witness is not a quasi-isomorphism")
            admitted[name] = node.complex
        elif isinstance(node, SuspendNode):
            if node.s < 1:
                return _reject(name, "suspension power must be at least 1")
            admitted[name] = shift(admitted[node.node], node.s)
        elif isinstance(node, SumNode):
            admitted[name] = direct_sum(
                [admitted[v] for v in node.nodes], ring=cert.ring
            )
        elif isinstance(node, ExtendNode):
            if node.attach.source != admitted[node.x]:
                return _reject(name, "attach map source is not the x node")
            if node.attach.target != node.y:
                return _reject(name, "attach map target is not the y complex")
            if node.attach.violations():
                return _reject(name, "attach map is not a chain map")
            c = cone(node.attach)
            if not _witness_connects(node.witness, c, admitted[node.z]):
                return _reject(name, "cone witness endpoints do not match")
            if node.witness.violations():
                return _reject(name, "cone witness is not a chain map")
            if not is_quasi_iso(node.witness):
                return _reject(name, "cone witness is not a quasi-isomorphism")
            admitted[name] = node.y
        elif isinstance(node, ReplaceNode):
            if not _witness_connects(node.witness, admitted[node.node], node.target):
                return _reject(name, "witness endpoints do not match")
            if node.witness.violations():
                return _reject(name, "witness is not a chain map")
            if not is_quasi_iso(node.witness):
                return _reject(name, "witness is not a quasi-isomorphism")
            admitted[name] = node.target
        elif isinstance(node, RetractNode):
            sec = node.section
            ret = node.retraction
            if sec.source != node.target or sec.target != admitted[node.node]:
                return _reject(name, "section endpoints do not match")
            if ret.source != admitted[node.node] or ret.target != node.target:
                return _reject(name, "retraction endpoints do not match")
            if sec.violations() or ret.violations():
                return _reject(name, "section or retraction is not a chain map")
            composite = ret.compose(sec)
            identity = ChainMap.identity(node.target)
            if not check_homotopy(composite, identity, node.homotopy):
                return _reject(name, "homotopy does not certify the retraction")
            admitted[name] = node.target
        else:
            return _reject(name, "unknown node kind")
    return CheckResult(True)


def _topo_order(cert):
    indeg = {name: 0 for name in cert.nodes}
    users = {name: [] for name in cert.nodes}
    for name, node in cert.nodes.items():
        for dep in _dependencies(node):
            if dep in cert.nodes:
                indeg[name] += 1
                users[dep].append(name)
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop()
        order.append(n)
        for u in users[n]:
            indeg[u] -= 1
            if indeg[u] == 0:
                ready.append(u)
    if len(order) != len(cert.nodes):
        stuck = sorted(n for n in cert.nodes if n not in set(order))
        return order, stuck[0]
    return order, None


# ---------------------------------------------------------------------------
# builders


def brutal_filtration_piece(M, j):
    """The subcomplex of degrees <= j."""
    ranks = {n: M.rank(n) for n in M.degrees() if n <= j}
    diffs = {n: M.diff(n) for n in range(M.lo + 1, min(j, M.hi) + 1)}
    return FreeComplex(M.ring, ranks, diffs, check=False)


def cellular_certificate(M):
    """Certificate that the ring kills any connective free complex, by the
    brutal filtration: each step extends by a sum of suspended copies of R."""
    if not M.is_empty() and M.lo < 0:
        raise PreconditionError("cellular certificates need a window inside [0, ∞)")
    ring = M.ring
    nodes = [GeneratorNode("unit", single(ring))]
    if M.is_empty():
        nodes.append(SumNode("skeleton", ()))
        return Certificate(ring, nodes, "skeleton")
    r0 = M.rank(0)
    nodes.append(SumNode("skeleton0", ("unit",) * r0))
    prev_name = "skeleton0"
    prev = brutal_filtration_piece(M, 0)
    for j in range(1, M.hi + 1):
        rj = M.rank(j)
        if rj == 0:
            continue
        cur = brutal_filtration_piece(M, j)
        cell_sum = SumNode("cells%d" % j, ("unit",) * rj)
        cell = SuspendNode("layer%d" % j, "cells%d" % j, j)
        incl_mats = {
            n: RingMatrix.identity(ring, prev.rank(n))
            for n in prev.degrees()
            if prev.rank(n)
        }
        incl = ChainMap(prev, cur, incl_mats, check=False)
        witness = _brutal_cone_witness(incl, prev, cur, j, rj)
        nodes.append(cell_sum)
        nodes.append(cell)
        nodes.append(
            ExtendNode(
                "skeleton%d" % j,
                prev_name,
                cur,
                incl,
                "layer%d" % j,
                witness,
            )
        )
        prev_name = "skeleton%d" % j
        prev = cur
    return Certificate(ring, nodes, prev_name)


def _brutal_cone_witness(incl, prev, cur, j, rj):
    """Projection of the cone of a brutal inclusion onto its top layer."""
    ring = cur.ring
    c = cone(incl)
    layer = shift(single(ring, rj), j)
    xr = prev.rank(j - 1)
    rows = rj
    cols = c.rank(j)
    entries = [ring.zero] * (rows * cols)
    for i in range(rj):
        entries[i * cols + (xr + i)] = ring.one
    return ChainMap(c, layer, {j: RingMatrix(ring, rows, cols, entries)}, check=False)


# ---------------------------------------------------------------------------
# tensor transport


def _permutation_map(source, target, assign):
    """Chain map from per-degree index assignments source -> target."""
    mats = {}
    ring = source.ring
    for n, pairs in assign.items():
        rows = target.rank(n)
        cols = source.rank(n)
        if rows == 0 or cols == 0:
            continue
        entries = [ring.zero] * (rows * cols)
        for src_idx, dst_idx in pairs:
            entries[dst_idx * cols + src_idx] = ring.one
        mats[n] = RingMatrix(ring, rows, cols, entries)
    return ChainMap(source, target, mats, check=False)


def transpose_permutation(perm):
    """Inverse of a permutation chain map."""
    mats = {}
    for n in perm.target.degrees():
        m = perm.mat(n)
        if m.rows and m.cols:
            mats[n] = m.transpose()
    return ChainMap(perm.target, perm.source, mats, check=False)


def sum_distribute(summands, M):
    """⊕(X_i ⊗ M) -> (⊕ X_i) ⊗ M, a permutation of basis elements."""
    ring = M.ring
    total = direct_sum(summands, ring=ring)
    source = direct_sum([tensor(X, M) for X in summands], ring=ring)
    target = tensor(total, M)
    assign = {}
    for n in source.degrees():
        pairs = []
        src_off = 0
        tgt_blocks, _ = _tensor_blocks(total, M, n)
        tgt_off = {(p, q): (o, rd) for p, q, _, rd, o in tgt_blocks}
        for i, X in enumerate(summands):
            blocks, rank_here = _tensor_blocks(X, M, n)
            for p, q, rc, rd, o in blocks:
                to, trd = tgt_off[(p, q)]
                shift_rows = sum(summands[i2].rank(p) for i2 in range(i))
                for a in range(rc):
                    for b in range(rd):
                        src_idx = src_off + o + a * rd + b
                        dst_idx = to + (shift_rows + a) * trd + b
                        pairs.append((src_idx, dst_idx))
            src_off += rank_here
        assign[n] = pairs
    return _permutation_map(source, target, assign)


def cone_distribute(f, M):
    """cone(f ⊗ id) -> cone(f) ⊗ M, a permutation of basis elements."""
    ring = M.ring
    X = f.source
    Y = f.target
    fM = tensor_map(f, M)
    source = cone(fM)
    cf = cone(f)
    target = tensor(cf, M)
    assign = {}
    XM = fM.source
    YM = fM.target
    for n in source.degrees():
        pairs = []
        tgt_blocks, _ = _tensor_blocks(cf, M, n)
        tgt_off = {(c, q): (o, rd) for c, q, _, rd, o in tgt_blocks}
        # X ⊗ M part sits in cone degree n at offset 0
        xm_blocks, _ = _tensor_blocks(X, M, n - 1)
        for p, q, rc, rd, o in xm_blocks:
            c_deg = p + 1
            to, trd = tgt_off[(c_deg, q)]
            for a in range(rc):
                for b in range(rd):
                    src_idx = o + a * rd + b
                    dst_idx = to + a * trd + b
                    pairs.append((src_idx, dst_idx))
        base = XM.rank(n - 1)
        ym_blocks, _ = _tensor_blocks(Y, M, n)
        for p, q, rc, rd, o in ym_blocks:
            to, trd = tgt_off[(p, q)]
            xr = X.rank(p - 1)
            for a in range(rc):
                for b in range(rd):
                    src_idx = base + o + a * rd + b
                    dst_idx = to + (xr + a) * trd + b
                    pairs.append((src_idx, dst_idx))
        assign[n] = pairs
    return _permutation_map(source, target, assign)


def tensor_certificate(cert, M):
    """Transport a certificate through (- ⊗ M).

    Every node is rebuilt with its complex tensored; sums that do not
    distribute on the nose get an extra quasi-isomorphism transport node
    with a permutation witness."""
    new_nodes = []
    final = {}

    def complex_of(name):
        return node_complex_shallow(cert.nodes[name], cert)

    order, cyclic = _topo_order(cert)
    if cyclic is not None:
        raise PreconditionError("certificate has a dependency cycle")
    root_name = None
    for name in order:
        node = cert.nodes[name]
        tensored = tensor(node_complex_shallow(node, cert), M)
        if isinstance(node, GeneratorNode):
            witness = tensor_map(node.witness, M) if node.witness else None
            ref = final[node.witness_to] if node.witness_to else None
            new_nodes.append(
                GeneratorNode(name, tensored, witness, ref)
            )
            final[name] = name
        elif isinstance(node, SuspendNode):
            new_nodes.append(SuspendNode(name, final[node.node], node.s))
            final[name] = name
        elif isinstance(node, SumNode):
            new_nodes.append(SumNode(name, tuple(final[v] for v in node.nodes)))
            summands = [complex_of(v) for v in node.nodes]
            built = direct_sum([tensor(S, M) for S in summands], ring=M.ring)
            if built == tensored:
                final[name] = name
            else:
                perm = sum_distribute(summands, M)
                new_nodes.append(
                    ReplaceNode(name + "@distribute", name, tensored, perm)
                )
                final[name] = name + "@distribute"
        elif isinstance(node, ExtendNode):
            attach = tensor_map(node.attach, M)
            perm = cone_distribute(node.attach, M)
            old_w = node.witness
            old_cone = cone(node.attach)
            if old_w.source == old_cone:
                witness = tensor_map(old_w, M).compose(perm)
            else:
                witness = transpose_permutation(perm).compose(tensor_map(old_w, M))
            new_nodes.append(
                ExtendNode(name, final[node.x], tensored, attach, final[node.z], witness)
            )
            final[name] = name
        elif isinstance(node, ReplaceNode):
            new_nodes.append(
                ReplaceNode(name, final[node.node], tensored, tensor_map(node.witness, M))
            )
            final[name] = name
        elif isinstance(node, RetractNode):
            new_nodes.append(
                RetractNode(
                    name,
                    final[node.node],
                    tensored,
                    tensor_map(node.section, M),
                    tensor_map(node.retraction, M),
                    tensor_homotopy(node.homotopy, M),
                )
            )
            final[name] = name
        if name == cert.root:
            root_name = final[name]
    return Certificate(M.ring, new_nodes, root_name)
