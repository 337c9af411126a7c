"""Pure-Python term engine for vector polynomials over Z and GF(p).

This is the hot kernel behind every Groebner, syzygy and normal-form
computation.  A vector polynomial is a list of terms ``(pos, mono, coeff)``
sorted strictly descending in the position-over-term order that extends
degree-reverse-lexicographic comparison of exponent tuples (smaller position
wins, ties broken by the monomial order).  Coefficients are plain Python
ints: arbitrary integers when ``mod == 0`` (rational input is handled
fraction-free, with the accumulated scalar multiplier reported back) and
canonical residues in ``[0, p)`` when ``mod == p > 0``.

``_kernel_cy.pyx`` is the compiled twin of this module; keep the two in
sync.  The backend is selected in ``aislekit.engine``.
"""

from heapq import heappop, heappush
from math import gcd

BACKEND = "python"


class KernelBudgetError(Exception):
    """Raised when the S-pair budget of a basis computation is exhausted."""


# ---------------------------------------------------------------------------
# monomials


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent-wise a - b, or None when b does not divide a."""
    q = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        q.append(d)
    return tuple(q)


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_cmp(a, b):
    """Degree-reverse-lexicographic comparison: 1 if a > b, -1 if a < b."""
    da = sum(a)
    db = sum(b)
    if da != db:
        return 1 if da > db else -1
    for i in range(len(a) - 1, -1, -1):
        ai = a[i]
        bi = b[i]
        if ai != bi:
            # smaller exponent in the last differing slot wins
            return 1 if ai < bi else -1
    return 0


def term_cmp(pa, ma, pb, mb):
    """Position-over-term comparison of (pos, mono) pairs."""
    if pa != pb:
        return 1 if pa < pb else -1
    return mono_cmp(ma, mb)


def order_key(pos, mono):
    """Sort key: ascending key order equals ascending term order."""
    return (-pos, sum(mono)) + tuple(-e for e in reversed(mono))


def inv_mod(c, p):
    return pow(c, p - 2, p)


# ---------------------------------------------------------------------------
# vector-polynomial arithmetic


def vp_sorted(terms, mod):
    """Canonicalize an unsorted term list: combine, drop zeros, sort."""
    acc = {}
    for pos, mono, c in terms:
        key = (pos, mono)
        acc[key] = acc.get(key, 0) + c
    out = []
    for (pos, mono), c in acc.items():
        if mod:
            c %= mod
        if c:
            out.append((pos, mono, c))
    out.sort(key=lambda t: order_key(t[0], t[1]), reverse=True)
    return out


def vp_scale(u, c, mod):
    if c == 0:
        return []
    if mod:
        c %= mod
        if c == 0:
            return []
        return [(pos, mono, (cc * c) % mod) for pos, mono, cc in u]
    return [(pos, mono, cc * c) for pos, mono, cc in u]


def vp_term_mul(u, mono, c, mod):
    """c * x^mono * u; multiplying by a fixed monomial preserves the order."""
    if c == 0:
        return []
    if mod:
        return [(pos, mono_mul(m, mono), (cc * c) % mod) for pos, m, cc in u]
    return [(pos, mono_mul(m, mono), cc * c) for pos, m, cc in u]


def vp_add(u, v, mod):
    """Merge two sorted term lists."""
    i = 0
    j = 0
    nu = len(u)
    nv = len(v)
    out = []
    while i < nu and j < nv:
        pu, mu, cu = u[i]
        pv, mv, cv = v[j]
        c = term_cmp(pu, mu, pv, mv)
        if c > 0:
            out.append(u[i])
            i += 1
        elif c < 0:
            out.append(v[j])
            j += 1
        else:
            s = cu + cv
            if mod:
                s %= mod
            if s:
                out.append((pu, mu, s))
            i += 1
            j += 1
    if i < nu:
        out.extend(u[i:])
    if j < nv:
        out.extend(v[j:])
    return out


def vp_sub_term_mul(u, v, c, mono, mod):
    """u - c * x^mono * v, fused merge; the workhorse of reduction."""
    if mod:
        return vp_add(u, vp_term_mul(v, mono, (-c) % mod, mod), mod)
    return vp_add(u, vp_term_mul(v, mono, -c, 0), 0)


def vp_content(u):
    g = 0
    for _, _, c in u:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def vp_normalize(u, mod):
    """Canonical representative: monic (mod p) or primitive with positive
    leading coefficient (integer mode)."""
    if not u:
        return u
    if mod:
        lc = u[0][2] % mod
        if lc == 1:
            return u
        f = inv_mod(lc, mod)
        return [(pos, mono, (c * f) % mod) for pos, mono, c in u]
    g = vp_content(u)
    if u[0][2] < 0:
        g = -g
    if g == 1:
        return u
    return [(pos, mono, c // g) for pos, mono, c in u]


# ---------------------------------------------------------------------------
# reduction


def group_by_pos(basis):
    """Index a basis for reduction: pos -> list of (lead mono, lead coeff, terms)."""
    by_pos = {}
    for g in basis:
        pos, mono, c = g[0]
        by_pos.setdefault(pos, []).append((mono, c, g))
    return by_pos


def vp_nf(v, by_pos, mod):
    """Full normal form of v against an indexed basis.

    Returns ``(rem, mult)`` with ``mult * v == rem`` modulo the module
    generated by the basis; ``mult`` is always 1 when ``mod > 0`` and a
    positive integer in fraction-free integer mode.
    """
    rem = []
    cur = list(v)
    mult = 1
    empty = ()
    while cur:
        pos, mono, c = cur[0]
        hit = None
        for dm, dc, dterms in by_pos.get(pos, empty):
            q = mono_div(mono, dm)
            if q is not None:
                hit = (q, dc, dterms)
                break
        if hit is None:
            rem.append(cur[0])
            cur = cur[1:]
            continue
        q, dc, dterms = hit
        if mod:
            f = (c * inv_mod(dc, mod)) % mod
            cur = vp_sub_term_mul(cur, dterms, f, q, mod)
        else:
            g = gcd(c, dc)
            a = dc // g
            b = c // g
            if a < 0:
                a = -a
                b = -b
            if a != 1:
                mult *= a
                if rem:
                    rem = [(p2, m2, cc * a) for p2, m2, cc in rem]
                cur = [(p2, m2, cc * a) for p2, m2, cc in cur]
            cur = vp_sub_term_mul(cur, dterms, b, q, 0)
    return rem, mult


def vp_head_reducible(v, by_pos):
    for pos, mono, _ in v:
        for dm, _, _ in by_pos.get(pos, ()):
            if mono_div(mono, dm) is not None:
                return True
    return False


def vp_spair(f, g, mod):
    """S-polynomial of two vector polynomials with equal lead positions."""
    pf, mf, cf = f[0]
    pg, mg, cg = g[0]
    lcm = mono_lcm(mf, mg)
    qf = mono_div(lcm, mf)
    qg = mono_div(lcm, mg)
    if mod:
        s = vp_add(
            vp_term_mul(f, qf, 1, mod),
            vp_term_mul(g, qg, (-inv_mod(cg, mod) * cf) % mod, mod),
            mod,
        )
        return s
    d = gcd(cf, cg)
    return vp_add(
        vp_term_mul(f, qf, cg // d, 0),
        vp_term_mul(g, qg, -(cf // d), 0),
        0,
    )


# ---------------------------------------------------------------------------
# Buchberger


def buchberger(gens, mod, rank1, pair_budget=200_000):
    """Reduced Groebner basis of the module generated by ``gens``.

    ``rank1`` enables the product criterion, which is only valid for ideals
    (single-position elements); the chain criterion is applied throughout.
    The output is canonical: fully interreduced, normalized and sorted by
    descending leading term, hence independent of generator order.
    """
    basis = []
    seen = set()
    for g in gens:
        n = vp_normalize(vp_sorted(g, mod), mod)
        if n:
            key = tuple(n)
            if key not in seen:
                seen.add(key)
                basis.append(n)

    pending = set()  # unordered index pairs still to be treated
    heap = []
    counter = 0

    def push_pairs(t):
        nonlocal counter
        pt, mt, _ = basis[t][0]
        for i in range(t):
            pi, mi, _ = basis[i][0]
            if pi != pt:
                continue
            lcm = mono_lcm(mi, mt)
            if rank1 and mono_deg(lcm) == mono_deg(mi) + mono_deg(mt):
                continue  # coprime leads: S-pair reduces to zero
            pending.add((i, t))
            counter += 1
            heappush(heap, (mono_deg(lcm), counter, i, t, lcm))

    for t in range(len(basis)):
        push_pairs(t)

    by_pos = group_by_pos(basis)
    processed = 0
    while heap:
        _, _, i, j, lcm = heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > pair_budget:
            raise KernelBudgetError(
                "S-pair budget exceeded (%d pairs)" % pair_budget
            )
        # chain criterion: a third element dividing the lcm whose pairs with
        # i and j were both treated already makes this pair redundant
        skip = False
        pi = basis[i][0][0]
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            pk, mk, _ = basis[k][0]
            if pk != pi or mono_div(lcm, mk) is None:
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        s = vp_spair(basis[i], basis[j], mod)
        if not s:
            continue
        r, _ = vp_nf(s, by_pos, mod)
        if not r:
            continue
        r = vp_normalize(r, mod)
        basis.append(r)
        t = len(basis) - 1
        push_pairs(t)
        by_pos = group_by_pos(basis)

    return _interreduce(basis, mod)


def _interreduce(basis, mod):
    """Minimalize and tail-reduce a basis into the reduced canonical form."""
    # minimal set of leading terms
    order = sorted(
        range(len(basis)),
        key=lambda i: order_key(basis[i][0][0], basis[i][0][1]),
    )
    kept = []
    for i in order:
        pos, mono, _ = basis[i][0]
        redundant = False
        for j in kept:
            pj, mj, _ = basis[j][0]
            if pj == pos and mono_div(mono, mj) is not None:
                redundant = True
                break
        if not redundant:
            kept.append(i)
    minimal = [basis[i] for i in kept]
    # tail reduction against the other elements
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        if others:
            r, _ = vp_nf(g, group_by_pos(others), mod)
            g = r
        if g:
            out.append(vp_normalize(g, mod))
    out.sort(key=lambda v: order_key(v[0][0], v[0][1]), reverse=True)
    return out
