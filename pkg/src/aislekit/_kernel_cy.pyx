# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of ``_kernel_py``: the same fraction-free term engine with
typed inner loops.  Keep the two modules in sync; the backend is selected in
``aislekit.engine`` and both must produce identical output."""

from heapq import heappop, heappush
from math import gcd

BACKEND = "cython"


class KernelBudgetError(Exception):
    """Raised when the S-pair budget of a basis computation is exhausted."""


# ---------------------------------------------------------------------------
# monomials


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    out = []
    for i in range(n):
        out.append(<long> a[i] + <long> b[i])
    return tuple(out)


cpdef mono_div(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long d
    out = []
    for i in range(n):
        d = <long> a[i] - <long> b[i]
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


cpdef tuple mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long x, y
    out = []
    for i in range(n):
        x = <long> a[i]
        y = <long> b[i]
        out.append(x if x > y else y)
    return tuple(out)


cpdef long mono_deg(tuple a):
    cdef Py_ssize_t i
    cdef long s = 0
    for i in range(len(a)):
        s += <long> a[i]
    return s


cpdef int mono_cmp(tuple a, tuple b):
    cdef Py_ssize_t i
    cdef long ai, bi, da = 0, db = 0
    for i in range(len(a)):
        da += <long> a[i]
        db += <long> b[i]
    if da != db:
        return 1 if da > db else -1
    for i in range(len(a) - 1, -1, -1):
        ai = <long> a[i]
        bi = <long> b[i]
        if ai != bi:
            return 1 if ai < bi else -1
    return 0


cpdef int term_cmp(long pa, tuple ma, long pb, tuple mb):
    if pa != pb:
        return 1 if pa < pb else -1
    return mono_cmp(ma, mb)


def order_key(pos, mono):
    return (-pos, sum(mono)) + tuple(-e for e in reversed(mono))


def inv_mod(c, p):
    return pow(c, p - 2, p)


# ---------------------------------------------------------------------------
# vector-polynomial arithmetic


def vp_sorted(terms, mod):
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
    if c == 0:
        return []
    if mod:
        return [(pos, mono_mul(m, mono), (cc * c) % mod) for pos, m, cc in u]
    return [(pos, mono_mul(m, mono), cc * c) for pos, m, cc in u]


def vp_add(list u, list v, mod):
    cdef Py_ssize_t i = 0, j = 0, nu = len(u), nv = len(v)
    cdef int c
    out = []
    while i < nu and j < nv:
        tu = <tuple> u[i]
        tv = <tuple> v[j]
        c = term_cmp(<long> tu[0], <tuple> tu[1], <long> tv[0], <tuple> tv[1])
        if c > 0:
            out.append(tu)
            i += 1
        elif c < 0:
            out.append(tv)
            j += 1
        else:
            s = tu[2] + tv[2]
            if mod:
                s %= mod
            if s:
                out.append((tu[0], tu[1], s))
            i += 1
            j += 1
    if i < nu:
        out.extend(u[i:])
    if j < nv:
        out.extend(v[j:])
    return out


def vp_sub_term_mul(u, v, c, mono, mod):
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
    by_pos = {}
    for g in basis:
        pos, mono, c = g[0]
        by_pos.setdefault(pos, []).append((mono, c, g))
    return by_pos


def vp_nf(v, dict by_pos, mod):
    cdef Py_ssize_t k, nd
    rem = []
    cur = list(v)
    mult = 1
    while cur:
        head = <tuple> cur[0]
        pos = head[0]
        mono = <tuple> head[1]
        c = head[2]
        hit = None
        divisors = <list> by_pos.get(pos)
        if divisors is not None:
            nd = len(divisors)
            for k in range(nd):
                d = <tuple> divisors[k]
                q = mono_div(mono, <tuple> d[0])
                if q is not None:
                    hit = (q, d[1], d[2])
                    break
        if hit is None:
            rem.append(head)
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
    pf, mf, cf = f[0]
    pg, mg, cg = g[0]
    lcm = mono_lcm(mf, mg)
    qf = mono_div(lcm, mf)
    qg = mono_div(lcm, mg)
    if mod:
        return vp_add(
            vp_term_mul(f, qf, 1, mod),
            vp_term_mul(g, qg, (-inv_mod(cg, mod) * cf) % mod, mod),
            mod,
        )
    d = gcd(cf, cg)
    return vp_add(
        vp_term_mul(f, qf, cg // d, 0),
        vp_term_mul(g, qg, -(cf // d), 0),
        0,
    )


# ---------------------------------------------------------------------------
# Buchberger


def buchberger(gens, mod, rank1, pair_budget=200_000):
    basis = []
    seen = set()
    for g in gens:
        n = vp_normalize(vp_sorted(g, mod), mod)
        if n:
            key = tuple(n)
            if key not in seen:
                seen.add(key)
                basis.append(n)

    pending = set()
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
                continue
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
