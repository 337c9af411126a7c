"""Instance verifiers for the classification machinery.

Each verifier exercises one proved statement on a concrete instance and
returns a JSON-ready report {lemma, instance, status, witness?}.  Statements
involving residue fields are checked at maximal ideals only, where the
residue field is the quotient and stays inside the finitely generated
calculus; non-maximal instances are reported as flagged-unchecked.
"""

from .certify import cellular_certificate, check_certificate, tensor_certificate
from .complexes import (
    bottom_comparison,
    direct_sum,
    induced_map,
    partial_resolution,
    shift,
    single,
    tensor,
    truncate_ge,
)
from .errors import PreconditionError
from .koszul import koszul_of_prime
from .modules import RingMatrix
from .perversity import support_invariant
from .spectrum import module_support, supp_member, v_of


def _instance(**kw):
    return {k: v for k, v in kw.items()}


def verify_transit(M, m, n):
    """If the homologies of M ⊗ (residue resolution) vanish in the window
    [n-k, n], then H_n(M ⊗ K(m)) = 0 and H_n(M) dies at m."""
    table = m.table
    if not table.is_maximal(m.name):
        raise PreconditionError("transit checks need a maximal ideal")
    res = table.quotient_resolution(m.name)
    k = sum(1 for g in m.ideal.gens if not g.is_zero())
    T = tensor(M, res)
    hypothesis = all(
        T.homology(i).is_zero_module() for i in range(n - k, n + 1)
    )
    report = {
        "lemma": "transit",
        "instance": _instance(prime=m.name, degree=n, window=[n - k, n]),
    }
    if not hypothesis:
        report["status"] = "vacuous"
        return report
    TK = tensor(M, koszul_of_prime(m))
    koszul_vanishes = TK.homology(n).is_zero_module()
    ann = M.homology(n).annihilator()
    localization_vanishes = not m.ideal.contains(ann)
    report["status"] = "pass" if (koszul_vanishes and localization_vanishes) else "fail"
    report["witness"] = {
        "koszul_homology_zero": koszul_vanishes,
        "localization_zero": localization_vanishes,
    }
    return report


def verify_localcase(M, n, table):
    """A support prime of H_n(M) survives in H_n(M ⊗ K(p))."""
    report = {"lemma": "localcase", "instance": _instance(degree=n)}
    H = M.homology(n)
    if H.is_zero_module():
        report["status"] = "precondition-failed"
        report["reason"] = "H_n(M) = 0"
        return report
    candidates = sorted(module_support(H, table))
    if not candidates:
        report["status"] = "table-insufficient"
        report["reason"] = "no table prime supports H_n(M)"
        return report
    tried = []
    for name in candidates:
        p = table.ref(name)
        TK = tensor(M, koszul_of_prime(p))
        if supp_member(TK.homology(n), p):
            report["status"] = "pass"
            report["witness"] = {"prime": name, "tried": tried}
            return report
        tried.append(name)
    report["status"] = "fail"
    report["witness"] = {"tried": tried}
    return report


def verify_killkp(M, p, n):
    """The engine of the residue-killing lemma: some H_{n-i}(M ⊗ residue
    resolution) with 0 <= i <= k is nonzero, plus the transported cellular
    certificate for the tensor factor."""
    table = p.table
    if not table.is_maximal(p.name):
        raise PreconditionError("killkp checks need a maximal ideal")
    if not supp_member(M.homology(n), p):
        raise PreconditionError("%s is not in Supp H_%d(M)" % (p.name, n))
    res = table.quotient_resolution(p.name)
    k = sum(1 for g in p.ideal.gens if not g.is_zero())
    T = tensor(M, res)
    witness_i = None
    for i in range(0, k + 1):
        if not T.homology(n - i).is_zero_module():
            witness_i = i
            break
    cert = tensor_certificate(cellular_certificate(res), M)
    E = tensor(single(M.ring), M)
    cert_result = check_certificate(cert, E)
    status = "pass" if (witness_i is not None and cert_result.accepted) else "fail"
    return {
        "lemma": "killkp",
        "instance": _instance(prime=p.name, degree=n, generators=k),
        "status": status,
        "witness": {
            "suspension_offset": witness_i,
            "certificate_accepted": cert_result.accepted,
            "certificate_root_window": [cert.root_complex().lo, cert.root_complex().hi],
        },
    }


def verify_thereismap(M, p, n):
    """Construct the map onto the suspended bottom homology through the
    truncation and check it is an isomorphism after localizing at p.

    The map lives in the derived category as the roof M <- τ≥n M -> Σ^n F
    with the left leg inducing isomorphisms on H_i for i >= n, so the
    annihilator tests are run on the right leg's H_n."""
    report = {
        "lemma": "thereismap",
        "instance": _instance(prime=p.name, degree=n),
    }
    if not supp_member(M.homology(n), p):
        report["status"] = "precondition-failed"
        report["reason"] = "prime not in Supp H_n(M)"
        return report
    for i in range(M.lo, n):
        if supp_member(M.homology(i), p):
            report["status"] = "precondition-failed"
            report["reason"] = "prime supports H_%d(M) below n" % i
            return report
    T, incl = truncate_ge(M, n)
    Hn = M.homology(n)
    length = max(T.hi - n + 2, 1)
    F = partial_resolution(Hn, length)
    target = shift(F, n)
    phi0 = RingMatrix.identity(M.ring, Hn.ngens)
    g = bottom_comparison(T, target, phi0)
    induced = induced_map(g, n)
    kernel_module, _ = induced.kernel()
    coker_module = induced.cokernel()
    ker_ok = not p.ideal.contains(kernel_module.annihilator())
    coker_ok = not p.ideal.contains(coker_module.annihilator())
    report["status"] = "pass" if (ker_ok and coker_ok) else "fail"
    report["witness"] = {
        "kernel_dies_at_p": ker_ok,
        "cokernel_dies_at_p": coker_ok,
        "truncation_window": [T.lo, T.hi],
    }
    return report


def killing_generator(M, table):
    """E(M): one suspended quotient resolution per degreewise support prime
    (non-cumulative)."""
    summands = []
    for i in M.degrees():
        H = M.homology(i)
        if H.is_zero_module():
            continue
        for name in sorted(module_support(H, table)):
            summands.append(shift(table.quotient_resolution(name), i))
    return direct_sum(summands, ring=table.ring)


def verify_genkilling(M, table, cert):
    """Check a supplied certificate that E(M) kills M."""
    E = killing_generator(M, table)
    report = {
        "lemma": "genkilling",
        "instance": _instance(window=[M.lo, M.hi]),
    }
    if cert.root_complex() != M:
        report["status"] = "reject"
        report["reason"] = "certificate root is not the target complex"
        return report
    result = check_certificate(cert, E)
    report["status"] = "accept" if result.accepted else "reject"
    if not result.accepted:
        report["reason"] = result.reason
        report["node"] = result.node
    report["generator_window"] = [E.lo, E.hi]
    return report


def verify_phi_monotone(E, root, table):
    """Soundness hook: the invariant of an accepted target never exceeds
    the invariant of the generator, degree by degree."""
    f_root = support_invariant([root], table)
    f_gen = support_invariant([E], table)
    lo = min(f_root.lo, f_gen.lo)
    hi = max(f_root.hi, f_gen.hi) + 1
    for i in range(lo, hi + 1):
        if not f_root.value(i) <= f_gen.value(i):
            return False
    return True


def verify_kil_ringdim(p, q, table, cert):
    """Reachability of the suspended quotient from the specialization sum.

    Restricted to maximal q, where the residue field equals the quotient;
    non-maximal q is reported, not checked."""
    if q.name not in v_of(p):
        raise PreconditionError("q must contain p")
    report = {
        "lemma": "kil-ringdim",
        "instance": _instance(p=p.name, q=q.name, dim=table.dim(q.name)),
    }
    if not table.is_maximal(q.name):
        report["status"] = "flagged-unchecked"
        report["reason"] = (
            "non-maximal q needs the residue-field reformulation; the general "
            "statement is proved, not machine-checked"
        )
        return report
    E = direct_sum(
        [table.quotient_resolution(name) for name in sorted(v_of(p))],
        ring=table.ring,
    )
    target = shift(table.quotient_resolution(q.name), table.dim(q.name))
    if cert.root_complex() != target:
        report["status"] = "reject"
        report["reason"] = "certificate root is not the suspended quotient"
        return report
    result = check_certificate(cert, E)
    report["status"] = "accept" if result.accepted else "reject"
    if not result.accepted:
        report["reason"] = result.reason
        report["node"] = result.node
    return report
