"""Benchmark the pure-Python kernel against the compiled one.

Runs the same Groebner/syzygy/homology workload through both backends in
subprocesses (the backend is fixed at import time) and prints a table.
Results are also compared for exact equality.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = """
import hashlib, json, random, sys, time
from aislekit.rings import Field, PolyRing, Ideal
from aislekit.modules import RingMatrix, syzygy_matrix
from aislekit.complexes import ChainMap, cone, single, tensor
from aislekit.koszul import KoszulSequence, koszul
from aislekit.engine import backend_name

R = PolyRing(Field.rationals(), ["x", "y"])
x, y = R.gens()
rng = random.Random(20250809)

def random_poly(max_terms=4, max_deg=3, span=5):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        m = (rng.randrange(max_deg), rng.randrange(max_deg))
        terms[m] = terms.get(m, 0) + rng.randrange(-span, span + 1)
    return R.poly(terms)

out = []
timings = {}

t0 = time.time()
for _ in range(40):
    gens = [random_poly() for _ in range(3)]
    I = Ideal(R, [g for g in gens if not g.is_zero()])
    out.append([str(g) for g in I.groebner()])
timings["groebner"] = time.time() - t0

t0 = time.time()
for _ in range(25):
    A = RingMatrix.from_rows(R, [[random_poly(3, 2, 3) for _ in range(3)]
                                 for _ in range(2)])
    S = syzygy_matrix(A)
    out.append([str(e) for e in S.entries])
timings["syzygies"] = time.time() - t0

t0 = time.time()
K = koszul(KoszulSequence(R, [x, y]))
for _ in range(6):
    T = tensor(K, cone(ChainMap.scalar(single(R), random_poly(2, 2, 3) + x)))
    for n in T.degrees():
        out.append([str(g) for g in T.homology(n).annihilator().groebner()])
timings["homology"] = time.time() - t0

json.dump({"backend": backend_name(), "timings": timings,
           "digest": hashlib.sha256(
               json.dumps(out, sort_keys=True).encode()).hexdigest()},
          sys.stdout)
"""


def run_backend(name, repeat):
    best = None
    digest = None
    for _ in range(repeat):
        env = dict(os.environ, AISLEKIT_BACKEND=name)
        proc = subprocess.run(
            [sys.executable, "-c", WORKER],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        data = json.loads(proc.stdout)
        assert data["backend"] in {"python", "cython"}
        digest = data["digest"]
        total = sum(data["timings"].values())
        if best is None or total < sum(best["timings"].values()):
            best = data
    return best, digest


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = parser.parse_args()
    results = {}
    digests = {}
    for name in ("py", "cy"):
        try:
            results[name], digests[name] = run_backend(name, args.repeat)
        except subprocess.CalledProcessError as exc:
            print("backend %s failed:\n%s" % (name, exc.stderr))
            if name == "cy":
                print("compiled kernel unavailable; build with pip install -e .")
                return 1
            raise
    if digests["py"] != digests["cy"]:
        print("MISMATCH: backends disagree on the workload output")
        return 1
    print("backends agree on the full workload output\n")
    header = "%-12s %12s %12s %9s" % ("stage", "python (s)", "cython (s)", "speedup")
    print(header)
    print("-" * len(header))
    total_py = total_cy = 0.0
    for stage in results["py"]["timings"]:
        t_py = results["py"]["timings"][stage]
        t_cy = results["cy"]["timings"][stage]
        total_py += t_py
        total_cy += t_cy
        print("%-12s %12.4f %12.4f %8.2fx" % (stage, t_py, t_cy, t_py / t_cy))
    print("-" * len(header))
    print("%-12s %12.4f %12.4f %8.2fx" % ("total", total_py, total_cy, total_py / total_cy))
    return 0


if __name__ == "__main__":
    sys.exit(main())
