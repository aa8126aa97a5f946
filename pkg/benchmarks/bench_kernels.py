"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times each kernel on fixed inputs with both backends, then times an
end-to-end batch report in a subprocess per backend (the backend is
chosen at import, so the pure-Python run sets KNOTUA_PURE_PYTHON=1).
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from knotua import _pyspeedups

try:
    from knotua import _speedups
except ImportError:
    _speedups = None


def cases(rng):
    a = [rng.randint(-50, 50) for _ in range(40)]
    b = [rng.randint(-50, 50) for _ in range(40)]
    p = 13
    f = [rng.randrange(p) for _ in range(30)] + [1]
    g = [rng.randrange(p) for _ in range(12)] + [1]
    Q = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 2], [0, 0, 2, 3]]
    return {
        "convolve 40x40": lambda m: m.convolve(a, b),
        "fp_mul deg 30x12": lambda m: m.fp_mul(f, g, p),
        "fp_divmod deg 30/12": lambda m: m.fp_divmod(f, g, p),
        "unit_shell 4x4 r=3": lambda m: m.unit_shell(Q, 3),
    }


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["KNOTUA_PURE_PYTHON"] = "1"
    code = (
        "import time; from knotua.report import *; recs = bundled_table(); certs = bundled_certificates();"
        "s = time.perf_counter(); run_report(recs, certificates=certs); print(time.perf_counter() - s)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000)
    args = ap.parse_args()
    if _speedups is None:
        sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    rng = random.Random(0)
    print(f"{'kernel':24s} {'python us':>10s} {'compiled us':>12s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        assert fn(_speedups) == fn(_pyspeedups), name
        tp = min(timeit.repeat(lambda: fn(_pyspeedups), number=args.repeat, repeat=3)) / args.repeat * 1e6
        tc = min(timeit.repeat(lambda: fn(_speedups), number=args.repeat, repeat=3)) / args.repeat * 1e6
        print(f"{name:24s} {tp:10.2f} {tc:12.2f} {tp / tc:7.1f}x")
    tp, tc = end_to_end(True), end_to_end(False)
    print(f"{'batch report (table)':24s} {tp * 1e6:10.0f} {tc * 1e6:12.0f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
