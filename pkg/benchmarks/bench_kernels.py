"""Time the compiled and pure-Python integration kernels side by side.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]
"""
import argparse
import sys
import timeit

import numpy as np

from kzwigner import backend
from kzwigner.integrate import IntegratorConfig, abs_integral_fixed
from kzwigner.swkernel import KernelModuli, spectrum_from_moduli


def cases(quick):
    rng = np.random.default_rng(0)
    n = 20_000 if quick else 1_000_000
    c = rng.uniform(-1, 1, (3, n))
    r = np.array([0.62, 0.27, 0.11])
    pi0 = spectrum_from_moduli(KernelModuli.qutrit(0.0)).pis
    pig = spectrum_from_moduli(KernelModuli.qutrit(0.5)).pis
    deg_nodes = (32,) if quick else (48, 128, 256)
    gen_nodes = (16,) if quick else (48, 96)
    out = [(f"line integral x{n}", lambda kern: kern.abs_line_integral(*c))]
    for nodes in deg_nodes:
        out.append((f"(1|23) chart, {nodes} nodes",
                    lambda kern, k=nodes: abs_integral_fixed(r, pi0, "(1|23)", k, IntegratorConfig(backend=kern))))
    for nodes in gen_nodes:
        out.append((f"(123) chart, {nodes} nodes",
                    lambda kern, k=nodes: abs_integral_fixed(r, pig, "(123)", k, IntegratorConfig(backend=kern))))
    return out


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small sizes, for smoke tests")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    names = backend.available()
    print(f"backends: {', '.join(names)} (default {backend.BACKEND})")
    header = f"{'case':<28}" + "".join(f"{n + ' [ms]':>16}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    rows = []
    for label, fn in cases(args.quick):
        if label.startswith("line"):
            times = [best_time(lambda m=backend.get(n): fn(m), args.repeat) for n in names]
        else:
            times = [best_time(lambda n=n: fn(n), args.repeat) for n in names]
        line = f"{label:<28}" + "".join(f"{1e3 * t:>16.2f}" for t in times)
        if len(times) == 2:
            line += f"{times[1] / times[0]:>9.1f}x"
        print(line)
        rows.append((label, times))
    return rows


if __name__ == "__main__":
    main()
    sys.exit(0)
