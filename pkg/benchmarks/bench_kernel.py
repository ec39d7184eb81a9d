"""Benchmark: compiled term-arithmetic kernel vs the pure-Python twin.

Times the raw kernel operations and two end-to-end workloads (the normal-form
battery and the symbolic chart Hessian of the Lefschetz family) under each
kernel.  Run from the repository root:

    python benchmarks/bench_kernel.py
"""

import random
import time
from fractions import Fraction

from morinclass import _termops_py as pure

try:
    from morinclass import _termops as compiled
except ImportError:
    compiled = None


def random_terms(rng, nvars=6, n_terms=150, max_deg=8):
    out = {}
    while len(out) < n_terms:
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(nvars)] += 1
        out[tuple(exps)] = Fraction(rng.randint(-99, 99), rng.randint(1, 9))
    return out


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_raw(kernel_module):
    rng = random.Random(42)
    a = random_terms(rng)
    b = random_terms(rng)
    results = {}
    results["mul (150x150 terms)"] = timeit(lambda: kernel_module.mul_terms(a, b))
    results["mul truncated deg 8"] = timeit(lambda: kernel_module.mul_terms(a, b, 8))
    results["add"] = timeit(lambda: kernel_module.add_terms(a, b), repeat=50)
    results["derivative"] = timeit(lambda: kernel_module.diff_terms(a, 2), repeat=50)
    point = tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(6))
    results["evaluate"] = timeit(lambda: kernel_module.eval_terms(a, point), repeat=20)
    return results


def bench_pipeline():
    """End-to-end workloads through whichever kernel morinclass selected."""
    import importlib
    import morinclass.kernel as kern

    results = {}

    def battery_run():
        import sys
        sys.path.insert(0, "tests")
        from conftest import battery, normal_form
        from morinclass import classify

        for m, n, k, signs in battery():
            classify(normal_form(m, n, k, signs))

    results["battery classify (42 germs)"] = timeit(battery_run, repeat=2)

    def lefschetz_run():
        from morinclass.lefschetz import chart_hessian

        chart_hessian()

    results["lefschetz chart hessian"] = timeit(lefschetz_run, repeat=2)
    return kern.KERNEL, results


def force_kernel(mod):
    import morinclass.kernel as kern

    for name in ("add_terms", "sub_terms", "neg_terms", "scale_terms", "mul_terms",
                 "pow_terms", "diff_terms", "truncate_terms", "eval_terms"):
        setattr(kern, name, getattr(mod, name))
    kern.KERNEL = "compiled" if mod is compiled else "python"


def main():
    print(f"compiled kernel available: {compiled is not None}")
    rows = []
    pure_raw = bench_raw(pure)
    comp_raw = bench_raw(compiled) if compiled else {}
    print("\nraw kernel operations (best of N, seconds):")
    print(f"{'operation':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, t in pure_raw.items():
        if compiled:
            tc = comp_raw[name]
            print(f"{name:<28}{t:>12.6f}{tc:>12.6f}{t / tc:>10.2f}x")
        else:
            print(f"{name:<28}{t:>12.6f}{'-':>12}{'-':>10}")

    print("\nend-to-end workloads:")
    for mod, label in ((pure, "python"), (compiled, "compiled")):
        if mod is None:
            continue
        force_kernel(mod)
        _, res = bench_pipeline()
        for name, t in res.items():
            print(f"  [{label:>8}] {name:<32}{t:>10.4f}s")


if __name__ == "__main__":
    main()
