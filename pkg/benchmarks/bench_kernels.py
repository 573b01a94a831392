"""Compare the numba and numpy kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is called once to trigger compilation, then timed with
``timeit``; the table reports the best of ``--repeat`` runs.
"""

import argparse
import timeit

import numpy as np

from decosolv import _accel, kernels


def cases(rng):
    omega = rng.uniform(0.01, 5.0, 4000)
    weight = rng.uniform(0.0, 1.0, 4000)
    times = np.linspace(0.0, 200.0, 2000)
    d = rng.standard_normal(200_000)
    y = rng.standard_normal((2000, 400))
    a = rng.standard_normal((10_000, 3))
    b = rng.standard_normal((10_000, 3))
    w3 = np.array([0.1, 0.2, 0.4])
    t3 = np.arange(321) * 0.25
    return [
        ("golden_rule_sum 4000 modes x 2000 t", "golden_rule_sum", (omega, weight, times)),
        ("autocovariance N=2e5, 500 lags", "autocovariance", (d, 500)),
        ("batch_autocovariance 2000 x 400, 160 lags", "batch_autocovariance", (y, 160)),
        ("synthesize 1e4 samples x 3 modes x 321 t", "synthesize", (a, b, w3, t3)),
    ]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if not _accel.NUMBA_ENABLED:
        print("numba disabled (DECOSOLV_DISABLE_NUMBA set or numba missing); numba column uses the fallback")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<44}{'numpy / ms':>12}{'numba / ms':>12}{'speed-up':>10}")
    for label, name, arg in cases(rng):
        fast = getattr(kernels, f"{name}_numba")
        slow = getattr(kernels, f"{name}_numpy")
        assert np.allclose(fast(*arg), slow(*arg), rtol=1e-10, atol=1e-10)
        t_np = min(timeit.repeat(lambda: slow(*arg), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fast(*arg), number=1, repeat=args.repeat))
        print(f"{label:<44}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
