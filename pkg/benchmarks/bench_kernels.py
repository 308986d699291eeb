"""Compare the compiled enumeration kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from qfpowers import _kernels_py, kernels
from qfpowers.combinatorics import binomial
from qfpowers.forms import DiagonalForm
from qfpowers.harness import random_form
from qfpowers.power_engine import _encode, lambda_power, sym_power

CASES = [
    ("subset", 24, 6),
    ("subset", 30, 7),
    ("multiset", 12, 6),
    ("multiset", 16, 7),
]


def form_of_dim(dim):
    seed = 0
    while True:
        phi = random_form(seed)
        if phi.dim >= dim:
            return DiagonalForm.from_classes(list(phi.classes())[:dim])
        seed += 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; only the fallback is available")
    print(f"{'kernel':<9} {'dim':>4} {'k':>2} {'combos':>10} {'python s':>9} {'cython s':>9} {'speedup':>8} {'convolution s':>13}")
    for kind, dim, k in CASES:
        phi = form_of_dim(dim)
        atoms, masks = _encode(phi)
        nbits = len(atoms)
        name = "count_subset_xors" if kind == "subset" else "count_multiset_xors"
        combos = binomial(dim, k) if kind == "subset" else binomial(dim + k - 1, k)
        py = min(timeit.repeat(lambda: getattr(_kernels_py, name)(masks, k, nbits), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: getattr(kernels, name)(masks, k, nbits), number=1, repeat=args.repeat))
        conv_fn = lambda_power if kind == "subset" else sym_power
        conv = min(timeit.repeat(lambda: conv_fn(phi, k), number=1, repeat=args.repeat))
        print(f"{kind:<9} {dim:>4} {k:>2} {combos:>10} {py:>9.3f} {cy:>9.4f} {py / cy:>7.0f}x {conv:>13.5f}")


if __name__ == "__main__":
    main()
