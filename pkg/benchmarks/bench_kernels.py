"""Compare the numba kernels with the plain numpy fallback.

Each backend runs in its own interpreter because the switch
(SHELLJET_DISABLE_NUMBA) is read at import time.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from shelljet._accel import backend
from shelljet.algebra.dimension import max_independent_set
from shelljet.repvar import WordMap, evaluate_word_map, local_dimension, sample_solution

repeat = int(sys.argv[1])
rng = np.random.default_rng(7)
masks = np.array(sorted({int(m) for m in rng.integers(1, 1 << 30, 40) if bin(int(m)).count("1") <= 3}), dtype=np.int64)
wm = WordMap(3, "sl2")
pt = sample_solution(wm, seed=11)

def clock(f):
    f()  # warm-up, includes JIT compilation
    t0 = time.perf_counter()
    for _ in range(repeat):
        f()
    return (time.perf_counter() - t0) / repeat

out = {
    "backend": backend(),
    "max_independent_set": clock(lambda: max_independent_set(masks, 30)),
    "word_map_jacobian": clock(lambda: evaluate_word_map(wm, pt)),
    "local_dimension": clock(lambda: local_dimension(wm, pt)),
    "sample_solution": clock(lambda: sample_solution(wm, seed=3)),
}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, SHELLJET_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    t0 = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':<22}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key] * 1e3, slow[key] * 1e3
        print(f"{key:<22}{a:>12.3f}{b:>12.3f}{b / a:>9.1f}x")
    print(f"backends: {fast['backend']} / {slow['backend']}; total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
