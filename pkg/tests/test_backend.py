import os
import subprocess
import sys

import pytest

SNIPPET = """
import numpy as np
from shelljet._accel import backend
from shelljet.algebra.dimension import max_independent_set
from shelljet.repvar import WordMap, local_dimension, sample_solution
masks = np.array([0b0011, 0b0110, 0b1100], dtype=np.int64)
wm = WordMap(2)
print(backend(), max_independent_set(masks, 4), local_dimension(wm, sample_solution(wm, seed=4)).dimension)
"""


@pytest.mark.parametrize("flag,name", [("1", "numpy"), ("0", "numba")])
def test_backends_agree(flag, name):
    env = dict(os.environ, SHELLJET_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [name, "2", "9"]
