import random
from fractions import Fraction

import pytest

from shelljet.algebra.linalg import nullspace
from shelljet.cli.corpus import load_corpus
from shelljet.shell import moment_generators

CORPUS = load_corpus()
ENTRY_IDS = sorted(CORPUS)


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def shells():
    return {k: moment_generators(e.spec.action()) for k, e in CORPUS.items()}


def random_rational(rng, lo=-5, hi=5, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_x_arc(rng, n, m, density=1.0):
    """m+1 points of Q^n; each coordinate nonzero with probability ``density``."""
    arc = []
    for _ in range(m + 1):
        pt = []
        for _ in range(n):
            v = random_rational(rng) if rng.random() < density else Fraction(0)
            pt.append(v)
        arc.append(pt)
    return arc


def arc_on_jet_scheme(s, m, rng):
    """Flat arc coordinates (level-major, x before xi) lying on the level-m jet scheme.

    The x-part is random; the xi-part is a random vector in the kernel of the
    convolution equations, which are linear in xi once x is fixed.
    """
    n = s.dim_v
    xs = random_x_arc(rng, n, m)
    rows = []
    for k in range(m + 1):
        for a in s.action.lie_basis:
            row = [0] * ((m + 1) * n)
            for i in range(k + 1):
                x = xs[k - i]
                for r in range(n):
                    row[i * n + r] += sum(a[r, c] * x[c] for c in range(n))
            rows.append(row)
    ker = nullspace(rows, (m + 1) * n)
    xi = [Fraction(0)] * ((m + 1) * n)
    for vec in ker:
        c = random_rational(rng)
        xi = [a + c * Fraction(int(b.numerator), int(b.denominator)) for a, b in zip(xi, vec)]
    flat = []
    for i in range(m + 1):
        flat += list(xs[i]) + xi[i * n : (i + 1) * n]
    return flat


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
