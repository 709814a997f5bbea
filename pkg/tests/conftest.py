import itertools
import random

import pytest

from hypspin.field_core import QQ, PrimeField

GF7 = PrimeField(7)
GF11 = PrimeField(11)
FIELDS = [QQ, GF7, GF11]


@pytest.fixture(params=FIELDS, ids=lambda f: f.tag)
def field(request):
    return request.param


def make_rng(*key):
    return random.Random(":".join(map(str, key)))


# ---- independent oracles shared by several test modules ----

def leibniz_det(m):
    """Permutation-sum determinant; no elimination involved."""
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inv % 2 else 1
        for r in range(n):
            term = term * m[r][perm[r]]
        total = total + term
    return total


def minors_exterior(field, g):
    """(⋀g)[I][J] = det of the I-rows, J-columns minor, zero unless |I| = |J|."""
    n = len(g)
    dim = 1 << n
    out = [[field.zero] * dim for _ in range(dim)]
    for I in range(dim):
        rows = [k for k in range(n) if I >> k & 1]
        for J in range(dim):
            cols = [k for k in range(n) if J >> k & 1]
            if len(rows) == len(cols):
                out[I][J] = field(leibniz_det([[g[r][c] for c in cols] for r in rows]))
    return out


def fermion_matrices(field, n):
    """Creation/annihilation matrices on the 2ⁿ-dim space, built from the
    Jordan-Wigner sign (-1)^{occupied modes below i}."""
    dim = 1 << n
    F, W = [], []
    for i in range(n):
        bit = 1 << i
        f = [[field.zero] * dim for _ in range(dim)]
        w = [[field.zero] * dim for _ in range(dim)]
        for m in range(dim):
            sign = field(-1 if bin(m & (bit - 1)).count("1") % 2 else 1)
            if m & bit:
                f[m ^ bit][m] = sign
            else:
                w[m | bit][m] = sign
        F.append(f)
        W.append(w)
    return F, W


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), a[0][0] * 0) for j in range(m)] for i in range(n)]


# ---- acceptance report: one line per criterion, shown in the terminal summary ----

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
