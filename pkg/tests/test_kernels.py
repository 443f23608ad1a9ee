import os
import random
import subprocess
import sys

import numpy as np
import pytest

from lrmt.metrics import _kernels
from lrmt.metrics._kernels import lcs_length, levenshtein


def lev_oracle(a, b):
    # textbook full-matrix DP, no tricks
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dp[i][0] = i
    for j in range(m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            dp[i][j] = min(dp[i - 1][j] + 1, dp[i][j - 1] + 1, dp[i - 1][j - 1] + cost)
    return dp[n][m]


def lcs_oracle(a, b):
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if a[i - 1] == b[j - 1]:
                dp[i][j] = dp[i - 1][j - 1] + 1
            else:
                dp[i][j] = max(dp[i - 1][j], dp[i][j - 1])
    return dp[n][m]


class TestLevenshtein:
    def test_identity(self):
        assert levenshtein(["a", "b", "c"], ["a", "b", "c"]) == 0

    def test_empty_sides(self):
        assert levenshtein([], ["x", "y"]) == 2
        assert levenshtein(["x"], []) == 1
        assert levenshtein([], []) == 0

    def test_known_case(self):
        assert levenshtein(list("kitten"), list("sitting")) == 3

    def test_matches_oracle_random(self):
        rng = random.Random(77)
        for _ in range(200):
            a = [rng.randrange(5) for _ in range(rng.randrange(0, 12))]
            b = [rng.randrange(5) for _ in range(rng.randrange(0, 12))]
            assert levenshtein(a, b) == lev_oracle(a, b)


class TestLcs:
    def test_identity(self):
        assert lcs_length(["a", "b"], ["a", "b"]) == 2

    def test_disjoint(self):
        assert lcs_length(["a"], ["b"]) == 0

    def test_known_case(self):
        assert lcs_length(list("ABCBDAB"), list("BDCABA")) == 4

    def test_matches_oracle_random(self):
        rng = random.Random(78)
        for _ in range(200):
            a = [rng.randrange(4) for _ in range(rng.randrange(0, 12))]
            b = [rng.randrange(4) for _ in range(rng.randrange(0, 12))]
            assert lcs_length(a, b) == lcs_oracle(a, b)


class TestBackends:
    def test_numpy_paths_agree_with_active_backend(self):
        rng = random.Random(79)
        for _ in range(100):
            a = np.array([rng.randrange(6) for _ in range(rng.randrange(1, 15))], dtype=np.int64)
            b = np.array([rng.randrange(6) for _ in range(rng.randrange(1, 15))], dtype=np.int64)
            assert _kernels._levenshtein_np(a, b) == _kernels._levenshtein_ids(a, b)
            assert _kernels._lcs_np(a, b) == _kernels._lcs_ids(a, b)

    def test_env_flag_selects_numpy(self):
        code = "from lrmt.metrics._kernels import BACKEND; print(BACKEND)"
        env = dict(os.environ, LRMT_NO_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        assert out.stdout.strip() == "numpy"

    def test_flag_zero_means_enabled(self):
        code = "from lrmt.metrics._kernels import BACKEND; print(BACKEND)"
        env = dict(os.environ, LRMT_NO_NUMBA="0")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        # numba is installed here, so 0/empty leaves it active
        assert out.stdout.strip() == "numba"

    def test_backend_reported(self):
        assert _kernels.BACKEND in ("numba", "numpy")
