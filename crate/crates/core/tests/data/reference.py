"""Regenerate reference.json: high-precision values of R_r by direct subset
summation. Repeated positive eigenvalues are split by distinct offsets of
order 1e-60 at 600 digits, which leaves an O(1e-60) error in the limit.

    python3 reference.py > reference.json
"""
import itertools
import json

import mpmath as mp
import numpy as np

mp.mp.dps = 600
SPLIT = mp.mpf("1e-60")


def split_repeats(values):
    out, seen = [], {}
    for v in values:
        v = mp.mpf(v)
        if v != 0:
            k = seen.get(v, 0)
            seen[v] = k + 1
            v = v + k * SPLIT
        out.append(v)
    return out


def xlogx(x):
    return mp.mpf(0) if x == 0 else x * mp.log(x)


def r_value(lam, r):
    n = len(lam)
    total = mp.mpf(0)
    for subset in itertools.combinations(range(n), r):
        for s in subset:
            if lam[s] == 0:
                continue
            prod = mp.mpf(1)
            for t in subset:
                if t != s:
                    prod *= lam[s] / (lam[s] - lam[t])
            total += prod * xlogx(lam[s])
    return -total / mp.binomial(n - 1, r - 1)


def r_alpha(rs, alpha):
    n = len(rs)
    a = mp.mpf(alpha)
    return sum(
        mp.binomial(n - 1, r - 1) * a ** (r - 1) * (1 - a) ** (n - r) * rs[r - 1]
        for r in range(1, n + 1)
    )


def case(name, values):
    values = [float(v) for v in values]
    total = sum(values)
    lam = split_repeats([mp.mpf(v) / mp.mpf(total) for v in values])
    rs = [r_value(lam, r) for r in range(1, len(lam) + 1)]
    return {
        "name": name,
        "spectrum": values,
        "r": [float(x) for x in rs],
        "alpha": [[a, float(r_alpha(rs, a))] for a in (0.25, 0.5, 0.75)],
    }


def main():
    cases = [
        case("qubit_07_03", [0.7, 0.3]),
        case("qubit_07_03_padded", [0.7, 0.3, 0.0]),
        case("uniform_3", [1 / 3] * 3),
        case("uniform_4", [0.25] * 4),
        case("half_half_zero", [0.5, 0.5, 0.0]),
        case("linear_4", [0.4, 0.3, 0.2, 0.1]),
        case("two_pairs", [0.3, 0.3, 0.2, 0.2]),
        case("pair_plus_zeros", [0.35, 0.35, 0.3, 0.0, 0.0]),
        case("near_degenerate", [0.5, 0.5 - 1e-7, 0.0 + 1e-7]),
        case("close_cluster_6", [0.2, 0.2 - 1e-6, 0.2 - 2e-6, 0.2 + 3e-6, 0.1, 0.1]),
        case("near_pure", [0.999, 1e-3 - 1e-6, 1e-6]),
        case("wide_range", [0.6, 0.3, 0.0999, 1e-4]),
    ]
    rng = np.random.default_rng(20240611)
    for n in range(2, 9):
        for k in range(3):
            cases.append(case(f"dirichlet_{n}_{k}", rng.dirichlet(np.ones(n)).tolist()))
    print(json.dumps({"cases": cases}, indent=1))


if __name__ == "__main__":
    main()
