"""Independent reference values frozen into tests/golden.hpp.

Uses exact rational arithmetic (fractions) for the single-locus match
classes and 60-digit mpmath for the series and products. Run with
`python3 tests/oracles/golden.py` and paste the output into golden.hpp.
"""
from fractions import Fraction as F
from itertools import product

import mpmath as mp

mp.mp.dps = 60


def draw(counts, total, theta, p, i):
    return (counts[i] * theta + (1 - theta) * p[i]) / (1 + (total - 1) * theta) if total else p[i]


def classes(p, theta):
    k = len(p)
    out = [F(0)] * 3  # mismatch, partial, match
    for seq in product(range(k), repeat=4):
        counts = [0] * k
        pr = F(1)
        for t, a in enumerate(seq):
            pr *= draw(counts, t, theta, p, a)
            counts[a] += 1
        g1 = sorted(seq[:2])
        g2 = sorted(seq[2:])
        if g1 == g2:
            out[2] += pr
        elif set(g1) & set(g2):
            out[1] += pr
        else:
            out[0] += pr
    return out


def kingston(lam):
    lam = mp.mpf(lam)
    s = mp.nsum(lambda k: mp.exp(-lam) * lam**k / mp.factorial(k) / k, [1, mp.inf])
    return s / (1 - mp.exp(-lam))


def balding(N, P):
    N = mp.mpf(N)
    P = mp.mpf(P)
    return (1 - P) ** N / (1 + N * P)


def birthday_exact(P, n):
    P = mp.mpf(P)
    acc = mp.mpf(0)
    for i in range(1, n):
        acc += mp.log1p(-i * P)
    return 1 - mp.exp(acc)


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(mp.mpf(value), 20)};")


for name, p, th in [
    ("kFourAllele_theta_1_20", [F(1, 10), F(2, 10), F(3, 10), F(4, 10)], F(1, 20)),
    ("kFourAllele_theta_3_10", [F(1, 10), F(2, 10), F(3, 10), F(4, 10)], F(3, 10)),
    ("kTwoEqual_theta_1_2", [F(1, 2), F(1, 2)], F(1, 2)),
]:
    mis, par, mat = classes(p, th)
    assert mis + par + mat == 1
    print(f"// {name}: P2 = {mat}, P1 = {par}, P0 = {mis}")
    emit(name + "_p2", mp.mpf(mat.numerator) / mat.denominator)
    emit(name + "_p1", mp.mpf(par.numerator) / par.denominator)
    emit(name + "_p0", mp.mpf(mis.numerator) / mis.denominator)

for lam, tag in [("1", "1"), ("0.03", "0_03"), ("5", "5"), ("50", "50")]:
    emit(f"kKingston_{tag}", kingston(mp.mpf(lam)))

emit("kBalding_3e8_1e_10", balding(mp.mpf("3e8"), mp.mpf("1e-10")))
emit("kBirthdayExact_754e6_65493", birthday_exact(1 / mp.mpf("7.54e8"), 65493))
emit("kBirthdayApprox_754e6_65493", 1 - mp.exp(-mp.mpf(65493) ** 2 / mp.mpf("7.54e8") / 2))
