"""Independent high-precision oracles for frozen test values.

Run with: python3 tests/oracles/derive_values.py
Uses exact rationals (fractions) and mpmath; shares no code with the C++ library.
"""
from fractions import Fraction as Fr
import mpmath as mp

mp.mp.dps = 50


def basis(n, k, x):
    x = mp.mpf(x.numerator) / x.denominator
    return mp.binomial(n, k) * x ** k * (1 - x) ** (n - k)


def node_sum(f, n, x):
    return sum(f(Fr(k, n)) * Fr(int(mp.binomial(n, k))) * x ** k * (1 - x) ** (n - k)
               for k in range(n + 1))


def solve_exact(degrees):
    m = len(degrees)
    rows = [[Fr(1, d) ** k for d in degrees] + [Fr(1 if k == 0 else 0)] for k in range(m)]
    for c in range(m):
        p = next(r for r in range(c, m) if rows[r][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        for r in range(m):
            if r != c and rows[r][c] != 0:
                fac = rows[r][c] / rows[c][c]
                rows[r] = [a - fac * b for a, b in zip(rows[r], rows[c])]
    return [rows[i][m] / rows[i][i] for i in range(m)]


if __name__ == "__main__":
    x = Fr(3, 10)
    print("basis(10,3,0.3) =", mp.nstr(basis(10, 3, Fr(3, 10)), 25),
          "exact", Fr(120) * x**3 * (1 - x)**7)
    print("B_10(t^2)(0.3) =", node_sum(lambda t: t * t, 10, x))
    print("central moment j=2 n=10 x=0.3 =", node_sum(lambda t: (x - t) ** 2, 10, x))
    for m in (1, 2, 3, 4, 5):
        print("coeffs m=%d geometric:" % m, solve_exact([32 * 2**i for i in range(m)]))
    print("coeffs m=3 arithmetic:", solve_exact([32 * (i + 1) for i in range(3)]))
    c = solve_exact([10, 20])
    print("combo t^2 (10,20) x=0.3 =", sum(ci * node_sum(lambda t: t * t, d, x) for ci, d in zip(c, [10, 20])))
    print("combo moment k=2 (10,20) x=0.3 =",
          sum(ci * node_sum(lambda t: (t - x) ** 2, d, x) for ci, d in zip(c, [10, 20])))
    print("single moment k=2 n=10 x=0.3 =", node_sum(lambda t: (t - x) ** 2, 10, x))
    print("B_10''(t^2) =", Fr(2 * 9, 10))
    print("F_n(0) t^-1/4 r=2 n=100:", mp.nstr(2 * mp.mpf(100) ** 0.25 - mp.mpf(50) ** 0.25, 20))
    print("w(1/2,1/2)(0.3) =", mp.nstr(mp.sqrt(mp.mpf('0.21')), 20))
    print("sum |C| geometric m=2,3,4:", [sum(abs(v) for v in solve_exact([2**i for i in range(m)])) for m in (2, 3, 4)])
    # Main-part modulus closed form for f=t^2, r=2, varphi step, w=sqrt(x(1-x)):
    # w*Delta^2 = 2 h^2 (x(1-x))^{3/2}, max at x=1/2 -> h^2/4.
    print("Omega(t^2, 0.05) =", Fr(1, 4) * Fr(1, 20) ** 2)
