"""Reference values for montee images, cap constants and the hop factor.

* I f_m and I^2 f_m by direct quadrature of f_m(x) = (t - arccos x)^m_+.
* a_d = (chi *_lambda chi)(1) = int_chi chi dOmega_lambda = int_0^s sin^(d-1).
* (I f)^_lambda(n+1) / fhat_{lambda+1}(n) for f = exp, by quadrature.
"""
import mpmath as mp

mp.mp.dps = 25


def f(m, t):
    return lambda x: max(t - mp.acos(x), 0) ** m


def I(g, x, t):
    lo = mp.cos(t)
    if x <= lo:
        return mp.mpf(0)
    return mp.quad(g, [lo, x])


def transform(g, lam, n, lo=-1):
    # int g W_n dOmega_lambda in theta form
    c1 = mp.gegenbauer(n, lam, 1) if lam > 0 else (1 if n == 0 else mp.mpf(2) / n)
    def W(x):
        if lam == 0:
            return mp.chebyt(n, x)
        return mp.gegenbauer(n, lam, x) / c1
    return mp.quad(lambda th: g(mp.cos(th)) * W(mp.cos(th)) * mp.sin(th) ** (2 * lam), [0, mp.pi])


if __name__ == "__main__":
    print("// I f_m(x)")
    for t in (mp.mpf("0.5"), mp.pi / 2, mp.mpf("2.5")):
        for m in (2, 3, 4, 5):
            for x in ("-0.5", "0.2", "0.9", "1"):
                xv = mp.mpf(x)
                print(f"{{{m}, {mp.nstr(t, 17)}, {x}, {mp.nstr(I(f(m, t), xv, t), 20)}}},")
    print("// I^2 f_m(x)")
    for t in (mp.mpf("0.5"), mp.pi / 2):
        for m in (3, 4):
            for x in ("0.2", "0.95"):
                xv = mp.mpf(x)
                g = lambda y: I(f(m, t), y, t)
                print(f"{{{m}, {mp.nstr(t, 17)}, {x}, {mp.nstr(I(g, xv, t), 20)}}},")
    print("// a_d")
    for d in (3, 5, 7, 9):
        for s in (mp.pi / 6, mp.pi / 4, mp.pi / 3):
            print(f"{{{d}, {mp.nstr(s, 17)}, {mp.nstr(mp.quad(lambda th: mp.sin(th) ** (d - 1), [0, s]), 20)}}},")
    print("// hop factor ratios, f = exp")
    for lam in (0, mp.mpf("0.5"), 1, 2):
        F = lambda x: mp.exp(x) - mp.exp(-1)
        for n in (0, 3, 8):
            r = transform(F, lam, n + 1) / transform(mp.exp, lam + 1, n)
            print(f"{{{lam}, {n}, {mp.nstr(r, 20)}}},")
