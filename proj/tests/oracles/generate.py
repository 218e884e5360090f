"""Exact generating-tensor entries for delta <= h, by symbolic integration.

Writes tensor_oracles.hpp. Regenerate with: python3 generate.py > tensor_oracles.hpp
"""
import sympy as sp

r, th, ph = sp.symbols("r theta phi", positive=True)

PIECES = [
    lambda t: t**3 / 6,
    lambda t: -t**3 / 2 + 2 * t**2 - 2 * t + sp.Rational(2, 3),
    lambda t: t**3 / 2 - 4 * t**2 + 10 * t - sp.Rational(22, 3),
    lambda t: -(t - 4) ** 3 / 6,
]


def b3_near(k, x, side):
    # B3(k + 2 + x) for |x| < 1 with sign(x) = side
    base = k + 2
    piece = base if side > 0 else base - 1
    if piece < 0 or piece > 3:
        return sp.Integer(0)
    return PIECES[piece](base + x)


def b3_at(k):
    v = k + 2
    return sp.Integer(0) if v >= 4 else PIECES[v](sp.Integer(v))


def quadrants():
    return [((1, 1), (0, sp.pi / 2)), ((-1, 1), (sp.pi / 2, sp.pi)),
            ((-1, -1), (sp.pi, 3 * sp.pi / 2)), ((1, -1), (3 * sp.pi / 2, 2 * sp.pi))]


def entry(k, alpha, delta):
    d = len(k)
    alpha = sp.nsimplify(alpha)
    delta = sp.nsimplify(delta)
    total = 0
    sectors = []
    if d == 2:
        for sg, rng in quadrants():
            sectors.append((sg, [r * sp.cos(th), r * sp.sin(th)], 1, [(th, *rng)]))
    else:
        for st, trng in ((1, (0, sp.pi / 2)), (-1, (sp.pi / 2, sp.pi))):
            for (s1, s2), prng in quadrants():
                x = [r * sp.sin(th) * sp.cos(ph), r * sp.sin(th) * sp.sin(ph), r * sp.cos(th)]
                sectors.append(((s1, s2, st), x, sp.sin(th), [(ph, *prng), (th, *trng)]))
    for sg, x, jac, lims in sectors:
        f = 2 * sp.prod([b3_at(kj) for kj in k])
        for sgn in (1, -1):
            f -= sp.prod([b3_near(k[j], sgn * x[j], sgn * sg[j]) for j in range(d)])
        poly = sp.Poly(sp.expand(f), r)
        for (m,), cf in poly.terms():
            if cf == 0:
                continue
            ang = sp.expand(cf * jac)
            for lim in lims:
                ang = sp.integrate(ang, lim)
            # int_0^delta r^m r^(d-1) r^(-d-alpha) dr
            total += ang * delta ** (m - alpha) / (m - alpha)
    if d == 2:
        c = 2 * (2 - alpha) * delta ** (alpha - 2) / sp.pi
    else:
        c = 3 * (2 - alpha) / (2 * sp.pi) * delta ** (alpha - 2)
    return sp.N(c * total / 2, 30)


CASES2 = [(0, 1), (-1, sp.Rational(1, 2)), (sp.Rational(1, 2), sp.Rational(1, 4)),
          (sp.Rational(3, 2), 1)]
CASES3 = [(0, 1), (sp.Rational(3, 2), sp.Rational(1, 2))]
K2 = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
K3 = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 0, 0), (2, 1, 0), (2, 1, 1),
      (2, 2, 0), (2, 2, 1), (2, 2, 2)]

print("#pragma once")
print("// Generated by generate.py: exact delta <= h entries, h = 1, tabulated constant.")
print()
print("struct TensorOracle {\n    double alpha, delta;\n    int k[3];\n    double value;\n};")
print()
for name, cases, ks in (("oracles_2d", CASES2, K2), ("oracles_3d", CASES3, K3)):
    rows = []
    for a, dl in cases:
        for k in ks:
            kk = list(k) + [0] * (3 - len(k))
            # the piece choice above assumes |s| < h, so every case has delta <= 1
            v = entry(k, a, dl)
            rows.append("    {%s, %s, {%d, %d, %d}, %s}," % (
                float(a), float(dl), *kk, sp.N(v, 17)))
    print("inline constexpr TensorOracle %s[] = {" % name)
    print("\n".join(rows))
    print("};")
    print()
