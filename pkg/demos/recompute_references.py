"""Recompute the shipped ground-truth references from scratch and compare digit by digit.

a5 = int_0^inf Ai(x)^5 dx by two quadrature schemes; the spheroidal
eigenvalues from the symmetric tridiagonal matrix in the Legendre basis,
truncated at two sizes. Takes a few seconds.
"""

from mpmath import eigsy, matrix, mp, mpf, sqrt

from mathcert.harness import load_manifest, shipped_manifest_dir

mp.dps = 60


def airy_moment():
    a = mp.quad(lambda x: mp.airyai(x) ** 5, [0, 1, 2, 4, 8, 16, mp.inf])
    b = mp.quad(lambda x: mp.airyai(x) ** 5, [0, 0.5, 1.5, 3, 6, 12, 24, mp.inf], method="gauss-legendre")
    return a, b


def spheroidal(n, c, size):
    """n-th m=0 separation constant; even and odd n decouple into separate chains."""
    ks = list(range(n % 2, n % 2 + 2 * size, 2))
    a = matrix(size, size)
    c2 = mpf(c) ** 2
    for i, k in enumerate(ks):
        a[i, i] = k * (k + 1) + c2 * mpf(2 * k * (k + 1) - 1) / ((2 * k - 1) * (2 * k + 3))
        if i + 1 < size:
            off = c2 * mpf((k + 1) * (k + 2)) / ((2 * k + 3) * sqrt(mpf((2 * k + 1) * (2 * k + 5))))
            a[i, i + 1] = a[i + 1, i] = off
    return sorted(eigsy(a, eigvals_only=True))[n // 2]


def agree(x, ref):
    return int(-mp.log10(abs(x - ref) / abs(ref))) if x != ref else mp.dps


d = shipped_manifest_dir()
m = load_manifest(d / "airy_a5.json")
ref = mpf(m.references()[0].digits)
a, b = airy_moment()
print(f"a5: stored {m.references()[0].digits}")
print(f"    quad   agrees to ~{agree(a, ref)} digits, gauss-legendre ~{agree(b, ref)}")

m = load_manifest(d / "prolate_spheroidal_m0.json")
for p in m.ground_truth.points:
    env = dict(p.bindings)
    n, c = int(env["n"]), mpf(env["c"].numerator) / env["c"].denominator
    v30, v45 = spheroidal(n, c, 30), spheroidal(n, c, 45)
    stored = mpf(p.reference.digits)
    print(f"n={n} c={mp.nstr(c, 3):>4}: stored {p.reference.digits:<36} agrees ~{agree(v45, stored)} digits "
          f"(truncation gap {mp.nstr(abs(v30 - v45), 2)})")
