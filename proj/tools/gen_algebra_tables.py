#!/usr/bin/env python3
"""Generate the loop-algebra tables in data/algebras from explicit matrix realizations.

Every table is derived from 3x3 or 2x2 matrices: structure constants, trace form,
twist, Chevalley generators and Heisenberg elements are all computed here and
re-validated by the C++ loader.  Run from the repository root:

    python3 tools/gen_algebra_tables.py data/algebras
"""
import sys
from pathlib import Path

import sympy as sp


def unit(n, i, j):
    m = sp.zeros(n, n)
    m[i, j] = 1
    return m


def fmt(c):
    c = sp.Rational(c)
    return str(c.p) if c.q == 1 else f"{c.p}/{c.q}"


class Table:
    def __init__(self, name, basis, names, degrees, classes, order):
        self.name = name
        self.basis = basis
        self.names = names
        self.degrees = degrees
        self.classes = classes
        self.order = order
        n = basis[0].shape[0]
        # Coordinates: solve a linear system on flattened matrices.
        cols = [list(b.reshape(n * n, 1)) for b in basis]
        self.mat = sp.Matrix(cols).T
        self.n = n

    def coords(self, m):
        flat = sp.Matrix(list(m.reshape(self.n * self.n, 1)))
        sol, params = self.mat.gauss_jordan_solve(flat)
        if params.shape[0] != 0:
            raise ValueError("basis not independent")
        return [sp.nsimplify(x) for x in sol]

    def vec(self, m):
        return " ".join(f"{i}:{fmt(c)}" for i, c in enumerate(self.coords(m)) if c != 0)

    def loop_vec(self, terms):
        """terms: list of (matrix, lambda power)."""
        out = []
        for m, p in terms:
            for i, c in enumerate(self.coords(m)):
                if c != 0:
                    out.append(f"{i}@{p}:{fmt(c)}")
        return " ".join(out)


def emit(path, t, header, sigma, chevalley, e, f, rho, top, exponents, heis, gauges, cartan, kac, dual_kac):
    lines = [f"# {t.name}: generated by tools/gen_algebra_tables.py", *header]
    d = len(t.basis)
    lines.append(f"dim {d}")
    for i in range(d):
        lines.append(f"basis {i} {t.names[i]} {t.degrees[i]} {t.classes[i]}")
    for i in range(d):
        for j in range(i + 1, d):
            br = t.basis[i] * t.basis[j] - t.basis[j] * t.basis[i]
            for k, c in enumerate(t.coords(br)):
                if c != 0:
                    lines.append(f"bracket {i} {j} {k} {fmt(c)}")
    for i in range(d):
        for j in range(i, d):
            c = (t.basis[i] * t.basis[j]).trace()
            if c != 0:
                lines.append(f"form {i} {j} {fmt(c)}")
    for j in range(d):
        for i, c in enumerate(t.coords(sigma(t.basis[j]))):
            if c != 0:
                lines.append(f"sigma {i} {j} {fmt(c)}")
    for i, row in enumerate(cartan):
        lines.append("cartan " + " ".join(str(x) for x in row))
    lines.append("kac " + " ".join(str(x) for x in kac))
    lines.append("dual_kac " + " ".join(str(x) for x in dual_kac))
    for kind in ("e", "f", "h"):
        for i, terms in enumerate(chevalley[kind]):
            lines.append(f"chevalley {kind} {i} {t.loop_vec(terms)}")
    lines.append(f"e {t.vec(e)}")
    lines.append(f"f {t.vec(f)}")
    lines.append(f"rho {t.vec(rho)}")
    lines.append(f"cyclic_top {t.vec(top)}")
    lines.append("exponents " + " ".join(str(m) for m in exponents))
    for m, terms in zip(exponents, heis):
        lines.append(f"heisenberg {m} {t.loop_vec(terms)}")
    for gname, vecs in gauges:
        lines.append(f"gauge {gname} " + " ; ".join(t.vec(v) for v in vecs))
    Path(path).write_text("\n".join(lines) + "\n")


def a1():
    E, F = unit(2, 0, 1), unit(2, 1, 0)
    H = E * F - F * E
    t = Table("A1_1", [E, H, F], ["E", "H", "F"], [1, 0, -1], [0, 0, 0], 1)
    lam = [(E, 0), (F, 1)]
    chev = {
        "e": [[(F, 1)], [(E, 0)]],
        "f": [[(E, -1)], [(F, 0)]],
        "h": [[(-H, 0)], [(H, 0)]],
    }
    header = ["type A1_1", "label A_1^(1)", "rank 1", "twist 1", "coxeter 2", "dual_coxeter 2", "order 1"]
    return t, dict(header=header, sigma=lambda x: x, chevalley=chev, e=E, f=F / 2, rho=H / 2, top=F,
                   exponents=[1], heis=[lam], gauges=[("lowest", [F / 2])],
                   cartan=[[2, -2], [-2, 2]], kac=[1, 1], dual_kac=[1, 1])


def a2():
    e = lambda i, j: unit(3, i, j)
    H1 = e(0, 0) - e(1, 1)
    H2 = e(1, 1) - e(2, 2)
    basis = [e(0, 1), e(1, 2), e(0, 2), H1, H2, e(1, 0), e(2, 1), e(2, 0)]
    names = ["E12", "E23", "E13", "H1", "H2", "E21", "E32", "E31"]
    t = Table("A2_1", basis, names, [1, 1, 2, 0, 0, -1, -1, -2], [0] * 8, 1)
    ee = e(0, 1) + e(1, 2)
    ff = e(1, 0) + e(2, 1)
    rho = sp.diag(1, 0, -1)
    # Lambda = ee + lambda E31; Lambda^2 = E13 + lambda (E21 + E32).
    lam1 = [(ee, 0), (e(2, 0), 1)]
    lam2 = [(e(0, 2), 0), (ff, 1)]
    chev = {
        "e": [[(e(2, 0), 1)], [(e(0, 1), 0)], [(e(1, 2), 0)]],
        "f": [[(e(0, 2), -1)], [(e(1, 0), 0)], [(e(2, 1), 0)]],
        "h": [[(e(2, 2) - e(0, 0), 0)], [(H1, 0)], [(H2, 0)]],
    }
    header = ["type A2_1", "label A_2^(1)", "rank 2", "twist 1", "coxeter 3", "dual_coxeter 3", "order 1"]
    cartan = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    return t, dict(header=header, sigma=lambda x: x, chevalley=chev, e=ee, f=ff, rho=rho, top=e(2, 0),
                   exponents=[1, 2], heis=[lam1, lam2],
                   gauges=[("lowest", [ff, e(2, 0)]), ("alt", [e(1, 0), e(2, 0)])],
                   cartan=cartan, kac=[1, 1, 1], dual_kac=[1, 1, 1])


def a2_twisted():
    e = lambda i, j: unit(3, i, j)
    A = sp.Matrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    sigma = lambda x: -A * x.T * A.inv()
    x = [
        e(0, 1) + e(1, 2),            # even, 1
        e(0, 1) - e(1, 2),            # odd, 1
        e(0, 2),                      # odd, 2
        sp.diag(1, 0, -1),            # even, 0
        sp.diag(1, -2, 1),            # odd, 0
        e(1, 0) + e(2, 1),            # even, -1
        e(1, 0) - e(2, 1),            # odd, -1
        e(2, 0),                      # odd, -2
    ]
    names = ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"]
    degrees = [1, 1, 2, 0, 0, -1, -1, -2]
    classes = [0, 1, 1, 0, 1, 0, 1, 1]
    for v, c in zip(x, classes):
        assert sigma(v) == (v if c == 0 else -v)
    t = Table("A2_2", x, names, degrees, classes, 2)
    lam1 = [(x[0], 0), (x[7], 1)]
    # Lambda^3 = lambda * I, so Lambda_5 = Lambda^5 = lambda * Lambda^2 = lambda E13 + lambda^2 (E21 + E32).
    lam5 = [(x[2], 1), (x[5], 2)]
    chev = {
        "e": [[(x[7], 1)], [(x[0], 0)]],
        "f": [[(x[2], -1)], [(2 * x[5], 0)]],
        "h": [[(-x[3], 0)], [(2 * x[3], 0)]],
    }
    header = ["type A2_2", "label A_2^(2)", "rank 1", "twist 2", "coxeter 3", "dual_coxeter 3", "order 2"]
    return t, dict(header=header, sigma=sigma, chevalley=chev, e=x[0], f=x[5], rho=x[3], top=x[7],
                   exponents=[1, 5], heis=[lam1, lam5], gauges=[("lowest", [x[5]])],
                   cartan=[[2, -1], [-4, 2]], kac=[1, 2], dual_kac=[2, 1])


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/algebras")
    out.mkdir(parents=True, exist_ok=True)
    for build in (a1, a2, a2_twisted):
        t, kw = build()
        emit(out / f"{t.name}.txt", t, **kw)
        print("wrote", out / f"{t.name}.txt")


if __name__ == "__main__":
    main()
