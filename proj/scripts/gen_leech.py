#!/usr/bin/env python3
"""Generate the Leech lattice Gram matrix shipped in data/leech.json.

Construction: the lattice in (1/sqrt 8) Z^24 generated by 2c for extended
Golay codewords c, 4(e_i +- e_j), and (-3, 1^23).  The generator set is
reduced to a basis by integer row reduction and then LLL-reduced so that
Fincke-Pohst enumeration of the first shells is cheap.
"""
import itertools
import json
import sys
from fractions import Fraction


def golay_code():
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
    rows = []
    for s in range(12):
        v = [0] * 23
        for i, b in enumerate(g):
            if b:
                v[(i + s) % 23] = 1
        v.append(sum(v) % 2)
        rows.append(v)
    words = set()
    for mask in range(1 << 12):
        w = [0] * 24
        for i in range(12):
            if mask >> i & 1:
                w = [(a + b) % 2 for a, b in zip(w, rows[i])]
        words.add(tuple(w))
    dist = {}
    for w in words:
        dist[sum(w)] = dist.get(sum(w), 0) + 1
    assert dist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, dist
    return rows


def hermite_rows(gens):
    """Integer row echelon form; returns a basis of the Z-span."""
    m = [list(r) for r in gens]
    n = len(m[0])
    basis = []
    for col in range(n):
        while True:
            nz = [r for r in m if r[col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            m.remove(piv)
            rest = []
            done = True
            for r in m:
                if r[col] != 0:
                    q = r[col] // piv[col]
                    r = [a - q * b for a, b in zip(r, piv)]
                    if r[col] != 0:
                        done = False
                if any(r):
                    rest.append(r)
            m = rest
            if done:
                basis.append(piv)
                break
            m.append(piv)
    return basis


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lll(b, delta=Fraction(99, 100)):
    b = [list(r) for r in b]
    n = len(b)

    def gso():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / dot(bs[j], bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def main():
    gens = [[2 * x for x in c] for c in golay_code()]
    for i in range(23):
        v = [0] * 24
        v[i], v[i + 1] = 4, -4
        gens.append(v)
    v = [0] * 24
    v[0], v[1] = 4, 4
    gens.append(v)
    gens.append([-3] + [1] * 23)
    basis = hermite_rows(gens)
    assert len(basis) == 24
    basis = lll(basis)
    gram = [[dot(a, b) for b in basis] for a in basis]
    for row in gram:
        for x in row:
            assert x % 8 == 0
    gram = [[x // 8 for x in row] for row in gram]
    assert all(gram[i][i] % 2 == 0 for i in range(24))
    doc = {"name": "leech", "n": 24,
           "gram": [[str(x) for x in row] for row in gram]}
    json.dump(doc, sys.stdout, indent=None)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
