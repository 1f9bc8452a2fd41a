#!/usr/bin/env python3
"""Regenerate the committed graph6 fixtures under crates/socode/data/.

Each graph is built from a classical construction, checked against its
expected intersection array, and written in graph6 format. The Rust test
suite re-verifies every fixture independently.
"""
import itertools
import sys
from pathlib import Path

import networkx as nx
import numpy as np

OUT = Path(__file__).resolve().parent.parent / "crates" / "socode" / "data"


def intersection_array(g):
    n = g.number_of_nodes()
    dist = dict(nx.all_pairs_shortest_path_length(g))
    d = max(max(row.values()) for row in dist.values())
    b, c = [], []
    for i in range(d + 1):
        bs, cs = set(), set()
        for v in g.nodes:
            for w in g.nodes:
                if dist[v][w] != i:
                    continue
                nb = g.neighbors(w)
                nb = list(nb)
                bs.add(sum(1 for u in nb if dist[v][u] == i + 1))
                cs.add(sum(1 for u in nb if dist[v][u] == i - 1))
        if len(bs) != 1 or len(cs) != 1:
            return None
        b.append(bs.pop())
        c.append(cs.pop())
    return b[:-1], c[1:]


# --- Doro graph: sublines PG(1,4) of PG(1,16), adjacent when disjoint ---------

def gf16():
    exp = [0] * 30
    log = [0] * 16
    x = 1
    for i in range(15):
        exp[i] = exp[i + 15] = x
        log[x] = i
        x <<= 1
        if x & 0x10:
            x ^= 0x13
    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return exp[log[a] + log[b]]
    def inv(a):
        return exp[(15 - log[a]) % 15]
    return exp, mul, inv


def doro():
    exp, mul, inv = gf16()
    INF = 16
    base = frozenset([0, 1, exp[5], exp[10], INF])

    def mobius(a, b, c, d, z):
        if z == INF:
            return INF if c == 0 else mul(a, inv(c))
        num = mul(a, z) ^ b
        den = mul(c, z) ^ d
        if den == 0:
            return INF
        return mul(num, inv(den))

    lines = set()
    for a, b, c, d in itertools.product(range(16), repeat=4):
        if mul(a, d) ^ mul(b, c) == 0:
            continue
        lines.add(frozenset(mobius(a, b, c, d, z) for z in base))
    lines = sorted(sorted(s) for s in lines)
    assert len(lines) == 68
    g = nx.Graph()
    g.add_nodes_from(range(68))
    for i, j in itertools.combinations(range(68), 2):
        if not set(lines[i]) & set(lines[j]):
            g.add_edge(i, j)
    return g


# --- Golay code, S(3,6,22), Gewirtz and Higman-Sims ----------------------------

def golay_octads():
    gpoly = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
    rows = []
    for s in range(12):
        r = [0] * 24
        for i, bit in enumerate(gpoly):
            r[s + i] = bit
        r[23] = sum(r[:23]) % 2
        rows.append(r)
    rows = np.array(rows, dtype=np.int64)
    octads = []
    for m in range(1, 1 << 12):
        coeffs = np.array([(m >> i) & 1 for i in range(12)], dtype=np.int64)
        w = coeffs @ rows % 2
        wt = int(w.sum())
        assert wt in (8, 12, 16, 24), wt
        if wt == 8:
            octads.append(frozenset(np.nonzero(w)[0].tolist()))
    assert len(octads) == 759
    return octads


def hexads():
    blocks = [o - {22, 23} for o in golay_octads() if 22 in o and 23 in o]
    assert len(blocks) == 77
    return sorted(sorted(b) for b in blocks)


def gewirtz():
    blocks = [b for b in hexads() if 21 not in b]
    assert len(blocks) == 56
    g = nx.Graph()
    g.add_nodes_from(range(56))
    for i, j in itertools.combinations(range(56), 2):
        if not set(blocks[i]) & set(blocks[j]):
            g.add_edge(i, j)
    return g


def higman_sims():
    blocks = hexads()
    g = nx.Graph()
    g.add_nodes_from(range(100))
    for p in range(22):
        g.add_edge(0, 1 + p)
    for bi, b in enumerate(blocks):
        for p in b:
            g.add_edge(1 + p, 23 + bi)
    for i, j in itertools.combinations(range(77), 2):
        if not set(blocks[i]) & set(blocks[j]):
            g.add_edge(23 + i, 23 + j)
    return g


# --- Foster graph --------------------------------------------------------------

def foster():
    return nx.LCF_graph(90, [17, -9, 37, -37, 9, -17], 15)


# --- Split Cayley hexagon H(3): points and lines of Q(6,3) ---------------------

def gh33():
    q = 3
    def normalize(v):
        for x in v:
            if x % q:
                inv = pow(x, q - 2, q)
                return tuple((y * inv) % q for y in v)
        return None

    pts = set()
    for v in itertools.product(range(q), repeat=7):
        if not any(v):
            continue
        if (v[0] * v[4] + v[1] * v[5] + v[2] * v[6] - v[3] * v[3]) % q == 0:
            pts.add(normalize(v))
    pts = sorted(pts)
    assert len(pts) == 364
    index = {p: i for i, p in enumerate(pts)}

    def pl(x, y, i, j):
        return (x[i] * y[j] - x[j] * y[i]) % q

    def bil(x, y):
        return (x[0] * y[4] + x[4] * y[0] + x[1] * y[5] + x[5] * y[1]
                + x[2] * y[6] + x[6] * y[2] - 2 * x[3] * y[3]) % q

    lines = set()
    for a, b in itertools.combinations(pts, 2):
        if bil(a, b) != 0:
            continue
        conds = [
            (pl(a, b, 1, 2), pl(a, b, 3, 4)),
            (pl(a, b, 5, 4), pl(a, b, 3, 2)),
            (pl(a, b, 2, 0), pl(a, b, 3, 5)),
            (pl(a, b, 6, 5), pl(a, b, 3, 0)),
            (pl(a, b, 0, 1), pl(a, b, 3, 6)),
            (pl(a, b, 4, 6), pl(a, b, 3, 1)),
        ]
        if all(x == y for x, y in conds):
            span = set()
            for s, t in itertools.product(range(q), repeat=2):
                if s == 0 and t == 0:
                    continue
                v = tuple((s * a[i] + t * b[i]) % q for i in range(7))
                span.add(normalize(v))
            lines.add(frozenset(index[p] for p in span))
    lines = sorted(sorted(l) for l in lines)
    assert len(lines) == 364, len(lines)
    g = nx.Graph()
    g.add_nodes_from(range(728))
    for li, l in enumerate(lines):
        for p in l:
            g.add_edge(p, 364 + li)
    return g


EXPECTED = {
    "doro": ([12, 10, 3], [1, 3, 8]),
    "gewirtz": ([10, 9], [1, 2]),
    "higman_sims": ([22, 21], [1, 6]),
    "foster": ([3, 2, 2, 2, 2, 1, 1, 1], [1, 1, 1, 1, 2, 2, 2, 3]),
    "gh33": ([4, 3, 3, 3, 3, 3], [1, 1, 1, 1, 1, 4]),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    builders = {
        "doro": doro,
        "gewirtz": gewirtz,
        "higman_sims": higman_sims,
        "foster": foster,
        "gh33": gh33,
    }
    for name, build in builders.items():
        g = build()
        arr = intersection_array(g)
        if arr is None or (list(arr[0]), list(arr[1])) != EXPECTED[name]:
            sys.exit(f"{name}: unexpected intersection array {arr}")
        data = nx.to_graph6_bytes(g, header=False).decode().strip()
        (OUT / f"{name}.g6").write_text(data + "\n")
        print(f"{name}: n={g.number_of_nodes()} array={arr}")


if __name__ == "__main__":
    main()
