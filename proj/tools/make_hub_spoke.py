#!/usr/bin/env python3
"""Generate the synthetic hub-and-spoke benchmark graph in data/.

Produces a connected 235-vertex, 1297-edge network shaped like an airline
route map: a handful of high-degree hubs spread over a map rectangle, spoke
vertices clustered around their home hub, dense hub-hub trunk routes, and a
mix of long-haul and regional point-to-point links. Deterministic for a
fixed seed; the checked-in files were made with the defaults below.

Usage: python3 tools/make_hub_spoke.py [outdir]
"""

import math
import random
import sys

N = 235
M = 1297
SEED = 20240901

HUBS = [
    (120.0, 420.0),
    (260.0, 180.0),
    (420.0, 470.0),
    (540.0, 120.0),
    (640.0, 330.0),
    (780.0, 480.0),
    (860.0, 150.0),
    (950.0, 380.0),
]


def main() -> None:
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data"
    rng = random.Random(SEED)
    n_hubs = len(HUBS)

    positions = list(HUBS)
    home = list(range(n_hubs))  # hub i belongs to itself
    for v in range(n_hubs, N):
        h = rng.randrange(n_hubs)
        hx, hy = HUBS[h]
        r = abs(rng.gauss(0.0, 55.0)) + 8.0
        a = rng.uniform(0.0, 2.0 * math.pi)
        positions.append((hx + r * math.cos(a), hy + r * math.sin(a)))
        home.append(h)

    edges = set()

    def add(u: int, v: int) -> bool:
        if u == v:
            return False
        key = (min(u, v), max(u, v))
        if key in edges:
            return False
        edges.add(key)
        return True

    # Trunk routes between every hub pair, then one spoke per outlying vertex.
    for i in range(n_hubs):
        for j in range(i + 1, n_hubs):
            add(i, j)
    for v in range(n_hubs, N):
        add(v, home[v])

    # Fill the remaining budget with long-haul links to foreign hubs,
    # point-to-point links between clusters, and regional links inside one.
    spokes = list(range(n_hubs, N))
    while len(edges) < M:
        u = rng.choice(spokes)
        kind = rng.random()
        if kind < 0.55:
            add(u, rng.choice([h for h in range(n_hubs) if h != home[u]]))
        elif kind < 0.80:
            v = rng.choice(spokes)
            if home[v] != home[u]:
                add(u, v)
        else:
            v = rng.choice(spokes)
            if home[v] == home[u]:
                add(u, v)

    assert len(edges) == M
    rows = sorted(edges)

    with open(f"{outdir}/hub_spoke.txt", "w") as f:
        f.write(f"%n {N}\n")
        for u, v in rows:
            f.write(f"{u} {v}\n")
    with open(f"{outdir}/hub_spoke.xy", "w") as f:
        for v, (x, y) in enumerate(positions):
            f.write(f"{v} {x:.6f} {y:.6f}\n")
    print(f"wrote {outdir}/hub_spoke.txt ({N} vertices, {M} edges) and {outdir}/hub_spoke.xy")


if __name__ == "__main__":
    main()
