"""Seeded random edge-separated CLTTF graphs for property testing.

Graphs are grown by gluing small 2-connected triangle-free blocks (cycles of
length 4-6, and K_{2,3}) onto existing edges.  Gluing along an edge keeps the
graph triangle-free and free of separating vertices, and every glued edge
becomes a separating edge.  Copies of the same block are sometimes hung on
one edge to produce symmetric graphs with nontrivial Iso groups.
"""

from __future__ import annotations

import random

from .graph import LabeledGraph, edge_key, validate_clttf

LABELS = (3, 3, 3, 5, 4, 6)


def _cycle_block(length: int) -> tuple[int, list[tuple[int, int]]]:
    # vertices 0 and 1 are the glue edge; 0-1 is an edge of the cycle
    edges = [(i, (i + 1) % length) for i in range(length)]
    return length, edges


def _k23_block() -> tuple[int, list[tuple[int, int]]]:
    # parts {0,2} and {1,3,4}; glue edge 0-1
    return 5, [(a, b) for a in (0, 2) for b in (1, 3, 4)]


def _block(rng: random.Random, room: int):
    options = [b for b in (4, 4, 5, 6) if b - 2 <= room]
    if room >= 3 and rng.random() < 0.15:
        return _k23_block()
    if not options:
        return None
    return _cycle_block(rng.choice(options))


def random_clttf(rng: random.Random, max_vertices: int = 12) -> LabeledGraph:
    """One random accepted graph with at most max_vertices vertices."""
    size, edges = _block(rng, max_vertices - 2) or _cycle_block(4)
    names = [f"v{i}" for i in range(size)]
    labels = {edge_key(names[a], names[b]): rng.choice(LABELS) for a, b in edges}
    counter = size
    recent = sorted(labels)
    while len(names) < max_vertices and rng.random() < 0.9:
        room = max_vertices - len(names)
        blk = _block(rng, room)
        if blk is None:
            break
        bsize, bedges = blk
        copies = 2 if rng.random() < 0.3 and 2 * (bsize - 2) <= room else 1
        # favour the newest block so chunk trees get deep
        s, t = rng.choice(recent if rng.random() < 0.6 else sorted(labels))
        if rng.random() < 0.5:
            s, t = t, s
        blk_labels = [rng.choice(LABELS) for _ in bedges]
        recent = []
        for _ in range(copies):
            local = {0: s, 1: t}
            for i in range(2, bsize):
                local[i] = f"v{counter}"
                names.append(local[i])
                counter += 1
            for (a, b), m in zip(bedges, blk_labels):
                k = edge_key(local[a], local[b])
                if k != edge_key(s, t):
                    labels[k] = m
                    recent.append(k)
    return LabeledGraph(names, labels)


def random_graphs(seed: int, count: int, max_vertices: int = 12) -> list[LabeledGraph]:
    """``count`` accepted graphs, reproducible from the seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_clttf(rng, rng.randint(4, max_vertices))
        if validate_clttf(g).ok:
            out.append(g)
    return out
