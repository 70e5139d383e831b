"""Pure-Python word rewriting kernel.

Words are ``bytes``: generator i is letter 2*i, its inverse 2*i+1, so
``c ^ 1`` inverts a letter.  The search treats words cyclically (a word is
trivial iff any cyclic conjugate is), keeping each state as its least
rotation.
"""

from __future__ import annotations

import heapq


def free_reduce(w: bytes) -> bytes:
    out = bytearray()
    for c in w:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return bytes(out)


def cyclic_reduce(w: bytes) -> bytes:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1] ^ 1:
        i += 1
        j -= 1
    return w[i:j]


def least_rotation(w: bytes) -> bytes:
    if len(w) < 2:
        return w
    doubled = w + w
    n = len(w)
    return min(doubled[i:i + n] for i in range(n))


def search(start: bytes, rules: list, max_len: int, budget: int) -> tuple[bool, int]:
    """Best-first search for the empty word; returns (found, visited)."""
    by_first: dict[int, list[tuple[bytes, bytes]]] = {}
    for piece, repl in rules:
        by_first.setdefault(piece[0], []).append((piece, repl))
    w0 = least_rotation(cyclic_reduce(start))
    if not w0:
        return True, 1
    seen = {w0}
    heap = [(len(w0), 0, w0)]
    tick = 1
    while heap:
        _, _, w = heapq.heappop(heap)
        n = len(w)
        doubled = w + w
        for p in range(n):
            cands = by_first.get(w[p])
            if not cands:
                continue
            rot = doubled[p:p + n]
            for piece, repl in cands:
                k = len(piece)
                if k > n or rot[:k] != piece:
                    continue
                nxt = cyclic_reduce(repl + rot[k:])
                if not nxt:
                    return True, len(seen)
                if len(nxt) > max_len:
                    continue
                nxt = least_rotation(nxt)
                if nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) >= budget:
                    return False, len(seen)
                heapq.heappush(heap, (len(nxt), tick, nxt))
                tick += 1
    return False, len(seen)
