"""Integer Smith normal form and abelian invariants."""

from __future__ import annotations


def smith_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form."""
    a = [list(r) for r in rows if any(r)]
    m, n = len(a), ncols
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if dirty:
                # move the smallest remainder into the pivot slot and retry
                best = min(((abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]),
                           default=None)
                bestc = min(((abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]),
                            default=None)
                cand = min(x for x in (best, bestc) if x is not None)
                _, i, j = cand
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for r in a:
                        r[t], r[j] = r[j], r[t]
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row in so its entry becomes a remainder
            i = bad[0]
            for j in range(t, n):
                a[t][j] += a[i][j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelian_invariants(rows: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """(torsion coefficients > 1, free rank) of Z^ncols / rowspace."""
    diag = smith_diagonal(rows, ncols)
    return [d for d in diag if d > 1], ncols - len(diag)
