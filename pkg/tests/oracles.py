"""Independent reference computations used only by the tests."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product


@lru_cache(maxsize=None)
def catalan(k: int) -> int:
    """Catalan numbers by the convolution recursion."""
    if k == 0:
        return 1
    return sum(catalan(i) * catalan(k - 1 - i) for i in range(k))


def vandermonde_sign(rows: list[list[Fraction]]) -> int:
    """Sign of a determinant by Leibniz expansion (tiny matrices only)."""
    n = len(rows)

    def perm_sign(p):
        s = 1
        for i, j in combinations(range(n), 2):
            if p[i] > p[j]:
                s = -s
        return s

    from itertools import permutations

    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return (total > 0) - (total < 0)


def count_surjections(n: int, k: int) -> int:
    """Monotone surjections [n] -> [k], by brute force."""
    return sum(1 for m in combinations_with_replacement(range(k + 1), n + 1) if set(m) == set(range(k + 1)))


def monotone(a: int, b: int):
    return list(combinations_with_replacement(range(b + 1), a + 1))


def compose(g, f):
    return tuple(g[x] for x in f)


def brute_pushouts(b: int, c: int, f, g, max_d: int, max_m: int) -> list[tuple[int, tuple, tuple]]:
    """Every cocone (d, u, v) with d <= max_d satisfying the universal property up to [max_m]."""
    pairs = [{(p, q) for p in monotone(b, m) for q in monotone(c, m) if compose(p, f) == compose(q, g)}
             for m in range(max_m + 1)]
    out = []
    for d in range(max_d + 1):
        for u in monotone(b, d):
            for v in monotone(c, d):
                if compose(u, f) != compose(v, g):
                    continue
                ok = True
                for m in range(max_m + 1):
                    images = [(compose(r, u), compose(r, v)) for r in monotone(d, m)]
                    if len(set(images)) != len(images) or set(images) != pairs[m]:
                        ok = False
                        break
                if ok:
                    out.append((d, u, v))
    return out


def brute_pullback(a: int, f, g, b: int, c: int, u, v, max_m: int) -> bool:
    """Universal property of a pullback square in the simplex category, by enumeration."""
    for m in range(max_m + 1):
        pairs = {(p, q) for p in monotone(m, b) for q in monotone(m, c) if compose(u, p) == compose(v, q)}
        images = [(compose(f, r), compose(g, r)) for r in monotone(m, a)]
        if len(set(images)) != len(images) or set(images) != pairs:
            return False
    return True


def partial_monoid_arrays(elements, unit, mult, n: int) -> int:
    """Count arrays (m_ij) by filling every entry and testing all triangle constraints."""
    pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    count = 0
    for vals in product(elements, repeat=len(pairs)):
        m = dict(zip(pairs, vals))
        for i in range(n + 1):
            m[(i, i)] = unit
        ok = True
        for i, j, k in combinations(range(n + 1), 3):
            prod = mult.get((m[(i, j)], m[(j, k)]))
            if prod is None or prod != m[(i, k)]:
                ok = False
                break
        if ok:
            count += 1
    return count


def gl_order(k: int, p: int) -> int:
    out = 1
    for i in range(k):
        out *= p ** k - p ** i
    return out


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den
