"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from realgrass.shapes import GrassmannianSpec, is_minimal_representative
from realgrass.weyl import (
    all_elements,
    ambient_size,
    beta_sequence,
    generator_indices,
    length,
    positive_roots,
    reflection,
    simple_root,
)


def minimal_representatives(spec: GrassmannianSpec) -> set:
    """``W^(k)`` by filtering the whole group."""
    return {w for w in all_elements(spec.family, spec.n) if is_minimal_representative(spec, w)}


def bruhat_covers(spec: GrassmannianSpec, w) -> set:
    """Elements ``s_β w`` of ``W^(k)`` one step below ``w``."""
    out = set()
    for b in positive_roots(spec.family, spec.n):
        x = reflection(spec.family, b) * w
        if length(x) == length(w) - 1 and is_minimal_representative(spec, x):
            out.add(x)
    return out


# Matrix model of the split Lie algebra in its defining representation.
# Orientation signs are recomputed here with explicit matrix exponentials,
# independently of the signed-permutation shortcut used by the library.

def _labels(family, size):
    labels = list(range(1, size + 1)) + [-a for a in range(1, size + 1)]
    if family == "B":
        labels.append(0)
    return {x: i for i, x in enumerate(labels)}


def _zeros(m):
    return [[Fraction(0)] * m for _ in range(m)]


def _mul(a, b):
    m = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(m) if a[i][t]) for j in range(m)] for i in range(m)]


def _add(a, b, s=1):
    return [[x + s * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _scale(a, s):
    return [[s * x for x in row] for row in a]


def _exp(x):
    m = len(x)
    out = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    term = [row[:] for row in out]
    for k in range(1, 2 * m):
        term = _scale(_mul(term, x), Fraction(1, k))
        if not any(any(row) for row in term):
            break
        out = _add(out, term)
    return out


class LieModel:
    def __init__(self, family: str, n: int):
        self.family, self.n = family, n
        self.size = ambient_size(family, n)
        self.idx = _labels(family, self.size)
        self.m = len(self.idx)
        self.lift = {}
        self.lift_inv = {}
        for i in generator_indices(family, n):
            a = simple_root(family, n, i)
            e = self.vector(a)
            f = self.vector(-a)
            h = _add(_mul(e, f), _mul(f, e), -1)
            he = _add(_mul(h, e), _mul(e, h), -1)
            (r, c) = next((r, c) for r in range(self.m) for c in range(self.m) if e[r][c])
            f = _scale(f, Fraction(2) / (he[r][c] / e[r][c]))
            self.lift[i] = _mul(_mul(_exp(e), _exp(_scale(f, -1))), _exp(e))
            self.lift_inv[i] = _mul(_mul(_exp(_scale(e, -1)), _exp(f)), _exp(_scale(e, -1)))

    def vector(self, r):
        """Chevalley vector written out from scratch (same normalisation as the library)."""
        fam = self.family
        out = _zeros(self.m)

        def put(x, y, v):
            out[self.idx[x]][self.idx[y]] += v

        sup = sorted(r.support().items())
        if len(sup) == 1:
            (a, c), = sup
            if fam == "C":
                put(a, -a, 1) if c > 0 else put(-a, a, 1)
            elif c > 0:
                put(a, 0, 1)
                put(0, -a, -2)
            else:
                put(0, a, 2)
                put(-a, 0, -1)
            return out
        (a, ca), (b, cb) = sup
        if ca == -cb:
            x, y = (b, a) if cb > 0 else (a, b)
            put(x, y, 1)
            put(-y, -x, -1)
        else:
            s = 1 if fam == "C" else -1
            if cb > 0:
                put(a, -b, 1)
                put(b, -a, s)
            else:
                put(-b, a, 1)
                put(-a, b, s)
        return out

    def orientation(self, word) -> int:
        betas = beta_sequence(self.family, self.n, word)
        g = [[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)]
        gi = [row[:] for row in g]
        sign = 1
        for j, b in zip(word, betas):
            y = _mul(_mul(g, self.vector(simple_root(self.family, self.n, j))), gi)
            x = self.vector(b)
            if y == x:
                pass
            elif y == _scale(x, -1):
                sign = -sign
            else:
                raise AssertionError("adjoint image is not ±X_β")
            g = _mul(g, self.lift[j])
            gi = _mul(self.lift_inv[j], gi)
        order = {r: i for i, r in enumerate(positive_roots(self.family, self.n))}
        ranks = [order[b] for b in betas]
        inv = sum(ranks[a] > ranks[c] for a in range(len(ranks)) for c in range(a + 1, len(ranks)))
        return sign * (-1) ** inv


@lru_cache(maxsize=None)
def lie_model(family: str, n: int) -> LieModel:
    return LieModel(family, n)
