"""Cellular chain complexes and their integral homology.

Boundary matrices are stored sparsely, column by column: ``∂_d[col]`` is a
``{row: value}`` dict, where columns index the cells of dimension ``d``
and rows the cells of dimension ``d - 1`` (both in enumeration order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .boundary import CoverFinder
from .shapes import DoublePartition, GrassmannianSpec, count_cells

DEFAULT_CELL_CAP = 5000

SparseColumns = list[dict[int, int]]


class CellCapExceeded(RuntimeError):
    pass


@dataclass
class ChainComplex:
    spec: GrassmannianSpec
    basis: dict[int, list[DoublePartition]]
    boundaries: dict[int, SparseColumns] = field(default_factory=dict)
    corrections: int = 0
    extra_covers: int = 0

    @property
    def top(self) -> int:
        return max(self.basis) if self.basis else -1

    def dims(self) -> list[int]:
        return [len(self.basis.get(d, [])) for d in range(self.top + 1)]

    def boundary(self, d: int) -> SparseColumns:
        """``∂_d : C_d → C_{d-1}`` (empty columns when ``d`` is out of range)."""
        if d in self.boundaries:
            return self.boundaries[d]
        return [{} for _ in self.basis.get(d, [])]

    def dense(self, d: int) -> list[list[int]]:
        rows = len(self.basis.get(d - 1, []))
        cols = self.boundary(d)
        out = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def entries(self):
        for d in sorted(self.boundaries):
            for j, col in enumerate(self.boundaries[d]):
                for i, v in sorted(col.items()):
                    yield d, i, j, v

    def check_squares_zero(self) -> None:
        """Raise ``AssertionError`` unless ``∂_{d-1} ∂_d = 0`` for every ``d``."""
        for d in range(2, self.top + 1):
            inner = self.boundary(d - 1)
            for j, col in enumerate(self.boundary(d)):
                acc: dict[int, int] = {}
                for mid, v in col.items():
                    for low, u in inner[mid].items():
                        acc[low] = acc.get(low, 0) + u * v
                bad = {r: x for r, x in acc.items() if x}
                if bad:
                    cell = self.basis[d][j]
                    raise AssertionError(f"∂∂ ≠ 0 on {cell}: {bad}")

    def check_entries(self) -> None:
        for d, i, j, v in self.entries():
            if v not in (-2, 2):
                raise AssertionError(f"boundary entry {v} at d={d} ({i},{j}) is not ±2")

    def to_dict(self, with_cells: bool = False) -> dict:
        out = {
            "spec": self.spec.to_dict(),
            "dims": self.dims(),
            "boundaries": [
                {"d": d, "entries": [[i, j, v] for j, col in enumerate(cols) for i, v in sorted(col.items())]}
                for d, cols in sorted(self.boundaries.items())
            ],
        }
        if with_cells:
            out["cells"] = {
                str(d): [c.to_dict(self.spec) for c in cells] for d, cells in sorted(self.basis.items())
            }
        return out

    def to_json(self, with_cells: bool = False) -> str:
        return json.dumps(self.to_dict(with_cells))


def build_complex(spec: GrassmannianSpec, cap: int = DEFAULT_CELL_CAP, words=None, check: bool = True) -> ChainComplex:
    """Assemble the cellular chain complex of ``spec``.

    ``words`` optionally maps each cell to a reduced word; the cell is then
    oriented by that word instead of its row-reading word.
    """
    total = count_cells(spec)
    if total > cap:
        raise CellCapExceeded(f"{spec.label()} has {total} cells, above the cap of {cap}")
    finder = CoverFinder(spec, words=words)
    basis: dict[int, list[DoublePartition]] = {}
    for c in finder.cells:
        basis.setdefault(c.size, []).append(c)
    for d in range(max(basis) + 1):
        basis.setdefault(d, [])
    index = {c: i for cells in basis.values() for i, c in enumerate(cells)}
    boundaries = {}
    for d in range(1, max(basis) + 1):
        cols = []
        for cell in basis[d]:
            col = {}
            for cov in finder.covers(cell):
                if cov.c:
                    col[index[cov.smaller]] = cov.c
            cols.append(col)
        boundaries[d] = cols
    cx = ChainComplex(spec, basis, boundaries, finder.corrections, finder.extra)
    if check:
        cx.check_squares_zero()
        cx.check_entries()
    return cx


# Smith normal form

def _chain(diagonal: list[int]) -> list[int]:
    """Turn nonzero diagonal entries into invariant factors ``d_1 | d_2 | …``."""
    d = sorted(abs(x) for x in diagonal if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def smith_normal_form(matrix, nrows: int | None = None) -> tuple[list[int], int]:
    """Invariant factors and rank of an integer matrix.

    ``matrix`` is either a dense list of rows or sparse columns
    (a list of ``{row: value}`` dicts, in which case ``nrows`` may be
    given).  Elimination always pivots on an entry of least absolute
    value in the active row or column, with Python integers throughout.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    if matrix and isinstance(matrix[0], dict):
        for j, col in enumerate(matrix):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
                    cols.setdefault(j, {})[i] = v
    else:
        for i, row in enumerate(matrix):
            for j, v in enumerate(row):
                if v:
                    rows.setdefault(i, {})[j] = v
                    cols.setdefault(j, {})[i] = v
    if not rows:
        return [], 0
    content = 0
    for r in rows.values():
        for v in r.values():
            content = gcd(content, v)
    if content > 1:
        for r in rows.values():
            for j in r:
                r[j] //= content
        for c in cols.values():
            for i in c:
                c[i] //= content

    def set_entry(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, {})[i] = v
        else:
            rows[i].pop(j, None)
            cols[j].pop(i, None)
            if not rows[i]:
                del rows[i]
            if not cols[j]:
                del cols[j]

    def add_row(src, dst, q):
        # row dst -= q * row src
        for j, v in list(rows[src].items()):
            set_entry(dst, j, rows.get(dst, {}).get(j, 0) - q * v)

    def add_col(src, dst, q):
        for i, v in list(cols[src].items()):
            set_entry(i, dst, cols.get(dst, {}).get(i, 0) - q * v)

    def nearest_quotient(a, b):
        q, rest = divmod(a, b)
        if 2 * abs(rest) > abs(b):
            q += 1
        return q

    diagonal = []
    while rows:
        # short rows first keeps fill-in low on these very sparse matrices;
        # a row survives a pass when the pivot wandered off it, hence the outer loop
        for start in sorted(rows, key=lambda i: len(rows[i])):
            if start not in rows:
                continue
            r = start
            c = min(rows[r], key=lambda j: (abs(rows[r][j]), len(cols[j])))
            while True:
                p = rows[r][c]
                for i in [i for i in cols[c] if i != r]:
                    add_row(r, i, nearest_quotient(cols[c][i], p))
                if len(cols[c]) > 1:
                    r = min((i for i in cols[c]), key=lambda i: abs(cols[c][i]))
                    continue
                for j in [j for j in rows[r] if j != c]:
                    add_col(c, j, nearest_quotient(rows[r][j], p))
                if len(rows[r]) > 1:
                    c = min((j for j in rows[r]), key=lambda j: abs(rows[r][j]))
                    continue
                break
            diagonal.append(rows[r][c])
            set_entry(r, c, 0)
    factors = _chain(diagonal)
    return [content * f for f in factors], len(factors)


def naive_smith_normal_form(matrix: list[list[int]]) -> tuple[list[int], int]:
    """Textbook dense elimination; slow, kept as an independent check."""
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    t = 0
    factors = []
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                _, i, j = min((abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                              if a[i][j] and (i == t or j == t))
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]]
            if not bad:
                break
            i, _ = bad[0]
            a[t] = [x + y for x, y in zip(a[t], a[i])]
        factors.append(abs(a[t][t]))
        t += 1
    return factors, len(factors)


# Homology

@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z"] * self.betti if self.betti <= 3 else [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"d": self.degree, "betti": self.betti, "torsion": list(self.torsion)}


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def homology_of(cx: ChainComplex) -> list[HomologyGroup]:
    top = cx.top
    ranks = {}
    torsion = {}
    for d in range(1, top + 1):
        factors, rank = smith_normal_form(cx.boundary(d), len(cx.basis[d - 1]))
        ranks[d] = rank
        torsion[d - 1] = tuple(f for f in factors if f > 1)
    groups = []
    for d in range(top + 1):
        betti = len(cx.basis[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        tors = torsion.get(d, ())
        odd = [t for t in tors if not _is_power_of_two(t)]
        if odd:
            raise AssertionError(f"torsion {odd} in degree {d} is not 2-primary")
        groups.append(HomologyGroup(d, betti, tors))
    _check_consistency(cx, groups)
    return groups


def _check_consistency(cx: ChainComplex, groups: list[HomologyGroup]) -> None:
    # every entry is even, so mod-2 homology has one class per cell
    for g in groups:
        below = len(groups[g.degree - 1].torsion) if g.degree else 0
        if g.betti + len(g.torsion) + below != len(cx.basis[g.degree]):
            raise AssertionError(f"mod-2 count mismatch in degree {g.degree}")
    euler_cells = sum((-1) ** d * n for d, n in enumerate(cx.dims()))
    euler_betti = sum((-1) ** g.degree * g.betti for g in groups)
    if euler_cells != euler_betti:
        raise AssertionError("Euler characteristic mismatch")


def homology(spec: GrassmannianSpec, cap: int = DEFAULT_CELL_CAP, words=None) -> list[HomologyGroup]:
    return homology_of(build_complex(spec, cap, words))


def homology_to_json(groups: list[HomologyGroup]) -> str:
    return json.dumps({"H": [g.to_dict() for g in groups]})
