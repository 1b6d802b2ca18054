"""Double partitions and half-shifted Young diagrams.

A cell of ``G/P`` is indexed by a double partition ``Λ = (α|λ)``: a top
partition ``α`` in a ``k × m`` rectangle (``m = n - k`` for B/C,
``n + 1 - k`` for D) and a strict bottom partition ``λ ⊆ (n, n-1, …, 1)``
with ``α_k >= ℓ(λ)``.  Type D cells also carry a tag 0, 1 or 2.

Type D with ``k = 1`` is the second spin node: its cells are those of
``k = 0`` carried across by the diagram automorphism that swaps ``s_0``
and ``s_1`` (see :func:`model_spec`).

Bottom rows are shifted ``i - 1`` units (B/C) or ``i`` units (D) into a
staircase; a top row ``p`` is *related* to the staircase column
``α_p + k - p + 1``.  The lengths of the columns (blank staircase boxes)
give back the one-line permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

from .weyl import SignedPermutation, act_on_root, ambient_size, check_family, simple_root, spin_twist

MAX_N = 64


@dataclass(frozen=True)
class GrassmannianSpec:
    family: str
    n: int
    k: int

    def __post_init__(self):
        check_family(self.family)
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValueError(f"rank n={self.n!r} out of range")
        if not isinstance(self.k, int) or not 0 <= self.k <= self.n - 1:
            raise ValueError(f"k={self.k!r} must satisfy 0 <= k <= n-1 (n={self.n})")

    @property
    def size(self) -> int:
        return ambient_size(self.family, self.n)

    @property
    def width(self) -> int:
        """Number of columns of the rectangle holding ``α``."""
        return self.size - self.k

    @property
    def twisted(self) -> bool:
        """True for type D, ``k = 1``, which is handled through ``k = 0``."""
        return self.family == "D" and self.k == 1

    @property
    def dimension(self) -> int:
        """Dimension of the manifold, ``|Π⁺| - |Π⁺_Θ|``."""
        n, k = self.n, model_spec(self).k
        if self.family == "D":
            # Θ = D_k × A_{n-k} inside D_{n+1}
            return n * (n + 1) - k * (k - 1) - (n + 1 - k) * (n - k) // 2
        # Θ = B_k × A_{n-k-1} inside B_n (same count for C)
        return n * n - k * k - (n - k) * (n - k - 1) // 2

    def label(self) -> str:
        if self.family == "C":
            return f"IG({self.n - self.k},{2 * self.n})"
        if self.family == "B":
            return f"OG({self.n - self.k},{2 * self.n + 1})"
        if self.twisted:
            # the other connected component of the maximal isotropic Grassmannian
            return f"OG({self.n + 1},{2 * self.n + 2})'"
        return f"OG({self.n + 1 - self.k},{2 * self.n + 2})"

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "k": self.k}


@dataclass(frozen=True, order=True)
class DoublePartition:
    alpha: tuple[int, ...] = ()
    lam: tuple[int, ...] = ()
    dtype: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam if x))

    @property
    def r(self) -> int:
        return len(self.lam)

    @property
    def size(self) -> int:
        return sum(self.alpha) + sum(self.lam)

    def __str__(self) -> str:
        a = ",".join(map(str, self.alpha))
        b = ",".join(map(str, self.lam))
        left, right = "(", ")"
        if self.dtype == 1:
            left = "["
        elif self.dtype == 2:
            right = "]"
        return f"{left}{a}|{b}{right}"

    def to_dict(self, spec: GrassmannianSpec) -> dict:
        return {
            "family": spec.family,
            "n": spec.n,
            "k": spec.k,
            "alpha": list(self.alpha),
            "lambda": list(self.lam),
            "dtype": self.dtype,
        }

    @classmethod
    def from_dict(cls, d: dict) -> tuple[GrassmannianSpec, "DoublePartition"]:
        spec = GrassmannianSpec(d["family"], d["n"], d["k"])
        lam = cls(tuple(d["alpha"]), tuple(d["lambda"]), d.get("dtype"))
        validate(spec, lam)
        return spec, lam

    def to_json(self, spec: GrassmannianSpec) -> str:
        return json.dumps(self.to_dict(spec))


def model_spec(spec: GrassmannianSpec) -> GrassmannianSpec:
    """The spec whose diagrams describe ``spec``.

    For type D the nodes ``α_0`` and ``α_1`` are exchanged by a diagram
    automorphism, so ``k = 1`` is modelled on ``k = 0`` and the permutations
    and words are twisted back with :func:`realgrass.weyl.spin_twist`.
    """
    return GrassmannianSpec("D", spec.n, 0) if spec.twisted else spec


def k0_dtype(r: int) -> int:
    # Type D with k = 0: the ±1 entry sits right after the barred block and
    # its sign is forced by parity, so the tag is forced too.
    return 1 if r % 2 == 0 else 2


def validate(spec: GrassmannianSpec, lam: DoublePartition) -> None:
    """Raise ``ValueError`` unless ``lam`` indexes a cell of ``spec``."""
    spec = model_spec(spec)
    a, b = lam.alpha, lam.lam
    if len(a) != spec.k:
        raise ValueError(f"alpha must have exactly k={spec.k} parts (pad with zeros), got {a}")
    if any(x < 0 for x in a) or any(a[i] < a[i + 1] for i in range(len(a) - 1)):
        raise ValueError(f"alpha {a} is not a partition")
    if a and a[0] > spec.width:
        raise ValueError(f"alpha {a} does not fit in a {spec.k}x{spec.width} rectangle")
    if any(b[i] <= b[i + 1] for i in range(len(b) - 1)):
        raise ValueError(f"lambda {b} is not strictly decreasing")
    if b and b[0] > spec.n:
        raise ValueError(f"lambda {b} exceeds the staircase (largest part {spec.n})")
    if spec.k and a[-1] < lam.r:
        raise ValueError(f"need alpha_k >= len(lambda), got {a[-1]} < {lam.r}")
    if spec.family != "D":
        if lam.dtype is not None:
            raise ValueError("dtype is only meaningful for family D")
        return
    if spec.k == 0:
        expected = k0_dtype(lam.r)
        if lam.dtype != expected:
            raise ValueError(f"for k=0 the D tag is forced: expected {expected}, got {lam.dtype}")
        return
    if a[-1] == lam.r:
        if lam.dtype != 0:
            raise ValueError(f"alpha_k == len(lambda) requires dtype 0, got {lam.dtype}")
    elif lam.dtype not in (1, 2):
        raise ValueError(f"alpha_k > len(lambda) requires dtype 1 or 2, got {lam.dtype}")


def is_valid(spec: GrassmannianSpec, lam: DoublePartition) -> bool:
    try:
        validate(spec, lam)
    except ValueError:
        return False
    return True


def _partitions_in_box(rows: int, width: int, floor: int = 0) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples of length ``rows`` with entries in ``[floor, width]``."""
    if rows == 0:
        yield ()
        return

    def rec(prefix, cap, left):
        if left == 0:
            yield tuple(prefix)
            return
        for x in range(cap, floor - 1, -1):
            prefix.append(x)
            yield from rec(prefix, x, left - 1)
            prefix.pop()

    yield from rec([], width, rows)


def strict_partitions(n: int, max_parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Strict partitions with parts at most ``n`` and at most ``max_parts`` parts."""
    top = n if max_parts is None else min(n, max_parts)
    for r in range(top + 1):
        for parts in combinations(range(n, 0, -1), r):
            yield parts


def enumerate_cells(spec: GrassmannianSpec) -> list[DoublePartition]:
    """All cells, sorted by dimension and then lexicographically."""
    spec = model_spec(spec)
    cells = []
    width = spec.width
    for b in strict_partitions(spec.n, None if spec.k == 0 else width):
        r = len(b)
        if spec.k == 0:
            dtype = k0_dtype(r) if spec.family == "D" else None
            cells.append(DoublePartition((), b, dtype))
            continue
        for a in _partitions_in_box(spec.k, width, floor=r):
            if spec.family != "D":
                cells.append(DoublePartition(a, b))
            elif a[-1] == r:
                cells.append(DoublePartition(a, b, 0))
            else:
                cells.append(DoublePartition(a, b, 1))
                cells.append(DoublePartition(a, b, 2))
    cells.sort(key=lambda c: (c.size, c))
    return cells


def cells_by_dimension(spec: GrassmannianSpec) -> dict[int, list[DoublePartition]]:
    out: dict[int, list[DoublePartition]] = {}
    for c in enumerate_cells(spec):
        out.setdefault(c.size, []).append(c)
    return out


def count_cells(spec: GrassmannianSpec) -> int:
    """Closed-form cell count ``|W| / |W_Θ|`` (no enumeration)."""
    from math import comb

    n, k = spec.n, spec.k
    if spec.family != "D":
        # |B_n| / (|B_k| · (n-k)!)
        return comb(n, k) * 2 ** (n - k)
    if k <= 1:
        # |D_{n+1}| / (n+1)!
        return 2 ** n
    # |D_{n+1}| / (|D_k| · (n+1-k)!)
    return comb(n + 1, k) * 2 ** (n + 1 - k)


@dataclass(frozen=True)
class HalfShiftedDiagram:
    """Box geometry and column bookkeeping of one cell."""

    spec: GrassmannianSpec
    cell: DoublePartition
    top: tuple[tuple[int, int], ...] = field(init=False)
    bottom: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        validate(self.spec, self.cell)
        object.__setattr__(self, "spec", model_spec(self.spec))
        top = tuple((i, j) for i, a in enumerate(self.cell.alpha, start=1) for j in range(1, a + 1))
        shift = 1 if self.spec.family == "D" else 0
        bottom = tuple(
            (i, j)
            for i, x in enumerate(self.cell.lam, start=1)
            for j in range(i + shift, i + shift + x)
        )
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @property
    def rows(self) -> int:
        """Rows (and columns) of the staircase."""
        return self.spec.size

    @cached_property
    def filled(self) -> frozenset[tuple[int, int]]:
        boxes = set(self.bottom)
        if self.spec.family == "D":
            # the shift leaves the diagonal box of each λ row filled
            boxes.update((i, i) for i in range(1, self.cell.r + 1))
        return frozenset(boxes)

    @cached_property
    def column_lengths(self) -> dict[int, int]:
        """Blank staircase boxes per column (column ``c`` holds rows ``1..c``)."""
        return {
            c: sum((i, c) not in self.filled for i in range(1, c + 1))
            for c in range(1, self.rows + 1)
        }

    @cached_property
    def related_columns(self) -> tuple[int, ...]:
        """``c_p = α_p + k - p + 1`` for ``p = 1..k``."""
        k = self.spec.k
        return tuple(a + k - p + 1 for p, a in enumerate(self.cell.alpha, start=1))

    @cached_property
    def nonrelated_columns(self) -> tuple[int, ...]:
        """Positive-length non-related columns, rightmost first (so ``q = 1`` comes first)."""
        rel = set(self.related_columns)
        cols = [c for c, x in self.column_lengths.items() if x > 0 and c not in rel]
        return tuple(sorted(cols, reverse=True))

    @cached_property
    def u(self) -> tuple[int, ...]:
        """Related column lengths ``(u_1, …, u_k)``, decreasing."""
        return tuple(self.column_lengths[c] for c in self.related_columns)

    @cached_property
    def v(self) -> tuple[int, ...]:
        """Non-related column lengths ``(v_1, v_2, …)``, decreasing."""
        return tuple(self.column_lengths[c] for c in self.nonrelated_columns)

    def related_index(self, length: int) -> int | None:
        """``p`` with ``u_p == length`` or ``None``."""
        return self.u.index(length) + 1 if length in self.u else None

    def nonrelated_index(self, length: int) -> int | None:
        return self.v.index(length) + 1 if length in self.v else None

    def removable_boxes(self) -> list[tuple[str, int, tuple[int, int]]]:
        """``(part, row, box)`` for every box whose removal leaves a valid cell."""
        return [(rem.kind, rem.t, rem.box) for rem, _ in enumerate_removals(self.spec, self.cell)]


def partition_to_permutation(spec: GrassmannianSpec, cell: DoublePartition) -> SignedPermutation:
    """The minimal coset representative ``w_Λ``, read off the column lengths."""
    if spec.twisted:
        return spin_twist(partition_to_permutation(model_spec(spec), cell))
    dia = HalfShiftedDiagram(spec, cell)
    lengths = dia.column_lengths
    k = spec.k
    rel = dia.related_columns
    related_part = [lengths[c] for c in sorted(rel)]
    if any(x <= 0 for x in related_part):
        raise ValueError(f"{cell}: related column of zero length")
    offset = 1 if spec.family == "D" else 0
    barred = [-(x + offset) for x in cell.lam]
    free = sorted(dia.nonrelated_columns)
    values = related_part + barred + [lengths[c] for c in free]
    if spec.family == "D":
        # the ±1 entry: type 2 fills the diagonal box of row r+1
        one = values.index(1)
        if cell.dtype == 2:
            values[one] = -1
        if sum(x < 0 for x in values) % 2:
            if k == 0:
                raise ValueError(f"{cell}: k=0 tag inconsistent with parity")
            values[0] = -values[0]
    return SignedPermutation(spec.family, tuple(values))


def is_minimal_representative(spec: GrassmannianSpec, w: SignedPermutation) -> bool:
    """``ℓ(w s_i) = ℓ(w) + 1`` for every simple reflection other than ``s_k``."""
    for i in range(spec.size):
        if i != spec.k and not act_on_root(w, simple_root(spec.family, spec.n, i)).is_positive():
            return False
    return True


def permutation_to_partition(spec: GrassmannianSpec, w: SignedPermutation) -> DoublePartition:
    """Inverse of :func:`partition_to_permutation` via ``α_i = u_i + i - k - 1 + d_i``."""
    if w.family != spec.family or w.n != spec.n:
        raise ValueError(f"{w} does not belong to the Weyl group of {spec.label()}")
    if not is_minimal_representative(spec, w):
        raise ValueError(f"{w} is not a minimal coset representative for k={spec.k}")
    if spec.twisted:
        return permutation_to_partition(model_spec(spec), spin_twist(w))
    k = spec.k
    vals = list(w.values)
    offset = 1 if spec.family == "D" else 0
    head, tail = vals[:k], vals[k:]
    if spec.family == "D" and head:
        head[0] = abs(head[0])
    lam = tuple(-x - offset for x in tail if x < 0 and -x - offset > 0)
    r = len(lam)
    u = head[::-1]
    alpha = []
    for i, ui in enumerate(u, start=1):
        d = sum(x + offset > ui for x in lam)
        alpha.append(ui + i - k - 1 + d)
    alpha = tuple(alpha)
    dtype = None
    if spec.family == "D":
        if k == 0:
            dtype = k0_dtype(r)
        elif abs(vals[0]) == 1:
            dtype = 0
        else:
            dtype = 1 if 1 in tail else 2
    cell = DoublePartition(alpha, lam, dtype)
    validate(spec, cell)
    if partition_to_permutation(spec, cell) != w:
        raise ValueError(f"{w} does not match its recovered partition {cell}")
    return cell


def reading_boxes(spec: GrassmannianSpec, cell: DoublePartition) -> list[tuple[str, int, int]]:
    """Boxes in row-reading order as ``(part, i, j)`` with part ``"alpha"`` or ``"lambda"``.

    Bottom rows ``r, …, 1`` come first, then top rows ``k, …, 1``; each row
    is read right to left.
    """
    dia = HalfShiftedDiagram(spec, cell)
    out = []
    for i in range(cell.r, 0, -1):
        out.extend(("lambda",) + box for box in sorted((b for b in dia.bottom if b[0] == i), reverse=True))
    for i in range(dia.spec.k, 0, -1):
        out.extend(("alpha",) + box for box in sorted((b for b in dia.top if b[0] == i), reverse=True))
    return out


def row_reading_word(spec: GrassmannianSpec, cell: DoublePartition) -> list[int]:
    """Generator indices of ``w_λ w_α``, each part read right-to-left, bottom row first."""
    if spec.twisted:
        return [{0: 1, 1: 0}.get(j, j) for j in row_reading_word(model_spec(spec), cell)]
    k, r = spec.k, cell.r
    fam, t = spec.family, cell.dtype

    def bottom_letter(i: int, j: int) -> int:
        if fam != "D":
            return j - i
        if j > i + 1:
            return j - i
        if t == 0:
            return 1 if i % 2 == 0 else 0
        return 1 if (i + r + t) % 2 else 0

    def top_letter(i: int, j: int) -> int:
        if fam == "D" and t in (1, 2) and k > 0 and (i, j) == (k, 1):
            return 1 if (r + t) % 2 else 0
        return j - i + k

    return [
        bottom_letter(i, j) if part == "lambda" else top_letter(i, j)
        for part, i, j in reading_boxes(spec, cell)
    ]


@dataclass(frozen=True)
class Removal:
    """One box taken off the end of a row.

    ``kind`` is ``"alpha"`` or ``"lambda"``; ``subkind`` (λ only) is
    ``"diagonal"``, ``"related"`` (with ``p``) or ``"nonrelated"``
    (with ``q``).  ``box`` uses the coordinates of the half-shifted diagram.
    """

    kind: str
    t: int
    box: tuple[int, int]
    subkind: str | None = None
    p: int | None = None
    q: int | None = None
    dtype_change: tuple[int, int] | None = None

    def describe(self) -> str:
        out = f"{self.kind}-removing t={self.t}"
        if self.subkind:
            out += f" ({self.subkind}"
            if self.p is not None:
                out += f" p={self.p}"
            if self.q is not None:
                out += f" q={self.q}"
            out += ")"
        if self.dtype_change:
            out += f" type {self.dtype_change[0]}->{self.dtype_change[1]}"
        return out


def enumerate_removals(spec: GrassmannianSpec, cell: DoublePartition) -> list[tuple[Removal, DoublePartition]]:
    """Every one-box removal ``Λ -> Λ'`` with its classification."""
    validate(spec, cell)
    spec = model_spec(spec)
    dia = HalfShiftedDiagram(spec, cell)
    a, b, r, k = list(cell.alpha), list(cell.lam), cell.r, spec.k
    fam, t0 = spec.family, cell.dtype
    out = []

    for t in range(1, k + 1):
        nxt = a[t] if t < k else 0
        if a[t - 1] - 1 < nxt:
            continue
        a2 = a.copy()
        a2[t - 1] -= 1
        if a2[-1] < r:
            continue
        newtype = t0
        if fam == "D" and t == k and a[-1] == r + 1:
            newtype = 0
        rem = Removal("alpha", t, (t, a[t - 1]),
                      dtype_change=(t0, newtype) if newtype != t0 else None)
        out.append((rem, DoublePartition(tuple(a2), cell.lam, newtype)))

    shift = 1 if fam == "D" else 0
    for t in range(1, r + 1):
        nxt = b[t] if t < r else 0
        if b[t - 1] - 1 <= nxt and not (b[t - 1] == 1 and t == r):
            continue
        b2 = b.copy()
        b2[t - 1] -= 1
        box = (t, t + shift + b[t - 1] - 1)
        newtype = t0
        lt = b[t - 1]
        target = lt if fam == "D" else lt - 1
        if fam != "D" and lt == 1:
            subkind, p, q = "diagonal", None, None
        else:
            p = dia.related_index(target)
            q = dia.nonrelated_index(target)
            if (p is None) == (q is None):
                raise AssertionError(f"{cell}: cannot classify removal of row {t}")
            subkind = "related" if p is not None else "nonrelated"
        if fam == "D" and lt == 1:
            if k == 0:
                newtype = k0_dtype(r - 1)
            elif t0 == 0:
                newtype = 2 if r % 2 == 0 else 1
            else:
                newtype = 3 - t0
        rem = Removal("lambda", t, box, subkind, p, q,
                      dtype_change=(t0, newtype) if newtype != t0 else None)
        out.append((rem, DoublePartition(cell.alpha, tuple(b2), newtype)))
    return out


def transpose_alpha(spec: GrassmannianSpec, cell: DoublePartition) -> tuple[int, ...]:
    """``α^T`` in ``R(m, k)`` computed from the column lengths ``v``."""
    spec = model_spec(spec)
    dia = HalfShiftedDiagram(spec, cell)
    k, r, m = spec.k, cell.r, spec.width
    offset = 1 if spec.family == "D" else 0
    out = []
    for i in range(1, m + 1):
        if i <= r:
            out.append(k)
            continue
        vq = dia.v[m - i]
        d = sum(x + offset > vq for x in cell.lam)
        out.append(-vq + i + k - d)
    return tuple(out)


def transpose_by_counting(alpha: tuple[int, ...], width: int) -> tuple[int, ...]:
    return tuple(sum(a >= i for a in alpha) for i in range(1, width + 1))


def render(spec: GrassmannianSpec, cell: DoublePartition) -> str:
    """Fixed-width text picture: top block, then the shifted bottom block.

    ``#`` is a box, ``*`` a removable box, ``.`` a blank staircase box and
    ``R`` marks related columns in the footer.
    """
    spec = model_spec(spec)
    dia = HalfShiftedDiagram(spec, cell)
    removable = dia.removable_boxes()
    top_rm = {box for kind, _, box in removable if kind == "alpha"}
    bot_rm = {box for kind, _, box in removable if kind == "lambda"}
    lines = []
    for i in range(1, spec.k + 1):
        a = cell.alpha[i - 1]
        lines.append("".join("* " if (i, j) in top_rm else "# " for j in range(1, a + 1)).rstrip())
    if spec.k:
        lines.append("-" * (2 * dia.rows - 1))
    n = dia.rows
    for i in range(1, n + 1):
        cells = []
        for c in range(1, n + 1):
            if c < i:
                cells.append("  ")
            elif (i, c) in bot_rm:
                cells.append("* ")
            elif (i, c) in dia.filled:
                cells.append("# ")
            else:
                cells.append(". ")
        lines.append("".join(cells).rstrip())
    rel = set(dia.related_columns)
    lines.append("".join("R " if c in rel else "  " for c in range(1, n + 1)).rstrip())
    lines.append(" ".join(str(dia.column_lengths[c]) for c in range(1, n + 1)))
    return "\n".join(lines)
