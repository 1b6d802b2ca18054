"""Boundary coefficients ``c(w, w')`` of the real Schubert cell complex.

For a covering pair ``w = s_β w'`` the coefficient is
``(-1)^χ (1 + (-1)^κ)`` where ``φ(w) - φ(w') = κ β``.  Three routes to
``κ`` are provided:

* :func:`kappa_closed_form` reads it off the shape of the removed box;
* :func:`kappa_phi_oracle` divides the difference of the ``φ`` vectors;
* :func:`kappa_sigma_oracle` sums root pairings along the tail of the
  row-reading word after the deleted letter.

Box removals do not exhaust the codimension-one Bruhat relations inside
``W^(k)``, and the closed form assumes that deleting the removed letter
from the reading word of ``Λ`` yields the reading word of ``Λ'``.
:class:`CoverFinder` handles the general case: it finds every cover by
single-letter deletion and multiplies by the orientation change between
the deleted subword and the chosen word of ``Λ'``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .shapes import (
    DoublePartition,
    GrassmannianSpec,
    HalfShiftedDiagram,
    Removal,
    enumerate_removals,
    model_spec,
    partition_to_permutation,
    reading_boxes,
    row_reading_word,
)
from .weyl import (
    Root,
    SignedPermutation,
    evaluate_word,
    length,
    phi,
    pi_w,
    beta_sequence,
    reflection,
    reflection_root,
    simple_root,
    spin_twist_root,
    word_orientation,
)

METHODS = ("closed-form", "phi-oracle", "sigma-oracle")


@dataclass(frozen=True)
class CoefficientReport:
    """Everything known about one entry of the boundary map.

    ``kappa``, ``chi`` and ``beta`` are ``None`` when the pair is not a
    covering pair (then ``c`` is 0).
    """

    kappa: int | None
    chi: int | None
    c: int
    beta: Root | None
    method: str = "closed-form"

    def __post_init__(self):
        if self.c not in (-2, 0, 2):
            raise ValueError(f"boundary coefficient {self.c} outside {{0, ±2}}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def coefficient_from(kappa: int, chi: int) -> int:
    return (-1) ** chi * (1 + (-1) ** kappa)


def fill_diagram_roots(spec: GrassmannianSpec, cell: DoublePartition) -> dict[tuple[str, int, int], Root]:
    """The root carried by each box, keyed like :func:`reading_boxes`.

    Read in row-reading order these are the β-sequence of the row-reading
    word, so as a set they are ``Π_w``.
    """
    if spec.twisted:
        inner = fill_diagram_roots(model_spec(spec), cell)
        return {box: spin_twist_root(r) for box, r in inner.items()}
    w = partition_to_permutation(spec, cell).values
    size, k = spec.size, spec.k
    if spec.family == "D" and k > 0 and cell.dtype in (1, 2):
        # types 1 and 2 use the element with its first entry made positive
        w = (abs(w[0]),) + w[1:]
    w_lam = sorted(w)
    dia = HalfShiftedDiagram(spec, cell)
    out = {}
    for i, j in dia.top:
        out[("alpha", i, j)] = Root.diff(size, w[k - i], w[k + j - 1])
    for i, j in dia.bottom:
        a, b = w_lam[i - 1], w_lam[j - 1]
        if i == j:
            # B/C only: D rows start one column to the right
            out[("lambda", i, j)] = Root.eps(size, -a, 2 if spec.family == "C" else 1)
        else:
            out[("lambda", i, j)] = -(Root.eps(size, a) + Root.eps(size, b))
    return out


def kappa_closed_form(spec: GrassmannianSpec, cell: DoublePartition, rem: Removal) -> int:
    """``κ = t + A(t)`` from the family and the kind of box removed."""
    m = model_spec(spec)
    fam, n, k, t = spec.family, spec.n, m.k, rem.t
    if rem.kind == "alpha":
        return t + cell.alpha[t - 1] - 1
    if rem.subkind == "diagonal":
        if fam == "C":
            return t + k
        if fam == "B":
            return t + 2 * k + t - 1
        raise ValueError("type D has no diagonal removals")
    if rem.subkind == "related":
        p = rem.p
        return t + {"C": 2 * k - p + 1, "B": 2 * k - p, "D": 2 * k - p - 1}[fam]
    if rem.subkind == "nonrelated":
        q = rem.q
        return t + {"C": k + n - q + 1, "B": k + n - q, "D": k + n - q}[fam]
    raise ValueError(f"unclassified removal {rem}")


def chi(spec: GrassmannianSpec, cell: DoublePartition, rem: Removal) -> int:
    """Position of the removed box in the row-reading word (1-based)."""
    t = rem.t
    if rem.kind == "alpha":
        return 1 + sum(cell.alpha[t:]) + sum(cell.lam)
    return 1 + sum(cell.lam[t:])


def find_removal(spec: GrassmannianSpec, cell: DoublePartition, smaller: DoublePartition) -> Removal | None:
    for rem, result in enumerate_removals(spec, cell):
        if result == smaller:
            return rem
    return None


def coefficient(spec: GrassmannianSpec, cell: DoublePartition, smaller: DoublePartition) -> CoefficientReport:
    """``c(w_Λ, w_Λ')`` via the closed form; zero unless ``Λ'`` is one box less."""
    if cell.size - smaller.size != 1:
        return CoefficientReport(None, None, 0, None)
    rem = find_removal(spec, cell, smaller)
    if rem is None:
        return CoefficientReport(None, None, 0, None)
    kappa = kappa_closed_form(spec, cell, rem)
    x = chi(spec, cell, rem)
    beta = fill_diagram_roots(spec, cell)[(rem.kind,) + rem.box]
    return CoefficientReport(kappa, x, coefficient_from(kappa, x), beta)


def exact_multiple(v: Root, beta: Root) -> int:
    """The integer ``κ`` with ``v = κ β``; ``ValueError`` on any remainder."""
    kappa = None
    for x, b in zip(v.coeffs, beta.coeffs):
        if b == 0:
            if x:
                raise ValueError(f"{v} is not a multiple of {beta}")
            continue
        q, rest = divmod(x, b)
        if rest or (kappa is not None and q != kappa):
            raise ValueError(f"{v} is not an integer multiple of {beta}")
        kappa = q
    if kappa is None:
        raise ValueError("zero root")
    return kappa


def _covering_elements(spec, cell, smaller) -> tuple[SignedPermutation, SignedPermutation]:
    w = partition_to_permutation(spec, cell)
    w2 = partition_to_permutation(spec, smaller)
    if length(w) != length(w2) + 1:
        raise ValueError(f"{cell} -> {smaller} is not a covering pair")
    return w, w2


def kappa_phi_oracle(spec: GrassmannianSpec, cell: DoublePartition, smaller: DoublePartition) -> tuple[int, Root]:
    """``κ`` and ``β`` from ``w = s_β w'`` and ``φ(w) - φ(w') = κ β``."""
    w, w2 = _covering_elements(spec, cell, smaller)
    beta = reflection_root(w * w2.inverse())
    return exact_multiple(phi(w) - phi(w2), beta), beta


def deleted_position(spec: GrassmannianSpec, cell: DoublePartition, smaller: DoublePartition) -> int:
    """First ``i`` (1-based) such that dropping letter ``i`` of the word of ``Λ`` gives ``w_Λ'``."""
    _, w2 = _covering_elements(spec, cell, smaller)
    word = row_reading_word(spec, cell)
    for i in range(len(word)):
        if evaluate_word(spec.family, spec.n, word[:i] + word[i + 1:]) == w2:
            return i + 1
    raise ValueError(f"no single-letter deletion of the word of {cell} gives {smaller}")


def sigma(spec: GrassmannianSpec, word: list[int], i: int) -> int:
    """``Σ_{β ∈ Π_u} 2⟨α, β⟩/⟨α, α⟩`` with ``α = α_{j_i}`` and ``u`` the word after ``i``."""
    a = simple_root(spec.family, spec.n, word[i - 1])
    u = evaluate_word(spec.family, spec.n, word[i:])
    norm = a.dot(a)
    total = 0
    for b in pi_w(u):
        q, rest = divmod(2 * a.dot(b), norm)
        if rest:
            raise ValueError("non-integral Cartan pairing")
        total += q
    return total


def kappa_sigma_oracle(spec: GrassmannianSpec, cell: DoublePartition, smaller: DoublePartition) -> int:
    """``κ = 1 - σ`` at the deleted position of the row-reading word."""
    i = deleted_position(spec, cell, smaller)
    return 1 - sigma(spec, row_reading_word(spec, cell), i)


def removal_root(spec: GrassmannianSpec, cell: DoublePartition, rem: Removal) -> Root:
    return fill_diagram_roots(spec, cell)[(rem.kind,) + rem.box]


def covering_pairs(spec: GrassmannianSpec, cells=None):
    """Yield ``(Λ, Removal, Λ')`` over every cell of ``spec``."""
    from .shapes import enumerate_cells

    for cell in cells if cells is not None else enumerate_cells(spec):
        for rem, smaller in enumerate_removals(spec, cell):
            yield cell, rem, smaller


@dataclass(frozen=True)
class Agreement:
    cell: DoublePartition
    smaller: DoublePartition
    removal: Removal
    closed: int
    phi: int
    sigma: int
    beta_closed: Root
    beta_phi: Root
    chi: int
    position: int

    @property
    def ok(self) -> bool:
        return (self.closed == self.phi == self.sigma
                and self.beta_closed == self.beta_phi
                and self.chi == self.position)


def three_way(spec: GrassmannianSpec, cell: DoublePartition, rem: Removal, smaller: DoublePartition) -> Agreement:
    """Compute ``κ``, ``β`` and the word position through every available route."""
    k_phi, b_phi = kappa_phi_oracle(spec, cell, smaller)
    return Agreement(
        cell=cell,
        smaller=smaller,
        removal=rem,
        closed=kappa_closed_form(spec, cell, rem),
        phi=k_phi,
        sigma=kappa_sigma_oracle(spec, cell, smaller),
        beta_closed=removal_root(spec, cell, rem),
        beta_phi=b_phi,
        chi=chi(spec, cell, rem),
        position=deleted_position(spec, cell, smaller),
    )


def reading_position(spec: GrassmannianSpec, cell: DoublePartition, rem: Removal) -> int:
    return reading_boxes(spec, cell).index((rem.kind,) + rem.box) + 1


@dataclass(frozen=True)
class Cover:
    """One codimension-one Bruhat relation ``w_Λ → w_Λ'`` with its coefficient.

    ``position`` is the deleted letter of the word of ``Λ``;
    ``orientation`` compares the deleted subword with the word chosen for
    ``Λ'``; ``removal`` is ``None`` when ``Λ'`` is not a one-box removal.
    """

    smaller: DoublePartition
    position: int
    kappa: int
    beta: Root
    orientation: int
    removal: Removal | None

    @property
    def c(self) -> int:
        return self.orientation * coefficient_from(self.kappa, self.position)


class CoverFinder:
    """Every cover of every cell of ``spec``, with orientation-consistent signs.

    ``words`` maps cells to reduced words and defaults to the row-reading
    words; any other choice changes the complex only by a change of basis
    signs.
    """

    def __init__(self, spec: GrassmannianSpec, cells=None, words=None):
        from .shapes import enumerate_cells

        self.spec = spec
        self.cells = list(cells) if cells is not None else enumerate_cells(spec)
        self.canonical = words is None
        self.words = {c: list(row_reading_word(spec, c)) for c in self.cells} if words is None else dict(words)
        self.perm = {c: partition_to_permutation(spec, c) for c in self.cells}
        self.by_perm = {w: c for c, w in self.perm.items()}
        self._phi: dict[DoublePartition, Root] = {}
        self._orient: dict[DoublePartition, int] = {}
        self.corrections = 0
        self.extra = 0

    def phi(self, cell: DoublePartition) -> Root:
        if cell not in self._phi:
            self._phi[cell] = phi(self.perm[cell])
        return self._phi[cell]

    def orientation(self, cell: DoublePartition) -> int:
        if cell not in self._orient:
            self._orient[cell] = word_orientation(self.spec.family, self.spec.n, self.words[cell])
        return self._orient[cell]

    def covers(self, cell: DoublePartition) -> list[Cover]:
        spec = self.spec
        w = self.perm[cell]
        word = self.words[cell]
        removals = {small: rem for rem, small in enumerate_removals(spec, cell)}
        out = []
        for i, beta in enumerate(beta_sequence(spec.family, spec.n, word), start=1):
            x = reflection(spec.family, beta) * w
            small = self.by_perm.get(x)
            if small is None or small.size != cell.size - 1:
                continue
            sub = word[:i - 1] + word[i:]
            if sub == self.words[small]:
                orient = 1
            else:
                orient = word_orientation(spec.family, spec.n, sub) * self.orientation(small)
                self.corrections += orient == -1
            rem = removals.get(small)
            if rem is not None:
                kappa = kappa_closed_form(spec, cell, rem)
            else:
                self.extra += 1
                kappa = exact_multiple(self.phi(cell) - self.phi(small), beta)
            out.append(Cover(small, i, kappa, beta, orient, rem))
        return out
