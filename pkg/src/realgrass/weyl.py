"""Signed-permutation Weyl groups of types B, C and D.

Elements are stored in one-line notation: ``values[i]`` is the image of
``i + 1`` and a negative entry ``-a`` stands for the barred letter ``ā``.
Type D of rank ``n + 1`` is indexed by the same ``n`` used for the
Grassmannian, so its elements have ``n + 1`` entries.

Conventions (all multiplication is on the right, ``w · s_i``):

* ``s_i`` for ``i >= 1`` swaps positions ``i`` and ``i + 1``;
* ``s_0`` negates position 1 in types B and C;
* ``s_0`` in type D swaps positions 1, 2 and negates both.

The matching simple roots are ``α_i = ε_{i+1} - ε_i`` and ``α_0 = ε_1``
(B), ``2ε_1`` (C) or ``ε_1 + ε_2`` (D).  A root is positive when its
highest-index nonzero coordinate is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

FAMILIES = ("B", "C", "D")


def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of B, C, D")
    return family


def ambient_size(family: str, n: int) -> int:
    """Number of ε coordinates (and one-line entries) for rank parameter ``n``."""
    check_family(family)
    return n + 1 if family == "D" else n


def generator_indices(family: str, n: int) -> range:
    return range(ambient_size(family, n))


def _bar(a: int) -> str:
    return f"{abs(a)}̄" if a < 0 else str(a)


@dataclass(frozen=True)
class Root:
    """An integer vector in the ε basis (index 0 holds the ε_1 coefficient)."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, size: int) -> "Root":
        return cls((0,) * size)

    @classmethod
    def eps(cls, size: int, a: int, scale: int = 1) -> "Root":
        """``scale · ε_a`` with the barred convention ``ε_{ā} = -ε_a``."""
        c = [0] * size
        c[abs(a) - 1] = scale if a > 0 else -scale
        return cls(tuple(c))

    @classmethod
    def diff(cls, size: int, a: int, b: int) -> "Root":
        """``ε_a - ε_b`` for signed letters ``a``, ``b``."""
        return cls.eps(size, a) - cls.eps(size, b)

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int) -> "Root":
        return Root(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_positive(self) -> bool:
        for x in reversed(self.coeffs):
            if x:
                return x > 0
        return False

    def support(self) -> dict[int, int]:
        """Sparse view ``{a: coefficient}`` with 1-based ε indices."""
        return {i + 1: x for i, x in enumerate(self.coeffs) if x}

    def dot(self, other: "Root") -> int:
        return sum(x * y for x, y in zip(self.coeffs, other.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        out = ""
        for a, x in sorted(self.support().items(), reverse=True):
            sign = "-" if x < 0 else "+"
            mag = "" if abs(x) == 1 else str(abs(x))
            out += f"{sign}{mag}e{a}"
        return out.lstrip("+")


def is_root(family: str, r: Root) -> bool:
    """True when ``r`` belongs to the root system of ``family``."""
    sup = sorted(abs(x) for x in r.coeffs if x)
    if sup == [1, 1]:
        return True
    if family == "B":
        return sup == [1]
    if family == "C":
        return sup == [2]
    return False


@lru_cache(maxsize=None)
def positive_roots(family: str, n: int) -> tuple[Root, ...]:
    size = ambient_size(family, n)
    roots = []
    for a in range(1, size + 1):
        if family == "B":
            roots.append(Root.eps(size, a))
        elif family == "C":
            roots.append(Root.eps(size, a, 2))
    for a, b in combinations(range(1, size + 1), 2):
        roots.append(Root.diff(size, b, a))
        roots.append(Root.eps(size, b) + Root.eps(size, a))
    return tuple(roots)


@lru_cache(maxsize=None)
def simple_root(family: str, n: int, i: int) -> Root:
    size = ambient_size(family, n)
    if i not in generator_indices(family, n):
        raise ValueError(f"generator index {i} out of range for {family}, n={n}")
    if i >= 1:
        return Root.diff(size, i + 1, i)
    if family == "B":
        return Root.eps(size, 1)
    if family == "C":
        return Root.eps(size, 1, 2)
    if size < 2:
        raise ValueError("type D needs at least two coordinates")
    return Root.eps(size, 1) + Root.eps(size, 2)


@dataclass(frozen=True)
class SignedPermutation:
    family: str
    values: tuple[int, ...]

    def __post_init__(self):
        check_family(self.family)
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if sorted(abs(v) for v in vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"{vals} is not a signed permutation")
        if self.family == "D" and sum(v < 0 for v in vals) % 2:
            raise ValueError(f"{vals} has an odd number of sign changes (type D)")

    @classmethod
    def identity(cls, family: str, n: int) -> "SignedPermutation":
        return cls(family, tuple(range(1, ambient_size(family, n) + 1)))

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return self.size - 1 if self.family == "D" else self.size

    def __call__(self, a: int) -> int:
        """Image of a signed letter."""
        v = self.values[abs(a) - 1]
        return v if a > 0 else -v

    @classmethod
    def _trusted(cls, family: str, values: tuple[int, ...]) -> "SignedPermutation":
        """Build from values already known to be valid, skipping the checks."""
        w = object.__new__(cls)
        object.__setattr__(w, "family", family)
        object.__setattr__(w, "values", values)
        return w

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        mine = self.values
        vals = tuple(mine[v - 1] if v > 0 else -mine[-v - 1] for v in other.values)
        return SignedPermutation._trusted(self.family, vals)

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.size
        for i, v in enumerate(self.values, start=1):
            inv[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation._trusted(self.family, tuple(inv))

    def is_identity(self) -> bool:
        return self.values == tuple(range(1, self.size + 1))

    def __str__(self) -> str:
        return "(" + ",".join(_bar(v) for v in self.values) + ")"


def apply_generator(w: SignedPermutation, i: int) -> SignedPermutation:
    """Return ``w · s_i``."""
    if i not in generator_indices(w.family, w.n):
        raise ValueError(f"generator index {i} out of range for {w.family}, n={w.n}")
    v = list(w.values)
    if i >= 1:
        v[i - 1], v[i] = v[i], v[i - 1]
    elif w.family == "D":
        v[0], v[1] = -v[1], -v[0]
    else:
        v[0] = -v[0]
    return SignedPermutation._trusted(w.family, tuple(v))


def evaluate_word(family: str, n: int, word: Iterable[int]) -> SignedPermutation:
    w = SignedPermutation.identity(family, n)
    for i in word:
        w = apply_generator(w, i)
    return w


def length(w: SignedPermutation) -> int:
    """Coxeter length, by counting inversion-type pairs of the one-line word."""
    v = w.values
    total = 0
    for a in range(len(v)):
        for b in range(a + 1, len(v)):
            total += (v[a] > v[b]) + (v[a] + v[b] < 0)
    if w.family != "D":
        total += sum(x < 0 for x in v)
    return total


def act_on_root(w: SignedPermutation, r: Root) -> Root:
    """The linear action ``ε_a ↦ ε_{w(a)}``."""
    out = [0] * w.size
    for a, x in enumerate(r.coeffs, start=1):
        if x:
            img = w(a)
            out[abs(img) - 1] += x if img > 0 else -x
    return Root(tuple(out))


def pi_w(w: SignedPermutation) -> frozenset[Root]:
    """Positive roots sent to negative roots by ``w⁻¹``."""
    winv = w.inverse()
    return frozenset(r for r in positive_roots(w.family, w.n) if not act_on_root(winv, r).is_positive())


def beta_sequence(family: str, n: int, word: Sequence[int]) -> list[Root]:
    """``β_t = s_{j_1} ⋯ s_{j_{t-1}}(α_{j_t})`` for a reduced word.

    Raises ``ValueError`` when the word is not reduced (a β is repeated or
    fails to be positive).
    """
    x = SignedPermutation.identity(family, n)
    seen: set[Root] = set()
    out = []
    for j in word:
        beta = act_on_root(x, simple_root(family, n, j))
        if not beta.is_positive() or beta in seen:
            raise ValueError(f"word {list(word)} is not reduced")
        seen.add(beta)
        out.append(beta)
        x = apply_generator(x, j)
    return out


def is_reduced(family: str, n: int, word: Sequence[int]) -> bool:
    try:
        beta_sequence(family, n, word)
    except ValueError:
        return False
    return True


def phi(w: SignedPermutation) -> Root:
    total = Root.zero(w.size)
    for r in pi_w(w):
        total = total + r
    return total


def reflection(family: str, beta: Root) -> SignedPermutation:
    """The reflection ``s_β`` as a signed permutation of values."""
    size = len(beta)
    sup = beta.support()
    v = list(range(1, size + 1))
    if len(sup) == 1:
        if family == "D":
            raise ValueError(f"{beta} is not a root of type D")
        (a,) = sup
        v[a - 1] = -a
    elif len(sup) == 2:
        a, b = sorted(sup)
        if sup[a] == -sup[b]:
            v[a - 1], v[b - 1] = b, a
        else:
            v[a - 1], v[b - 1] = -b, -a
    else:
        raise ValueError(f"{beta} is not a root")
    check_family(family)
    return SignedPermutation._trusted(family, tuple(v))


def reflection_root(q: SignedPermutation) -> Root:
    """Positive root ``β`` with ``q = s_β``; ``ValueError`` if ``q`` is no reflection."""
    moved = [a for a in range(1, q.size + 1) if q(a) != a]
    size = q.size
    beta = None
    if len(moved) == 1 and q.family != "D":
        (a,) = moved
        if q(a) == -a:
            beta = Root.eps(size, a, 2 if q.family == "C" else 1)
    elif len(moved) == 2:
        a, b = moved
        if q(a) == b and q(b) == a:
            beta = Root.diff(size, b, a)
        elif q(a) == -b and q(b) == -a:
            beta = Root.eps(size, a) + Root.eps(size, b)
    if beta is None:
        raise ValueError(f"{q} is not a reflection")
    return beta


def random_reduced_word(w: SignedPermutation, rng) -> list[int]:
    """A uniformly-chosen descent path down to the identity, read as a word for ``w``."""
    word: list[int] = []
    x = w
    while not x.is_identity():
        descents = [i for i in generator_indices(x.family, x.n)
                    if not act_on_root(x, simple_root(x.family, x.n, i)).is_positive()]
        i = rng.choice(descents)
        word.append(i)
        x = apply_generator(x, i)
    return word[::-1]


def all_elements(family: str, n: int) -> Iterable[SignedPermutation]:
    """Every group element; only sensible for small rank."""
    from itertools import permutations, product

    size = ambient_size(family, n)
    for perm in permutations(range(1, size + 1)):
        for signs in product((1, -1), repeat=size):
            if family == "D" and signs.count(-1) % 2:
                continue
            yield SignedPermutation(family, tuple(p * s for p, s in zip(perm, signs)))


def spin_twist(w: SignedPermutation) -> SignedPermutation:
    """Conjugate by the sign change of ``ε_1`` (type D diagram automorphism).

    It swaps ``s_0`` and ``s_1`` and fixes every other generator.
    """
    if w.family != "D":
        raise ValueError("the spin twist is only defined for type D")
    vals = list(w.values)
    vals[0] = -vals[0]
    return SignedPermutation("D", tuple(-x if abs(x) == 1 else x for x in vals))


def spin_twist_root(r: Root) -> Root:
    return Root((-r.coeffs[0],) + r.coeffs[1:])


# Orientation of Schubert cells.
#
# A reduced word ``j_1 ⋯ j_ℓ`` parametrises the cell of ``w`` by
# ``t ↦ ∏ x_{β_m}(ε_m t_m) · w̄``, where ``ε_m = ±1`` compares
# ``Ad(s̄_{j_1} ⋯ s̄_{j_{m-1}}) X_{α_{j_m}}`` with a fixed Chevalley vector
# ``X_{β_m}``.  At the origin the differential is ``t ↦ Σ ε_m t_m X_{β_m}``
# and the change of coordinates between two words is a diffeomorphism,
# so the orientation class of a word is ``∏ ε_m`` times the sign of the
# permutation sorting ``β_1, …, β_ℓ`` into a fixed reference order.
#
# Everything is done in the defining representation, where the Tits
# lifts ``s̄_i`` are signed permutations of the basis ``e_{±a}`` (and
# ``e_0`` for type B).  A matrix unit ``E_{x,y}`` is keyed by the pair
# ``(x, y)`` of basis labels.

def _lift(family: str, i: int) -> dict[int, tuple[int, int]]:
    """``s̄_i`` as ``label -> (sign, label)``; labels not listed are fixed."""
    if i >= 1:
        a, b = i, i + 1
        return {a: (1, b), b: (-1, a), -a: (1, -b), -b: (-1, -a)}
    if family == "C":
        return {1: (-1, -1), -1: (1, 1)}
    if family == "B":
        return {1: (-1, -1), -1: (-1, 1), 0: (-1, 0)}
    return {1: (-1, -2), 2: (1, -1), -1: (-1, 2), -2: (1, 1)}


def root_vector(family: str, r: Root) -> dict[tuple[int, int], int]:
    """Chevalley root vector ``X_r`` in the defining representation."""
    sup = sorted(r.support().items())
    if len(sup) == 1:
        (a, c), = sup
        if family == "C":
            return {(a, -a): 1} if c > 0 else {(-a, a): 1}
        # type B, with the quadratic form normalised so that ⟨e_0, e_0⟩ = 1/2
        return {(a, 0): 1, (0, -a): -2} if c > 0 else {(0, a): 2, (-a, 0): -1}
    (a, ca), (b, cb) = sup
    if ca == -cb:
        x, y = (b, a) if cb > 0 else (a, b)
        return {(x, y): 1, (-y, -x): -1}
    s = 1 if family == "C" else -1
    if cb > 0:
        return {(a, -b): 1, (b, -a): s}
    return {(-b, a): 1, (-a, b): s}


def word_orientation(family: str, n: int, word: Sequence[int]) -> int:
    """Orientation class (±1) of the cell chart given by a reduced word."""
    betas = beta_sequence(family, n, word)
    g: dict[int, tuple[int, int]] = {}  # composite lift, identity where missing

    def image(x: int) -> tuple[int, int]:
        return g.get(x, (1, x))

    sign = 1
    for j, beta in zip(word, betas):
        target = root_vector(family, beta)
        (x, y), coeff = next(iter(root_vector(family, simple_root(family, n, j)).items()))
        sx, gx = image(x)
        sy, gy = image(y)
        ratio, rest = divmod(sx * sy * coeff, target[(gx, gy)])
        if rest or ratio not in (1, -1):
            raise AssertionError(f"Tits lift does not map X_α_{j} to ±X_{beta}")
        sign *= ratio
        # g ← g · s̄_j
        update = {}
        for x, (s, y) in _lift(family, j).items():
            sy, gy = image(y)
            update[x] = (s * sy, gy)
        g.update(update)
    order = _root_order(family, n)
    return sign * permutation_sign([order[b] for b in betas])


@lru_cache(maxsize=None)
def _root_order(family: str, n: int) -> dict[Root, int]:
    return {r: m for m, r in enumerate(positive_roots(family, n))}


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries), by cycle count."""
    pos = {v: i for i, v in enumerate(sorted(seq))}
    target = [pos[v] for v in seq]
    seen = [False] * len(target)
    sign = 1
    for i in range(len(target)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = target[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign
