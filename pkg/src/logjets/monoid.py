"""Fine sharp monoids given by generator images in a lattice Z^k.

Homomorphisms to N are recorded by their values on the generators; a value
vector is a hom exactly when it is orthogonal to the relation lattice (the
integer kernel of the image matrix).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .algebra.intmat import integer_kernel, matmul, rank, saturated_quotient, transpose
from .algebra.linalg import nullspace


class MonoidError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidPresentation:
    """Submonoid of ``Z^dim`` generated by named nonzero vectors."""

    names: tuple[str, ...]
    images: tuple[tuple[int, ...], ...]
    dim: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "images", tuple(tuple(int(x) for x in v) for v in self.images))
        if len(self.names) != len(self.images):
            raise MonoidError("one image vector per generator name is required")
        if len(set(self.names)) != len(self.names):
            raise MonoidError(f"duplicate generator names in {self.names}")
        if self.dim < 0:
            if not self.images:
                raise MonoidError("ambient dimension required for the trivial monoid")
            object.__setattr__(self, "dim", len(self.images[0]))
        for name, v in zip(self.names, self.images):
            if len(v) != self.dim:
                raise MonoidError(f"generator {name} has {len(v)} coordinates, expected {self.dim}")
            if not any(v):
                raise MonoidError(f"generator {name} is zero")

    @classmethod
    def free(cls, names: Sequence[str]) -> MonoidPresentation:
        n = len(names)
        return cls(tuple(names), tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MonoidError(f"unknown monoid generator {name!r}") from None

    @property
    def matrix(self) -> list[list[int]]:
        """``dim x size`` matrix whose columns are the generator images."""
        return transpose([list(v) for v in self.images], self.dim) if self.images else [[] for _ in range(self.dim)]

    @cached_property
    def relations(self) -> tuple[tuple[int, ...], ...]:
        """Basis of the relation lattice ``{n : sum n_i g_i = 0}``."""
        if not self.images:
            return ()
        return tuple(tuple(r) for r in integer_kernel(self.matrix, self.size))

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * v[k] for c, v in zip(coeffs, self.images)) for k in range(self.dim))

    def is_hom(self, values: Sequence[int]) -> bool:
        if len(values) != self.size or any(v < 0 for v in values):
            return False
        return all(sum(a * b for a, b in zip(rel, values)) == 0 for rel in self.relations)


@dataclass(frozen=True, order=True)
class MonoidHom:
    """A homomorphism ``Q -> N`` given by its values on the generators."""

    values: tuple[int, ...]
    monoid: MonoidPresentation = field(compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.monoid.is_hom(self.values):
            raise MonoidError(f"values {self.values} do not define a hom {self.monoid.names} -> N")

    def __getitem__(self, name: str) -> int:
        return self.values[self.monoid.index(name)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.monoid.names, self.values))

    def __add__(self, other: MonoidHom) -> MonoidHom:
        return MonoidHom(tuple(a + b for a, b in zip(self.values, other.values)), self.monoid)


def gp_rank(Q: MonoidPresentation) -> int:
    if not Q.images:
        return 0
    return rank(Q.matrix, Q.size)


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def dual_extreme_rays(Q: MonoidPresentation) -> list[tuple[int, ...]]:
    """Primitive extreme rays of the cone of homs ``{v >= 0 : v ⟂ relations}``.

    An extreme ray is a solution of minimal support; we enumerate supports.
    """
    s = Q.size
    K = [list(r) for r in Q.relations]
    rays = []
    for size in range(1, s + 1):
        for T in combinations(range(s), size):
            sub = [[row[i] for i in T] for row in K]
            basis = nullspace(sub, len(T)) if sub else nullspace([], len(T))
            if len(basis) != 1:
                continue
            v = basis[0]
            if any(x == 0 for x in v):
                continue
            if all(x > 0 for x in v):
                pass
            elif all(x < 0 for x in v):
                v = [-x for x in v]
            else:
                continue
            prim = _primitive(v)
            full = [0] * s
            for i, x in zip(T, prim):
                full[i] = x
            rays.append(tuple(full))
    return sorted(rays)


def is_sharp(Q: MonoidPresentation) -> bool:
    """True iff no nonzero element is invertible.

    Equivalently some hom to N is positive on every generator, i.e. the
    extreme rays of the hom cone together cover every coordinate.
    """
    if Q.size == 0:
        return True
    covered = [False] * Q.size
    for ray in dual_extreme_rays(Q):
        for i, x in enumerate(ray):
            if x:
                covered[i] = True
    return all(covered)


def _positive_weight(Q: MonoidPresentation) -> list[int]:
    if not is_sharp(Q):
        raise MonoidError(f"monoid {Q.names} is not sharp")
    w = [0] * Q.size
    for ray in dual_extreme_rays(Q):
        w = [a + b for a, b in zip(w, ray)]
    return w


def _is_sum_of_two(Q: MonoidPresentation, target: Sequence[int], weight: Sequence[int], budget: int) -> bool:
    """Does ``target`` equal ``sum n_i g_i`` with ``sum n_i >= 2``?"""
    s = Q.size
    bounds = [budget // w for w in weight]
    # relations [G | -target] acting on (n, 1)
    G = Q.matrix
    rel = [list(G[k]) + [-target[k]] for k in range(Q.dim)]
    sols = _kernels.box_solutions(np.array(rel, dtype=np.int64).reshape(Q.dim, s + 1),
                                  np.array(bounds + [1], dtype=np.int64))
    sols = sols[sols[:, s] == 1][:, :s]
    if sols.size == 0:
        return False
    return bool(np.any(sols.sum(axis=1) >= 2))


def irreducible_elements(Q: MonoidPresentation) -> list[str]:
    """Generators that are not a sum of two nonzero elements, one per distinct element."""
    w = _positive_weight(Q)
    seen = set()
    out = []
    for j, (name, g) in enumerate(zip(Q.names, Q.images)):
        if g in seen:
            continue
        seen.add(g)
        if not _is_sum_of_two(Q, g, w, w[j]):
            out.append(name)
    return out


def irreducible_mask(Q: MonoidPresentation) -> list[bool]:
    """Per generator: is its element irreducible (duplicates of an irreducible count too)."""
    irr = {Q.images[Q.index(n)] for n in irreducible_elements(Q)}
    return [g in irr for g in Q.images]


def _hom_box(Q: MonoidPresentation, bound: int) -> list[int]:
    # reducible generators: value <= bound * (length of one decomposition into irreducibles)
    mask = irreducible_mask(Q)
    idx = [i for i, m in enumerate(mask) if m]
    w = _positive_weight(Q)
    out = []
    for j, g in enumerate(Q.images):
        if mask[j]:
            out.append(bound)
            continue
        G = [[Q.images[i][k] for i in idx] + [-g[k]] for k in range(Q.dim)]
        sols = _kernels.box_solutions(np.array(G, dtype=np.int64).reshape(Q.dim, len(idx) + 1),
                                      np.array([w[j] // w[i] for i in idx] + [1], dtype=np.int64))
        sols = sols[sols[:, -1] == 1]
        out.append(bound * int(sols[0, :-1].sum()))
    return out


def enumerate_homs_to_N(Q: MonoidPresentation, bound: int) -> list[MonoidHom]:
    """Homs whose values on the irreducible generators are at most ``bound``, lexicographic.

    Values on reducible generators follow from the irreducible ones.  When
    every generator is irreducible this is the plain generator-value box.
    Non-sharp input falls back to bounding every generator.
    """
    if bound < 0:
        raise MonoidError("bound must be nonnegative")
    if Q.size == 0:
        return [MonoidHom((), Q)]
    rel = np.array(Q.relations, dtype=np.int64).reshape(-1, Q.size)
    if is_sharp(Q):
        box = _hom_box(Q, bound)
        mask = irreducible_mask(Q)
    else:
        box, mask = [bound] * Q.size, [True] * Q.size
    sols = _kernels.box_solutions(rel, np.array(box, dtype=np.int64))
    keep = np.all(sols[:, np.array(mask)] <= bound, axis=1)
    return [MonoidHom(tuple(int(x) for x in row), Q) for row in sols[keep]]


def hilbert_basis_dual(Q: MonoidPresentation) -> list[MonoidHom]:
    """Minimal generating set of ``Hom(Q, N)``.

    Every basis element lies in the half-open parallelepiped spanned by some
    extreme rays, so coordinates are bounded by the coordinate sums of all
    rays; inside that box we keep the homs that do not split.
    """
    if not is_sharp(Q):
        raise MonoidError(f"monoid {Q.names} is not sharp")
    if Q.size == 0:
        return []
    rays = dual_extreme_rays(Q)
    bounds = [sum(r[i] for r in rays) for i in range(Q.size)]
    rel = np.array(Q.relations, dtype=np.int64).reshape(-1, Q.size)
    pts = _kernels.box_solutions(rel, np.array(bounds, dtype=np.int64))
    pts = pts[pts.sum(axis=1) > 0]
    members = {tuple(int(x) for x in row) for row in pts}
    basis = []
    for h in sorted(members):
        splits = False
        for h2 in members:
            if h2 != h and all(a <= b for a, b in zip(h2, h)):
                if tuple(b - a for a, b in zip(h2, h)) in members:
                    splits = True
                    break
        if not splits:
            basis.append(MonoidHom(h, Q))
    return basis


def decompose_hom(basis: Sequence[MonoidHom], h: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients writing ``h`` as an N-combination of ``basis``, or ``None``."""
    h = tuple(h)
    if not any(h):
        return (0,) * len(basis)

    def search(i, rest):
        if not any(rest):
            return [0] * (len(basis) - i)
        if i == len(basis):
            return None
        b = basis[i].values
        k = 0
        cur = rest
        while all(x >= 0 for x in cur):
            tail = search(i + 1, cur)
            if tail is not None:
                return [k] + tail
            if not any(b):
                break
            cur = tuple(x - y for x, y in zip(cur, b))
            k += 1
        return None

    res = search(0, h)
    return tuple(res) if res is not None else None


@dataclass(frozen=True)
class MonoidQuotient:
    """``Q`` modulo a face, embedded in ``Z^dim / (span of the face)``."""

    source: MonoidPresentation
    face: tuple[str, ...]
    quotient: MonoidPresentation

    @property
    def gp_rank(self) -> int:
        return gp_rank(self.quotient)

    @property
    def irreducible_count(self) -> int:
        return len(irreducible_elements(self.quotient))


def quotient_by_face(Q: MonoidPresentation, nonvanishing: Iterable[str]) -> MonoidQuotient:
    S = sorted({Q.index(n) for n in nonvanishing})
    proj = saturated_quotient([list(Q.images[i]) for i in S], Q.dim)
    newdim = len(proj)
    face, names, images = [], [], []
    for name, g in zip(Q.names, Q.images):
        img = tuple(sum(a * b for a, b in zip(row, g)) for row in proj)
        if any(img):
            names.append(name)
            images.append(img)
        else:
            face.append(name)
    quotient = MonoidPresentation(tuple(names), tuple(images), newdim)
    if not is_sharp(quotient):
        raise MonoidError(
            f"generators {[Q.names[i] for i in S]} do not generate a face of {Q.names}: "
            "some element outside is a summand of an element inside")
    return MonoidQuotient(Q, tuple(face), quotient)


def faces(Q: MonoidPresentation) -> list[tuple[str, ...]]:
    """All faces, each listed by the generators it contains, smallest first."""
    found = set()
    for size in range(Q.size + 1):
        for S in combinations(Q.names, size):
            try:
                found.add(quotient_by_face(Q, S).face)
            except MonoidError:
                continue
    return sorted(found, key=lambda f: (len(f), [Q.index(n) for n in f]))


@dataclass(frozen=True)
class MonoidMap:
    """``R -> Q`` sending each generator of ``R`` to an N-combination of generators of ``Q``."""

    source: MonoidPresentation
    target: MonoidPresentation
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(int(x) for x in v) for v in self.images))
        if len(self.images) != self.source.size:
            raise MonoidError("one image per source generator is required")
        for v in self.images:
            if len(v) != self.target.size or any(x < 0 for x in v):
                raise MonoidError(f"image {v} is not an N-combination of {self.target.names}")
        for rel in self.source.relations:
            combo = [sum(r * v[j] for r, v in zip(rel, self.images)) for j in range(self.target.size)]
            if any(self.target.element(combo)):
                raise MonoidError(f"map does not respect the relation {rel} of {self.source.names}")

    def lattice_images(self) -> list[tuple[int, ...]]:
        return [self.target.element(v) for v in self.images]


@dataclass(frozen=True)
class RelativeInvariants:
    kernel_rank: int
    irreducible_count: int
    relative_gp_rank: int

    @property
    def correction_count(self) -> int:
        """Irreducibles not hit from the base plus the kernel rank."""
        return self.irreducible_count + self.kernel_rank


def relative_invariants(phi: MonoidMap) -> RelativeInvariants:
    R, Q = phi.source, phi.target
    imgs = phi.lattice_images()
    image_rank = rank(transpose([list(v) for v in imgs], Q.dim), R.size) if imgs else 0
    kernel = gp_rank(R) - image_rank
    hit = set()
    if R.size:
        for name in irreducible_elements(R):
            hit.add(imgs[R.index(name)])
    n_rel = sum(1 for name in irreducible_elements(Q) if Q.images[Q.index(name)] not in hit)
    return RelativeInvariants(kernel, n_rel, gp_rank(Q) - image_rank)
