"""Skeletal finite-dimensional 2-Hilbert spaces and their block morphisms.

A space is a finite ordered list of simple labels with positive weights.
Objects are multiplicity vectors over the simples; a morphism carries one
complex matrix per simple label, mapping source coordinates to target
coordinates.  ``compose(f, g)`` means "first f, then g", so the stored
matrices multiply as ``g_block @ f_block``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import CompositionError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    as_complex,
    dagger,
    max_abs,
    range_complement_basis,
    sqrtm_psd,
)

__all__ = [
    "SpaceTable",
    "ObjectExpr",
    "BlockMorphism",
    "compose",
    "star",
    "inner_product",
    "norm",
    "identity",
    "zero_morphism",
    "cokernel",
    "kernel",
    "polar_decompose",
    "direct_sum",
    "scalar_tensor",
    "morphism_dev",
]


@dataclass(frozen=True)
class SpaceTable:
    """Ordered simple labels with positive weights; the empty table is the zero space."""

    simples: tuple[str, ...]
    weights: tuple[float, ...]

    @staticmethod
    def make(simples: Iterable[str], weights: Mapping[str, float] | None = None) -> "SpaceTable":
        simples = tuple(str(s) for s in simples)
        if len(set(simples)) != len(simples):
            raise ValidationError("simple labels must be distinct")
        if weights is None:
            wt = tuple(1.0 for _ in simples)
        else:
            missing = [s for s in simples if s not in weights]
            if missing:
                raise ValidationError(f"missing weights for {missing}")
            wt = tuple(float(weights[s]) for s in simples)
        if any(w <= 0 for w in wt):
            raise ValidationError("weights must be strictly positive")
        return SpaceTable(simples, wt)

    def weight(self, label: str) -> float:
        return self.weights[self.simples.index(label)]

    @property
    def dim(self) -> int:
        return len(self.simples)

    @property
    def is_zero(self) -> bool:
        return not self.simples

    def object(self, mult: Mapping[str, int] | Iterable[int]) -> "ObjectExpr":
        return ObjectExpr.make(self, mult)

    def simple(self, label: str) -> "ObjectExpr":
        return ObjectExpr.make(self, {label: 1})

    def zero_object(self) -> "ObjectExpr":
        return ObjectExpr.make(self, {})

    def to_json(self) -> dict:
        return {"simples": list(self.simples),
                "weights": {s: w for s, w in zip(self.simples, self.weights)}}

    @staticmethod
    def from_json(data: dict) -> "SpaceTable":
        return SpaceTable.make(data["simples"], data.get("weights"))


@dataclass(frozen=True)
class ObjectExpr:
    """Multiplicity vector over the simples of a space; all-zero is the zero object."""

    space: SpaceTable
    mults: tuple[int, ...]

    @staticmethod
    def make(space: SpaceTable, mult: Mapping[str, int] | Iterable[int]) -> "ObjectExpr":
        if isinstance(mult, Mapping):
            unknown = [k for k in mult if k not in space.simples]
            if unknown:
                raise ValidationError(f"labels {unknown} not in space")
            vec = tuple(int(mult.get(s, 0)) for s in space.simples)
        else:
            vec = tuple(int(m) for m in mult)
            if len(vec) != space.dim:
                raise ValidationError("multiplicity vector length mismatch")
        if any(m < 0 for m in vec):
            raise ValidationError("multiplicities must be nonnegative")
        return ObjectExpr(space, vec)

    def mult(self, label: str) -> int:
        return self.mults[self.space.simples.index(label)]

    @property
    def is_zero(self) -> bool:
        return all(m == 0 for m in self.mults)

    @property
    def total_dim(self) -> int:
        return sum(self.mults)

    def support(self) -> list[str]:
        return [s for s, m in zip(self.space.simples, self.mults) if m > 0]

    def to_json(self) -> dict:
        return {"space": self.space.to_json(),
                "mult": {s: m for s, m in zip(self.space.simples, self.mults) if m}}

    @staticmethod
    def from_json(data: dict) -> "ObjectExpr":
        return ObjectExpr.make(SpaceTable.from_json(data["space"]), data.get("mult", {}))


def _check_same_space(a: SpaceTable, b: SpaceTable) -> None:
    if a != b:
        raise CompositionError("objects live over different space tables")


class BlockMorphism:
    """A morphism between two objects, stored as one complex block per simple.

    The block at label ``s`` has shape ``(dst.mult(s), src.mult(s))`` and maps
    source coordinates to target coordinates.  Absent blocks are zero.
    """

    def __init__(self, src: ObjectExpr, dst: ObjectExpr,
                 blocks: Mapping[str, np.ndarray] | None = None):
        _check_same_space(src.space, dst.space)
        self.src = src
        self.dst = dst
        store: dict[str, np.ndarray] = {}
        blocks = blocks or {}
        for label, mat in blocks.items():
            if label not in src.space.simples:
                raise ValidationError(f"block label {label!r} not in space")
            mat = as_complex(mat)
            want = (dst.mult(label), src.mult(label))
            if mat.shape != want:
                raise ValidationError(
                    f"block {label!r} has shape {mat.shape}, expected {want}")
            if mat.size == 0:
                continue
            mat = mat.copy()
            mat.flags.writeable = False
            store[label] = mat
        self.blocks = store

    @property
    def space(self) -> SpaceTable:
        return self.src.space

    def block(self, label: str) -> np.ndarray:
        """The block at ``label`` (materializing zeros for absent blocks)."""
        if label in self.blocks:
            return self.blocks[label]
        return np.zeros((self.dst.mult(label), self.src.mult(label)), dtype=np.complex128)

    def __add__(self, other: "BlockMorphism") -> "BlockMorphism":
        if self.src != other.src or self.dst != other.dst:
            raise CompositionError("cannot add morphisms with different endpoints")
        labels = set(self.blocks) | set(other.blocks)
        return BlockMorphism(self.src, self.dst,
                             {s: self.block(s) + other.block(s) for s in labels})

    def __sub__(self, other: "BlockMorphism") -> "BlockMorphism":
        return self + (-1.0) * other

    def __rmul__(self, c: complex) -> "BlockMorphism":
        return BlockMorphism(self.src, self.dst,
                             {s: c * m for s, m in self.blocks.items()})

    def __neg__(self) -> "BlockMorphism":
        return (-1.0) * self

    def __repr__(self):
        sup = {s: self.block(s).shape for s in self.blocks}
        return f"BlockMorphism({sup})"

    def max_abs(self) -> float:
        return max((max_abs(m) for m in self.blocks.values()), default=0.0)

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_abs() <= tol

    def to_json(self) -> dict:
        def enc(mat):
            return [[[float(z.real), float(z.imag)] for z in row] for row in mat]
        return {"src": self.src.to_json(), "dst": self.dst.to_json(),
                "blocks": {s: enc(m) for s, m in self.blocks.items()}}

    @staticmethod
    def from_json(data: dict) -> "BlockMorphism":
        src = ObjectExpr.from_json(data["src"])
        dst = ObjectExpr.from_json(data["dst"])

        def dec(rows):
            return np.array([[complex(re, im) for re, im in row] for row in rows],
                            dtype=np.complex128)
        blocks = {s: dec(rows) for s, rows in data.get("blocks", {}).items()}
        return BlockMorphism(src, dst, blocks)


def identity(x: ObjectExpr) -> BlockMorphism:
    return BlockMorphism(x, x, {s: np.eye(m) for s, m in zip(x.space.simples, x.mults) if m})


def zero_morphism(src: ObjectExpr, dst: ObjectExpr) -> BlockMorphism:
    return BlockMorphism(src, dst, {})


def compose(first: BlockMorphism, second: BlockMorphism) -> BlockMorphism:
    """Composite "first, then second"; requires first.dst == second.src."""
    if first.space != second.space or first.dst != second.src:
        raise CompositionError("inner endpoints do not match")
    labels = set(first.blocks) & set(second.blocks)
    blocks = {s: second.block(s) @ first.block(s) for s in labels}
    return BlockMorphism(first.src, second.dst, blocks)


def star(f: BlockMorphism) -> BlockMorphism:
    """Blockwise conjugate transpose; swaps source and target."""
    return BlockMorphism(f.dst, f.src, {s: dagger(m) for s, m in f.blocks.items()})


def inner_product(f: BlockMorphism, g: BlockMorphism) -> complex:
    """Weighted Hilbert-Schmidt pairing sum_s k_s tr(f_s^* g_s)."""
    if f.src != g.src or f.dst != g.dst:
        raise CompositionError("inner product requires equal endpoints")
    total = 0.0 + 0.0j
    for s in set(f.blocks) & set(g.blocks):
        total += f.space.weight(s) * np.trace(dagger(f.block(s)) @ g.block(s))
    return complex(total)


def norm(f: BlockMorphism) -> float:
    return float(np.sqrt(max(inner_product(f, f).real, 0.0)))


def morphism_dev(f: BlockMorphism, g: BlockMorphism) -> float:
    """Largest entrywise deviation between two morphisms with equal endpoints."""
    if f.src != g.src or f.dst != g.dst:
        raise CompositionError("cannot compare morphisms with different endpoints")
    labels = set(f.blocks) | set(g.blocks)
    return max((max_abs(f.block(s) - g.block(s)) for s in labels), default=0.0)


def is_unitary_morphism(f: BlockMorphism, tol: float = DEFAULT_TOL) -> bool:
    if f.src.mults != f.dst.mults:
        return False
    return (morphism_dev(compose(f, star(f)), identity(f.src)) <= tol
            and morphism_dev(compose(star(f), f), identity(f.dst)) <= tol)


def cokernel(f: BlockMorphism, tol: float = DEFAULT_TOL) -> tuple[ObjectExpr, BlockMorphism]:
    """Cokernel object and the projection q: dst -> coker with f;q = 0.

    q restricted to the orthogonal complement of the range of f is unitary;
    for f = 0 it is a unitary on all of dst.
    """
    mults = {}
    blocks = {}
    for s in f.space.simples:
        m_dst = f.dst.mult(s)
        if m_dst == 0:
            continue
        _, comp = range_complement_basis(f.block(s), tol)
        mults[s] = comp.shape[1]
        blocks[s] = dagger(comp)
    c = ObjectExpr.make(f.space, {s: m for s, m in mults.items() if m})
    q = BlockMorphism(f.dst, c, {s: b[: mults[s], :] for s, b in blocks.items() if mults[s]})
    return c, q


def kernel(f: BlockMorphism, tol: float = DEFAULT_TOL) -> tuple[ObjectExpr, BlockMorphism]:
    """Kernel object and injection j: ker -> src, obtained as star(cokernel(star(f)))."""
    k, q = cokernel(star(f), tol)
    return k, star(q)


def polar_decompose(f: BlockMorphism) -> tuple[BlockMorphism, BlockMorphism]:
    """Factor an isomorphism as f = compose(a, u), a positive on src, u unitary.

    Blockwise, ``a`` is the positive square root of the composite of f with
    its star and ``u = f a^{-1}``.  Raises for non-invertible input, naming
    the offending simple label.
    """
    if f.src.mults != f.dst.mults:
        raise ValidationError("polar decomposition requires equal multiplicities")
    a_blocks = {}
    u_blocks = {}
    for s in f.space.simples:
        m = f.src.mult(s)
        if m == 0:
            continue
        mat = f.block(s)
        if np.linalg.matrix_rank(mat) < m:
            raise ValidationError(f"morphism is not invertible at simple {s!r}")
        a = sqrtm_psd(dagger(mat) @ mat)
        a_blocks[s] = a
        u_blocks[s] = mat @ np.linalg.inv(a)
    a = BlockMorphism(f.src, f.src, a_blocks)
    u = BlockMorphism(f.src, f.dst, u_blocks)
    return a, u


def direct_sum(x: ObjectExpr, y: ObjectExpr):
    """Biproduct of two objects over one space.

    Returns ``(z, inj_x, inj_y, proj_x, proj_y)`` satisfying
    ``compose(inj_x, proj_x) = 1_x`` and
    ``compose(proj_x, inj_x) + compose(proj_y, inj_y) = 1_z``.
    """
    _check_same_space(x.space, y.space)
    space = x.space
    z = ObjectExpr.make(space, tuple(a + b for a, b in zip(x.mults, y.mults)))
    ij_x, ij_y, pj_x, pj_y = {}, {}, {}, {}
    for s, (mx, my) in zip(space.simples, zip(x.mults, y.mults)):
        mz = mx + my
        if mz == 0:
            continue
        ix = np.zeros((mz, mx), dtype=np.complex128)
        ix[:mx, :] = np.eye(mx)
        iy = np.zeros((mz, my), dtype=np.complex128)
        iy[mx:, :] = np.eye(my)
        if mx:
            ij_x[s] = ix
            pj_x[s] = dagger(ix)
        if my:
            ij_y[s] = iy
            pj_y[s] = dagger(iy)
    return (z,
            BlockMorphism(x, z, ij_x),
            BlockMorphism(y, z, ij_y),
            BlockMorphism(z, x, pj_x),
            BlockMorphism(z, y, pj_y))


def scalar_tensor(x: ObjectExpr, n: int):
    """Tensoring by an n-dimensional Hilbert space: the n-fold direct sum.

    Returns ``(z, injections, projections)`` with the usual biproduct laws.
    """
    if n < 0:
        raise ValidationError("scalar multiplicity must be nonnegative")
    space = x.space
    z = ObjectExpr.make(space, tuple(n * m for m in x.mults))
    injections = []
    projections = []
    for copy in range(n):
        inj = {}
        for s, m in zip(space.simples, x.mults):
            if m == 0:
                continue
            mat = np.zeros((n * m, m), dtype=np.complex128)
            mat[copy * m:(copy + 1) * m, :] = np.eye(m)
            inj[s] = mat
        injections.append(BlockMorphism(x, z, inj))
        projections.append(star(injections[-1]))
    return z, injections, projections
