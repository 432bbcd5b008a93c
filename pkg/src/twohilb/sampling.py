"""Seeded random generators for spaces, objects and morphisms.

Used by the property-based tests and by the acceptance suite runner, which
must both be reproducible from a single seed.
"""
from __future__ import annotations

import numpy as np

from .functors import FusionFunctor, NatBlock, apply_object
from .hstar import BlockMorphism, ObjectExpr, SpaceTable
from .linalg import random_complex, random_unitary

_LABELS = "abcdefghijklmnopqrstuvwxyz"


def random_space(rng: np.random.Generator, max_simples: int = 3,
                 max_weight: float = 3.0) -> SpaceTable:
    n = int(rng.integers(1, max_simples + 1))
    labels = [_LABELS[i] for i in range(n)]
    weights = {s: float(rng.uniform(0.25, max_weight)) for s in labels}
    return SpaceTable.make(labels, weights)


def random_object(rng: np.random.Generator, space: SpaceTable,
                  max_mult: int = 3, allow_zero: bool = False) -> ObjectExpr:
    low = 0 if allow_zero else None
    while True:
        mults = tuple(int(rng.integers(0, max_mult + 1)) for _ in space.simples)
        if allow_zero or any(mults):
            return ObjectExpr.make(space, mults)
        if low is not None:
            break
    return ObjectExpr.make(space, mults)


def random_morphism(rng: np.random.Generator, src: ObjectExpr,
                    dst: ObjectExpr) -> BlockMorphism:
    blocks = {}
    for s in src.space.simples:
        rows, cols = dst.mult(s), src.mult(s)
        if rows and cols:
            blocks[s] = random_complex(rng, (rows, cols))
    return BlockMorphism(src, dst, blocks)


def random_endomorphism(rng: np.random.Generator, x: ObjectExpr) -> BlockMorphism:
    return random_morphism(rng, x, x)


def random_isomorphism(rng: np.random.Generator, x: ObjectExpr) -> BlockMorphism:
    """A random invertible endo-shaped morphism (well conditioned w.h.p.)."""
    blocks = {}
    for s, m in zip(x.space.simples, x.mults):
        if m:
            blocks[s] = random_complex(rng, (m, m)) + 2.0 * m * np.eye(m)
    return BlockMorphism(x, x, blocks)


def random_unitary_morphism(rng: np.random.Generator, x: ObjectExpr) -> BlockMorphism:
    blocks = {s: random_unitary(rng, m) for s, m in zip(x.space.simples, x.mults) if m}
    return BlockMorphism(x, x, blocks)


def random_monomorphism(rng: np.random.Generator, space: SpaceTable,
                        max_mult: int = 3) -> BlockMorphism:
    """A random injection x -> y (blocks of full column rank w.h.p.)."""
    src_m = []
    dst_m = []
    for _ in space.simples:
        a = int(rng.integers(0, max_mult + 1))
        b = a + int(rng.integers(0, max_mult + 1))
        src_m.append(a)
        dst_m.append(b)
    if not any(src_m):
        src_m[0] = 1
        dst_m[0] = max(dst_m[0], 1)
    src = ObjectExpr.make(space, src_m)
    dst = ObjectExpr.make(space, dst_m)
    return random_morphism(rng, src, dst)


def random_fusion_functor(rng: np.random.Generator, src: SpaceTable,
                          dst: SpaceTable, max_entry: int = 3) -> FusionFunctor:
    mat = rng.integers(0, max_entry + 1, size=(src.dim, dst.dim))
    return FusionFunctor.make(src, dst, mat)


def random_natblock(rng: np.random.Generator, f: FusionFunctor,
                    g: FusionFunctor) -> NatBlock:
    comps = {}
    for lam in f.src.simples:
        e = f.src.simple(lam)
        comps[lam] = random_morphism(rng, apply_object(f, e), apply_object(g, e))
    return NatBlock(f, g, comps)


def random_invertible_natblock(rng: np.random.Generator, f: FusionFunctor) -> NatBlock:
    comps = {}
    for lam in f.src.simples:
        e = f.src.simple(lam)
        comps[lam] = random_isomorphism(rng, apply_object(f, e))
    return NatBlock(f, f, comps)
