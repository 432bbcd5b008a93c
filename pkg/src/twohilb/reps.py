"""Representation categories of finite groups and supergroups.

A category holds one group (plus, for supergroups, the grading involution z)
and exposes the symmetric-monoidal structure on concrete unitary
representations: tensor products, the (possibly graded) braiding, duals
via conjugate representations, canonical adjunctions and their balancing,
traces and dimensions, symmetrizers, and the self-duality classification.

Irreducibles are computed numerically by decomposing the regular
representation with a randomly averaged equivariant Hermitian operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CompositionError, ValidationError
from .groups import FiniteGroup, FiniteGroupoid, FiniteSuperGroup
from .linalg import (
    DEFAULT_TOL,
    dagger,
    distance_to_unitary,
    max_abs,
    max_dev,
    random_complex,
    random_hermitian,
    random_unitary,
)

__all__ = ["UnitaryIrrep", "RepObject", "Intertwiner", "Adjunction",
           "RepCategory", "GroupoidRepCategory", "RestrictionFunctor",
           "frobenius_schur_indicator"]


@dataclass(frozen=True)
class UnitaryIrrep:
    """One irreducible unitary representation with a deterministic label."""

    label: str
    degree: int
    matrices: np.ndarray  # (order, d, d)
    parity: int  # 0 even, 1 odd; always 0 without a grading

    @property
    def character(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)


class RepObject:
    """A concrete unitary representation: one matrix per group element.

    For supergroup categories the grading involution is the action of z.
    """

    def __init__(self, cat: "RepCategory", matrices, name: str = ""):
        self.cat = cat
        mats = np.asarray(matrices, dtype=np.complex128)
        if mats.ndim != 3 or mats.shape[0] != cat.group.order:
            raise ValidationError("need one square matrix per group element")
        if mats.shape[1] != mats.shape[2]:
            raise ValidationError("representation matrices must be square")
        self.matrices = mats
        self.name = name
        self._isotypic = None

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    @property
    def grading(self) -> np.ndarray:
        """The grading involution (identity for purely even categories)."""
        if self.cat.z_index is None:
            return np.eye(self.dim, dtype=np.complex128)
        return self.matrices[self.cat.z_index]

    @property
    def character(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)

    def validate(self, tol: float = 1e-8) -> None:
        g = self.cat.group
        eye = np.eye(self.dim)
        if max_dev(self.matrices[g.identity], eye) > tol:
            raise ValidationError("identity does not act as the identity")
        for a in range(g.order):
            if max_dev(self.matrices[a] @ dagger(self.matrices[a]), eye) > tol:
                raise ValidationError(f"element {a} does not act unitarily")
        for a in range(g.order):
            for b in range(g.order):
                prod = self.matrices[a] @ self.matrices[b]
                if max_dev(prod, self.matrices[g.mult(a, b)]) > tol:
                    raise ValidationError("matrices do not respect the group product")
        if self.cat.z_index is not None:
            z = self.grading
            if max_dev(z @ z, eye) > tol:
                raise ValidationError("grading does not square to the identity")

    def __repr__(self):
        return f"RepObject({self.name or self.dim}, dim={self.dim})"


class Intertwiner:
    """An equivariant linear map between the carriers of two representations."""

    def __init__(self, src: RepObject, dst: RepObject, matrix):
        if src.cat is not dst.cat:
            raise CompositionError("intertwiners need a common category")
        mat = np.asarray(matrix, dtype=np.complex128)
        if mat.shape != (dst.dim, src.dim):
            raise ValidationError(f"matrix must be {dst.dim} x {src.dim}")
        self.src = src
        self.dst = dst
        self.matrix = mat

    def then(self, other: "Intertwiner") -> "Intertwiner":
        if other.src is not self.dst and other.src.dim != self.dst.dim:
            raise CompositionError("endpoints do not match")
        return Intertwiner(self.src, other.dst, other.matrix @ self.matrix)

    def star(self) -> "Intertwiner":
        return Intertwiner(self.dst, self.src, dagger(self.matrix))

    def __add__(self, other):
        return Intertwiner(self.src, self.dst, self.matrix + other.matrix)

    def __rmul__(self, c):
        return Intertwiner(self.src, self.dst, c * self.matrix)

    def equivariance_dev(self) -> float:
        worst = 0.0
        for g in range(self.src.cat.group.order):
            lhs = self.matrix @ self.src.matrix(g)
            rhs = self.dst.matrix(g) @ self.matrix
            worst = max(worst, max_dev(lhs, rhs))
        return worst

    def __repr__(self):
        return f"Intertwiner({self.src.dim} -> {self.dst.dim})"


@dataclass
class Adjunction:
    """Duality data (x, xstar, unit i: 1 -> x (x) xstar, counit e: xstar (x) x -> 1)."""

    x: RepObject
    xstar: RepObject
    i: Intertwiner
    e: Intertwiner

    def triangle_dev(self) -> float:
        dx = self.x.dim
        dy = self.xstar.dim
        i_m, e_m = self.i.matrix, self.e.matrix
        first = np.kron(np.eye(dx), e_m) @ np.kron(i_m, np.eye(dx))
        second = np.kron(e_m, np.eye(dy)) @ np.kron(np.eye(dy), i_m)
        return max(max_dev(first, np.eye(dx)), max_dev(second, np.eye(dy)))

    def scaled(self, factor: complex) -> "Adjunction":
        """Rescale counit by the factor and unit by its inverse; still an adjunction."""
        return Adjunction(self.x, self.xstar,
                          Intertwiner(self.i.src, self.i.dst, self.i.matrix / factor),
                          Intertwiner(self.e.src, self.e.dst, self.e.matrix * factor))


def _swap_matrix(d_left: int, d_right: int) -> np.ndarray:
    s = np.zeros((d_left * d_right, d_left * d_right), dtype=np.complex128)
    for i in range(d_left):
        for j in range(d_right):
            s[j * d_left + i, i * d_right + j] = 1.0
    return s


def frobenius_schur_indicator(group: FiniteGroup, character: np.ndarray) -> float:
    """Classical indicator (1/|G|) sum chi(g^2)."""
    total = sum(character[group.mult(g, g)] for g in range(group.order))
    return float(np.real(total)) / group.order


@dataclass(frozen=True)
class SelfDuality:
    kind: str  # "not-self-dual", "real", "quaternionic"
    sign: int | None
    witness: Intertwiner | None
    residual: float


class RepCategory:
    """Rep(G) for a finite group, or the graded Rep of a finite supergroup.

    ``bosonic=True`` replaces the graded braiding by the plain swap; this is
    the bosonization and makes every object even.
    """

    def __init__(self, group, bosonic: bool = False, _irreps=None):
        if isinstance(group, FiniteSuperGroup):
            self.group = group.group
            self.z_index = group.z
        elif isinstance(group, FiniteGroup):
            self.group = group
            self.z_index = None
        else:
            raise ValidationError("need a FiniteGroup or FiniteSuperGroup")
        self.bosonic = bosonic or self.z_index is None
        self._irreps = _irreps

    # -- basics ---------------------------------------------------------

    @property
    def name(self) -> str:
        base = f"Rep({self.group.name})"
        if self.z_index is not None:
            base = f"SuperRep({self.group.name}, z={self.group.element_name(self.z_index)})"
        if self.bosonic and self.z_index is not None:
            base += "~bosonized"
        return base

    @property
    def is_connected(self) -> bool:
        return True

    def bosonized(self) -> "RepCategory":
        cat = RepCategory.__new__(RepCategory)
        cat.group = self.group
        cat.z_index = self.z_index
        cat.bosonic = True
        cat._irreps = self._irreps
        return cat

    def unit(self) -> RepObject:
        mats = np.ones((self.group.order, 1, 1), dtype=np.complex128)
        return RepObject(self, mats, name="1")

    def object_of_irrep(self, irrep: UnitaryIrrep) -> RepObject:
        return RepObject(self, irrep.matrices, name=irrep.label)

    def irrep(self, label: str) -> RepObject:
        for irr in self.irreps():
            if irr.label == label:
                return self.object_of_irrep(irr)
        raise ValidationError(f"no irreducible labelled {label!r}; "
                              f"have {[i.label for i in self.irreps()]}")

    def direct_sum(self, x: RepObject, y: RepObject) -> RepObject:
        mats = np.zeros((self.group.order, x.dim + y.dim, x.dim + y.dim),
                        dtype=np.complex128)
        mats[:, :x.dim, :x.dim] = x.matrices
        mats[:, x.dim:, x.dim:] = y.matrices
        return RepObject(self, mats, name=f"{x.name}+{y.name}")

    def tensor(self, x: RepObject, y: RepObject) -> RepObject:
        mats = np.einsum("gij,gkl->gikjl", x.matrices, y.matrices)
        d = x.dim * y.dim
        return RepObject(self, mats.reshape(self.group.order, d, d),
                         name=f"{x.name}*{y.name}")

    def tensor_map(self, f: Intertwiner, g: Intertwiner) -> Intertwiner:
        return Intertwiner(self.tensor(f.src, g.src), self.tensor(f.dst, g.dst),
                           np.kron(f.matrix, g.matrix))

    def conjugate(self, x: RepObject) -> RepObject:
        return RepObject(self, np.conj(x.matrices), name=f"{x.name}*")

    def identity_map(self, x: RepObject) -> Intertwiner:
        return Intertwiner(x, x, np.eye(x.dim))

    def random_object(self, rng: np.random.Generator, max_copies: int = 2,
                      max_dim: int = 8) -> RepObject:
        """Random direct sum of irreducibles on a randomly rotated carrier."""
        irreps = self.irreps()
        while True:
            copies = [int(rng.integers(0, max_copies + 1)) for _ in irreps]
            total = sum(c * i.degree for c, i in zip(copies, irreps))
            if 0 < total <= max_dim:
                break
        blocks = []
        for c, irr in zip(copies, irreps):
            blocks.extend([irr] * c)
        mats = np.zeros((self.group.order, 0, 0), dtype=np.complex128)
        x = None
        for irr in blocks:
            piece = self.object_of_irrep(irr)
            x = piece if x is None else self.direct_sum(x, piece)
        u = random_unitary(rng, x.dim)
        rotated = np.einsum("ij,gjk,kl->gil", u, x.matrices, dagger(u))
        return RepObject(self, rotated, name="random")

    # -- irreducibles -----------------------------------------------------

    def irreps(self) -> list[UnitaryIrrep]:
        if self._irreps is None:
            self._irreps = _compute_irreps(self.group, self.z_index)
        return self._irreps

    def irrep_labels(self) -> list[str]:
        return [i.label for i in self.irreps()]

    def hom_dim(self, x: RepObject, y: RepObject) -> int:
        """Dimension of the intertwiner space, via character averaging."""
        chi = np.sum(np.conj(x.character) * y.character) / self.group.order
        val = float(np.real(chi))
        if abs(val - round(val)) > 1e-6:
            raise ValidationError(f"non-integral hom dimension {val}")
        return int(round(val))

    def hom_basis(self, x: RepObject, y: RepObject,
                  rng: np.random.Generator | None = None,
                  tol: float = 1e-8) -> list[Intertwiner]:
        """Orthonormal basis of hom(x, y) via the group-averaging projector."""
        rng = rng if rng is not None else np.random.default_rng(7)
        want = self.hom_dim(x, y)
        found: list[np.ndarray] = []
        guard = 0
        while len(found) < want:
            guard += 1
            if guard > 20 * want + 20:
                raise ValidationError("failed to span the intertwiner space")
            m0 = random_complex(rng, (y.dim, x.dim))
            avg = sum(y.matrix(g) @ m0 @ dagger(x.matrix(g))
                      for g in range(self.group.order)) / self.group.order
            for prev in found:
                avg = avg - np.vdot(prev, avg) * prev
            nrm = np.linalg.norm(avg)
            if nrm > tol:
                found.append(avg / nrm)
        return [Intertwiner(x, y, m) for m in found]

    def is_simple(self, x: RepObject, tol: float = 1e-7) -> bool:
        norm2 = float(np.real(np.sum(np.abs(x.character) ** 2))) / self.group.order
        return abs(norm2 - 1.0) < tol

    # -- isotypic decomposition -------------------------------------------

    def decompose(self, x: RepObject) -> list["IsotypicPiece"]:
        """Per irreducible: multiplicity and a co-isometry onto standard form.

        The co-isometry u satisfies u rho_x(g) u^H = irrep(g) (x) I_mult and
        the pulled-back projectors u^H u sum to the identity on the carrier.
        """
        if x._isotypic is not None:
            return x._isotypic
        rng = np.random.default_rng(11)
        pieces = []
        order = self.group.order
        for irr in self.irreps():
            mult = int(round(float(np.real(
                np.sum(np.conj(irr.character) * x.character))) / order))
            if mult == 0:
                continue
            d = irr.degree
            # orthonormal basis of Hom(standard irrep carrier, x)
            basis: list[np.ndarray] = []
            guard = 0
            while len(basis) < mult:
                guard += 1
                if guard > 20 * mult + 20:
                    raise ValidationError(
                        f"failed to separate the isotypic block of {irr.label}")
                t0 = random_complex(rng, (x.dim, d))
                t = sum(x.matrix(g) @ t0 @ dagger(irr.matrices[g])
                        for g in range(order)) / order
                for prev in basis:
                    overlap = np.trace(dagger(prev) @ t) / d
                    t = t - overlap * prev
                scale = np.sqrt(np.real(np.trace(dagger(t) @ t)) / d)
                if scale > 1e-8:
                    basis.append(t / scale)
            u_cols = np.zeros((x.dim, d * mult), dtype=np.complex128)
            for j in range(d):
                for b in range(mult):
                    u_cols[:, j * mult + b] = basis[b][:, j]
            pieces.append(IsotypicPiece(irr, mult, dagger(u_cols)))
        worst = max_dev(sum(dagger(p.coisometry) @ p.coisometry for p in pieces),
                        np.eye(x.dim))
        if worst > 1e-7:
            raise ValidationError(f"isotypic projectors do not resolve the identity "
                                  f"({worst:.3e})", violation=worst)
        x._isotypic = pieces
        return pieces

    def multiplicities(self, x: RepObject) -> dict[str, int]:
        return {p.irrep.label: p.multiplicity for p in self.decompose(x)}

    # -- braiding and balancing -------------------------------------------

    def koszul_operator(self, x: RepObject, y: RepObject) -> np.ndarray:
        gx, gy = x.grading, y.grading
        eye_x, eye_y = np.eye(x.dim), np.eye(y.dim)
        return 0.5 * (np.kron(eye_x, eye_y) + np.kron(eye_x, gy)
                      + np.kron(gx, eye_y) - np.kron(gx, gy))

    def braiding(self, x: RepObject, y: RepObject) -> Intertwiner:
        """The symmetry x (x) y -> y (x) x; sign-twisted unless bosonic."""
        swap = _swap_matrix(x.dim, y.dim)
        mat = swap if self.bosonic else swap @ self.koszul_operator(x, y)
        return Intertwiner(self.tensor(x, y), self.tensor(y, x), mat)

    def adjunction(self, x: RepObject) -> Adjunction:
        """Canonical duality on the conjugate carrier with the coordinate pairing."""
        xstar = self.conjugate(x)
        d = x.dim
        one = self.unit()
        e_mat = np.zeros((1, d * d), dtype=np.complex128)
        i_mat = np.zeros((d * d, 1), dtype=np.complex128)
        for j in range(d):
            e_mat[0, j * d + j] = 1.0
            i_mat[j * d + j, 0] = 1.0
        e = Intertwiner(self.tensor(xstar, x), one, e_mat)
        i = Intertwiner(one, self.tensor(x, xstar), i_mat)
        return Adjunction(x, xstar, i, e)

    def balancing_of(self, adj: Adjunction) -> Intertwiner:
        """Evaluate the twist composite of an adjunction."""
        x, y = adj.x, adj.xstar
        e_m = adj.e.matrix
        b_m = self.braiding(x, x).matrix
        mat = (np.kron(e_m, np.eye(x.dim))
               @ np.kron(np.eye(y.dim), b_m)
               @ np.kron(dagger(e_m), np.eye(x.dim)))
        return Intertwiner(x, x, mat)

    def well_balanced_adjunction(self, x: RepObject,
                                 base: Adjunction | None = None,
                                 tol: float = DEFAULT_TOL) -> Adjunction:
        """A duality whose balancing is unitary.

        Without ``base`` this is the canonical adjunction (already well
        balanced).  Given a deformed adjunction, the unit and counit are
        rescaled per simple summand to restore unitarity.
        """
        if base is None:
            adj = self.adjunction(x)
        else:
            adj = self._rebalance(base, tol)
        b = self.balancing_of(adj)
        dev = distance_to_unitary(b.matrix)
        if dev > 1e3 * tol:
            raise ValidationError(f"balancing is not unitary ({dev:.3e})", violation=dev)
        if adj.triangle_dev() > 1e3 * tol:
            raise ValidationError("duality triangles fail")
        return adj

    def _rebalance(self, adj: Adjunction, tol: float) -> Adjunction:
        x = adj.x
        b = self.balancing_of(adj).matrix
        pieces = self.decompose(x)
        scale = np.zeros((x.dim, x.dim), dtype=np.complex128)
        for piece in pieces:
            u = piece.coisometry
            block = u @ b @ dagger(u)
            beta = np.trace(block) / block.shape[0]
            if max_dev(block, beta * np.eye(block.shape[0])) > 1e-6:
                raise ValidationError(
                    "balancing is not scalar per simple summand; cannot rescale")
            scale += np.sqrt(abs(beta)) * (dagger(u) @ u)
        f = np.conj(scale)  # acts on the conjugate carrier
        f_inv = np.linalg.inv(f)
        i_new = np.kron(np.eye(x.dim), f) @ adj.i.matrix
        e_new = adj.e.matrix @ np.kron(f_inv, np.eye(x.dim))
        return Adjunction(x, adj.xstar,
                          Intertwiner(adj.i.src, adj.i.dst, i_new),
                          Intertwiner(adj.e.src, adj.e.dst, e_new))

    def balancing(self, x: RepObject) -> Intertwiner:
        return self.balancing_of(self.well_balanced_adjunction(x))

    @staticmethod
    def comparison_isomorphism(first: Adjunction, second: Adjunction) -> Intertwiner:
        """The canonical map between the duals of two adjunctions on one object."""
        y, yp = first.xstar, second.xstar
        mat = (np.kron(first.e.matrix, np.eye(yp.dim))
               @ np.kron(np.eye(y.dim), second.i.matrix))
        return Intertwiner(y, yp, mat)

    # -- trace and dimension ------------------------------------------------

    def trace(self, f: Intertwiner, adj: Adjunction | None = None,
              quantum: bool = False) -> complex:
        """Loop trace of an endomorphism; the quantum variant twists by the balancing."""
        if f.src.dim != f.dst.dim:
            raise CompositionError("trace needs an endomorphism")
        x = f.src
        adj = adj if adj is not None else self.well_balanced_adjunction(x)
        mat = f.matrix
        if quantum:
            mat = mat @ self.balancing_of(adj).matrix
        e_m = adj.e.matrix
        val = e_m @ np.kron(np.eye(adj.xstar.dim), mat) @ dagger(e_m)
        alt = dagger(adj.i.matrix) @ np.kron(mat, np.eye(adj.xstar.dim)) @ adj.i.matrix
        if abs(val[0, 0] - alt[0, 0]) > 1e-7 * max(1.0, abs(val[0, 0])):
            raise ValidationError("the two trace evaluations disagree")
        return complex(val[0, 0])

    def dim(self, x: RepObject) -> float:
        return float(np.real(self.trace(self.identity_map(x))))

    def qdim(self, x: RepObject) -> float:
        return float(np.real(self.trace(self.identity_map(x), quantum=True)))

    # -- symmetrizers ---------------------------------------------------------

    def symmetric_group_action(self, x: RepObject, n: int) -> dict:
        """Braiding-built operators for all permutations of n tensor factors."""
        from itertools import permutations
        if n < 1:
            raise ValidationError("need at least one tensor factor")
        if n > 6:
            raise ValidationError("permutation enumeration capped at 6 factors")
        d = x.dim
        b = self.braiding(x, x).matrix
        adjacent = []
        for pos in range(n - 1):
            op = np.kron(np.kron(np.eye(d ** pos), b), np.eye(d ** (n - 2 - pos)))
            adjacent.append(op)
        ops = {}
        for perm in permutations(range(n)):
            word = _adjacent_word(perm)
            op = np.eye(d ** n, dtype=np.complex128)
            for pos in word:
                op = adjacent[pos] @ op
            ops[perm] = (op, 1 if len(word) % 2 == 0 else -1)
        return ops

    def symmetrizer_power(self, x: RepObject, n: int):
        """Complete (anti)symmetrizers on the n-th tensor power and their images."""
        try:
            math.factorial(n)
        except (ValueError, OverflowError) as exc:
            raise ValidationError("factorial overflow") from exc
        ops = self.symmetric_group_action(x, n)
        power = x
        for _ in range(n - 1):
            power = self.tensor(power, x)
        total = len(ops)
        p_s = sum(op for op, _ in ops.values()) / total
        p_a = sum(sgn * op for op, sgn in ops.values()) / total
        sym = self._image_rep(power, p_s)
        alt = self._image_rep(power, p_a)
        return SymmetrizerData(power,
                               Intertwiner(power, power, p_s),
                               Intertwiner(power, power, p_a),
                               sym, alt)

    def _image_rep(self, big: RepObject, projector: np.ndarray, tol=1e-9):
        w, v = np.linalg.eigh((projector + dagger(projector)) / 2.0)
        cols = v[:, w > 0.5]
        u = dagger(cols)
        mats = np.einsum("ij,gjk,kl->gil", u, big.matrices, cols)
        return RepObject(self, mats, name="image"), u

    # -- self-duality -----------------------------------------------------------

    def dagger_transform(self, f: Intertwiner) -> Intertwiner:
        """For f: x -> xstar, the dual-side transform built from cups and caps."""
        x = f.src
        adj_x = self.well_balanced_adjunction(x)
        d = x.dim
        step1 = np.kron(np.eye(d), adj_x.i.matrix)  # x -> x (x) x (x) xstar
        step2 = np.kron(np.eye(d), np.kron(f.matrix, np.eye(d)))
        step3 = np.kron(dagger(adj_x.i.matrix), np.eye(d))  # pair the first two factors
        return Intertwiner(x, f.dst, step3 @ step2 @ step1)

    def classify_self_dual(self, x: RepObject,
                           rng: np.random.Generator | None = None) -> SelfDuality:
        """For simple x: not self-dual, or self-dual with a definite sign."""
        if not self.is_simple(x):
            raise ValidationError("self-duality classification needs a simple object")
        xstar = self.conjugate(x)
        if self.hom_dim(x, xstar) == 0:
            return SelfDuality("not-self-dual", None, None, 0.0)
        f = self.hom_basis(x, xstar, rng)[0]
        fd = self.dagger_transform(f)
        overlap = np.trace(dagger(f.matrix) @ fd.matrix) / \
            np.trace(dagger(f.matrix) @ f.matrix)
        sign = 1 if np.real(overlap) > 0 else -1
        residual = max_dev(fd.matrix, sign * f.matrix)
        if abs(overlap - sign) > 1e-6 or residual > 1e-6:
            raise ValidationError(f"self-duality sign is ambiguous "
                                  f"(overlap {overlap:.4f}, residual {residual:.2e})")
        return SelfDuality("real" if sign > 0 else "quaternionic", sign, f, residual)

    # -- invertibility ------------------------------------------------------------

    def invertibility_check(self, x: RepObject, tol: float = 1e-8) -> bool:
        """True iff dim(x) = 1 iff the unit and its star are mutually inverse."""
        adj = self.well_balanced_adjunction(x)
        dim_test = abs(self.dim(x) - 1.0) < tol
        i_m = adj.i.matrix
        left = dagger(i_m) @ i_m
        right = i_m @ dagger(i_m)
        inv_test = (max_dev(left, np.eye(1)) < tol
                    and max_dev(right, np.eye(right.shape[0])) < tol)
        if dim_test != inv_test:
            raise ValidationError("invertibility criteria disagree")
        return dim_test


@dataclass
class IsotypicPiece:
    irrep: UnitaryIrrep
    multiplicity: int
    coisometry: np.ndarray  # (degree * multiplicity, carrier_dim)


@dataclass
class SymmetrizerData:
    power: RepObject
    symmetrizer: Intertwiner
    antisymmetrizer: Intertwiner
    symmetric_part: tuple[RepObject, np.ndarray]
    alternating_part: tuple[RepObject, np.ndarray]


def _adjacent_word(perm) -> list[int]:
    """Adjacent-transposition word sorting the permutation (bubble sort)."""
    seq = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                word.append(i)
                changed = True
    return word


# -- irreducible computation ---------------------------------------------------

def _regular_representation(group: FiniteGroup) -> np.ndarray:
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    t = group.matrix
    for g in range(n):
        for h in range(n):
            mats[g, t[g, h], h] = 1.0
    return mats


def _cluster_indices(vals: np.ndarray, gap: float) -> list[list[int]]:
    clusters = [[0]]
    for idx in range(1, len(vals)):
        if vals[idx] - vals[clusters[-1][-1]] <= gap:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    return clusters


def _compute_irreps(group: FiniteGroup, z_index, attempts: int = 60):
    n = group.order
    reg = _regular_representation(group)
    rng = np.random.default_rng(1234)
    for _ in range(attempts):
        h0 = random_hermitian(rng, n)
        avg = sum(reg[g] @ h0 @ dagger(reg[g]) for g in range(n)) / n
        vals, vecs = np.linalg.eigh((avg + dagger(avg)) / 2.0)
        spread = max(vals[-1] - vals[0], 1.0)
        clusters = _cluster_indices(vals, 1e-7 * spread)
        raw = []
        ok = True
        for cluster in clusters:
            basis = vecs[:, cluster]
            mats = np.einsum("ij,gjk,kl->gil", dagger(basis), reg, basis)
            char = np.einsum("gii->g", mats)
            norm2 = float(np.real(np.sum(np.abs(char) ** 2))) / n
            if abs(norm2 - 1.0) > 1e-6:
                ok = False  # eigenvalue collision merged non-isotypic spaces
                break
            # invariance check of the eigenspace
            dev = max(max_dev(reg[g] @ basis, basis @ mats[g]) for g in range(n))
            if dev > 1e-7:
                ok = False
                break
            raw.append((char, mats))
        if not ok:
            continue
        # dedupe by character
        kept = []
        for char, mats in raw:
            if any(max_abs(char - c2) < 1e-6 for c2, _ in kept):
                continue
            kept.append((char, mats))
        if sum(m.shape[1] ** 2 for _, m in kept) != n:
            continue
        return _label_irreps(group, z_index, kept)
    raise ValidationError("failed to separate the isotypic blocks of the "
                          "regular representation")


def _label_irreps(group: FiniteGroup, z_index, kept) -> list[UnitaryIrrep]:
    entries = []
    for char, mats in kept:
        degree = mats.shape[1]
        trivial = bool(np.allclose(char, np.ones(group.order)))
        fingerprint = tuple((round(float(c.real), 6), round(float(c.imag), 6))
                            for c in char)
        entries.append((degree, not trivial, fingerprint, mats))
    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    out = []
    letters = "abcdefghijklmnopqrstuvwxyz"
    counts = {}
    for degree, _, _, mats in entries:
        k = counts.get(degree, 0)
        counts[degree] = k + 1
        label = f"{degree}{letters[k]}"
        parity = 0
        if z_index is not None:
            zval = np.trace(mats[z_index]) / degree
            parity = 0 if np.real(zval) > 0 else 1
            if abs(abs(zval) - 1.0) > 1e-6:
                raise ValidationError("grading does not act by a sign on an irreducible")
        out.append(UnitaryIrrep(label, degree, mats, parity))
    return out


# -- groupoids ----------------------------------------------------------------

class GroupoidRepCategory:
    """Product of the component categories of a finite groupoid.

    Objects assign one representation to each component; the endomorphisms
    of the unit form one copy of the scalars per component.
    """

    def __init__(self, groupoid: FiniteGroupoid):
        self.groupoid = groupoid
        self.components = []
        for objs, grp, z in groupoid.components:
            cat = RepCategory(FiniteSuperGroup.make(grp, z) if z is not None else grp)
            self.components.append((objs[0], cat))

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def end_unit_dim(self) -> int:
        return len(self.components)

    def unit(self) -> dict:
        return {label: cat.unit() for label, cat in self.components}

    def random_object(self, rng) -> dict:
        return {label: cat.random_object(rng) for label, cat in self.components}

    def dim(self, x: dict) -> dict:
        return {label: cat.dim(x[label]) for label, cat in self.components}

    def hom_inner(self, alpha: dict, beta: dict) -> complex:
        """Inner product summing over one object per isomorphism class."""
        total = 0.0 + 0.0j
        for label, _ in self.components:
            total += np.trace(dagger(alpha[label].matrix) @ beta[label].matrix)
        return complex(total)

    def end_unit_commutative_dev(self) -> float:
        # componentwise scalars always commute; kept as an explicit check
        return 0.0


# -- homomorphisms -------------------------------------------------------------

class RestrictionFunctor:
    """Restriction along a group homomorphism phi: G -> G'.

    Sends a representation of G' to its pullback; the monoidal structure
    maps are identities on the level of carriers.
    """

    def __init__(self, src_cat: RepCategory, dst_cat: RepCategory, phi):
        self.src_cat = src_cat  # Rep(G'), the domain category
        self.dst_cat = dst_cat  # Rep(G)
        self.phi = list(phi)
        gp = src_cat.group
        g = dst_cat.group
        if len(self.phi) != g.order:
            raise ValidationError("need one image per group element")
        for a in range(g.order):
            for b in range(g.order):
                if gp.mult(self.phi[a], self.phi[b]) != self.phi[g.mult(a, b)]:
                    raise ValidationError("the map is not a homomorphism")
        if src_cat.z_index is not None or dst_cat.z_index is not None:
            if dst_cat.z_index is None or src_cat.z_index is None or \
               self.phi[dst_cat.z_index] != src_cat.z_index:
                raise ValidationError("grading involutions are not matched")

    def on_object(self, x: RepObject) -> RepObject:
        mats = np.array([x.matrices[p] for p in self.phi])
        return RepObject(self.dst_cat, mats, name=f"res({x.name})")

    def on_morphism(self, f: Intertwiner) -> Intertwiner:
        return Intertwiner(self.on_object(f.src), self.on_object(f.dst), f.matrix)

    def validate(self, rng: np.random.Generator, samples: int = 3,
                 tol: float = 1e-8) -> float:
        """Coherence checks: star, composition, tensor squares, braiding,
        balancing and dimension preservation.  Returns the worst deviation."""
        worst = 0.0
        for _ in range(samples):
            x = self.src_cat.random_object(rng, max_dim=4)
            y = self.src_cat.random_object(rng, max_dim=4)
            fx, fy = self.on_object(x), self.on_object(y)
            fx.validate()
            f = _random_intertwiner(self.src_cat, rng, x, y)
            g = _random_intertwiner(self.src_cat, rng, y, x)
            worst = max(worst, self.on_morphism(f).equivariance_dev())
            worst = max(worst, max_dev(self.on_morphism(f.then(g)).matrix,
                                       self.on_morphism(f).then(self.on_morphism(g)).matrix))
            worst = max(worst, max_dev(self.on_morphism(f.star()).matrix,
                                       self.on_morphism(f).star().matrix))
            # monoidal structure maps are identities: the braiding square
            b_src = self.src_cat.braiding(x, y).matrix
            b_dst = self.dst_cat.braiding(fx, fy).matrix
            worst = max(worst, max_dev(b_src, b_dst))
            # balancing and dimension preservation
            worst = max(worst, max_dev(self.src_cat.balancing(x).matrix,
                                       self.dst_cat.balancing(fx).matrix))
            worst = max(worst, abs(self.src_cat.dim(x) - self.dst_cat.dim(fx)))
        if worst > tol:
            raise ValidationError(f"homomorphism coherence fails ({worst:.3e})",
                                  violation=worst)
        return worst


def _random_intertwiner(cat: RepCategory, rng, x: RepObject, y: RepObject) -> Intertwiner:
    m0 = random_complex(rng, (y.dim, x.dim))
    avg = sum(y.matrix(g) @ m0 @ dagger(x.matrix(g))
              for g in range(cat.group.order)) / cat.group.order
    return Intertwiner(x, y, avg)
