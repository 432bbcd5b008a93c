"""Finite groups, supergroups (a group with a chosen central involution),
finite groupoids, and the built-in catalog.

Groups are multiplication tables on element indices; ``table[a, b]`` is the
index of "a times b".  All constructors validate the group axioms.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = ["FiniteGroup", "FiniteSuperGroup", "FiniteGroupoid",
           "cyclic_group", "product_group", "symmetric_group",
           "dihedral_group", "quaternion_group", "catalog", "catalog_names",
           "load_group", "group_from_json"]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table on {0, .., order-1}."""

    name: str
    table: tuple[tuple[int, ...], ...]
    element_names: tuple[str, ...] | None = None

    @staticmethod
    def make(name: str, table, element_names=None) -> "FiniteGroup":
        arr = np.asarray(table, dtype=int)
        n = arr.shape[0]
        if arr.shape != (n, n):
            raise ValidationError("multiplication table must be square")
        if np.any(arr < 0) or np.any(arr >= n):
            raise ValidationError("table entries out of range")
        g = FiniteGroup(name, tuple(tuple(int(v) for v in row) for row in arr),
                        tuple(element_names) if element_names else None)
        g.validate()
        return g

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.table, dtype=int)

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def identity(self) -> int:
        t = self.matrix
        for e in range(self.order):
            if np.array_equal(t[e], np.arange(self.order)) and \
               np.array_equal(t[:, e], np.arange(self.order)):
                return e
        raise ValidationError("no identity element")

    def inverse(self, a: int) -> int:
        e = self.identity
        row = self.matrix[a]
        hits = np.nonzero(row == e)[0]
        if len(hits) != 1:
            raise ValidationError(f"element {a} has no unique inverse")
        return int(hits[0])

    def validate(self) -> None:
        n = self.order
        t = self.matrix
        for row in t:
            if len(set(int(v) for v in row)) != n:
                raise ValidationError("rows must be permutations")
        self.identity
        for a in range(n):
            self.inverse(a)
        # associativity; fine at catalog scale
        for a in range(n):
            lhs = t[t[a, :], :]
            rhs = t[a, t]
            if not np.array_equal(lhs, rhs):
                raise ValidationError("multiplication table is not associative")

    def element_name(self, a: int) -> str:
        if self.element_names:
            return self.element_names[a]
        return str(a)

    def element_order(self, a: int) -> int:
        e = self.identity
        x = a
        k = 1
        while x != e:
            x = self.mult(x, a)
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        t = self.matrix
        return np.array_equal(t, t.T)

    @property
    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))

    def center(self) -> list[int]:
        t = self.matrix
        return [a for a in range(self.order) if np.array_equal(t[a, :], t[:, a])]

    def conjugacy_classes(self) -> list[list[int]]:
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.mult(self.mult(g, a), self.inverse(g))
                          for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def central_involutions(self) -> list[int]:
        e = self.identity
        return [a for a in self.center() if a != e and self.mult(a, a) == e]

    def to_json(self) -> dict:
        data = {"name": self.name, "order": self.order,
                "table": [list(r) for r in self.table]}
        if self.element_names:
            data["element_names"] = list(self.element_names)
        return data

    @staticmethod
    def from_json(data: dict) -> "FiniteGroup":
        g = FiniteGroup.make(data.get("name", "group"), data["table"],
                             data.get("element_names"))
        if "order" in data and int(data["order"]) != g.order:
            raise ValidationError("declared order does not match the table")
        return g


@dataclass(frozen=True)
class FiniteSuperGroup:
    """A finite group with a chosen central involution that grades every representation."""

    group: FiniteGroup
    z: int

    @staticmethod
    def make(group: FiniteGroup, z: int) -> "FiniteSuperGroup":
        if z < 0 or z >= group.order:
            raise ValidationError("grading element out of range")
        if z not in group.center():
            raise ValidationError("grading element must be central")
        if group.mult(z, z) != group.identity:
            raise ValidationError("grading element must square to the identity")
        return FiniteSuperGroup(group, z)

    @property
    def name(self) -> str:
        return f"{self.group.name}[z={self.group.element_name(self.z)}]"

    def to_json(self) -> dict:
        data = self.group.to_json()
        data["central_involution"] = self.z
        return data


def group_from_json(data: dict):
    """Group or supergroup from the JSON interchange format."""
    g = FiniteGroup.from_json(data)
    if "central_involution" in data and data["central_involution"] is not None:
        return FiniteSuperGroup.make(g, int(data["central_involution"]))
    return g


# -- constructions -----------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = [f"g{a}" for a in range(n)]
    names[0] = "e"
    return FiniteGroup.make(f"Z{n}", table, names)


def product_group(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n, m = g.order, h.order

    def idx(a, b):
        return a * m + b
    table = [[0] * (n * m) for _ in range(n * m)]
    names = []
    for a in range(n):
        for b in range(m):
            names.append(f"({g.element_name(a)},{h.element_name(b)})")
            for c in range(n):
                for d in range(m):
                    table[idx(a, b)][idx(c, d)] = idx(g.mult(a, c), h.mult(b, d))
    return FiniteGroup.make(f"{g.name}x{h.name}", table, names)


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[0] * len(elems) for _ in elems]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            comp = tuple(p[q[k]] for k in range(n))  # first q, then p
            table[i][j] = index[comp]
    names = ["".join(str(v) for v in p) for p in elems]
    return FiniteGroup.make(f"S{n}", table, names)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^a and reflections r^a s."""
    order = 2 * n

    def idx(a, b):
        return a + n * b
    table = [[0] * order for _ in range(order)]
    for a in range(n):
        for b in range(2):
            for c in range(n):
                for d in range(2):
                    # (r^a s^b)(r^c s^d) = r^(a + c*(-1)^b) s^(b+d)
                    aa = (a + (c if b == 0 else -c)) % n
                    table[idx(a, b)][idx(c, d)] = idx(aa, (b + d) % 2)
    names = [f"r{a}" for a in range(n)] + [f"r{a}s" for a in range(n)]
    names[0] = "e"
    return FiniteGroup.make(f"D{n}", table, names)


def quaternion_group() -> FiniteGroup:
    """The quaternion group of order 8 on {1, -1, i, -i, j, -j, k, -k}."""
    mats = {
        0: np.eye(2, dtype=complex),
        1: -np.eye(2, dtype=complex),
        2: np.array([[1j, 0], [0, -1j]]),
        3: -np.array([[1j, 0], [0, -1j]]),
        4: np.array([[0, 1], [-1, 0]], dtype=complex),
        5: -np.array([[0, 1], [-1, 0]], dtype=complex),
        6: np.array([[0, 1j], [1j, 0]]),
        7: -np.array([[0, 1j], [1j, 0]]),
    }
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            prod = mats[a] @ mats[b]
            hits = [c for c in range(8) if np.allclose(prod, mats[c])]
            assert len(hits) == 1
            table[a][b] = hits[0]
    return FiniteGroup.make("Q8", table, names)


# -- groupoids ---------------------------------------------------------------

@dataclass
class FiniteGroupoid:
    """A finite groupoid normalized to components (object list, vertex group, grading).

    ``components[i]`` is a triple (object labels, vertex group, central
    involution index or None); the groupoid is the disjoint union of the
    corresponding connected groupoids.
    """

    components: list[tuple[tuple[str, ...], FiniteGroup, int | None]] = field(
        default_factory=list)

    @staticmethod
    def from_components(components) -> "FiniteGroupoid":
        normalized = []
        for objs, grp, z in components:
            objs = tuple(str(o) for o in objs)
            if not objs:
                raise ValidationError("a component needs at least one object")
            if z is not None:
                FiniteSuperGroup.make(grp, z)
            normalized.append((objs, grp, z))
        all_objs = [o for objs, _, _ in normalized for o in objs]
        if len(set(all_objs)) != len(all_objs):
            raise ValidationError("object labels must be distinct")
        return FiniteGroupoid(normalized)

    @staticmethod
    def from_hom_data(objects, morphisms, compose_map, balancing=None) -> "FiniteGroupoid":
        """Build and validate a groupoid from explicit hom-set data.

        ``morphisms`` maps a morphism id to a (src, dst) pair of object
        labels; ``compose_map[(m1, m2)]`` is the composite "first m1 then
        m2", defined exactly when dst(m1) == src(m2).  ``balancing``
        optionally maps each object to an endomorphism id with square one.
        """
        objects = [str(o) for o in objects]
        ends = {m: (str(s), str(d)) for m, (s, d) in morphisms.items()}
        for (m1, m2), m3 in compose_map.items():
            s1, d1 = ends[m1]
            s2, d2 = ends[m2]
            if d1 != s2:
                raise ValidationError("composition defined on non-composable pair")
            if ends[m3] != (s1, d2):
                raise ValidationError("composite has wrong endpoints")
        # connected components via morphisms
        parent = {o: o for o in objects}

        def find(o):
            while parent[o] != o:
                parent[o] = parent[parent[o]]
                o = parent[o]
            return o
        for s, d in ends.values():
            parent[find(s)] = find(d)
        groups = {}
        for o in objects:
            groups.setdefault(find(o), []).append(o)
        comps = []
        for root, objs in groups.items():
            base = objs[0]
            loops = sorted(m for m, (s, d) in ends.items() if s == base and d == base)
            index = {m: i for i, m in enumerate(loops)}
            table = [[0] * len(loops) for _ in loops]
            for i, m1 in enumerate(loops):
                for j, m2 in enumerate(loops):
                    m3 = compose_map.get((m1, m2))
                    if m3 is None or m3 not in index:
                        raise ValidationError("hom-set at the base object is not closed")
                    table[i][j] = index[m3]
            grp = FiniteGroup.make(f"aut({base})", table,
                                   [str(m) for m in loops])
            z = None
            if balancing is not None:
                beta = balancing.get(base)
                if beta is not None:
                    if beta not in index:
                        raise ValidationError("balancing must be an endomorphism")
                    z = index[beta]
                    if grp.mult(z, z) != grp.identity or z not in grp.center():
                        raise ValidationError("balancing must be a central involution")
                    if z == grp.identity:
                        z = None
            comps.append((tuple(objs), grp, z))
        return FiniteGroupoid.from_components(comps)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def is_connected(self) -> bool:
        return self.n_components == 1


# -- catalog -----------------------------------------------------------------

def _superhilb():
    z2 = cyclic_group(2)
    return FiniteSuperGroup.make(FiniteGroup.make("SuperHilb", z2.table, ("e", "z")), 1)


def catalog() -> dict:
    """The built-in group catalog, keyed by name."""
    entries = {}
    for n in range(1, 13):
        entries[f"Z{n}"] = lambda n=n: cyclic_group(n)
    entries["Z2xZ2"] = lambda: product_group(cyclic_group(2), cyclic_group(2))
    entries["S3"] = lambda: symmetric_group(3)
    entries["S4"] = lambda: symmetric_group(4)
    entries["D4"] = lambda: dihedral_group(4)
    entries["Q8"] = quaternion_group
    entries["SuperHilb"] = _superhilb
    return entries


def catalog_names() -> list[str]:
    return list(catalog().keys())


def load_group(name: str, catalog_dir: str | None = None):
    """Resolve a group by catalog name, JSON file path, or file in the catalog dir."""
    entries = catalog()
    if name in entries:
        return entries[name]()
    candidates = [name]
    directory = catalog_dir or os.environ.get("TWOHILB_CATALOG")
    if directory:
        candidates.append(os.path.join(directory, name))
        candidates.append(os.path.join(directory, name + ".json"))
    for path in candidates:
        if os.path.isfile(path):
            with open(path) as fh:
                return group_from_json(json.load(fh))
    raise ValidationError(f"unknown group {name!r}; catalog has {catalog_names()}")
