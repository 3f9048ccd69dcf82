"""Iso-class registry, the free group on indecomposables and the form dim Hom."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import BoundQuiverAlgebra
from .rep import (
    ModuleMap,
    Representation,
    decompose,
    hom_dim,
    hom_space,
    iso_indecomposable,
    is_projective,
    quotient_representation,
    radical,
    subrepresentation,
)


class GrothError(ValueError):
    pass


def invariant_key(m: Representation) -> tuple:
    """Cheap iso invariant: dimension vector, dim End and the ranks of path actions."""
    f = m.field
    ranks = tuple(f.rank(m.path_matrix(p)) if m.dims[p.src] and m.dims[p.tgt] else 0 for p in m.alg.basis)
    return (m.dim_vector, hom_dim(m, m), ranks)


class IsoRegistry:
    """Canonical representatives of indecomposables; insert-or-get is atomic."""

    def __init__(self, alg: BoundQuiverAlgebra):
        self.alg = alg
        self.reps: List[Representation] = []
        self.keys: List[tuple] = []
        self._buckets: Dict[tuple, List[int]] = {}
        self._lock = threading.Lock()
        self._labels: List[str] = []

    def __len__(self) -> int:
        return len(self.reps)

    def lookup(self, m: Representation) -> Optional[int]:
        key = invariant_key(m)
        with self._lock:
            return self._find(m, key)

    def _find(self, m: Representation, key: tuple) -> Optional[int]:
        for idx in self._buckets.get(key, []):
            if iso_indecomposable(self.reps[idx], m):
                return idx
        return None

    def register(self, m: Representation) -> int:
        """Index of the iso class of the indecomposable ``m``, inserting it if new."""
        if m.alg is not self.alg:
            raise GrothError("module over a different algebra")
        key = invariant_key(m)
        with self._lock:
            found = self._find(m, key)
            if found is not None:
                return found
            idx = len(self.reps)
            self.reps.append(m)
            self.keys.append(key)
            self._buckets.setdefault(key, []).append(idx)
            label = "[" + ",".join(str(d) for d in m.dim_vector) + "]"
            clash = sum(1 for lab in self._labels if lab.split("#")[0] == label)
            self._labels.append(label if clash == 0 else f"{label}#{clash + 1}")
            return idx

    def label(self, idx: int) -> str:
        return self._labels[idx]

    def register_module(self, m: Representation, seed: int = 0) -> "GrothElement":
        """[M] as a sum of registered indecomposables."""
        out: Dict[int, int] = {}
        for rep, mult in decompose(m, seed).multiplicities():
            k = self.register(rep)
            out[k] = out.get(k, 0) + mult
        return GrothElement(self, out)


@dataclass
class GrothElement:
    registry: IsoRegistry
    coeffs: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def __add__(self, other: "GrothElement") -> "GrothElement":
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GrothElement(self.registry, out)

    def __neg__(self) -> "GrothElement":
        return GrothElement(self.registry, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "GrothElement") -> "GrothElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GrothElement":
        return GrothElement(self.registry, {k: n * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GrothElement) and self.registry is other.registry and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "GrothElement") -> None:
        if self.registry is not other.registry:
            raise GrothError("elements of different registries")

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            lab = self.registry.label(k)
            mag = "" if abs(c) == 1 else f"{abs(c)}·"
            sign = "−" if c < 0 else "+"
            parts.append((sign, f"{mag}{lab}"))
        text = ("−" if parts[0][0] == "−" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


class HomForm:
    """Memoised bilinear form (u, v) = sum u_i v_j dim Hom(V_i, V_j)."""

    def __init__(self, registry: IsoRegistry):
        self.registry = registry
        self._memo: Dict[Tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def basic(self, i: int, j: int) -> int:
        with self._lock:
            if (i, j) in self._memo:
                return self._memo[(i, j)]
        val = hom_dim(self.registry.reps[i], self.registry.reps[j])
        with self._lock:
            self._memo[(i, j)] = val
        return val

    def __call__(self, u: GrothElement, v: GrothElement) -> int:
        for e in (u, v):
            if e.registry is not self.registry:
                raise GrothError("unregistered key")
        return sum(a * b * self.basic(i, j) for i, a in u.coeffs.items() for j, b in v.coeffs.items())


def pair(u: GrothElement, v: GrothElement, form: Optional[HomForm] = None) -> int:
    form = form or HomForm(u.registry)
    return form(u, v)


@dataclass
class ExactSequence:
    """0 -> left --inj--> middle --surj--> right -> 0."""

    inj: ModuleMap
    surj: ModuleMap

    @property
    def left(self) -> Representation:
        return self.inj.src

    @property
    def middle(self) -> Representation:
        return self.inj.tgt

    @property
    def right(self) -> Representation:
        return self.surj.tgt

    def is_exact(self) -> bool:
        if self.inj.tgt is not self.surj.src and self.inj.tgt.dim_vector != self.surj.src.dim_vector:
            return False
        if not (self.inj.is_injective() and self.surj.is_surjective()):
            return False
        if not self.surj.compose(self.inj).is_zero():
            return False
        return self.middle.dim == self.left.dim + self.right.dim

    def is_split(self) -> bool:
        return _section(self.surj) is not None


def _section(surj: ModuleMap) -> Optional[ModuleMap]:
    """A map ``s`` with ``surj o s = id``, if one exists."""
    return factor_through(ModuleMap.identity(surj.tgt), surj)


def factor_through(
    target: ModuleMap, via: ModuleMap, cands: Optional[List[ModuleMap]] = None
) -> Optional[ModuleMap]:
    """Find ``h: target.src -> via.src`` with ``via o h = target``, or ``None``.

    ``cands`` may pass a precomputed basis of Hom(target.src, via.src).
    """
    f = target.field
    cands = hom_space(target.src, via.src) if cands is None else cands
    goal = target.total().reshape(-1)
    if not cands:
        return ModuleMap.zero(target.src, via.src) if f.iszero_matrix(goal) else None
    cols = np.stack([via.compose(h).total().reshape(-1) for h in cands], axis=1)
    if cols.shape[0] == 0:
        return ModuleMap.zero(target.src, via.src)
    x, _ = f.solve(cols, goal)
    if x is None:
        return None
    acc = ModuleMap.zero(target.src, via.src)
    for c, h in zip(x[:, 0], cands):
        if not f.is_zero(c):
            acc = acc.add(h.scale(c))
    return acc


def factor_after(target: ModuleMap, first: ModuleMap) -> Optional[ModuleMap]:
    """Find ``h: first.tgt -> target.tgt`` with ``h o first = target``, or ``None``."""
    f = target.field
    cands = hom_space(first.tgt, target.tgt)
    goal = target.total().reshape(-1)
    if not cands or goal.size == 0:
        return ModuleMap.zero(first.tgt, target.tgt) if f.iszero_matrix(goal) else None
    cols = np.stack([h.compose(first).total().reshape(-1) for h in cands], axis=1)
    x, _ = f.solve(cols, goal)
    if x is None:
        return None
    acc = ModuleMap.zero(first.tgt, target.tgt)
    for c, h in zip(x[:, 0], cands):
        if not f.is_zero(c):
            acc = acc.add(h.scale(c))
    return acc


def seq_class(q: ExactSequence, registry: IsoRegistry, seed: int = 0) -> GrothElement:
    """[[Q]] = [B] + [D] - [C]."""
    if not q.is_exact():
        raise GrothError("sequence is not exact")
    b = registry.register_module(q.left, seed) if q.left.dim else GrothElement(registry)
    c = registry.register_module(q.middle, seed) if q.middle.dim else GrothElement(registry)
    d = registry.register_module(q.right, seed) if q.right.dim else GrothElement(registry)
    return b + d - c


def ar_element(v: Representation, registry: IsoRegistry, frob=None, seed: int = 0) -> GrothElement:
    """X_i: [[AR sequence ending at V_i]] or [V_i] - [rad V_i] for projective V_i."""
    if is_projective(v):
        r, _ = radical(v)
        rad_cls = registry.register_module(r, seed) if r.dim else GrothElement(registry)
        return registry.register_module(v, seed) - rad_cls
    from .artheory import almost_split_sequence

    seq = almost_split_sequence(v, frob, seed=seed)
    return seq_class(ExactSequence(seq.inj, seq.surj), registry, seed)


def dual_matrix(modules: Sequence[Representation], frob=None, registry: Optional[IsoRegistry] = None, seed: int = 0) -> np.ndarray:
    """Integer matrix ``pair([V_i], X_j)`` for indecomposables ``V_1..V_r``; the identity when complete."""
    reg = registry if registry is not None else IsoRegistry(modules[0].alg)
    form = HomForm(reg)
    cls = [reg.register_module(v, seed) for v in modules]
    xs = [ar_element(v, reg, frob, seed) for v in modules]
    out = np.zeros((len(modules), len(modules)), dtype=np.int64)
    for i, u in enumerate(cls):
        for j, x in enumerate(xs):
            out[i, j] = form(u, x)
    return out


def split_along_summand(
    q: ExactSequence, w1: ModuleMap, w2: ModuleMap
) -> Tuple[ExactSequence, ExactSequence]:
    """Split Q along right = W1 (+) W2 given by the two inclusions ``w1``, ``w2``.

    Q1: 0 -> pi^-1(W1) -> V -> W2 -> 0 and Q2: 0 -> U -> pi^-1(W1) -> W1 -> 0,
    so that [[Q]] = [[Q1]] + [[Q2]].
    """
    f = q.inj.field
    d = q.right
    if w1.tgt is not d or w2.tgt is not d:
        raise GrothError("decomposition is not of the right term")
    if w1.src.dim == 0 or w2.src.dim == 0:
        raise GrothError("right term must split into two nonzero pieces")
    both = np.concatenate([w1.total(), w2.total()], axis=1)
    if both.shape[0] != both.shape[1] or f.rank(both) != d.dim:
        raise GrothError("the given maps are not a direct sum decomposition")
    inv = f.inverse(both)
    proj2 = ModuleMap.from_total(d, w2.src, inv[w1.src.dim :, :])
    if not proj2.is_homomorphism():
        raise GrothError("the given summands are not submodules")
    pi = q.surj
    comp = proj2.compose(pi)  # V -> W2, kernel = pi^-1(W1)
    pre, pre_inc = comp.kernel()
    q1 = ExactSequence(pre_inc, comp)
    proj1 = ModuleMap.from_total(d, w1.src, inv[: w1.src.dim, :])
    restricted = proj1.compose(pi).compose(pre_inc)  # pi^-1(W1) -> W1
    # U -> pi^-1(W1): the image of U in V lies inside pi^-1(W1)
    u_into = factor_through(q.inj, pre_inc)
    if u_into is None:
        raise GrothError("left term does not lie in the preimage")  # pragma: no cover
    q2 = ExactSequence(u_into, restricted)
    return q1, q2


def random_exact_sequence(alg: BoundQuiverAlgebra, rng: np.random.Generator, pieces: int = 3) -> ExactSequence:
    """0 -> U -> M -> M/U -> 0 for a random module M and random submodule U."""
    from .rep import random_module

    f = alg.field
    m = random_module(alg, rng, max_gens=pieces)
    verts = alg.quiver.vertices
    gens = {v: [] for v in verts}
    for _ in range(int(rng.integers(1, 3))):
        v = verts[int(rng.integers(len(verts)))]
        if m.dims[v] == 0:
            continue
        vec = f.random((m.dims[v], 1), rng)
        for p in alg.basis:
            if p.src == v:
                gens[p.tgt].append(f.matmul(m.path_matrix(p), vec))
    bases = {v: np.concatenate(gens[v], axis=1) if gens[v] else f.zeros((m.dims[v], 0)) for v in verts}
    u, inc = subrepresentation(m, bases)
    _, proj = quotient_representation(m, inc.maps)
    return ExactSequence(inc, proj)
