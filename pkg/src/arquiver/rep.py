"""Representations of bound quivers and the functors acting on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraAutomorphism, BoundQuiverAlgebra, Path, projective

DEFAULT_TRIALS = 32


class RepresentationError(ValueError):
    pass


class DecompositionError(RuntimeError):
    """Raised when a splitting cannot be certified over the given field."""

    def __init__(self, msg: str = "decomposition not certified; extend field"):
        super().__init__(msg)


class Representation:
    """Vertex spaces ``F^dims[v]`` and one matrix per arrow (target x source)."""

    def __init__(self, alg: BoundQuiverAlgebra, dims: Dict[str, int], mats: Dict[str, np.ndarray], check: bool = True):
        self.alg = alg
        f = alg.field
        q = alg.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.mats: Dict[str, np.ndarray] = {}
        for a in q.arrows:
            m = mats.get(a.name)
            shape = (self.dims[a.tgt], self.dims[a.src])
            if m is None:
                m = f.zeros(shape)
            m = np.asarray(m, dtype=f.dtype).reshape(shape) if np.size(m) == shape[0] * shape[1] else None
            if m is None:
                raise RepresentationError(f"arrow {a.name}: expected a {shape} matrix")
            self.mats[a.name] = m
        self._rho: Optional[List[np.ndarray]] = None
        if check:
            self.check_relations()

    # -- basic data ---------------------------------------------------------
    @property
    def field(self):
        return self.alg.field

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.alg.quiver.vertices)

    def offsets(self) -> Dict[str, int]:
        out, pos = {}, 0
        for v in self.alg.quiver.vertices:
            out[v] = pos
            pos += self.dims[v]
        return out

    def __repr__(self) -> str:
        return f"Representation(dims={self.dim_vector})"

    def path_matrix(self, p: Path) -> np.ndarray:
        f = self.field
        if not p.arrows:
            return f.eye(self.dims[p.src])
        arrows = self.alg.quiver.arrows
        out = self.mats[arrows[p.arrows[-1]].name]
        for ai in reversed(p.arrows[:-1]):
            out = f.matmul(self.mats[arrows[ai].name], out)
        return out

    def check_relations(self) -> None:
        f = self.field
        for rel in self.alg.relations:
            s, t = rel[0][1].src, rel[0][1].tgt
            acc = f.zeros((self.dims[t], self.dims[s]))
            for c, p in rel:
                acc = f.add(acc, f.mul(self.path_matrix(p), c))
            if not f.iszero_matrix(acc):
                raise RepresentationError("a relation does not vanish on the representation")
        # long paths must vanish as well
        for p in self.alg.quiver.paths_upto(self.alg.nilpotency):
            if len(p) == self.alg.nilpotency and not f.iszero_matrix(self.path_matrix(p)):
                raise RepresentationError("a path of length N acts nonzero")

    def block(self, m: np.ndarray, tgt: str, src: str) -> np.ndarray:
        """Embed a tgt x src block in a total-space matrix."""
        off = self.offsets()
        out = self.field.zeros((self.dim, self.dim))
        out[off[tgt] : off[tgt] + self.dims[tgt], off[src] : off[src] + self.dims[src]] = m
        return out

    def rho(self) -> List[np.ndarray]:
        """Total-space action matrices of the algebra basis elements."""
        if self._rho is None:
            self._rho = [self.block(self.path_matrix(p), p.tgt, p.src) for p in self.alg.basis]
        return self._rho

    def action(self, a) -> np.ndarray:
        """Total-space matrix of an algebra element given by coordinates."""
        f = self.field
        out = f.zeros((self.dim, self.dim))
        for c, r in zip(np.asarray(a), self.rho()):
            if not f.is_zero(c):
                out = f.add(out, f.mul(r, c))
        return out

    def arrow_total(self, name: str) -> np.ndarray:
        a = self.alg.quiver.arrows[self.alg.quiver.aindex[name]]
        return self.block(self.mats[name], a.tgt, a.src)

    def equal(self, other: "Representation") -> bool:
        return (
            self.alg is other.alg
            and self.dims == other.dims
            and all(self.field.equal(self.mats[k], other.mats[k]) for k in self.mats)
        )

    def is_zero(self) -> bool:
        return self.dim == 0

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, alg: BoundQuiverAlgebra) -> "Representation":
        return cls(alg, {}, {}, check=False)

    @classmethod
    def from_module_action(
        cls, alg: BoundQuiverAlgebra, idempotents: Dict[str, np.ndarray], arrows: Dict[str, np.ndarray]
    ) -> Tuple["Representation", np.ndarray]:
        """Build a representation from total-space actions of idempotents and arrows.

        Returns the representation and the matrix whose columns are the chosen
        vertex-space bases, in vertex order (an isomorphism onto the total space).
        """
        f = alg.field
        bases = {v: f.column_space(idempotents[v]) for v in alg.quiver.vertices}
        change = np.concatenate([bases[v] for v in alg.quiver.vertices], axis=1)
        inv = f.inverse(change)
        off, pos = {}, 0
        for v in alg.quiver.vertices:
            off[v] = pos
            pos += bases[v].shape[1]
        mats = {}
        for a in alg.quiver.arrows:
            full = f.matmul(inv, f.matmul(arrows[a.name], change))
            mats[a.name] = full[off[a.tgt] : off[a.tgt] + bases[a.tgt].shape[1], off[a.src] : off[a.src] + bases[a.src].shape[1]]
        dims = {v: bases[v].shape[1] for v in alg.quiver.vertices}
        return cls(alg, dims, mats), change

    # -- json -----------------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        return {
            "dims": dict(self.dims),
            "matrices": {k: [[f.to_str(x) for x in row] for row in m] for k, m in self.mats.items()},
        }

    @classmethod
    def from_json(cls, alg: BoundQuiverAlgebra, data: dict, params: Optional[Dict[str, object]] = None) -> "Representation":
        f = alg.field
        params = params or {}
        mats = {}
        dims = data["dims"]
        for a in alg.quiver.arrows:
            rows = data.get("matrices", {}).get(a.name)
            shape = (int(dims.get(a.tgt, 0)), int(dims.get(a.src, 0)))
            if rows is None:
                mats[a.name] = f.zeros(shape)
                continue
            m = f.zeros(shape)
            for i, row in enumerate(rows):
                for j, x in enumerate(row):
                    x = str(x)
                    try:
                        m[i, j] = f.element(params[x]) if x in params else f.element(x)
                    except (ValueError, ZeroDivisionError) as exc:
                        raise RepresentationError(f"arrow {a.name}: cannot read entry {x!r} (unset parameter?)") from exc
            mats[a.name] = m
        return cls(alg, dims, mats)


@dataclass
class ModuleMap:
    """Blocks ``maps[v]`` of shape ``tgt.dims[v] x src.dims[v]``."""

    src: Representation
    tgt: Representation
    maps: Dict[str, np.ndarray]

    @property
    def field(self):
        return self.src.field

    def total(self) -> np.ndarray:
        f = self.field
        out = f.zeros((self.tgt.dim, self.src.dim))
        so, to = self.src.offsets(), self.tgt.offsets()
        for v, m in self.maps.items():
            out[to[v] : to[v] + self.tgt.dims[v], so[v] : so[v] + self.src.dims[v]] = m
        return out

    @classmethod
    def from_total(cls, src: Representation, tgt: Representation, m: np.ndarray) -> "ModuleMap":
        so, to = src.offsets(), tgt.offsets()
        maps = {
            v: np.asarray(m)[to[v] : to[v] + tgt.dims[v], so[v] : so[v] + src.dims[v]]
            for v in src.alg.quiver.vertices
        }
        return cls(src, tgt, maps)

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        return cls(m, m, {v: m.field.eye(d) for v, d in m.dims.items()})

    @classmethod
    def zero(cls, src: Representation, tgt: Representation) -> "ModuleMap":
        f = src.field
        return cls(src, tgt, {v: f.zeros((tgt.dims[v], src.dims[v])) for v in src.dims})

    def is_homomorphism(self) -> bool:
        f = self.field
        for a in self.src.alg.quiver.arrows:
            lhs = f.matmul(self.tgt.mats[a.name], self.maps[a.src])
            rhs = f.matmul(self.maps[a.tgt], self.src.mats[a.name])
            if not f.equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        f = self.field
        return ModuleMap(other.src, self.tgt, {v: f.matmul(self.maps[v], other.maps[v]) for v in self.maps})

    def add(self, other: "ModuleMap") -> "ModuleMap":
        f = self.field
        return ModuleMap(self.src, self.tgt, {v: f.add(self.maps[v], other.maps[v]) for v in self.maps})

    def scale(self, c) -> "ModuleMap":
        f = self.field
        return ModuleMap(self.src, self.tgt, {v: f.mul(m, c) for v, m in self.maps.items()})

    def rank(self) -> int:
        return sum(self.field.rank(m) for m in self.maps.values() if m.size)

    def is_injective(self) -> bool:
        return self.rank() == self.src.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.tgt.dim

    def is_iso(self) -> bool:
        return self.src.dim == self.tgt.dim and self.is_injective()

    def is_zero(self) -> bool:
        return all(self.field.iszero_matrix(m) for m in self.maps.values())

    def inverse(self) -> "ModuleMap":
        f = self.field
        return ModuleMap(self.tgt, self.src, {v: f.inverse(m) if m.size else m.T.copy() for v, m in self.maps.items()})

    def is_nilpotent(self) -> bool:
        """For endomorphisms: some power vanishes."""
        f = self.field
        for m in self.maps.values():
            p = m
            for _ in range(max(1, m.shape[0]).bit_length() + 1):
                p = f.matmul(p, p)
            if m.size and not f.iszero_matrix(p):
                return False
        return True

    def kernel(self) -> Tuple[Representation, "ModuleMap"]:
        f = self.field
        return subrepresentation(self.src, {v: f.kernel(m) if m.shape[1] else m.T.copy()[:, :0] for v, m in self.maps.items()})

    def image(self) -> Tuple[Representation, "ModuleMap"]:
        f = self.field
        return subrepresentation(self.tgt, {v: f.column_space(m) if m.size else f.zeros((m.shape[0], 0)) for v, m in self.maps.items()})

    def cokernel(self) -> Tuple[Representation, "ModuleMap"]:
        sub = {v: self.field.column_space(m) if m.size else self.field.zeros((m.shape[0], 0)) for v, m in self.maps.items()}
        return quotient_representation(self.tgt, sub)


def _sub_bases(m: Representation, bases: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    f = m.field
    out = {}
    for v in m.alg.quiver.vertices:
        b = bases.get(v)
        if b is None or b.size == 0:
            out[v] = f.zeros((m.dims[v], 0))
        else:
            out[v] = f.column_space(np.asarray(b).reshape(m.dims[v], -1))
    return out


def subrepresentation(m: Representation, bases: Dict[str, np.ndarray]) -> Tuple[Representation, ModuleMap]:
    """The subrepresentation spanned by per-vertex column bases, with its inclusion."""
    f = m.field
    bases = _sub_bases(m, bases)
    mats = {}
    for a in m.alg.quiver.arrows:
        s, t = bases[a.src], bases[a.tgt]
        img = f.matmul(m.mats[a.name], s)
        if s.shape[1] == 0:
            mats[a.name] = f.zeros((t.shape[1], 0))
            continue
        if t.shape[1] == 0:
            if not f.iszero_matrix(img):
                raise RepresentationError("subspace is not closed under the arrow action")
            mats[a.name] = f.zeros((0, s.shape[1]))
            continue
        x, _ = f.solve(t, img)
        if x is None:
            raise RepresentationError("subspace is not closed under the arrow action")
        mats[a.name] = x
    sub = Representation(m.alg, {v: b.shape[1] for v, b in bases.items()}, mats, check=False)
    return sub, ModuleMap(sub, m, bases)


def quotient_representation(m: Representation, bases: Dict[str, np.ndarray]) -> Tuple[Representation, ModuleMap]:
    """``m`` modulo a subrepresentation, with the projection map."""
    f = m.field
    bases = _sub_bases(m, bases)
    comp, proj = {}, {}
    for v in m.alg.quiver.vertices:
        c = f.complement_basis(bases[v], m.dims[v])
        comp[v] = c
        full = np.concatenate([bases[v], c], axis=1)
        inv = f.inverse(full) if full.size else full
        proj[v] = inv[bases[v].shape[1] :, :]
    mats = {}
    for a in m.alg.quiver.arrows:
        mats[a.name] = f.matmul(proj[a.tgt], f.matmul(m.mats[a.name], comp[a.src]))
    q = Representation(m.alg, {v: c.shape[1] for v, c in comp.items()}, mats, check=False)
    return q, ModuleMap(m, q, proj)


def direct_sum(reps: Sequence[Representation]) -> Tuple[Representation, List[ModuleMap], List[ModuleMap]]:
    """Direct sum with its canonical inclusions and projections."""
    if not reps:
        raise RepresentationError("empty direct sum")
    alg = reps[0].alg
    f = alg.field
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        m = f.zeros((dims[a.tgt], dims[a.src]))
        ro = co = 0
        for r in reps:
            m[ro : ro + r.dims[a.tgt], co : co + r.dims[a.src]] = r.mats[a.name]
            ro += r.dims[a.tgt]
            co += r.dims[a.src]
        mats[a.name] = m
    total = Representation(alg, dims, mats, check=False)
    incs, projs = [], []
    pos = {v: 0 for v in alg.quiver.vertices}
    for r in reps:
        inc, pr = {}, {}
        for v in alg.quiver.vertices:
            e = f.eye(dims[v])[:, pos[v] : pos[v] + r.dims[v]]
            inc[v] = e
            pr[v] = e.T.copy()
            pos[v] += r.dims[v]
        incs.append(ModuleMap(r, total, inc))
        projs.append(ModuleMap(total, r, pr))
    return total, incs, projs


# -- Hom ------------------------------------------------------------------------


def hom_space(m: Representation, n: Representation) -> List[ModuleMap]:
    """Basis of Hom(m, n) from the intertwiner equations."""
    if m.alg is not n.alg:
        raise RepresentationError("modules over different algebras")
    f = m.field
    verts = m.alg.quiver.vertices
    off, pos = {}, 0
    for v in verts:
        off[v] = pos
        pos += n.dims[v] * m.dims[v]
    nunk = pos
    if nunk == 0:
        return []
    blocks = []
    for a in m.alg.quiver.arrows:
        s, t = a.src, a.tgt
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        eq = f.zeros((rows, nunk))
        # N_a F_s  and  F_t M_a, with row-major vectorisation
        left = f.kron(n.mats[a.name], f.eye(m.dims[s]))
        right = f.kron(f.eye(n.dims[t]), m.mats[a.name].T)
        cs = slice(off[s], off[s] + n.dims[s] * m.dims[s])
        ct = slice(off[t], off[t] + n.dims[t] * m.dims[t])
        eq[:, cs] = f.add(eq[:, cs], left)
        eq[:, ct] = f.sub(eq[:, ct], right)
        blocks.append(eq)
    kern = f.kernel(np.concatenate(blocks, axis=0)) if blocks else f.eye(nunk)
    out = []
    for j in range(kern.shape[1]):
        col = kern[:, j]
        maps = {v: col[off[v] : off[v] + n.dims[v] * m.dims[v]].reshape(n.dims[v], m.dims[v]) for v in verts}
        out.append(ModuleMap(m, n, maps))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


# -- structure ----------------------------------------------------------------


def radical(m: Representation) -> Tuple[Representation, ModuleMap]:
    f = m.field
    bases = {}
    for v in m.alg.quiver.vertices:
        imgs = [m.mats[a.name] for a in m.alg.quiver.arrows if a.tgt == v and m.mats[a.name].size]
        bases[v] = np.concatenate(imgs, axis=1) if imgs else f.zeros((m.dims[v], 0))
    return subrepresentation(m, bases)


def socle(m: Representation) -> Tuple[Representation, ModuleMap]:
    f = m.field
    bases = {}
    for v in m.alg.quiver.vertices:
        outs = [m.mats[a.name] for a in m.alg.quiver.arrows if a.src == v and m.mats[a.name].shape[0]]
        if not m.dims[v]:
            bases[v] = f.zeros((0, 0))
        elif outs:
            bases[v] = f.kernel(np.concatenate(outs, axis=0))
        else:
            bases[v] = f.eye(m.dims[v])
    return subrepresentation(m, bases)


def top(m: Representation) -> Tuple[Representation, ModuleMap]:
    _, inc = radical(m)
    return quotient_representation(m, inc.maps)


def radical_layers(m: Representation) -> List[Tuple[int, ...]]:
    """Dimension vectors of rad^i M / rad^{i+1} M."""
    layers = []
    cur = m
    while cur.dim:
        r, _ = radical(cur)
        layers.append(tuple(a - b for a, b in zip(cur.dim_vector, r.dim_vector)))
        if r.dim == cur.dim:
            raise RepresentationError("radical series does not terminate")
        cur = r
    return layers


def length(m: Representation) -> int:
    """Composition length; simples of a basic algebra are one-dimensional."""
    by_layers = sum(sum(layer) for layer in radical_layers(m))
    assert by_layers == m.dim
    return by_layers


def structure_ops(m: Representation) -> dict:
    return {"radical": radical(m)[0], "socle": socle(m)[0], "top": top(m)[0], "length": length(m)}


# -- projective cover and syzygy ---------------------------------------------


def projective_cover(m: Representation) -> Tuple[Representation, ModuleMap, List[str]]:
    """Minimal projective cover ``P -> m``; also returns the vertex of each summand."""
    f = m.field
    alg = m.alg
    _, rad_inc = radical(m)
    summands, gens = [], []
    for v in alg.quiver.vertices:
        comp = f.complement_basis(rad_inc.maps[v], m.dims[v]) if m.dims[v] else f.zeros((0, 0))
        for j in range(comp.shape[1]):
            summands.append(v)
            gens.append(comp[:, j])
    if not summands:
        return Representation.zero(alg), ModuleMap.zero(Representation.zero(alg), m), []
    projs = [projective_cached(alg, v) for v in summands]
    cover, incs, _ = direct_sum(projs)
    maps = {w: f.zeros((m.dims[w], cover.dims[w])) for w in alg.quiver.vertices}
    pos = {w: 0 for w in alg.quiver.vertices}
    for v, g, p in zip(summands, gens, projs):
        for w in alg.quiver.vertices:
            paths = [q for q in alg.basis if q.src == v and q.tgt == w]
            for k, q in enumerate(paths):
                maps[w][:, pos[w] + k] = f.matmul(m.path_matrix(q), g[:, None])[:, 0]
            pos[w] += p.dims[w]
    return cover, ModuleMap(cover, m, maps), summands


def projective_cached(alg: BoundQuiverAlgebra, v: str) -> Representation:
    cache = alg.__dict__.setdefault("_projectives", {})
    if v not in cache:
        cache[v] = projective(alg, v)
    return cache[v]


def syzygy(m: Representation) -> Representation:
    return syzygy_with_inclusion(m)[0]


def syzygy_with_inclusion(m: Representation) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """``(Omega m, Omega m -> P, P -> m)``."""
    cover, pi, _ = projective_cover(m)
    k, inc = pi.kernel()
    return k, inc, pi


def omega_period(m: Representation, horizon: int) -> Optional[int]:
    """Least ``k <= horizon`` with ``Omega^k M = M`` for indecomposable ``M``, else ``None``."""
    cur = m
    for k in range(1, horizon + 1):
        cur = syzygy(cur)
        if cur.dim == 0:
            return None
        if cur.dim_vector == m.dim_vector and iso_indecomposable(m, cur):
            return k
    return None


def is_projective(m: Representation) -> bool:
    return syzygy(m).dim == 0


# -- twist and duality --------------------------------------------------------


def twist(m: Representation, g: AlgebraAutomorphism) -> Representation:
    """``M_g`` with ``b . x = g(b) x``."""
    if g.alg is not m.alg:
        raise RepresentationError("automorphism of a different algebra")
    alg = m.alg
    idem = {v: m.action(g(alg.idempotent(v))) for v in alg.quiver.vertices}
    arrs = {a.name: m.action(g(alg.arrow(a.name))) for a in alg.quiver.arrows}
    rep, _ = Representation.from_module_action(alg, idem, arrs)
    return rep


def dual(m: Representation, op_alg: Optional[BoundQuiverAlgebra] = None) -> Representation:
    """``D M = Hom_k(M, k)`` as a module over the opposite algebra."""
    op = op_alg if op_alg is not None else m.alg.opposite()[0]
    return Representation(op, dict(m.dims), {k: v.T.copy() for k, v in m.mats.items()}, check=False)


def dual_map(h: ModuleMap, d_src: Representation, d_tgt: Representation) -> ModuleMap:
    """``D h : D tgt -> D src``; pass the already dualised modules."""
    return ModuleMap(d_tgt, d_src, {v: m.T.copy() for v, m in h.maps.items()})


# -- endomorphism rings and decomposition -----------------------------------


def _eval_poly_blocks(f, poly, maps: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    return {v: f.poly_eval_matrix(poly, m) if m.size else m for v, m in maps.items()}


def _stable_kernel(f, m: np.ndarray) -> np.ndarray:
    if m.size == 0:
        return f.zeros((m.shape[0], 0))
    p = m
    for _ in range(max(1, m.shape[0]).bit_length() + 1):
        p = f.matmul(p, p)
    return f.kernel(p)


def _total_endo(phi: ModuleMap) -> np.ndarray:
    return phi.total()


def _local_certificate(m: Representation, endo: List[ModuleMap]) -> str:
    """Return ``"local"``, ``"split"`` (an element with coprime factors exists) or ``"unknown"``."""
    verdict, _ = _certify_or_split(m, endo)
    return verdict


def _certify_or_split(m: Representation, endo: List[ModuleMap]) -> Tuple[str, Optional[Tuple[ModuleMap, list]]]:
    """Scan a basis of End(m): a coprime factorisation gives a splitting element,
    otherwise try to certify that End(m) is local."""
    f = m.field
    n = m.dim
    shifted = []
    ident = f.eye(n)
    unknown = False
    for e in endo:
        t = e.total()
        mp = f.min_poly(t)
        parts = f.coprime_split(mp)
        if parts is not None:
            return "split", (e, parts)
        rad = _squarefree_part(f, mp)
        if rad.size != 2:
            unknown = True
            continue
        lam = f.neg(rad[0])
        shifted.append(f.sub(t, f.mul(ident, lam)))
    if unknown:
        return "unknown", None
    if not shifted:
        return "local", None
    # J = span{b - lambda_b}: closed under products and nilpotent => End/J = k
    basis = f.column_space(np.stack([s.reshape(-1) for s in shifted], axis=1))
    if f.iszero_matrix(basis):
        return "local", None
    current = basis
    while True:
        prods = [
            f.matmul(current[:, i].reshape(n, n), basis[:, j].reshape(n, n)).reshape(-1)
            for i in range(current.shape[1])
            for j in range(basis.shape[1])
        ]
        stacked = np.stack(prods, axis=1)
        if f.iszero_matrix(stacked):
            return "local", None
        if not f.in_span(basis, stacked):
            return "unknown", None
        nxt = f.column_space(stacked)
        if nxt.shape[1] >= current.shape[1]:
            return "unknown", None
        current = nxt


def _squarefree_part(f, poly) -> np.ndarray:
    from .exactcore import RationalField, _finite_radical

    if isinstance(f, RationalField):
        g = f.poly_gcd(poly, f.poly_deriv(poly))
        return f.poly_monic(f.poly_divmod(poly, g)[0])
    return _finite_radical(f, poly)


def is_local(m: Representation) -> bool:
    return _local_certificate(m, hom_space(m, m)) == "local"


@dataclass
class Summand:
    rep: Representation
    inclusion: ModuleMap
    projection: ModuleMap


def _split(m: Representation, rng: np.random.Generator, trials: int) -> List[Tuple[Representation, np.ndarray]]:
    """Indecomposable summands of ``m`` with total-space inclusion matrices.

    The basis of End(m) is scanned first: it either yields a splitting element
    or, usually, a certificate that End(m) is local. Random combinations are
    only tried when neither happens.
    """
    f = m.field
    if m.dim == 0:
        return []
    endo = hom_space(m, m)
    if len(endo) == 1:
        return [(m, f.eye(m.dim))]
    verdict, found = _certify_or_split(m, endo)
    if verdict == "local":
        return [(m, f.eye(m.dim))]
    if found is None:
        for _ in range(trials):
            coeffs = f.random(len(endo), rng)
            acc = ModuleMap.zero(m, m)
            for c, e in zip(coeffs, endo):
                if not f.is_zero(c):
                    acc = acc.add(e.scale(c))
            parts = f.coprime_split(f.min_poly(acc.total()))
            if parts is not None:
                found = (acc, parts)
                break
    if found is None:
        raise DecompositionError()
    phi, parts = found
    out = []
    for part in parts:
        blocks = _eval_poly_blocks(f, part, phi.maps)
        ker = {v: _stable_kernel(f, b) if m.dims[v] else f.zeros((0, 0)) for v, b in blocks.items()}
        sub, inc = subrepresentation(m, ker)
        inc_total = inc.total()
        for piece, piece_inc in _split(sub, rng, trials):
            out.append((piece, f.matmul(inc_total, piece_inc)))
    return out


class Decomposition:
    """``m`` as a direct sum of indecomposables with mutually inverse maps."""

    def __init__(self, m: Representation, summands: List[Summand]):
        self.module = m
        self.summands = summands
        self.groups: List[Tuple[Representation, int, List[int]]] = []
        for k, s in enumerate(summands):
            for g_idx, (rep, mult, members) in enumerate(self.groups):
                if iso_indecomposable(rep, s.rep):
                    self.groups[g_idx] = (rep, mult + 1, members + [k])
                    break
            else:
                self.groups.append((s.rep, 1, [k]))

    def multiplicities(self) -> List[Tuple[Representation, int]]:
        return [(rep, mult) for rep, mult, _ in self.groups]

    def __len__(self) -> int:
        return len(self.summands)

    def verify(self) -> bool:
        f = self.module.field
        inc = np.concatenate([s.inclusion.total() for s in self.summands], axis=1) if self.summands else f.zeros((0, 0))
        proj = np.concatenate([s.projection.total() for s in self.summands], axis=0) if self.summands else f.zeros((0, 0))
        n = self.module.dim
        return f.equal(f.matmul(inc, proj), f.eye(n)) and f.equal(f.matmul(proj, inc), f.eye(n))


def decompose(m: Representation, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Decomposition:
    """Split ``m`` into indecomposables; raises :class:`DecompositionError` if uncertifiable."""
    f = m.field
    rng = np.random.default_rng(seed)
    pieces = _split(m, rng, trials)
    if not pieces:
        return Decomposition(m, [])
    inc = np.concatenate([p for _, p in pieces], axis=1)
    proj = f.inverse(inc)
    summands = []
    pos = 0
    for rep, p in pieces:
        k = rep.dim
        summands.append(
            Summand(rep, ModuleMap.from_total(rep, m, p), ModuleMap.from_total(m, rep, proj[pos : pos + k, :]))
        )
        pos += k
    # order summands deterministically: by dimension vector, then discovery order
    summands.sort(key=lambda s: (s.rep.dim, s.rep.dim_vector))
    return Decomposition(m, summands)


def is_indecomposable(m: Representation, seed: int = 0) -> bool:
    return m.dim > 0 and len(decompose(m, seed)) == 1


def iso_indecomposable(m: Representation, n: Representation, seed: int = 0) -> bool:
    """Certified iso test when ``m`` is indecomposable (local endomorphism ring).

    A random map that happens to be bijective settles the positive case quickly;
    otherwise every composite ``g h`` of basis maps must be checked, since in a
    local ring a non-nilpotent element is a unit.
    """
    if m.alg is not n.alg or m.dim_vector != n.dim_vector:
        return False
    if m.dim == 0:
        return True
    fwd = hom_space(m, n)
    if not fwd:
        return False
    if _random_iso(fwd, np.random.default_rng(seed)) is not None:
        return True
    back = hom_space(n, m)
    if len(fwd) != len(back) or len(fwd) != hom_dim(m, m):
        return False
    for g in back:
        for h in fwd:
            if g.compose(h).is_iso():
                return True
    return False


def _random_iso(basis: List[ModuleMap], rng: np.random.Generator, trials: int = 6) -> Optional[ModuleMap]:
    """A bijective random combination of ``basis``, if one turns up."""
    f = basis[0].field
    for h in basis:
        if h.is_iso():
            return h
    for _ in range(trials):
        coeffs = f.random(len(basis), rng)
        maps = {}
        for v in basis[0].maps:
            stack = np.stack([b.maps[v] for b in basis], axis=0)
            acc = f.zeros(stack.shape[1:])
            for c, blk in zip(coeffs, stack):
                if not f.is_zero(c):
                    acc = f.add(acc, f.mul(blk, c))
            maps[v] = acc
        h = ModuleMap(basis[0].src, basis[0].tgt, maps)
        if h.is_iso():
            return h
    return None


def iso(m: Representation, n: Representation, seed: int = 0) -> bool:
    """Isomorphism test via decomposition and pairwise certified matching."""
    if m.alg is not n.alg or m.dim_vector != n.dim_vector:
        return False
    if m.dim == 0:
        return True
    if hom_dim(m, n) != hom_dim(m, m) or hom_dim(n, m) != hom_dim(n, n):
        return False
    dm = decompose(m, seed)
    dn = decompose(n, seed)
    if len(dm) == 1 and len(dn) == 1:
        return iso_indecomposable(m, n)
    left = dm.multiplicities()
    right = dn.multiplicities()
    if len(left) != len(right):
        return False
    used = [False] * len(right)
    for rep, mult in left:
        for k, (other, omult) in enumerate(right):
            if not used[k] and omult == mult and iso_indecomposable(rep, other):
                used[k] = True
                break
        else:
            return False
    return True


def find_isomorphism(m: Representation, n: Representation, seed: int = 0) -> Optional[ModuleMap]:
    """An explicit isomorphism between indecomposables, or ``None``."""
    if m.dim_vector != n.dim_vector:
        return None
    fwd = hom_space(m, n)
    if not fwd:
        return None
    h = _random_iso(fwd, np.random.default_rng(seed))
    if h is not None:
        return h
    back = hom_space(n, m)
    for g in back:
        for h in fwd:
            # g h is a unit of the local ring End(m), so h is split mono, hence iso
            if g.compose(h).is_iso():
                return h
    return None


def random_module(alg: BoundQuiverAlgebra, rng: np.random.Generator, max_gens: int = 2, max_rels: int = 2) -> Representation:
    """A random quotient of a small projective by random homogeneous elements."""
    f = alg.field
    verts = alg.quiver.vertices
    tops = [verts[int(rng.integers(len(verts)))] for _ in range(int(rng.integers(1, max_gens + 1)))]
    p, _, _ = direct_sum([projective_cached(alg, v) for v in tops])
    sub = {v: [] for v in verts}
    for _ in range(int(rng.integers(0, max_rels + 1))):
        v = verts[int(rng.integers(len(verts)))]
        if p.dims[v] == 0:
            continue
        vec = f.random((p.dims[v], 1), rng)
        # generated submodule: all path images of vec
        for q in alg.basis:
            if q.src == v:
                sub[q.tgt].append(f.matmul(p.path_matrix(q), vec))
    bases = {v: np.concatenate(sub[v], axis=1) if sub[v] else f.zeros((p.dims[v], 0)) for v in verts}
    quo, _ = quotient_representation(p, bases)
    return quo


def load_representation(alg: BoundQuiverAlgebra, path: str, params: Optional[Dict[str, object]] = None) -> Representation:
    with open(path) as fh:
        return Representation.from_json(alg, json.load(fh), params)


# -- lifting and descending maps vertex by vertex ------------------------------


def lift_from_cover(theta: ModuleMap, pi: ModuleMap, summands: Sequence[str]) -> ModuleMap:
    """A lift ``L`` with ``pi L = theta`` where ``theta.src`` is the cover built on ``summands``.

    Each indecomposable projective is free on its trivial path, so the lift is
    determined by a preimage of the image of that generator.
    """
    f = theta.field
    alg = theta.src.alg
    x_mod, p = pi.src, theta.src
    maps = {w: f.zeros((x_mod.dims[w], p.dims[w])) for w in alg.quiver.vertices}
    pos = {w: 0 for w in alg.quiver.vertices}
    for v in summands:
        paths = {w: [q for q in alg.basis if q.src == v and q.tgt == w] for w in alg.quiver.vertices}
        gen = pos[v] + next(k for k, q in enumerate(paths[v]) if not q.arrows)
        y = theta.maps[v][:, gen : gen + 1]
        x, _ = f.solve(pi.maps[v], y)
        if x is None:
            raise RepresentationError("map does not lift through the given surjection")
        for w in alg.quiver.vertices:
            for k, q in enumerate(paths[w]):
                maps[w][:, pos[w] + k] = f.matmul(x_mod.path_matrix(q), x)[:, 0]
            pos[w] += len(paths[w])
    return ModuleMap(p, x_mod, maps)


def restrict_map(h: ModuleMap, inc_src: ModuleMap, inc_tgt: ModuleMap) -> ModuleMap:
    """``h`` restricted to submodules: the ``r`` with ``inc_tgt r = h inc_src``."""
    f = h.field
    maps = {}
    for v in h.maps:
        rhs = f.matmul(h.maps[v], inc_src.maps[v])
        if inc_tgt.maps[v].shape[1] == 0 or rhs.shape[1] == 0:
            if not f.iszero_matrix(rhs):
                raise RepresentationError("map does not restrict to the submodules")
            maps[v] = f.zeros((inc_tgt.maps[v].shape[1], rhs.shape[1]))
            continue
        x, _ = f.solve(inc_tgt.maps[v], rhs)
        if x is None:
            raise RepresentationError("map does not restrict to the submodules")
        maps[v] = x
    return ModuleMap(inc_src.src, inc_tgt.src, maps)


def descend_map(h: ModuleMap, q: ModuleMap) -> ModuleMap:
    """The ``r`` with ``r q = h`` for a surjection ``q``; ``h`` must kill ``ker q``."""
    f = h.field
    maps = {}
    for v in h.maps:
        qv, hv = q.maps[v], h.maps[v]
        if qv.shape[0] == 0 or hv.shape[0] == 0:
            maps[v] = f.zeros((hv.shape[0], qv.shape[0]))
            if hv.size and not f.iszero_matrix(hv):
                raise RepresentationError("map does not descend to the quotient")
            continue
        x, _ = f.solve(qv.T.copy(), hv.T.copy())
        if x is None:
            raise RepresentationError("map does not descend to the quotient")
        maps[v] = x.T.copy()
    return ModuleMap(q.tgt, h.tgt, maps)
