"""Auslander-Reiten translate, almost split sequences and knitted windows."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .algebra import AlgebraAutomorphism, BoundQuiverAlgebra, FrobeniusStructure
from .grothform import IsoRegistry, factor_through
from .rep import (
    DecompositionError,
    ModuleMap,
    Representation,
    decompose,
    descend_map,
    direct_sum,
    dual,
    hom_space,
    is_projective,
    lift_from_cover,
    projective_cover,
    quotient_representation,
    restrict_map,
    syzygy,
    twist,
    _squarefree_part,
)

DEFAULT_DEPTH = 4
MAX_DEPTH = 8
MAX_NODE_DIM = 512

# tau = Omega^2 of the twist by nu^TWIST_EXPONENT; pinned against D Tr in the tests
TWIST_EXPONENT = -1


class ARError(RuntimeError):
    pass


def _nu(frob: FrobeniusStructure) -> AlgebraAutomorphism:
    return frob.nu if TWIST_EXPONENT == 1 else frob.nu.inverse()


def tau(m: Representation, frob: FrobeniusStructure) -> Representation:
    """tau M = Omega^2 (M twisted by the Nakayama automorphism)."""
    if m.alg is not frob.alg:
        raise ARError("Frobenius structure of a different algebra")
    if is_projective(m):
        raise ARError("tau undefined: module is projective")
    return syzygy(syzygy(twist(m, _nu(frob))))


def tau_inverse(m: Representation, frob: FrobeniusStructure) -> Representation:
    """tau^-1 = D tau_{A^op} D."""
    if is_projective(m):
        raise ARError("tau^-1 undefined: module is projective")
    op_frob = frob.opposite()
    dm = dual(m, op_frob.alg)
    return dual(tau(dm, op_frob), m.alg)


def phi_twist(m: Representation, g: AlgebraAutomorphism) -> Representation:
    """phi_g(M) = Omega(M_g)."""
    if is_projective(m):
        raise ARError("phi undefined: module is projective")
    return syzygy(twist(m, g))


# -- D Tr, an independent route to tau ----------------------------------------


def _row_module(alg: BoundQuiverAlgebra, tops: List[str]):
    """(+)_i e_{u_i} A as a left A^op-module (a^op acts by right multiplication).

    Returns the representation over the opposite algebra, the change matrix from
    its vertex-major coordinates to the summand-major coordinates, and the
    coordinate lists per summand.
    """
    f = alg.field
    op, _ = alg.opposite()
    rows = [[i for i, p in enumerate(alg.basis) if p.tgt == u] for u in tops]
    sizes = [len(r) for r in rows]
    n = sum(sizes)
    offs = np.cumsum([0] + sizes)

    def total(op_of) -> np.ndarray:
        out = f.zeros((n, n))
        for k, idx in enumerate(rows):
            blk = op_of[np.ix_(idx, idx)]
            out[offs[k] : offs[k + 1], offs[k] : offs[k + 1]] = blk
        return out

    idem = {w: total(alg.right_matrix(alg.idempotent(w))) for w in alg.quiver.vertices}
    arrs = {a.name: total(alg.right_matrix(alg.arrow(a.name))) for a in alg.quiver.arrows}
    rep, change = Representation.from_module_action(op, idem, arrs)
    return rep, change, rows, offs


def dtr(m: Representation) -> Representation:
    """D Tr M from a minimal projective presentation P1 -> P0 -> M -> 0."""
    alg = m.alg
    f = alg.field
    if is_projective(m):
        raise ARError("D Tr undefined: module is projective")
    p0, pi, tops0 = projective_cover(m)
    omega, inc = pi.kernel()
    p1, pi1, tops1 = projective_cover(omega)
    pres = inc.compose(pi1)  # P1 -> P0
    # element a_ji in e_{u_i} A e_{v_j}: image of the generator of summand i, component j
    p0_offsets = []
    pos = {w: 0 for w in alg.quiver.vertices}
    for v in tops0:
        p0_offsets.append(dict(pos))
        for w in alg.quiver.vertices:
            pos[w] += len([q for q in alg.basis if q.src == v and q.tgt == w])
    p1_offsets = []
    pos = {w: 0 for w in alg.quiver.vertices}
    for u in tops1:
        p1_offsets.append(dict(pos))
        for w in alg.quiver.vertices:
            pos[w] += len([q for q in alg.basis if q.src == u and q.tgt == w])

    def element(i: int, j: int) -> np.ndarray:
        u, v = tops1[i], tops0[j]
        # generator e_u of summand i sits at vertex u, first path of the summand block
        gen_col = p1_offsets[i][u] + [q for q in alg.basis if q.src == u and q.tgt == u].index(alg.quiver.trivial_path(u))
        img = pres.maps[u][:, gen_col]
        out = f.zeros(alg.dim)
        paths = [q for q in alg.basis if q.src == v and q.tgt == u]
        for k, q in enumerate(paths):
            out[alg.index[q]] = img[p0_offsets[j][u] + k]
        return out

    r0, c0, rows0, offs0 = _row_module(alg, tops0)
    r1, c1, rows1, offs1 = _row_module(alg, tops1)
    # p^*: (b_j) -> (sum_j a_ji b_j)_i in summand-major coordinates
    star = f.zeros((offs1[-1], offs0[-1]))
    for i in range(len(tops1)):
        for j in range(len(tops0)):
            lm = alg.left_matrix(element(i, j))
            star[offs1[i] : offs1[i + 1], offs0[j] : offs0[j + 1]] = lm[np.ix_(rows1[i], rows0[j])]
    vm = f.matmul(f.inverse(c1), f.matmul(star, c0))
    pstar = ModuleMap.from_total(r0, r1, vm)
    if not pstar.is_homomorphism():
        raise ARError("transpose map is not a homomorphism")  # pragma: no cover
    tr, _ = pstar.cokernel()
    return dual(tr, alg)


# -- almost split sequences ---------------------------------------------------


@dataclass
class AlmostSplitSequence:
    inj: ModuleMap
    surj: ModuleMap
    middle_summands: List[Tuple[Representation, int]]

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
        return (
            self.inj.is_injective()
            and self.surj.is_surjective()
            and self.surj.compose(self.inj).is_zero()
            and self.middle.dim == self.left.dim + self.right.dim
        )

    def is_nonsplit(self) -> bool:
        return factor_through(ModuleMap.identity(self.right), self.surj) is None


def _flat(h: ModuleMap) -> np.ndarray:
    return h.total().reshape(-1)


def _radical_basis(m: Representation) -> List[ModuleMap]:
    """Basis of rad End(M) for a module with local endomorphism ring."""
    f = m.field
    endo = hom_space(m, m)
    shifted = []
    for e in endo:
        mp = f.min_poly(e.total())
        rad = _squarefree_part(f, mp)
        if rad.size != 2:
            raise DecompositionError()
        lam = f.neg(rad[0])
        shifted.append(e.add(ModuleMap.identity(m).scale(f.neg(lam))))
    if not shifted:
        return []
    mat = np.stack([_flat(s) for s in shifted], axis=1)
    _, piv = f.rref(mat)
    return [shifted[i] for i in piv]


def almost_split_sequence(m: Representation, frob: FrobeniusStructure, seed: int = 0) -> AlmostSplitSequence:
    """The almost split sequence 0 -> tau M -> E -> M -> 0."""
    f = m.field
    if is_projective(m):
        raise ARError("no almost split sequence ends at a projective module")
    n = tau(m, frob)
    p0, pi, tops = projective_cover(m)
    omega, inc = pi.kernel()
    hom_on = hom_space(omega, n)
    if not hom_on:
        raise ARError("Ext^1(M, tau M) = 0: inconsistent input")
    restr = [h.compose(inc) for h in hom_space(p0, n)]
    h_mat = np.stack([_flat(h) for h in hom_on], axis=1)
    r_mat = np.stack([_flat(h) for h in restr], axis=1) if restr else f.zeros((h_mat.shape[0], 0))
    r_span = f.column_space(r_mat) if r_mat.shape[1] else r_mat
    comp = f.complement_basis(_coords(f, h_mat, r_span), len(hom_on))  # Ext basis in Hom coords
    if comp.shape[1] == 0:
        raise ARError("Ext^1(M, tau M) = 0: inconsistent input")
    # act by rad End(M) on Ext: eta -> eta o phi_1 for lifts phi_0, phi_1
    rad_end = _radical_basis(m)
    conditions = []
    for phi in rad_end:
        lift0 = lift_from_cover(phi.compose(pi), pi, tops)
        lift1 = restrict_map(lift0, inc, inc)
        images = []
        for j in range(comp.shape[1]):
            eta = _combine(hom_on, comp[:, j], omega, n)
            images.append(_flat(eta.compose(lift1)))
        conditions.append(np.stack(images, axis=1))
    # socle of Ext: combinations c with (sum c_j eta_j) o phi_1 in the restriction span
    if conditions:
        rows = [_modulo(f, block, r_span) for block in conditions]
        soc = f.kernel(np.concatenate(rows, axis=0))
    else:
        soc = f.eye(comp.shape[1])
    if soc.shape[1] == 0:
        raise ARError("field too small: socle of Ext is zero")
    coeff = f.matmul(comp, soc[:, :1])[:, 0]
    eta = _combine(hom_on, coeff, omega, n)
    return _pushout(eta, inc, pi, seed)


def _combine(basis: List[ModuleMap], coeffs, src: Representation, tgt: Representation) -> ModuleMap:
    f = src.field
    acc = ModuleMap.zero(src, tgt)
    for c, h in zip(coeffs, basis):
        if not f.is_zero(c):
            acc = acc.add(h.scale(c))
    return acc


def _coords(f, h_mat: np.ndarray, r_span: np.ndarray) -> np.ndarray:
    """Coordinates (in the Hom basis) of the restriction span."""
    if r_span.shape[1] == 0:
        return f.zeros((h_mat.shape[1], 0))
    x, _ = f.solve(h_mat, r_span)
    if x is None:
        raise ARError("restricted maps are not in Hom(Omega M, tau M)")  # pragma: no cover
    return x


def _modulo(f, block: np.ndarray, span: np.ndarray) -> np.ndarray:
    """Linear functionals vanishing exactly on ``span``, applied to ``block``."""
    if span.shape[1] == 0:
        return block
    ann = f.left_kernel(span)  # rows w with w span = 0
    return f.matmul(ann, block)


def _pushout(eta: ModuleMap, inc: ModuleMap, pi: ModuleMap, seed: int) -> AlmostSplitSequence:
    """Pushout of 0 -> Omega -> P0 -> M -> 0 along eta: Omega -> N."""
    f = eta.field
    n = eta.tgt
    p0 = inc.tgt
    s, incs, projs = direct_sum([n, p0])
    # submodule {(eta w, -inc w)}
    emb = incs[0].compose(eta).add(incs[1].compose(inc).scale(f.neg(f.one)))
    e, q = quotient_representation(s, emb.image()[1].maps)
    left = q.compose(incs[0])
    right_on_sum = pi.compose(projs[1])
    right = descend_map(right_on_sum, q)
    dec = decompose(e, seed)
    return AlmostSplitSequence(left, right, dec.multiplicities())


# -- knitting -----------------------------------------------------------------


@dataclass
class Mesh:
    """The almost split sequence ending at ``end``; middle items are (node, multiplicity)."""

    end: int
    start: int
    middle: List[Tuple[int, int]]
    certified: bool = True


@dataclass
class ComponentWindow:
    registry: IsoRegistry
    frob: FrobeniusStructure
    depth: int
    nodes: List[int] = field(default_factory=list)
    node_depth: Dict[int, int] = field(default_factory=dict)
    projective: Set[int] = field(default_factory=set)
    tau_links: Dict[int, int] = field(default_factory=dict)  # node -> tau(node)
    meshes: Dict[int, Mesh] = field(default_factory=dict)  # keyed by end node
    uncertified: Set[int] = field(default_factory=set)
    orbit_merges: List[Tuple[int, int, int]] = field(default_factory=list)  # (a, b, k): tau^k a = b

    def rep(self, node: int) -> Representation:
        return self.registry.reps[node]

    def stable_nodes(self) -> List[int]:
        return [v for v in self.nodes if v not in self.projective]

    def tau_inverse_of(self, node: int) -> Optional[int]:
        for a, b in self.tau_links.items():
            if b == node:
                return a
        return None

    # -- arrows and valuations ------------------------------------------------
    def arrows(self) -> Dict[Tuple[int, int], Tuple[Optional[int], Optional[int]]]:
        """Irreducible arrows (X, Y) with valuation (a, b); unknown parts are None.

        ``a`` is the multiplicity of X in the middle of the sequence ending at Y,
        ``b`` the multiplicity of Y in the middle of the sequence starting at X.
        """
        out: Dict[Tuple[int, int], List[Optional[int]]] = {}
        for end, mesh in self.meshes.items():
            for x, mult in mesh.middle:
                out.setdefault((x, end), [None, None])[0] = mult
                # the sequence ending at `end` starts at tau(end): arrows tau(end) -> x
                out.setdefault((mesh.start, x), [None, None])[1] = mult
        return {k: (v[0], v[1]) for k, v in out.items()}

    def predecessors(self, node: int) -> Optional[List[Tuple[int, int]]]:
        mesh = self.meshes.get(node)
        return None if mesh is None else list(mesh.middle)

    def successors(self, node: int) -> Optional[List[Tuple[int, int]]]:
        for end, mesh in self.meshes.items():
            if mesh.start == node:
                return list(mesh.middle)
        return None

    def forward_closed(self, node: int) -> bool:
        return any(mesh.start == node for mesh in self.meshes.values())

    def backward_closed(self, node: int) -> bool:
        return node in self.meshes

    def attachments(self) -> List[int]:
        """Projective nodes that occur in some mesh of the window."""
        seen = []
        for mesh in self.meshes.values():
            for x, _ in mesh.middle:
                if x in self.projective and x not in seen:
                    seen.append(x)
        return seen

    # -- consistency ----------------------------------------------------------
    def mesh_identity_holds(self, end: int) -> bool:
        mesh = self.meshes[end]
        lhs = np.array(self.rep(mesh.start).dim_vector) + np.array(self.rep(end).dim_vector)
        rhs = np.zeros_like(lhs)
        for x, mult in mesh.middle:
            rhs = rhs + mult * np.array(self.rep(x).dim_vector)
        return bool(np.all(lhs == rhs))

    # -- orbits -----------------------------------------------------------------
    def orbits(self) -> Dict[int, int]:
        """Union-find of stable nodes along tau-links and probed identifications."""
        parent = {v: v for v in self.stable_nodes()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.tau_links.items():
            if a in parent and b in parent:
                parent[find(a)] = find(b)
        for a, b, _ in self.orbit_merges:
            if a in parent and b in parent:
                parent[find(a)] = find(b)
        roots = {}
        out = {}
        for v in self.stable_nodes():
            r = find(v)
            roots.setdefault(r, len(roots))
            out[v] = roots[r]
        return out

    def orbit_graph(self):
        """Orbit graph: {(o1, o2): (a, b)} on stable orbits plus the set of closed orbits."""
        orb = self.orbits()
        edges: Dict[Tuple[int, int], Tuple[Optional[int], Optional[int]]] = {}
        for (x, y), (a, b) in self.arrows().items():
            if x not in orb or y not in orb:
                continue
            key = (orb[x], orb[y])
            old = edges.get(key, (None, None))
            edges[key] = (a if a is not None else old[0], b if b is not None else old[1])
        closed = set()
        for v in self.stable_nodes():
            if self.backward_closed(v) and self.forward_closed(v):
                closed.add(orb[v])
        return sorted(set(orb.values())), edges, closed

    # -- export -----------------------------------------------------------------
    def to_json(self) -> dict:
        arrows = self.arrows()
        return {
            "depth": self.depth,
            "nodes": [
                {
                    "id": v,
                    "label": self.registry.label(v),
                    "dim_vector": list(self.rep(v).dim_vector),
                    "projective": v in self.projective,
                    "uncertified": v in self.uncertified,
                    "distance": self.node_depth.get(v),
                }
                for v in self.nodes
            ],
            "tau": [[a, b] for a, b in sorted(self.tau_links.items())],
            "arrows": [
                {"from": x, "to": y, "valuation": [a, b]} for (x, y), (a, b) in sorted(arrows.items())
            ],
            "meshes": [
                {"end": e, "start": m.start, "middle": [[x, k] for x, k in m.middle], "certified": m.certified}
                for e, m in sorted(self.meshes.items())
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph window {"]
        for v in self.nodes:
            flags = []
            if v in self.projective:
                flags.append("P")
            if v in self.uncertified:
                flags.append("uncertified")
            lab = self.registry.label(v) + (" " + ",".join(flags) if flags else "")
            shape = "box" if v in self.projective else "ellipse"
            lines.append(f'  n{v} [label="{lab}", shape={shape}];')
        for (x, y), (a, b) in sorted(self.arrows().items()):
            lab = f"({'?' if a is None else a},{'?' if b is None else b})"
            lines.append(f'  n{x} -> n{y} [label="{lab}"];')
        for a, b in sorted(self.tau_links.items()):
            lines.append(f"  n{a} -> n{b} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def knit(
    start: Representation,
    frob: FrobeniusStructure,
    depth: int = DEFAULT_DEPTH,
    registry: Optional[IsoRegistry] = None,
    seed: int = 0,
    max_dim: int = MAX_NODE_DIM,
    probe: int = 0,
) -> ComponentWindow:
    """Breadth-first knitting of the component containing ``start``.

    Every node within ``depth`` steps gets both of its meshes computed; nodes
    discovered at distance ``depth + 1`` are recorded without meshes.  With
    ``probe > 0`` each stable node is compared against ``tau^k`` of the other
    orbits for ``0 < |k| <= probe`` to detect orbits closing up.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise ARError(f"depth must be in 0..{MAX_DEPTH}")
    registry = registry if registry is not None else IsoRegistry(start.alg)
    win = ComponentWindow(registry, frob, depth)

    def add(rep: Representation, d: int) -> int:
        if rep.dim > max_dim:
            raise ARError(f"module dimension {rep.dim} exceeds the cap {max_dim}")
        k = registry.register(rep)
        if k not in win.node_depth:
            win.nodes.append(k)
            win.node_depth[k] = d
            if is_projective(rep):
                win.projective.add(k)
        return k

    def record(seq: AlmostSplitSequence, d: int, certified: bool) -> Tuple[int, int, List[int]]:
        end = add(seq.right, d)
        beg = add(seq.left, d)
        middle = []
        touched = []
        for rep, mult in seq.middle_summands:
            k = add(rep, d)
            middle.append((k, mult))
            touched.append(k)
        win.meshes[end] = Mesh(end, beg, middle, certified)
        win.tau_links[end] = beg
        return end, beg, touched

    first = add(start, 0)
    queue = [first]
    done: Set[int] = set()
    while queue:
        x = queue.pop(0)
        if x in done or x in win.projective:
            continue
        done.add(x)
        d = win.node_depth[x]
        if d > depth:
            continue
        nxt = d + 1
        rep = win.rep(x)
        discovered: List[int] = []
        try:
            if x not in win.meshes:
                seq = almost_split_sequence(rep, frob, seed)
                _, beg, mids = record(seq, nxt, True)
                discovered += [beg] + mids
            else:
                discovered += [win.meshes[x].start] + [k for k, _ in win.meshes[x].middle]
            if not win.forward_closed(x):
                y = tau_inverse(rep, frob)
                y_idx = add(y, nxt)
                seq = almost_split_sequence(win.rep(y_idx), frob, seed)
                end, beg, mids = record(seq, nxt, True)
                if beg != x:
                    raise ARError("tau(tau^-1 M) is not isomorphic to M")
                discovered += [end] + mids
            else:
                for end, mesh in win.meshes.items():
                    if mesh.start == x:
                        discovered += [end] + [k for k, _ in mesh.middle]
        except DecompositionError:
            win.uncertified.add(x)
            continue
        for k in discovered:
            win.node_depth[k] = min(win.node_depth[k], nxt)
            if k not in done and k not in win.projective:
                queue.append(k)
    if probe:
        _probe_orbits(win, probe)
    return win


def _probe_orbits(win: ComponentWindow, probe: int) -> None:
    """Record identifications tau^k a = b between distinct window orbits."""
    orb = win.orbits()
    reps: Dict[int, int] = {}
    for v in win.stable_nodes():
        reps.setdefault(orb[v], v)
    for o, v in sorted(reps.items()):
        cur = win.rep(v)
        for k in range(1, probe + 1):
            cur = tau(cur, win.frob)
            hit = win.registry.lookup(cur)
            if hit is not None and hit in orb and orb[hit] != o:
                win.orbit_merges.append((v, hit, k))
                break


def predecessor_count(win: ComponentWindow, node: int) -> int:
    """Number of distinct iso classes (projectives included) mapping irreducibly into ``node``."""
    preds = win.predecessors(node)
    if preds is None:
        raise ARError("unknown at this depth: backward mesh not closed")
    return len({k for k, _ in preds})


def stable_neighbors(win: ComponentWindow, node: int) -> Optional[Set[int]]:
    """Stable predecessors of a node whose backward mesh is closed."""
    preds = win.predecessors(node)
    if preds is None:
        return None
    return {k for k, _ in preds if k not in win.projective}


def tree_class_report(win: ComponentWindow, max_size: Optional[int] = None) -> dict:
    """Catalogue classes consistent with the window's valued orbit graph."""
    from .tquiver import consistent_classes

    verts, edges, closed = win.orbit_graph()
    return consistent_classes(verts, edges, closed, max_size=max_size)
