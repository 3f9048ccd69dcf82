"""Length residues mod l(P) on translation quivers Z[T].

Lengths are constant mod ``l = l(P)`` along tau-orbits, so each orbit (tree
vertex) carries a residue ``x_v``. An almost split sequence ending at ``v``
gives the mesh congruence ``2 x_v = sum_w a_wv x_w (mod l)``, where ``a_wv``
is the multiplicity of ``w`` in its middle term; an attached projective adds
``l(P) = 0``. Boundary conditions pin some residues.

The congruence system is solved over Z/l through a Smith normal form over Z.
:func:`brute_force` enumerates residue tuples directly and serves as the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .tquiver import TreeCatalogEntry, tree_by_name


class LengthError(ValueError):
    pass


@dataclass
class ProfileProblem:
    """Mesh congruences on ``tree`` with pinned residues ``boundary[v]``."""

    tree: TreeCatalogEntry
    boundary: Dict[int, int] = field(default_factory=dict)
    l_min: int = 1
    l_max: int = 64
    projective_at: Optional[int] = None  # recorded for reports; contributes 0

    def __post_init__(self):
        if self.tree.n_vertices == 0:
            raise LengthError("empty tree")
        if not self.tree.finite:
            raise LengthError("length profiles need a finite tree")
        if self.l_min < 1 or self.l_max < self.l_min:
            raise LengthError("need 1 <= l_min <= l_max")
        for v in self.boundary:
            if not 0 <= v < self.tree.n_vertices:
                raise LengthError(f"boundary vertex {v} not in {self.tree.name}")

    def equations(self) -> Tuple[List[List[int]], List[int]]:
        """Integer rows ``A`` and right-hand side ``c`` of ``A x = c`` over the free vertices.

        One row per mesh (per vertex), with pinned residues moved to the right.
        """
        n = self.tree.n_vertices
        val = self.tree.valuation_map()
        free = self.free_vertices()
        col = {v: j for j, v in enumerate(free)}
        rows, rhs = [], []
        for v in range(n):
            coeff = {v: 2}
            for (w, u), (a, _) in val.items():
                if u == v:
                    coeff[w] = coeff.get(w, 0) - a
            row = [0] * len(free)
            c = 0
            for w, k in coeff.items():
                if w in col:
                    row[col[w]] += k
                else:
                    c -= k * self.boundary[w]
            rows.append(row)
            rhs.append(c)
        return rows, rhs

    def free_vertices(self) -> List[int]:
        return [v for v in range(self.tree.n_vertices) if v not in self.boundary]

    def mesh_defects(self, residues: Sequence[int], l: int) -> List[int]:
        """Vertices whose mesh congruence fails for a full residue assignment."""
        val = self.tree.valuation_map()
        bad = []
        for v in range(self.tree.n_vertices):
            s = 2 * residues[v] - sum(a * residues[w] for (w, u), (a, _) in val.items() if u == v)
            if s % l:
                bad.append(v)
        return bad


@dataclass
class ProfileSolution:
    """All solutions mod ``l``: ``particular + sum t_i generators[i]`` with ``0 <= t_i < orders[i]``."""

    l: int
    particular: Tuple[int, ...]
    generators: List[Tuple[int, ...]]
    orders: List[int]

    @property
    def count(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    def assignments(self) -> Iterator[Tuple[int, ...]]:
        for ts in itertools.product(*[range(o) for o in self.orders]):
            x = list(self.particular)
            for t, g in zip(ts, self.generators):
                for i, gi in enumerate(g):
                    x[i] += t * gi
            yield tuple(xi % self.l for xi in x)

    def residue_sets(self) -> List[List[int]]:
        """Per vertex, the sorted residues occurring in some solution."""
        seen = [set() for _ in self.particular]
        for x in self.assignments():
            for i, xi in enumerate(x):
                seen[i].add(xi)
        return [sorted(s) for s in seen]


# -- Smith normal form over Z --------------------------------------------------


def smith_normal_form(a: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """``(U, D, V)`` with ``U a V = D`` diagonal, ``U`` and ``V`` unimodular."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(x, i, j):
        x[i], x[j] = x[j], x[i]

    def swap_cols(x, i, j):
        for row in x:
            row[i], row[j] = row[j], row[i]

    def add_row(x, src, dst, k):  # row dst += k row src
        x[dst] = [b + k * a_ for a_, b in zip(x[src], x[dst])]

    def add_col(x, src, dst, k):
        for row in x:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                return u, d, v
            _, pi, pj = min(nz)
            swap_rows(d, t, pi)
            swap_rows(u, t, pi)
            swap_cols(d, t, pj)
            swap_cols(v, t, pj)
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                if q:
                    add_row(d, t, i, -q)
                    add_row(u, t, i, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                if q:
                    add_col(d, t, j, -q)
                    add_col(v, t, j, -q)
                if d[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold a row carrying a non-multiple into row t
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(d, bad[0], t, 1)
            add_row(u, bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def _solve_mod(rows: List[List[int]], rhs: List[int], l: int) -> Optional[Tuple[List[int], List[List[int]], List[int]]]:
    """Solutions of ``rows x = rhs (mod l)`` as (particular, generators, orders)."""
    n = len(rows[0]) if rows else 0
    if n == 0:
        return ([], [], []) if all(c % l == 0 for c in rhs) else None
    u, d, v = smith_normal_form(rows)
    c = [sum(u[i][k] * rhs[k] for k in range(len(rhs))) for i in range(len(rows))]
    y0 = [0] * n
    gens_y: List[Tuple[int, int]] = []  # (coordinate, step) generating the kernel
    orders = []
    for i in range(len(rows)):
        di = d[i][i] if i < n else 0
        g = gcd(di, l)
        if c[i] % g:
            return None
        if i < n and di:
            # di y = c (mod l): y = y0 + t l/g for t in 0..g-1
            y0[i] = ((c[i] // g) * pow(di // g, -1, l // g)) % (l // g) if l // g > 1 else 0
            if g > 1:
                gens_y.append((i, l // g))
                orders.append(g)
    for j in range(n):
        if j >= len(rows) or d[j][j] == 0:
            gens_y.append((j, 1))
            orders.append(l)
    x0 = [sum(v[r][k] * y0[k] for k in range(n)) % l for r in range(n)]
    gens = [[(v[r][j] * step) % l for r in range(n)] for j, step in gens_y]
    return x0, gens, orders


def solve_profile(p: ProfileProblem) -> List[ProfileSolution]:
    """Every ``l`` in range with a solution, each with its full solution set."""
    rows, rhs = p.equations()
    free = p.free_vertices()
    out = []
    for l in range(p.l_min, p.l_max + 1):
        sol = _solve_mod(rows, rhs, l)
        if sol is None:
            continue
        x0, gens, orders = sol
        full = [0] * p.tree.n_vertices
        for v, r in p.boundary.items():
            full[v] = r % l
        for j, v in enumerate(free):
            full[v] = x0[j]
        full_gens = []
        for g in gens:
            vec = [0] * p.tree.n_vertices
            for j, v in enumerate(free):
                vec[v] = g[j]
            full_gens.append(tuple(vec))
        s = ProfileSolution(l, tuple(full), full_gens, list(orders))
        if p.mesh_defects(s.particular, l):
            raise LengthError(f"solver produced a non-solution at l={l}")  # pragma: no cover
        out.append(s)
    return out


def solution_ls(sols: Sequence[ProfileSolution], l_filter: int = 1) -> List[int]:
    """The moduli with solutions, keeping only ``l >= l_filter``."""
    return [s.l for s in sols if s.l >= l_filter]


# -- brute force oracle ---------------------------------------------------------


def brute_force(p: ProfileProblem, l: int) -> List[Tuple[int, ...]]:
    """All residue tuples mod ``l`` satisfying the meshes, by exhaustive search.

    Vertices are assigned in index order and a mesh is checked as soon as all
    its vertices carry a value.
    """
    n = p.tree.n_vertices
    val = p.tree.valuation_map()
    meshes = []
    for v in range(n):
        terms = [(v, 2)] + [(w, -a) for (w, u), (a, _) in val.items() if u == v]
        meshes.append((max(w for w, _ in terms), terms))
    by_last: Dict[int, list] = {}
    for last, terms in meshes:
        by_last.setdefault(last, []).append(terms)
    out = []
    x = [0] * n

    def rec(i: int):
        if i == n:
            out.append(tuple(x))
            return
        choices = [p.boundary[i] % l] if i in p.boundary else range(l)
        for r in choices:
            x[i] = r
            if all(sum(k * x[w] for w, k in terms) % l == 0 for terms in by_last.get(i, [])):
                rec(i + 1)

    rec(0)
    return out


def cross_check_solver(p: ProfileProblem, l_max: int = 12) -> List[int]:
    """Moduli ``l <= l_max`` where solver and brute force disagree (empty means agreement)."""
    sols = {s.l: s for s in solve_profile(ProfileProblem(p.tree, p.boundary, 1, l_max, p.projective_at))}
    bad = []
    for l in range(max(1, p.l_min), l_max + 1):
        brute = set(brute_force(p, l))
        mine = set(sols[l].assignments()) if l in sols else set()
        if brute != mine:
            bad.append(l)
    return bad


# -- named instances --------------------------------------------------------------


def named_boundary(tree: TreeCatalogEntry, name: str, values: Sequence[int]) -> Dict[int, int]:
    """Boundary by name: ``tips`` pins the first leaf of each end of the tree.

    For ``D~_n`` the tips are the 1-based vertices 1 and ``n``; for a
    two-vertex tree both vertices.
    """
    if name == "tips":
        if tree.family == "D~":
            verts = [0, tree.size - 1]
        elif tree.n_vertices == 2:
            verts = [0, 1]
        else:
            nb = tree.neighbours()
            leaves = [v for v in range(tree.n_vertices) if len(nb[v]) <= 1]
            verts = [leaves[0], leaves[-1]]
    else:
        try:
            verts = [int(v) for v in name.split("+")]
        except ValueError:
            raise LengthError(f"unknown boundary name {name!r}") from None
    if len(verts) != len(values):
        raise LengthError(f"boundary {name!r} needs {len(verts)} values")
    return dict(zip(verts, values))


def a12_problem(l_max: int = 64) -> ProfileProblem:
    """The two orbits of Z[A~1,2] at lengths 1 and -1 mod l."""
    tree = tree_by_name("A~1,2")
    return ProfileProblem(tree, {0: 1, 1: -1}, 1, l_max, projective_at=0)


def d5_problem(l_max: int = 64) -> ProfileProblem:
    """Z[D~5] with the two fork tips at 1 and -1 mod l."""
    tree = tree_by_name("D~5")
    return ProfileProblem(tree, named_boundary(tree, "tips", [1, -1]), 1, l_max)


def d5_system_ls(l_max: int = 64) -> List[int]:
    """Moduli with a solution of 2x+2 = x+5 = 5-y = 2y-2 = 0, by enumeration of x, y."""
    return [
        l
        for l in range(1, l_max + 1)
        if any((2 * x + 2) % l == 0 and (x + 5) % l == 0 for x in range(l))
        and any((5 - y) % l == 0 and (2 * y - 2) % l == 0 for y in range(l))
    ]


def chain_pattern(n: int, x: int, l: int = 8) -> Dict[str, object]:
    """Closed-form residues along the D~_n chain for a tip of residue 1.

    The other leaf next to vertex 3 has residue ``4x + 1``; vertex ``t`` of the
    chain has ``2`` for odd ``t``, ``2(1 + 2x)`` for ``t = 2 mod 4`` and
    ``2(1 - 2x)`` for ``t = 0 mod 4``. The pattern is checked against the mesh
    congruences, and the leaves at the far fork are solved for.
    """
    if n % 2 == 0 or n <= 5:
        raise LengthError("the chain pattern needs odd n > 5")
    chain = {}
    for t in range(3, n):
        if t % 2:
            chain[t] = 2 % l
        elif t % 4 == 2:
            chain[t] = (2 * (1 + 2 * x)) % l
        else:
            chain[t] = (2 * (1 - 2 * x)) % l
    tree = tree_by_name(f"D~{n}")
    boundary = {0: 1 % l, 1: (4 * x + 1) % l}
    boundary.update({t - 1: r for t, r in chain.items()})
    p = ProfileProblem(tree, boundary, l, l)
    sols = solve_profile(p)
    leaves = sols[0].residue_sets()[n - 1 :] if sols else []
    residues = list(chain.values()) + [r for s in leaves for r in s] + [1 % l, (4 * x + 1) % l]
    return {
        "n": n,
        "x": x,
        "l": l,
        "chain": [chain[t] for t in range(3, n)],
        "leaf_residues": leaves,
        "consistent": bool(sols),
        "has_four": (4 % l) in residues,
    }


def chain_matches_solver(n: int, l: int = 8) -> bool:
    """Every solver solution with tip residue 1 follows the closed-form chain."""
    tree = tree_by_name(f"D~{n}")
    sols = solve_profile(ProfileProblem(tree, {0: 1}, l, l))
    if not sols:
        return False
    for a in sols[0].assignments():
        w_bar = a[1]
        if (w_bar - 1) % 4:
            return False
        x = (w_bar - 1) // 4
        want = chain_pattern(n, x, l)["chain"]
        if [a[t - 1] for t in range(3, n)] != want:
            return False
    return True


# -- windows --------------------------------------------------------------------


def cross_check_window(win, l: int) -> Dict[str, object]:
    """Lengths mod ``l`` of a knitted window: constant on tau-orbits and additive on meshes."""
    from .rep import length

    lengths = {v: length(win.rep(v)) % l for v in win.nodes}
    mismatches = []
    for a, b in win.tau_links.items():
        if lengths[a] != lengths[b]:
            mismatches.append(("tau", a, b))
    for end, mesh in win.meshes.items():
        if not mesh.certified:
            continue
        total = sum(k * lengths[x] for x, k in mesh.middle)
        if (lengths[mesh.start] + lengths[end] - total) % l:
            mismatches.append(("mesh", end, mesh.start))
    return {
        "l": l,
        "residues": {v: lengths[v] for v in win.nodes},
        "stable_residues": sorted({lengths[v] for v in win.stable_nodes()}),
        "mismatches": mismatches,
        "valid": not mismatches,
    }
