"""Valued trees, the translation quiver Z[D~_n] and its automorphisms.

Tree names are ASCII: ``A5``, ``D6``, ``E7`` (Dynkin), ``A~1,1``, ``A~1,2``,
``D~7``, ``E~6`` (Euclidean), ``Ainf``, ``Ainfinf``, ``Dinf`` (infinite) and
``A~5`` for the cycle on six vertices, which is a graph rather than a tree.

Vertices of ``Z[D~_n]`` are pairs ``(k, i)`` with ``1 <= i <= n + 1``; in each
copy the branch vertices are 3 and ``n - 1``, leaves 1, 2 hang off 3 and leaves
``n``, ``n + 1`` off ``n - 1``. Arrows are ``(k, i) -> (k, j)`` and
``(k, j) -> (k + 1, i)`` for each tree arrow ``i -> j`` (oriented away from 3),
and ``tau (k, i) = (k - 1, i)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

Valuation = Tuple[int, int]


class TQError(ValueError):
    pass


# -- valued trees ---------------------------------------------------------------


@dataclass(frozen=True)
class TreeCatalogEntry:
    """A valued graph on ``0..n_vertices-1``.

    ``edges`` holds ``(i, j, a, b)``: the arrow from orbit ``i`` to orbit ``j``
    carries valuation ``(a, b)``, and the opposite direction carries ``(b, a)``.
    For infinite trees the graph is a truncation; ``open_ends`` are the vertices
    that have one more neighbour beyond the cut.
    """

    name: str
    family: str
    size: Optional[int]
    n_vertices: int
    edges: Tuple[Tuple[int, int, int, int], ...]
    kind: str  # "dynkin", "euclidean", "infinite" or "cycle"
    open_ends: FrozenSet[int] = frozenset()

    @property
    def is_tree(self) -> bool:
        return self.kind != "cycle"

    @property
    def finite(self) -> bool:
        return self.kind != "infinite"

    def valuation_map(self) -> Dict[Tuple[int, int], Valuation]:
        out = {}
        for i, j, a, b in self.edges:
            out[(i, j)] = (a, b)
            out[(j, i)] = (b, a)
        return out

    def neighbours(self) -> List[Set[int]]:
        nb: List[Set[int]] = [set() for _ in range(self.n_vertices)]
        for i, j, _, _ in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return nb

    def degree(self, v: int) -> int:
        """Degree in the full (untruncated) graph."""
        return len(self.neighbours()[v]) + (1 if v in self.open_ends else 0)

    def is_connected(self) -> bool:
        nb = self.neighbours()
        seen, stack = {0}, [0]
        while stack:
            for w in nb[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices


def _path_edges(n: int, start: int = 0) -> List[Tuple[int, int, int, int]]:
    return [(start + i, start + i + 1, 1, 1) for i in range(n - 1)]


def _star(arms: Sequence[int], name: str, family: str, size: int, kind: str) -> TreeCatalogEntry:
    """Centre 0 with arms of the given lengths."""
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt, 1, 1))
            prev = nxt
            nxt += 1
    return TreeCatalogEntry(name, family, size, nxt, tuple(edges), kind)


def dynkin_a(n: int) -> TreeCatalogEntry:
    if n < 1:
        raise TQError("A_n needs n >= 1")
    return TreeCatalogEntry(f"A{n}", "A", n, n, tuple(_path_edges(n)), "dynkin")


def dynkin_d(n: int) -> TreeCatalogEntry:
    if n < 4:
        raise TQError("D_n needs n >= 4")
    return _star([1, 1, n - 3], f"D{n}", "D", n, "dynkin")


def dynkin_e(n: int) -> TreeCatalogEntry:
    arms = {6: [1, 2, 2], 7: [1, 2, 3], 8: [1, 2, 4]}
    if n not in arms:
        raise TQError("E_n needs n in {6, 7, 8}")
    return _star(arms[n], f"E{n}", "E", n, "dynkin")


def euclidean_a11() -> TreeCatalogEntry:
    return TreeCatalogEntry("A~1,1", "A~1,1", 1, 2, ((0, 1, 1, 4),), "euclidean")


def euclidean_a12() -> TreeCatalogEntry:
    return TreeCatalogEntry("A~1,2", "A~1,2", 2, 2, ((0, 1, 2, 2),), "euclidean")


def euclidean_d(n: int) -> TreeCatalogEntry:
    """D~_n on ``n + 1`` vertices; vertex ``i - 1`` carries the 1-based label ``i``."""
    if n < 4:
        raise TQError("D~_n needs n >= 4")
    edges = [(2, 0, 1, 1), (2, 1, 1, 1)]
    edges += [(m - 1, m, 1, 1) for m in range(3, n - 1)]
    edges += [(n - 2, n - 1, 1, 1), (n - 2, n, 1, 1)]
    return TreeCatalogEntry(f"D~{n}", "D~", n, n + 1, tuple(edges), "euclidean")


def euclidean_e(n: int) -> TreeCatalogEntry:
    arms = {6: [2, 2, 2], 7: [1, 3, 3], 8: [1, 2, 5]}
    if n not in arms:
        raise TQError("E~_n needs n in {6, 7, 8}")
    return _star(arms[n], f"E~{n}", "E~", n, "euclidean")


def cycle(n: int) -> TreeCatalogEntry:
    """The cycle A~_n on ``n + 1`` vertices (a graph, not a tree)."""
    if n < 1:
        raise TQError("A~_n needs n >= 1")
    m = n + 1
    if m == 2:
        edges = ((0, 1, 1, 1), (0, 1, 1, 1))
    else:
        edges = tuple((i, (i + 1) % m, 1, 1) for i in range(m))
    return TreeCatalogEntry(f"A~{n}", "A~cycle", n, m, edges, "cycle")


def a_infinity(length: int) -> TreeCatalogEntry:
    """Truncation of A_inf to ``length`` vertices; vertex 0 is the end."""
    return TreeCatalogEntry("Ainf", "Ainf", None, length, tuple(_path_edges(length)), "infinite", frozenset({length - 1}))


def a_infinity_infinity(length: int) -> TreeCatalogEntry:
    ends = frozenset({0, length - 1}) if length > 1 else frozenset({0})
    return TreeCatalogEntry("Ainfinf", "Ainfinf", None, length, tuple(_path_edges(length)), "infinite", ends)


def d_infinity(length: int) -> TreeCatalogEntry:
    length = max(length, 3)
    base = _star([1, 1, length - 3], "Dinf", "Dinf", 0, "infinite")
    return TreeCatalogEntry("Dinf", "Dinf", None, base.n_vertices, base.edges, "infinite", frozenset({base.n_vertices - 1}))


def tree_by_name(name: str, truncation: int = 8) -> TreeCatalogEntry:
    """Parse ``D~7``, ``A~1,2``, ``E6``, ``Ainf`` and friends."""
    s = name.strip().replace(" ", "")
    fixed = {"A~1,1": euclidean_a11, "A~11": euclidean_a11, "A~1,2": euclidean_a12, "A~12": euclidean_a12}
    if s in fixed:
        return fixed[s]()
    if s == "Ainf":
        return a_infinity(truncation)
    if s == "Ainfinf":
        return a_infinity_infinity(truncation)
    if s == "Dinf":
        return d_infinity(truncation)
    m = re.fullmatch(r"(A|D|E)(~?)(\d+)", s)
    if not m:
        raise TQError(f"unknown tree name {name!r}")
    fam, tilde, n = m.group(1), m.group(2), int(m.group(3))
    if tilde:
        return {"A": cycle, "D": euclidean_d, "E": euclidean_e}[fam](n)
    return {"A": dynkin_a, "D": dynkin_d, "E": dynkin_e}[fam](n)


def catalog(kind: str = "all", max_n: int = 11) -> List[TreeCatalogEntry]:
    """Finite catalogue entries of the requested kind, sizes up to ``max_n``."""
    out: List[TreeCatalogEntry] = []
    if kind in ("all", "dynkin"):
        out += [dynkin_a(n) for n in range(1, max_n + 1)]
        out += [dynkin_d(n) for n in range(4, max_n + 1)]
        out += [dynkin_e(n) for n in (6, 7, 8) if n <= max_n]
    if kind in ("all", "euclidean"):
        out += [euclidean_a11(), euclidean_a12()]
        out += [euclidean_d(n) for n in range(4, max_n + 1)]
        out += [euclidean_e(n) for n in (6, 7, 8) if n <= max_n]
    if kind in ("all", "cycle"):
        out += [cycle(n) for n in range(1, max_n + 1)]
    if kind not in ("all", "dynkin", "euclidean", "cycle"):
        raise TQError(f"unknown catalogue kind {kind!r}")
    return out


def valued_automorphisms(entry: TreeCatalogEntry) -> List[Tuple[int, ...]]:
    """All vertex permutations preserving valued adjacency (backtracking)."""
    if not entry.finite:
        raise TQError("automorphisms are only enumerated for finite entries")
    n = entry.n_vertices
    val = entry.valuation_map()
    nb = entry.neighbours()
    order = sorted(range(n), key=lambda v: -len(nb[v]))
    out = []

    def extend(perm: Dict[int, int], used: Set[int]):
        if len(perm) == n:
            out.append(tuple(perm[v] for v in range(n)))
            return
        v = order[len(perm)]
        for w in range(n):
            if w in used or len(nb[w]) != len(nb[v]):
                continue
            ok = True
            for u, img in perm.items():
                if val.get((u, v)) != val.get((img, w)):
                    ok = False
                    break
            if ok:
                perm[v] = w
                used.add(w)
                extend(perm, used)
                del perm[v]
                used.discard(w)

    extend({}, set())
    return sorted(out)


def fixed_point_free_tree_automorphisms(entry: TreeCatalogEntry) -> List[Tuple[int, ...]]:
    """Valued automorphisms of ``entry`` moving every vertex."""
    return [p for p in valued_automorphisms(entry) if all(p[v] != v for v in range(len(p)))]


def fixed_point_free_scan(kind: str = "euclidean", max_n: int = 11) -> List[str]:
    """Names of the trees in the catalogue admitting a fixed-point-free automorphism."""
    return [e.name for e in catalog(kind, max_n) if e.is_tree and fixed_point_free_tree_automorphisms(e)]


# -- Z[D~_n] ---------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ZTVertex:
    k: int
    i: int

    def __str__(self) -> str:
        return f"({self.k},{self.i})"


def _check_vertex(v: ZTVertex, n: int) -> None:
    if n < 4:
        raise TQError("Z[D~_n] needs n >= 4")
    if not 1 <= v.i <= n + 1:
        raise TQError(f"vertex index {v.i} out of range 1..{n + 1}")


def tree_arrows(n: int) -> List[Tuple[int, int]]:
    """Arrows of one copy of D~_n, oriented away from vertex 3."""
    arrows = [(3, 1), (3, 2)]
    arrows += [(m, m + 1) for m in range(3, n - 1)]
    arrows += [(n - 1, n), (n - 1, n + 1)]
    return arrows


def zt_successors(v: ZTVertex, n: int) -> List[ZTVertex]:
    out = []
    for i, j in tree_arrows(n):
        if i == v.i:
            out.append(ZTVertex(v.k, j))
        if j == v.i:
            out.append(ZTVertex(v.k + 1, i))
    return out


def is_zt_arrow(u: ZTVertex, v: ZTVertex, n: int) -> bool:
    return v in zt_successors(u, n)


def alpha(v: ZTVertex, n: int) -> ZTVertex:
    _check_vertex(v, n)
    if v.i == 1:
        return ZTVertex(v.k, 2)
    if v.i == 2:
        return ZTVertex(v.k, 1)
    return v


def beta(v: ZTVertex, n: int) -> ZTVertex:
    _check_vertex(v, n)
    if v.i == n:
        return ZTVertex(v.k, n + 1)
    if v.i == n + 1:
        return ZTVertex(v.k, n)
    return v


def gamma(v: ZTVertex, n: int) -> ZTVertex:
    _check_vertex(v, n)
    k, i = v.k, v.i
    if i == 1:
        return ZTVertex(k, n)
    if i == 2:
        return ZTVertex(k, n + 1)
    if i <= n - 1:
        return ZTVertex(k + i - 3, n + 2 - i)
    if i == n:
        return ZTVertex(k + n - 4, 1)
    return ZTVertex(k + n - 4, 2)


def tau_shift(v: ZTVertex, k: int = 1) -> ZTVertex:
    """``tau^k``; ``tau (k, i) = (k - 1, i)``."""
    return ZTVertex(v.k - k, v.i)


@dataclass(frozen=True, order=True)
class TQAutomorphism:
    """The normal form ``tau^k o alpha^a o beta^b o gamma^g``."""

    k: int = 0
    a: int = 0
    b: int = 0
    g: int = 0

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1) or self.g not in (0, 1):
            raise TQError("alpha, beta and gamma exponents must be 0 or 1")

    def word(self) -> str:
        return f"t^{self.k} a^{self.a} b^{self.b} g^{self.g}"

    def is_identity(self) -> bool:
        return self == TQAutomorphism()

    def __str__(self) -> str:
        return self.word()


IDENTITY = TQAutomorphism()
ALPHA = TQAutomorphism(a=1)
BETA = TQAutomorphism(b=1)
GAMMA = TQAutomorphism(g=1)


def TAU(k: int = 1) -> TQAutomorphism:
    return TQAutomorphism(k=k)


def apply(aut: TQAutomorphism, v: ZTVertex, n: int) -> ZTVertex:
    """Evaluate the composite on ``v``: gamma acts first, tau last."""
    _check_vertex(v, n)
    if aut.g:
        v = gamma(v, n)
    if aut.b:
        v = beta(v, n)
    if aut.a:
        v = alpha(v, n)
    return tau_shift(v, aut.k)


def window(n: int, kmin: int, kmax: int) -> List[ZTVertex]:
    return [ZTVertex(k, i) for k in range(kmin, kmax + 1) for i in range(1, n + 2)]


def _all_forms(n: int, k_range: Iterable[int]) -> List[TQAutomorphism]:
    return [TQAutomorphism(k, a, b, g) for k in k_range for a in (0, 1) for b in (0, 1) for g in (0, 1)]


def _normalize_action(images: Dict[ZTVertex, ZTVertex], n: int, verts: Sequence[ZTVertex]) -> TQAutomorphism:
    """The unique normal form agreeing with ``images`` on ``verts``."""
    probe = ZTVertex(0, 3)
    target = images[probe]
    matches = []
    for a, b, g in itertools.product((0, 1), repeat=3):
        base = apply(TQAutomorphism(0, a, b, g), probe, n)
        if base.i != target.i:
            continue
        cand = TQAutomorphism(base.k - target.k, a, b, g)
        if all(apply(cand, v, n) == images[v] for v in verts):
            matches.append(cand)
    if len(matches) != 1:
        raise TQError(f"window action matches {len(matches)} normal forms; the automorphism list would be wrong here")
    return matches[0]


def compose_normalize(x: TQAutomorphism, y: TQAutomorphism, n: int) -> TQAutomorphism:
    """Normal form of ``x o y``, identified by its action on the window k in [-2n, 2n]."""
    verts = window(n, -2 * n, 2 * n)
    images = {v: apply(x, apply(y, v, n), n) for v in verts}
    return _normalize_action(images, n, verts)


def compose_word(word: Sequence[TQAutomorphism], n: int) -> TQAutomorphism:
    """Normal form of ``word[0] o word[1] o ...``."""
    acc = IDENTITY
    for w in word:
        acc = compose_normalize(acc, w, n)
    return acc


_TOKEN = re.compile(r"(t|a|b|g)(?:\^(-?\d+))?")


def parse_word(text: str, n: int) -> TQAutomorphism:
    """Parse ``"t^2 a g"`` style words (composition, rightmost acts first)."""
    gens = {"a": ALPHA, "b": BETA, "g": GAMMA}
    word = []
    for tok in text.replace("o", " ").replace("*", " ").split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise TQError(f"bad token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) == "t":
            word.append(TAU(e))
        else:
            word.extend([gens[m.group(1)]] * (e % 2 if e >= 0 else (-e) % 2))
    return compose_word(word, n)


def inverse(x: TQAutomorphism, n: int) -> TQAutomorphism:
    verts = window(n, -2 * n, 2 * n)
    back = {apply(x, v, n): v for v in window(n, -4 * n, 4 * n)}
    return _normalize_action({v: back[v] for v in verts}, n, verts)


def power(x: TQAutomorphism, m: int, n: int) -> TQAutomorphism:
    acc = IDENTITY
    for _ in range(m):
        acc = compose_normalize(acc, x, n)
    return acc


def order(x: TQAutomorphism, n: int) -> Optional[int]:
    """Order of ``x``, or ``None`` if infinite.

    Modulo tau the generators alpha, beta, gamma generate a group of order 8,
    so ``x^8`` is a power of tau; it is trivial exactly when ``x`` has finite order.
    """
    acc = IDENTITY
    for m in range(1, 9):
        acc = compose_normalize(acc, x, n)
        if acc.is_identity():
            return m
    if (acc.a, acc.b, acc.g) != (0, 0, 0):
        raise TQError("eighth power is not a tau power; group structure violated on the window")
    return None


def preserves_arrows(x: TQAutomorphism, n: int, kmin: int = -2, kmax: int = 2) -> bool:
    """Arrows map to arrows and the action commutes with tau on the window."""
    for v in window(n, kmin, kmax):
        img = apply(x, v, n)
        if apply(x, tau_shift(v), n) != tau_shift(img):
            return False
        for w in zt_successors(v, n):
            if not is_zt_arrow(img, apply(x, w, n), n):
                return False
    return True


def finite_order_classification(n: int, max_k: int = 6) -> List[TQAutomorphism]:
    """Normal forms with ``|k| <= max_k`` and finite order."""
    out = [x for x in _all_forms(n, range(-max_k, max_k + 1)) if order(x, n) is not None]
    if n % 2 and any(x.g for x in out):
        raise TQError("finite-order element involving gamma found for odd n")
    return sorted(out)


# -- brute force on a window ------------------------------------------------------


SliceMap = Tuple[ZTVertex, ...]


def window_automorphisms(n: int, K: int) -> List[SliceMap]:
    """All tau-equivariant arrow-preserving bijections sending copy 0 into ``|k| <= K``.

    Such a map is determined by the images of ``(0, 1), ..., (0, n + 1)``; the
    search assigns them one by one along the tree, starting at vertex 3.
    """
    arrows = tree_arrows(n)
    parent = {j: i for i, j in arrows}
    # breadth-first from 3 so every vertex after the first has its parent assigned
    bfs, seen = [3], {3}
    while len(bfs) < n + 1:
        for i, j in arrows:
            if i in seen and j not in seen:
                bfs.append(j)
                seen.add(j)
    candidates = window(n, -K, K)
    found: List[SliceMap] = []

    def ok_full(img: Dict[int, ZTVertex]) -> bool:
        if len({v.i for v in img.values()}) != n + 1:
            return False
        f = lambda v: ZTVertex(img[v.i].k + v.k, img[v.i].i)  # noqa: E731
        inv_slice = {img[i].i: ZTVertex(-img[i].k, i) for i in img}
        g = lambda v: ZTVertex(inv_slice[v.i].k + v.k, inv_slice[v.i].i)  # noqa: E731
        for v in window(n, -1, 1):
            for w in zt_successors(v, n):
                if not is_zt_arrow(f(v), f(w), n) or not is_zt_arrow(g(v), g(w), n):
                    return False
        return True

    def extend(img: Dict[int, ZTVertex]):
        if len(img) == n + 1:
            if ok_full(img):
                found.append(tuple(img[i] for i in range(1, n + 2)))
            return
        j = bfs[len(img)]
        src = img[parent[j]]
        used = {v.i for v in img.values()}
        for w in zt_successors(src, n):
            if abs(w.k) <= K and w.i not in used:
                img[j] = w
                extend(img)
                del img[j]

    for start in candidates:
        extend({3: start})
    return sorted(found)


def slice_map(x: TQAutomorphism, n: int) -> SliceMap:
    return tuple(apply(x, ZTVertex(0, i), n) for i in range(1, n + 2))


def window_census(n: int, K: int) -> dict:
    """Compare the window brute force with the normal forms that fit in the window."""
    brute = window_automorphisms(n, K)
    expected = {}
    for x in _all_forms(n, range(-K - n, K + n + 1)):
        s = slice_map(x, n)
        if all(abs(v.k) <= K for v in s):
            if s in expected:
                raise TQError(f"normal forms {expected[s]} and {x} act identically")
            expected[s] = x
    matched = [expected[s] for s in brute if s in expected]
    unmatched = [s for s in brute if s not in expected]
    missing = [x for s, x in expected.items() if s not in set(brute)]
    return {
        "n": n,
        "K": K,
        "found": len(brute),
        "words": sorted(matched),
        "unmatched": unmatched,
        "missing": sorted(missing),
        "exact": not unmatched and not missing and len(matched) == len(brute),
    }


# -- consistency of an orbit graph with catalogue classes ------------------------


def _undirected(verts: Sequence, edges: Dict[Tuple, Tuple[Optional[int], Optional[int]]]):
    nb: Dict[object, Set[object]] = {v: set() for v in verts}
    loops = False
    for (u, v) in edges:
        if u == v:
            loops = True
            continue
        nb[u].add(v)
        nb[v].add(u)
    return nb, loops


def _has_cycle(verts: Sequence, nb: Dict[object, Set[object]]) -> bool:
    n_edges = sum(len(s) for s in nb.values()) // 2
    comps = 0
    seen: Set[object] = set()
    for v in verts:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        seen.add(v)
        while stack:
            for w in nb[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return n_edges > len(verts) - comps


def _val_match(obs: Tuple[Optional[int], Optional[int]], want: Optional[Valuation]) -> bool:
    if want is None:
        return False
    return all(o is None or o == w for o, w in zip(obs, want))


def embeds(entry: TreeCatalogEntry, verts: Sequence, edges: Dict[Tuple, Tuple[Optional[int], Optional[int]]], closed: Set) -> bool:
    """Injective valued embedding of the orbit graph, full degree at closed orbits."""
    nb_obs, _ = _undirected(verts, edges)
    if len(verts) > entry.n_vertices:
        return False
    val = entry.valuation_map()
    deg_t = [entry.degree(v) for v in range(entry.n_vertices)]
    order_ = sorted(verts, key=lambda v: (-len(nb_obs[v]), str(v)))
    # connected order: each vertex after the first touches an earlier one when possible
    ordered: List[object] = []
    rest = list(order_)
    while rest:
        pick = next((v for v in rest if any(w in ordered for w in nb_obs[v])), rest[0])
        ordered.append(pick)
        rest.remove(pick)

    def extend(phi: Dict[object, int], used: Set[int]) -> bool:
        if len(phi) == len(ordered):
            return True
        u = ordered[len(phi)]
        for t in range(entry.n_vertices):
            if t in used:
                continue
            if u in closed and deg_t[t] != len(nb_obs[u]):
                continue
            if deg_t[t] < len(nb_obs[u]):
                continue
            good = True
            for w, tw in phi.items():
                adjacent_t = (t, tw) in val
                if w in nb_obs[u]:
                    good = adjacent_t and all(
                        _val_match(edges[key], val[pair])
                        for key, pair in (((u, w), (t, tw)), ((w, u), (tw, t)))
                        if key in edges
                    )
                elif adjacent_t and (u in closed or w in closed):
                    # the full neighbourhood of a closed orbit is known
                    good = False
                if not good:
                    break
            if good:
                phi[u] = t
                used.add(t)
                if extend(phi, used):
                    return True
                del phi[u]
                used.discard(t)
        return False

    return extend({}, set())


def consistent_classes(verts: Sequence, edges: Dict[Tuple, Tuple[Optional[int], Optional[int]]], closed: Iterable, max_size: Optional[int] = None) -> dict:
    """Catalogue classes whose truncations embed compatibly into an orbit graph.

    A finite window never pins down an infinite component, so the answer is the
    list of every class not yet excluded. A cycle in the orbit graph only fits
    the cycle of the same length and A_inf^inf (as a quotient of Z[A_inf^inf]).
    """
    verts = list(verts)
    closed = set(closed)
    nb, loops = _undirected(verts, edges)
    size = max_size if max_size is not None else max(len(verts) + 6, 12)
    report = {
        "orbits": len(verts),
        "closed_orbits": len(closed),
        "cyclic": False,
        "classes": [],
        "note": "window-verified; not a global classification",
    }
    if not verts:
        return report
    if loops or _has_cycle(verts, nb):
        report["cyclic"] = True
        is_cycle = not loops and all(len(nb[v]) == 2 for v in verts) and len(edges) > 0
        if is_cycle and all(_val_match(e, (1, 1)) for e in edges.values()):
            report["classes"] = ["Ainfinf", f"A~{len(verts) - 1}"]
        return report
    classes = []
    for entry in catalog("dynkin", size) + catalog("euclidean", size):
        if embeds(entry, verts, edges, closed):
            classes.append(entry.name)
    trunc = len(verts) + 2
    for entry in (a_infinity(trunc), a_infinity_infinity(2 * trunc + 1), d_infinity(trunc + 3)):
        if embeds(entry, verts, edges, closed):
            classes.append(entry.name)
    report["classes"] = classes
    return report
