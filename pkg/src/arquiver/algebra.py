"""Bound quiver algebras kQ/I with an explicit path basis.

Conventions: a path is stored as a tuple of arrow indices ``(a1, ..., ar)``
meaning the product ``a1 * a2 * ... * ar``.  Products compose like functions,
so ``ar`` is traversed first and the path runs from ``src(ar)`` to
``tgt(a1)``.  A representation of the quiver (arrow ``a`` acts as a matrix
from the source space to the target space) is then a left module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactcore import Field, FieldError, field_from_json, field_to_json

MAX_NILPOTENCY = 12


class AlgebraError(ValueError):
    """Invalid quiver, relation or functional."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Path:
    """A path from ``src`` to ``tgt``; ``arrows`` empty means the idempotent."""

    src: str
    tgt: str
    arrows: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: List[Arrow] = []
        for name, s, t in arrows:
            if s not in self.vindex or t not in self.vindex:
                raise AlgebraError(f"arrow {name} references an undeclared vertex")
            self.arrows.append(Arrow(str(name), str(s), str(t)))
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        self.aindex = {a.name: i for i, a in enumerate(self.arrows)}

    def __repr__(self) -> str:
        return f"Quiver({self.vertices}, {[(a.name, a.src, a.tgt) for a in self.arrows]})"

    def path(self, names: Sequence[str]) -> Path:
        """Path for the product ``names[0] * names[1] * ...``."""
        if not names:
            raise AlgebraError("use trivial_path for idempotents")
        idx = []
        for n in names:
            if n not in self.aindex:
                raise AlgebraError(f"unknown arrow {n!r}")
            idx.append(self.aindex[n])
        for left, right in zip(idx, idx[1:]):
            if self.arrows[right].tgt != self.arrows[left].src:
                raise AlgebraError(f"path {list(names)} is not composable")
        return Path(self.arrows[idx[-1]].src, self.arrows[idx[0]].tgt, tuple(idx))

    def trivial_path(self, v: str) -> Path:
        if v not in self.vindex:
            raise AlgebraError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        """The product ``p * q`` (``q`` first), or ``None`` when it vanishes in kQ."""
        if q.tgt != p.src:
            return None
        return Path(q.src, p.tgt, p.arrows + q.arrows)

    def path_name(self, p: Path) -> str:
        if not p.arrows:
            return f"e_{p.src}" if len(self.vertices) > 1 else "e"
        names = [self.arrows[i].name for i in p.arrows]
        if all(len(n) == 1 for n in names):
            return "".join(names)
        return "*".join(names)

    def parse_path(self, text: str) -> Path:
        """Read ``"xy"``, ``"x*y"``, ``"e"`` or ``"e_v"``."""
        text = text.strip()
        if text == "e" and len(self.vertices) == 1:
            return self.trivial_path(self.vertices[0])
        if text.startswith("e_") and text[2:] in self.vindex:
            return self.trivial_path(text[2:])
        if "*" in text:
            return self.path(text.split("*"))
        names, pos = [], 0
        by_len = sorted(self.aindex, key=len, reverse=True)
        while pos < len(text):
            for n in by_len:
                if text.startswith(n, pos):
                    names.append(n)
                    pos += len(n)
                    break
            else:
                raise AlgebraError(f"cannot parse path {text!r}")
        return self.path(names)

    def paths_upto(self, max_len: int) -> List[Path]:
        """All paths of length <= max_len, trivial paths first."""
        layer = [self.trivial_path(v) for v in self.vertices]
        out = list(layer)
        for _ in range(max_len):
            nxt = []
            for p in layer:
                for ai, a in enumerate(self.arrows):
                    if a.src == p.tgt:
                        nxt.append(Path(p.src, a.tgt, (ai,) + p.arrows))
            out.extend(nxt)
            layer = nxt
        return out

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.tgt, a.src) for a in self.arrows])


Relation = List[Tuple[object, Tuple[str, ...]]]


def path_key(p: Path):
    """Deg-lex order key; larger keys become pivots during reduction."""
    return (len(p.arrows), p.arrows, p.src)


def _ideal_quotient(quiver: Quiver, rels: List[List[Tuple[object, Path]]], field: Field, trunc: int):
    """Row-reduce the span of ``p r q`` inside paths of length < trunc."""
    paths = quiver.paths_upto(trunc - 1)
    order = sorted(paths, key=path_key, reverse=True)
    col = {p: i for i, p in enumerate(order)}
    by_tgt: Dict[str, List[Path]] = {}
    by_src: Dict[str, List[Path]] = {}
    for p in paths:
        by_tgt.setdefault(p.tgt, []).append(p)
        by_src.setdefault(p.src, []).append(p)
    rows = []
    for rel in rels:
        s, t = rel[0][1].src, rel[0][1].tgt
        shortest = min(len(p) for _, p in rel)
        room = trunc - 1 - shortest
        for left in by_src.get(t, []):
            if len(left) > room:
                continue
            for right in by_tgt.get(s, []):
                if len(left) + len(right) > room:
                    continue
                row = field.zeros(len(order))
                for c, p in rel:
                    full = quiver.concat(left, quiver.concat(p, right))
                    if len(full) < trunc:
                        row[col[full]] = field.add(row[col[full]], c)
                if not field.iszero_matrix(row):
                    rows.append(row)
    if rows:
        r, pivots = field.rref(np.stack(rows))
        r = r[: len(pivots)]
    else:
        r, pivots = field.zeros((0, len(order))), []
    return order, col, r, pivots


class BoundQuiverAlgebra:
    """kQ/I with reduced-path basis and structure constants.

    Attributes:
        basis: reduced paths, ascending in deg-lex order.
        table: ``table[i, j]`` is the coordinate vector of ``basis[i] * basis[j]``.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], field: Field, nilpotency: int):
        if not 1 <= nilpotency <= MAX_NILPOTENCY:
            raise AlgebraError(f"nilpotency bound must be in 1..{MAX_NILPOTENCY}")
        self.quiver = quiver
        self.field = field
        self.nilpotency = nilpotency
        self.relations: List[List[Tuple[object, Path]]] = []
        for rel in relations:
            terms = []
            for coef, names in rel:
                p = quiver.path(list(names))
                if len(p) < 2:
                    raise AlgebraError(f"relation term {list(names)} has length < 2 (not admissible)")
                terms.append((field.element(coef), p))
            if not terms:
                continue
            ends = {(p.src, p.tgt) for _, p in terms}
            if len(ends) != 1:
                raise AlgebraError(f"relation {rel} mixes non-parallel paths")
            self.relations.append(terms)

        order, col, r, pivots = _ideal_quotient(quiver, self.relations, field, nilpotency)
        _, _, _, pivots_next = _ideal_quotient(quiver, self.relations, field, nilpotency + 1)
        n_paths_next = len(quiver.paths_upto(nilpotency))
        dim_here = len(order) - len(pivots)
        dim_next = n_paths_next - len(pivots_next)
        if dim_here != dim_next:
            raise AlgebraError(
                f"nilpotency bound {nilpotency} too small: products of {nilpotency} arrows do not vanish"
            )
        pivot_set = set(pivots)
        self.basis: List[Path] = sorted((order[c] for c in range(len(order)) if c not in pivot_set), key=path_key)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        # normal forms for every path of length < N
        self._nf: Dict[Path, np.ndarray] = {}
        basis_cols = [col[p] for p in self.basis]
        for row, pc in zip(r, pivots):
            self._nf[order[pc]] = field.neg(row[basis_cols])
        self.table = self._build_table()
        self._check_associative()

    # -- element plumbing ---------------------------------------------------
    def normal_form(self, p: Optional[Path]) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dim)
        if p is None or len(p) >= self.nilpotency:
            return out
        if p in self.index:
            out[self.index[p]] = f.one
            return out
        return self._nf[p].copy()

    def element(self, terms: Dict[str, object] | Sequence[Tuple[object, Sequence[str]]]) -> np.ndarray:
        """Vector of a linear combination given as ``{"xy": c}`` or ``[(c, ["x","y"])]``."""
        f = self.field
        out = f.zeros(self.dim)
        items = terms.items() if isinstance(terms, dict) else [(tuple(n), c) for c, n in terms]
        for key, c in items:
            p = self.quiver.parse_path(key) if isinstance(key, str) else self.quiver.path(list(key))
            out = f.add(out, f.mul(self.normal_form(p), f.element(c)))
        return out

    def idempotent(self, v: str) -> np.ndarray:
        return self.normal_form(self.quiver.trivial_path(v))

    def arrow(self, name: str) -> np.ndarray:
        return self.normal_form(self.quiver.path([name]))

    @property
    def unit(self) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dim)
        for v in self.quiver.vertices:
            out = f.add(out, self.idempotent(v))
        return out

    def _build_table(self) -> np.ndarray:
        f = self.field
        t = f.zeros((self.dim, self.dim, self.dim))
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                t[i, j] = self.normal_form(self.quiver.concat(p, q))
        return t

    def _check_associative(self) -> None:
        f = self.field
        n = self.dim
        flat = self.table.reshape(n, n * n)
        for i in range(n):
            for j in range(n):
                # row k: (b_i b_j) b_k and b_i (b_j b_k)
                lhs = f.matmul(self.table[i, j][None, :], flat).reshape(n, n)
                rhs = f.matmul(self.table[j], self.table[i])
                if not f.equal(lhs, rhs):
                    raise AlgebraError("multiplication table is not associative")

    def mul(self, a, b) -> np.ndarray:
        """Product of two coordinate vectors."""
        f = self.field
        n = self.dim
        ab = f.mul(np.asarray(a)[:, None], np.asarray(b)[None, :]).reshape(1, n * n)
        return f.matmul(ab, self.table.reshape(n * n, n))[0]

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> a x`` on coordinate columns."""
        f = self.field
        n = self.dim
        return f.matmul(np.asarray(a)[None, :], self.table.reshape(n, n * n)).reshape(n, n).T

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> x a`` on coordinate columns."""
        f = self.field
        n = self.dim
        t = self.table.transpose(1, 0, 2).reshape(n, n * n)
        return f.matmul(np.asarray(a)[None, :], t).reshape(n, n).T

    def basis_names(self) -> List[str]:
        return [self.quiver.path_name(p) for p in self.basis]

    def radical_layers(self) -> List[int]:
        """Length of each basis path, in basis order."""
        return [len(p) for p in self.basis]

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(dim={self.dim}, field={self.field}, basis={self.basis_names()})"

    # -- opposite algebra ---------------------------------------------------
    def opposite(self) -> Tuple["BoundQuiverAlgebra", np.ndarray]:
        """The opposite algebra and the matrix sending op-coordinates to coordinates.

        The op-basis path ``a1...ar`` corresponds to the element ``ar...a1`` of A.
        """
        if hasattr(self, "_opposite"):
            return self._opposite
        qop = self.quiver.opposite()
        rels = []
        for terms in self.relations:
            rels.append([(c, tuple(self.quiver.arrows[i].name for i in reversed(p.arrows))) for c, p in terms])
        op = BoundQuiverAlgebra(qop, rels, self.field, self.nilpotency)
        f = self.field
        conv = f.zeros((self.dim, op.dim))
        for j, p in enumerate(op.basis):
            rev = Path(p.tgt, p.src, tuple(reversed(p.arrows)))
            conv[:, j] = self.normal_form(rev)
        self._opposite = (op, conv)
        return self._opposite


def build_algebra(quiver: Quiver, relations: Sequence[Relation], field: Field, nilpotency: int) -> BoundQuiverAlgebra:
    """Construct kQ/I; see :class:`BoundQuiverAlgebra`."""
    return BoundQuiverAlgebra(quiver, relations, field, nilpotency)


# -- automorphisms ------------------------------------------------------------


class AlgebraAutomorphism:
    """An algebra automorphism given by its matrix on the basis (columns = images)."""

    def __init__(self, alg: BoundQuiverAlgebra, matrix: np.ndarray, order: Optional[int] = None, check: bool = True):
        self.alg = alg
        self.matrix = np.asarray(matrix)
        self.order = order
        if check:
            self.verify()

    def verify(self) -> None:
        alg, f = self.alg, self.alg.field
        g = self.matrix
        if g.shape != (alg.dim, alg.dim):
            raise AlgebraError("automorphism matrix has the wrong shape")
        if f.rank(g) != alg.dim:
            raise AlgebraError("automorphism is not invertible")
        if not f.equal(f.matmul(g, alg.unit[:, None])[:, 0], alg.unit):
            raise AlgebraError("automorphism is not unital")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = f.matmul(g, alg.table[i, j][:, None])[:, 0]
                rhs = alg.mul(g[:, i], g[:, j])
                if not f.equal(lhs, rhs):
                    raise AlgebraError(
                        f"map is not multiplicative on ({alg.quiver.path_name(alg.basis[i])}, "
                        f"{alg.quiver.path_name(alg.basis[j])})"
                    )
        if self.order is not None and not f.equal(self.power(self.order).matrix, f.eye(alg.dim)):
            raise AlgebraError(f"declared order {self.order} is wrong")

    def __call__(self, a) -> np.ndarray:
        return self.alg.field.matmul(self.matrix, np.asarray(a)[:, None])[:, 0]

    def compose(self, other: "AlgebraAutomorphism") -> "AlgebraAutomorphism":
        """``self o other`` (other applied first)."""
        return AlgebraAutomorphism(self.alg, self.alg.field.matmul(self.matrix, other.matrix), check=False)

    def inverse(self) -> "AlgebraAutomorphism":
        return AlgebraAutomorphism(self.alg, self.alg.field.inverse(self.matrix), self.order, check=False)

    def power(self, e: int) -> "AlgebraAutomorphism":
        f = self.alg.field
        base = self if e >= 0 else self.inverse()
        m = f.eye(self.alg.dim)
        for _ in range(abs(e)):
            m = f.matmul(base.matrix, m)
        return AlgebraAutomorphism(self.alg, m, check=False)

    def is_identity(self) -> bool:
        return self.alg.field.equal(self.matrix, self.alg.field.eye(self.alg.dim))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraAutomorphism) and self.alg is other.alg and self.alg.field.equal(self.matrix, other.matrix)

    @classmethod
    def identity(cls, alg: BoundQuiverAlgebra) -> "AlgebraAutomorphism":
        return cls(alg, alg.field.eye(alg.dim), order=1, check=False)

    @classmethod
    def from_generators(
        cls,
        alg: BoundQuiverAlgebra,
        arrow_images: Dict[str, np.ndarray],
        vertex_map: Optional[Dict[str, str]] = None,
        order: Optional[int] = None,
    ) -> "AlgebraAutomorphism":
        """Extend images of idempotents and arrows multiplicatively, then verify."""
        f = alg.field
        vertex_map = vertex_map or {v: v for v in alg.quiver.vertices}
        m = f.zeros((alg.dim, alg.dim))
        for j, p in enumerate(alg.basis):
            if not p.arrows:
                m[:, j] = alg.idempotent(vertex_map[p.src])
                continue
            img = np.asarray(arrow_images[alg.quiver.arrows[p.arrows[0]].name])
            for ai in p.arrows[1:]:
                img = alg.mul(img, np.asarray(arrow_images[alg.quiver.arrows[ai].name]))
            m[:, j] = img
        return cls(alg, m, order=order)


# -- Frobenius structure ------------------------------------------------------


@dataclass
class FrobeniusStructure:
    """Functional ``f`` with invertible Gram matrix and its Nakayama automorphism.

    ``nu`` satisfies ``f(a b) = f(b nu(a))`` for all ``a, b``.
    """

    alg: BoundQuiverAlgebra
    functional: np.ndarray
    gram: np.ndarray
    nu: AlgebraAutomorphism
    _opposite: Optional["FrobeniusStructure"] = dc_field(default=None, repr=False)

    def opposite(self) -> "FrobeniusStructure":
        """The transported functional on the opposite algebra."""
        if self._opposite is None:
            op, conv = self.alg.opposite()
            f_op = self.alg.field.matmul(self.functional[None, :], conv)[0]
            self._opposite = nakayama(op, f_op)
        return self._opposite


def nakayama(alg: BoundQuiverAlgebra, functional) -> FrobeniusStructure:
    """Solve ``f(ab) = f(b nu(a))`` for ``nu``; the Gram matrix must be invertible."""
    f = alg.field
    fvec = np.asarray(functional)
    if isinstance(functional, dict):
        fvec = f.zeros(alg.dim)
        for key, c in functional.items():
            p = alg.quiver.parse_path(key)
            if p not in alg.index:
                raise AlgebraError(f"functional key {key!r} is not a basis path")
            fvec[alg.index[p]] = f.element(c)
    n = alg.dim
    gram = f.matmul(alg.table.reshape(n * n, n), fvec[:, None]).reshape(n, n)
    if f.rank(gram) != n:
        raise AlgebraError("not a Frobenius functional: the form f(ab) is degenerate")
    # G[i, j] = f(b_i b_j) and f(b_i b_j) = f(b_j nu(b_i)) = (G N)[j, i]
    nu_mat = f.matmul(f.inverse(gram), gram.T)
    nu = AlgebraAutomorphism(alg, nu_mat)
    for i in range(n):
        for j in range(n):
            lhs = gram[i, j]
            rhs = f.matmul(fvec[None, :], alg.mul(alg.basis_vector(j), nu_mat[:, i])[:, None])[0, 0]
            if not f.equal(np.asarray(lhs), np.asarray(rhs)):
                raise AlgebraError("Nakayama equation fails")  # pragma: no cover
    return FrobeniusStructure(alg, fvec, gram, nu)


def _basis_vector(self: BoundQuiverAlgebra, i: int) -> np.ndarray:
    out = self.field.zeros(self.dim)
    out[i] = self.field.one
    return out


BoundQuiverAlgebra.basis_vector = _basis_vector


def projective(alg: BoundQuiverAlgebra, vertex: str):
    """The indecomposable projective ``A e_v`` as a representation."""
    from .rep import Representation

    if vertex not in alg.quiver.vindex:
        raise AlgebraError(f"unknown vertex {vertex!r}")
    f = alg.field
    idx = {w: [i for i, p in enumerate(alg.basis) if p.src == vertex and p.tgt == w] for w in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        left = alg.left_matrix(alg.arrow(a.name))
        mats[a.name] = left[np.ix_(idx[a.tgt], idx[a.src])] if idx[a.tgt] and idx[a.src] else f.zeros((len(idx[a.tgt]), len(idx[a.src])))
    return Representation(alg, {w: len(idx[w]) for w in alg.quiver.vertices}, mats)


def regular_module(alg: BoundQuiverAlgebra):
    """The left regular module with vertex spaces ``e_w A`` in basis order."""
    from .rep import Representation

    f = alg.field
    idx = {w: [i for i, p in enumerate(alg.basis) if p.tgt == w] for w in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        left = alg.left_matrix(alg.arrow(a.name))
        mats[a.name] = left[np.ix_(idx[a.tgt], idx[a.src])] if idx[a.tgt] and idx[a.src] else f.zeros((len(idx[a.tgt]), len(idx[a.src])))
    return Representation(alg, {w: len(idx[w]) for w in alg.quiver.vertices}, mats), idx


def simple(alg: BoundQuiverAlgebra, vertex: str):
    from .rep import Representation

    f = alg.field
    dims = {w: int(w == vertex) for w in alg.quiver.vertices}
    mats = {a.name: f.zeros((dims[a.tgt], dims[a.src])) for a in alg.quiver.arrows}
    return Representation(alg, dims, mats)


# -- file format --------------------------------------------------------------


def algebra_from_json(data: dict) -> Tuple[BoundQuiverAlgebra, Optional[FrobeniusStructure]]:
    """Load ``{"field", "vertices", "arrows", "relations", "nilpotency", "frobenius"?}``."""
    try:
        field = field_from_json(data["field"])
        quiver = Quiver(data["vertices"], [(a["name"], a["from"], a["to"]) for a in data["arrows"]])
        rels = [[(Fraction(str(t["coef"])), tuple(t["path"])) for t in rel] for rel in data.get("relations", [])]
        nil = int(data["nilpotency"])
    except (KeyError, TypeError, FieldError) as exc:
        raise AlgebraError(f"malformed algebra file: {exc}") from exc
    alg = build_algebra(quiver, rels, field, nil)
    frob = nakayama(alg, data["frobenius"]) if data.get("frobenius") else None
    return alg, frob


def load_algebra(path: str) -> Tuple[BoundQuiverAlgebra, Optional[FrobeniusStructure]]:
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


def algebra_to_json(alg: BoundQuiverAlgebra, frob: Optional[FrobeniusStructure] = None) -> dict:
    f = alg.field
    q = alg.quiver
    out = {
        "field": field_to_json(f),
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.src, "to": a.tgt} for a in q.arrows],
        "relations": [
            [{"coef": f.to_str(c), "path": [q.arrows[i].name for i in p.arrows]} for c, p in rel]
            for rel in alg.relations
        ],
        "nilpotency": alg.nilpotency,
    }
    if frob is not None:
        out["frobenius"] = {
            q.path_name(p): f.to_str(c) for p, c in zip(alg.basis, frob.functional) if not f.is_zero(c)
        }
    return out
