"""Exact fields and dense linear algebra over them.

Matrices are plain numpy arrays.  Finite-field elements are stored as
``int64`` codes (residues for prime fields, base-``p`` digit encodings of
polynomial coefficients for extension fields); rationals are ``Fraction``
objects in ``object`` arrays.  Every routine below is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

MAX_EXTENSION_ORDER = 1 << 20


class FieldError(ValueError):
    """Invalid field specification or mixed-field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface.  Subclasses supply the elementwise arithmetic."""

    char: int
    order: int | None
    dtype: object

    # -- elementwise primitives (overridden) --------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, x):
        """Inverse of a single nonzero scalar."""
        raise NotImplementedError

    def is_zero(self, a) -> np.ndarray:
        return np.asarray(a) == 0

    def element(self, value):
        """Convert a Python value (int, str, Fraction, list) to an element."""
        raise NotImplementedError

    def to_str(self, x) -> str:
        return str(x)

    def random(self, shape, rng: np.random.Generator):
        raise NotImplementedError

    def elements(self):
        """All elements of a finite field, in code order."""
        raise FieldError("the field is infinite")

    # -- derived ------------------------------------------------------------
    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=object)
        out = self.zeros(arr.shape)
        for idx in np.ndindex(arr.shape):
            out[idx] = self.element(arr[idx])
        return out

    def scale(self, c, a):
        return self.mul(np.full(np.shape(a), c, dtype=self.dtype) if np.ndim(a) else c, a)

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape[1] != b.shape[0]:
            raise FieldError(f"shape mismatch {a.shape} @ {b.shape}")
        out = self.zeros((a.shape[0], b.shape[1]))
        for k in range(a.shape[1]):
            col = a[:, k]
            if not np.any(~self.is_zero(col)):
                continue
            out = self.add(out, self.mul(col[:, None], b[k][None, :]))
        return out

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self.mul(a[:, None, :, None], b[None, :, None, :])
        return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        return a.shape == b.shape and bool(np.all(self.is_zero(self.sub(a, b))))

    def iszero_matrix(self, a) -> bool:
        return bool(np.all(self.is_zero(a)))

    def power(self, x, e: int):
        result = self.one
        base = x
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- elimination --------------------------------------------------------
    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form; pivot is the first nonzero entry."""
        r = np.array(a, dtype=self.dtype, copy=True)
        if r.ndim != 2:
            raise FieldError("rref expects a matrix")
        nrows, ncols = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(ncols):
            if row == nrows:
                break
            nz = np.flatnonzero(~self.is_zero(r[row:, col]))
            if nz.size == 0:
                continue
            p = row + int(nz[0])
            if p != row:
                r[[row, p]] = r[[p, row]]
            piv = r[row, col]
            if not (piv == self.one):
                r[row] = self.mul(r[row], np.full(ncols, self.inv(piv), dtype=self.dtype))
            factors = r[:, col].copy()
            factors[row] = self.zero
            hit = np.flatnonzero(~self.is_zero(factors))
            if hit.size:
                r[hit] = self.sub(r[hit], self.mul(factors[hit][:, None], r[row][None, :]))
            pivots.append(col)
            row += 1
        return r, pivots

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a) -> np.ndarray:
        """Columns form a basis of {v : a v = 0}."""
        a = np.asarray(a)
        ncols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(ncols)
        r, pivots = self.rref(a)
        return self._kernel_from_rref(r, pivots, ncols)

    def solve(self, a, b) -> tuple[np.ndarray | None, np.ndarray]:
        """Return ``(x, kernel)`` with ``a @ x == b``, or ``(None, kernel)``."""
        a = np.asarray(a)
        b = np.asarray(b)
        if b.ndim == 1:
            b = b[:, None]
        if a.shape[0] != b.shape[0]:
            raise FieldError(f"row mismatch: {a.shape} vs {b.shape}")
        n = a.shape[1]
        if a.shape[0] == 0:
            return self.zeros((n, b.shape[1])), self.eye(n)
        # the rref of [a | b] restricted to its first n columns is the rref of a
        r, pivots = self.rref(np.concatenate([a, b], axis=1))
        a_pivots = [p for p in pivots if p < n]
        kern = self._kernel_from_rref(r, a_pivots, n)
        if len(a_pivots) != len(pivots):
            return None, kern
        x = self.zeros((n, b.shape[1]))
        if a_pivots:
            x[a_pivots] = r[: len(a_pivots), n:]
        return x, kern

    def _kernel_from_rref(self, r: np.ndarray, pivots: list[int], ncols: int) -> np.ndarray:
        pivot_set = set(pivots)
        free = [c for c in range(ncols) if c not in pivot_set]
        basis = self.zeros((ncols, len(free)))
        if free:
            basis[free, range(len(free))] = self.one
            if pivots:
                basis[np.ix_(pivots, range(len(free)))] = self.neg(r[: len(pivots)][:, free])
        return basis

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise FieldError("inverse of a non-square matrix")
        if n == 0:
            return a.copy()
        r, pivots = self.rref(np.concatenate([a, self.eye(n)], axis=1))
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise FieldError("matrix is singular")
        return r[:, n:]

    def column_space(self, a) -> np.ndarray:
        """Independent columns of ``a`` spanning its column space."""
        a = np.asarray(a)
        if a.shape[1] == 0:
            return a
        _, pivots = self.rref(a)
        return a[:, pivots]

    def left_kernel(self, a) -> np.ndarray:
        """Rows form a basis of {w : w a = 0}."""
        return self.kernel(np.asarray(a).T).T

    def in_span(self, basis, v) -> bool:
        basis = np.asarray(basis)
        v = np.asarray(v)
        if v.ndim == 1:
            v = v[:, None]
        if basis.shape[1] == 0:
            return self.iszero_matrix(v)
        x, _ = self.solve(basis, v)
        return x is not None

    def complement_basis(self, sub, n: int) -> np.ndarray:
        """Standard basis vectors completing the columns of ``sub`` to F^n."""
        sub = np.asarray(sub)
        sub = sub.reshape(n, sub.size // n if n else 0)
        stacked = np.concatenate([sub, self.eye(n)], axis=1)
        _, pivots = self.rref(stacked)
        k = sub.shape[1]
        chosen = [p - k for p in pivots if p >= k]
        return self.eye(n)[:, chosen]

    # -- polynomials (coefficient arrays, low degree first) ------------------
    def poly_trim(self, f) -> np.ndarray:
        f = np.asarray(f)
        nz = np.flatnonzero(~self.is_zero(f))
        if nz.size == 0:
            return f[:0]
        return f[: nz[-1] + 1]

    def poly_monic(self, f) -> np.ndarray:
        f = self.poly_trim(f)
        if f.size == 0:
            return f
        return self.mul(f, np.full(f.size, self.inv(f[-1]), dtype=self.dtype))

    def poly_mul(self, f, g) -> np.ndarray:
        f = self.poly_trim(f)
        g = self.poly_trim(g)
        if f.size == 0 or g.size == 0:
            return self.zeros(0)
        out = self.zeros(f.size + g.size - 1)
        for i in range(f.size):
            if self.is_zero(f[i]):
                continue
            seg = self.mul(np.full(g.size, f[i], dtype=self.dtype), g)
            out[i : i + g.size] = self.add(out[i : i + g.size], seg)
        return out

    def poly_divmod(self, f, g) -> tuple[np.ndarray, np.ndarray]:
        f = self.poly_trim(f).copy()
        g = self.poly_trim(g)
        if g.size == 0:
            raise ZeroDivisionError("polynomial division by zero")
        if f.size < g.size:
            return self.zeros(0), f
        lead_inv = self.inv(g[-1])
        q = self.zeros(f.size - g.size + 1)
        for i in range(f.size - g.size, -1, -1):
            c = self.mul(f[i + g.size - 1], lead_inv)
            if self.is_zero(c):
                continue
            q[i] = c
            seg = self.mul(np.full(g.size, c, dtype=self.dtype), g)
            f[i : i + g.size] = self.sub(f[i : i + g.size], seg)
        return q, self.poly_trim(f)

    def poly_gcd(self, f, g) -> np.ndarray:
        f = self.poly_trim(f)
        g = self.poly_trim(g)
        while g.size:
            f, g = g, self.poly_divmod(f, g)[1]
        return self.poly_monic(f)

    def poly_deriv(self, f) -> np.ndarray:
        f = self.poly_trim(f)
        if f.size <= 1:
            return self.zeros(0)
        coeffs = [self.mul(f[i], self.element(i)) for i in range(1, f.size)]
        return self.poly_trim(np.array(coeffs, dtype=self.dtype))

    def poly_eval_matrix(self, f, a) -> np.ndarray:
        """Horner evaluation of ``f`` at the square matrix ``a``."""
        f = self.poly_trim(f)
        n = a.shape[0]
        out = self.zeros((n, n))
        ident = self.eye(n)
        for c in f[::-1]:
            out = self.add(self.matmul(out, a), self.mul(np.full((n, n), c, dtype=self.dtype), ident))
        return out

    def poly_powmod(self, f, e: int, m) -> np.ndarray:
        result = np.array([self.one], dtype=self.dtype)
        base = self.poly_divmod(f, m)[1]
        while e > 0:
            if e & 1:
                result = self.poly_divmod(self.poly_mul(result, base), m)[1]
            base = self.poly_divmod(self.poly_mul(base, base), m)[1]
            e >>= 1
        return result

    def coprime_split(self, f) -> tuple[np.ndarray, np.ndarray] | None:
        """Split ``f`` as ``f1 * f2`` with coprime nonconstant factors.

        Returns ``None`` exactly when ``f`` is a power of one irreducible.
        """
        raise NotImplementedError

    def min_poly(self, a) -> np.ndarray:
        """Monic minimal polynomial of a square matrix."""
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise FieldError("min_poly needs a square matrix")
        powers = [self.eye(n).reshape(-1)]
        current = self.eye(n)
        for d in range(1, n + 1):
            current = self.matmul(current, a)
            basis = np.stack(powers, axis=1)
            x, _ = self.solve(basis, current.reshape(-1))
            if x is not None:
                coeffs = [self.neg(c) for c in x[:, 0]] + [self.one]
                return np.array(coeffs, dtype=self.dtype)
            powers.append(current.reshape(-1))
        raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= 1 << 31:
            raise FieldError("prime too large for int64 arithmetic")
        self.p = p
        self.char = p
        self.order = p
        self.dtype = np.int64

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def add(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def neg(self, a):
        return (-np.asarray(a)) % self.p

    def mul(self, a, b):
        return (np.asarray(a) * np.asarray(b)) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return np.int64(pow(x, -1, self.p))

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise FieldError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] * (self.p - 1) ** 2 < (1 << 62):
            return (a @ b) % self.p
        return super().matmul(a, b)

    def element(self, value):
        if isinstance(value, (np.integer, int)):
            return np.int64(int(value) % self.p)
        if isinstance(value, Fraction):
            return self.mul(self.element(value.numerator), self.inv(self.element(value.denominator)))
        if isinstance(value, str):
            return self.element(Fraction(value.strip()))
        raise FieldError(f"cannot read {value!r} as an element of {self}")

    def to_str(self, x) -> str:
        return str(int(x))

    def random(self, shape, rng):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def elements(self):
        return [np.int64(i) for i in range(self.p)]

    def nth_root(self, x, e: int):
        return x  # Frobenius is the identity on GF(p)

    def coprime_split(self, f):
        return _finite_coprime_split(self, f)


class ExtensionField(Field):
    """GF(p^k) = GF(p)[t]/(poly), elements encoded as sum(c_i * p**i)."""

    def __init__(self, p: int, k: int, poly: Sequence[int]):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if not 1 <= k <= 8:
            raise FieldError("extension degree must be in 1..8")
        poly = [int(c) % p for c in poly]
        if len(poly) != k + 1 or poly[-1] == 0:
            raise FieldError("defining polynomial must have degree k")
        if p**k > MAX_EXTENSION_ORDER:
            raise FieldError("extension field too large for table arithmetic")
        if not _irreducible_mod_p(poly, p):
            raise FieldError(f"polynomial {poly} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.poly = tuple(poly)
        self.q = p**k
        self.char = p
        self.order = self.q
        self.dtype = np.int64
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k}; {list(self.poly)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtensionField) and (other.p, other.poly) == (self.p, self.poly)

    def __hash__(self) -> int:
        return hash(("GFext", self.p, self.poly))

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        monic_inv = pow(self.poly[-1], -1, p)
        red = [(c * monic_inv) % p for c in self.poly[:-1]]

        def times_t(code: int) -> int:
            digits = [(code // p**i) % p for i in range(k)]
            top = digits[-1]
            shifted = [0] + digits[:-1]
            out = [(shifted[i] - top * red[i]) % p for i in range(k)]
            return sum(d * p**i for i, d in enumerate(out))

        def mul_slow(a: int, b: int) -> int:
            acc = 0
            da = [(a // p**i) % p for i in range(k)]
            power = b
            for d in da:
                if d:
                    acc = self._add_int(acc, self._scale_int(power, d))
                power = times_t(power)
            return acc

        for g in range(2, q) if q > 2 else [1]:
            seen = 1
            x = g
            order = 1
            while x != 1:
                x = mul_slow(x, g)
                order += 1
                if order > q:
                    break
            if order == q - 1:
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element found")
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = mul_slow(x, g)
        exp[q - 1 :] = exp[: q - 1]
        del seen
        self.primitive = np.int64(g)
        self._exp = exp
        self._log = log
        # full product table and digit expansions for vectorised matmul
        codes = np.arange(q, dtype=np.int64)
        self._table = self.mul(codes[:, None], codes[None, :])
        self._digits = np.stack([(codes // p**i) % p for i in range(k)], axis=1)
        self._weights = np.array([p**i for i in range(k)], dtype=np.int64)

    def _add_int(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        for i in range(self.k):
            out += (((a // p**i) % p + (b // p**i) % p) % p) * p**i
        return out

    def _scale_int(self, a: int, c: int) -> int:
        p = self.p
        return sum((((a // p**i) % p) * c % p) * p**i for i in range(self.k))

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += ((-((a // w) % self.p)) % self.p) * w
        return out

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[np.where(zero, 0, la + lb)]
        return np.where(zero, 0, out)

    def inv(self, x):
        x = int(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return np.int64(self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)])

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise FieldError(f"shape mismatch {a.shape} @ {b.shape}")
        n, inner, m = a.shape[0], a.shape[1], b.shape[1]
        if n == 0 or m == 0 or inner == 0:
            return self.zeros((n, m))
        # chunk the inner index to bound the n * chunk * m temporary
        step = max(1, 2_000_000 // max(1, n * m * self.k))
        if self.p == 2:
            out = np.zeros((n, m), dtype=np.int64)
            for s in range(0, inner, step):
                prod = self._table[a[:, s : s + step, None], b[None, s : s + step, :]]
                out ^= np.bitwise_xor.reduce(prod, axis=1)
            return out
        acc = np.zeros((n, m, self.k), dtype=np.int64)
        for s in range(0, inner, step):
            prod = self._table[a[:, s : s + step, None], b[None, s : s + step, :]]
            acc += self._digits[prod].sum(axis=1)
        return (acc % self.p) @ self._weights

    def element(self, value):
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise FieldError("too many coefficients")
            return np.int64(sum((int(c) % self.p) * self.p**i for i, c in enumerate(value)))
        if isinstance(value, np.ndarray) and value.ndim == 0:
            value = value[()]
        if isinstance(value, np.integer):
            # numpy integers are already encoded elements
            if not 0 <= int(value) < self.order:
                raise FieldError(f"{value} is not an encoded element of {self}")
            return np.int64(value)
        if isinstance(value, int):
            return np.int64(value % self.p)
        if isinstance(value, Fraction):
            num = self.element(value.numerator)
            return self.mul(num, self.inv(self.element(value.denominator)))
        if isinstance(value, str):
            return self._parse(value)
        raise FieldError(f"cannot read {value!r} as an element of {self}")

    def _parse(self, text: str):
        """Parse ``"t^2+2*t+1"``-style polynomials in the generator ``t``."""
        s = text.replace(" ", "").replace("-", "+-")
        acc = np.int64(0)
        for term in filter(None, s.split("+")):
            sign = 1
            if term.startswith("-"):
                sign, term = -1, term[1:]
            if "t" in term:
                coef_s, _, pow_s = term.partition("t")
                coef_s = coef_s.rstrip("*") or "1"
                e = int(pow_s.lstrip("^")) if pow_s else 1
                val = self.mul(self.element(int(coef_s)), self.power(self.element([0, 1]), e))
            else:
                val = self.element(Fraction(term))
            if sign < 0:
                val = self.neg(val)
            acc = self.add(acc, val)
        return np.int64(acc)

    def to_str(self, x) -> str:
        x = int(x)
        if x < self.p:
            return str(x)
        terms = []
        for i in range(self.k - 1, -1, -1):
            d = (x // self.p**i) % self.p
            if not d:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms)

    def random(self, shape, rng):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def elements(self):
        return [np.int64(i) for i in range(self.q)]

    def nth_root(self, x, e: int):
        """The unique ``y`` with ``y**(p**e) == x``."""
        return self.power(np.int64(x), pow(self.p, (self.k - e % self.k) % self.k))

    def coprime_split(self, f):
        return _finite_coprime_split(self, f)


class RationalField(Field):
    def __init__(self):
        self.char = 0
        self.order = None
        self.dtype = object

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def add(self, a, b):
        return np.asarray(a, dtype=object) + np.asarray(b, dtype=object)

    def neg(self, a):
        return -np.asarray(a, dtype=object)

    def mul(self, a, b):
        return np.asarray(a, dtype=object) * np.asarray(b, dtype=object)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def matmul(self, a, b):
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        if a.shape[1] != b.shape[0]:
            raise FieldError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        return np.dot(a, b)

    def is_zero(self, a):
        return np.asarray(np.asarray(a, dtype=object) == 0, dtype=bool)

    def element(self, value):
        if isinstance(value, (Fraction, int, np.integer)):
            return Fraction(int(value)) if not isinstance(value, Fraction) else value
        if isinstance(value, str):
            return Fraction(value.strip())
        raise FieldError(f"cannot read {value!r} as a rational")

    def random(self, shape, rng):
        vals = rng.integers(-3, 4, size=shape)
        out = self.zeros(np.shape(vals))
        for idx in np.ndindex(out.shape):
            out[idx] = Fraction(int(vals[idx]))
        return out

    def coprime_split(self, f):
        import sympy

        f = self.poly_monic(f)
        t = sympy.Symbol("t")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(f))
        _, factors = sympy.factor_list(expr, t, domain="QQ")
        if len(factors) < 2:
            return None
        first, mult = factors[0]
        part = sympy.Poly(first**mult, t)
        coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(part.all_coeffs())]
        f1 = self.poly_monic(np.array(coeffs, dtype=object))
        f2, rem = self.poly_divmod(f, f1)
        assert rem.size == 0
        return f1, self.poly_monic(f2)


def _irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree <= k/2 divides ``poly``."""
    k = len(poly) - 1
    f = PrimeField(p)
    target = np.array(poly, dtype=np.int64)
    for d in range(1, k // 2 + 1):
        for code in range(p**d):
            cand = [(code // p**i) % p for i in range(d)] + [1]
            _, r = f.poly_divmod(target, np.array(cand, dtype=np.int64))
            if r.size == 0:
                return False
    return True


def _finite_radical(field: Field, f) -> np.ndarray:
    """Product of the distinct monic irreducible factors of ``f``."""
    f = field.poly_monic(f)
    if f.size <= 1:
        return np.array([field.one], dtype=field.dtype)
    d = field.poly_deriv(f)
    if d.size == 0:
        # f(t) = h(t^p); over a perfect field f = (h^{1/p})^p
        p = field.char
        coeffs = [field.nth_root(f[i], 1) for i in range(0, f.size, p)]
        return _finite_radical(field, np.array(coeffs, dtype=field.dtype))
    g = field.poly_gcd(f, d)
    s1 = field.poly_divmod(f, g)[0]
    rest = _finite_radical(field, g)
    common = field.poly_gcd(s1, rest)
    return field.poly_monic(field.poly_divmod(field.poly_mul(s1, rest), common)[0])


def _split_squarefree(field: Field, s, rng: np.random.Generator):
    """Nontrivial monic factor of the squarefree ``s``, or ``None`` if irreducible."""
    q = field.order
    n = s.size - 1
    if n <= 1:
        return None
    x = np.array([field.zero, field.one], dtype=field.dtype)
    h = x
    for d in range(1, n // 2 + 1):
        h = field.poly_powmod(h, q, s)
        diff = field.poly_trim(field.sub(_pad(field, h, 2), _pad(field, x, h.size)) if h.size >= 2 else field.sub(_pad(field, h, 2), x))
        g = field.poly_gcd(s, diff)
        if 0 < g.size - 1 < n:
            return g
        if g.size - 1 == n:
            if n == d:
                return None
            return _equal_degree_factor(field, s, d, rng)
    return None


def _pad(field: Field, f, size: int) -> np.ndarray:
    if f.size >= size:
        return f
    out = field.zeros(size)
    out[: f.size] = f
    return out


def _equal_degree_factor(field: Field, s, d: int, rng: np.random.Generator):
    q = field.order
    n = s.size - 1
    for _ in range(200):
        a = field.poly_trim(field.random(n, rng))
        if a.size <= 1:
            continue
        if field.char == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k
            m = int(round(math.log2(q))) * d
            acc = a
            term = a
            for _ in range(m - 1):
                term = field.poly_divmod(field.poly_mul(term, term), s)[1]
                acc = field.poly_trim(field.add(_pad(field, acc, max(acc.size, term.size)), _pad(field, term, max(acc.size, term.size))))
            b = acc
        else:
            b = field.poly_powmod(a, (q**d - 1) // 2, s)
            b = field.poly_trim(field.sub(_pad(field, b, 1), _pad(field, np.array([field.one], dtype=field.dtype), b.size)))
        g = field.poly_gcd(s, b)
        if 0 < g.size - 1 < n:
            return g
    return None  # pragma: no cover


def _finite_coprime_split(field: Field, f):
    f = field.poly_monic(f)
    if f.size <= 2:
        return None
    s = _finite_radical(field, f)
    g = _split_squarefree(field, s, np.random.default_rng(0))
    if g is None:
        return None
    f1 = field.poly_monic(field.poly_gcd(f, field.poly_powmod(g, f.size, f)))
    # f1 now holds every factor of f dividing g, with full multiplicity
    while True:
        nxt = field.poly_gcd(f, field.poly_mul(f1, g))
        if nxt.size == f1.size:
            break
        f1 = nxt
    f2, rem = field.poly_divmod(f, f1)
    assert rem.size == 0
    return f1, field.poly_monic(f2)


def field_from_json(spec) -> Field:
    """Read ``{"char": p}``, ``{"char": p, "degree": k, "poly": [...]}`` or ``"rational"``."""
    if spec in ("rational", "QQ", "Q"):
        return RationalField()
    if not isinstance(spec, dict) or "char" not in spec:
        raise FieldError(f"bad field spec {spec!r}")
    p = int(spec["char"])
    k = int(spec.get("degree", 1))
    if k == 1 and "poly" not in spec:
        return PrimeField(p)
    return ExtensionField(p, k, spec["poly"])


def field_to_json(field: Field):
    if isinstance(field, RationalField):
        return "rational"
    if isinstance(field, ExtensionField):
        return {"char": field.p, "degree": field.k, "poly": list(field.poly)}
    return {"char": field.p}


def root_of_unity(field: Field, m: int):
    """A deterministic primitive ``m``-th root of unity, from a primitive element."""
    if field.order is None:
        if m in (1, 2):
            return field.element(1 if m == 1 else -1)
        raise FieldError("QQ only contains the roots of unity +-1")
    q = field.order
    if (q - 1) % m:
        raise FieldError(f"{field} has no primitive {m}-th root of unity")
    if isinstance(field, ExtensionField):
        gen = field.primitive
    else:
        gen = next(g for g in range(1, q) if _mult_order(g, field) == q - 1) if q > 2 else 1
        gen = np.int64(gen)
    return field.power(gen, (q - 1) // m)


def _mult_order(g: int, field: PrimeField) -> int:
    x, k = g % field.p, 1
    while x != 1:
        x = x * g % field.p
        k += 1
    return k
