"""Exact arithmetic in prime-power finite fields F_{p^r} and their extensions.

Elements are plain ints in [0, p^r): the integer sum(c_i * p^i) encodes the
polynomial c_0 + c_1*x + ... + c_{r-1}*x^{r-1} over F_p, reduced modulo a
fixed monic irreducible polynomial.  The modulus is always the
lexicographically smallest monic irreducible of the right degree
(coefficients compared low-to-high), so every downstream matrix is
bit-reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

MAX_ORDER = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, low-to-high, no padding rules)

def _poly_trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    """Remainder of a modulo the monic polynomial m, over F_p."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg < 1 or m[-1] != 1:
        return False
    if deg == 1:
        return True
    if m[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        # monic divisor candidates: coeffs c_0..c_{d-1} free, leading 1
        for code in range(p ** d):
            cand = []
            c = code
            for _ in range(d):
                cand.append(c % p)
                c //= p
            cand.append(1)
            if not _poly_mod(m, cand, p):
                return False
    return True


def _lex_smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest (low-to-high coeffs) monic irreducible of degree r."""
    if r == 1:
        return (0, 1)  # x
    # enumerate low coefficient tuples (c_0, ..., c_{r-1}) in lex order
    def rec(prefix: list[int]):
        if len(prefix) == r:
            cand = prefix + [1]
            if _is_irreducible(cand, p):
                return tuple(cand)
            return None
        for c in range(p):
            got = rec(prefix + [c])
            if got is not None:
                return got
        return None

    # lex order on tuples = nested loops most-significant-first on c_0
    found = rec([])
    if found is None:  # pragma: no cover - irreducibles always exist
        raise FieldError(f"no irreducible of degree {r} over F_{p}")
    return found


class Field:
    """The finite field F_{p^r} with a fixed canonical modulus polynomial.

    Elements are ints in range(order).  The encoding of the polynomial
    sum c_i x^i is the integer sum c_i p^i; in particular 0 and 1 are the
    additive and multiplicative identities and (for r > 1) `p` encodes x.
    """

    __slots__ = ("p", "r", "order", "modulus", "_exp", "_log", "_pmul")

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if r < 1:
            raise FieldError(f"extension degree r = {r} must be >= 1")
        order = p ** r
        if order > MAX_ORDER:
            raise FieldError(f"field order {order} exceeds bound {MAX_ORDER}")
        self.p = p
        self.r = r
        self.order = order
        if modulus is None:
            modulus = _lex_smallest_irreducible(p, r)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
                raise FieldError(f"invalid modulus {modulus} for F_{p}^{r}")
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._pmul = None

    # -- identity / comparison ------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.r == other.r
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"Field({self.p}, {self.r})"

    @property
    def name(self) -> str:
        return f"F{self.order}"

    # -- element plumbing -----------------------------------------------------
    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise FieldError(f"{a!r} is not an element of {self.name}")
        return a

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Length-r coefficient vector of a, low-to-high."""
        self.check(a)
        out = []
        for _ in range(self.r):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def element(self, coeffs: Iterable[int]) -> int:
        cs = list(coeffs)
        if len(cs) > self.r:
            raise FieldError(f"too many coefficients for {self.name}")
        a = 0
        for c in reversed(cs):
            a = a * self.p + (int(c) % self.p)
        return a

    def elements(self) -> range:
        return range(self.order)

    def elements_lex(self):
        """All elements ordered by coefficient tuple, lexicographically low-to-high."""
        return sorted(self.elements(), key=self.coeffs)

    def render(self, a: int) -> str:
        return f"{self.name}:[{','.join(map(str, self.coeffs(a)))}]"

    # -- arithmetic -------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = 0
        mul = 1
        for _ in range(self.r):
            out += ((a + b) % self.p) * mul
            a //= self.p
            b //= self.p
            mul *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = 0
        mul = 1
        for _ in range(self.r):
            out += (-a % self.p) * mul
            a //= self.p
            mul *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_direct(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        pa = self.coeffs(a)
        pb = self.coeffs(b)
        prod = _poly_mul(pa, pb, self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return self.element(red)

    def _ensure_tables(self):
        if self._exp is not None or self.order > (1 << 16):
            return
        q = self.order
        # find a primitive element by walking its powers
        for g in range(1 if q == 2 else 2, q):
            exp = [1]
            x = 1
            ok = True
            for _ in range(q - 2):
                x = self._mul_direct(x, g)
                if x == 1:
                    ok = False
                    break
                exp.append(x)
            if ok and self._mul_direct(x, g) == 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp = exp + exp  # doubled to skip a mod in mul
                self._log = log
                return
        raise FieldError("no primitive element found")  # pragma: no cover

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        self._ensure_tables()
        if self._exp is None:
            return self._mul_direct(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        self.check(a)
        if a == 0:
            raise FieldError("division by zero")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        self._ensure_tables()
        if self._exp is not None:
            la = self._log[a]
            return self._exp[(self.order - 1 - la) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self.check(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def eval_poly(self, coeffs: Sequence[int], x: int) -> int:
        """Evaluate a polynomial with coefficients in this field (low-to-high) at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


@lru_cache(maxsize=None)
def field_construct(p: int, r: int = 1) -> Field:
    """Canonical F_{p^r}: lexicographically smallest irreducible modulus, cached."""
    return Field(p, r)


def parse_field_name(token: str) -> Field:
    """Inverse of Field.name: 'F8' -> the canonical field of order 8."""
    if not token.startswith("F"):
        raise FieldError(f"bad field token {token!r}")
    try:
        order = int(token[1:])
    except ValueError:
        raise FieldError(f"bad field token {token!r}") from None
    if order < 2:
        raise FieldError(f"bad field order {order}")
    # factor the prime power
    p = None
    for f in range(2, order + 1):
        if order % f == 0:
            p = f
            break
    r = 0
    n = order
    while n > 1:
        if n % p:
            raise FieldError(f"{order} is not a prime power")
        n //= p
        r += 1
    return field_construct(p, r)


# ---------------------------------------------------------------------------
# extensions


def _solve_mod_p(mat: list[list[int]], p: int) -> list[list[int]] | None:
    """Inverse of a square matrix over F_p, or None if singular."""
    n = len(mat)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    col = 0
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col] % p:
                piv = i
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col] % p, p - 2, p)
        a[col] = [(v * inv) % p for v in a[col]]
        for i in range(n):
            if i != col and a[i][col] % p:
                f = a[i][col] % p
                a[i] = [(vi - f * vc) % p for vi, vc in zip(a[i], a[col])]
    return [row[n:] for row in a]


class Extension:
    """A degree-z extension F_q of a base field F_d, q = d^z, with embedding.

    embed: ring homomorphism F_d -> F_q sending the base generator to
    embed_image (the coefficient-lex smallest root of the base modulus in the
    big field).  expand: the inverse coordinate map F_q -> F_d^z with respect
    to the polynomial basis {1, x, ..., x^(z-1)} of F_q over the embedded
    base, where x is the big field's canonical generator.  expand(embed(a))
    is (a, 0, ..., 0).
    """

    __slots__ = ("base", "z", "big", "embed_image", "_embed_pows", "_expand_inv")

    def __init__(self, base: Field, z: int):
        if z < 1:
            raise FieldError(f"z = {z} must be >= 1")
        self.base = base
        self.z = z
        self.big = field_construct(base.p, base.r * z)
        self.embed_image = self._find_root()
        self._embed_pows = [1]
        for _ in range(base.r - 1):
            self._embed_pows.append(self.big.mul(self._embed_pows[-1], self.embed_image))
        self._expand_inv = self._basis_inverse()

    def _find_root(self) -> int:
        mod = self.base.modulus
        big = self.big
        # lift base-prime coefficients into the big field (prime subfield is shared)
        for cand in big.elements_lex():
            if big.eval_poly(mod, cand) == 0:
                return cand
        raise FieldError("base modulus has no root in extension")  # pragma: no cover

    def _basis_inverse(self):
        p = self.base.p
        big = self.big
        n = big.r  # = base.r * z
        x = p if big.r > 1 else None
        # columns: embed(base elem x_b^i) * x^j, i in [r], j in [z]
        cols = []
        xj = 1
        for _ in range(self.z):
            for i in range(self.base.r):
                cols.append(big.mul(self._embed_pows[i], xj))
            if big.r > 1:
                xj = big.mul(xj, x)
        mat = [[0] * n for _ in range(n)]
        for jcol, v in enumerate(cols):
            cv = big.coeffs(v)
            for irow in range(n):
                mat[irow][jcol] = cv[irow]
        inv = _solve_mod_p(mat, p)
        if inv is None:  # pragma: no cover - polynomial basis is always a basis
            raise FieldError("expansion basis is singular")
        return inv

    def __repr__(self):
        return f"Extension({self.base!r}, z={self.z})"

    def __eq__(self, other):
        return (
            isinstance(other, Extension)
            and self.base == other.base
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.base, self.z))

    def embed(self, a: int) -> int:
        self.base.check(a)
        out = 0
        big = self.big
        for c, pw in zip(self.base.coeffs(a), self._embed_pows):
            if c:
                # c is a prime-field scalar; scalar action = repeated addition,
                # but c < p so multiply in the big field (prime subfield is {0..p-1})
                out = big.add(out, big.mul(c, pw))
        return out

    def expand(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in F_d^z (base-field elements), additive and F_d-linear."""
        self.big.check(a)
        cv = self.big.coeffs(a)
        p = self.base.p
        coords = []
        for row in self._expand_inv:
            coords.append(sum(ri * ci for ri, ci in zip(row, cv)) % p)
        # group into z base-field elements of r prime coefficients each
        r = self.base.r
        return tuple(
            self.base.element(coords[j * r : (j + 1) * r]) for j in range(self.z)
        )

    def compress(self, vec: Sequence[int]) -> int:
        """Inverse of expand: z base-field elements -> one big-field element."""
        if len(vec) != self.z:
            raise FieldError("wrong coordinate count")
        big = self.big
        x = self.base.p
        out = 0
        xj = 1
        for j, v in enumerate(vec):
            out = big.add(out, big.mul(self.embed(v), xj))
            if big.r > 1 and j + 1 < self.z:
                xj = big.mul(xj, x)
        return out


@lru_cache(maxsize=None)
def extend_field(base: Field, z: int) -> Extension:
    return Extension(base, z)
