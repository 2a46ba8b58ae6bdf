"""N-sum-box transfer matrices.

An N-sum box is a classical channel y = M x with M an N x 2N matrix over
F_q that is strongly self-orthogonal: rank(M) = N and M J M^T = 0 where J is
the symplectic form [[0, -I], [I, 0]].  The boxes built here are also
half-MDS — every subset of n paired (left, right) columns spans
min(2n, N) dimensions — via a CSS-style assembly of a Generalized
Reed-Solomon generator with the generator of its dual code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field, FieldError
from .matrix import Mat, MatrixError, block_diag, hstack

HALF_MDS_EXHAUSTIVE_MAX = 12


class BoxError(ValueError):
    pass


@dataclass(frozen=True)
class GrsSpec:
    q: int
    n: int
    k: int
    alpha: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.k <= self.n <= self.q:
            raise BoxError(f"need k <= n <= q, got k={self.k} n={self.n} q={self.q}")
        if len(self.alpha) != self.n or len(set(self.alpha)) != self.n:
            raise BoxError("evaluation points must be n distinct elements")
        if len(self.u) != self.n or any(v == 0 for v in self.u):
            raise BoxError("column multipliers must be n nonzero elements")


def grs_matrix(field: Field, g: GrsSpec) -> Mat:
    """k x n generator with entry (i, j) = u_j * alpha_j^(i-1)."""
    if field.order != g.q:
        raise BoxError("field order mismatch")
    rows = []
    powers = list(g.u)
    for _ in range(g.k):
        rows.append(list(powers))
        powers = [field.mul(p, a) for p, a in zip(powers, g.alpha)]
    out = Mat(field, rows, cols=g.n)
    return out


def grs_dual_multipliers(field: Field, alpha, u) -> tuple[int, ...]:
    """Multipliers v making the dual of GRS(alpha, u) again GRS(alpha, v).

    v_i = ( u_i * prod_{j != i} (alpha_i - alpha_j) )^(-1); all nonzero, and
    GRS_{k,n}(alpha, u) . GRS_{n-k,n}(alpha, v)^T = 0 for every k.
    """
    n = len(alpha)
    GrsSpec(field.order, n, 0, tuple(alpha), tuple(u))  # validates inputs
    v = []
    for i in range(n):
        prod = u[i]
        for j in range(n):
            if j != i:
                prod = field.mul(prod, field.sub(alpha[i], alpha[j]))
        v.append(field.inv(prod))
    return tuple(v)


def symplectic_form(field: Field, N: int) -> Mat:
    """J = [[0, -I_N], [I_N, 0]], shape 2N x 2N."""
    J = Mat.zeros(field, 2 * N, 2 * N)
    for i in range(N):
        J.data[i][N + i] = field.neg(1)
        J.data[N + i][i] = 1
    return J


@dataclass(frozen=True)
class NSumBox:
    N: int
    field: Field
    M: Mat

    def __post_init__(self):
        if self.M.rows != self.N or self.M.cols != 2 * self.N:
            raise BoxError(f"transfer matrix must be {self.N} x {2*self.N}")
        if self.M.field != self.field:
            raise BoxError("field mismatch")

    @property
    def left(self) -> Mat:
        return self.M.select_columns(range(1, self.N + 1))

    @property
    def right(self) -> Mat:
        return self.M.select_columns(range(self.N + 1, 2 * self.N + 1))

    def to_text(self) -> str:
        return f"box {self.N} {self.field.order}\n" + self.M.to_text()

    @classmethod
    def from_text(cls, text: str) -> "NSumBox":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("box "):
            raise BoxError("missing box header")
        _, n_str, q_str = lines[0].split()
        M = Mat.from_text("\n".join(lines[1:]))
        box = cls(int(n_str), M.field, M)
        if M.field.order != int(q_str):
            raise BoxError("field order mismatch in box header")
        return box


def is_valid_box(M: Mat) -> bool:
    """Strong self-orthogonality: rank N and M J M^T = 0."""
    if M.cols != 2 * M.rows:
        raise BoxError(f"expected N x 2N matrix, got {M.rows} x {M.cols}")
    N = M.rows
    if M.rank() != N:
        return False
    J = symplectic_form(M.field, N)
    return (M * J * M.transpose()).is_zero()


def is_half_mds(M: Mat, *, sample_rng=None) -> tuple[bool, tuple[int, ...] | None]:
    """Check every paired-column subset spans min(2n, N) dimensions.

    Exhaustive over all 2^N - 1 subsets for N <= HALF_MDS_EXHAUSTIVE_MAX;
    larger boxes are refused unless a sampling RNG is supplied, in which case
    2^HALF_MDS_EXHAUSTIVE_MAX random subsets are tried.  Returns (ok,
    witness): witness is the first failing subset (1-based row indices) in
    colexicographic order, or None.
    """
    if M.cols != 2 * M.rows:
        raise BoxError(f"expected N x 2N matrix, got {M.rows} x {M.cols}")
    N = M.rows
    if N > HALF_MDS_EXHAUSTIVE_MAX and sample_rng is None:
        raise BoxError(
            f"N = {N} exceeds the exhaustive bound {HALF_MDS_EXHAUSTIVE_MAX}; "
            "pass sample_rng for sampling mode")
    if N <= HALF_MDS_EXHAUSTIVE_MAX:
        masks = range(1, 1 << N)  # ascending bitmask = colex subset order
    else:
        masks = (sample_rng.randrange(1, 1 << N) for _ in range(1 << HALF_MDS_EXHAUSTIVE_MAX))
    for mask in masks:
        idx = [i + 1 for i in range(N) if mask >> i & 1]
        cols = idx + [N + i for i in idx]
        n = len(idx)
        if M.select_columns(cols).rank() != min(2 * n, N):
            return False, tuple(idx)
    return True, None


def build_half_mds_box(N: int, field: Field) -> NSumBox:
    """CSS-style box: top block a GRS generator, bottom block its dual's.

    M = [[GRS_{ceil(N/2)}(alpha, u), 0], [0, GRS_{floor(N/2)}(alpha, v)]]
    with alpha = the first N field elements in coefficient order, u = all
    ones, v the dual multipliers.  Requires q >= N.
    """
    if N < 1:
        raise BoxError("N must be >= 1")
    if field.order < N:
        raise BoxError(f"field order {field.order} < N = {N}")
    alpha = tuple(field.elements_lex()[:N])
    u = (1,) * N
    v = grs_dual_multipliers(field, alpha, u)
    k_top = (N + 1) // 2
    k_bot = N // 2
    top = grs_matrix(field, GrsSpec(field.order, N, k_top, alpha, u))
    bot = grs_matrix(field, GrsSpec(field.order, N, k_bot, alpha, v))
    M = block_diag(field, [top, bot])
    return NSumBox(N, field, M)


def box_eval(box: NSumBox, x: Mat) -> Mat:
    """y = M x for a 2N-high input column."""
    if x.rows != 2 * box.N:
        raise MatrixError(f"input height {x.rows} != 2N = {2*box.N}")
    return box.M * x
