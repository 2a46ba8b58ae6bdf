"""Vectorized finite-field arithmetic on numpy int arrays.

Used for mass simulation (random and exhaustive decode checks), where the
per-element Python arithmetic in `field` would dominate.  Elements keep the
same int encoding; multiplication goes through discrete-log tables, addition
is XOR in characteristic 2 and digit-wise otherwise.
"""

from __future__ import annotations

import numpy as np

from .field import Field, FieldError
from .matrix import Mat

VEC_MAX_ORDER = 1 << 16


class VecOps:
    def __init__(self, field: Field):
        if field.order > VEC_MAX_ORDER:
            raise FieldError(f"field order {field.order} too large for table-based batch ops")
        self.field = field
        self.q = field.order
        self.p = field.p
        self.r = field.r
        field._ensure_tables()
        if field.r > 1 or field.order > 2:
            self._exp = np.array(field._exp, dtype=np.int64) if field.r > 1 else None
            self._log = np.array(field._log, dtype=np.int64) if field.r > 1 else None
        else:
            self._exp = self._log = None
        if self.p != 2 and self.r > 1:
            digits = np.zeros((self.q, self.r), dtype=np.int64)
            a = np.arange(self.q)
            for i in range(self.r):
                digits[:, i] = a % self.p
                a = a // self.p
            self._digits = digits
            self._powers = self.p ** np.arange(self.r)
        else:
            self._digits = self._powers = None

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.r == 1:
            return (a + b) % self.p
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._powers

    def mul_scalar(self, c: int, a: np.ndarray) -> np.ndarray:
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        if self.r == 1:
            return (c * a) % self.p
        out = self._exp[self._log[c] + self._log[np.maximum(a, 1)]]
        return np.where(a == 0, 0, out)

    def matmul(self, m: Mat, X: np.ndarray) -> np.ndarray:
        """m (rows x cols) applied to X of shape (cols, B) -> (rows, B)."""
        if m.field != self.field:
            raise FieldError("field mismatch in batch matmul")
        if X.shape[0] != m.cols:
            raise FieldError(f"batch shape {X.shape} does not match {m.cols} columns")
        B = X.shape[1]
        out = np.zeros((m.rows, B), dtype=np.int64)
        for i, row in enumerate(m.data):
            acc = None
            for j, c in enumerate(row):
                if c:
                    term = self.mul_scalar(c, X[j])
                    acc = term if acc is None else self.add(acc, term)
            if acc is not None:
                out[i] = acc
        return out
