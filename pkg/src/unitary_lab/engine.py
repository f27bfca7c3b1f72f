"""Vectorized batch kernels for enumerating group-algebra elements.

Internal plumbing shared by the brute-force oracle, the S_H enumeration,
and the subgroup certificates. A batch is a (B, |G|) uint16 array of field
codes (little-endian base-p packing of each coefficient vector); a whole
element packs into a uint64 key for set membership work. Field arithmetic
is table-driven, with the tables derived once per field from the scalar
FieldElement implementation (which the tests cross-check independently).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InternalInconsistency, SearchSpaceTooLarge
from .finite_field import FieldSpec
from .group_algebra import AlgebraElement
from .group_core import Group

MAX_TABLE_FIELD_ORDER = 512
DEFAULT_BATCH = 1 << 16


@dataclass(frozen=True, eq=False)
class FieldTables:
    q: int
    add: np.ndarray   # (q, q)
    mul: np.ndarray   # (q, q)
    neg: np.ndarray   # (q,)
    inv: np.ndarray   # (q,), inv[0] = 0 sentinel
    one: int


def _find_generator(spec: FieldSpec) -> list[int]:
    """exp table of a multiplicative generator: exp[k] = code of gen^k."""
    q = spec.order
    for cand_code in range(1, q):
        cand = spec.from_code(cand_code)
        exp = []
        e = spec.one
        ok = True
        seen = set()
        for _ in range(q - 1):
            code = e.code
            if code in seen:
                ok = False
                break
            seen.add(code)
            exp.append(code)
            e = e * cand
        if ok and e == spec.one:
            return exp
    raise InternalInconsistency(f"no multiplicative generator found for {spec}")


@functools.lru_cache(maxsize=None)
def field_tables(spec: FieldSpec) -> FieldTables:
    q, p, m = spec.order, spec.p, spec.m
    if q > MAX_TABLE_FIELD_ORDER:
        raise SearchSpaceTooLarge(q, MAX_TABLE_FIELD_ORDER, context="field table build")
    codes = np.arange(q)
    digits = np.zeros((q, m), dtype=np.int64)
    v = codes.copy()
    for i in range(m):
        digits[:, i] = v % p
        v //= p
    powers = p ** np.arange(m)
    add = (((digits[:, None, :] + digits[None, :, :]) % p) * powers).sum(axis=2)
    neg = (((-digits) % p) * powers).sum(axis=1)

    exp = _find_generator(spec)
    log = np.zeros(q, dtype=np.int64)
    for k, code in enumerate(exp):
        log[code] = k
    expv = np.array(exp, dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    if q > 1:
        ks = (log[1:, None] + log[None, 1:]) % (q - 1)
        mul[1:, 1:] = expv[ks]
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = expv[(-log[1:]) % (q - 1)]

    u16 = np.uint16
    tabs = FieldTables(q, add.astype(u16), mul.astype(u16), neg.astype(u16),
                       inv.astype(u16), spec.one.code)
    for arr in (tabs.add, tabs.mul, tabs.neg, tabs.inv):
        arr.setflags(write=False)
    return tabs


def keys_contain(sorted_keys: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Membership mask of queries against a sorted uint64 key array."""
    if sorted_keys.size == 0:
        return np.zeros(queries.shape, dtype=bool)
    pos = np.searchsorted(sorted_keys, queries)
    clipped = np.minimum(pos, sorted_keys.size - 1)
    return (pos < sorted_keys.size) & (sorted_keys[clipped] == queries)


class AlgebraContext:
    """Batch arithmetic for one (field, group) pair."""

    def __init__(self, field: FieldSpec, group: Group):
        self.field = field
        self.group = group
        self.tabs = field_tables(field)
        self.n = group.n
        self.q = field.order
        if self.q ** self.n > (1 << 63):
            raise SearchSpaceTooLarge(self.q ** self.n, 1 << 63, context="uint64 key packing")
        self.gtable = np.asarray(group.table, dtype=np.intp)
        self.powers = np.array([self.q ** i for i in range(self.n)], dtype=np.uint64)
        self.identity = np.zeros(self.n, dtype=np.uint16)
        self.identity[0] = self.tabs.one
        self.identity_key = int(self.pack(self.identity[None, :])[0])

    # --- conversions ---------------------------------------------------------

    def codes_of(self, x: AlgebraElement) -> np.ndarray:
        return np.array([c.code for c in x.coeffs], dtype=np.uint16)

    def element_of(self, codes: np.ndarray) -> AlgebraElement:
        coeffs = tuple(self.field.from_code(int(c)) for c in codes)
        return AlgebraElement(self.field, self.group, coeffs)

    def pack(self, X: np.ndarray) -> np.ndarray:
        return (X.astype(np.uint64) * self.powers[None, :]).sum(axis=1)

    def unpack(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.uint64)
        X = np.empty((keys.size, self.n), dtype=np.uint16)
        v = keys.copy()
        q = np.uint64(self.q)
        for i in range(self.n):
            X[:, i] = (v % q).astype(np.uint16)
            v //= q
        return X

    # --- arithmetic ----------------------------------------------------------

    def add(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.tabs.add[X, Y]

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Convolution product of batches; Y may be (1, n) for a fixed factor."""
        add_t, mul_t = self.tabs.add, self.tabs.mul
        B = max(X.shape[0], Y.shape[0])
        out = np.zeros((B, self.n), dtype=np.uint16)
        for i in range(self.n):
            xi = X[:, i]
            if not xi.any():
                continue
            prod = mul_t[xi[:, None], Y]
            dest = self.gtable[i]
            out[:, dest] = add_t[out[:, dest], prod]
        return out

    def involute(self, X: np.ndarray, sigma: np.ndarray) -> np.ndarray:
        return X[:, sigma]

    def augmentation(self, X: np.ndarray) -> np.ndarray:
        s = X[:, 0].copy()
        for i in range(1, self.n):
            s = self.tabs.add[s, X[:, i]]
        return s

    def is_one(self, Y: np.ndarray) -> np.ndarray:
        mask = Y[:, 0] == self.tabs.one
        if self.n > 1:
            mask &= ~Y[:, 1:].any(axis=1)
        return mask

    # --- enumerators ----------------------------------------------------------

    def normalized_batches(self, batch: int = DEFAULT_BATCH) -> Iterator[np.ndarray]:
        """All elements with augmentation 1, exactly once each.

        Coefficients at indices 1..n-1 run over all q^(n-1) combinations;
        the identity coefficient is the dependent one."""
        total = self.q ** (self.n - 1)
        one = self.tabs.one
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            idx = np.arange(start, stop, dtype=np.uint64)
            X = np.empty((idx.size, self.n), dtype=np.uint16)
            v = idx.copy()
            q = np.uint64(self.q)
            for i in range(1, self.n):
                X[:, i] = (v % q).astype(np.uint16)
                v //= q
            if self.n == 1:
                X[:, 0] = one
            else:
                s = X[:, 1].copy()
                for i in range(2, self.n):
                    s = self.tabs.add[s, X[:, i]]
                X[:, 0] = self.tabs.add[one, self.tabs.neg[s]]
            yield X

    def span_batches(self, basis: np.ndarray, batch: int = DEFAULT_BATCH,
                     coefficient_codes: np.ndarray | None = None) -> Iterator[np.ndarray]:
        """All linear combinations of the given (k, n) basis rows.

        coefficient_codes restricts every coefficient to a sublist of field
        codes (used for the im(tau) construction); defaults to the full field."""
        k = basis.shape[0]
        coeffs = coefficient_codes if coefficient_codes is not None else np.arange(self.q, dtype=np.uint16)
        radix = coeffs.size
        total = radix ** k
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            idx = np.arange(start, stop, dtype=np.uint64)
            X = np.zeros((idx.size, self.n), dtype=np.uint16)
            v = idx.copy()
            r = np.uint64(radix)
            for j in range(k):
                dj = coeffs[(v % r).astype(np.intp)]
                v //= r
                scaled = self.tabs.mul[dj[:, None], basis[j][None, :]]
                X = self.tabs.add[X, scaled]
            yield X
