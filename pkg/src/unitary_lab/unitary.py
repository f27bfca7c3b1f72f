"""Orders and element sets of the unitary subgroups of FG.

Three routes to |V(FG)| under an involution arising from G:

* odd characteristic: the closed formula |F|^((|G|-|G_sigma|)/2), with the
  Cayley transform realizing the bijection behind it;
* characteristic two: the recursion |V(FG)| = |F|^(|G|/2) * |V(F[G/H])| / |S_H|
  over H generated by a central involution, with exact division enforced;
* any characteristic: the exhaustive oracle over all normalized units, which
  certifies its output is a subgroup.

Theta is the exact quotient |V(FG)| / |F|^((|G|+|G{2}|)/2 - 1) in
characteristic two; the bound constructions N1, N2 bracket |S_H|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import DEFAULT_BATCH, AlgebraContext, keys_contain
from .errors import (
    EvenCharacteristic,
    InternalInconsistency,
    NoCentralInvolution,
    NotInvertible,
    NotNormalized,
    NotPGroupOverField,
    OddCharacteristic,
    SearchSpaceTooLarge,
    TcNotCommutative,
    Ambiguous,
)
from .finite_field import FieldSpec, tau_image
from .group_algebra import (
    AlgebraElement,
    GroupInvolution,
    algebra_one,
    apply_involution,
    basis_element,
    canonical_star,
    ideal_and_quotient,
)
from .group_core import Group

DEFAULT_SEARCH_CAP = 1 << 24
DEFAULT_BASE_ORDER_CAP = 8
DEFAULT_MAX_WITNESSES = 64


def _require_power_of(n: int, p: int, what: str):
    m = n
    while m % p == 0:
        m //= p
    if m != 1:
        raise NotPGroupOverField(f"{what}: |G|={n} is not a power of {p}")


def theta_exponent(group: Group) -> int:
    """(|G| + |G{2}|)/2 - 1; integral because G{2} includes the identity."""
    g2 = len(group.special_sets().order_two)
    if (group.n + g2) % 2:
        raise InternalInconsistency(f"|G|+|G{{2}}| odd for {group.id}")
    return (group.n + g2) // 2 - 1


def theta_from_order(order: int, field: FieldSpec, group: Group) -> Fraction:
    return Fraction(order, field.order ** theta_exponent(group))


@dataclass(frozen=True)
class UnitaryResult:
    """One computed unitary subgroup: its order, theta, and provenance."""

    group_id: str
    field: FieldSpec
    involution: str
    method: str
    order: int
    theta: Fraction
    elements: tuple[AlgebraElement, ...] | None = None
    subsidiary: dict | None = None

    def to_dict(self) -> dict:
        from .group_algebra import format_algebra_literal

        out = {
            "group": self.group_id,
            "field": self.field.literal(),
            "involution": self.involution,
            "method": self.method,
            "order": str(self.order),
            "theta": str(self.theta),
        }
        if self.subsidiary is not None:
            out["subsidiary"] = {
                k: (v if isinstance(v, bool) or v is None else
                    str(v) if isinstance(v, (int, Fraction)) else v)
                for k, v in sorted(self.subsidiary.items())
            }
        if self.elements is not None:
            out["witnesses"] = [format_algebra_literal(x) for x in self.elements]
        return out


@dataclass(eq=False)
class UnitarySet:
    """Full element set of a unitary subgroup as sorted packed keys."""

    ctx: AlgebraContext
    inv: GroupInvolution
    keys: np.ndarray

    @property
    def order(self) -> int:
        return int(self.keys.size)

    def elements(self, limit: int | None = None) -> list[AlgebraElement]:
        take = self.keys if limit is None else self.keys[:limit]
        rows = self.ctx.unpack(take)
        return [self.ctx.element_of(rows[i]) for i in range(rows.shape[0])]

    def contains(self, x: AlgebraElement) -> bool:
        key = self.ctx.pack(self.ctx.codes_of(x)[None, :])
        return bool(keys_contain(self.keys, key)[0])


_SET_CACHE: dict[tuple, UnitarySet] = {}


def clear_caches():
    _SET_CACHE.clear()


# --- pointwise operations ------------------------------------------------------

def is_unitary(x: AlgebraElement, inv: GroupInvolution) -> bool:
    """True iff x * x^inv = 1; requires augmentation 1."""
    if not x.is_normalized_unit():
        raise NotNormalized("element has augmentation != 1")
    return x * apply_involution(x, inv) == algebra_one(x.field, x.group)


def cayley(x: AlgebraElement) -> AlgebraElement:
    """(1-x)(1+x)^-1; swaps skew-symmetric elements and unitary units."""
    one = algebra_one(x.field, x.group)
    denom = one + x
    if denom.augmentation().is_zero():
        raise NotInvertible("1+x has augmentation zero")
    return (one - x) * denom.invert()


# --- odd characteristic ---------------------------------------------------------

def unitary_order_odd(group: Group, inv: GroupInvolution, field: FieldSpec) -> int:
    """|F|^((|G| - |G_sigma|)/2), exact."""
    if field.p == 2:
        raise EvenCharacteristic("odd-characteristic formula requested over characteristic 2")
    _require_power_of(group.n, field.p, "odd-order formula")
    fixed = len(inv.fixed_points())
    if (group.n - fixed) % 2:
        raise InternalInconsistency("|G| - |G_sigma| must be even")
    return field.order ** ((group.n - fixed) // 2)


# --- oracle ----------------------------------------------------------------------

def _subgroup_certificate(ctx: AlgebraContext, uset_keys: np.ndarray, sigma: np.ndarray,
                          full_space: int, batch: int = DEFAULT_BATCH):
    """Prove the key set is a subgroup of V(FG).

    Identity membership and closure under the involution (= inversion for
    unitary elements) are checked on every element. Multiplicative closure is
    certified by showing the set equals the subgroup generated by greedily
    chosen members, with every BFS product checked for membership. When the
    set is all of V(FG), closure is the multiplicativity of the augmentation
    map, which is property-tested separately; the walk is skipped."""
    S = uset_keys
    if not keys_contain(S, np.array([ctx.identity_key], dtype=np.uint64))[0]:
        raise InternalInconsistency("unitary set misses the identity")
    for start in range(0, S.size, batch):
        rows = ctx.unpack(S[start:start + batch])
        starred = ctx.pack(ctx.involute(rows, sigma))
        if not keys_contain(S, starred).all():
            raise InternalInconsistency("unitary set is not closed under the involution")
    if S.size == full_space:
        return
    known = np.zeros(S.size, dtype=bool)
    id_pos = int(np.searchsorted(S, np.uint64(ctx.identity_key)))
    known[id_pos] = True
    gens: list[np.ndarray] = []
    while known.sum() < S.size:
        gpos = int(np.flatnonzero(~known)[0])
        gens.append(ctx.unpack(S[gpos:gpos + 1])[0])
        frontier = ctx.unpack(S[np.flatnonzero(known)])
        while frontier.shape[0]:
            fresh_positions = []
            for chunk_start in range(0, frontier.shape[0], batch):
                chunk = frontier[chunk_start:chunk_start + batch]
                for g in gens:
                    prods = ctx.pack(ctx.mul(chunk, g[None, :]))
                    pos = np.searchsorted(S, prods)
                    clipped = np.minimum(pos, S.size - 1)
                    if not ((pos < S.size) & (S[clipped] == prods)).all():
                        raise InternalInconsistency(
                            "product of two claimed unitary elements escapes the set")
                    new = np.unique(clipped[~known[clipped]])
                    if new.size:
                        known[new] = True
                        fresh_positions.append(new)
            if fresh_positions:
                frontier = ctx.unpack(S[np.concatenate(fresh_positions)])
            else:
                frontier = np.empty((0, ctx.n), dtype=np.uint16)


def _oracle_set(group: Group, inv: GroupInvolution, field: FieldSpec,
                search_cap: int = DEFAULT_SEARCH_CAP) -> UnitarySet:
    _require_power_of(group.n, field.p, "oracle")
    space = field.order ** (group.n - 1)
    if space > search_cap:
        raise SearchSpaceTooLarge(space, search_cap, context=f"oracle over {group.id}")
    cache_key = (group.key, field, inv.sigma, "oracle")
    hit = _SET_CACHE.get(cache_key)
    if hit is not None:
        return hit
    ctx = AlgebraContext(field, group)
    sigma = np.array(inv.sigma, dtype=np.intp)
    parts = []
    for X in ctx.normalized_batches():
        Y = ctx.mul(X, ctx.involute(X, sigma))
        mask = ctx.is_one(Y)
        if mask.any():
            parts.append(ctx.pack(X[mask]))
    keys = np.sort(np.concatenate(parts)) if parts else np.empty(0, dtype=np.uint64)
    keys.setflags(write=False)
    _subgroup_certificate(ctx, keys, sigma, full_space=space)
    uset = UnitarySet(ctx, inv, keys)
    _SET_CACHE[cache_key] = uset
    return uset


def unitary_enumerate_oracle(group: Group, inv: GroupInvolution, field: FieldSpec, *,
                             search_cap: int = DEFAULT_SEARCH_CAP,
                             max_witnesses: int | None = DEFAULT_MAX_WITNESSES) -> UnitaryResult:
    """Filter every normalized unit by x * x^inv = 1 and certify the result."""
    uset = _oracle_set(group, inv, field, search_cap)
    order = uset.order
    if order > field.order ** (group.n - 1):
        raise InternalInconsistency("unitary order exceeds the normalized unit count")
    witnesses = tuple(uset.elements(max_witnesses))
    subsidiary = {
        "search_space": field.order ** (group.n - 1),
        "witnesses_truncated": max_witnesses is not None and order > max_witnesses,
    }
    return UnitaryResult(group.id, field, inv.name, "oracle", order,
                         theta_from_order(order, field, group), witnesses, subsidiary)


# --- characteristic two: S_H and the recursion -----------------------------------

def _least_central_involution(group: Group) -> int:
    centrals = group.special_sets().central_order_two
    if not centrals:
        raise NoCentralInvolution(f"{group.id} has no central element of order two")
    return centrals[0]


def _fiber_scan(group: Group, c: int, field: FieldSpec, *,
                search_cap: int, base_order_cap: int,
                collect_unitary: bool) -> tuple[np.ndarray | None, np.ndarray, dict]:
    """Traverse N*_Psi fiber by fiber (u in V(F[G/H]), w in ker Psi).

    Returns (unitary keys or None, distinct S_H keys, context info). Every
    collected y = x x* is verified symmetric, supported away from order-two
    elements, and inside I(H)^+."""
    t_c = group.square_roots(c)  # also validates c
    sub = group.subgroup_generated([c])
    ideal, psi, lift = ideal_and_quotient(group, sub, field)
    gbar = ideal.quotient_group
    vbar = _char2_set(gbar, field, search_cap=search_cap, base_order_cap=base_order_cap)
    ctx = AlgebraContext(field, group)
    kernel_dim = ideal.dimension
    fibers = vbar.order * field.order ** kernel_dim
    if fibers > search_cap:
        raise SearchSpaceTooLarge(fibers, search_cap, context=f"fiber scan over {group.id}")

    basis_rows = np.stack([ctx.codes_of(b) for b in ideal.kernel_basis])
    kernel_rows = np.concatenate(list(ctx.span_batches(basis_rows)), axis=0)
    reps = np.array(ideal.representatives, dtype=np.intp)
    sigma = np.array(canonical_star(group).sigma, dtype=np.intp)

    vbar_chunk = max(1, DEFAULT_BATCH // max(1, kernel_rows.shape[0]))
    unitary_parts: list[np.ndarray] = []
    s_h_parts: list[np.ndarray] = []
    for start in range(0, vbar.order, vbar_chunk):
        ubar = vbar.ctx.unpack(vbar.keys[start:start + vbar_chunk])
        lifted = np.zeros((ubar.shape[0], group.n), dtype=np.uint16)
        lifted[:, reps] = ubar
        X = ctx.add(lifted[:, None, :], kernel_rows[None, :, :]).reshape(-1, group.n)
        Y = ctx.mul(X, ctx.involute(X, sigma))
        if collect_unitary:
            mask = ctx.is_one(Y)
            if mask.any():
                unitary_parts.append(ctx.pack(X[mask]))
        s_h_parts.append(np.unique(ctx.pack(Y)))
    s_h_keys = np.unique(np.concatenate(s_h_parts))

    # S_H membership properties
    ys = ctx.unpack(s_h_keys)
    if not np.array_equal(ctx.involute(ys, sigma), ys):
        raise InternalInconsistency("an element of S_H is not symmetric")
    order_two = [g for g in group.special_sets().order_two if g != 0]
    if order_two and ys[:, order_two].any():
        raise InternalInconsistency("an element of S_H is supported on an order-two element")
    proj = np.array(ideal.projection, dtype=np.intp)
    pushed = np.zeros((ys.shape[0], gbar.n), dtype=np.uint16)
    for g in range(group.n):
        pushed[:, proj[g]] = ctx.add(pushed[:, proj[g]], ys[:, g])
    bar_identity = np.zeros(gbar.n, dtype=np.uint16)
    bar_identity[0] = ctx.tabs.one
    if not (pushed == bar_identity[None, :]).all():
        raise InternalInconsistency("an element of S_H falls outside I(H)^+")

    unitary_keys = None
    if collect_unitary:
        unitary_keys = (np.sort(np.concatenate(unitary_parts))
                        if unitary_parts else np.empty(0, dtype=np.uint64))
    info = {
        "c": c,
        "t_c_size": len(t_c),
        "t_c_commuting": group.is_pairwise_commuting(t_c),
        "vbar_order": vbar.order,
        "kernel_dim": kernel_dim,
        "quotient": gbar,
        "ctx": ctx,
    }
    return unitary_keys, s_h_keys, info


def _char2_set(group: Group, field: FieldSpec, *, search_cap: int,
               base_order_cap: int) -> UnitarySet:
    """Full element set of V_*(FG) in characteristic two.

    Base case by oracle; above the base cap, fiber filtering over the
    recursion's quotient, with the division identity asserted en route."""
    star = canonical_star(group)
    if group.n <= base_order_cap:
        return _oracle_set(group, star, field, search_cap)
    cache_key = (group.key, field, star.sigma, "char2")
    hit = _SET_CACHE.get(cache_key)
    if hit is not None:
        return hit
    c = _least_central_involution(group)
    unitary_keys, s_h_keys, info = _fiber_scan(
        group, c, field, search_cap=search_cap, base_order_cap=base_order_cap,
        collect_unitary=True)
    numerator = field.order ** (group.n // 2) * info["vbar_order"]
    if numerator % s_h_keys.size or numerator // s_h_keys.size != unitary_keys.size:
        raise InternalInconsistency(
            f"recursion identity failed over {group.id}: "
            f"{numerator}/{s_h_keys.size} != {unitary_keys.size}")
    unitary_keys.setflags(write=False)
    ctx = info["ctx"]
    _subgroup_certificate(ctx, unitary_keys, np.array(star.sigma, dtype=np.intp),
                          full_space=field.order ** (group.n - 1))
    uset = UnitarySet(ctx, star, unitary_keys)
    _SET_CACHE[cache_key] = uset
    return uset


def s_h_enumerate(group: Group, c: int, field: FieldSpec, *,
                  search_cap: int = DEFAULT_SEARCH_CAP,
                  base_order_cap: int = DEFAULT_BASE_ORDER_CAP,
                  max_samples: int = DEFAULT_MAX_WITNESSES) -> tuple[int, list[AlgebraElement]]:
    """|S_H| for H = <c>, plus sample elements of S_H."""
    if field.p != 2:
        raise OddCharacteristic("S_H enumeration requires characteristic 2")
    _require_power_of(group.n, 2, "S_H enumeration")
    _, s_h_keys, info = _fiber_scan(group, c, field, search_cap=search_cap,
                                    base_order_cap=base_order_cap, collect_unitary=False)
    ctx = info["ctx"]
    rows = ctx.unpack(s_h_keys[:max_samples])
    samples = [ctx.element_of(rows[i]) for i in range(rows.shape[0])]
    return int(s_h_keys.size), samples


def _s_h_bounds(group: Group, c: int, field: FieldSpec) -> tuple[int, Fraction | None]:
    """Upper bound always; lower bound only when T_c commutes."""
    g2 = len(group.special_sets().order_two)
    t = len(group.square_roots(c))
    num = group.n - g2 + t
    if num % 4:
        raise InternalInconsistency("bound exponent is not an integer")
    upper = field.order ** (num // 4)
    lower = None
    if group.is_pairwise_commuting(group.square_roots(c)):
        lower = Fraction(upper, 2 ** (t // 2))
    return upper, lower


def unitary_order_char2(group: Group, field: FieldSpec, *, c: int | None = None,
                        search_cap: int = DEFAULT_SEARCH_CAP,
                        base_order_cap: int = DEFAULT_BASE_ORDER_CAP) -> UnitaryResult:
    """|V_*(FG)| by the quotient recursion (oracle below the base cap).

    With an explicit c the recursion step is forced even below the base cap,
    which is how choice-independence is exercised."""
    if field.p != 2:
        raise OddCharacteristic("characteristic-two recursion over an odd field")
    _require_power_of(group.n, 2, "characteristic-two recursion")
    if c is None and group.n <= base_order_cap:
        uset = _oracle_set(group, canonical_star(group), field, search_cap)
        order = uset.order
        return UnitaryResult(group.id, field, "*", "recursive", order,
                             theta_from_order(order, field, group),
                             subsidiary={"base": "oracle"})
    if c is None:
        c = _least_central_involution(group)
    _, s_h_keys, info = _fiber_scan(group, c, field, search_cap=search_cap,
                                    base_order_cap=base_order_cap, collect_unitary=False)
    s_h = int(s_h_keys.size)
    numerator = field.order ** (group.n // 2) * info["vbar_order"]
    if numerator % s_h:
        raise InternalInconsistency(
            f"recursion division is not exact over {group.id}: {numerator} / {s_h}")
    order = numerator // s_h
    upper, lower = _s_h_bounds(group, c, field)
    subsidiary = {
        "c": c,
        "t_c_size": info["t_c_size"],
        "t_c_commuting": info["t_c_commuting"],
        "s_h_size": s_h,
        "vbar_order": info["vbar_order"],
        "s_h_upper_bound": upper,
        "s_h_lower_bound": lower,
    }
    return UnitaryResult(group.id, field, "*", "recursive", order,
                         theta_from_order(order, field, group), subsidiary=subsidiary)


def theta(group: Group, field: FieldSpec, *,
          search_cap: int = DEFAULT_SEARCH_CAP,
          base_order_cap: int = DEFAULT_BASE_ORDER_CAP) -> Fraction:
    """|V_*(FG)| / |F|^((|G|+|G{2}|)/2 - 1), asserted integral."""
    if field.p != 2:
        raise OddCharacteristic("theta is defined over characteristic-two fields")
    result = unitary_order_char2(group, field, search_cap=search_cap,
                                 base_order_cap=base_order_cap)
    value = result.theta
    if value.denominator != 1:
        raise InternalInconsistency(f"non-integer theta {value} for {group.id} over {field}")
    return value


# --- N1 / N2 constructions ---------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    """Measured |S_H| against the proved bracket, with the witness subgroups."""

    group_id: str
    field: FieldSpec
    c: int
    t_c_size: int
    t_c_commuting: bool
    s_h_size: int
    upper_bound: int
    lower_bound: Fraction | None
    n1_size: int
    n2_size: int | None
    n1_inside_s_h: bool
    n2_inside_s_h: bool | None
    product_inside_s_h: bool | None
    generator_identity_ok: bool | None


def _orbit_representatives(group: Group, c: int) -> list[int]:
    """One representative per {g, g^-1, gc, (gc)^-1} orbit over g with g^2 not in <c>."""
    h_members = {0, c}
    seen = set()
    reps = []
    for g in group.elements():
        if g in seen or group.mul(g, g) in h_members:
            continue
        orbit = {g, group.inverse(g), group.mul(g, c), group.mul(group.inverse(g), c)}
        if len(orbit) != 4:
            raise InternalInconsistency("orbit of size != 4 outside G{2} and T_c")
        seen |= orbit
        reps.append(min(orbit))
    return reps


def bounds_and_constructions(group: Group, c: int, field: FieldSpec, *,
                             search_cap: int = DEFAULT_SEARCH_CAP,
                             base_order_cap: int = DEFAULT_BASE_ORDER_CAP) -> BoundsReport:
    """Build N1 (and N2 when T_c commutes), verify sizes and containment in S_H.

    N1 is spanned over F by (g + g^-1)(1+c) across the order-4 orbits; N2 by
    g(1+c) over T_c pairs with coefficients from im(tau). When T_c does not
    commute, N2 and the lower bound are reported as skipped, not raised."""
    if field.p != 2:
        raise OddCharacteristic("bound constructions require characteristic 2")
    t_c = group.square_roots(c)
    commuting = group.is_pairwise_commuting(t_c)
    _, s_h_keys, info = _fiber_scan(group, c, field, search_cap=search_cap,
                                    base_order_cap=base_order_cap, collect_unitary=False)
    ctx = info["ctx"]
    g2 = len(group.special_sets().order_two)
    upper, lower = _s_h_bounds(group, c, field)

    # N1: full field span over the orbit vectors, shifted by 1
    orbit_reps = _orbit_representatives(group, c)
    expected_k1 = (group.n - g2 - len(t_c)) // 4
    if len(orbit_reps) != expected_k1:
        raise InternalInconsistency("orbit count disagrees with (|G|-|G{2}|-|T_c|)/4")
    n1_keys = _span_plus_one_keys(ctx, group, [_orbit_vector(ctx, group, g, c) for g in orbit_reps])
    n1_size = int(n1_keys.size)
    if n1_size != field.order ** expected_k1:
        raise InternalInconsistency("|N1| disagrees with |F|^((|G|-|G{2}|-|T_c|)/4)")
    n1_inside = bool(keys_contain(s_h_keys, n1_keys).all())

    n2_size = None
    n2_inside = None
    product_inside = None
    identity_ok = None
    if commuting:
        pair_reps = sorted({min(g, group.inverse(g)) for g in t_c})
        im_codes = np.array(sorted(a.code for a in tau_image(field)), dtype=np.uint16)
        n2_vectors = [_pair_vector(ctx, group, g, c) for g in pair_reps]
        n2_keys = _span_plus_one_keys(ctx, group, n2_vectors, coefficient_codes=im_codes)
        n2_size = int(n2_keys.size)
        expected_n2 = (field.order // 2) ** (len(t_c) // 2)
        if n2_size != expected_n2:
            raise InternalInconsistency("|N2| disagrees with (|F|/2)^(|T_c|/2)")
        n2_inside = bool(keys_contain(s_h_keys, n2_keys).all())
        combined = [_orbit_vector(ctx, group, g, c) for g in orbit_reps]
        prod_keys = _pair_span_keys(ctx, group, combined, n2_vectors, im_codes)
        if prod_keys.size != n1_size * n2_size:
            raise InternalInconsistency("|N1 x N2| is not the size product")
        product_inside = bool(keys_contain(s_h_keys, prod_keys).all())
        identity_ok = _check_generator_identity(group, field, c, pair_reps)

    return BoundsReport(group.id, field, c, len(t_c), commuting, int(s_h_keys.size),
                        upper, lower, n1_size, n2_size, n1_inside, n2_inside,
                        product_inside, identity_ok)


def _orbit_vector(ctx: AlgebraContext, group: Group, g: int, c: int) -> np.ndarray:
    """(g + g^-1)(1 + c) as a code row."""
    row = np.zeros(group.n, dtype=np.uint16)
    one = ctx.tabs.one
    for idx in (g, group.inverse(g), group.mul(g, c), group.mul(group.inverse(g), c)):
        row[idx] = ctx.tabs.add[row[idx], one]
    return row


def _pair_vector(ctx: AlgebraContext, group: Group, g: int, c: int) -> np.ndarray:
    """g(1 + c) as a code row, for g a square root of c."""
    row = np.zeros(group.n, dtype=np.uint16)
    one = ctx.tabs.one
    for idx in (g, group.mul(g, c)):
        row[idx] = ctx.tabs.add[row[idx], one]
    return row


def _span_plus_one_keys(ctx: AlgebraContext, group: Group, vectors: list[np.ndarray],
                        coefficient_codes: np.ndarray | None = None) -> np.ndarray:
    basis = (np.stack(vectors) if vectors
             else np.empty((0, group.n), dtype=np.uint16))
    parts = []
    for X in ctx.span_batches(basis, coefficient_codes=coefficient_codes):
        shifted = X.copy()
        shifted[:, 0] = ctx.tabs.add[shifted[:, 0], ctx.tabs.one]
        parts.append(ctx.pack(shifted))
    return np.unique(np.concatenate(parts))


def _pair_span_keys(ctx: AlgebraContext, group: Group, n1_vectors: list[np.ndarray],
                    n2_vectors: list[np.ndarray], im_codes: np.ndarray) -> np.ndarray:
    """Keys of {x*y : x in N1, y in N2} = 1 + span(N1) + span(N2)."""
    n1_rows = np.concatenate(list(ctx.span_batches(
        np.stack(n1_vectors) if n1_vectors else np.empty((0, group.n), dtype=np.uint16))))
    n2_rows = np.concatenate(list(ctx.span_batches(
        np.stack(n2_vectors) if n2_vectors else np.empty((0, group.n), dtype=np.uint16),
        coefficient_codes=im_codes)))
    combined = ctx.add(n1_rows[:, None, :], n2_rows[None, :, :]).reshape(-1, group.n)
    combined[:, 0] = ctx.tabs.add[combined[:, 0], ctx.tabs.one]
    return np.unique(ctx.pack(combined))


def _check_generator_identity(group: Group, field: FieldSpec, c: int,
                              pair_reps: list[int]) -> bool:
    """(1 + w g + w g^2)(1 + w g + w g^2)* = 1 + (w + w^2) g (1+c) for g^2 = c."""
    star = canonical_star(group)
    one = algebra_one(field, group)
    for g in pair_reps:
        for omega in field.elements():
            x = one + basis_element(field, group, g).scale(omega) \
                    + basis_element(field, group, group.mul(g, g)).scale(omega)
            lhs = x * apply_involution(x, star)
            tau_omega = omega + omega * omega
            ghat = basis_element(field, group, g) + basis_element(field, group, group.mul(g, c))
            rhs = one + ghat.scale(tau_omega)
            if lhs != rhs:
                return False
    return True


def build_n2_subgroup(group: Group, c: int, field: FieldSpec) -> np.ndarray:
    """Keys of N2; refuses when T_c is not commutative."""
    t_c = group.square_roots(c)
    if not group.is_pairwise_commuting(t_c):
        raise TcNotCommutative(f"T_c for c={c} in {group.id} is not pairwise commuting")
    ctx = AlgebraContext(field, group)
    pair_reps = sorted({min(g, group.inverse(g)) for g in t_c})
    im_codes = np.array(sorted(a.code for a in tau_image(field)), dtype=np.uint16)
    vectors = [_pair_vector(ctx, group, g, c) for g in pair_reps]
    return _span_plus_one_keys(ctx, group, vectors, coefficient_codes=im_codes)


# --- order recovery -----------------------------------------------------------------

def recover_group_order(order_v: int, field: FieldSpec, p: int) -> int:
    """|G| from |V_*(FG)|.

    Odd p: |G| = 2 log_|F|(order) + 1. p = 2: the unique 2-power n with
    |F|^(n/2) <= order <= |F|^(n-1); the lower exponent uses theta >= 1 and
    |G{2}| >= 2, which removes the boundary collision between n and 2n."""
    if field.p != p:
        raise ValueError(f"field characteristic {field.p} != p = {p}")
    if order_v < 1:
        raise ValueError("order must be positive")
    q = field.order
    if p != 2:
        k = 0
        v = order_v
        while v % q == 0:
            v //= q
            k += 1
        if v != 1:
            raise ValueError(f"{order_v} is not a power of |F| = {q}")
        return 2 * k + 1
    if order_v == 1:
        return 1
    candidates = []
    n = 2
    while q ** (n // 2) <= order_v:
        if order_v <= q ** (n - 1):
            candidates.append(n)
        n *= 2
    if len(candidates) > 1:
        raise Ambiguous(candidates)
    if not candidates:
        raise Ambiguous([])
    return candidates[0]
