"""Exact windowed tensor-network contraction for successive-cancellation decoding.

The de-encoded error distribution Q(E') = P(U^{-1} E U) is contracted against
knowledge leaves on the input wires. Because every gate is a CNOT, the two
quadratures propagate as independent GF(2) systems: per recursion block the input
bits are affine (XOR) combinations of the bits entering the even/odd sub-blocks.
A known leaf bit is therefore a parity constraint, an unknown bit marginalizes
away, and a decision marginal is the exact contraction of a small connected
component of parity factors and leaf priors around the sweep fronts -- the
"window" of the decoder.

Key mechanics:

- per block and quadrature an incremental GF(2) band elimination absorbs known
  input bits in sweep order; child-boundary bits it determines are pushed down
  eagerly (the partial sums of classical successive cancellation), so the residual
  constraint rows cling to the fronts and a sweep costs O(n log n);
- a query gathers the factor graph of its connected component across all scales
  (parity rows plus the touched leaf priors) and eliminates variables in an order
  chosen to minimize the largest intermediate window; factor components sharing no
  variables with the query cancel in the posterior normalization and are skipped;
- all runtime values carry a leading batch axis so many Monte Carlo trials are
  decoded simultaneously;
- every intermediate distribution reports its window width (distinct physical
  wires) to :class:`ContractionStats`.
"""

from __future__ import annotations

import numpy as np

from tncodes.pauli import LABEL_OF_BITS, InconsistentEvidenceError

QUADS = ("x", "z")

_AFFINE_CACHE: dict[tuple[int, str], dict[str, list[int]]] = {}
_PARITY_CACHE: dict[int, np.ndarray] = {}
_ORDER_CACHE: dict[tuple, tuple] = {}


def _affine_masks(m: int, family: str) -> dict[str, list[int]]:
    """Input-bit = XOR of child-boundary bits, as bitmasks, for one block.

    Conjugating the de-encoded label through the block's own sublayers (tree, and
    for bMERA the disentangler layer above it) expresses each input bit as an XOR
    of the bits entering the even/odd sub-blocks.
    """
    key = (m, family)
    cached = _AFFINE_CACHE.get(key)
    if cached is not None:
        return cached
    xs = [1 << w for w in range(m)]
    zs = [1 << w for w in range(m)]
    # tree sublayer conjugation: x[target] ^= x[control], z[control] ^= z[target]
    for j in range(m // 2):
        xs[2 * j] ^= xs[2 * j + 1]
        zs[2 * j + 1] ^= zs[2 * j]
    # disentangler sublayer sits above the tree layer on the input side
    if family == "bmera" and m >= 4:
        for j in range(m // 2 - 1):
            xs[2 * j + 1] ^= xs[2 * j + 2]
            zs[2 * j + 2] ^= zs[2 * j + 1]
    out = {"x": xs, "z": zs}
    _AFFINE_CACHE[key] = out
    return out


def _parity_base(arity: int) -> np.ndarray:
    """Bit parity of every index of a (2,)*arity tensor, flattened."""
    base = _PARITY_CACHE.get(arity)
    if base is None:
        idx = np.arange(1 << arity)
        base = np.zeros(1 << arity, dtype=np.uint8)
        for k in range(arity):
            base ^= ((idx >> k) & 1).astype(np.uint8)
        _PARITY_CACHE[arity] = base
    return base


def _as_val(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.uint8)
    return a.reshape(1) if a.ndim == 0 else a


class ContractionStats:
    """Tracks the largest window (distinct wires of one distribution) seen."""

    __slots__ = ("max_width",)

    def __init__(self) -> None:
        self.max_width = 0

    def record(self, n_wires: int) -> None:
        if n_wires > self.max_width:
            self.max_width = n_wires


class _Band:
    """Incremental GF(2) elimination of known input bits over child-boundary bits."""

    def __init__(self, node: "BlockNode", quad: str, direction: int) -> None:
        self.node = node
        self.quad = quad
        self.direction = direction
        self.rows: list[tuple[int, np.ndarray]] = []  # (child-bit mask, value)
        self.arrived: dict[int, np.ndarray] = {}
        self.next_in = 0 if direction > 0 else node.m - 1
        self.det: dict[int, np.ndarray] = {}  # unit bitmask -> value
        self.det_mask = 0

    def add_known(self, i: int, val: np.ndarray) -> None:
        self.arrived[i] = val
        while self.next_in in self.arrived:
            v = self.arrived.pop(self.next_in)
            mask = self.node.affine[self.quad][self.next_in]
            mask, v = self.substitute(mask, v)
            self._insert(mask, v)
            self.next_in += self.direction

    def substitute(self, mask: int, val: np.ndarray) -> tuple[int, np.ndarray]:
        hit = mask & self.det_mask
        while hit:
            b = hit & -hit
            val = np.bitwise_xor(val, self.det[b])
            mask ^= b
            hit ^= b
        return mask, val

    def _insert(self, mask: int, val: np.ndarray) -> None:
        rows = self.rows
        changed = True
        while changed:
            changed = False
            for m2, v2 in rows:
                if mask & (m2 & -m2):
                    mask ^= m2
                    val = np.bitwise_xor(val, v2)
                    changed = True
        if mask == 0:
            raise AssertionError("dependent input-bit constraint; input bits are independent")
        piv = mask & -mask
        for k, (m2, v2) in enumerate(rows):
            if m2 & piv:
                rows[k] = (m2 ^ mask, np.bitwise_xor(v2, val))
        rows.append((mask, val))
        # emit any unit rows: those child bits are now determined
        progress = True
        while progress:
            progress = False
            for k, (m2, v2) in enumerate(rows):
                if m2 & (m2 - 1) == 0:
                    del rows[k]
                    self._emit(m2, v2)
                    for k2, (m3, v3) in enumerate(rows):
                        if m3 & m2:
                            rows[k2] = (m3 ^ m2, np.bitwise_xor(v3, v2))
                    progress = True
                    break

    def _emit(self, bit: int, val: np.ndarray) -> None:
        self.det[bit] = val
        self.det_mask |= bit
        mid = bit.bit_length() - 1
        child = self.node.children[mid & 1]
        child.set_known(mid >> 1, self.quad, val)


class BlockNode:
    """One block of the recursive circuit; wires are local indices 0..m-1."""

    def __init__(
        self, wires: tuple[int, ...], family: str, engine: "SweepEngine", depth: int = 0
    ) -> None:
        self.m = len(wires)
        self.wires = wires
        self.family = family
        self.engine = engine
        self.depth = depth
        self._fact_cache: dict[tuple, list] = {}
        self._part_cache: dict[tuple, list[tuple]] = {}
        if self.m == 1:
            self.known: dict[str, np.ndarray] = {}
            self.children = None
        else:
            self.affine = _affine_masks(self.m, family)
            self.children = (
                BlockNode(wires[0::2], family, engine, depth + 1),
                BlockNode(wires[1::2], family, engine, depth + 1),
            )
            self.bands = {"x": _Band(self, "x", +1), "z": _Band(self, "z", -1)}

    def label(self, w: int, quad: str) -> tuple:
        """Globally unique variable label of this block's input bit on local wire w."""
        return (self.depth, self.wires[w], quad)

    # -- state ------------------------------------------------------------

    def set_known(self, i: int, quad: str, val) -> None:
        self._fact_cache.clear()
        self._part_cache.clear()
        val = _as_val(val)
        if self.m == 1:
            self.known[quad] = val
        else:
            self.bands[quad].add_known(i, val)

    def _target_row(self, w: int, quad: str) -> tuple[int, np.ndarray]:
        mask = self.affine[quad][w]
        mask, val = self.bands[quad].substitute(mask, np.zeros(1, dtype=np.uint8))
        if mask == 0:
            raise AssertionError("queried bit is already determined")
        return mask, val

    # -- coupling structure -------------------------------------------------

    def partition(self, bits: tuple[tuple[int, str], ...]) -> list[tuple]:
        """Split requested input bits into groups whose joint message factorizes."""
        hit = self._part_cache.get(bits)
        if hit is not None:
            return hit
        if len(bits) == 1:
            groups = [bits]
        elif self.m == 1:
            if self.engine.prior_is_product(self.wires[0]):
                groups = [(b,) for b in bits]
            else:
                groups = [bits]
        else:
            groups = self._partition_inner(bits)
        self._part_cache[bits] = groups
        return groups

    def _partition_inner(self, bits: tuple[tuple[int, str], ...]) -> list[tuple]:
        seeds = []
        for w, q in bits:
            mask, _ = self._target_row(w, q)
            seeds.append((q, mask, None, (w, q)))
        pend = [(q, mask, val, None) for q in QUADS for mask, val in self.bands[q].rows]
        sel = self._closure(seeds, pend)
        items = [(set(_row_vars(row)), row[3]) for row in sel]
        # coupling through a child's joint message over the bits actually involved
        by_child: dict[int, set] = {0: set(), 1: set()}
        for vars_, _ in items:
            for q, mid in vars_:
                by_child[mid & 1].add((mid >> 1, q))
        for side in (0, 1):
            cb = tuple(sorted(by_child[side]))
            if len(cb) > 1:
                for grp in self.children[side].partition(cb):
                    if len(grp) > 1:
                        items.append(({(q, 2 * j + side) for j, q in grp}, None))
        return _merge_groups(items, bits)

    def _closure(self, sel, pend):
        """Grow the seed rows by every pending row genuinely coupled to them.

        A pending row joins if it shares a child-boundary variable with the
        component, or if a child's joint message couples one of its bits to a bit
        already in the component. The coupling test is minimal -- it never involves
        bits of rows that are not (yet) part of the component -- so independent
        sweep fronts stay in separate components.
        """
        pool = list(pend)
        while True:
            vars_sel = {v for row in sel for v in _row_vars(row)}
            r_side = {
                side: {(mid >> 1, q) for q, mid in vars_sel if mid & 1 == side}
                for side in (0, 1)
            }
            grew = False
            for k in range(len(pool) - 1, -1, -1):
                rv = set(_row_vars(pool[k]))
                joined = bool(rv & vars_sel)
                if not joined:
                    for side in (0, 1):
                        rb = {(mid >> 1, q) for q, mid in rv if mid & 1 == side}
                        base = r_side[side]
                        if not (rb and base):
                            continue
                        groups = self.children[side].partition(tuple(sorted(base | rb)))
                        if any(set(g) & base and set(g) & rb for g in groups):
                            joined = True
                            break
                if joined:
                    sel.append(pool.pop(k))
                    grew = True
            if not grew:
                return sel

    # -- factor gathering -----------------------------------------------------

    def gather_factors(self, targets: tuple[tuple[int, str], ...]) -> list:
        """Factor graph of the component around the requested input bits.

        Returns a list of (axes, array, is_distribution) whose product, marginalized
        over every axis except the targets' labels, is the joint message over the
        targets. Axes are global variable labels (depth, physical wire, quadrature);
        arrays carry a leading batch axis.
        """
        hit = self._fact_cache.get(targets)
        if hit is not None:
            return hit
        out = self._leaf_factors(targets) if self.m == 1 else self._gather_inner(targets)
        self._fact_cache[targets] = out
        return out

    def _leaf_factors(self, targets) -> list:
        arr = self.engine.leaf_prior2(self.wires[0])  # (1, 2, 2) over (x-bit, z-bit)
        axes = []
        for pos, q in ((1, "x"), (2, "z")):
            ax_now = 1 + len(axes)
            if (0, q) in targets:
                axes.append(self.label(0, q))
                continue
            known = self.known.get(q)
            if known is None:
                arr = arr.sum(axis=ax_now)
            else:
                arr = _index_axis(arr, ax_now, known)
        return [(axes, arr, True)]

    def _gather_inner(self, targets) -> list:
        rows = []
        for w, q in targets:
            mask, val = self._target_row(w, q)
            rows.append((q, mask, val, (w, q)))
        pend = [(q, mask, val, None) for q in QUADS for mask, val in self.bands[q].rows]
        sel = self._closure(rows, pend)

        vars_: set[tuple[str, int]] = set()
        for row in sel:
            vars_.update(_row_vars(row))
        factors: list = []
        for side in (0, 1):
            cb = tuple(sorted({(mid >> 1, q) for q, mid in vars_ if mid & 1 == side}))
            if not cb:
                continue
            for grp in self.children[side].partition(cb):
                factors.extend(self.children[side].gather_factors(grp))
        for q, mask, val, open_bit in sel:
            axes = [self.children[b & 1].label(b >> 1, q) for b in _bits_of(mask)]
            if open_bit is not None:
                axes.append(self.label(open_bit[0], open_bit[1]))
            base = _parity_base(len(axes))
            arr = (base[None, :] == (val[:, None] & 1)).astype(np.float64)
            factors.append((axes, arr.reshape((-1,) + (2,) * len(axes)), False))
        keep = tuple(self.label(w, q) for w, q in targets)
        arr = _contract_component(factors, keep, self.engine.stats)
        return [(list(keep), arr, True)]


def _row_vars(row):
    q, mask = row[0], row[1]
    return [(q, b) for b in _bits_of(mask)]


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _merge_groups(items, bits):
    """Union-find over variable sets; returns groups of the payload bits."""
    parent = list(range(len(items)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    var_owner: dict = {}
    for k, (vars_, _) in enumerate(items):
        for v in vars_:
            if v in var_owner:
                ra, rb = find(var_owner[v]), find(k)
                if ra != rb:
                    parent[rb] = ra
            else:
                var_owner[v] = k
    groups: dict[int, list] = {}
    for k, (_, payload) in enumerate(items):
        if payload is not None:
            groups.setdefault(find(k), []).append(payload)
    ordered = [tuple(sorted(g, key=lambda b: bits.index(b))) for g in groups.values()]
    ordered.sort(key=lambda g: bits.index(g[0]))
    return ordered


def _index_axis(arr: np.ndarray, axis: int, idx: np.ndarray) -> np.ndarray:
    """Select along one axis with a per-batch index; removes the axis."""
    moved = np.moveaxis(arr, axis, -1)
    b = max(moved.shape[0], idx.shape[0])
    moved = np.broadcast_to(moved, (b,) + moved.shape[1:])
    sel = idx.reshape((-1,) + (1,) * (moved.ndim - 2) + (1,)).astype(np.int64)
    sel = np.broadcast_to(sel, moved.shape[:-1] + (1,))
    return np.take_along_axis(moved, sel, axis=-1)[..., 0]


def _canonical_structure(factor_axes: list[list]) -> tuple[tuple, dict]:
    """Structure key for order caching: variable/wire identity pattern only."""
    ordered = sorted(range(len(factor_axes)), key=lambda k: sorted(factor_axes[k]))
    var_map: dict = {}
    wire_map: dict = {}
    canon = []
    for k in ordered:
        fac = []
        for a in sorted(factor_axes[k]):
            v = var_map.setdefault(a, len(var_map))
            w = wire_map.setdefault(a[1], len(wire_map))
            fac.append((v, w))
        canon.append(tuple(fac))
    return tuple(canon), var_map


def _elim_order(canon: tuple) -> tuple:
    """Variable elimination order minimizing the largest intermediate window.

    Works on the canonical structure (variables as ints, wires as ints). Uses a
    greedy min-width pass, refined by an exact subset-DP when the component is small
    enough; memoized so each distinct local pattern is solved once per process.
    """
    hit = _ORDER_CACHE.get(canon)
    if hit is not None:
        return hit
    adj: dict[int, set] = {}
    wire_of: dict[int, int] = {}
    for fac in canon:
        for v, w in fac:
            wire_of[v] = w
            adj.setdefault(v, set()).update(u for u, _ in fac if u != v)
    all_vars = sorted(adj)

    def elim_width(v, gone: set) -> int:
        seen = {v}
        stack = [v]
        wires = set()
        while stack:
            u = stack.pop()
            for t in adj[u]:
                if t in seen:
                    continue
                seen.add(t)
                if t in gone:
                    stack.append(t)
                else:
                    wires.add(wire_of[t])
        return len(wires)

    def greedy(order_pool):
        gone: set = set()
        order = []
        bottleneck = 0
        remaining = set(order_pool)
        while remaining:
            v = min(remaining, key=lambda u: (elim_width(u, gone), u))
            bottleneck = max(bottleneck, elim_width(v, gone))
            gone.add(v)
            remaining.discard(v)
            order.append(v)
        return bottleneck, tuple(order)

    bottleneck, order = greedy(all_vars)
    if bottleneck > 3 and len(all_vars) <= 18:
        memo: dict[frozenset, tuple[int, tuple]] = {}

        def best(remaining: frozenset) -> tuple[int, tuple]:
            if not remaining:
                return 0, ()
            got = memo.get(remaining)
            if got is not None:
                return got
            gone = set(all_vars) - remaining
            result = (1 << 30, ())
            for v in sorted(remaining):
                w = elim_width(v, gone)
                if w >= result[0]:
                    continue
                sub_w, sub_order = best(remaining - {v})
                cand = (max(w, sub_w), (v,) + sub_order)
                if cand < result:
                    result = cand
            memo[remaining] = result
            return result

        exact_b, exact_order = best(frozenset(all_vars))
        if exact_b < bottleneck:
            order = exact_order
    _ORDER_CACHE[canon] = order
    return order


def _merge_var(factors, var, stats: ContractionStats):
    """Sum `var` out of the factor list, merging every factor that contains it."""
    group = [f for f in factors if var in f[0]]
    rest = [f for f in factors if var not in f[0]]
    out_axes: list = []
    for ax, _, _ in group:
        for a in ax:
            if a != var and a not in out_axes:
                out_axes.append(a)
    arr = _einsum_merge(group, out_axes)
    is_dist = any(g[2] for g in group)
    if is_dist:
        stats.record(len({a[1] for a in out_axes}))
    # renormalize to keep magnitudes tame; only ratios matter
    if arr.ndim > 1:
        peak = arr.reshape(arr.shape[0], -1).max(axis=1)
        scale = np.where(peak > 0, peak, 1.0).reshape((-1,) + (1,) * (arr.ndim - 1))
        arr = arr / scale
    rest.append((out_axes, arr, is_dist))
    return rest


def _einsum_merge(group, out_axes):
    letters: dict = {}
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

    def letter(ax):
        if ax not in letters:
            if len(letters) >= len(alphabet):
                raise AssertionError("tensor too large for einsum labels")
            letters[ax] = alphabet[len(letters)]
        return letters[ax]

    sub = ",".join("..." + "".join(letter(a) for a in ax) for ax, _, _ in group)
    sub += "->..." + "".join(letter(a) for a in out_axes)
    return np.einsum(sub, *[g[1] for g in group])


def _reduce_factors(factors, keep: set, stats: ContractionStats) -> list:
    """Marginalize internal variables out of a component without widening it.

    A variable is summed out only while the merged tensor spans no more wires than
    the widest factor it merges; variables whose elimination would bridge narrow
    factors into a wider joint are deferred -- they stay as shared axes and are
    handled higher up, once the other side of the bridge has collapsed.
    """
    factors = [(list(ax), arr, dist) for ax, arr, dist in factors]
    while True:
        counts: dict = {}
        for ax, _, _ in factors:
            for a in ax:
                counts[a] = counts.get(a, 0) + 1
        progress = False
        for var in sorted(counts):
            if var in keep:
                continue
            group = [f for f in factors if var in f[0]]
            out_wires = {a[1] for ax, _, _ in group for a in ax if a != var}
            if len(out_wires) <= max(len({a[1] for a in ax}) for ax, _, _ in group):
                factors = _merge_var(factors, var, stats)
                progress = True
                break
        if not progress:
            return factors


def _contract_component(factors, keep: tuple, stats: ContractionStats) -> np.ndarray:
    """Sum out every variable except those in `keep`; axes returned in keep-order."""
    factors = _reduce_factors(factors, set(keep), stats)
    canon, var_map = _canonical_structure([ax for ax, _, _ in factors])
    inverse = {v: a for a, v in var_map.items()}
    keep_set = set(keep)
    order = [inverse[v] for v in _elim_order(canon) if inverse[v] not in keep_set]
    for var in order:
        factors = _merge_var(factors, var, stats)
    axes_all: list = []
    for ax, _, _ in factors:
        axes_all.extend(a for a in ax if a not in axes_all)
    arr = _einsum_merge(factors, axes_all)
    if any(dist for _, _, dist in factors):
        stats.record(len({a[1] for a in axes_all}))
    perm = [axes_all.index(a) for a in keep]
    return np.transpose(arr, [0] + [1 + k for k in perm])


def _normalize(arr: np.ndarray) -> np.ndarray:
    total = arr.reshape(arr.shape[0], -1).sum(axis=1)
    if np.any(total <= 0):
        raise InconsistentEvidenceError("conditioning removed all probability mass")
    return arr / total.reshape((-1,) + (1,) * (arr.ndim - 1))


class SweepEngine:
    """Decision-marginal engine for one code block under an i.i.d. Pauli prior."""

    def __init__(self, n: int, family: str, priors: np.ndarray) -> None:
        if family not in ("polar", "bmera"):
            raise ValueError(f"unknown family {family!r}")
        priors = np.asarray(priors, dtype=np.float64)
        if priors.ndim == 1:
            priors = np.broadcast_to(priors, (n, 4))
        if priors.shape != (n, 4):
            raise ValueError("priors must have shape (4,) or (n, 4)")
        self.n = n
        self.family = family
        self.stats = ContractionStats()
        # per-wire prior over (x-bit, z-bit); shape (n, 1, 2, 2) with batch axis
        self._prior2 = priors[:, LABEL_OF_BITS].reshape(n, 1, 2, 2)
        marg = self._prior2.reshape(n, 4)
        px = self._prior2.sum(axis=3).reshape(n, 2)
        pz = self._prior2.sum(axis=2).reshape(n, 2)
        outer = px[:, :, None] * pz[:, None, :]
        self._product_prior = np.all(
            np.isclose(outer.reshape(n, 4), marg, rtol=1e-12, atol=1e-300), axis=1
        )
        self.root = BlockNode(tuple(range(n)), family, self)

    def leaf_prior2(self, wire: int) -> np.ndarray:
        return self._prior2[wire]

    def prior_is_product(self, wire: int) -> bool:
        return bool(self._product_prior[wire])

    def posterior(self, wire: int, quad: str) -> np.ndarray:
        """(batch, 2) posterior over the de-encoded quadrature bit of one wire."""
        factors = self.root.gather_factors(((wire, quad),))
        arr = _contract_component(factors, (self.root.label(wire, quad),), self.stats)
        return _normalize(arr)

    def set_known(self, wire: int, quad: str, bits) -> None:
        self.root.set_known(wire, quad, bits)
