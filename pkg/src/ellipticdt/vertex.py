"""The normalized topological vertex by exhaustive order-ideal enumeration.

A leg configuration (lam, mu, nu) determines three infinite cylinders of unit
boxes in the positive octant; their union pi_min is the minimal box
configuration.  The normalized vertex counts, for each n, the finite order
ideals of the complement poset P = Z^3_{>=0} \\ pi_min with exactly n boxes.
Enumeration is the single source of truth here: no product formula or trace
identity is ever used to produce these numbers (they are what the identity
checks test).

Box membership convention (shared with partitions.Partition.contains):
a box (rho, sigma, tau) lies in

  * leg 1 iff (sigma, tau) is a cell of lam,
  * leg 2 iff (tau, rho)  is a cell of mu,
  * leg 3 iff (rho, sigma) is a cell of nu.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from dataclasses import dataclass
from heapq import merge as _heapmerge

from .partitions import Partition
from .series import HalfLaurent, PQSeries


@dataclass(frozen=True)
class LegConfig:
    lam: Partition
    mu: Partition
    nu: Partition

    def in_legs(self, rho, sigma, tau):
        """Number of legs containing the box (0..3)."""
        n = 0
        if self.lam.contains(sigma, tau):
            n += 1
        if self.mu.contains(tau, rho):
            n += 1
        if self.nu.contains(rho, sigma):
            n += 1
        return n

    def total_size(self):
        return self.lam.size() + self.mu.size() + self.nu.size()

    def canonical_key(self, order):
        return "%s|%s|%s|%d" % (
            self.lam.to_string(),
            self.mu.to_string(),
            self.nu.to_string(),
            order,
        )

    def cyclic(self):
        """The configuration after the coordinate rotation (r,s,t) -> (t,r,s)."""
        return LegConfig(self.nu, self.lam, self.mu)

    def conjugate_swap(self):
        """The configuration after the transposition (r,s,t) -> (s,r,t)."""
        return LegConfig(
            self.mu.conjugate(), self.lam.conjugate(), self.nu.conjugate()
        )


@dataclass(frozen=True)
class VertexRecord:
    lam: Partition
    mu: Partition
    nu: Partition
    order: int
    counts: tuple
    min_volume: int

    def tilde_laurent(self):
        """The normalized vertex as a Laurent polynomial (exact to p^order)."""
        return HalfLaurent((2 * n, c) for n, c in enumerate(self.counts))

    def to_json_dict(self):
        return {
            "lam": list(self.lam.parts),
            "mu": list(self.mu.parts),
            "nu": list(self.nu.parts),
            "order": self.order,
            "min_volume": self.min_volume,
            "counts": [str(c) for c in self.counts],
        }

    @classmethod
    def from_json_dict(cls, data):
        return cls(
            lam=Partition(data["lam"]),
            mu=Partition(data["mu"]),
            nu=Partition(data["nu"]),
            order=data["order"],
            counts=tuple(int(c) for c in data["counts"]),
            min_volume=data["min_volume"],
        )


def minimal_volume(cfg):
    """Normalized volume of the minimal box configuration.

    Boxes lying in a single leg contribute 0 and boxes in k >= 2 legs
    contribute 1 - k, so only the (bounded) pairwise intersections matter.
    """
    r = max(
        cfg.lam.first_part(),
        cfg.lam.length(),
        cfg.mu.first_part(),
        cfg.mu.length(),
        cfg.nu.first_part(),
        cfg.nu.length(),
    )
    vol = 0
    for rho in range(r):
        for sigma in range(r):
            for tau in range(r):
                k = cfg.in_legs(rho, sigma, tau)
                if k >= 2:
                    vol += 1 - k
    return vol


# ---------------------------------------------------------------------------
# Enumeration


def _candidate_poset(cfg, order):
    """Boxes of P whose down-set within P has at most `order` elements.

    Any order ideal of size <= order lies inside this set.  Down-set sizes are
    computed by inclusion-exclusion dynamic programming over a bounding box in
    which every coordinate chain below a candidate meets at most the listed
    number of leg boxes.
    """
    lam, mu, nu = cfg.lam, cfg.mu, cfg.nu
    # A rho-chain below a box of P meets at most len(mu) leg-2 boxes (tau < mu[rho'])
    # and at most nu_1 leg-3 boxes (rho' < nu[sigma]); similarly for the other axes.
    nr = order + mu.length() + nu.first_part()
    ns = order + lam.first_part() + nu.length()
    nt = order + lam.length() + mu.first_part()
    in_p = [
        [
            [cfg.in_legs(rho, sigma, tau) == 0 for tau in range(nt)]
            for sigma in range(ns)
        ]
        for rho in range(nr)
    ]
    down = [[[0] * nt for _ in range(ns)] for _ in range(nr)]
    cands = []
    for rho in range(nr):
        for sigma in range(ns):
            for tau in range(nt):
                v = 1 if in_p[rho][sigma][tau] else 0
                if rho:
                    v += down[rho - 1][sigma][tau]
                if sigma:
                    v += down[rho][sigma - 1][tau]
                if tau:
                    v += down[rho][sigma][tau - 1]
                if rho and sigma:
                    v -= down[rho - 1][sigma - 1][tau]
                if rho and tau:
                    v -= down[rho - 1][sigma][tau - 1]
                if sigma and tau:
                    v -= down[rho][sigma - 1][tau - 1]
                if rho and sigma and tau:
                    v += down[rho - 1][sigma - 1][tau - 1]
                down[rho][sigma][tau] = v
                if in_p[rho][sigma][tau] and v <= order:
                    cands.append((rho, sigma, tau))
    cands.sort()
    index = {box: i for i, box in enumerate(cands)}
    preds = []
    succs = [[] for _ in cands]
    for i, (rho, sigma, tau) in enumerate(cands):
        plist = []
        for below in ((rho - 1, sigma, tau), (rho, sigma - 1, tau), (rho, sigma, tau - 1)):
            if min(below) < 0:
                continue
            if not in_p[below[0]][below[1]][below[2]]:
                continue
            j = index[below]  # a predecessor in P always qualifies as a candidate
            plist.append(j)
            succs[j].append(i)
        preds.append(plist)
    return cands, preds, succs


def _count_ideals(preds, succs, order):
    """Counts of order ideals by size, each ideal generated exactly once.

    Branches on the lexicographically smallest ready element; the exclude
    branch leaves the element undecided forever, which removes its entire
    up-set from play because successors never lose their last blocked
    predecessor.
    """
    counts = [0] * (order + 1)
    npred = [len(p) for p in preds]
    ready0 = [i for i, n in enumerate(npred) if n == 0]
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(preds) + 10000))

    def rec(ready, size):
        if not ready:
            counts[size] += 1
            return
        if size == order:
            counts[order] += 1
            return
        m = ready[0]
        rest = ready[1:]
        rec(rest, size)
        opened = []
        for s in succs[m]:
            npred[s] -= 1
            if not npred[s]:
                opened.append(s)
        if opened:
            rec(list(_heapmerge(rest, opened)), size + 1)
        else:
            rec(rest, size + 1)
        for s in succs[m]:
            npred[s] += 1

    rec(ready0, 0)
    return counts


# in-memory memo: leg parts -> VertexRecord at the largest order computed so far
_MEMO = {}


def clear_memo():
    """Drop all in-process vertex records (disk caches are unaffected)."""
    _MEMO.clear()


class VertexCache:
    """Directory of JSON vertex records keyed by the canonical leg/order string.

    Lookups use the exact key only; writes are atomic (temp file + rename), so
    concurrent identical computations race benignly.  IO failures are treated
    as cache misses.
    """

    def __init__(self, directory):
        self.directory = str(directory)

    def _path(self, key):
        return os.path.join(self.directory, key.replace("|", "_") + ".json")

    def get(self, cfg, order):
        try:
            with open(self._path(cfg.canonical_key(order)), "r", encoding="utf-8") as fh:
                return VertexRecord.from_json_dict(json.load(fh))
        except (OSError, ValueError, KeyError):
            return None

    def put(self, record):
        cfg = LegConfig(record.lam, record.mu, record.nu)
        try:
            os.makedirs(self.directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record.to_json_dict(), fh, sort_keys=True)
            os.replace(tmp, self._path(cfg.canonical_key(record.order)))
        except OSError:
            pass


def tilde_vertex(cfg, order, cache=None):
    """The normalized vertex record: counts[n] ideals with n boxes outside all legs.

    counts[n] does not depend on the order, so records computed at a higher
    order are sliced rather than recomputed.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    mkey = (cfg.lam.parts, cfg.mu.parts, cfg.nu.parts)
    memo = _MEMO.get(mkey)
    if memo is not None and memo.order >= order:
        rec = _slice_record(memo, order)
        if cache is not None and cache.get(cfg, order) is None:
            cache.put(rec)
        return rec
    if cache is not None:
        rec = cache.get(cfg, order)
        if rec is not None:
            if memo is None or memo.order < rec.order:
                _MEMO[mkey] = rec
            return rec
    _, preds, succs = _candidate_poset(cfg, order)
    counts = _count_ideals(preds, succs, order)
    rec = VertexRecord(
        lam=cfg.lam,
        mu=cfg.mu,
        nu=cfg.nu,
        order=order,
        counts=tuple(counts),
        min_volume=minimal_volume(cfg),
    )
    if memo is None or memo.order < rec.order:
        _MEMO[mkey] = rec
    if cache is not None:
        cache.put(rec)
    return rec


def _slice_record(record, order):
    if record.order == order:
        return record
    return VertexRecord(
        lam=record.lam,
        mu=record.mu,
        nu=record.nu,
        order=order,
        counts=record.counts[: order + 1],
        min_volume=record.min_volume,
    )


def tilde_vertex_series(cfg, order, q_order=0, cache=None):
    """The normalized vertex as a q-free PQSeries with window [0, 2*order] half-units."""
    rec = tilde_vertex(cfg, order, cache)
    return PQSeries.constant(rec.tilde_laurent(), q_order, window=(0, 2 * order))


def vertex(cfg, order, q_order=0, cache=None):
    """The vertex with its usual normalization p^{min_volume} applied.

    The p-window is [min_volume, min_volume + order] in whole p-units.
    """
    rec = tilde_vertex(cfg, order, cache)
    return tilde_vertex_series(cfg, order, q_order, cache).shift_p(2 * rec.min_volume)


def estimate_nodes(cfg, order):
    """Rough search-tree size estimate for a prospective enumeration.

    Computes the candidate poset (cheap) and scales by the order; used by the
    CLI to warn before very large runs.
    """
    cands, _, _ = _candidate_poset(cfg, order)
    return len(cands), (order + 1) * len(cands)


def minimal_element_count(cfg, span=None):
    """Direct count of minimal boxes of P over a scanning box (an independent oracle for c_1)."""
    if span is None:
        span = 2 + max(
            cfg.lam.first_part() + cfg.lam.length(),
            cfg.mu.first_part() + cfg.mu.length(),
            cfg.nu.first_part() + cfg.nu.length(),
        )
    count = 0
    for rho in range(span):
        for sigma in range(span):
            for tau in range(span):
                if cfg.in_legs(rho, sigma, tau):
                    continue
                minimal = True
                for below in (
                    (rho - 1, sigma, tau),
                    (rho, sigma - 1, tau),
                    (rho, sigma, tau - 1),
                ):
                    if min(below) >= 0 and not cfg.in_legs(*below):
                        minimal = False
                        break
                if minimal:
                    count += 1
    return count
