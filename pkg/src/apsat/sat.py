"""Self-contained CDCL SAT solver.

Complete decision procedure over clause lists of signed integer literals
(variables 1..num_vars). Built for the solve/block/re-solve pattern: clauses
may be appended between solve() calls and learned state carries over, but
correctness never depends on it.

Implementation notes: two-watched-literal propagation, first-UIP clause
learning with non-chronological backjumping, VSIDS-style variable activity
with a lazy heap, phase saving (initial polarity false, so a constraint-free
model comes back all-false), Luby restarts, and activity-based reduction of
the learned-clause database. Resource limits surface as BUDGET_EXCEEDED,
never as UNSAT.
"""

from __future__ import annotations

import time
from enum import Enum
from heapq import heapify, heappop, heappush


class SatStatus(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


_RESCALE_LIMIT = 1e100
_RESCALE_FACTOR = 1e-100


def luby(i: int) -> int:
    """i-th term (0-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


class CdclSolver:
    def __init__(self, num_vars: int = 0):
        self.nv = 0
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.learnt_act: dict[int, float] = {}
        # watches[nv + lit] holds the clauses currently watching lit.
        self.watches: list[list[list[int]]] = [[]]
        self.vals: list[int] = [0]  # vals[nv + lit]: 1 true, -1 false, 0 free
        self.level: list[int] = [0]
        self.reason: list[list[int] | None] = [None]
        self.act: list[float] = [0.0]
        self.saved_phase: list[int] = [0]
        self.seen: list[int] = [0]
        self.heap: list[tuple[float, int]] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.dlevel = 0
        self.unsat = False
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.max_learnts = 4000.0
        self._model: list[int] | None = None
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        if num_vars:
            self.ensure_vars(num_vars)

    # ---- variable management -------------------------------------------

    def ensure_vars(self, n: int) -> None:
        if n <= self.nv:
            return
        old = self.nv
        grow = n - old
        self.vals = [0] * grow + self.vals + [0] * grow
        # watch lists must be re-centred around the new nv
        new_watches: list[list[list[int]]] = [[] for _ in range(2 * n + 1)]
        for lit_off, wl in enumerate(self.watches):
            if wl:
                new_watches[lit_off - old + n] = wl
        self.watches = new_watches
        for _ in range(grow):
            self.level.append(0)
            self.reason.append(None)
            self.act.append(0.0)
            self.saved_phase.append(-1)
            self.seen.append(0)
        for v in range(old + 1, n + 1):
            heappush(self.heap, (0.0, v))
        self.nv = n

    # ---- clause management ---------------------------------------------

    def add_clause(self, lits: list[int]) -> bool:
        """Add a clause; returns False if the solver is now provably UNSAT.

        Must not be called mid-search; any partial assignment above level 0
        is undone first.
        """
        if self.unsat:
            return False
        self._cancel_until(0)
        top = max((abs(l) for l in lits), default=0)
        if top > self.nv:
            self.ensure_vars(top)
        # dedupe, drop root-false literals, detect tautology / satisfied
        out: list[int] = []
        seen_here: set[int] = set()
        vals = self.vals
        nv = self.nv
        for l in lits:
            if -l in seen_here:
                return True  # tautology: always satisfied
            if l in seen_here:
                continue
            w = vals[nv + l]
            if w == 1:
                return True  # satisfied at root level
            if w == -1:
                continue
            seen_here.add(l)
            out.append(l)
        if not out:
            self.unsat = True
            return False
        if len(out) == 1:
            self._enqueue(out[0], None)
            return True
        self.clauses.append(out)
        self._attach(out)
        return True

    def _attach(self, c: list[int]) -> None:
        nv = self.nv
        self.watches[nv + c[0]].append(c)
        self.watches[nv + c[1]].append(c)

    def _detach(self, c: list[int]) -> None:
        nv = self.nv
        for lit in (c[0], c[1]):
            wl = self.watches[nv + lit]
            for i, cc in enumerate(wl):
                if cc is c:
                    wl[i] = wl[-1]
                    wl.pop()
                    break

    # ---- assignment / trail --------------------------------------------

    def _enqueue(self, p: int, reason: list[int] | None) -> None:
        v = p if p > 0 else -p
        nv = self.nv
        self.vals[nv + p] = 1
        self.vals[nv - p] = -1
        self.level[v] = self.dlevel
        self.reason[v] = reason
        self.trail.append(p)

    def _cancel_until(self, lvl: int) -> None:
        if self.dlevel <= lvl:
            return
        lim = self.trail_lim[lvl]
        trail = self.trail
        vals = self.vals
        nv = self.nv
        heap = self.heap
        act = self.act
        for i in range(len(trail) - 1, lim - 1, -1):
            p = trail[i]
            v = p if p > 0 else -p
            vals[nv + p] = 0
            vals[nv - p] = 0
            self.saved_phase[v] = 1 if p > 0 else -1
            self.reason[v] = None
            heappush(heap, (-act[v], v))
        del trail[lim:]
        del self.trail_lim[lvl:]
        self.qhead = lim
        self.dlevel = lvl

    # ---- propagation ------------------------------------------------------

    def _propagate(self) -> list[int] | None:
        trail = self.trail
        vals = self.vals
        nv = self.nv
        watches = self.watches
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            wl = watches[nv - p]  # clauses watching -p, now false
            i = j = 0
            end = len(wl)
            while i < end:
                c = wl[i]
                i += 1
                if c[0] == -p:
                    c[0] = c[1]
                    c[1] = -p
                first = c[0]
                if vals[nv + first] == 1:
                    wl[j] = c
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    lk = c[k]
                    if vals[nv + lk] >= 0:
                        c[1] = lk
                        c[k] = -p
                        watches[nv + lk].append(c)
                        moved = True
                        break
                if moved:
                    continue
                wl[j] = c
                j += 1
                if vals[nv + first] == -1:
                    while i < end:  # conflict: keep the remaining watchers
                        wl[j] = wl[i]
                        j += 1
                        i += 1
                    del wl[j:]
                    self.qhead = len(trail)
                    return c
                v = first if first > 0 else -first
                vals[nv + first] = 1
                vals[nv - first] = -1
                self.level[v] = self.dlevel
                self.reason[v] = c
                trail.append(first)
            del wl[j:]
        return None

    # ---- conflict analysis ---------------------------------------------

    def _bump_var(self, v: int) -> None:
        self.act[v] += self.var_inc
        if self.act[v] > _RESCALE_LIMIT:
            for u in range(1, self.nv + 1):
                self.act[u] *= _RESCALE_FACTOR
            self.var_inc *= _RESCALE_FACTOR
            self._rebuild_heap()
        else:
            heappush(self.heap, (-self.act[v], v))

    def _rebuild_heap(self) -> None:
        self.heap = [(-self.act[u], u) for u in range(1, self.nv + 1)]
        heapify(self.heap)

    def _bump_clause(self, c: list[int]) -> None:
        cid = id(c)
        a = self.learnt_act.get(cid)
        if a is None:
            return
        a += self.cla_inc
        if a > _RESCALE_LIMIT:
            for k in self.learnt_act:
                self.learnt_act[k] *= _RESCALE_FACTOR
            self.cla_inc *= _RESCALE_FACTOR
            a = self.learnt_act[cid] + self.cla_inc
        self.learnt_act[cid] = a

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        learnt = [0]
        seen = self.seen
        trail = self.trail
        level = self.level
        dlevel = self.dlevel
        counter = 0
        p = 0
        idx = len(trail) - 1
        btlevel = 0
        c: list[int] | None = confl
        while True:
            assert c is not None
            self._bump_clause(c)
            for q in (c if p == 0 else c[1:]):
                v = q if q > 0 else -q
                if not seen[v]:
                    lv = level[v]
                    if lv > 0:
                        seen[v] = 1
                        self._bump_var(v)
                        if lv >= dlevel:
                            counter += 1
                        else:
                            learnt.append(q)
                            if lv > btlevel:
                                btlevel = lv
            while True:
                p = trail[idx]
                vp = p if p > 0 else -p
                idx -= 1
                if seen[vp]:
                    break
            c = self.reason[vp]
            seen[vp] = 0
            counter -= 1
            if counter == 0:
                break
        learnt[0] = -p
        for q in learnt[1:]:
            seen[abs(q)] = 0
        return learnt, btlevel

    def _record_learnt(self, learnt: list[int]) -> None:
        if len(learnt) == 1:
            self._enqueue(learnt[0], None)
            return
        # watch the asserting literal and a literal from the backjump level
        best = 1
        level = self.level
        for k in range(2, len(learnt)):
            if level[abs(learnt[k])] > level[abs(learnt[best])]:
                best = k
        learnt[1], learnt[best] = learnt[best], learnt[1]
        self.learnts.append(learnt)
        self.learnt_act[id(learnt)] = self.cla_inc
        self._attach(learnt)
        self._enqueue(learnt[0], learnt)

    def _reduce_db(self) -> None:
        keep: list[list[int]] = []
        drop: list[list[int]] = []
        acts = self.learnt_act
        reason = self.reason
        scored = sorted(self.learnts, key=lambda c: acts[id(c)])
        cut = len(scored) // 2
        for i, c in enumerate(scored):
            v0 = abs(c[0])
            locked = reason[v0] is c
            if len(c) <= 2 or locked or i >= cut:
                keep.append(c)
            else:
                drop.append(c)
        for c in drop:
            self._detach(c)
            del acts[id(c)]
        self.learnts = keep

    # ---- search ----------------------------------------------------------

    def _decide(self) -> bool:
        vals = self.vals
        nv = self.nv
        if len(self.heap) > 8 * nv + 64:
            self._rebuild_heap()
        heap = self.heap
        while heap:
            _, v = heappop(heap)
            if vals[nv + v] == 0:
                self.decisions += 1
                self.dlevel += 1
                self.trail_lim.append(len(self.trail))
                self._enqueue(v * self.saved_phase[v], None)
                return True
        return False

    def solve(
        self,
        deadline: float | None = None,
        max_conflicts: int | None = None,
    ) -> SatStatus:
        """Decide the current clause set. Leaves the solver at level 0."""
        if self.unsat:
            return SatStatus.UNSAT
        self._cancel_until(0)
        restart_idx = 0
        restart_limit = 100 * luby(restart_idx)
        conflicts_here = 0
        since_restart = 0
        decisions_here = 0
        var_decay = 1.0 / 0.95
        cla_decay = 1.0 / 0.999
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                conflicts_here += 1
                since_restart += 1
                if self.dlevel == 0:
                    self.unsat = True
                    return SatStatus.UNSAT
                learnt, btlevel = self._analyze(confl)
                self._cancel_until(btlevel)
                self._record_learnt(learnt)
                self.var_inc *= var_decay
                self.cla_inc *= cla_decay
                if len(self.learnts) > self.max_learnts:
                    self._reduce_db()
                    self.max_learnts *= 1.15
                if max_conflicts is not None and conflicts_here >= max_conflicts:
                    self._cancel_until(0)
                    return SatStatus.BUDGET_EXCEEDED
                if deadline is not None and conflicts_here & 255 == 0:
                    if time.perf_counter() > deadline:
                        self._cancel_until(0)
                        return SatStatus.BUDGET_EXCEEDED
            else:
                if since_restart >= restart_limit:
                    restart_idx += 1
                    restart_limit = 100 * luby(restart_idx)
                    since_restart = 0
                    self._cancel_until(0)
                    if deadline is not None and time.perf_counter() > deadline:
                        return SatStatus.BUDGET_EXCEEDED
                    continue
                decisions_here += 1
                if decisions_here & 4095 == 0 and deadline is not None:
                    if time.perf_counter() > deadline:
                        self._cancel_until(0)
                        return SatStatus.BUDGET_EXCEEDED
                if not self._decide():
                    nv = self.nv
                    vals = self.vals
                    self._model = [0] + [vals[nv + v] for v in range(1, nv + 1)]
                    self._cancel_until(0)
                    return SatStatus.SAT

    def model(self) -> list[int]:
        """Last satisfying assignment: index by variable, +1 true / -1 false."""
        if self._model is None:
            raise RuntimeError("no model available; last solve was not SAT")
        return self._model
