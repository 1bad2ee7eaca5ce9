"""Exact maintenance of the edges on separating 4-cycles of a plane
multigraph under edge insertions and contractions.

A 4-cycle of a plane multigraph is *separating* when neither of its two
sides is a face.  The :class:`Detector` keeps, for every node of a
face-preserving separator tree, a set ``K`` of tracked vertices (the
node's separator at an internal node, every vertex at a leaf) and the
complete table of length-2 paths between pairs of ``K``.  Two such
paths with distinct middle vertices form a 4-cycle, and a constant-time
face walk decides whether it is separating; a pair connected through at
least four distinct middles has every one of its path edges on a
separating 4-cycle, so no walks are needed once a pair saturates.

Any 4-cycle is either confined to one side of a node's separation, in
which case a descendant tracks it, or it crosses with its two
separator vertices opposite on the cycle, in which case the node's own
pair table sees it.  Leaves track all pairs, closing the recursion.

Every mutation is charged against an exact integer potential; with
``debug`` enabled the detector asserts, per touched node, that the
number of candidate paths examined never exceeds the potential drop.

Reported edges accumulate: an edge is reported the first time it lies
on a separating 4-cycle (category ``separating4``) or on a simple
boundary 4-cycle of a face (category ``face4``), and the flag persists
for the rest of the edge's life.
"""

from __future__ import annotations

from .embed import (
    EmbeddedMultigraph,
    EmbedError,
    NotOnFace,
    SelfLoopContraction,
    dart,
    edge_of,
    quasi_induced_degree,
    rev,
)
from .separators import (
    DEFAULT_ALPHA,
    DEFAULT_C_SEP,
    DEFAULT_N0,
    SeparatorTree,
)

DEFAULT_MAX_FACE_DEGREE = 64


class FaceDegreeExceeded(EmbedError):
    """The input graph has a face larger than the configured bound."""


def _pairkey(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _legkey(e1: int, e2: int) -> tuple[int, int]:
    return (e1, e2) if e1 < e2 else (e2, e1)


def _derive(h: EmbeddedMultigraph, e1: int, e2: int):
    """(pair, middle) of the length-2 path with legs e1, e2 in h, or
    None when the two edges no longer form one."""
    if not (h.has_edge(e1) and h.has_edge(e2)):
        return None
    if h.is_loop(e1) or h.is_loop(e2):
        return None
    a1, b1 = h.endpoints(e1)
    a2, b2 = h.endpoints(e2)
    for m in (a1, b1):
        if m in (a2, b2):
            z1 = b1 if m == a1 else a1
            z2 = b2 if m == a2 else a2
            if z1 != z2:
                return _pairkey(z1, z2), m
    return None


def _dart_at(h: EmbeddedMultigraph, e: int, v: int) -> int:
    d = dart(e, 0)
    return d if h.vertex_of_dart(d) == v else d ^ 1


def cycle_is_separating(h: EmbeddedMultigraph,
                        a: int, m1: int, b: int, m2: int,
                        e1: int, e2: int, f2: int, f1: int) -> bool:
    """Whether the 4-cycle a -e1- m1 -e2- b -f2- m2 -f1- a bounds no
    face of h (both walks of its two sides fail to close a face)."""
    s1 = (_dart_at(h, e1, a), _dart_at(h, e2, m1),
          _dart_at(h, f2, b), _dart_at(h, f1, m2))
    s2 = (_dart_at(h, f1, a), _dart_at(h, f2, m2),
          _dart_at(h, e2, b), _dart_at(h, e1, m1))
    for seq in (s1, s2):
        if all(h.face_next(seq[i]) == seq[(i + 1) % 4] for i in range(4)):
            return False
    return True


class _NodeState:
    """Per-node pair table: all length-2 paths between K vertices."""

    __slots__ = ("node", "K", "paths", "by_edge")

    def __init__(self, node, K: set[int]):
        self.node = node
        self.K = K
        # pair -> {legkey: middle}
        self.paths: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        # edge id -> {(pair, legkey)}
        self.by_edge: dict[int, set] = {}

    def add(self, pair, lk, middle) -> bool:
        d = self.paths.setdefault(pair, {})
        if lk in d:
            return False
        d[lk] = middle
        for e in lk:
            self.by_edge.setdefault(e, set()).add((pair, lk))
        return True

    def remove(self, pair, lk) -> None:
        d = self.paths.get(pair)
        if d is None or lk not in d:
            return
        del d[lk]
        if not d:
            del self.paths[pair]
        for e in lk:
            s = self.by_edge.get(e)
            if s is not None:
                s.discard((pair, lk))
                if not s:
                    del self.by_edge[e]

    def scan_all(self) -> None:
        """Fill the table from scratch from the live node graph."""
        h = self.node.graph
        for m in h.vertices():
            legs = []
            for d in h.rotation(m):
                z = h.vertex_of_dart(rev(d))
                if z == m or z not in self.K:
                    continue
                legs.append((edge_of(d), z))
            for i in range(len(legs)):
                e1, z1 = legs[i]
                for j in range(i + 1, len(legs)):
                    e2, z2 = legs[j]
                    if z1 == z2 or e1 == e2:
                        continue
                    self.add(_pairkey(z1, z2), _legkey(e1, e2), m)


class Detector:
    """Reports, online, every edge that comes to lie on a separating
    4-cycle (and every edge on a simple 4-cycle bounding a face).

    Mutations return the newly emitted events as ``(edge_id,
    category)`` pairs with category ``separating4`` or ``face4``;
    events discovered at construction are in :attr:`initial_events`.
    """

    def __init__(self, g: EmbeddedMultigraph, *,
                 n0: int = DEFAULT_N0,
                 alpha: float = DEFAULT_ALPHA,
                 c_sep: float = DEFAULT_C_SEP,
                 max_face_degree: int = DEFAULT_MAX_FACE_DEGREE,
                 debug: bool = True):
        g = g.copy()
        for f in g.faces():
            if len(f) > max_face_degree:
                raise FaceDegreeExceeded(
                    f"face of degree {len(f)} exceeds {max_face_degree}")
            if len(f) == 2 and edge_of(f[0]) != edge_of(f[1]):
                raise EmbedError("input has a doubled face: not quasi-simple")
            if len(f) == 1:
                raise EmbedError("input has a monogon face: not quasi-simple")
        self.max_face_degree = max_face_degree
        self.debug = debug
        self.reported: set[int] = set()
        self.face_reported: set[int] = set()
        self.candidates_total = 0
        self._op_items: list[tuple] = []
        self._op_renames: list[tuple[int, int, int]] = []
        self.tree = SeparatorTree(g, n0=n0, alpha=alpha, c_sep=c_sep)
        self.tree.hook = self._hook
        self._states: dict[int, _NodeState] = {}
        self._nodes: dict[int, object] = {}
        self._phi_pre: dict[int, int] = {}
        self._captures: dict[int, tuple] = {}
        self._cand_node: dict[int, int] = {}
        for node in self.tree.nodes():
            K = (set(node.graph.vertices()) if node.is_leaf
                 else set(node.separator()))
            st = _NodeState(node, K)
            st.scan_all()
            self._states[id(node)] = st
            self._nodes[id(node)] = node
        events: list[tuple[int, str]] = []
        for st in self._states.values():
            self._initial_reports(st, events)
        root = self.tree.root.graph
        self._face4_scan(root, [f[0] for f in root.faces()], events)
        self.initial_events = events

    # -- public operations ----------------------------------------------

    def insert_edge(self, u: int, w: int,
                    after_u: int | None, after_w: int | None,
                    eid: int | None = None) -> list[tuple[int, str]]:
        """Insert an edge splitting the face shared by the two corners;
        raises NotOnFace when the corners lie on different faces."""
        root = self.tree.root.graph
        if after_u is None or after_w is None:
            raise NotOnFace("insertion endpoints need face corners")
        if root.vertex_of_dart(after_u) != u:
            raise NotOnFace(f"dart {after_u} is not at vertex {u}")
        if root.vertex_of_dart(after_w) != w:
            raise NotOnFace(f"dart {after_w} is not at vertex {w}")
        if not root.same_face(root.rotation_next(after_u),
                              root.rotation_next(after_w)):
            raise NotOnFace("corners lie on different faces")
        self._begin_op()
        tevents = self.tree.apply_insertion(u, w, after_u, after_w, eid=eid)
        eid = tevents[0][2]
        tevents += self._simplify_around(
            [dart(eid, 0), dart(eid, 1)])
        events: list[tuple[int, str]] = []
        self._process_events(tevents, events)
        if root.has_edge(eid):
            self._face4_scan(root, [dart(eid, 0), dart(eid, 1)], events)
        self._end_op()
        return events

    def contract_edge(self, e: int) -> list[tuple[int, str]]:
        """Contract a non-loop edge everywhere and restore quasi-
        simplicity, reporting any newly covered edges."""
        root = self.tree.root.graph
        if not root.has_edge(e):
            raise EmbedError(f"no edge {e}")
        u, w = root.endpoints(e)
        if u == w:
            raise SelfLoopContraction(f"edge {e} is a self-loop")
        x = min(u, w)
        self._begin_op()
        tevents = self.tree.apply_contraction(e)
        tevents += self._simplify_around(list(root.rotation(x)))
        events: list[tuple[int, str]] = []
        self._process_events(tevents, events)
        self._face4_scan(root, list(root.rotation(x)), events)
        self._end_op()
        return events

    def reset_op_log(self) -> None:
        """Clear the discovery log consulted by :meth:`separating_now`.

        The log accumulates across operations so that a caller issuing
        several mutations as one logical step can validate them as a
        unit."""
        self._op_items = []
        self._op_renames = []

    def separating_now(self, detail: bool = False):
        """The exact set of edges currently lying on a separating
        4-cycle, provided no edge did when :meth:`reset_op_log` was
        last called.

        Every 4-cycle that turns separating is discovered by some
        mutation's path or split-face check and logged; re-validating
        each logged discovery against the current graph filters out
        the ones that were only transiently separating.

        With ``detail`` the return value is ``(edges, cycles)`` where
        ``cycles`` lists every validated 4-cycle as ``(pair, m1, lk1,
        m2, lk2)``: its diagonal pair, the two middle vertices and the
        two leg edge pairs.  Detail mode checks every stored path pair
        individually so each reported cycle is concrete."""
        out: set[int] = set()
        cycles: list[tuple] = []
        done: set[tuple[int, tuple[int, int]]] = set()

        def emit(pair, lk1, m1, lk2, m2):
            out.update(lk1)
            out.update(lk2)
            if detail:
                cycles.append((pair, m1, tuple(lk1), m2, tuple(lk2)))

        def check_pair(st, pair):
            """Pairwise-check every stored path of the pair."""
            key = (id(st), pair)
            if key in done:
                return
            done.add(key)
            h = st.node.graph
            d = st.paths.get(pair)
            if not d:
                return
            entries = list(d.items())
            for i in range(len(entries)):
                lk1, m1 = entries[i]
                for j in range(i + 1, len(entries)):
                    lk2, m2 = entries[j]
                    if m1 == m2:
                        continue
                    if self._pair_cycle_separating(h, pair, lk1, m1,
                                                   lk2, m2):
                        emit(pair, lk1, m1, lk2, m2)

        for item in self._op_items:
            st = item[1]
            h = st.node.graph
            if item[0] == "cycle":
                _, _, pair0, lk1, _m1, lk2, _m2 = item
                if detail:
                    # a logged cycle certifies its pair; sibling cycles
                    # of the same pair may have turned separating too,
                    # so recheck the whole current path table
                    for lk in (lk1, lk2):
                        g = _derive(h, *lk)
                        if g is not None:
                            check_pair(st, g[0])
                    check_pair(st, self._translate_pair(st, pair0))
                    continue
                g1 = _derive(h, *lk1)
                g2 = _derive(h, *lk2)
                if g1 is None or g2 is None:
                    continue
                if g1[0] != g2[0] or g1[1] == g2[1]:
                    continue
                if self._pair_cycle_separating(h, g1[0], lk1, g1[1],
                                               lk2, g2[1]):
                    emit(g1[0], lk1, g1[1], lk2, g2[1])
            else:
                pair = self._translate_pair(st, item[2])
                if detail:
                    check_pair(st, pair)
                    continue
                d = st.paths.get(pair)
                if not d:
                    continue
                entries = list(d.items())
                if len(set(d.values())) >= 4:
                    for lk, _m in entries:
                        out |= set(lk)
                    continue
                for i in range(len(entries)):
                    lk1, m1 = entries[i]
                    for j in range(i + 1, len(entries)):
                        lk2, m2 = entries[j]
                        if m1 == m2:
                            continue
                        if self._pair_cycle_separating(h, pair, lk1, m1,
                                                       lk2, m2):
                            emit(pair, lk1, m1, lk2, m2)
        if detail:
            return out, cycles
        return out

    def _translate_pair(self, st, pair):
        a, b = pair
        nid = id(st.node)
        for xid, old, new in self._op_renames:
            if xid != nid:
                continue
            if a == old:
                a = new
            if b == old:
                b = new
        return _pairkey(a, b)

    def check(self) -> None:
        """Assert detector invariants against from-scratch recomputation."""
        self.tree.check()
        for st in self._states.values():
            node = st.node
            expected_K = (set(node.graph.vertices()) if node.is_leaf
                          else set(node.separator()))
            assert st.K == expected_K
            fresh = _NodeState(node, set(st.K))
            fresh.scan_all()
            assert fresh.paths == st.paths
            want = {}
            for pair, d in fresh.paths.items():
                for lk in d:
                    for e in lk:
                        want.setdefault(e, set()).add((pair, lk))
            assert want == st.by_edge
            if self.debug:
                info = self._phi(node, st.K)
                assert info["phi"] >= 0
                assert len(info["M"]) <= max(0, len(st.K) - 2)

    # -- quasi-simplification --------------------------------------------

    def _simplify_around(self, darts: list[int]) -> list[tuple]:
        """Remove doubled faces reachable from the given root darts,
        keeping the larger edge id, and propagate the deletions."""
        root = self.tree.root.graph
        tevents: list[tuple] = []
        stack = list(darts)
        while stack:
            d = stack.pop()
            if not root.has_dart(d):
                continue
            big = root.bigon_at(d)
            if big is None:
                big = root.bigon_at(rev(d))
            if big is None:
                continue
            d1, d2 = big
            loser = min(edge_of(d1), edge_of(d2))
            survivor = d1 if edge_of(d1) != loser else d2
            tevents += self.tree.apply_deletion(loser)
            stack.append(survivor)
            stack.append(rev(survivor))
            stack.append(d)
        return tevents

    # -- hook and event processing ----------------------------------------

    def _hook(self, kind: str, node, payload) -> None:
        nid = id(node)
        st = self._states[nid]
        if self.debug and nid not in self._phi_pre:
            self._phi_pre[nid] = self._phi(node, st.K)["phi"]
        if kind == "contract":
            e, u, w, x = payload
            h = node.graph
            fu = sorted({edge_of(d) for d in h.rotation(u)})
            fw = sorted({edge_of(d) for d in h.rotation(w)})
            self._captures[nid] = (u, w, fu, fw, u in st.K, w in st.K)

    def _begin_op(self) -> None:
        self._phi_pre = {}
        self._captures = {}
        self._cand_node = {}

    def _end_op(self) -> None:
        if not self.debug:
            return
        # candidate work in a child may be paid by an ancestor's drop
        # (a contraction's quasi-simplification can swap one child edge
        # for another, leaving that child's own potential flat), so the
        # ledger balances over all nodes the operation touched
        drop = 0
        cand = 0
        for nid, phi0 in self._phi_pre.items():
            node = self._nodes[nid]
            st = self._states[nid]
            info = self._phi(node, st.K)
            drop += phi0 - info["phi"]
            cand += self._cand_node.get(nid, 0)
            assert info["phi"] >= 0, f"negative potential at node {nid}"
            assert len(info["M"]) <= max(0, len(st.K) - 2)
        assert cand <= drop, (
            f"candidates {cand} exceed total potential drop {drop}")

    def _cand(self, st: _NodeState, k: int) -> None:
        if k:
            self.candidates_total += k
            nid = id(st.node)
            self._cand_node[nid] = self._cand_node.get(nid, 0) + k

    def _process_events(self, tevents: list[tuple],
                        events: list[tuple[int, str]]) -> None:
        # hygiene first: every node's graph is already final, so purge
        # paths through deleted edges and relabel renamed vertices
        # before any discovery touches the tables
        for ev in tevents:
            kind, node = ev[0], ev[1]
            st = self._states[id(node)]
            if kind == "rename":
                self._process_rename(st, ev[2], ev[3])
            elif kind == "delete":
                for pair, lk in list(st.by_edge.get(ev[2], ())):
                    st.remove(pair, lk)
        for ev in tevents:
            kind, node = ev[0], ev[1]
            st = self._states[id(node)]
            if kind == "contract":
                self._process_merge(st, ev[3], events)
            elif kind == "insert":
                self._process_insert_paths(st, ev[2], events)
                self._recheck_split_face(st, ev[2], events)

    # -- reporting ---------------------------------------------------------

    def _report(self, e: int, events: list[tuple[int, str]]) -> None:
        if e not in self.reported:
            self.reported.add(e)
            events.append((e, "separating4"))

    def _pair_cycle_separating(self, h, pair, lk1, m1, lk2, m2) -> bool:
        a, b = pair
        p, q = lk1
        e1, e2 = (p, q) if a in h.endpoints(p) else (q, p)
        p, q = lk2
        f1, f2 = (p, q) if a in h.endpoints(p) else (q, p)
        return cycle_is_separating(h, a, m1, b, m2, e1, e2, f2, f1)

    def _on_new_path(self, st, pair, lk, middle, events) -> None:
        h = st.node.graph
        d = st.paths[pair]
        if len(set(d.values())) >= 4:
            # saturated: every stored path has at least three partners
            # with other middles, at most two of which can close a face
            self._op_items.append(("pair", st, pair))
            for lk2 in d:
                for e in lk2:
                    self._report(e, events)
            return
        for lk2, m2 in list(d.items()):
            if lk2 == lk or m2 == middle:
                continue
            if self._pair_cycle_separating(h, pair, lk, middle, lk2, m2):
                self._op_items.append(
                    ("cycle", st, pair, lk, middle, lk2, m2))
                for e in lk + lk2:
                    self._report(e, events)

    def _initial_reports(self, st, events) -> None:
        h = st.node.graph
        for pair, d in st.paths.items():
            items = list(d.items())
            if len(set(d.values())) >= 4:
                for lk, _ in items:
                    for e in lk:
                        self._report(e, events)
                continue
            for i in range(len(items)):
                lk1, m1 = items[i]
                for j in range(i + 1, len(items)):
                    lk2, m2 = items[j]
                    if m1 == m2:
                        continue
                    if self._pair_cycle_separating(h, pair, lk1, m1,
                                                   lk2, m2):
                        for e in lk1 + lk2:
                            self._report(e, events)

    # -- per-node updates --------------------------------------------------

    def _process_merge(self, st, x: int, events) -> None:
        h = st.node.graph
        u, w, fu, fw, ku, kw = self._captures.pop(id(st.node))
        K = st.K
        if ku or kw:
            K.discard(u)
            K.discard(w)
            K.add(x)
        # 1) lift out every path touching an edge that was at u or w
        affected = set()
        for f in set(fu) | set(fw):
            affected |= st.by_edge.get(f, set())
        for pair, lk in affected:
            st.remove(pair, lk)
        # 2) re-seat the survivors; a path whose pair changed may close
        # new 4-cycles with paths it never shared a pair with before
        changed = []
        for pair, lk in affected:
            got = _derive(h, *lk)
            if got is None:
                continue
            npair, nmid = got
            if npair[0] not in K or npair[1] not in K:
                continue
            if npair == pair:
                st.add(npair, lk, nmid)
            else:
                changed.append((npair, lk, nmid))
        moved_pairs = set()
        for npair, lk, nmid in changed:
            if st.add(npair, lk, nmid):
                moved_pairs.add(npair)
                self._on_new_path(st, npair, lk, nmid, events)
        self._cand(st, len(moved_pairs))
        # 3) new paths with the merged vertex as middle: one former-u
        # leg and one former-w leg
        ulegs = self._k_legs(h, fu, x, K)
        wlegs = self._k_legs(h, fw, x, K)
        seen_pairs = set()
        for f1, z1 in ulegs:
            for f2, z2 in wlegs:
                if z1 == z2 or f1 == f2:
                    continue
                seen_pairs.add(_pairkey(z1, z2))
                npair = _pairkey(z1, z2)
                lk = _legkey(f1, f2)
                if st.add(npair, lk, x):
                    self._on_new_path(st, npair, lk, x, events)
        self._cand(st, len(seen_pairs))
        # 4) when exactly one endpoint was tracked, the other side's
        # former edges now start paths at a tracked vertex
        if ku != kw:
            outlegs = fw if ku else fu
            seen = set()
            for f in set(outlegs):
                if not h.has_edge(f) or h.is_loop(f):
                    continue
                a, b = h.endpoints(f)
                if x not in (a, b):
                    continue
                m = a + b - x
                for d2 in h.rotation(m):
                    g2 = edge_of(d2)
                    if g2 == f:
                        continue
                    z = h.vertex_of_dart(rev(d2))
                    if z == m or z == x or z not in K:
                        continue
                    seen.add((m, z))
                    lk = _legkey(f, g2)
                    if st.add(_pairkey(x, z), lk, m):
                        self._on_new_path(st, _pairkey(x, z), lk, m, events)
            self._cand(st, len(seen))

    @staticmethod
    def _k_legs(h, fs, x, K):
        out = []
        for f in set(fs):
            if not h.has_edge(f) or h.is_loop(f):
                continue
            a, b = h.endpoints(f)
            if x not in (a, b):
                continue
            z = a + b - x
            if z in K:
                out.append((f, z))
        return out

    def _process_rename(self, st, old: int, new: int) -> None:
        self._op_renames.append((id(st.node), old, new))
        if old in st.K:
            st.K.discard(old)
            st.K.add(new)
        h = st.node.graph
        moved = set()
        for d in h.rotation(new):
            moved |= st.by_edge.get(edge_of(d), set())
        for pair, lk in moved:
            st.remove(pair, lk)
        for pair, lk in moved:
            got = _derive(h, *lk)
            if got is None:
                continue
            npair, nmid = got
            if npair[0] in st.K and npair[1] in st.K:
                st.add(npair, lk, nmid)

    def _process_insert_paths(self, st, eid: int, events) -> None:
        h = st.node.graph
        if not h.has_edge(eid) or h.is_loop(eid):
            return
        u, w = h.endpoints(eid)
        K = st.K
        for a, b in ((u, w), (w, u)):
            if a not in K:
                continue
            seen = set()
            for d2 in h.rotation(b):
                g2 = edge_of(d2)
                if g2 == eid:
                    continue
                z = h.vertex_of_dart(rev(d2))
                if z == b or z == a or z not in K:
                    continue
                seen.add(z)
                lk = _legkey(eid, g2)
                if st.add(_pairkey(a, z), lk, b):
                    self._on_new_path(st, _pairkey(a, z), lk, b, events)
            self._cand(st, len(seen))

    def _recheck_split_face(self, st, eid: int, events) -> None:
        """An insertion splits one face; if that face had degree 4, its
        boundary cycle may just have turned from facial to separating."""
        h = st.node.graph
        if not h.has_edge(eid):
            return
        d0, d1 = dart(eid, 0), dart(eid, 1)
        f1 = h.trace_face(d0)
        f2 = h.trace_face(d1)
        if len(f1) + len(f2) - 2 != 4:
            return
        i0 = f1.index(d0)
        j0 = f2.index(d1)
        seq = f1[i0 + 1:] + f1[:i0] + f2[j0 + 1:] + f2[:j0]
        verts = [h.vertex_of_dart(d) for d in seq]
        eds = [edge_of(d) for d in seq]
        if len(set(verts)) != 4 or len(set(eds)) != 4:
            return
        a, m1, b, m2 = verts
        e1, e2, g2, g1 = eds
        if cycle_is_separating(h, a, m1, b, m2, e1, e2, g2, g1):
            self._op_items.append(
                ("cycle", st, _pairkey(a, b),
                 _legkey(e1, e2), m1, _legkey(g1, g2), m2))
            for e in eds:
                self._report(e, events)

    # -- face 4-cycles -------------------------------------------------------

    def _face4_scan(self, h, darts, events) -> None:
        seen = set()
        for d in darts:
            if not h.has_dart(d):
                continue
            if h.face_degree_at_most(d, 4) != 4:
                continue
            f = h.trace_face(d)
            key = min(f)
            if key in seen:
                continue
            seen.add(key)
            verts = [h.vertex_of_dart(x) for x in f]
            eds = [edge_of(x) for x in f]
            if len(set(verts)) != 4 or len(set(eds)) != 4:
                continue
            for e in eds:
                if e not in self.face_reported:
                    self.face_reported.add(e)
                    events.append((e, "face4"))

    # -- potential ------------------------------------------------------------

    def _phi(self, node, K: set[int]) -> dict:
        """Exact integer potential of one node: 6*phi_v(V) +
        3*phi_q(Y u M) + phi_s(M u K), with phi_s = 63*phi_v^2 - sum of
        squared degrees, all measured on quasi-induced subgraphs."""
        h = node.graph
        qs = h.copy()
        qs.quasi_simplify()
        verts = set(h.vertices())
        Kset = set(K) & verts
        M = {m for m in verts - Kset
             if quasi_induced_degree(h, Kset, m) >= 4}
        phi_v = 4 * qs.n_vertices - qs.n_edges
        phi_q = sum(len(qs.rotation(v)) for v in verts - Kset)
        gmk = h.induced(M | Kset)
        gmk.quasi_simplify()
        phi_v_mk = 4 * gmk.n_vertices - gmk.n_edges
        phi_s = (63 * phi_v_mk * phi_v_mk
                 - sum(len(gmk.rotation(v)) ** 2 for v in gmk.vertices()))
        return {"phi": 6 * phi_v + 3 * phi_q + phi_s,
                "phi_v": phi_v, "phi_q": phi_q, "phi_s": phi_s,
                "M": M, "K": Kset}


# -- module-level operation wrappers -----------------------------------------

def new_detector(g: EmbeddedMultigraph, **kwargs) -> Detector:
    """A detector over (a copy of) g with all initial separating-4-cycle
    edges reported in ``initial_events``."""
    return Detector(g, **kwargs)


def insert_edge(det: Detector, u: int, w: int,
                after_u: int | None, after_w: int | None,
                eid: int | None = None) -> list[tuple[int, str]]:
    return det.insert_edge(u, w, after_u, after_w, eid=eid)


def contract_edge(det: Detector, e: int) -> list[tuple[int, str]]:
    return det.contract_edge(e)


def face_4cycle_check(det: Detector, darts: list[int]) -> list[tuple[int, str]]:
    """Emit ``face4`` events for any unreported simple degree-4 faces
    through the given darts of the maintained graph."""
    events: list[tuple[int, str]] = []
    det._face4_scan(det.tree.root.graph, darts, events)
    return events
