"""Exhaustive ground truth for the token game.

Breadth-first search over token states: exact shortest movements realising a
requested pairing (tracking token identities, including pair destruction
and creation) or reaching a target configuration (identity-free).  Helper
movements that create and later destroy an extra pair never help -- dropping
such a pair leaves a valid movement with the same induced pairing -- so the
search only spawns and destroys pairs the target pairing asks for.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Optional, Union

from ..graph_core import Graph, GuardExceeded, VPath, bfs_path
from .movements import (
    INF,
    ZERO,
    Movement,
    Pairing,
    empty_movement,
    typed_movement,
)

DEFAULT_STATE_GUARD = 300_000


def _region(h: Graph, u: int, blocked: frozenset[int],
            forbid_inner: frozenset[int]) -> set[int]:
    """Vertices reachable from u by paths avoiding blocked vertices and
    using no forbidden vertex as an interior vertex."""
    out = set()
    frontier = [u]
    seen = {u}
    while frontier:
        nxt = []
        for a in frontier:
            for b in h.neighbors(a):
                if b in blocked or b in seen:
                    continue
                seen.add(b)
                out.add(b)
                if b not in forbid_inner:
                    nxt.append(b)
        frontier = nxt
    return out


def _move_path(h: Graph, u: int, w: int, blocked: set[int],
               forbid_inner: set[int]) -> VPath:
    p = bfs_path(h.adj, [u], {w}, (blocked | forbid_inner) - {u, w})
    assert p is not None, (u, w, blocked, forbid_inner)
    return p


def reachability_oracle(h: Graph,
                        x0: Iterable[int],
                        target: Union[Pairing, frozenset, set],
                        guard_states: int = DEFAULT_STATE_GUARD,
                        forbid_inner: Iterable[int] = (),
                        ) -> Optional[Movement]:
    """Shortest movement from configuration x0 realising the target, or None.

    `target` is either a Pairing (its 0-side must equal x0) or a vertex set
    (reach that configuration by slides only).  Raises GuardExceeded when the
    state space outgrows the guard.
    """
    x0 = frozenset(x0)
    forbid = frozenset(forbid_inner)
    if isinstance(target, Pairing):
        return _pairing_search(h, x0, target, guard_states, forbid)
    return _config_search(h, x0, frozenset(target), guard_states, forbid)


def _config_search(h, x0, goal, guard, forbid):
    if x0 == goal:
        return empty_movement(x0)
    seen = {x0: None}
    queue = deque([x0])
    while queue:
        cfg = queue.popleft()
        for u in sorted(cfg):
            region = _region(h, u, cfg - {u}, forbid)
            for w in sorted(region):
                new = (cfg - {u}) | {w}
                if new in seen:
                    continue
                seen[new] = (cfg, u, w)
                if new == goal:
                    return _rebuild_config(h, seen, new, forbid)
                queue.append(new)
                if len(seen) > guard:
                    raise GuardExceeded("configuration search guard exceeded")
    return None


def _rebuild_config(h, seen, state, forbid):
    steps = []
    while seen[state] is not None:
        prev, u, w = seen[state]
        steps.append((prev, u, w))
        state = prev
    steps.reverse()
    typed = []
    for cfg, u, w in steps:
        typed.append((_move_path(h, u, w, set(cfg) - {u}, set(forbid)), "slide"))
    return typed_movement(steps[0][0], typed)


def _pairing_search(h, x0, L: Pairing, guard, forbid):
    if L.x != x0:
        raise ValueError("pairing 0-side must equal the start configuration")
    # Token ids: ('s', v) for a 0-side vertex v; ('c', j, 0/1) for the two
    # tokens of the j-th creation edge.  Destruction edges pair two 's'
    # tokens; slide edges give an 's' token a target.
    slide_target: dict = {}
    destroy_pairs: list[frozenset] = []
    create_targets: list[frozenset[int]] = []
    for e in sorted(L.edges, key=lambda e: sorted(map(repr, e))):
        (a, sa), (b, sb) = sorted(e)
        if sa == ZERO and sb == ZERO:
            destroy_pairs.append(frozenset({("s", a), ("s", b)}))
        elif sa == INF and sb == INF:
            create_targets.append(frozenset({a, b}))
        else:
            zero = a if sa == ZERO else b
            inf = a if sa == INF else b
            slide_target[("s", zero)] = inf
    destroy_index = {}
    for j, pair in enumerate(destroy_pairs):
        for t in pair:
            destroy_index[t] = j

    def goal(state) -> bool:
        alive, destroyed, created = state
        if len(destroyed) != len(destroy_pairs):
            return False
        if len(created) != len(create_targets):
            return False
        pos = dict(alive)
        for t, v in slide_target.items():
            if pos.get(t) != v:
                return False
        for j, tgt in enumerate(create_targets):
            got = {pos[("c", j, 0)], pos[("c", j, 1)]}
            if got != set(tgt):
                return False
        return True

    start_alive = tuple(sorted((("s", v), v) for v in x0))
    start = (start_alive, frozenset(), frozenset())
    if goal(start):
        return empty_movement(x0)
    seen = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        alive, destroyed, created = state
        pos = dict(alive)
        occupied = frozenset(pos.values())

        def push(new_state, action):
            if new_state in seen:
                return False
            seen[new_state] = (state, action)
            if goal(new_state):
                return True
            queue.append(new_state)
            if len(seen) > guard:
                raise GuardExceeded("pairing search guard exceeded")
            return False

        # Slides.
        for tok, u in alive:
            for w in sorted(_region(h, u, occupied - {u}, forbid)):
                new_alive = tuple(sorted(
                    (t, (w if t == tok else p)) for t, p in alive))
                if push((new_alive, destroyed, created), ("slide", u, w)):
                    return _rebuild_pairing(h, seen,
                                            (new_alive, destroyed, created),
                                            x0, forbid)
        # Destructions demanded by the pairing.
        for j, pair in enumerate(destroy_pairs):
            if j in destroyed:
                continue
            t1, t2 = sorted(pair)
            if t1 not in pos or t2 not in pos:
                continue
            u, w = pos[t1], pos[t2]
            if w not in _region(h, u, occupied - {u, w}, forbid):
                continue
            new_alive = tuple(s for s in alive if s[0] not in pair)
            st = (new_alive, destroyed | {j}, created)
            if push(st, ("destroy", u, w)):
                return _rebuild_pairing(h, seen, st, x0, forbid)
        # Creations demanded by the pairing.
        for j in range(len(create_targets)):
            if j in created:
                continue
            free = [v for v in h.vertices() if v not in occupied]
            for u, w in itertools.combinations(sorted(free), 2):
                if w not in _region(h, u, occupied, forbid):
                    continue
                new_alive = tuple(sorted(alive + ((("c", j, 0), u),
                                                  (("c", j, 1), w))))
                st = (new_alive, destroyed, created | {j})
                if push(st, ("create", u, w)):
                    return _rebuild_pairing(h, seen, st, x0, forbid)
    return None


def _rebuild_pairing(h, seen, state, x0, forbid):
    actions = []
    while seen[state] is not None:
        prev, action = seen[state]
        actions.append((prev, action))
        state = prev
    actions.reverse()
    typed = []
    for (alive, _, _), (kind, u, w) in actions:
        occupied = {p for _, p in alive}
        if kind == "slide":
            blocked = occupied - {u}
        elif kind == "destroy":
            blocked = occupied - {u, w}
        else:
            blocked = set(occupied)
        typed.append((_move_path(h, u, w, blocked, set(forbid)), kind))
    return typed_movement(x0, typed)


# ---------------------------------------------------------------------------
# Labeled placement graphs (Wilson's theorem territory)
# ---------------------------------------------------------------------------

def placement_state_graph(h: Graph, k: int,
                          guard_states: int = DEFAULT_STATE_GUARD):
    """All injective placements of k labelled tokens and their slide moves.

    Returns (states, adjacency as index lists).  States are tuples of k
    distinct vertices (token i sits on state[i]).
    """
    states = [tuple(p) for p in itertools.permutations(range(h.n), k)]
    if len(states) > guard_states:
        raise GuardExceeded("placement graph too large")
    index = {s: i for i, s in enumerate(states)}
    adj: list[list[int]] = [[] for _ in states]
    for s in states:
        occ = frozenset(s)
        for i, u in enumerate(s):
            for w in _region(h, u, occ - {u}, frozenset()):
                t = s[:i] + (w,) + s[i + 1:]
                adj[index[s]].append(index[t])
    return states, adj


def placement_components(h: Graph, k: int):
    """Connected components of the labelled placement graph."""
    states, adj = placement_state_graph(h, k)
    comp = [-1] * len(states)
    c = 0
    for i in range(len(states)):
        if comp[i] >= 0:
            continue
        comp[i] = c
        stack = [i]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if comp[b] < 0:
                    comp[b] = c
                    stack.append(b)
        c += 1
    return states, comp, c


def placement_diameter(h: Graph, k: int) -> int:
    """Largest finite BFS distance in the labelled placement graph."""
    states, adj = placement_state_graph(h, k)
    best = 0
    for src in range(len(states)):
        dist = {src: 0}
        q = deque([src])
        while q:
            a = q.popleft()
            for b in adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    q.append(b)
        best = max(best, max(dist.values()))
    return best
