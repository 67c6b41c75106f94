"""Independent reference implementations used to cross-check the pipeline.

Nothing here shares code with the package beyond primitive inputs (rotation
systems, parent arrays).  simulate_stretch literally performs the downward
stretching a 2-visibility drawing demands, one relaxation sweep at a time,
and verify_canonical replays a construction order against the contour rules.
Both are deliberately naive; they trade speed for being obviously right.
"""

from __future__ import annotations


def _children_ccw(graph, parent, root, anchor):
    """Children of every node in counterclockwise order.

    A non-root node lists its children starting just after the edge back to
    its parent; the root starts at the anchor neighbor.
    """
    n = graph.node_count
    rot = [list(graph.rotation[v]) for v in range(n)]
    kids = [[] for _ in range(n)]
    for v in range(n):
        ring = rot[v]
        if v == root:
            start = ring.index(anchor)
        else:
            start = (ring.index(parent[v]) + 1) % len(ring)
        ordered = ring[start:] + ring[:start]
        kids[v] = [w for w in ordered if parent[w] == v]
    return kids


def _is_ancestor(parent, a, b):
    """True when a is a proper ancestor of b."""
    w = parent[b]
    while w != -1:
        if w == a:
            return True
        w = parent[w]
    return False


def simulate_stretch(graph, tree):
    """Stretch bars downward until every unrelated edge can see sideways.

    Recomputes leaf intervals by a plain recursive walk, then repeats three
    moves until nothing changes: pin each bar's top to its parent's bottom,
    push each unrelated edge's sight line below every bar standing in the
    gap between its endpoints, and extend each bar down to its deepest sight
    line.  Returns (bottoms, strips, height, width) with bottoms a node list,
    strips a dict mapping frozenset({u, v}) to the sight row.
    """
    n = graph.node_count
    parent = [int(p) for p in tree.parent]
    root = tree.root
    kids = _children_ccw(graph, parent, root, tree.anchor)

    xl = [0] * n
    xr = [0] * n
    next_col = 0
    stack = [(root, False)]
    post = []
    while stack:
        v, done = stack.pop()
        if done:
            post.append(v)
            continue
        xl[v] = next_col
        if not kids[v]:
            next_col += 1
            xr[v] = next_col
            continue
        stack.append((v, True))
        for c in reversed(kids[v]):
            stack.append((c, False))
    for v in post:
        xr[v] = max(xr[c] for c in kids[v])
        xl[v] = min(xl[c] for c in kids[v])
    width = next_col

    unrelated = []
    for u in range(n):
        for v in graph.rotation[u]:
            if u < v and parent[u] != v and parent[v] != u:
                if _is_ancestor(parent, u, v) or _is_ancestor(parent, v, u):
                    continue
                unrelated.append((u, v))

    top = [0] * n
    bottom = [1] * n
    strip = {e: 1 for e in unrelated}
    for _ in range(5 * n + 20):
        changed = False
        for v in range(n):
            t = 0 if v == root else bottom[parent[v]]
            if t != top[v]:
                top[v] = t
                changed = True
        for u, v in unrelated:
            left, right = (u, v) if xr[u] <= xl[v] else (v, u)
            gap_lo, gap_hi = xr[left], xl[right]
            line = max(top[u] + 1, top[v] + 1)
            for w in range(n):
                if w == u or w == v:
                    continue
                if xl[w] < gap_hi and xr[w] > gap_lo:
                    line = max(line, bottom[w] + 1)
            if line > strip[(u, v)]:
                strip[(u, v)] = line
                changed = True
        for v in range(n):
            need = top[v] + 1
            for (a, b), line in strip.items():
                if v in (a, b):
                    need = max(need, line)
            if need > bottom[v]:
                bottom[v] = need
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("stretch simulation did not converge")

    strips = {frozenset(e): line for e, line in strip.items()}
    return bottom, strips, max(bottom), width


def verify_canonical(graph, order):
    """Replay a construction order against the contour rules.

    Peels nodes from the last one backward, keeping the outer contour as a
    cyclic list.  Each peeled node must sit on the contour away from the
    base pair, its surviving neighbors must form one contiguous arc of its
    rotation, and only the arc's interior may newly join the contour.
    Returns (True, "") or (False, reason).
    """
    n = graph.node_count
    seq = [int(v) for v in order]
    if sorted(seq) != list(range(n)):
        return False, "order is not a permutation of the nodes"
    v1, v2 = seq[0], seq[1]
    ext = set(graph.exterior)
    if not {v1, v2} <= ext or seq[n - 1] not in ext:
        return False, "order must start at an outer edge and end at the peak"
    rank = [0] * n
    for k, v in enumerate(seq):
        rank[v] = k

    contour = list(graph.exterior)
    base = contour.index(v1)
    contour = contour[base:] + contour[:base]
    if v2 not in (contour[1], contour[-1]):
        return False, "base pair is not an edge of the outer face"
    for k in range(n - 1, 1, -1):
        v = seq[k]
        if v not in contour:
            return False, f"node {v} is peeled while not on the contour"
        if v in (v1, v2):
            return False, f"outer node {v} may not be peeled"
        alive = [w for w in graph.rotation[v] if rank[w] < k]
        if len(alive) < 2:
            return False, f"node {v} keeps fewer than two earlier neighbors"
        ring = list(graph.rotation[v])
        d = len(ring)
        live = [rank[w] < k for w in ring]
        p = contour.index(v)
        before = contour[(p - 1) % len(contour)]
        after = contour[(p + 1) % len(contour)]
        if all(live):
            s = ring.index(after)
            if ring[(s - 1) % d] == before:
                arc = ring[s:] + ring[:s]
            elif ring[(s + 1) % d] == before:
                arc = [ring[(s - t) % d] for t in range(d)]
            else:
                return False, (
                    f"contour neighbors of node {v} are not adjacent"
                    " in its rotation"
                )
        else:
            runs = sum(
                1 for t in range(d) if live[t] and not live[(t - 1) % d]
            )
            if runs != 1:
                return False, (
                    f"earlier neighbors of node {v} are not contiguous"
                )
            start = next(
                t for t in range(d) if live[t] and not live[(t - 1) % d]
            )
            arc = [ring[(start + t) % d] for t in range(len(alive))]
            if {arc[0], arc[-1]} != {before, after}:
                return False, (
                    f"contour neighbors of node {v} do not match its arc ends"
                )
            if arc[0] != after:
                arc.reverse()
        inner = arc[1:-1]
        if any(w in contour for w in inner):
            return False, f"peeling node {v} exposes a chord"
        head = contour[:p]
        tail = contour[p + 1 :]
        ring_after = head + tail
        q = ring_after.index(after)
        rebuilt = ring_after[:q] + list(reversed(inner)) + ring_after[q:]
        contour = rebuilt
    return (True, "") if sorted(contour) == sorted([v1, v2]) else (
        False,
        "contour does not shrink to the base edge",
    )
