"""Test instance generators and small exact baselines.

Random triangulations are grown as half-edge structures: start from a
triangle, repeatedly drop a new node into a uniformly chosen interior face,
and optionally diversify with random diagonal flips afterwards.  The nested
triangle family stacks concentric triangles and is the standard worst case
for floor-plan area.  For tiny graphs an exhaustive search over all cell
partitions gives exact minimum feasible canvas sizes to compare against.
"""

from __future__ import annotations

import random

from .errors import BudgetExceeded, InternalError
from .plane_graph import PlaneTriangulation


def random_triangulation(n, seed, flips=0):
    """Grow a random triangulation on n nodes; exterior stays (0, 1, 2).

    With flips=0 the result is stacked (every interior node has degree 3 at
    birth); positive flips requests that many random diagonal flips, applied
    best effort: edges on the outer face, edges at degree-3 endpoints, and
    flips that would create a parallel edge are skipped.
    """
    if n < 3:
        raise ValueError(f"a triangulation needs at least 3 nodes, got {n}")
    if flips < 0:
        raise ValueError(f"flips must not be negative, got {flips}")
    rng = random.Random(seed)

    # Half-edge h runs org[h] -> dst[h]; its twin is h ^ 1.  cnxt[h] is the
    # next half-edge counterclockwise around org[h].  faces holds each
    # interior face as a half-edge triple in trace order; face_of is -1 on
    # the three outer-face half-edges.
    org = [0, 1, 1, 2, 2, 0]
    dst = [1, 0, 2, 1, 0, 2]
    cnxt = [5, 2, 1, 4, 3, 0]
    faces = [(5, 3, 1)]
    face_of = [-1, 0, -1, 0, -1, 0]
    deg = [2, 2, 2]
    seed_he = [0, 1, 3]

    for v in range(3, n):
        idx = rng.randrange(len(faces))
        e1, e2, e3 = faces[idx]
        a, b, c = org[e1], org[e2], org[e3]
        base = len(dst)
        q0, q1, q2, q3, q4, q5 = range(base, base + 6)
        org.extend((a, v, b, v, c, v))
        dst.extend((v, a, v, b, v, c))
        cnxt.extend((0, q5, 0, q1, 0, q3))

        if dst[cnxt[e3 ^ 1]] != b:
            raise InternalError("face corner at the first node is out of order")
        cnxt[q0] = cnxt[e3 ^ 1]
        cnxt[e3 ^ 1] = q0
        if dst[cnxt[e1 ^ 1]] != c:
            raise InternalError("face corner at the second node is out of order")
        cnxt[q2] = cnxt[e1 ^ 1]
        cnxt[e1 ^ 1] = q2
        if dst[cnxt[e2 ^ 1]] != a:
            raise InternalError("face corner at the third node is out of order")
        cnxt[q4] = cnxt[e2 ^ 1]
        cnxt[e2 ^ 1] = q4

        faces[idx] = (e1, q2, q1)
        i2 = len(faces)
        faces.append((e2, q4, q3))
        i3 = len(faces)
        faces.append((e3, q0, q5))
        face_of.extend((0, 0, 0, 0, 0, 0))
        face_of[q1] = idx
        face_of[q2] = idx
        face_of[q3] = i2
        face_of[q4] = i2
        face_of[e2] = i2
        face_of[q5] = i3
        face_of[q0] = i3
        face_of[e3] = i3
        deg[a] += 1
        deg[b] += 1
        deg[c] += 1
        deg.append(3)
        seed_he.append(q1)

    def ring_has(x, y):
        h = seed_he[x]
        for _ in range(deg[x]):
            if dst[h] == y:
                return True
            h = cnxt[h]
        return False

    done = 0
    attempts = 30 * flips + 200
    while done < flips and attempts > 0:
        attempts -= 1
        h = rng.randrange(len(dst))
        f1 = face_of[h]
        f2 = face_of[h ^ 1]
        if f1 < 0 or f2 < 0:
            continue
        u, v = org[h], dst[h]
        if deg[u] < 4 or deg[v] < 4:
            continue
        t1 = faces[f1]
        p1 = t1.index(h)
        h_vx = t1[(p1 + 1) % 3]
        h_xu = t1[(p1 + 2) % 3]
        x = dst[h_vx]
        t2 = faces[f2]
        p2 = t2.index(h ^ 1)
        h_uy = t2[(p2 + 1) % 3]
        h_yv = t2[(p2 + 2) % 3]
        y = dst[h_uy]
        if x == y:
            continue
        if deg[x] <= deg[y]:
            if ring_has(x, y):
                continue
        elif ring_has(y, x):
            continue

        if cnxt[h_xu ^ 1] != h or cnxt[h_yv ^ 1] != (h ^ 1):
            raise InternalError("flip preconditions lost track of the rings")
        cnxt[h_xu ^ 1] = cnxt[h]
        cnxt[h_yv ^ 1] = cnxt[h ^ 1]
        org[h], dst[h] = x, y
        cnxt[h] = cnxt[h_vx ^ 1]
        cnxt[h_vx ^ 1] = h
        org[h ^ 1], dst[h ^ 1] = y, x
        cnxt[h ^ 1] = cnxt[h_uy ^ 1]
        cnxt[h_uy ^ 1] = h ^ 1
        faces[f1] = (h_yv, h_vx, h)
        for e in faces[f1]:
            face_of[e] = f1
        faces[f2] = (h_xu, h_uy, h ^ 1)
        for e in faces[f2]:
            face_of[e] = f2
        deg[u] -= 1
        deg[v] -= 1
        deg[x] += 1
        deg[y] += 1
        seed_he[u] = h_uy
        seed_he[v] = h_vx
        done += 1

    rotation = []
    for vtx in range(n):
        h = seed_he[vtx]
        ring = []
        while True:
            ring.append(dst[h])
            if len(ring) > deg[vtx]:
                raise InternalError("rotation walk does not close")
            h = cnxt[h]
            if h == seed_he[vtx]:
                break
        rotation.append(ring)
    return PlaneTriangulation(rotation, (0, 1, 2))


def nested_triangle_family(n):
    """Concentric triangles, each corner wired to two corners outside it.

    The innermost core has 3, 4 or 5 nodes so that every n >= 3 is reachable
    by wrapping complete triangles around it.  The outermost triangle is the
    exterior: ids (n-3, n-2, n-1) once at least one ring is wrapped, and
    (0, 1, 2) for the bare 4- and 5-node cores.
    """
    if n < 3:
        raise ValueError(f"a triangulation needs at least 3 nodes, got {n}")
    base = 3 + (n - 3) % 3
    if base == 3:
        rot = [[1, 2], [2, 0], [0, 1]]
    elif base == 4:
        rot = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
    else:
        rot = [[1, 3, 4, 2], [2, 3, 0], [0, 4, 3, 1], [0, 1, 2, 4], [0, 3, 2]]
    a = (0, 1, 2)
    k = base
    while k < n:
        b = (k, k + 1, k + 2)
        for i in range(3):
            ai = a[i]
            aip = a[(i + 1) % 3]
            aim = a[(i - 1) % 3]
            rot.append([b[(i + 1) % 3], aip, ai, b[(i - 1) % 3]])
            ring = rot[ai]
            pos = ring.index(aim)
            ring[pos + 1 : pos + 1] = [b[(i - 1) % 3], b[i]]
        a = b
        k += 3
    return PlaneTriangulation(rot, a)


def lower_bound_predicate(n, height, width):
    """Whether a height-by-width canvas clears the worst-case lower bounds.

    Returns (ok, side_margin, total_margin): the shorter side must reach
    floor((2n+1)/3) and the half perimeter must reach floor((4n+2)/3).
    Negative margins say how far below the bound the canvas falls.
    """
    if n < 3:
        raise ValueError(f"bounds are defined for n >= 3, got {n}")
    side = min(height, width) - (2 * n + 1) // 3
    total = height + width - (4 * n + 2) // 3
    return side >= 0 and total >= 0, side, total


def brute_force_min_area(graph, max_h, max_w, budget=5_000_000):
    """Exhaustively find the Pareto-minimal feasible canvas sizes.

    A canvas is feasible when its cells can be partitioned into one connected
    module per node such that modules touch exactly when their nodes are
    adjacent.  Only tiny inputs are accepted (at most 5 nodes and 16 cells);
    the budget caps total assignment attempts across all searched sizes and
    BudgetExceeded reports an inconclusive run.  Returns feasible (h, w)
    pairs, none of which dominates another, sorted by height.
    """
    n = graph.node_count
    if n > 5:
        raise ValueError(f"exhaustive search handles at most 5 nodes, got {n}")
    if max_h < 1 or max_w < 1:
        raise ValueError("canvas bounds must be at least 1")
    if max_h * max_w > 16:
        raise ValueError(
            f"exhaustive search handles at most 16 cells, got {max_h * max_w}"
        )
    nbrs = [frozenset(graph.neighbors(v)) for v in range(n)]
    steps = [int(budget)]
    memo = {}

    def module_closed_ok(grid, cells, h, total, m):
        """If module m has no empty neighbor left, it must already be done."""
        touched = set()
        for cell in cells[m]:
            r = cell % h
            for nb in (
                cell - 1 if r > 0 else -1,
                cell + 1 if r + 1 < h else -1,
                cell - h,
                cell + h if cell + h < total else -1,
            ):
                if nb < 0:
                    continue
                o = grid[nb]
                if o == -1:
                    return True
                if o != m:
                    touched.add(o)
        if touched != nbrs[m]:
            return False
        seen = {cells[m][0]}
        stack = [cells[m][0]]
        member = set(cells[m])
        while stack:
            cell = stack.pop()
            r = cell % h
            for nb in (
                cell - 1 if r > 0 else -1,
                cell + 1 if r + 1 < h else -1,
                cell - h,
                cell + h,
            ):
                if nb in member and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(cells[m])

    def search(grid, cells, h, total, t, used):
        if t == total:
            return used == n
        r = t % h
        up = grid[t - 1] if r > 0 else -1
        left = grid[t - h] if t >= h else -1
        for m in range(n):
            steps[0] -= 1
            if steps[0] < 0:
                raise BudgetExceeded(
                    f"exhaustive search budget of {budget} attempts exhausted"
                )
            if up >= 0 and up != m and up not in nbrs[m]:
                continue
            if left >= 0 and left != m and left not in nbrs[m]:
                continue
            fresh = not cells[m]
            used2 = used + 1 if fresh else used
            if total - t - 1 < n - used2:
                continue
            grid[t] = m
            cells[m].append(t)
            ok = True
            for cand in {up, left, m}:
                if cand >= 0 and not module_closed_ok(grid, cells, h, total, cand):
                    ok = False
                    break
            if ok and search(grid, cells, h, total, t + 1, used2):
                return True
            grid[t] = -1
            cells[m].pop()
        return False

    def feasible(h, w):
        key = (min(h, w), max(h, w))
        if key in memo:
            return memo[key]
        for (kh, kw), known in memo.items():
            if known and kh <= key[0] and kw <= key[1]:
                memo[key] = True
                return True
            if not known and kh >= key[0] and kw >= key[1]:
                memo[key] = False
                return False
        if h * w < n:
            memo[key] = False
            return False
        grid = [-1] * (h * w)
        cells = [[] for _ in range(n)]
        memo[key] = search(grid, cells, h, h * w, 0, 0)
        return memo[key]

    pareto = []
    cap = max_w
    for h in range(1, max_h + 1):
        found = None
        for w in range(1, cap + 1):
            if feasible(h, w):
                found = w
                break
        if found is not None:
            pareto.append((h, found))
            if found == 1:
                break
            cap = found - 1
    return pareto


_KINDS = ("random_stacked", "random_flipped", "nested_triangles", "explicit")


class InstanceSpec:
    """A reproducible recipe for one test triangulation."""

    def __init__(self, kind, n=None, seed=0, flip_count=0, rotation=None, exterior=None):
        if kind not in _KINDS:
            raise ValueError(f"unknown instance kind {kind!r}")
        if kind == "explicit":
            if rotation is None or exterior is None:
                raise ValueError("explicit instances need rotation and exterior")
            n = len(rotation)
        if n is None or n < 3:
            raise ValueError(f"instances need at least 3 nodes, got {n}")
        self.kind = kind
        self.n = n
        self.seed = seed
        self.flip_count = flip_count
        self.rotation = rotation
        self.exterior = exterior

    def build(self):
        if self.kind == "random_stacked":
            return random_triangulation(self.n, self.seed, 0)
        if self.kind == "random_flipped":
            return random_triangulation(self.n, self.seed, self.flip_count)
        if self.kind == "nested_triangles":
            return nested_triangle_family(self.n)
        return PlaneTriangulation(self.rotation, self.exterior)

    def describe(self):
        if self.kind == "random_stacked":
            return f"random_stacked n={self.n} seed={self.seed}"
        if self.kind == "random_flipped":
            return (
                f"random_flipped n={self.n} seed={self.seed} flips={self.flip_count}"
            )
        if self.kind == "nested_triangles":
            return f"nested_triangles n={self.n}"
        return f"explicit n={self.n}"

    def __repr__(self):
        return f"InstanceSpec({self.describe()})"
