# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled engine kernels.

The typed twin of ostplan.engine.pure: same seven names, same array
contracts, same error types and messages.  Any behavioral difference
between the two modules is a bug; the parity tests compare them kernel by
kernel and on whole pipelines.  Scratch stacks are preallocated from the
degree sums with defensive overflow guards, since bounds checking is off.
"""

import numpy as np

cimport numpy as cnp

from ostplan.errors import CyclicDependency, InternalError

cnp.import_array()


def canonical_peel(Py_ssize_t n, const cnp.int64_t[::1] off, const cnp.int32_t[::1] adj,
                   Py_ssize_t v1, Py_ssize_t v2, Py_ssize_t vn):
    """Return a canonical construction order for a triangulation.

    The order starts with the anchor pair (v1, v2), ends with vn, and is found
    backwards: repeatedly remove a node that sits on the current outer contour,
    is not an anchor, and has exactly two contour neighbors, then reverse the
    removal sequence.  The contour is kept as a doubly linked cycle oriented
    the same way the outer face traces.
    """
    cdef Py_ssize_t m2 = off[n]
    cdef cnp.uint8_t[::1] alive = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] onb = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] nxt = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] prv = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] bc = np.zeros(n, dtype=np.int32)
    cdef Py_ssize_t cap = m2 + 3 * n + 16
    cdef cnp.int32_t[::1] stack = np.empty(cap, dtype=np.int32)
    cdef cnp.int32_t[::1] chain = np.empty(n + 2, dtype=np.int32)
    cdef cnp.int32_t[::1] peel = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t sp = 0, pc = 0, alive_left = n
    cdef Py_ssize_t v, a, b, row0, d, ia, t, x, y, steps, na, cl, i, rx, dx, c

    nxt[v1] = <cnp.int32_t> v2
    prv[v2] = <cnp.int32_t> v1
    nxt[v2] = <cnp.int32_t> vn
    prv[vn] = <cnp.int32_t> v2
    nxt[vn] = <cnp.int32_t> v1
    prv[v1] = <cnp.int32_t> vn
    onb[v1] = onb[v2] = onb[vn] = 1
    bc[v1] = bc[v2] = bc[vn] = 2
    stack[sp] = <cnp.int32_t> vn
    sp += 1

    while alive_left > 2:
        if sp == 0:
            raise InternalError("no removable contour node left")
        sp -= 1
        v = stack[sp]
        if not alive[v] or not onb[v] or v == v1 or v == v2 or bc[v] != 2:
            continue
        a = prv[v]
        b = nxt[v]
        row0 = off[v]
        d = off[v + 1] - row0
        ia = -1
        for t in range(d):
            if adj[row0 + t] == a:
                ia = t
                break
        if ia < 0:
            raise InternalError("contour predecessor missing from rotation")
        # Walk the rotation clockwise from the predecessor to the successor.
        # The nodes in between are exactly the neighbors that join the contour
        # when v is removed, already in contour order.
        chain[0] = <cnp.int32_t> a
        cl = 1
        t = ia
        steps = 0
        while True:
            t = t - 1 if t else d - 1
            x = adj[row0 + t]
            if not alive[x]:
                raise InternalError("dead node inside a contour fan")
            chain[cl] = <cnp.int32_t> x
            cl += 1
            if x == b:
                break
            steps += 1
            if steps > d:
                raise InternalError("contour fan does not close")
        na = 0
        for t in range(d):
            if alive[adj[row0 + t]]:
                na += 1
        if cl != na:
            raise InternalError("contour fan skipped a live neighbor")
        alive[v] = 0
        onb[v] = 0
        alive_left -= 1
        peel[pc] = <cnp.int32_t> v
        pc += 1
        for i in range(cl - 1):
            x = chain[i]
            y = chain[i + 1]
            nxt[x] = <cnp.int32_t> y
            prv[y] = <cnp.int32_t> x
        bc[a] -= 1
        if bc[a] == 2:
            if sp >= cap:
                raise InternalError("contour stack overflow")
            stack[sp] = <cnp.int32_t> a
            sp += 1
        bc[b] -= 1
        if bc[b] == 2:
            if sp >= cap:
                raise InternalError("contour stack overflow")
            stack[sp] = <cnp.int32_t> b
            sp += 1
        for i in range(1, cl - 1):
            x = chain[i]
            onb[x] = 1
            rx = off[x]
            dx = off[x + 1] - rx
            c = 0
            for t in range(dx):
                y = adj[rx + t]
                if alive[y] and onb[y]:
                    c += 1
                    bc[y] += 1
                    if bc[y] == 2:
                        if sp >= cap:
                            raise InternalError("contour stack overflow")
                        stack[sp] = <cnp.int32_t> y
                        sp += 1
            bc[x] = <cnp.int32_t> c
            if c == 2:
                if sp >= cap:
                    raise InternalError("contour stack overflow")
                stack[sp] = <cnp.int32_t> x
                sp += 1

    order = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] order_v = order
    order_v[0] = <cnp.int32_t> v1
    order_v[1] = <cnp.int32_t> v2
    for i in range(pc):
        order_v[2 + i] = peel[pc - 1 - i]
    return order


def realizer_colors(Py_ssize_t n, const cnp.int64_t[::1] off, const cnp.int32_t[::1] adj,
                    const cnp.int32_t[::1] order):
    """Color the interior edges by replaying a canonical order forwards.

    Nodes are attached one at a time to a growing contour.  Each attachment
    arc contributes three kinds of directed parent pointers: toward the first
    arc node (pp), toward the last arc node (pn), and from every covered arc
    node toward the newcomer (pm).  Exterior edges stay uncolored.  Returns
    (pp, pn, pm) as int32 arrays with -1 where unset.
    """
    cdef Py_ssize_t v1 = order[0]
    cdef Py_ssize_t v2 = order[1]
    cdef Py_ssize_t vn = order[n - 1]
    pp = np.full(n, -1, dtype=np.int32)
    pn = np.full(n, -1, dtype=np.int32)
    pm = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] pp_v = pp
    cdef cnp.int32_t[::1] pn_v = pn
    cdef cnp.int32_t[::1] pm_v = pm
    cdef cnp.uint8_t[::1] ingr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] onb = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mark = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] nxt = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] prv = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] arc = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] walk = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t covered = 0
    cdef Py_ssize_t k, v, row0, d, t, x, p, cp, cq, na, wc, i

    ingr[v1] = ingr[v2] = 1
    onb[v1] = onb[v2] = 1
    nxt[v1] = <cnp.int32_t> v2
    prv[v2] = <cnp.int32_t> v1
    nxt[v2] = <cnp.int32_t> v1
    prv[v1] = <cnp.int32_t> v2

    for k in range(2, n):
        v = order[k]
        if ingr[v]:
            raise InternalError("order repeats a node")
        row0 = off[v]
        d = off[v + 1] - row0
        na = 0
        for t in range(d):
            x = adj[row0 + t]
            if ingr[x]:
                if not onb[x]:
                    raise InternalError("attachment to a covered node")
                arc[na] = <cnp.int32_t> x
                na += 1
                mark[x] = 1
        if na < 2:
            raise InternalError("attachment arc is too short")
        cp = -1
        for i in range(na):
            x = arc[i]
            p = prv[x]
            if not mark[p] or (p == v1 and x == v2):
                if cp >= 0:
                    for i in range(na):
                        mark[arc[i]] = 0
                    raise InternalError("attachment arc is not contiguous")
                cp = x
        if cp < 0:
            for i in range(na):
                mark[arc[i]] = 0
            raise InternalError("attachment arc has no start")
        walk[0] = <cnp.int32_t> cp
        wc = 1
        x = cp
        while wc < na:
            if x == v1:
                for i in range(na):
                    mark[arc[i]] = 0
                raise InternalError("attachment arc crosses the anchor edge")
            x = nxt[x]
            if not mark[x]:
                for i in range(na):
                    mark[arc[i]] = 0
                raise InternalError("attachment arc is not contiguous")
            walk[wc] = <cnp.int32_t> x
            wc += 1
        for i in range(na):
            mark[arc[i]] = 0
        cq = walk[wc - 1]
        for i in range(1, wc - 1):
            x = walk[i]
            onb[x] = 0
            pm_v[x] = <cnp.int32_t> v
            covered += 1
        nxt[cp] = <cnp.int32_t> v
        prv[v] = <cnp.int32_t> cp
        nxt[v] = <cnp.int32_t> cq
        prv[cq] = <cnp.int32_t> v
        ingr[v] = 1
        onb[v] = 1
        if k < n - 1:
            pp_v[v] = <cnp.int32_t> cp
            pn_v[v] = <cnp.int32_t> cq
    if covered != n - 3:
        raise InternalError("coloring did not cover the interior")
    if n > 3 and (nxt[v2] != vn or nxt[vn] != v1):
        raise InternalError("final contour is not the outer triangle")
    return pp, pn, pm


def realizer_check(Py_ssize_t n, const cnp.int64_t[::1] off, const cnp.int32_t[::1] adj,
                   const cnp.int32_t[::1] mirror, const cnp.int32_t[::1] p0,
                   const cnp.int32_t[::1] p1, const cnp.int32_t[::1] p2,
                   Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t r2):
    """Verify the local and global laws of a three-tree edge coloring.

    Returns a list of (code, a, b) tuples, empty when the coloring is valid.
    Codes: "RootHasParent", "MissingParent", "ParentNotNeighbor",
    "RepeatedParent", "ColoredExteriorEdge", "EdgeColorCount",
    "ChiralityMismatch", "ArcColor", "RootInColor", "ColorCycle".
    """
    cdef Py_ssize_t m2 = off[n]
    out = []
    cdef cnp.uint8_t[::1] is_root = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] slot_color = np.full(m2, -1, dtype=np.int32)
    cdef cnp.uint8_t[::1] state = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] path = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t x, y, c, s, t, cnt, row0, d, i, here, chir, steps
    cdef Py_ssize_t seen0, seen1, sc, ca, cb, third, a, inc, x0, pl, ci
    cdef int bad
    cdef Py_ssize_t pos0, pos1, pos2
    cdef Py_ssize_t[3] pos
    cdef Py_ssize_t[3] cyc
    cdef Py_ssize_t[3] roots

    roots[0] = r0
    roots[1] = r1
    roots[2] = r2
    is_root[r0] = is_root[r1] = is_root[r2] = 1

    for x in range(n):
        if is_root[x]:
            for c in range(3):
                y = p0[x] if c == 0 else (p1[x] if c == 1 else p2[x])
                if y != -1:
                    out.append(("RootHasParent", x, c))
            continue
        seen0 = seen1 = -1
        sc = 0
        for c in range(3):
            y = p0[x] if c == 0 else (p1[x] if c == 1 else p2[x])
            if y < 0 or y >= n:
                out.append(("MissingParent", x, c))
                continue
            if (sc > 0 and y == seen0) or (sc > 1 and y == seen1):
                out.append(("RepeatedParent", x, y))
                continue
            if sc == 0:
                seen0 = y
            else:
                seen1 = y
            sc += 1
            s = -1
            for t in range(off[x], off[x + 1]):
                if adj[t] == y:
                    s = t
                    break
            if s < 0:
                out.append(("ParentNotNeighbor", x, y))
                continue
            slot_color[s] = <cnp.int32_t> c
    for s in range(m2):
        t = mirror[s]
        if t < s:
            continue
        cnt = (slot_color[s] >= 0) + (slot_color[t] >= 0)
        x = adj[t]
        y = adj[s]
        if is_root[x] and is_root[y]:
            if cnt:
                out.append(("ColoredExteriorEdge", x, y))
        elif cnt != 1:
            out.append(("EdgeColorCount", x, y))
    chir = 0
    for x in range(n):
        if is_root[x]:
            continue
        row0 = off[x]
        d = off[x + 1] - row0
        pos[0] = pos[1] = pos[2] = -1
        bad = 0
        for t in range(d):
            c = slot_color[row0 + t]
            if c >= 0:
                if pos[c] >= 0:
                    bad = 1
                pos[c] = t
        if bad or pos[0] < 0 or pos[1] < 0 or pos[2] < 0:
            continue
        here = 0
        for i in range(1, d):
            c = slot_color[row0 + (pos[0] + i) % d]
            if c > 0:
                here = c
                break
        if chir == 0:
            chir = here
        elif here != chir:
            out.append(("ChiralityMismatch", x, here))
            continue
        cyc[0] = 0
        cyc[1] = here
        cyc[2] = 3 - here
        for a in range(3):
            ca = cyc[a]
            cb = cyc[(a + 1) % 3]
            third = 3 - ca - cb
            steps = ((pos[cb] - pos[ca]) % d + d) % d
            for i in range(1, steps):
                s = row0 + (pos[ca] + i) % d
                inc = slot_color[mirror[s]]
                if inc < 0:
                    continue
                if inc != third:
                    out.append(("ArcColor", x, adj[s]))
    for ci in range(3):
        x = roots[ci]
        for t in range(off[x], off[x + 1]):
            y = adj[t]
            if is_root[y]:
                continue
            if slot_color[mirror[t]] != ci:
                out.append(("RootInColor", x, y))
    for c in range(3):
        for x in range(n):
            state[x] = 0
        for x0 in range(n):
            if state[x0] or is_root[x0]:
                continue
            pl = 0
            x = x0
            while 0 <= x < n and not is_root[x] and state[x] == 0:
                state[x] = 1
                path[pl] = <cnp.int32_t> x
                pl += 1
                x = p0[x] if c == 0 else (p1[x] if c == 1 else p2[x])
            if 0 <= x < n and not is_root[x] and state[x] == 1:
                out.append(("ColorCycle", x, c))
            for i in range(pl):
                state[path[i]] = 2
    return out


def preorder_tree(Py_ssize_t n, const cnp.int64_t[::1] off, const cnp.int32_t[::1] adj,
                  const cnp.int32_t[::1] mirror, const cnp.int32_t[::1] parent,
                  Py_ssize_t root, Py_ssize_t anchor_pos):
    """Label a rooted spanning tree in rotation order.

    Children of each node are scanned counterclockwise starting just past the
    parent slot (past the anchor slot at the root) and visited depth first,
    which makes labels a preorder.  Returns (label, order, pos_parent, depth,
    size, visited): label is node-indexed and 1-based with 0 for unreached
    nodes, order/depth/size are label-indexed with slot 0 unused, pos_parent
    is the row-local slot of the parent within each node's rotation, and
    visited counts reached nodes.
    """
    label = np.zeros(n, dtype=np.int32)
    order = np.full(n + 1, -1, dtype=np.int32)
    posp = np.full(n, -1, dtype=np.int32)
    depth = np.zeros(n + 1, dtype=np.int32)
    size = np.ones(n + 1, dtype=np.int32)
    cdef cnp.int32_t[::1] label_v = label
    cdef cnp.int32_t[::1] order_v = order
    cdef cnp.int32_t[::1] posp_v = posp
    cdef cnp.int32_t[::1] depth_v = depth
    cdef cnp.int32_t[::1] size_v = size
    cdef cnp.int32_t[::1] dn = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] stack = np.empty(n + 2, dtype=np.int32)
    cdef cnp.int32_t[::1] kids = np.empty(n + 2, dtype=np.int32)
    cdef Py_ssize_t sp = 0, nxt_label = 0, visited
    cdef Py_ssize_t x, row0, d, base, count, i, s, y, kc, lab, p

    size_v[0] = 0
    stack[sp] = <cnp.int32_t> root
    sp += 1
    while sp:
        sp -= 1
        x = stack[sp]
        nxt_label += 1
        label_v[x] = <cnp.int32_t> nxt_label
        order_v[nxt_label] = <cnp.int32_t> x
        depth_v[nxt_label] = dn[x]
        row0 = off[x]
        d = off[x + 1] - row0
        if x == root:
            base = anchor_pos
            count = d
        else:
            base = posp_v[x] + 1
            count = d - 1
        kc = 0
        for i in range(count):
            s = row0 + (base + i) % d
            y = adj[s]
            if parent[y] == x and label_v[y] == 0 and y != root:
                posp_v[y] = <cnp.int32_t> (mirror[s] - off[y])
                dn[y] = dn[x] + 1
                kids[kc] = <cnp.int32_t> y
                kc += 1
        for i in range(kc - 1, -1, -1):
            stack[sp] = kids[i]
            sp += 1
    visited = nxt_label
    for lab in range(visited, 1, -1):
        x = order_v[lab]
        p = parent[x]
        if 0 <= p < n and label_v[p] > 0:
            size_v[label_v[p]] += size_v[lab]
    return label, order, posp, depth, size, visited


def annotate_blocks(Py_ssize_t n, const cnp.int64_t[::1] loff, const cnp.int32_t[::1] ladj,
                    const cnp.int32_t[::1] p_lab, const cnp.int32_t[::1] size):
    """Classify every rotation row into the four label blocks.

    Rows live in label space and start at the parent slot (anchor slot for the
    root row).  Walking counterclockwise, a valid row shows smaller unrelated
    labels first, then children, then larger unrelated labels.  Returns
    (n_small, n_child, last_small, first_large, violations): per-label counts
    of the first two blocks, the last smaller unrelated label, the first
    larger unrelated label, and a list of (code, i, j) violation tuples.
    Codes: 0 ancestor out of place, 1 descendant that is not a child, 2 block
    order regression, 3 required smaller-side block empty, 4 required
    larger-side block empty, 5 contact rule broken on an unrelated edge.
    """
    nb2 = np.zeros(n + 1, dtype=np.int32)
    nb3 = np.zeros(n + 1, dtype=np.int32)
    ell = np.zeros(n + 1, dtype=np.int32)
    arr = np.zeros(n + 1, dtype=np.int32)
    cdef cnp.int32_t[::1] nb2_v = nb2
    cdef cnp.int32_t[::1] nb3_v = nb3
    cdef cnp.int32_t[::1] ell_v = ell
    cdef cnp.int32_t[::1] arr_v = arr
    viol = []
    cdef Py_ssize_t i, r0, r1, start, s, j, d, last_s
    cdef int phase, cls, last

    for i in range(1, n + 1):
        r0 = loff[i]
        r1 = loff[i + 1]
        start = r0 if i == 1 else r0 + 1
        phase = 2
        for s in range(start, r1):
            j = ladj[s]
            if j < i:
                if j < i < j + size[j]:
                    viol.append((0, i, j))
                    continue
                cls = 2
            elif i < j < i + size[i]:
                if p_lab[j] != i:
                    viol.append((1, i, j))
                    continue
                cls = 3
            else:
                cls = 4
            if cls < phase:
                viol.append((2, i, j))
                continue
            phase = cls
            if cls == 2:
                nb2_v[i] += 1
                ell_v[i] = <cnp.int32_t> j
            elif cls == 3:
                nb3_v[i] += 1
            elif arr_v[i] == 0:
                arr_v[i] = <cnp.int32_t> j
    for i in range(3, n + 1):
        if nb2_v[i] == 0:
            viol.append((3, i, 0))
    for i in range(2, n):
        d = loff[i + 1] - loff[i]
        if d - 1 - nb2_v[i] - nb3_v[i] <= 0:
            viol.append((4, i, 0))
    if not viol:
        for i in range(2, n + 1):
            r0 = loff[i]
            last_s = r0 + nb2_v[i]
            for s in range(r0 + 1, last_s + 1):
                j = ladj[s]
                last = s == last_s
                if j == 2 and i == n:
                    if not (last and arr_v[2] == n):
                        viol.append((5, i, j))
                elif last == (arr_v[j] == i):
                    viol.append((5, i, j))
    return nb2, nb3, ell, arr, viol


cdef inline Py_ssize_t _strip_task(Py_ssize_t s, const cnp.int32_t[::1] lmirror,
                                   Py_ssize_t n):
    cdef Py_ssize_t t = lmirror[s]
    return (n + 1 + s) if s < t else (n + 1 + t)


def solve_strips(Py_ssize_t n, const cnp.int64_t[::1] loff, const cnp.int32_t[::1] ladj,
                 const cnp.int32_t[::1] lmirror, const cnp.int32_t[::1] lowner,
                 const cnp.int32_t[::1] p_lab, const cnp.int32_t[::1] nb2,
                 const cnp.int32_t[::1] nb3):
    """Solve the vertical placement recurrence for nodes and contact strips.

    Works in label space.  A node rests on its deepest flanking strip; a strip
    between unrelated labels sits one row below the deepest thing under either
    endpoint.  Both families are evaluated with an explicit two-phase stack.
    Returns (ynode, ystrip): ynode is label-indexed, ystrip is slot-indexed
    with the value stored on both directions of each unrelated edge and 0 on
    tree edges.
    """
    cdef Py_ssize_t m2 = loff[n + 1]
    ynode = np.zeros(n + 1, dtype=np.int32)
    ystrip = np.zeros(m2, dtype=np.int32)
    cdef cnp.int32_t[::1] ynode_v = ynode
    cdef cnp.int32_t[::1] ystrip_v = ystrip
    cdef cnp.uint8_t[::1] state = np.zeros(n + 1 + m2, dtype=np.uint8)
    cdef Py_ssize_t cap = 2 * (n + m2) + 16
    cdef cnp.int32_t[::1] stack = np.empty(cap, dtype=np.int32)
    cdef Py_ssize_t sp = 0
    cdef Py_ssize_t lab, i, s, s0, packed, task, phase, st, nd, dep, c, best, v
    cdef Py_ssize_t r0, s2, dl, t, j0, t2, dr, j
    cdef Py_ssize_t[2] deps

    ynode_v[1] = 1
    state[1] = 2

    for lab in range(2, n + 1):
        stack[sp] = <cnp.int32_t> (lab << 1)
        sp += 1
    for i in range(2, n + 1):
        s0 = loff[i] + 1 + nb2[i] + nb3[i]
        for s in range(s0, loff[i + 1]):
            stack[sp] = <cnp.int32_t> (_strip_task(s, lmirror, n) << 1)
            sp += 1
    while sp:
        sp -= 1
        packed = stack[sp]
        task = packed >> 1
        phase = packed & 1
        if phase == 0:
            st = state[task]
            if st == 2:
                continue
            if st == 1:
                if task <= n:
                    raise CyclicDependency(f"placement of label {task} depends on itself")
                c = task - n - 1
                raise CyclicDependency(
                    f"strip between labels {lowner[c]} and {ladj[c]} depends on itself"
                )
            state[task] = 1
            if sp >= cap:
                raise InternalError("placement stack overflow")
            stack[sp] = <cnp.int32_t> (packed | 1)
            sp += 1
            if task <= n:
                nd = 0
                r0 = loff[task]
                if nb2[task] > 0:
                    deps[nd] = _strip_task(r0 + nb2[task], lmirror, n)
                    nd += 1
                s = r0 + 1 + nb2[task] + nb3[task]
                if s < loff[task + 1]:
                    deps[nd] = _strip_task(s, lmirror, n)
                    nd += 1
            else:
                c = task - n - 1
                i = lowner[c]
                j = ladj[c]
                r0 = loff[i]
                s2 = c + 1
                if s2 == loff[i + 1]:
                    s2 = r0
                deps[0] = p_lab[i] if s2 == r0 else _strip_task(s2, lmirror, n)
                t = lmirror[c]
                j0 = loff[j]
                t2 = t - 1
                deps[1] = p_lab[j] if t2 == j0 else _strip_task(t2, lmirror, n)
                nd = 2
            for i in range(nd):
                dep = deps[i]
                if state[dep] != 2:
                    if sp >= cap:
                        raise InternalError("placement stack overflow")
                    stack[sp] = <cnp.int32_t> (dep << 1)
                    sp += 1
        else:
            if task <= n:
                nd = 0
                r0 = loff[task]
                if nb2[task] > 0:
                    deps[nd] = _strip_task(r0 + nb2[task], lmirror, n)
                    nd += 1
                s = r0 + 1 + nb2[task] + nb3[task]
                if s < loff[task + 1]:
                    deps[nd] = _strip_task(s, lmirror, n)
                    nd += 1
                if nd == 0:
                    raise InternalError("node rests on no strip")
                best = 0
                for i in range(nd):
                    dep = deps[i]
                    if state[dep] != 2:
                        raise InternalError("placement dependency not resolved")
                    v = ynode_v[dep] if dep <= n else ystrip_v[dep - n - 1]
                    if v > best:
                        best = v
                ynode_v[task] = <cnp.int32_t> best
            else:
                c = task - n - 1
                i = lowner[c]
                j = ladj[c]
                r0 = loff[i]
                s2 = c + 1
                if s2 == loff[i + 1]:
                    s2 = r0
                dl = p_lab[i] if s2 == r0 else _strip_task(s2, lmirror, n)
                t = lmirror[c]
                j0 = loff[j]
                t2 = t - 1
                dr = p_lab[j] if t2 == j0 else _strip_task(t2, lmirror, n)
                best = 0
                for i in range(2):
                    dep = dl if i == 0 else dr
                    if state[dep] != 2:
                        raise InternalError("placement dependency not resolved")
                    v = ynode_v[dep] if dep <= n else ystrip_v[dep - n - 1]
                    if v > best:
                        best = v
                ystrip_v[c] = <cnp.int32_t> (best + 1)
                ystrip_v[lmirror[c]] = <cnp.int32_t> (best + 1)
            state[task] = 2
    return ynode, ystrip


def solve_bounds(Py_ssize_t n, const cnp.int32_t[::1] p_lab, const cnp.int32_t[::1] size,
                 const cnp.int32_t[::1] ell, const cnp.int32_t[::1] arr,
                 const cnp.int32_t[::1] sxl, const cnp.int32_t[::1] sxr,
                 Py_ssize_t width):
    """Resolve the widened horizontal bounds of every module body.

    First children extend left to the right bound of their parent's last
    smaller contact; last children extend right to the left bound of their
    parent's first larger contact; everyone else keeps the leaf-interval
    bounds.  The pass-through chains are followed iteratively.  Returns
    (bxl, bxr), label-indexed.
    """
    bxl = np.zeros(n + 1, dtype=np.int32)
    bxr = np.zeros(n + 1, dtype=np.int32)
    cdef cnp.int32_t[::1] bxl_v = bxl
    cdef cnp.int32_t[::1] bxr_v = bxr
    cdef cnp.uint8_t[:, ::1] state = np.zeros((2, n + 1), dtype=np.uint8)
    cdef cnp.uint8_t[::1] chain_w = np.empty(2 * n + 4, dtype=np.uint8)
    cdef cnp.int32_t[::1] chain_i = np.empty(2 * n + 4, dtype=np.int32)
    cdef Py_ssize_t start, which, cc, w, i, st, val, p, tgt, k

    state[0, 1] = 2
    state[1, 1] = 2
    bxl_v[1] = 0
    bxr_v[1] = <cnp.int32_t> width
    for start in range(2, n + 1):
        for which in range(2):
            if state[which, start]:
                continue
            cc = 0
            w = which
            i = start
            while True:
                st = state[w, i]
                if st == 2:
                    val = bxl_v[i] if w == 0 else bxr_v[i]
                    break
                if st == 1:
                    raise InternalError("module bound chain loops")
                state[w, i] = 1
                chain_w[cc] = <cnp.uint8_t> w
                chain_i[cc] = <cnp.int32_t> i
                cc += 1
                p = p_lab[i]
                if w == 0:
                    if i == p + 1:
                        if p == 1:
                            val = 0
                            break
                        tgt = ell[p]
                        if tgt < 2:
                            raise InternalError("module bound chain escapes")
                        w = 1
                        i = tgt
                        continue
                    val = sxl[i]
                    break
                else:
                    if i == n or i + size[i] == p + size[p]:
                        if i == n or p == 1:
                            val = width
                            break
                        tgt = arr[p]
                        if tgt < 2:
                            raise InternalError("module bound chain escapes")
                        w = 0
                        i = tgt
                        continue
                    val = sxr[i]
                    break
            for k in range(cc):
                if chain_w[k] == 0:
                    bxl_v[chain_i[k]] = <cnp.int32_t> val
                else:
                    bxr_v[chain_i[k]] = <cnp.int32_t> val
                state[chain_w[k], chain_i[k]] = 2
    return bxl, bxr
