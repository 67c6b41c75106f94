"""Pure Python engine kernels.

These are the reference implementations of the seven hot loops behind contour
peeling, edge coloring, preorder labeling, neighbor block classification and
the two placement solvers.  A compiled twin of this module may be built as
ostplan.engine._kernels; both expose the same names and array contracts, and
the package picks one at import time.

Kernels take numpy arrays plus scalars and return numpy int32 arrays (or, for
the checkers, plain lists of finding tuples).  Inputs are copied to Python
lists up front because element access on numpy arrays is slow from the
interpreter loop.
"""

from __future__ import annotations

import numpy as np

from ..errors import CyclicDependency, InternalError


def canonical_peel(n, off, adj, v1, v2, vn):
    """Return a canonical construction order for a triangulation.

    The order starts with the anchor pair (v1, v2), ends with vn, and is found
    backwards: repeatedly remove a node that sits on the current outer contour,
    is not an anchor, and has exactly two contour neighbors, then reverse the
    removal sequence.  The contour is kept as a doubly linked cycle oriented
    the same way the outer face traces.
    """
    off_l = off.tolist()
    adj_l = adj.tolist()
    alive = [True] * n
    onb = [False] * n
    nxt = [0] * n
    prv = [0] * n
    bc = [0] * n
    for a, b in ((v1, v2), (v2, vn), (vn, v1)):
        nxt[a] = b
        prv[b] = a
    for v in (v1, v2, vn):
        onb[v] = True
        bc[v] = 2
    stack = [vn]
    peel = []
    alive_left = n
    while alive_left > 2:
        if not stack:
            raise InternalError("no removable contour node left")
        v = stack.pop()
        if not alive[v] or not onb[v] or v == v1 or v == v2 or bc[v] != 2:
            continue
        a = prv[v]
        b = nxt[v]
        row0 = off_l[v]
        d = off_l[v + 1] - row0
        ia = -1
        for t in range(d):
            if adj_l[row0 + t] == a:
                ia = t
                break
        if ia < 0:
            raise InternalError("contour predecessor missing from rotation")
        # Walk the rotation clockwise from the predecessor to the successor.
        # The nodes in between are exactly the neighbors that join the contour
        # when v is removed, already in contour order.
        chain = [a]
        t = ia
        steps = 0
        while True:
            t = t - 1 if t else d - 1
            x = adj_l[row0 + t]
            if not alive[x]:
                raise InternalError("dead node inside a contour fan")
            chain.append(x)
            if x == b:
                break
            steps += 1
            if steps > d:
                raise InternalError("contour fan does not close")
        na = 0
        for t in range(d):
            if alive[adj_l[row0 + t]]:
                na += 1
        if len(chain) != na:
            raise InternalError("contour fan skipped a live neighbor")
        alive[v] = False
        onb[v] = False
        alive_left -= 1
        peel.append(v)
        for i in range(len(chain) - 1):
            x = chain[i]
            y = chain[i + 1]
            nxt[x] = y
            prv[y] = x
        bc[a] -= 1
        if bc[a] == 2:
            stack.append(a)
        bc[b] -= 1
        if bc[b] == 2:
            stack.append(b)
        for x in chain[1:-1]:
            onb[x] = True
            rx = off_l[x]
            dx = off_l[x + 1] - rx
            c = 0
            for t in range(dx):
                y = adj_l[rx + t]
                if alive[y] and onb[y]:
                    c += 1
                    bc[y] += 1
                    if bc[y] == 2:
                        stack.append(y)
            bc[x] = c
            if c == 2:
                stack.append(x)
    order = [v1, v2]
    order.extend(reversed(peel))
    return np.asarray(order, dtype=np.int32)


def realizer_colors(n, off, adj, order):
    """Color the interior edges by replaying a canonical order forwards.

    Nodes are attached one at a time to a growing contour.  Each attachment
    arc contributes three kinds of directed parent pointers: toward the first
    arc node (pp), toward the last arc node (pn), and from every covered arc
    node toward the newcomer (pm).  Exterior edges stay uncolored.  Returns
    (pp, pn, pm) as int32 arrays with -1 where unset.
    """
    off_l = off.tolist()
    adj_l = adj.tolist()
    order_l = order.tolist()
    v1 = order_l[0]
    v2 = order_l[1]
    vn = order_l[n - 1]
    pp = [-1] * n
    pn = [-1] * n
    pm = [-1] * n
    ingr = [False] * n
    onb = [False] * n
    nxt = [0] * n
    prv = [0] * n
    mark = [False] * n
    ingr[v1] = ingr[v2] = True
    onb[v1] = onb[v2] = True
    nxt[v1] = v2
    prv[v2] = v1
    nxt[v2] = v1
    prv[v1] = v2
    covered = 0
    for k in range(2, n):
        v = order_l[k]
        if ingr[v]:
            raise InternalError("order repeats a node")
        row0 = off_l[v]
        d = off_l[v + 1] - row0
        arc = []
        for t in range(d):
            x = adj_l[row0 + t]
            if ingr[x]:
                if not onb[x]:
                    raise InternalError("attachment to a covered node")
                arc.append(x)
                mark[x] = True
        if len(arc) < 2:
            raise InternalError("attachment arc is too short")
        cp = -1
        for x in arc:
            p = prv[x]
            if not mark[p] or (p == v1 and x == v2):
                if cp >= 0:
                    for y in arc:
                        mark[y] = False
                    raise InternalError("attachment arc is not contiguous")
                cp = x
        if cp < 0:
            for y in arc:
                mark[y] = False
            raise InternalError("attachment arc has no start")
        walk = [cp]
        x = cp
        while len(walk) < len(arc):
            if x == v1:
                for y in arc:
                    mark[y] = False
                raise InternalError("attachment arc crosses the anchor edge")
            x = nxt[x]
            if not mark[x]:
                for y in arc:
                    mark[y] = False
                raise InternalError("attachment arc is not contiguous")
            walk.append(x)
        for y in arc:
            mark[y] = False
        cq = walk[-1]
        for x in walk[1:-1]:
            onb[x] = False
            pm[x] = v
            covered += 1
        nxt[cp] = v
        prv[v] = cp
        nxt[v] = cq
        prv[cq] = v
        ingr[v] = True
        onb[v] = True
        if k < n - 1:
            pp[v] = cp
            pn[v] = cq
    if covered != n - 3:
        raise InternalError("coloring did not cover the interior")
    if n > 3 and (nxt[v2] != vn or nxt[vn] != v1):
        raise InternalError("final contour is not the outer triangle")
    return (
        np.asarray(pp, dtype=np.int32),
        np.asarray(pn, dtype=np.int32),
        np.asarray(pm, dtype=np.int32),
    )


def realizer_check(n, off, adj, mirror, p0, p1, p2, r0, r1, r2):
    """Verify the local and global laws of a three-tree edge coloring.

    Returns a list of (code, a, b) tuples, empty when the coloring is valid.
    Codes: "RootHasParent", "MissingParent", "ParentNotNeighbor",
    "RepeatedParent", "ColoredExteriorEdge", "EdgeColorCount",
    "ChiralityMismatch", "ArcColor", "RootInColor", "ColorCycle".
    """
    off_l = off.tolist()
    adj_l = adj.tolist()
    mir_l = mirror.tolist()
    par = (p0.tolist(), p1.tolist(), p2.tolist())
    roots = (r0, r1, r2)
    out = []
    is_root = [False] * n
    for r in roots:
        is_root[r] = True
    m2 = off_l[n]
    slot_color = [-1] * m2
    for x in range(n):
        if is_root[x]:
            for c in range(3):
                if par[c][x] != -1:
                    out.append(("RootHasParent", x, c))
            continue
        seen = []
        for c in range(3):
            y = par[c][x]
            if y < 0 or y >= n:
                out.append(("MissingParent", x, c))
                continue
            if y in seen:
                out.append(("RepeatedParent", x, y))
                continue
            seen.append(y)
            s = -1
            for t in range(off_l[x], off_l[x + 1]):
                if adj_l[t] == y:
                    s = t
                    break
            if s < 0:
                out.append(("ParentNotNeighbor", x, y))
                continue
            slot_color[s] = c
    for s in range(m2):
        t = mir_l[s]
        if t < s:
            continue
        cnt = (slot_color[s] >= 0) + (slot_color[t] >= 0)
        x = adj_l[t]
        y = adj_l[s]
        if is_root[x] and is_root[y]:
            if cnt:
                out.append(("ColoredExteriorEdge", x, y))
        elif cnt != 1:
            out.append(("EdgeColorCount", x, y))
    chir = 0
    for x in range(n):
        if is_root[x]:
            continue
        row0 = off_l[x]
        d = off_l[x + 1] - row0
        pos = [-1, -1, -1]
        bad = False
        for t in range(d):
            c = slot_color[row0 + t]
            if c >= 0:
                if pos[c] >= 0:
                    bad = True
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
        cyc = (0, here, 3 - here)
        for a in range(3):
            ca = cyc[a]
            cb = cyc[(a + 1) % 3]
            third = 3 - ca - cb
            steps = (pos[cb] - pos[ca]) % d
            for i in range(1, steps):
                s = row0 + (pos[ca] + i) % d
                inc = slot_color[mir_l[s]]
                if inc < 0:
                    continue
                if inc != third:
                    out.append(("ArcColor", x, adj_l[s]))
    for ci in range(3):
        r = roots[ci]
        for t in range(off_l[r], off_l[r + 1]):
            y = adj_l[t]
            if is_root[y]:
                continue
            if slot_color[mir_l[t]] != ci:
                out.append(("RootInColor", r, y))
    for c in range(3):
        state = bytearray(n)
        for x0 in range(n):
            if state[x0] or is_root[x0]:
                continue
            path = []
            x = x0
            while 0 <= x < n and not is_root[x] and state[x] == 0:
                state[x] = 1
                path.append(x)
                x = par[c][x]
            if 0 <= x < n and not is_root[x] and state[x] == 1:
                out.append(("ColorCycle", x, c))
            for y in path:
                state[y] = 2
    return out


def preorder_tree(n, off, adj, mirror, parent, root, anchor_pos):
    """Label a rooted spanning tree in rotation order.

    Children of each node are scanned counterclockwise starting just past the
    parent slot (past the anchor slot at the root) and visited depth first,
    which makes labels a preorder.  Returns (label, order, pos_parent, depth,
    size, visited): label is node-indexed and 1-based with 0 for unreached
    nodes, order/depth/size are label-indexed with slot 0 unused, pos_parent
    is the row-local slot of the parent within each node's rotation, and
    visited counts reached nodes.
    """
    off_l = off.tolist()
    adj_l = adj.tolist()
    mir_l = mirror.tolist()
    par_l = parent.tolist()
    label = [0] * n
    order = [-1] * (n + 1)
    posp = [-1] * n
    depth = [0] * (n + 1)
    size = [1] * (n + 1)
    size[0] = 0
    dn = [0] * n
    stack = [root]
    nxt_label = 0
    while stack:
        x = stack.pop()
        nxt_label += 1
        label[x] = nxt_label
        order[nxt_label] = x
        depth[nxt_label] = dn[x]
        row0 = off_l[x]
        d = off_l[x + 1] - row0
        if x == root:
            base = anchor_pos
            count = d
        else:
            base = posp[x] + 1
            count = d - 1
        kids = []
        for i in range(count):
            s = row0 + (base + i) % d
            y = adj_l[s]
            if par_l[y] == x and label[y] == 0 and y != root:
                posp[y] = mir_l[s] - off_l[y]
                dn[y] = dn[x] + 1
                kids.append(y)
        for y in reversed(kids):
            stack.append(y)
    visited = nxt_label
    for lab in range(visited, 1, -1):
        x = order[lab]
        p = par_l[x]
        if 0 <= p < n and label[p] > 0:
            size[label[p]] += size[lab]
    return (
        np.asarray(label, dtype=np.int32),
        np.asarray(order, dtype=np.int32),
        np.asarray(posp, dtype=np.int32),
        np.asarray(depth, dtype=np.int32),
        np.asarray(size, dtype=np.int32),
        visited,
    )


def annotate_blocks(n, loff, ladj, p_lab, size):
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
    loff_l = loff.tolist()
    ladj_l = ladj.tolist()
    p_l = p_lab.tolist()
    size_l = size.tolist()
    nb2 = [0] * (n + 1)
    nb3 = [0] * (n + 1)
    ell = [0] * (n + 1)
    arr = [0] * (n + 1)
    viol = []
    for i in range(1, n + 1):
        r0 = loff_l[i]
        r1 = loff_l[i + 1]
        start = r0 if i == 1 else r0 + 1
        phase = 2
        for s in range(start, r1):
            j = ladj_l[s]
            if j < i:
                if j < i < j + size_l[j]:
                    viol.append((0, i, j))
                    continue
                cls = 2
            elif i < j < i + size_l[i]:
                if p_l[j] != i:
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
                nb2[i] += 1
                ell[i] = j
            elif cls == 3:
                nb3[i] += 1
            elif arr[i] == 0:
                arr[i] = j
    for i in range(3, n + 1):
        if nb2[i] == 0:
            viol.append((3, i, 0))
    for i in range(2, n):
        d = loff_l[i + 1] - loff_l[i]
        if d - 1 - nb2[i] - nb3[i] <= 0:
            viol.append((4, i, 0))
    if not viol:
        for i in range(2, n + 1):
            r0 = loff_l[i]
            last_s = r0 + nb2[i]
            for s in range(r0 + 1, last_s + 1):
                j = ladj_l[s]
                last = s == last_s
                if j == 2 and i == n:
                    if not (last and arr[2] == n):
                        viol.append((5, i, j))
                elif last == (arr[j] == i):
                    viol.append((5, i, j))
    return (
        np.asarray(nb2, dtype=np.int32),
        np.asarray(nb3, dtype=np.int32),
        np.asarray(ell, dtype=np.int32),
        np.asarray(arr, dtype=np.int32),
        viol,
    )


def solve_strips(n, loff, ladj, lmirror, lowner, p_lab, nb2, nb3):
    """Solve the vertical placement recurrence for nodes and contact strips.

    Works in label space.  A node rests on its deepest flanking strip; a strip
    between unrelated labels sits one row below the deepest thing under either
    endpoint.  Both families are evaluated with an explicit two-phase stack.
    Returns (ynode, ystrip): ynode is label-indexed, ystrip is slot-indexed
    with the value stored on both directions of each unrelated edge and 0 on
    tree edges.
    """
    loff_l = loff.tolist()
    ladj_l = ladj.tolist()
    lmir_l = lmirror.tolist()
    lown_l = lowner.tolist()
    p_l = p_lab.tolist()
    nb2_l = nb2.tolist()
    nb3_l = nb3.tolist()
    m2 = loff_l[n + 1]
    ynode = [0] * (n + 1)
    ystrip = [0] * m2
    state = bytearray(n + 1 + m2)
    ynode[1] = 1
    state[1] = 2

    def strip_task(s):
        t = lmir_l[s]
        return (n + 1 + s) if s < t else (n + 1 + t)

    def node_deps(lab):
        deps = []
        r0 = loff_l[lab]
        if nb2_l[lab] > 0:
            deps.append(strip_task(r0 + nb2_l[lab]))
        s = r0 + 1 + nb2_l[lab] + nb3_l[lab]
        if s < loff_l[lab + 1]:
            deps.append(strip_task(s))
        return deps

    def strip_deps(c):
        i = lown_l[c]
        j = ladj_l[c]
        r0 = loff_l[i]
        s2 = c + 1
        if s2 == loff_l[i + 1]:
            s2 = r0
        dl = p_l[i] if s2 == r0 else strip_task(s2)
        t = lmir_l[c]
        j0 = loff_l[j]
        t2 = t - 1
        dr = p_l[j] if t2 == j0 else strip_task(t2)
        return (dl, dr)

    stack = []
    for lab in range(2, n + 1):
        stack.append(lab << 1)
    for i in range(2, n + 1):
        s0 = loff_l[i] + 1 + nb2_l[i] + nb3_l[i]
        for s in range(s0, loff_l[i + 1]):
            stack.append(strip_task(s) << 1)
    while stack:
        packed = stack.pop()
        task = packed >> 1
        phase = packed & 1
        if phase == 0:
            st = state[task]
            if st == 2:
                continue
            if st == 1:
                raise CyclicDependency(_strip_cycle_message(task, n, lown_l, ladj_l))
            state[task] = 1
            stack.append(packed | 1)
            deps = node_deps(task) if task <= n else strip_deps(task - n - 1)
            for dep in deps:
                if state[dep] != 2:
                    stack.append(dep << 1)
        else:
            if task <= n:
                deps = node_deps(task)
                if not deps:
                    raise InternalError("node rests on no strip")
                best = 0
                for dep in deps:
                    if state[dep] != 2:
                        raise InternalError("placement dependency not resolved")
                    v = ynode[dep] if dep <= n else ystrip[dep - n - 1]
                    if v > best:
                        best = v
                ynode[task] = best
            else:
                c = task - n - 1
                dl, dr = strip_deps(c)
                best = 0
                for dep in (dl, dr):
                    if state[dep] != 2:
                        raise InternalError("placement dependency not resolved")
                    v = ynode[dep] if dep <= n else ystrip[dep - n - 1]
                    if v > best:
                        best = v
                ystrip[c] = best + 1
                ystrip[lmir_l[c]] = best + 1
            state[task] = 2
    return (
        np.asarray(ynode, dtype=np.int32),
        np.asarray(ystrip, dtype=np.int32),
    )


def _strip_cycle_message(task, n, lown_l, ladj_l):
    if task <= n:
        return f"placement of label {task} depends on itself"
    c = task - n - 1
    return f"strip between labels {lown_l[c]} and {ladj_l[c]} depends on itself"


def solve_bounds(n, p_lab, size, ell, arr, sxl, sxr, width):
    """Resolve the widened horizontal bounds of every module body.

    First children extend left to the right bound of their parent's last
    smaller contact; last children extend right to the left bound of their
    parent's first larger contact; everyone else keeps the leaf-interval
    bounds.  The pass-through chains are followed iteratively.  Returns
    (bxl, bxr), label-indexed.
    """
    p_l = p_lab.tolist()
    size_l = size.tolist()
    ell_l = ell.tolist()
    arr_l = arr.tolist()
    sxl_l = sxl.tolist()
    sxr_l = sxr.tolist()
    bxl = [0] * (n + 1)
    bxr = [0] * (n + 1)
    state = (bytearray(n + 1), bytearray(n + 1))
    vals = (bxl, bxr)
    state[0][1] = 2
    state[1][1] = 2
    bxl[1] = 0
    bxr[1] = width
    for start in range(2, n + 1):
        for which in (0, 1):
            if state[which][start]:
                continue
            chain = []
            w = which
            i = start
            while True:
                st = state[w][i]
                if st == 2:
                    val = vals[w][i]
                    break
                if st == 1:
                    raise InternalError("module bound chain loops")
                state[w][i] = 1
                chain.append((w, i))
                p = p_l[i]
                if w == 0:
                    if i == p + 1:
                        if p == 1:
                            val = 0
                            break
                        tgt = ell_l[p]
                        if tgt < 2:
                            raise InternalError("module bound chain escapes")
                        w, i = 1, tgt
                        continue
                    val = sxl_l[i]
                    break
                else:
                    if i == n or i + size_l[i] == p + size_l[p]:
                        if i == n or p == 1:
                            val = width
                            break
                        tgt = arr_l[p]
                        if tgt < 2:
                            raise InternalError("module bound chain escapes")
                        w, i = 0, tgt
                        continue
                    val = sxr_l[i]
                    break
            for w2, i2 in chain:
                vals[w2][i2] = val
                state[w2][i2] = 2
    return (
        np.asarray(bxl, dtype=np.int32),
        np.asarray(bxr, dtype=np.int32),
    )
