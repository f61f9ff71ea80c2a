"""Euclidean Steiner constructions: three-point Fermat stars, minimum
spanning trees, an exact four-terminal solver, and a star-merging
heuristic for larger terminal sets in convex position.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial.distance import squareform, pdist

from .geometry import Point2, cross2

_TWO_THIRDS_PI = 2.0 * math.pi / 3.0


def _pt(p) -> Point2:
    return Point2(float(p[0]), float(p[1]))


def steiner_three_points(a, b, c) -> tuple[Point2 | None, float]:
    """Steiner minimal tree of three points.

    All angles below 2*pi/3: returns the Fermat-Torricelli star point and
    the star length sqrt(x^2 + y^2 - 2*x*y*cos(angle + pi/3)).  A wide
    angle degenerates the tree to the two edges at that vertex (no star
    point).  Collinear input returns the longest point-to-point span.
    """
    p = np.array([a, b, c], dtype=float)
    d = [math.dist(p[1], p[2]), math.dist(p[2], p[0]), math.dist(p[0], p[1])]
    scale = max(d)
    area2 = float(cross2(p[1] - p[0], p[2] - p[0]))
    if abs(area2) <= 1e-12 * scale * scale:
        return None, scale
    wide = _wide_vertex(p, d)
    if wide is not None:
        return None, d[(wide + 1) % 3] + d[(wide + 2) % 3]
    # length from the formula at vertex 0 (adjacent sides d[1], d[2])
    ang0 = _vertex_angle(p, 0)
    x, y = d[1], d[2]
    length = math.sqrt(x * x + y * y - 2.0 * x * y * math.cos(ang0 + math.pi / 3.0))
    return _fermat_construction(p), length


def _vertex_angle(p: np.ndarray, i: int) -> float:
    u = p[(i + 1) % 3] - p[i]
    v = p[(i + 2) % 3] - p[i]
    cosv = float(u @ v / (np.hypot(*u) * np.hypot(*v)))
    return math.acos(max(-1.0, min(1.0, cosv)))


def _wide_vertex(p: np.ndarray, d) -> int | None:
    """Index of a vertex with angle >= 2*pi/3, if any."""
    for i in range(3):
        if _vertex_angle(p, i) >= _TWO_THIRDS_PI - 1e-12:
            return i
    return None


def _fermat_construction(p: np.ndarray) -> Point2:
    """Intersection of the two Simpson lines (vertex to outward equilateral
    apex on the opposite side)."""
    lines = []
    for i in range(2):
        q, r = p[(i + 1) % 3], p[(i + 2) % 3]
        apex = _outward_apex(q, r, p[i])
        lines.append((p[i], apex - p[i]))
    (p0, u0), (p1, u1) = lines
    den = float(cross2(u0, u1))
    t = float(cross2(p1 - p0, u1)) / den
    return _pt(p0 + t * u0)


def _outward_apex(q: np.ndarray, r: np.ndarray, opposite: np.ndarray) -> np.ndarray:
    mid = (q + r) / 2.0
    h = math.sqrt(3.0) / 2.0
    e = r - q
    n = np.array([-e[1], e[0]])
    apex = mid + h * n
    if float((apex - mid) @ (opposite - mid)) > 0.0:
        apex = mid - h * n
    return apex


def fermat_point(a, b, c) -> Point2:
    """Point minimizing total distance to three points (may be one of them)."""
    p = np.array([a, b, c], dtype=float)
    d = [math.dist(p[1], p[2]), math.dist(p[2], p[0]), math.dist(p[0], p[1])]
    scale = max(d)
    if scale == 0.0:
        return _pt(p[0])
    area2 = float(cross2(p[1] - p[0], p[2] - p[0]))
    if abs(area2) <= 1e-12 * scale * scale:
        # collinear: the middle point minimizes
        axis = p[:, 0] if np.ptp(p[:, 0]) >= np.ptp(p[:, 1]) else p[:, 1]
        return _pt(p[int(np.argsort(axis)[1])])
    wide = _wide_vertex(p, d)
    if wide is not None:
        return _pt(p[wide])
    return _fermat_construction(p)


def fermat_total(a, b, c) -> float:
    """Minimum total distance from one junction point to three points."""
    f = fermat_point(a, b, c)
    return math.dist(f, a) + math.dist(f, b) + math.dist(f, c)


def euclidean_mst(points) -> tuple[list[tuple[int, int]], float]:
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n == 1:
        return [], 0.0
    dm = squareform(pdist(pts))
    tree = minimum_spanning_tree(dm).tocoo()
    edges = [(int(i), int(j)) for i, j in zip(tree.row, tree.col)]
    return edges, float(tree.data.sum())


def steiner_tree(points) -> tuple[list[Point2], list[tuple[int, int]], float, bool]:
    """Steiner tree of the terminal set.

    Exact for up to 4 terminals; beyond that an MST improved by greedy
    Fermat-star merging (an upper bound within the Steiner-ratio sandwich
    of the optimum).  Returns (nodes, edges, length, exact_flag); nodes
    start with the terminals, junction points follow.
    """
    pts = [_pt(p) for p in points]
    n = len(pts)
    if n < 2:
        raise ValueError("need at least 2 terminals")
    if n == 2:
        return pts, [(0, 1)], math.dist(pts[0], pts[1]), True
    if n == 3:
        sp, length = steiner_three_points(*pts)
        if sp is None:
            wide = _star_center_index(pts)
            edges = [(wide, (wide + 1) % 3), (wide, (wide + 2) % 3)]
            return pts, edges, length, True
        return pts + [sp], [(3, 0), (3, 1), (3, 2)], length, True
    if n == 4:
        return _steiner_four(pts)
    return _steiner_heuristic(pts)


def _star_center_index(pts) -> int:
    p = np.array(pts, dtype=float)
    d = [math.dist(p[1], p[2]), math.dist(p[2], p[0]), math.dist(p[0], p[1])]
    w = _wide_vertex(p, d)
    if w is not None:
        return w
    return int(np.argmax(d))  # collinear: middle point is opposite longest span


def _steiner_four(pts) -> tuple[list[Point2], list[tuple[int, int]], float, bool]:
    best_nodes, best_edges, best_len = _mst_as_tree(pts)
    diam = max(math.dist(a, b) for a in pts for b in pts)

    # full topologies: two junctions, one per terminal pair
    for pair1, pair2 in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        a, b = pts[pair1[0]], pts[pair1[1]]
        c, d = pts[pair2[0]], pts[pair2[1]]
        s1 = _pt(((a.x + b.x) / 2.0, (a.y + b.y) / 2.0))
        s2 = _pt(((c.x + d.x) / 2.0, (c.y + d.y) / 2.0))
        for _ in range(20000):
            n1 = fermat_point(a, b, s2)
            n2 = fermat_point(c, d, n1)
            move = max(math.dist(n1, s1), math.dist(n2, s2))
            s1, s2 = n1, n2
            if move < 1e-12 * diam:
                break
        length = (math.dist(a, s1) + math.dist(b, s1) + math.dist(s1, s2)
                  + math.dist(c, s2) + math.dist(d, s2))
        if length < best_len:
            nodes = list(pts) + [s1, s2]
            edges = [(pair1[0], 4), (pair1[1], 4), (4, 5), (pair2[0], 5), (pair2[1], 5)]
            best_nodes, best_edges, best_len = nodes, _drop_degenerate(nodes, edges, diam), length

    # three-terminal star plus a shortest edge from the remaining terminal
    for skip in range(4):
        tri = [i for i in range(4) if i != skip]
        sub = [pts[i] for i in tri]
        sub_nodes, sub_edges, sub_len, _ = steiner_tree(sub)
        attach = min(range(len(sub_nodes)), key=lambda k: math.dist(pts[skip], sub_nodes[k]))
        length = sub_len + math.dist(pts[skip], sub_nodes[attach])
        if length < best_len:
            nodes = list(pts) + [p for p in sub_nodes[3:]]
            remap = {k: (tri[k] if k < 3 else 4) for k in range(len(sub_nodes))}
            edges = [(remap[i], remap[j]) for i, j in sub_edges]
            edges.append((skip, remap[attach]))
            best_nodes, best_edges, best_len = nodes, edges, length
    return best_nodes, best_edges, best_len, True


def _drop_degenerate(nodes, edges, diam):
    """Collapse zero-length edges produced when a junction lands on a node."""
    tol = 1e-9 * diam
    alias = list(range(len(nodes)))

    def find(i):
        while alias[i] != i:
            alias[i] = alias[alias[i]]
            i = alias[i]
        return i

    for i, j in edges:
        if math.dist(nodes[i], nodes[j]) <= tol:
            alias[find(max(i, j))] = find(min(i, j))
    out = []
    for i, j in edges:
        fi, fj = find(i), find(j)
        if fi != fj:
            out.append((fi, fj))
    return out


def _mst_as_tree(pts):
    edges, length = euclidean_mst(pts)
    return list(pts), edges, length


def _steiner_heuristic(pts) -> tuple[list[Point2], list[tuple[int, int]], float, bool]:
    nodes, edges, _ = _mst_as_tree(pts)
    diam = 0.0
    arr = np.array(pts, dtype=float)
    diam = float(np.hypot(*(arr.max(axis=0) - arr.min(axis=0))))
    adj: dict[int, set[int]] = {i: set() for i in range(len(nodes))}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)

    for _ in range(10 * len(pts)):
        best = None
        for u in list(adj):
            nbrs = sorted(adj[u])
            for ai in range(len(nbrs)):
                for bi in range(ai + 1, len(nbrs)):
                    v, w = nbrs[ai], nbrs[bi]
                    cur = math.dist(nodes[u], nodes[v]) + math.dist(nodes[u], nodes[w])
                    new = fermat_total(nodes[u], nodes[v], nodes[w])
                    gain = cur - new
                    if gain > 1e-12 * diam and (best is None or gain > best[0]):
                        best = (gain, u, v, w)
        if best is None:
            break
        _, u, v, w = best
        center = fermat_point(nodes[u], nodes[v], nodes[w])
        adj[u].discard(v)
        adj[v].discard(u)
        adj[u].discard(w)
        adj[w].discard(u)
        cid = None
        for k in (u, v, w):
            if math.dist(center, nodes[k]) <= 1e-9 * diam:
                cid = k
                break
        if cid is None:
            cid = len(nodes)
            nodes.append(center)
            adj[cid] = set()
        for k in (u, v, w):
            if k != cid:
                adj[cid].add(k)
                adj[k].add(cid)

    out_edges = sorted({(min(i, j), max(i, j)) for i in adj for j in adj[i]})
    length = sum(math.dist(nodes[i], nodes[j]) for i, j in out_edges)
    return nodes, out_edges, length, False
