"""Naive generate-and-filter reference for tiny critical-graph searches.

Shares no code with the ear-based search: graphs are built as plain edge
sets, colorings are tried by brute force, planarity comes from networkx and
embeddings are found by running through rotation systems one by one.
Results are compared as abstract graphs with ring labels.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx


def _ring_cycles(ring_lengths):
    rings, start = [], 0
    for l in ring_lengths:
        rings.append(tuple(range(start, start + l)))
        start += l
    return rings, start


def _cycle_edges(r):
    return [tuple(sorted((r[i], r[(i + 1) % len(r)]))) for i in range(len(r))]


def _nx(vertices, edges):
    H = nx.Graph()
    H.add_nodes_from(vertices)
    H.add_edges_from(edges)
    return H


def _short_cycles(H, max_len):
    """All simple cycles of length <= max_len as vertex tuples (brute force over paths)."""
    out = set()
    nodes = sorted(H.nodes)
    for s in nodes:
        stack = [(s, (s,))]
        while stack:
            u, path = stack.pop()
            for w in H[u]:
                if w == s and len(path) >= 3:
                    cyc = path
                    i = cyc.index(min(cyc))
                    cyc = cyc[i:] + cyc[:i]
                    if cyc[1] > cyc[-1]:
                        cyc = (cyc[0],) + tuple(reversed(cyc[1:]))
                    out.add(cyc)
                elif w not in path and w > s and len(path) < max_len:
                    stack.append((w, path + (w,)))
    return out


def _girth_ok(H, floor):
    return not any(len(c) < floor for c in _short_cycles(H, floor - 1))


def _surely_contractible(H, cyc, rings):
    """True if the rings stay connected once the cycle is removed (then no drawing separates them)."""
    if len(rings) < 2:
        return True
    K = H.copy()
    K.add_edges_from((("apex", i), v) for i, r in enumerate(rings) for v in r)
    K.remove_nodes_from(cyc)
    return nx.has_path(K, ("apex", 0), ("apex", 1))


def _planar_with_rings(vertices, edges, rings):
    H = _nx(vertices, edges)
    for i, r in enumerate(rings):
        H.add_edges_from((("apex", i), v) for v in r)
    return nx.check_planarity(H)[0]


def _proper(col, edges):
    return all(col[u] != col[v] for u, v in edges)


def _extends(internal, edges, pre):
    for cs in product(range(3), repeat=len(internal)):
        col = dict(pre)
        col.update(zip(internal, cs))
        if _proper(col, edges):
            return True
    return False


def brute_critical(vertices, edges, rings) -> bool:
    ring_v = [v for r in rings for v in r]
    ring_e = {e for r in rings for e in _cycle_edges(r)}
    internal = [v for v in vertices if v not in set(ring_v)]
    others = [e for e in edges if e not in ring_e]
    if not others:
        return False
    need = set(others)
    for cs in product(range(3), repeat=len(ring_v)):
        pre = dict(zip(ring_v, cs))
        if not _proper(pre, ring_e):
            continue
        if _extends(internal, edges, pre):
            continue
        for e in list(need):
            if _extends(internal, [f for f in edges if f != e], pre):
                need.discard(e)
        if not need:
            return True
    return False


# -- embeddings by exhaustion ------------------------------------------------------------


def _faces(rot):
    seen, faces = set(), []
    for v in rot:
        for w in rot[v]:
            if (v, w) in seen:
                continue
            walk, d = [], (v, w)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                a, b = d
                r = rot[b]
                d = (b, r[(r.index(a) + 1) % len(r)])
            faces.append(walk)
    return faces


def _rotations(adj):
    """Every rotation system (first neighbour fixed, the rest permuted)."""
    vs = sorted(adj)
    choices = []
    for v in vs:
        ns = sorted(adj[v])
        if len(ns) <= 2:
            choices.append([tuple(ns)])
        else:
            choices.append([(ns[0],) + p for p in permutations(ns[1:])])
    for pick in product(*choices):
        yield dict(zip(vs, pick))


def _side_faces(faces, cyc):
    """Union-find of faces across edges not on the cycle; returns (face index of dart, root fn)."""
    on = {frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))}
    where = {d: i for i, f in enumerate(faces) for d in f}
    parent = list(range(len(faces)))

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for (u, w), i in where.items():
        if frozenset((u, w)) not in on:
            a, b = root(i), root(where[(w, u)])
            if a != b:
                parent[a] = b
    return where, root


def _valid_embedding(adj, rings, short, free_cuff):
    """Search rotation systems for a sphere map with each ring a face and every short cycle
    having holes on both sides (rings, plus a free hole placed in some face)."""
    edges = {frozenset((u, w)) for u in adj for w in adj[u]}
    V, E = len(adj), len(edges)
    for rot in _rotations(adj):
        faces = _faces(rot)
        if V - E + len(faces) != 2:
            continue
        ring_faces = []
        for r in rings:
            fs = [i for i, f in enumerate(faces)
                  if len(f) == len(r) and {x for x, _ in f} == set(r)]
            if not fs:
                break
            ring_faces.append(fs)
        if len(ring_faces) != len(rings):
            continue
        for chosen in product(*ring_faces):
            if len(set(chosen)) != len(chosen):
                continue
            hole_options = [None]
            if free_cuff:
                hole_options = [i for i in range(len(faces)) if i not in chosen]
            for hole in hole_options:
                holes = list(chosen) + ([hole] if hole is not None else [])
                good = True
                for cyc in short:
                    where, root = _side_faces(faces, cyc)
                    a, b = cyc[0], cyc[1]
                    left, right = root(where[(a, b)]), root(where[(b, a)])
                    hs = {root(h) for h in holes}
                    if not (left in hs and right in hs):
                        good = False
                        break
                if good:
                    return True
    return False


def _embeddable(vertices, edges, rings, contractible_limit):
    """Ring faces prescribed; components of a two-ring graph are checked with a free hole."""
    H = _nx(vertices, edges)
    comps = list(nx.connected_components(H))
    for comp in comps:
        rs = [r for r in rings if set(r) <= comp]
        if not rs:
            return False
        sub = H.subgraph(comp)
        adj = {v: set(sub[v]) for v in sub}
        short = [c for c in _short_cycles(sub, contractible_limit)] if contractible_limit else []
        free = len(rings) == 2 and len(rs) == 1
        if not _valid_embedding(adj, rs, short, free):
            return False
    return True


# -- generation --------------------------------------------------------------------------


def naive_critical(topology, ring_lengths, girth_floor, max_internal, no_contractible_short=True,
                   induced_ring=False) -> list:
    """Abstract (vertices, edges, rings) triples of every critical graph within budget."""
    rings, n_ring = _ring_cycles(ring_lengths)
    base = [e for r in rings for e in _cycle_edges(r)]
    ring_v = list(range(n_ring))
    limit = 4 if no_contractible_short else 0
    extra = []  # candidate edges among ring vertices
    for u, v in combinations(ring_v, 2):
        if (u, v) in base:
            continue
        same = any(u in r and v in r for r in rings)
        if same and induced_ring:
            continue
        extra.append((u, v))
    out = []

    def feasible(verts, edges):
        H = _nx(verts, edges)
        if not _girth_ok(H, girth_floor):
            return False
        if limit and topology == "cylinder":
            for c in _short_cycles(H, limit):
                if _surely_contractible(H, c, rings):
                    return False
        elif limit and topology == "disk":
            if any(len(c) <= limit for c in _short_cycles(H, limit)):
                return False
        return _planar_with_rings(verts, edges, rings)

    def finish(verts, edges):
        internal = [v for v in verts if v >= n_ring]
        deg = {v: 0 for v in verts}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        # a vertex of degree <= 2 can always be colored last, so it never makes a precoloring fail
        if any(deg[v] < 3 for v in internal):
            return
        if not brute_critical(verts, edges, rings):
            return
        if not _embeddable(verts, edges, rings, limit if topology == "cylinder" else 0):
            return
        out.append((tuple(verts), tuple(sorted(edges)), tuple(rings)))

    def dedupe(items):
        # isomorphic labelled graphs have isomorphic extensions, so one per class is kept
        buckets = {}
        for verts, edges in items:
            H = abstract_key(verts, edges, rings)
            h = nx.weisfeiler_lehman_graph_hash(H, node_attr="ring_s", edge_attr="ring_s")
            reps = buckets.setdefault(h, [])
            if not any(_iso(H, K) for K, _ in reps):
                reps.append((H, (verts, edges)))
        return [x for h in sorted(buckets) for _, x in buckets[h]]

    level = []
    for size in range(len(extra) + 1):
        for chords in combinations(extra, size):
            edges = base + list(chords)
            if feasible(ring_v, edges):
                level.append((list(ring_v), edges))
    level = dedupe(level)
    for n in range(max_internal + 1):
        for verts, edges in level:
            finish(verts, edges)
        if n == max_internal:
            break
        v = n_ring + n
        nxt = []
        for verts, edges in level:
            for size in range(1, len(verts) + 1):
                for nb in combinations(verts, size):
                    # vertices join in an order where each meets an earlier one
                    e2 = edges + [(u, v) for u in nb]
                    if feasible(verts + [v], e2):
                        nxt.append((verts + [v], e2))
        level = dedupe(nxt)
    return out


def abstract_key(vertices, edges, rings):
    """Networkx graph with ring labels, for isomorphism tests."""
    H = _nx(vertices, edges)
    ring_e = {e for r in rings for e in _cycle_edges(r)}
    for v in H.nodes:
        H.nodes[v]["ring"] = 0
    for i, r in enumerate(rings):
        for v in r:
            H.nodes[v]["ring"] = len(r)
    for u, v in H.edges:
        H.edges[u, v]["ring"] = tuple(sorted((u, v))) in ring_e
    for v in H.nodes:
        H.nodes[v]["ring_s"] = str(H.nodes[v]["ring"])
    for u, v in H.edges:
        H.edges[u, v]["ring_s"] = str(H.edges[u, v]["ring"])
    return H


def same_classes(a: list, b: list) -> bool:
    """Whether two lists of labelled graphs cover the same isomorphism classes."""

    def reps(items):
        out = []
        for H in items:
            if not any(_iso(H, K) for K in out):
                out.append(H)
        return out

    ra, rb = reps(a), reps(b)
    if len(ra) != len(rb):
        return False
    return all(any(_iso(H, K) for K in rb) for H in ra)


def _iso(H, K):
    nm = lambda x, y: x.get("ring", 0) == y.get("ring", 0)
    em = lambda x, y: x["ring"] == y["ring"]
    return nx.is_isomorphic(H, K, node_match=nm, edge_match=em)


def class_count(items: list) -> int:
    reps = []
    for H in items:
        if not any(_iso(H, K) for K in reps):
            reps.append(H)
    return len(reps)
