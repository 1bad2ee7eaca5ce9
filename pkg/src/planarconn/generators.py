"""Random embedded planar instance generators.

All generators are deterministic in their seed so corpora can be
reproduced exactly.
"""

from __future__ import annotations

import random

import numpy as np
from scipy.spatial import Delaunay

from planarconn.embed import EmbeddedMultigraph, from_straight_line_drawing


def random_delaunay(n: int, seed: int) -> EmbeddedMultigraph:
    """The Delaunay triangulation of n uniform random points in the
    unit square, embedded by its straight-line drawing."""
    if n < 4:
        raise ValueError("need at least 4 points")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for s in tri.simplices:
        for i in range(3):
            a, b = int(s[i]), int(s[(i + 1) % 3])
            edges.add((min(a, b), max(a, b)))
    pos = {i: (float(pts[i, 0]), float(pts[i, 1])) for i in range(n)}
    elist = [(k, u, w) for k, (u, w) in enumerate(sorted(edges))]
    return from_straight_line_drawing(pos, elist)


def thin(g: EmbeddedMultigraph, rng: random.Random,
         max_face_degree: int = 8,
         keep_biconnected: bool = False) -> EmbeddedMultigraph:
    """Randomly delete edges of a triangulation while no face grows
    beyond ``max_face_degree``; with ``keep_biconnected`` only
    deletions that leave the graph biconnected are applied."""
    from planarconn.embed import dart
    from planarconn.oracle import is_biconnected

    g = g.copy()
    ids = sorted(g.edge_ids())
    rng.shuffle(ids)
    for e in ids:
        d0, d1 = dart(e, 0), dart(e, 1)
        if g.same_face(d0, d1):
            continue  # a bridge or loop: deleting it would disconnect
        merged = len(g.trace_face(d0)) + len(g.trace_face(d1)) - 2
        if merged > max_face_degree:
            continue
        if keep_biconnected:
            h = g.copy()
            h.delete_edge(e)
            if not is_biconnected(h):
                continue
            g = h
        else:
            g.delete_edge(e)
    return g


def random_planar(n: int, seed: int,
                  max_face_degree: int = 8,
                  keep_biconnected: bool = True) -> EmbeddedMultigraph:
    """A random embedded planar graph: a random Delaunay triangulation
    thinned by random edge deletions under a face-degree bound."""
    g = random_delaunay(n, seed)
    return thin(g, random.Random(seed ^ 0x5EED),
                max_face_degree=max_face_degree,
                keep_biconnected=keep_biconnected)
