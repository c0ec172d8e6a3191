"""Independent brute-force oracles used to cross-check the main algorithms.

The extension-group oracle counts extensions directly: an extension of C by A
is a representation on the spaces A_v + C_v whose arrow maps are block upper
triangular; the strictly upper blocks form a cocycle constrained linearly by
the algebra relations, and coboundaries come from block-triangular base
change.  No syzygies, covers, or approximations are involved.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import Rep, path_endpoints


def _eval_path(m: Rep, path, start: str) -> np.ndarray:
    """Matrix of a (possibly empty) path starting at `start`."""
    mat = la.eye(m.dim_at(start))
    for aid in path:
        mat = la.matmul(m.arrow_maps[aid], mat, m.algebra.p)
    return mat


def _t_layout(c: Rep, a: Rep) -> list[tuple[str, int, int]]:
    """Unknown blocks t_arrow: C_src -> A_tgt, flattened row-major."""
    alg = a.algebra
    layout = []
    for aid, src, tgt in alg.quiver.arrows:
        layout.append((aid, a.dim_at(tgt), c.dim_at(src)))
    return layout


def _path_block_rows(c: Rep, a: Rep, path, layout, offsets, coeff, rows):
    """Append the linear forms (in t) of the upper block of coeff * path."""
    alg = a.algebra
    p = alg.p
    q = alg.quiver
    src, tgt = path_endpoints(q, path)
    nrows, ncols = a.dim_at(tgt), c.dim_at(src)
    total = sum(r * cdim for _, r, cdim in layout)
    # entries[i, j] is a length-`total` vector: the linear form in t giving
    # the (i, j) entry of the upper block of this path's evaluation
    entries = np.zeros((nrows, ncols, total), dtype=np.int64)
    # path applied left to right: value = M_{a_k} ... M_{a_1}; upper block =
    # sum_k A(suffix after k) t_{a_k} C(prefix before k)
    blocks = {aid: (r, cdim) for aid, r, cdim in layout}
    for k, aid in enumerate(path):
        cpre = _eval_path(c, path[:k], src)
        _, aid_tgt = path_endpoints(q, (aid,))
        asuf = _eval_path(a, path[k + 1 :], aid_tgt)
        off = offsets[aid]
        tr, tc = blocks[aid]
        if tr == 0 or tc == 0:
            continue
        # entry (i, j) of asuf @ T @ cpre = sum_{u,v} asuf[i,u] T[u,v] cpre[v,j]
        for u in range(tr):
            for v in range(tc):
                contrib = np.outer(asuf[:, u], cpre[v, :]) % p
                entries[:, :, off + u * tc + v] = (
                    entries[:, :, off + u * tc + v] + coeff * contrib
                ) % p
    for i in range(nrows):
        for j in range(ncols):
            rows.append(entries[i, j, :] % p)


def ext1_dim_bruteforce(c: Rep, a: Rep) -> int:
    """dim Ext^1(C, A) by cocycles modulo coboundaries."""
    alg = a.algebra
    p = alg.p
    layout = _t_layout(c, a)
    offsets = {}
    pos = 0
    for aid, r, cdim in layout:
        offsets[aid] = pos
        pos += r * cdim
    total = pos
    if total == 0:
        return 0
    # relation constraints: group relation terms by shared endpoints
    rows: list[np.ndarray] = []
    for rel in alg.relations:
        src, tgt = path_endpoints(alg.quiver, rel[0][1])
        nrows, ncols = a.dim_at(tgt), c.dim_at(src)
        if nrows == 0 or ncols == 0:
            continue
        acc = np.zeros((nrows * ncols, total), dtype=np.int64)
        for coeff, path in rel:
            tmp_rows: list[np.ndarray] = []
            _path_block_rows(c, a, path, layout, offsets, coeff % p, tmp_rows)
            acc = (acc + np.array(tmp_rows, dtype=np.int64)) % p
        rows.extend(acc)
    if rows:
        constraint = np.array(rows, dtype=np.int64) % p
        z_dim = total - la.rank(constraint, p)
    else:
        z_dim = total
    # coboundary map: h = (h_v: C_v -> A_v) |-> (A_arrow h_src - h_tgt C_arrow)
    h_sizes = [(v, a.dim_at(v) * c.dim_at(v)) for v in alg.quiver.vertices]
    h_offsets = {}
    pos = 0
    for v, size in h_sizes:
        h_offsets[v] = pos
        pos += size
    h_total = pos
    cob = np.zeros((total, h_total), dtype=np.int64)
    for aid, src, tgt in alg.quiver.arrows:
        tr, tc = a.dim_at(tgt), c.dim_at(src)
        if tr == 0 or tc == 0:
            continue
        off = offsets[aid]
        amap = a.arrow_maps[aid]  # A_tgt x A_src
        cmap = c.arrow_maps[aid]  # C_tgt x C_src
        # t_a[u, v] = sum_w amap[u, w] h_src[w, v] - sum_w h_tgt[u, w] cmap[w, v]
        hs_off, ht_off = h_offsets[src], h_offsets[tgt]
        a_src, c_src = a.dim_at(src), c.dim_at(src)
        c_tgt = c.dim_at(tgt)
        for u in range(tr):
            for v in range(tc):
                row = off + u * tc + v
                for w in range(a_src):
                    cob[row, hs_off + w * c_src + v] += amap[u, w]
                for w in range(c_tgt):
                    cob[row, ht_off + u * c_tgt + w] -= cmap[w, v]
    cob %= p
    b_dim = la.rank(cob, p) if h_total else 0
    return z_dim - b_dim
