"""Pure-python/numpy reference implementations of the hot kernels.

Same contracts as ``_kernels_numba``; selected by the backend dispatcher
when numba is unavailable or when ``PLANTEDMST_BACKEND=numpy`` is set.
Outputs are bit-identical to the numba versions (same algorithms, same
integer arithmetic), only slower.
"""

from __future__ import annotations

import math

import numpy as np


def _row_of(k: int, n: int) -> int:
    # invert k = u*(2n-u-1)/2 + (v-u-1); float solve then integer fixup
    a = 2 * n - 1
    u = int((a - math.sqrt(a * a - 8.0 * k)) * 0.5)
    if u < 0:
        u = 0
    while u * (2 * n - u - 1) // 2 > k:
        u -= 1
    while (u + 1) * (2 * n - u - 2) // 2 <= k:
        u += 1
    return u


def kruskal_select(order: np.ndarray, n: int):
    """Run the union-find pass of Kruskal over flat-indexed edges.

    ``order`` lists flat upper-triangular edge indices sorted by weight
    (ties already broken by index). Returns the endpoints (us, vs) of the
    n-1 selected edges in selection order.
    """
    parent = np.arange(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    us = np.empty(n - 1, dtype=np.int64)
    vs = np.empty(n - 1, dtype=np.int64)
    count = 0
    for k in order:
        k = int(k)
        u = _row_of(k, n)
        v = k - u * (2 * n - u - 1) // 2 + u + 1
        ru = u
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rv = v
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        if ru != rv:
            if rank[ru] < rank[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            if rank[ru] == rank[rv]:
                rank[ru] += 1
            us[count] = u
            vs[count] = v
            count += 1
            if count == n - 1:
                break
    return us, vs


def prufer_decode(code: np.ndarray, n: int):
    """Decode a Prufer sequence (length n-2, labels in [0, n)) into tree edges.

    Linear-time pointer scan; the last edge always attaches to vertex n-1.
    Returns (us, vs) in decode order, endpoints not normalized.
    """
    degree = np.ones(n, dtype=np.int64)
    for v in code:
        degree[v] += 1
    us = np.empty(n - 1, dtype=np.int64)
    vs = np.empty(n - 1, dtype=np.int64)
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        v = int(code[i])
        us[i] = leaf
        vs[i] = v
        degree[v] -= 1
        if v < ptr and degree[v] == 1:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    us[n - 2] = leaf
    vs[n - 2] = n - 1
    return us, vs
