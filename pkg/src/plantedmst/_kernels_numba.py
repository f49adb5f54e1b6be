"""Numba-compiled hot kernels: Kruskal union-find pass and Prufer decode.

Mirrors ``_kernels_numpy`` exactly; see that module for the contracts.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def kruskal_select(order, n):
    parent = np.arange(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    us = np.empty(n - 1, dtype=np.int64)
    vs = np.empty(n - 1, dtype=np.int64)
    count = 0
    a = 2 * n - 1
    for idx in range(order.shape[0]):
        k = order[idx]
        u = np.int64((a - np.sqrt(a * a - 8.0 * k)) * 0.5)
        if u < 0:
            u = 0
        while u * (2 * n - u - 1) // 2 > k:
            u -= 1
        while (u + 1) * (2 * n - u - 2) // 2 <= k:
            u += 1
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


@njit(cache=True)
def prufer_decode(code, n):
    degree = np.ones(n, dtype=np.int64)
    for i in range(code.shape[0]):
        degree[code[i]] += 1
    us = np.empty(n - 1, dtype=np.int64)
    vs = np.empty(n - 1, dtype=np.int64)
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        v = code[i]
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
