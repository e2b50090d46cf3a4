"""Hot numeric kernels, each with a numba path and a pure-numpy path.

The backend is chosen once at import time. Set ``TMCLAB_NUMBA=0`` to force
the numpy path (numba is also skipped when it is not importable). Both
paths return identical integers for identical inputs; tests compare them.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("TMCLAB_NUMBA", "1").lower() not in ("0", "false", "no", "off")

BACKEND = "numba" if USE_NUMBA else "numpy"


# ------------------------------------------------------------ numpy path

def _min_perm_code_np(adj: np.ndarray, perms: np.ndarray) -> tuple[int, int]:
    n = adj.shape[0]
    iu, ju = np.triu_indices(n, 1)
    bits = adj[perms[:, iu], perms[:, ju]].astype(np.int64)
    weights = np.left_shift(np.int64(1), np.arange(len(iu) - 1, -1, -1, dtype=np.int64))
    codes = bits @ weights
    k = int(np.argmin(codes))
    return int(codes[k]), k


def _count_components_np(n: int, src: np.ndarray, dst: np.ndarray) -> int:
    if n == 0:
        return 0
    label = np.arange(n, dtype=np.int64)
    if len(src) == 0:
        return n
    while True:
        a = label[src]
        b = label[dst]
        low = np.minimum(a, b)
        new = label.copy()
        np.minimum.at(new, src, low)
        np.minimum.at(new, dst, low)
        # pointer jumping
        new = new[new]
        if np.array_equal(new, label):
            break
        label = new
    return int(np.unique(label).size)


def _greedy_leaves_np(n: int, indptr: np.ndarray, indices: np.ndarray) -> int:
    if n <= 1:
        return 0
    deg = np.diff(indptr)
    in_tree = np.zeros(n, dtype=np.bool_)
    tree_deg = np.zeros(n, dtype=np.int64)
    outside = deg.astype(np.int64).copy()  # neighbours not yet in the tree
    net = np.empty(n, dtype=np.int64)

    def attach(x):
        nb = indices[indptr[x]:indptr[x + 1]]
        new = nb[~in_tree[nb]]
        in_tree[new] = True
        tree_deg[x] += new.size
        tree_deg[new] = 1
        for w in new:
            outside[indices[indptr[w]:indptr[w + 1]]] -= 1

    root = int(np.argmax(deg))
    in_tree[root] = True
    outside[indices[indptr[root]:indptr[root + 1]]] -= 1
    attach(root)
    count = int(in_tree.sum())
    while count < n:
        net[:] = outside - (tree_deg == 1)
        cand = in_tree & (outside > 0)
        if not cand.any():
            return -1
        net[~cand] = np.iinfo(np.int64).min
        x = int(np.argmax(net))
        attach(x)
        count = int(in_tree.sum())
    return int(np.count_nonzero(tree_deg == 1))


# ------------------------------------------------------------ numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _min_perm_code_nb(adj, perms):
        n = adj.shape[0]
        npairs = n * (n - 1) // 2
        best = np.int64(-1)
        best_k = 0
        for k in range(perms.shape[0]):
            p = perms[k]
            code = np.int64(0)
            shift = npairs - 1
            worse = False
            for i in range(n - 1):
                pi = p[i]
                for j in range(i + 1, n):
                    if adj[pi, p[j]]:
                        code |= np.int64(1) << shift
                    shift -= 1
                if best >= 0 and (code >> (shift + 1)) > (best >> (shift + 1)):
                    worse = True
                    break
            if worse:
                continue
            if best < 0 or code < best:
                best = code
                best_k = k
        return best, best_k

    @njit(cache=True)
    def _find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def _count_components_nb(n, src, dst):
        parent = np.arange(n)
        comps = n
        for e in range(src.shape[0]):
            a = _find(parent, src[e])
            b = _find(parent, dst[e])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
                comps -= 1
        return comps

    @njit(cache=True)
    def _greedy_leaves_nb(n, indptr, indices):
        if n <= 1:
            return 0
        in_tree = np.zeros(n, dtype=np.bool_)
        tree_deg = np.zeros(n, dtype=np.int64)
        outside = np.empty(n, dtype=np.int64)
        for v in range(n):
            outside[v] = indptr[v + 1] - indptr[v]
        root = 0
        for v in range(n):
            if outside[v] > outside[root]:
                root = v
        in_tree[root] = True
        for t in range(indptr[root], indptr[root + 1]):
            outside[indices[t]] -= 1
        count = 1
        x = root
        while True:
            # attach every outside neighbour of x as a leaf
            for t in range(indptr[x], indptr[x + 1]):
                w = indices[t]
                if not in_tree[w]:
                    in_tree[w] = True
                    tree_deg[x] += 1
                    tree_deg[w] = 1
                    count += 1
                    for s in range(indptr[w], indptr[w + 1]):
                        outside[indices[s]] -= 1
            if count == n:
                break
            x = -1
            best = np.int64(-(1 << 62))
            for v in range(n):
                if in_tree[v] and outside[v] > 0:
                    g = outside[v] - (1 if tree_deg[v] == 1 else 0)
                    if g > best:
                        best = g
                        x = v
            if x < 0:
                return -1
        leaves = 0
        for v in range(n):
            if tree_deg[v] == 1:
                leaves += 1
        return leaves


# ------------------------------------------------------------- dispatch

def min_perm_code(adj: np.ndarray, perms: np.ndarray) -> tuple[int, int]:
    """Smallest upper-triangle code of adj over the given relabelings, and its row in perms."""
    adj = np.ascontiguousarray(adj, dtype=np.bool_)
    if USE_NUMBA:
        c, k = _min_perm_code_nb(adj, perms)
        return int(c), int(k)
    return _min_perm_code_np(adj, perms)


def count_components(n: int, src: np.ndarray, dst: np.ndarray) -> int:
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    if USE_NUMBA:
        return int(_count_components_nb(n, src, dst))
    return _count_components_np(n, src, dst)


def greedy_leaves(n: int, indptr: np.ndarray, indices: np.ndarray) -> int:
    """Leaf count of the greedy spanning tree; -1 if the graph is disconnected."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if USE_NUMBA:
        return int(_greedy_leaves_nb(n, indptr, indices))
    return _greedy_leaves_np(n, indptr, indices)


def csr_from_edges(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric CSR adjacency with each row's neighbours sorted ascending."""
    a = np.concatenate([src, dst]).astype(np.int64)
    b = np.concatenate([dst, src]).astype(np.int64)
    order = np.lexsort((b, a))
    a, b = a[order], b[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(a, minlength=n), out=indptr[1:])
    return indptr, b
