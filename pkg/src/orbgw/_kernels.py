"""Integer kernels over group multiplication tables.

Two implementations of each kernel: a numba ``@njit`` version and a plain
numpy version.  The backend is picked once at import time; set
``ORBGW_DISABLE_NUMBA=1`` to force numpy (useful for debugging and for the
benchmark).  Both backends return identical int64 arrays.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ORBGW_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


# --- numpy reference versions ------------------------------------------------

def conjugation_table_np(mult, inverse):
    """conj[g, x] = g x g^-1."""
    n = mult.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for g in range(n):
        out[g] = mult[mult[g], inverse[g]]
    return out


def class_labels_np(conj):
    # smallest element of each orbit under conjugation
    return conj.min(axis=0).astype(np.int64)


def centralizer_sizes_np(conj):
    n = conj.shape[0]
    return (conj == np.arange(n)[None, :]).sum(axis=0).astype(np.int64)


def class_product_counts_np(mult, class_of, members_i, n_classes):
    """counts[j, z] = #{(a, b) : a in members_i, b in class j, a b = z}."""
    n = mult.shape[0]
    counts = np.zeros((n_classes, n), dtype=np.int64)
    for a in members_i:
        np.add.at(counts, (class_of, mult[a]), 1)
    return counts


def pair_orbits_np(conj, g, members_h):
    """Orbits of h under the centralizer of g, acting by conjugation.

    Returns (orbit_rep, stabilizer_size) for each h in ``members_h``: the
    minimal element of the orbit and |C(g) n C(h)|.
    """
    n = conj.shape[0]
    cent = np.nonzero(conj[:, g] == g)[0]
    sub = conj[np.ix_(cent, members_h)]
    rep = sub.min(axis=0).astype(np.int64)
    stab = (sub == members_h[None, :]).sum(axis=0).astype(np.int64)
    return rep, stab


def associativity_failures_np(mult):
    """Number of triples with (ab)c != a(bc)."""
    n = mult.shape[0]
    bad = 0
    for a in range(n):
        left = mult[mult[a]]            # left[b, c] = (ab)c
        right = mult[a][mult]           # right[b, c] = a(bc)
        bad += int((left != right).sum())
    return bad


# --- numba versions ------------------------------------------------------------

if NUMBA_AVAILABLE:
    @njit(cache=True)
    def conjugation_table_nb(mult, inverse):
        n = mult.shape[0]
        out = np.empty((n, n), dtype=np.int64)
        for g in range(n):
            gi = inverse[g]
            for x in range(n):
                out[g, x] = mult[mult[g, x], gi]
        return out

    @njit(cache=True)
    def class_labels_nb(conj):
        n = conj.shape[0]
        out = np.empty(n, dtype=np.int64)
        for x in range(n):
            m = x
            for g in range(n):
                if conj[g, x] < m:
                    m = conj[g, x]
            out[x] = m
        return out

    @njit(cache=True)
    def centralizer_sizes_nb(conj):
        n = conj.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for g in range(n):
            for x in range(n):
                if conj[g, x] == x:
                    out[x] += 1
        return out

    @njit(cache=True)
    def class_product_counts_nb(mult, class_of, members_i, n_classes):
        n = mult.shape[0]
        counts = np.zeros((n_classes, n), dtype=np.int64)
        for t in range(members_i.shape[0]):
            a = members_i[t]
            for b in range(n):
                counts[class_of[b], mult[a, b]] += 1
        return counts

    @njit(cache=True)
    def pair_orbits_nb(conj, g, members_h):
        n = conj.shape[0]
        m = members_h.shape[0]
        rep = np.empty(m, dtype=np.int64)
        stab = np.zeros(m, dtype=np.int64)
        for t in range(m):
            h = members_h[t]
            best = h
            for c in range(n):
                if conj[c, g] != g:
                    continue
                y = conj[c, h]
                if y < best:
                    best = y
                if y == h:
                    stab[t] += 1
            rep[t] = best
        return rep, stab

    @njit(cache=True)
    def associativity_failures_nb(mult):
        n = mult.shape[0]
        bad = 0
        for a in range(n):
            for b in range(n):
                ab = mult[a, b]
                for c in range(n):
                    if mult[ab, c] != mult[a, mult[b, c]]:
                        bad += 1
        return bad

    conjugation_table = conjugation_table_nb
    class_labels = class_labels_nb
    centralizer_sizes = centralizer_sizes_nb
    class_product_counts = class_product_counts_nb
    pair_orbits = pair_orbits_nb
    associativity_failures = associativity_failures_nb
else:
    conjugation_table = conjugation_table_np
    class_labels = class_labels_np
    centralizer_sizes = centralizer_sizes_np
    class_product_counts = class_product_counts_np
    pair_orbits = pair_orbits_np
    associativity_failures = associativity_failures_np


NUMPY_KERNELS = {
    "conjugation_table": conjugation_table_np,
    "class_labels": class_labels_np,
    "centralizer_sizes": centralizer_sizes_np,
    "class_product_counts": class_product_counts_np,
    "pair_orbits": pair_orbits_np,
    "associativity_failures": associativity_failures_np,
}

ACTIVE_KERNELS = {
    "conjugation_table": conjugation_table,
    "class_labels": class_labels,
    "centralizer_sizes": centralizer_sizes,
    "class_product_counts": class_product_counts,
    "pair_orbits": pair_orbits,
    "associativity_failures": associativity_failures,
}
