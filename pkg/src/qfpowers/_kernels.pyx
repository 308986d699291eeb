# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels: count XOR-products over all k-subsets or
k-multisets of a list of bitmask-encoded square classes."""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint32_t, uint64_t


cdef uint64_t* _alloc_counts(Py_ssize_t size) except NULL:
    cdef uint64_t* counts = <uint64_t*> calloc(size, sizeof(uint64_t))
    if counts == NULL:
        raise MemoryError()
    return counts


cdef list _to_list(uint64_t* counts, Py_ssize_t size):
    cdef Py_ssize_t i
    return [counts[i] for i in range(size)]


def count_subset_xors(masks, int k, int nbits):
    cdef Py_ssize_t m = len(masks)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nbits
    cdef Py_ssize_t i, j
    cdef uint32_t* vals
    cdef Py_ssize_t* idx
    cdef uint32_t* px
    cdef uint64_t* counts
    if k < 0 or k > m:
        return [0] * size
    counts = _alloc_counts(size)
    if k == 0:
        counts[0] = 1
        try:
            return _to_list(counts, size)
        finally:
            free(counts)
    vals = <uint32_t*> malloc(m * sizeof(uint32_t))
    idx = <Py_ssize_t*> malloc(k * sizeof(Py_ssize_t))
    px = <uint32_t*> malloc((k + 1) * sizeof(uint32_t))
    if vals == NULL or idx == NULL or px == NULL:
        free(vals); free(idx); free(px); free(counts)
        raise MemoryError()
    try:
        for i in range(m):
            vals[i] = masks[i]
        px[0] = 0
        for i in range(k):
            idx[i] = i
            px[i + 1] = px[i] ^ vals[i]
        with nogil:
            while True:
                counts[px[k]] += 1
                i = k - 1
                while i >= 0 and idx[i] == m - k + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                px[i + 1] = px[i] ^ vals[idx[i]]
                for j in range(i + 1, k):
                    idx[j] = idx[j - 1] + 1
                    px[j + 1] = px[j] ^ vals[idx[j]]
        return _to_list(counts, size)
    finally:
        free(vals); free(idx); free(px); free(counts)


def count_multiset_xors(masks, int k, int nbits):
    cdef Py_ssize_t m = len(masks)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nbits
    cdef Py_ssize_t i, j
    cdef uint32_t* vals
    cdef Py_ssize_t* idx
    cdef uint32_t* px
    cdef uint64_t* counts
    if k < 0 or (m == 0 and k > 0):
        return [0] * size
    counts = _alloc_counts(size)
    if k == 0:
        counts[0] = 1
        try:
            return _to_list(counts, size)
        finally:
            free(counts)
    vals = <uint32_t*> malloc(m * sizeof(uint32_t))
    idx = <Py_ssize_t*> malloc(k * sizeof(Py_ssize_t))
    px = <uint32_t*> malloc((k + 1) * sizeof(uint32_t))
    if vals == NULL or idx == NULL or px == NULL:
        free(vals); free(idx); free(px); free(counts)
        raise MemoryError()
    try:
        for i in range(m):
            vals[i] = masks[i]
        px[0] = 0
        for i in range(k):
            idx[i] = 0
            px[i + 1] = px[i] ^ vals[0]
        with nogil:
            while True:
                counts[px[k]] += 1
                i = k - 1
                while i >= 0 and idx[i] == m - 1:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                px[i + 1] = px[i] ^ vals[idx[i]]
                for j in range(i + 1, k):
                    idx[j] = idx[i]
                    px[j + 1] = px[j] ^ vals[idx[j]]
        return _to_list(counts, size)
    finally:
        free(vals); free(idx); free(px); free(counts)
