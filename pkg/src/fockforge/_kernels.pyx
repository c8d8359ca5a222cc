# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels; see _kernels_py for the reference."""


def conv1d(list a, list b, Py_ssize_t n):
    cdef list out = [0] * (n + 1)
    cdef Py_ssize_t la = min(len(a), n + 1)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j, top
    cdef object ai, bj
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def conv2d(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t w = n + 1
    cdef list out = [0] * (w * w)
    cdef Py_ssize_t i1, j1, i2, j2, row, base
    cdef object c1, c2
    for i1 in range(w):
        for j1 in range(w):
            c1 = a[i1 * w + j1]
            if not c1:
                continue
            for i2 in range(w - i1):
                row = (i1 + i2) * w + j1
                base = i2 * w
                for j2 in range(w - j1):
                    c2 = b[base + j2]
                    if c2:
                        out[row + j2] = out[row + j2] + c1 * c2
    return out


def partitions_of(Py_ssize_t n):
    if n == 0:
        return [()]
    cdef list out = []
    cdef list parts = [n]
    cdef Py_ssize_t k, rem, v
    while True:
        out.append(tuple(parts))
        k = len(parts) - 1
        while k >= 0 and <Py_ssize_t>parts[k] == 1:
            k -= 1
        if k < 0:
            return out
        rem = len(parts) - k
        v = <Py_ssize_t>parts[k] - 1
        del parts[k:]
        parts.append(v)
        while rem > v:
            parts.append(v)
            rem -= v
        if rem:
            parts.append(rem)


def corner_cells(tuple parts):
    cdef list addable = []
    cdef list removable = []
    cdef Py_ssize_t L = len(parts)
    cdef Py_ssize_t i, col
    for i in range(L + 1):
        col = <Py_ssize_t>parts[i] if i < L else 0
        if i == 0 or <Py_ssize_t>parts[i - 1] > col:
            addable.append((i, col))
    for i in range(L):
        if i == L - 1 or <Py_ssize_t>parts[i + 1] < <Py_ssize_t>parts[i]:
            removable.append((i, <Py_ssize_t>parts[i] - 1))
    return addable, removable


def corner_excess(tuple parts):
    cdef Py_ssize_t L = len(parts)
    cdef Py_ssize_t excess = 1
    cdef Py_ssize_t i
    for i in range(L):
        if i == 0 or <Py_ssize_t>parts[i - 1] > <Py_ssize_t>parts[i]:
            excess += 1
        if i == L - 1 or <Py_ssize_t>parts[i + 1] < <Py_ssize_t>parts[i]:
            excess -= 1
    return excess
