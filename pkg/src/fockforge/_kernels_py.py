"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
line for line and must return identical results.
"""


def conv1d(a, b, n):
    """Truncated product of dense coefficient lists, result has length n+1."""
    out = [0] * (n + 1)
    la = min(len(a), n + 1)
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def conv2d(a, b, n):
    """Truncated product of two flattened (n+1)x(n+1) coefficient grids.

    Entry ``i*(n+1) + j`` holds the coefficient of x^i y^j.
    """
    w = n + 1
    out = [0] * (w * w)
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
                        out[row + j2] += c1 * c2
    return out


def partitions_of(n):
    """All partitions of n as tuples, reverse-lexicographic order."""
    if n == 0:
        return [()]
    out = []
    parts = [n]
    while True:
        out.append(tuple(parts))
        # rightmost part > 1
        k = len(parts) - 1
        while k >= 0 and parts[k] == 1:
            k -= 1
        if k < 0:
            return out
        rem = len(parts) - k  # ones after k, plus the unit taken from parts[k]
        v = parts[k] - 1
        del parts[k:]
        parts.append(v)
        while rem > v:
            parts.append(v)
            rem -= v
        if rem:
            parts.append(rem)


def corner_cells(parts):
    """Addable and removable cells (row, col) of a partition, English convention."""
    addable = []
    removable = []
    L = len(parts)
    for i in range(L + 1):
        col = parts[i] if i < L else 0
        if i == 0 or parts[i - 1] > col:
            addable.append((i, col))
    for i in range(L):
        if i == L - 1 or parts[i + 1] < parts[i]:
            removable.append((i, parts[i] - 1))
    return addable, removable


def corner_excess(parts):
    """#addable - #removable without building the cell lists."""
    L = len(parts)
    excess = 1  # the cell starting a new row below the last one
    for i in range(L):
        if i == 0 or parts[i - 1] > parts[i]:
            excess += 1
        if i == L - 1 or parts[i + 1] < parts[i]:
            excess -= 1
    return excess
