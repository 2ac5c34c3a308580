# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled congruence closure kernel; mirror of _closure_py."""

import array

KERNEL = "compiled"


cdef int _find(int[:] parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint _union(int[:] parent, int[:] size, int a, int b) nogil:
    cdef int ra = _find(parent, a)
    cdef int rb = _find(parent, b)
    cdef int tmp
    if ra == rb:
        return False
    if size[ra] < size[rb]:
        tmp = ra
        ra = rb
        rb = tmp
    parent[rb] = ra
    size[ra] += size[rb]
    return True


def close_classes(int n, fn_ids, arg_offsets, arg_index, eqs):
    """Same contract as _closure_py.close_classes."""
    cdef int[:] fns = array.array("i", fn_ids)
    cdef int[:] offs = array.array("i", arg_offsets)
    cdef int[:] args = array.array("i", arg_index)
    cdef int[:] parent = array.array("i", range(n))
    cdef int[:] size = array.array("i", [1] * n)

    cdef int a, b, i, j, r, k
    for a, b in eqs:
        _union(parent, size, a, b)

    apps = [i for i in range(n) if fns[i] >= 0]
    cdef bint changed = True
    cdef dict table
    cdef object hit
    while changed:
        changed = False
        table = {}
        for i in apps:
            key = (fns[i],) + tuple(
                _find(parent, args[j]) for j in range(offs[i], offs[i + 1])
            )
            hit = table.get(key)
            if hit is None:
                table[key] = i
            elif _union(parent, size, i, <int> hit):
                changed = True

    labels = [-1] * n
    out = []
    k = 0
    for i in range(n):
        r = _find(parent, i)
        if labels[r] < 0:
            labels[r] = k
            k += 1
        out.append(labels[r])
    return out
