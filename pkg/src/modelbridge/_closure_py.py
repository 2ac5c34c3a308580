"""Pure-Python congruence closure kernel.

Same contract as the compiled kernel in _closure_c: nodes are integers,
applications carry a head id and argument node ids, and the result is a
dense class labeling ordered by least member.  Keep the two in step.
"""

from __future__ import annotations

KERNEL = "pure"


def close_classes(
    n: int,
    fn_ids: list[int],
    arg_offsets: list[int],
    arg_index: list[int],
    eqs: list[tuple[int, int]],
) -> list[int]:
    """Union-find closure of eqs plus the congruence rule.

    fn_ids[i] is -1 for leaves, else the head id of application i whose
    argument nodes sit in arg_index[arg_offsets[i]:arg_offsets[i+1]].
    Labels are dense, assigned in order of each class's least node.
    """
    parent = list(range(n))
    size = [1] * n

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        return True

    for a, b in eqs:
        union(a, b)

    apps = [i for i in range(n) if fn_ids[i] >= 0]
    changed = True
    while changed:
        changed = False
        table: dict[tuple[int, ...], int] = {}
        for i in apps:
            key = (fn_ids[i],) + tuple(
                find(arg_index[j]) for j in range(arg_offsets[i], arg_offsets[i + 1])
            )
            other = table.get(key)
            if other is None:
                table[key] = i
            elif union(i, other):
                changed = True

    labels = [-1] * n
    out = []
    k = 0
    for i in range(n):
        r = find(i)
        if labels[r] < 0:
            labels[r] = k
            k += 1
        out.append(labels[r])
    return out
