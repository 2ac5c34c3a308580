"""Finite sets with products, exponentials, and the diagonal fixed-point
argument, all executable.

Objects are just sizes; the elements of an object of size n are
0..n-1.  A pair (u, v) in a product A x B is the single integer
u*|B| + v, and a function table X -> Y is the single integer given by
reading the table as a base-|Y| numeral, most significant digit first:

    index(table) = sum(table[i] * |Y|**(|X|-1-i) for i in range(|X|))

Both encodings are fixed so that maps into products and exponentials
are ordinary tables of integers and every construction is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


class FinSetError(ValueError):
    pass


@dataclass(frozen=True)
class FinSetObj:
    size: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise FinSetError("negative size")

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class FinMap:
    source: FinSetObj
    target: FinSetObj
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.source.size:
            raise FinSetError("table length does not match the source")
        if any(not 0 <= v < self.target.size for v in self.table):
            raise FinSetError("table value outside the target")

    def __call__(self, x: int) -> int:
        return self.table[x]


TERMINAL = FinSetObj(1)


def identity(x: FinSetObj) -> FinMap:
    return FinMap(x, x, tuple(range(x.size)))


def compose(g: FinMap, f: FinMap) -> FinMap:
    """g after f."""
    if f.target != g.source:
        raise FinSetError("composition shape mismatch")
    return FinMap(f.source, g.target, tuple(g.table[v] for v in f.table))


def product(a: FinSetObj, b: FinSetObj) -> FinSetObj:
    return FinSetObj(a.size * b.size)


def pair_index(b: FinSetObj, u: int, v: int) -> int:
    return u * b.size + v


def unpair(b: FinSetObj, p: int) -> tuple[int, int]:
    return divmod(p, b.size)


def proj1(a: FinSetObj, b: FinSetObj) -> FinMap:
    return FinMap(product(a, b), a, tuple(p // b.size for p in range(a.size * b.size)))


def proj2(a: FinSetObj, b: FinSetObj) -> FinMap:
    return FinMap(product(a, b), b, tuple(p % b.size for p in range(a.size * b.size)))


def tuple_map(f: FinMap, g: FinMap) -> FinMap:
    """<f, g>: the unique map into the product commuting with both
    projections."""
    if f.source != g.source:
        raise FinSetError("pairing shape mismatch")
    tgt = product(f.target, g.target)
    table = tuple(pair_index(g.target, f.table[z], g.table[z]) for z in range(f.source.size))
    return FinMap(f.source, tgt, table)


def exponential(x: FinSetObj, y: FinSetObj) -> FinSetObj:
    """Object of all functions x -> y, |y|**|x| of them, enumerated
    lexicographically on tables."""
    return FinSetObj(y.size**x.size)


def fn_index(x: FinSetObj, y: FinSetObj, table: tuple[int, ...]) -> int:
    if len(table) != x.size:
        raise FinSetError("table length does not match the exponent")
    idx = 0
    for v in table:
        if not 0 <= v < y.size:
            raise FinSetError("table value outside the base")
        idx = idx * y.size + v
    return idx


def fn_table(x: FinSetObj, y: FinSetObj, idx: int) -> tuple[int, ...]:
    if not 0 <= idx < y.size**x.size:
        raise FinSetError("function index out of range")
    digits = []
    for _ in range(x.size):
        idx, d = divmod(idx, y.size)
        digits.append(d)
    return tuple(reversed(digits))


def all_maps(x: FinSetObj, y: FinSetObj):
    """Every map x -> y, in exponential enumeration order."""
    for idx in range(y.size**x.size):
        yield FinMap(x, y, fn_table(x, y, idx))


def eval_map(x: FinSetObj, y: FinSetObj) -> FinMap:
    """ev: Y^X x X -> Y, application itself as a table."""
    yx = exponential(x, y)
    table = []
    for fidx in yx.elements():
        row = fn_table(x, y, fidx)
        for xi in x.elements():
            table.append(row[xi])
    return FinMap(product(yx, x), y, tuple(table))


def curry(g: FinMap, z: FinSetObj, x: FinSetObj) -> FinMap:
    """Transpose of g: Z x X -> Y into Z -> Y^X.

    The defining equation ev(curry(g)(z), x) = g(z, x) holds by
    construction; callers can recheck it exhaustively.
    """
    if g.source.size != z.size * x.size:
        raise FinSetError("source is not the stated product")
    y = g.target
    table = []
    for zi in z.elements():
        row = tuple(g.table[pair_index(x, zi, xi)] for xi in x.elements())
        table.append(fn_index(x, y, row))
    return FinMap(z, exponential(x, y), tuple(table))


def uncurry(h: FinMap, x: FinSetObj, y: FinSetObj) -> FinMap:
    """Inverse transpose: Z -> Y^X back to Z x X -> Y."""
    if h.target.size != y.size**x.size:
        raise FinSetError("target is not the stated exponential")
    table = []
    for zi in h.source.elements():
        row = fn_table(x, y, h.table[zi])
        table.extend(row)
    return FinMap(product(h.source, x), y, tuple(table))


def point_surjective(g: FinMap, x: FinSetObj, y: FinSetObj) -> tuple[int, ...] | None:
    """None when every table x -> y is g(xi) for some xi; otherwise the
    least missing table."""
    if g.source != x or g.target.size != y.size**x.size:
        raise FinSetError("map is not of shape X -> Y^X")
    hit = set(g.table)
    for idx in range(y.size**x.size):
        if idx not in hit:
            return fn_table(x, y, idx)
    return None


@dataclass(frozen=True)
class LawvereOutcome:
    """Either a verified fixed point or a concrete missing function."""

    fixed_point: int | None
    diagonal: tuple[int, ...] | None
    missing: tuple[int, ...] | None

    @property
    def surjective(self) -> bool:
        return self.missing is None


def lawvere_fixed_point(g: FinMap, f: FinMap, x: FinSetObj, y: FinSetObj) -> LawvereOutcome:
    """Diagonal argument, run literally.

    When g: X -> Y^X hits every function, the table
    h(xi) = f(ev(g(xi), xi)) is itself g(x0) for some x0, and h(x0) is
    then a fixed point of f.  The returned point is rechecked against f
    before being reported.
    """
    if f.source != y or f.target != y:
        raise FinSetError("f is not an endomap of Y")
    missing = point_surjective(g, x, y)
    if missing is not None:
        return LawvereOutcome(fixed_point=None, diagonal=None, missing=missing)
    ev = eval_map(x, y)
    h = tuple(
        f.table[ev.table[pair_index(x, g.table[xi], xi)]]
        for xi in x.elements()
    )
    x0 = g.table.index(fn_index(x, y, h))
    point = h[x0]
    if f.table[point] != point:
        raise AssertionError("diagonal argument produced a non-fixed point")
    return LawvereOutcome(fixed_point=point, diagonal=h, missing=None)
