"""Runtime values: arbitrary-precision integers, symbols, and pairs.

Pairs may be improper (any value in the tail), so list helpers distinguish
true lists from other shapes.  Equality and ordering walk the tail spine
iteratively because lists in the workbench routinely reach thousands of
elements, which would overflow Python's recursion limit.
"""

from __future__ import annotations


class Symbol:
    """An interned symbol. `t` and `nil` are the boolean constants."""

    __slots__ = ("name",)
    _interned: dict[str, "Symbol"] = {}

    def __new__(cls, name: str) -> "Symbol":
        sym = cls._interned.get(name)
        if sym is None:
            sym = object.__new__(cls)
            sym.name = name
            cls._interned[name] = sym
        return sym

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"

    def __hash__(self) -> int:
        return hash(self.name)


NIL = Symbol("nil")
T = Symbol("t")


class Pair:
    __slots__ = ("head", "tail")

    def __init__(self, head, tail):
        self.head = head
        self.tail = tail

    def __eq__(self, other):
        if not isinstance(other, Pair):
            return NotImplemented
        return value_equal(self, other)

    def __hash__(self):
        h = 0x517CC1B7
        node = self
        while isinstance(node, Pair):
            h = hash((h, _shallow_hash(node.head)))
            node = node.tail
        return hash((h, _shallow_hash(node)))

    def __repr__(self):
        return f"Pair({self.head!r}, {self.tail!r})"


Value = int | Symbol | Pair


def _shallow_hash(v) -> int:
    return hash(v)


def truthy(v: Value) -> bool:
    """Any value other than nil counts as true."""
    return v is not NIL


def boolean(flag: bool) -> Symbol:
    return T if flag else NIL


def value_equal(a: Value, b: Value) -> bool:
    while True:
        if a is b:
            return True
        if isinstance(a, Pair) and isinstance(b, Pair):
            if not value_equal(a.head, b.head):
                return False
            a, b = a.tail, b.tail
            continue
        if isinstance(a, bool) or isinstance(b, bool):
            return False
        if isinstance(a, int) and isinstance(b, int):
            return a == b
        return False


def value_compare(a: Value, b: Value) -> int:
    """Total order: integers < symbols < pairs; -1, 0, or 1.

    Integers compare numerically, symbols lexicographically, and pairs
    component-wise (head first, then tail along the spine).
    """
    while True:
        ra, rb = _rank(a), _rank(b)
        if ra != rb:
            return -1 if ra < rb else 1
        if ra == 0:
            return -1 if a < b else (0 if a == b else 1)
        if ra == 1:
            return -1 if a.name < b.name else (0 if a.name == b.name else 1)
        c = value_compare(a.head, b.head)
        if c != 0:
            return c
        a, b = a.tail, b.tail


def _rank(v: Value) -> int:
    if isinstance(v, int):
        return 0
    if isinstance(v, Symbol):
        return 1
    return 2


def from_list(items) -> Value:
    out: Value = NIL
    for item in reversed(list(items)):
        out = Pair(item, out)
    return out


def to_list(v: Value) -> list[Value]:
    """Unpack a true list; raises ValueError on improper lists or atoms."""
    out = []
    while isinstance(v, Pair):
        out.append(v.head)
        v = v.tail
    if v is not NIL:
        raise ValueError(f"not a true list (ends in {print_value(v)})")
    return out


def is_true_list(v: Value) -> bool:
    while isinstance(v, Pair):
        v = v.tail
    return v is NIL


def print_value(v: Value) -> str:
    """Render a value as re-readable surface syntax.

    True lists print as quoted literals like '(1 2 3); improper pairs fall
    back to explicit (cons ...) applications.
    """
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Symbol):
        return v.name if v in (T, NIL) else "'" + v.name
    if is_true_list(v):
        return "'(" + " ".join(_datum(x) for x in to_list(v)) + ")"
    return f"(cons {print_value(v.head)} {print_value(v.tail)})"


def _datum(v: Value) -> str:
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Symbol):
        return v.name
    spine = []
    while isinstance(v, Pair):
        spine.append(_datum(v.head))
        v = v.tail
    if v is not NIL:
        raise ValueError("cannot print improper pair inside a list literal")
    return "(" + " ".join(spine) + ")"


def to_json(v: Value):
    """Values as JSON: ints stay ints, symbols become strings, lists arrays.

    Improper pairs become {"cons": [head, tail]} objects.
    """
    if isinstance(v, int):
        return v
    if isinstance(v, Symbol):
        return v.name
    if is_true_list(v):
        return [to_json(x) for x in to_list(v)]
    return {"cons": [to_json(v.head), to_json(v.tail)]}


def from_json(data) -> Value:
    if isinstance(data, bool):
        raise ValueError("JSON booleans have no value mapping; use \"t\"/\"nil\"")
    if isinstance(data, int):
        return data
    if isinstance(data, str):
        return Symbol(data)
    if isinstance(data, list):
        return from_list(from_json(x) for x in data)
    if isinstance(data, dict) and set(data) == {"cons"} and len(data["cons"]) == 2:
        return Pair(from_json(data["cons"][0]), from_json(data["cons"][1]))
    raise ValueError(f"cannot map JSON value {data!r} into the language")
