"""Finite semigroups given by multiplication tables."""

from dataclasses import dataclass
from functools import reduce
import itertools

from .report import ValidationReport


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple
    unit: int | None = None

    @property
    def size(self):
        return len(self.table)

    def product(self, a, b):
        n = self.size
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"element index out of range: ({a}, {b})")
        return self.table[a][b]

    def prod(self, elems):
        """Product of a nonempty sequence of elements."""
        return reduce(self.product, elems)

    def elements(self):
        return range(self.size)

    def is_commutative(self):
        return all(self.table[a][b] == self.table[b][a]
                   for a in self.elements() for b in self.elements())

    def to_json(self):
        return {"size": self.size, "table": [list(r) for r in self.table],
                "unit": self.unit}


def find_unit(table):
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    return None


def _check_table(table):
    n = len(table)
    if n == 0:
        raise SemigroupError("empty semigroup")
    for i, row in enumerate(table):
        if len(row) != n:
            raise SemigroupError(f"table row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not (isinstance(x, int) and 0 <= x < n):
                raise SemigroupError(f"table[{i}][{j}] = {x!r} out of range")


def semigroup(table, unit="auto"):
    """Build a semigroup; unit="auto" detects a two-sided identity."""
    table = tuple(tuple(int(x) for x in row) for row in table)
    _check_table(table)
    if unit == "auto":
        unit = find_unit(table)
    s = FiniteSemigroup(table, unit)
    rep = validate_semigroup(s)
    if not rep.ok:
        raise SemigroupError(f"not a semigroup: {rep.detail}")
    return s


def validate_semigroup(s):
    _check_table(s.table)
    t = s.table
    for a, b, c in itertools.product(s.elements(), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return ValidationReport("semigroup", False, {"alpha": a, "beta": b, "gamma": c},
                                    "(ab)c != a(bc)")
    if s.unit is not None:
        e = s.unit
        if not (0 <= e < s.size) or any(t[e][a] != a or t[a][e] != a for a in s.elements()):
            return ValidationReport("semigroup", False, {"unit": e}, "declared unit is not an identity")
    return ValidationReport("semigroup", True, extra={"unit": find_unit(t)})


def from_json(obj):
    table = obj["table"]
    if "size" in obj and obj["size"] != len(table):
        raise SemigroupError("size does not match table")
    # null means "not declared": detect one if it exists
    unit = obj.get("unit")
    return semigroup(table, "auto" if unit is None else int(unit))


# catalogue

def trivial():
    return semigroup([[0]])


def mult_mod2():
    """{0, 1} under multiplication; 1 is the unit, 0 absorbs."""
    return semigroup([[0, 0], [0, 1]])


def left_zero(n=2):
    """ab = a; no unit for n >= 2, non-commutative."""
    return semigroup([[a for b in range(n)] for a in range(n)])


def right_zero(n=2):
    return semigroup([[b for b in range(n)] for a in range(n)])


def cyclic_group(n):
    return semigroup([[(a + b) % n for b in range(n)] for a in range(n)])


def adjoin_unit(s):
    """Monoid s + {1}; the new unit gets index 0, old elements shift by one."""
    n = s.size + 1
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        table[0][a] = a
        table[a][0] = a
    for a in s.elements():
        for b in s.elements():
            table[a + 1][b + 1] = s.product(a, b) + 1
    return semigroup(table)
