"""Brute-force ground truth for finite groups: the literal group algebra,
augmentation-ideal powers, and dimension counts from an explicit
multiplication table.  No coset enumeration anywhere; tables come in ready
made (cyclic arithmetic, direct products, unitriangular matrices) or as
JSON through the CLI.
"""

from __future__ import annotations

import random

from .rings import Matrix, rref, row_hermite
from . import rings


class FiniteGroupTable:
    """A finite group as a size x size index table plus generator labels."""

    __slots__ = ("size", "mul", "identity", "gens", "inverse")

    def __init__(self, size, mul, gens, validate=True):
        self.size = size
        self.mul = [list(row) for row in mul]
        self.gens = dict(gens)
        if len(self.mul) != size or any(len(row) != size for row in self.mul):
            raise ValueError("multiplication table has the wrong shape")
        for row in self.mul:
            for v in row:
                if not 0 <= v < size:
                    raise ValueError("table entry out of range")
        idents = [e for e in range(size)
                  if all(self.mul[e][g] == g and self.mul[g][e] == g for g in range(size))]
        if len(idents) != 1:
            raise ValueError("table does not have a unique identity")
        self.identity = idents[0]
        inv = [None] * size
        for g in range(size):
            partners = [h for h in range(size) if self.mul[g][h] == self.identity]
            if len(partners) != 1 or self.mul[partners[0]][g] != self.identity:
                raise ValueError(f"element {g} has no two-sided inverse")
            inv[g] = partners[0]
        self.inverse = inv
        for name, idx in self.gens.items():
            if not 0 <= idx < size:
                raise ValueError(f"generator {name!r} labels a bad index")
        if validate:
            self._check_associativity()

    def _check_associativity(self):
        n = self.size
        if n <= 16:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(2000))
        for a, b, c in triples:
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise ValueError(f"table is not associative at ({a},{b},{c})")

    @classmethod
    def from_json(cls, data):
        return cls(data["size"], data["mul"], data["gens"])

    def to_json(self):
        return {"size": self.size, "mul": [list(r) for r in self.mul],
                "gens": dict(self.gens)}


def word_image(table, w):
    """Evaluate a word in the finite group; every generator must be labeled."""
    for name in w.alphabet.names:
        if name not in table.gens:
            raise ValueError(f"generator {name!r} is not labeled in the table")
    acc = table.identity
    for let in w.letters:
        g = table.gens[w.alphabet.names[let.gen]]
        if let.sign == -1:
            g = table.inverse[g]
        acc = table.mul[acc][g]
    return acc


def _convolve(ring, table, u, v):
    out = [ring.zero] * table.size
    for g, a in enumerate(u):
        if a == ring.zero:
            continue
        row = table.mul[g]
        for h, b in enumerate(v):
            if b == ring.zero:
                continue
            k = row[h]
            out[k] = ring.add(out[k], ring.mul(a, b))
    return out


def ideal_power_dims(table, ring, N):
    """Shapes of A[G]/I^k for k = 1..N by literal linear algebra.

    Over a field: a list of dimensions.  Over the integers: a list of
    (free rank, elementary divisors of I^k) pairs.
    """
    n = table.size
    aug_basis = []
    for g in range(n):
        if g == table.identity:
            continue
        v = [ring.zero] * n
        v[g] = ring.one
        v[table.identity] = ring.neg(ring.one)
        aug_basis.append(v)

    def reduce_span(vectors):
        if not vectors:
            return []
        if ring.is_field:
            rows, _ = rref(ring, vectors)
        else:
            rows, _ = row_hermite(vectors)
        return [r for r in rows if any(x != ring.zero for x in r)]

    out = []
    power = reduce_span(aug_basis)
    for _ in range(N):
        if ring.is_field:
            out.append(n - len(power))
        else:
            mat = Matrix(rings.ZZ, power, cols=n) if power else Matrix(rings.ZZ, [], cols=n)
            divisors = rings.elementary_divisors(mat) if power else []
            out.append((n - len(power), tuple(d for d in divisors if d not in (0, 1))))
        products = [_convolve(ring, table, v, w) for v in power for w in aug_basis]
        power = reduce_span(products)
    return out


# ---------------------------------------------------------------------------
# direct table constructors (kept trivially correct)

def cyclic_table(n, gen_name="x"):
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroupTable(n, mul, {gen_name: 1 % n})


def direct_product_table(t1, t2, rename=None):
    """Direct product; generators are t1's paired with t2's identity and
    vice versa, renamed via the optional mapping."""
    n1, n2 = t1.size, t2.size
    size = n1 * n2

    def enc(a, b):
        return a * n2 + b

    mul = [[0] * size for _ in range(size)]
    for a1 in range(n1):
        for b1 in range(n2):
            for a2 in range(n1):
                for b2 in range(n2):
                    mul[enc(a1, b1)][enc(a2, b2)] = enc(t1.mul[a1][a2], t2.mul[b1][b2])
    gens = {}
    for name, idx in t1.gens.items():
        gens[name] = enc(idx, t2.identity)
    for name, idx in t2.gens.items():
        gens[name] = enc(t1.identity, idx)
    if rename:
        gens = {rename.get(k, k): v for k, v in gens.items()}
    return FiniteGroupTable(size, mul, gens)


def heisenberg_table(p=2):
    """Upper unitriangular 3x3 matrices over F_p; generators x = E12,
    y = E23, z = E13."""
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    index = {e: i for i, e in enumerate(elems)}

    def mul3(m1, m2):
        a1, b1, c1 = m1
        a2, b2, c2 = m2
        return ((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)

    size = len(elems)
    mul = [[index[mul3(e1, e2)] for e2 in elems] for e1 in elems]
    gens = {"x": index[(1, 0, 0)], "y": index[(0, 1, 0)], "z": index[(0, 0, 1)]}
    return FiniteGroupTable(size, mul, gens)
