"""Finitely presented groups: the truncated group ring A[G]/I^N as an
explicit quotient of the span of noncommutative monomials, the invariant
coalgebra up to a weight bound, the invariance test with witnesses,
dimension-series depth, pairing, and pullbacks along homomorphisms.

The quotient is presented on the monomial basis below the truncation
order, in graded-lex order, modulo the span of the sandwiched relator
series m1 * (M(r) - 1) * m2 over monomial pairs with
deg(m1) + deg(m2) <= order - 2 (higher sandwiches vanish because
M(r) - 1 has valuation at least one).

Over a field the span is kept as reduced echelon rows; over the integers
as Hermite rows, so normal forms are canonical and membership questions
are integral.  Integer torsion is reported through elementary divisors,
never silently dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import rings
from .magnus import TruncSeries, magnus_expand, trunc_mul
from .rings import Matrix, kernel_basis, membership, rref, row_hermite
from .tensors import TensorElement, format_tensor
from .words import Alphabet, Word, free_reduce, parse_word, substitute


@dataclass(frozen=True)
class Presentation:
    """Generators and relators (each relator r imposes r = 1)."""

    alphabet: Alphabet
    relators: tuple = ()

    def __post_init__(self):
        reduced = []
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise ValueError("relator alphabet mismatch")
            reduced.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(reduced))

    @classmethod
    def free(cls, alphabet):
        return cls(alphabet, ())


def parse_presentation(text):
    """One declaration per line: ``gens: x y z`` then any number of
    ``rel: <word>`` lines.  Blank lines and ``#`` comments are skipped."""
    alphabet = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if alphabet is not None:
                raise ValueError(f"line {lineno}: duplicate gens declaration")
            alphabet = Alphabet.parse(line[5:])
        elif line.startswith("rel:"):
            if alphabet is None:
                raise ValueError(f"line {lineno}: rel before gens")
            relators.append(parse_word(line[4:], alphabet))
        else:
            raise ValueError(f"line {lineno}: expected 'gens:' or 'rel:'")
    if alphabet is None:
        raise ValueError("missing gens declaration")
    return Presentation(alphabet, tuple(relators))


def format_presentation(P):
    lines = ["gens: " + " ".join(P.alphabet.names)]
    from .words import format_word
    lines.extend("rel: " + format_word(r) for r in P.relators)
    return "\n".join(lines) + "\n"


def monomials_below(n_gens, order):
    """All generator-index tuples of length < order, in graded-lex order."""
    out = []
    for d in range(order):
        out.extend(itertools.product(range(n_gens), repeat=d))
    return out


MONOMIAL_CAP = 200_000


class TruncatedQuotient:
    """A[G]/I^order presented by monomials modulo the relator-ideal span."""

    __slots__ = ("ring", "alphabet", "order", "presentation", "monomials",
                 "index", "columns", "column_meta", "span_rows", "span_pivots",
                 "elementary_divisors", "_image_cache")

    def __init__(self, presentation, order, ring):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.ring = ring
        self.alphabet = presentation.alphabet
        self.order = order
        self.presentation = presentation
        k = len(self.alphabet)
        count = sum(k ** d for d in range(order))
        if count > MONOMIAL_CAP:
            raise ValueError(
                f"truncation order {order} over {k} generators needs {count} "
                f"monomials, above the cap of {MONOMIAL_CAP}; lower the order")
        self.monomials = monomials_below(k, order)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.columns = []
        self.column_meta = []
        zero = ring.zero
        nmons = len(self.monomials)
        for ri, rel in enumerate(presentation.relators):
            series = magnus_expand(rel, order, ring)
            # M(r) always has constant coefficient exactly 1, so M(r) - 1
            # is the positive-degree part of the series.
            shifted = {key: val for key, val in series.terms.items() if key}
            if not shifted:
                continue
            for d1 in range(order - 1):
                for d2 in range(order - 1 - d1):
                    for m1 in itertools.product(range(k), repeat=d1):
                        for m2 in itertools.product(range(k), repeat=d2):
                            col = [zero] * nmons
                            for key, val in shifted.items():
                                full = m1 + key + m2
                                if len(full) < order:
                                    j = self.index[full]
                                    col[j] = ring.add(col[j], val)
                            if any(c != zero for c in col):
                                self.columns.append(col)
                                self.column_meta.append((m1, ri, m2))
        if ring.is_field:
            self.span_rows, self.span_pivots = rref(ring, self.columns) \
                if self.columns else ([], [])
            self.elementary_divisors = None
        else:
            if self.columns:
                hnf, pivots = row_hermite(self.columns)
                self.span_rows, self.span_pivots = hnf[:len(pivots)], pivots
                div_mat = Matrix(rings.ZZ, self.columns, cols=nmons)
                self.elementary_divisors = rings.elementary_divisors(div_mat)
            else:
                self.span_rows, self.span_pivots = [], []
                self.elementary_divisors = []
        self._image_cache = {}

    @property
    def rank(self):
        """Rank of the quotient module (its dimension over a field; the
        rank of the free part over the integers)."""
        return len(self.monomials) - len(self.span_rows)

    @property
    def torsion_divisors(self):
        if self.elementary_divisors is None:
            return ()
        return tuple(d for d in self.elementary_divisors if d not in (0, 1))

    def series_vector(self, series):
        if series.order != self.order:
            raise ValueError("series order mismatch")
        vec = [self.ring.zero] * len(self.monomials)
        for key, val in series.terms.items():
            vec[self.index[key]] = val
        return vec

    def tensor_vector(self, T):
        if T.weight >= self.order:
            raise ValueError(f"tensor weight {T.weight} >= truncation order {self.order}")
        vec = [self.ring.zero] * len(self.monomials)
        for key, val in T.terms.items():
            vec[self.index[key]] = val
        return vec

    def normal_form(self, vec):
        """Canonical representative of vec modulo the relator-ideal span."""
        ring = self.ring
        v = list(vec)
        if ring.is_field:
            for row, c in zip(self.span_rows, self.span_pivots):
                f = v[c]
                if f != ring.zero:
                    v = [ring.sub(v[j], ring.mul(f, row[j])) for j in range(len(v))]
        else:
            for row, c in zip(self.span_rows, self.span_pivots):
                q = v[c] // row[c]
                if q:
                    v = [v[j] - q * row[j] for j in range(len(v))]
        return v

    def _degree_image_matrix(self, k):
        """Columns spanning image(monomials of degree >= k) + relator span."""
        if k not in self._image_cache:
            cols = []
            for i, m in enumerate(self.monomials):
                if len(m) >= k:
                    e = [self.ring.zero] * len(self.monomials)
                    e[i] = self.ring.one
                    cols.append(e)
            cols.extend(self.span_rows)
            entries = [[col[i] for col in cols] for i in range(len(self.monomials))]
            self._image_cache[k] = Matrix(self.ring, entries, cols=len(cols))
        return self._image_cache[k]

    def filtration_valuation(self, vec):
        """Largest k <= order with NF(vec) in the image of degree >= k
        monomials; returns order itself when the normal form vanishes
        (meaning: at least the truncation order)."""
        nf = self.normal_form(vec)
        zero = self.ring.zero
        if all(x == zero for x in nf):
            return self.order
        for k in range(self.order - 1, 0, -1):
            if membership(self._degree_image_matrix(k), nf) is not None:
                return k
        return 0

    def basis(self):
        """Representative monomials of a module basis (non-pivot monomials),
        each with its filtration degree."""
        pivot_set = set(self.span_pivots)
        reps = []
        for i, m in enumerate(self.monomials):
            if i in pivot_set:
                continue
            e = [self.ring.zero] * len(self.monomials)
            e[i] = self.ring.one
            reps.append((m, self.filtration_valuation(e)))
        return reps


_QUOTIENT_CACHE = {}


def build_truncated_quotient(P, order, ring):
    key = (P, order, ring)
    if key not in _QUOTIENT_CACHE:
        _QUOTIENT_CACHE[key] = TruncatedQuotient(P, order, ring)
    return _QUOTIENT_CACHE[key]


def pair(Q, T, combo):
    """The braiding pairing <T, sum c_i w_i>, computed as T's coefficient
    functional applied to the truncated Magnus expansion of the combination.

    ``combo`` is a Word or an iterable of (coefficient, Word) pairs.  For
    invariant T the value does not depend on the representative words."""
    ring = Q.ring
    if T.ring != ring:
        raise ValueError("ring mismatch")
    if T.weight >= Q.order:
        raise ValueError(f"tensor weight {T.weight} >= truncation order {Q.order}")
    if isinstance(combo, Word):
        combo = [(ring.one, combo)]
    total = ring.zero
    for coeff, w in combo:
        if w.alphabet != Q.alphabet:
            raise ValueError("alphabet mismatch")
        series = magnus_expand(w, Q.order, ring)
        val = ring.zero
        for key, c in T.terms.items():
            sval = series.terms.get(key)
            if sval is not None:
                val = ring.add(val, ring.mul(c, sval))
        total = ring.add(total, ring.mul(coeff, val))
    return total


@dataclass
class Witness:
    """A failed invariance certificate: a sandwich whose pairing with the
    tensor is nonzero, equivalently a multi-evaluation containing a relator."""

    left: tuple            # generator indices of the left monomial
    relator_index: int
    relator: Word
    right: tuple
    value: object

    def multi_evaluation_words(self, alphabet):
        ws = [Word.generator(alphabet, g) for g in self.left]
        ws.append(self.relator)
        ws.extend(Word.generator(alphabet, g) for g in self.right)
        return ws


def is_invariant(P, T):
    """Whether T's coefficient functional annihilates the relator-ideal
    span at order weight(T) + 1.  Returns (flag, witness-or-None)."""
    ring = T.ring
    Q = build_truncated_quotient(P, T.weight + 1, ring)
    vec = Q.tensor_vector(T)
    for col, meta in zip(Q.columns, Q.column_meta):
        s = ring.sum(ring.mul(vec[i], col[i]) for i in range(len(vec)))
        if s != ring.zero:
            m1, ri, m2 = meta
            return False, Witness(m1, ri, P.relators[ri], m2, s)
    return True, None


@dataclass
class InvariantBasis:
    """Canonical basis of the invariants of weight <= max_weight."""

    ring: object
    alphabet: Alphabet
    max_weight: int
    elements: list
    weights: list
    vectors: list
    monomials: list
    elementary_divisors: object = None

    def of_weight(self, w):
        return [e for e, wt in zip(self.elements, self.weights) if wt == w]

    def __len__(self):
        return len(self.elements)


def invariants_basis(P, order, ring):
    """All invariants of weight <= order-1, as the annihilator of the
    relator-ideal span; over the integers this is the saturated annihilator
    lattice (the dual of the free part of the quotient), with the
    elementary divisors attached as a torsion diagnostic."""
    Q = build_truncated_quotient(P, order, ring)
    nmons = len(Q.monomials)
    if Q.columns:
        constraint = Matrix(ring, Q.columns, cols=nmons)
        vectors = kernel_basis(constraint)
    else:
        vectors = [[ring.one if j == i else ring.zero for j in range(nmons)]
                   for i in range(nmons)]
    if ring.is_field and vectors:
        vectors, _ = rref(ring, vectors)
    elements = []
    for v in vectors:
        terms = {Q.monomials[i]: v[i] for i in range(nmons) if v[i] != ring.zero}
        elements.append(TensorElement(ring, P.alphabet, terms))
    order_key = sorted(range(len(elements)),
                       key=lambda i: (elements[i].weight,
                                      min((Q.index[k] for k in elements[i].terms), default=-1)))
    elements = [elements[i] for i in order_key]
    vectors = [vectors[i] for i in order_key]
    return InvariantBasis(ring=ring, alphabet=P.alphabet, max_weight=order - 1,
                          elements=elements, weights=[e.weight for e in elements],
                          vectors=vectors, monomials=Q.monomials,
                          elementary_divisors=Q.elementary_divisors)


@dataclass(frozen=True)
class DepthReport:
    """Dimension-series depth: exact value, or a lower bound at truncation."""

    value: int
    is_lower_bound: bool = False

    def __str__(self):
        return f">= {self.value}" if self.is_lower_bound else str(self.value)

    def json_value(self):
        return f">= {self.value}" if self.is_lower_bound else self.value


def dimension_depth(Q, w):
    """Largest k < order with (w - 1) in I^k, exact; or the bound
    'at least order' when the class of w - 1 vanishes at truncation."""
    if w.alphabet != Q.alphabet:
        raise ValueError("alphabet mismatch")
    ring = Q.ring
    series = magnus_expand(w, Q.order, ring)
    shifted = series.sub(TruncSeries.one(ring, Q.alphabet, Q.order))
    vec = Q.series_vector(shifted)
    k = Q.filtration_valuation(vec)
    if k >= Q.order:
        return DepthReport(Q.order, is_lower_bound=True)
    return DepthReport(k)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on generators: source generator -> target word."""

    source: Alphabet
    target: Alphabet
    images: tuple  # Word per source generator, in order

    @classmethod
    def from_mapping(cls, source, mapping, target=None):
        by_index = {}
        for key, img in mapping.items():
            idx = source.index(key) if isinstance(key, str) else key
            by_index[idx] = img
        missing = [source.names[i] for i in range(len(source)) if i not in by_index]
        if missing:
            raise ValueError(f"missing generator image for {missing[0]!r}")
        imgs = tuple(by_index[i] for i in range(len(source)))
        tgt = target or (imgs[0].alphabet if imgs else source)
        for img in imgs:
            if img.alphabet != tgt:
                raise ValueError("generator images use different alphabets")
        return cls(source, tgt, imgs)

    def apply(self, w):
        return substitute(w, {i: self.images[i] for i in range(len(self.source))})


def pullback(h, T, Q_target):
    """h^*(T) over the source alphabet.

    The weight-k coefficient at a source sequence (s1,...,sk) is the
    multi-evaluation of T against h(s1) | ... | h(sk), computed here as the
    coefficient pairing of T with the truncated series product
    (M(h(s1)) - 1) ... (M(h(sk)) - 1).  Satisfies the push-pull identity
    <h^*(T), w> = <T, h(w)>.
    """
    ring = T.ring
    if T.alphabet != Q_target.alphabet:
        raise ValueError("tensor alphabet does not match the target quotient")
    if T.weight >= Q_target.order:
        raise ValueError(f"tensor weight {T.weight} >= truncation order {Q_target.order}")
    order = Q_target.order
    one = TruncSeries.one(ring, Q_target.alphabet, order)
    shifted = [magnus_expand(img, order, ring).sub(one) for img in h.images]
    terms = {}
    if T.counit != ring.zero:
        terms[()] = T.counit

    def visit(key, series):
        if key:
            val = ring.zero
            for tkey, c in T.terms.items():
                sval = series.terms.get(tkey)
                if sval is not None:
                    val = ring.add(val, ring.mul(c, sval))
            if val != ring.zero:
                terms[key] = val
        if len(key) >= T.weight:
            return
        for s in range(len(h.source)):
            nxt = trunc_mul(series, shifted[s])
            if nxt.is_zero():
                continue
            visit(key + (s,), nxt)

    visit((), one)
    return TensorElement(ring, h.source, terms)


def describe_invariant(T, weight=None):
    return {"weight": T.weight if weight is None else weight,
            "tensor": format_tensor(T)}
