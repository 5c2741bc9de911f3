# src/homfin/algebra/groebner.py

"""
Degree-truncated noncommutative Gröbner bases and the graded algebras they
present.

Completion is homogeneous and processed degree by degree up to the cutoff D,
FIFO inside a degree: once degree d has been processed the basis elements and
normal words of degree <= d are final. Overlap ambiguities are suffix/prefix
overlaps of leading words, self-overlaps included.
"""

import logging
import threading
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains.domain import Domain

from homfin.algebra import linalg
from homfin.algebra.ncpoly import EMPTY_WORD, Alphabet, NCPoly, Word
from homfin.algebra.presentation import AlgebraPresentation
from homfin.core.exceptions import TruncationError

logger = logging.getLogger(__name__)

# Rewriting rules map a leading word to the terms it reduces to.
Rules = Dict[Word, Tuple[Tuple[Word, object], ...]]


def _reduce(terms: Mapping[Word, object], rules: Rules, alphabet: Alphabet, lengths: Sequence[int]) -> Dict[Word, object]:
    """Full reduction: repeatedly rewrite the largest reducible word at its leftmost match."""
    K = alphabet.field
    work = dict(terms)
    result: Dict[Word, object] = {}
    while work:
        word = max(work, key=alphabet.sort_key)
        c = work.pop(word)
        match = _find_leading(word, rules, lengths)
        if match is None:
            result[word] = c
            continue
        i, length = match
        prefix, suffix = word[:i], word[i + length:]
        for tail_word, tail_coeff in rules[word[i:i + length]]:
            w = prefix + tail_word + suffix
            v = work.get(w, K.zero) + c * tail_coeff
            if v:
                work[w] = v
            else:
                work.pop(w, None)
    return result


def _find_leading(word: Word, rules: Rules, lengths: Sequence[int]) -> Optional[Tuple[int, int]]:
    for i in range(len(word)):
        for length in lengths:
            if i + length <= len(word) and word[i:i + length] in rules:
                return i, length
    return None


def _rule_from(poly: NCPoly) -> Tuple[Word, Tuple[Tuple[Word, object], ...]]:
    lead = poly.leading_word()
    return lead, tuple((w, -c) for w, c in poly.items() if w != lead)


def _overlaps(a: Word, b: Word) -> Iterable[Tuple[Word, Word, Word]]:
    """Yields (ambiguity word, left cofactor u, right cofactor v) for a·v == u·b."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield a + b[k:], a[:-k], b[k:]


@dataclass(frozen=True)
class TruncatedGroebnerBasis:
    """A reduced Gröbner basis complete up to degree `degree_bound`."""

    presentation: AlgebraPresentation
    degree_bound: int
    elements: Tuple[NCPoly, ...]
    certificate: Tuple[bool, ...]

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    def leading_words(self) -> Tuple[Word, ...]:
        return tuple(g.leading_word() for g in self.elements)

    def rules(self) -> Rules:
        return dict(_rule_from(g) for g in self.elements)

    def is_complete(self) -> bool:
        return all(self.certificate)


def groebner_truncated(pres: AlgebraPresentation, D: int) -> TruncatedGroebnerBasis:
    """
    Completes the relations of `pres` to a reduced Gröbner basis valid up to degree D.

    Args:
        pres: A validated homogeneous presentation.
        D: The degree bound.

    Returns:
        A TruncatedGroebnerBasis whose overlaps of degree <= D all reduce to zero.
    """
    alphabet = pres.alphabet
    K = alphabet.field
    pending: Dict[int, deque] = defaultdict(deque)
    for rel in pres.relations:
        d = rel.degree()
        if d <= D:
            pending[d].append(dict(rel.items()))
        else:
            logger.warning(f"Relation '{rel}' has degree {d} > D = {D} and is ignored at this cutoff.")

    basis: List[Dict[Word, object]] = []
    rules: Rules = {}

    for d in range(1, D + 1):
        queue = pending.pop(d, deque())
        added = 0
        while queue:
            terms = queue.popleft()
            lengths = sorted({len(w) for w in rules})
            reduced = _reduce(terms, rules, alphabet, lengths)
            if not reduced:
                continue
            poly = NCPoly(alphabet, reduced).monic()
            lead, tail = _rule_from(poly)
            rules[lead] = tail
            basis.append(dict(poly.items()))
            added += 1
            for other in list(basis):
                other_lead = NCPoly(alphabet, other).leading_word()
                pairs = [(poly, NCPoly(alphabet, other))]
                if other_lead != lead:
                    pairs.append((NCPoly(alphabet, other), poly))
                for f, g in pairs:
                    for word, u, v in _overlaps(f.leading_word(), g.leading_word()):
                        deg = alphabet.degree(word)
                        if deg > D:
                            continue
                        s_poly = f * NCPoly.monomial(alphabet, v) - NCPoly.monomial(alphabet, u) * g
                        pending[deg].append(dict(s_poly.items()))
        # Interreduce tails so the basis stays reduced.
        if added:
            lengths = sorted({len(w) for w in rules})
            new_basis = []
            for terms in basis:
                lead = NCPoly(alphabet, terms).leading_word()
                others = {w: t for w, t in rules.items() if w != lead}
                other_lengths = sorted({len(w) for w in others})
                tail = _reduce({w: c for w, c in terms.items() if w != lead}, others, alphabet, other_lengths)
                tail[lead] = K.one
                new_basis.append(tail)
                rules[lead] = tuple((w, -c) for w, c in tail.items() if w != lead)
            basis = new_basis
            logger.debug(f"Gröbner completion: degree {d} added {added} element(s), basis size {len(basis)}.")

    elements = tuple(sorted((NCPoly(alphabet, t) for t in basis), key=lambda p: alphabet.sort_key(p.leading_word())))
    certificate = overlap_certificate(alphabet, elements, D)
    if all(certificate):
        logger.info(f"Gröbner basis complete up to degree {D}: {len(elements)} element(s).")
    else:
        failed = [d for d, ok in enumerate(certificate) if not ok]
        logger.error(f"Gröbner completion left irreducible overlaps in degree(s) {failed}.")
    return TruncatedGroebnerBasis(pres, D, elements, certificate)


def overlap_certificate(alphabet: Alphabet, elements: Sequence[NCPoly], D: int) -> Tuple[bool, ...]:
    """
    Checks the overlap criterion degree by degree.

    Entry d is True when every overlap ambiguity of degree d between leading
    words of `elements` (self-overlaps included) reduces to zero. Entry 0 is
    always True.
    """
    polys = [p.monic() for p in elements if not p.is_zero()]
    rules = dict(_rule_from(p) for p in polys)
    lengths = sorted({len(w) for w in rules})
    certificate = [True] * (D + 1)
    for f in polys:
        for g in polys:
            for word, u, v in _overlaps(f.leading_word(), g.leading_word()):
                deg = alphabet.degree(word)
                if deg > D or not certificate[deg]:
                    continue
                s_poly = f * NCPoly.monomial(alphabet, v) - NCPoly.monomial(alphabet, u) * g
                if _reduce(dict(s_poly.items()), rules, alphabet, lengths):
                    logger.debug(f"Overlap {alphabet.word_str(word)} does not reduce to zero.")
                    certificate[deg] = False
    return tuple(certificate)


# -----------------------------------------------------------------------------
# Normal Forms and Normal Bases
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalBasis:
    """Per-degree normal words, degree 0 through D."""

    words: Tuple[Tuple[Word, ...], ...]

    def __getitem__(self, d: int) -> Tuple[Word, ...]:
        return self.words[d]

    def dims(self) -> Tuple[int, ...]:
        return tuple(len(ws) for ws in self.words)


def normal_basis(gb: TruncatedGroebnerBasis) -> NormalBasis:
    alphabet = gb.alphabet
    leads = set(gb.leading_words())
    lengths = sorted({len(w) for w in leads})
    D = gb.degree_bound
    by_degree: List[List[Word]] = [[EMPTY_WORD]] + [[] for _ in range(D)]
    for d in range(1, D + 1):
        for letter, gen in enumerate(alphabet.generators):
            if gen.degree > d:
                continue
            for w in by_degree[d - gen.degree]:
                cand = w + (letter,)
                if not any(len(cand) >= L and cand[-L:] in leads for L in lengths):
                    by_degree[d].append(cand)
        by_degree[d].sort()
    return NormalBasis(tuple(tuple(ws) for ws in by_degree))


def normal_form(p: NCPoly, gb: TruncatedGroebnerBasis) -> NCPoly:
    """
    Reduces `p` to its normal form modulo the relation ideal.

    Raises:
        TruncationError: if p has a term above the degree bound.
    """
    if p.degree() > gb.degree_bound:
        raise TruncationError(p.degree(), gb.degree_bound)
    rules = gb.rules()
    lengths = sorted({len(w) for w in rules})
    return NCPoly(gb.alphabet, _reduce(dict(p.items()), rules, gb.alphabet, lengths))


def hilbert_series(gb: TruncatedGroebnerBasis) -> Tuple[int, ...]:
    """(dim A_0, ..., dim A_D) by counting normal words."""
    return normal_basis(gb).dims()


# -----------------------------------------------------------------------------
# Brute-force Ideal Oracle
# -----------------------------------------------------------------------------

def free_words(alphabet: Alphabet, d: int) -> List[Word]:
    """All words of degree exactly d, sorted."""
    by_degree: List[List[Word]] = [[EMPTY_WORD]]
    for k in range(1, d + 1):
        layer = []
        for letter, gen in enumerate(alphabet.generators):
            if gen.degree <= k:
                layer.extend(w + (letter,) for w in by_degree[k - gen.degree])
        by_degree.append(sorted(layer))
    return by_degree[d]


def ideal_slice(pres: AlgebraPresentation, d: int) -> Tuple[List[Word], List[Dict[int, object]]]:
    """
    Degree-d slice of the two-sided ideal, by spanning every u·r·v.

    Returns:
        The degree-d free words and a list of spanning vectors indexed by them.
    """
    alphabet = pres.alphabet
    words = free_words(alphabet, d)
    index = {w: i for i, w in enumerate(words)}
    vectors = []
    for rel in pres.relations:
        r = rel.degree()
        if r > d:
            continue
        for left in range(0, d - r + 1):
            for u in free_words(alphabet, left):
                for v in free_words(alphabet, d - r - left):
                    vectors.append({index[u + w + v]: c for w, c in rel.items()})
    return words, vectors


def ideal_slice_dimension(pres: AlgebraPresentation, d: int) -> int:
    words, vectors = ideal_slice(pres, d)
    return linalg.rank(vectors, len(words), pres.field)


# -----------------------------------------------------------------------------
# Graded Algebra
# -----------------------------------------------------------------------------

class GradedAlgebra:
    """
    A connected graded algebra truncated at degree D.

    Basis keys are normal words. The class implements the algebra protocol
    shared with `MonoidAlgebra`: the module and resolution layers only talk to
    `basis`, `multiply`, `action_generators` and `augmentation`.
    """

    is_graded = True

    def __init__(self, presentation: AlgebraPresentation, D: int, name: Optional[str] = None):
        self.presentation = presentation
        self.cutoff = D
        self.name = name or "A"
        self.gb = groebner_truncated(presentation, D)
        self._basis = normal_basis(self.gb)
        self._index = [{w: i for i, w in enumerate(ws)} for ws in self._basis.words]
        self._rules = self.gb.rules()
        self._lengths = sorted({len(w) for w in self._rules})
        self._nf_cache: Dict[Word, Dict[Word, object]] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name}, D={self.cutoff}, dims={self.dims()})"

    @property
    def field(self) -> Domain:
        return self.presentation.field

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    @property
    def one(self) -> Word:
        return EMPTY_WORD

    def basis(self, d: int) -> Tuple[Word, ...]:
        if d < 0:
            return ()
        if d > self.cutoff:
            raise TruncationError(d, self.cutoff)
        return self._basis[d]

    def index(self, d: int) -> Dict[Word, int]:
        if d > self.cutoff:
            raise TruncationError(d, self.cutoff)
        return self._index[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def dims(self) -> Tuple[int, ...]:
        return self._basis.dims()

    def key_degree(self, key: Word) -> int:
        return self.alphabet.degree(key)

    def format_key(self, key: Word) -> str:
        return self.alphabet.word_str(key)

    def action_generators(self) -> List[Word]:
        return [(i,) for i in range(len(self.alphabet))]

    def augmentation(self, key: Word):
        return self.field.one if not key else self.field.zero

    def normal_form_word(self, word: Word) -> Dict[Word, object]:
        """Normal form of a single word as {normal word: coefficient}; cached."""
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        degree = self.alphabet.degree(word)
        if degree > self.cutoff:
            raise TruncationError(degree, self.cutoff)
        match = _find_leading(word, self._rules, self._lengths)
        if match is None:
            result = {word: self.field.one}
        else:
            i, length = match
            prefix, suffix = word[:i], word[i + length:]
            result = {}
            for tail_word, tail_coeff in self._rules[word[i:i + length]]:
                for w, c in self.normal_form_word(prefix + tail_word + suffix).items():
                    v = result.get(w, self.field.zero) + tail_coeff * c
                    if v:
                        result[w] = v
                    else:
                        result.pop(w, None)
        with self._lock:
            self._nf_cache[word] = result
        return result

    def normal_form(self, p: NCPoly) -> NCPoly:
        return NCPoly(self.alphabet, self.reduce_terms(p.items()))

    def reduce_terms(self, terms) -> Dict[Word, object]:
        out: Dict[Word, object] = {}
        for word, c in (terms.items() if isinstance(terms, Mapping) else terms):
            for w, v in self.normal_form_word(tuple(word)).items():
                s = out.get(w, self.field.zero) + c * v
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return out

    def multiply(self, u: Word, v: Word) -> Dict[Word, object]:
        return self.normal_form_word(u + v)

    def is_normal(self, word: Word) -> bool:
        return _find_leading(word, self._rules, self._lengths) is None

    def to_poly(self, element: Mapping[Word, object]) -> NCPoly:
        return NCPoly(self.alphabet, element)

    def signature(self) -> Tuple:
        return ("graded", self.presentation.to_text(), self.cutoff)
