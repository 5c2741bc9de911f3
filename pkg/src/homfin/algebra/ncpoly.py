# src/homfin/algebra/ncpoly.py

"""
Graded generators, words and noncommutative polynomials.

A word is a tuple of generator indices; the empty tuple is the identity.
Words are ordered deglex: weighted degree first, then letters left to right in
declaration order. An `NCPoly` is an immutable mapping from words to nonzero
scalars over a fixed `Alphabet`.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from sympy.polys.domains.domain import Domain

from homfin.algebra.scalars import field_name, format_scalar, same_field
from homfin.core.exceptions import AlphabetMismatchError, PresentationError

Word = Tuple[int, ...]
EMPTY_WORD: Word = ()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise PresentationError(f"Generator '{self.name}' has degree {self.degree}; degrees must be >= 1.")


class Alphabet:
    """An ordered list of graded generators over a coefficient field."""

    def __init__(self, field: Domain, generators: Iterable[Generator]):
        self.field = field
        self.generators: Tuple[Generator, ...] = tuple(generators)
        self._by_name: Dict[str, int] = {}
        for i, gen in enumerate(self.generators):
            if gen.name in self._by_name:
                raise PresentationError(f"Duplicate generator name '{gen.name}'.")
            self._by_name[gen.name] = i
        self._degrees = tuple(g.degree for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Alphabet)
            and same_field(self.field, other.field)
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((field_name(self.field), self.generators))

    def __repr__(self) -> str:
        gens = " ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"Alphabet({field_name(self.field)}; {gens})"

    def index_of(self, name: str) -> Optional[int]:
        return self._by_name.get(name)

    def letter_degree(self, letter: int) -> int:
        return self._degrees[letter]

    def degree(self, word: Word) -> int:
        return sum(self._degrees[i] for i in word)

    def sort_key(self, word: Word) -> Tuple[int, Word]:
        return (self.degree(word), word)

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.generators[i].name for i in word)


def word_compare_deglex(w1: Word, w2: Word, alphabet: Alphabet) -> int:
    """Returns -1, 0 or 1 as w1 is smaller, equal or larger than w2 in deglex."""
    k1, k2 = alphabet.sort_key(w1), alphabet.sort_key(w2)
    return (k1 > k2) - (k1 < k2)


class NCPoly:
    """An element of the free algebra K<generators>."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Optional[Mapping[Word, object]] = None):
        self.alphabet = alphabet
        K = alphabet.field
        clean: Dict[Word, object] = {}
        for word, c in (terms or {}).items():
            c = K.convert(c)
            if c:
                clean[tuple(word)] = c
        self._terms = clean

    # --- Constructors ---

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet, {EMPTY_WORD: alphabet.field.one})

    @classmethod
    def monomial(cls, alphabet: Alphabet, word: Word, coeff=1) -> "NCPoly":
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def letter(cls, alphabet: Alphabet, name: str) -> "NCPoly":
        index = alphabet.index_of(name)
        if index is None:
            raise PresentationError(f"Unknown generator '{name}'.")
        return cls(alphabet, {(index,): alphabet.field.one})

    # --- Inspection ---

    @property
    def field(self) -> Domain:
        return self.alphabet.field

    @property
    def terms(self) -> Dict[Word, object]:
        return dict(self._terms)

    def coefficient(self, word: Word):
        return self._terms.get(tuple(word), self.field.zero)

    def items(self) -> Iterator[Tuple[Word, object]]:
        return iter(self._terms.items())

    def words(self):
        return self._terms.keys()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set:
        return {self.alphabet.degree(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Largest degree of a term; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def leading_word(self) -> Word:
        if not self._terms:
            raise ValueError("The zero polynomial has no leading word.")
        return max(self._terms, key=self.alphabet.sort_key)

    def leading_coefficient(self):
        return self._terms[self.leading_word()]

    def monic(self) -> "NCPoly":
        return self.scale(self.field.one / self.leading_coefficient())

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly(self.alphabet, {w: c for w, c in self._terms.items() if self.alphabet.degree(w) == d})

    # --- Arithmetic ---

    def _check(self, other: "NCPoly"):
        if not isinstance(other, NCPoly) or other.alphabet != self.alphabet:
            raise AlphabetMismatchError(
                f"Cannot combine polynomials over {self.alphabet!r} and {getattr(other, 'alphabet', other)!r}."
            )

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, self.field.zero) + c
        return NCPoly(self.alphabet, out)

    def __neg__(self) -> "NCPoly":
        return self.scale(-self.field.one)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        K = self.field
        out: Dict[Word, object] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, K.zero) + c1 * c2
        return NCPoly(self.alphabet, out)

    def __rmul__(self, other) -> "NCPoly":
        return self.scale(other)

    def scale(self, c) -> "NCPoly":
        c = self.field.convert(c)
        return NCPoly(self.alphabet, {w: c * v for w, v in self._terms.items()})

    def map_words(self, fn) -> "NCPoly":
        """Applies `fn` to every word, keeping the alphabet."""
        out: Dict[Word, object] = {}
        for w, c in self._terms.items():
            nw = fn(w)
            out[nw] = out.get(nw, self.field.zero) + c
        return NCPoly(self.alphabet, out)

    # --- Comparison and display ---

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self._terms.items())))

    def sorted_terms(self):
        """Terms from largest to smallest word in deglex."""
        return sorted(self._terms.items(), key=lambda t: self.alphabet.sort_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        K = self.field
        parts = []
        for word, c in self.sorted_terms():
            text = format_scalar(K, c)
            negative = text.startswith("-")
            text = text.lstrip("-")
            body = self.alphabet.word_str(word)
            if word and text == "1":
                piece = body
            elif word:
                piece = f"{text}*{body}"
            else:
                piece = text
            if not parts:
                parts.append(f"-{piece}" if negative else piece)
            else:
                parts.append(f"- {piece}" if negative else f"+ {piece}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({self})"


def poly_arith(p: NCPoly, q, op: str) -> NCPoly:
    """
    Ring operations of the free algebra.

    Args:
        p: left operand.
        q: right operand; a scalar when `op` is "scale".
        op: one of "add", "multiply", "scale".

    Raises:
        AlphabetMismatchError: operands over different fields or generators.
    """
    if op == "add":
        return p + q
    if op == "multiply":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"Unknown operation '{op}'.")
