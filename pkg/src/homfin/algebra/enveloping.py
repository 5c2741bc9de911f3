# src/homfin/algebra/enveloping.py

"""
Opposite and enveloping algebras, and the bimodule <-> left E-module functors.

E = A ⊗ A^opp is presented on the generators of A followed by a copy x_op of
each of them: A's relations on the first block, the word-reversed relations on
the second, and x_op*y - y*x_op for every pair. The cross relations have their
leading word in the second block, so every normal word of E is u·v° with u
normal in A and v° normal in A^opp, and E_i has the expected dimension.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Tuple

from homfin.algebra.groebner import GradedAlgebra
from homfin.algebra.modules import Element, GradedModule, add_scaled
from homfin.algebra.ncpoly import Alphabet, Generator, NCPoly, Word
from homfin.algebra.presentation import AlgebraPresentation
from homfin.core.exceptions import BimoduleAxiomError, HomfinError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Opposite Algebra
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class OppositeAlgebra:
    """A^opp: the same generators with every relation word reversed."""

    source: AlgebraPresentation
    presentation: AlgebraPresentation


def reverse_poly(p: NCPoly, alphabet: Optional[Alphabet] = None) -> NCPoly:
    return NCPoly(alphabet or p.alphabet, {tuple(reversed(w)): c for w, c in p.items()})


def opposite(pres: AlgebraPresentation) -> OppositeAlgebra:
    reversed_relations = tuple(reverse_poly(r) for r in pres.relations)
    return OppositeAlgebra(pres, AlgebraPresentation(pres.alphabet, reversed_relations))


def opposite_algebra(A: GradedAlgebra) -> GradedAlgebra:
    return GradedAlgebra(opposite(A.presentation).presentation, A.cutoff, name=f"{A.name}^opp")


# -----------------------------------------------------------------------------
# Enveloping Algebra
# -----------------------------------------------------------------------------

def _opposite_name(name: str, taken: set) -> str:
    candidate = f"{name}_op"
    while candidate in taken:
        candidate += "_"
    return candidate


def enveloping_presentation(pres: AlgebraPresentation) -> AlgebraPresentation:
    gens = list(pres.generators)
    k = len(gens)
    taken = {g.name for g in gens}
    right = []
    for g in gens:
        name = _opposite_name(g.name, taken)
        taken.add(name)
        right.append(Generator(name, g.degree))
    alphabet = Alphabet(pres.field, gens + right)

    relations: List[NCPoly] = []
    for r in pres.relations:
        relations.append(NCPoly(alphabet, dict(r.items())))
    for r in pres.relations:
        relations.append(NCPoly(alphabet, {tuple(k + i for i in reversed(w)): c for w, c in r.items()}))
    one = pres.field.one
    for i in range(k):
        for j in range(k):
            relations.append(NCPoly(alphabet, {(k + j, i): one, (i, k + j): -one}))
    return AlgebraPresentation(alphabet, tuple(relations))


class EnvelopingAlgebra(GradedAlgebra):
    """
    E = A ⊗ A^opp as a graded algebra with its own Gröbner basis.

    Left-block letters are 0..k-1, right-block letters k..2k-1. The retraction
    E -> A sends right letters to 0 and keeps left letters.
    """

    def __init__(self, A: GradedAlgebra, A_opp: Optional[GradedAlgebra] = None):
        self.base = A
        self.opposite = A_opp or opposite_algebra(A)
        self.k = len(A.alphabet)
        super().__init__(enveloping_presentation(A.presentation), A.cutoff, name=f"E({A.name})")
        defects = self.convolution_defects()
        if defects:
            raise HomfinError(f"Enveloping algebra dimensions disagree with the convolution in degrees {defects}.")
        logger.info(f"Enveloping algebra {self.name}: dims {self.dims()}")

    @classmethod
    def from_algebra(cls, A: GradedAlgebra) -> "EnvelopingAlgebra":
        return cls(A)

    def convolution_defects(self) -> List[int]:
        a, b = self.base.dims(), self.opposite.dims()
        expected = [sum(a[p] * b[i - p] for p in range(i + 1)) for i in range(self.cutoff + 1)]
        return [i for i in range(self.cutoff + 1) if expected[i] != self.dim(i)]

    def embed_left(self, u: Word) -> Dict[Word, object]:
        """a ⊗ 1 for a normal word of A."""
        return dict(self.normal_form_word(tuple(u)))

    def embed_right(self, w: Word) -> Dict[Word, object]:
        """1 ⊗ b° for a normal word of A^opp."""
        return dict(self.normal_form_word(tuple(self.k + i for i in w)))

    def right_from_base(self, w: Word) -> Dict[Word, object]:
        """1 ⊗ b° for a word b of A: (l1...lm)° = lm°...l1°."""
        return dict(self.normal_form_word(tuple(self.k + i for i in reversed(w))))

    def split(self, word: Word) -> Tuple[Word, Word]:
        """(u, v) for a normal word u·v° of E, v read in A^opp letters."""
        cut = next((i for i, letter in enumerate(word) if letter >= self.k), len(word))
        left, right = word[:cut], word[cut:]
        if any(letter >= self.k for letter in left) or any(letter < self.k for letter in right):
            raise HomfinError(f"Word {self.format_key(word)} is not of the form u·v°.")
        return left, tuple(letter - self.k for letter in right)

    def contract(self, word: Word) -> Dict[Word, object]:
        """ρ(a ⊗ b°) = ε(b)·a."""
        if any(letter >= self.k for letter in word):
            return {}
        return {tuple(word): self.field.one}

    def act_on_bimodule(self, word: Word, key: Hashable, M: "Bimodule") -> Element:
        """(a ⊗ b°)·m = a·m·b, letter by letter from the right."""
        K = self.field
        element: Element = {key: K.one}
        for letter in reversed(word):
            out: Element = {}
            for m, c in element.items():
                if letter < self.k:
                    add_scaled(out, M.left_act((letter,), m), c, K)
                else:
                    add_scaled(out, M.right_act(m, (letter - self.k,)), c, K)
            element = out
            if not element:
                break
        return element


# -----------------------------------------------------------------------------
# Bimodules
# -----------------------------------------------------------------------------

class Bimodule:
    """A graded bimodule over `algebra`, given by its basis and both actions on keys."""

    def __init__(self, algebra, name: str = "M"):
        self.algebra = algebra
        self.name = name

    @property
    def field(self):
        return self.algebra.field

    @property
    def cutoff(self) -> int:
        return self.algebra.cutoff

    def basis(self, d: int):
        raise NotImplementedError

    def key_degree(self, key) -> int:
        raise NotImplementedError

    def left_act(self, a_key, key) -> Element:
        raise NotImplementedError

    def right_act(self, key, b_key) -> Element:
        raise NotImplementedError

    def format_key(self, key) -> str:
        return str(key)


class RegularBimodule(Bimodule):
    """The algebra as a bimodule over itself."""

    def basis(self, d: int):
        return self.algebra.basis(d)

    def key_degree(self, key) -> int:
        return self.algebra.key_degree(key)

    def left_act(self, a_key, key) -> Element:
        return dict(self.algebra.multiply(a_key, key))

    def right_act(self, key, b_key) -> Element:
        return dict(self.algebra.multiply(key, b_key))

    def format_key(self, key) -> str:
        return self.algebra.format_key(key)


class TrivialBimodule(Bimodule):
    """K with both actions through the augmentation."""

    KEY = "1"

    def basis(self, d: int):
        return (self.KEY,) if d == 0 else ()

    def key_degree(self, key) -> int:
        return 0

    def left_act(self, a_key, key) -> Element:
        c = self.algebra.augmentation(a_key)
        return {key: c} if c else {}

    def right_act(self, key, b_key) -> Element:
        c = self.algebra.augmentation(b_key)
        return {key: c} if c else {}


class FreeBimodule(Bimodule):
    """⊕ A ⊗ A on generators of the given degrees; keys are (e, u, v) for u·e·v."""

    def __init__(self, algebra, generator_degrees, name: str = "P"):
        super().__init__(algebra, name)
        self.generator_degrees = tuple(generator_degrees)

    def basis(self, d: int):
        A = self.algebra
        keys = []
        for e, ge in enumerate(self.generator_degrees):
            for p in range(0, d - ge + 1):
                q = d - ge - p
                if p > A.cutoff or q > A.cutoff:
                    continue
                keys.extend((e, u, v) for u in A.basis(p) for v in A.basis(q))
        return tuple(keys)

    def key_degree(self, key) -> int:
        e, u, v = key
        return self.generator_degrees[e] + self.algebra.key_degree(u) + self.algebra.key_degree(v)

    def left_act(self, a_key, key) -> Element:
        e, u, v = key
        return {(e, w, v): c for w, c in self.algebra.multiply(a_key, u).items()}

    def right_act(self, key, b_key) -> Element:
        e, u, v = key
        return {(e, u, w): c for w, c in self.algebra.multiply(v, b_key).items()}


class ActionBimodule(Bimodule):
    """The bimodule 𝓐(N) of a left E-module N: a·n = (a ⊗ 1)n, n·b = (1 ⊗ b°)n."""

    def __init__(self, N: GradedModule, env):
        super().__init__(env.base, f"A({N.name})")
        self.module = N
        self.env = env

    def basis(self, d: int):
        return self.module.basis(d)

    def key_degree(self, key) -> int:
        return self.module.key_degree(key)

    def left_act(self, a_key, key) -> Element:
        return self.module.act_by(self.env.embed_left(a_key), {key: self.field.one})

    def right_act(self, key, b_key) -> Element:
        return self.module.act_by(self.env.right_from_base(b_key), {key: self.field.one})

    def format_key(self, key) -> str:
        return self.module.format_key(key)


class EnvelopedModule(GradedModule):
    """𝓔(M): a bimodule regarded as a left module over the enveloping algebra."""

    def __init__(self, bimodule: Bimodule, env):
        super().__init__(env, name=f"E({bimodule.name})")
        self.bimodule = bimodule

    def basis(self, d: int):
        return self.bimodule.basis(d)

    def key_degree(self, key) -> int:
        return self.bimodule.key_degree(key)

    def act(self, a_key, key) -> Element:
        return self.algebra.act_on_bimodule(a_key, key, self.bimodule)

    def format_key(self, key) -> str:
        return self.bimodule.format_key(key)


def _action_letters(algebra) -> List:
    return [algebra.one] + [g for g in algebra.action_generators() if g != algebra.one]


def bimodule_axiom_witness(M: Bimodule) -> Optional[Tuple]:
    """First (a, m, b) with a(mb) != (am)b, or None."""
    A = M.algebra
    K = M.field
    letters = _action_letters(A)
    for d in range(M.cutoff + 1):
        for m in M.basis(d):
            for a in letters:
                for b in letters:
                    if d + A.key_degree(a) + A.key_degree(b) > M.cutoff:
                        continue
                    left_first: Element = {}
                    for key, c in M.left_act(a, m).items():
                        add_scaled(left_first, M.right_act(key, b), c, K)
                    right_first: Element = {}
                    for key, c in M.right_act(m, b).items():
                        add_scaled(right_first, M.left_act(a, key), c, K)
                    if left_first != right_first:
                        return (a, m, b)
    return None


def to_left_E_module(M: Bimodule, env) -> EnvelopedModule:
    """
    𝓔(M), with (a ⊗ b°)·m = a·m·b.

    Raises:
        BimoduleAxiomError: the two actions do not commute.
    """
    witness = bimodule_axiom_witness(M)
    if witness is not None:
        raise BimoduleAxiomError(f"Left and right actions on {M.name} do not commute at {witness}.", witness=witness)
    return EnvelopedModule(M, env)


def from_left_E_module(N: GradedModule, env) -> Bimodule:
    """𝓐(N). Unwraps 𝓔(M) back to M exactly."""
    if isinstance(N, EnvelopedModule) and N.algebra is env:
        return N.bimodule
    return ActionBimodule(N, env)


def bimodules_agree(M1: Bimodule, M2: Bimodule) -> bool:
    """Same bases and the same actions of 1 and the algebra generators on both sides."""
    A = M1.algebra
    letters = _action_letters(A)
    for d in range(M1.cutoff + 1):
        if tuple(M1.basis(d)) != tuple(M2.basis(d)):
            return False
        for m in M1.basis(d):
            for a in letters:
                if d + A.key_degree(a) > M1.cutoff:
                    continue
                if M1.left_act(a, m) != M2.left_act(a, m) or M1.right_act(m, a) != M2.right_act(m, a):
                    return False
    return True


def free_bimodule_basis_defects(M: FreeBimodule, env) -> List[int]:
    """
    Degrees where 𝓔 of a free bimodule fails to be free on the same generators:
    the map E·e ↦ ω·(1 e 1) must be a square invertible matrix in each degree.
    """
    from homfin.algebra import linalg
    from homfin.algebra.modules import FreeGradedModule, GradedLinearMap

    F = FreeGradedModule(env, M.generator_degrees, name="E-free")
    N = EnvelopedModule(M, env)
    one = env.base.one

    def key_image(key):
        e, w = key
        return N.act(w, (e, one, one))

    phi = GradedLinearMap(F, N, key_image, name="𝓔-basis")
    defects = []
    for d in range(env.cutoff + 1):
        if F.dim(d) != N.dim(d) or linalg.rank_of(phi.matrix(d)) != N.dim(d):
            defects.append(d)
    return defects


# -----------------------------------------------------------------------------
# The Retraction E ⇄ A
# -----------------------------------------------------------------------------

def env_retraction(env):
    """
    ρ: E -> A, a ⊗ b° ↦ ε(b)a, with section ι: a ↦ a ⊗ 1.

    Works for graded and finite enveloping algebras; the returned
    RingRetraction has been validated (ρι = id on the whole of A).
    """
    from homfin.algebra.retractions import RingRetraction

    A = env.base
    K = env.field
    if env.is_graded:
        rho_images = [NCPoly.monomial(A.alphabet, (i,)) for i in range(env.k)]
        rho_images += [NCPoly.zero(A.alphabet) for _ in range(env.k)]
        iota_images = [NCPoly.monomial(env.alphabet, (i,)) for i in range(env.k)]
    else:
        rho_images = [env.contract(key) for key in env.basis(0)]
        iota_images = [dict(env.embed_left(a)) for a in A.basis(0)]
    return RingRetraction(env, A, rho_images, iota_images, name="ρ_E")
