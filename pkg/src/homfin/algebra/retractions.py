# src/homfin/algebra/retractions.py

"""
Ring retractions, retractive pairs, and the twin-resolution construction that
moves finiteness from a ring to its retracts.

Given ρ: R -> S with section ι (ρι = id_S) and a retractive pair M ⇄ L, each
step takes generators m_e of M over R and builds

    P = ⊕ R·e ⊕ ⊕ R·e',   F = ⊕ S·ē,
    ∂(e) = α⁻α⁺(m_e),  ∂(e') = m_e − α⁻α⁺(m_e),  δ(ē) = α⁺(m_e),
    β⁺(e) = ē, β⁺(e') = 0, β⁻(ē) = e,

then recurses on the kernel pair. The bottom row is a free resolution of L.
Both backends (truncated graded and finite monoid algebras) go through here.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from homfin.algebra import linalg
from homfin.algebra.enveloping import (
    EnvelopingAlgebra,
    RegularBimodule,
    opposite_algebra,
    reverse_poly,
    to_left_E_module,
)
from homfin.algebra.group_rings import FiniteEnvelopingAlgebra, FiniteMonoid, MonoidAlgebra, direct_product
from homfin.algebra.modules import (
    Element,
    FreeGradedModule,
    GradedLinearMap,
    GradedModule,
    ModuleGenerator,
    Submodule,
    TrivialModule,
    add_scaled,
    assemble_map,
    combine,
    kernel_degreewise,
    select_generators,
)
from homfin.algebra.ncpoly import NCPoly
from homfin.algebra.resolutions import (
    ExactnessReport,
    PartialFreeResolution,
    Verdict,
    VerdictRecord,
    check_exactness,
    fpn_verdict,
)
from homfin.algebra.scalars import same_field
from homfin.core.exceptions import (
    GeneratingSetError,
    HomfinError,
    ResolutionError,
    RetractionError,
    RetractivePairError,
)

logger = logging.getLogger(__name__)

Selector = Callable[[Submodule], List[ModuleGenerator]]


# -----------------------------------------------------------------------------
# Ring Retractions
# -----------------------------------------------------------------------------

def _product(algebra, x: Element, y: Element) -> Element:
    K = algebra.field
    out: Element = {}
    for u, c in x.items():
        for v, d in y.items():
            add_scaled(out, algebra.multiply(u, v), c * d, K)
    return out


class RingRetraction:
    """
    ρ: big -> small with section ι: small -> big.

    For graded algebras the images are NCPolys given per generator (ρ over the
    small alphabet, ι over the big one) and must be homogeneous of the
    generator's degree. For monoid algebras they are elements given per basis
    element. Construction validates the homomorphism and section laws.

    Raises:
        RetractionError: a law fails; the witness names the offending
            generator, element pair or relation.
    """

    def __init__(self, big, small, rho_images: Sequence, iota_images: Sequence, name: str = "ρ"):
        if big.is_graded != small.is_graded:
            raise RetractionError("A retraction needs two graded or two finite algebras.")
        if not same_field(big.field, small.field):
            raise RetractionError("Retraction between algebras over different fields.")
        if big.cutoff != small.cutoff:
            raise RetractionError(f"Cutoffs differ: {big.cutoff} and {small.cutoff}.")
        self.big = big
        self.small = small
        self.name = name
        self.rho_images = tuple(rho_images)
        self.iota_images = tuple(iota_images)
        self.base: Optional["RingRetraction"] = None
        self._rho_cache: Dict = {}
        self._iota_cache: Dict = {}
        if big.is_graded:
            self._validate_graded()
        else:
            self._validate_finite()
        logger.debug(f"Retraction {name}: {big.name} -> {small.name} validated")

    @property
    def field(self):
        return self.big.field

    @property
    def cutoff(self) -> int:
        return self.big.cutoff

    # --- Evaluation ---

    def _word_image(self, word, images, target, cache) -> Element:
        cached = cache.get(word)
        if cached is not None:
            return cached
        result: Element = {target.one: target.field.one}
        for letter in word:
            image = images[letter]
            step: Element = {}
            for u, c in result.items():
                for v, d in image.items():
                    add_scaled(step, target.normal_form_word(tuple(u) + tuple(v)), c * d, target.field)
            result = step
            if not result:
                break
        cache[word] = result
        return result

    def rho_key(self, key) -> Element:
        if self.big.is_graded:
            return self._word_image(tuple(key), self.rho_images, self.small, self._rho_cache)
        return self.rho_images[key]

    def iota_key(self, key) -> Element:
        if self.big.is_graded:
            return self._word_image(tuple(key), self.iota_images, self.big, self._iota_cache)
        return self.iota_images[key]

    def rho(self, element: Element) -> Element:
        return combine(((c, self.rho_key(k)) for k, c in element.items()), self.field)

    def iota(self, element: Element) -> Element:
        return combine(((c, self.iota_key(k)) for k, c in element.items()), self.field)

    @property
    def augmented(self) -> bool:
        """ε_S ρ = ε_R and ε_R ι = ε_S."""
        K = self.field
        if self.big.is_graded:
            return True
        for images, source in ((self.rho_images, self.big), (self.iota_images, self.small)):
            for key in source.basis(0):
                if sum(images[key].values(), K.zero) != source.augmentation(key):
                    return False
        return True

    # --- Validation ---

    def _validate_graded(self):
        R, S = self.big, self.small
        if len(self.rho_images) != len(R.alphabet) or len(self.iota_images) != len(S.alphabet):
            raise RetractionError("Every generator needs exactly one image.")
        for images, source, target, label in (
            (self.rho_images, R, S, "ρ"),
            (self.iota_images, S, R, "ι"),
        ):
            for letter, poly in enumerate(images):
                name = source.alphabet.generators[letter].name
                if poly.alphabet != target.alphabet:
                    raise RetractionError(f"{label}({name}) is not over {target.name}'s generators.", witness=name)
                degree = source.alphabet.letter_degree(letter)
                if poly and poly.degrees() != {degree}:
                    raise RetractionError(
                        f"{label}({name}) = {poly} is not homogeneous of degree {degree}.", witness=name
                    )
        self.rho_images = tuple({w: c for w, c in p.items()} for p in self.rho_images)
        self.iota_images = tuple({w: c for w, c in p.items()} for p in self.iota_images)

        for relations, fn, label in ((R.presentation.relations, self._rho_word_combo, "ρ"), (S.presentation.relations, self._iota_word_combo, "ι")):
            for relation in relations:
                if relation.degree() > self.cutoff:
                    logger.warning(f"{label}: relation {relation} lies above the cutoff and was not checked.")
                    continue
                if fn(relation):
                    raise RetractionError(f"{label} does not kill the relation {relation}.", witness=str(relation))

        for letter, g in enumerate(S.alphabet.generators):
            if self.rho(self.iota_key((letter,))) != {(letter,): self.field.one}:
                raise RetractionError(f"ρι({g.name}) != {g.name}: the section law fails.", witness=g.name)
        for d in range(self.cutoff + 1):
            for w in S.basis(d):
                if self.rho(self.iota_key(w)) != {w: self.field.one}:
                    raise RetractionError(f"ρι fails on {S.format_key(w)}.", witness=S.format_key(w))

    def _rho_word_combo(self, poly: NCPoly) -> Element:
        return combine(((c, self.rho_key(w)) for w, c in poly.items()), self.field)

    def _iota_word_combo(self, poly: NCPoly) -> Element:
        return combine(((c, self.iota_key(w)) for w, c in poly.items()), self.field)

    def _validate_finite(self):
        R, S = self.big, self.small
        K = self.field
        if len(self.rho_images) != R.dim(0) or len(self.iota_images) != S.dim(0):
            raise RetractionError("Every element needs exactly one image.")
        self.rho_images = tuple(dict(x) for x in self.rho_images)
        self.iota_images = tuple(dict(x) for x in self.iota_images)
        for images, source, target, label in (
            (self.rho_images, R, S, "ρ"),
            (self.iota_images, S, R, "ι"),
        ):
            if images[source.one] != {target.one: K.one}:
                raise RetractionError(f"{label} is not unital.", witness=source.format_key(source.one))
            for a in source.basis(0):
                for b in source.basis(0):
                    lhs = combine(((c, images[k]) for k, c in source.multiply(a, b).items()), K)
                    if lhs != _product(target, images[a], images[b]):
                        pair = (source.format_key(a), source.format_key(b))
                        raise RetractionError(f"{label} is not multiplicative at {pair}.", witness=pair)
        for c in S.basis(0):
            if self.rho(self.iota_key(c)) != {c: K.one}:
                raise RetractionError(f"ρι({S.format_key(c)}) is not the identity.", witness=S.format_key(c))

    # --- Derived retractions ---

    def opposite(self) -> "RingRetraction":
        """The same maps between the opposite algebras."""
        if self.big.is_graded:
            R_opp, S_opp = opposite_algebra(self.big), opposite_algebra(self.small)
            rho = [reverse_poly(NCPoly(S_opp.alphabet, img)) for img in self.rho_images]
            iota = [reverse_poly(NCPoly(R_opp.alphabet, img)) for img in self.iota_images]
            return RingRetraction(R_opp, S_opp, rho, iota, name=f"{self.name}^opp")
        R_opp = MonoidAlgebra(self.big.monoid.opposite(), self.field)
        S_opp = MonoidAlgebra(self.small.monoid.opposite(), self.field)
        return RingRetraction(R_opp, S_opp, self.rho_images, self.iota_images, name=f"{self.name}^opp")

    def enveloping(self) -> "RingRetraction":
        """ρ ⊗ ρ^opp between enveloping algebras; `base` points back at self."""
        K = self.field
        if self.big.is_graded:
            E_R, E_S = EnvelopingAlgebra(self.big), EnvelopingAlgebra(self.small)

            def lift(images, target_env):
                k = target_env.k
                left = [NCPoly(target_env.alphabet, img) for img in images]
                right = [
                    NCPoly(target_env.alphabet, {tuple(k + i for i in reversed(w)): c for w, c in img.items()})
                    for img in images
                ]
                return left + right

            env = RingRetraction(E_R, E_S, lift(self.rho_images, E_S), lift(self.iota_images, E_R), name=f"E({self.name})")
        else:
            E_R = FiniteEnvelopingAlgebra(self.big.monoid, K)
            E_S = FiniteEnvelopingAlgebra(self.small.monoid, K)

            def lift(images, source_env, target_env):
                lifted = []
                for key in source_env.basis(0):
                    a, b = source_env.split(key)
                    image: Element = {}
                    for x, c in images[a].items():
                        for y, d in images[b].items():
                            add_scaled(image, {target_env.key(x, y): K.one}, c * d, K)
                    lifted.append(image)
                return lifted

            env = RingRetraction(
                E_R, E_S, lift(self.rho_images, E_R, E_S), lift(self.iota_images, E_S, E_R), name=f"E({self.name})"
            )
        env.base = self
        return env


def graded_retraction(big, small, rho_map: Dict[str, NCPoly], iota_map: Dict[str, NCPoly], name: str = "ρ") -> RingRetraction:
    """Retraction from images keyed by generator name."""
    missing = [g.name for g in big.alphabet.generators if g.name not in rho_map]
    missing += [g.name for g in small.alphabet.generators if g.name not in iota_map]
    if missing:
        raise RetractionError(f"No image given for generators {missing}.", witness=missing[0])
    rho = [rho_map[g.name] for g in big.alphabet.generators]
    iota = [iota_map[g.name] for g in small.alphabet.generators]
    return RingRetraction(big, small, rho, iota, name=name)


def monoid_retraction(B: FiniteMonoid, C: FiniteMonoid, psi: Sequence[int], phi: Sequence[int], field) -> RingRetraction:
    """The algebra retraction KB -> KC induced by monoid maps ψ: B -> C, φ: C -> B with ψφ = id."""
    one = field.one
    KB, KC = MonoidAlgebra(B, field), MonoidAlgebra(C, field)
    return RingRetraction(KB, KC, [{psi[b]: one} for b in range(B.order)], [{phi[c]: one} for c in range(C.order)], name="ψ")


def projection_retraction(C: FiniteMonoid, C2: FiniteMonoid, field) -> RingRetraction:
    """C × C2 -> C, (c, c2) ↦ c, with section c ↦ (c, 1)."""
    B = direct_product(C, C2)
    m = C2.order
    return monoid_retraction(B, C, [b // m for b in range(B.order)], [c * m for c in range(C.order)], field)


def sign_retraction(C2: FiniteMonoid, trivial: FiniteMonoid, field) -> RingRetraction:
    """KC_2 -> K, g ↦ −1: a retraction that is not augmented when char K != 2."""
    K = field
    rho = [{0: K.one}, {0: -K.one}]
    iota = [{0: K.one}]
    return RingRetraction(MonoidAlgebra(C2, K), MonoidAlgebra(trivial, K), rho, iota, name="sign")


# -----------------------------------------------------------------------------
# Retractive Pairs
# -----------------------------------------------------------------------------

class RetractivePair:
    """
    M ⊆ M.ambient over the big ring, L ⊆ L.ambient over the small ring, with
    α⁺: M -> L R-linear through ρ, α⁻: L -> M S-linear through ι, and α⁺α⁻ = id_L.

    Raises:
        RetractivePairError: an identity fails; the witness is (degree, element).
    """

    def __init__(self, retraction: RingRetraction, M: Submodule, L: Submodule, alpha_plus: GradedLinearMap, alpha_minus: GradedLinearMap, validate: bool = True):
        self.retraction = retraction
        self.M = M
        self.L = L
        self.alpha_plus = alpha_plus
        self.alpha_minus = alpha_minus
        if validate:
            self.validate()

    def validate(self) -> None:
        R, S = self.retraction.big, self.retraction.small
        if self.M.algebra is not R and self.M.algebra.signature() != R.signature():
            raise RetractivePairError("M is not a module over the big ring.")
        if self.L.algebra is not S and self.L.algebra.signature() != S.signature():
            raise RetractivePairError("L is not a module over the small ring.")
        ap, am = self.alpha_plus, self.alpha_minus
        rho, iota = self.retraction.rho_key, self.retraction.iota_key
        for d in range(self.retraction.cutoff + 1):
            for l in self.L.elements(d):
                if ap.apply(am.apply(l)) != l:
                    raise RetractivePairError("α⁺α⁻ is not the identity on L.", witness=(d, l))
                if not self.M.contains(am.apply(l)):
                    raise RetractivePairError("α⁻ does not map L into M.", witness=(d, l))
            for m in self.M.elements(d):
                if not self.L.contains(ap.apply(m)):
                    raise RetractivePairError("α⁺ does not map M into L.", witness=(d, m))

            for r in R.action_generators():
                if d + R.key_degree(r) > self.retraction.cutoff:
                    continue
                for m in self.M.elements(d):
                    lhs = ap.apply(self.M.ambient.act_element(r, m))
                    rhs = self.L.ambient.act_by(rho(r), ap.apply(m))
                    if lhs != rhs:
                        raise RetractivePairError("α⁺ is not R-linear through ρ.", witness=(d, r, m))
            for s in S.action_generators():
                if d + S.key_degree(s) > self.retraction.cutoff:
                    continue
                for l in self.L.elements(d):
                    lhs = am.apply(self.L.ambient.act_element(s, l))
                    rhs = self.M.ambient.act_by(iota(s), am.apply(l))
                    if lhs != rhs:
                        raise RetractivePairError("α⁻ is not S-linear through ι.", witness=(d, s, l))


class PairMap:
    """
    (φ, ψ) from one retractive pair to another, with β⁺φ = ψα⁺ and β⁻ψ = φα⁻
    on the source pair.
    """

    def __init__(self, source: RetractivePair, target: RetractivePair, phi: GradedLinearMap, psi: GradedLinearMap, validate: bool = True):
        self.source = source
        self.target = target
        self.phi = phi
        self.psi = psi
        if validate:
            self.validate()

    def validate(self) -> None:
        src, tgt = self.source, self.target
        for d in range(src.retraction.cutoff + 1):
            for m in src.M.elements(d):
                image = self.phi.apply(m)
                if not tgt.M.contains(image):
                    raise RetractivePairError("φ does not map M into M'.", witness=(d, m))
                if tgt.alpha_plus.apply(image) != self.psi.apply(src.alpha_plus.apply(m)):
                    raise RetractivePairError("β⁺φ != ψα⁺.", witness=(d, m))
            for l in src.L.elements(d):
                image = self.psi.apply(l)
                if not tgt.L.contains(image):
                    raise RetractivePairError("ψ does not map L into L'.", witness=(d, l))
                if tgt.alpha_minus.apply(image) != self.phi.apply(src.alpha_minus.apply(l)):
                    raise RetractivePairError("β⁻ψ != φα⁻.", witness=(d, l))


def restricted_kernel(phi: GradedLinearMap, S: Submodule) -> Submodule:
    """Ker φ ∩ S as a submodule of S.ambient."""
    if S.dims() == S.ambient.dims():
        return kernel_degreewise(phi)
    K = S.field
    per_degree = {}
    for d in range(S.ambient.cutoff + 1):
        vectors = S.vectors[d]
        if not vectors:
            continue
        columns = [phi.target.to_vector(phi.apply(S.ambient.to_element(v, d)), d) for v in vectors]
        null = linalg.nullspace(linalg.from_columns(columns, phi.target.dim(d), K))
        kernel = []
        for combo in null:
            out: linalg.Vector = {}
            for j, c in combo.items():
                linalg.add_into(out, vectors[j], c, K)
            kernel.append(out)
        per_degree[d] = kernel
    return Submodule.from_vectors(S.ambient, per_degree)


def restricted_image(phi: GradedLinearMap, S: Submodule) -> Submodule:
    per_degree = {
        d: [phi.target.to_vector(phi.apply(e), d) for e in S.elements(d)] for d in range(S.ambient.cutoff + 1)
    }
    return Submodule.from_vectors(phi.target, per_degree)


def pair_kernel(pm: PairMap) -> RetractivePair:
    """(Ker φ, Ker ψ) with the source pair's α⁺, α⁻; containments are re-verified."""
    src = pm.source
    return RetractivePair(src.retraction, restricted_kernel(pm.phi, src.M), restricted_kernel(pm.psi, src.L), src.alpha_plus, src.alpha_minus)


def pair_image(pm: PairMap) -> RetractivePair:
    """(Im φ, Im ψ) with the target pair's α⁺, α⁻."""
    src, tgt = pm.source, pm.target
    return RetractivePair(tgt.retraction, restricted_image(pm.phi, src.M), restricted_image(pm.psi, src.L), tgt.alpha_plus, tgt.alpha_minus)


def identity_pair(retraction: RingRetraction, M: GradedModule, L: GradedModule) -> RetractivePair:
    """Pair with α± the identity on keys; needs M and L to share bases."""
    one = retraction.field.one
    ap = GradedLinearMap(M, L, lambda key: {key: one}, name="α⁺")
    am = GradedLinearMap(L, M, lambda key: {key: one}, name="α⁻")
    return RetractivePair(retraction, Submodule.full(M), Submodule.full(L), ap, am)


# -----------------------------------------------------------------------------
# The Twin Construction
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class TwinStep:
    pair: RetractivePair
    maps: PairMap
    generators: Tuple[ModuleGenerator, ...]


def proposition1_step(pair: RetractivePair, gens: Sequence[ModuleGenerator], index: int = 0) -> TwinStep:
    """
    One step of the twin construction: P_i of rank 2|gens| over R, F_i of rank
    |gens| over S, the pair P_i ⇄ F_i and the pair map (∂_i, δ_i).

    Raises:
        GeneratingSetError: gens do not generate M; carries the dimension of
            the part of M that was not reached in the first failing degree.
    """
    retraction = pair.retraction
    R, S = retraction.big, retraction.small
    K = retraction.field
    gens = tuple(gens)
    r = len(gens)
    degrees = [g.degree for g in gens]
    P = FreeGradedModule(R, degrees + degrees, name=f"P{index}")
    F = FreeGradedModule(S, degrees, name=f"F{index}")
    ap, am = pair.alpha_plus, pair.alpha_minus

    projected = [am.apply(ap.apply(g.element)) for g in gens]
    d_images = projected + [combine([(K.one, g.element), (-K.one, p)], K) for g, p in zip(gens, projected)]
    delta_images = [ap.apply(g.element) for g in gens]
    partial = assemble_map(P, pair.M.ambient, d_images, name=f"∂{index}")
    delta = assemble_map(F, pair.L.ambient, delta_images, name=f"δ{index}")

    for d in range(retraction.cutoff + 1):
        reached = partial.rank(d)
        if reached != pair.M.dim(d):
            raise GeneratingSetError(
                f"Generators reach {reached} of {pair.M.dim(d)} dimensions in degree {d}.",
                missing_dimension=pair.M.dim(d) - reached,
                witness=d,
            )

    def beta_plus(key) -> Element:
        e, w = key
        if e >= r:
            return {}
        return {(e, s): c for s, c in retraction.rho_key(w).items()}

    def beta_minus(key) -> Element:
        e, s = key
        return {(e, w): c for w, c in retraction.iota_key(s).items()}

    free_pair = RetractivePair(
        retraction,
        Submodule.full(P),
        Submodule.full(F),
        GradedLinearMap(P, F, beta_plus, name=f"β⁺{index}"),
        GradedLinearMap(F, P, beta_minus, name=f"β⁻{index}"),
    )
    maps = PairMap(free_pair, pair, partial, delta)
    logger.debug(f"Twin step {index}: {r} generators, P rank {P.rank}, F rank {F.rank}")
    return TwinStep(free_pair, maps, gens)


@dataclass(frozen=True)
class TwinResolution:
    """Top row over the big ring resolving M, bottom row over the small ring resolving L."""

    top: PartialFreeResolution
    bottom: PartialFreeResolution
    generator_counts: Tuple[int, ...]

    def structural_law_holds(self) -> bool:
        counts = self.generator_counts
        return self.top.ranks() == tuple(2 * c for c in counts) and self.bottom.ranks() == counts


def proposition1_resolve(
    retraction: RingRetraction,
    pair: RetractivePair,
    n: int,
    side: str = "left",
    target_kind: str = "trivial",
    select: Optional[Selector] = None,
) -> TwinResolution:
    """
    Iterates the twin step n + 1 times, each time on the kernel pair of the
    previous step.

    Raises:
        ResolutionError: a step failed; the witness holds the steps completed so far.
    """
    if n < 0:
        raise ResolutionError(f"Homological length must be >= 0, got {n}.")
    select = select or select_generators
    steps: List[TwinStep] = []
    current = pair
    for i in range(n + 1):
        try:
            step = proposition1_step(current, select(current.M), index=i)
            steps.append(step)
            current = pair_kernel(step.maps)
        except HomfinError as err:
            logger.error(f"Twin construction stopped at step {i}: {err}")
            raise ResolutionError(f"Twin construction failed at step {i}: {err}", witness=tuple(steps)) from err
        logger.info(f"Twin step {i}: {len(step.generators)} generators")

    def row(modules, maps, algebra, target, kernel: Submodule, pending_select) -> PartialFreeResolution:
        return PartialFreeResolution(
            algebra=algebra,
            target=target,
            modules=tuple(modules),
            maps=tuple(maps),
            side=side,
            target_kind=target_kind,
            complete=kernel.is_zero(),
            pending=tuple(pending_select(kernel)) if not kernel.is_zero() else (),
        )

    top = row(
        [s.pair.M.ambient for s in steps], [s.maps.phi for s in steps],
        retraction.big, pair.M.ambient, current.M, select,
    )
    bottom = row(
        [s.pair.L.ambient for s in steps], [s.maps.psi for s in steps],
        retraction.small, pair.L.ambient, current.L, select_generators,
    )
    return TwinResolution(top, bottom, tuple(len(s.generators) for s in steps))


# -----------------------------------------------------------------------------
# Transport of FP_n
# -----------------------------------------------------------------------------

def trivial_pair(retraction: RingRetraction) -> RetractivePair:
    """
    K ⇄ K with identity maps.

    Raises:
        RetractionError: the retraction is not augmented.
    """
    if not retraction.augmented:
        raise RetractionError(
            f"{retraction.name} is not augmented, so K over {retraction.big.name} does not retract onto K over "
            f"{retraction.small.name}."
        )
    return identity_pair(retraction, TrivialModule(retraction.big), TrivialModule(retraction.small))


def algebra_pair(env_retraction: RingRetraction) -> RetractivePair:
    """𝓔(A) ⇄ 𝓔(D) with α⁺ = κ and α⁻ = θ from the underlying algebra retraction."""
    base = env_retraction.base
    if base is None:
        raise RetractionError("The bimodule pair needs a retraction between enveloping algebras.")
    M = to_left_E_module(RegularBimodule(base.big), env_retraction.big)
    L = to_left_E_module(RegularBimodule(base.small), env_retraction.small)
    ap = GradedLinearMap(M, L, base.rho_key, name="κ")
    am = GradedLinearMap(L, M, base.iota_key, name="θ")
    return RetractivePair(env_retraction, Submodule.full(M), Submodule.full(L), ap, am)


def retraction_for_side(retraction: RingRetraction, side: str) -> Tuple[RingRetraction, RetractivePair]:
    """The ring retraction and pair realizing transport of left, right, weak-bi or bi FP_n."""
    if side == "left":
        return retraction, trivial_pair(retraction)
    if side == "right":
        opp = retraction.opposite()
        return opp, trivial_pair(opp)
    if side == "weak-bi":
        env = retraction.enveloping()
        return env, trivial_pair(env)
    if side == "bi":
        env = retraction.enveloping()
        return env, algebra_pair(env)
    raise ResolutionError(f"Unknown side '{side}'.")


@dataclass(frozen=True)
class TransportResult:
    twin: TwinResolution
    input_verdict: VerdictRecord
    verdict: VerdictRecord
    top_exactness: ExactnessReport
    bottom_exactness: ExactnessReport

    @property
    def passed(self) -> bool:
        return self.top_exactness.ok and self.bottom_exactness.ok and self.twin.structural_law_holds()


def transport_fpn(
    retraction: RingRetraction,
    res: PartialFreeResolution,
    n: Optional[int] = None,
    pair: Optional[RetractivePair] = None,
) -> TransportResult:
    """
    Moves an FP_n certificate for M over the big ring to one for L over the
    small ring.

    The default pair is K ⇄ K for resolutions of K and 𝓔(A) ⇄ 𝓔(D) for
    bi-resolutions of the algebra.

    Raises:
        RetractionError: trivial-module transport along a non-augmented retraction.
        ResolutionError: `res` is not over the retraction's big ring.
    """
    n = res.length if n is None else n
    big = retraction.big
    if res.algebra is not big and res.algebra.signature() != big.signature():
        raise ResolutionError("The resolution is not over the retraction's big ring.")
    if pair is None:
        pair = algebra_pair(retraction) if res.target_kind == "algebra" else trivial_pair(retraction)

    input_verdict = fpn_verdict(res, n)
    twin = proposition1_resolve(retraction, pair, n, side=res.side, target_kind=res.target_kind)
    top_exactness = check_exactness(twin.top)
    bottom_exactness = check_exactness(twin.bottom)

    ranks = twin.bottom.ranks()
    if not input_verdict.certified:
        verdict = VerdictRecord(Verdict.INCONCLUSIVE, n, res.cutoff, ranks, None, f"input not certified: {input_verdict.reason}")
    elif not bottom_exactness.ok or not top_exactness.ok:
        verdict = VerdictRecord(Verdict.INCONCLUSIVE, n, res.cutoff, ranks, None, "twin resolution failed the exactness check")
    else:
        verdict = fpn_verdict(twin.bottom, n)
    logger.info(f"Transport along {retraction.name}: bottom ranks {list(ranks)}, {verdict.verdict.value}")
    return TransportResult(twin, input_verdict, verdict, top_exactness, bottom_exactness)
