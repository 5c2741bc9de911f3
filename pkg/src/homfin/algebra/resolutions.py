# src/homfin/algebra/resolutions.py

"""
Partial free resolutions: construction, Betti tables, checkers and verdicts.

A resolution of M of length n is F_0, ..., F_n with ∂_0: F_0 -> M and
∂_i: F_i -> F_{i-1}, exact up to the degree cutoff D. Over a graded algebra
each step takes minimal generators of the previous kernel, so the result is
the minimal resolution; over a finite monoid algebra generators are chosen by
greedy action closure.

Bimodule resolutions are left resolutions over the enveloping algebra.
"""

import logging
from dataclasses import dataclass, field as dc_field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from homfin.algebra import linalg
from homfin.algebra.modules import (
    TRIVIAL_KEY,
    FreeGradedModule,
    GradedModule,
    ModuleGenerator,
    ModuleMap,
    Submodule,
    TrivialModule,
    add_scaled,
    assemble_map,
    kernel_degreewise,
    select_generators,
)
from homfin.algebra.scalars import same_field
from homfin.core.exceptions import NonMinimalResolutionError, ResolutionError, UnsupportedInputError
from homfin.utils.parallel import degreewise

logger = logging.getLogger(__name__)

SIDES = ("left", "right", "bi")
Selector = Callable[[Submodule], List[ModuleGenerator]]


@dataclass(frozen=True)
class PartialFreeResolution:
    """
    F_0 <- F_1 <- ... <- F_n over `algebra`, resolving `target`.

    `complete` records that Ker ∂_n vanishes in every degree up to the cutoff;
    `pending` holds the chosen generators of Ker ∂_n otherwise.
    """

    algebra: object
    target: GradedModule
    modules: Tuple[FreeGradedModule, ...]
    maps: Tuple[ModuleMap, ...]
    side: str = "left"
    target_kind: str = "trivial"
    complete: bool = False
    pending: Tuple[ModuleGenerator, ...] = ()

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def cutoff(self) -> int:
        return self.algebra.cutoff

    @property
    def field(self):
        return self.algebra.field

    def ranks(self) -> Tuple[int, ...]:
        return tuple(F.rank for F in self.modules)

    def generator_degrees(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(F.generator_degrees for F in self.modules)

    def differential(self, i: int) -> ModuleMap:
        return self.maps[i]

    def with_differential(self, i: int, images: Sequence[Dict]) -> "PartialFreeResolution":
        """A copy with ∂_i replaced by the map with the given generator images."""
        maps = list(self.maps)
        old = maps[i]
        maps[i] = ModuleMap(old.source, old.target, images, old.name)
        return replace(self, maps=tuple(maps))


def _zero_map(source: FreeGradedModule, target: GradedModule, name: str) -> ModuleMap:
    return ModuleMap(source, target, [{} for _ in range(source.rank)], name)


def build_resolution(
    algebra,
    target: GradedModule,
    n: int,
    side: str = "left",
    target_kind: str = "trivial",
    select: Optional[Selector] = None,
) -> PartialFreeResolution:
    """
    Resolves `target` to length n by iterating kernel then generator selection.

    Args:
        algebra: A GradedAlgebra or MonoidAlgebra (or an enveloping algebra).
        target: The module being resolved.
        n: Homological length.
        side: Side tag stored on the result.
        target_kind: "trivial", "algebra" or "module".
        select: Generator selection; defaults to minimal (graded) or greedy (finite).
    """
    if n < 0:
        raise ResolutionError(f"Homological length must be >= 0, got {n}.")
    select = select or select_generators
    gens = select(Submodule.full(target))
    F = FreeGradedModule(algebra, [g.degree for g in gens], name="F0")
    modules = [F]
    maps = [assemble_map(F, target, [g.element for g in gens], name="∂0")]
    logger.debug(f"F0 generator degrees {list(F.generator_degrees)}")

    for i in range(1, n + 1):
        previous = maps[-1]
        if previous.source.rank == 0:
            F = FreeGradedModule(algebra, [], name=f"F{i}")
            modules.append(F)
            maps.append(_zero_map(F, previous.source, f"∂{i}"))
            continue
        kernel = kernel_degreewise(previous)
        gens = select(kernel)
        F = FreeGradedModule(algebra, [g.degree for g in gens], name=f"F{i}")
        maps.append(assemble_map(F, previous.source, [g.element for g in gens], name=f"∂{i}"))
        modules.append(F)
        logger.info(f"Resolution step {i}: rank {F.rank}, generator degrees {list(F.generator_degrees)}")

    last_kernel = kernel_degreewise(maps[-1]) if maps[-1].source.rank else Submodule.zero(maps[-1].source)
    pending = tuple(select(last_kernel)) if not last_kernel.is_zero() else ()
    return PartialFreeResolution(
        algebra=algebra,
        target=target,
        modules=tuple(modules),
        maps=tuple(maps),
        side=side,
        target_kind=target_kind,
        complete=last_kernel.is_zero(),
        pending=pending,
    )


def minimal_resolution(A, M: Optional[GradedModule] = None, n: int = 3, side: str = "left", target_kind: Optional[str] = None) -> PartialFreeResolution:
    """
    Minimal graded resolution of M (default: the trivial module K) over A.

    The result satisfies Ker ∂_i ⊆ A⁺·F_i for all i < n; its generator degrees
    are the Betti numbers.
    """
    if M is None:
        M = TrivialModule(A, side=side)
    if target_kind is None:
        target_kind = "trivial" if isinstance(M, TrivialModule) else "module"
    return build_resolution(A, M, n, side=side, target_kind=target_kind)


# -----------------------------------------------------------------------------
# Betti Tables and Checkers
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """β_{i,j}: the number of degree-j generators of F_i."""

    entries: Dict[Tuple[int, int], int]
    length: int
    cutoff: int

    @classmethod
    def from_resolution(cls, res: PartialFreeResolution) -> "BettiTable":
        entries: Dict[Tuple[int, int], int] = {}
        for i, degrees in enumerate(res.generator_degrees()):
            for j in degrees:
                entries[(i, j)] = entries.get((i, j), 0) + 1
        return cls(entries, res.length, res.cutoff)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def totals(self) -> Tuple[int, ...]:
        return tuple(sum(c for (i, _), c in self.entries.items() if i == k) for k in range(self.length + 1))

    def triples(self) -> List[Tuple[int, int, int]]:
        return sorted((i, j, c) for (i, j), c in self.entries.items() if c)

    def row(self, i: int) -> Dict[int, int]:
        return {j: c for (k, j), c in self.entries.items() if k == i}


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.minimal


def check_minimality(res: PartialFreeResolution) -> MinimalityResult:
    """
    True iff no generator image under ∂_i (i >= 1) touches a degree-0
    algebra key, i.e. Im ∂_{i+1} ⊆ A⁺·F_i. The witness is the first
    violating (i, generator index).
    """
    A = res.algebra
    for i in range(1, len(res.maps)):
        for e, image in enumerate(res.maps[i].images):
            if any(A.key_degree(w) == 0 for (_, w) in image):
                return MinimalityResult(False, (i, e))
    return MinimalityResult(True)


def betti_table(res: PartialFreeResolution) -> BettiTable:
    """
    Raises:
        NonMinimalResolutionError: the resolution is not minimal, so its
            generator counts are not Tor dimensions.
    """
    result = check_minimality(res)
    if not result:
        i, e = result.witness
        raise NonMinimalResolutionError(
            f"Resolution is not minimal: generator {e} of F{i} has a unit coefficient in its image.",
            witness=result.witness,
        )
    return BettiTable.from_resolution(res)


@dataclass(frozen=True)
class ExactnessFailure:
    position: int
    degree: int
    kind: str  # "surjectivity", "composition" or "homology"
    defect: int


@dataclass(frozen=True)
class ExactnessReport:
    failures: Tuple[ExactnessFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def check_exactness(res: PartialFreeResolution) -> ExactnessReport:
    """
    Checks surjectivity of ∂_0, ∂_i∂_{i+1} = 0, and dim Ker(∂_i)_d = rank(∂_{i+1})_d
    for every i < n and every degree d up to the cutoff. Failures are data.
    """
    maps = res.maps

    def check_degree(d: int) -> List[ExactnessFailure]:
        failures = []
        r0 = maps[0].rank(d)
        if r0 != res.target.dim(d):
            failures.append(ExactnessFailure(0, d, "surjectivity", res.target.dim(d) - r0))
        for i in range(res.length):
            outer, inner = maps[i].matrix(d), maps[i + 1].matrix(d)
            product = linalg.matmul(outer, inner)
            if not linalg.is_zero(product):
                failures.append(ExactnessFailure(i, d, "composition", linalg.rank_of(product)))
            kernel_dim = outer.shape[1] - linalg.rank_of(outer)
            image_dim = linalg.rank_of(inner)
            if kernel_dim != image_dim:
                failures.append(ExactnessFailure(i, d, "homology", kernel_dim - image_dim))
        return failures

    per_degree = degreewise(check_degree, range(res.cutoff + 1))
    failures = tuple(f for d in per_degree for f in per_degree[d])
    for f in failures:
        logger.debug(f"Exactness failure: {f}")
    return ExactnessReport(failures)


def euler_hilbert_defects(res: PartialFreeResolution) -> List[int]:
    """
    Degrees d where Σ(−1)^i dim(F_i)_d − dim M_d != (−1)^n dim(Ker ∂_n)_d.
    Meaningful for exact resolutions; an empty list means the identity holds.
    """
    last = res.maps[-1]
    kernel = kernel_degreewise(last) if last.source.rank else Submodule.zero(last.source)
    n = res.length
    defects = []
    for d in range(res.cutoff + 1):
        lhs = sum((-1) ** i * F.dim(d) for i, F in enumerate(res.modules)) - res.target.dim(d)
        if lhs != (-1) ** n * kernel.dim(d):
            defects.append(d)
    return defects


# -----------------------------------------------------------------------------
# Verdicts
# -----------------------------------------------------------------------------

class Verdict(str, Enum):
    CERTIFIED = "CERTIFIED-UP-TO-D"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class VerdictRecord:
    verdict: Verdict
    n: int
    cutoff: int
    ranks: Tuple[int, ...]
    betti: Optional[BettiTable] = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


def fpn_verdict(res: PartialFreeResolution, n: Optional[int] = None) -> VerdictRecord:
    """
    FP_n verdict from a resolution attempted at cutoff D.

    CERTIFIED-UP-TO-D needs every generator of F_0..F_n, and every minimal
    generator of Ker ∂_n, to lie strictly below D. Anything at D or above is
    indistinguishable from a truncation artefact, so the verdict is
    INCONCLUSIVE. A negative verdict is never issued.
    """
    n = res.length if n is None else n
    if n > res.length:
        raise ResolutionError(f"Resolution has length {res.length}; cannot judge FP_{n}.")
    ranks = res.ranks()[: n + 1]
    minimal = res.algebra.is_graded and check_minimality(res).minimal
    betti = BettiTable.from_resolution(res) if minimal else None
    D = res.cutoff
    if not res.algebra.is_graded:
        return VerdictRecord(Verdict.CERTIFIED, n, D, ranks, None, "finite-dimensional algebra: no truncation")

    tail = res.modules[n + 1].generator_degrees if n < res.length else tuple(g.degree for g in res.pending)
    for i in range(n + 1):
        high = [j for j in res.modules[i].generator_degrees if j >= D]
        if high:
            return VerdictRecord(
                Verdict.INCONCLUSIVE, n, D, ranks, betti, f"F{i} has generators in degree {max(high)} >= D = {D}"
            )
    high_tail = [j for j in tail if j >= D]
    if high_tail:
        return VerdictRecord(
            Verdict.INCONCLUSIVE, n, D, ranks, betti, f"Ker ∂{n} has minimal generators at the cutoff D = {D}"
        )
    return VerdictRecord(Verdict.CERTIFIED, n, D, ranks, betti, "all generators found below the cutoff")


# -----------------------------------------------------------------------------
# Künneth Bi-resolution
# -----------------------------------------------------------------------------

def _same_algebra(a, b) -> bool:
    return a is b or a.signature() == b.signature()


def effective_length(res: PartialFreeResolution) -> int:
    """For a complete resolution, the index of its last nonzero term; else its length."""
    if not res.complete:
        return res.length
    return max((i for i, r in enumerate(res.ranks()) if r), default=0)


def kuenneth_length(left: PartialFreeResolution, right: PartialFreeResolution) -> int:
    p, q = effective_length(left), effective_length(right)
    if left.complete and right.complete:
        return p + q
    if left.complete:
        return q
    if right.complete:
        return p
    return min(p, q)


def kuenneth_biresolution(left: PartialFreeResolution, right: PartialFreeResolution, env) -> PartialFreeResolution:
    """
    Tensor product over K of a left resolution of K and a right resolution of K,
    as a left resolution of K over the enveloping algebra.

    F_k = ⊕_{i+j=k} P_i ⊗ P'_j with ∂(e ⊗ f) = ∂e ⊗ f + (−1)^i e ⊗ ∂f. The right
    input is a left resolution over the opposite algebra.

    Raises:
        ResolutionError: mismatched sides, algebras or fields.
    """
    if left.side != "left" or right.side != "right":
        raise ResolutionError(f"Künneth needs a left and a right resolution, got {left.side} and {right.side}.")
    if not same_field(left.field, right.field) or not same_field(left.field, env.field):
        raise ResolutionError("Künneth inputs are over different fields.")
    if not _same_algebra(left.algebra, env.base) or not _same_algebra(right.algebra, env.opposite):
        raise ResolutionError("Künneth inputs are not over the enveloping algebra's factors.")
    if left.target_kind != "trivial" or right.target_kind != "trivial":
        raise ResolutionError("Künneth inputs must resolve the trivial module.")

    K = env.field
    L = kuenneth_length(left, right)
    target = TrivialModule(env, side="bi")

    blocks: List[List[Tuple[int, int, int]]] = []
    positions: List[Dict[Tuple[int, int, int], int]] = []
    for k in range(L + 1):
        gens = []
        for i in range(0, k + 1):
            j = k - i
            if i > left.length or j > right.length:
                continue
            for e in range(left.modules[i].rank):
                for f in range(right.modules[j].rank):
                    gens.append((i, e, f))
        blocks.append(gens)
        positions.append({g: idx for idx, g in enumerate(gens)})

    modules, maps = [], []
    for k, gens in enumerate(blocks):
        degrees = [
            left.modules[i].generator_degrees[e] + right.modules[k - i].generator_degrees[f] for i, e, f in gens
        ]
        F = FreeGradedModule(env, degrees, name=f"F{k}")
        images = []
        for i, e, f in gens:
            j = k - i
            image: Dict = {}
            if k == 0:
                c = left.maps[0].images[e].get(TRIVIAL_KEY, K.zero) * right.maps[0].images[f].get(TRIVIAL_KEY, K.zero)
                if c:
                    image[TRIVIAL_KEY] = c
            else:
                if i >= 1:
                    target_pos = positions[k - 1]
                    for (e2, u), c in left.maps[i].images[e].items():
                        g = target_pos[(i - 1, e2, f)]
                        add_scaled(image, {(g, w): v for w, v in env.embed_left(u).items()}, c, K)
                if j >= 1:
                    sign = K.one if i % 2 == 0 else -K.one
                    target_pos = positions[k - 1]
                    for (f2, u), c in right.maps[j].images[f].items():
                        g = target_pos[(i, e, f2)]
                        add_scaled(image, {(g, w): v for w, v in env.embed_right(u).items()}, sign * c, K)
            images.append(image)
        prev = target if k == 0 else modules[-1]
        maps.append(assemble_map(F, prev, images, name=f"∂{k}"))
        modules.append(F)

    last = maps[-1]
    kernel = kernel_degreewise(last) if last.source.rank else Submodule.zero(last.source)
    pending = tuple(select_generators(kernel)) if not kernel.is_zero() else ()
    logger.info(f"Künneth bi-resolution ranks {[F.rank for F in modules]}")
    return PartialFreeResolution(
        algebra=env,
        target=target,
        modules=tuple(modules),
        maps=tuple(maps),
        side="bi",
        target_kind="trivial",
        complete=kernel.is_zero(),
        pending=pending,
    )


# -----------------------------------------------------------------------------
# Trivial-coefficient Contraction
# -----------------------------------------------------------------------------

def contract_to_left(bires: PartialFreeResolution, env) -> PartialFreeResolution:
    """
    Applies − ⊗_A K to a bi-resolution of the algebra itself.

    Each free E-module of rank r becomes a free A-module of rank r with the same
    generator degrees; coefficients pass through ρ: E -> A, a ⊗ b° ↦ ε(b)a.

    Raises:
        UnsupportedInputError: the input resolves K rather than the algebra.
    """
    if bires.target_kind != "algebra":
        raise UnsupportedInputError(
            "Contraction applies to bi-resolutions of the algebra itself; this one resolves "
            f"a {bires.target_kind} module."
        )
    A = env.base
    K = A.field
    target = TrivialModule(A, side="left")
    modules, maps = [], []
    for i, (F_E, d_E) in enumerate(zip(bires.modules, bires.maps)):
        F = FreeGradedModule(A, F_E.generator_degrees, name=f"F{i}")
        images = []
        for image_E in d_E.images:
            image: Dict = {}
            if i == 0:
                c = sum((v * A.augmentation(m) for m, v in image_E.items()), K.zero)
                if c:
                    image[TRIVIAL_KEY] = c
            else:
                for (g, w), c in image_E.items():
                    add_scaled(image, {(g, a): v for a, v in env.contract(w).items()}, c, K)
            images.append(image)
        prev = target if i == 0 else modules[-1]
        maps.append(assemble_map(F, prev, images, name=f"∂{i}"))
        modules.append(F)

    last = maps[-1]
    kernel = kernel_degreewise(last) if last.source.rank else Submodule.zero(last.source)
    pending = tuple(select_generators(kernel)) if not kernel.is_zero() else ()
    return PartialFreeResolution(
        algebra=A,
        target=target,
        modules=tuple(modules),
        maps=tuple(maps),
        side="left",
        target_kind="trivial",
        complete=kernel.is_zero(),
        pending=pending,
    )


# -----------------------------------------------------------------------------
# Bimodule Resolution of A and the Left/Bi Comparison
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class BimoduleComparison:
    """Positionwise comparison of bimodule Betti data of A against left Betti data of K."""

    bimodule: BettiTable
    left: BettiTable
    contracted: BettiTable
    contracted_exactness: ExactnessReport
    mismatches: Tuple[Tuple[int, int, int, int], ...] = dc_field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.contracted_exactness.ok


def _betti_mismatches(a: BettiTable, b: BettiTable) -> List[Tuple[int, int, int, int]]:
    keys = sorted(set(a.entries) | set(b.entries))
    return [(i, j, a[(i, j)], b[(i, j)]) for i, j in keys if a[(i, j)] != b[(i, j)]]


def bimodule_resolution_of_A(A, n: int, env=None) -> Tuple[PartialFreeResolution, BimoduleComparison]:
    """
    Minimal resolution of A as a bimodule (a left E-module), plus the check
    that contracting it with − ⊗_A K reproduces the minimal left resolution of K.
    """
    from homfin.algebra.enveloping import EnvelopingAlgebra, RegularBimodule, to_left_E_module

    env = env or EnvelopingAlgebra.from_algebra(A)
    M = to_left_E_module(RegularBimodule(A), env)
    bires = build_resolution(env, M, n, side="bi", target_kind="algebra")
    contracted = contract_to_left(bires, env)
    left = minimal_resolution(A, TrivialModule(A), n)

    bimodule_betti = betti_table(bires)
    left_betti = betti_table(left)
    contracted_betti = BettiTable.from_resolution(contracted)
    mismatches = _betti_mismatches(bimodule_betti, left_betti) + _betti_mismatches(contracted_betti, left_betti)
    report = BimoduleComparison(
        bimodule=bimodule_betti,
        left=left_betti,
        contracted=contracted_betti,
        contracted_exactness=check_exactness(contracted),
        mismatches=tuple(sorted(set(mismatches))),
    )
    logger.info(f"Bimodule vs left Betti comparison: {'PASS' if report.passed else 'FAIL'}")
    return bires, report
