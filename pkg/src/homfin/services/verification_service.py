# src/homfin/services/verification_service.py

import logging
import random
import time
from dataclasses import replace
from typing import Callable, Dict, List, Optional, Tuple

from homfin import fixtures
from homfin.algebra.enveloping import EnvelopingAlgebra, env_retraction, opposite_algebra
from homfin.algebra.groebner import free_words, ideal_slice_dimension
from homfin.algebra.group_rings import (
    MonoidAlgebra,
    check_involution,
    involution_transport,
    lemma3_iso,
    left_resolution_K,
    theorem2_biresolution,
)
from homfin.algebra.modules import TRIVIAL_KEY, FreeGradedModule, ModuleMap, TrivialModule, add_scaled, assemble_map
from homfin.algebra.ncpoly import NCPoly
from homfin.algebra.resolutions import (
    PartialFreeResolution,
    betti_table,
    bimodule_resolution_of_A,
    check_exactness,
    check_minimality,
    euler_hilbert_defects,
    fpn_verdict,
    kuenneth_biresolution,
    minimal_resolution,
)
from homfin.algebra.retractions import (
    RingRetraction,
    graded_retraction,
    projection_retraction,
    sign_retraction,
    transport_fpn,
    trivial_pair,
)
from homfin.algebra.scalars import parse_field
from homfin.core.config_manager import ConfigManager
from homfin.core.exceptions import InvolutionError, RetractionError
from homfin.core.models import CheckResult

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

# Cutoffs and lengths per verification level.
LEVELS: Dict[str, Dict[str, int]] = {
    "fast": {"koszul_D": 6, "bi_D": 4, "bi_n": 3, "thm1_D": 4, "thm1_n": 2, "group_n": 3,
             "kuenneth_D": 5, "retract_D": 4, "oracle_D": 4, "triples": 1000},
    "exhaustive": {"koszul_D": 8, "bi_D": 6, "bi_n": 3, "thm1_D": 6, "thm1_n": 3, "group_n": 4,
                   "kuenneth_D": 6, "retract_D": 6, "oracle_D": 5, "triples": 3000},
}


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------

def koszul_complex_poly2(A) -> PartialFreeResolution:
    """The Koszul complex 0 <- K <- A <- A² <- A(−2) <- 0 of K[x, y], written by hand."""
    one = A.field.one
    x, y = (0,), (1,)
    F0 = FreeGradedModule(A, [0], name="F0")
    F1 = FreeGradedModule(A, [1, 1], name="F1")
    F2 = FreeGradedModule(A, [2], name="F2")
    K = TrivialModule(A)
    d0 = assemble_map(F0, K, [{TRIVIAL_KEY: one}], name="∂0")
    d1 = assemble_map(F1, F0, [{(0, x): one}, {(0, y): one}], name="∂1")
    d2 = assemble_map(F2, F1, [{(0, y): one, (1, x): -one}], name="∂2")
    return PartialFreeResolution(A, K, (F0, F1, F2), (d0, d1, d2), complete=True)


def perturbed(res: PartialFreeResolution, i: int) -> PartialFreeResolution:
    """∂_i with the coefficient of one term doubled."""
    K = res.field
    images = [dict(img) for img in res.maps[i].images]
    key = next(iter(images[0]))
    images[0][key] = images[0][key] * K.convert(2)
    return res.with_differential(i, images)


def identity_padded(res: PartialFreeResolution, i: int, degree: int) -> PartialFreeResolution:
    """Adds A·u to F_i and A·v to F_{i+1} with ∂v = u: still exact, no longer minimal."""
    A = res.algebra
    modules = list(res.modules)
    maps = list(res.maps)
    u = modules[i].rank
    modules[i] = FreeGradedModule(A, modules[i].generator_degrees + (degree,), name=modules[i].name)
    modules[i + 1] = FreeGradedModule(A, modules[i + 1].generator_degrees + (degree,), name=modules[i + 1].name)
    target_i = res.target if i == 0 else modules[i - 1]
    maps[i] = ModuleMap(modules[i], target_i, list(maps[i].images) + [{}], maps[i].name)
    maps[i + 1] = ModuleMap(modules[i + 1], modules[i], list(maps[i + 1].images) + [{(u, A.one): A.field.one}], maps[i + 1].name)
    if i + 2 < len(maps):
        maps[i + 2] = ModuleMap(maps[i + 2].source, modules[i + 1], maps[i + 2].images, maps[i + 2].name)
    return replace(res, modules=tuple(modules), maps=tuple(maps))


def _product(A, x: Dict, y: Dict) -> Dict:
    out: Dict = {}
    for u, c in x.items():
        for v, d in y.items():
            add_scaled(out, A.multiply(u, v), c * d, A.field)
    return out


def random_triples_associative(A, count: int, rng: random.Random) -> Optional[Tuple]:
    """First (u, v, w) of random normal words with (uv)w != u(vw), or None."""
    D = A.cutoff
    one = A.field.one
    for _ in range(count):
        degrees = [rng.randint(0, D) for _ in range(3)]
        while sum(degrees) > D:
            k = rng.randrange(3)
            degrees[k] = max(0, degrees[k] - 1)
        words = []
        for d in degrees:
            basis = A.basis(d)
            words.append(rng.choice(basis) if basis else A.one)
        u, v, w = ({word: one} for word in words)
        if _product(A, _product(A, u, v), w) != _product(A, u, _product(A, v, w)):
            return tuple(words)
        if _product(A, {A.one: one}, u) != u or _product(A, u, {A.one: one}) != u:
            return tuple(words)
    return None


# -----------------------------------------------------------------------------
# Service
# -----------------------------------------------------------------------------

class VerificationService:
    """
    Runs the built-in fixture suite: each fixture returns pass/fail with a
    message, and mathematical failures never raise.
    """

    def __init__(self, config: Optional[ConfigManager] = None):
        self.config = config
        self.fixtures: Dict[str, Callable[[Dict[str, int], random.Random], Outcome]] = {
            "koszul": self.check_koszul,
            "theorem4": self.check_bimodule_comparison,
            "theorem1": self.check_enveloping_transport,
            "theorem2": self.check_group_bires,
            "lemma3": self.check_lemma3,
            "kuenneth": self.check_kuenneth,
            "proposition1": self.check_twin_construction,
            "invariants": self.check_invariants,
            "negative": self.check_negative_controls,
        }

    def run_all_checks(self, level: str = "fast", names: Optional[List[str]] = None, seed: int = 20240601) -> List[CheckResult]:
        """
        Args:
            level: "fast" or "exhaustive".
            names: Fixtures to run; all of them when None.
            seed: Seed for the randomized property tests.

        Returns:
            One CheckResult per fixture, in suite order.
        """
        params = LEVELS[level]
        selected = names or list(self.fixtures)
        results = []
        logger.info(f"Running {len(selected)} verification fixtures at level '{level}' with seed {seed}...")
        for name in selected:
            rng = random.Random(seed)
            start = time.perf_counter()
            try:
                success, message = self.fixtures[name](params, rng)
            except Exception as e:
                logger.error(f"Fixture {name} raised: {e}", exc_info=True)
                success, message = False, f"raised {type(e).__name__}: {e}"
            seconds = round(time.perf_counter() - start, 3)
            results.append(CheckResult(name=name, success=success, message=message, seconds=seconds))
            logger.info(f"{name}: {'PASS' if success else 'FAIL'} ({seconds}s)")
        return results

    # --- Fixtures ---

    def check_koszul(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        A = fixtures.poly2(p["koszul_D"])
        oracle = koszul_complex_poly2(A)
        if not check_exactness(oracle).ok:
            return False, "hand-written Koszul complex is not exact"
        res = minimal_resolution(A, n=3)
        triples = betti_table(res).triples()
        expected = [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
        if triples != expected or res.ranks() != (1, 2, 1, 0):
            return False, f"Betti {triples}, expected {expected}"
        if not check_exactness(res).ok or euler_hilbert_defects(res):
            return False, "minimal resolution failed exactness or Euler–Hilbert"
        return True, f"Betti (1, 2, 1, 0) at D = {A.cutoff}"

    def check_bimodule_comparison(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        names = []
        for make in (fixtures.poly2, fixtures.free2, fixtures.exterior2):
            A = make(p["bi_D"])
            _, comparison = bimodule_resolution_of_A(A, p["bi_n"])
            if not comparison.passed:
                return False, f"{A.name}: mismatches {list(comparison.mismatches)}"
            names.append(A.name)
        return True, f"bimodule Betti = left Betti for {', '.join(names)}"

    def check_enveloping_transport(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        A = fixtures.poly2(p["thm1_D"])
        n = p["thm1_n"]
        env = EnvelopingAlgebra.from_algebra(A)
        res = minimal_resolution(env, n=n)
        verdict = fpn_verdict(res, n)
        if not verdict.certified:
            return False, f"E not certified FP_{n}: {verdict.reason}"
        result = transport_fpn(env_retraction(env), res, n)
        if not result.passed:
            return False, f"transport failed: bottom exact {result.bottom_exactness.ok}, law {result.twin.structural_law_holds()}"
        return True, f"left-A resolution of K with ranks {list(result.twin.bottom.ranks())} from E"

    def check_group_bires(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        for G, field in fixtures.group_cases():
            KG = MonoidAlgebra(G, parse_field(field))
            left = left_resolution_K(KG, p["group_n"])
            if not check_exactness(left).ok:
                return False, f"{G.name}/{field}: left resolution not exact"
            _, report = theorem2_biresolution(left)
            if not report.passed:
                return False, f"{G.name}/{field}: ⊗̂ conversion failed ({report})"
        return True, "C2/GF(2), C3/GF(3), S3/GF(3), C2/Q"

    def check_lemma3(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        for G in (fixtures.cyclic_group(2), fixtures.cyclic_group(3), fixtures.symmetric_group(3)):
            report = lemma3_iso(MonoidAlgebra(G, parse_field("Q")))
            if not report.passed:
                return False, f"{G.name}: failed at {report.witness}"
        return True, "α, β, θ identities on C2, C3, S3"

    def check_kuenneth(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        for make, n, expected in ((fixtures.poly2, 2, (1, 4, 6, 4, 1)), (fixtures.free2, 1, (1, 4, 4))):
            A = make(p["kuenneth_D"])
            A_opp = opposite_algebra(A)
            env = EnvelopingAlgebra(A, A_opp)
            bires = kuenneth_biresolution(minimal_resolution(A, n=n), minimal_resolution(A_opp, n=n, side="right"), env)
            if bires.ranks() != expected:
                return False, f"{A.name}: ranks {bires.ranks()}, expected {expected}"
            if not check_exactness(bires).ok:
                return False, f"{A.name}: Künneth complex not exact"
        return True, "ranks (1, 4, 6, 4, 1) and (1, 4, 4), exact"

    def check_twin_construction(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        D = p["retract_D"]
        R, S = fixtures.poly2(D), fixtures.poly1(D)
        x_S = NCPoly.letter(S.alphabet, "x")
        retraction = graded_retraction(
            R, S, {"x": x_S, "y": NCPoly.zero(S.alphabet)}, {"x": NCPoly.letter(R.alphabet, "x")}
        )
        result = transport_fpn(retraction, minimal_resolution(R, n=2), 2)
        if not result.passed:
            return False, "K[x,y] -> K[x]: twin resolution failed"

        identity = RingRetraction(S, S, [x_S], [x_S], name="id")
        same = transport_fpn(identity, minimal_resolution(S, n=2), 2)
        if not same.passed:
            return False, "identity retraction failed"

        L2 = fixtures.semilattice()
        finite = projection_retraction(L2, L2, parse_field("Q"))
        moved = transport_fpn(finite, left_resolution_K(finite.big, 2), 2)
        if not moved.passed:
            return False, "semilattice projection failed"
        return True, f"bottom ranks {list(result.twin.bottom.ranks())}; rank 2|e| law on every run"

    def check_invariants(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        D = p["oracle_D"]
        algebras = [fixtures.poly2(D), fixtures.cubic(D), fixtures.exterior2(D)]
        per_algebra = -(-p["triples"] // len(algebras))
        for A in algebras:
            witness = random_triples_associative(A, per_algebra, rng)
            if witness is not None:
                return False, f"{A.name}: ring axioms fail at {witness}"
            for d in range(D + 1):
                total = len(free_words(A.alphabet, d))
                if A.dim(d) + ideal_slice_dimension(A.presentation, d) != total:
                    return False, f"{A.name}: normal words and ideal do not fill degree {d}"
            env = EnvelopingAlgebra(A)
            if env.convolution_defects():
                return False, f"{A.name}: dim E_i is not the convolution"
            res = minimal_resolution(A, n=2)
            if euler_hilbert_defects(res):
                return False, f"{A.name}: Euler–Hilbert identity fails"
        return True, f"{p['triples']} random triples; oracles to D = {D}"

    def check_negative_controls(self, p: Dict[str, int], rng: random.Random) -> Outcome:
        A = fixtures.poly2(4)
        res = minimal_resolution(A, n=2)
        if check_exactness(perturbed(res, 2)).ok:
            return False, "perturbed differential passed the exactness check"
        padded = identity_padded(res, 1, 1)
        if check_minimality(padded).minimal or not check_exactness(padded).ok:
            return False, "identity padding was not flagged as non-minimal"

        S3 = fixtures.symmetric_group(3)
        if check_involution(S3, tuple(range(S3.order))) is None:
            return False, "identity accepted as an involution of S3"
        try:
            involution_transport(left_resolution_K(MonoidAlgebra(S3, parse_field("Q")), 1), tuple(range(S3.order)))
            return False, "involution transport accepted a non-involution"
        except InvolutionError:
            pass

        S = fixtures.poly1(4)
        two_x = NCPoly(A.alphabet, {(0,): 2})
        try:
            graded_retraction(A, S, {"x": NCPoly.letter(S.alphabet, "x"), "y": NCPoly.zero(S.alphabet)}, {"x": two_x})
            return False, "broken section accepted"
        except RetractionError:
            pass
        try:
            sign = sign_retraction(fixtures.cyclic_group(2), fixtures.trivial_group(), parse_field("Q"))
            trivial_pair(sign)
            return False, "non-augmented retraction accepted for trivial-module transport"
        except RetractionError:
            pass
        return True, "perturbation, padding, non-involution, broken section and non-augmented transport flagged"
