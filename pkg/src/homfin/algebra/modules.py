# src/homfin/algebra/modules.py

"""
Graded left modules realized degreewise as exact linear algebra.

Everything here only ever sees left modules: right modules are left modules
over the opposite algebra and bimodules are left modules over the enveloping
algebra. A finite monoid algebra is the special case where everything lives in
degree 0, so the same code serves both backends.

Elements are dicts {basis key: nonzero scalar}. Vectors are dicts
{position in the degree-d basis: nonzero scalar}.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices.sdm import SDM

from homfin.algebra import linalg
from homfin.algebra.scalars import format_scalar
from homfin.core.exceptions import DegreeMismatchError, ResolutionError
from homfin.utils.parallel import degreewise

logger = logging.getLogger(__name__)

Element = Dict[Hashable, object]
TRIVIAL_KEY = "1"


def add_scaled(target: Element, element: Mapping, c, K: Domain) -> None:
    """target += c * element, dropping zeros."""
    for key, v in element.items():
        s = target.get(key, K.zero) + c * v
        if s:
            target[key] = s
        else:
            target.pop(key, None)


def combine(terms, K: Domain) -> Element:
    """Sum of c * element over (c, element) pairs."""
    out: Element = {}
    for c, element in terms:
        add_scaled(out, element, c, K)
    return out


# -----------------------------------------------------------------------------
# Modules
# -----------------------------------------------------------------------------

class GradedModule:
    """Base class: a module given by per-degree bases and the action on basis keys."""

    side = "left"

    def __init__(self, algebra, name: str = "M"):
        self.algebra = algebra
        self.name = name
        self._index_cache: Dict[int, Dict[Hashable, int]] = {}
        self._lock = threading.Lock()

    @property
    def field(self) -> Domain:
        return self.algebra.field

    @property
    def cutoff(self) -> int:
        return self.algebra.cutoff

    def degrees(self) -> range:
        return range(0, self.cutoff + 1)

    def basis(self, d: int) -> Sequence[Hashable]:
        raise NotImplementedError

    def key_degree(self, key: Hashable) -> int:
        raise NotImplementedError

    def act(self, a_key: Hashable, key: Hashable) -> Element:
        """Left action of an algebra basis element on a module basis element."""
        raise NotImplementedError

    def format_key(self, key: Hashable) -> str:
        return str(key)

    # --- Derived helpers ---

    def dim(self, d: int) -> int:
        if d < 0 or d > self.cutoff:
            return 0
        return len(self.basis(d))

    def dims(self) -> Tuple[int, ...]:
        return tuple(self.dim(d) for d in self.degrees())

    def index(self, d: int) -> Dict[Hashable, int]:
        cached = self._index_cache.get(d)
        if cached is None:
            cached = {k: i for i, k in enumerate(self.basis(d))}
            with self._lock:
                self._index_cache[d] = cached
        return cached

    def act_element(self, a_key: Hashable, element: Mapping) -> Element:
        K = self.field
        out: Element = {}
        for key, c in element.items():
            add_scaled(out, self.act(a_key, key), c, K)
        return out

    def act_by(self, a_element: Mapping, element: Mapping) -> Element:
        """Action of a general algebra element."""
        K = self.field
        out: Element = {}
        for a_key, c in a_element.items():
            add_scaled(out, self.act_element(a_key, element), c, K)
        return out

    def element_degree(self, element: Mapping) -> Optional[int]:
        degrees = {self.key_degree(k) for k in element}
        if len(degrees) > 1:
            raise DegreeMismatchError(f"Element of {self.name} is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def to_vector(self, element: Mapping, d: int) -> linalg.Vector:
        index = self.index(d)
        return {index[k]: c for k, c in element.items() if c}

    def to_element(self, vector: Mapping[int, object], d: int) -> Element:
        basis = self.basis(d)
        return {basis[i]: c for i, c in vector.items() if c}

    def act_vector(self, a_key: Hashable, vector: Mapping[int, object], d: int) -> linalg.Vector:
        image = self.act_element(a_key, self.to_element(vector, d))
        return self.to_vector(image, d + self.algebra.key_degree(a_key))

    def format_element(self, element: Mapping) -> str:
        if not element:
            return "0"
        parts = []
        for key in sorted(element, key=lambda k: (self.key_degree(k), str(k))):
            parts.append(f"{format_scalar(self.field, element[key])}*{self.format_key(key)}")
        return " + ".join(parts)


class FreeGradedModule(GradedModule):
    """
    Free module ⊕ A·e_i on generators of the given degrees.

    Basis keys are (generator index, algebra key); the degree-d basis is ordered
    by generator index, then by the algebra's own basis order.
    """

    def __init__(self, algebra, generator_degrees: Sequence[int], name: str = "F"):
        super().__init__(algebra, name)
        self.generator_degrees: Tuple[int, ...] = tuple(int(d) for d in generator_degrees)
        self._basis_cache: Dict[int, Tuple] = {}

    def __repr__(self) -> str:
        return f"FreeGradedModule({self.name}, degrees={list(self.generator_degrees)})"

    @property
    def rank(self) -> int:
        return len(self.generator_degrees)

    def basis(self, d: int) -> Tuple:
        cached = self._basis_cache.get(d)
        if cached is None:
            keys = []
            for e, ge in enumerate(self.generator_degrees):
                if 0 <= d - ge <= self.cutoff:
                    keys.extend((e, w) for w in self.algebra.basis(d - ge))
            cached = tuple(keys)
            with self._lock:
                self._basis_cache[d] = cached
        return cached

    def key_degree(self, key) -> int:
        e, w = key
        return self.generator_degrees[e] + self.algebra.key_degree(w)

    def act(self, a_key, key) -> Element:
        e, w = key
        return {(e, u): c for u, c in self.algebra.multiply(a_key, w).items()}

    def generator(self, e: int) -> Element:
        return {(e, self.algebra.one): self.field.one}

    def format_key(self, key) -> str:
        e, w = key
        prefix = "" if w == self.algebra.one else f"{self.algebra.format_key(w)}."
        return f"{prefix}e{e}"


class TrivialModule(GradedModule):
    """K concentrated in degree 0, with the algebra acting through its augmentation."""

    def __init__(self, algebra, side: str = "left", name: str = "K"):
        super().__init__(algebra, name)
        self.side = side

    def __repr__(self) -> str:
        return f"TrivialModule({self.side})"

    def basis(self, d: int) -> Tuple:
        return (TRIVIAL_KEY,) if d == 0 else ()

    def key_degree(self, key) -> int:
        return 0

    def act(self, a_key, key) -> Element:
        c = self.algebra.augmentation(a_key)
        return {TRIVIAL_KEY: c} if c else {}

    def format_key(self, key) -> str:
        return "1"


class RegularModule(GradedModule):
    """The algebra as a left module over itself."""

    def basis(self, d: int):
        return self.algebra.basis(d)

    def key_degree(self, key) -> int:
        return self.algebra.key_degree(key)

    def act(self, a_key, key) -> Element:
        return dict(self.algebra.multiply(a_key, key))

    def format_key(self, key) -> str:
        return self.algebra.format_key(key)


# -----------------------------------------------------------------------------
# Maps
# -----------------------------------------------------------------------------

class GradedLinearMap:
    """
    A degree-preserving K-linear map given on basis keys.

    Per-degree matrices have rows indexed by the target basis and columns by
    the source basis; they are assembled lazily and cached.
    """

    def __init__(self, source: GradedModule, target: GradedModule, key_image: Callable[[Hashable], Element], name: str = "φ"):
        self.source = source
        self.target = target
        self.name = name
        self._key_image = key_image
        self._matrices: Dict[int, SDM] = {}
        self._lock = threading.Lock()

    @property
    def field(self) -> Domain:
        return self.source.field

    @property
    def cutoff(self) -> int:
        return min(self.source.cutoff, self.target.cutoff)

    def degrees(self) -> range:
        return range(0, self.cutoff + 1)

    def image_of_key(self, key) -> Element:
        return self._key_image(key)

    def apply(self, element: Mapping) -> Element:
        K = self.field
        out: Element = {}
        for key, c in element.items():
            add_scaled(out, self._key_image(key), c, K)
        return out

    def matrix(self, d: int) -> SDM:
        cached = self._matrices.get(d)
        if cached is not None:
            return cached
        columns = [self.target.to_vector(self._key_image(key), d) for key in self.source.basis(d)]
        matrix = linalg.from_columns(columns, self.target.dim(d), self.field)
        with self._lock:
            self._matrices[d] = matrix
        return matrix

    def materialize(self) -> None:
        degreewise(self.matrix, self.degrees())

    def rank(self, d: int) -> int:
        return linalg.rank_of(self.matrix(d))

    def compose(self, inner: "GradedLinearMap") -> "GradedLinearMap":
        """self ∘ inner."""
        return GradedLinearMap(inner.source, self.target, lambda key: self.apply(inner.image_of_key(key)), f"{self.name}∘{inner.name}")


class ModuleMap(GradedLinearMap):
    """An A-linear map out of a free module, determined by the images of its generators."""

    def __init__(self, source: FreeGradedModule, target: GradedModule, images: Sequence[Element], name: str = "∂"):
        self.images: Tuple[Element, ...] = tuple(dict(img) for img in images)
        if len(self.images) != source.rank:
            raise DegreeMismatchError(f"{name}: {source.rank} generators but {len(self.images)} images.")
        super().__init__(source, target, self._free_image, name)

    def _free_image(self, key) -> Element:
        e, w = key
        return self.target.act_element(w, self.images[e])


def assemble_map(F: FreeGradedModule, G: GradedModule, images: Sequence[Mapping], name: str = "∂", materialize: bool = True) -> ModuleMap:
    """
    Builds the A-linear map F -> G sending generator i to images[i].

    Images keyed by non-normal words of a free target are normalized and the
    fix is logged.

    Raises:
        DegreeMismatchError: an image has the wrong internal degree.
    """
    clean_images = []
    for e, img in enumerate(images):
        img = dict(img)
        if isinstance(G, FreeGradedModule) and getattr(G.algebra, "is_graded", False):
            img = _normalize_free_element(G, img, name, e)
        if img:
            degree = G.element_degree(img)
            if degree != F.generator_degrees[e]:
                raise DegreeMismatchError(
                    f"{name}: generator {e} has degree {F.generator_degrees[e]} but its image has degree {degree}."
                )
        clean_images.append(img)
    phi = ModuleMap(F, G, clean_images, name)
    if materialize:
        phi.materialize()
    return phi


def _normalize_free_element(G: FreeGradedModule, img: Element, name: str, e: int) -> Element:
    A = G.algebra
    if all(A.is_normal(w) for (_, w) in img):
        return img
    out: Element = {}
    for (g, w), c in img.items():
        add_scaled(out, {(g, u): v for u, v in A.normal_form_word(tuple(w)).items()}, c, G.field)
    logger.warning(f"{name}: image of generator {e} was not in normal form and has been normalized.")
    return out


# -----------------------------------------------------------------------------
# Submodules, Kernels, Images
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Submodule:
    """A graded subspace of `ambient`, stored as a row-reduced basis in each degree."""

    ambient: GradedModule
    vectors: Tuple[Tuple[linalg.Vector, ...], ...]

    @classmethod
    def from_vectors(cls, ambient: GradedModule, per_degree: Mapping[int, Sequence[linalg.Vector]]) -> "Submodule":
        K = ambient.field
        rows = []
        for d in ambient.degrees():
            rows.append(tuple(linalg.span_basis(list(per_degree.get(d, ())), ambient.dim(d), K)))
        return cls(ambient, tuple(rows))

    @classmethod
    def full(cls, ambient: GradedModule) -> "Submodule":
        one = ambient.field.one
        return cls(ambient, tuple(tuple({i: one} for i in range(ambient.dim(d))) for d in ambient.degrees()))

    @classmethod
    def zero(cls, ambient: GradedModule) -> "Submodule":
        return cls(ambient, tuple(() for _ in ambient.degrees()))

    @property
    def algebra(self):
        return self.ambient.algebra

    @property
    def field(self) -> Domain:
        return self.ambient.field

    def dim(self, d: int) -> int:
        if d < 0 or d >= len(self.vectors):
            return 0
        return len(self.vectors[d])

    def dims(self) -> Tuple[int, ...]:
        return tuple(len(v) for v in self.vectors)

    def is_zero(self) -> bool:
        return not any(self.vectors)

    def elements(self, d: int) -> List[Element]:
        return [self.ambient.to_element(v, d) for v in self.vectors[d]]

    def contains_vector(self, vector: linalg.Vector, d: int) -> bool:
        return linalg.in_span(self.vectors[d], vector, self.ambient.dim(d), self.field)

    def contains(self, element: Mapping) -> bool:
        if not element:
            return True
        d = self.ambient.element_degree(element)
        if d > self.ambient.cutoff:
            return True
        return self.contains_vector(self.ambient.to_vector(element, d), d)

    def closure_failures(self) -> List[Tuple[int, int, Hashable]]:
        """(degree, basis vector index, generator) triples where g·v leaves the submodule."""
        failures = []
        for d in self.ambient.degrees():
            for g in self.algebra.action_generators():
                target_degree = d + self.algebra.key_degree(g)
                if target_degree > self.ambient.cutoff:
                    continue
                for i, v in enumerate(self.vectors[d]):
                    if not self.contains_vector(self.ambient.act_vector(g, v, d), target_degree):
                        failures.append((d, i, g))
        return failures


def kernel_degreewise(phi: GradedLinearMap) -> Submodule:
    """
    Per-degree nullspaces of `phi`, checked against rank–nullity.

    Raises:
        ResolutionError: if dim ker + rank != dim source in some degree.
    """
    def kernel_in(d: int) -> List[linalg.Vector]:
        M = phi.matrix(d)
        ncols = M.shape[1]
        null, rank = linalg.nullspace_and_rank(M)
        if len(null) + rank != ncols:
            raise ResolutionError(
                f"Rank–nullity fails for {phi.name} in degree {d}: {len(null)} + {rank} != {ncols}"
            )
        return null

    per_degree = degreewise(kernel_in, phi.degrees())
    sub = Submodule(phi.source, tuple(tuple(per_degree[d]) for d in phi.degrees()))
    logger.debug(f"Kernel of {phi.name}: dims {sub.dims()}")
    return sub


def image_degreewise(phi: GradedLinearMap) -> Submodule:
    def image_in(d: int) -> List[linalg.Vector]:
        return linalg.columns_of(phi.matrix(d))

    per_degree = degreewise(image_in, phi.degrees())
    return Submodule.from_vectors(phi.target, per_degree)


# -----------------------------------------------------------------------------
# Generator Selection
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleGenerator:
    degree: int
    element: Element


def _products_in_degree(S: Submodule, d: int) -> List[linalg.Vector]:
    """Spanning vectors of (A⁺·S)_d = Σ_g g·S_{d - deg g}."""
    A = S.algebra
    products = []
    for g in A.action_generators():
        k = A.key_degree(g)
        if k < 1 or k > d:
            continue
        for v in S.vectors[d - k]:
            products.append(S.ambient.act_vector(g, v, d - k))
    return products


def augmentation_multiples_dimension(S: Submodule, d: int) -> int:
    """dim (A⁺·S)_d, computed independently of generator selection."""
    return linalg.rank(_products_in_degree(S, d), S.ambient.dim(d), S.field)


def minimal_generators(S: Submodule) -> List[ModuleGenerator]:
    """
    Elements whose classes form a basis of S_d / (A⁺·S)_d in every degree d.

    Selection is deterministic: the A⁺·S spanning vectors come first, then the
    stored basis of S_d in order, and the pivots falling on S_d are admitted.
    """
    gens: List[ModuleGenerator] = []
    for d in S.ambient.degrees():
        candidates = list(S.vectors[d])
        if not candidates:
            continue
        products = _products_in_degree(S, d)
        pivots = linalg.pivot_columns(products + candidates, S.ambient.dim(d), S.field)
        for j in pivots:
            if j >= len(products):
                gens.append(ModuleGenerator(d, S.ambient.to_element(candidates[j - len(products)], d)))
    return gens


def greedy_generators(S: Submodule) -> List[ModuleGenerator]:
    """
    Generators chosen by action closure: admit the first basis vector not yet
    reached, close it under the action of every algebra basis element, repeat.
    """
    A = S.algebra
    K = S.field
    gens: List[ModuleGenerator] = []
    for d in S.ambient.degrees():
        if not S.vectors[d]:
            continue
        dim = S.ambient.dim(d)
        reached: List[linalg.Vector] = []
        for g in gens:
            for a in A.basis(d - g.degree) if d - g.degree >= 0 else ():
                reached.append(S.ambient.to_vector(S.ambient.act_element(a, g.element), d))
        span = linalg.span_basis(reached, dim, K)
        for v in S.vectors[d]:
            if linalg.in_span(span, v, dim, K):
                continue
            element = S.ambient.to_element(v, d)
            gens.append(ModuleGenerator(d, element))
            orbit = [S.ambient.act_vector(a, v, d) for a in A.basis(0)]
            span = linalg.span_basis(span + orbit, dim, K)
    return gens


def select_generators(S: Submodule) -> List[ModuleGenerator]:
    """Minimal generators over graded algebras, greedy closure over finite ones."""
    if S.algebra.is_graded:
        return minimal_generators(S)
    return greedy_generators(S)
