# src/homfin/algebra/group_rings.py

"""
Finite monoids and groups, their algebras, and the bi-resolution machinery
that is special to groups.

A monoid algebra KB is the degree-0 case of the algebra protocol: every basis
key is an element index, the cutoff is 0, and resolutions over it go through
the same engine as graded ones with greedy generator selection.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains.domain import Domain

from homfin.algebra import linalg
from homfin.algebra.enveloping import Bimodule, EnvelopedModule, FreeBimodule, RegularBimodule, to_left_E_module
from homfin.algebra.modules import (
    TRIVIAL_KEY,
    Element,
    FreeGradedModule,
    GradedLinearMap,
    GradedModule,
    ModuleGenerator,
    RegularModule,
    Submodule,
    TrivialModule,
    add_scaled,
    assemble_map,
    kernel_degreewise,
    select_generators,
)
from homfin.algebra.resolutions import (
    ExactnessReport,
    PartialFreeResolution,
    build_resolution,
    check_exactness,
    contract_to_left,
)
from homfin.algebra.scalars import field_name
from homfin.core.exceptions import InvolutionError, MonoidTableError, ResolutionError, UnsupportedInputError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Monoids and Groups
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteMonoid:
    """Elements by name with index 0 the identity; table[a][b] is the index of ab."""

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    name: str = "B"

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def is_group(self) -> bool:
        return False

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index_of(self, element_name: str) -> int:
        try:
            return self.names.index(element_name)
        except ValueError:
            raise MonoidTableError(f"Unknown element '{element_name}' of {self.name}.") from None

    def is_commutative(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def inverses(self) -> Optional[Tuple[int, ...]]:
        inverse = []
        for g in range(self.order):
            match = next((h for h in range(self.order) if self.table[g][h] == 0 and self.table[h][g] == 0), None)
            if match is None:
                return None
            inverse.append(match)
        return tuple(inverse)

    def opposite(self) -> "FiniteMonoid":
        n = self.order
        table = tuple(tuple(self.table[b][a] for b in range(n)) for a in range(n))
        return FiniteMonoid(self.names, table, name=f"{self.name}^opp")


@dataclass(frozen=True)
class FiniteGroup(FiniteMonoid):
    inverse: Tuple[int, ...] = ()

    @property
    def is_group(self) -> bool:
        return True

    def opposite(self) -> "FiniteGroup":
        base = super().opposite()
        return FiniteGroup(base.names, base.table, base.name, self.inverse)


def _promote(monoid: FiniteMonoid) -> Union[FiniteMonoid, FiniteGroup]:
    inverse = monoid.inverses()
    if inverse is None:
        return monoid
    return FiniteGroup(monoid.names, monoid.table, monoid.name, inverse)


def validate_and_build(names: Sequence[str], rows: Sequence[Sequence[Union[str, int]]], name: str = "B") -> Union[FiniteMonoid, FiniteGroup]:
    """
    Builds a monoid from a multiplication table, relabelling so the identity
    comes first, and promotes it to a group when every element is invertible.

    Raises:
        MonoidTableError: non-square table, unknown entries, no identity, or a
            non-associative triple (carried as the witness).
    """
    names = [str(x) for x in names]
    n = len(names)
    if n == 0:
        raise MonoidTableError("A monoid needs at least one element.")
    if len(set(names)) != n:
        raise MonoidTableError(f"Duplicate element names in {names}.")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise MonoidTableError(f"Multiplication table must be {n} x {n}.")
    lookup = {x: i for i, x in enumerate(names)}
    table: List[List[int]] = []
    for row in rows:
        parsed = []
        for entry in row:
            if isinstance(entry, int):
                if not 0 <= entry < n:
                    raise MonoidTableError(f"Table entry {entry} out of range.")
                parsed.append(entry)
            elif entry in lookup:
                parsed.append(lookup[entry])
            else:
                raise MonoidTableError(f"Table entry '{entry}' is not an element.")
        table.append(parsed)

    identity = next((e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))), None)
    if identity is None:
        raise MonoidTableError("The table has no two-sided identity.")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            witness = (names[a], names[b], names[c])
            raise MonoidTableError(f"Multiplication is not associative at {witness}.", witness=witness)

    order = [identity] + [x for x in range(n) if x != identity]
    position = {old: new for new, old in enumerate(order)}
    relabelled = tuple(tuple(position[table[a][b]] for b in order) for a in order)
    monoid = _promote(FiniteMonoid(tuple(names[i] for i in order), relabelled, name=name))
    logger.debug(f"Built {'group' if monoid.is_group else 'monoid'} {name} of order {n}")
    return monoid


def direct_product(B: FiniteMonoid, C: FiniteMonoid, name: Optional[str] = None) -> Union[FiniteMonoid, FiniteGroup]:
    """B × C with (b, c) at index b·|C| + c, so the identity stays at 0."""
    m = C.order
    names = tuple(f"({b},{c})" for b in B.names for c in C.names)
    table = tuple(
        tuple(B.table[i // m][j // m] * m + C.table[i % m][j % m] for j in range(len(names)))
        for i in range(len(names))
    )
    return _promote(FiniteMonoid(names, table, name=name or f"{B.name}x{C.name}"))


# -----------------------------------------------------------------------------
# Monoid Algebras
# -----------------------------------------------------------------------------

class MonoidAlgebra:
    """KB as a degree-0 algebra: basis keys are element indices."""

    is_graded = False
    cutoff = 0

    def __init__(self, monoid: FiniteMonoid, field: Domain, name: Optional[str] = None):
        self.monoid = monoid
        self._field = field
        self.name = name or f"K{monoid.name}"
        self._basis = tuple(range(monoid.order))
        self._index = {b: b for b in self._basis}

    def __repr__(self) -> str:
        return f"MonoidAlgebra({self.name} over {field_name(self.field)}, |B|={self.monoid.order})"

    @property
    def field(self) -> Domain:
        return self._field

    @property
    def one(self) -> int:
        return 0

    def basis(self, d: int) -> Tuple[int, ...]:
        return self._basis if d == 0 else ()

    def index(self, d: int) -> Dict[int, int]:
        return self._index if d == 0 else {}

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def dims(self) -> Tuple[int, ...]:
        return (len(self._basis),)

    def key_degree(self, key: int) -> int:
        return 0

    def format_key(self, key: int) -> str:
        return self.monoid.names[key]

    def action_generators(self) -> List[int]:
        return list(self._basis)

    def augmentation(self, key: int):
        return self.field.one

    def multiply(self, a: int, b: int) -> Dict[int, object]:
        return {self.monoid.table[a][b]: self.field.one}

    def signature(self) -> Tuple:
        return ("monoid", field_name(self.field), self.monoid.names, self.monoid.table)


class FiniteEnvelopingAlgebra(MonoidAlgebra):
    """
    K(B × B^opp) with (a, b°)(c, d°) = (ac, (db)°). The key of a ⊗ b° is a·|B| + b.
    """

    def __init__(self, monoid: FiniteMonoid, field: Domain):
        super().__init__(direct_product(monoid, monoid.opposite(), name=f"{monoid.name}x{monoid.name}^opp"), field)
        self.name = f"E(K{monoid.name})"
        self.base = MonoidAlgebra(monoid, field)
        self.opposite = MonoidAlgebra(monoid.opposite(), field)
        self.k = monoid.order

    def key(self, a: int, b: int) -> int:
        return a * self.k + b

    def format_key(self, key: int) -> str:
        a, b = divmod(key, self.k)
        names = self.base.monoid.names
        return f"{names[a]}⊗{names[b]}°"

    def embed_left(self, a: int) -> Dict[int, object]:
        return {self.key(a, 0): self.field.one}

    def embed_right(self, b: int) -> Dict[int, object]:
        return {self.key(0, b): self.field.one}

    def right_from_base(self, b: int) -> Dict[int, object]:
        return self.embed_right(b)

    def split(self, key: int) -> Tuple[int, int]:
        return divmod(key, self.k)

    def contract(self, key: int) -> Dict[int, object]:
        return {key // self.k: self.field.one}

    def act_on_bimodule(self, key: int, m, M: Bimodule) -> Element:
        a, b = divmod(key, self.k)
        K = self.field
        out: Element = {}
        for x, c in M.right_act(m, b).items():
            add_scaled(out, M.left_act(a, x), c, K)
        return out


def action_law_witness(M: GradedModule) -> Optional[Tuple[int, int, object]]:
    """First (a, b, m) with a·(b·m) != (ab)·m for a module over a monoid algebra."""
    KB = M.algebra
    for a, b in product(KB.basis(0), repeat=2):
        ab = KB.monoid.mul(a, b)
        for m in M.basis(0):
            if M.act_element(a, M.act(b, m)) != M.act(ab, m):
                return (a, b, m)
    return None


# -----------------------------------------------------------------------------
# Left Resolutions and the Involution Transport
# -----------------------------------------------------------------------------

def left_resolution_K(KB: MonoidAlgebra, n: int) -> PartialFreeResolution:
    """Greedy free resolution of the trivial module _BK to length n."""
    res = build_resolution(KB, TrivialModule(KB, side="left"), n, side="left", target_kind="trivial")
    logger.info(f"Left resolution of K over {KB.name}: ranks {list(res.ranks())}")
    return res


def check_involution(B: FiniteMonoid, star: Sequence[int]) -> Optional[Tuple]:
    """
    None if star is an involution, else a witness: (b,) when b** != b, or
    (b, c) when (bc)* != c*b*.
    """
    if len(star) != B.order or any(not 0 <= s < B.order for s in star):
        return ("length",)
    for b in range(B.order):
        if star[star[b]] != b:
            return (B.names[b],)
    for b, c in product(range(B.order), repeat=2):
        if star[B.mul(b, c)] != B.mul(star[c], star[b]):
            return (B.names[b], B.names[c])
    return None


def default_involution(B: FiniteMonoid) -> Optional[Tuple[int, ...]]:
    if isinstance(B, FiniteGroup):
        return B.inverse
    if B.is_commutative():
        return tuple(range(B.order))
    return None


def involution_transport(res: PartialFreeResolution, star: Optional[Sequence[int]] = None) -> PartialFreeResolution:
    """
    Turns a resolution over KB into one over KB^opp (the other side) by sending
    every basis element b to b*. Ranks are unchanged.

    Raises:
        InvolutionError: star is not an involution (witness attached) or none
            is available.
        UnsupportedInputError: the resolution is over a graded algebra.
    """
    KB = res.algebra
    if KB.is_graded:
        raise UnsupportedInputError("Involution transport applies to finite monoid algebras only.")
    B = KB.monoid
    star = tuple(star) if star is not None else default_involution(B)
    if star is None:
        raise InvolutionError(f"{B.name} is neither a group nor commutative; an explicit involution is required.")
    witness = check_involution(B, star)
    if witness is not None:
        raise InvolutionError(f"The map * is not an involution of {B.name}: fails at {witness}.", witness=witness)

    K = KB.field
    KB_opp = MonoidAlgebra(B.opposite(), K)
    side = "right" if res.side == "left" else "left"
    target = TrivialModule(KB_opp, side=side)

    def transport(element: Element) -> Element:
        return {(e, star[a]): c for (e, a), c in element.items()}

    modules, maps = [], []
    for i, (F, d) in enumerate(zip(res.modules, res.maps)):
        F_opp = FreeGradedModule(KB_opp, F.generator_degrees, name=f"F{i}")
        images = [dict(img) if i == 0 else transport(img) for img in d.images]
        prev = target if i == 0 else modules[-1]
        maps.append(assemble_map(F_opp, prev, images, name=f"∂{i}"))
        modules.append(F_opp)
    pending = tuple(ModuleGenerator(g.degree, transport(g.element)) for g in res.pending)
    return PartialFreeResolution(
        algebra=KB_opp,
        target=target,
        modules=tuple(modules),
        maps=tuple(maps),
        side=side,
        target_kind=res.target_kind,
        complete=res.complete,
        pending=pending,
    )


# -----------------------------------------------------------------------------
# The ⊗̂ Functor
# -----------------------------------------------------------------------------

def _require_group(KB: MonoidAlgebra) -> FiniteGroup:
    B = KB.monoid
    if not isinstance(B, FiniteGroup):
        raise UnsupportedInputError(
            f"{B.name} has elements without inverses. The bimodule isomorphism g ⊗̂ h ↦ g ⊗ g⁻¹h "
            "needs g⁻¹, so the ⊗̂ construction is only available for groups."
        )
    return B


class HatTensorBimodule(Bimodule):
    """M ⊗_K KG with g·(m ⊗ x)·h = gm ⊗ gxh; keys are (m, x)."""

    def __init__(self, M: GradedModule):
        super().__init__(M.algebra, name=f"{M.name}⊗̂KG")
        self.module = M
        self.group = _require_group(M.algebra)

    def basis(self, d: int):
        if d != 0:
            return ()
        return tuple((m, x) for m in self.module.basis(0) for x in range(self.group.order))

    def key_degree(self, key) -> int:
        return 0

    def left_act(self, g, key) -> Element:
        m, x = key
        gx = self.group.mul(g, x)
        return {(m2, gx): c for m2, c in self.module.act(g, m).items()}

    def right_act(self, key, h) -> Element:
        m, x = key
        return {(m, self.group.mul(x, h)): self.field.one}

    def format_key(self, key) -> str:
        m, x = key
        return f"{self.module.format_key(m)}⊗̂{self.group.names[x]}"


def hat_tensor(M: GradedModule) -> HatTensorBimodule:
    """
    Raises:
        UnsupportedInputError: the monoid has no inverses.
    """
    return HatTensorBimodule(M)


def hat_tensor_map(phi: GradedLinearMap, source: HatTensorBimodule, target: HatTensorBimodule, env) -> GradedLinearMap:
    """φ ⊗ id_KG as a map of left E-modules."""
    def key_image(key) -> Element:
        m, x = key
        return {(m2, x): c for m2, c in phi.image_of_key(m).items()}

    return GradedLinearMap(EnvelopedModule(source, env), EnvelopedModule(target, env), key_image, name=f"{phi.name}⊗id")


@dataclass(frozen=True)
class HatIsoReport:
    """Exhaustive checks of the maps between KG ⊗ KG and KG ⊗̂ KG, and of θ: K ⊗̂ KG -> KG."""

    alpha_beta: bool
    beta_alpha: bool
    beta_equivariant: bool
    theta_intertwines: bool
    witness: Optional[Tuple] = None

    @property
    def passed(self) -> bool:
        return self.alpha_beta and self.beta_alpha and self.beta_equivariant and self.theta_intertwines


def hat_iso_maps(KG: MonoidAlgebra):
    """
    β: g ⊗ h ↦ g ⊗̂ gh and α: g ⊗̂ h ↦ g ⊗ g⁻¹h, as functions on basis keys.

    Keys of KG ⊗ KG are those of the rank-1 free bimodule, (0, g, h).
    """
    G = _require_group(KG)
    one = KG.field.one

    def beta(key) -> Element:
        _, g, h = key
        return {(g, G.mul(g, h)): one}

    def alpha(key) -> Element:
        g, h = key
        return {(0, g, G.mul(G.inverse[g], h)): one}

    return alpha, beta


def _apply(fn, element: Element, K) -> Element:
    out: Element = {}
    for key, c in element.items():
        add_scaled(out, fn(key), c, K)
    return out


def lemma3_iso(KG: MonoidAlgebra) -> HatIsoReport:
    """Checks αβ = id, βα = id, β bimodule-linear and θ action-compatible on every basis triple."""
    G = _require_group(KG)
    K = KG.field
    alpha, beta = hat_iso_maps(KG)
    free = FreeBimodule(KG, [0], name="KG⊗KG")
    hat = HatTensorBimodule(RegularModule(KG, name="KG"))
    hat_K = HatTensorBimodule(TrivialModule(KG))
    elements = range(G.order)

    for key in free.basis(0):
        if alpha(next(iter(beta(key)))) != {key: K.one}:
            return HatIsoReport(False, False, False, False, ("αβ", key))
    for key in hat.basis(0):
        if beta(next(iter(alpha(key)))) != {key: K.one}:
            return HatIsoReport(True, False, False, False, ("βα", key))
    for x, key, y in product(elements, free.basis(0), elements):
        moved = _apply(lambda k: free.right_act(k, y), free.left_act(x, key), K)
        lhs = _apply(beta, moved, K)
        rhs = _apply(lambda k: hat.right_act(k, y), _apply(lambda k: hat.left_act(x, k), beta(key), K), K)
        if lhs != rhs:
            return HatIsoReport(True, True, False, False, ("β", x, key, y))

    def theta(key) -> Element:
        _, x = key
        return {x: K.one}

    for g, key, h in product(elements, hat_K.basis(0), elements):
        moved = _apply(lambda k: hat_K.right_act(k, h), hat_K.left_act(g, key), K)
        lhs = _apply(theta, moved, K)
        rhs = {G.mul(G.mul(g, key[1]), h): K.one}
        if lhs != rhs:
            return HatIsoReport(True, True, True, False, ("θ", g, key, h))
    return HatIsoReport(True, True, True, True)


# -----------------------------------------------------------------------------
# Left Resolutions to Bi-resolutions
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupBiresReport:
    input_ranks: Tuple[int, ...]
    output_ranks: Tuple[int, ...]
    exactness: ExactnessReport
    identification_defects: Tuple[int, ...]
    contracted_ranks: Tuple[int, ...]
    contracted_exactness: ExactnessReport

    @property
    def passed(self) -> bool:
        return (
            self.input_ranks == self.output_ranks == self.contracted_ranks
            and self.exactness.ok
            and self.contracted_exactness.ok
            and not self.identification_defects
        )


def hat_identification_defects(F: FreeGradedModule, env: FiniteEnvelopingAlgebra) -> List[int]:
    """
    Generator positions e where the E-map ê ↦ (e, 1) ⊗̂ 1 fails to be an
    isomorphism of E·ê onto 𝓔(F ⊗̂ KG); empty when F ⊗̂ KG is free on those
    elements.
    """
    if F.rank == 0:
        return []
    hat = to_left_E_module(HatTensorBimodule(F), env)
    one = env.base.one
    free = FreeGradedModule(env, F.generator_degrees, name="E-free")

    def key_image(key) -> Element:
        e, w = key
        return hat.act(w, ((e, one), one))

    phi = GradedLinearMap(free, hat, key_image, name="β")
    M = phi.matrix(0)
    if free.dim(0) == hat.dim(0) and linalg.rank_of(M) == hat.dim(0):
        return []
    return list(range(F.rank))


def theorem2_biresolution(leftres: PartialFreeResolution) -> Tuple[PartialFreeResolution, GroupBiresReport]:
    """
    Applies − ⊗̂ KG to a left resolution of K over KG. The term P_i ⊗̂ KG is the
    free bimodule on the elements e ⊗̂ 1, and (a·e') ⊗̂ 1 = (a, a⁻¹)·(e' ⊗̂ 1);
    K ⊗̂ KG is identified with KG through θ: k ⊗ x ↦ kx.

    Raises:
        UnsupportedInputError: the monoid is not a group.
        ResolutionError: the input is not a left resolution of K.
    """
    KG = leftres.algebra
    if KG.is_graded:
        raise UnsupportedInputError("The ⊗̂ conversion applies to finite group algebras.")
    G = _require_group(KG)
    if leftres.side != "left" or leftres.target_kind != "trivial":
        raise ResolutionError("Input must be a left resolution of the trivial module.")
    K = KG.field
    env = FiniteEnvelopingAlgebra(G, K)
    target = to_left_E_module(RegularBimodule(KG), env)

    modules, maps = [], []
    for i, (F, d) in enumerate(zip(leftres.modules, leftres.maps)):
        F_E = FreeGradedModule(env, F.generator_degrees, name=f"F{i}")
        images = []
        for img in d.images:
            image: Element = {}
            if i == 0:
                c = img.get(TRIVIAL_KEY, K.zero)
                if c:
                    image[KG.one] = c
            else:
                for (e2, a), c in img.items():
                    add_scaled(image, {(e2, env.key(a, G.inverse[a])): K.one}, c, K)
            images.append(image)
        prev = target if i == 0 else modules[-1]
        maps.append(assemble_map(F_E, prev, images, name=f"∂{i}"))
        modules.append(F_E)

    last = maps[-1]
    kernel = kernel_degreewise(last) if last.source.rank else Submodule.zero(last.source)
    bires = PartialFreeResolution(
        algebra=env,
        target=target,
        modules=tuple(modules),
        maps=tuple(maps),
        side="bi",
        target_kind="algebra",
        complete=kernel.is_zero(),
        pending=tuple(select_generators(kernel)) if not kernel.is_zero() else (),
    )

    defects = tuple(i for i, F in enumerate(leftres.modules) if hat_identification_defects(F, env))
    contracted = contract_to_left(bires, env)
    report = GroupBiresReport(
        input_ranks=leftres.ranks(),
        output_ranks=bires.ranks(),
        exactness=check_exactness(bires),
        identification_defects=defects,
        contracted_ranks=contracted.ranks(),
        contracted_exactness=check_exactness(contracted),
    )
    logger.info(f"⊗̂ bi-resolution of {KG.name}: ranks {list(bires.ranks())}, {'PASS' if report.passed else 'FAIL'}")
    return bires, report
