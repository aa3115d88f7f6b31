"""Second homology of blown-up rational and ruled surfaces, exactly.

A basis is one of three shapes: the rational shape (line class L and
exceptional classes E1..Ek, intersection form diag(1, -1, .., -1)), or one
of the two ruled shapes (section class B, fiber class F, exceptional
classes E1..Ek, with B.F = 1 and B.B equal to 0 or -1).  All three have
Lorentzian signature (1, rank-1), which is what makes every enumeration
here finite: the area functional is dual to a timelike vector, so
"bounded area and bounded square" cuts out a compact region, and the
companion positive definite form built from it turns each search into an
exact lattice-point walk (see linalg.enumerate_quadratic_ball).

Symplectic shapes are recorded as SymplecticData: the base areas plus the
ordered blow-up capacities.  Everything downstream (candidate exceptional
classes, minimal classes, blow-down chains, capacity thresholds) is a pure
function of that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    EnumerationError,
    FormatError,
    PreconditionError,
    UnsupportedBlowdownError,
)
from .linalg import (
    ball_coordinate_bounds,
    enumerate_quadratic_ball,
    integer_kernel,
    mat_inverse,
    mat_vec,
    primitive_vector,
)
from .rationals import floor_sqrt, format_rational, parse_rational

RATIONAL = "rational"
PRODUCT_RULED = "product_ruled"
TWISTED_RULED = "twisted_ruled"
BASIS_KINDS = (RATIONAL, PRODUCT_RULED, TWISTED_RULED)

DEFAULT_SEARCH_CEILING = 512


# ---------------------------------------------------------------------------
# Bases and classes


@dataclass(frozen=True)
class Basis:
    """Ordered symbol list plus intersection form for one homology lattice."""

    kind: str
    genus: int = 0
    blowups: int = 0

    def __post_init__(self) -> None:
        if self.kind not in BASIS_KINDS:
            raise FormatError(f"unknown basis kind: {self.kind!r}")
        if not isinstance(self.genus, int) or self.genus < 0:
            raise FormatError(f"genus must be a nonnegative integer: {self.genus!r}")
        if not isinstance(self.blowups, int) or self.blowups < 0:
            raise FormatError(f"blow-up count must be a nonnegative integer: {self.blowups!r}")
        if self.kind == RATIONAL and self.genus != 0:
            raise FormatError("rational bases have genus 0")

    @property
    def base_rank(self) -> int:
        return 1 if self.kind == RATIONAL else 2

    @property
    def rank(self) -> int:
        return self.base_rank + self.blowups

    @property
    def symbols(self) -> tuple[str, ...]:
        head = ("L",) if self.kind == RATIONAL else ("B", "F")
        return head + tuple(f"E{i}" for i in range(1, self.blowups + 1))

    def gram(self) -> list[list[int]]:
        n = self.rank
        m = [[0] * n for _ in range(n)]
        if self.kind == RATIONAL:
            m[0][0] = 1
        else:
            m[0][0] = -1 if self.kind == TWISTED_RULED else 0
            m[0][1] = m[1][0] = 1
        for i in range(self.base_rank, n):
            m[i][i] = -1
        return m

    def chern_vector(self) -> list[int]:
        """Pairing of the first Chern class with each basis symbol."""
        if self.kind == RATIONAL:
            head = [3]
        elif self.kind == PRODUCT_RULED:
            head = [2 - 2 * self.genus, 2]
        else:
            head = [1 - 2 * self.genus, 2]
        return head + [1] * self.blowups


@dataclass(frozen=True)
class HomologyClass:
    basis: Basis
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.basis.rank:
            raise FormatError(
                f"class needs {self.basis.rank} coefficients, got {len(coeffs)}"
            )

    def __str__(self) -> str:
        parts: list[str] = []
        for symbol, c in zip(self.basis.symbols, self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {magnitude}{symbol}")
        if not parts:
            return "0"
        head = parts[0].replace("+ ", "").replace("- ", "-")
        return " ".join([head] + parts[1:])


def _require_same_basis(a: HomologyClass, b: HomologyClass) -> None:
    if a.basis != b.basis:
        raise PreconditionError("basis mismatch")


def intersect(a: HomologyClass, b: HomologyClass) -> int:
    """Symmetric bilinear intersection pairing."""
    _require_same_basis(a, b)
    gram = a.basis.gram()
    return sum(
        a.coeffs[i] * gram[i][j] * b.coeffs[j]
        for i in range(len(a.coeffs))
        for j in range(len(b.coeffs))
        if gram[i][j] != 0
    )


def chern(a: HomologyClass) -> int:
    """Pairing of the first Chern class with a class."""
    return sum(t * c for t, c in zip(a.basis.chern_vector(), a.coeffs))


# ---------------------------------------------------------------------------
# Symplectic data


@dataclass(frozen=True)
class SymplecticData:
    """A blow-up shape: base areas plus ordered blow-up capacities.

    Rational bases carry lam (the area of L).  Ruled bases carry mu (the
    area of the section B) and fiber (the area of F, 1 unless a blow-down
    produced something else).  Capacities are the areas of E1..Ek and must
    be weakly decreasing and positive; the squared-volume quantity (the
    square of the dual of the area functional) must be positive.
    """

    basis: Basis
    capacities: tuple[Q, ...] = ()
    lam: Q | None = None
    mu: Q | None = None
    fiber: Q | None = None

    def __post_init__(self) -> None:
        caps = tuple(parse_rational(c) for c in self.capacities)
        object.__setattr__(self, "capacities", caps)
        for name in ("lam", "mu", "fiber"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, parse_rational(value))
        if self.basis.kind == RATIONAL:
            if self.lam is None or self.mu is not None or self.fiber is not None:
                raise PreconditionError("rational data needs lam and no mu/fiber")
            if self.lam <= 0:
                raise PreconditionError("base area must be positive")
        else:
            if self.mu is None or self.lam is not None:
                raise PreconditionError("ruled data needs mu and no lam")
            if self.fiber is None:
                object.__setattr__(self, "fiber", Q(1))
            if self.mu <= 0 or self.fiber <= 0:
                raise PreconditionError("base area must be positive")
        if len(caps) != self.basis.blowups:
            raise PreconditionError(
                f"expected {self.basis.blowups} capacities, got {len(caps)}"
            )
        if any(c <= 0 for c in caps):
            raise PreconditionError("capacities must be positive")
        if any(caps[i] < caps[i + 1] for i in range(len(caps) - 1)):
            raise PreconditionError("capacities must be weakly decreasing")
        if self.volume_quantity() <= 0:
            raise PreconditionError("volume quantity must be positive")

    def area_vector(self) -> list[Q]:
        """Covector w with area(x) = w . coeffs(x)."""
        if self.basis.kind == RATIONAL:
            head = [self.lam]
        else:
            head = [self.mu, self.fiber]
        return head + list(self.capacities)

    def dual_coords(self) -> list[Q]:
        """Coordinates of the class dual to the area functional."""
        inverse = mat_inverse([[Q(x) for x in row] for row in self.basis.gram()])
        return mat_vec(inverse, self.area_vector())

    def volume_quantity(self) -> Q:
        """Square of the dual of the area functional; twice the volume."""
        w = self.area_vector()
        return sum(a * b for a, b in zip(w, self.dual_coords()))

    def chern_pairing(self) -> Q:
        """Total area of the anticanonical class."""
        inverse = mat_inverse([[Q(x) for x in row] for row in self.basis.gram()])
        dual_chern = mat_vec(inverse, [Q(t) for t in self.basis.chern_vector()])
        return sum(a * b for a, b in zip(self.area_vector(), dual_chern))


def area(a: HomologyClass, omega: SymplecticData) -> Q:
    """Symplectic area of a class."""
    if a.basis != omega.basis:
        raise PreconditionError("basis mismatch")
    return sum(w * c for w, c in zip(omega.area_vector(), a.coeffs))


def poincare_dual(omega: SymplecticData) -> tuple[Q, ...]:
    """Coordinates of the (generally non-integral) dual of the area form."""
    return tuple(omega.dual_coords())


# ---------------------------------------------------------------------------
# Certified enumeration


def _companion_form(gram: Sequence[Sequence[Q]], weight: Sequence[Q], square: Q) -> list[list[Q]]:
    """Positive definite form 2 (w.x)^2 / square - x^T G x.

    Positive definiteness needs square = w^T G^{-1} w > 0, which holds
    whenever the weight covector is dual to a timelike vector.
    """
    n = len(weight)
    return [
        [2 * weight[i] * weight[j] / square - gram[i][j] for j in range(n)]
        for i in range(n)
    ]


def _certified_ball(
    form: Sequence[Sequence[Q]], cutoff: Q, search_ceiling: int
) -> Iterable[tuple[int, ...]]:
    bounds = ball_coordinate_bounds(form, cutoff)
    if any(b > search_ceiling for b in bounds):
        raise EnumerationError("bound not certified")
    return enumerate_quadratic_ball(form, cutoff)


def _quadratic(gram: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    return sum(
        x[i] * gram[i][j] * x[j]
        for i in range(len(x))
        for j in range(len(x))
        if gram[i][j] != 0
    )


def _passes_positivity(basis: Basis, coeffs: Sequence[int]) -> bool:
    """Pairing constraint against the base positive class.

    Rational bases: pairing with L (the leading coefficient) nonnegative.
    Ruled genus 0: pairing with F (the section coefficient) nonnegative.
    Ruled genus >= 1: pairing with F exactly zero, since every sphere maps
    trivially to a positive-genus base.
    """
    if basis.kind == RATIONAL:
        return coeffs[0] >= 0
    if basis.genus == 0:
        return coeffs[0] >= 0
    return coeffs[0] == 0


def enumerate_exceptional_candidates(
    omega: SymplecticData,
    area_bound: Q,
    search_ceiling: int = DEFAULT_SEARCH_CEILING,
) -> tuple[HomologyClass, ...]:
    """All classes with square -1, Chern number 1, and area in (0, bound].

    The search region is certified finite via the companion form of the
    area functional; if the certified coefficient box exceeds
    search_ceiling the call fails loudly instead of truncating.
    """
    bound = parse_rational(area_bound)
    if bound <= 0:
        raise PreconditionError("area bound must be positive")
    basis = omega.basis
    gram_int = basis.gram()
    gram = [[Q(x) for x in row] for row in gram_int]
    weight = omega.area_vector()
    quantity = omega.volume_quantity()
    cutoff = 2 * bound * bound / quantity + 1
    chern_vec = basis.chern_vector()
    found: list[HomologyClass] = []
    for coeffs in _certified_ball(_companion_form(gram, weight, quantity), cutoff, search_ceiling):
        if _quadratic(gram_int, coeffs) != -1:
            continue
        if sum(t * c for t, c in zip(chern_vec, coeffs)) != 1:
            continue
        value = sum(w * c for w, c in zip(weight, coeffs))
        if not (0 < value <= bound):
            continue
        if not _passes_positivity(basis, coeffs):
            continue
        found.append(HomologyClass(basis, tuple(coeffs)))
    return tuple(sorted(found, key=lambda cls: cls.coeffs))


class MinimalClassData(NamedTuple):
    epsilon: Q
    classes: tuple[HomologyClass, ...]


def minimal_exceptional_classes(omega: SymplecticData) -> MinimalClassData:
    """Smallest area among exceptional candidates and the classes attaining it."""
    if omega.basis.blowups < 1:
        raise PreconditionError("no exceptional divisor")
    bound = omega.capacities[-1]
    candidates = enumerate_exceptional_candidates(omega, bound)
    assert candidates, "the last exceptional class always qualifies"
    epsilon = min(area(c, omega) for c in candidates)
    smallest = tuple(c for c in candidates if area(c, omega) == epsilon)
    return MinimalClassData(epsilon, smallest)


def enumerate_bounded_classes(
    anchor: HomologyClass | Sequence[Q],
    lo: Q,
    hi: Q,
    p: Q,
    q: Q,
    omega: SymplecticData,
    search_ceiling: int = DEFAULT_SEARCH_CEILING,
) -> tuple[HomologyClass, ...]:
    """All classes X with -q <= X.X <= -p and lo <= anchor.X <= hi.

    The anchor may be an integral class or a rational coefficient vector
    (the dual of the area form, say).  Its square must be positive: a null
    anchor leaves the region noncompact (adding fibers never changes the
    constraints) and no finite answer exists.
    """
    basis = omega.basis
    if isinstance(anchor, HomologyClass):
        if anchor.basis != basis:
            raise PreconditionError("basis mismatch")
        anchor_coeffs: list[Q] = [Q(c) for c in anchor.coeffs]
    else:
        anchor_coeffs = [parse_rational(c) for c in anchor]
        if len(anchor_coeffs) != basis.rank:
            raise PreconditionError("basis mismatch")
    lo, hi, p, q = (parse_rational(v) for v in (lo, hi, p, q))
    if lo > hi:
        raise PreconditionError("empty interval")
    if not (0 < p <= q):
        raise PreconditionError("square bounds must satisfy 0 < p <= q")
    gram_int = basis.gram()
    gram = [[Q(x) for x in row] for row in gram_int]
    weight = mat_vec(gram, anchor_coeffs)
    square = sum(a * b for a, b in zip(weight, anchor_coeffs))
    if square <= 0:
        raise PreconditionError("anchor square must be positive for a finite search")
    cutoff = 2 * max(lo * lo, hi * hi) / square + q
    found: list[HomologyClass] = []
    for coeffs in _certified_ball(_companion_form(gram, weight, square), cutoff, search_ceiling):
        value = _quadratic(gram_int, coeffs)
        if not (-q <= value <= -p):
            continue
        pairing = sum(w * c for w, c in zip(weight, coeffs))
        if not (lo <= pairing <= hi):
            continue
        found.append(HomologyClass(basis, tuple(coeffs)))
    return tuple(sorted(found, key=lambda cls: cls.coeffs))


# ---------------------------------------------------------------------------
# Blow-downs


def _is_unit_vector(coeffs: Sequence[int], index: int) -> bool:
    return all(c == (1 if i == index else 0) for i, c in enumerate(coeffs))


def _removal_frame(rank: int, drop: int) -> list[list[int]]:
    return [
        [1 if j == i else 0 for j in range(rank)] for i in range(rank) if i != drop
    ]


def _not_exceptional(exc: HomologyClass, reason: str) -> PreconditionError:
    return PreconditionError(f"class is not exceptional ({reason}): {exc}")


def blow_down_class(omega: SymplecticData, exc: HomologyClass) -> SymplecticData:
    """Blow down one exceptional class; areas transport along the new basis."""
    data, _ = _blow_down_with_frame(omega, exc)
    return data


def _blow_down_with_frame(
    omega: SymplecticData, exc: HomologyClass
) -> tuple[SymplecticData, list[list[int]]]:
    """Blow down and also return the new basis written in the old coordinates.

    The frame rows are the new basis vectors; transporting a class of the
    new lattice back to the old one is coefficient-weighted row summation.
    """
    basis = omega.basis
    if exc.basis != basis:
        raise PreconditionError("basis mismatch")
    if intersect(exc, exc) != -1:
        raise _not_exceptional(exc, "square is not -1")
    if chern(exc) != 1:
        raise _not_exceptional(exc, "Chern number is not 1")
    value = area(exc, omega)
    if value <= 0:
        raise _not_exceptional(exc, "area is not positive")

    coeffs = exc.coeffs
    base = basis.base_rank
    # A bare exceptional symbol: drop it.
    for i in range(base, basis.rank):
        if _is_unit_vector(coeffs, i):
            cap_index = i - base
            caps = omega.capacities[:cap_index] + omega.capacities[cap_index + 1 :]
            small = Basis(basis.kind, basis.genus, basis.blowups - 1)
            data = SymplecticData(
                small, caps, lam=omega.lam, mu=omega.mu,
                fiber=None if basis.kind == RATIONAL else omega.fiber,
            )
            return _finish_blow_down(omega, exc, data, _removal_frame(basis.rank, i))

    if basis.kind in (PRODUCT_RULED, TWISTED_RULED):
        result = _ruled_closed_form(omega, exc)
        if result is not None:
            return result
        if basis.genus >= 1:
            # Every genuine sphere class in a positive-genus ruled lattice is
            # one of the closed-form shapes; anything else has no blow-down.
            raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
    return _general_blow_down(omega, exc)


def _fiber_minus_index(basis: Basis, coeffs: Sequence[int]) -> int | None:
    """Detect F - Ei (ruled bases); return the symbol index of Ei."""
    if coeffs[0] != 0 or coeffs[1] != 1:
        return None
    hits = [i for i in range(2, basis.rank) if coeffs[i] == -1]
    if len(hits) != 1:
        return None
    if any(coeffs[i] != 0 for i in range(2, basis.rank) if i != hits[0]):
        return None
    return hits[0]


def _section_minus_index(basis: Basis, coeffs: Sequence[int]) -> int | None:
    """Detect B - Ei (product ruled, genus 0); return the symbol index of Ei."""
    if coeffs[0] != 1 or coeffs[1] != 0:
        return None
    hits = [i for i in range(2, basis.rank) if coeffs[i] == -1]
    if len(hits) != 1:
        return None
    if any(coeffs[i] != 0 for i in range(2, basis.rank) if i != hits[0]):
        return None
    return hits[0]


def _ruled_closed_form(
    omega: SymplecticData, exc: HomologyClass
) -> tuple[SymplecticData, list[list[int]]] | None:
    basis = omega.basis
    rank = basis.rank
    small = None

    index = _fiber_minus_index(basis, exc.coeffs)
    if index is not None:
        cap = omega.capacities[index - 2]
        others = [i for i in range(2, rank) if i != index]
        caps = tuple(omega.capacities[i - 2] for i in others)
        if basis.kind == PRODUCT_RULED:
            # New section B - Ei has square -1: the twisted shape.
            mu = omega.mu - cap
            if mu <= 0:
                raise UnsupportedBlowdownError(
                    f"unsupported blow-down class: {exc} (section area would vanish)"
                )
            small = Basis(TWISTED_RULED, basis.genus, basis.blowups - 1)
            data = SymplecticData(small, caps, mu=mu, fiber=omega.fiber)
            section = [1] + [0] * (rank - 1)
            section[index] = -1
        else:
            # New section B + F - Ei has square 0: the product shape.
            mu = omega.mu + omega.fiber - cap
            small = Basis(PRODUCT_RULED, basis.genus, basis.blowups - 1)
            data = SymplecticData(small, caps, mu=mu, fiber=omega.fiber)
            section = [1, 1] + [0] * (rank - 2)
            section[index] = -1
        fiber_row = [0, 1] + [0] * (rank - 2)
        frame = [section, fiber_row] + [
            [1 if j == i else 0 for j in range(rank)] for i in others
        ]
        return _finish_blow_down(omega, exc, data, frame)

    if basis.kind == PRODUCT_RULED and basis.genus == 0:
        index = _section_minus_index(basis, exc.coeffs)
        if index is not None:
            # The fibration swaps: F - Ei becomes the twisted section and the
            # old section B becomes the fiber.
            cap = omega.capacities[index - 2]
            others = [i for i in range(2, rank) if i != index]
            caps = tuple(omega.capacities[i - 2] for i in others)
            mu = omega.fiber - cap
            if mu <= 0:
                raise UnsupportedBlowdownError(
                    f"unsupported blow-down class: {exc} (section area would vanish)"
                )
            small = Basis(TWISTED_RULED, 0, basis.blowups - 1)
            data = SymplecticData(small, caps, mu=mu, fiber=omega.mu)
            section = [0, 1] + [0] * (rank - 2)
            section[index] = -1
            fiber_row = [1, 0] + [0] * (rank - 2)
            frame = [section, fiber_row] + [
                [1 if j == i else 0 for j in range(rank)] for i in others
            ]
            return _finish_blow_down(omega, exc, data, frame)
    return None


def _finish_blow_down(
    omega: SymplecticData,
    exc: HomologyClass,
    data: SymplecticData,
    frame: list[list[int]],
) -> tuple[SymplecticData, list[list[int]]]:
    """Shared exactness checks for every blow-down path."""
    value = area(exc, omega)
    assert data.basis.rank == omega.basis.rank - 1
    assert data.volume_quantity() == omega.volume_quantity() + value * value
    assert data.chern_pairing() == omega.chern_pairing() + value
    # The frame must be orthogonal to the class and transport areas exactly.
    gram = omega.basis.gram()
    weight = omega.area_vector()
    new_weight = data.area_vector()
    for row_index, row in enumerate(frame):
        assert sum(
            row[i] * gram[i][j] * exc.coeffs[j]
            for i in range(len(row))
            for j in range(len(row))
            if gram[i][j] != 0
        ) == 0
        assert sum(w * c for w, c in zip(weight, row)) == new_weight[row_index]
    new_gram = data.basis.gram()
    for i, row_i in enumerate(frame):
        for j, row_j in enumerate(frame):
            assert _quadratic_pair(gram, row_i, row_j) == new_gram[i][j]
    return data, frame


def _quadratic_pair(gram: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(
        x[i] * gram[i][j] * y[j]
        for i in range(len(x))
        for j in range(len(y))
        if gram[i][j] != 0
    )


def _general_blow_down(
    omega: SymplecticData, exc: HomologyClass
) -> tuple[SymplecticData, list[list[int]]]:
    """Blow down by rebuilding a standard basis of the orthogonal complement.

    The complement of a square -1 class in a unimodular Lorentzian lattice
    is unimodular of signature (1, rank-2).  We compute an integral basis
    of it, carry the Chern and area data over, and then search for a
    standard frame: a rational-shape frame when the complement is odd, the
    two null fiber classes when it is the rank-2 even lattice.
    """
    basis = omega.basis
    gram_int = basis.gram()
    pairing_row = [
        sum(gram_int[i][j] * exc.coeffs[j] for j in range(basis.rank))
        for i in range(basis.rank)
    ]
    kernel = integer_kernel([pairing_row])
    rank = len(kernel)
    assert rank == basis.rank - 1
    gram_c = [[_quadratic_pair(gram_int, u, v) for v in kernel] for u in kernel]
    chern_c = [
        sum(t * c for t, c in zip(basis.chern_vector(), row)) for row in kernel
    ]
    weight = omega.area_vector()
    weight_c = [sum(w * c for w, c in zip(weight, row)) for row in kernel]
    value = area(exc, omega)
    quantity = omega.volume_quantity() + value * value
    pairing = omega.chern_pairing() + value

    def to_old(coeffs: Sequence[int]) -> list[int]:
        return [
            sum(c * kernel[i][j] for i, c in enumerate(coeffs))
            for j in range(basis.rank)
        ]

    if rank == 1:
        if gram_c[0][0] != 1 or abs(chern_c[0]) != 3:
            raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
        direction = 1 if chern_c[0] == 3 else -1
        lam = direction * weight_c[0]
        if lam <= 0:
            raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
        data = SymplecticData(Basis(RATIONAL, 0, 0), (), lam=lam)
        frame = [[direction * c for c in kernel[0]]]
        return _finish_blow_down(omega, exc, data, frame)

    even = all(gram_c[i][i] % 2 == 0 for i in range(rank))
    if even:
        if rank != 2:
            raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
        return _even_rank_two_blow_down(omega, exc, gram_c, chern_c, weight_c, quantity, pairing, to_old)
    return _rational_frame_blow_down(omega, exc, gram_c, chern_c, weight_c, quantity, pairing, to_old)


def _even_rank_two_blow_down(omega, exc, gram_c, chern_c, weight_c, quantity, pairing, to_old):
    """Complement is the even rank-2 lattice: a product ruled shape."""
    if pairing <= 0:
        raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
    gram_q = [[Q(x) for x in row] for row in gram_c]
    cutoff = pairing * pairing / (2 * quantity)
    null_classes: list[tuple[Q, tuple[int, ...]]] = []
    for coeffs in _certified_ball(
        _companion_form(gram_q, weight_c, quantity), cutoff, DEFAULT_SEARCH_CEILING
    ):
        if _quadratic(gram_c, coeffs) != 0:
            continue
        if tuple(coeffs) != primitive_vector(coeffs):
            continue
        if sum(t * c for t, c in zip(chern_c, coeffs)) != 2:
            continue
        spread = sum(w * c for w, c in zip(weight_c, coeffs))
        if spread <= 0:
            continue
        null_classes.append((spread, tuple(coeffs)))
    if len(null_classes) != 2:
        raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
    null_classes.sort(key=lambda item: (-item[0], item[1]))
    (mu, section), (fib, fiber_class) = null_classes
    assert _quadratic_pair(gram_c, section, fiber_class) == 1
    assert 2 * mu * fib == quantity
    data = SymplecticData(Basis(PRODUCT_RULED, 0, 0), (), mu=mu, fiber=fib)
    frame = [to_old(section), to_old(fiber_class)]
    return _finish_blow_down(omega, exc, data, frame)


def _rational_frame_blow_down(omega, exc, gram_c, chern_c, weight_c, quantity, pairing, to_old):
    """Complement is odd: search for a rational-shape frame.

    A frame is a line class (square 1, Chern number 3) plus pairwise
    orthogonal exceptional classes summing, together with the line class,
    to the dual of the Chern vector.  The line area is bounded by the
    Cauchy-Schwarz relation between the capacity sum and capacity square
    sum, which keeps the ball searches finite.
    """
    rank = len(gram_c)
    blowups = rank - 1
    if blowups > 8:
        raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
    disc = 36 * pairing * pairing - 4 * (9 - blowups) * (
        pairing * pairing + blowups * quantity
    )
    if disc < 0:
        raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")
    lam_max = Q(6 * pairing + floor_sqrt(disc) + 1, 2 * (9 - blowups))
    gram_q = [[Q(x) for x in row] for row in gram_c]
    companion = _companion_form(gram_q, weight_c, quantity)
    inverse = mat_inverse(gram_q)
    dual_chern = mat_vec(inverse, [Q(t) for t in chern_c])
    assert all(v.denominator == 1 for v in dual_chern)
    dual_chern_int = [int(v) for v in dual_chern]

    line_candidates: list[tuple[Q, tuple[int, ...]]] = []
    cutoff = 2 * lam_max * lam_max / quantity - 1
    for coeffs in _certified_ball(companion, cutoff, DEFAULT_SEARCH_CEILING):
        if _quadratic(gram_c, coeffs) != 1:
            continue
        if sum(t * c for t, c in zip(chern_c, coeffs)) != 3:
            continue
        lam = sum(w * c for w, c in zip(weight_c, coeffs))
        if not (0 < lam <= lam_max):
            continue
        line_candidates.append((lam, tuple(coeffs)))
    line_candidates.sort(key=lambda item: (item[0], item[1]))

    for lam, line in line_candidates:
        cap_square_total = lam * lam - quantity
        cap_total = 3 * lam - pairing
        if blowups == 0:
            if cap_square_total == 0 and cap_total == 0:
                data = SymplecticData(Basis(RATIONAL, 0, 0), (), lam=lam)
                return _finish_blow_down(omega, exc, data, [to_old(line)])
            continue
        if cap_square_total <= 0 or cap_total <= 0:
            continue
        cutoff_e = 2 * cap_square_total / quantity + 1
        exceptional: list[tuple[Q, tuple[int, ...]]] = []
        for coeffs in _certified_ball(companion, cutoff_e, DEFAULT_SEARCH_CEILING):
            if _quadratic(gram_c, coeffs) != -1:
                continue
            if sum(t * c for t, c in zip(chern_c, coeffs)) != 1:
                continue
            cap = sum(w * c for w, c in zip(weight_c, coeffs))
            if cap <= 0 or cap * cap > cap_square_total:
                continue
            if _quadratic_pair(gram_c, line, coeffs) != 0:
                continue
            exceptional.append((cap, tuple(coeffs)))
        exceptional.sort(key=lambda item: (-item[0], item[1]))
        target = [3 * l - d for l, d in zip(line, dual_chern_int)]
        chosen = _orthogonal_selection(gram_c, exceptional, target, blowups)
        if chosen is None:
            continue
        caps = tuple(cap for cap, _ in chosen)
        assert sum(caps) == cap_total
        assert sum(c * c for c in caps) == cap_square_total
        data = SymplecticData(Basis(RATIONAL, 0, blowups), caps, lam=lam)
        frame = [to_old(line)] + [to_old(coeffs) for _, coeffs in chosen]
        return _finish_blow_down(omega, exc, data, frame)
    raise UnsupportedBlowdownError(f"unsupported blow-down class: {exc}")


def _orthogonal_selection(
    gram_c: Sequence[Sequence[int]],
    candidates: Sequence[tuple[Q, tuple[int, ...]]],
    target: Sequence[int],
    count: int,
) -> list[tuple[Q, tuple[int, ...]]] | None:
    """First (in candidate order) pairwise-orthogonal subset with exact sum."""
    chosen: list[tuple[Q, tuple[int, ...]]] = []

    def remaining_sum() -> list[int]:
        total = [0] * len(target)
        for _, coeffs in chosen:
            for i, c in enumerate(coeffs):
                total[i] += c
        return [t - s for t, s in zip(target, total)]

    def search(start: int) -> bool:
        if len(chosen) == count:
            return all(v == 0 for v in remaining_sum())
        for index in range(start, len(candidates)):
            cap, coeffs = candidates[index]
            if any(
                _quadratic_pair(gram_c, coeffs, other) != 0 for _, other in chosen
            ):
                continue
            chosen.append(candidates[index])
            if search(index + 1):
                return True
            chosen.pop()
        return False

    return list(chosen) if search(0) else None


# ---------------------------------------------------------------------------
# Minimal blow-down chains


@dataclass(frozen=True)
class ChainStep:
    stage: int
    chosen: HomologyClass
    area: Q
    original_coeffs: tuple[int, ...]


@dataclass(frozen=True)
class BlowdownChain:
    steps: tuple[ChainStep, ...]
    terminal: SymplecticData
    start: SymplecticData

    def __post_init__(self) -> None:
        gram = self.start.basis.gram()
        for i, step in enumerate(self.steps):
            assert _quadratic_pair(gram, step.original_coeffs, step.original_coeffs) == -1
            for later in self.steps[i + 1 :]:
                assert (
                    _quadratic_pair(gram, step.original_coeffs, later.original_coeffs)
                    == 0
                )
            if i + 1 < len(self.steps):
                assert step.area <= self.steps[i + 1].area
        assert self.terminal.basis.blowups == 0


def minimal_blowdown_chains(omega: SymplecticData) -> tuple[BlowdownChain, ...]:
    """All maximal chains of minimal-area blow-downs, ties branching."""
    if omega.basis.blowups < 1:
        raise PreconditionError("recipe has no blow-ups")
    chains: list[BlowdownChain] = []
    identity = [
        [1 if j == i else 0 for j in range(omega.basis.rank)]
        for i in range(omega.basis.rank)
    ]

    def walk(data: SymplecticData, transport: list[list[int]], steps: list[ChainStep]) -> None:
        if data.basis.blowups == 0:
            chains.append(BlowdownChain(tuple(steps), data, omega))
            return
        minimal = minimal_exceptional_classes(data)
        for choice in minimal.classes:
            original = tuple(
                sum(c * transport[i][j] for i, c in enumerate(choice.coeffs))
                for j in range(omega.basis.rank)
            )
            smaller, frame = _blow_down_with_frame(data, choice)
            step = ChainStep(len(steps) + 1, choice, area(choice, data), original)
            walk(smaller, mat_mul_int(frame, transport), steps + [step])

    walk(omega, identity, [])
    chains.sort(key=lambda chain: tuple(s.original_coeffs for s in chain.steps))
    return tuple(chains)


def canonical_blowdown_chain(omega: SymplecticData) -> BlowdownChain:
    """One deterministic chain: the lexicographically least choice per stage."""
    if omega.basis.blowups < 1:
        raise PreconditionError("recipe has no blow-ups")
    identity = [
        [1 if j == i else 0 for j in range(omega.basis.rank)]
        for i in range(omega.basis.rank)
    ]
    steps: list[ChainStep] = []
    data, transport = omega, identity
    while data.basis.blowups > 0:
        minimal = minimal_exceptional_classes(data)
        choice = min(minimal.classes, key=lambda cls: cls.coeffs)
        original = tuple(
            sum(c * transport[i][j] for i, c in enumerate(choice.coeffs))
            for j in range(omega.basis.rank)
        )
        steps.append(ChainStep(len(steps) + 1, choice, area(choice, data), original))
        data, frame = _blow_down_with_frame(data, choice)
        transport = mat_mul_int(frame, transport)
    return BlowdownChain(tuple(steps), data, omega)


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


# ---------------------------------------------------------------------------
# Capacity threshold


class CapacityThreshold(NamedTuple):
    value: Q
    binding: tuple[HomologyClass, ...]


def min_capacity_threshold(omega: SymplecticData) -> CapacityThreshold:
    """Largest bound so that any smaller last capacity leaves Ek uniquely minimal.

    Competitors are classes A - s Ek with A free of Ek and s >= 0 that keep
    square >= -1, Chern number >= 1, positive area on the fixed part, and the
    base positivity constraint.  Such a class stays above the last
    exceptional class exactly while the last capacity is below
    area(A)/(s+1); the threshold is the minimum of those ratios and the
    binding competitors are reported alongside it.
    """
    basis = omega.basis
    if basis.blowups < 1:
        raise PreconditionError("no exceptional divisor")
    small = Basis(basis.kind, basis.genus, basis.blowups - 1)
    fixed = SymplecticData(
        small,
        omega.capacities[:-1],
        lam=omega.lam,
        mu=omega.mu,
        fiber=None if basis.kind == RATIONAL else omega.fiber,
    )
    gram_int = small.gram()
    gram = [[Q(x) for x in row] for row in gram_int]
    weight = fixed.area_vector()
    quantity = fixed.volume_quantity()
    chern_vec = small.chern_vector()

    seed = _threshold_seed(omega, fixed)
    if 2 * seed * seed >= quantity:
        raise EnumerationError("bound not certified")

    companion = _companion_form(gram, weight, quantity)
    competitors: list[tuple[Q, tuple[int, ...], int]] = []
    s = 0
    while True:
        cutoff = 2 * seed * seed * (s + 1) ** 2 / quantity - (s * s - 1)
        if cutoff < 0:
            break
        for coeffs in _certified_ball(companion, cutoff, DEFAULT_SEARCH_CEILING):
            square = _quadratic(gram_int, coeffs)
            if square - s * s < -1:
                continue
            if sum(t * c for t, c in zip(chern_vec, coeffs)) - s < 1:
                continue
            fixed_area = sum(w * c for w, c in zip(weight, coeffs))
            if fixed_area <= 0:
                continue
            full = tuple(coeffs[: small.base_rank])
            full += tuple(coeffs[small.base_rank :]) + (-s,)
            if not _passes_positivity(basis, full):
                continue
            competitors.append((fixed_area / (s + 1), full, s))
        s += 1
    assert competitors, "a section- or fiber-based competitor always exists"
    threshold = min(value for value, _, _ in competitors)
    binding = sorted({full for value, full, _ in competitors if value == threshold})
    classes = tuple(HomologyClass(basis, full) for full in binding)
    return CapacityThreshold(threshold, classes)


def _threshold_seed(omega: SymplecticData, fixed: SymplecticData) -> Q:
    """Cheap upper bound for the threshold from structural competitors."""
    values: list[Q] = []
    if fixed.basis.blowups >= 1:
        values.append(fixed.capacities[-1])
    if omega.basis.kind == RATIONAL:
        values.append(omega.lam / 2)
    else:
        values.append(omega.fiber / 2)
        if omega.basis.genus == 0:
            values.append((omega.mu + (omega.fiber if omega.basis.kind == TWISTED_RULED else 0)) / 2)
    return min(values)


# ---------------------------------------------------------------------------
# Serialization


def basis_to_json(basis: Basis) -> dict:
    payload: dict = {"kind": basis.kind, "k": basis.blowups}
    if basis.kind != RATIONAL:
        payload["g"] = basis.genus
    return payload


def basis_from_json(payload: dict) -> Basis:
    if not isinstance(payload, dict) or "kind" not in payload:
        raise FormatError("basis object needs a 'kind' field")
    kind = payload["kind"]
    blowups = payload.get("k", 0)
    genus = payload.get("g", 0)
    if not isinstance(blowups, int) or not isinstance(genus, int):
        raise FormatError("basis counts must be integers")
    return Basis(kind, genus, blowups)


def class_to_json(cls: HomologyClass) -> dict:
    return {
        "basis": basis_to_json(cls.basis),
        "coeffs": [str(c) for c in cls.coeffs],
    }


def class_from_json(payload: dict) -> HomologyClass:
    if not isinstance(payload, dict) or "coeffs" not in payload or "basis" not in payload:
        raise FormatError("class object needs 'basis' and 'coeffs' fields")
    basis = basis_from_json(payload["basis"])
    coeffs = []
    for text in payload["coeffs"]:
        value = parse_rational(text)
        if value.denominator != 1:
            raise FormatError(f"class coefficients must be integers: {text!r}")
        coeffs.append(int(value))
    return HomologyClass(basis, tuple(coeffs))


def symplectic_to_json(data: SymplecticData) -> dict:
    caps = [format_rational(c) for c in data.capacities]
    if data.basis.kind == RATIONAL:
        return {"lambda": format_rational(data.lam), "capacities": caps}
    return {
        "kind": data.basis.kind,
        "g": data.basis.genus,
        "mu": format_rational(data.mu),
        "fiber": format_rational(data.fiber),
        "capacities": caps,
    }


def symplectic_from_json(payload: dict) -> SymplecticData:
    if not isinstance(payload, dict):
        raise FormatError("symplectic data must be an object")
    caps = tuple(parse_rational(c) for c in payload.get("capacities", []))
    if "lambda" in payload:
        basis = Basis(RATIONAL, 0, len(caps))
        return SymplecticData(basis, caps, lam=parse_rational(payload["lambda"]))
    if "mu" not in payload or "kind" not in payload:
        raise FormatError("symplectic data needs 'lambda' or 'kind'+'mu'")
    kind = payload["kind"]
    genus = payload.get("g", 0)
    if not isinstance(genus, int):
        raise FormatError("genus must be an integer")
    basis = Basis(kind, genus, len(caps))
    fiber = parse_rational(payload.get("fiber", "1"))
    return SymplecticData(basis, caps, mu=parse_rational(payload["mu"]), fiber=fiber)
