"""Monopole-class sets, exact maximization of the intersection form over
their convex hulls, and the curvature-derived Riemannian invariants.

beta^2 is the maximum of Q(x) = x^T G x over Hull(C), where C is the finite
symmetric set of monopole classes and G the Gram matrix of the sublattice
they span.  Two exact solvers are provided:

* box reduction, for sign-orbit sets over orthogonal generators: in
  generator coordinates the hull is the box [-1,1]^d and Q is separable, so
  the maximum is the sum of the positive diagonal entries;
* face enumeration: stationary points of Q on every face of the hull,
  solved as equality-constrained rational linear systems.  For sign orbits
  the faces are the 3^d faces of the coordinate box; for general sets of at
  most 16 points the faces are swept through support subsets of the points.

Singular stationarity systems are skipped deliberately: when the restricted
quadratic is degenerate along a face, the value of any interior stationary
point is also attained on a proper subface, which is enumerated separately.

Values are reported exactly; witnesses are the lexicographically least
maximizing hull point, so concurrent evaluation cannot change the answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from fourfold import exact
from fourfold.certify import Verdict, check_theorem_A
from fourfold.errors import CapacityError, PremiseError
from fourfold.model import Flag, Manifold, SpinCStructure
from fourfold.surgery import blowdown_two_chi_plus_3tau, split_blowdown
from fourfold.symbolic import SymbolicValue

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class Inconclusive:
    """First-class 'the theorem's hypotheses are not met' marker."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class MonopoleClassSet:
    """A finite, symmetric set of classes with the Gram matrix of their span."""

    classes: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    source: str = ""

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_symmetric(self) -> bool:
        pool = set(self.classes)
        return all(tuple(-x for x in v) in pool for v in self.classes)

    def is_sign_orbit(self) -> bool:
        """True when the classes are exactly all sign vectors {+/-1}^rank."""
        d = self.rank
        if len(self.classes) != 2 ** d:
            return False
        if not all(all(x in (1, -1) for x in v) for v in self.classes):
            return False
        return len(set(self.classes)) == 2 ** d

    def gram_is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0
                   for i in range(self.rank) for j in range(self.rank) if i != j)

    def negated(self) -> "MonopoleClassSet":
        return MonopoleClassSet(
            tuple(tuple(-x for x in v) for v in self.classes), self.gram, self.source)


def monopole_classes_for_sum(parts: Sequence[Manifold],
                             blowdown: Optional[Manifold] = None) -> MonopoleClassSet:
    """All classes sum(+/- c1(X_m)) + sum(+/- E_r) on (#X_m) # N.

    Requires the parts to pass the 2/3-part non-vanishing certificate and N
    (if given) to have b+ = 0; N's lattice is taken diagonal with k = b-(N)
    classes of square -1 (always arrangeable, by Donaldson's theorem).
    """
    cert = check_theorem_A(parts)
    if cert.verdict is not Verdict.NONVANISHING:
        failed = [p.text for p in cert.premises if not p.passed]
        raise PremiseError("non-vanishing premises fail: " + "; ".join(failed))
    k = 0
    if blowdown is not None:
        if blowdown.char.b_plus != 0:
            raise PremiseError(
                f"the blowdown piece must have b+ = 0, got {blowdown.char.b_plus}")
        k = blowdown.char.b_minus
    diag = [p.canonical_spinc.c1_squared for p in parts] + [-1] * k
    d = len(diag)
    gram = tuple(tuple(diag[i] if i == j else 0 for j in range(d)) for i in range(d))
    classes = tuple(itertools.product((1, -1), repeat=d))
    return MonopoleClassSet(
        classes=classes, gram=gram,
        source=f"sign orbit of {len(parts)} canonical classes and {k} "
               "exceptional classes (diagonalized by Donaldson's theorem)")


# ---------------------------------------------------------------------------
# beta^2 solvers

_GENERAL_POINT_CAP = 16
_BOX_FACE_RANK_CAP = 12

Witness = tuple[Fraction, ...]


def _lex_min(points: list[Witness]) -> Witness:
    return min(points)


def beta_squared_box(s: MonopoleClassSet) -> tuple[Fraction, Witness]:
    """Separable box maximization; requires a sign orbit with diagonal Gram.

    Coordinates with positive square sit at +/-1, the rest at 0; the value is
    the sum of the positive diagonal entries.  The reported witness is the
    lexicographically least maximizer: -1 on coordinates of square >= 0
    (those of square 0 are free among maximizers), 0 on negative ones.
    """
    if not s.is_sign_orbit() or not s.gram_is_diagonal():
        raise PremiseError("box reduction needs a sign orbit over orthogonal generators")
    value = Fraction(0)
    witness: list[Fraction] = []
    for i in range(s.rank):
        g = s.gram[i][i]
        if g > 0:
            value += g
        witness.append(Fraction(-1) if g >= 0 else Fraction(0))
    return value, tuple(witness)


def _box_face_candidates(gram: Sequence[Sequence[int]], d: int):
    for assignment in itertools.product((-1, 0, 1), repeat=d):
        fixed = [i for i in range(d) if assignment[i] != 0]
        free = [i for i in range(d) if assignment[i] == 0]
        if not free:
            point = [Fraction(assignment[i]) for i in range(d)]
            yield point
            continue
        a = [[Fraction(gram[i][j]) for j in free] for i in free]
        b = [-sum(Fraction(gram[i][j]) * assignment[j] for j in fixed) for i in free]
        u = exact.solve_unique(a, b)
        if u is None:
            continue
        if any(abs(x) > 1 for x in u):
            continue
        point = [Fraction(0)] * d
        for i in fixed:
            point[i] = Fraction(assignment[i])
        for i, x in zip(free, u, strict=True):
            point[i] = x
        yield point


def _beta_squared_box_faces(s: MonopoleClassSet) -> tuple[Fraction, Witness]:
    """Face enumeration over the coordinate box of a sign orbit.

    The hull of all sign vectors is the box [-1,1]^d; each of the 3^d faces
    fixes some coordinates at +/-1, and the stationary point of Q on its
    affine hull is a rational linear solve.  No separability is used, so a
    non-diagonal Gram is fine.
    """
    d = s.rank
    if d > _BOX_FACE_RANK_CAP:
        raise CapacityError(f"box face enumeration capped at rank {_BOX_FACE_RANK_CAP}")
    best: Optional[Fraction] = None
    maximizers: list[Witness] = []
    for point in _box_face_candidates(s.gram, d):
        value = exact.quadratic_form(s.gram, point)
        if best is None or value > best:
            best = value
            maximizers = [tuple(point)]
        elif value == best:
            maximizers.append(tuple(point))
    assert best is not None
    return best, _lex_min(maximizers)


def _beta_squared_support_sets(s: MonopoleClassSet) -> tuple[Fraction, Witness]:
    """Stationarity sweep over support subsets of a general small point set.

    Maximizing Q over Hull(v_1..v_m) equals maximizing l^T M l over the
    standard simplex, M the Gram matrix of the points.  Every maximizer has a
    support whose stationarity system (2(Ml)_i = mu on the support,
    sum l = 1) either is uniquely solvable or degenerates onto a smaller
    support, so sweeping all subsets with unique solutions plus all vertices
    is exhaustive.
    """
    m = len(s.classes)
    if m > _GENERAL_POINT_CAP:
        raise CapacityError(
            f"general hull maximization is capped at {_GENERAL_POINT_CAP} points; "
            "larger sets must be sign orbits")
    points = [tuple(Fraction(x) for x in v) for v in s.classes]
    gram_big = [[exact.pairing(s.gram, points[i], points[j]) for j in range(m)]
                for i in range(m)]
    best: Optional[Fraction] = None
    maximizers: list[Witness] = []

    def consider(value: Fraction, point: Witness) -> None:
        nonlocal best, maximizers
        if best is None or value > best:
            best = value
            maximizers = [point]
        elif value == best:
            maximizers.append(point)

    for i in range(m):
        consider(gram_big[i][i], points[i])
    for size in range(2, m + 1):
        for support in itertools.combinations(range(m), size):
            t = len(support)
            a: list[list[Fraction]] = []
            for i in support:
                row = [2 * gram_big[i][j] for j in support]
                row.append(Fraction(-1))
                a.append(row)
            a.append([Fraction(1)] * t + [Fraction(0)])
            b = [Fraction(0)] * t + [Fraction(1)]
            sol = exact.solve_unique(a, b)
            if sol is None:
                continue
            lam, mu = sol[:t], sol[t]
            if any(x < 0 for x in lam):
                continue
            point = tuple(
                sum(lam[idx] * points[i][coord] for idx, i in enumerate(support))
                for coord in range(s.rank))
            consider(mu / 2, point)
    assert best is not None
    return best, _lex_min(maximizers)


def beta_squared_faces(s: MonopoleClassSet) -> tuple[Fraction, Witness]:
    """Exact face-enumeration maximizer (value, lex-least witness)."""
    if s.is_sign_orbit():
        return _beta_squared_box_faces(s)
    return _beta_squared_support_sets(s)


def beta_squared_with_witness(s: MonopoleClassSet) -> tuple[Fraction, Witness]:
    if not s.classes:
        raise PremiseError("beta^2 of an empty class set is undefined here; "
                           "a certified-empty set has beta^2 = 0 by convention")
    if not s.is_symmetric():
        raise PremiseError("monopole class sets are symmetric: v in C iff -v in C")
    if s.is_sign_orbit() and s.gram_is_diagonal():
        return beta_squared_box(s)
    return beta_squared_faces(s)


def beta_squared(s: MonopoleClassSet) -> Fraction:
    """Exact maximum of the intersection form over Hull(classes); >= 0."""
    return beta_squared_with_witness(s)[0]


# ---------------------------------------------------------------------------
# Curvature bounds and invariants


@dataclass(frozen=True)
class CurvatureBounds:
    scalar_bound: SymbolicValue                     # integral of s^2
    mixed_bound: SymbolicValue                      # integral of (s - sqrt6 |W+|)^2
    ricci_bound: Union[SymbolicValue, Inconclusive]  # integral of |r|^2


def _theorem_a_split(m: Manifold) -> Union[tuple[list[Manifold], Optional[Manifold]], Inconclusive]:
    parts, n_part = split_blowdown(m)
    if len(parts) not in (2, 3):
        return Inconclusive(
            f"needs a decomposition into 2 or 3 positive-b+ pieces plus a "
            f"b+ = 0 remainder; found {len(parts)} pieces")
    cert = check_theorem_A(parts)
    if cert.verdict is not Verdict.NONVANISHING:
        failed = "; ".join(p.text for p in cert.premises if not p.passed)
        return Inconclusive(f"non-vanishing premises fail: {failed}")
    return parts, n_part


def curvature_bounds(m: Manifold, s: MonopoleClassSet) -> CurvatureBounds:
    """(32 pi^2 beta^2, 72 pi^2 beta^2, 8 pi^2 [4n - (2chi+3tau)(N) + sum c1^2]).

    The first two need only the class set; the Ricci bound additionally needs
    the (# parts) # N decomposition with certified non-vanishing.
    """
    b2 = beta_squared(s)
    scalar = SymbolicValue(32 * b2, pi_power=2)
    mixed = SymbolicValue(72 * b2, pi_power=2)
    split = _theorem_a_split(m)
    if isinstance(split, Inconclusive):
        ricci: Union[SymbolicValue, Inconclusive] = split
    else:
        parts, n_part = split
        n = len(parts)
        total = sum(p.canonical_spinc.c1_squared for p in parts)
        t = blowdown_two_chi_plus_3tau(n_part)
        ricci = SymbolicValue(8 * (4 * n - t + total), pi_power=2)
    return CurvatureBounds(scalar_bound=scalar, mixed_bound=mixed, ricci_bound=ricci)


@dataclass(frozen=True)
class ScalarInvariants:
    Is: SymbolicValue
    Y: SymbolicValue
    K: SymbolicValue


def invariant_Is_Y_K(m: Manifold) -> Union[ScalarInvariants, Inconclusive]:
    """I_s = 32 pi^2 sum c1^2 and Y = K = -4 pi sqrt(2 sum c1^2) for sums of
    2 or 3 minimal Kaehler pieces with a nonneg-scalar b+ = 0 remainder."""
    split = _theorem_a_split(m)
    if isinstance(split, Inconclusive):
        return split
    parts, n_part = split
    for p in parts:
        if not p.has_flag(Flag.MINIMAL_KAEHLER):
            return Inconclusive(f"part {p.name} is not flagged MinimalKaehler")
    if n_part is not None and not n_part.has_flag(Flag.HAS_NONNEG_SCALAR_METRIC):
        return Inconclusive(
            f"the b+ = 0 piece {n_part.name} is not flagged HasNonnegScalarMetric")
    total = sum(p.canonical_spinc.c1_squared for p in parts)
    i_s = SymbolicValue(32 * total, pi_power=2)
    y = SymbolicValue(-4, pi_power=1, radicand=2 * total)
    return ScalarInvariants(Is=i_s, Y=y, K=y)


def lambda_bar_k(m: Manifold, k: RationalLike) -> Union[SymbolicValue, Inconclusive]:
    """The eigenvalue invariant sup_g (least eigenvalue of 4*Laplace + k*s) *
    vol^(1/2): equals k * Y(m) when Y(m) <= 0 and k >= 2/3, and +infinity on
    manifolds with positive scalar curvature for any k > 0."""
    k = Fraction(k)
    if m.has_flag(Flag.HAS_PSC_METRIC):
        if k > 0:
            return SymbolicValue.plus_infinity()
        return Inconclusive("the positive-scalar-curvature branch needs k > 0")
    inv = invariant_Is_Y_K(m)
    if isinstance(inv, Inconclusive):
        return inv
    if k < Fraction(2, 3):
        return Inconclusive(
            "k < 2/3: the eigenvalue invariant is only identified with k*Y "
            "for k >= (n-2)/(n-1) = 2/3 in dimension 4")
    return inv.Y.scale(k)


def invariant_Ir(m: Manifold) -> Union[SymbolicValue, Inconclusive]:
    """The Ricci-curvature invariant 8 pi^2 [4n - (2chi+3tau)(N) + sum c1^2]
    for sums of minimal Kaehler pieces with an anti-self-dual positive-scalar
    b+ = 0 remainder.

    For N = k CP2bar # l (S1 x S3) the bracket specializes to
    k + 4(n + l - 1) + sum c1^2.
    """
    split = _theorem_a_split(m)
    if isinstance(split, Inconclusive):
        return split
    parts, n_part = split
    for p in parts:
        if not p.has_flag(Flag.MINIMAL_KAEHLER):
            return Inconclusive(f"part {p.name} is not flagged MinimalKaehler")
    if n_part is not None and not n_part.has_flag(Flag.HAS_ASD_PSC_METRIC):
        return Inconclusive(
            f"the b+ = 0 piece {n_part.name} is not flagged HasASDPSCMetric")
    total = sum(p.canonical_spinc.c1_squared for p in parts)
    if total <= 0:
        return Inconclusive(
            "needs minimal Kaehler parts with positive total c1^2")
    n = len(parts)
    t = blowdown_two_chi_plus_3tau(n_part)
    return SymbolicValue(8 * (4 * n - t + total), pi_power=2)


# ---------------------------------------------------------------------------
# Adjunction


def genus_lower_bound(self_int: int, c1_pairing: int) -> int:
    """Least genus allowed by 2g - 2 >= [S]^2 - <c1, [S]> for surfaces of
    positive genus and nonnegative self-intersection."""
    if self_int < 0:
        raise PremiseError(f"adjunction bound needs [S]^2 >= 0, got {self_int}")
    bound = self_int - c1_pairing
    # 2g - 2 >= bound and g >= 1
    g_min = (bound + 2 + 1) // 2 if (bound + 2) % 2 else (bound + 2) // 2
    return max(1, g_min)


def adjunction_genus_bound(m: Manifold, g: SpinCStructure,
                           sigma_class: Sequence[int],
                           self_int: Optional[int] = None) -> int:
    """Minimal admissible genus of an embedded surface in the class
    ``sigma_class`` on a certified non-vanishing connected sum."""
    parts, _ = split_blowdown(m)
    cert = check_theorem_A(parts)
    if cert.verdict is not Verdict.NONVANISHING:
        raise PremiseError("adjunction applies to certified non-vanishing sums only")
    if m.lattice is None or g.c1 is None:
        raise PremiseError("adjunction needs an explicit lattice and c1 vector")
    computed = m.lattice.norm(sigma_class)
    if computed.denominator != 1:
        raise PremiseError("non-integral self-intersection")
    if self_int is not None and self_int != computed:
        raise PremiseError(
            f"declared self-intersection {self_int} but the lattice gives {computed}")
    pair = m.lattice.pairing(g.c1, sigma_class)
    if pair.denominator != 1:
        raise PremiseError("non-integral pairing")
    return genus_lower_bound(int(computed), int(pair))
