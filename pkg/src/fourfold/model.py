"""Data model for closed oriented smooth 4-manifolds and their spin-c structures.

A :class:`Manifold` stores characteristic data (b1, b+, b-, spin-ness,
simple-connectivity), an optional integer Gram lattice for the part of H^2 we
track classes in, spin-c structures with explicit first Chern data, geometric
property flags, hyperbolic-product content for simplicial-volume intervals,
and a record of the connected-sum history that produced it.

Everything is an immutable value; all operations in the package are pure
functions, so instances can be shared freely across threads.

Conventions
-----------

* Euler characteristic and signature are always derived from (b1, b+, b-),
  never stored separately, so they cannot drift out of sync.
* When a manifold carries the ``AlmostComplex`` flag, its *first* spin-c
  structure is the one induced by the almost complex structure; its c1 is an
  almost canonical class and must satisfy c1^2 = 2*chi + 3*tau.
* SW parity is asserted data with provenance, never computed here: this is a
  certificate checker, not a gauge-theory solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from fourfold import exact


class Parity(enum.Enum):
    ODD = "Odd"
    EVEN = "Even"
    UNKNOWN = "Unknown"


class Provenance(enum.Enum):
    TAUBES_SYMPLECTIC = "TaubesSymplectic"
    USER_ASSERTED = "UserAsserted"
    DERIVED = "Derived"


class Flag(enum.Enum):
    ALMOST_COMPLEX = "AlmostComplex"
    SYMPLECTIC = "Symplectic"
    MINIMAL_KAEHLER = "MinimalKaehler"
    HAS_PSC_METRIC = "HasPSCMetric"
    HAS_NONNEG_SCALAR_METRIC = "HasNonnegScalarMetric"
    HAS_ASD_PSC_METRIC = "HasASDPSCMetric"
    C1_MOD4_ZERO = "C1Mod4Zero"


# Flag implications, checked by validate(): minimal Kaehler surfaces are
# symplectic, symplectic manifolds are almost complex.
_FLAG_IMPLICATIONS = (
    (Flag.MINIMAL_KAEHLER, Flag.SYMPLECTIC),
    (Flag.SYMPLECTIC, Flag.ALMOST_COMPLEX),
)


@dataclass(frozen=True)
class CharData:
    """Characteristic data of a closed oriented smooth 4-manifold."""

    b1: int
    b_plus: int
    b_minus: int
    is_spin: bool
    is_simply_connected: bool

    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b_plus + self.b_minus

    def signature(self) -> int:
        return self.b_plus - self.b_minus

    def two_chi_plus_3tau(self) -> int:
        return 2 * self.euler() + 3 * self.signature()

    def two_chi_minus_3tau(self) -> int:
        return 2 * self.euler() - 3 * self.signature()


@dataclass(frozen=True)
class GramLattice:
    """A symmetric integer bilinear form on a chosen sublattice of H^2.

    This need not be all of H^2(X;Z)/torsion; it is the sublattice spanned by
    the classes the toolkit actually works with (canonical classes, fiber
    classes, exceptional spheres).
    """

    basis_labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.basis_labels)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix shape does not match basis")

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def is_symmetric(self) -> bool:
        n = self.rank
        return all(self.gram[i][j] == self.gram[j][i] for i in range(n) for j in range(n))

    def inertia(self) -> tuple[int, int, int]:
        if self.rank == 0:
            return (0, 0, 0)
        return exact.inertia(self.gram)

    def norm(self, x: Sequence[int]) -> Fraction:
        return exact.quadratic_form(self.gram, x)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        return exact.pairing(self.gram, x, y)


def direct_sum(lattices: Sequence[GramLattice], prefixes: Sequence[str]) -> GramLattice:
    """Orthogonal direct sum, with basis labels prefixed per summand."""
    labels: list[str] = []
    blocks: list[tuple[tuple[int, ...], ...]] = []
    for lat, prefix in zip(lattices, prefixes, strict=True):
        labels.extend(f"{prefix}{name}" for name in lat.basis_labels)
        blocks.append(lat.gram)
    total = len(labels)
    gram = [[0] * total for _ in range(total)]
    offset = 0
    for block in blocks:
        r = len(block)
        for i in range(r):
            for j in range(r):
                gram[offset + i][offset + j] = block[i][j]
        offset += r
    return GramLattice(tuple(labels), tuple(tuple(row) for row in gram))


@dataclass(frozen=True)
class SpinCStructure:
    """A spin-c structure, recorded through its determinant-line first Chern data.

    ``c1`` is the coordinate vector of c1 in the owning manifold's lattice
    basis (None when no lattice is stored), ``c1_squared`` caches the
    self-intersection, and ``s_matrix`` is the antisymmetric integer matrix of
    half triple-product evaluations against a fixed basis of H^1.
    """

    c1: Optional[tuple[int, ...]]
    c1_squared: int
    s_matrix: tuple[tuple[int, ...], ...]
    sw_parity: Parity = Parity.UNKNOWN
    parity_provenance: Provenance = Provenance.DERIVED

    def conjugate(self) -> "SpinCStructure":
        """The complex-conjugate structure: c1 flips sign, parity is preserved."""
        c1 = None if self.c1 is None else tuple(-x for x in self.c1)
        s = tuple(tuple(-x for x in row) for row in self.s_matrix)
        return replace(self, c1=c1, s_matrix=s)

    def s_matrix_even(self) -> bool:
        return all(x % 2 == 0 for row in self.s_matrix for x in row)

    def c1_mod4_zero(self) -> Optional[bool]:
        """Whether c1 maps to zero in H^2(X; Z/4); None when no vector is stored."""
        if self.c1 is None:
            return None
        return all(x % 4 == 0 for x in self.c1)


def zero_s_matrix(b1: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(0 for _ in range(b1)) for _ in range(b1))


@dataclass(frozen=True)
class Manifold:
    name: str
    char: CharData
    lattice: Optional[GramLattice] = None
    spinc_structures: tuple[SpinCStructure, ...] = ()
    flags: frozenset[Flag] = frozenset()
    # Known hyperbolic-product content: ((k, g, h), ...) meaning k connected
    # summands of (genus-g surface) x (genus-h surface).  None means the
    # simplicial volume is unknown; an empty tuple means it is known zero.
    sv_factors: Optional[tuple[tuple[int, int, int], ...]] = None
    summand_record: tuple[tuple[str, int], ...] = ()
    # Flattened connected-sum pieces; empty for atoms (the manifold is its
    # own single summand).
    summands: tuple["Manifold", ...] = field(default=(), repr=False)

    def euler(self) -> int:
        return self.char.euler()

    def signature(self) -> int:
        return self.char.signature()

    def two_chi_plus_3tau(self) -> int:
        return self.char.two_chi_plus_3tau()

    def two_chi_minus_3tau(self) -> int:
        return self.char.two_chi_minus_3tau()

    def has_flag(self, flag: Flag) -> bool:
        return flag in self.flags

    @property
    def canonical_spinc(self) -> Optional[SpinCStructure]:
        return self.spinc_structures[0] if self.spinc_structures else None

    def pieces(self) -> tuple["Manifold", ...]:
        """The flattened connected-sum pieces (the manifold itself for atoms)."""
        return self.summands if self.summands else (self,)

    def sv_factor_total(self) -> Optional[int]:
        """Sum of k*(g-1)*(h-1) over the recorded product content; None if unknown."""
        if self.sv_factors is None:
            return None
        return sum(k * (g - 1) * (h - 1) for (k, g, h) in self.sv_factors)

    def __str__(self) -> str:
        return self.name


def validate(m: Manifold) -> list[str]:
    """Check every structural invariant; returns a list of violation descriptions.

    Total function: never raises, an empty list means the manifold is
    internally consistent.
    """
    problems: list[str] = []
    c = m.char
    if c.b1 < 0 or c.b_plus < 0 or c.b_minus < 0:
        problems.append("negative Betti data")
    if c.is_simply_connected and c.b1 != 0:
        problems.append("simply connected manifold must have b1 = 0")

    if m.lattice is not None:
        if not m.lattice.is_symmetric():
            problems.append("gram matrix is not symmetric")
        else:
            pos, neg, _ = m.lattice.inertia()
            if pos > c.b_plus:
                problems.append(
                    f"lattice has {pos} positive directions but b+ = {c.b_plus}")
            if neg > c.b_minus:
                problems.append(
                    f"lattice has {neg} negative directions but b- = {c.b_minus}")

    for idx, g in enumerate(m.spinc_structures):
        if m.lattice is not None and g.c1 is not None:
            if len(g.c1) != m.lattice.rank:
                problems.append(f"spin-c #{idx}: c1 length does not match lattice rank")
            else:
                q = m.lattice.norm(g.c1)
                if q != g.c1_squared:
                    problems.append(
                        f"spin-c #{idx}: cached c1_squared = {g.c1_squared} "
                        f"but the lattice gives {q}")
        s = g.s_matrix
        if len(s) != c.b1 or any(len(row) != c.b1 for row in s):
            problems.append(f"spin-c #{idx}: s_matrix is not b1 x b1")
        else:
            if any(s[i][j] != -s[j][i] for i in range(c.b1) for j in range(c.b1)):
                problems.append(f"spin-c #{idx}: s_matrix is not antisymmetric")

    if Flag.ALMOST_COMPLEX in m.flags and m.spinc_structures:
        g = m.spinc_structures[0]
        if g.c1_squared != c.two_chi_plus_3tau():
            problems.append(
                "almost-canonical-class identity fails: canonical c1^2 = "
                f"{g.c1_squared} but 2*chi + 3*tau = {c.two_chi_plus_3tau()}")

    for weaker, stronger in _FLAG_IMPLICATIONS:
        if weaker in m.flags and stronger not in m.flags:
            problems.append(f"flag {weaker.value} requires flag {stronger.value}")

    if Flag.HAS_PSC_METRIC in m.flags:
        # A positive-scalar-curvature metric rules out nonzero monopole
        # classes; an odd-SW structure with c1^2 > 0 certifies one.
        for g in m.spinc_structures:
            if g.sw_parity is Parity.ODD and g.c1_squared > 0:
                problems.append(
                    "HasPSCMetric contradicts a nonzero monopole class "
                    "(odd SW parity with c1^2 > 0)")
                break

    if Flag.C1_MOD4_ZERO in m.flags and m.spinc_structures:
        mod4 = m.spinc_structures[0].c1_mod4_zero()
        if mod4 is False:
            problems.append("C1Mod4Zero flag set but canonical c1 has a coordinate != 0 mod 4")

    if m.sv_factors is not None:
        for (k, g_, h_) in m.sv_factors:
            if k < 0 or g_ < 1 or h_ < 1:
                problems.append(f"invalid sv factor ({k},{g_},{h_})")

    return problems
