"""Connected sums, blow-ups, and the parametric families built from them.

All operations are pure: they take validated manifolds and return new
immutable ones.  A connected sum normalizes its pieces into a canonical
sorted order before assembling anything, so the result is literally identical
(field by field, including lattice basis labels) under permutation and
regrouping of the arguments.

Characteristic bookkeeping under connected sum: b1, b+ and b- add; the
signature adds; chi = sum(chi_i) - 2(n-1); spin and simple connectivity hold
iff they hold for every piece.  Lattices add orthogonally, canonical first
Chern data adds blockwise, the half-triple-product matrices add as blocks,
and the asserted SW parity of the canonical structure is Odd exactly when it
is Odd for every piece.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from fourfold.catalog import catalog_get
from fourfold.errors import SurgeryError
from fourfold.model import (
    CharData,
    Flag,
    GramLattice,
    Manifold,
    Parity,
    Provenance,
    SpinCStructure,
    direct_sum,
)

# Blocks for which connected sums are known to carry anti-self-dual metrics
# of positive scalar curvature (LeBrun, Kim).
_ASD_PSC_ATOMS = {"CP2bar", "S1xS3"}


def _atom_sort_key(m: Manifold) -> tuple:
    return (m.name, m.char.b1, m.char.b_plus, m.char.b_minus)


def _merge_record(atoms: Sequence[Manifold]) -> tuple[tuple[str, int], ...]:
    counts: dict[str, int] = {}
    for a in atoms:
        counts[a.name] = counts.get(a.name, 0) + 1
    return tuple(sorted(counts.items()))


def _record_name(record: Sequence[tuple[str, int]]) -> str:
    return " # ".join(name if mult == 1 else f"{mult}*{name}" for name, mult in record)


def _sum_spinc_from_atoms(atoms: Sequence[Manifold], signs: Sequence[int],
                          with_vector: bool) -> SpinCStructure:
    c1: Optional[tuple[int, ...]] = None
    if with_vector:
        coords: list[int] = []
        for a, s in zip(atoms, signs, strict=True):
            g = a.canonical_spinc
            coords.extend(s * x for x in g.c1)
        c1 = tuple(coords)
    c1_squared = sum(a.canonical_spinc.c1_squared for a in atoms)
    b1_total = sum(a.char.b1 for a in atoms)
    s_matrix = [[0] * b1_total for _ in range(b1_total)]
    offset = 0
    for a, s in zip(atoms, signs, strict=True):
        block = a.canonical_spinc.s_matrix
        r = a.char.b1
        for i in range(r):
            for j in range(r):
                s_matrix[offset + i][offset + j] = s * block[i][j]
        offset += r
    parities = {a.canonical_spinc.sw_parity for a in atoms}
    parity = Parity.ODD if parities == {Parity.ODD} else Parity.UNKNOWN
    return SpinCStructure(
        c1=c1, c1_squared=c1_squared,
        s_matrix=tuple(tuple(row) for row in s_matrix),
        sw_parity=parity, parity_provenance=Provenance.DERIVED,
    )


def connected_sum(parts: Sequence[Manifold]) -> Manifold:
    """Connected sum of the given manifolds (identity on a single part)."""
    if not parts:
        raise SurgeryError("connected sum of an empty list")
    if len(parts) == 1 and not parts[0].summands:
        return parts[0]
    atoms = sorted((piece for p in parts for piece in p.pieces()), key=_atom_sort_key)
    if len(atoms) == 1:
        return atoms[0]

    char = CharData(
        b1=sum(a.char.b1 for a in atoms),
        b_plus=sum(a.char.b_plus for a in atoms),
        b_minus=sum(a.char.b_minus for a in atoms),
        is_spin=all(a.char.is_spin for a in atoms),
        is_simply_connected=all(a.char.is_simply_connected for a in atoms),
    )

    lattice = None
    if all(a.lattice is not None for a in atoms):
        lattice = direct_sum([a.lattice for a in atoms],
                             [f"s{i}." for i in range(len(atoms))])

    spinc: tuple[SpinCStructure, ...] = ()
    if all(a.spinc_structures for a in atoms):
        with_vector = lattice is not None and all(
            a.canonical_spinc.c1 is not None for a in atoms)
        spinc = (_sum_spinc_from_atoms(atoms, [1] * len(atoms), with_vector),)

    flags: set[Flag] = set()
    if all(Flag.HAS_PSC_METRIC in a.flags for a in atoms):
        # Gromov-Lawson: positive scalar curvature survives connected sums.
        flags.add(Flag.HAS_PSC_METRIC)
        flags.add(Flag.HAS_NONNEG_SCALAR_METRIC)
    if all(a.name in _ASD_PSC_ATOMS and Flag.HAS_ASD_PSC_METRIC in a.flags
           for a in atoms):
        flags.add(Flag.HAS_ASD_PSC_METRIC)
    if spinc and all(Flag.C1_MOD4_ZERO in a.flags for a in atoms):
        flags.add(Flag.C1_MOD4_ZERO)

    sv_factors = None
    if all(a.sv_factors is not None for a in atoms):
        merged: dict[tuple[int, int], int] = {}
        for a in atoms:
            for (k, g, h) in a.sv_factors:
                merged[(g, h)] = merged.get((g, h), 0) + k
        sv_factors = tuple(sorted((k, g, h) for (g, h), k in merged.items() if k > 0))

    record = _merge_record(atoms)
    return Manifold(
        name=_record_name(record), char=char, lattice=lattice,
        spinc_structures=spinc, flags=frozenset(flags),
        sv_factors=sv_factors, summand_record=record, summands=tuple(atoms),
    )


def blow_up(m: Manifold, k: int) -> Manifold:
    """Connected sum with k copies of CP2bar.

    The lattice gains k mutually orthogonal classes of square -1.
    """
    if k < 0:
        raise SurgeryError(f"blow-up count must be >= 0, got {k}")
    if k == 0:
        return m
    return connected_sum([m] + [catalog_get("CP2bar") for _ in range(k)])


def gompf(alpha: int, beta: int) -> Manifold:
    """Gompf's simply connected symplectic spin manifold with
    (chi, tau) = (24a + 4b, -16a)."""
    return catalog_get(f"Gompf({alpha},{beta})")


def log_transform_k3(ell: int) -> Manifold:
    """Homotopy K3 from a logarithmic transformation of order 2l+1 on the
    Kummer surface; l = 0 is the Kummer surface itself."""
    return catalog_get(f"Y({ell})")


def sign_choices(n: int) -> Iterator[tuple[int, ...]]:
    """All 2^n sign vectors, all-plus first."""
    return itertools.product((1, -1), repeat=n)


def sum_spinc(m: Manifold, signs: Sequence[int]) -> SpinCStructure:
    """The spin-c structure #(+/-Gamma_i) on the connected sum ``m`` for a
    given sign vector over its pieces."""
    atoms = m.pieces()
    if len(signs) != len(atoms):
        raise SurgeryError(f"sign vector length {len(signs)} != {len(atoms)} pieces")
    if any(s not in (1, -1) for s in signs):
        raise SurgeryError("signs must be +/-1")
    if not all(a.spinc_structures for a in atoms):
        raise SurgeryError("every piece needs a spin-c structure")
    with_vector = m.lattice is not None and all(
        a.canonical_spinc.c1 is not None for a in atoms)
    return _sum_spinc_from_atoms(atoms, list(signs), with_vector)


def all_sign_spinc(m: Manifold) -> Iterator[tuple[tuple[int, ...], SpinCStructure]]:
    """Lazy iterator over all 2^n sign-choice structures on a sum.

    Generated lazily on purpose: materializing 2^n structures for large
    blow-ups would be exponential storage for no benefit.
    """
    n = len(m.pieces())
    for signs in sign_choices(n):
        yield signs, sum_spinc(m, signs)


def split_blowdown(m: Manifold) -> tuple[list[Manifold], Optional[Manifold]]:
    """Split a sum into its positive-b+ pieces and the b+ = 0 remainder N.

    Returns (parts, N) where N is the connected sum of the b+ = 0 pieces, or
    None when there are none (the sphere; 2chi + 3tau = 4).
    """
    parts = [p for p in m.pieces() if p.char.b_plus > 0]
    rest = [p for p in m.pieces() if p.char.b_plus == 0]
    return parts, (connected_sum(rest) if rest else None)


def blowdown_two_chi_plus_3tau(n_part: Optional[Manifold]) -> int:
    return 4 if n_part is None else n_part.two_chi_plus_3tau()
