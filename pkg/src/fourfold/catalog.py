"""Built-in building blocks and JSON (de)serialization of manifolds.

The catalog covers the standard pieces used throughout the connected-sum
constructions: projective planes, S^1 x S^3, the 4-torus, K3, the primary
Kodaira surface, products of surfaces Sigma_g x Sigma_h, log-transformed
homotopy K3 surfaces Y(l), and Gompf's simply connected symplectic spin
manifolds Gompf(a,b).

Stored lattices are the sublattices of H^2 actually needed: a hyperbolic
plane carrying the canonical class for the surface-like blocks, the (+1) or
(-1) line for the projective planes.  s-matrices of built-ins with b1 > 0 are
stored as zero matrices: every such block has c1 = 0 or c1 = 0 mod 4, and in
all of them the half-triple-product matrix is even, which is the only
property any certificate reads.
"""

from __future__ import annotations

import json
import re
from typing import Callable, Optional

from fourfold.errors import CatalogError
from fourfold.model import (
    CharData,
    Flag,
    GramLattice,
    Manifold,
    Parity,
    Provenance,
    SpinCStructure,
    validate,
    zero_s_matrix,
)

CATALOG_VERSION = 1

HYPERBOLIC = GramLattice(("a", "b"), ((0, 1), (1, 0)))


def _atom(name: str, char: CharData, *, lattice: Optional[GramLattice],
          spinc: tuple[SpinCStructure, ...], flags: frozenset[Flag],
          sv_factors: Optional[tuple[tuple[int, int, int], ...]]) -> Manifold:
    return Manifold(
        name=name, char=char, lattice=lattice, spinc_structures=spinc,
        flags=flags, sv_factors=sv_factors, summand_record=((name, 1),),
        summands=(),
    )


def _cp2() -> Manifold:
    char = CharData(b1=0, b_plus=1, b_minus=0, is_spin=False, is_simply_connected=True)
    spinc = SpinCStructure(c1=(3,), c1_squared=9, s_matrix=(),
                           sw_parity=Parity.UNKNOWN, parity_provenance=Provenance.DERIVED)
    return _atom("CP2", char,
                 lattice=GramLattice(("h",), ((1,),)),
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC,
                                  Flag.MINIMAL_KAEHLER, Flag.HAS_PSC_METRIC}),
                 sv_factors=())


def _cp2bar() -> Manifold:
    char = CharData(b1=0, b_plus=0, b_minus=1, is_spin=False, is_simply_connected=True)
    spinc = SpinCStructure(c1=(1,), c1_squared=-1, s_matrix=(),
                           sw_parity=Parity.UNKNOWN, parity_provenance=Provenance.DERIVED)
    return _atom("CP2bar", char,
                 lattice=GramLattice(("e",), ((-1,),)),
                 spinc=(spinc,),
                 flags=frozenset({Flag.HAS_PSC_METRIC, Flag.HAS_NONNEG_SCALAR_METRIC,
                                  Flag.HAS_ASD_PSC_METRIC}),
                 sv_factors=())


def _s1xs3() -> Manifold:
    char = CharData(b1=1, b_plus=0, b_minus=0, is_spin=True, is_simply_connected=False)
    spinc = SpinCStructure(c1=(), c1_squared=0, s_matrix=zero_s_matrix(1),
                           sw_parity=Parity.UNKNOWN, parity_provenance=Provenance.DERIVED)
    # Almost complex as a Hopf surface; PSC and anti-self-dual PSC metrics
    # exist (standard conformally flat metric).
    return _atom("S1xS3", char,
                 lattice=GramLattice((), ()),
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.HAS_PSC_METRIC,
                                  Flag.HAS_NONNEG_SCALAR_METRIC,
                                  Flag.HAS_ASD_PSC_METRIC, Flag.C1_MOD4_ZERO}),
                 sv_factors=())


def _t4() -> Manifold:
    char = CharData(b1=4, b_plus=3, b_minus=3, is_spin=True, is_simply_connected=False)
    spinc = SpinCStructure(c1=(0, 0), c1_squared=0, s_matrix=zero_s_matrix(4),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    return _atom("T4", char,
                 lattice=HYPERBOLIC,
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC,
                                  Flag.MINIMAL_KAEHLER, Flag.C1_MOD4_ZERO}),
                 sv_factors=())


def _k3() -> Manifold:
    char = CharData(b1=0, b_plus=3, b_minus=19, is_spin=True, is_simply_connected=True)
    spinc = SpinCStructure(c1=(0, 0), c1_squared=0, s_matrix=(),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    return _atom("K3", char,
                 lattice=GramLattice(("f", "s"), ((0, 1), (1, 0))),
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC,
                                  Flag.MINIMAL_KAEHLER, Flag.C1_MOD4_ZERO}),
                 sv_factors=())


def _kodaira() -> Manifold:
    # Primary Kodaira surface: non-Kaehler symplectic spin surface with
    # b+ = 2, b1 = 3, c1 = 0; an elliptic bundle over an elliptic curve.
    char = CharData(b1=3, b_plus=2, b_minus=2, is_spin=True, is_simply_connected=False)
    spinc = SpinCStructure(c1=(0, 0), c1_squared=0, s_matrix=zero_s_matrix(3),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    return _atom("Kodaira", char,
                 lattice=HYPERBOLIC,
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC,
                                  Flag.C1_MOD4_ZERO}),
                 sv_factors=())


def _sigma(g: int, h: int) -> Manifold:
    if g < 1 or h < 1:
        raise CatalogError(f"Sigma(g,h) needs g,h >= 1, got ({g},{h})")
    char = CharData(b1=2 * (g + h), b_plus=2 * g * h + 1, b_minus=2 * g * h + 1,
                    is_spin=True, is_simply_connected=False)
    # Canonical-class coordinates in the hyperbolic plane spanned by the two
    # fiber classes: 2(g-1)*a + 2(h-1)*b, of square 8(g-1)(h-1) = 2chi+3tau.
    c1 = (2 * (g - 1), 2 * (h - 1))
    spinc = SpinCStructure(c1=c1, c1_squared=8 * (g - 1) * (h - 1),
                           s_matrix=zero_s_matrix(char.b1),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    flags = {Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC, Flag.MINIMAL_KAEHLER}
    if g % 2 == 1 and h % 2 == 1:
        flags.add(Flag.C1_MOD4_ZERO)
    return _atom(f"Sigma({g},{h})", char,
                 lattice=HYPERBOLIC,
                 spinc=(spinc,),
                 flags=frozenset(flags),
                 sv_factors=((1, g, h),))


def _y_ell(ell: int) -> Manifold:
    if ell < 0:
        raise CatalogError(f"Y(l) needs l >= 0, got {ell}")
    if ell == 0:
        return _k3()
    char = CharData(b1=0, b_plus=3, b_minus=19, is_spin=True, is_simply_connected=True)
    # Canonical monopole classes are +/- 2*l*f with f the multiple-fiber
    # class, f^2 = 0; characteristic data is that of K3 but the smooth type
    # is distinguished by l (tracked via the summand id).
    spinc = SpinCStructure(c1=(2 * ell, 0), c1_squared=0, s_matrix=(),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    flags = {Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC, Flag.MINIMAL_KAEHLER}
    if ell % 2 == 0:
        flags.add(Flag.C1_MOD4_ZERO)
    return _atom(f"Y({ell})", char,
                 lattice=GramLattice(("f", "s"), ((0, 1), (1, 0))),
                 spinc=(spinc,),
                 flags=frozenset(flags),
                 sv_factors=())


def _gompf(alpha: int, beta: int) -> Manifold:
    if alpha < 2:
        raise CatalogError(f"Gompf(a,b) needs a >= 2, got a = {alpha}")
    if beta < 0:
        raise CatalogError(f"Gompf(a,b) needs b >= 0, got b = {beta}")
    char = CharData(b1=0, b_plus=4 * alpha + 2 * beta - 1,
                    b_minus=20 * alpha + 2 * beta - 1,
                    is_spin=True, is_simply_connected=True)
    spinc = SpinCStructure(c1=None, c1_squared=8 * beta, s_matrix=(),
                           sw_parity=Parity.ODD,
                           parity_provenance=Provenance.TAUBES_SYMPLECTIC)
    return _atom(f"Gompf({alpha},{beta})", char,
                 lattice=None,
                 spinc=(spinc,),
                 flags=frozenset({Flag.ALMOST_COMPLEX, Flag.SYMPLECTIC}),
                 sv_factors=())


_PLAIN: dict[str, Callable[[], Manifold]] = {
    "CP2": _cp2,
    "CP2bar": _cp2bar,
    "S1xS3": _s1xs3,
    "T4": _t4,
    "K3": _k3,
    "Kodaira": _kodaira,
}

_PARAMETRIC = re.compile(r"^(Sigma|Y|Gompf)\((\d+)(?:,(\d+))?\)$")

PLAIN_IDS = tuple(sorted(_PLAIN))
PARAMETRIC_FORMS = ("Sigma(g,h)", "Y(l)", "Gompf(a,b)")


def catalog_get(block_id: str) -> Manifold:
    """Return the fully populated built-in manifold for a catalog id.

    Ids are the plain names CP2, CP2bar, S1xS3, T4, K3, Kodaira, or the
    parametric forms Sigma(g,h) with g,h >= 1, Y(l) with l >= 0, and
    Gompf(a,b) with a >= 2, b >= 0.
    """
    key = block_id.replace(" ", "")
    if key in _PLAIN:
        return _PLAIN[key]()
    m = _PARAMETRIC.match(key)
    if m:
        family, first, second = m.group(1), m.group(2), m.group(3)
        if family == "Y":
            if second is not None:
                raise CatalogError(f"Y takes one parameter: {block_id!r}")
            return _y_ell(int(first))
        if second is None:
            raise CatalogError(f"{family} takes two parameters: {block_id!r}")
        if family == "Sigma":
            return _sigma(int(first), int(second))
        return _gompf(int(first), int(second))
    raise CatalogError(f"unknown building block {block_id!r}")


def catalog_ids() -> tuple[str, ...]:
    return PLAIN_IDS + PARAMETRIC_FORMS


# ---------------------------------------------------------------------------
# JSON serialization


def manifold_to_json(m: Manifold) -> dict:
    doc: dict = {
        "version": CATALOG_VERSION,
        "name": m.name,
        "b1": m.char.b1,
        "b_plus": m.char.b_plus,
        "b_minus": m.char.b_minus,
        "is_spin": m.char.is_spin,
        "is_simply_connected": m.char.is_simply_connected,
        "flags": sorted(f.value for f in m.flags),
        "lattice": None,
        "spinc": [],
        "sv_factors": None if m.sv_factors is None else [list(t) for t in m.sv_factors],
        "summand_record": [[name, mult] for name, mult in m.summand_record],
    }
    if m.lattice is not None:
        doc["lattice"] = {
            "basis": list(m.lattice.basis_labels),
            "gram": [list(row) for row in m.lattice.gram],
        }
    for g in m.spinc_structures:
        doc["spinc"].append({
            "c1": None if g.c1 is None else list(g.c1),
            "c1_squared": g.c1_squared,
            "s_matrix": [list(row) for row in g.s_matrix],
            "sw_parity": g.sw_parity.value,
            "provenance": g.parity_provenance.value,
        })
    return doc


def manifold_from_json(doc: dict) -> Manifold:
    if doc.get("version") != CATALOG_VERSION:
        raise CatalogError(f"unsupported catalog document version {doc.get('version')!r}")
    char = CharData(
        b1=int(doc["b1"]), b_plus=int(doc["b_plus"]), b_minus=int(doc["b_minus"]),
        is_spin=bool(doc["is_spin"]),
        is_simply_connected=bool(doc["is_simply_connected"]),
    )
    lattice = None
    if doc.get("lattice"):
        lattice = GramLattice(
            tuple(doc["lattice"]["basis"]),
            tuple(tuple(int(x) for x in row) for row in doc["lattice"]["gram"]),
        )
    spinc = []
    for s in doc.get("spinc", ()):
        spinc.append(SpinCStructure(
            c1=None if s["c1"] is None else tuple(int(x) for x in s["c1"]),
            c1_squared=int(s["c1_squared"]),
            s_matrix=tuple(tuple(int(x) for x in row) for row in s["s_matrix"]),
            sw_parity=Parity(s.get("sw_parity", "Unknown")),
            parity_provenance=Provenance(s.get("provenance", "Derived")),
        ))
    flags = frozenset(Flag(v) for v in doc.get("flags", ()))
    sv = doc.get("sv_factors")
    sv_factors = None if sv is None else tuple((int(k), int(g), int(h)) for (k, g, h) in sv)
    record = tuple((str(name), int(mult)) for name, mult in doc.get("summand_record", ()))
    if not record:
        record = ((str(doc["name"]), 1),)
    m = Manifold(name=str(doc["name"]), char=char, lattice=lattice,
                 spinc_structures=tuple(spinc), flags=flags,
                 sv_factors=sv_factors, summand_record=record, summands=())
    problems = validate(m)
    if problems:
        raise CatalogError(f"invalid manifold document {doc['name']!r}: " + "; ".join(problems))
    return m


def load_catalog_file(path: str) -> dict[str, Manifold]:
    """Load a user catalog: {"version": 1, "manifolds": [manifold docs]}.

    Names become atoms available to the expression parser.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("version") != CATALOG_VERSION:
        raise CatalogError(f"unsupported catalog file version {doc.get('version')!r}")
    out: dict[str, Manifold] = {}
    for mdoc in doc.get("manifolds", ()):
        m = manifold_from_json(mdoc)
        out[m.name] = m
    return out
