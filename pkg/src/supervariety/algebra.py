"""Finite-dimensional Lie superalgebras over GF(p) by structure constants.

An algebra is a homogeneous ordered basis with parities, plus the brackets
[b_i, b_j] stored only for i <= j; the i > j case is derived on demand from
super-skew-symmetry, which removes a whole class of inconsistent inputs.
Constructors are provided for gl(m|n) and for the two-step associated graded
algebra in which the odd part sits in degree 1 and the even part becomes
central in degree 2.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .linalg import check_odd_prime

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class BasisElement:
    name: str
    parity: int  # 0 even, 1 odd


@dataclass(frozen=True)
class Violation:
    """One failed axiom, with the witnessing basis tuple."""

    axiom: str
    witness: tuple
    detail: str

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


class LieSuperAlgebra:
    """Structure-constant presentation of a Lie superalgebra over GF(p).

    Immutable after construction and safe to share.  `brackets` maps a pair
    (i, j) with i <= j to a sparse vector {target index: residue}.  An
    optional `zdegrees` list attaches an integer grading.
    """

    def __init__(self, p: int, basis: list[BasisElement], brackets: dict, zdegrees=None, gl_block=None):
        self.p = check_odd_prime(p)
        self.basis = list(basis)
        self.dim = len(basis)
        names = [b.name for b in basis]
        if len(set(names)) != len(names):
            raise InputError("basis names must be distinct")
        for b in basis:
            if b.parity not in (0, 1):
                raise InputError(f"parity of {b.name!r} must be 0 or 1, got {b.parity!r}")
        self.name_to_index = {b.name: k for k, b in enumerate(basis)}
        self.parities = tuple(b.parity for b in basis)
        self.even_indices = tuple(k for k, b in enumerate(basis) if b.parity == 0)
        self.odd_indices = tuple(k for k, b in enumerate(basis) if b.parity == 1)
        self.dim_even = len(self.even_indices)
        self.dim_odd = len(self.odd_indices)

        self.brackets: dict[tuple[int, int], dict[int, int]] = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise InputError(f"bracket index ({i},{j}) out of range for dim {self.dim}")
            if i > j:
                raise InputError(f"bracket ({i},{j}) stored with i > j; store only i <= j")
            clean = {}
            for k, c in vec.items():
                if not (0 <= k < self.dim):
                    raise InputError(f"bracket ({i},{j}) targets index {k} out of range")
                c = int(c) % self.p
                if c:
                    clean[int(k)] = c
            if clean:
                self.brackets[(i, j)] = clean

        if zdegrees is not None:
            if len(zdegrees) != self.dim:
                raise InputError("zdegrees length must equal the basis size")
            zdegrees = tuple(int(d) for d in zdegrees)
        self.zdegrees = zdegrees
        # (m, n) block data when constructed by make_gl; None otherwise.
        self.gl_block = gl_block

    # -- bracket evaluation --------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        """[b_i, b_j] as a sparse vector, deriving i > j by skew-symmetry."""
        if i <= j:
            return self.brackets.get((i, j), {})
        sign = -1 if (self.parities[i] * self.parities[j]) % 2 == 0 else 1
        stored = self.brackets.get((j, i), {})
        return {k: (sign * c) % self.p for k, c in stored.items()}

    def bracket(self, u, v) -> np.ndarray:
        """Bilinear extension of the structure constants to coordinate vectors."""
        p = self.p
        u = np.asarray(u, dtype=np.int64) % p
        v = np.asarray(v, dtype=np.int64) % p
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise InputError(f"coordinate vectors must have length {self.dim}")
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(u)[0]:
            ui = int(u[i])
            for j in np.nonzero(v)[0]:
                c = ui * int(v[j])
                for k, ck in self.bracket_basis(int(i), int(j)).items():
                    out[k] = (out[k] + c * ck) % p
        return out

    def self_bracket(self, x) -> np.ndarray:
        """[x, x] for an odd point x, as a vector over the even basis.

        Quadratic in the coordinates of x: the coefficient of a_u a_v is
        [y_u, y_v] + [y_v, y_u] = 2 [y_u, y_v] for u < v.
        """
        coords = _odd_coords(self, x)
        full = np.zeros(self.dim, dtype=np.int64)
        p = self.p
        nz = [u for u in range(self.dim_odd) if coords[u]]
        for a in range(len(nz)):
            u = nz[a]
            gu = self.odd_indices[u]
            for b in range(a, len(nz)):
                v = nz[b]
                gv = self.odd_indices[v]
                mult = coords[u] * coords[v] * (1 if u == v else 2)
                for k, ck in self.bracket_basis(gu, gv).items():
                    full[k] = (full[k] + mult * ck) % p
        return full[list(self.even_indices)] if self.even_indices else np.zeros(0, dtype=np.int64)

    def odd_quadratic_forms(self) -> list[np.ndarray]:
        """Symmetric matrices Q_k with [x,x]_k = x^T Q_k x, one per even basis index."""
        qs = [np.zeros((self.dim_odd, self.dim_odd), dtype=np.int64) for _ in self.even_indices]
        even_pos = {g: k for k, g in enumerate(self.even_indices)}
        for u in range(self.dim_odd):
            for v in range(self.dim_odd):
                vec = self.bracket_basis(self.odd_indices[u], self.odd_indices[v])
                for k, c in vec.items():
                    if k in even_pos:
                        qs[even_pos[k]][u, v] = c
        return qs

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "basis": [{"name": b.name, "parity": b.parity} for b in self.basis],
            "brackets": {
                f"{i},{j}": {self.basis[k].name: c for k, c in sorted(vec.items())}
                for (i, j), vec in sorted(self.brackets.items())
            },
        }
        if self.zdegrees is not None:
            doc["zdegrees"] = list(self.zdegrees)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "LieSuperAlgebra":
        try:
            p = doc["p"]
            basis_docs = doc["basis"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"algebra document missing field: {exc}") from exc
        if not isinstance(basis_docs, list) or not basis_docs:
            raise InputError("field 'basis' must be a nonempty list")
        basis = []
        for b in basis_docs:
            try:
                basis.append(BasisElement(str(b["name"]), int(b["parity"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed basis element {b!r}: {exc}") from exc
        name_to_index = {b.name: k for k, b in enumerate(basis)}
        brackets = {}
        for key, vec in (doc.get("brackets") or {}).items():
            try:
                i_s, j_s = key.split(",")
                i, j = int(i_s), int(j_s)
            except ValueError as exc:
                raise InputError(f"bracket key {key!r} is not 'i,j'") from exc
            clean = {}
            for name, c in vec.items():
                if name not in name_to_index:
                    raise InputError(f"bracket {key!r} targets unknown basis name {name!r}")
                clean[name_to_index[name]] = int(c)
            brackets[(i, j)] = clean
        return cls(int(p), basis, brackets, zdegrees=doc.get("zdegrees"))

    @classmethod
    def from_json_file(cls, path) -> "LieSuperAlgebra":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read algebra file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"algebra file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True, order=True)
class OddPoint:
    """A point of the odd part, as residues over the odd basis (in basis order)."""

    coords: tuple[int, ...] = field(compare=True)

    @classmethod
    def make(cls, algebra: LieSuperAlgebra, coords) -> "OddPoint":
        coords = tuple(int(c) % algebra.p for c in coords)
        if len(coords) != algebra.dim_odd:
            raise InputError(
                f"odd point has {len(coords)} coordinates; algebra has dim g_1 = {algebra.dim_odd}"
            )
        return cls(coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def _odd_coords(g: LieSuperAlgebra, x) -> tuple[int, ...]:
    if isinstance(x, OddPoint):
        coords = x.coords
        if len(coords) != g.dim_odd:
            raise InputError("odd point does not match this algebra's odd dimension")
        return coords
    return OddPoint.make(g, x).coords


def bracket(g: LieSuperAlgebra, u, v) -> np.ndarray:
    return g.bracket(u, v)


def self_bracket(g: LieSuperAlgebra, x) -> np.ndarray:
    return g.self_bracket(x)


# -- validation ---------------------------------------------------------------


def validate_algebra(g: LieSuperAlgebra) -> ValidationReport:
    """Check every algebra axiom, reporting all violations with witnesses.

    Covered: parity compatibility of brackets, skew-symmetry on the diagonal,
    the super Jacobi identity on all basis triples, the p = 3 cubic identity
    as a polynomial map (coefficient-wise), and degree additivity when a
    Z-grading is present.
    """
    p = g.p
    violations: list[Violation] = []

    for (i, j), vec in sorted(g.brackets.items()):
        want = (g.parities[i] + g.parities[j]) % 2
        for k, c in sorted(vec.items()):
            if g.parities[k] != want:
                violations.append(
                    Violation(
                        "parity",
                        (g.basis[i].name, g.basis[j].name),
                        f"[{g.basis[i].name},{g.basis[j].name}] has a component on "
                        f"{g.basis[k].name} of wrong parity",
                    )
                )
                break

    # With i <= j storage the only skew-symmetry content is [b,b] = 0 for even b.
    for i in g.even_indices:
        if g.brackets.get((i, i)):
            violations.append(
                Violation(
                    "skew-symmetry",
                    (g.basis[i].name, g.basis[i].name),
                    f"[{g.basis[i].name},{g.basis[i].name}] must vanish for even elements",
                )
            )

    def jac(i: int, j: int, k: int) -> bool:
        total = np.zeros(g.dim, dtype=np.int64)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            sign = -1 if (g.parities[a] * g.parities[c]) % 2 else 1
            inner = g.bracket_basis(b, c)
            for t, ct in inner.items():
                for s, cs in g.bracket_basis(a, t).items():
                    total[s] = (total[s] + sign * ct * cs) % p
        return not total.any()

    for i, j, k in itertools.combinations_with_replacement(range(g.dim), 3):
        if not jac(i, j, k):
            violations.append(
                Violation(
                    "jacobi",
                    (g.basis[i].name, g.basis[j].name, g.basis[k].name),
                    "super Jacobi identity fails on this basis triple",
                )
            )

    if p == 3:
        # [y,[y,y]] must vanish identically as a cubic polynomial map on g_1,
        # i.e. each polarization coefficient (sum over arrangements of a
        # multiset of odd indices) is zero.  GF(3)-point checks do not suffice.
        for mult in itertools.combinations_with_replacement(range(g.dim_odd), 3):
            total = np.zeros(g.dim, dtype=np.int64)
            for (u, v, w) in set(itertools.permutations(mult)):
                gu, gv, gw = (g.odd_indices[t] for t in (u, v, w))
                for t, ct in g.bracket_basis(gv, gw).items():
                    for s, cs in g.bracket_basis(gu, t).items():
                        total[s] = (total[s] + ct * cs) % p
            if total.any():
                violations.append(
                    Violation(
                        "p3-cubic",
                        tuple(g.basis[g.odd_indices[t]].name for t in mult),
                        "the cubic map y -> [y,[y,y]] is not identically zero",
                    )
                )

    if g.zdegrees is not None:
        for (i, j), vec in sorted(g.brackets.items()):
            want = g.zdegrees[i] + g.zdegrees[j]
            for k in sorted(vec):
                if g.zdegrees[k] != want:
                    violations.append(
                        Violation(
                            "grading",
                            (g.basis[i].name, g.basis[j].name),
                            f"bracket does not add Z-degrees ({g.zdegrees[i]}+{g.zdegrees[j]} "
                            f"vs {g.zdegrees[k]} on {g.basis[k].name})",
                        )
                    )
                    break

    return ValidationReport(tuple(violations))


# -- constructors --------------------------------------------------------------


def make_gl(m: int, n: int, p: int) -> LieSuperAlgebra:
    """The general linear Lie superalgebra gl(m|n) on matrix units E_[i,j].

    Basis order: even units first (both indices on the same side of the
    block boundary), then odd units, each group row-major.  The bracket is
    the supercommutator AB - (-1)^{parity product} BA.
    """
    check_odd_prime(p)
    if m < 0 or n < 0 or m + n < 1:
        raise InputError(f"need m + n >= 1, got m={m}, n={n}")
    d = m + n

    def parity_of(i: int, j: int) -> int:
        return int((i < m) != (j < m))

    units = [(i, j) for i in range(d) for j in range(d)]
    even = [(i, j) for (i, j) in units if parity_of(i, j) == 0]
    odd = [(i, j) for (i, j) in units if parity_of(i, j) == 1]
    ordered = even + odd
    basis = [BasisElement(f"E_{i + 1}_{j + 1}", parity_of(i, j)) for (i, j) in ordered]
    index = {u: k for k, u in enumerate(ordered)}

    brackets: dict[tuple[int, int], dict[int, int]] = {}
    for ki in range(len(ordered)):
        a, b = ordered[ki]
        pi = parity_of(a, b)
        for kj in range(ki, len(ordered)):
            c, dd = ordered[kj]
            pj = parity_of(c, dd)
            sign = -1 if (pi * pj) % 2 else 1
            vec: dict[int, int] = {}
            if b == c:
                t = index[(a, dd)]
                vec[t] = (vec.get(t, 0) + 1) % p
            if dd == a:
                t = index[(c, b)]
                vec[t] = (vec.get(t, 0) - sign) % p
            vec = {t: v for t, v in vec.items() if v}
            if vec:
                brackets[(ki, kj)] = vec
    return LieSuperAlgebra(p, basis, brackets, gl_block=(m, n))


def clifford_assoc_graded(g: LieSuperAlgebra) -> LieSuperAlgebra:
    """Associated graded algebra of the two-step filtration by the odd part.

    Same underlying superspace; odd basis elements take degree 1, even take
    degree 2.  Odd-odd brackets survive unchanged (landing in degree 2) and
    everything touching the even part becomes central.
    """
    brackets = {}
    for (i, j), vec in g.brackets.items():
        if g.parities[i] == 1 and g.parities[j] == 1:
            brackets[(i, j)] = dict(vec)
    zdegrees = [1 if par == 1 else 2 for par in g.parities]
    return LieSuperAlgebra(g.p, g.basis, brackets, zdegrees=zdegrees, gl_block=None)
