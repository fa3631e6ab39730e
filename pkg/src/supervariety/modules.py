"""Finite-dimensional supermodules given by action matrices.

A module fixes a basis ordered even-then-odd; the action of each algebra
basis element is a square residue matrix, block-diagonal for even elements
and block-off-diagonal for odd ones.  Alongside validation and the usual
constructions (natural module, tensor, dual, hom), this module implements
restriction to the one-generator exterior algebra on a self-orthogonal odd
point, the rank-based freeness test with certificates, and standard
filtrations with their associated graded modules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    LieSuperAlgebra,
    OddPoint,
    ValidationReport,
    Violation,
    _odd_coords,
    clifford_assoc_graded,
)
from .errors import InputError, InternalConsistencyError, PreconditionError
from .linalg import rref

SCHEMA_VERSION = "1"


class SuperModule:
    """Action-matrix presentation of a supermodule; immutable by convention."""

    def __init__(self, algebra: LieSuperAlgebra, dim_even: int, dim_odd: int, actions):
        self.algebra = algebra
        self.dim_even = int(dim_even)
        self.dim_odd = int(dim_odd)
        self.dim = self.dim_even + self.dim_odd
        if self.dim_even < 0 or self.dim_odd < 0 or self.dim == 0:
            raise InputError(f"bad module dimensions ({dim_even}|{dim_odd})")
        if len(actions) != algebra.dim:
            raise InputError(
                f"need one action matrix per algebra basis element "
                f"({algebra.dim}), got {len(actions)}"
            )
        mats = []
        for a in actions:
            m = np.asarray(a, dtype=np.int64) % algebra.p
            if m.shape != (self.dim, self.dim):
                raise InputError(f"action matrix has shape {m.shape}, expected {(self.dim, self.dim)}")
            mats.append(m)
        self.actions = mats
        self.parities = tuple([0] * self.dim_even + [1] * self.dim_odd)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_even, self.dim_odd)

    def action(self, k: int) -> np.ndarray:
        return self.actions[k]

    def action_of(self, coeffs) -> np.ndarray:
        """Action matrix of the algebra element with the given coordinates."""
        v = np.asarray(coeffs, dtype=np.int64) % self.p
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for k in np.nonzero(v)[0]:
            out = (out + int(v[k]) * self.actions[k]) % self.p
        return out

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "dims": [self.dim_even, self.dim_odd],
            "action": {},
        }
        for k, m in enumerate(self.actions):
            if m.any():
                doc["action"][self.algebra.basis[k].name] = m.tolist()
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, algebra: LieSuperAlgebra, doc: dict) -> "SuperModule":
        try:
            d0, d1 = (int(x) for x in doc["dims"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"module document needs a 'dims' pair: {exc}") from exc
        action_doc = doc.get("action") or {}
        dim = d0 + d1
        actions = []
        for b in algebra.basis:
            m = action_doc.get(b.name)
            if m is None:
                actions.append(np.zeros((dim, dim), dtype=np.int64))
            else:
                arr = np.asarray(m, dtype=np.int64)
                if arr.shape != (dim, dim):
                    raise InputError(
                        f"action of {b.name!r} has shape {arr.shape}, expected {(dim, dim)}"
                    )
                actions.append(arr % algebra.p)
        unknown = sorted(set(action_doc) - {b.name for b in algebra.basis})
        if unknown:
            raise InputError(f"module action names not in the algebra basis: {unknown}")
        return cls(algebra, d0, d1, actions)

    @classmethod
    def from_json_file(cls, algebra: LieSuperAlgebra, path) -> "SuperModule":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read module file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"module file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(algebra, doc)


# -- validation ----------------------------------------------------------------


def validate_module(g: LieSuperAlgebra, M: SuperModule) -> ValidationReport:
    """Check parity-block structure and the bracket compatibility identity."""
    if M.algebra is not g and M.algebra.to_dict() != g.to_dict():
        raise InputError("module is attached to a different algebra")
    p = g.p
    d0 = M.dim_even
    violations: list[Violation] = []

    for k, b in enumerate(g.basis):
        m = M.actions[k]
        if b.parity == 0:
            bad = m[:d0, d0:].any() or m[d0:, :d0].any()
        else:
            bad = m[:d0, :d0].any() or m[d0:, d0:].any()
        if bad:
            violations.append(
                Violation(
                    "parity-block",
                    (b.name,),
                    f"action of {b.name} does not respect the even/odd block structure",
                )
            )

    for i in range(g.dim):
        for j in range(i, g.dim):
            sign = -1 if (g.parities[i] * g.parities[j]) % 2 else 1
            lhs = np.zeros((M.dim, M.dim), dtype=np.int64)
            for k, c in g.bracket_basis(i, j).items():
                lhs = (lhs + c * M.actions[k]) % p
            rhs = (M.actions[i] @ M.actions[j] - sign * (M.actions[j] @ M.actions[i])) % p
            if not np.array_equal(lhs, rhs):
                violations.append(
                    Violation(
                        "bracket-compat",
                        (g.basis[i].name, g.basis[j].name),
                        "rho([u,v]) differs from the supercommutator of actions",
                    )
                )
    return ValidationReport(tuple(violations))


# -- constructions -------------------------------------------------------------


def trivial_module(g: LieSuperAlgebra) -> SuperModule:
    """The trivial module k, dims (1|0), all actions zero."""
    return SuperModule(g, 1, 0, [np.zeros((1, 1), dtype=np.int64) for _ in range(g.dim)])


def natural_module(g: LieSuperAlgebra) -> SuperModule:
    """The defining representation k^(m|n) of an algebra built by make_gl."""
    if g.gl_block is None:
        raise InputError("natural_module requires an algebra constructed by make_gl")
    m, n = g.gl_block
    d = m + n
    actions = []
    for b in g.basis:
        # names are E_{i}_{j}, 1-based
        _, i_s, j_s = b.name.split("_")
        mat = np.zeros((d, d), dtype=np.int64)
        mat[int(i_s) - 1, int(j_s) - 1] = 1
        actions.append(mat)
    return SuperModule(g, m, n, actions)


def _parity_sort(pair_parities: list[int]) -> list[int]:
    """Stable even-then-odd permutation: result[new_pos] = old_pos."""
    return [k for k, par in enumerate(pair_parities) if par == 0] + [
        k for k, par in enumerate(pair_parities) if par == 1
    ]


def tensor(M: SuperModule, N: SuperModule) -> SuperModule:
    """Tensor product with the sign-twisted action on the second factor."""
    if M.algebra is not N.algebra and M.algebra.to_dict() != N.algebra.to_dict():
        raise InputError("tensor factors live over different algebras")
    g = M.algebra
    p = g.p
    pairs = [(r, s) for r in range(M.dim) for s in range(N.dim)]
    pair_par = [(M.parities[r] + N.parities[s]) % 2 for (r, s) in pairs]
    perm = _parity_sort(pair_par)
    pos = {pairs[old]: new for new, old in enumerate(perm)}
    dim = len(pairs)
    d0 = sum(1 for par in pair_par if par == 0)
    actions = []
    for k, b in enumerate(g.basis):
        mat = np.zeros((dim, dim), dtype=np.int64)
        am, an = M.actions[k], N.actions[k]
        for (r, s) in pairs:
            col = pos[(r, s)]
            for rp in np.nonzero(am[:, r])[0]:
                mat[pos[(int(rp), s)], col] = (mat[pos[(int(rp), s)], col] + am[rp, r]) % p
            sign = -1 if (b.parity * M.parities[r]) % 2 else 1
            for sq in np.nonzero(an[:, s])[0]:
                mat[pos[(r, int(sq))], col] = (mat[pos[(r, int(sq))], col] + sign * an[sq, s]) % p
        actions.append(mat)
    return SuperModule(g, d0, dim - d0, actions)


def dual(M: SuperModule) -> SuperModule:
    """Dual module, rho*(b) f = -(-1)^{|b||f|} f o rho(b)."""
    g = M.algebra
    p = g.p
    actions = []
    for k, b in enumerate(g.basis):
        m = M.actions[k]
        out = np.zeros_like(m)
        for s in range(M.dim):
            sign = -1 if (b.parity * M.parities[s]) % 2 else 1
            # column s of the dual action is -(sign) * row s of the action
            out[:, s] = (-sign * m[s, :]) % p
        actions.append(out)
    return SuperModule(g, M.dim_even, M.dim_odd, actions)


def hom(M: SuperModule, N: SuperModule) -> SuperModule:
    """Internal Hom realized as N tensor dual(M)."""
    return tensor(N, dual(M))


# -- restriction and freeness ----------------------------------------------------


def restrict_to_line(M: SuperModule, x) -> np.ndarray:
    """Action matrix of an odd nullcone point; squares to zero."""
    g = M.algebra
    coords = _odd_coords(g, x)
    sq = g.self_bracket(coords)
    if sq.any():
        raise PreconditionError(
            f"point is not in the nullcone: [x,x] has even coordinates {sq.tolist()}"
        )
    full = np.zeros(g.dim, dtype=np.int64)
    for u, c in enumerate(coords):
        full[g.odd_indices[u]] = c
    mat = M.action_of(full)
    if ((mat @ mat) % g.p).any():
        raise InputError(
            "restriction of the action does not square to zero; "
            "the module likely fails validate_module"
        )
    return mat


@dataclass(frozen=True)
class FreeTestResult:
    is_free: bool
    rank: int
    certificate: tuple[tuple[int, ...], ...]  # half-basis B, rows as vectors

    def to_dict(self) -> dict:
        return {
            "is_free": self.is_free,
            "rank": self.rank,
            "certificate": [list(v) for v in self.certificate],
        }


def free_test(M: SuperModule, x) -> FreeTestResult:
    """Decide freeness of M over the exterior algebra on x, with certificate.

    Since the action of x squares to zero, its rank is at most dim(M)/2, and
    freeness is equivalent to equality.  The certificate basis B consists of
    the coordinate vectors at the pivot columns of the action matrix, so that
    B together with x.B is a basis of M.  The zero point is free by
    convention (its subalgebra is just the ground field).
    """
    g = M.algebra
    coords = _odd_coords(g, x)
    if not any(coords):
        return FreeTestResult(True, 0, ())
    mat = restrict_to_line(M, coords)
    _, pivots = rref(mat, g.p)
    r = len(pivots)
    if M.dim % 2 == 1 or r != M.dim // 2:
        return FreeTestResult(False, r, ())
    cert = []
    for j in pivots:
        v = np.zeros(M.dim, dtype=np.int64)
        v[j] = 1
        cert.append(tuple(int(c) for c in v))
    stacked = np.array([list(v) for v in cert] + [list((mat @ np.array(v)) % g.p) for v in cert])
    _, piv2 = rref(stacked, g.p)
    if len(piv2) != M.dim:
        raise InternalConsistencyError("freeness certificate failed its invertibility check")
    return FreeTestResult(True, r, tuple(cert))


def lambda_projdim(M: SuperModule, x):
    """Projective dimension over the exterior algebra on x: 0 if free, else inf.

    The two-dimensional algebra k[x]/(x^2) is local self-injective, so any
    non-free finite module has a non-terminating minimal resolution.
    """
    coords = _odd_coords(M.algebra, x)
    if not any(coords):
        raise InputError("x = 0 is degenerate here: projective dimension over k is always 0")
    return 0 if free_test(M, coords).is_free else math.inf


# -- filtrations -----------------------------------------------------------------


def _parity_pure(M: SuperModule, v: np.ndarray) -> bool:
    d0 = M.dim_even
    return not (v[:d0].any() and v[d0:].any())


def _rref_rows(rows: list[np.ndarray], dim: int, p: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, dim), dtype=np.int64)
    R, pivots = rref(np.array(rows, dtype=np.int64), p)
    return R[: len(pivots)].copy()


@dataclass(frozen=True)
class FiltrationData:
    """Increasing layers F^0 <= F^1 <= ... = M, each a canonical RREF row basis."""

    module: SuperModule
    layers: tuple[np.ndarray, ...]

    def layer_dims(self) -> list[int]:
        return [len(layer) for layer in self.layers]


def standard_filtration(g: LieSuperAlgebra, M: SuperModule, S) -> FiltrationData:
    """Filtration generated from S under weights: odd action 1, even action 2.

    F^0 = span(S) and F^i = F^{i-1} + g_1.F^{i-1} + g_0.F^{i-2}, mirroring the
    weight filtration on the enveloping algebra without materializing it.
    Generators must be parity-homogeneous vectors, and must generate M (the
    recursion must terminate at the full module).
    """
    p = g.p
    gens = []
    for v in S:
        vv = np.asarray(v, dtype=np.int64) % p
        if vv.shape != (M.dim,):
            raise InputError(f"generator has length {vv.shape}, expected {M.dim}")
        if not _parity_pure(M, vv):
            raise InputError("generators must be parity-homogeneous vectors")
        gens.append(vv)
    if not gens:
        raise InputError("generating set must be nonempty")

    odd_actions = [M.actions[k] for k in g.odd_indices]
    even_actions = [M.actions[k] for k in g.even_indices]

    # Two equal consecutive layers are legitimate (even generators have
    # weight 2); the recursion is stable only once three layers agree.
    layers = [_rref_rows(gens, M.dim, p)]
    while len(layers[-1]) < M.dim:
        prev = layers[-1]
        prev2 = layers[-2] if len(layers) >= 2 else np.zeros((0, M.dim), dtype=np.int64)
        rows = list(prev)
        for a in odd_actions:
            rows.extend((a @ v) % p for v in prev)
        for a in even_actions:
            rows.extend((a @ v) % p for v in prev2)
        nxt = _rref_rows(rows, M.dim, p)
        if len(nxt) == len(prev) and len(prev) == len(prev2):
            break
        layers.append(nxt)
    if len(layers[-1]) != M.dim:
        raise InputError(
            "generating set does not generate: the recursion stabilized at a proper "
            f"submodule of dimension {len(layers[-1])} with basis {layers[-1].tolist()}"
        )
    return FiltrationData(M, tuple(layers))


@dataclass(frozen=True)
class GradedModule:
    """A supermodule over a Z-graded algebra plus a degree label per basis vector.

    `reps` holds the chosen representative vectors inside the original
    filtered module, aligned with the module basis order.
    """

    module: SuperModule
    degrees: tuple[int, ...]
    reps: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        doc = self.module.to_dict()
        doc["zdegrees"] = list(self.degrees)
        doc["representatives"] = [list(v) for v in self.reps]
        return doc


def _express_in_rref(basis_rref: np.ndarray, pivots: list[int], vec: np.ndarray, p: int):
    """Coefficients of vec over RREF rows, or None when not in the span."""
    v = vec.copy() % p
    coeffs = np.zeros(len(basis_rref), dtype=np.int64)
    for r, c in enumerate(pivots):
        if v[c]:
            coeffs[r] = v[c]
            v = (v - v[c] * basis_rref[r]) % p
    if v.any():
        return None
    return coeffs


def assoc_graded_module(g: LieSuperAlgebra, M: SuperModule, F: FiltrationData) -> GradedModule:
    """Associated graded module over the graded algebra of g.

    Layer j contributes the complement of F^{j-1} inside F^j; odd algebra
    elements act with degree shift 1 and even ones with shift 2, both induced
    from the original action on representatives.
    """
    if F.module is not M:
        raise InputError("filtration was built for a different module")
    p = g.p
    gt = clifford_assoc_graded(g)
    layers = F.layers
    top = len(layers) - 1

    layer_pivots = []
    for layer in layers:
        piv = [int(np.nonzero(row)[0][0]) for row in layer]
        layer_pivots.append(piv)

    # complement rows of each layer: pivots not already in the previous layer
    entries = []  # (degree, parity, pivot, vector)
    for j, layer in enumerate(layers):
        prev_pivots = set(layer_pivots[j - 1]) if j > 0 else set()
        for row, piv in zip(layer, layer_pivots[j]):
            if piv in prev_pivots:
                continue
            parity = 0 if piv < M.dim_even else 1
            entries.append((j, parity, piv, row))
    entries.sort(key=lambda e: (e[1], e[0], e[2]))
    d0 = sum(1 for e in entries if e[1] == 0)

    dim = len(entries)
    if dim != M.dim:
        raise InternalConsistencyError("graded layers do not add up to the module dimension")

    def quotient_coords(w: np.ndarray, j: int) -> np.ndarray:
        """Coordinates of w + F^{j-1} over the degree-j part of the graded basis."""
        out = np.zeros(dim, dtype=np.int64)
        if j > top:
            return out
        coeffs = _express_in_rref(layers[j], layer_pivots[j], w, p)
        if coeffs is None:
            raise InternalConsistencyError("action leaves the expected filtration layer")
        prev_pivots = set(layer_pivots[j - 1]) if j > 0 else set()
        for c, piv in zip(coeffs, layer_pivots[j]):
            if piv in prev_pivots:
                continue
            for idx, (dj, _, dpiv, _) in enumerate(entries):
                if dj == j and dpiv == piv:
                    out[idx] = c
                    break
        return out

    actions = []
    for k, b in enumerate(g.basis):
        shift = 1 if b.parity == 1 else 2
        mat = np.zeros((dim, dim), dtype=np.int64)
        for col, (j, _, _, vec) in enumerate(entries):
            w = (M.actions[k] @ vec) % p
            mat[:, col] = quotient_coords(w, j + shift)
        actions.append(mat)

    module = SuperModule(gt, d0, dim - d0, actions)
    degrees = tuple(e[0] for e in entries)
    reps = tuple(tuple(int(c) for c in e[3]) for e in entries)
    return GradedModule(module, degrees, reps)
