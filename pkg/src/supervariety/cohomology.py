"""Cochain complexes computing Ext groups of supermodules in bounded degree.

The degree-n cochains are spanned by monomials in the dual superexterior
algebra (exterior generators dual to the even basis, symmetric/polynomial
generators dual to the odd basis) tensored with Hom(M, N).  The differential
is the sum of a structure part, the degree +1 superderivation dual to the
bracket, and an action part coupling each dual generator to the coefficient
action of its basis element.  The whole operator is assembled per degree as
sparse Kronecker products, and d o d = 0 is verified at build time: a
failure aborts loudly since it indicates a sign bug, not bad input.

Koszul conventions, pinned by the d^2 = 0 / degree-zero-cohomology checks:
exterior and symmetric generators all have cohomological degree 1, parity
equal to that of the underlying basis element, and two monomials commute up
to (-1)^{deg*deg + parity*parity}.  The differential is even, so its Leibniz
sign is (-1)^{cohomological degree of the left factor} only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import LieSuperAlgebra
from .budget import DENSE_CELL_LIMIT, check_budget
from .errors import InputError, InternalConsistencyError, PreconditionError
from .linalg import MatrixFp, inverse_mod, rank, solve
from .modules import GradedModule, SuperModule, trivial_module

# A monomial is (sorted tuple of exterior generator positions, exponent tuple
# over the symmetric generators).
Monomial = tuple[tuple[int, ...], tuple[int, ...]]


def mono_degree(m: Monomial) -> int:
    return len(m[0]) + sum(m[1])


def mono_parity(m: Monomial) -> int:
    return sum(m[1]) & 1


def mono_mul(m1: Monomial, m2: Monomial) -> tuple[int, Monomial] | None:
    """Canonical product of two monomials, or None when it vanishes.

    Sign bookkeeping: each exterior generator of the right factor passes the
    whole symmetric block of the left factor (one sign per symmetric degree),
    then the exterior generators are merge-sorted with the usual inversion
    signs.  Symmetric generators commute with each other.
    """
    xs1, es1 = m1
    xs2, es2 = m2
    sign = 1
    if xs2 and (sum(es1) & 1):
        if len(xs2) & 1:
            sign = -sign
    # merge xs1 and xs2, counting inversions
    merged = []
    i = j = 0
    inversions = 0
    while i < len(xs1) and j < len(xs2):
        if xs1[i] == xs2[j]:
            return None
        if xs1[i] < xs2[j]:
            merged.append(xs1[i])
            i += 1
        else:
            merged.append(xs2[j])
            inversions += len(xs1) - i
            j += 1
    merged.extend(xs1[i:])
    merged.extend(xs2[j:])
    if inversions & 1:
        sign = -sign
    es = tuple(a + b for a, b in zip(es1, es2))
    return sign, (tuple(merged), es)


def _compositions(total: int, slots: int):
    """Exponent vectors of the given total over `slots` variables, lex order."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def lambda_degree_dim(d0: int, d1: int, n: int) -> int:
    out = 0
    for i in range(0, min(n, d0) + 1):
        j = n - i
        if d1 == 0:
            s = 1 if j == 0 else 0
        else:
            s = math.comb(j + d1 - 1, d1 - 1)
        out += math.comb(d0, i) * s
    return out


def _degree_basis(d0: int, d1: int, n: int) -> list[Monomial]:
    basis: list[Monomial] = []
    for i in range(0, min(n, d0) + 1):
        j = n - i
        if d1 == 0 and j > 0:
            continue
        for xs in itertools.combinations(range(d0), i):
            for es in _compositions(j, d1):
                basis.append((xs, es))
    return basis


class CochainComplex:
    """Cochain complex of a pair of supermodules, built to a degree bound.

    Attributes of note: `dims[n]` is the full dimension of the degree-n
    cochains, `d[n]` the sparse differential into degree n+1 (defined for
    n < nmax), `lambda_bases[n]` the monomial basis of the dual-algebra
    factor, and `hom_dim` the dimension of Hom(M, N).  When built from graded
    data, `idegrees[n]` carries the internal degree of every basis cochain.
    """

    def __init__(self, g, M, N, nmax, lambda_bases, lambda_index, hom_pairs, hom_parities, d, idegrees):
        self.algebra = g
        self.M = M
        self.N = N
        self.nmax = nmax
        self.lambda_bases = lambda_bases
        self.lambda_index = lambda_index
        self.hom_pairs = hom_pairs
        self.hom_parities = hom_parities
        self.hom_dim = len(hom_pairs)
        self.dims = [len(b) * self.hom_dim for b in lambda_bases]
        self.d = d
        self.idegrees = idegrees

    @property
    def p(self) -> int:
        return self.algebra.p

    def differential(self, n: int) -> sp.csr_matrix:
        if not (0 <= n < self.nmax):
            raise InputError(f"differential defined for 0 <= n < nmax={self.nmax}, got {n}")
        return self.d[n]

    def zero_cochain(self, n: int) -> "Cochain":
        if not (0 <= n <= self.nmax):
            raise InputError(f"degree {n} outside [0, {self.nmax}]")
        return Cochain(self, n, np.zeros(self.dims[n], dtype=np.int64))

    def basis_label(self, n: int, idx: int):
        mono = self.lambda_bases[n][idx // self.hom_dim]
        return mono, self.hom_pairs[idx % self.hom_dim]


@dataclass
class Cochain:
    """An element of one cochain degree, as a residue coefficient vector."""

    complex: CochainComplex
    degree: int
    vector: np.ndarray

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=np.int64) % self.complex.p
        if self.vector.shape != (self.complex.dims[self.degree],):
            raise InputError("cochain vector length does not match its degree")

    def is_zero(self) -> bool:
        return not self.vector.any()

    def boundary(self) -> "Cochain":
        if self.degree >= self.complex.nmax:
            raise InputError(f"no differential out of top degree {self.degree}")
        out = self.complex.d[self.degree] @ self.vector
        return Cochain(self.complex, self.degree + 1, np.asarray(out) % self.complex.p)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.complex is not self.complex or other.degree != self.degree:
            raise InputError("cochain mismatch")
        return Cochain(self.complex, self.degree, (self.vector + other.vector) % self.complex.p)

    def __sub__(self, other: "Cochain") -> "Cochain":
        if other.complex is not self.complex or other.degree != self.degree:
            raise InputError("cochain mismatch")
        return Cochain(self.complex, self.degree, (self.vector - other.vector) % self.complex.p)

    def scale(self, c: int) -> "Cochain":
        return Cochain(self.complex, self.degree, (self.vector * (c % self.complex.p)) % self.complex.p)


def _structure_tables(g: LieSuperAlgebra):
    """Images of the dual generators under the transpose of the bracket.

    Returns (dxi, deta): dxi[k] and deta[w] are lists of (coeff, monomial)
    over positions into the even/odd basis index lists.
    """
    p = g.p
    d0, d1 = g.dim_even, g.dim_odd
    even_pos = {gidx: k for k, gidx in enumerate(g.even_indices)}
    odd_pos = {gidx: u for u, gidx in enumerate(g.odd_indices)}
    inv2 = inverse_mod(2, p)

    dxi = [dict() for _ in range(d0)]
    deta = [dict() for _ in range(d1)]

    def add(table, key, mono, c):
        c %= p
        if not c:
            return
        cur = table[key].get(mono, 0)
        cur = (cur + c) % p
        if cur:
            table[key][mono] = cur
        else:
            table[key].pop(mono, None)

    zero_es = (0,) * d1

    # even-even brackets feed the exterior-exterior part
    for a in range(d0):
        for b in range(a + 1, d0):
            vec = g.bracket_basis(g.even_indices[a], g.even_indices[b])
            for k, c in vec.items():
                mono = ((a, b), zero_es)
                add(dxi, even_pos[k], mono, -c)
    # Odd-odd brackets feed the symmetric-symmetric part, with the half
    # factor (p is odd).  This term carries the opposite sign from the other
    # two: that is the unique choice (up to a global flip absorbed into the
    # action part) for which d o d = 0 survives coefficients in Hom(M, N).
    for u in range(d1):
        for v in range(u, d1):
            vec = g.bracket_basis(g.odd_indices[u], g.odd_indices[v])
            es = list(zero_es)
            es[u] += 1
            es[v] += 1
            mono = ((), tuple(es))
            for k, c in vec.items():
                coeff = c if u != v else (c * inv2) % p
                add(dxi, even_pos[k], mono, coeff)
    # even-odd brackets feed the mixed part
    for a in range(d0):
        for u in range(d1):
            vec = g.bracket_basis(g.even_indices[a], g.odd_indices[u])
            es = list(zero_es)
            es[u] += 1
            mono = ((a,), tuple(es))
            for w, c in vec.items():
                add(deta, odd_pos[w], mono, -c)

    return (
        [sorted(t.items()) for t in dxi],
        [sorted(t.items()) for t in deta],
    )


def _structure_differential_column(m: Monomial, dxi, deta, p: int):
    """The structure derivation applied to one monomial: list of (coeff, mono)."""
    xs, es = m
    d1 = len(es)
    zero_es = (0,) * d1
    out: dict[Monomial, int] = {}

    def acc(c, mono):
        c %= p
        if not c:
            return
        cur = (out.get(mono, 0) + c) % p
        if cur:
            out[mono] = cur
        else:
            out.pop(mono, None)

    for t, xk in enumerate(xs):
        sign = -1 if t & 1 else 1
        pre = (xs[:t], zero_es)
        post = (xs[t + 1:], es)
        for mono, c in dxi[xk]:
            r1 = mono_mul(mono, post)
            if r1 is None:
                continue
            s1, m1 = r1
            r2 = mono_mul(pre, m1)
            if r2 is None:
                continue
            s2, m2 = r2
            acc(sign * s1 * s2 * c, m2)
    head = (xs, zero_es)
    head_sign = -1 if len(xs) & 1 else 1
    for u in range(d1):
        if es[u] == 0 or es[u] % p == 0:
            continue
        reduced = list(es)
        reduced[u] -= 1
        tail = ((), tuple(reduced))
        for mono, c in deta[u]:
            r1 = mono_mul(mono, tail)
            if r1 is None:
                continue
            s1, m1 = r1
            r2 = mono_mul(head, m1)
            if r2 is None:
                continue
            s2, m2 = r2
            acc(head_sign * s1 * s2 * c * es[u], m2)
    return list(out.items())


def _hom_action_matrix(g: LieSuperAlgebra, M: SuperModule, N: SuperModule, a: int) -> sp.csr_matrix:
    """Action of basis element a on Hom(M, N): rho_N . phi -+ phi . rho_M."""
    p = g.p
    pa = g.parities[a]
    rho_m = M.actions[a]
    rho_n = N.actions[a]
    dim_m, dim_n = M.dim, N.dim
    hd = dim_n * dim_m
    rows, cols, vals = [], [], []
    for q in range(dim_n):
        for r in range(dim_m):
            col = q * dim_m + r
            for qp in np.nonzero(rho_n[:, q])[0]:
                rows.append(int(qp) * dim_m + r)
                cols.append(col)
                vals.append(int(rho_n[qp, q]))
            sign = -1 if (pa * ((N.parities[q] + M.parities[r]) % 2)) % 2 else 1
            for t in np.nonzero(rho_m[r, :])[0]:
                rows.append(q * dim_m + int(t))
                cols.append(col)
                vals.append((-sign * int(rho_m[r, t])) % p)
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(hd, hd), dtype=np.int64).tocsr()
    mat.sum_duplicates()
    mat.data %= p
    mat.eliminate_zeros()
    return mat


def _sparse_from_columns(columns, n_rows: int, n_cols: int, p: int) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for j, terms in enumerate(columns):
        for i, c in terms:
            rows.append(i)
            cols.append(j)
            vals.append(c % p)
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(n_rows, n_cols), dtype=np.int64).tocsr()
    mat.sum_duplicates()
    mat.data %= p
    mat.eliminate_zeros()
    return mat


def estimate_complex_cells(g: LieSuperAlgebra, hom_dim: int, nmax: int) -> int:
    return sum(lambda_degree_dim(g.dim_even, g.dim_odd, n) for n in range(nmax + 1)) * hom_dim


def build_complex(
    g: LieSuperAlgebra,
    M: SuperModule | None,
    N: SuperModule | None,
    nmax: int,
    mdegrees=None,
    ndegrees=None,
) -> CochainComplex:
    """Build the cochain complex of (M, N) up to degree nmax.

    M and N default to the trivial module.  When the algebra is Z-graded and
    degree labels are supplied for both modules, every basis cochain gets an
    internal degree and the differential is checked to preserve it.
    Verifies d o d = 0 over the whole built range.
    """
    if nmax < 1:
        raise InputError(f"nmax must be at least 1, got {nmax}")
    if M is None:
        M = trivial_module(g)
    if N is None:
        N = trivial_module(g)
    for X in (M, N):
        if X.algebra is not g and X.algebra.to_dict() != g.to_dict():
            raise InputError("modules must be defined over the same algebra as the complex")
    p = g.p
    d0, d1 = g.dim_even, g.dim_odd
    hom_dim = N.dim * M.dim
    check_budget("cochain complex", estimate_complex_cells(g, hom_dim, nmax))

    lambda_bases = [_degree_basis(d0, d1, n) for n in range(nmax + 1)]
    lambda_index = [{m: i for i, m in enumerate(basis)} for basis in lambda_bases]
    hom_pairs = [(q, r) for q in range(N.dim) for r in range(M.dim)]
    hom_parities = [(N.parities[q] + M.parities[r]) % 2 for q, r in hom_pairs]

    dxi, deta = _structure_tables(g)

    hom_acts = [_hom_action_matrix(g, M, N, a) for a in range(g.dim)]
    eye_hom = sp.identity(hom_dim, dtype=np.int64, format="csr")

    # dual generator of each algebra basis element, as a degree-1 monomial
    gen_monos = []
    zero_es = (0,) * d1
    even_pos = {gidx: k for k, gidx in enumerate(g.even_indices)}
    odd_pos = {gidx: u for u, gidx in enumerate(g.odd_indices)}
    for a in range(g.dim):
        if g.parities[a] == 0:
            gen_monos.append(((even_pos[a],), zero_es))
        else:
            es = list(zero_es)
            es[odd_pos[a]] += 1
            gen_monos.append(((), tuple(es)))

    differentials = []
    for n in range(nmax):
        src, dst = lambda_bases[n], lambda_bases[n + 1]
        idx_dst = lambda_index[n + 1]
        str_cols = []
        for m in src:
            terms = _structure_differential_column(m, dxi, deta, p)
            str_cols.append([(idx_dst[mono], c) for mono, c in terms])
        dn = sp.kron(
            _sparse_from_columns(str_cols, len(dst), len(src), p), eye_hom, format="csr"
        )
        for a in range(g.dim):
            if hom_acts[a].nnz == 0:
                continue
            pa = g.parities[a]
            cols = []
            for m in src:
                r = mono_mul(gen_monos[a], m)
                if r is None:
                    cols.append([])
                    continue
                s, mono = r
                if pa and mono_parity(m):
                    s = -s
                cols.append([(idx_dst[mono], s)])
            mult = _sparse_from_columns(cols, len(dst), len(src), p)
            dn = dn + sp.kron(mult, hom_acts[a], format="csr")
        dn = dn.tocsr()
        dn.data %= p
        dn.eliminate_zeros()
        differentials.append(dn)

    idegrees = None
    if g.zdegrees is not None and mdegrees is not None and ndegrees is not None:
        if len(mdegrees) != M.dim or len(ndegrees) != N.dim:
            raise InputError("degree labels must match the module dimensions")
        idegrees = []
        for n in range(nmax + 1):
            row = []
            for mono in lambda_bases[n]:
                xs, es = mono
                ideg = -sum(g.zdegrees[g.even_indices[k]] for k in xs)
                ideg -= sum(e * g.zdegrees[g.odd_indices[u]] for u, e in enumerate(es))
                for q, r in hom_pairs:
                    row.append(ideg + ndegrees[q] - mdegrees[r])
            idegrees.append(row)

    complex_ = CochainComplex(
        g, M, N, nmax, lambda_bases, lambda_index, hom_pairs, hom_parities, differentials, idegrees
    )
    _verify_d_squared(complex_)
    if idegrees is not None:
        _verify_internal_degrees(complex_)
    return complex_


def _verify_d_squared(cx: CochainComplex) -> None:
    for n in range(cx.nmax - 1):
        prod = cx.d[n + 1] @ cx.d[n]
        prod.data %= cx.p
        prod.eliminate_zeros()
        if prod.nnz:
            raise InternalConsistencyError(
                f"d o d != 0 between degrees {n} and {n + 2}; "
                "the sign conventions are broken for this input"
            )


def _verify_internal_degrees(cx: CochainComplex) -> None:
    for n in range(cx.nmax):
        coo = cx.d[n].tocoo()
        src = cx.idegrees[n]
        dst = cx.idegrees[n + 1]
        for i, j in zip(coo.row, coo.col):
            if dst[i] != src[j]:
                raise InternalConsistencyError(
                    f"differential does not preserve internal degree at n={n}"
                )


# -- cohomology dimensions ----------------------------------------------------


def _sparse_rank(mat: sp.csr_matrix, p: int) -> int:
    if mat.shape[0] == 0 or mat.shape[1] == 0 or mat.nnz == 0:
        return 0
    check_budget("dense elimination", mat.shape[0] * mat.shape[1], DENSE_CELL_LIMIT)
    return rank(MatrixFp.from_sparse(mat, p))


def cohomology_dims(cx: CochainComplex) -> list[int]:
    """Dimensions of H^0 .. H^{nmax-1} as exact integers."""
    ranks = [_sparse_rank(cx.d[n], cx.p) for n in range(cx.nmax)]
    out = []
    for n in range(cx.nmax):
        below = ranks[n - 1] if n > 0 else 0
        out.append(cx.dims[n] - ranks[n] - below)
    return out


# -- cup products ---------------------------------------------------------------


def cup_multiply(omega: Cochain, c: Cochain) -> Cochain:
    """Left module multiplication by a trivial-coefficient cochain."""
    cx_o = omega.complex
    cx_c = c.complex
    if cx_o.hom_dim != 1:
        raise InputError("left cup factor must live in the trivial-coefficient complex")
    if cx_o.algebra is not cx_c.algebra and cx_o.algebra.to_dict() != cx_c.algebra.to_dict():
        raise InputError("cup factors live over different algebras")
    n = omega.degree + c.degree
    if n > cx_c.nmax:
        raise InputError(
            f"cup product degree {n} exceeds the degree bound {cx_c.nmax} of the target complex"
        )
    p = cx_c.p
    hd = cx_c.hom_dim
    out = np.zeros(cx_c.dims[n], dtype=np.int64)
    idx = cx_c.lambda_index[n]
    for i in np.nonzero(omega.vector)[0]:
        m1 = cx_o.lambda_bases[omega.degree][int(i)]
        a = int(omega.vector[i])
        for j in np.nonzero(c.vector)[0]:
            j = int(j)
            m2 = cx_c.lambda_bases[c.degree][j // hd]
            r = mono_mul(m1, m2)
            if r is None:
                continue
            s, mono = r
            t = idx[mono] * hd + (j % hd)
            out[t] = (out[t] + s * a * int(c.vector[j])) % p
    return Cochain(cx_c, n, out)


def identity_cochain(cx: CochainComplex) -> Cochain:
    """id_M as a degree-zero cochain of a complex with M = N."""
    if cx.M.dim != cx.N.dim or cx.M.dims != cx.N.dims:
        raise InputError("identity cochain requires M = N")
    vec = np.zeros(cx.dims[0], dtype=np.int64)
    for r in range(cx.M.dim):
        vec[r * cx.M.dim + r] = 1
    return Cochain(cx, 0, vec)


# -- polynomials in the odd dual variables and the p-th power embedding ---------


@dataclass(frozen=True)
class OddPolynomial:
    """A homogeneous polynomial in the odd dual coordinates."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]  # (exponents, coeff), sorted

    @classmethod
    def make(cls, nvars: int, terms, p: int) -> "OddPolynomial":
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise InputError(f"bad exponent vector {exps} for {nvars} variables")
            c = int(c) % p
            if c:
                clean[exps] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise InputError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        return cls(nvars, tuple(sorted(clean.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else 0

    def multiply(self, other: "OddPolynomial", p: int) -> "OddPolynomial":
        if self.nvars != other.nvars:
            raise InputError("polynomials in different variable sets")
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % p
        return OddPolynomial.make(self.nvars, acc, p)

    def power(self, ell: int, p: int) -> "OddPolynomial":
        if ell < 1:
            raise InputError("power must be at least 1")
        out = self
        for _ in range(ell - 1):
            out = out.multiply(self, p)
        return out

    @staticmethod
    def linear_form(nvars: int, index: int, p: int) -> "OddPolynomial":
        exps = tuple(1 if u == index else 0 for u in range(nvars))
        return OddPolynomial.make(nvars, {exps: 1}, p)

    @classmethod
    def from_dict(cls, nvars: int, doc: dict, p: int) -> "OddPolynomial":
        terms = {}
        for key, c in doc.items():
            try:
                exps = tuple(int(s) for s in str(key).split(","))
            except ValueError as exc:
                raise InputError(f"polynomial key {key!r} is not a comma list of exponents") from exc
            terms[exps] = int(c)
        return cls.make(nvars, terms, p)

    def to_dict(self) -> dict:
        return {",".join(str(e) for e in exps): c for exps, c in self.terms}


def phi_embed(f: OddPolynomial, cx: CochainComplex) -> Cochain:
    """Substitute p-th powers of the odd dual variables into a cochain.

    The image consists of cocycles; that is checked and a failure aborts.
    """
    if cx.hom_dim != 1:
        raise InputError("p-th power embedding lands in the trivial-coefficient complex")
    if f.nvars != cx.algebra.dim_odd:
        raise InputError(
            f"polynomial has {f.nvars} variables, algebra has dim g_1 = {cx.algebra.dim_odd}"
        )
    p = cx.p
    if f.is_zero:
        return cx.zero_cochain(0)
    n = p * f.degree
    if n >= cx.nmax:
        raise InputError(f"embedded degree p*deg = {n} must be below nmax = {cx.nmax}")
    vec = np.zeros(cx.dims[n], dtype=np.int64)
    for exps, c in f.terms:
        mono = ((), tuple(p * e for e in exps))
        vec[cx.lambda_index[n][mono]] = c
    z = Cochain(cx, n, vec)
    if not z.boundary().is_zero():
        raise InternalConsistencyError("p-th power substitution produced a non-cocycle")
    return z


# -- coboundary test and annihilation probe -------------------------------------


def is_coboundary(cx: CochainComplex, z: Cochain) -> tuple[bool, np.ndarray | None]:
    """Whether a cocycle is a coboundary; returns a witness cochain vector."""
    if z.complex is not cx:
        raise InputError("cochain does not belong to this complex")
    n = z.degree
    if n < cx.nmax and not z.boundary().is_zero():
        raise PreconditionError("cochain is not a cocycle")
    if n == 0:
        return (z.is_zero(), np.zeros(cx.dims[0], dtype=np.int64) if z.is_zero() else None)
    mat = cx.d[n - 1]
    check_budget("dense elimination", mat.shape[0] * mat.shape[1], DENSE_CELL_LIMIT)
    w = solve(MatrixFp.from_sparse(mat, cx.p), z.vector)
    return (w is not None, w)


@dataclass(frozen=True)
class AnnihilatorProbeResult:
    found: bool
    ell: int | None
    lmax: int
    checked_degrees: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "ell": self.ell,
            "lmax": self.lmax,
            "checked_degrees": list(self.checked_degrees),
        }


def annihilator_probe(
    g: LieSuperAlgebra, M: SuperModule, f: OddPolynomial, lmax: int, nmax: int | None = None
) -> AnnihilatorProbeResult:
    """Smallest ell <= lmax with the class of phi(f^ell) cup id_M trivial.

    Iterates ell upward, embedding f^ell by p-th powers and testing the cup
    product with the identity for coboundedness in Ext(M, M).
    """
    if lmax < 1:
        raise InputError(f"lmax must be at least 1, got {lmax}")
    p = g.p
    if f.is_zero:
        return AnnihilatorProbeResult(True, 1, lmax, (0,))
    needed = p * f.degree * lmax + 1
    if nmax is None:
        nmax = needed
    elif nmax < needed:
        raise InputError(
            f"probe needs complexes up to degree {needed}, but nmax = {nmax} was requested"
        )
    ck = build_complex(g, None, None, nmax)
    cm = build_complex(g, M, M, nmax)
    ident = identity_cochain(cm)
    degrees = []
    for ell in range(1, lmax + 1):
        z = cup_multiply(phi_embed(f.power(ell, p), ck), ident)
        degrees.append(z.degree)
        ok, _ = is_coboundary(cm, z)
        if ok:
            return AnnihilatorProbeResult(True, ell, lmax, tuple(degrees))
    return AnnihilatorProbeResult(False, None, lmax, tuple(degrees))


# -- graded dimensions and the first-page dominance check ------------------------


def graded_ext_dims(
    gt: LieSuperAlgebra, Mt: GradedModule, Nt: GradedModule, nmax: int
) -> dict[tuple[int, int], int]:
    """Graded Ext dimensions keyed by (cohomological degree, internal degree)."""
    if gt.zdegrees is None:
        raise InputError("graded Ext dimensions need a Z-graded algebra")
    if not isinstance(Mt, GradedModule) or not isinstance(Nt, GradedModule):
        raise InputError("graded Ext dimensions need graded modules")
    cx = build_complex(
        gt, Mt.module, Nt.module, nmax, mdegrees=Mt.degrees, ndegrees=Nt.degrees
    )
    p = cx.p

    def blocks(n: int) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, dd in enumerate(cx.idegrees[n]):
            out.setdefault(dd, []).append(i)
        return out

    # The differential preserves internal degree (verified at build time), so
    # the rank of each block equals the rank of the column slice.
    block_ranks: list[dict[int, int]] = []
    for n in range(cx.nmax):
        csc = cx.d[n].tocsc()
        ranks = {}
        for dd, cols in blocks(n).items():
            ranks[dd] = _sparse_rank(csc[:, cols].tocsr(), p)
        block_ranks.append(ranks)

    table: dict[tuple[int, int], int] = {}
    for n in range(cx.nmax):
        counts: dict[int, int] = {}
        for dd in cx.idegrees[n]:
            counts[dd] = counts.get(dd, 0) + 1
        for dd, cnt in counts.items():
            r_out = block_ranks[n].get(dd, 0)
            r_in = block_ranks[n - 1].get(dd, 0) if n > 0 else 0
            h = cnt - r_out - r_in
            if h:
                table[(n, dd)] = h
    return table


def graded_table_records(table: dict[tuple[int, int], int]) -> list[dict]:
    return [
        {"n": n, "internal": dd, "dim": v}
        for (n, dd), v in sorted(table.items())
    ]


@dataclass(frozen=True)
class DominanceRow:
    n: int
    ext_dim: int
    e1_total: int

    @property
    def dominated(self) -> bool:
        return self.ext_dim <= self.e1_total

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ext_dim": self.ext_dim,
            "e1_total": self.e1_total,
            "dominated": self.dominated,
        }


@dataclass(frozen=True)
class DominanceReport:
    rows: tuple[DominanceRow, ...]
    table: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return all(r.dominated for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "graded_table": list(self.table),
        }


def e1_dominance_check(
    g: LieSuperAlgebra, M: SuperModule, N: SuperModule, S_M, S_N, nmax: int
) -> DominanceReport:
    """Compare Ext dimensions against the graded first-page totals per degree.

    The filtration spectral sequence makes each Ext group a subquotient of
    the graded Ext of the associated graded data, so the former's dimension
    can never exceed the latter's total over internal degrees.
    """
    from .modules import assoc_graded_module, standard_filtration

    fm = standard_filtration(g, M, S_M)
    fn = standard_filtration(g, N, S_N)
    mt = assoc_graded_module(g, M, fm)
    nt = assoc_graded_module(g, N, fn)
    gt = mt.module.algebra
    lhs = cohomology_dims(build_complex(g, M, N, nmax))
    table = graded_ext_dims(gt, mt, nt, nmax)
    totals = [0] * nmax
    for (n, _), v in table.items():
        if n < nmax:
            totals[n] += v
    rows = tuple(DominanceRow(n, lhs[n], totals[n]) for n in range(nmax))
    return DominanceReport(rows, tuple(graded_table_records(table)))
