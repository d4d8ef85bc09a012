"""Dualizing modules and machine certification of the Cohen-Macaulay property.

The pipeline for a vertex contraction of a Dynkin preprojective algebra:
starting from the injective cogenerator D(A), two rounds of cotilting
mutation with respect to the frozen-vertex injectives produce the candidate
dualizing module W.  A Certificate then checks (or refutes) by exact linear
algebra the three defining conditions:

  (i)   W is an Ext-maximal cotilting module over A,
  (ii)  the same holds over the opposite of End(W),
  (iii) A -> End(W) is an algebra isomorphism, exhibited by a bimodule
        generator h in Hom(DA, W) whose two pairing maps are bijective.

The module also provides the n-Gorenstein tests, the Cohen-Macaulay
membership test Ext^{1..d}(X, W) = 0, the comparison of CM membership with
d-th-syzygy membership on a deterministic sample corpus, base algebras of
algebras with dominant dimension at least two, and the combinatorial
classification triple (idim, fidim, domdim) of every contraction, computed
and predicted along independent routes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import json

import numpy as np

from .linalg import Field, Matrix, get_field
from .algebra import BasisElem, FDAlgebra
from .modules import (
    DEFAULT_BOUND,
    Approximation,
    ApproximationNotSurjective,
    DecompositionInconclusive,
    DimReport,
    DomDimTooSmall,
    FDModule,
    ModuleMap,
    _factor_poly,
    _indec_iso,
    _min_poly,
    cosyzygy,
    decompose,
    direct_sum,
    dominant_dim,
    dual_of_regular,
    ext_dim,
    hom_basis,
    hom_dim,
    idim_report,
    in_fac,
    injective_module,
    is_nth_syzygy,
    is_projective_module,
    is_selfinjective,
    kernel_of,
    pdim_report,
    pushout_extension,
    regular_module,
    right_approx,
    simple_module,
    syzygy,
    zero_module,
)
from .preprojective import DynkinSpec, contracted_algebra, frozen_split, type_a_reduction

DEFAULT_CHAR = 101
DEFAULT_SEED = 1729


class UndeterminedDimension(RuntimeError):
    """A dimension needed for a yes/no answer stayed unresolved at the bound."""


class NotNGorenstein(RuntimeError):
    pass


class NotCotilting(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# summand bookkeeping
# ---------------------------------------------------------------------------


def _iso_same(x: FDModule, y: FDModule) -> bool:
    if x is y:
        return True
    if x.dim != y.dim or x.dimension_vector() != y.dimension_vector():
        return False
    return _indec_iso(x, y)


def basic_summands(mods, rng=None) -> list[FDModule]:
    """Indecomposable summand classes of a list of modules, one
    representative each, sorted by (dim, dimension vector)."""
    pieces: list[FDModule] = []
    for m in mods:
        for p, _ in decompose(m, rng):
            pieces.append(p)
    pieces.sort(key=lambda p: (p.dim, p.dimension_vector()))
    out: list[FDModule] = []
    for p in pieces:
        if not any(_iso_same(p, q) for q in out):
            out.append(p)
    return out


def in_add(x: FDModule, parts: list[FDModule], rng=None) -> bool:
    """Is X a direct sum of copies of the given indecomposables?"""
    if x.dim == 0:
        return True
    return all(any(_iso_same(p, q) for q in parts) for p, _ in decompose(x, rng))


def _find_iso(x: FDModule, y: FDModule, rng, tries: int = 32) -> Matrix | None:
    """An invertible module map X -> Y, or None if none was found."""
    if x.dim != y.dim or x.dimension_vector() != y.dimension_vector():
        return None
    f = x.field
    if x.dim == 0:
        return f.zeros(0, 0)
    homs = hom_basis(x, y)
    if not homs:
        return None

    def ok(mat):
        return f.rank(mat) == x.dim

    for h in homs:
        if ok(h.mat):
            return h.mat
    stack = np.stack([h.mat for h in homs])
    for _ in range(tries):
        coeffs = f.random_matrix(1, len(homs), rng)[0]
        cand = f.reduce(np.tensordot(coeffs, stack, axes=(0, 0)))
        if ok(cand):
            return cand
    total = f.reduce(stack.sum(axis=0))
    if ok(total):
        return total
    return None


# ---------------------------------------------------------------------------
# injective coresolutions
# ---------------------------------------------------------------------------


def injective_coresolution_terms(m: FDModule, count: int) -> list[FDModule]:
    """The first `count` terms of the minimal injective coresolution of M.
    Stops early (returning fewer terms) once the coresolution ends."""
    terms = []
    cur = m
    for _ in range(count):
        if cur.dim == 0:
            break
        quot, _, env, _ = cosyzygy(cur)
        terms.append(env)
        cur = quot
    return terms


def module_dominant_dim(m: FDModule, bound: int = DEFAULT_BOUND) -> DimReport:
    """Number of leading projective terms of the minimal injective
    coresolution of M (the terms are injective by construction)."""
    cur = m
    for i in range(bound + 1):
        if cur.dim == 0:
            return DimReport.infinite(witness="injective coresolution terminates")
        quot, _, env, _ = cosyzygy(cur)
        if not is_projective_module(env):
            return DimReport.finite(i)
        cur = quot
    return DimReport.undetermined(bound)


# ---------------------------------------------------------------------------
# n-Gorenstein conditions
# ---------------------------------------------------------------------------


def n_gorenstein_profile(x, n: int, bound: int = DEFAULT_BOUND,
                         seed: int = DEFAULT_SEED) -> list[DimReport]:
    """pdim of the first n minimal-injective-coresolution terms of x,
    where x is an algebra (meaning its regular module) or any module.
    The list is shorter than n when the coresolution ends early."""
    target = regular_module(x) if isinstance(x, FDAlgebra) else x
    reports = []
    cur = target
    for _ in range(n):
        if cur.dim == 0:
            break
        quot, _, env, _ = cosyzygy(cur)
        reports.append(pdim_report(env, bound, seed))
        cur = quot
    return reports


def _gorenstein_test(x, n, slack, bound, seed) -> bool:
    for i, rep in enumerate(n_gorenstein_profile(x, n, bound, seed)):
        if rep.kind == "undetermined":
            raise UndeterminedDimension(
                f"pdim of coresolution term {i} unresolved within bound {bound}")
        if rep.is_infinite or rep.value > i + slack:
            return False
    return True


def is_n_gorenstein(x, n: int, bound: int = DEFAULT_BOUND,
                    seed: int = DEFAULT_SEED) -> bool:
    """pdim I^i <= i for the first n coresolution terms of x."""
    return _gorenstein_test(x, n, 0, bound, seed)


def is_quasi_n_gorenstein(x, n: int, bound: int = DEFAULT_BOUND,
                          seed: int = DEFAULT_SEED) -> bool:
    """pdim I^i <= i + 1 for the first n coresolution terms of x."""
    return _gorenstein_test(x, n, 1, bound, seed)


def gorenstein_cotilting(alg: FDAlgebra, n: int, bound: int = DEFAULT_BOUND,
                         seed: int = DEFAULT_SEED, rng=None) -> FDModule:
    """For an n-Gorenstein algebra, the canonical Ext-maximal cotilting
    module: the first n projective-resolution terms of D(A) together with
    the n-th syzygy of D(A), in basic form."""
    if not is_n_gorenstein(alg, n, bound, seed):
        raise NotNGorenstein(f"the algebra is not {n}-Gorenstein")
    cur = dual_of_regular(alg)
    raw = []
    for _ in range(n):
        if cur.dim == 0:
            break
        om, _, p, _ = syzygy(cur)
        raw.append(p)
        cur = om
    raw.append(cur)
    parts = basic_summands([m for m in raw if m.dim], rng)
    return direct_sum(parts) if parts else zero_module(alg)


# ---------------------------------------------------------------------------
# cotilting modules
# ---------------------------------------------------------------------------


def _cotilting_check(u: FDModule, bound: int, seed: int, rng):
    """(d, reason, parts): d is the injective dimension when u is
    cotilting and None otherwise; parts are the basic summands when they
    were computed along the way."""
    rep = idim_report(u, bound, seed)
    if rep.kind == "undetermined":
        raise UndeterminedDimension(
            f"injective dimension unresolved within bound {bound}")
    if rep.is_infinite:
        return None, "infinite injective dimension", None
    d = rep.value
    for i in range(1, d + 1):
        if ext_dim(u, u, i):
            return None, f"Ext^{i}(U, U) != 0", None
    parts = basic_summands([u], rng)
    usum = direct_sum(parts)
    usum._memo.setdefault("decompose", [(p, 1) for p in parts])
    cur = dual_of_regular(u.algebra)
    for _ in range(d + 1):
        if cur.dim == 0 or in_add(cur, parts, rng):
            return d, "", parts
        ap = right_approx(usum, cur, rng)
        if not ap.is_surjective():
            return None, ("the injective cogenerator is not resolved by "
                          "add(U): a minimal right approximation is not onto"), parts
        cur, _ = kernel_of(ap.map)
    return None, "no add(U)-coresolution of the injective cogenerator within d+1 steps", parts


def is_cotilting(u: FDModule, bound: int = DEFAULT_BOUND,
                 seed: int = DEFAULT_SEED, rng=None):
    """The injective dimension d when u is cotilting (self-orthogonal of
    finite injective dimension, resolving DA), else None."""
    d, _, _ = _cotilting_check(u, bound, seed, rng)
    return d


def _fac_maximal(parts: list[FDModule]):
    """Fac-criterion for Ext-maximality of a basic cotilting module with
    the given indecomposable summands: no summand may be a factor of
    (sums of copies of) the others."""
    for k, x in enumerate(parts):
        rest = [p for i, p in enumerate(parts) if i != k]
        others = direct_sum(rest) if rest else zero_module(x.algebra)
        if in_fac(x, others):
            return False, (f"the summand with dimension vector "
                           f"{x.dimension_vector()} is a factor of the others")
    return True, ""


def is_ext_maximal(u: FDModule, bound: int = DEFAULT_BOUND,
                   seed: int = DEFAULT_SEED, rng=None) -> bool:
    """Ext-maximality of a basic cotilting module (raises NotCotilting when
    the cotilting test fails).  Computed on the basic form of u."""
    d, reason, parts = _cotilting_check(u, bound, seed, rng)
    if d is None:
        raise NotCotilting(reason)
    ok, _ = _fac_maximal(parts)
    return ok


# ---------------------------------------------------------------------------
# cotilting mutation
# ---------------------------------------------------------------------------


@dataclass
class MutationStep:
    """One simultaneous mutation: the minimal right approximation of the
    whole complement by the kept part, with its kernel."""
    approx: Approximation
    kernel: FDModule
    kernel_parts: list[FDModule]

    @property
    def dims(self) -> tuple[int, int, int]:
        """(kernel, approximation source, approximated complement)."""
        return (self.kernel.dim, self.approx.source.dim, self.approx.target.dim)


def _mutate_once(keep_parts, comp_parts, rng):
    vsum = direct_sum(keep_parts)
    vsum._memo.setdefault("decompose", [(p, 1) for p in keep_parts])
    target = direct_sum(comp_parts)
    ap = right_approx(vsum, target, rng)
    if not ap.is_surjective():
        raise ApproximationNotSurjective(
            "minimal right approximation of the complement is not surjective")
    ker, _ = kernel_of(ap.map)
    kparts = basic_summands([ker], rng)
    new_parts = list(keep_parts)
    for p in kparts:
        if not any(_iso_same(p, q) for q in new_parts):
            new_parts.append(p)
    return new_parts, MutationStep(ap, ker, kparts)


def mutate_plus(u: FDModule, v: FDModule, rng=None) -> FDModule:
    """Mutation of the cotilting module u at its summand-closed part v:
    v stays, the complement is replaced by the kernel of its minimal right
    add(v)-approximation.  Result in basic form."""
    u_parts = basic_summands([u], rng)
    v_parts = basic_summands([v], rng)
    for p in v_parts:
        if not any(_iso_same(p, q) for q in u_parts):
            raise ValueError("v is not a summand-closed part of u")
    comp = [p for p in u_parts if not any(_iso_same(p, q) for q in v_parts)]
    if not comp:
        return direct_sum(u_parts)
    new_parts, _ = _mutate_once(v_parts, comp, rng)
    return direct_sum(new_parts)


# ---------------------------------------------------------------------------
# the dualizing candidate
# ---------------------------------------------------------------------------


@dataclass
class DualizingResult:
    algebra: FDAlgebra
    summands: list[FDModule]
    frozen_positions: tuple[int, ...]
    steps: list[MutationStep]
    spec: DynkinSpec | None = None
    subset: tuple[int, ...] = ()
    frozen: tuple[int, ...] = ()
    mutable: tuple[int, ...] = ()
    _module: FDModule | None = dc_field(default=None, repr=False)

    @property
    def module(self) -> FDModule:
        """The candidate itself; assembled from the summands on first use."""
        if self._module is None:
            self._module = direct_sum(self.summands)
            self._module._memo.setdefault(
                "decompose", [(p, 1) for p in self.summands])
        return self._module


def dualizing_from_frozen(alg: FDAlgebra, frozen_positions, rng=None) -> DualizingResult:
    """Two simultaneous cotilting mutations of the injective cogenerator,
    keeping the injectives at the given vertices of `alg` fixed."""
    fro = sorted(set(frozen_positions))
    if any(v < 1 or v > alg.n for v in fro):
        raise ValueError("frozen vertex out of range")
    keep = [injective_module(alg, v) for v in fro]
    cur = keep + [injective_module(alg, v) for v in range(1, alg.n + 1) if v not in fro]
    steps: list[MutationStep] = []
    for _ in range(2):
        comp = [p for p in cur if not any(_iso_same(p, q) for q in keep)]
        if not comp:
            break
        cur, step = _mutate_once(keep, comp, rng)
        steps.append(step)
    return DualizingResult(alg, cur, tuple(fro), steps)


def dualizing_pipeline(spec: DynkinSpec, subset, field: Field | None = None,
                       rng=None) -> DualizingResult:
    """The dualizing-module pipeline for a contraction of the preprojective
    algebra of the given Dynkin diagram at the given vertex subset."""
    f = field if field is not None else get_field(DEFAULT_CHAR)
    js = spec.validate_subset(subset)
    alg = contracted_algebra(spec, js, f)
    fs = frozen_split(spec, js)
    order = sorted(js)
    frozen_pos = [order.index(v) + 1 for v in sorted(fs.frozen)]
    res = dualizing_from_frozen(alg, frozen_pos, rng)
    res.spec = spec
    res.subset = tuple(order)
    res.frozen = tuple(sorted(fs.frozen))
    res.mutable = tuple(sorted(fs.mutable))
    return res


def four_term_dims(res: DualizingResult) -> tuple[int, int, int, int] | None:
    """Dimensions along 0 -> U -> I'' -> I' -> (mutated part of DA) -> 0,
    the exact sequence glued from the two mutation steps; None when there
    was nothing to mutate."""
    if len(res.steps) < 2:
        return None
    s1, s2 = res.steps[0], res.steps[1]
    return (s2.kernel.dim, s2.approx.source.dim, s1.approx.source.dim,
            s1.approx.target.dim)


def dualizing_candidate(spec: DynkinSpec, subset, field: Field | None = None,
                        rng=None) -> FDModule:
    return dualizing_pipeline(spec, subset, field, rng).module


# ---------------------------------------------------------------------------
# the endomorphism algebra of W
# ---------------------------------------------------------------------------


@dataclass
class _EndData:
    algebra: FDAlgebra
    module: FDModule
    full_mats: list[Matrix]     # one endomorphism matrix per basis element
    coords_inv: Matrix          # right-inverse: flat(endo) @ coords_inv = coefficients
    flat_basis: Matrix

    def coords(self, mat: Matrix) -> Matrix:
        f = self.algebra.field
        flat = mat.reshape(1, -1)
        c = f.reduce(f.matmul(flat, self.coords_inv))
        back = f.matmul(c, self.flat_basis)
        if not f.is_zero(f.reduce(back - flat)):
            raise ArithmeticError("endomorphism outside the computed basis span")
        return c[0]


def _filtration_degrees(f: Field, chain: list[Matrix]):
    """Adapted basis of a descending chain of row spaces: returns
    (degree, row) pairs, degree k rows completing chain[k] over chain[k+1].
    chain is indexed from 1 (chain[0] unused placeholder allowed)."""
    out = []
    top = len(chain) - 1
    acc_rows: list[Matrix] = []
    for k in range(top, 0, -1):
        red, rank, _ = f.rref(chain[k]) if chain[k].shape[0] else (chain[k], 0, [])
        for r in range(rank):
            row = red[r]
            if acc_rows:
                sol = f.solve_row(np.vstack(acc_rows), row)
            else:
                sol = None
            if sol is None:
                acc_rows.append(row)
                out.append((k, row))
    return out


def end_algebra_op(w, rng=None) -> tuple[FDAlgebra, FDModule]:
    """The endomorphism algebra of W with composition written left-to-right
    (matrix product order), which is the opposite of End(W) with standard
    composition, together with W as a right module over it.

    Accepts a module or a list of its indecomposable summands; requires the
    summands' endomorphism rings to be split local.
    """
    data = _end_algebra_data(w, rng)
    return data.algebra, data.module


def _end_algebra_data(w, rng=None) -> _EndData:
    parts = list(w) if isinstance(w, (list, tuple)) else basic_summands([w], rng)
    if not parts:
        raise ValueError("cannot form the endomorphism algebra of the zero module")
    f = parts[0].field
    dims = [p.dim for p in parts]
    offs = np.concatenate([[0], np.cumsum(dims)])
    total = int(offs[-1])
    m = len(parts)

    def embed(i, j, small):
        full = f.zeros(total, total)
        full[offs[i]:offs[i] + dims[i], offs[j]:offs[j] + dims[j]] = small
        return full

    # everything below works with the small block matrices; maps between
    # part i and part j are kept as flattened rows of length dims[i]*dims[j]
    hom_count = 0
    rad1: dict[tuple[int, int], Matrix] = {}
    for i in range(m):
        for j in range(m):
            homs = hom_basis(parts[i], parts[j])
            hom_count += len(homs)
            if i != j:
                if homs:
                    rad1[(i, j)] = np.vstack([h.mat.reshape(1, -1) for h in homs])
                continue
            cands = []
            for h in homs:
                factors = _factor_poly(f, _min_poly(f, h.mat))
                if len(factors) != 1 or len(factors[0][0]) != 2:
                    raise DecompositionInconclusive(
                        "a summand's endomorphism ring is not split local "
                        "over this base field")
                lam = -factors[0][0][0]
                if f.char:
                    lam = int(lam) % f.char
                small = f.reduce(h.mat - lam * f.eye(dims[i]))
                if not f.is_zero(small):
                    cands.append(small.reshape(1, -1))
            if cands:
                red, rank, _ = f.rref(np.vstack(cands))
                if rank:
                    rad1[(i, i)] = red[:rank]

    # powers of the radical, blockwise
    layers = [rad1]
    while True:
        prev = layers[-1]
        nxt: dict[tuple[int, int], Matrix] = {}
        any_elem = False
        for (i, t), mats in prev.items():
            left = mats.reshape(-1, dims[i], dims[t])
            for (t2, j), gens in rad1.items():
                if t2 != t:
                    continue
                right = gens.reshape(-1, dims[t], dims[j])
                prods = np.tensordot(left, right, axes=([2], [1]))
                flat = f.reduce(prods.transpose(0, 2, 1, 3).reshape(
                    left.shape[0] * right.shape[0], dims[i] * dims[j]))
                red, rank, _ = f.rref(flat)
                if not rank:
                    continue
                got = nxt.get((i, j))
                for r in range(rank):
                    row = red[r]
                    if got is not None and f.solve_row(got, row) is not None:
                        continue
                    got = (row.reshape(1, -1) if got is None
                           else np.vstack([got, row.reshape(1, -1)]))
                    any_elem = True
                if got is not None:
                    nxt[(i, j)] = got
        if not any_elem:
            break
        layers.append(nxt)

    # adapted basis with radical-layer degrees, blockwise
    rad_elems: list[tuple[int, int, int, Matrix]] = []  # (degree, i, j, small)
    for i in range(m):
        for j in range(m):
            width = dims[i] * dims[j]
            chain = [None]
            for lay in layers:
                mats = lay.get((i, j))
                chain.append(mats if mats is not None else f.zeros(0, width))
            for deg, row in _filtration_degrees(f, chain):
                rad_elems.append((deg, i, j, row.reshape(dims[i], dims[j])))
    rad_elems.sort(key=lambda t: (t[0], t[1], t[2]))

    basis = [BasisElem(i + 1, i + 1, 0, f"e{i + 1}") for i in range(m)]
    small_mats: list[tuple[int, int, Matrix]] = [(i, i, f.eye(dims[i]))
                                                 for i in range(m)]
    for idx, (deg, i, j, mat) in enumerate(rad_elems):
        basis.append(BasisElem(i + 1, j + 1, deg, f"w{idx + 1}"))
        small_mats.append((i, j, mat))
    if len(basis) != hom_count:
        raise ArithmeticError("endomorphism basis does not match Hom dimensions")
    dim_e = len(basis)
    full_mats = [embed(i, j, sm) for (i, j, sm) in small_mats]

    by_block: dict[tuple[int, int], list[int]] = {}
    for idx, (i, j, _) in enumerate(small_mats):
        by_block.setdefault((i, j), []).append(idx)
    block_flat: dict[tuple[int, int], Matrix] = {}
    block_inv: dict[tuple[int, int], Matrix] = {}
    for (i, j), idxs in by_block.items():
        flat = np.vstack([small_mats[idx][2].reshape(1, -1) for idx in idxs])
        inv = f.solve_matrix(flat, f.eye(len(idxs)))
        if inv is None:
            raise ArithmeticError("endomorphism basis is linearly dependent")
        block_flat[(i, j)] = flat
        block_inv[(i, j)] = inv

    def coords_small(i, j, mat):
        out = f.zeros(1, dim_e)
        flat = mat.reshape(1, -1)
        idxs = by_block.get((i, j))
        if idxs is None:
            if not f.is_zero(f.reduce(flat)):
                raise ArithmeticError("endomorphism outside the computed basis span")
            return out[0]
        c = f.reduce(f.matmul(flat, block_inv[(i, j)]))
        back = f.matmul(c, block_flat[(i, j)])
        if not f.is_zero(f.reduce(back - flat)):
            raise ArithmeticError("endomorphism outside the computed basis span")
        for pos, idx in enumerate(idxs):
            out[0, idx] = c[0, pos]
        return out[0]

    def raw_product(bi, bj):
        si, ti, mi = small_mats[bi]
        sj, tj, mj = small_mats[bj]
        if ti != sj:
            return f.zeros(1, dim_e)[0]
        return coords_small(si, tj, f.reduce(f.matmul(mi, mj)))

    # degree-1 elements complete rad over rad^2, so together with the
    # idempotents they generate
    gen_idx = [m + pos for pos, (deg, _, _, _) in enumerate(rad_elems)
               if deg == 1]

    flat_basis = np.vstack([mt.reshape(1, -1) for mt in full_mats])
    coords_inv = f.solve_matrix(flat_basis, f.eye(dim_e))
    if coords_inv is None:
        raise ArithmeticError("endomorphism basis is linearly dependent")

    eop = FDAlgebra(f, m, basis, raw_product,
                    vertex_labels=list(range(1, m + 1)),
                    generator_indices=gen_idx)
    module = FDModule(eop, [mt for mt in full_mats], label="W over End")
    if not module.verify():
        raise ArithmeticError("W is not a module over its endomorphism algebra")
    return _EndData(eop, module, full_mats, coords_inv, flat_basis)


def _end_module_pieces(end_data: _EndData, wb: FDModule) -> list[FDModule]:
    """W as a module over its endomorphism algebra, pre-split by vertex of
    the base algebra: endomorphisms commute with the idempotent actions, so
    each subspace W e_v is stable under all of them."""
    eop = end_data.algebra
    f = eop.field
    pieces = []
    covered = 0
    for v in range(wb.algebra.n):
        red, rank, pivots = f.rref(wb.act[v])
        if rank == 0:
            continue
        b = red[:rank]
        acts = [f.reduce(f.matmul(b, mt)[:, pivots]) for mt in end_data.full_mats]
        pieces.append(FDModule(eop, acts, label=f"W|v{v + 1}"))
        covered += rank
    if covered != wb.dim:
        raise ArithmeticError("vertex pieces do not exhaust the module")
    return pieces


# ---------------------------------------------------------------------------
# the certificate
# ---------------------------------------------------------------------------


def _serialize_matrix(mat: Matrix | None):
    if mat is None:
        return None
    out = []
    for row in mat:
        out.append([int(x) if isinstance(x, (int, np.integer)) else str(x)
                    for x in row])
    return out


@dataclass
class Certificate:
    algebra_info: dict
    dims: dict
    conditions: dict
    witness_h: Matrix | None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.conditions.get(k) is True for k in ("i", "ii", "iii"))

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra_info,
            "dims": dict(self.dims),
            "conditions": {k: self.conditions.get(k) for k in ("i", "ii", "iii")},
            "witness_h": _serialize_matrix(self.witness_h),
            "notes": list(self.notes),
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _permutation_equivalent(c1: np.ndarray, c2: np.ndarray) -> bool:
    """Is c1 == P c2 P^T for a simultaneous row/column permutation (or the
    same with c2 transposed)?"""
    import itertools

    n = c1.shape[0]
    if c2.shape[0] != n:
        return False

    def row_profile(c):
        return sorted(sorted(r) for r in c.tolist())

    for cand in (c2, c2.T):
        if row_profile(c1) != row_profile(cand):
            continue
        if sorted(np.diag(c1).tolist()) != sorted(np.diag(cand).tolist()):
            continue
        for perm in itertools.permutations(range(n)):
            p = list(perm)
            if np.array_equal(c1, cand[np.ix_(p, p)]):
                return True
    return False


def _std_injective_positions(w: FDModule) -> list[int] | None:
    """If w carries injective block tags covering it with each vertex of
    the algebra exactly once, return the vertex order; else None."""
    blocks = w.inj_blocks
    if not blocks:
        return None
    if sum(size for _, _, size in blocks) != w.dim:
        return None
    verts = [v for v, _, _ in blocks]
    if sorted(verts) != list(range(1, w.algebra.n + 1)):
        return None
    return verts


def _injective_cogenerator_iso(w: FDModule) -> Matrix | None:
    """For w a tagged direct sum of all indecomposable injectives (one per
    vertex), the permutation matrix realizing DA -> w in coordinates.

    Verified blockwise against freshly built indecomposable injectives, so
    the cogenerator itself is never materialized a second time.
    """
    verts = _std_injective_positions(w)
    if verts is None:
        return None
    alg = w.algebra
    f = alg.field
    blocks = sorted(w.inj_blocks, key=lambda b: b[1])
    sizes = {v: len(alg.basis_indices_by_target(v)) for v in range(1, alg.n + 1)}
    if any(sizes[v] != size for v, _, size in blocks):
        return None
    gens = list(range(alg.n)) + alg.generator_indices()
    # each w-block must carry exactly the action of I_v, and the action must
    # not leak between blocks
    for v, off, size in blocks:
        iv = injective_module(alg, v)
        for g in gens:
            if not f.is_zero(f.reduce(w.act[g][off:off + size, off:off + size]
                                      - iv.act[g])):
                return None
    for g in gens:
        m = w.act[g]
        for v, off, size in blocks:
            outside = f.reduce(m[off:off + size]).copy()
            outside[:, off:off + size] = 0
            if not f.is_zero(outside):
                return None
    # DA stacks the same injective blocks in vertex order
    da_off = {}
    pos = 0
    for v in range(1, alg.n + 1):
        da_off[v] = pos
        pos += sizes[v]
    h = f.zeros(alg.dim, w.dim)
    for v, off, size in blocks:
        for s in range(size):
            h[da_off[v] + s, off + s] = f.one
    return h


def _injective_summandwise_iso(alg: FDAlgebra, parts: list[FDModule]) -> Matrix | None:
    """Like the cogenerator check, but against a summand list, so the sum
    itself is never assembled."""
    f = alg.field
    if len(parts) != alg.n:
        return None
    gens = list(range(alg.n)) + alg.generator_indices()
    sizes = {v: len(alg.basis_indices_by_target(v)) for v in range(1, alg.n + 1)}
    seen: set[int] = set()
    order: list[tuple[int, int]] = []  # (vertex, part offset in the sum)
    pos = 0
    for p in parts:
        blocks = p.inj_blocks
        if not blocks or len(blocks) != 1:
            return None
        v, off, size = blocks[0]
        if off != 0 or size != p.dim or v in seen or sizes.get(v) != p.dim:
            return None
        iv = injective_module(alg, v)
        for g in gens:
            if not f.is_zero(f.reduce(p.act[g] - iv.act[g])):
                return None
        seen.add(v)
        order.append((v, pos))
        pos += p.dim
    if seen != set(range(1, alg.n + 1)):
        return None
    da_off = {}
    at = 0
    for v in range(1, alg.n + 1):
        da_off[v] = at
        at += sizes[v]
    h = f.zeros(alg.dim, pos)
    for v, off in order:
        for s in range(sizes[v]):
            h[da_off[v] + s, off + s] = f.one
    return h


def certify_dualizing(alg: FDAlgebra, w: FDModule | None,
                      bound: int = DEFAULT_BOUND,
                      seed: int = DEFAULT_SEED, rng=None,
                      summands: list[FDModule] | None = None,
                      full_fac_limit: int = 60,
                      pair_check_limit: int = 60) -> Certificate:
    """Certify or refute that w is a dualizing module for alg.

    Checks the three conditions independently; every refutation is recorded
    with a reason in the notes.  Failures of (iii) are reported as definitive
    only when the dimension pre-screen or a Cartan-data comparison rules an
    isomorphism out; an unresolved witness search raises instead.

    w may be None when the summands are given, in which case the direct sum
    is never assembled along the fast path.
    """
    if w is None and summands is None:
        raise ValueError("provide the candidate module or its summands")
    f = alg.field
    rng = np.random.default_rng(seed) if rng is None else rng
    notes: list[str] = []
    conditions: dict = {"i": None, "ii": None, "iii": None}
    info = {"dim": alg.dim, "vertices": list(alg.vertex_labels), "char": f.char}

    # -- the selfinjective shortcut: W is the injective cogenerator --------
    if is_selfinjective(alg):
        if summands is not None:
            h = _injective_summandwise_iso(alg, list(summands))
        else:
            h = _injective_cogenerator_iso(w)
        if h is not None:
            idim_w = DimReport.finite(0)
            conditions = {"i": True, "ii": True, "iii": True}
            notes.append(
                "selfinjective algebra with W the injective cogenerator: "
                "W is projective-injective, so it is cotilting of injective "
                "dimension 0 on both sides, no indecomposable projective "
                "summand can split off a quotient of the complement "
                "(Ext-maximality), and the verified intertwining h realizes "
                "the canonical isomorphism onto End(W)")
            if alg.dim <= full_fac_limit:
                parts = [injective_module(alg, v) for v in range(1, alg.n + 1)]
                ok, why = _fac_maximal(parts)
                if not ok:
                    conditions["i"] = False
                    notes.append(f"(i) Fac re-check failed unexpectedly: {why}")
                else:
                    notes.append("(i) Fac criterion additionally verified")
            return Certificate(info, {"idim_w": str(idim_w)}, conditions, h, notes)

    if summands is None:
        parts = basic_summands([w], None)
    else:
        parts = list(summands)
    wb = direct_sum(parts)
    wb._memo.setdefault("decompose", [(p, 1) for p in parts])
    if w is not None and wb.dim != w.dim:
        notes.append(f"input reduced to basic form ({w.dim} -> {wb.dim})")
    dims = {}

    # -- condition (i): Ext-maximal cotilting over alg ---------------------
    d, reason, _ = _cotilting_check(wb, bound, seed, rng)
    if d is None:
        conditions["i"] = False
        dims["idim_w"] = str(idim_report(wb, bound, seed))
        notes.append(f"(i) fails: not cotilting: {reason}")
    else:
        dims["idim_w"] = str(DimReport.finite(d))
        ok, why = _fac_maximal(parts)
        conditions["i"] = ok
        if not ok:
            notes.append(f"(i) fails: not Ext-maximal: {why}")

    # -- condition (ii): the same over the opposite endomorphism side ------
    end_data = _end_algebra_data(parts, rng)
    e_parts = basic_summands(_end_module_pieces(end_data, wb), None)
    web = direct_sum(e_parts)
    web._memo.setdefault("decompose", [(p, 1) for p in e_parts])
    d2, reason2, _ = _cotilting_check(web, bound, seed, rng)
    if d2 is None:
        conditions["ii"] = False
        dims["idim_w_endside"] = str(idim_report(web, bound, seed))
        notes.append(f"(ii) fails: not cotilting on the endomorphism side: {reason2}")
    else:
        dims["idim_w_endside"] = str(DimReport.finite(d2))
        ok2, why2 = _fac_maximal(e_parts)
        conditions["ii"] = ok2
        if not ok2:
            notes.append(f"(ii) fails: not Ext-maximal on the endomorphism side: {why2}")

    # -- condition (iii): A -> End(W) isomorphism via a pairing witness ----
    da = dual_of_regular(alg)
    dim_end_w = end_data.algebra.dim
    dim_mixed = hom_dim(da, wb)
    if not (alg.dim == dim_end_w == dim_mixed):
        conditions["iii"] = False
        notes.append(
            f"(iii) fails definitively: dim A = {alg.dim}, dim End(W) = "
            f"{dim_end_w}, dim Hom(DA, W) = {dim_mixed} are not all equal")
        witness = None
    else:
        witness = _condition_iii(alg, da, wb, end_data, rng, notes, conditions,
                                 pair_check_limit)

    return Certificate(info, dims, conditions, witness, notes)


def _condition_iii(alg, da, wb, end_data, rng, notes, conditions,
                   pair_check_limit) -> Matrix | None:
    f = alg.field
    k = alg.dim
    hom_mixed = hom_basis(da, wb)
    end_da = hom_basis(da, da)
    if len(hom_mixed) != k or len(end_da) != k:
        conditions["iii"] = False
        notes.append("(iii) fails definitively: Hom-space dimensions changed "
                     "under recomputation")
        return None
    flat_h = np.vstack([h.mat.reshape(1, -1) for h in hom_mixed])
    inv_h = f.solve_matrix(flat_h, f.eye(k))
    stack_h = np.stack([h.mat for h in hom_mixed])
    stack_g = np.stack([g.mat for g in end_da])
    stack_f = np.stack(end_data.full_mats)

    def mixed_coords_rows(mats3):
        """Coordinates of a stack of maps DA -> W over the hom_mixed basis."""
        flat = f.reduce(mats3.reshape(mats3.shape[0], -1))
        c = f.reduce(f.matmul(flat, inv_h))
        back = f.matmul(c, flat_h)
        if not f.is_zero(f.reduce(back - flat)):
            raise ArithmeticError("map outside Hom(DA, W)")
        return c

    def pairings(hmat):
        lrows = mixed_coords_rows(np.tensordot(stack_g, hmat, axes=([2], [0])))
        if f.rank(lrows) != k:
            return None
        rrows = mixed_coords_rows(
            np.tensordot(hmat, stack_f, axes=([1], [1])).transpose(1, 0, 2))
        if f.rank(rrows) != k:
            return None
        return lrows, rrows

    def candidates():
        for _ in range(64):
            coeffs = f.random_matrix(1, k, rng)[0]
            yield f.reduce(np.tensordot(coeffs, stack_h, axes=(0, 0)))
        for hmap in hom_mixed:
            yield hmap.mat
        cap = 0
        for i in range(k):
            for j in range(i + 1, k):
                yield f.reduce(hom_mixed[i].mat + hom_mixed[j].mat)
                cap += 1
                if cap >= 600:
                    break
            if cap >= 600:
                break
        yield f.reduce(stack_h.sum(axis=0))

    found = None
    for hmat in candidates():
        pr = pairings(hmat)
        if pr is not None:
            found = (hmat, pr)
            break
    if found is None:
        ca = alg.cartan_matrix()
        ce = end_data.algebra.cartan_matrix()
        if not _permutation_equivalent(ca, ce):
            conditions["iii"] = False
            notes.append(
                "(iii) fails definitively: no bijective pairing found and the "
                "Cartan matrices of A and End(W) are not permutation-equivalent, "
                f"A: {ca.tolist()} vs End(W): {ce.tolist()}")
            return None
        raise RuntimeError(
            "condition (iii) could not be certified or refuted: dimensions "
            "and Cartan data agree but no bijective pairing witness was found")

    hmat, (lrows, rrows) = found
    # induced map End(W) -> End(DA): g maps to the unique f with h.g = f.h;
    # in coordinates C @ lrows = rrows
    ct = f.solve_matrix(lrows.T, rrows.T)
    if ct is None:
        raise ArithmeticError("pairing solve failed despite full rank")
    c_mat = ct.T
    if f.rank(c_mat) != k:
        raise ArithmeticError("induced endomorphism map is not bijective")
    phi_stack = f.reduce(np.tensordot(c_mat, stack_g, axes=([1], [0])))
    # unital: the identity of End(W) is the sum of the block idempotents
    m_blocks = end_data.algebra.n
    ident = f.reduce(phi_stack[:m_blocks].sum(axis=0))
    if not f.is_zero(f.reduce(ident - f.eye(da.dim))):
        raise ArithmeticError("induced map is not unital")
    # intertwining, which also pins down uniqueness: h.F_j == phi_j.h
    lhs_all = np.tensordot(hmat, stack_f, axes=([1], [1])).transpose(1, 0, 2)
    rhs_all = np.tensordot(phi_stack, hmat, axes=([2], [0]))
    if not f.is_zero(f.reduce(lhs_all - rhs_all)):
        raise ArithmeticError("induced map fails its defining relation")
    # multiplicativity: the relation holds for every basis element, hence by
    # linearity for every x in End(W); End(DA) is closed under composition,
    # and the full-rank left pairing makes X -> X.h injective on End(DA), so
    # phi(xy).h = h.x.y = phi(x).phi(y).h forces phi(xy) = phi(x).phi(y)
    def check_pair(a, b):
        prod = f.matmul(end_data.full_mats[a], end_data.full_mats[b])
        coords = end_data.coords(prod)
        lhs = f.reduce(np.tensordot(coords, phi_stack, axes=(0, 0)))
        rhs = f.matmul(phi_stack[a], phi_stack[b])
        if not f.is_zero(f.reduce(lhs - rhs)):
            raise ArithmeticError("induced map is not multiplicative")

    if k <= pair_check_limit:
        for a in range(k):
            for b in range(k):
                check_pair(a, b)
        notes.append("(iii) multiplicativity additionally verified on all "
                     "basis pairs")
    else:
        for _ in range(12):
            check_pair(int(rng.integers(0, k)), int(rng.integers(0, k)))
        notes.append("(iii) multiplicativity follows from the verified "
                     "defining relation, linearity, closure of End(DA) under "
                     "composition and injectivity of the full-rank left "
                     "pairing; additionally spot-checked on 12 random basis "
                     "pairs")
    conditions["iii"] = True
    notes.append(
        "(iii) witness h found: both pairings bijective; induced map "
        "End(W) -> End(DA) verified unital, bijective, multiplicative")
    return hmat


# ---------------------------------------------------------------------------
# Cohen-Macaulay membership and the syzygy comparison
# ---------------------------------------------------------------------------


def in_cm(x: FDModule, w: FDModule, d: int | None = None,
          bound: int = DEFAULT_BOUND, seed: int = DEFAULT_SEED) -> bool:
    """Membership in the Cohen-Macaulay category of w:
    Ext^i(x, w) = 0 for 1 <= i <= idim w."""
    if d is None:
        rep = idim_report(w, bound, seed)
        if rep.kind == "undetermined":
            raise UndeterminedDimension("idim of the dualizing module unresolved")
        if rep.is_infinite:
            raise ValueError("the dualizing module must have finite injective dimension")
        d = rep.value
    return all(ext_dim(x, w, i) == 0 for i in range(1, d + 1))


@dataclass
class SyzygyCMEntry:
    label: str
    dim: int
    cm: bool
    nth_syzygy: bool

    @property
    def agree(self) -> bool:
        return self.cm == self.nth_syzygy


@dataclass
class SyzygyCMReport:
    d: int
    entries: list[SyzygyCMEntry]

    @property
    def all_agree(self) -> bool:
        return all(e.agree for e in self.entries)

    @property
    def disagreements(self) -> list[SyzygyCMEntry]:
        return [e for e in self.entries if not e.agree]


def _default_sample(alg: FDAlgebra, w: FDModule, rng, depth: int, dim_cap: int):
    sample: list[tuple[str, FDModule]] = []
    for v in range(1, alg.n + 1):
        s = simple_module(alg, v)
        sample.append((f"S{v}", s))
        cur = s
        for k in range(1, depth + 1):
            cur, _, _, _ = syzygy(cur)
            if cur.dim == 0:
                break
            sample.append((f"syz^{k}(S{v})", cur))
    for i, p in enumerate(basic_summands([w], None)):
        sample.append((f"W_{i + 1}", p))
    for i, p in enumerate(basic_summands([dual_of_regular(alg)], None)):
        sample.append((f"I_{i + 1}", p))
    # random middle terms of extensions between small sample members
    smalls = [(lb, m) for lb, m in sample if 0 < m.dim <= dim_cap // 2]
    for t in range(min(6, len(smalls))):
        lx, x = smalls[int(rng.integers(len(smalls)))]
        ly, y = smalls[int(rng.integers(len(smalls)))]
        om, incl, _, _ = syzygy(x)
        if om.dim == 0:
            continue
        homs = hom_basis(om, y)
        if not homs:
            continue
        coeffs = alg.field.random_matrix(1, len(homs), rng)[0]
        mat = alg.field.reduce(
            np.tensordot(coeffs, np.stack([h.mat for h in homs]), axes=(0, 0)))
        ext, _ = pushout_extension(incl, ModuleMap(om, y, mat))
        if 0 < ext.dim <= dim_cap:
            sample.append((f"ext({ly},{lx})#{t}", ext))
    return sample


def check_syzygy_cm_equality(alg: FDAlgebra, w: FDModule, d: int,
                             sample=None, seed: int = 7919,
                             depth: int = 4, dim_cap: int = 120) -> SyzygyCMReport:
    """Compare membership in the Cohen-Macaulay category of w with being a
    d-th syzygy, over a deterministic sample corpus."""
    rng = np.random.default_rng(seed)
    if sample is None:
        sample = _default_sample(alg, w, rng, depth, dim_cap)
    entries = []
    for label, x in sample:
        entries.append(SyzygyCMEntry(label, x.dim, in_cm(x, w, d),
                                     is_nth_syzygy(x, d)))
    return SyzygyCMReport(d, entries)


# ---------------------------------------------------------------------------
# base algebra
# ---------------------------------------------------------------------------


def base_algebra(alg: FDAlgebra, bound: int = DEFAULT_BOUND) -> FDAlgebra:
    """The corner of alg at the vertices whose indecomposable injective is
    projective; requires dominant dimension at least 2."""
    if is_selfinjective(alg):
        return alg
    dd = dominant_dim(alg, bound)
    if dd.kind == "undetermined" or (dd.is_finite and dd.value < 2):
        raise DomDimTooSmall(f"dominant dimension {dd} is below 2")
    verts = [v for v in range(1, alg.n + 1)
             if is_projective_module(injective_module(alg, v))]
    if not verts:
        raise DomDimTooSmall("no projective-injective modules found")
    return alg.contract(verts)


# ---------------------------------------------------------------------------
# the classification triple
# ---------------------------------------------------------------------------


def _fin(v: int) -> DimReport:
    return DimReport.finite(v)


def predicted_triple(spec: DynkinSpec, subset) -> tuple[DimReport, DimReport, DimReport]:
    """(idim, fidim, domdim) of the contraction, predicted from the
    combinatorics of (diagram, subset, involution) alone."""
    js = spec.validate_subset(subset)
    if spec.family == "A":
        red = type_a_reduction(spec, js)
        if red is not None and red[0].rank < spec.rank:
            return predicted_triple(red[0], red[1])
    n = spec.rank
    iota_j = spec.involution_image(js)
    fs = frozen_split(spec, js)
    fidim = _fin(0) if fs.frozen == js else _fin(2)
    dom2 = spec.involution_image(fs.frozen) == fs.frozen

    if spec.family == "D" and n % 2 == 0:
        return (_fin(0), _fin(0), DimReport.infinite())
    if spec.family == "E" and n in (7, 8):
        return (_fin(0), _fin(0), DimReport.infinite())
    if spec.family == "D":
        if js in ({1}, {2}):
            return (_fin(0), _fin(0), DimReport.infinite())
        hits = len({1, 2} & js)
        if hits in (0, 2):
            return (_fin(0), _fin(0), DimReport.infinite())
        dom = _fin(2) if dom2 else _fin(0)
        return (DimReport.infinite(), fidim, dom)
    if spec.family == "E":
        if js in ({1}, {5}):
            return (_fin(0), _fin(0), DimReport.infinite())
        if iota_j == js:
            return (_fin(0), _fin(0), DimReport.infinite())
        dom = _fin(2) if dom2 else _fin(0)
        return (DimReport.infinite(), fidim, dom)
    # type A, impartial after the reduction above
    if iota_j == js:
        return (_fin(0), _fin(0), DimReport.infinite())
    one_sided = all(2 * v <= n + 1 for v in js) or all(2 * v >= n + 1 for v in js)
    idim = _fin(2) if one_sided else DimReport.infinite()
    dom = _fin(2) if dom2 else _fin(0)
    return (idim, fidim, dom)


def is_counterexample_shape(spec: DynkinSpec, subset) -> bool:
    """The combinatorial shape equivalent to the triple (inf, 2, 2):
    J = K + L with K the frozen part, K nonempty and involution-stable but
    not the single middle vertex of an odd-rank A diagram, L nonempty, and
    for each connected component C of the diagram minus K, at least one of
    C and iota(C) misses L."""
    js = spec.validate_subset(subset)
    fs = frozen_split(spec, js)
    k_set, l_set = fs.frozen, fs.mutable
    if not k_set or not l_set:
        return False
    if spec.involution_image(k_set) != k_set:
        return False
    if (spec.family == "A" and spec.rank % 2 == 1
            and k_set == {(spec.rank + 1) // 2}):
        return False
    remaining = set(range(1, spec.rank + 1)) - k_set
    seen: set[int] = set()
    for start in sorted(remaining):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in spec.neighbors(v):
                if u in remaining and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        if comp & l_set and spec.involution_image(comp) & l_set:
            return False
    return True


@dataclass
class ClassifyOutcome:
    spec: DynkinSpec
    subset: tuple[int, ...]
    predicted: tuple[DimReport, DimReport, DimReport]
    computed: tuple[DimReport, DimReport, DimReport]
    certificate: Certificate | None
    red_flags: list[str]

    @property
    def match(self) -> bool:
        return not self.red_flags

    def triple_str(self, which="computed") -> str:
        trip = self.computed if which == "computed" else self.predicted
        return "(" + ", ".join(str(t) for t in trip) + ")"


def _reports_equal(a: DimReport, b: DimReport) -> bool:
    if a.kind != b.kind:
        return False
    if a.kind == "finite":
        return a.value == b.value
    return a.kind == "infinite"


def classify_dynkin(spec: DynkinSpec, subset, field: Field | None = None,
                    bound: int = DEFAULT_BOUND, seed: int = DEFAULT_SEED,
                    certify: bool = True) -> ClassifyOutcome:
    """Predicted and computed (idim, fidim, domdim) for the contraction of
    the preprojective algebra of `spec` at `subset`.

    The computed finitistic dimension is the injective dimension of the
    certified dualizing module (never an enumeration); when certification
    fails it is reported as Undetermined and flagged.
    """
    from .modules import algebra_idim

    pred = predicted_triple(spec, subset)
    pipe = dualizing_pipeline(spec, subset, field)
    alg = pipe.algebra
    if is_selfinjective(alg):
        idim_a = DimReport.finite(0)
        dom = DimReport.infinite(witness="selfinjective")
    else:
        idim_a = algebra_idim(alg, bound, seed)
        dom = dominant_dim(alg, bound)
    cert = None
    red: list[str] = []
    if certify:
        cert = certify_dualizing(alg, None, bound=bound, seed=seed,
                                 summands=pipe.summands)
        if cert.passed:
            fid_str = cert.dims.get("idim_w", "")
            fid = (DimReport.finite(int(fid_str)) if fid_str.isdigit()
                   else DimReport.infinite() if fid_str == "inf"
                   else DimReport.undetermined(bound))
        else:
            fid = DimReport.undetermined(bound)
            red.append("certification failed: " + "; ".join(cert.notes))
    else:
        fid = idim_report(pipe.module, bound, seed)
    computed = (idim_a, fid, dom)
    for name, p, c in zip(("idim", "fidim", "domdim"), pred, computed):
        if not _reports_equal(p, c):
            red.append(f"{name}: predicted {p}, computed {c}")
    return ClassifyOutcome(spec, pipe.subset, pred, computed, cert, red)
