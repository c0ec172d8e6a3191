"""Hearts of cotorsion pairs, in two presentations.

For a cotorsion pair (U, V) with U rigid, the heart is the ideal quotient
H/U where H = CoCone(U, U).  The engine carries the heart both as a
quotient category (hom spaces modulo morphisms factoring through U) and as
a module category over the stable endomorphism algebra of G = the sum of
the U-members, via X |-> Ext^1(G, X).  The two are bridged by dimension
assertions; epi/mono/kernel/cokernel questions are answered in the module
model where they are plain linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import (
    AlgebraError,
    IndecSet,
    Rep,
    RepMap,
    coords_in_basis,
    decompose,
    direct_sum,
    map_from_coords,
    zero_rep,
)
from .cotorsion import CotorsionPair, Subcategory, cocone_objects, is_rigid
from .homology import (
    Conflation,
    Ext1,
    conflation_from_defl,
    factors_through,
    homs,
    pullback,
    pullback_conflation,
    pushout_conflation,
    syzygy,
)


def _solve_in_homs(basis: list[RepMap], target: RepMap, p: int) -> RepMap | None:
    """Write `target` as a combination of `basis`, returned as a RepMap."""
    if not basis:
        return RepMap.zero(target.source, target.target) if target.is_zero() else None
    flat = np.stack([b.flat() for b in basis], axis=1)
    sol = la.solve(flat, target.flat().reshape(-1, 1), p)
    if sol is None:
        return None
    return map_from_coords(basis, sol[:, 0])


def solve_through(f: RepMap, g: RepMap) -> RepMap | None:
    """h with g o h = f, if one exists (f: X->Z, g: Y->Z)."""
    basis = homs(f.source, g.source)
    p = f.source.algebra.p
    if not basis:
        return RepMap.zero(f.source, g.source) if f.is_zero() else None
    flat = np.stack([g.compose(b).flat() for b in basis], axis=1)
    sol = la.solve(flat, f.flat().reshape(-1, 1), p)
    if sol is None:
        return None
    return map_from_coords(basis, sol[:, 0])


def solve_extend(f: RepMap, g: RepMap) -> RepMap | None:
    """h with h o g = f, if one exists (g: X->Y, f: X->Z)."""
    basis = homs(g.target, f.target)
    p = f.source.algebra.p
    if not basis:
        return RepMap.zero(g.target, f.target) if f.is_zero() else None
    flat = np.stack([b.compose(g).flat() for b in basis], axis=1)
    sol = la.solve(flat, f.flat().reshape(-1, 1), p)
    if sol is None:
        return None
    return map_from_coords(basis, sol[:, 0])


# ---------------------------------------------------------------------------
# Quotient categories.


class QuotientCategory:
    """An additive category with hom spaces Hom_B(X, Y) / [ideal](X, Y)."""

    def __init__(self, objects: list[Rep], ideal: list[Rep]):
        self.objects = list(objects)
        self.ideal = list(ideal)
        self.p = objects[0].algebra.p if objects else ideal[0].algebra.p
        self._hom_cache: dict = {}

    def _hom_data(self, x: Rep, y: Rep):
        """(full basis, quotient map coords->quotient coords, representatives)."""
        key = (id(x), id(y))
        got = self._hom_cache.get(key)
        if got is not None:
            return got
        basis = homs(x, y)
        n = len(basis)
        cols = []
        for t in self.ideal:
            for u in homs(x, t):
                for v in homs(t, y):
                    c = coords_in_basis(basis, v.compose(u), self.p)
                    if c is None:
                        raise AlgebraError("ideal composite outside hom space")
                    cols.append(c)
        img = np.stack(cols, axis=1) if cols else la.zeros(n, 0)
        qmap = la.quotient_map(img, n, self.p)
        # representatives: basis maps whose classes form a quotient basis
        reps = []
        chosen = la.zeros(qmap.shape[0], 0)
        for i, b in enumerate(basis):
            cls = qmap[:, i : i + 1]
            trial = np.concatenate([chosen, cls], axis=1)
            if la.rank(trial, self.p) > chosen.shape[1]:
                chosen = trial
                reps.append(b)
            if chosen.shape[1] == qmap.shape[0]:
                break
        data = (basis, qmap, reps)
        self._hom_cache[key] = data
        return data

    def qdim(self, x: Rep, y: Rep) -> int:
        return self._hom_data(x, y)[1].shape[0]

    def qcoords(self, f: RepMap) -> np.ndarray:
        basis, qmap, _ = self._hom_data(f.source, f.target)
        c = coords_in_basis(basis, f, self.p)
        if c is None:
            raise AlgebraError("morphism outside hom space")
        return la.matmul(qmap, c.reshape(-1, 1), self.p)[:, 0]

    def is_ideal(self, f: RepMap) -> bool:
        return not self.qcoords(f).any()

    def qbasis(self, x: Rep, y: Rep) -> list[RepMap]:
        """Representative morphisms whose classes form a basis."""
        return self._hom_data(x, y)[2]

    def equal(self, f: RepMap, g: RepMap) -> bool:
        return self.is_ideal(f.sub(g))

    def invertible(self, f: RepMap) -> tuple[bool, RepMap | None]:
        """Is f invertible modulo the ideal; returns a two-sided quasi-inverse."""
        x, y = f.source, f.target
        cand = homs(y, x)
        if not cand:
            ok = self.qdim(x, x) == 0 and self.qdim(y, y) == 0
            return ok, (RepMap.zero(y, x) if ok else None)
        idx = RepMap.identity(x)
        idy = RepMap.identity(y)
        cols = []
        for b in cand:
            cols.append(
                np.concatenate([self.qcoords(b.compose(f)), self.qcoords(f.compose(b))])
            )
        mat = np.stack(cols, axis=1)
        rhs = np.concatenate([self.qcoords(idx), self.qcoords(idy)]).reshape(-1, 1)
        sol = la.solve(mat, rhs, self.p)
        if sol is None:
            return False, None
        return True, map_from_coords(cand, sol[:, 0])

    def is_zero_object(self, x: Rep) -> bool:
        return not self.qcoords(RepMap.identity(x)).any()

    def nonzero_objects(self) -> list[Rep]:
        return [x for x in self.objects if not self.is_zero_object(x)]


# ---------------------------------------------------------------------------
# Gabriel quivers of quotient categories, DOT export, graph isomorphism.


@dataclass
class GabrielQuiver:
    nodes: tuple[str, ...]
    arrows: dict = field(default_factory=dict)  # (src, tgt) -> multiplicity

    def to_dot(self, title: str = "quiver") -> str:
        lines = [f'digraph "{title}" {{']
        for n in self.nodes:
            lines.append(f'  "{n}";')
        for (s, t), k in sorted(self.arrows.items()):
            for _ in range(k):
                lines.append(f'  "{s}" -> "{t}";')
        lines.append("}")
        return "\n".join(lines)


def _local_radical(qc: QuotientCategory, x: Rep) -> list[RepMap]:
    """Radical of End(x)/[ideal] via the trace form on the regular representation."""
    from .algebra import _radical_of_span

    reps = qc.qbasis(x, x)
    if not reps:
        return []
    d = len(reps)
    # change of basis: quotient coordinates of the chosen representatives
    bmat = np.stack([qc.qcoords(r) for r in reps], axis=1)
    binv = la.inv(bmat, qc.p)
    if binv is None:
        raise AlgebraError("quotient basis representatives are dependent")
    regular = []
    for r in reps:
        cols = np.stack([qc.qcoords(r.compose(s)) for s in reps], axis=1)
        regular.append(la.matmul(binv, cols, qc.p))
    radc = _radical_of_span(regular, qc.p)
    return [map_from_coords(reps, radc[:, j]) for j in range(radc.shape[1])]


def gabriel_quiver(qc: QuotientCategory) -> GabrielQuiver:
    """Quiver of the quotient category on its nonzero objects.

    Arrows X -> Y counted as dim rad(X,Y)/rad^2(X,Y), where rad(X,Y) is the
    whole quotient hom space for X != Y and the non-invertible classes for
    X = Y.
    """
    objs = qc.nonzero_objects()
    rad_basis: dict = {}
    for x in objs:
        for y in objs:
            if x is y:
                rad_basis[(id(x), id(y))] = _local_radical(qc, x)
            else:
                rad_basis[(id(x), id(y))] = qc.qbasis(x, y)
    arrows = {}
    for x in objs:
        for y in objs:
            basis = rad_basis[(id(x), id(y))]
            if not basis:
                continue
            span_cols = [qc.qcoords(b) for b in basis]
            sq_cols = []
            for t in objs:
                for f in rad_basis[(id(x), id(t))]:
                    for g in rad_basis[(id(t), id(y))]:
                        sq_cols.append(qc.qcoords(g.compose(f)))
            span = np.stack(span_cols, axis=1)
            sq = np.stack(sq_cols, axis=1) if sq_cols else la.zeros(span.shape[0], 0)
            k = la.rank(span, qc.p) - la.rank(sq, qc.p)
            if k > 0:
                arrows[(x.name, y.name)] = k
    return GabrielQuiver(tuple(o.name for o in objs), arrows)


def quivers_isomorphic(q1: GabrielQuiver, q2: GabrielQuiver) -> bool:
    """Brute-force digraph isomorphism with arrow multiplicities."""
    import itertools

    if len(q1.nodes) != len(q2.nodes):
        return False
    n2 = list(q2.nodes)
    for perm in itertools.permutations(n2):
        m = dict(zip(q1.nodes, perm))
        if all(
            q2.arrows.get((m[s], m[t]), 0) == k for (s, t), k in q1.arrows.items()
        ) and sum(q1.arrows.values()) == sum(q2.arrows.values()):
            return True
    return False


# ---------------------------------------------------------------------------
# The cohomological functor H of a cotorsion pair with rigid first class.


@dataclass
class HObject:
    """H(X), presented by a deflation b_minus ->> X with kernel in V."""

    x: Rep
    obj: Rep  # the object B^- of H representing H(X)
    defl: RepMap  # B^- ->> X, a right H-approximation with kernel in V


class CohomologicalH:
    """H: B -> H/U for a cotorsion pair (U, V) with U rigid.

    H(X) is the pullback B^- of the witness diagram: X >-> V^X ->> U^X and
    the right witness U0 ->> V^X with kernel V0; then B^- ->> X has kernel
    V0 in V and is a right H-approximation, which makes morphism transport
    a linear solve, well-defined modulo [U].
    """

    def __init__(self, pair: CotorsionPair, atlas: IndecSet):
        if not is_rigid(pair.u):
            raise AlgebraError("cohomological functor needs a rigid first class")
        self.pair = pair
        self.atlas = atlas
        self.h_objects = cocone_objects(pair.u, pair.u)
        self.quotient = QuotientCategory(
            [atlas[n] for n in self.h_objects.names], pair.u.members
        )
        self._cache: dict[int, HObject] = {}

    def h_object(self, x: Rep) -> HObject:
        got = self._cache.get(id(x))
        if got is not None and got.x is x:
            return got
        if x.is_zero():
            res = HObject(x, x, RepMap.identity(x))
            self._cache[id(x)] = res
            return res
        if x is self.atlas.by_name.get(x.name):
            wl = self.pair.witness_left(x.name)  # X >-> V^X ->> U^X
        else:
            from .cotorsion import _left_witness

            wl = _left_witness(self.pair.u, self.pair.v, x)
        vx = wl.b
        wr = self._right_witness_of(vx)  # V0 >-> U0 ->> V^X
        conf, _ = pullback_conflation(wr, wl.infl)  # V0 >-> B^- ->> X
        res = HObject(x, conf.b, conf.defl)
        if not self.h_objects.contains(conf.b):
            raise AlgebraError(f"H({x.name}) fell outside CoCone(U, U)")
        self._cache[id(x)] = res
        return res

    def _right_witness_of(self, b: Rep) -> Conflation:
        """V0 >-> U0 ->> b assembled summand-wise from the pair's witnesses."""
        from .algebra import decompose_with_maps

        if b.is_zero():
            z = zero_rep(b.algebra)
            return Conflation(RepMap.zero(z, z), RepMap.zero(z, b))
        triples = decompose_with_maps(b, self.atlas)
        parts = [self.pair.witness_right(m.name) for m, _, _ in triples]
        mids = [c.b for c in parts]
        tops = [c.a for c in parts]
        mid, mid_incs, mid_prjs = direct_sum(mids)
        top, _top_incs, top_prjs = direct_sum(tops)
        infl = RepMap.zero(top, mid)
        defl = RepMap.zero(mid, b)
        for part, (_member, inc, _prj), mi, tp, mp in zip(
            parts, triples, mid_incs, top_prjs, mid_prjs
        ):
            infl = infl.add(mi.compose(part.infl).compose(tp))
            defl = defl.add(inc.compose(part.defl).compose(mp))
        return Conflation(infl, defl).validate()

    def h_map(self, f: RepMap, hx: HObject | None = None, hy: HObject | None = None) -> RepMap:
        """A representative of H(f): H(X) -> H(Y), well-defined mod [U]."""
        hx = hx or self.h_object(f.source)
        hy = hy or self.h_object(f.target)
        lift = solve_through(f.compose(hx.defl), hy.defl)
        if lift is None:
            raise AlgebraError("morphism transport through H failed")
        return lift

    def is_zero_h(self, x: Rep) -> bool:
        """H(X) = 0, i.e. every summand of B^- lies in U."""
        return self.pair.u.contains(self.h_object(x).obj)


# ---------------------------------------------------------------------------
# The module-category model: Gamma = stable End(G), Phi = Ext^1(G, -).


@dataclass
class GammaModule:
    """A finite-dimensional right module over the stable algebra Gamma."""

    dim: int
    action: list  # matrix per Gamma basis element, dim x dim
    p: int

    def is_zero(self) -> bool:
        return self.dim == 0


def gamma_hom(m: "GammaModule", n: "GammaModule") -> list[np.ndarray]:
    """Basis of module maps m -> n: matrices T with T R_m = R_n T."""
    p = m.p
    if m.dim == 0 or n.dim == 0:
        return []
    rows = []
    for rm, rn in zip(m.action, n.action):
        # T rm - rn T = 0, unknowns T (n.dim x m.dim) flattened row-major;
        # row-major vec(AXB) = (A kron B^T) vec(X)
        eq = np.kron(la.eye(n.dim), rm.T) - np.kron(rn, la.eye(m.dim))
        rows.append(eq % p)
    mat = np.concatenate(rows, axis=0) if rows else la.zeros(0, n.dim * m.dim)
    ns = la.nullspace(mat, p)
    return [ns[:, j].reshape(n.dim, m.dim) for j in range(ns.shape[1])]


def gamma_iso(m: GammaModule, n: GammaModule, seed: int = 11) -> bool:
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    basis = gamma_hom(m, n)
    if not basis:
        return False
    acc = sum(basis) % m.p
    if la.is_invertible(acc, m.p):
        return True
    rng = np.random.default_rng(seed)
    for _ in range(200):
        coeffs = rng.integers(0, m.p, size=len(basis))
        cand = sum(int(c) * b for c, b in zip(coeffs, basis)) % m.p
        if la.is_invertible(cand, m.p):
            return True
    return False


class PhiModel:
    """Phi(X) = Ext^1(G, X) as a right module over Gamma = End(G)/[P].

    G is the sum of the members of a rigid subcategory containing the
    projectives.  Morphisms factoring through projectives act as zero on
    Ext^1, so the action descends to Gamma.
    """

    def __init__(self, c: Subcategory):
        self.c = c
        self.atlas = c.atlas
        self.p = c.atlas.members[0].algebra.p
        self.g, self._g_incs, self._g_prjs = direct_sum(c.members)
        from .cotorsion import projectives_of

        self.projectives = projectives_of(c.atlas)
        stable = QuotientCategory([self.g], self.projectives.members)
        self.gamma_basis = stable.qbasis(self.g, self.g)
        self.omega_g, self._g_cover = syzygy(self.g)
        # syzygy restriction of each Gamma basis element
        self._omega_acts = []
        for gmap in self.gamma_basis:
            lift = solve_through(gmap.compose(self._g_cover.defl), self._g_cover.defl)
            if lift is None:
                raise AlgebraError("projective lifting failed for Gamma element")
            # restrict to the syzygy: solve infl o w = lift o infl blockwise
            rest = lift.compose(self._g_cover.infl)
            w = solve_through(rest, self._g_cover.infl)
            if w is None:
                raise AlgebraError("syzygy restriction failed for Gamma element")
            self._omega_acts.append(w)
        self._ext_cache: dict[int, Ext1] = {}
        self._mod_cache: dict[int, GammaModule] = {}

    def _ext(self, x: Rep) -> Ext1:
        got = self._ext_cache.get(id(x))
        if got is None or got.a is not x:
            got = Ext1(self.g, x)
            self._ext_cache[id(x)] = got
        return got

    def _coords(self, e: Ext1, h: RepMap) -> np.ndarray:
        if e.dim == 0:
            return la.zeros(1, 0)[0][:0]
        flat = np.stack([b.flat() for b in e.hom_omega_a], axis=1)
        sol = la.solve(flat, h.flat().reshape(-1, 1), self.p)
        if sol is None:
            raise AlgebraError("cocycle outside Hom(Omega G, X)")
        return la.matmul(e.qmap, sol, self.p)[:, 0]

    def module(self, x: Rep) -> GammaModule:
        got = self._mod_cache.get(id(x))
        if got is not None:
            return got
        if x.is_zero():
            mod = GammaModule(0, [la.zeros(0, 0) for _ in self.gamma_basis], self.p)
            self._mod_cache[id(x)] = mod
            return mod
        e = self._ext(x)
        acts = []
        for w in self._omega_acts:
            cols = []
            for j in range(e.dim):
                unit = la.zeros(e.dim, 1)[:, 0]
                unit[j] = 1
                rep = e.cocycle(unit)
                cols.append(self._coords(e, rep.compose(w)))
            acts.append(
                np.stack(cols, axis=1) if e.dim else la.zeros(0, 0)
            )
        mod = GammaModule(e.dim, acts, self.p)
        self._mod_cache[id(x)] = mod
        return mod

    def phi_map(self, f: RepMap) -> np.ndarray:
        """Matrix of Phi(f) = Ext^1(G, f) in quotient coordinates."""
        ex = self._ext(f.source)
        ey = self._ext(f.target)
        cols = []
        for j in range(ex.dim):
            unit = la.zeros(ex.dim, 1)[:, 0]
            unit[j] = 1
            rep = ex.cocycle(unit)
            cols.append(self._coords(ey, f.compose(rep)))
        return np.stack(cols, axis=1) if ex.dim else la.zeros(ey.dim, 0)

    def validate_action(self, x: Rep) -> bool:
        """Associativity/unitality of the action on Phi(x), and [P] acts as 0."""
        mod = self.module(x)
        stable = QuotientCategory([self.g], self.projectives.members)
        # unit: the identity's class expands over the basis; its action is id
        idc = stable.qcoords(RepMap.identity(self.g))
        acc = la.zeros(mod.dim, mod.dim)
        for c, r in zip(idc, mod.action):
            acc = (acc + int(c) * r) % self.p
        if mod.dim and not np.array_equal(acc % self.p, la.eye(mod.dim)):
            return False
        # compatibility: action of (g1 o g2) = action(g2-class) then g1? for
        # right modules by precomposition: R_{g1 o g2} = R_{g2} R_{g1}
        for i, g1 in enumerate(self.gamma_basis):
            for j, g2 in enumerate(self.gamma_basis):
                comp = g1.compose(g2)
                cc = stable.qcoords(comp)
                lhs = la.zeros(mod.dim, mod.dim)
                for c, r in zip(cc, mod.action):
                    lhs = (lhs + int(c) * r) % self.p
                rhs = la.matmul(mod.action[j], mod.action[i], self.p)
                if not np.array_equal(lhs, rhs):
                    return False
        return True


@dataclass
class HeartModel:
    """The heart of a cotorsion pair with rigid first class, both presentations."""

    pair: CotorsionPair
    atlas: IndecSet
    h: CohomologicalH
    phi: PhiModel

    @classmethod
    def build(cls, pair: CotorsionPair, atlas: IndecSet) -> "HeartModel":
        return cls(pair, atlas, CohomologicalH(pair, atlas), PhiModel(pair.u))

    @property
    def quotient(self) -> QuotientCategory:
        return self.h.quotient

    def heart_object_names(self) -> tuple[str, ...]:
        """Nonzero objects of the heart, sorted."""
        return tuple(
            sorted(
                n
                for n in self.h.h_objects.names
                if not self.quotient.is_zero_object(self.atlas[n])
            )
        )

    def validate_equivalence(self) -> dict:
        """Dimension bridge between H/U and mod Gamma on heart objects."""
        report = {"pairs": 0, "mismatches": []}
        objs = [self.atlas[n] for n in self.heart_object_names()]
        for x in objs:
            for y in objs:
                lhs = self.quotient.qdim(x, y)
                rhs = len(gamma_hom(self.phi.module(x), self.phi.module(y)))
                report["pairs"] += 1
                if lhs != rhs:
                    report["mismatches"].append((x.name, y.name, lhs, rhs))
        report["ok"] = not report["mismatches"]
        return report


def heart_epi(model: HeartModel, f: RepMap) -> bool:
    m = model.phi.phi_map(f)
    return la.rank(m, model.phi.p) == model.phi.module(f.target).dim


def heart_mono(model: HeartModel, f: RepMap) -> bool:
    m = model.phi.phi_map(f)
    return la.rank(m, model.phi.p) == model.phi.module(f.source).dim


def heart_kernel_dim(model: HeartModel, f: RepMap) -> int:
    m = model.phi.phi_map(f)
    return model.phi.module(f.source).dim - la.rank(m, model.phi.p)


def heart_cokernel_dim(model: HeartModel, f: RepMap) -> int:
    m = model.phi.phi_map(f)
    return model.phi.module(f.target).dim - la.rank(m, model.phi.p)


def submodule(mod: GammaModule, cols: np.ndarray) -> GammaModule:
    """The submodule spanned by the given coordinate columns (must be stable)."""
    p = mod.p
    d = la.rank(cols, p)
    basis = la.row_space(cols.T, p).T  # independent spanning columns
    acts = []
    for r in mod.action:
        moved = la.matmul(r, basis, p)
        sol = la.solve(basis, moved, p)
        if sol is None:
            raise AlgebraError("column span is not action-stable")
        acts.append(sol)
    return GammaModule(d, acts, p)


def heart_kernel_module(model: HeartModel, f: RepMap) -> GammaModule:
    m = model.phi.phi_map(f)
    ker = la.nullspace(m, model.phi.p)
    return submodule(model.phi.module(f.source), ker)


def heart_cokernel_module(model: HeartModel, f: RepMap) -> GammaModule:
    p = model.phi.p
    m = model.phi.phi_map(f)
    tgt = model.phi.module(f.target)
    q = la.quotient_map(m, tgt.dim, p)
    rinv = la.right_inverse(q, p) if q.shape[0] else la.zeros(tgt.dim, 0)
    acts = [la.matmul(la.matmul(q, r, p), rinv, p) for r in tgt.action]
    return GammaModule(q.shape[0], acts, p)


def realize_heart_kernel(model: HeartModel, g: RepMap) -> tuple[Rep, RepMap, Rep]:
    """For a heart epi g: B -> C, the kernel object K_g >-k-> B and W_C.

    K_g is the pullback of g along the witness deflation W_C ->> C; the
    conflation K_g >-> B + W_C ->> C exhibits 0 -> K_g -> B -> C -> 0 in
    the heart.
    """
    if not heart_epi(model, g):
        raise AlgebraError("not exact: the morphism is not an epimorphism in the heart")
    c = g.target
    wr = model.h._right_witness_of(c)  # V_C >-> W_C ->> C
    pb = pullback(g, wr.defl)
    kobj, to_b, _to_w = pb[0], pb[1], pb[2]
    # exactness certificate in the Phi model
    mk = model.phi.phi_map(to_b)
    mg = model.phi.phi_map(g)
    p = model.phi.p
    if la.matmul(mg, mk, p).any():
        raise AlgebraError("not exact: kernel composite does not vanish")
    if la.rank(mk, p) != model.phi.module(kobj).dim:
        raise AlgebraError("not exact: kernel inclusion is not a heart mono")
    if la.rank(mk, p) + la.rank(mg, p) != model.phi.module(g.source).dim:
        raise AlgebraError("not exact: rank identity fails")
    return kobj, to_b, wr.b


def realize_ses_in_heart(model: HeartModel, g: RepMap) -> Conflation:
    """Conflation K_g >-> B + W_C ->> C realizing 0 -> ker -> B -> C -> 0."""
    kobj, to_b, wc = realize_heart_kernel(model, g)
    total, incs, prjs = direct_sum([g.source, wc])
    wr = model.h._right_witness_of(g.target)
    defl = g.compose(prjs[0]).add(wr.defl.compose(prjs[1]))
    conf = conflation_from_defl(defl)
    return conf.validate()


# ---------------------------------------------------------------------------
# Syzygy approximations.


@dataclass
class SyzygyApproximation:
    """The witness diagram: U0 -f0->> X with Y0 >-g0-> U0 over the cover of T0."""

    x: Rep
    t0_conf: Conflation  # X >-> T0 ->> C0
    cover_conf: Conflation  # Y0 >-> P0 ->> T0
    u0_conf: Conflation  # Y0 >-g0-> U0 -f0->> X
    u0_to_p0: RepMap

    @property
    def f0(self) -> RepMap:
        return self.u0_conf.defl

    @property
    def g0(self) -> RepMap:
        return self.u0_conf.infl


def syzygy_approximation(pair: CotorsionPair, x: Rep, atlas: IndecSet) -> SyzygyApproximation:
    """The right Omega(U)-approximation deflation U0 ->> X of the pair."""
    from .cotorsion import _left_witness

    if x is atlas.by_name.get(x.name):
        wl = pair.witness_left(x.name)
    else:
        wl = _left_witness(pair.u, pair.v, x)
    t0 = wl.b
    _y0, cover_conf = syzygy(t0)
    u0_conf, u0_to_p0 = pullback_conflation(cover_conf, wl.infl)
    return SyzygyApproximation(x, wl, cover_conf, u0_conf, u0_to_p0)


def omega_subcat(c: Subcategory) -> Subcategory:
    """Omega(C) = CoCone(P, C) as atlas object set."""
    from .cotorsion import cocone_objects, projectives_of

    return cocone_objects(projectives_of(c.atlas), c)


def verify_syzygy_approximation(pair: CotorsionPair, x: Rep, atlas: IndecSet) -> bool:
    """f0 is a right Omega(U)-approximation: every U -> X factors through it."""
    sa = syzygy_approximation(pair, x, atlas)
    for u in omega_subcat(pair.u).members:
        for h in homs(u, x):
            if solve_through(h, sa.f0) is None:
                return False
    return True


def verify_factors_through_p(pair: CotorsionPair, x: Rep, b: Rep, atlas: IndecSet) -> bool:
    """If Ext^1(T0, B) = 0 then Hom(g0, B) is surjective."""
    from .homology import ext1_dim

    sa = syzygy_approximation(pair, x, atlas)
    if ext1_dim(sa.t0_conf.b, b) != 0:
        return True  # hypothesis empty; nothing to check
    for h in homs(sa.g0.source, b):
        if solve_extend(h, sa.g0) is None:
            return False
    return True


def check_syzygyepi(model: HeartModel, g: RepMap) -> bool:
    """For a heart-epi deflation g between H-objects, Hom(X, g) is surjective
    for every X in Omega(U)."""
    if not g.is_surjective():
        raise AlgebraError("precondition violation: g is not a deflation")
    if not heart_epi(model, g):
        raise AlgebraError("precondition violation: g is not an epimorphism in the heart")
    for x in omega_subcat(model.pair.u).members:
        for h in homs(x, g.target):
            if solve_through(h, g) is None:
                return False
    return True
