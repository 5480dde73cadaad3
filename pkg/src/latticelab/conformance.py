"""Executable conformance registry.

Every registered check encodes one established fact about finite modular
lattices, their linear endomorphisms, and the associated monoids; the
harness evaluates all of them over a corpus of fixture and randomly
generated lattices. A failure is an implementation bug and is reported with
a serialized reproduction. Checks with hypotheses are guarded implications:
when the hypothesis does not hold on a lattice the check counts as skipped.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    ConsistencyError,
    GiveUpError,
    LatticeLabError,
    LinearValidationError,
    NotALatticeError,
    NotAPosetError,
)
from .lattice import (
    Lattice,
    build_lattice,
    complemented_elements,
    complements_of,
    decompose,
    direct_product,
    interval,
    is_boolean,
    is_modular,
    lattice_to_json,
    socle_radical,
)
from .monoid import (EndoMonoid, annihilator, coset_index, full_monoid,
                     monoid_predicate)
from .morphisms import (
    compose,
    enumerate_interval_isos,
    enumerate_linmors,
    extend_from_interval,
    fully_invariant_elements,
    projection,
    validate_linear,
)
from .properties import (
    check_condition,
    check_cross_rickart,
    check_nonsingularity,
    check_retractable,
    check_rickart_family,
    check_rickpix,
    check_summand_property,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"


# -- random corpus ------------------------------------------------------------


def random_modular_lattice(seed: int, max_size: int, max_tries: int = 400,
                           name: str | None = None) -> Lattice:
    """A reproducible random modular lattice with at most max_size elements.

    Generation: a random chain, extra elements anchored between random chain
    levels, plus a few random cover insertions; candidates failing the
    lattice or modularity tests are rejected and regenerated. The resulting
    distribution is not uniform.
    """
    if max_size < 1:
        raise ValueError("max_size must be positive")
    rng = random.Random(seed)
    tag = name if name is not None else f"r{seed}"
    width = len(str(max_size - 1)) if max_size > 1 else 1
    tries = 0
    while tries < max_tries:
        # bias toward the upper size range; small lattices are over-accepted
        # otherwise because they rarely fail the lattice test
        n = max(rng.randint(1, max_size), rng.randint(1, max_size))
        names = [f"x{i:0{width}d}" for i in range(n)]
        if n == 1:
            return build_lattice(names, [], name=tag)
        for _attempt in range(12):
            tries += 1
            chain_len = rng.randint(2, n)
            covers = [(names[i], names[i + 1]) for i in range(chain_len - 1)]
            for e in range(chain_len, n):
                i = rng.randrange(chain_len - 1)
                j = rng.randrange(i + 1, chain_len)
                covers.append((names[i], names[e]))
                covers.append((names[e], names[j]))
            for _extra in range(rng.randint(0, n // 2)):
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u != v:
                    covers.append((names[u], names[v]))
            try:
                cand = build_lattice(names, covers, name=tag)
            except (NotAPosetError, NotALatticeError):
                continue
            if is_modular(cand).holds:
                return cand
    raise GiveUpError(f"no modular lattice found for seed {seed} "
                      f"within {max_tries} attempts")


def random_corpus(count: int, max_size: int, seed: int) -> list[Lattice]:
    """`count` lattices with per-lattice seeds derived from one master seed."""
    rng = random.Random(seed)
    return [random_modular_lattice(rng.getrandbits(32), max_size,
                                   name=f"r{seed}_{i}")
            for i in range(count)]


# -- per-lattice context -------------------------------------------------------


class LatticeContext:
    """Lazily computed, cached data for one corpus lattice."""

    # above this member count, annihilator checks (quadratic in the monoid)
    # are skipped rather than materializing a gigantic composition table
    COMP_CAP = 6000

    def __init__(self, L: Lattice, monoid_kind: str = "full",
                 family_cap: int = 12):
        self.L = L
        self.monoid_kind = monoid_kind
        self.family_cap = family_cap
        self._cache: dict[str, object] = {}

    def _get(self, key: str, build: Callable):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def monoid(self) -> EndoMonoid:
        if self.monoid_kind != "full":
            raise ValueError("conformance currently runs on full monoids")
        return self._get("monoid", lambda: full_monoid(self.L))

    @property
    def comp(self) -> tuple[int, ...]:
        return self._get("comp", lambda: complemented_elements(self.L))

    @property
    def comp_set(self) -> set[int]:
        return self._get("comp_set", lambda: set(self.comp))

    def family_prop(self, kind: str) -> bool:
        return self._get(f"rf_{kind}",
                         lambda: check_rickart_family(self.L, self.monoid, kind)).holds

    @property
    def rickart(self) -> bool:
        return self.family_prop("rickart")

    @property
    def baer(self) -> bool:
        return self.family_prop("baer")

    @property
    def dual_rickart(self) -> bool:
        return self.family_prop("dual_rickart")

    @property
    def dual_baer(self) -> bool:
        return self.family_prop("dual_baer")

    def summand(self, kind: str) -> bool:
        return self._get(f"sp_{kind}",
                         lambda: check_summand_property(self.L, kind)).holds

    def condition(self, kind: str) -> bool:
        return self._get(f"cond_{kind}",
                         lambda: check_condition(self.L, self.monoid, kind)).holds

    def nonsing(self, kind: str) -> bool:
        return self._get(f"ns_{kind}",
                         lambda: check_nonsingularity(self.L, self.monoid, kind)).holds

    @property
    def retractable(self) -> bool:
        return self._get("retract",
                         lambda: check_retractable(self.L, self.monoid)).holds

    @property
    def fully_invariant(self) -> tuple[int, ...]:
        return self._get("fi", lambda: fully_invariant_elements(
            self.L, self.monoid.members))

    @property
    def families(self) -> list[tuple[int, ...]] | None:
        """All independent families of nonzero elements joining to the top,
        or None when the lattice is too large to enumerate them."""
        def build():
            L = self.L
            if L.n > self.family_cap:
                return None
            elems = [x for x in range(L.n) if x != L.bottom]
            fams = []
            for r in range(1, len(elems) + 1):
                for fam in itertools.combinations(elems, r):
                    if L.join_all(fam) != L.top:
                        continue
                    if all(L.meet_of(a, L.join_all(b for b in fam if b != a))
                           == L.bottom for a in fam):
                        fams.append(fam)
            return fams
        return self._get("families", build)

    @property
    def decomposition(self):
        return self._get("decomp", lambda: decompose(self.L))

    def monoid_pred(self, kind: str) -> bool:
        return self._get(f"mp_{kind}",
                         lambda: monoid_predicate(self.monoid, kind)).holds

    @property
    def comp_feasible(self) -> bool:
        return len(self.monoid) <= self.COMP_CAP

    @property
    def image_elements(self) -> list[int]:
        return self._get("imgs",
                         lambda: sorted({p.image_top for p in self.monoid.members}))

    @property
    def kernel_elements(self) -> list[int]:
        return self._get("kers",
                         lambda: sorted({p.kernel for p in self.monoid.members}))

    def generated(self, x: int) -> bool:
        # same scan as check_generation, over the deduplicated image set
        key = ("gen", x)
        if key not in self._cache:
            L = self.L
            got = L.join_all(i for i in self.image_elements if L.leq(i, x))
            self._cache[key] = got == x
        return self._cache[key]

    def cogenerated(self, x: int) -> bool:
        key = ("cogen", x)
        if key not in self._cache:
            L = self.L
            got = L.meet_all(k for k in self.kernel_elements if L.leq(x, k))
            self._cache[key] = got == x
        return self._cache[key]


def _interval_rickart(L: Lattice, hi: int) -> bool:
    sub = interval(L, L.bottom, hi).as_lattice
    comp = set(complemented_elements(sub))
    return all(phi.kernel in comp for phi in enumerate_linmors(sub))


def _canonical_complement(L: Lattice, fam: tuple[int, ...], a: int) -> int:
    return L.join_all(b for b in fam if b != a)


def _proj_in_family(L: Lattice, fam, a: int, x: int) -> int:
    """(x v rest) ^ a, the projection of x onto a inside the family."""
    return L.meet_of(L.join_of(x, _canonical_complement(L, fam, a)), a)


# -- check implementations -----------------------------------------------------
# Each returns (status, detail) where detail is JSON-friendly.


def _ok() -> tuple[str, None]:
    return PASS, None


def _fail(**detail):
    return FAIL, detail


def _skip(reason: str):
    return SKIP, {"reason": reason}


def chk_riccipssp(ctx: LatticeContext):
    hit = False
    if ctx.rickart:
        hit = True
        if not ctx.summand("cip"):
            return _fail(side="cip")
    if ctx.dual_rickart:
        hit = True
        if not ctx.summand("csp"):
            return _fail(side="csp")
    return _ok() if hit else _skip("neither kernel nor image condition holds")


def chk_baerricscip(ctx):
    if (ctx.rickart and ctx.summand("scip")) != ctx.baer:
        return _fail(side="kernel", rickart=ctx.rickart,
                     scip=ctx.summand("scip"), baer=ctx.baer)
    if (ctx.dual_rickart and ctx.summand("scsp")) != ctx.dual_baer:
        return _fail(side="image", dual_rickart=ctx.dual_rickart,
                     scsp=ctx.summand("scsp"), dual_baer=ctx.dual_baer)
    return _ok()


def chk_ricendoric(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    a = ctx.rickart
    rr = ctx.monoid_pred("right_rickart")
    b = rr and ctx.retractable
    c = rr and all(ctx.generated(phi.kernel) for phi in ctx.monoid.members)
    if not (a == b == c):
        return _fail(rickart=a, monoid_and_retractable=b, monoid_and_generated=c)
    return _ok()


def chk_dricendodric(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    a = ctx.dual_rickart
    b = (ctx.monoid_pred("left_rickart")
         and all(ctx.cogenerated(phi.image_top) for phi in ctx.monoid.members))
    return _ok() if a == b else _fail(dual_rickart=a, monoid_side=b)


def _is_principal(m: EndoMonoid, side: str, member_iter) -> bool:
    mask = np.zeros(len(m.members), dtype=bool)
    for i in member_iter:
        mask[i] = True
    return mask.tobytes() in coset_index(m, side)


def chk_baercar(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    L, m = ctx.L, ctx.monoid
    a_side = ctx.baer
    b_side = all(
        _is_principal(m, "left",
                      (i for i, phi in enumerate(m.members)
                       if phi.map[a] == L.bottom))
        for a in range(L.n))
    kernels = {}
    for i, phi in enumerate(m.members):
        kernels.setdefault(phi.kernel, (i,))
    closure = {L.top}
    frontier = set(kernels)
    closure |= frontier
    while frontier:
        nxt = set()
        for x in frontier:
            for y in list(closure):
                z = L.meet_of(x, y)
                if z not in closure:
                    nxt.add(z)
        closure |= nxt
        frontier = nxt
    c_side = (ctx.monoid_pred("right_baer")
              and all(ctx.generated(e) for e in sorted(closure)))
    if not (a_side == b_side == c_side):
        return _fail(baer=a_side, pointwise_annihilators=b_side,
                     monoid_and_generated=c_side)
    return _ok()


def chk_dbaercar(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    L, m = ctx.L, ctx.monoid
    a_side = ctx.dual_baer
    b_side = all(
        _is_principal(m, "right",
                      (i for i, phi in enumerate(m.members)
                       if L.leq(phi.image_top, a)))
        for a in range(L.n))
    closure = {L.bottom}
    frontier = {phi.image_top for phi in m.members}
    closure |= frontier
    while frontier:
        nxt = set()
        for x in frontier:
            for y in list(closure):
                z = L.join_of(x, y)
                if z not in closure:
                    nxt.add(z)
        closure |= nxt
        frontier = nxt
    c_side = (ctx.monoid_pred("right_baer")
              and all(ctx.cogenerated(e) for e in sorted(closure)))
    if not (a_side == b_side == c_side):
        return _fail(dual_baer=a_side, pointwise_annihilators=b_side,
                     monoid_and_cogenerated=c_side)
    return _ok()


def chk_ricd2(ctx):
    L, m = ctx.L, ctx.monoid
    a_side = ctx.rickart
    # candidate target intervals depend only on the image element; morphisms
    # sharing an image reuse the iso list
    candidates: dict[int, list] = {}
    for img in ctx.image_elements:
        vi = interval(L, L.bottom, img)
        cands = []
        for x in ctx.comp:
            vx = interval(L, L.bottom, x)
            for iso in enumerate_interval_isos(vi, vx):
                cands.append((vi, vx, iso))
        candidates[img] = cands
    second = True
    for phi in m.members:
        ok = False
        for vi, vx, iso in candidates[phi.image_top]:
            table = tuple(vx.members[iso.forward[vi.from_parent[phi.map[y]]]]
                          for y in range(L.n))
            if m.contains_map(table):
                ok = True
                break
        if not ok:
            second = False
            break
    b_side = ctx.condition("md2") and second
    return _ok() if a_side == b_side else _fail(
        rickart=a_side, md2=ctx.condition("md2"), image_iso_clause=second)


def chk_dricc2(ctx):
    L, m = ctx.L, ctx.monoid
    a_side = ctx.dual_rickart
    # the second clause depends on phi only through its image element
    second = True
    for img in sorted({phi.image_top for phi in m.members}):
        vi = interval(L, L.bottom, img)
        ok = False
        for x in ctx.comp:
            vx = interval(L, L.bottom, x)
            isos = enumerate_interval_isos(vx, vi)
            if not isos:
                continue
            for xp in complements_of(L, x):
                for iso in isos:
                    table = tuple(
                        vi.members[iso.forward[vx.from_parent[
                            L.meet_of(L.join_of(y, xp), x)]]]
                        for y in range(L.n))
                    if m.contains_map(table):
                        ok = True
                        break
                if ok:
                    break
            if ok:
                break
        if not ok:
            second = False
            break
    b_side = ctx.condition("mc2") and second
    return _ok() if a_side == b_side else _fail(
        dual_rickart=a_side, mc2=ctx.condition("mc2"), image_iso_clause=second)


def chk_kercompkergenann(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    m = ctx.monoid
    for i, phi in enumerate(m.members):
        lhs = phi.kernel in ctx.comp_set
        ann = annihilator(m, "right", (i,))
        rhs = ctx.generated(phi.kernel) and ann.principal_idempotent is not None
        if lhs != rhs:
            return _fail(morphism=phi.as_name_map(), kernel_complemented=lhs,
                         generated_and_principal=rhs)
    return _ok()


def chk_imcompintkercogen(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    m = ctx.monoid
    for i, phi in enumerate(m.members):
        lhs = phi.image_top in ctx.comp_set
        ann = annihilator(m, "left", (i,))
        rhs = ctx.cogenerated(phi.image_top) and ann.principal_idempotent is not None
        if lhs != rhs:
            return _fail(morphism=phi.as_name_map(), image_complemented=lhs,
                         cogenerated_and_principal=rhs)
    return _ok()


def chk_baercarK(ctx):
    lhs = ctx.nonsing("k") and ctx.condition("c1")
    rhs = ctx.baer and ctx.nonsing("k_co")
    return _ok() if lhs == rhs else _fail(
        k_nonsingular=ctx.nonsing("k"), c1=ctx.condition("c1"),
        baer=ctx.baer, k_cononsingular=ctx.nonsing("k_co"))


def chk_dbaercarT(ctx):
    lhs = ctx.nonsing("t") and ctx.condition("d1")
    rhs = ctx.dual_baer and ctx.nonsing("t_co")
    return _ok() if lhs == rhs else _fail(
        t_nonsingular=ctx.nonsing("t"), d1=ctx.condition("d1"),
        dual_baer=ctx.dual_baer, t_cononsingular=ctx.nonsing("t_co"))


def chk_acc_rickart_eq_baer(ctx):
    if ctx.rickart != ctx.baer:
        return _fail(rickart=ctx.rickart, baer=ctx.baer)
    if ctx.dual_rickart != ctx.dual_baer:
        return _fail(dual_rickart=ctx.dual_rickart, dual_baer=ctx.dual_baer)
    return _ok()


def chk_kerpi(ctx):
    L = ctx.L
    for x in ctx.comp:
        for xp in complements_of(L, x):
            pix = projection(L, x, xp)
            for y in ctx.comp:
                for yp in complements_of(L, y):
                    piy = projection(L, y, yp)
                    got = compose(piy, pix).kernel
                    want = L.join_of(L.meet_of(x, yp), xp)
                    if got != want:
                        return _fail(x=L.names[x], x_prime=L.names[xp],
                                     y=L.names[y], y_prime=L.names[yp],
                                     got=L.names[got], want=L.names[want])
    return _ok()


def chk_idemcomp(ctx):
    L, m = ctx.L, ctx.monoid
    for i in m.idempotent_indices():
        phi = m.members[i]
        if (L.meet_of(phi.kernel, phi.image_top) != L.bottom
                or L.join_of(phi.kernel, phi.image_top) != L.top):
            return _fail(morphism=phi.as_name_map(),
                         kernel=L.names[phi.kernel],
                         image=L.names[phi.image_top])
    return _ok()


def chk_fipi1(ctx):
    fams = ctx.families
    if fams is None:
        return _skip("family enumeration over size cap")
    L = ctx.L
    for fam in fams:
        for x in range(L.n):
            bound = L.join_all(_proj_in_family(L, fam, a, x) for a in fam)
            if not L.leq(x, bound):
                return _fail(family=[L.names[a] for a in fam], x=L.names[x],
                             bound=L.names[bound])
    return _ok()


def chk_fidis(ctx):
    fams = ctx.families
    if fams is None:
        return _skip("family enumeration over size cap")
    L = ctx.L
    for fam in fams:
        for x in ctx.fully_invariant:
            if L.join_all(L.meet_of(x, a) for a in fam) != x:
                return _fail(family=[L.names[a] for a in fam], x=L.names[x],
                             clause="join of meets")
            for a in fam:
                if _proj_in_family(L, fam, a, x) != L.meet_of(x, a):
                    return _fail(family=[L.names[a] for a in fam], x=L.names[x],
                                 a=L.names[a], clause="projection equals meet")
    return _ok()


def chk_lemmaret(ctx):
    L = ctx.L
    for a in range(L.n):
        for b in range(L.n):
            if L.meet_of(a, b) != L.bottom:
                continue
            ab = L.join_of(a, b)
            for c in range(L.n):
                if L.meet_of(ab, c) != L.bottom:
                    continue
                if L.meet_of(a, L.join_of(b, c)) != L.bottom:
                    return _fail(a=L.names[a], b=L.names[b], c=L.names[c])
    return _ok()


def chk_splits(ctx):
    L = ctx.L
    for a in range(L.n):
        va = interval(L, L.bottom, a)
        sub = va.as_lattice
        retracts = any(
            all(phi.map[va.members[t]] == t for t in range(sub.n))
            for phi in enumerate_linmors(L, sub))
        vu = interval(L, a, L.top)
        squ = vu.as_lattice
        sections = any(
            all(vu.from_parent[L.join_of(a, phi.map[u])] == u for u in range(squ.n))
            for phi in enumerate_linmors(squ, L))
        is_comp = a in ctx.comp_set
        if not (is_comp == retracts == sections):
            return _fail(a=L.names[a], complemented=is_comp,
                         inclusion_splits=retracts, quotient_splits=sections)
    return _ok()


def chk_isolin(ctx):
    L = ctx.L
    for a in range(L.n):
        vu = interval(L, a, L.top)
        for x in range(L.n):
            vx = interval(L, L.bottom, x)
            for iso in enumerate_interval_isos(vu, vx):
                table = tuple(vx.members[iso.forward[vu.from_parent[L.join_of(y, a)]]]
                              for y in range(L.n))
                try:
                    phi = validate_linear(L, L, table)
                except LinearValidationError as exc:
                    return _fail(a=L.names[a], x=L.names[x], error=str(exc))
                if phi.kernel != a:
                    return _fail(a=L.names[a], x=L.names[x],
                                 kernel=L.names[phi.kernel])
    return _ok()


def chk_boolean_meetmaps(ctx):
    try:
        is_boolean(ctx.L)
    except ConsistencyError as exc:
        return _fail(error=str(exc))
    return _ok()


def chk_compintric(ctx):
    if not ctx.rickart:
        return _skip("lattice is not rickart")
    L = ctx.L
    for a in ctx.comp:
        if not _interval_rickart(L, a):
            return _fail(a=L.names[a])
    return _ok()


def _interval_family_prop(L: Lattice, hi: int, kind: str) -> bool:
    sub = interval(L, L.bottom, hi).as_lattice
    return check_rickart_family(sub, full_monoid(sub), kind).holds


def chk_complbaer(ctx):
    if not ctx.baer:
        return _skip("lattice is not baer")
    for a in ctx.comp:
        if not _interval_family_prop(ctx.L, a, "baer"):
            return _fail(a=ctx.L.names[a])
    return _ok()


def chk_compldbaer(ctx):
    if not ctx.dual_baer:
        return _skip("lattice is not dual baer")
    for a in ctx.comp:
        if not _interval_family_prop(ctx.L, a, "dual_baer"):
            return _fail(a=ctx.L.names[a])
    return _ok()


def chk_ricind2(ctx):
    L = ctx.L
    if L.n < 2:
        return _skip("one-element lattice")
    soc, rad = socle_radical(L)
    assert soc != L.bottom and rad != L.top
    indecomposable = ctx.comp_set == {L.bottom, L.top}
    lhs = indecomposable and ctx.rickart
    rhs = L.n == 2
    return _ok() if lhs == rhs else _fail(
        indecomposable=indecomposable, rickart=ctx.rickart, n=L.n)


def chk_if2(ctx):
    L = ctx.L
    blocks = ctx.decomposition.blocks
    all_two = all(len(interval(L, L.bottom, b).members) == 2 for b in blocks)
    return _ok() if ctx.rickart == all_two else _fail(
        rickart=ctx.rickart, blocks=[L.names[b] for b in blocks])


def chk_sumric(ctx):
    fams = ctx.families
    if fams is None:
        return _skip("family enumeration over size cap")
    L = ctx.L
    for fam in fams:
        rhs = all(_interval_rickart(L, a) for a in fam)
        if rhs != ctx.rickart:
            return _fail(family=[L.names[a] for a in fam],
                         blocks_rickart=rhs, rickart=ctx.rickart)
    return _ok()


def chk_decomp_fi(ctx):
    fams = ctx.families
    if fams is None:
        return _skip("family enumeration over size cap")
    fi = set(ctx.fully_invariant)
    L = ctx.L
    hit = False
    for fam in fams:
        if not set(fam) <= fi:
            continue
        hit = True
        rhs = all(_interval_rickart(L, a) for a in fam)
        if rhs != ctx.rickart:
            return _fail(family=[L.names[a] for a in fam],
                         blocks_rickart=rhs, rickart=ctx.rickart)
    return _ok() if hit else _skip("no fully invariant family joins to top")


def chk_linmor_joins(ctx):
    L = ctx.L
    for phi in ctx.monoid.members:
        if phi.map[L.bottom] != L.bottom:
            return _fail(morphism=phi.as_name_map(), clause="bottom")
        for x in range(L.n):
            for y in range(x, L.n):
                if phi.map[L.join_of(x, y)] != L.join_of(phi.map[x], phi.map[y]):
                    return _fail(morphism=phi.as_name_map(),
                                 x=L.names[x], y=L.names[y])
    return _ok()


def chk_projection_linear(ctx):
    L = ctx.L
    for x in ctx.comp:
        for xp in complements_of(L, x):
            try:
                pi = projection(L, x, xp)
            except LatticeLabError as exc:
                return _fail(x=L.names[x], x_prime=L.names[xp], error=str(exc))
            if pi.kernel != xp or compose(pi, pi).map != pi.map:
                return _fail(x=L.names[x], x_prime=L.names[xp])
    return _ok()


def chk_exmorf(ctx):
    L = ctx.L
    for x in ctx.comp:
        vx = interval(L, L.bottom, x)
        xps = complements_of(L, x)
        for y in range(L.n):
            vy = interval(L, L.bottom, y)
            for phi in enumerate_linmors(vx.as_lattice, vy.as_lattice):
                for xp in xps:
                    try:
                        ext = extend_from_interval(phi, vx, vy, xp)
                    except LatticeLabError as exc:
                        return _fail(x=L.names[x], y=L.names[y],
                                     x_prime=L.names[xp], error=str(exc))
                    want = L.join_of(vx.members[phi.kernel], xp)
                    if ext.kernel != want:
                        return _fail(x=L.names[x], y=L.names[y],
                                     kernel=L.names[ext.kernel],
                                     want=L.names[want])
                    restr = all(ext.map[vx.members[t]] == vy.members[phi.map[t]]
                                for t in range(vx.as_lattice.n))
                    if not restr:
                        return _fail(x=L.names[x], y=L.names[y],
                                     clause="restriction")
    return _ok()


def chk_fi_join(ctx):
    L = ctx.L
    fi = set(ctx.fully_invariant)
    for x in fi:
        for y in fi:
            if L.join_of(x, y) not in fi:
                return _fail(x=L.names[x], y=L.names[y])
    return _ok()


def _iso_to_complement_choices(ctx) -> dict[int, list[int]]:
    """For each a, the b's admitting an iso [a, top] -> [bottom, b] whose
    composite through quotient and inclusion lies in the monoid."""
    L, m = ctx.L, ctx.monoid
    out: dict[int, list[int]] = {}
    for a in range(L.n):
        vu = interval(L, a, L.top)
        bs = []
        for b in range(L.n):
            vb = interval(L, L.bottom, b)
            for iso in enumerate_interval_isos(vu, vb):
                table = tuple(vb.members[iso.forward[vu.from_parent[L.join_of(y, a)]]]
                              for y in range(L.n))
                if m.contains_map(table):
                    bs.append(b)
                    break
        out[a] = bs
    return out


def chk_booluniqb_exists(ctx):
    L = ctx.L
    choices = _iso_to_complement_choices(ctx)
    lhs = ctx.rickart and all(choices[a] for a in range(L.n))
    rhs = len(ctx.comp) == L.n
    return _ok() if lhs == rhs else _fail(
        rickart=ctx.rickart,
        choices={L.names[a]: [L.names[b] for b in bs]
                 for a, bs in choices.items()},
        complemented=rhs)


def chk_booluniqb_unique(ctx):
    L = ctx.L
    choices = _iso_to_complement_choices(ctx)
    if not (ctx.rickart and all(len(choices[a]) == 1 for a in range(L.n))):
        return _skip("hypothesis (rickart with unique target) not met")
    if not is_boolean(L).holds:
        return _fail(choices={L.names[a]: [L.names[b] for b in bs]
                              for a, bs in choices.items()})
    return _ok()


def chk_splitcor(ctx):
    L = ctx.L
    for b in ctx.comp:
        vb = interval(L, L.bottom, b)
        for a_sub in complemented_elements(vb.as_lattice):
            if vb.members[a_sub] not in ctx.comp_set:
                return _fail(a=L.names[vb.members[a_sub]], b=L.names[b])
    return _ok()


def chk_cbool(ctx):
    L = ctx.L
    comp = ctx.comp
    cset = ctx.comp_set
    sublattice = all(L.meet_of(x, y) in cset and L.join_of(x, y) in cset
                     for x in comp for y in comp)
    if not sublattice:
        return _skip("complemented elements are not a sublattice")
    pointwise = True
    for x in comp:
        for xp in complements_of(L, x):
            for y in comp:
                if L.meet_of(L.join_of(y, xp), x) != L.meet_of(x, y):
                    pointwise = False
                    break
            if not pointwise:
                break
        if not pointwise:
            break
    distributive = all(
        L.meet_of(x, L.join_of(y, z))
        == L.join_of(L.meet_of(x, y), L.meet_of(x, z))
        for x in comp for y in comp for z in comp)
    return _ok() if pointwise == distributive else _fail(
        projections_are_meets=pointwise, distributive=distributive)


def chk_clcomp(ctx):
    if not (ctx.baer or ctx.dual_baer):
        return _skip("lattice is neither baer nor dual baer")
    L = ctx.L
    comp = ctx.comp
    cset = ctx.comp_set
    for x in comp:
        if not any(c in cset for c in complements_of(L, x)):
            return _fail(element=L.names[x], clause="no complement inside C")
    for x in comp:
        for y in comp:
            ubs = [z for z in comp if L.leq(x, z) and L.leq(y, z)]
            if not any(all(L.leq(z0, z) for z in ubs) for z0 in ubs):
                return _fail(pair=[L.names[x], L.names[y]], clause="join in C")
            lbs = [z for z in comp if L.leq(z, x) and L.leq(z, y)]
            if not any(all(L.leq(z, z0) for z in lbs) for z0 in lbs):
                return _fail(pair=[L.names[x], L.names[y]], clause="meet in C")
    return _ok()


def chk_retractable(ctx):
    if ctx.rickart and not ctx.retractable:
        return _fail(clause="rickart implies retractable")
    if ctx.retractable:
        for phi in ctx.monoid.members:
            if not ctx.generated(phi.kernel):
                return _fail(clause="retractable implies kernels generated",
                             morphism=phi.as_name_map())
    return _ok()


def chk_rickpix(ctx):
    v = check_rickpix(ctx.L, ctx.monoid)
    return _ok() if v.holds else (FAIL, {"notes": v.notes, "witness": v.witness})


def chk_baer_symmetry(ctx):
    if not ctx.comp_feasible:
        return _skip("monoid too large for annihilator calculus")
    r = ctx.monoid_pred("right_baer")
    l = ctx.monoid_pred("left_baer")
    return _ok() if r == l else _fail(right_baer=r, left_baer=l)


def chk_c1_kco(ctx):
    if not ctx.condition("c1"):
        return _skip("c1 does not hold")
    return _ok() if ctx.nonsing("k_co") else _fail()


def chk_d1_tco(ctx):
    if not ctx.condition("d1"):
        return _skip("d1 does not hold")
    return _ok() if ctx.nonsing("t_co") else _fail()


def chk_knonsing_c1_baer(ctx):
    if not (ctx.nonsing("k") and ctx.condition("c1")):
        return _skip("hypothesis not met")
    return _ok() if ctx.baer else _fail()


def chk_tnonsing_d1_dbaer(ctx):
    if not (ctx.nonsing("t") and ctx.condition("d1")):
        return _skip("hypothesis not met")
    return _ok() if ctx.dual_baer else _fail()


def chk_ric_knonsing(ctx):
    if not ctx.rickart:
        return _skip("lattice is not rickart")
    return _ok() if ctx.nonsing("k") else _fail()


def chk_dric_tnonsing(ctx):
    if not ctx.dual_rickart:
        return _skip("lattice is not dual rickart")
    return _ok() if ctx.nonsing("t") else _fail()


def chk_baer_kco_c1(ctx):
    if not (ctx.baer and ctx.nonsing("k_co")):
        return _skip("hypothesis not met")
    return _ok() if ctx.condition("c1") else _fail()


def chk_dbaer_tco_d1(ctx):
    if not (ctx.dual_baer and ctx.nonsing("t_co")):
        return _skip("hypothesis not met")
    return _ok() if ctx.condition("d1") else _fail()


def chk_artif(ctx):
    try:
        dec = ctx.decomposition
    except LatticeLabError as exc:
        return _fail(error=str(exc))
    return _ok() if dec.independent else _fail()


# -- pair checks ---------------------------------------------------------------


def chk_prod_projections_linear(ctxL, ctxM):
    L, M = ctxL.L, ctxM.L
    prod = direct_product([L, M])
    P = prod.lattice
    for j, factor in enumerate((L, M)):
        table = tuple(prod.coords[p][j] for p in range(P.n))
        try:
            phi = validate_linear(P, factor, table)
        except LinearValidationError as exc:
            return _fail(factor=j, error=str(exc))
        want = tuple(factor_other.top if jj != j else factor.bottom
                     for jj, factor_other in enumerate((L, M)))
        if prod.coords[phi.kernel] != want:
            return _fail(factor=j, kernel=P.names[phi.kernel])
    return _ok()


def chk_prod_rickart_pairs(ctxL, ctxM):
    L, M = ctxL.L, ctxM.L
    P = direct_product([L, M]).lattice
    comp = set(complemented_elements(P))
    lhs = all(phi.kernel in comp for phi in enumerate_linmors(P))
    rhs = all(check_cross_rickart(A, B).holds
              for A in (L, M) for B in (L, M))
    return _ok() if lhs == rhs else _fail(product_rickart=lhs, pairwise=rhs)


def chk_ricdirsumsub(ctxL, ctxM):
    L, M = ctxL.L, ctxM.L
    if not check_cross_rickart(L, M).holds:
        return _skip("base pair is not cross-rickart")
    for a in ctxL.comp:
        sub_a = interval(L, L.bottom, a).as_lattice
        for x in range(M.n):
            sub_x = interval(M, M.bottom, x).as_lattice
            if not check_cross_rickart(sub_a, sub_x).holds:
                return _fail(a=L.names[a], x=M.names[x])
    return _ok()


def chk_cip_prod_rickart(ctxL, ctxM):
    L, M = ctxL.L, ctxM.L
    if not ctxL.summand("cip"):
        return _skip("left lattice lacks the complement intersection property")
    fams = ctxM.families
    if fams is None:
        return _skip("family enumeration over size cap")
    whole = check_cross_rickart(L, M).holds
    for fam in fams:
        parts = all(check_cross_rickart(
            L, interval(M, M.bottom, a).as_lattice).holds for a in fam)
        if parts != whole:
            return _fail(family=[M.names[a] for a in fam],
                         parts=parts, whole=whole)
    return _ok()


# -- global checks -------------------------------------------------------------


def chk_fig1_example():
    from . import fixtures
    from .abelian import AbelianGroup, induced_monoid, subgroup_lattice

    grp = AbelianGroup.from_spec("4")
    lat = subgroup_lattice(grp)
    mono = induced_monoid(grp)
    if len(mono) != 3:
        return _fail(induced_size=len(mono))
    expected = {(0, 0, 0), (0, 0, 1), (0, 1, 2)}
    if {phi.map for phi in mono.members} != expected:
        return _fail(maps=[phi.map for phi in mono.members])
    v = check_rickart_family(lat, mono, "rickart")
    if v.holds or v.witness["kernel"] != lat.names[1]:
        return _fail(verdict=v.to_json_dict())
    c3 = fixtures.c3()
    if {phi.map for phi in full_monoid(c3).members} != expected:
        return _fail(clause="chain comparison")
    return _ok()


def chk_excip_example():
    from . import fixtures

    L = fixtures.excip()
    comp = {L.names[c] for c in complemented_elements(L)}
    if comp != {"0", "1", "a", "b"}:
        return _fail(complemented=sorted(comp))
    if not check_summand_property(L, "cip").holds:
        return _fail(clause="cip")
    va = interval(L, L.bottom, L.id_of("a"))
    vb = interval(L, L.bottom, L.id_of("b"))
    sub_a, sub_b = va.as_lattice, vb.as_lattice
    table = (sub_b.bottom, sub_b.bottom, sub_b.id_of("f"))
    phi = validate_linear(sub_a, sub_b, table)
    if sub_a.names[phi.kernel] != "k":
        return _fail(kernel=sub_a.names[phi.kernel])
    if check_cross_rickart(sub_a, sub_b).holds:
        return _fail(clause="cross rickart should fail")
    return _ok()


def chk_lricmric():
    from .abelian import AbelianGroup, rickart_module_direct

    for spec in ("1", "2", "3", "4", "2,2", "6", "8", "2,4", "9", "2,6"):
        grp = AbelianGroup.from_spec(spec)
        for kind in ("rickart", "baer", "dual_rickart", "dual_baer"):
            try:
                rickart_module_direct(grp, kind)
            except ConsistencyError as exc:
                return _fail(group=spec, kind=kind, error=str(exc))
    return _ok()


# -- registry ------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    kind: str  # "lattice" | "pair" | "global"
    fn: Callable
    description: str


def _mk_registry() -> dict[str, Check]:
    entries = [
        Check("riccipssp", "lattice", chk_riccipssp,
              "kernel-complemented implies complement meets stay complemented; dually for images and joins"),
        Check("baerricscip", "lattice", chk_baerricscip,
              "baer equals rickart plus strong complement intersection; dually with joins"),
        Check("ricendoric", "lattice", chk_ricendoric,
              "rickart equals right-rickart monoid plus retractability, and plus generated kernels"),
        Check("dricendodric", "lattice", chk_dricendodric,
              "dual rickart equals left-rickart monoid plus cogenerated images"),
        Check("baercar", "lattice", chk_baercar,
              "baer equals pointwise principal annihilators, and baer monoid plus generated kernel meets"),
        Check("dbaercar", "lattice", chk_dbaercar,
              "dual baer equals pointwise principal co-annihilators, and baer monoid plus cogenerated image joins"),
        Check("ricd2", "lattice", chk_ricd2,
              "rickart equals the D2-style condition plus images isomorphic to complemented intervals"),
        Check("dricc2", "lattice", chk_dricc2,
              "dual rickart equals the C2-style condition plus complemented intervals isomorphic to images"),
        Check("kercompkergenann", "lattice", chk_kercompkergenann,
              "per morphism: kernel complemented iff generated and right annihilator principal"),
        Check("imcompintkercogen", "lattice", chk_imcompintkercogen,
              "per morphism: image complemented iff cogenerated and left annihilator principal"),
        Check("baercarK", "lattice", chk_baercarK,
              "K-nonsingular plus C1 equals baer plus K-cononsingular"),
        Check("dbaercarT", "lattice", chk_dbaercarT,
              "T-nonsingular plus D1 equals dual baer plus T-cononsingular"),
        Check("acc_rickart_eq_baer", "lattice", chk_acc_rickart_eq_baer,
              "finite lattices: rickart equals baer, dual rickart equals dual baer"),
        Check("kerpi", "lattice", chk_kerpi,
              "kernel of a composed pair of projections is (x ^ y') v x'"),
        Check("idemcomp", "lattice", chk_idemcomp,
              "idempotent members split the lattice: kernel and image are complements"),
        Check("fipi1", "lattice", chk_fipi1,
              "independent families joining to top dominate every element via projections"),
        Check("fidis", "lattice", chk_fidis,
              "fully invariant elements distribute over independent families"),
        Check("lemmaret", "lattice", chk_lemmaret,
              "a ^ b = 0 and (a v b) ^ c = 0 force a ^ (b v c) = 0"),
        Check("splits", "lattice", chk_splits,
              "complemented equals split inclusion equals split quotient"),
        Check("isolin", "lattice", chk_isolin,
              "interval isomorphisms induce linear endomorphisms with the expected kernel"),
        Check("boolean_meetmaps", "lattice", chk_boolean_meetmaps,
              "boolean iff every meet map is linear (two routes agree)"),
        Check("compintric", "lattice", chk_compintric,
              "rickart passes down to intervals below complemented elements"),
        Check("complbaer", "lattice", chk_complbaer,
              "baer passes down to intervals below complemented elements"),
        Check("compldbaer", "lattice", chk_compldbaer,
              "dual baer passes down to intervals below complemented elements"),
        Check("ricind2", "lattice", chk_ricind2,
              "indecomposable rickart lattices are exactly the two-element chain"),
        Check("if2", "lattice", chk_if2,
              "rickart iff the canonical decomposition has only two-element blocks"),
        Check("sumric", "lattice", chk_sumric,
              "rickart iff every independent decomposition has rickart blocks"),
        Check("decomp_fi", "lattice", chk_decomp_fi,
              "for fully invariant decompositions, rickart iff all blocks are rickart"),
        Check("prod_projections_linear", "pair", chk_prod_projections_linear,
              "product projections are linear with the expected kernels"),
        Check("prod_rickart_pairs", "pair", chk_prod_rickart_pairs,
              "a finite product is rickart iff all factor pairs are cross-rickart"),
        Check("ricdirsumsub", "pair", chk_ricdirsumsub,
              "cross-rickart passes to complemented intervals on both sides"),
        Check("cip_prod_rickart", "pair", chk_cip_prod_rickart,
              "with complement intersection, cross-rickart distributes over decompositions of the target"),
        Check("linmor_joins", "lattice", chk_linmor_joins,
              "linear morphisms preserve bottom and binary joins"),
        Check("projection_linear", "lattice", chk_projection_linear,
              "projections are idempotent linear morphisms with kernel the chosen complement"),
        Check("exmorf", "lattice", chk_exmorf,
              "interval morphisms extend along projections with kernel ker v x'"),
        Check("fi_join", "lattice", chk_fi_join,
              "fully invariant elements are closed under joins"),
        Check("booluniqb_exists", "lattice", chk_booluniqb_exists,
              "rickart with quotient-to-interval isomorphisms everywhere iff complemented"),
        Check("booluniqb_unique", "lattice", chk_booluniqb_unique,
              "rickart with unique isomorphism targets implies boolean"),
        Check("splitcor", "lattice", chk_splitcor,
              "complements of complements within intervals are complements"),
        Check("cbool", "lattice", chk_cbool,
              "when complemented elements form a sublattice, projections acting as meets iff distributive"),
        Check("clcomp", "lattice", chk_clcomp,
              "baer or dual baer makes the complemented elements a complemented lattice"),
        Check("retractable", "lattice", chk_retractable,
              "rickart implies retractable; retractable implies kernels generated"),
        Check("rickpix", "lattice", chk_rickpix,
              "rickart iff every member factors through a projection missing its kernel"),
        Check("baer_symmetry", "lattice", chk_baer_symmetry,
              "right and left baer agree for projection-closed monoids"),
        Check("c1_kco", "lattice", chk_c1_kco, "C1 implies K-cononsingular"),
        Check("d1_tco", "lattice", chk_d1_tco, "D1 implies T-cononsingular"),
        Check("knonsing_c1_baer", "lattice", chk_knonsing_c1_baer,
              "K-nonsingular plus C1 implies baer"),
        Check("tnonsing_d1_dbaer", "lattice", chk_tnonsing_d1_dbaer,
              "T-nonsingular plus D1 implies dual baer"),
        Check("ric_knonsing", "lattice", chk_ric_knonsing,
              "rickart implies K-nonsingular"),
        Check("dric_tnonsing", "lattice", chk_dric_tnonsing,
              "dual rickart implies T-nonsingular"),
        Check("baer_kco_c1", "lattice", chk_baer_kco_c1,
              "baer plus K-cononsingular implies C1"),
        Check("dbaer_tco_d1", "lattice", chk_dbaer_tco_d1,
              "dual baer plus T-cononsingular implies D1"),
        Check("artif", "lattice", chk_artif,
              "the canonical decomposition is independent with indecomposable blocks"),
        Check("fig1_example", "global", chk_fig1_example,
              "the order-4 cyclic group induces the three-member monoid on the three-chain"),
        Check("excip_example", "global", chk_excip_example,
              "the nine-element fixture: complemented set, intersection property, failing interval kernel"),
        Check("lricmric", "global", chk_lricmric,
              "module-side and lattice-side kernel/image complement verdicts agree on small groups"),
    ]
    return {c.name: c for c in entries}


REGISTRY: dict[str, Check] = _mk_registry()


# -- runner --------------------------------------------------------------------


@dataclass
class CorpusReport:
    """Aggregated conformance results; reproducible given seed and config."""

    schema_version: int
    seed: int | None
    lattice_count: int
    counts: dict[str, dict[str, int]]
    failures: list[dict]
    skipped_lattices: list[str] = field(default_factory=list)

    @property
    def total_failures(self) -> int:
        return sum(c["fail"] for c in self.counts.values())

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "seed": self.seed,
            "lattice_count": self.lattice_count,
            "checks": self.counts,
            "failures": self.failures,
            "skipped_lattices": self.skipped_lattices,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, ensure_ascii=False) + "\n"


def run_conformance(corpus, checks=None, monoid_kind: str = "full", *,
                    seed: int | None = None, pair_product_cap: int = 16,
                    max_pairs: int = 12, family_cap: int = 12) -> CorpusReport:
    """Evaluate the registry over the corpus.

    Non-modular corpus entries are set aside (most checks assume modularity).
    Pair checks run on each lattice against itself when small enough, plus a
    budgeted sample of consecutive corpus pairs whose product size fits the
    cap. Global checks run once.
    """
    names = list(checks) if checks else list(REGISTRY)
    unknown = [nm for nm in names if nm not in REGISTRY]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")

    usable: list[LatticeContext] = []
    skipped_lattices = []
    for L in corpus:
        if is_modular(L).holds:
            usable.append(LatticeContext(L, monoid_kind, family_cap))
        else:
            skipped_lattices.append(L.name)

    counts = {nm: {"pass": 0, "fail": 0, "skip": 0} for nm in names}
    failures: list[dict] = []

    def record(nm: str, status: str, detail, lattices):
        counts[nm][status] += 1
        if status == FAIL:
            failures.append({
                "check": nm,
                "lattices": [x.name for x in lattices],
                "detail": detail,
                "repro": [json.loads(lattice_to_json(x)) for x in lattices],
            })

    lattice_checks = [nm for nm in names if REGISTRY[nm].kind == "lattice"]
    pair_checks = [nm for nm in names if REGISTRY[nm].kind == "pair"]
    global_checks = [nm for nm in names if REGISTRY[nm].kind == "global"]

    for ctx in usable:
        for nm in lattice_checks:
            status, detail = REGISTRY[nm].fn(ctx)
            record(nm, status, detail, [ctx.L])

    if pair_checks:
        pairs: list[tuple[LatticeContext, LatticeContext]] = []
        for ctx in usable:
            if ctx.L.n * ctx.L.n <= pair_product_cap:
                pairs.append((ctx, ctx))
        budget = max_pairs
        for a, b in zip(usable, usable[1:]):
            if budget <= 0:
                break
            if a.L.n * b.L.n <= pair_product_cap:
                pairs.append((a, b))
                budget -= 1
        for nm in pair_checks:
            for a, b in pairs:
                status, detail = REGISTRY[nm].fn(a, b)
                record(nm, status, detail, [a.L, b.L])

    for nm in global_checks:
        status, detail = REGISTRY[nm].fn()
        record(nm, status, detail, [])

    return CorpusReport(schema_version=1, seed=seed,
                        lattice_count=len(usable), counts=counts,
                        failures=failures, skipped_lattices=skipped_lattices)
