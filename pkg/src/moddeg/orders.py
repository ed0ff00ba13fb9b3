"""Degeneration- and Hom-order machinery.

Submodule invariants f_i by generic (symbolic) or exhaustive rank,
Riedtmann sequence verification and bounded search, Hom-order comparison
against module families, the degeneration obstruction battery, division-
ring minimality checks, exhaustive enumeration of module structures over
finite fields, and the twist-closure experiment.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .descent import induce, restrict, twist
from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    DimMismatch,
    FieldMismatch,
    ShapeMismatch,
)
from .linalg import Matrix, MPoly, PolyMatrix
from .modrep import (
    Module,
    ModuleMorphism,
    direct_sum,
    end_algebra,
    hom_space,
    is_division,
    iso_test,
    module_from_generators,
    zero_module,
)
from .verdict import Verdict, proved, refuted, unknown


# -- generated submodules and the f_i invariants --


@dataclass(frozen=True)
class GeneratorSpan:
    """Span of the submodule generated by a tuple of vectors.

    phi_matrix columns are rho(b_j) x_t for all basis j, all tuple slots
    t (slot-major order); its rank is the submodule dimension.
    """

    module: Module
    tuple_vectors: tuple
    phi_matrix: Matrix
    span_dim: int


def generated_submodule(m, vectors):
    """Assemble the generator-span matrix of a tuple and take its rank."""
    field_ = m.algebra.field
    d = m.dim
    for v in vectors:
        if len(v) != d:
            raise ShapeMismatch("tuple vector has wrong length")
    cols = []
    for vec in vectors:
        col = Matrix.column(field_, list(vec))
        for j in range(m.algebra.dim):
            img = m.actions[j] * col
            cols.append([img.entries[i][0] for i in range(d)])
    phi = Matrix.from_columns(field_, cols, d) if cols else Matrix.zero(field_, d, 0)
    span = phi.rank()
    # the span contains each generator (the unit acts as identity)
    for vec in vectors:
        widened = Matrix.hstack([phi, Matrix.column(field_, list(vec))])
        if widened.rank() != span:  # pragma: no cover
            raise ShapeMismatch("generator escaped its own span")
    return GeneratorSpan(module=m, tuple_vectors=tuple(tuple(v) for v in vectors),
                         phi_matrix=phi, span_dim=span)


@dataclass(frozen=True)
class FInvariant:
    value: int
    certainty: str  # "exact" or "lower_bound"
    strategy: str
    note: str = ""


def _symbolic_phi(m, i):
    field_ = m.algebra.field
    d, malg = m.dim, m.algebra.dim
    nvars = d * i
    entries = []
    for v in range(d):
        row = []
        for t in range(i):
            for j in range(malg):
                acc = MPoly.zero(field_, nvars)
                arow = m.actions[j].entries[v]
                for u in range(d):
                    c = arow[u]
                    if c:
                        acc = acc + MPoly.variable(field_, nvars, t * d + u) * c
                row.append(acc)
        entries.append(row)
    # column order in the generic matrix is slot-major like the concrete one
    reordered = [[entries[v][t * malg + j] for t in range(i) for j in range(malg)]
                 for v in range(d)]
    return PolyMatrix(field_, nvars, reordered)


def f_invariant(m, i, strategy="auto", seed=0, trials=64, budget=1 << 18):
    """Largest dimension of a submodule generated by i elements.

    symbolic: generic rank of the generator-span matrix in d*i
    indeterminates; exact for the maximum after base change to any
    infinite (in particular algebraically closed) extension.
    exhaustive: finite fields, maximizes over all q^(d*i) tuples.
    randomized: seeded sampling, certainty "lower_bound".
    """
    if i < 1:
        raise ValueError("the tuple size i must be at least 1")
    if m.dim == 0:
        return FInvariant(0, "exact", strategy, "zero module")
    from .modrep import _is_finite
    if strategy == "auto":
        strategy = "exhaustive" if (
            _is_finite(m.algebra.field)
            and _field_points(m.algebra.field) ** (m.dim * i) <= 1 << 12
        ) else "symbolic"
    if strategy == "symbolic":
        value = _symbolic_phi(m, i).symbolic_rank()
        return FInvariant(value, "exact", "symbolic",
                          "generic value; equals the invariant after base "
                          "change to an infinite extension")
    if strategy == "exhaustive":
        if not _is_finite(m.algebra.field):
            raise FieldMismatch("exhaustive strategy needs a finite field")
        total = _field_points(m.algebra.field) ** (m.dim * i)
        if total > budget:
            raise BudgetExceeded(f"tuple space of size {total}")
        elements = m.algebra.field.all_elements()
        best = 0
        for flat in itertools.product(elements, repeat=m.dim * i):
            vecs = [flat[t * m.dim:(t + 1) * m.dim] for t in range(i)]
            best = max(best, generated_submodule(m, vecs).span_dim)
            if best == m.dim:
                break
        return FInvariant(best, "exact", "exhaustive", "")
    if strategy == "randomized":
        rng = random.Random(seed)
        best = 0
        for _ in range(trials):
            vecs = [[m.algebra.field.random_elem(rng, 9) for _ in range(m.dim)]
                    for _ in range(i)]
            best = max(best, generated_submodule(m, vecs).span_dim)
            if best == m.dim:
                break
        return FInvariant(best, "lower_bound", "randomized", f"{trials} samples")
    raise ValueError(f"unknown strategy {strategy}")


def _field_points(field_):
    return field_.base.p ** field_.degree


# -- Riedtmann sequences --


@dataclass(frozen=True)
class RiedtmannWitness:
    """Certificate of an exact sequence 0 -> X -> X (+) M -> N -> 0."""

    x: Module
    m: Module
    n: Module
    g: ModuleMorphism
    h: ModuleMorphism

    @property
    def middle(self):
        return self.g.target


def riedtmann_verify(w):
    """Re-check a Riedtmann witness; Refuted names the broken condition."""
    if w.x.algebra != w.m.algebra or w.m.algebra != w.n.algebra:
        raise AlgebraMismatch("witness mixes algebras")
    if w.m.dim != w.n.dim:
        return refuted(certificate={"check": "dims", "left": w.m.dim,
                                    "right": w.n.dim})
    middle = direct_sum(w.x, w.m)
    if w.g.target.actions != middle.actions or w.h.source.actions != middle.actions:
        return refuted(certificate={"check": "middle_is_x_plus_m"})
    try:
        ModuleMorphism(w.x, middle, w.g.matrix, check=True)
        ModuleMorphism(middle, w.n, w.h.matrix, check=True)
    except Exception:
        return refuted(certificate={"check": "morphism"})
    if w.g.matrix.rank() != w.x.dim:
        return refuted(certificate={"check": "g_injective"})
    if w.h.matrix.rank() != w.n.dim:
        return refuted(certificate={"check": "h_surjective"})
    if not (w.h.matrix * w.g.matrix).is_zero():
        return refuted(certificate={"check": "h_after_g_zero"})
    # rank-nullity: dim ker h = d_X + d_M - d_N = d_X = rank g, and
    # im g <= ker h, so the sequence is exact
    return proved(witness=w)


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> A -> B -> C -> 0 with explicit inclusion and projection."""

    incl: ModuleMorphism
    proj: ModuleMorphism

    @property
    def a(self):
        return self.incl.source

    @property
    def b(self):
        return self.incl.target

    @property
    def c(self):
        return self.proj.target


def verify_ses(ses):
    """Exactness of a short exact sequence, by ranks and composition."""
    incl, proj = ses.incl, ses.proj
    if proj.source.actions != incl.target.actions:
        return refuted(certificate={"check": "middle_mismatch"})
    if incl.source.dim + proj.target.dim != incl.target.dim:
        return refuted(certificate={"check": "dimension_count"})
    if not incl.is_injective():
        return refuted(certificate={"check": "inclusion_injective"})
    if not proj.is_surjective():
        return refuted(certificate={"check": "projection_surjective"})
    if not (proj.matrix * incl.matrix).is_zero():
        return refuted(certificate={"check": "composite_zero"})
    return proved(witness=ses)


def witness_from_ses(incl, proj):
    """Riedtmann witness for B <=deg A (+) C from 0 -> A -> B -> C -> 0.

    incl: A -> B injective, proj: B -> C surjective with ker proj = im incl.
    """
    a, b, c = incl.source, incl.target, proj.target
    if proj.source.actions != b.actions:
        raise ShapeMismatch("sequence maps do not share the middle module")
    field_ = a.algebra.field
    middle = direct_sum(a, b)
    n = direct_sum(a, c)
    g_mat = Matrix.vstack([Matrix.zero(field_, a.dim, a.dim), incl.matrix])
    h_mat = Matrix.block_diag([Matrix.identity(field_, a.dim), proj.matrix])
    g = ModuleMorphism(a, middle, g_mat, check=True)
    h = ModuleMorphism(middle, n, h_mat, check=True)
    w = RiedtmannWitness(x=a, m=b, n=n, g=g, h=h)
    v = riedtmann_verify(w)
    if not v.is_proved:
        raise ShapeMismatch(f"input maps are not a short exact sequence: "
                            f"{v.certificate}")
    return w


def pad_witness(w, p):
    """Extend 0 -> X -> X+M -> N -> 0 to 0 -> X -> X+(M+P) -> N+P -> 0."""
    field_ = w.x.algebra.field
    mp = direct_sum(w.m, p)
    middle = direct_sum(w.x, mp)
    np_ = direct_sum(w.n, p)
    g_mat = Matrix.vstack([w.g.matrix, Matrix.zero(field_, p.dim, w.x.dim)])
    h_mat = Matrix.block_diag([w.h.matrix, Matrix.identity(field_, p.dim)])
    g = ModuleMorphism(w.x, middle, g_mat, check=True)
    h = ModuleMorphism(middle, np_, h_mat, check=True)
    return RiedtmannWitness(x=w.x, m=mp, n=np_, g=g, h=h)


def sum_witnesses(w1, w2):
    """Combine witnesses into one for M1+M2 <=deg N1+N2 with X = X1+X2."""
    field_ = w1.x.algebra.field
    x = direct_sum(w1.x, w2.x)
    m = direct_sum(w1.m, w2.m)
    n = direct_sum(w1.n, w2.n)
    middle = direct_sum(x, m)
    dx1, dx2 = w1.x.dim, w2.x.dim
    dm1, dm2 = w1.m.dim, w2.m.dim
    dn1 = w1.n.dim
    zero = field_.zero()
    # rows of the middle: [X1, X2, M1, M2]
    g_rows = [[zero] * (dx1 + dx2)
              for _ in range(dx1 + dx2 + dm1 + dm2)]
    for r in range(dx1 + dm1):
        tr = r if r < dx1 else (dx1 + dx2 + (r - dx1))
        for c in range(dx1):
            g_rows[tr][c] = w1.g.matrix.entries[r][c]
    for r in range(dx2 + dm2):
        tr = (dx1 + r) if r < dx2 else (dx1 + dx2 + dm1 + (r - dx2))
        for c in range(dx2):
            g_rows[tr][dx1 + c] = w2.g.matrix.entries[r][c]
    g_mat = Matrix(field_, len(g_rows), dx1 + dx2, g_rows)
    h_rows = [[zero] * (dx1 + dx2 + dm1 + dm2)
              for _ in range(w1.n.dim + w2.n.dim)]
    for r in range(w1.n.dim):
        for c in range(dx1 + dm1):
            tc = c if c < dx1 else (dx1 + dx2 + (c - dx1))
            h_rows[r][tc] = w1.h.matrix.entries[r][c]
    for r in range(w2.n.dim):
        for c in range(dx2 + dm2):
            tc = (dx1 + c) if c < dx2 else (dx1 + dx2 + dm1 + (c - dx2))
            h_rows[dn1 + r][tc] = w2.h.matrix.entries[r][c]
    h_mat = Matrix(field_, len(h_rows), dx1 + dx2 + dm1 + dm2, h_rows)
    g = ModuleMorphism(x, middle, g_mat, check=True)
    h = ModuleMorphism(middle, n, h_mat, check=True)
    return RiedtmannWitness(x=x, m=m, n=n, g=g, h=h)


def retarget_witness(w, iso):
    """Replace the target module of a witness along a verified isomorphism."""
    if iso.source.actions != w.n.actions or not iso.is_invertible():
        raise ShapeMismatch("retarget needs an isomorphism out of the target")
    h = ModuleMorphism(w.middle, iso.target, iso.matrix * w.h.matrix,
                       check=True)
    return RiedtmannWitness(x=w.x, m=w.m, n=iso.target, g=w.g, h=h)


def _coeff_stream(field_, dim, rng, max_items, include_basis=True):
    """Deterministic stream of coefficient vectors, small ones first."""
    count = 0
    from .modrep import _is_finite
    if _is_finite(field_):
        for coeffs in itertools.product(field_.all_elements(), repeat=dim):
            if not any(coeffs):
                continue
            yield list(coeffs)
            count += 1
            if count >= max_items:
                return
        return
    if include_basis:
        for i in range(dim):
            v = [field_.zero()] * dim
            v[i] = field_.one()
            yield v
            count += 1
            if count >= max_items:
                return
    bounds = [1, 2, 4, 9]
    while count < max_items:
        bound = bounds[min(len(bounds) - 1, (count * len(bounds)) // max_items)]
        v = [field_.random_elem(rng, bound) for _ in range(dim)]
        if not any(v):
            continue
        yield v
        count += 1


def riedtmann_search(m, n, x_family, budget=10000, seed=0):
    """Bounded search for a Riedtmann witness of M <=deg N.

    For each X, injective g in Hom(X, X+M) are sampled; h is then drawn
    from the linear subspace {h : h . g = 0} of Hom(X+M, N) and only needs
    to be surjective (exactness follows by dimension count).  Absence of a
    witness is never disproof, so the outcome is Proved or Unknown.
    """
    if m.dim != n.dim:
        raise DimMismatch("Riedtmann form needs dim M = dim N")
    rng = random.Random(seed)
    tried = 0
    for x in x_family:
        if x.algebra != m.algebra:
            raise AlgebraMismatch("family member over a different algebra")
        middle = direct_sum(x, m)
        homs_h = hom_space(middle, n)
        if homs_h.k_dim == 0 and n.dim > 0:
            continue
        if x.dim == 0:
            g = ModuleMorphism(x, middle, Matrix.zero(
                m.algebra.field, middle.dim, 0), check=False)
            w = _search_h(x, m, n, g, homs_h, rng,
                          budget=max(1, (budget - tried)))
            tried += w[1]
            if w[0] is not None:
                return proved(witness=w[0], trials=tried)
            continue
        homs_g = hom_space(x, middle)
        if homs_g.k_dim == 0:
            continue
        g_budget = max(1, int(budget ** 0.5))
        for coeffs in _coeff_stream(m.algebra.field, homs_g.k_dim, rng,
                                    g_budget):
            if tried >= budget:
                break
            g = homs_g.element(coeffs)
            tried += 1
            if not g.is_injective():
                continue
            w, used = _search_h(x, m, n, g, homs_h, rng,
                                budget=max(1, (budget - tried)))
            tried += used
            if w is not None:
                return proved(witness=w, trials=tried)
        if tried >= budget:
            break
    return unknown(trials=tried, seed=seed)


def _search_h(x, m, n, g, homs_h, rng, budget):
    """Surjective h with h . g = 0, from the constrained subspace."""
    field_ = m.algebra.field
    # linear constraint: columns are the flattened h_s . g
    cols = []
    for f in homs_h.basis:
        prod = f.matrix * g.matrix
        cols.append([e for row in prod.entries for e in row])
    if homs_h.k_dim == 0:
        constrained = []
    else:
        nrows = len(cols[0]) if cols else 0
        if nrows == 0:
            constrained = [list(r) for r in Matrix.identity(
                field_, homs_h.k_dim).entries]
        else:
            kernel = Matrix.from_columns(field_, cols, nrows).nullspace()
            constrained = [[v.entries[i][0] for i in range(homs_h.k_dim)]
                           for v in kernel]
    if not constrained:
        return None, 0
    used = 0
    h_budget = min(budget, max(16, int(budget ** 0.5)))
    for lam_coeffs in _coeff_stream(field_, len(constrained), rng, h_budget,
                                    include_basis=True):
        used += 1
        coeffs = [field_.zero()] * homs_h.k_dim
        for lc, vec in zip(lam_coeffs, constrained):
            if lc:
                for i in range(homs_h.k_dim):
                    if vec[i]:
                        coeffs[i] = coeffs[i] + lc * vec[i]
        h = homs_h.element(coeffs)
        if not h.is_surjective():
            continue
        w = RiedtmannWitness(x=x, m=m, n=n, g=g, h=h)
        if riedtmann_verify(w).is_proved:
            return w, used
    return None, used


# -- Hom-order comparison and the obstruction battery --


@dataclass(frozen=True)
class HomCmpRow:
    probe_name: str
    into_m: int
    into_n: int
    from_m: int
    from_n: int

    @property
    def violated(self):
        return self.into_m > self.into_n or self.from_m > self.from_n


@dataclass(frozen=True)
class HomCmpReport:
    rows: tuple
    verdict: str  # "consistent" or "violated"
    witness_probe: str = ""

    @property
    def is_violated(self):
        return self.verdict == "violated"


def hom_order_cmp(m, n, family, stop_on_violation=False):
    """Compare Hom dimensions against every probe in the family.

    Consistency with a finite family is only a necessary condition for
    M <=Hom N; a violation certifies M is not below N.  With
    stop_on_violation the report ends at the first violating probe.
    """
    if not family:
        raise ValueError("probe family must be nonempty")
    rows = []
    witness = ""
    for idx, x in enumerate(family):
        if x.algebra != m.algebra:
            raise AlgebraMismatch("probe over a different algebra")
        name = x.name or f"probe{idx}"
        row = HomCmpRow(
            probe_name=name,
            into_m=hom_space(x, m).k_dim,
            into_n=hom_space(x, n).k_dim,
            from_m=hom_space(m, x).k_dim,
            from_n=hom_space(n, x).k_dim,
        )
        rows.append(row)
        if row.violated and not witness:
            witness = name
            if stop_on_violation:
                break
    verdict = "violated" if witness else "consistent"
    return HomCmpReport(rows=tuple(rows), verdict=verdict, witness_probe=witness)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "violated", "skipped"
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ObstructionReport:
    checks: tuple
    overall: str  # "consistent" or "refuted"
    certificate: dict = field(default_factory=dict)

    @property
    def is_refuted(self):
        return self.overall == "refuted"


def deg_obstruct(m, n, family=(), f_range=(1,), extensions=(), seed=0):
    """Necessary-condition battery for M <=deg N.

    Runs, in order: dimension equality, Hom-order comparison over the
    family plus both modules, endomorphism strictness (nonisomorphic
    comparable modules need [N, M] < [N, N]), and f_i comparisons with the
    symbolic strategy, optionally after base change along the listed
    towers.  Any violation refutes the degeneration; checks behind the
    first violation are reported as skipped.
    """
    if m.algebra != n.algebra:
        raise AlgebraMismatch("modules over different algebras")
    checks = []
    certificate = {}

    def fail(name, data):
        nonlocal certificate
        checks.append(CheckResult(name, "violated", data))
        if not certificate:
            certificate = {"check": name, **data}

    def skip(name, data=None):
        checks.append(CheckResult(name, "skipped", data or {}))

    def remaining_names():
        names = ["endo_strictness"]
        for i in f_range:
            names.append(f"f_{i}")
            names.extend(f"f_{i}@deg{t.degree}" for t in extensions)
        return names

    if m.dim == n.dim:
        checks.append(CheckResult("dim_equal", "pass", {"dim": m.dim}))
    else:
        fail("dim_equal", {"left": m.dim, "right": n.dim})
        skip("hom_order")
        for name in remaining_names():
            skip(name)
        return ObstructionReport(checks=tuple(checks), overall="refuted",
                                 certificate=certificate)

    probes = list(family)
    if not any(p is m for p in probes):
        probes.append(m)
    if not any(p is n for p in probes):
        probes.append(n)
    cmp_report = hom_order_cmp(m, n, probes, stop_on_violation=True)
    if cmp_report.is_violated:
        row = next(r for r in cmp_report.rows if r.violated)
        fail("hom_order", {"probe": cmp_report.witness_probe,
                           "into": (row.into_m, row.into_n),
                           "from": (row.from_m, row.from_n)})
        for name in remaining_names():
            skip(name)
        return ObstructionReport(checks=tuple(checks), overall="refuted",
                                 certificate=certificate)
    checks.append(CheckResult("hom_order", "pass", {"probes": len(probes)}))

    iso = iso_test(m, n, seed=seed)
    if iso.is_refuted:
        nm = hom_space(n, m).k_dim
        nn = hom_space(n, n).k_dim
        if nm >= nn:
            fail("endo_strictness", {"hom_n_m": nm, "hom_n_n": nn})
            for i in f_range:
                skip(f"f_{i}")
                for t in extensions:
                    skip(f"f_{i}@deg{t.degree}")
            return ObstructionReport(checks=tuple(checks), overall="refuted",
                                     certificate=certificate)
        checks.append(CheckResult("endo_strictness", "pass",
                                  {"hom_n_m": nm, "hom_n_n": nn}))
    else:
        checks.append(CheckResult("endo_strictness", "skipped",
                                  {"iso_status": iso.status}))

    for i in f_range:
        fm = f_invariant(m, i, strategy="symbolic")
        fn = f_invariant(n, i, strategy="symbolic")
        if fm.value < fn.value:
            fail(f"f_{i}", {"left": fm.value, "right": fn.value})
            break
        checks.append(CheckResult(f"f_{i}", "pass",
                                  {"left": fm.value, "right": fn.value}))
        stop = False
        for tower in extensions:
            km = induce(tower, m)
            kn = induce(tower, n, gamma=km.algebra)
            fmk = f_invariant(km, i, strategy="symbolic")
            fnk = f_invariant(kn, i, strategy="symbolic")
            label = f"f_{i}@deg{tower.degree}"
            if fmk.value < fnk.value:
                fail(label, {"left": fmk.value, "right": fnk.value})
                stop = True
                break
            checks.append(CheckResult(label, "pass",
                                      {"left": fmk.value, "right": fnk.value}))
        if stop:
            break

    overall = "refuted" if certificate else "consistent"
    return ObstructionReport(checks=tuple(checks), overall=overall,
                             certificate=certificate)


@dataclass(frozen=True)
class MinimalityRow:
    name: str
    status: str  # "isomorphic", "witnessed", "unknown"
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class MinimalityReport:
    division: Verdict
    theorem_backed: bool
    divisibility: tuple
    rows: tuple


def minimality_check(m, family, seed=0):
    """Division-ring minimality certificate with per-instance evidence.

    When End(M) is a division ring, M is minimal in the Hom-order; the
    report carries the divisibility [M,M] | [M,N] for each family member
    and, for nonisomorphic ones, a probe witnessing the failure of
    N <=Hom M where one is visible in the family.
    """
    for x in family:
        if x.dim != m.dim:
            raise DimMismatch("family members must match the dimension of M")
    e, homs = end_algebra(m)
    div = is_division(e, seed=seed)
    mm = homs.k_dim
    divisibility = []
    rows = []
    probes = list(family) + [m]
    for idx, x in enumerate(family):
        name = x.name or f"cand{idx}"
        mn = hom_space(m, x).k_dim
        divisibility.append((name, mm, mn, mn % mm == 0 if mm else True))
        iso = iso_test(m, x, seed=seed)
        if iso.is_proved:
            rows.append(MinimalityRow(name, "isomorphic", {}))
            continue
        witness = None
        for p in probes:
            if hom_space(p, x).k_dim > hom_space(p, m).k_dim:
                witness = (p.name or "probe", "into")
                break
            if hom_space(x, p).k_dim > hom_space(m, p).k_dim:
                witness = (p.name or "probe", "from")
                break
        if witness:
            rows.append(MinimalityRow(name, "witnessed",
                                      {"probe": witness[0],
                                       "direction": witness[1]}))
        else:
            rows.append(MinimalityRow(name, "unknown",
                                      {"note": "no violating probe in family"}))
    return MinimalityReport(division=div, theorem_backed=div.is_proved,
                            divisibility=tuple(divisibility), rows=tuple(rows))


# -- exhaustive enumeration over finite fields --


@dataclass(frozen=True)
class IsoClass:
    module: Module
    size: int


@dataclass(frozen=True)
class EnumerationSpace:
    algebra: object
    dim: int
    classes: tuple
    total_structures: int


def _all_matrices(field_, d):
    """All d x d matrices over a finite tower, lexicographic order."""
    elements = field_.all_elements()
    for flat in itertools.product(elements, repeat=d * d):
        yield Matrix(field_, d, d, [flat[r * d:(r + 1) * d] for r in range(d)])


def enumerate_modules(algebra, d, budget=1 << 22):
    """All module structures on a d-dimensional space, grouped into
    isomorphism classes by exhaustive testing.

    Generator matrices are enumerated lexicographically with the algebra
    relations as the filter; class representatives are the lex-least
    action tuples.
    """
    from .modrep import _is_finite
    if not _is_finite(algebra.field):
        raise FieldMismatch("enumeration needs a finite field")
    if algebra.gens is None or algebra.basis_exprs is None:
        raise FieldMismatch("enumeration needs generator metadata")
    g = len(algebra.gens)
    q = _field_points(algebra.field)
    if d > 0 and q ** (d * d * g) > budget:
        raise BudgetExceeded(
            f"enumeration space q^(d^2 g) = {q ** (d * d * g)} over budget")
    if d == 0:
        z = zero_module(algebra)
        return EnumerationSpace(algebra=algebra, dim=0,
                                classes=(IsoClass(z, 1),), total_structures=1)

    structures = []
    mats = list(_all_matrices(algebra.field, d))

    # prefix pruning: a prefix dies as soon as some fully determined
    # relation fails; module_from_generators re-checks everything
    level_checks = _prefix_checks(algebra)

    def extend_pruned(prefix):
        lvl = len(prefix)
        if lvl and not _run_level(algebra, prefix, level_checks[lvl - 1], d):
            return
        if lvl == g:
            mod = module_from_generators(algebra, list(prefix))
            if mod is not None:
                structures.append(mod)
            return
        for cand in mats:
            extend_pruned(prefix + (cand,))

    extend_pruned(())

    classes = []  # list of [module, size, encoding]
    for mod in structures:
        enc = mod.encoding()
        placed = False
        for cls in classes:
            if iso_test(cls[0], mod, strategy="exhaustive").is_proved:
                cls[1] += 1
                if enc < cls[2]:
                    cls[0], cls[2] = mod, enc
                placed = True
                break
        if not placed:
            classes.append([mod, 1, enc])
    classes.sort(key=lambda c: c[2])
    return EnumerationSpace(
        algebra=algebra, dim=d,
        classes=tuple(IsoClass(c[0].rename(f"class{i}"), c[1])
                      for i, c in enumerate(classes)),
        total_structures=len(structures))


def _prefix_checks(algebra):
    """Relation checks that become decidable after each generator."""
    g = len(algebra.gens)
    need = []
    for expr in algebra.basis_exprs:
        kind, payload = expr
        if kind == "unit":
            need.append(0)
        elif kind == "gen":
            need.append(payload + 1)
        elif kind == "word":
            need.append(max(payload) + 1 if payload else 0)
        elif kind == "unit_minus":
            need.append(max(payload) + 1 if payload else 0)
        elif kind == "unit_minus_shifted":
            _, gens_ = payload
            need.append(max((0,) + tuple(gens_)) + 1)
        else:  # pragma: no cover
            need.append(g)
    unit_level = max((need[j] for j in range(algebra.dim)
                      if algebra.unit[j]), default=0)
    by_level = [[] for _ in range(g)]
    for gi, (_, gvec) in enumerate(algebra.gens):
        for j in range(algebra.dim):
            prod = algebra.mult_vec(gvec, algebra.basis_vector(j))
            lvl = max(gi + 1, need[j],
                      max((need[l] for l in range(algebra.dim) if prod[l]),
                          default=0))
            if lvl <= g:
                by_level[lvl - 1].append((gi, j, prod))
    checks = []
    for lvl in range(g):
        checks.append({
            "products": by_level[lvl],
            "unit": unit_level == lvl + 1 or (lvl == 0 and unit_level == 0),
            "need": need,
        })
    return checks


def _run_level(algebra, prefix, level, d):
    from .modrep import _eval_expr
    cache = {}

    def action(j):
        if j not in cache:
            cache[j] = _eval_expr(algebra, list(prefix), d,
                                  algebra.basis_exprs[j])
        return cache[j]

    ident = Matrix.identity(algebra.field, d)
    lvl = len(prefix)
    if level["unit"]:
        acc = Matrix.zero(algebra.field, d, d)
        for j in range(algebra.dim):
            c = algebra.unit[j]
            if c:
                acc = acc + action(j) * c
        if acc != ident:
            return False
    for gi, j, prod in level["products"]:
        lhs = prefix[gi] * action(j)
        rhs = Matrix.zero(algebra.field, d, d)
        for l, c in enumerate(prod):
            if c:
                rhs = rhs + action(l) * c
        if lhs != rhs:
            return False
    return True


# -- twist closure experiment --


@dataclass(frozen=True)
class TwistClosureReport:
    tower_degree: int
    spaces: tuple  # EnumerationSpace per dimension 0..d_max
    twist_stable: bool
    unstable_class: str
    lambda_iso_equals_gamma_iso: bool
    collapsing_pair: tuple
    hypothesis_consistent: bool
    hom_order_match: bool
    hom_identity_lambda_gamma: bool
    hom_identity_base_change: bool


def twist_closure_experiment(tower, lam, d_max, budget=1 << 22):
    """Exhaustively instantiate the twist-stability equivalence.

    Enumerates Gamma-modules up to d_max, checks that every class is
    stable under all twists iff Lambda-isomorphism implies Gamma-
    isomorphism, compares the two Hom-orders on all enumerated pairs, and
    verifies the two Hom-dimension identities.
    """
    from .algebras import tensor_extension
    gamma = tensor_extension(tower, lam)
    n = tower.degree
    spaces = []
    reps = []
    for d in range(d_max + 1):
        space = enumerate_modules(gamma, d, budget=budget)
        spaces.append(space)
        reps.extend(cls.module for cls in space.classes)

    twist_stable = True
    unstable = ""
    for mod in reps:
        for idx in range(len(tower.automorphisms)):
            tw, _ = twist(mod, idx)
            if not iso_test(mod, tw, strategy="exhaustive").is_proved:
                twist_stable = False
                unstable = mod.name or "?"
                break
        if not twist_stable:
            break

    iso_match = True
    collapsing = ()
    for a, b in itertools.combinations(reps, 2):
        if a.dim != b.dim:
            continue
        # distinct Gamma-classes; Lambda-isomorphism would collapse them
        if iso_test(restrict(a), restrict(b), strategy="exhaustive").is_proved:
            iso_match = False
            collapsing = (a.name, b.name)
            break

    # Lambda probes for the Lambda-side Hom-order
    lam_reps = []
    for d in range(d_max + 1):
        lam_space = enumerate_modules(lam, d, budget=budget)
        lam_reps.extend(cls.module for cls in lam_space.classes)

    def gamma_leq(a, b):
        return all(hom_space(x, a).k_dim <= hom_space(x, b).k_dim
                   and hom_space(a, x).k_dim <= hom_space(b, x).k_dim
                   for x in reps)

    def lambda_leq(a, b):
        ra, rb = restrict(a), restrict(b)
        return all(hom_space(x, ra).k_dim <= hom_space(x, rb).k_dim
                   and hom_space(ra, x).k_dim <= hom_space(rb, x).k_dim
                   for x in lam_reps)

    hom_match = True
    for a in reps:
        for b in reps:
            if a.dim != b.dim:
                continue
            if gamma_leq(a, b) != lambda_leq(a, b):
                hom_match = False
                break
        if not hom_match:
            break

    identity_lg = all(
        hom_space(restrict(a), restrict(b)).k_dim ==
        n * hom_space(a, b).k_dim
        for a in reps for b in reps)
    identity_bc = all(
        hom_space(induce(tower, restrict(a), gamma=gamma),
                  induce(tower, restrict(b), gamma=gamma)).k_dim ==
        n * hom_space(restrict(a), restrict(b)).k_dim
        for a in reps for b in reps)

    return TwistClosureReport(
        tower_degree=n,
        spaces=tuple(spaces),
        twist_stable=twist_stable,
        unstable_class=unstable,
        lambda_iso_equals_gamma_iso=iso_match,
        collapsing_pair=collapsing,
        hypothesis_consistent=twist_stable == iso_match,
        hom_order_match=hom_match,
        hom_identity_lambda_gamma=identity_lg,
        hom_identity_base_change=identity_bc,
    )


# -- virtual degeneration chains --


@dataclass(frozen=True)
class VdegChain:
    """M (+) Z degenerates to N (+) Z along verified Riedtmann steps.

    links[i] is an invertible morphism from steps[i].n to steps[i+1]'s
    source node; start/end link the chain ends to M (+) Z and N (+) Z.
    """

    m: Module
    n: Module
    z: Module
    steps: tuple
    start_link: ModuleMorphism
    end_link: ModuleMorphism
    links: tuple


def verify_vdeg_chain(chain):
    """Check every step, link and endpoint of a virtual degeneration chain."""
    if not chain.steps:
        return refuted(certificate={"check": "empty_chain"})
    for idx, w in enumerate(chain.steps):
        v = riedtmann_verify(w)
        if not v.is_proved:
            return refuted(certificate={"check": f"step{idx}",
                                        "detail": v.certificate})
    mz = direct_sum(chain.m, chain.z)
    nz = direct_sum(chain.n, chain.z)
    if not _is_iso_between(chain.start_link, mz, chain.steps[0].m):
        return refuted(certificate={"check": "start_link"})
    if not _is_iso_between(chain.end_link, chain.steps[-1].n, nz):
        return refuted(certificate={"check": "end_link"})
    for idx, link in enumerate(chain.links):
        if not _is_iso_between(link, chain.steps[idx].n,
                               chain.steps[idx + 1].m):
            return refuted(certificate={"check": f"link{idx}"})
    return proved(witness=chain, steps=len(chain.steps))


def _is_iso_between(link, source, target):
    if link.source.actions != source.actions:
        return False
    if link.target.actions != target.actions:
        return False
    try:
        ModuleMorphism(link.source, link.target, link.matrix, check=True)
    except Exception:
        return False
    return link.is_invertible()


def block_permutation_iso(summands, perm):
    """Iso from (+) summands to the direct sum reordered by perm.

    perm[t] names the source block that lands in target position t; the
    morphism is the corresponding block permutation matrix, verified.
    """
    source = direct_sum(*summands)
    reordered = [summands[p] for p in perm]
    target = direct_sum(*reordered)
    field_ = source.algebra.field
    src_offsets = [0]
    for s in summands:
        src_offsets.append(src_offsets[-1] + s.dim)
    zero = field_.zero()
    rows = [[zero] * source.dim for _ in range(target.dim)]
    row0 = 0
    for t, p in enumerate(perm):
        blk = summands[p]
        for i in range(blk.dim):
            rows[row0 + i][src_offsets[p] + i] = field_.one()
        row0 += blk.dim
    mat = Matrix(field_, target.dim, source.dim, rows)
    return ModuleMorphism(source, target, mat, check=True)
