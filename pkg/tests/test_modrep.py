import random

import pytest

from moddeg.algebras import (
    a2_quiver,
    exterior_algebra,
    field_algebra,
    kronecker_quiver,
    path_algebra,
    tensor_extension,
    twist_automorphism,
)
from moddeg.errors import (
    AlgebraMismatch,
    MorphismUnverified,
    NotMorphism,
    RelationViolated,
    UnitNotIdentity,
)
from moddeg.fields import make_tower, prime_field, rationals
from moddeg.linalg import Matrix
from moddeg.modrep import (
    ModuleMorphism,
    direct_sum,
    end_algebra,
    hom_space,
    identity_morphism,
    is_division,
    is_local,
    iso_test,
    make_module,
    module_from_generators,
    module_from_quiver_rep,
    pullback,
    quotient_module,
    radical_char0,
    regular_module,
    submodule_module,
    zero_module,
)


def gauss():
    return make_tower("Q", [1, 0, 1], automorphism_images=[[0, 1], [0, -1]],
                      gen_name="i")


def dual_numbers(p=2):
    """F_p[x]/(x^2) as the one-variable exterior algebra."""
    return exterior_algebra(1, prime_field(p))


def kron_rep(field, a_mat, b_mat, dims=(1, 1), name=None):
    quiv = kronecker_quiver()
    alg = path_algebra(quiv, field)
    paths = quiv.paths()
    return module_from_quiver_rep(alg, quiv, paths, list(dims),
                                  [a_mat, b_mat], name=name), alg


def test_make_module_zero_and_simple():
    q = rationals()
    alg = path_algebra(a2_quiver(), q)
    z = zero_module(alg)
    assert z.dim == 0
    quiv = a2_quiver()
    s1 = module_from_quiver_rep(alg, quiv, quiv.paths(), [1, 0], [[[]]],
                                name="S1")
    assert s1.dim == 1


def test_make_module_rejects_bad_unit():
    q = rationals()
    alg = field_algebra(gauss())  # 2-dim commutative
    bad = [Matrix.zero(q, 1, 1), Matrix.zero(q, 1, 1)]
    with pytest.raises(UnitNotIdentity):
        make_module(alg, bad)


def test_make_module_rejects_relation_violation():
    # x^2 = 0 forces a nilpotent action
    alg = dual_numbers()
    f2 = alg.field
    bad = [Matrix.identity(f2, 1), Matrix.identity(f2, 1)]
    with pytest.raises(RelationViolated):
        make_module(alg, bad)


def test_direct_sum_dims_and_actions():
    alg = dual_numbers()
    reg = regular_module(alg)
    s = make_module(alg, [Matrix.identity(alg.field, 1),
                          Matrix.zero(alg.field, 1, 1)], name="S")
    both = direct_sum(reg, s)
    assert both.dim == 3
    assert direct_sum(reg, zero_module(alg)).dim == reg.dim
    rng = random.Random(3)
    # dimension additivity on random pairs over the Kronecker algebra
    for _ in range(5):
        d1, d2 = rng.randint(0, 2), rng.randint(0, 2)
        m1, alg2 = kron_rep(rationals(),
                            [[rng.randint(-2, 2) for _ in range(d1)]
                             for _ in range(d2)] if d1 and d2 else [],
                            [[rng.randint(-2, 2) for _ in range(d1)]
                             for _ in range(d2)] if d1 and d2 else [],
                            dims=(d1, d2))
        assert direct_sum(m1, m1).dim == 2 * m1.dim


def test_hom_space_simple_one_dim():
    q = rationals()
    alg = field_algebra(rationals())  # the field itself, 1-dimensional
    s = regular_module(alg)
    assert hom_space(s, s).k_dim == 1


def test_hom_space_additivity_seeded():
    alg = dual_numbers()
    f2 = alg.field
    reg = regular_module(alg)
    s = make_module(alg, [Matrix.identity(f2, 1), Matrix.zero(f2, 1, 1)])
    mods = [reg, s, direct_sum(reg, s)]
    for a in mods:
        for b in mods:
            for c in mods:
                ab = direct_sum(a, b)
                assert hom_space(ab, c).k_dim == \
                    hom_space(a, c).k_dim + hom_space(b, c).k_dim
                assert hom_space(c, ab).k_dim == \
                    hom_space(c, a).k_dim + hom_space(c, b).k_dim


def test_hom_space_K_dim_divisibility():
    f4 = make_tower(2, [1, 1, 1])
    lam = path_algebra(a2_quiver(), prime_field(2))
    gamma = tensor_extension(f4, lam)
    # the regular Gamma-module, k-dim 6
    reg = regular_module(gamma)
    h = hom_space(reg, reg)
    assert h.K_dim is not None
    assert h.k_dim == 2 * h.K_dim


def test_iso_test_identity_and_dim_mismatch():
    alg = dual_numbers()
    reg = regular_module(alg)
    v = iso_test(reg, reg)
    assert v.is_proved
    s = make_module(alg, [Matrix.identity(alg.field, 1),
                          Matrix.zero(alg.field, 1, 1)])
    assert iso_test(reg, s).is_refuted
    assert iso_test(reg, s).certificate["kind"] == "dim"


def test_iso_test_exhaustive_refutation_f2():
    alg = dual_numbers()
    f2 = alg.field
    reg = regular_module(alg)
    kk = make_module(alg, [Matrix.identity(f2, 2), Matrix.zero(f2, 2, 2)])
    v = iso_test(reg, kk, strategy="exhaustive")
    assert v.is_refuted


def test_iso_test_finds_witness_over_q():
    # Kronecker representations (1, 2) and (1, 2) conjugated by a change
    # of basis are isomorphic
    q = rationals()
    m1, alg = kron_rep(q, [[1]], [[2]])
    m2, _ = kron_rep(q, [[2]], [[4]])  # scaled versions, still isomorphic
    v = iso_test(m1, m2, seed=11)
    assert v.is_proved
    w = v.witness
    assert w.is_invertible()


def test_end_algebra_dual_numbers_regular():
    alg = dual_numbers()
    e, homs = end_algebra(regular_module(alg))
    assert e.dim == 2
    assert homs.k_dim == 2
    v = is_division(e)
    assert v.is_refuted


def test_end_algebra_simple():
    alg = field_algebra(rationals())
    e, _ = end_algebra(regular_module(alg))
    assert e.dim == 1
    assert is_division(e).is_proved


def test_radical_char0():
    # a field has zero radical
    e = field_algebra(gauss())
    assert radical_char0(e) == []
    # Q(i) (x) Q(i) is etale, radical zero
    g = gauss()
    etale = tensor_extension(g, field_algebra(g))
    assert radical_char0(etale) == []
    # End of the regular module of the 2-variable exterior algebra over Q
    lam = exterior_algebra(2, rationals())
    e2, _ = end_algebra(regular_module(lam))
    assert len(radical_char0(e2)) > 0


def test_is_division_gauss_field_algebra():
    v = is_division(field_algebra(gauss()))
    assert v.is_proved
    assert v.log["min_poly_degree"] == 2


def test_is_division_exhaustive_f2():
    alg = dual_numbers()
    e, _ = end_algebra(regular_module(alg))
    v = is_division(e)
    assert v.is_refuted
    f4 = field_algebra(make_tower(2, [1, 1, 1]))
    assert is_division(f4).is_proved


def test_is_local_examples():
    # End(A (+) A) has an idempotent projection
    alg = dual_numbers()
    reg = regular_module(alg)
    e, _ = end_algebra(direct_sum(reg, reg))
    assert is_local(e).is_refuted
    # End of the simple module over F_2[x]/(x^2) is F_2
    f2 = alg.field
    s = make_module(alg, [Matrix.identity(f2, 1), Matrix.zero(f2, 1, 1)])
    es, _ = end_algebra(s)
    assert is_local(es).is_proved
    # a field is local
    assert is_local(field_algebra(gauss())).is_proved
    # Q x Q refuted through the idempotent search
    q = rationals()
    qq = tensor_extension(q, field_algebra(q))
    from moddeg.algebras import from_structure_constants
    prod = from_structure_constants(
        q, 2, [[(1, 0), (0, 0)], [(0, 0), (0, 1)]], [1, 1])
    assert is_local(prod).is_refuted


def test_pullback_identity_and_twist():
    g = gauss()
    lam = path_algebra(kronecker_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    reg = regular_module(gamma)
    ident = twist_automorphism(gamma, g.identity_index)
    assert pullback(reg, ident).actions == reg.actions
    conj = twist_automorphism(gamma, 1 - g.identity_index)
    twisted = pullback(reg, conj)
    assert twisted.dim == reg.dim
    # twisting twice returns the original actions
    assert pullback(twisted, conj).actions == reg.actions


def test_pullback_requires_verified():
    g = gauss()
    lam = path_algebra(kronecker_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    from moddeg.algebras import AlgebraMorphism
    raw = AlgebraMorphism(gamma, gamma,
                          Matrix.identity(gamma.field, gamma.dim))
    with pytest.raises(MorphismUnverified):
        pullback(regular_module(gamma), raw)


def test_submodule_and_quotient_exterior():
    q = rationals()
    lam = exterior_algebra(2, q)
    reg = regular_module(lam)
    names = list(lam.basis_names)
    x_vec = [q.zero()] * 4
    x_vec[names.index("X")] = q.one()
    sub, incl = submodule_module(reg, [x_vec], name="(X)")
    assert sub.dim == 2  # spans X and XY
    assert incl.is_injective()
    quot, proj = quotient_module(reg, incl, name="L/(X)")
    assert quot.dim == 2
    assert proj.is_surjective()
    # the composite must vanish
    assert (proj.matrix * incl.matrix).is_zero()


def test_module_morphism_checks():
    alg = dual_numbers()
    reg = regular_module(alg)
    f2 = alg.field
    with pytest.raises(NotMorphism):
        ModuleMorphism(reg, reg, Matrix.from_rows(f2, [[1, 0], [0, 0]]))
    ident = identity_morphism(reg)
    assert ident.is_invertible()


def test_module_from_generators_enumeration_filter():
    alg = dual_numbers()
    f2 = alg.field
    # 2x2 matrices with t^2 = 0 over F_2: zero plus 3 nonzero nilpotents
    valid = []
    for code in range(16):
        bits = [(code >> k) & 1 for k in range(4)]
        t = Matrix.from_rows(f2, [bits[:2], bits[2:]])
        mod = module_from_generators(alg, [t])
        if mod is not None:
            valid.append(mod)
    assert len(valid) == 4
