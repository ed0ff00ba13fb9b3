import pytest
from fractions import Fraction

from moddeg.algebras import (
    AlgebraMorphism,
    Quiver,
    a2_quiver,
    embedding_morphism,
    exterior_algebra,
    field_algebra,
    from_structure_constants,
    kronecker_quiver,
    path_algebra,
    scalar_restriction,
    tensor_extension,
    twist_automorphism,
    verify_algebra_morphism,
)
from moddeg.errors import (
    CyclicQuiver,
    FieldMismatch,
    NotAssociative,
    NotExtensionAlgebra,
    UnitLawFails,
    UnsupportedVarCount,
)
from moddeg.fields import make_tower, prime_field, rationals
from moddeg.linalg import Matrix


def gauss():
    return make_tower("Q", [1, 0, 1], automorphism_images=[[0, 1], [0, -1]],
                      gen_name="i")


def b2_algebra(q=None):
    """The 5-dimensional triangular algebra of pairs ((z, w), (0, r)).

    Elements are (z, w, r) with z, w complex and r real, multiplied as
    (z,w,r)(z',w',r') = (zz', zw' + wr', rr'); basis over the rationals:
    (1,0,0), (i,0,0), (0,1,0), (0,i,0), (0,0,1).
    """
    q = q or rationals()

    def mul(a, b):
        # components: z = (a0, a1), w = (a2, a3), r = a4
        z = (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        w = (a[0] * b[2] - a[1] * b[3] + a[2] * b[4],
             a[0] * b[3] + a[1] * b[2] + a[3] * b[4])
        return [z[0], z[1], w[0], w[1], a[4] * b[4]]

    basis = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
             [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    basis = [[Fraction(c) for c in v] for v in basis]
    table = [[mul(u, v) for v in basis] for u in basis]
    unit = [1, 0, 0, 0, 1]
    gens = tuple((nm, tuple(q.from_int(c) for c in vec)) for nm, vec in [
        ("z1", (1, 0, 0, 0, 0)), ("zi", (0, 1, 0, 0, 0)),
        ("w1", (0, 0, 1, 0, 0)), ("wi", (0, 0, 0, 1, 0))])
    exprs = [("gen", 0), ("gen", 1), ("gen", 2), ("gen", 3),
             ("unit_minus", (0,))]
    return from_structure_constants(
        q, 5, [[tuple(q.from_coeffs([str(c)]) for c in vec) for vec in row]
               for row in table],
        unit, basis_names=["z1", "zi", "w1", "wi", "r"],
        gens=gens, basis_exprs=exprs, name="B2")


def test_b2_structure_constants_valid():
    alg = b2_algebra()
    assert alg.dim == 5
    assert not alg.is_commutative()


def test_one_dimensional_algebra():
    q = rationals()
    alg = from_structure_constants(q, 1, [[(1,)]], [1])
    assert alg.dim == 1
    assert alg.is_commutative()


def test_unit_law_failure():
    q = rationals()
    with pytest.raises(UnitLawFails):
        from_structure_constants(q, 1, [[(0,)]], [1])


def test_associativity_failure():
    q = rationals()
    # b1*b1 = b2, b1*b2 = 1, b2*b1 = 0, so (b1 b1) b1 != b1 (b1 b1)
    table = [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(0, 1, 0), (0, 0, 1), (1, 0, 0)],
        [(0, 0, 1), (0, 0, 0), (0, 0, 0)],
    ]
    with pytest.raises(NotAssociative):
        from_structure_constants(q, 3, table, [1, 0, 0])


def test_path_algebra_kronecker():
    alg = path_algebra(kronecker_quiver(), gauss())
    assert alg.dim == 4
    assert alg.basis_names[:2] == ("e1", "e2")


def test_path_algebra_three_arrow_chain():
    # two vertices chained twice with double arrows: 3 + 4 + 4 paths
    quiv = Quiver(3, [(0, 1, "a1"), (0, 1, "a2"), (1, 2, "b1"), (1, 2, "b2")])
    alg = path_algebra(quiv, rationals())
    assert alg.dim == 11


def test_path_algebra_a2_f2():
    alg = path_algebra(a2_quiver(), prime_field(2))
    assert alg.dim == 3


def test_path_algebra_rejects_cycles():
    with pytest.raises(CyclicQuiver):
        path_algebra(Quiver(2, [(0, 1), (1, 0)]), rationals())


def test_exterior_algebra_two_vars():
    q = rationals()
    alg = exterior_algebra(2, q)
    assert alg.dim == 4
    names = list(alg.basis_names)
    ix, iy, ixy = names.index("X"), names.index("Y"), names.index("XY")
    xy = alg.mult_vec(alg.basis_vector(ix), alg.basis_vector(iy))
    yx = alg.mult_vec(alg.basis_vector(iy), alg.basis_vector(ix))
    assert xy[ixy] == q.one()
    assert yx[ixy] == -q.one()
    assert all(not c for c in alg.mult_vec(alg.basis_vector(ix),
                                           alg.basis_vector(ix)))


def test_exterior_algebra_sizes():
    assert exterior_algebra(3, rationals()).dim == 8
    alg = exterior_algebra(1, prime_field(2))
    assert alg.dim == 2
    with pytest.raises(UnsupportedVarCount):
        exterior_algebra(5, rationals())


def test_tensor_extension_kronecker():
    g = gauss()
    lam = path_algebra(kronecker_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    assert gamma.dim == 8
    assert gamma.ext_tag is not None
    assert gamma.ext_tag.lambda_dim == 4


def test_tensor_extension_cbrt2_square():
    t = make_tower("Q", [-2, 0, 0, 1], automorphism_images=[[0, 1]])
    k_as_algebra = field_algebra(t)
    gamma = tensor_extension(t, k_as_algebra)
    assert gamma.dim == 9
    assert gamma.is_commutative()


def test_tensor_extension_degree_one_is_identity_table():
    q = rationals()
    lam = path_algebra(a2_quiver(), q)
    gamma = tensor_extension(q, lam)
    assert gamma.dim == lam.dim
    assert gamma.table == lam.table


def test_tensor_extension_field_mismatch():
    g = gauss()
    lam = path_algebra(a2_quiver(), prime_field(2))
    with pytest.raises(FieldMismatch):
        tensor_extension(g, lam)


def test_embedding_is_verified_morphism():
    g = gauss()
    lam = path_algebra(a2_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    emb = embedding_morphism(lam, gamma)
    assert emb.verified


def test_verify_algebra_morphism_identity_and_zero():
    q = rationals()
    alg = path_algebra(a2_quiver(), q)
    ident = AlgebraMorphism(alg, alg, Matrix.identity(q, alg.dim))
    v = verify_algebra_morphism(ident)
    assert v.is_proved and v.log["bijective"]
    zero = AlgebraMorphism(alg, alg, Matrix.zero(q, alg.dim, alg.dim))
    assert verify_algebra_morphism(zero).is_refuted


def test_twist_automorphism_identity_and_conjugation():
    g = gauss()
    lam = path_algebra(kronecker_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    ident = twist_automorphism(gamma, g.identity_index)
    assert ident.matrix == Matrix.identity(gamma.field, gamma.dim)
    conj = twist_automorphism(gamma, 1 - g.identity_index)
    assert conj.matrix != ident.matrix
    # order two
    assert conj.matrix * conj.matrix == Matrix.identity(gamma.field, gamma.dim)


def test_twist_respects_group_structure():
    f4 = make_tower(2, [1, 1, 1])
    lam = path_algebra(a2_quiver(), prime_field(2))
    gamma = tensor_extension(f4, lam)
    mats = [twist_automorphism(gamma, i).matrix
            for i in range(len(f4.automorphisms))]
    for i in range(2):
        for j in range(2):
            k = f4.compose_automorphisms(i, j)
            assert mats[i] * mats[j] == mats[k]


def test_twist_requires_extension_tag():
    lam = path_algebra(a2_quiver(), rationals())
    with pytest.raises(NotExtensionAlgebra):
        twist_automorphism(lam, 0)


def test_scalar_restriction_matches_tensor_extension():
    # path algebra over Q(i) restricted to Q is isomorphic, via the
    # canonical basis bijection, to Q(i) (x) (path algebra over Q)
    g = gauss()
    over_k = path_algebra(kronecker_quiver(), g)
    restricted = scalar_restriction(over_k)
    lam = path_algebra(kronecker_quiver(), rationals())
    gamma = tensor_extension(g, lam)
    assert restricted.dim == gamma.dim == 8
    # canonical bijection (i, j) -> (i, j) is an algebra isomorphism
    iso = AlgebraMorphism(gamma, restricted,
                          Matrix.identity(gamma.field, gamma.dim))
    v = verify_algebra_morphism(iso)
    assert v.is_proved and v.log["bijective"]


def test_field_algebra_f4():
    t = make_tower(2, [1, 1, 1])
    alg = field_algebra(t)
    assert alg.dim == 2
    assert alg.is_commutative()
