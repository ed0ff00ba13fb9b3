"""Bundled example library: seven worked cases with frozen witnesses.

Each case ships as a directory of JSON documents (fields, algebras,
modules, morphisms, sequences).  Everything derived (inclusion maps,
Riedtmann witnesses, chain links) is computed here with fixed seeds,
verified, and written out; the suite re-verifies all of it from the
files alone.
"""

from __future__ import annotations

import os

from . import documents as docs
from .algebras import (
    Quiver,
    exterior_algebra,
    field_algebra,
    from_structure_constants,
    path_algebra,
    scalar_restriction,
    tensor_extension,
    verify_algebra_morphism,
    AlgebraMorphism,
)
from .descent import k_rep_matrices, k_linear_module, restrict
from .errors import CorpusMissing
from .fields import make_tower, prime_field, rationals
from .linalg import Matrix
from .modrep import (
    ModuleMorphism,
    direct_sum,
    hom_space,
    iso_test,
    make_module,
    quotient_module,
    regular_module,
    submodule_module,
)
from .orders import (
    ShortExactSequence,
    VdegChain,
    block_permutation_iso,
    pad_witness,
    retarget_witness,
    riedtmann_search,
    riedtmann_verify,
    sum_witnesses,
    verify_ses,
    witness_from_ses,
)

CASE_NAMES = ("kron1", "b2", "threearrow", "kronmin", "cbrt2", "ext2", "ext3")


def corpus_root():
    """Directory of the packaged corpus documents."""
    here = os.path.dirname(os.path.abspath(__file__))
    root = os.path.join(here, "corpus_data")
    if not os.path.isdir(root):
        raise CorpusMissing("packaged corpus_data directory is missing")
    return root


def case_dir(name, root=None):
    root = root or corpus_root()
    path = os.path.join(root, name)
    if not os.path.isdir(path):
        raise CorpusMissing(f"corpus case {name!r} not found under {root}")
    return path


# -- shared builders --


def gauss_tower():
    return make_tower("Q", [1, 0, 1], automorphism_images=[[0, 1], [0, -1]],
                      gen_name="i")


def cbrt2_tower():
    return make_tower("Q", [-2, 0, 0, 1], automorphism_images=[[0, 1]],
                      gen_name="c")


def f4_tower():
    return make_tower(2, [1, 1, 1], gen_name="w")


def b2_algebra(q=None):
    """Triangular 5-dimensional algebra of pairs ((z, w), (0, r)).

    Rational basis (z=1), (z=i), (w=1), (w=i), (r=1); the product rule is
    (z,w,r)(z',w',r') = (zz', zw' + wr', rr').
    """
    q = q or rationals()

    def mul(a, b):
        z = (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        w = (a[0] * b[2] - a[1] * b[3] + a[2] * b[4],
             a[0] * b[3] + a[1] * b[2] + a[3] * b[4])
        return [z[0], z[1], w[0], w[1], a[4] * b[4]]

    basis = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
             [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    table = [[tuple(q.from_int(c) for c in mul(u, v)) for v in basis]
             for u in basis]
    unit = [1, 0, 0, 0, 1]
    gens = tuple((nm, tuple(q.from_int(c) for c in vec)) for nm, vec in [
        ("z1", (1, 0, 0, 0, 0)), ("zi", (0, 1, 0, 0, 0)),
        ("w1", (0, 0, 1, 0, 0)), ("wi", (0, 0, 0, 1, 0))])
    exprs = [("gen", 0), ("gen", 1), ("gen", 2), ("gen", 3),
             ("unit_minus", (0,))]
    return from_structure_constants(
        q, 5, table, unit, basis_names=["z1", "zi", "w1", "wi", "r"],
        gens=gens, basis_exprs=exprs, name="B2")


def kronecker_quiver():
    return Quiver(2, [(0, 1, "a"), (0, 1, "b")])


def threearrow_quiver():
    return Quiver(3, [(0, 1, "a1"), (0, 1, "a2"), (1, 2, "b1"), (1, 2, "b2")])


def b2_target_quiver():
    # vertices 0, 1, 2 with arrows 1 -> 0 and 1 -> 2
    return Quiver(3, [(1, 0, "al"), (1, 2, "be")])


def _basis_vec(alg, name):
    v = [alg.field.zero()] * alg.dim
    v[list(alg.basis_names).index(name)] = alg.field.one()
    return v


def _right_mult(alg, coords):
    cols = [list(alg.mult_vec(alg.basis_vector(j), coords))
            for j in range(alg.dim)]
    return Matrix.from_columns(alg.field, cols, alg.dim)


class _Present:
    """A subquotient of the regular module with lift and express maps."""

    def __init__(self, module, lift, express):
        self.module = module
        self.lift = lift          # (dim Lambda) x (dim module) section
        self.express = express    # Lambda coords -> module coords


def _present_sub(reg, alg, gen_vectors, name):
    sub, incl = submodule_module(reg, gen_vectors, name=name)

    def express(vec):
        sol = incl.matrix.solve(Matrix.column(alg.field, list(vec)))
        if not sol.is_proved:
            raise ValueError("vector not in the submodule")
        return [sol.witness.entries[i][0] for i in range(sub.dim)]

    return _Present(sub, incl.matrix, express), incl


def _present_subquotient(reg, alg, gen_vectors, kill_vectors, name):
    """Submodule generated by gen_vectors modulo the one by kill_vectors."""
    sub, incl = submodule_module(reg, gen_vectors, name=name + "_amb")
    inner = []
    for v in kill_vectors:
        sol = incl.matrix.solve(Matrix.column(alg.field, list(v)))
        if not sol.is_proved:
            raise ValueError("killed vector is outside the submodule")
        inner.append([sol.witness.entries[i][0] for i in range(sub.dim)])
    ksub, kincl = submodule_module(sub, inner, name=name + "_kill")
    quot, proj = quotient_module(sub, kincl, name=name)
    lift = incl.matrix * _section_of(proj)

    def express(vec):
        sol = incl.matrix.solve(Matrix.column(alg.field, list(vec)))
        if not sol.is_proved:
            raise ValueError("vector not in the ambient submodule")
        img = proj.matrix * sol.witness
        return [img.entries[i][0] for i in range(quot.dim)]

    return _Present(quot, lift, express)


def _present_quotient(reg, alg, kill_vectors, name):
    ksub, kincl = submodule_module(reg, kill_vectors, name=name + "_kill")
    quot, proj = quotient_module(reg, kincl, name=name)
    lift = _section_of(proj)

    def express(vec):
        img = proj.matrix * Matrix.column(alg.field, list(vec))
        return [img.entries[i][0] for i in range(quot.dim)]

    return _Present(quot, lift, express)


def _section_of(proj):
    """Right inverse of a surjective projection matrix."""
    sol = proj.matrix.solve(
        Matrix.identity(proj.matrix.tower, proj.matrix.rows))
    if not sol.is_proved:  # pragma: no cover
        raise RuntimeError("projection has no section")
    return sol.witness


def _induced_right_mult(alg, src: _Present, dst: _Present, coords):
    """Map between subquotients induced by right multiplication."""
    rx = _right_mult(alg, coords)
    cols = []
    for c in range(src.module.dim):
        vec = rx * Matrix.column(alg.field, src.lift.column_vector(c))
        cols.append(dst.express([vec.entries[i][0] for i in range(alg.dim)]))
    mat = Matrix.from_columns(alg.field, cols, dst.module.dim)
    return ModuleMorphism(src.module, dst.module, mat, check=True)


def _find_injective_hom(a, b, seed=0, trials=400):
    import random
    from .orders import _coeff_stream
    homs = hom_space(a, b)
    rng = random.Random(seed)
    for coeffs in _coeff_stream(a.algebra.field, homs.k_dim, rng, trials):
        f = homs.element(coeffs)
        if f.is_injective():
            return f
    raise RuntimeError("no injective homomorphism found")


def _ses_via_quotient(incl, model, seed=0):
    """Close an injection into a short exact sequence onto a known model."""
    quot, proj = quotient_module(incl.target, incl)
    v = iso_test(quot, model, seed=seed, trials=600)
    if not v.is_proved:
        raise RuntimeError("quotient did not match the model module")
    full = v.witness.compose(proj)
    ses = ShortExactSequence(incl=incl, proj=full)
    assert verify_ses(ses).is_proved
    return ses


def _ses_via_kernel(proj, model, seed=0):
    """Close a surjection into a short exact sequence onto a known kernel."""
    field = proj.source.algebra.field
    vecs = [[v.entries[i][0] for i in range(v.rows)]
            for v in proj.matrix.nullspace()]
    sub, sub_incl = submodule_module(proj.source, vecs)
    v = iso_test(model, sub, seed=seed, trials=600)
    if not v.is_proved:
        raise RuntimeError("kernel did not match the model module")
    incl = sub_incl.compose(v.witness)
    ses = ShortExactSequence(incl=incl, proj=proj)
    assert verify_ses(ses).is_proved
    return ses


# -- case builders: each returns {relative filename: document} --


def build_kron1():
    tower = gauss_tower()
    quiv = kronecker_quiver()
    lam = path_algebra(quiv, rationals(), name="kron_lambda")
    gamma = tensor_extension(tower, lam, name="kron_gamma")
    paths = quiv.paths()
    i = tower.gen()
    m_mats = k_rep_matrices(quiv, paths, tower, [1, 1],
                            [[[tower.one()]], [[i]]])
    n_mats = k_rep_matrices(quiv, paths, tower, [1, 1],
                            [[[tower.one()]], [[-i]]])
    # sanity: the pair is the conjugate-twist example
    m = k_linear_module(gamma, m_mats, name="M")
    n = k_linear_module(gamma, n_mats, name="N")
    assert iso_test(m, n).is_refuted

    tower_doc = docs.tower_to_json(tower, name="gauss")
    lam_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "kron_lambda", "constructor": "path_algebra",
        "field": docs.tower_to_json(rationals()),
        "quiver": docs.quiver_to_json(quiv),
    }
    gamma_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "kron_gamma", "constructor": "tensor_extension",
        "tower": {"$ref": "tower.json"},
        "lambda": {"$ref": "lambda.json"},
    }
    gref = {"$ref": "gamma.json"}
    return {
        "tower.json": tower_doc,
        "lambda.json": lam_doc,
        "gamma.json": gamma_doc,
        "M.json": docs.k_module_to_json(gref, m_mats, name="M"),
        "N.json": docs.k_module_to_json(gref, n_mats, name="N"),
    }


def build_b2():
    tower = gauss_tower()
    lam = b2_algebra()
    gamma = tensor_extension(tower, lam, name="b2_gamma")
    quiv = b2_target_quiver()
    cq_over_k = path_algebra(quiv, tower, name="cq_over_k")
    cq = scalar_restriction(cq_over_k, name="cq")
    paths = quiv.paths()

    # the explicit isomorphism on the five 1 (x) basis elements
    def cq_coords(terms):
        v = [cq.field.zero()] * cq.dim
        for power, path_name, sign in terms:
            inner = list(cq.ext_tag.lambda_algebra.basis_names).index(path_name)
            v[cq.ext_tag.flat(power, inner)] = (
                cq.field.one() if sign > 0 else -cq.field.one())
        return v

    f_one = [
        cq_coords([(0, "e1", 1), (0, "e3", 1)]),       # z = 1
        cq_coords([(1, "e1", 1), (1, "e3", -1)]),      # z = i
        cq_coords([(0, "al", 1), (0, "be", 1)]),       # w = 1
        cq_coords([(1, "al", 1), (1, "be", -1)]),      # w = i
        cq_coords([(0, "e2", 1)]),                     # r = 1
    ]
    from .descent import _scalar_element_coords
    cols = []
    for s in range(tower.degree):
        alpha_s = _scalar_element_coords(cq, tower.gen() ** s)
        for j in range(lam.dim):
            cols.append(list(cq.mult_vec(tuple(alpha_s), tuple(f_one[j]))))
    f_mat = Matrix.from_columns(cq.field, cols, cq.dim)
    f = AlgebraMorphism(gamma, cq, f_mat)
    v = verify_algebra_morphism(f)
    assert v.is_proved and v.log["bijective"]

    def simple(vdims, arrows, name):
        return k_rep_matrices(quiv, paths, tower, vdims, arrows), name

    one = [[tower.one()]]
    s1_mats = k_rep_matrices(quiv, paths, tower, [1, 0, 0], [[], []])
    s2_mats = k_rep_matrices(quiv, paths, tower, [0, 1, 0], [[], []])
    s3_mats = k_rep_matrices(quiv, paths, tower, [0, 0, 1], [[], []])
    i1_mats = k_rep_matrices(quiv, paths, tower, [1, 1, 0], [one, []])
    i3_mats = k_rep_matrices(quiv, paths, tower, [0, 1, 1], [[], one])

    tower_doc = docs.tower_to_json(tower, name="gauss")
    lam_doc = docs.algebra_to_json(lam, name="b2_lambda",
                                   field_ref=docs.tower_to_json(rationals()))
    gamma_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "b2_gamma", "constructor": "tensor_extension",
        "tower": {"$ref": "tower.json"}, "lambda": {"$ref": "lambda.json"},
    }
    cq_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "cq", "constructor": "scalar_restriction",
        "algebra": {
            "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
            "name": "cq_over_k", "constructor": "path_algebra",
            "field": {"$ref": "tower.json"},
            "quiver": docs.quiver_to_json(quiv),
        },
    }
    cref = {"$ref": "cq.json"}
    f_doc = docs.morphism_to_json(
        f, source_ref={"$ref": "gamma.json"}, target_ref=cref,
        name="f", between="algebras")
    return {
        "tower.json": tower_doc,
        "lambda.json": lam_doc,
        "gamma.json": gamma_doc,
        "cq.json": cq_doc,
        "f.json": f_doc,
        "s1.json": docs.k_module_to_json(cref, s1_mats, name="S1"),
        "s2.json": docs.k_module_to_json(cref, s2_mats, name="S2"),
        "s3.json": docs.k_module_to_json(cref, s3_mats, name="S3"),
        "i1.json": docs.k_module_to_json(cref, i1_mats, name="I1"),
        "i3.json": docs.k_module_to_json(cref, i3_mats, name="I3"),
    }


def build_threearrow():
    tower = gauss_tower()
    quiv = threearrow_quiver()
    lam = path_algebra(quiv, rationals(), name="ta_lambda")
    gamma = tensor_extension(tower, lam, name="ta_gamma")
    paths = quiv.paths()
    i = tower.gen()
    one = tower.one()
    zero = tower.zero()

    def km(vdims, arrows, name):
        mats = k_rep_matrices(quiv, paths, tower, vdims, arrows)
        return mats, k_linear_module(gamma, mats, name=name)

    a_mats, a_mod = km([0, 1, 2], [[], [], [[one], [zero]], [[zero], [one]]],
                       "A")
    b_mats, b_mod = km(
        [3, 2, 2],
        [[[one, zero, zero], [zero, one, zero]],
         [[zero, one, zero], [zero, zero, one]],
         [[one, zero], [zero, one]],
         [[i, zero], [zero, i]]], "B")
    c_mats, c_mod = km([3, 1, 0],
                       [[[one, zero, zero]], [[zero, one, zero]], [], []],
                       "C")
    x_mats, x_mod = km([0, 1, 1], [[], [], [[one]], [[i]]], "X")

    # Lambda-side exact sequence 0 -> A -> B -> C -> 0 (found, then frozen)
    ra, rb, rc = restrict(a_mod, "rA"), restrict(b_mod, "rB"), \
        restrict(c_mod, "rC")
    incl = _find_injective_hom(ra, rb, seed=2)
    ses = _ses_via_quotient(incl, rc, seed=3)
    witness = witness_from_ses(ses.incl, ses.proj)
    assert riedtmann_verify(witness).is_proved

    tower_doc = docs.tower_to_json(tower, name="gauss")
    lam_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "ta_lambda", "constructor": "path_algebra",
        "field": docs.tower_to_json(rationals()),
        "quiver": docs.quiver_to_json(quiv),
    }
    gamma_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "ta_gamma", "constructor": "tensor_extension",
        "tower": {"$ref": "tower.json"}, "lambda": {"$ref": "lambda.json"},
    }
    gref = {"$ref": "gamma.json"}
    # the restricted modules are reconstructed by the suite; the sequence
    # document carries them inline for independent re-verification
    seq_doc = docs.riedtmann_to_json(witness, name="b_deg_ac_lambda")
    return {
        "tower.json": tower_doc,
        "lambda.json": lam_doc,
        "gamma.json": gamma_doc,
        "A.json": docs.k_module_to_json(gref, a_mats, name="A"),
        "B.json": docs.k_module_to_json(gref, b_mats, name="B"),
        "C.json": docs.k_module_to_json(gref, c_mats, name="C"),
        "X.json": docs.k_module_to_json(gref, x_mats, name="X"),
        "seq_lambda.json": seq_doc,
    }


def build_kronmin():
    tower = gauss_tower()
    quiv = kronecker_quiver()
    lam = path_algebra(quiv, rationals(), name="kron_lambda")
    gamma = tensor_extension(tower, lam, name="kron_gamma")
    paths = quiv.paths()
    i = tower.gen()
    one = tower.one()
    zero = tower.zero()

    def km(arrows, name, dims=(2, 2)):
        mats = k_rep_matrices(quiv, paths, tower, list(dims), arrows)
        return mats, k_linear_module(gamma, mats, name=name)

    ident2 = [[one, zero], [zero, one]]
    m_mats, m_mod = km([ident2, [[i, zero], [one, i]]], "M")
    n_mats, n_mod = km([ident2, [[i, zero], [zero, i]]], "N")
    np_mats, np_mod = km([ident2, [[i, zero], [zero, -i]]], "Nprime")
    xi_mats = k_rep_matrices(quiv, paths, tower, [1, 1], [[[one]], [[i]]])
    xi_mod = k_linear_module(gamma, xi_mats, name="Xi")

    v = riedtmann_search(m_mod, n_mod, [xi_mod], budget=4000, seed=5)
    assert v.is_proved
    witness = v.witness

    tower_doc = docs.tower_to_json(tower, name="gauss")
    lam_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "kron_lambda", "constructor": "path_algebra",
        "field": docs.tower_to_json(rationals()),
        "quiver": docs.quiver_to_json(quiv),
    }
    gamma_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "kron_gamma", "constructor": "tensor_extension",
        "tower": {"$ref": "tower.json"}, "lambda": {"$ref": "lambda.json"},
    }
    gref = {"$ref": "gamma.json"}
    return {
        "tower.json": tower_doc,
        "lambda.json": lam_doc,
        "gamma.json": gamma_doc,
        "M.json": docs.k_module_to_json(gref, m_mats, name="M"),
        "N.json": docs.k_module_to_json(gref, n_mats, name="N"),
        "Nprime.json": docs.k_module_to_json(gref, np_mats, name="Nprime"),
        "Xi.json": docs.k_module_to_json(gref, xi_mats, name="Xi"),
        "seq_gamma.json": docs.riedtmann_to_json(witness, name="m_deg_n_gamma"),
    }


def build_cbrt2():
    tower = cbrt2_tower()
    kalg = field_algebra(tower, name="K")
    gamma = tensor_extension(tower, kalg, name="KxK")
    # K-side embedding x -> x (x) 1
    zero = gamma.field.zero()
    cols = []
    for iexp in range(tower.degree):
        v = [zero] * gamma.dim
        v[gamma.ext_tag.flat(iexp, 0)] = gamma.field.one()
        cols.append(v)
    emb = AlgebraMorphism(kalg, gamma, Matrix.from_columns(gamma.field, cols,
                                                           gamma.dim))
    assert verify_algebra_morphism(emb).is_proved

    tower_doc = docs.tower_to_json(tower, name="cbrt2")
    kalg_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "K", "constructor": "field_algebra",
        "tower": {"$ref": "tower.json"},
    }
    gamma_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "KxK", "constructor": "tensor_extension",
        "tower": {"$ref": "tower.json"}, "lambda": {"$ref": "kalg.json"},
    }
    emb_doc = docs.morphism_to_json(
        emb, source_ref={"$ref": "kalg.json"},
        target_ref={"$ref": "gamma.json"}, name="k_side", between="algebras")
    return {
        "tower.json": tower_doc,
        "kalg.json": kalg_doc,
        "gamma.json": gamma_doc,
        "k_side.json": emb_doc,
    }


def build_ext2():
    q = rationals()
    lam = exterior_algebra(2, q, name="ext2")
    reg = regular_module(lam, name="L")
    fx, fx_incl = submodule_module(reg, [_basis_vec(lam, "X")], name="(X)")
    gy, gy_incl = submodule_module(reg, [_basis_vec(lam, "Y")], name="(Y)")
    rx = _right_mult(lam, tuple(_basis_vec(lam, "X")))
    ry = _right_mult(lam, tuple(_basis_vec(lam, "Y")))
    proj_x = ModuleMorphism(reg, fx, fx_incl.matrix.solve(rx).witness,
                            check=True)
    proj_y = ModuleMorphism(reg, gy, gy_incl.matrix.solve(ry).witness,
                            check=True)
    w_x = witness_from_ses(fx_incl, proj_x)
    w_y = witness_from_ses(gy_incl, proj_y)
    doubled = sum_witnesses(w_x, w_y)
    iso = block_permutation_iso([fx, fx, gy, gy], [0, 2, 1, 3])
    doubled = retarget_witness(doubled, iso)
    assert riedtmann_verify(doubled).is_proved
    assert iso_test(fx, gy).is_refuted

    lam_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "ext2", "constructor": "exterior_algebra",
        "field": docs.tower_to_json(q), "num_vars": 2,
    }
    lref = {"$ref": "lambda.json"}
    return {
        "lambda.json": lam_doc,
        "fsub.json": docs.module_to_json(fx, algebra_ref=lref, name="(X)"),
        "gsub.json": docs.module_to_json(gy, algebra_ref=lref, name="(Y)"),
        "seq_single.json": docs.riedtmann_to_json(w_x, name="l_deg_xx"),
        "seq_doubled.json": docs.riedtmann_to_json(doubled,
                                                   name="l2_deg_xy2"),
    }


def build_ext3():
    q = rationals()
    lam = exterior_algebra(3, q, name="ext3")
    reg = regular_module(lam, name="L")

    def bv(name):
        return _basis_vec(lam, name)

    rr3 = _present_subquotient(reg, lam, [bv("X"), bv("Y"), bv("Z")],
                               [bv("XYZ")], "r/r3")
    lr2 = _present_quotient(reg, lam, [bv("XY"), bv("XZ"), bv("YZ")], "L/r2")
    z_r3 = _present_subquotient(reg, lam, [bv("Z")], [bv("XYZ")], "(Z)/r3")
    r_xz = _present_subquotient(reg, lam, [bv("X"), bv("Y"), bv("Z")],
                                [bv("XZ")], "r/(XZ)")
    xz = _present_sub(reg, lam, [bv("XZ")], "(XZ)")[0]
    yz = _present_sub(reg, lam, [bv("YZ")], "(YZ)")[0]
    xzyz = _present_sub(reg, lam, [bv("XZ"), bv("YZ")], "(XZ,YZ)")[0]
    simple = make_module(
        lam, [Matrix.identity(q, 1)] + [Matrix.zero(q, 1, 1)] * (lam.dim - 1),
        name="S")

    # sequence 1: 0 -> L/r2 -(.X, .Z)-> r/r3 (+) (Z)/r3 -> r/(XZ) -> 0
    to_rr3 = _induced_right_mult(lam, lr2, rr3, tuple(bv("X")))
    to_zr3 = _induced_right_mult(lam, lr2, z_r3, tuple(bv("Z")))
    mid1 = direct_sum(rr3.module, z_r3.module)
    incl1 = ModuleMorphism(lr2.module, mid1,
                           Matrix.vstack([to_rr3.matrix, to_zr3.matrix]),
                           check=True)
    ses1 = _ses_via_quotient(incl1, r_xz.module, seed=11)

    # sequence 2: 0 -> (XZ) -> r/(XZ) -(.Z)-> (XZ,YZ) -> 0
    proj2 = _induced_right_mult(lam, r_xz, xzyz, tuple(bv("Z")))
    ses2 = _ses_via_kernel(proj2, xz.module, seed=13)

    # sequence 3: 0 -> (YZ) -> (XZ,YZ) -> S -> 0, the literal inclusion
    incl3 = _induced_right_mult(lam, yz, xzyz, tuple(lam.unit))
    ses3 = _ses_via_quotient(incl3, simple, seed=15)

    # sequence 4: 0 -> (Z)/r3 -(.X, .Y)-> (XZ) (+) (YZ) -> S -> 0
    to_xz = _induced_right_mult(lam, z_r3, xz, tuple(bv("X")))
    to_yz = _induced_right_mult(lam, z_r3, yz, tuple(bv("Y")))
    incl4 = ModuleMorphism(z_r3.module, direct_sum(xz.module, yz.module),
                           Matrix.vstack([to_xz.matrix, to_yz.matrix]),
                           check=True)
    ses4 = _ses_via_quotient(incl4, simple, seed=17)

    # chain: pad each step and link the reordered direct sums
    w1 = witness_from_ses(ses1.incl, ses1.proj)
    w2 = pad_witness(witness_from_ses(ses2.incl, ses2.proj), lr2.module)
    w3 = pad_witness(witness_from_ses(ses3.incl, ses3.proj),
                     direct_sum(xz.module, lr2.module))
    w4 = pad_witness(witness_from_ses(ses4.incl, ses4.proj),
                     direct_sum(simple, lr2.module))
    link1 = block_permutation_iso([lr2.module, r_xz.module], [1, 0])
    link2 = block_permutation_iso([xz.module, xzyz.module, lr2.module],
                                  [1, 0, 2])
    link3 = block_permutation_iso([yz.module, simple, xz.module, lr2.module],
                                  [2, 0, 1, 3])
    n_mod = direct_sum(lr2.module, simple, simple)
    from .modrep import identity_morphism
    start = identity_morphism(direct_sum(rr3.module, z_r3.module))
    end = block_permutation_iso([z_r3.module, simple, simple, lr2.module],
                                [3, 1, 2, 0])
    chain = VdegChain(m=rr3.module, n=n_mod, z=z_r3.module,
                      steps=(w1, w2, w3, w4), start_link=start,
                      end_link=end, links=(link1, link2, link3))
    from .orders import verify_vdeg_chain
    assert verify_vdeg_chain(chain).is_proved

    lam_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "ext3", "constructor": "exterior_algebra",
        "field": docs.tower_to_json(q), "num_vars": 3,
    }
    lam_f2_doc = {
        "kind": "algebra", "schema_version": docs.SCHEMA_VERSION,
        "name": "ext3_f2", "constructor": "exterior_algebra",
        "field": docs.tower_to_json(prime_field(2)), "num_vars": 3,
    }
    lref = {"$ref": "lambda.json"}
    out = {
        "lambda.json": lam_doc,
        "lambda_f2.json": lam_f2_doc,
        "rr3.json": docs.module_to_json(rr3.module, algebra_ref=lref,
                                        name="r/r3"),
        "lr2.json": docs.module_to_json(lr2.module, algebra_ref=lref,
                                        name="L/r2"),
        "s.json": docs.module_to_json(simple, algebra_ref=lref, name="S"),
        "z_r3.json": docs.module_to_json(z_r3.module, algebra_ref=lref,
                                         name="(Z)/r3"),
        "r_xz.json": docs.module_to_json(r_xz.module, algebra_ref=lref,
                                         name="r/(XZ)"),
        "xz.json": docs.module_to_json(xz.module, algebra_ref=lref,
                                       name="(XZ)"),
        "yz.json": docs.module_to_json(yz.module, algebra_ref=lref,
                                       name="(YZ)"),
        "xzyz.json": docs.module_to_json(xzyz.module, algebra_ref=lref,
                                         name="(XZ,YZ)"),
        "ses1.json": docs.ses_to_json(ses1, name="seq1"),
        "ses2.json": docs.ses_to_json(ses2, name="seq2"),
        "ses3.json": docs.ses_to_json(ses3, name="seq3"),
        "ses4.json": docs.ses_to_json(ses4, name="seq4"),
        "chain.json": docs.chain_to_json(chain, name="vdeg_chain"),
    }
    return out


BUILDERS = {
    "kron1": build_kron1,
    "b2": build_b2,
    "threearrow": build_threearrow,
    "kronmin": build_kronmin,
    "cbrt2": build_cbrt2,
    "ext2": build_ext2,
    "ext3": build_ext3,
}


def export_corpus(target_dir):
    """Write every corpus case into target_dir/<case>/*.json."""
    for name in CASE_NAMES:
        built = BUILDERS[name]()
        for rel, doc in built.items():
            docs.write_document(os.path.join(target_dir, name, rel), doc)
    return [os.path.join(target_dir, name) for name in CASE_NAMES]


if __name__ == "__main__":  # pragma: no cover
    import sys
    out = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    for path in export_corpus(out):
        print(f"wrote {path}")
