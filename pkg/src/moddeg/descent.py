"""Scalar induction and restriction, Galois twisting, the multiplication
map mu with its idempotent splitting nu, and the Galois decomposition
K (x) M = (+)_phi M^phi for normal towers, with concrete matrix witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import embedding_morphism, tensor_extension, twist_automorphism
from .errors import (
    AssemblyNotInvertible,
    FieldMismatch,
    NotExtensionAlgebra,
    NotNormal,
)
from .fields import separability_idempotent
from .linalg import Matrix
from .modrep import Module, ModuleMorphism, direct_sum, hom_space, make_module, pullback


def _require_tag(gamma):
    tag = gamma.ext_tag
    if tag is None:
        raise NotExtensionAlgebra("operation needs a K (x) Lambda algebra")
    return tag


def restrict(m, name=None):
    """View a module over Gamma = K (x) Lambda as a Lambda-module."""
    tag = _require_tag(m.algebra)
    emb = embedding_morphism(tag.lambda_algebra, m.algebra)
    out = pullback(m, emb)
    return out.rename(name or (f"res {m.name}" if m.name else None))


def induce(tower, m, gamma=None, name=None):
    """K (x) M as a Gamma-module, basis alpha^i (x) m_u with alpha major."""
    lam = m.algebra
    if lam.field.degree != 1 or lam.field.base != tower.base:
        raise FieldMismatch("module must live over the base field of the tower")
    if gamma is None:
        gamma = tensor_extension(tower, lam)
    tag = _require_tag(gamma)
    if tag.tower != tower or tag.lambda_algebra != lam:
        raise FieldMismatch("supplied Gamma does not extend this algebra")
    field = lam.field
    n = tower.degree
    # multiplication-by-alpha companion matrix over the base
    comp_cols = [[field.from_coeffs([c]) for c in tower._red[t + 1]]
                 for t in range(n)]
    comp = Matrix.from_columns(field, comp_cols, n)
    powers = [Matrix.identity(field, n)]
    for _ in range(n - 1):
        powers.append(comp * powers[-1])
    actions = []
    for i in range(n):
        for j in range(lam.dim):
            actions.append(powers[i].kron(m.actions[j]))
    return Module(gamma, actions, name=name or (f"K(x){m.name}" if m.name else None),
                  _trusted=True)


def twist(m, phi, name=None):
    """The twisted module M^phi plus the identity map as phi-hat.

    phi-hat is the identity matrix read as a Lambda-isomorphism
    M^phi -> M; the semilinear rule on the alpha-action is verified.
    """
    gamma = m.algebra
    tag = _require_tag(gamma)
    auto = twist_automorphism(gamma, phi)
    twisted = pullback(m, auto)
    twisted = twisted.rename(name or (f"{m.name}^phi{phi}" if m.name else None))
    # phi-hat: the identity intertwines the restricted actions
    phi_hat = ModuleMorphism(restrict(twisted), restrict(m),
                             Matrix.identity(gamma.field, m.dim), check=True)
    # semilinear rule: alpha acts on M^phi the way phi(alpha) acts on M
    tower = tag.tower
    alpha_vec = _scalar_element_coords(gamma, tower.gen())
    phi_alpha_vec = _scalar_element_coords(
        gamma, tower.automorphisms[phi] if isinstance(phi, int) else phi)
    if twisted.action_of(alpha_vec) != m.action_of(phi_alpha_vec):
        raise AssemblyNotInvertible(  # pragma: no cover
            "twist broke the semilinear rule")
    return twisted, phi_hat


def _scalar_element_coords(gamma, x):
    """Coordinates of x (x) 1 in the Gamma basis, for x in K."""
    tag = gamma.ext_tag
    zero = gamma.field.zero()
    coords = [zero] * gamma.dim
    lam_unit = tag.lambda_algebra.unit
    for s, c in enumerate(x.coeffs):
        if c == 0:
            continue
        ce = gamma.field.from_coeffs([c])
        for j, u in enumerate(lam_unit):
            if u:
                coords[tag.flat(s, j)] = ce * u
    return coords


@dataclass(frozen=True)
class SplitEpiWitness:
    """mu: K (x) M -> M with its splitting nu built from the separability
    idempotent; both maps are verified morphisms and mu . nu = id."""

    module: Module
    induced: Module
    mu: ModuleMorphism
    nu: ModuleMorphism
    idempotent: object


def mu_split(m, gamma=None):
    """The multiplication map of a Gamma-module and its natural splitting.

    mu(x (x) v) = xv; nu(v) = e . (1 (x) v) for the separability
    idempotent e = sum a_s (x) b_s, i.e. nu(v) = sum a_s (x) b_s v.
    """
    gamma = gamma or m.algebra
    tag = _require_tag(gamma)
    tower = tag.tower
    n, d = tower.degree, m.dim
    field = gamma.field
    res = restrict(m)
    km = induce(tower, res, gamma=gamma,
                name=f"K(x)res {m.name}" if m.name else None)
    # mu columns: (s, u) -> alpha^s . m_u
    cols = []
    for s in range(n):
        act = m.action_of(_scalar_element_coords(gamma, tower.gen() ** s))
        for u in range(d):
            cols.append(act.column_vector(u))
    mu_mat = Matrix.from_columns(field, cols, d)
    e = separability_idempotent(tower)
    # nu rows: block s of nu = sum_j e_coeffs[s][j] rho_M(alpha^j)
    zero = field.zero()
    nu_rows = [[zero] * d for _ in range(n * d)]
    for j in range(n):
        coeff_col = [e.coeffs[s][j] for s in range(n)]
        act = m.action_of(_scalar_element_coords(gamma, tower.gen() ** j))
        for s in range(n):
            c = coeff_col[s]
            if c == 0:
                continue
            ce = field.from_coeffs([c])
            for v in range(d):
                row = nu_rows[s * d + v]
                arow = act.entries[v]
                for u in range(d):
                    if arow[u]:
                        row[u] = row[u] + ce * arow[u]
    nu_mat = Matrix(field, n * d, d, nu_rows)
    mu = ModuleMorphism(km, m, mu_mat, check=True)
    nu = ModuleMorphism(m, km, nu_mat, check=True)
    if mu_mat * nu_mat != Matrix.identity(field, d):
        raise AssemblyNotInvertible("mu . nu is not the identity")  # pragma: no cover
    return SplitEpiWitness(module=m, induced=km, mu=mu, nu=nu, idempotent=e)


@dataclass(frozen=True)
class GaloisDecomposition:
    """K (x) M = (+)_phi M^phi with inclusions and the assembled iso."""

    module: Module
    induced: Module
    summands: tuple
    inclusions: tuple
    assembled: ModuleMorphism


def galois_decompose(m):
    """Decompose K (x) M into the twists M^phi over a normal tower.

    The inclusion of M^phi is the idempotent splitting of its own
    multiplication map; the assembled block map must be invertible and
    the images intersect trivially in pairs.
    """
    gamma = m.algebra
    tag = _require_tag(gamma)
    tower = tag.tower
    if not tower.normal:
        raise NotNormal("Galois decomposition needs a normal tower")
    summands = []
    inclusions = []
    km = None
    for idx in range(len(tower.automorphisms)):
        twisted, _ = twist(m, idx)
        w = mu_split(twisted, gamma=gamma)
        if km is None:
            km = w.induced
        iota = ModuleMorphism(twisted, km, w.nu.matrix, check=True)
        if not iota.is_injective():
            raise AssemblyNotInvertible(  # pragma: no cover
                f"inclusion of twist {idx} is not injective")
        summands.append(twisted)
        inclusions.append(iota)
    d = m.dim
    for i in range(len(inclusions)):
        for j in range(i + 1, len(inclusions)):
            paired = Matrix.hstack([inclusions[i].matrix, inclusions[j].matrix])
            if paired.rank() != 2 * d:
                raise AssemblyNotInvertible(
                    f"images of twists {i} and {j} intersect nontrivially")
    assembled_mat = Matrix.hstack([io.matrix for io in inclusions])
    if not assembled_mat.is_invertible():
        raise AssemblyNotInvertible("assembled block map is singular")
    assembled = ModuleMorphism(direct_sum(*summands), km, assembled_mat,
                               check=True)
    return GaloisDecomposition(module=m, induced=km, summands=tuple(summands),
                               inclusions=tuple(inclusions), assembled=assembled)


def base_change_hom_identity(x, m, tower, gamma=None):
    """Both sides of [K (x) X, K (x) M] = n [X, M], as a report dict."""
    if x.algebra != m.algebra:
        raise FieldMismatch("modules over different algebras")
    if gamma is None:
        gamma = tensor_extension(tower, x.algebra)
    kx = induce(tower, x, gamma=gamma)
    km = induce(tower, m, gamma=gamma)
    lhs = hom_space(kx, km).k_dim
    base = hom_space(x, m).k_dim
    rhs = tower.degree * base
    return {
        "hom_dim_induced": lhs,
        "hom_dim_base": base,
        "degree": tower.degree,
        "expected": rhs,
        "equal": lhs == rhs,
    }


def k_linear_module(gamma, k_matrices, name=None):
    """Gamma-module from K-linear action matrices of the Lambda basis.

    k_matrices[j] is a D x D matrix over the extension tower describing
    how lambda_j acts on K^D; the result is the expanded module on the
    base field, of dimension (degree n) * D, basis alpha-power major.
    """
    tag = _require_tag(gamma)
    tower = tag.tower
    n = tower.degree
    d_k = k_matrices[0].rows if k_matrices else 0
    field = gamma.field
    actions = []
    alpha = tower.gen()
    for i in range(n):
        scale = alpha ** i
        for j in range(tag.lambda_dim):
            t = k_matrices[j]
            actions.append(_expand_k_matrix(field, tower, t, scale))
    return make_module(gamma, actions, name=name)


def _expand_k_matrix(field, tower, t, scale):
    """Expand a K-matrix (times a K-scalar) into base coordinates."""
    n = tower.degree
    d = t.rows
    zero = field.zero()
    out = [[zero] * (n * d) for _ in range(n * d)]
    for v in range(d):
        for u in range(d):
            x = t.entries[v][u] * scale
            if not x:
                continue
            for texp in range(n):
                prod = x * (tower.gen() ** texp)
                for s in range(n):
                    c = prod.coeffs[s]
                    if c != 0:
                        out[s * d + v][texp * d + u] = field.from_coeffs([c])
    return Matrix(field, n * d, n * d, out)


def k_rep_matrices(quiver, paths, tower, k_dims, arrow_mats):
    """K-matrices for each path-algebra basis element of a K-representation.

    arrow_mats[k] is (dim target) x (dim source) over the tower.
    """
    offs = [0]
    for d in k_dims:
        offs.append(offs[-1] + d)
    total = offs[-1]
    zero = tower.zero()

    def embed(block, src, tgt):
        ents = [[zero] * total for _ in range(total)]
        for i in range(k_dims[tgt]):
            for j in range(k_dims[src]):
                ents[offs[tgt] + i][offs[src] + j] = block.entries[i][j]
        return Matrix(tower, total, total, ents)

    arrow_big = []
    for k, (s, t, _) in enumerate(quiver.arrows):
        mat = arrow_mats[k]
        if not isinstance(mat, Matrix):
            rows = [[_as_elem(tower, x) for x in row] for row in mat]
            mat = Matrix(tower, k_dims[t], k_dims[s], rows) if k_dims[t] and \
                k_dims[s] else Matrix.zero(tower, k_dims[t], k_dims[s])
        arrow_big.append(embed(mat, s, t))

    out = []
    for (s, t, seq) in paths:
        if not seq:
            ents = [[zero] * total for _ in range(total)]
            for i in range(k_dims[s]):
                ents[offs[s] + i][offs[s] + i] = tower.one()
            out.append(Matrix(tower, total, total, ents))
        else:
            acc = arrow_big[seq[0]]
            for k in seq[1:]:
                acc = arrow_big[k] * acc
            out.append(acc)
    return out


def _as_elem(tower, x):
    from .fields import FieldElem
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, int):
        return tower.from_int(x)
    if isinstance(x, str):
        return tower.from_coeffs([x])
    if isinstance(x, (list, tuple)):
        return tower.from_coeffs(list(x))
    raise TypeError(f"cannot interpret {x!r} as a field element")
