"""Exact arithmetic in a base field (Q or F_p) and one simple extension.

A FieldTower packages a base field, a monic irreducible minimal polynomial
p, and a verified list of automorphisms of K = base[x]/(p).  Elements are
coefficient vectors in the power basis of the generator; rationals are
stored as fractions.Fraction, prime-field residues as ints in [0, p).
Every value is immutable after construction.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    AutomorphismInvalid,
    DivisionByZero,
    IdempotentCheckFailed,
    IndexOutOfRange,
    NotIrreducible,
    NotMonic,
    NotSeparable,
    TowerMismatch,
    UnsupportedDegree,
)


class RationalBase:
    """The rational numbers, elements carried as Fraction."""

    char = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def parse(s):
        return Fraction(s)

    @staticmethod
    def format(a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalBase)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeBase:
    """The prime field F_p, elements carried as ints in [0, p)."""

    def __init__(self, p):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 64:
            raise ValueError("prime must fit in 64 bits")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, s):
        return int(s) % self.p

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeBase) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for 64-bit inputs
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- polynomial helpers over a base field (coefficient lists, low to high) --

def _pstrip(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _padd(base, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else base.zero
        y = b[i] if i < len(b) else base.zero
        out.append(base.add(x, y))
    return _pstrip(out)


def _psub(base, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else base.zero
        y = b[i] if i < len(b) else base.zero
        out.append(base.sub(x, y))
    return _pstrip(out)


def _pmul(base, a, b):
    if not a or not b:
        return []
    out = [base.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = base.add(out[i + j], base.mul(x, y))
    return _pstrip(out)


def _pscale(base, a, s):
    return _pstrip([base.mul(x, s) for x in a])


def _pdivmod(base, num, den):
    den = _pstrip(list(den))
    if not den:
        raise DivisionByZero("polynomial division by zero")
    num = list(num)
    q = [base.zero] * max(0, len(num) - len(den) + 1)
    inv_lead = base.inv(den[-1])
    for i in range(len(num) - len(den), -1, -1):
        c = base.mul(num[i + len(den) - 1], inv_lead)
        if c == 0:
            continue
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] = base.sub(num[i + j], base.mul(c, d))
    return _pstrip(q), _pstrip(num)


def _pgcd(base, a, b):
    a, b = _pstrip(list(a)), _pstrip(list(b))
    while b:
        a, b = b, _pdivmod(base, a, b)[1]
    if a:
        a = _pscale(base, a, base.inv(a[-1]))
    return a


def _pxgcd(base, a, b):
    """Return (g, u, v) with u*a + v*b = g, g monic or empty."""
    r0, r1 = _pstrip(list(a)), _pstrip(list(b))
    u0, u1 = [base.one], []
    v0, v1 = [], [base.one]
    while r1:
        q, r = _pdivmod(base, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(base, u0, _pmul(base, q, u1))
        v0, v1 = v1, _psub(base, v0, _pmul(base, q, v1))
    if r0:
        s = base.inv(r0[-1])
        r0, u0, v0 = _pscale(base, r0, s), _pscale(base, u0, s), _pscale(base, v0, s)
    return r0, u0, v0


def _pderiv(base, a):
    return _pstrip([base.mul(a[i], base.from_int(i)) for i in range(1, len(a))])


def _ppowmod(base, a, e, mod):
    result = [base.one]
    a = _pdivmod(base, a, mod)[1]
    while e > 0:
        if e & 1:
            result = _pdivmod(base, _pmul(base, result, a), mod)[1]
        a = _pdivmod(base, _pmul(base, a, a), mod)[1]
        e >>= 1
    return result


# -- irreducibility tests --

def _irreducible_fp(base, poly):
    """Distinct-degree test: no factor of degree <= n/2 survives."""
    n = len(poly) - 1
    if n == 1:
        return True
    p = base.p
    x = [base.zero, base.one]
    t = x
    for _ in range(n // 2):
        t = _ppowmod(base, t, p, poly)
        g = _pgcd(base, _psub(base, t, x), poly)
        if len(g) > 1:
            return False
    return True


def _monic_int_form(poly):
    """Rescale a monic rational polynomial to a monic integer one.

    Substituting x -> y/c with c the lcm of coefficient denominators turns
    x^n + a_{n-1}x^{n-1} + ... into y^n + c*a_{n-1}y^{n-1} + c^2*a_{n-2}...,
    preserving (ir)reducibility over Q.
    """
    n = len(poly) - 1
    c = 1
    for a in poly:
        c = c * a.denominator // math.gcd(c, a.denominator)
    out = []
    for i, a in enumerate(poly):
        v = a * c ** (n - i)
        out.append(int(v))
    return out


def _int_divisors(n):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    ds = small + large[::-1]
    return [d for d in ds] + [-d for d in ds]

def _int_peval(poly, x):
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _int_pdiv_exact(num, den):
    """Divide integer polynomials assuming den is monic; None if not exact."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        return None
    return q


def _mignotte_bound(g, m):
    # Landau-Mignotte style bound for monic degree-m factors of monic g
    norm = math.isqrt(sum(c * c for c in g)) + 1
    return (1 << m) * (norm + 1)


def _ddf_pattern(g, p):
    """Degree multiset of the irreducible factors of g mod p, or None."""
    base = PrimeBase(p)
    f = _pstrip([base.from_int(c) for c in g])
    if len(f) != len(g):
        return None  # leading coefficient vanished
    f = _pscale(base, f, base.inv(f[-1]))
    if len(_pgcd(base, f, _pderiv(base, f))) > 1:
        return None  # not squarefree mod p, pattern unusable
    pattern = []
    x = [base.zero, base.one]
    t = x
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if d > (len(f) - 1) // 2:
            pattern.append(len(f) - 1)
            break
        t = _ppowmod(base, t, p, f)
        g_d = _pgcd(base, _psub(base, t, x), f)
        if len(g_d) > 1:
            deg = len(g_d) - 1
            pattern.extend([d] * (deg // d))
            f = _pdivmod(base, f, g_d)[0]
            t = _pdivmod(base, t, f)[1]
    return pattern


def _subset_sums(pattern):
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    return sums


def _irreducible_q(poly):
    """Exact irreducibility of a monic polynomial over Q, degree <= 6."""
    n = len(poly) - 1
    if n == 1:
        return True
    if n > 6:
        raise UnsupportedDegree(
            f"irreducibility over Q supported up to degree 6, got {n}")
    g = _monic_int_form(poly)

    # linear factors: integer roots divide the constant term
    if g[0] == 0:
        return False
    for r in _int_divisors(g[0]):
        if _int_peval(g, r) == 0:
            return False
    if n <= 3:
        return True

    # cheap sound filter: factor-degree patterns mod several primes
    possible = set(range(1, n))
    informative = 0
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53):
        pattern = _ddf_pattern(g, p)
        if pattern is None:
            continue
        informative += 1
        possible &= _subset_sums(pattern)
        possible -= {0, n}
        if not possible:
            return True
        if informative >= 8:
            break

    # complete search for monic integer factors of degree 2 (and 3 for n=6),
    # pinned down by value divisibility at 0, 1, -1 and the Mignotte bound
    g1, gm1 = _int_peval(g, 1), _int_peval(g, -1)
    if g1 == 0 or gm1 == 0:
        return False  # root at +-1, already a factor
    bound2 = _mignotte_bound(g, 2)
    for a in _int_divisors(g[0]):
        for d1 in _int_divisors(g1):
            b = d1 - 1 - a
            if abs(a) > bound2 or abs(b) > bound2:
                continue
            if _int_pdiv_exact(g, [a, b, 1]) is not None:
                return False
    if n == 6:
        bound3 = _mignotte_bound(g, 3)
        for a in _int_divisors(g[0]):
            for d1 in _int_divisors(g1):
                for dm1 in _int_divisors(gm1):
                    if (d1 + dm1) % 2 or (d1 - dm1) % 2:
                        continue
                    c = (d1 + dm1) // 2 - a
                    b = (d1 - dm1) // 2 - 1
                    if max(abs(a), abs(b), abs(c)) > bound3:
                        continue
                    if _int_pdiv_exact(g, [a, b, c, 1]) is not None:
                        return False
    return True


def is_irreducible(base, poly):
    """Irreducibility of a monic polynomial (coefficient list, low to high)."""
    if isinstance(base, RationalBase):
        return _irreducible_q(poly)
    return _irreducible_fp(base, poly)


class FieldElem:
    """An element of a FieldTower, a vector in the power basis of alpha."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = tuple(coeffs)

    def _same(self, other):
        if not isinstance(other, FieldElem):
            raise TowerMismatch(f"expected FieldElem, got {type(other).__name__}")
        if other.tower is not self.tower and other.tower != self.tower:
            raise TowerMismatch("elements of different towers")
        return other

    def __add__(self, other):
        other = self._same(other)
        base = self.tower.base
        return FieldElem(self.tower,
                         [base.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._same(other)
        base = self.tower.base
        return FieldElem(self.tower,
                         [base.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        base = self.tower.base
        return FieldElem(self.tower, [base.neg(a) for a in self.coeffs])

    def __mul__(self, other):
        other = self._same(other)
        return self.tower._mul(self, other)

    def __truediv__(self, other):
        other = self._same(other)
        return self.tower._mul(self, other.inverse())

    def inverse(self):
        return self.tower._inv(self)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.tower.one()
        b = self
        while e:
            if e & 1:
                acc = acc * b
            b = b * b
            e >>= 1
        return acc

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.tower is other.tower or self.tower == other.tower

    def __hash__(self):
        return hash(self.coeffs)

    def is_scalar(self):
        """True when the element lies in the base field."""
        return all(c == 0 for c in self.coeffs[1:])

    def scalar(self):
        if not self.is_scalar():
            raise ValueError("element is not in the base field")
        return self.coeffs[0]

    def __repr__(self):
        t = self.tower
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(t.base.format(c))
            else:
                head = "" if c == t.base.one else t.base.format(c) + "*"
                parts.append(f"{head}{t.gen_name}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"


class FieldTower:
    """Base field plus one simple extension K = base[x]/(min_poly)."""

    def __init__(self, base, min_poly, automorphism_images=None, gen_name="a"):
        self.base = base
        poly = []
        for c in min_poly:
            if isinstance(c, str):
                poly.append(base.parse(c))
            elif isinstance(c, int):
                poly.append(base.from_int(c))
            else:
                poly.append(c)
        if len(poly) < 2:
            raise NotMonic("minimal polynomial must have degree >= 1")
        if poly[-1] != base.one:
            raise NotMonic("minimal polynomial must be monic")
        if not is_irreducible(base, poly):
            raise NotIrreducible("minimal polynomial is reducible")
        self.min_poly = tuple(poly)
        self.degree = len(poly) - 1
        self.gen_name = gen_name
        # alpha^k reduced mod min_poly, for k = 0 .. 2(n-1)
        self._red = self._reduction_table()
        self._key = (base, self.min_poly)
        self.automorphisms = self._build_automorphisms(automorphism_images)
        self.normal = len(self.automorphisms) == self.degree
        self.identity_index = self._find_identity()
        self._comp_table = self._composition_table() if self.normal else None

    # -- construction helpers --

    def _reduction_table(self):
        # covers exponents 0 .. 2n-1 (the extra one serves degree-1 towers)
        base, n = self.base, self.degree
        red = []
        cur = [base.one]
        for _ in range(2 * n):
            red.append(tuple(cur + [base.zero] * (n - len(cur))))
            cur = [base.zero] + cur
            if len(cur) > n:
                lead = cur[n]
                cur = cur[:n]
                if lead != 0:
                    for i in range(n):
                        cur[i] = base.sub(cur[i], base.mul(lead, self.min_poly[i]))
            cur = list(cur)
        return tuple(red)

    def _build_automorphisms(self, images):
        n = self.degree
        if n == 1:
            return (self.gen(),)
        if images is None and isinstance(self.base, PrimeBase):
            out = []
            seen = set()
            beta = self.gen()
            p = self.base.p
            for _ in range(n):
                out.append(beta)
                seen.add(beta.coeffs)
                beta = beta ** p
            if len(seen) != n:
                raise AutomorphismInvalid("Frobenius powers are not distinct")
            images = out
        if images is None:
            images = [self.gen()]
        out = []
        seen = set()
        for im in images:
            beta = im if isinstance(im, FieldElem) else self.from_coeffs(im)
            if self._eval_min_poly(beta):
                raise AutomorphismInvalid(
                    f"automorphism image {beta!r} is not a root of the minimal polynomial")
            if beta.coeffs in seen:
                raise AutomorphismInvalid(f"duplicate automorphism image {beta!r}")
            seen.add(beta.coeffs)
            out.append(beta)
        if self.gen().coeffs not in seen:
            raise AutomorphismInvalid("automorphism list must include the identity")
        if len(out) > n:
            raise AutomorphismInvalid("more automorphisms than the degree allows")
        return tuple(out)

    def _eval_min_poly(self, beta):
        acc = self.zero()
        for c in reversed(self.min_poly):
            acc = acc * beta + self.from_base(c)
        return bool(acc)

    def _find_identity(self):
        for i, beta in enumerate(self.automorphisms):
            if beta == self.gen():
                return i
        raise AutomorphismInvalid("identity automorphism missing")

    def _composition_table(self):
        """table[i][j] = k with phi_i . phi_j = phi_k; also checks closure."""
        index = {beta.coeffs: i for i, beta in enumerate(self.automorphisms)}
        table = []
        for i in range(len(self.automorphisms)):
            row = []
            for j, beta in enumerate(self.automorphisms):
                comp = self.apply_automorphism(i, beta)
                k = index.get(comp.coeffs)
                if k is None:
                    raise AutomorphismInvalid(
                        "automorphism list not closed under composition")
                row.append(k)
            table.append(tuple(row))
        return tuple(table)

    def compose_automorphisms(self, i, j):
        """Index of phi_i . phi_j (normal towers only)."""
        if self._comp_table is None:
            raise NotSeparable("composition table requires a normal tower")
        return self._comp_table[i][j]

    def inverse_automorphism(self, i):
        for j in range(len(self.automorphisms)):
            if self.compose_automorphisms(i, j) == self.identity_index:
                return j
        raise AutomorphismInvalid("no inverse found")  # pragma: no cover

    # -- element constructors --

    def zero(self):
        return FieldElem(self, (self.base.zero,) * self.degree)

    def one(self):
        return self.from_base(self.base.one)

    def gen(self):
        if self.degree == 1:
            # alpha = root of the degree-1 minimal polynomial x - c
            return self.from_base(self.base.neg(self.min_poly[0]))
        coeffs = [self.base.zero] * self.degree
        coeffs[1] = self.base.one
        return FieldElem(self, coeffs)

    def from_base(self, scalar):
        coeffs = [self.base.zero] * self.degree
        coeffs[0] = scalar
        return FieldElem(self, coeffs)

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def from_coeffs(self, coeffs):
        out = []
        for c in coeffs:
            if isinstance(c, str):
                out.append(self.base.parse(c))
            elif isinstance(c, int):
                out.append(self.base.from_int(c))
            else:
                out.append(c)
        if len(out) > self.degree:
            raise ValueError("too many coefficients")
        out += [self.base.zero] * (self.degree - len(out))
        return FieldElem(self, out)

    def random_elem(self, rng, bound=9):
        if isinstance(self.base, PrimeBase):
            return FieldElem(
                self, [rng.randrange(self.base.p) for _ in range(self.degree)])
        return FieldElem(
            self, [Fraction(rng.randint(-bound, bound)) for _ in range(self.degree)])

    def all_elements(self):
        """Every element (finite base fields only)."""
        if not isinstance(self.base, PrimeBase):
            raise ValueError("field is infinite")
        p, n = self.base.p, self.degree
        out = []
        for code in range(p ** n):
            coeffs = []
            c = code
            for _ in range(n):
                coeffs.append(c % p)
                c //= p
            out.append(FieldElem(self, coeffs))
        return out

    # -- arithmetic kernels --

    def _mul(self, a, b):
        base, n = self.base, self.degree
        if n == 1:
            return FieldElem(self, (base.mul(a.coeffs[0], b.coeffs[0]),))
        acc = [base.zero] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y == 0:
                    continue
                acc[i + j] = base.add(acc[i + j], base.mul(x, y))
        out = list(acc[:n])
        for k in range(n, 2 * n - 1):
            c = acc[k]
            if c == 0:
                continue
            red = self._red[k]
            for i in range(n):
                if red[i] != 0:
                    out[i] = base.add(out[i], base.mul(c, red[i]))
        return FieldElem(self, out)

    def _inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        base = self.base
        g, u, _ = _pxgcd(base, _pstrip(list(a.coeffs)), list(self.min_poly))
        if len(g) != 1:
            raise DivisionByZero("element is not invertible")  # pragma: no cover
        inv_g = base.inv(g[0])
        coeffs = [base.mul(c, inv_g) for c in u]
        return self.from_coeffs(coeffs)

    def apply_automorphism(self, idx, a):
        """Evaluate a's polynomial at the idx-th automorphism image."""
        if not 0 <= idx < len(self.automorphisms):
            raise IndexOutOfRange(f"automorphism index {idx} out of range")
        if a.tower != self:
            raise TowerMismatch("element from a different tower")
        beta = self.automorphisms[idx]
        acc = self.zero()
        for c in reversed(a.coeffs):
            acc = acc * beta + self.from_base(c)
        return acc

    # -- identity --

    def __eq__(self, other):
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self._key == other._key and \
            tuple(b.coeffs for b in self.automorphisms) == \
            tuple(b.coeffs for b in other.automorphisms)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.degree == 1:
            return f"FieldTower({self.base!r})"
        return f"FieldTower({self.base!r}[{self.gen_name}], deg {self.degree})"


def make_tower(base, min_poly, automorphism_images=None, gen_name="a"):
    """Build and validate a FieldTower.

    base is "Q", a prime int, or a base object.  min_poly is the monic
    minimal polynomial as a low-to-high coefficient list.  For prime bases
    with automorphism_images=None the Frobenius powers are generated and
    verified; number fields must list their automorphisms explicitly
    (the identity counts).
    """
    if base == "Q":
        base = RationalBase()
    elif isinstance(base, int):
        base = PrimeBase(base)
    return FieldTower(base, min_poly, automorphism_images, gen_name)


def rationals():
    """Q itself, as a degree-1 tower."""
    return make_tower("Q", [0, 1])


def prime_field(p):
    """F_p itself, as a degree-1 tower."""
    return make_tower(p, [0, 1])


# -- separability idempotent in K (x) K --


def _tensor_mul(tower, E, F):
    """Product in K (x) K of two n x n coefficient arrays."""
    base, n = tower.base, tower.degree
    m = 2 * n - 1
    acc = [[base.zero] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            x = E[i][j]
            if x == 0:
                continue
            for s in range(n):
                for t in range(n):
                    y = F[s][t]
                    if y == 0:
                        continue
                    acc[i + s][j + t] = base.add(acc[i + s][j + t], base.mul(x, y))
    return _tensor_reduce(tower, acc)


def _tensor_reduce(tower, acc):
    base, n = tower.base, tower.degree
    nrows = len(acc)
    ncols = len(acc[0]) if acc else 0
    # reduce the left leg
    rows = [[base.zero] * ncols for _ in range(n)]
    for i in range(nrows):
        if i < n:
            for j in range(ncols):
                rows[i][j] = base.add(rows[i][j], acc[i][j])
        else:
            red = tower._red[i]
            for k in range(n):
                if red[k] == 0:
                    continue
                for j in range(ncols):
                    if acc[i][j] != 0:
                        rows[k][j] = base.add(rows[k][j], base.mul(red[k], acc[i][j]))
    # reduce the right leg
    out = [[base.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(ncols):
            c = rows[i][j]
            if c == 0:
                continue
            if j < n:
                out[i][j] = base.add(out[i][j], c)
            else:
                red = tower._red[j]
                for k in range(n):
                    if red[k] != 0:
                        out[i][k] = base.add(out[i][k], base.mul(c, red[k]))
    return out


def _tensor_mu(tower, E):
    """Apply multiplication x (x) y -> xy to a tensor array."""
    acc = tower.zero()
    n = tower.degree
    for i in range(n):
        for j in range(n):
            c = E[i][j]
            if c == 0:
                continue
            acc = acc + tower.from_coeffs(tower._red[i + j]) * tower.from_base(c)
    return acc


def _tensor_scale_left(tower, E):
    """(alpha (x) 1) * E."""
    base, n = tower.base, tower.degree
    acc = [[base.zero] * n for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            acc[i + 1][j] = E[i][j]
    return _tensor_reduce(tower, acc)


def _tensor_scale_right(tower, E):
    """(1 (x) alpha) * E."""
    base, n = tower.base, tower.degree
    acc = [[base.zero] * (n + 1) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc[i][j + 1] = E[i][j]
    return _tensor_reduce(tower, acc)


class SeparabilityIdempotent:
    """e in K (x) K with e*e = e, mu(e) = 1 and (a (x) 1)e = (1 (x) a)e.

    coeffs[i][j] is the coefficient of alpha^i (x) alpha^j over the base.
    """

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = tuple(tuple(row) for row in coeffs)

    def pair_list(self):
        """The idempotent as a list of (left, right) FieldElem pairs.

        Returns pairs (alpha^i-part coefficient vector collapsed): the sum
        over j of c_j (x) alpha^j with c_j in K.
        """
        t = self.tower
        out = []
        for j in range(t.degree):
            left = t.from_coeffs([self.coeffs[i][j] for i in range(t.degree)])
            right = t.gen() ** j
            out.append((left, right))
        return out

    def __repr__(self):
        return f"SeparabilityIdempotent({self.tower!r})"


def separability_idempotent(tower):
    """Construct and verify the separability idempotent of the tower.

    With q(X) = min_poly(X)/(X - alpha) = sum q_j X^j in K[X], the element
    e = sum_j (q_j / p'(alpha)) (x) alpha^j is the idempotent; all three
    defining checks are run before returning.
    """
    base, n = tower.base, tower.degree
    # separability: gcd(p, p') = 1
    dp = _pderiv(base, list(tower.min_poly))
    if len(_pgcd(base, list(tower.min_poly), dp)) != 1:
        raise NotSeparable("minimal polynomial is not separable")
    alpha = tower.gen()
    # synthetic division of min_poly by (X - alpha) inside K[X]
    q = [tower.zero()] * n
    q[n - 1] = tower.one()
    for j in range(n - 1, 0, -1):
        q[j - 1] = tower.from_base(tower.min_poly[j]) + alpha * q[j]
    # p'(alpha)
    dpa = tower.zero()
    for c in reversed(dp):
        dpa = dpa * alpha + tower.from_base(c)
    dpa_inv = dpa.inverse()
    coeffs = [[base.zero] * n for _ in range(n)]
    for j in range(n):
        cj = q[j] * dpa_inv
        for i in range(n):
            coeffs[i][j] = cj.coeffs[i]

    ee = _tensor_mul(tower, coeffs, coeffs)
    if ee != coeffs:
        raise IdempotentCheckFailed("e*e != e")
    if _tensor_mu(tower, coeffs) != tower.one():
        raise IdempotentCheckFailed("mu(e) != 1")
    if _tensor_scale_left(tower, coeffs) != _tensor_scale_right(tower, coeffs):
        raise IdempotentCheckFailed("(a (x) 1)e != (1 (x) a)e")
    return SeparabilityIdempotent(tower, coeffs)
