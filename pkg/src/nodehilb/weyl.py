"""Normal-ordered arithmetic in the Weyl algebra of polynomial differential operators.

The Weyl algebra on 2m coordinates x1..xm, y1..ym is generated by the
multiplication operators x_i, y_i and the derivations dx_i = d/dx_i,
dy_i = d/dy_i, subject to [dx_i, x_i] = [dy_i, y_i] = 1 with all other
pairs commuting.  Elements are stored in normal form: every word is a sum
of monomials x^a y^b dx^g dy^d (all position operators before all
derivations), keyed by the four exponent tuples.  Products are computed by
the closed form of the rewriting rule du*u -> u*du + 1,

    dx^g x^a = sum_j C(g, j) * a!/(a-j)! * x^(a-j) dx^(g-j),

applied independently per variable, which is exactly the terminating,
confluent normal form of repeated single-step rewriting.

On top of the Weyl algebra this module realizes the subalgebra generated by

    x_1..x_m,  dy_1..dy_m,  mu_plus = y_1 + ... + y_m,  mu_minus = dx_1 + ... + dx_m,

whose defining commutators are [dy_i, mu_plus] = [mu_minus, x_i] = 1 with
every other pair of generators commuting.  The words

    x^a * mu_plus^s * dy^d * mu_minus^r

span this subalgebra, have pairwise disjoint normal-form supports, and are
homogeneous for the total-degree (Bernstein) filtration; membership of an
operator in the subalgebra is therefore a finite exact linear solve, and a
negative answer is conclusive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, render_terms, solve_columns

GENERATOR_BIDEGREES = {"x": (1, 0), "d": (-1, -2), "mu+": (1, 2), "mu-": (-1, 0)}


@dataclass(frozen=True)
class Generator:
    """One of the distinguished operators: x_i, d_i, mu_plus or mu_minus.

    ``kind`` is "x", "d", "mu+" or "mu-"; ``index`` is 1-based and None for
    the two mu operators.
    """

    kind: str
    index: int | None = None

    def __post_init__(self):
        if self.kind not in GENERATOR_BIDEGREES:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("x", "d") and (self.index is None or self.index < 1):
            raise ValueError(f"generator {self.kind} needs a positive index")
        if self.kind in ("mu+", "mu-") and self.index is not None:
            raise ValueError(f"generator {self.kind} takes no index")

    @property
    def bidegree(self) -> tuple[int, int]:
        return GENERATOR_BIDEGREES[self.kind]

    def __str__(self):
        return self.kind if self.index is None else f"{self.kind}{self.index}"


def generators(m: int) -> list[Generator]:
    """All 2m + 2 distinguished generators at ambient size m."""
    gens = [Generator("x", i) for i in range(1, m + 1)]
    gens += [Generator("d", i) for i in range(1, m + 1)]
    gens += [Generator("mu+"), Generator("mu-")]
    return gens


def _zeros(m):
    return (0,) * m


def _bump(t, i):
    lst = list(t)
    lst[i] += 1
    return tuple(lst)


class WeylOp:
    """Element of the Weyl algebra in normal form.

    ``terms`` maps (a, b, g, d) -- four exponent tuples of length m, for
    x^a y^b dx^g dy^d -- to a nonzero Fraction.  Instances are never
    mutated after construction.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        if m < 1:
            raise ValueError(f"ambient component count must be >= 1, got {m}")
        self.m = m
        clean = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                a, b, g, d = (tuple(t) for t in key)
                for t in (a, b, g, d):
                    if len(t) != m or any(e < 0 for e in t):
                        raise ValueError(f"bad normal monomial {key} for m={m}")
                clean[(a, b, g, d)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "WeylOp":
        return cls(m)

    @classmethod
    def constant(cls, m: int, c) -> "WeylOp":
        z = _zeros(m)
        return cls(m, {(z, z, z, z): Fraction(c)})

    @classmethod
    def one(cls, m: int) -> "WeylOp":
        return cls.constant(m, 1)

    @classmethod
    def _single(cls, m: int, slot: int, i: int) -> "WeylOp":
        if not 1 <= i <= m:
            raise ValueError(f"index {i} out of range for m={m}")
        key = [_zeros(m)] * 4
        key[slot] = _bump(_zeros(m), i - 1)
        return cls(m, {tuple(key): Fraction(1)})

    @classmethod
    def x(cls, m: int, i: int) -> "WeylOp":
        return cls._single(m, 0, i)

    @classmethod
    def y(cls, m: int, i: int) -> "WeylOp":
        return cls._single(m, 1, i)

    @classmethod
    def dx(cls, m: int, i: int) -> "WeylOp":
        return cls._single(m, 2, i)

    @classmethod
    def dy(cls, m: int, i: int) -> "WeylOp":
        return cls._single(m, 3, i)

    # -- algebra -----------------------------------------------------------

    def _check_same_ambient(self, other: "WeylOp"):
        if self.m != other.m:
            raise ValueError(f"mismatched ambient variable count: {self.m} vs {other.m}")

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(self.m, other)
        self._check_same_ambient(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            c2 = terms.get(key, 0) + c
            if c2 == 0:
                terms.pop(key, None)
            else:
                terms[key] = c2
        return WeylOp(self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(self.m, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, WeylOp):
            c = Fraction(other)
            return WeylOp(self.m, {k: v * c for k, v in self.terms.items()})
        self._check_same_ambient(other)
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for key, c in _mono_mul(k1, k2, self.m):
                    c = c * c1 * c2 + terms.get(key, 0)
                    if c == 0:
                        terms.pop(key, None)
                    else:
                        terms[key] = c
        return WeylOp(self.m, terms)

    def __rmul__(self, other):
        # only reached for scalars; operators always hit __mul__
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of an operator")
        result = WeylOp.one(self.m)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.m == other.m and self.terms == other.terms
        try:
            return self.terms == WeylOp.constant(self.m, other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def bernstein_degree(self) -> int:
        """Total degree in all 4m symbols; 0 for the zero operator."""
        if not self.terms:
            return 0
        return max(sum(sum(t) for t in key) for key in self.terms)

    # -- module action -----------------------------------------------------

    def act(self, p: Poly) -> Poly:
        """Standard action on Q[x, y]: x, y multiply and dx, dy differentiate."""
        if p.m != self.m:
            raise ValueError(f"mismatched ambient variable count: {self.m} vs {p.m}")
        m = self.m
        out = Poly.zero(m)
        for (a, b, g, d), c in self.terms.items():
            q = p
            for i, e in enumerate(g):
                for _ in range(e):
                    q = q.derivative(i)
            for i, e in enumerate(d):
                for _ in range(e):
                    q = q.derivative(m + i)
            if q.is_zero():
                continue
            out = out + Poly.monomial(m, a + b, c) * q
        return out

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        m = self.m
        names = (
            [f"x{i}" for i in range(1, m + 1)]
            + [f"y{i}" for i in range(1, m + 1)]
            + [f"dx{i}" for i in range(1, m + 1)]
            + [f"dy{i}" for i in range(1, m + 1)]
        )
        flat = {}
        for (a, b, g, d), c in self.terms.items():
            flat[a + b + g + d] = c
        terms = sorted(flat.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        return render_terms(terms, names)

    def __repr__(self):
        return f"WeylOp(m={self.m}, {self})"


def _falling(a: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= a - t
    return out


def _mono_mul(k1, k2, m):
    """Normal-form product of two normal monomials, as (key, coeff) pairs."""
    a1, b1, g1, d1 = k1
    a2, b2, g2, d2 = k2
    ranges_x = [range(min(g, a) + 1) for g, a in zip(g1, a2)]
    ranges_y = [range(min(d, b) + 1) for d, b in zip(d1, b2)]
    for jx in itertools.product(*ranges_x):
        cx = 1
        for g, a, j in zip(g1, a2, jx):
            cx *= math.comb(g, j) * _falling(a, j)
        for jy in itertools.product(*ranges_y):
            c = cx
            for d, b, j in zip(d1, b2, jy):
                c *= math.comb(d, j) * _falling(b, j)
            key = (
                tuple(p + q - j for p, q, j in zip(a1, a2, jx)),
                tuple(p + q - j for p, q, j in zip(b1, b2, jy)),
                tuple(p + q - j for p, q, j in zip(g1, g2, jx)),
                tuple(p + q - j for p, q, j in zip(d1, d2, jy)),
            )
            yield key, Fraction(c)


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return a * b - b * a


def generator_element(g: Generator, m: int) -> WeylOp:
    """The distinguished generator as a Weyl algebra element."""
    if g.kind == "x":
        return WeylOp.x(m, g.index)
    if g.kind == "d":
        return WeylOp.dy(m, g.index)
    if g.kind == "mu+":
        out = WeylOp.zero(m)
        for i in range(1, m + 1):
            out = out + WeylOp.y(m, i)
        return out
    out = WeylOp.zero(m)
    for i in range(1, m + 1):
        out = out + WeylOp.dx(m, i)
    return out


@dataclass(frozen=True)
class RelationCheck:
    family: str
    i: int | None
    j: int | None
    ok: bool
    got: str


def verify_relations(m: int) -> list[RelationCheck]:
    """Check all defining commutators of the subalgebra generators.

    Eight families: [x_i,x_j] = [d_i,d_j] = [d_i,x_j] = [x_i,mu+]
    = [d_i,mu-] = [mu+,mu-] = 0 and [d_i,mu+] = [mu-,x_i] = 1.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    xs = {i: WeylOp.x(m, i) for i in range(1, m + 1)}
    ds = {i: WeylOp.dy(m, i) for i in range(1, m + 1)}
    mup = generator_element(Generator("mu+"), m)
    mum = generator_element(Generator("mu-"), m)
    one = WeylOp.one(m)
    checks = []

    def add(family, i, j, got, expected):
        checks.append(RelationCheck(family, i, j, got == expected, str(got)))

    for i in range(1, m + 1):
        for j in range(1, m + 1):
            add("[x_i,x_j]=0", i, j, commutator(xs[i], xs[j]), WeylOp.zero(m))
            add("[d_i,d_j]=0", i, j, commutator(ds[i], ds[j]), WeylOp.zero(m))
            add("[d_i,x_j]=0", i, j, commutator(ds[i], xs[j]), WeylOp.zero(m))
    for i in range(1, m + 1):
        add("[x_i,mu+]=0", i, None, commutator(xs[i], mup), WeylOp.zero(m))
        add("[d_i,mu-]=0", i, None, commutator(ds[i], mum), WeylOp.zero(m))
        add("[d_i,mu+]=1", i, None, commutator(ds[i], mup), one)
        add("[mu-,x_i]=1", i, None, commutator(mum, xs[i]), one)
    add("[mu+,mu-]=0", None, None, commutator(mup, mum), WeylOp.zero(m))
    return checks


# -- the spanned subalgebra and membership ------------------------------------


@dataclass(frozen=True)
class SubalgebraWord:
    """Spanning word x^alpha * mu_plus^s * dy^delta * mu_minus^r.

    Such a word is already normal-ordered, so its Weyl expansion carries the
    multinomial coefficients of (y1+..+ym)^s and (dx1+..+dxm)^r and nothing
    else; all its normal monomials share the total degree
    |alpha| + s + |delta| + r.
    """

    alpha: tuple
    s: int
    delta: tuple
    r: int

    def degree(self) -> int:
        return sum(self.alpha) + self.s + sum(self.delta) + self.r

    def to_weyl(self, m: int) -> WeylOp:
        if len(self.alpha) != m or len(self.delta) != m:
            raise ValueError(f"word has wrong ambient size for m={m}")
        mup = generator_element(Generator("mu+"), m)
        mum = generator_element(Generator("mu-"), m)
        # multiply in normal order: x^alpha * mu+^s * dy^delta * mu-^r
        out = WeylOp(m, {(self.alpha, _zeros(m), _zeros(m), _zeros(m)): Fraction(1)})
        out = out * mup**self.s
        out = out * WeylOp(m, {(_zeros(m), _zeros(m), _zeros(m), self.delta): Fraction(1)})
        return out * mum**self.r

    def __str__(self):
        bits = []
        for i, e in enumerate(self.alpha):
            if e:
                bits.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
        if self.s:
            bits.append("mu+" + (f"^{self.s}" if self.s > 1 else ""))
        for i, e in enumerate(self.delta):
            if e:
                bits.append(f"d{i + 1}" + (f"^{e}" if e > 1 else ""))
        if self.r:
            bits.append("mu-" + (f"^{self.r}" if self.r > 1 else ""))
        return "*".join(bits) if bits else "1"


def subalgebra_membership(w: WeylOp) -> dict[SubalgebraWord, Fraction] | None:
    """Expand w over the spanning words, or return None if w is outside.

    Distinct words have disjoint normal-form supports, so the only words
    that can appear in an expansion of w are those whose support meets the
    support of w; each such word is read off a normal monomial (a,b,g,d) of
    w as (a, |b|, d, |g|), and its total degree is bounded by the Bernstein
    degree of w.  Expanding those candidates and solving the exact linear
    system therefore decides membership outright: a failed solve proves
    there is no expansion at any degree.
    """
    m = w.m
    if w.is_zero():
        return {}
    candidates = sorted(
        {
            SubalgebraWord(a, sum(b), d, sum(g))
            for (a, b, g, d) in w.terms
        },
        key=lambda wd: (wd.degree(), wd.alpha, wd.s, wd.delta, wd.r),
    )
    expansions = [wd.to_weyl(m) for wd in candidates]
    support = sorted(
        {key for e in expansions for key in e.terms} | set(w.terms)
    )
    columns = [[e.terms.get(key, Fraction(0)) for key in support] for e in expansions]
    rhs = [w.terms.get(key, Fraction(0)) for key in support]
    sol = solve_columns(columns, rhs)
    if sol is None:
        return None
    return {wd: c for wd, c in zip(candidates, sol) if c != 0}
