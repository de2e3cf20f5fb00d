"""Free graded-commutative differential algebras (Sullivan algebras).

Elements of ``ΛV`` are :class:`Poly` values: sparse combinations of
monomials, each an exponent tuple over the ordered generators.  The normal
form lists generators in creation order; odd generators occur at most once,
and reordering picks up the Koszul sign.

The differential is given on generators and extended as a degree +1
derivation.  Everything is truncated at a degree ``cap``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import exactlin
from .exactlin import Echelon, sparse_kernel
from .freelie import Generator, TensorElement, graded_sign

Monomial = Tuple[int, ...]


class MalformedDifferential(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class CdgaGenSet:
    """Ordered generators of degree >= 2 with distinct names."""

    def __init__(self, gens: Iterable[Tuple[str, int]]):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in gens:
            if g.degree < 2:
                raise ValueError(f"{g.name} has degree {g.degree}; generators need degree >= 2")
        self.gens = gens
        self.degrees = tuple(g.degree for g in gens)
        self._index = {g.name: i for i, g in enumerate(gens)}

    @classmethod
    def of(cls, **degrees: int) -> "CdgaGenSet":
        return cls(degrees.items())

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        return isinstance(other, CdgaGenSet) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def index(self, g) -> int:
        return self._index[g.name if isinstance(g, Generator) else g]

    def var(self, g) -> "Poly":
        e = [0] * len(self)
        e[self.index(g)] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def vars(self) -> List["Poly"]:
        return [self.var(g.name) for g in self.gens]

    def one(self) -> "Poly":
        return Poly(self, {(0,) * len(self): Fraction(1)})

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for g, e in zip(self.gens, m):
            if e:
                parts.append(g.name if e == 1 else f"{g.name}^{e}")
        return "*".join(parts) or "1"


def _mono_mul(gs: CdgaGenSet, m1: Monomial, m2: Monomial) -> Tuple[int, Optional[Monomial]]:
    """Sign and normal form of ``m1 * m2``; ``(0, None)`` if an odd square appears."""
    for i in range(len(m1)):
        if gs.degrees[i] % 2 and m1[i] + m2[i] > 1:
            return 0, None
    # count pairs (i in m1, j in m2, i > j) with both odd
    swaps = 0
    seen = 0
    for i in range(len(m1)):
        if gs.degrees[i] % 2:
            if m1[i]:
                swaps += seen
            if m2[i]:
                seen += 1
    return (-1 if swaps % 2 else 1), tuple(m1[i] + m2[i] for i in range(len(m1)))


class Poly:
    """Element of ``ΛV``: sparse map from monomials to rationals."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: CdgaGenSet, terms: Optional[Mapping[Monomial, Fraction]] = None):
        self.gens = gens
        self.terms: Dict[Monomial, Fraction] = {
            m: Fraction(c) for m, c in (terms or {}).items() if c
        }

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Poly) and self.terms == other.terms

    def _combine(self, other: "Poly", s: int) -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + s * c
        return Poly(self.gens, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Poly(self.gens, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.gens, {m: c * x for m, x in self.terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = _mono_mul(self.gens, m1, m2)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return Poly(self.gens, out)

    def __rmul__(self, c):
        return self * c

    def __pow__(self, n: int):
        out = self.gens.one()
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self) -> Optional[int]:
        ds = {self.gens.monomial_degree(m) for m in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def wordlength_parts(self) -> Dict[int, "Poly"]:
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {k: Poly(self.gens, v) for k, v in sorted(out.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            parts.append(f"{c}*{self.gens.format_monomial(m)}" if c != 1 else self.gens.format_monomial(m))
        return " + ".join(parts)


class SullivanAlgebra:
    """``(ΛV, d)`` truncated at ``cap``; ``d^2 = 0`` is verified on construction."""

    def __init__(self, gens: CdgaGenSet, diff: Optional[Mapping] = None, cap: Optional[int] = None,
                 check: bool = True):
        self.gens = gens
        self.cap = cap if cap is not None else max(gens.degrees) + 1
        n = len(gens)
        self.diff: List[Poly] = [Poly(gens) for _ in range(n)]
        for g, v in (diff or {}).items():
            i = gens.index(g)
            if not isinstance(v, Poly) or v.gens != gens:
                raise MalformedDifferential(f"d({gens.gens[i].name}) must be a Poly over the same generators")
            if v and v.degree != gens.degrees[i] + 1:
                raise MalformedDifferential(
                    f"d({gens.gens[i].name}) must be homogeneous of degree {gens.degrees[i] + 1}")
            self.diff[i] = v
        self._mono_cache: Dict[int, List[Monomial]] = {}
        self._d_cache: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        if check and not check_d_squared(self):
            raise MalformedDifferential("the differential does not square to zero")

    def __repr__(self):
        parts = [f"d{g.name} = {v}" for g, v in zip(self.gens, self.diff) if v]
        return f"SullivanAlgebra({', '.join(parts) or 'd = 0'})"

    def var(self, name) -> Poly:
        return self.gens.var(name)

    def generator_diff(self, g) -> Poly:
        return self.diff[self.gens.index(g)]

    # -- the derivation ------------------------------------------------------

    def _d_mono(self, m: Monomial) -> Dict[Monomial, Fraction]:
        if m in self._d_cache:
            return self._d_cache[m]
        gs = self.gens
        out: Dict[Monomial, Fraction] = {}
        prefix_deg = 0
        for i, e in enumerate(m):
            if not e:
                continue
            dv = self.diff[i]
            if dv:
                # m = P * v_i^e * S, d(v^e) = e v^(e-1) dv
                pre = m[:i] + (0,) * (len(m) - i)
                rest = (0,) * i + (e - 1,) + m[i + 1:]
                sign = -1 if prefix_deg % 2 else 1
                for u, c in dv.terms.items():
                    s1, pu = _mono_mul(gs, pre, u)
                    if not s1:
                        continue
                    # v^(e-1) belongs left of dv, but v is even whenever e > 1
                    s2, full = _mono_mul(gs, pu, rest)
                    if not s2:
                        continue
                    nc = out.get(full, 0) + sign * s1 * s2 * e * c
                    if nc:
                        out[full] = nc
                    else:
                        out.pop(full, None)
            prefix_deg += e * gs.degrees[i]
        self._d_cache[m] = out
        return out

    def d(self, p: Poly) -> Poly:
        out: Dict[Monomial, Fraction] = {}
        for m, c in p.terms.items():
            for k, x in self._d_mono(m).items():
                out[k] = out.get(k, 0) + c * x
        return Poly(self.gens, out)

    # -- monomial bases --------------------------------------------------------

    def monomials(self, degree: int) -> List[Monomial]:
        """Monomials of the given degree, in lexicographic exponent order."""
        if degree not in self._mono_cache:
            self._mono_cache[degree] = _monomials(self.gens.degrees, degree)
        return self._mono_cache[degree]

    def _check_cap(self, degree: int) -> None:
        if degree > self.cap:
            raise CapExceeded(f"degree {degree} exceeds the cap {self.cap}")


@lru_cache(maxsize=None)
def _monomials(degrees: Tuple[int, ...], degree: int) -> List[Monomial]:
    n = len(degrees)
    out: List[Monomial] = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        d = degrees[i]
        top = min(1, left // d) if d % 2 else left // d
        for e in range(top, -1, -1):
            acc.append(e)
            rec(i + 1, left - e * d, acc)
            acc.pop()

    if degree >= 0:
        rec(0, degree, [])
    out.sort()
    return out


# ---------------------------------------------------------------------------
# operations


def check_d_squared(s: SullivanAlgebra) -> bool:
    for i, g in enumerate(s.gens):
        if g.degree + 2 <= s.cap and s.diff[i] and s.d(s.diff[i]):
            return False
    return True


def word_length_parts(s: SullivanAlgebra, g) -> Dict[int, Poly]:
    """``d(g)`` split by word length; key 1 is the linear part ``d_0``."""
    return s.generator_diff(g).wordlength_parts()


def is_minimal(s: SullivanAlgebra) -> bool:
    return all(1 not in word_length_parts(s, g.name) for g in s.gens)


def _d_rows(s: SullivanAlgebra, degree: int) -> List[Dict[Monomial, Fraction]]:
    return [s._d_mono(m) for m in s.monomials(degree)]


def cohomology(s: SullivanAlgebra, degree: int) -> Tuple[int, List[Poly]]:
    s._check_cap(degree + 1)
    if degree < 0:
        return 0, []
    basis = s.monomials(degree)
    rels = sparse_kernel(_d_rows(s, degree))
    im = Echelon()
    if degree >= 1:
        for r in _d_rows(s, degree - 1):
            im.add(r)
    reps = []
    for r in rels:
        z = {basis[i]: c for i, c in r.items()}
        if im.add(z):
            reps.append(Poly(s.gens, z))
    return len(rels) - (im.rank - len(reps)), reps


def cohomology_dims(s: SullivanAlgebra, max_degree: int) -> Dict[int, int]:
    return {k: cohomology(s, k)[0] for k in range(0, max_degree + 1)}


def _linear_matrix(s: SullivanAlgebra, degree: int) -> List[Dict[int, Fraction]]:
    """Rows ``d_0(v)`` for generators ``v`` of the given degree, indexed by generator."""
    rows = []
    for i, g in enumerate(s.gens):
        if g.degree == degree:
            lin = s.diff[i].wordlength_parts().get(1)
            row = {}
            if lin:
                for m, c in lin.terms.items():
                    row[m.index(1)] = c
            rows.append(row)
    return rows


def homotopy_groups(s: SullivanAlgebra, max_degree: int) -> Dict[int, int]:
    """Per-degree ``dim H(V, d_0)``."""
    out = {}
    for k in range(2, max_degree + 1):
        n = sum(1 for g in s.gens if g.degree == k)
        out[k] = n - exactlin.sparse_rank(_linear_matrix(s, k)) - exactlin.sparse_rank(_linear_matrix(s, k - 1))
    return out


def spherical_generators(s: SullivanAlgebra, degree: int) -> Tuple[int, Dict[str, bool]]:
    """Spherical dimension in one degree plus, per generator, whether ``dv`` lies in ``d(Λ^{>=2}V)``."""
    s._check_cap(degree + 1)
    idx = [i for i, g in enumerate(s.gens) if g.degree == degree]
    if not idx:
        return 0, {}
    image = Echelon()
    for m in s.monomials(degree):
        if sum(m) >= 2:
            image.add(s._d_mono(m))
    residuals = []
    flags = {}
    for i in idx:
        r = image.reduce(s.diff[i].terms)
        flags[s.gens.gens[i].name] = not r
        residuals.append(r)
    kernel_dim = len(idx) - exactlin.sparse_rank(residuals)
    return kernel_dim - exactlin.sparse_rank(_linear_matrix(s, degree - 1)), flags


def spherical_cohomology(s: SullivanAlgebra, max_degree: int) -> Dict[int, int]:
    s._check_cap(max_degree + 1)
    return {k: spherical_generators(s, k)[0] for k in range(2, max_degree + 1)}


def build_dual_example(deg_a: int = 3, count: int = 3, cap: int = 14) -> SullivanAlgebra:
    """``da = db = 0, dn_1 = ab, dn_i = a n_(i-1)`` with ``|b| = |a| - 1``."""
    if deg_a < 3 or deg_a % 2 == 0:
        raise ValueError("deg_a must be odd and at least 3")
    if count < 0:
        raise ValueError("count must be non-negative")
    step = deg_a - 1
    degs = [("a", deg_a), ("b", step)] + [(f"n{i}", (i + 1) * step) for i in range(1, count + 1)]
    if max(d for _, d in degs) > cap:
        raise CapExceeded(f"cap {cap} too small: n{count} has degree {(count + 1) * step}")
    gs = CdgaGenSet(degs)
    a, b, *ns = gs.vars()
    diff = {}
    prev = b
    for i, n in enumerate(ns, start=1):
        diff[f"n{i}"] = a * prev
        prev = n
    return SullivanAlgebra(gs, diff, cap)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg dualization


def ce_sign_linear(n_i: int) -> int:
    return -1 if n_i % 2 == 0 else 1


def ce_sign_quadratic(n_i: int, n_j: int) -> int:
    return -1 if (n_i * (n_j + 1)) % 2 else 1


def ce_dualize(d, cap: int) -> SullivanAlgebra:
    """Cochain algebra on a Lie basis of ``d`` up to degree ``cap``.

    One generator ``v_k`` of degree ``|e_k| + 1`` per basis element ``e_k``;
    with ``δe_i = Σ D_i^k e_k`` and ``[e_i, e_j] = Σ c_ij^k e_k``::

        d v_k = -Σ_i (-1)^(n_i+1) D_i^k v_i - 1/2 Σ_(i,j) (-1)^(n_i (n_j+1)) c_ij^k v_i v_j

    The resulting Sullivan algebra computes cohomology correctly in degrees
    ``<= cap``.
    """
    from .dgla import Dgla  # local: dgla is the heavier module
    if not isinstance(d, Dgla):
        raise TypeError("ce_dualize expects a Dgla")
    d._check_cap(cap)
    basis: List = []
    for k in range(1, cap + 1):
        basis.extend(d.basis(k))
    n = [e.degree for e in basis]
    # coordinates by degree
    coords: Dict[int, Tuple[Echelon, List[int]]] = {}
    for idx, e in enumerate(basis):
        ech, ids = coords.setdefault(e.degree, (Echelon(track=True), []))
        ech.add(e.expand().terms)
        ids.append(idx)

    def express(t: TensorElement, degree: int) -> Dict[int, Fraction]:
        if not t:
            return {}
        ech, ids = coords[degree]
        c = ech.express(t.terms)
        if c is None:
            raise ValueError("element outside the Lie basis span")
        return {ids[i]: x for i, x in c.items()}

    gs = CdgaGenSet((f"v{k}", n[k] + 1) for k in range(len(basis)))
    out: List[Dict[Monomial, Fraction]] = [{} for _ in basis]
    size = len(basis)

    def unit(*ks):
        e = [0] * size
        for k in ks:
            e[k] += 1
        return tuple(e)

    for i, e in enumerate(basis):
        if n[i] - 1 >= 1:
            for k, c in express(d.d_tensor(e.expand()), n[i] - 1).items():
                m = unit(i)
                out[k][m] = out[k].get(m, 0) - ce_sign_linear(n[i]) * c
    for i, ei in enumerate(basis):
        ti = ei.expand()
        for j, ej in enumerate(basis):
            if n[i] + n[j] > cap:
                continue
            br = ti.commutator(ej.expand())
            for k, c in express(br, n[i] + n[j]).items():
                s, m = _mono_mul(gs, unit(i), unit(j))
                if s:
                    out[k][m] = out[k].get(m, 0) - Fraction(1, 2) * ce_sign_quadratic(n[i], n[j]) * s * c
    diff = {f"v{k}": Poly(gs, out[k]) for k in range(size) if any(out[k].values())}
    return SullivanAlgebra(gs, diff, cap + 1)
