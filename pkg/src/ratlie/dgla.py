"""Differential graded Lie algebras on free underlying Lie algebras.

A :class:`Dgla` is a free graded Lie algebra together with a degree -1
differential given on generators and extended as a derivation,
``d[x, y] = [dx, y] + (-1)^|x| [x, dy]``.  All computations happen on tensor
expansions, where the same differential is the derivation of the tensor
algebra.

When the differential respects a finer grading (every generator gets a
*weight*: zero-differential generators are unit vectors and any other
generator inherits the weight of its differential) every degree splits into
weight blocks which are handled independently.  Otherwise a single block per
degree is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import exactlin
from .exactlin import Echelon, sparse_kernel
from .freelie import (
    Alphabet,
    Generator,
    LieElement,
    TensorElement,
    Word,
    _mdeg_basis,
    ad_power,
    as_element,
    basis_bigraded,
    bracket,
    format_element,
    gen,
    graded_sign,
    multidegrees_of_degree,
)


class MalformedDifferential(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class ConstructionContradiction(RuntimeError):
    """No element outside the ideal was found; would contradict the counting argument."""


# ---------------------------------------------------------------------------
# spans of tensor elements


class TensorSpan:
    """Span of tensor elements, with exact membership."""

    def __init__(self, elements: Iterable[TensorElement] = ()):
        self.echelon = Echelon()
        for t in elements:
            self.add(t)

    def add(self, t: TensorElement) -> bool:
        return self.echelon.add(t.terms)

    @property
    def dim(self) -> int:
        return self.echelon.rank

    def __contains__(self, t: TensorElement) -> bool:
        return self.echelon.contains(t.terms)

    def reduce(self, t: TensorElement) -> TensorElement:
        return TensorElement(self.echelon.reduce(t.terms))

    def labels(self) -> List[Word]:
        return sorted({w for row in self.echelon.rows for w in row})

    def subspace(self, labels: Optional[Sequence[Word]] = None) -> exactlin.Subspace:
        """Dense :class:`~ratlie.exactlin.Subspace` over the given word columns."""
        labels = list(labels) if labels is not None else self.labels()
        rows = [tuple(r.get(w, Fraction(0)) for w in labels) for r in self.echelon.rows]
        return exactlin.span(rows, ambient_dim=len(labels))


# ---------------------------------------------------------------------------
# ideals in a free Lie algebra


class IdealSpanner:
    """Graded pieces of the ideal generated by homogeneous elements of a free Lie algebra.

    The ideal is spanned by iterated brackets ``[g1, [g2, ..., [gk, y]]]``
    with ``g_i`` letters of the alphabet, so each multidegree piece is built
    from the pieces one letter smaller.
    """

    def __init__(self, alph: Alphabet, gens: Sequence[LieElement]):
        self.alph = alph
        self.by_mdeg: Dict[Tuple[int, ...], List[LieElement]] = {}
        for y in gens:
            y = as_element(y)
            if y.is_zero():
                continue
            md = y.multidegree()
            if md is None:
                raise ValueError(f"{y} is not multihomogeneous")
            if any(g not in alph for g in md):
                raise ValueError(f"{y} uses letters outside {alph}")
            self.by_mdeg.setdefault(alph.multidegree(md), []).append(y)
        self._cache: Dict[Tuple[int, ...], Tuple[TensorSpan, List[LieElement]]] = {}

    def piece(self, mdeg: Tuple[int, ...]) -> Tuple[TensorSpan, List[LieElement]]:
        mdeg = tuple(mdeg)
        if mdeg in self._cache:
            return self._cache[mdeg]
        span = TensorSpan()
        kept: List[LieElement] = []
        if sum(mdeg) > 0 and min(mdeg) >= 0:
            cands = list(self.by_mdeg.get(mdeg, ()))
            for i, g in enumerate(self.alph.gens):
                if mdeg[i]:
                    rest = mdeg[:i] + (mdeg[i] - 1,) + mdeg[i + 1:]
                    if self._reachable(rest):
                        cands.extend(bracket(g, u) for u in self.piece(rest)[1])
            for c in cands:
                if span.add(c.expand()):
                    kept.append(c)
        self._cache[mdeg] = (span, kept)
        return span, kept

    def _reachable(self, mdeg) -> bool:
        return any(all(x <= y for x, y in zip(m, mdeg)) for m in self.by_mdeg)

    def at_degree(self, degree: int, mdeg_filter=None) -> TensorSpan:
        out = TensorSpan()
        for m in multidegrees_of_degree(self.alph, degree):
            if mdeg_filter is not None and not mdeg_filter(m):
                continue
            for e in self.piece(m)[1]:
                out.add(e.expand())
        return out


def ideal_span_at_degree(alph: Alphabet, gens: Sequence[LieElement], target_degree: int,
                         filter_gen: Optional[Generator] = None,
                         filter_count: Optional[int] = None) -> TensorSpan:
    """Degree ``target_degree`` part of the ideal generated by ``gens``.

    With ``filter_gen``/``filter_count`` only the multidegrees with that many
    letters ``filter_gen`` are kept (e.g. the wl_b = 2 slice).
    """
    sp = IdealSpanner(alph, gens)
    flt = None
    if filter_gen is not None:
        i = alph.position(filter_gen)
        flt = lambda m: m[i] == filter_count  # noqa: E731
    return sp.at_degree(target_degree, flt)


def ideal_closed_form(a: Generator, ys: Sequence[LieElement], wordlength: int) -> TensorSpan:
    """Span of ``ad^l(a)(y)`` landing in the given word length."""
    out = TensorSpan()
    for y in ys:
        l = wordlength - y.wordlength
        if l >= 0:
            out.add(ad_power(a, l, y).expand())
    return out


# ---------------------------------------------------------------------------
# the dgla


def d_tensor(diff_t: Mapping[Generator, TensorElement], t: TensorElement) -> TensorElement:
    """Apply the derivation determined by ``diff_t`` to a tensor element."""
    out: Dict[Word, Fraction] = {}
    for w, c in t.terms.items():
        sign = 1
        for k, g in enumerate(w):
            dg = diff_t.get(g)
            if dg is not None:
                pre, post = w[:k], w[k + 1:]
                sc = c if sign > 0 else -c
                for u, x in dg.terms.items():
                    nw = pre + u + post
                    nc = out.get(nw, 0) + sc * x
                    if nc:
                        out[nw] = nc
                    else:
                        out.pop(nw, None)
            if g.degree % 2:
                sign = -sign
    return TensorElement._raw(out)


class Dgla:
    """Free graded Lie algebra with a derivation differential of degree -1.

    ``max_degree`` bounds the generators that take part in computations;
    homology is available in degrees ``<= max_degree - 1``.
    """

    def __init__(self, alphabet: Alphabet, diff: Optional[Mapping[Generator, LieElement]] = None,
                 max_degree: Optional[int] = None, check: bool = True):
        self.alphabet = alphabet
        self.max_degree = max_degree if max_degree is not None else max(g.degree for g in alphabet)
        self.diff: Dict[Generator, LieElement] = {}
        for g, v in (diff or {}).items():
            if g not in alphabet:
                raise MalformedDifferential(f"{g} is not a generator")
            v = as_element(v)
            if v.is_zero():
                continue
            if v.degree != g.degree - 1:
                raise MalformedDifferential(
                    f"d({g.name}) has degree {v.degree}, expected {g.degree - 1}")
            if not v.generators() <= set(alphabet):
                raise MalformedDifferential(f"d({g.name}) uses letters outside the alphabet")
            self.diff[g] = v
        self.active = Alphabet(g for g in alphabet if g.degree <= self.max_degree)
        self._dt = {g: v.expand() for g, v in self.diff.items() if g in self.active}
        self.weights = self._weights()
        self._block_cache: Dict[int, Dict[tuple, List[LieElement]]] = {}
        if check and not check_differential(self):
            raise MalformedDifferential("the differential does not square to zero")

    def __repr__(self):
        parts = [f"d{g.name} = {format_element(v)}" for g, v in self.diff.items()]
        return f"Dgla({self.alphabet!r}; {', '.join(parts) or 'd = 0'})"

    # -- differential ------------------------------------------------------

    def d(self, x) -> LieElement:
        """Differential of a Lie element, by the derivation rule on bracket words."""
        x = as_element(x)
        out: List[Tuple[Fraction, object]] = []
        for c, w in x.terms:
            out.extend((c * k, v) for k, v in self._d_word(w).terms)
        return LieElement(out)

    def _d_word(self, w) -> LieElement:
        if isinstance(w, Generator):
            return self.diff.get(w, LieElement())
        du = self._d_word(w.left)
        dv = self._d_word(w.right)
        sign = -1 if _word_degree(w.left) % 2 else 1
        return bracket(du, LieElement.of(w.right)) + sign * bracket(LieElement.of(w.left), dv)

    def d_tensor(self, t: TensorElement) -> TensorElement:
        return d_tensor(self._dt, t)

    # -- weights and blocks --------------------------------------------------

    def _weights(self) -> Optional[Dict[Generator, Tuple[int, ...]]]:
        gens = self.active.gens
        free = [g for g in gens if g not in self._dt]
        unit = {g: tuple(1 if h == g else 0 for h in free) for g in free}
        weights = dict(unit)
        zero = tuple(0 for _ in free)
        for g in sorted((g for g in gens if g in self._dt), key=lambda g: g.degree):
            ws = set()
            for w in self._dt[g].terms:
                if any(h not in weights for h in w):
                    return None
                ws.add(tuple(map(sum, zip(zero, *(weights[h] for h in w)))))
            if len(ws) != 1:
                return None
            weights[g] = ws.pop()
        return weights

    def weight_of(self, mdeg: Sequence[int]) -> tuple:
        if self.weights is None:
            return ()
        total = [0] * len(next(iter(self.weights.values()), ()))
        for k, g in zip(mdeg, self.active.gens):
            if k:
                for i, x in enumerate(self.weights[g]):
                    total[i] += k * x
        return tuple(total)

    def _check_cap(self, degree: int) -> None:
        if degree > self.max_degree:
            raise CapExceeded(f"degree {degree} exceeds the cap {self.max_degree}")

    def blocks(self, degree: int) -> Dict[tuple, List[LieElement]]:
        """Basis of ``L_degree`` grouped by weight (wl >= 1, all multidegrees)."""
        self._check_cap(degree)
        if degree not in self._block_cache:
            out: Dict[tuple, List[LieElement]] = {}
            for m in multidegrees_of_degree(self.active, degree):
                es = _mdeg_basis(self.active, m)
                if es:
                    out.setdefault(self.weight_of(m), []).extend(e.element for e in es)
            self._block_cache[degree] = out
        return self._block_cache[degree]

    def basis(self, degree: int) -> List[LieElement]:
        return [e for blk in self.blocks(degree).values() for e in blk]

    def dim(self, degree: int) -> int:
        return sum(len(b) for b in self.blocks(degree).values())

    # -- homology --------------------------------------------------------------

    def homology(self, degree: int) -> Tuple[int, List[LieElement]]:
        self._check_cap(degree + 1)
        if degree < 1:
            return 0, []
        up = self.blocks(degree + 1)
        reps: List[LieElement] = []
        total = 0
        for w, tgt in self.blocks(degree).items():
            im = TensorSpan(self.d_tensor(e.expand()) for e in up.get(w, ()))
            rels = sparse_kernel([self.d_tensor(e.expand()).terms for e in tgt])
            total += len(rels) - im.dim
            for r in rels:
                z = _combo(tgt, r)
                if im.add(z.expand()):
                    reps.append(z)
        return total, reps

    def homology_dims(self, max_degree: int) -> Dict[int, int]:
        return {k: self.homology(k)[0] for k in range(1, max_degree + 1)}

    def bracket_image_of_diff(self, degree: int, weights: Optional[Iterable[tuple]] = None) -> TensorSpan:
        """Span of ``d(m)`` for ``m`` in the decomposable part of ``L_(degree+1)``."""
        self._check_cap(degree + 1)
        out = TensorSpan()
        src = self.blocks(degree + 1) if degree + 1 >= 1 else {}
        keys = src.keys() if weights is None else [w for w in weights if w in src]
        for w in keys:
            for e in src[w]:
                if e.wordlength >= 2:
                    out.add(self.d_tensor(e.expand()))
        return out

    def generators_in_degree(self, degree: int) -> List[Generator]:
        return [g for g in self.active if g.degree == degree]

    def generator_weight(self, g: Generator) -> tuple:
        return () if self.weights is None else self.weights[g]


def _word_degree(w) -> int:
    if isinstance(w, Generator):
        return w.degree
    return _word_degree(w.left) + _word_degree(w.right)


def _combo(basis: Sequence[LieElement], coeffs: Mapping[int, Fraction]) -> LieElement:
    terms = []
    for i in sorted(coeffs):
        terms.extend((coeffs[i] * c, w) for c, w in basis[i].terms)
    return LieElement(terms)


# ---------------------------------------------------------------------------
# operations


def check_differential(d: Dgla, samples: int = 20) -> bool:
    """``d^2 = 0`` on every active generator, and the derivation rule on sampled brackets."""
    for g in d.active:
        if g.degree < 2 or g not in d._dt:
            continue
        if d.d_tensor(d._dt[g]):
            return False
    for u, v in islice(_sample_pairs(d), samples):
        if not derivation_rule_holds(d, u, v):
            return False
    return True


def _sample_pairs(d: Dgla):
    pool: List[LieElement] = []
    for k in range(1, d.max_degree + 1):
        pool.extend(d.basis(k)[:3])
        if len(pool) >= 8:
            break
    pool.extend(gen(g) for g in d._dt)
    for i, u in enumerate(pool):
        for v in pool[i:]:
            if u.degree + v.degree <= d.max_degree + 1:
                yield u, v


def derivation_rule_holds(d: Dgla, u: LieElement, v: LieElement) -> bool:
    lhs = d.d_tensor(bracket(u, v).expand())
    rhs = bracket(d.d(u), v).expand() + graded_sign(u.degree, 1) * bracket(u, d.d(v)).expand()
    return lhs == rhs


def linear_part(d: Dgla) -> Dict[Generator, Dict[Generator, Fraction]]:
    """Word-length-one component of each generator's differential."""
    out: Dict[Generator, Dict[Generator, Fraction]] = {}
    for g in d.alphabet:
        row = {}
        v = d.diff.get(g)
        if v is not None:
            for w, c in v.expand().terms.items():
                if len(w) == 1:
                    row[w[0]] = c
        out[g] = row
    return out


def is_minimal(d: Dgla) -> bool:
    return not any(linear_part(d).values())


def homology(d: Dgla, degree: int) -> Tuple[int, List[LieElement]]:
    return d.homology(degree)


def bracket_image_of_diff(d: Dgla, degree: int) -> TensorSpan:
    return d.bracket_image_of_diff(degree)


def _linear_rank_into(d: Dgla, degree: int) -> int:
    lp = linear_part(d)
    rows = [{h: c for h, c in lp[g].items()} for g in d.generators_in_degree(degree + 1)]
    return exactlin.sparse_rank(rows)


def spherical_generators(d: Dgla, degree: int) -> Tuple[int, Dict[Generator, bool]]:
    """Spherical dimension in one degree, plus the per-generator membership test.

    The per-generator flag says whether ``d(g)`` lies in the span of
    differentials of decomposables (for a minimal algebra that is exactly
    sphericity of ``g``).
    """
    gens = d.generators_in_degree(degree)
    if not gens:
        return 0, {}
    d._check_cap(degree)
    ws = {d.generator_weight(g) for g in gens}
    image = d.bracket_image_of_diff(degree - 1, ws) if degree >= 2 else TensorSpan()
    residuals = []
    flags = {}
    for g in gens:
        dg = d._dt.get(g, TensorElement())
        r = image.reduce(dg)
        flags[g] = not r
        residuals.append(r.terms)
    kernel_dim = len(gens) - exactlin.sparse_rank(residuals)
    return kernel_dim - _linear_rank_into(d, degree), flags


def spherical_homology(d: Dgla, max_degree: int) -> Dict[int, int]:
    """Per-degree dimension of ``ker(bar d|_V) / im d_V`` (desuspended spherical homology)."""
    d._check_cap(max_degree)
    return {k: spherical_generators(d, k)[0] for k in range(1, max_degree + 1)}


# ---------------------------------------------------------------------------
# the counter-example


@dataclass(frozen=True)
class CounterexampleSpec:
    deg_a: int = 3
    deg_b: int = 3
    count: int = 4
    max_degree: int = 30
    js: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        for name in ("deg_a", "deg_b"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1 or v % 2 == 0:
                raise ValueError(f"{name} must be a positive odd integer, got {v!r}")
        if self.js is not None:
            if any(j < 1 for j in self.js) or list(self.js) != sorted(set(self.js)):
                raise ValueError("js must be strictly increasing positive integers")
        elif self.count < 0:
            raise ValueError("count must be non-negative")

    @property
    def indices(self) -> Tuple[int, ...]:
        if self.js is not None:
            return tuple(self.js)
        return tuple(2 * k + 1 for k in range(self.count))

    def i_j(self, j: int) -> int:
        return 2 * self.deg_b + j * self.deg_a

    def x_degree(self, j: int) -> int:
        return self.i_j(j) + 1


def choose_y(j: int, prior: Sequence[LieElement], a: Generator, b: Generator) -> LieElement:
    """Element of the wl_b = 2 layer of degree ``2|b| + j|a|`` outside the ideal of ``prior``.

    ``j = 1`` gives ``[b, [a, b]]``.  Otherwise the layer basis is taken in
    its canonical order and the first standard vector (then the first sum of
    two) outside the ideal is used.
    """
    if a.degree % 2 == 0 or b.degree % 2 == 0:
        raise ValueError("a and b need odd degrees")
    if j < 1:
        raise ValueError("j must be positive")
    if j == 1:
        return bracket(b, bracket(a, b))
    alph = Alphabet([a, b])
    layer = basis_bigraded(alph, j + 2, b, 2)
    coords = Echelon(track=True)
    for e in layer:
        coords.add(e.expand().terms)
    ideal = IdealSpanner(alph, prior).piece((j, 2))[1]
    rows = []
    for y in ideal:
        c = coords.express(y.expand().terms)
        if c is None:
            raise ConstructionContradiction("ideal element outside the layer")
        rows.append(tuple(c.get(i, Fraction(0)) for i in range(len(layer))))
    sub = exactlin.span(rows, ambient_dim=len(layer))
    try:
        pick = exactlin.complement_pick(sub, len(layer))
    except exactlin.NoComplementError:
        raise ConstructionContradiction(f"layer {j} is exhausted by the ideal") from None
    return _combo(layer, {i: c for i, c in enumerate(pick) if c})


def build_counterexample(spec: CounterexampleSpec) -> Dgla:
    a, b = Generator("a", spec.deg_a), Generator("b", spec.deg_b)
    need = [spec.x_degree(j) for j in spec.indices]
    if need and max(need) > spec.max_degree:
        raise CapExceeded(
            f"cap {spec.max_degree} too small: x_j degrees {need} need cap >= {max(need)}")
    xs = [Generator(f"x{j}", spec.x_degree(j)) for j in spec.indices]
    diff: Dict[Generator, LieElement] = {}
    ys: List[LieElement] = []
    for j, x in zip(spec.indices, xs):
        y = choose_y(j, ys, a, b)
        ys.append(y)
        diff[x] = y
    return Dgla(Alphabet([a, b] + xs), diff, spec.max_degree)


def counterexample_parts(d: Dgla) -> Tuple[Generator, Generator, List[Generator], List[LieElement]]:
    a, b = d.alphabet["a"], d.alphabet["b"]
    xs = [g for g in d.active if g.name.startswith("x")]
    return a, b, xs, [d.diff[x] for x in xs]


def quotient_oracle_dims(a: Generator, b: Generator, ys: Sequence[LieElement],
                         max_degree: int) -> Dict[int, int]:
    """``dim (L<a,b> / I(ys))_d`` for ``d <= max_degree``, by direct ranks."""
    alph = Alphabet([a, b])
    sp = IdealSpanner(alph, ys)
    out = {}
    for k in range(1, max_degree + 1):
        total = sum(len(_mdeg_basis(alph, m)) for m in multidegrees_of_degree(alph, k))
        out[k] = total - sp.at_degree(k).dim
    return out


@dataclass
class CoformalityDetail:
    degree: int
    homology_dim: int
    quotient_dim: int
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.surjective and self.homology_dim == self.quotient_dim


def coformality_details(d: Dgla, max_degree: int,
                        kill: Optional[Sequence[Generator]] = None) -> Tuple[bool, List[CoformalityDetail]]:
    """Check that ``base letters -> classes, killed letters -> 0`` is a quasi-isomorphism.

    ``kill`` defaults to the generators with a non-zero differential; the
    remaining letters must have zero differential.  The target is the free
    algebra on the remaining letters modulo the ideal of the killed letters'
    differentials, with zero differential.
    """
    d._check_cap(max_degree + 1)
    kill = list(kill) if kill is not None else [g for g in d.active if g in d._dt]
    base = [g for g in d.active if g not in kill]
    if any(g in d._dt for g in base):
        return False, []
    ys = [d.diff[x] for x in kill if x in d.diff]
    if any(not (y.generators() <= set(base)) for y in ys):
        return False, []
    alph = Alphabet(base)
    sp = IdealSpanner(alph, ys)
    # chain map: the killed letters' differentials vanish in the quotient
    for y in ys:
        if y.expand() not in sp.at_degree(y.degree):
            return False, []
    details = []
    for k in range(1, max_degree + 1):
        hdim, reps = d.homology(k)
        ideal = sp.at_degree(k)
        full = sum(len(_mdeg_basis(alph, m)) for m in multidegrees_of_degree(alph, k))
        qdim = full - ideal.dim
        span = TensorSpan()
        span.echelon = ideal.echelon.copy()
        for z in reps:
            span.add(z.expand().kill(kill))
        details.append(CoformalityDetail(k, hdim, qdim, span.dim == full))
    return all(x.ok for x in details), details


def coformality_witness(d: Dgla, max_degree: int, kill: Optional[Sequence[Generator]] = None) -> bool:
    return coformality_details(d, max_degree, kill)[0]


@dataclass
class VerificationReport:
    spec: CounterexampleSpec
    generator_homology: Dict[int, int] = field(default_factory=dict)
    spherical: Dict[int, int] = field(default_factory=dict)
    homology: Dict[int, int] = field(default_factory=dict)
    oracle: Dict[int, int] = field(default_factory=dict)
    even_homology_total: int = 0
    odd_homology_total: int = 0
    connectivity: int = 0
    d_squared_zero: bool = False
    minimal: bool = False
    x_differentials_in_ab: bool = False
    x_nonspherical_direct: Dict[str, bool] = field(default_factory=dict)
    x_nonspherical_ideal: Dict[str, bool] = field(default_factory=dict)
    layer_dims: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    coformality_ok: bool = False
    coformality: List[CoformalityDetail] = field(default_factory=list)

    @property
    def spherical_total(self) -> int:
        return sum(self.spherical.values())

    @property
    def spherical_degrees(self) -> List[int]:
        return sorted(k for k, v in self.spherical.items() if v)

    @property
    def homology_matches_oracle(self) -> bool:
        return self.homology == self.oracle

    def checks(self) -> Dict[str, bool]:
        s = self.spec
        expect_sph = {s.deg_a: 0, s.deg_b: 0}
        expect_sph[s.deg_a] += 1
        expect_sph[s.deg_b] += 1
        return {
            "d_squared_zero": self.d_squared_zero,
            "minimal": self.minimal,
            "even_homology_is_2": self.even_homology_total == 2,
            "odd_homology_counts_x": self.odd_homology_total == len(s.indices),
            "connectivity": self.connectivity == min(s.deg_a, s.deg_b),
            "spherical_total_2": self.spherical_total == 2,
            "spherical_in_degrees_of_a_b": {k: v for k, v in self.spherical.items() if v} == expect_sph,
            "x_not_spherical": all(self.x_nonspherical_direct.values()),
            "y_outside_prior_ideal": all(self.x_nonspherical_ideal.values()),
            "x_differentials_in_ab": self.x_differentials_in_ab,
            "homology_matches_quotient": self.homology_matches_oracle,
            "coformality": self.coformality_ok,
        }

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def verify_counterexample(d: Dgla, spec: CounterexampleSpec) -> VerificationReport:
    rep = VerificationReport(spec)
    a, b, xs, ys = counterexample_parts(d)
    cap = spec.max_degree
    top = cap - 1

    rep.d_squared_zero = check_differential(d)
    rep.minimal = is_minimal(d)
    # minimal: H(W, d_W) = W, and H_(k+1)(X) = W_k
    for g in d.active:
        rep.generator_homology[g.degree] = rep.generator_homology.get(g.degree, 0) + 1
    rep.even_homology_total = sum(v for k, v in rep.generator_homology.items() if (k + 1) % 2 == 0)
    rep.odd_homology_total = sum(v for k, v in rep.generator_homology.items() if (k + 1) % 2 == 1)
    rep.connectivity = min(g.degree for g in d.active)
    rep.x_differentials_in_ab = all(y.generators() <= {a, b} for y in ys)

    rep.spherical = spherical_homology(d, cap)
    for x in xs:
        _, flags = spherical_generators(d, x.degree)
        rep.x_nonspherical_direct[x.name] = not flags[x]

    alph = Alphabet([a, b])
    for k, (j, y) in enumerate(zip(spec.indices, ys)):
        piece = IdealSpanner(alph, ys[:k]).piece(alph.multidegree(y.multidegree()))[0]
        rep.x_nonspherical_ideal[xs[k].name] = y.expand() not in piece
        layer = len(basis_bigraded(alph, y.wordlength, b, 2))
        rep.layer_dims[j] = (layer, piece.dim)

    rep.homology = d.homology_dims(top)
    rep.oracle = quotient_oracle_dims(a, b, ys, top)
    rep.coformality_ok, rep.coformality = coformality_details(d, top)
    return rep
