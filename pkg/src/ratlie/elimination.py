"""Iterated elimination of generators in a free graded Lie algebra.

Splitting a homogeneous generator ``x`` off a free generating set ``Z``
(``Z = <x> + W``) leaves a free kernel whose generators are

* ``W, [x, W], [x, x]`` when ``x`` has odd degree,
* ``W, [x, W], [x, [x, W]], ...`` when ``x`` has even degree.

The even case is infinite, so every state carries mandatory caps on degree and
word length (in the original letters).  States are numbered by the number of
splits performed so far: stage 0 is the starting generating set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .exactlin import Echelon
from .freelie import (
    Alphabet,
    Generator,
    LieElement,
    ad_power,
    bracket,
    dim_formula_wlb2,
    dim_in_degree,
    format_element,
    format_pairbracket,
    gen,
    pairbracket_element,
    tensor_rank,
)


class EliminationError(RuntimeError):
    """Raised when a generated set fails to be linearly independent."""


class UnknownLabelError(KeyError):
    pass


Keep = Callable[[LieElement], bool]


@dataclass(frozen=True)
class EliminationState:
    stage: int
    current_generators: Tuple[Tuple[str, LieElement], ...]
    split_history: Tuple[Tuple[str, LieElement], ...]
    caps: Tuple[int, int]
    cap_exhausted: bool = False
    keep: Optional[Keep] = field(default=None, compare=False)

    def __post_init__(self):
        labels = [l for l, _ in self.current_generators]
        if len(set(labels)) != len(labels):
            raise EliminationError(f"duplicate labels in {labels}")
        els = [e for _, e in self.current_generators]
        for e in els:
            if e.degree is None or e.multidegree() is None:
                raise EliminationError(f"{e} is not homogeneous")
        if tensor_rank(els) != len(els):
            raise EliminationError("current generators are linearly dependent")

    @property
    def labels(self) -> List[str]:
        return [l for l, _ in self.current_generators]

    def element(self, label: str) -> LieElement:
        for l, e in self.current_generators:
            if l == label:
                return e
        raise UnknownLabelError(label)

    @property
    def max_degree(self) -> int:
        return self.caps[0]

    @property
    def max_wordlength(self) -> int:
        return self.caps[1]

    def degrees(self) -> List[int]:
        return [e.degree for _, e in self.current_generators]


def initial_state(gens: Sequence[Generator], max_degree: int, max_wordlength: int,
                  keep: Optional[Keep] = None) -> EliminationState:
    if max_degree < 1 or max_wordlength < 1:
        raise ValueError("caps must be positive")
    z = tuple((g.name, gen(g)) for g in gens)
    return EliminationState(0, z, (), (max_degree, max_wordlength), keep=keep)


def _within(e: LieElement, caps: Tuple[int, int]) -> bool:
    return e.degree <= caps[0] and e.wordlength <= caps[1]


def eliminate_step(state: EliminationState, pick: str) -> EliminationState:
    x = state.element(pick)
    rest = [(l, e) for l, e in state.current_generators if l != pick]
    caps = state.caps
    added: List[LieElement] = []
    if x.degree % 2:
        for _, w in rest:
            e = bracket(x, w)
            if _within(e, caps):
                added.append(e)
        xx = bracket(x, x)
        if _within(xx, caps):
            added.append(xx)
    else:
        layer = [w for _, w in rest]
        while layer:
            layer = [e for e in (bracket(x, w) for w in layer) if _within(e, caps)]
            added.extend(layer)
    if state.keep is not None:
        added = [e for e in added if state.keep(e)]
    new = tuple(rest) + tuple((format_element(e), e) for e in added)
    if tensor_rank(e for _, e in new) != len(new):
        raise EliminationError(f"splitting {pick} produced a dependent set")
    return EliminationState(
        stage=state.stage + 1,
        current_generators=new,
        split_history=state.split_history + ((pick, x),),
        caps=caps,
        cap_exhausted=not added,
        keep=state.keep,
    )


def find_label(state: EliminationState, target) -> str:
    """Label of the current generator proportional to ``target``."""
    target = target if isinstance(target, LieElement) else gen(target)
    for label, e in state.current_generators:
        if e.degree == target.degree and tensor_rank([e, target]) == 1:
            return label
    raise UnknownLabelError(format_element(target))


# ---------------------------------------------------------------------------
# short exact sequence bookkeeping


class DegreeCheck(NamedTuple):
    degree: int
    before: int
    after: int
    quotient: int
    ok: bool


@dataclass(frozen=True)
class EliminationReport:
    """Per-degree ``dim L_Z(before) == dim L_Z(after) + dim <x>``.

    The quotient of the split is the one-dimensional space spanned by ``x``
    (``[x, x]`` lies in the kernel), so its dimension is 1 in degree ``|x|``
    and 0 elsewhere.  ``valid_degree`` is the largest degree for which both
    truncated generating sets are complete.
    """

    before_stage: int
    after_stage: int
    split: str
    valid_degree: int
    rows: Tuple[DegreeCheck, ...]
    subalgebra_dims: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and all(
            abstract == concrete for _, abstract, concrete in self.subalgebra_dims
        )

    @property
    def failures(self) -> List[DegreeCheck]:
        return [r for r in self.rows if not r.ok]


def _abstract_alphabet(state: EliminationState) -> Alphabet:
    return Alphabet(Generator(f"z{i}", e.degree) for i, (_, e) in enumerate(state.current_generators))


def free_dims(state: EliminationState, max_degree: int) -> Dict[int, int]:
    """Per-degree dimensions of the free Lie algebra on the state's generators."""
    alph = _abstract_alphabet(state)
    return {d: dim_in_degree(alph, d) for d in range(1, max_degree + 1)}


def subalgebra_dims(state: EliminationState, max_degree: int) -> Dict[int, int]:
    """Per-degree dimensions of the subalgebra the generators span inside the ambient algebra.

    Built degree by degree from right-nested brackets ``[z, u]`` with ``z`` a
    generator and ``u`` already in the span.
    """
    gens = [e for _, e in state.current_generators]
    spans: Dict[int, List[LieElement]] = {}
    for d in range(1, max_degree + 1):
        ech = Echelon()
        kept: List[LieElement] = []
        cands = [z for z in gens if z.degree == d]
        for z in gens:
            cands.extend(bracket(z, u) for u in spans.get(d - z.degree, ()))
        for c in cands:
            if ech.add(c.expand().terms):
                kept.append(c)
        spans[d] = kept
    return {d: len(v) for d, v in spans.items()}


def valid_degree(state: EliminationState, letter_degree: int) -> int:
    return min(state.max_degree, state.max_wordlength * letter_degree)


def ses_dimension_check(before: EliminationState, after: EliminationState, x,
                        letter_degree: Optional[int] = None,
                        concrete: bool = False) -> EliminationReport:
    x = x if isinstance(x, LieElement) else gen(x)
    if letter_degree is None:
        letter_degree = min(
            g.degree for _, e in before.current_generators for g in e.generators()
        )
    top = min(valid_degree(before, letter_degree), valid_degree(after, letter_degree))
    fb = free_dims(before, top)
    fa = free_dims(after, top)
    rows = []
    for d in range(1, top + 1):
        q = 1 if d == x.degree else 0
        rows.append(DegreeCheck(d, fb[d], fa[d], q, fb[d] == fa[d] + q))
    sub = ()
    if concrete:
        sa = subalgebra_dims(after, top)
        sub = tuple((d, fa[d], sa[d]) for d in range(1, top + 1))
    split = after.split_history[-1][0] if after.split_history else "?"
    return EliminationReport(before.stage, after.stage, split, top, tuple(rows), sub)


# ---------------------------------------------------------------------------
# the wl_b = 2 schedule


def _count(e: LieElement, g: Generator) -> int:
    return e.multidegree().get(g, 0)


def wlb2_schedule(a: Generator, b: Generator, max_wl: int, keep_wlb: Optional[int] = 2,
                  max_degree: Optional[int] = None) -> List[EliminationState]:
    """States of the schedule ``a, [a,a], b, ad^1(a)(b), ad^2(a)(b), ...``.

    With ``keep_wlb`` set, newly generated elements with more than that many
    letters ``b`` are discarded, which leaves the wl_b <= keep_wlb part of
    every generating set intact.
    """
    if a.degree % 2 == 0 or b.degree % 2 == 0:
        raise ValueError("the wl_b = 2 schedule needs odd degrees for a and b")
    if max_wl < 2:
        raise ValueError("max_wl must be at least 2")
    if max_degree is None:
        max_degree = max_wl * max(a.degree, b.degree)
    keep = None if keep_wlb is None else (lambda e: _count(e, b) <= keep_wlb)
    s = initial_state([a, b], max_degree, max_wl, keep=keep)
    states = [s]
    picks: List[LieElement] = [gen(a), bracket(a, a), gen(b)]
    picks += [ad_power(a, i, b) for i in range(1, max_wl - 1)]
    for p in picks:
        if p.wordlength > max_wl:
            break
        s = eliminate_step(s, find_label(s, p))
        states.append(s)
    return states


class Wlb2Entry(NamedTuple):
    wordlength: int
    pair: Tuple[int, int]
    element: LieElement
    generated: LieElement

    @property
    def shorthand(self) -> str:
        return format_pairbracket(*self.pair)


def wlb2_schedule_basis(a: Generator, b: Generator, max_wl: int) -> List[Wlb2Entry]:
    """The wl_b = 2 basis produced by the elimination schedule, up to ``max_wl``.

    Each generated element is matched to the ``[ad^i(a)(b), ad^j(a)(b)]``
    (``i <= j``) it is proportional to; entries are ordered by word length
    and then by ``i``.
    """
    final = wlb2_schedule(a, b, max_wl)[-1]
    out: List[Wlb2Entry] = []
    for _, e in final.current_generators:
        if _count(e, b) != 2:
            continue
        n = e.wordlength
        for i in range((n - 2) // 2 + 1):
            p = pairbracket_element(i, n - 2 - i, a, b)
            if tensor_rank([p, e]) == 1 and not p.is_zero():
                out.append(Wlb2Entry(n, (i, n - 2 - i), p, e))
                break
        else:
            raise EliminationError(f"{format_element(e)} matches no [ad^i b, ad^j b]")
    out.sort(key=lambda t: (t.wordlength, t.pair))
    counts: Dict[int, int] = {}
    for t in out:
        counts[t.wordlength] = counts.get(t.wordlength, 0) + 1
    for n in range(2, max_wl + 1):
        if counts.get(n, 0) != dim_formula_wlb2(n):
            raise EliminationError(f"word length {n}: {counts.get(n, 0)} elements, expected {dim_formula_wlb2(n)}")
    if tensor_rank(t.element for t in out) != len(out):
        raise EliminationError("schedule output is linearly dependent")
    return out
