"""Free graded Lie algebras inside the tensor algebra.

A Lie element is a rational combination of bracket trees over generators.
Its canonical form is the tensor expansion, where ``[u, v]`` becomes
``u*v - (-1)^(|u||v|) v*u``; equality, rank and membership are all decided
there.

Bases are built per multidegree (the vector of per-generator letter counts)
from right-nested brackets ``[g1, [g2, [..., gn]]]``: candidates
``[g, m]`` with ``m`` in the basis one letter shorter are kept when they
raise the rank.  The candidates are generated in lexicographic order of their
leaf indices, so the basis of a word length is the union of its multidegree
bases in that same order.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .exactlin import Echelon, sparse_rank


class UnknownGeneratorError(KeyError):
    pass


class Generator(NamedTuple("_Generator", [("name", str), ("degree", int)])):
    __slots__ = ()

    def __new__(cls, name: str, degree: int):
        if not isinstance(degree, int) or degree < 1:
            raise ValueError(f"generator {name!r} needs a positive integer degree, got {degree!r}")
        return super().__new__(cls, name, degree)

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __repr__(self):
        return f"{self.name}{_subscript(self.degree)}"


def _subscript(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


class Bracket(NamedTuple):
    left: "LieWord"
    right: "LieWord"


LieWord = Union[Generator, Bracket]
Word = Tuple[Generator, ...]


class Alphabet:
    """Ordered, duplicate-free sequence of generators."""

    __slots__ = ("gens", "index", "_hash")

    def __init__(self, gens: Iterable[Generator]):
        gens = tuple(gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.gens = gens
        self.index = {g: i for i, g in enumerate(gens)}
        self._hash = hash(gens)

    @classmethod
    def of(cls, **degrees: int) -> "Alphabet":
        return cls(Generator(n, d) for n, d in degrees.items())

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __getitem__(self, key):
        if isinstance(key, str):
            for g in self.gens:
                if g.name == key:
                    return g
            raise UnknownGeneratorError(key)
        return self.gens[key]

    def __contains__(self, g):
        return g in self.index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.gens == other.gens

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Alphabet({', '.join(map(repr, self.gens))})"

    def position(self, g: Generator) -> int:
        try:
            return self.index[g]
        except KeyError:
            raise UnknownGeneratorError(g) from None

    def word_key(self, word: Word) -> Tuple[int, ...]:
        return tuple(self.index[g] for g in word)

    def multidegree(self, counts) -> Tuple[int, ...]:
        return tuple(counts.get(g, 0) for g in self.gens)

    def degree_of(self, mdeg: Sequence[int]) -> int:
        return sum(k * g.degree for k, g in zip(mdeg, self.gens))


# ---------------------------------------------------------------------------
# words


def word_degree(w: LieWord) -> int:
    if isinstance(w, Generator):
        return w.degree
    return word_degree(w.left) + word_degree(w.right)


def word_length(w: LieWord) -> int:
    if isinstance(w, Generator):
        return 1
    return word_length(w.left) + word_length(w.right)


def word_counts(w: LieWord) -> Counter:
    if isinstance(w, Generator):
        return Counter({w: 1})
    return word_counts(w.left) + word_counts(w.right)


def leaves(w: LieWord) -> Iterator[Generator]:
    if isinstance(w, Generator):
        yield w
    else:
        yield from leaves(w.left)
        yield from leaves(w.right)


def format_word(w: LieWord) -> str:
    if isinstance(w, Generator):
        return w.name
    return f"[{format_word(w.left)},{format_word(w.right)}]"


# ---------------------------------------------------------------------------
# tensor algebra


class TensorElement:
    """Finite rational combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, Fraction]] = None):
        self.terms: Dict[Word, Fraction] = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Word, Fraction]) -> "TensorElement":
        t = cls.__new__(cls)
        t.terms = terms
        return t

    @classmethod
    def letter(cls, g: Generator) -> "TensorElement":
        return cls._raw({(g,): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, TensorElement) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        _axpy(out, Fraction(1), other.terms)
        return TensorElement._raw(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        _axpy(out, Fraction(-1), other.terms)
        return TensorElement._raw(out)

    def __neg__(self):
        return TensorElement._raw({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "TensorElement":
        c = Fraction(c)
        if not c:
            return TensorElement()
        return TensorElement._raw({w: c * x for w, x in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        out: Dict[Word, Fraction] = {}
        for u, x in self.terms.items():
            for v, y in other.terms.items():
                w = u + v
                c = out.get(w, 0) + x * y
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        return TensorElement._raw(out)

    def commutator(self, other: "TensorElement") -> "TensorElement":
        """Graded commutator; both sides must be degree-homogeneous."""
        if not self.terms or not other.terms:
            return TensorElement()
        sign = -1 if (self.degree % 2 and other.degree % 2) else 1
        out: Dict[Word, Fraction] = {}
        for u, x in self.terms.items():
            for v, y in other.terms.items():
                p = x * y
                for w, c in ((u + v, p), (v + u, -sign * p)):
                    nc = out.get(w, 0) + c
                    if nc:
                        out[w] = nc
                    else:
                        out.pop(w, None)
        return TensorElement._raw(out)

    @property
    def degree(self) -> Optional[int]:
        degs = {sum(g.degree for g in w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def sorted_terms(self, alphabet: Optional[Alphabet] = None) -> List[Tuple[Word, Fraction]]:
        key = alphabet.word_key if alphabet is not None else None
        return sorted(self.terms.items(), key=(lambda t: key(t[0])) if key else (lambda t: t[0]))

    def kill(self, gens: Iterable[Generator]) -> "TensorElement":
        """Drop every word containing one of ``gens`` (an algebra map)."""
        dead = set(gens)
        return TensorElement._raw({w: c for w, c in self.terms.items() if dead.isdisjoint(w)})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"{c}*{'⊗'.join(g.name for g in w)}")
        return " + ".join(parts)


def _axpy(out: Dict, a: Fraction, terms: Dict) -> None:
    for w, c in terms.items():
        nc = out.get(w, 0) + a * c
        if nc:
            out[w] = nc
        else:
            out.pop(w, None)


@lru_cache(maxsize=None)
def _expand_word(w: LieWord) -> TensorElement:
    if isinstance(w, Generator):
        return TensorElement.letter(w)
    return _expand_word(w.left).commutator(_expand_word(w.right))


# ---------------------------------------------------------------------------
# Lie elements


class LieElement:
    """Rational combination of bracket words.

    ``degree`` and ``wordlength`` are None unless every term agrees (the zero
    element has neither).
    """

    __slots__ = ("terms", "_tensor")

    def __init__(self, terms: Iterable[Tuple[Fraction, LieWord]] = ()):
        merged: Dict[LieWord, Fraction] = {}
        for c, w in terms:
            c = Fraction(c)
            merged[w] = merged.get(w, 0) + c
        self.terms: Tuple[Tuple[Fraction, LieWord], ...] = tuple((c, w) for w, c in merged.items() if c)
        self._tensor: Optional[TensorElement] = None

    @classmethod
    def of(cls, w: LieWord, c=1) -> "LieElement":
        return cls([(Fraction(c), w)])

    @property
    def is_zero_formal(self) -> bool:
        return not self.terms

    def expand(self) -> TensorElement:
        if self._tensor is None:
            out: Dict[Word, Fraction] = {}
            for c, w in self.terms:
                _axpy(out, c, _expand_word(w).terms)
            self._tensor = TensorElement._raw(out)
        return self._tensor

    def is_zero(self) -> bool:
        return not self.expand()

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.expand() == other.expand()

    __hash__ = None

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.terms + other.terms)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.terms + tuple((-c, w) for c, w in other.terms))

    def __neg__(self):
        return LieElement((-c, w) for c, w in self.terms)

    def __rmul__(self, c):
        c = Fraction(c)
        return LieElement((c * x, w) for x, w in self.terms)

    __mul__ = __rmul__

    def _common(self, fn):
        vals = {fn(w) for _, w in self.terms}
        return vals.pop() if len(vals) == 1 else None

    @property
    def degree(self) -> Optional[int]:
        return self._common(word_degree)

    @property
    def wordlength(self) -> Optional[int]:
        return self._common(word_length)

    def multidegree(self) -> Optional[Counter]:
        """Letter counts, when shared by every term (else None)."""
        vals = {tuple(sorted(word_counts(w).items())) for _, w in self.terms}
        return Counter(dict(vals.pop())) if len(vals) == 1 else None

    def generators(self) -> set:
        return {g for _, w in self.terms for g in leaves(w)}

    def __repr__(self):
        return format_element(self)


def gen(g: Generator) -> LieElement:
    return LieElement.of(g)


def as_element(x) -> LieElement:
    if isinstance(x, LieElement):
        return x
    if isinstance(x, (Generator, Bracket)):
        return LieElement.of(x)
    raise TypeError(f"cannot treat {x!r} as a Lie element")


def format_element(e: LieElement) -> str:
    if not e.terms:
        return "0"
    parts = []
    for c, w in e.terms:
        s = format_word(w)
        if c == 1:
            parts.append(s)
        elif c == -1:
            parts.append(f"-{s}")
        else:
            parts.append(f"{c}*{s}")
    return " + ".join(parts).replace("+ -", "- ")


def expand(e) -> TensorElement:
    return as_element(e).expand()


def bracket(e1, e2) -> LieElement:
    e1, e2 = as_element(e1), as_element(e2)
    out = LieElement(
        (c1 * c2, Bracket(w1, w2)) for c1, w1 in e1.terms for c2, w2 in e2.terms
    )
    return out


def ad_power(x, j: int, y) -> LieElement:
    x, y = as_element(x), as_element(y)
    if x.terms and x.degree is None:
        raise ValueError("ad_power needs a degree-homogeneous x")
    for _ in range(j):
        y = bracket(x, y)
    return y


def pairbracket_element(i: int, j: int, a: Generator, b: Generator) -> LieElement:
    """``[ad^i(a)(b), ad^j(a)(b)]``."""
    return bracket(ad_power(a, i, b), ad_power(a, j, b))


def format_pairbracket(i: int, j: int) -> str:
    """Shorthand for ``pairbracket_element(i, j)`` indexed by word length.

    ``[p,q]`` names the bracket of the ad-powers with ``p - 1`` and ``q - 1``
    letters ``a``, so that ``p + q`` is the word length, matching the way
    the wl_b = 2 basis is tabulated.
    """
    return f"[{i + 1},{j + 1}]"


def graded_sign(p: int, q: int) -> int:
    return -1 if (p % 2 and q % 2) else 1


# ---------------------------------------------------------------------------
# bases


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def multidegrees_of_wordlength(alph: Alphabet, n: int) -> List[Tuple[int, ...]]:
    return list(_compositions(n, len(alph)))


def multidegrees_of_degree(alph: Alphabet, d: int) -> List[Tuple[int, ...]]:
    """All letter-count vectors whose total degree is ``d``."""
    out: List[Tuple[int, ...]] = []
    degs = [g.degree for g in alph]

    def rec(i, left, acc):
        if i == len(degs):
            if left == 0:
                out.append(tuple(acc))
            return
        for k in range(left // degs[i] + 1):
            acc.append(k)
            rec(i + 1, left - k * degs[i], acc)
            acc.pop()

    if d > 0:
        rec(0, d, [])
    return out


class BasisEntry(NamedTuple):
    key: Tuple[int, ...]
    word: LieWord
    element: LieElement


@lru_cache(maxsize=None)
def _mdeg_basis(alph: Alphabet, mdeg: Tuple[int, ...]) -> Tuple[BasisEntry, ...]:
    n = sum(mdeg)
    if n <= 0:
        return ()
    if n == 1:
        i = mdeg.index(1)
        g = alph.gens[i]
        return (BasisEntry((i,), g, LieElement.of(g)),)
    ech = Echelon()
    out = []
    for i, g in enumerate(alph.gens):
        if not mdeg[i]:
            continue
        rest = mdeg[:i] + (mdeg[i] - 1,) + mdeg[i + 1:]
        for entry in _mdeg_basis(alph, rest):
            w = Bracket(g, entry.word)
            t = _expand_word(w)
            if t and ech.add(t.terms):
                out.append(BasisEntry((i,) + entry.key, w, LieElement.of(w)))
    return tuple(out)


def multidegree_basis(alph: Alphabet, mdeg: Sequence[int]) -> List[LieElement]:
    """Basis of the component with the given letter counts."""
    if len(mdeg) != len(alph):
        raise ValueError("multidegree length differs from alphabet size")
    return [e.element for e in _mdeg_basis(alph, tuple(mdeg))]


def _entries(alph: Alphabet, mdegs: Iterable[Tuple[int, ...]]) -> List[BasisEntry]:
    out = [e for m in mdegs for e in _mdeg_basis(alph, m)]
    out.sort(key=lambda e: e.key)
    return out


def basis(alph: Alphabet, wordlength: int) -> List[LieElement]:
    if wordlength < 1:
        raise ValueError("wordlength must be positive")
    return [e.element for e in _entries(alph, multidegrees_of_wordlength(alph, wordlength))]


def basis_bigraded(alph: Alphabet, wordlength: int, filter_gen: Generator,
                   filter_count: int) -> List[LieElement]:
    i = alph.position(filter_gen)
    mdegs = [m for m in multidegrees_of_wordlength(alph, wordlength) if m[i] == filter_count]
    return [e.element for e in _entries(alph, mdegs)]


def basis_in_degree(alph: Alphabet, degree: int) -> List[LieElement]:
    return [e.element for e in _entries(alph, multidegrees_of_degree(alph, degree))]


def dim_in_degree(alph: Alphabet, degree: int) -> int:
    return sum(len(_mdeg_basis(alph, m)) for m in multidegrees_of_degree(alph, degree))


def dim_formula_wlb2(n: int) -> int:
    """Dimension of the wl_b = 2 part of L<a,b> (a, b odd) in word length n."""
    if n < 1:
        raise ValueError("n must be positive")
    r = n % 4
    if r == 0:
        return n // 2 - 1
    if r == 2:
        return n // 2
    return (n - 1) // 2


def wlb2_case_pairs(n: int) -> List[Tuple[int, int]]:
    """Ad-power index pairs ``(i, j)`` of the closed-form wl_b = 2 basis at word length n.

    Word length ``n`` is spanned by ``[ad^(k-1)(a)(b), ad^(n-k-1)(a)(b)]`` for
    ``k = 1 .. m`` with ``m`` = n/2 - 1, (n-1)/2 or n/2 as n is 0, odd or 2
    mod 4.
    """
    if n < 2:
        return []
    m = dim_formula_wlb2(n)
    return [(k - 1, n - k - 1) for k in range(1, m + 1)]


def tensor_rank(elements: Iterable) -> int:
    return sparse_rank(expand(e).terms for e in elements)
