"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` coefficients, so rank,
membership and kernel decisions are exact.  Two layers are provided:

* a dense layer (``Vec`` tuples, :class:`Subspace`, :func:`span`, ...) for
  small explicit matrices, and
* :class:`Echelon`, an incremental reduced row-echelon form over sparse rows
  keyed by arbitrary hashable column labels.  The rest of the package uses it
  with tensor words (or monomials) as column labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Rat = Fraction
Vec = Tuple[Fraction, ...]
SparseVec = Dict[Hashable, Fraction]


class DimensionMismatch(ValueError):
    pass


class NoComplementError(ValueError):
    pass


class NotASubspaceError(ValueError):
    pass


def vec(*coords) -> Vec:
    return tuple(Fraction(c) for c in coords)


class Echelon:
    """Incrementally maintained reduced row-echelon form.

    Rows are sparse dicts ``label -> Fraction``.  Pivot order is the order in
    which pivots were created, not a column order, which is all that exact
    rank and membership questions need.  With ``track=True`` each stored row
    also remembers which combination of the *accepted* input vectors it is,
    so :meth:`express` can solve for coordinates.
    """

    __slots__ = ("rows", "pivots", "track", "combos", "n_accepted")

    def __init__(self, track: bool = False):
        self.rows: List[SparseVec] = []
        self.pivots: Dict[Hashable, int] = {}
        self.track = track
        self.combos: List[Dict[int, Fraction]] = []
        self.n_accepted = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: SparseVec, combo=None):
        v = {k: Fraction(c) for k, c in v.items() if c}
        pivots, rows, combos = self.pivots, self.rows, self.combos
        # single sweep suffices: stored rows are zero at every other pivot
        for label in [k for k in v if k in pivots]:
            c = v.get(label)
            if not c:
                continue
            i = pivots[label]
            for k, x in rows[i].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if combo is not None:
                for k, x in combos[i].items():
                    nc = combo.get(k, 0) - c * x
                    if nc:
                        combo[k] = nc
                    else:
                        combo.pop(k, None)
        return v

    def reduce(self, v: SparseVec) -> SparseVec:
        """Residual of ``v`` after elimination against the stored rows."""
        return self._reduce(v)

    def contains(self, v: SparseVec) -> bool:
        return not self._reduce(v)

    def add(self, v: SparseVec) -> bool:
        """Insert ``v``; return True iff the rank grew."""
        combo = {self.n_accepted: Fraction(1)} if self.track else None
        r = self._reduce(v, combo)
        if not r:
            return False
        pivot = min(r)
        inv = 1 / r[pivot]
        r = {k: x * inv for k, x in r.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        for i, row in enumerate(self.rows):
            c = row.get(pivot)
            if c:
                for k, x in r.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
                if combo is not None:
                    rc = self.combos[i]
                    for k, x in combo.items():
                        nc = rc.get(k, 0) - c * x
                        if nc:
                            rc[k] = nc
                        else:
                            del rc[k]
        self.pivots[pivot] = len(self.rows)
        self.rows.append(r)
        if combo is not None:
            self.combos.append(combo)
        self.n_accepted += 1
        return True

    def express(self, v: SparseVec) -> Optional[Dict[int, Fraction]]:
        """Coefficients of ``v`` over the accepted inputs, or None if outside.

        Requires ``track=True``.  Keys index the accepted inputs in order of
        acceptance.
        """
        if not self.track:
            raise RuntimeError("express() needs an Echelon built with track=True")
        out: Dict[int, Fraction] = {}
        v = {k: Fraction(c) for k, c in v.items() if c}
        for label in [k for k in v if k in self.pivots]:
            c = v.get(label)
            if not c:
                continue
            i = self.pivots[label]
            for k, x in self.rows[i].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for k, x in self.combos[i].items():
                nc = out.get(k, 0) + c * x
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
        if v:
            return None
        return out

    def copy(self) -> "Echelon":
        e = Echelon(self.track)
        e.rows = [dict(r) for r in self.rows]
        e.pivots = dict(self.pivots)
        e.combos = [dict(c) for c in self.combos]
        e.n_accepted = self.n_accepted
        return e


def sparse_rank(vectors: Iterable[SparseVec]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def sparse_kernel(vectors: Sequence[SparseVec]) -> List[Dict[int, Fraction]]:
    """Basis of ``{c : sum_i c_i * vectors[i] == 0}`` as sparse coefficient dicts.

    Each input carries a marker through the elimination; an input that
    reduces to zero yields the relation recorded by its marker.
    """
    e = Echelon(track=True)
    accepted: List[int] = []
    out = []
    for i, v in enumerate(vectors):
        combo = {-1: Fraction(1)}
        if e._reduce(v, combo):
            e.add(v)
            accepted.append(i)
        else:
            out.append({(i if j < 0 else accepted[j]): c for j, c in combo.items()})
    return out


# ---------------------------------------------------------------------------
# dense layer


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim stored as its RREF basis."""

    ambient_dim: int
    rref_rows: Tuple[Vec, ...]
    pivot_cols: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rref_rows)

    def _residual(self, v: Vec) -> List[Fraction]:
        r = list(v)
        for row, p in zip(self.rref_rows, self.pivot_cols):
            c = r[p]
            if c:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        r[k] -= c * row[k]
        return r

    def __contains__(self, v) -> bool:
        return member(self, v)


def _check_dims(vectors: Sequence[Vec], ambient_dim: Optional[int]) -> int:
    dims = {len(v) for v in vectors}
    if ambient_dim is not None:
        dims.add(ambient_dim)
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of mixed lengths {sorted(dims)}")
    if not dims:
        raise DimensionMismatch("ambient dimension unknown for an empty span")
    return dims.pop()


def span(vectors: Sequence[Sequence], ambient_dim: Optional[int] = None) -> Subspace:
    vectors = [tuple(Fraction(c) for c in v) for v in vectors]
    n = _check_dims(vectors, ambient_dim)
    rows: List[List[Fraction]] = [list(v) for v in vectors]
    pivots: List[int] = []
    r = 0
    for col in range(n):
        if r == len(rows):
            break
        for i in range(r, len(rows)):
            if rows[i][col]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return Subspace(n, tuple(tuple(row) for row in rows[:r]), tuple(pivots))


def rank(vectors: Sequence[Sequence], ambient_dim: Optional[int] = None) -> int:
    return span(vectors, ambient_dim).dim


def member(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} vs ambient {s.ambient_dim}")
    return not any(s._residual(tuple(Fraction(c) for c in v)))


def _unit(n: int, *idx: int) -> Vec:
    v = [Fraction(0)] * n
    for i in idx:
        v[i] += 1
    return tuple(v)


def complement_pick(sub: Subspace, ambient_basis_size: Optional[int] = None) -> Vec:
    """Deterministic vector outside ``sub``.

    First standard basis vector not in ``sub``; failing that, the first
    ``e_i + e_j`` in lexicographic ``(i, j)`` order.
    """
    n = sub.ambient_dim if ambient_basis_size is None else ambient_basis_size
    if n != sub.ambient_dim:
        raise DimensionMismatch(f"ambient size {n} vs subspace ambient {sub.ambient_dim}")
    if sub.dim >= n:
        raise NoComplementError("subspace is the whole ambient space")
    for i in range(n):
        e = _unit(n, i)
        if not member(sub, e):
            return e
    for i, j in combinations(range(n), 2):
        e = _unit(n, i, j)
        if not member(sub, e):
            return e
    raise NoComplementError("no complement vector found")  # unreachable for dim < n


def quotient_dim(big: Subspace, small: Subspace) -> int:
    if big.ambient_dim != small.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    for row in small.rref_rows:
        if not member(big, row):
            raise NotASubspaceError("small is not contained in big")
    return big.dim - small.dim


def kernel(vectors: Sequence[Sequence]) -> List[Vec]:
    """Basis of the linear relations ``c`` with ``sum c_i v_i = 0``."""
    m = len(vectors)
    rels = sparse_kernel([{k: Fraction(x) for k, x in enumerate(v) if x} for v in vectors])
    return [tuple(r.get(i, Fraction(0)) for i in range(m)) for r in rels]
