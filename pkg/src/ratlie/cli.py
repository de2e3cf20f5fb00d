"""Command-line interface: table reproduction, counter-example checks, reports.

Every command builds a :class:`Report` (tables of integer rows plus a list
of named boolean assertions) and prints it as TSV or JSON.  The exit status
is 0 when every assertion passes, 1 when one fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from . import dgla, elimination, freelie, sullivan
from .freelie import Alphabet, Generator

SLOW_CAP = 30


class UsageError(ValueError):
    pass


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[List[int]]


@dataclass
class Report:
    command: str
    params: Dict[str, Any]
    tables: List[Table] = field(default_factory=list)
    assertions: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    duration_ms: int = 0

    def check(self, ref: str, ok: bool) -> None:
        self.assertions.append({"ref": ref, "pass": bool(ok)})

    @property
    def ok(self) -> bool:
        return all(a["pass"] for a in self.assertions)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "params": self.params,
            "tables": [{"name": t.name, "columns": t.columns, "rows": t.rows} for t in self.tables],
            "assertions": self.assertions,
            "details": self.details,
            "duration_ms": self.duration_ms,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    def to_tsv(self) -> str:
        blocks = []
        for t in self.tables:
            lines = ["\t".join(t.columns)] + ["\t".join(str(int(c)) for c in r) for r in t.rows]
            blocks.append("\n".join(lines) + "\n")
        return "\n".join(blocks)


# ---------------------------------------------------------------------------
# commands


def _ab(deg_a: int, deg_b: int):
    return Generator("a", deg_a), Generator("b", deg_b)


def cmd_table1(max_wl: int = 10) -> Report:
    if not 2 <= max_wl <= 14:
        raise UsageError(f"--max-wl must be in 2..14, got {max_wl}")
    a, b = _ab(3, 3)
    alph = Alphabet([a, b])
    rep = Report("table1", {"max_wl": max_wl})
    entries = elimination.wlb2_schedule_basis(a, b, max_wl)
    rows, closed, brute, sched = [], True, True, True
    basis_text = {}
    for n in range(2, max_wl + 1):
        layer = freelie.basis_bigraded(alph, n, b, 2)
        dim = freelie.dim_formula_wlb2(n)
        here = [e for e in entries if e.wordlength == n]
        closed &= [e.pair for e in here] == freelie.wlb2_case_pairs(n)
        brute &= len(layer) == dim
        sched &= len(here) == dim and freelie.tensor_rank(
            [e.element for e in here] + layer) == len(layer)
        rows.append([n, dim])
        basis_text[str(n)] = [e.shorthand for e in here]
    rep.tables.append(Table("wlb2_basis", ["wl", "dim"], rows))
    rep.details["basis"] = basis_text
    rep.check("wl_b=2 dimension formula equals brute-force basis count", brute)
    rep.check("elimination schedule yields the [ad^i(a)(b), ad^j(a)(b)] pairs", closed)
    rep.check("elimination output spans the brute-force wl_b=2 layer", sched)
    return rep


def cmd_table2(max_wl: int = 9) -> Report:
    if not 1 <= max_wl <= 10:
        raise UsageError(f"--max-wl must be in 1..10, got {max_wl}")
    a, b = _ab(3, 3)
    alph = Alphabet([a, b])
    rep = Report("table2", {"max_wl": max_wl})
    rows, symmetric, sums = [], True, True
    for j in range(1, max_wl + 1):
        cells = [len(freelie.basis_bigraded(alph, j, b, i)) if i <= j else 0 for i in range(max_wl)]
        total = sum(cells)
        symmetric &= all(cells[i] == cells[j - i] for i in range(j + 1) if j - i < max_wl and i < max_wl)
        sums &= total == len(freelie.basis(alph, j))
        rows.append([j] + cells + [total])
    rep.tables.append(Table("wlb_grid", ["j"] + [str(i) for i in range(max_wl)] + ["sum"], rows))
    rep.check("cells symmetric under exchanging a and b", symmetric)
    rep.check("row sums equal the word-length dimension", sums)
    return rep


def _guard_cap(cap: int, allow_slow: bool) -> None:
    if cap > SLOW_CAP and not allow_slow:
        raise UsageError(f"--cap {cap} exceeds {SLOW_CAP}; pass --allow-slow to run it anyway")


def cmd_counterexample(deg_a: int = 3, deg_b: int = 3, count: int = 4, cap: int = 30,
                       verify: bool = False, allow_slow: bool = False) -> Report:
    _guard_cap(cap, allow_slow)
    try:
        spec = dgla.CounterexampleSpec(deg_a, deg_b, count, cap)
        d = dgla.build_counterexample(spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = Report("counterexample", {"deg_a": deg_a, "deg_b": deg_b, "count": count,
                                    "cap": cap, "verify": verify})
    a, b, xs, ys = dgla.counterexample_parts(d)
    rep.tables.append(Table("generators", ["index", "degree"],
                            [[0, a.degree], [0, b.degree]] +
                            [[j, spec.x_degree(j)] for j in spec.indices]))
    rep.details["differentials"] = {x.name: freelie.format_element(y) for x, y in zip(xs, ys)}
    if verify:
        r = dgla.verify_counterexample(d, spec)
        rows = []
        for k in range(1, cap):
            rows.append([k, r.generator_homology.get(k - 1, 0), r.spherical.get(k, 0),
                         r.homology.get(k, 0), r.oracle.get(k, 0)])
        rep.tables.append(Table("degrees", ["degree", "space_homology", "spherical",
                                            "lie_homology", "quotient"], rows))
        rep.tables.append(Table("ideal_layers", ["j", "layer_dim", "ideal_dim"],
                                [[j, *r.layer_dims[j]] for j in spec.indices]))
        labels = {
            "d_squared_zero": "differential squares to zero",
            "minimal": "linear part of the differential vanishes",
            "even_homology_is_2": "even-degree homology of the space has dimension 2",
            "odd_homology_counts_x": "odd-degree homology grows with the number of x_j",
            "connectivity": "connectivity equals min(deg a, deg b)",
            "spherical_total_2": "spherical homology has total dimension 2",
            "spherical_in_degrees_of_a_b": "spherical homology sits in the degrees of a and b",
            "x_not_spherical": "no x_j is spherical",
            "y_outside_prior_ideal": "each y_j lies outside the ideal of the earlier y_k",
            "x_differentials_in_ab": "each dx_j lies in the free algebra on a, b",
            "homology_matches_quotient": "Lie homology equals the quotient by the ideal of the y_j",
            "coformality": "a, b -> classes, x_j -> 0 is a quasi-isomorphism",
        }
        for key, ok in r.checks().items():
            rep.check(labels[key], ok)
        mism = [k for k in r.homology if r.homology[k] != r.oracle[k]]
        if mism:
            rep.details["homology_mismatch_degrees"] = mism
    return rep


def cmd_dual_example(deg_a: int = 3, count: int = 3, cap: int = 14, allow_slow: bool = False) -> Report:
    _guard_cap(cap, allow_slow)
    try:
        s = sullivan.build_dual_example(deg_a, count, cap)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = Report("dual-example", {"deg_a": deg_a, "count": count, "cap": cap})
    top = cap - 1
    coh = sullivan.cohomology_dims(s, top)
    pi = sullivan.homotopy_groups(s, top)
    sph = sullivan.spherical_cohomology(s, top)
    rows = [[k, coh[k], pi.get(k, 0), sph.get(k, 0)] for k in range(0, top + 1)]
    rep.tables.append(Table("degrees", ["degree", "cohomology", "homotopy", "spherical"], rows))
    rep.tables.append(Table("generators", ["index", "degree"],
                            [[i, g.degree] for i, g in enumerate(s.gens)]))
    pi_odd = sum(v for k, v in pi.items() if k % 2)
    nonspherical = {}
    for g in s.gens:
        if g.name.startswith("n"):
            nonspherical[g.name] = not sullivan.spherical_generators(s, g.degree)[1][g.name]
    rep.check("differential squares to zero", sullivan.check_d_squared(s))
    rep.check("differential has no linear part", sullivan.is_minimal(s))
    rep.check("odd homotopy has total dimension 1", pi_odd == 1)
    rep.check("spherical cohomology has total dimension 2", sum(sph.values()) == 2)
    rep.check("no n_i is spherical", all(nonspherical.values()))
    if top >= 12:
        _, reps = sullivan.cohomology(s, 12)
        rep.details["degree_12_classes"] = [repr(p) for p in reps]
    return rep


PRESETS = ("sphere-odd", "wedge-two-spheres", "counterexample-default")
PRESET_CAPS = {"sphere-odd": 8, "wedge-two-spheres": 4, "counterexample-default": 20}


def _preset_dgla(preset: str, cap: int) -> dgla.Dgla:
    if preset == "sphere-odd":
        return dgla.Dgla(Alphabet([Generator("a", 3)]), {}, cap)
    if preset == "wedge-two-spheres":
        return dgla.Dgla(Alphabet([Generator("a", 2), Generator("b", 2)]), {}, cap)
    if preset == "counterexample-default":
        count = 0
        while 2 * 3 + (2 * count + 1) * 3 + 1 <= cap:
            count += 1
        return dgla.build_counterexample(dgla.CounterexampleSpec(3, 3, count, cap))
    raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")


def _space_homology(d: dgla.Dgla, top: int) -> Dict[int, int]:
    """``Q`` in degree 0 plus ``H_(k-1)(W, d_W)`` in degree k."""
    from .exactlin import sparse_rank
    lp = dgla.linear_part(d)
    out = {0: 1}
    for k in range(1, top + 1):
        here = [g for g in d.active if g.degree == k - 1]
        above = [g for g in d.active if g.degree == k]
        out[k] = len(here) - sparse_rank([lp[g] for g in here]) - sparse_rank([lp[g] for g in above])
    return out


def cmd_ce_check(preset: str = "sphere-odd", cap: Optional[int] = None, allow_slow: bool = False) -> Report:
    if preset not in PRESETS:
        raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    cap = PRESET_CAPS[preset] if cap is None else cap
    _guard_cap(cap, allow_slow)
    if cap < 1:
        raise UsageError("--cap must be positive")
    d = _preset_dgla(preset, cap)
    s = sullivan.ce_dualize(d, cap)
    got = sullivan.cohomology_dims(s, cap)
    want = _space_homology(d, cap)
    rep = Report("ce-check", {"preset": preset, "cap": cap})
    rep.tables.append(Table("degrees", ["degree", "cochain_cohomology", "generator_homology"],
                            [[k, got[k], want[k]] for k in range(cap + 1)]))
    rep.check("cochain differential squares to zero", sullivan.check_d_squared(s))
    rep.check("cochain cohomology equals Q plus the shifted generator homology", got == want)
    if preset == "wedge-two-spheres":
        rep.check("total cohomology in degrees <= 3 is 3", sum(got[k] for k in range(min(cap, 3) + 1)) == 3)
    if preset == "counterexample-default":
        rep.check("even-degree cohomology has total dimension 2",
                  sum(v for k, v in got.items() if k and k % 2 == 0) == 2)
    return rep


# ---------------------------------------------------------------------------
# argument handling


def _read_config(path: str) -> Dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ratlie", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["table1", "table2", "counterexample", "dual-example", "ce-check"])
    p.add_argument("--max-wl", type=int)
    p.add_argument("--deg-a", type=int)
    p.add_argument("--deg-b", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--verify", action="store_true", default=None)
    p.add_argument("--format", choices=["tsv", "json"])
    p.add_argument("--out")
    p.add_argument("--config")
    p.add_argument("--allow-slow", action="store_true", default=None)
    p.add_argument("--no-timing", action="store_true", default=None,
                   help="report duration_ms as 0 so JSON output is byte-stable")
    return p


_INT_KEYS = {"max_wl", "deg_a", "deg_b", "count", "cap"}
_BOOL_KEYS = {"verify", "allow_slow", "no_timing"}


def _merge(args: argparse.Namespace) -> Dict[str, Any]:
    opts: Dict[str, Any] = {}
    if args.config:
        for k, v in _read_config(args.config).items():
            if k in _INT_KEYS:
                opts[k] = int(v)
            elif k in _BOOL_KEYS:
                opts[k] = v.lower() in ("1", "true", "yes", "on")
            elif k in ("format", "out", "preset"):
                opts[k] = v
            else:
                raise UsageError(f"unknown config key {k!r}")
    for k, v in vars(args).items():
        if v is not None and k not in ("command", "config"):
            opts[k] = v
    return opts


def run(command: str, opts: Dict[str, Any]) -> Report:
    pick = lambda *keys: {k: opts[k] for k in keys if k in opts}  # noqa: E731
    if command == "table1":
        return cmd_table1(**pick("max_wl"))
    if command == "table2":
        return cmd_table2(**pick("max_wl"))
    if command == "counterexample":
        return cmd_counterexample(**pick("deg_a", "deg_b", "count", "cap", "verify", "allow_slow"))
    if command == "dual-example":
        return cmd_dual_example(**pick("deg_a", "count", "cap", "allow_slow"))
    return cmd_ce_check(**pick("preset", "cap", "allow_slow"))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = _merge(args)
        t0 = time.perf_counter()
        report = run(args.command, opts)
    except (UsageError, ValueError) as e:
        print(f"ratlie: error: {e}", file=sys.stderr)
        return 2
    if not opts.get("no_timing"):
        report.duration_ms = int((time.perf_counter() - t0) * 1000)
    fmt = opts.get("format", "tsv")
    text = report.to_json() if fmt == "json" else report.to_tsv()
    if opts.get("out"):
        with open(opts["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if fmt == "tsv":
        for a in report.assertions:
            print(f"{'PASS' if a['pass'] else 'FAIL'}: {a['ref']}", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
