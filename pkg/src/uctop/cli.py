"""Command-line front end.

Group specs follow the grammar ``TYPE[xTYPE...]:(adjoint|sc|lattice=<JSON
integer matrix>)``, e.g. ``A3:sc``, ``a1xA2:adjoint``,
``D4:lattice=[[1,0,0,0],[-1,1,0,0],[0,-1,1,1],[0,0,-1,1]]``. Letters are
case-insensitive and whitespace is ignored. Levi sets are 1-based comma
lists matching the Bourbaki labels.

Exit codes: 0 success, 1 usage or parse errors (and failed `check` runs),
2 mathematical refusal (a proper Levi center with nontrivial component
group).
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .assembly import intersection_number, universal_centralizer_homology
from .counting import e_polynomial, point_count_poly, poincare_from_purity
from .errors import GroupSpecError, NontrivialPi0
from .homology import (
    _betti_from_complex,
    boundary_homology,
    build_cech_complex,
    build_center_diagram,
    total_euler,
)
from .matrices import IntMatrix, rank
from .rootdata import (
    CartanType,
    RootDatum,
    all_levi_subsets,
    build_datum,
    cartan_matrix,
    center_of_levi,
    center_order,
    invariant_form,
    killing_projection,
    levi_root_matrix,
    proper_pi0_witness,
    weyl_order,
)

__all__ = ["GroupSpec", "Report", "parse_spec", "main", "entry"]

COMMANDS = ("info", "pi0", "count", "epoly", "poincare", "cgbetti", "jgbetti", "check")

_LETTERS = "ABCDEFG"


@dataclass(frozen=True)
class GroupSpec:
    """A parsed group spec; `canonical` re-parses to the same datum."""

    raw: str
    cartan_type: CartanType
    isogeny: str | IntMatrix

    @property
    def canonical(self) -> str:
        if isinstance(self.isogeny, str):
            iso = self.isogeny
        else:
            rows = self.isogeny.to_lists()
            iso = "lattice=" + json.dumps(rows, separators=(",", ":"))
        return f"{self.cartan_type}:{iso}"

    def datum(self) -> RootDatum:
        return build_datum(self.cartan_type, self.isogeny)


def parse_spec(s: str) -> GroupSpec:
    """Parse a group spec string; raises GroupSpecError with a position."""
    compact = "".join(s.split())
    if not compact:
        raise GroupSpecError("empty group spec", 0)
    colon = compact.find(":")
    if colon < 0:
        raise GroupSpecError("missing ':' between type and isogeny", len(compact))
    factors = _parse_type_part(compact[:colon])
    isogeny = _parse_isogeny_part(compact, colon + 1, sum(r for _, r in factors))
    try:
        ct = CartanType(tuple(factors))
    except ValueError as exc:
        raise GroupSpecError(str(exc), 0) from None
    spec = GroupSpec(s, ct, isogeny)
    try:
        spec.datum()
    except ValueError as exc:
        raise GroupSpecError(str(exc), colon + 1) from None
    return spec


def _parse_type_part(part: str) -> list[tuple[str, int]]:
    factors: list[tuple[str, int]] = []
    i = 0
    if not part:
        raise GroupSpecError("empty Cartan type", 0)
    while i < len(part):
        letter = part[i].upper()
        if letter not in _LETTERS:
            raise GroupSpecError(f"expected a Cartan letter A-G, got {part[i]!r}", i)
        start = i
        i += 1
        j = i
        while j < len(part) and part[j].isdigit():
            j += 1
        if j == i:
            raise GroupSpecError("expected a rank after the Cartan letter", i)
        rk = int(part[i:j])
        try:
            CartanType(((letter, rk),))
        except ValueError as exc:
            raise GroupSpecError(str(exc), start) from None
        factors.append((letter, rk))
        i = j
        if i < len(part):
            if part[i] not in "xX":
                raise GroupSpecError(f"expected 'x' between factors, got {part[i]!r}", i)
            i += 1
            if i == len(part):
                raise GroupSpecError("trailing factor separator", i)
    return factors


def _parse_isogeny_part(compact: str, pos: int, n: int) -> str | IntMatrix:
    part = compact[pos:]
    low = part.lower()
    if low == "adjoint":
        return "adjoint"
    if low == "sc":
        return "sc"
    if low.startswith("lattice="):
        payload = part[len("lattice=") :]
        try:
            rows = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise GroupSpecError(
                f"lattice matrix is not valid JSON ({exc.msg})", pos + len("lattice=")
            ) from None
        if (
            not isinstance(rows, list)
            or not all(isinstance(r, list) for r in rows)
            or not all(isinstance(e, int) and not isinstance(e, bool) for r in rows for e in r)
        ):
            raise GroupSpecError(
                "lattice matrix must be a JSON list of integer rows", pos
            )
        if len(rows) != n or any(len(r) != n for r in rows):
            raise GroupSpecError(f"lattice matrix must be {n}x{n}", pos)
        return IntMatrix.from_rows(rows, cols=n)
    raise GroupSpecError(
        f"unknown isogeny {part!r} (expected adjoint, sc or lattice=...)", pos
    )


@dataclass
class Report:
    """Structured result of one CLI invocation."""

    command: str
    spec: GroupSpec
    sections: dict
    table_lines: list[str]
    exit_code: int = 0

    def to_json(self) -> str:
        payload = {"command": self.command, "spec": self.spec.canonical}
        payload.update(self.sections)
        return json.dumps(payload, indent=2)

    def to_table(self) -> str:
        return "\n".join(self.table_lines)


def _levi_str(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


# ---------------------------------------------------------------------------
# command implementations


def _cmd_info(spec: GroupSpec, d: RootDatum, args) -> Report:
    sections = {
        "rank": d.rank,
        "center_order": center_order(d),
        "weyl_order": weyl_order(d.cartan_type),
    }
    lines = [
        f"group: {spec.canonical}",
        f"rank: {sections['rank']}",
        f"center order: {sections['center_order']}",
        f"weyl order: {sections['weyl_order']}",
    ]
    return Report("info", spec, sections, lines)


def _cmd_pi0(spec: GroupSpec, d: RootDatum, args) -> Report:
    if args.levi is not None:
        subsets = [tuple(args.levi)]
    else:
        subsets = all_levi_subsets(d.rank)
    table = []
    for s in subsets:
        c = center_of_levi(d, s)
        table.append(
            {"levi": list(s), "factors": list(c.pi0.factors), "order": c.pi0.order()}
        )
    lines = []
    for row in table:
        torsion = " x ".join(f"Z/{f}" for f in row["factors"]) or "trivial"
        lines.append(f"S = {_levi_str(row['levi'])}: {torsion} (order {row['order']})")
    return Report("pi0", spec, {"pi0": table}, lines)


def _cmd_count(spec: GroupSpec, d: RootDatum, args) -> Report:
    poly = point_count_poly(d)
    sections = {
        "variable": poly.variable,
        "coeffs": list(poly.coeffs),
        "rendered": str(poly),
    }
    return Report("count", spec, sections, [str(poly)])


def _cmd_epoly(spec: GroupSpec, d: RootDatum, args) -> Report:
    poly = e_polynomial(d)
    sections = {
        "variable": poly.variable,
        "coeffs": list(poly.coeffs),
        "rendered": str(poly),
        "value_at_one": poly.evaluate(1),
    }
    return Report("epoly", spec, sections, [str(poly)])


def _cmd_poincare(spec: GroupSpec, d: RootDatum, args) -> Report:
    poly = poincare_from_purity(d)
    sections = {
        "variable": poly.variable,
        "coeffs": list(poly.coeffs),
        "rendered": str(poly),
        "label": "purity-predicted",
    }
    return Report("poincare", spec, sections, [str(poly), "label: purity-predicted"])


def _cmd_cgbetti(spec: GroupSpec, d: RootDatum, args) -> Report:
    table = boundary_homology(d)
    sections = {"betti": list(table.betti)}
    lines = [f"betti: {list(table.betti)}"]
    return Report("cgbetti", spec, sections, lines)


def _cmd_jgbetti(spec: GroupSpec, d: RootDatum, args) -> Report:
    report = universal_centralizer_homology(d)
    sections = {
        "betti": list(report.betti.betti),
        "cells_attached": report.cells_attached,
        "boundary_rank": report.boundary_rank,
        "intersection_number": str(report.intersection_number),
        "purity_match": report.purity_match,
    }
    lines = [
        f"betti: {list(report.betti.betti)}",
        f"cells attached: {report.cells_attached}",
        f"boundary rank: {report.boundary_rank}",
        f"intersection number: {report.intersection_number}",
        f"purity match: {str(report.purity_match).lower()}",
    ]
    return Report("jgbetti", spec, sections, lines)


def _cmd_check(spec: GroupSpec, d: RootDatum, args) -> Report:
    items = _run_checks(d)
    table = [{"name": name, "status": status, "detail": detail} for name, status, detail in items]
    lines = []
    for name, status, detail in items:
        suffix = f" ({detail})" if detail else ""
        lines.append(f"{status.upper():4s} {name}{suffix}")
    failed = sum(1 for _, status, _ in items if status == "fail")
    lines.append(
        f"{len(items)} checks: "
        f"{sum(1 for _, s, _ in items if s == 'pass')} passed, {failed} failed, "
        f"{sum(1 for _, s, _ in items if s == 'skip')} skipped"
    )
    sections = {"checks": table, "failed": failed}
    return Report("check", spec, sections, lines, exit_code=1 if failed else 0)


# ---------------------------------------------------------------------------
# the cross-module invariant battery behind `check`


def _run_checks(d: RootDatum) -> list[tuple[str, str, str]]:
    n = d.rank
    items: list[tuple[str, str, str]] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        items.append((name, "pass" if ok else "fail", detail))

    subsets = all_levi_subsets(n)
    centers = {s: center_of_levi(d, s) for s in subsets}

    add(
        "levi center dimension equals n - |S| for all S",
        all(c.dim == n - len(s) for s, c in centers.items()),
    )
    add(
        "invariant factors form divisibility chains",
        all(
            all(b % a == 0 for a, b in zip(c.pi0.factors, c.pi0.factors[1:]))
            for c in centers.values()
        ),
    )
    add(
        "cocharacter bases annihilate their Levi roots",
        all(
            levi_root_matrix(d, s).mul(c.cochar_basis).is_zero()
            for s, c in centers.items()
        ),
    )
    add(
        "rank-nullity for every Levi root matrix",
        all(
            rank(levi_root_matrix(d, s).to_rational()) + c.cochar_basis.cols == n
            for s, c in centers.items()
        ),
    )
    if d.is_adjoint():
        add(
            "adjoint form: all component groups trivial",
            all(c.pi0.is_trivial() for c in centers.values()),
        )
    if d.is_simply_connected():
        det = cartan_matrix(d.cartan_type).to_rational().det()
        add(
            "simply connected form: center order equals Cartan determinant",
            Fraction(center_order(d)) == det,
        )
    add(
        "smith factors match minor-gcd divisors on small Levi matrices",
        all(
            _minor_gcd_factors(levi_root_matrix(d, s)) == (c.pi0.factors, len(s))
            for s, c in centers.items()
            if len(s) <= 4
        ),
    )
    if n <= 4:
        add(
            "weyl order matches reflection enumeration",
            weyl_order(d.cartan_type)
            == _reflection_closure_order(cartan_matrix(d.cartan_type)),
        )
    else:
        items.append(
            ("weyl order matches reflection enumeration", "skip", "rank > 4")
        )
    gram = invariant_form(d).gram
    add("invariant form is symmetric", gram == gram.transpose())
    add(
        "invariant form is positive definite",
        all(
            gram.to_rational().submatrix(range(k), range(k)).det() > 0
            for k in range(1, n + 1)
        ),
    )

    add("projection functoriality over chains", _check_functoriality(d, n))
    add(
        "projections surject onto their targets",
        all(
            rank(killing_projection(d, s, sp)) == n - len(sp)
            for s in all_levi_subsets(n, proper=True)
            for sp in all_levi_subsets(n, proper=True)
            if set(s) <= set(sp)
        )
        if n <= 5
        else all(
            rank(killing_projection(d, s, tuple(sorted(s + (a,))))) == n - len(s) - 1
            for s in all_levi_subsets(n, proper=True)
            for a in range(1, n + 1)
            if a not in s and len(s) + 1 < n
        ),
    )

    count = point_count_poly(d)
    z = center_order(d)
    add(
        "point count is monic of degree 2n",
        count.degree == 2 * n and count.coeffs[-1] == 1,
    )
    add("point count at q = 1 equals the center order", count.evaluate(1) == z)
    epoly = e_polynomial(d)
    add("E(1,1) equals the center order", epoly.evaluate(1) == z)
    if d.is_adjoint():
        expected = (0,) * (2 * n) + (1,)
        add("adjoint form: point count is exactly q^(2n)", count.coeffs == expected)
    poincare = poincare_from_purity(d)
    add(
        "purity substitution reindexes the E-coefficients",
        _check_substitution(epoly.coeffs, poincare.coeffs, n),
    )

    witness = proper_pi0_witness(d)
    if witness is None:
        diagram = build_center_diagram(d)
        complex_ = build_cech_complex(diagram)  # validates d.d = 0 as it builds
        add("cech differentials square to zero", True)
        add("total euler characteristic vanishes", total_euler(complex_) == 0)
        forward = _betti_from_complex(complex_)
        backward = _betti_from_complex(complex_, row_order=range(n, -1, -1))
        add("row order does not change the boundary betti table", forward == backward)
        add(
            "total betti bounded by total chain dimension",
            forward.total() <= sum(sum(r.dims) for r in complex_.rows),
        )
        sphere = (1,) + (0,) * (2 * n - 2) + (1,)
        add(
            "boundary homology is the odd sphere",
            forward.betti == sphere,
            f"betti {list(forward.betti)}",
        )
        report = universal_centralizer_homology(d)
        add(
            "assembled euler characteristic equals E(1,1)",
            report.betti.euler() == epoly.evaluate(1),
        )
        add("assembled betti matches the purity prediction", report.purity_match)
        add(
            "degree 2n-1 dies under handle attachment",
            len(report.betti.betti) <= 2 * n - 1 or report.betti.betti[2 * n - 1] == 0,
        )
        add(
            "intersection certificate is a positive integer",
            report.intersection_number > 0
            and report.intersection_number.denominator == 1,
        )
        add("refusal contract: no witness, assembly succeeded", True)
    else:
        detail = f"refused at S = {_levi_str(witness)}"
        for name in (
            "cech differentials square to zero",
            "total euler characteristic vanishes",
            "row order does not change the boundary betti table",
            "total betti bounded by total chain dimension",
            "boundary homology is the odd sphere",
            "assembled euler characteristic equals E(1,1)",
            "assembled betti matches the purity prediction",
            "degree 2n-1 dies under handle attachment",
            "intersection certificate is a positive integer",
        ):
            items.append((name, "skip", detail))
        refused = False
        try:
            universal_centralizer_homology(d)
        except NontrivialPi0 as exc:
            refused = tuple(exc.levi) == tuple(witness)
        add(
            "refusal contract: witness found, assembly refuses with it",
            refused,
            detail,
        )
    return items


def _leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def _minor_gcd_factors(m: IntMatrix):
    """Invariant factors and rank from gcds of Leibniz-sum minors.

    Deliberately independent of the elimination-based `snf`; only viable for
    small row counts (the permutation sums grow factorially).
    """
    rows = m.to_lists()
    divisors = [1]
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for ridx in itertools.combinations(range(m.rows), k):
            for cidx in itertools.combinations(range(m.cols), k):
                sub = [[rows[i][j] for j in cidx] for i in ridx]
                g = math.gcd(g, _leibniz_det(sub))
        divisors.append(g)
    rk = max((k for k, g in enumerate(divisors) if g), default=0)
    factors = tuple(
        q for k in range(1, rk + 1) if (q := divisors[k] // divisors[k - 1]) >= 2
    )
    return factors, rk


def _reflection_closure_order(cartan: IntMatrix) -> int:
    """Order of the group generated by the simple reflections on weight space."""
    n = cartan.rows
    identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = []
    for i in range(n):
        rows = [list(r) for r in identity]
        for j in range(n):
            rows[i][j] -= cartan.at(i, j)
        gens.append(tuple(tuple(r) for r in rows))
    seen = {identity}
    frontier = [identity]
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = tuple(
                tuple(sum(g[i][k] * s[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return len(seen)


def _check_functoriality(d: RootDatum, n: int) -> bool:
    proper = all_levi_subsets(n, proper=True)
    if n <= 4:
        chains = (
            (s1, s2, s3)
            for s1 in proper
            for s2 in proper
            if set(s1) <= set(s2)
            for s3 in proper
            if set(s2) <= set(s3)
        )
    else:
        chains = (
            (s, tuple(sorted(s + (a,))), tuple(sorted(s + (a, b))))
            for s in proper
            for a in range(1, n + 1)
            if a not in s
            for b in range(1, n + 1)
            if b not in s and b != a and len(s) + 2 < n
        )
    for s1, s2, s3 in chains:
        lhs = killing_projection(d, s2, s3).mul(killing_projection(d, s1, s2))
        if lhs != killing_projection(d, s1, s3):
            return False
    return True


def _check_substitution(e_coeffs, p_coeffs, n: int) -> bool:
    padded = list(p_coeffs) + [0] * (4 * n + 1 - len(p_coeffs))
    for k in range(2 * n + 1):
        c = e_coeffs[k] if k < len(e_coeffs) else 0
        if padded[4 * n - 2 * k] != c:
            return False
    return all(padded[j] == 0 for j in range(1, 4 * n + 1, 2))


# ---------------------------------------------------------------------------
# argument handling


_HANDLERS = {
    "info": _cmd_info,
    "pi0": _cmd_pi0,
    "count": _cmd_count,
    "epoly": _cmd_epoly,
    "poincare": _cmd_poincare,
    "cgbetti": _cmd_cgbetti,
    "jgbetti": _cmd_jgbetti,
    "check": _cmd_check,
}

_HOMOLOGY_COMMANDS = {"cgbetti", "jgbetti", "check"}

_SLOW_RANK = 8


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1, not argparse's default 2
        raise _UsageError(message)


_COMMAND_HELP = {
    "info": "rank, center order and Weyl group order",
    "pi0": "component groups of the Levi centers",
    "count": "point-count polynomial over F_q",
    "epoly": "E-polynomial (the count read in uv)",
    "poincare": "purity-predicted Poincare polynomial",
    "cgbetti": "Betti table of the boundary manifold",
    "jgbetti": "Betti table of the universal centralizer",
    "check": "run the cross-module invariant battery",
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="uctop", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, help=_COMMAND_HELP[name])
        p.add_argument("spec", help="group spec, e.g. A2:adjoint or A1xA2:sc")
        p.add_argument(
            "--format",
            choices=("table", "json"),
            default="table",
            help="output format (default: table)",
        )
        p.add_argument(
            "--max-rank",
            type=int,
            default=8,
            help="refuse total ranks above this bound (default: 8)",
        )
        p.add_argument(
            "--slow",
            action="store_true",
            help="allow homology computations at rank >= 8",
        )
        if name == "pi0":
            group = p.add_mutually_exclusive_group()
            group.add_argument(
                "--all",
                action="store_true",
                help="tabulate every subset S (default)",
            )
            group.add_argument(
                "--levi",
                type=_parse_levi_arg,
                default=None,
                help="single 1-based comma list, e.g. --levi=1,3 (empty for {})",
            )
    return parser


def _parse_levi_arg(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--levi expects a comma list of integers, got {text!r}"
        ) from None
    return tuple(sorted(set(parts)))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command is None:
        parser.print_help()
        return 1
    try:
        spec = parse_spec(args.spec)
        d = spec.datum()
        n = d.rank
        if n > args.max_rank:
            raise GroupSpecError(
                f"total rank {n} exceeds --max-rank={args.max_rank}"
            )
        if args.command in _HOMOLOGY_COMMANDS and n >= _SLOW_RANK and not args.slow:
            raise GroupSpecError(
                f"{args.command} at rank {n} is expensive; pass --slow to run it"
            )
        if getattr(args, "levi", None) is not None:
            if any(i < 1 or i > n for i in args.levi):
                raise GroupSpecError(
                    f"--levi indices must lie in 1..{n}", None
                )
        report = _HANDLERS[args.command](spec, d, args)
    except GroupSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NontrivialPi0 as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.format == "json" else report.to_table())
    return report.exit_code


def entry() -> None:
    sys.exit(main())
