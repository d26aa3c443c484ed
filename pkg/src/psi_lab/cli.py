"""Command-line interface: psi queries, scans, claim verification, family
tables, and catalog export/import.

Output modes: aligned text (default), ``--json``, ``--csv``.  Exact
rationals are serialized as decimal digit strings (never floats); decimal
approximations are display-only and marked approximate.  Exit status: 0
when nothing is violated, 1 when a violation was found, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import struct
import sys
from decimal import Decimal, ROUND_HALF_EVEN
from fractions import Fraction

from . import families, harness
from .enumeration import (
    EXHAUSTIVE_CAP_DEFAULT,
    EnumerationCapExceeded,
    all_groups_of_order,
)
from .families import (
    Abelian,
    Alt4,
    Alt5,
    Cyclic,
    Dihedral,
    DirectProduct,
    GroupSpec,
    Modular,
    NoClosedForm,
    Quaternion,
    Semidihedral,
    SemidirectCyclic,
    Sym3,
    build,
    canonical_label,
    spec_order,
)
from .kernel import CapExceeded, ConcreteGroup, DEFAULT_ORDER_CAP, from_table, order_spectrum
from .psi import psi_cyclic
from .harness import VerdictReport, Witness

SCHEMA_NAME = "psi-lab/records-v1"
CATALOG_MAGIC = b"PSICAT"
CATALOG_VERSION = 1

ENV_MAX_ORDER = "PSI_LAB_MAX_ORDER"


class SpecParseError(ValueError):
    """Grammar or semantic error in a group spec, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# spec grammar
#
#   product    := atom ('x' atom)*
#   atom       := 'C' int [':C' int '[' int ']']   cyclic / split extension
#               | 'Ab[' int (',' int)* ']'         abelian by invariants
#               | 'D' int | 'Q' int | 'SD' int | 'M' int
#               | 'S3' | 'A4' | 'A5'


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> SpecParseError:
        return SpecParseError(message, self.pos)

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos : self.pos + 1]

    def startswith(self, token: str) -> bool:
        self._skip_ws()
        return self.text.startswith(token, self.pos)

    def take(self, token: str) -> None:
        if not self.startswith(token):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse(self) -> GroupSpec:
        spec = self.product()
        self._skip_ws()
        if self.pos != len(self.text):
            raise self.error(
                f"unexpected trailing input {self.text[self.pos:]!r}"
            )
        return spec

    def product(self) -> GroupSpec:
        factors = [self.atom()]
        while self.startswith("x"):
            self.take("x")
            factors.append(self.atom())
        if len(factors) == 1:
            return factors[0]
        return self._construct(DirectProduct, tuple(factors), self.pos)

    def _construct(self, ctor, *args_and_pos):
        *args, pos = args_and_pos
        try:
            return ctor(*args)
        except ValueError as exc:
            raise SpecParseError(str(exc), pos) from exc

    def atom(self) -> GroupSpec:
        self._skip_ws()
        start = self.pos
        if self.startswith("Ab["):
            self.take("Ab[")
            invs = [self.integer()]
            while self.startswith(","):
                self.take(",")
                invs.append(self.integer())
            self.take("]")
            return self._construct(Abelian, tuple(invs), start)
        if self.startswith("SD"):
            self.take("SD")
            return self._construct(Semidihedral, self.integer(), start)
        if self.startswith("S3"):
            self.take("S3")
            return Sym3()
        if self.startswith("A4"):
            self.take("A4")
            return Alt4()
        if self.startswith("A5"):
            self.take("A5")
            return Alt5()
        if self.startswith("C"):
            self.take("C")
            n = self.integer()
            if self.startswith(":"):
                self.take(":")
                self.take("C")
                h = self.integer()
                self.take("[")
                u = self.integer()
                self.take("]")
                return self._construct(
                    SemidirectCyclic, n, Cyclic(h), u, start
                )
            return self._construct(Cyclic, n, start)
        if self.startswith("D"):
            self.take("D")
            return self._construct(Dihedral, self.integer(), start)
        if self.startswith("Q"):
            self.take("Q")
            return self._construct(Quaternion, self.integer(), start)
        if self.startswith("M"):
            self.take("M")
            return self._construct(Modular, self.integer(), start)
        raise self.error(
            "expected a group atom (C<n>, Ab[..], D<n>, Q<n>, SD<n>, M<n>, "
            "S3, A4, A5, or C<p^a>:C<h>[u])"
        )


def parse_spec(text: str) -> GroupSpec:
    """Parse the mini-language into a canonical GroupSpec."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# serialization helpers


def fraction_json(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def approx_str(x: Fraction, places: int = 6) -> str:
    """Display-only decimal approximation, correctly rounded."""
    d = (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
        Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN
    )
    return str(d)


def witness_record(claim: str, w: Witness) -> dict:
    """One schema-stable record per (claim, group).

    The record repeats the group's numbers at top level and carries the
    supporting evidence (facts, certificate) in ``witnesses``.
    """
    return {
        "claim": claim,
        "subject": w.group,
        "order": w.order,
        "psi": str(w.psi),
        "psiPrime": fraction_json(w.psi_prime),
        "outcome": w.outcome,
        "applicable": w.applicable,
        "witnesses": [
            {
                "group": w.group,
                "psi": str(w.psi),
                "psiPrime": fraction_json(w.psi_prime),
                "facts": list(w.facts),
                "isomorphism": (
                    list(w.isomorphism) if w.isomorphism is not None else None
                ),
            }
        ],
    }


RECORD_KEYS = {
    "claim", "subject", "order", "psi", "psiPrime", "outcome",
    "applicable", "witnesses",
}
WITNESS_KEYS = {"group", "psi", "psiPrime", "facts", "isomorphism"}


def _validate_fraction(pp) -> None:
    if set(pp) != {"num", "den"}:
        raise ValueError("expected num/den digit strings")
    int(pp["num"]), int(pp["den"])


def validate_record(record: dict) -> None:
    """Schema check for one machine-readable record (raises on failure)."""
    if set(record) != RECORD_KEYS:
        raise ValueError(f"record keys {sorted(record)} != {sorted(RECORD_KEYS)}")
    if not isinstance(record["claim"], str) or not isinstance(record["subject"], str):
        raise ValueError("claim/subject must be strings")
    if not isinstance(record["order"], int):
        raise ValueError("order must be an integer")
    int(record["psi"])  # digit string
    _validate_fraction(record["psiPrime"])
    if record["outcome"] not in (harness.HOLDS, harness.EQUALITY, harness.VIOLATED):
        raise ValueError(f"bad outcome {record['outcome']!r}")
    if not isinstance(record["applicable"], bool):
        raise ValueError("applicable must be a boolean")
    if not isinstance(record["witnesses"], list) or not record["witnesses"]:
        raise ValueError("witnesses must be a non-empty list")
    for w in record["witnesses"]:
        if set(w) != WITNESS_KEYS:
            raise ValueError(f"witness keys {sorted(w)} != {sorted(WITNESS_KEYS)}")
        int(w["psi"])
        _validate_fraction(w["psiPrime"])
        if not isinstance(w["facts"], list):
            raise ValueError("witness facts must be a list")
        iso = w["isomorphism"]
        if iso is not None and not (
            isinstance(iso, list) and all(isinstance(i, int) for i in iso)
        ):
            raise ValueError("isomorphism must be null or a list of integers")


def reports_json(command: str, reports: list[VerdictReport]) -> dict:
    records = [
        witness_record(r.claim, w) for r in reports for w in r.witnesses
    ]
    summary = harness.summarize(reports)
    notes = sorted({note for r in reports for note in r.notes})
    return {
        "schema": SCHEMA_NAME,
        "command": command,
        "records": records,
        "summary": summary,
        "notes": notes,
    }


def reports_csv(reports: list[VerdictReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["claim", "subject", "order", "psi", "psi_prime_num",
         "psi_prime_den", "outcome", "applicable", "facts"]
    )
    for r in reports:
        for w in r.witnesses:
            writer.writerow(
                [r.claim, w.group, w.order, str(w.psi),
                 str(w.psi_prime.numerator), str(w.psi_prime.denominator),
                 w.outcome, w.applicable, " | ".join(w.facts)]
            )
    return buf.getvalue()


def reports_text(reports: list[VerdictReport]) -> str:
    lines: list[str] = []
    for r in reports:
        lines.append(f"[{r.claim}] {r.subject}: {r.outcome.upper()}")
        for note in r.notes:
            lines.append(f"    ({note})")
        for w in r.witnesses:
            approx = approx_str(w.psi_prime)
            tag = w.outcome if w.applicable else "not-applicable"
            lines.append(
                f"    {w.group:<24} order={w.order:<5} psi={w.psi:<8} "
                f"psi'={w.psi_prime!s:<12} (~{approx}) {tag}"
            )
            for fact in w.facts:
                lines.append(f"        - {fact}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# catalog files


def write_catalog(groups: list[ConcreteGroup], stream) -> None:
    """Versioned binary catalog: header, then per-group order + u16 LE table."""
    stream.write(CATALOG_MAGIC)
    stream.write(struct.pack("<HI", CATALOG_VERSION, len(groups)))
    for g in groups:
        if g.order > 0xFFFF:
            raise CapExceeded("catalog format stores orders up to 65535")
        stream.write(struct.pack("<H", g.order))
        stream.write(g.table.astype("<u2").tobytes())


def read_catalog(stream) -> list[ConcreteGroup]:
    """Parse and fully validate a catalog file (Latin, identity, associativity)."""
    magic = stream.read(len(CATALOG_MAGIC))
    if magic != CATALOG_MAGIC:
        raise ValueError("not a psi-lab catalog file (bad magic)")
    version, count = struct.unpack("<HI", stream.read(6))
    if version != CATALOG_VERSION:
        raise ValueError(f"unsupported catalog version {version}")
    import numpy as np

    groups = []
    for i in range(count):
        (order,) = struct.unpack("<H", stream.read(2))
        raw = stream.read(2 * order * order)
        if len(raw) != 2 * order * order:
            raise ValueError(f"truncated catalog file at group {i}")
        table = np.frombuffer(raw, dtype="<u2").reshape(order, order)
        groups.append(
            from_table(table.astype(np.int32), f"cat{i}-order{order}")
        )
    if stream.read(1):
        raise ValueError("trailing bytes after the last catalog group")
    return groups


# ---------------------------------------------------------------------------
# commands


def _emit(args, text: str, payload: dict | None, csv_text: str | None) -> None:
    if getattr(args, "json", False) and payload is not None:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif getattr(args, "csv", False) and csv_text is not None:
        print(csv_text, end="")
    else:
        print(text, end="")


def _enumeration_cap(args) -> int:
    env = os.environ.get(ENV_MAX_ORDER)
    cap = int(env) if env else EXHAUSTIVE_CAP_DEFAULT
    return cap


def cmd_psi(args) -> int:
    spec = parse_spec(args.spec)
    order = spec_order(spec)
    label = canonical_label(spec)
    realized: ConcreteGroup | None = None
    try:
        value = families.psi_closed_form(spec)
        closed = True
    except NoClosedForm:
        realized = build(spec)
        from .psi import psi as psi_fn

        value = psi_fn(realized)
        closed = False
    if realized is None and order <= DEFAULT_ORDER_CAP:
        realized = build(spec)
    pp = Fraction(value, psi_cyclic(order))
    spectrum = order_spectrum(realized) if realized is not None else None

    lines = [
        f"spec:      {label}",
        f"order:     {order}",
        f"psi:       {value}" + ("" if closed else "  (brute force)"),
        f"psi':      {pp}  (~{approx_str(pp)})",
    ]
    if spectrum is not None:
        spec_text = ", ".join(f"{o}:{c}" for o, c in sorted(spectrum.items()))
        lines.append(f"spectrum:  {{{spec_text}}}")
    else:
        lines.append("spectrum:  (not realized; order above the table cap)")
    payload = {
        "schema": SCHEMA_NAME,
        "command": "psi",
        "spec": label,
        "order": order,
        "psi": str(value),
        "psiPrime": fraction_json(pp),
        "psiPrimeApprox": approx_str(pp),
        "spectrum": (
            {str(k): v for k, v in sorted(spectrum.items())}
            if spectrum is not None
            else None
        ),
    }
    csv_buf = io.StringIO()
    w = csv.writer(csv_buf)
    w.writerow(["spec", "order", "psi", "psi_prime_num", "psi_prime_den"])
    w.writerow([label, order, str(value), str(pp.numerator), str(pp.denominator)])
    _emit(args, "\n".join(lines) + "\n", payload, csv_buf.getvalue())
    return 0


def _scan_reports(args, claims: list[str] | None) -> list[VerdictReport]:
    cap = _enumeration_cap(args)
    lo = getattr(args, "min_order", 1) or 1
    hi = args.max_order
    orders = range(lo, hi + 1)
    if getattr(args, "catalog_file", None):
        with open(args.catalog_file, "rb") as fh:
            groups = read_catalog(fh)
        by_order: dict[int, list[ConcreteGroup]] = {}
        for g in groups:
            by_order.setdefault(g.order, []).append(g)
        return harness.scan(orders, claims, groups_by_order=by_order)
    mode = "catalog" if getattr(args, "catalog", False) else "exhaustive"
    return harness.scan(orders, claims, mode=mode, cap=cap)


def _reports_exit(reports: list[VerdictReport]) -> int:
    return 1 if any(r.violated for r in reports) else 0


def cmd_scan(args) -> int:
    claims = args.checks.split(",") if args.checks else None
    reports = _scan_reports(args, claims)
    summary = harness.summarize(reports)
    text = reports_text(reports) + (
        f"summary: {summary[harness.HOLDS]} holds, "
        f"{summary[harness.EQUALITY]} equality, "
        f"{summary[harness.VIOLATED]} violated, "
        f"{summary['not-applicable']} not applicable\n"
    )
    _emit(args, text, reports_json("scan", reports), reports_csv(reports))
    return _reports_exit(reports)


def cmd_verify(args) -> int:
    claim = args.claim
    if claim not in harness.CHECKS:
        raise SpecParseError(
            f"unknown claim {claim!r}; known: {', '.join(harness.CHECKS)}", 0
        )
    if args.spec:
        spec = parse_spec(args.spec)
        g = build(spec)
        reports = [harness.CHECKS[claim](g)]
    else:
        reports = _scan_reports(args, [claim])
    _emit(
        args,
        reports_text(reports),
        reports_json("verify", reports),
        reports_csv(reports),
    )
    return _reports_exit(reports)


def cmd_table(args) -> int:
    if args.what != "families":
        raise SpecParseError(f"unknown table {args.what!r} (try: families)", 0)
    rows = harness.family_ratio_table(args.max_param)
    lines = [
        f"{'family':<14} {'n1':>3} {'order':>6} {'psi(table)':>11} "
        f"{'psi(closed)':>12} {'ratio(table)':>16} {'ratio(formula)':>16} "
        f"{'match':>6}  note"
    ]
    for r in rows:
        note = ""
        if not r.formula_matches:
            note = "formula disagrees with the table; table value shipped"
        lines.append(
            f"{r.kind:<14} {r.n1:>3} {r.order:>6} {r.table_psi:>11} "
            f"{r.closed_psi:>12} {str(r.table_ratio):>16} "
            f"{str(r.formula_ratio):>16} {str(r.formula_matches):>6}  {note}"
        )
    payload = {
        "schema": SCHEMA_NAME,
        "command": "table-families",
        "rows": [
            {
                "family": r.kind,
                "n1": r.n1,
                "order": r.order,
                "tablePsi": str(r.table_psi),
                "closedPsi": str(r.closed_psi),
                "tableRatio": fraction_json(r.table_ratio),
                "formulaRatio": fraction_json(r.formula_ratio),
                "formulaMatches": r.formula_matches,
                "belowMainThreshold": r.below_main_threshold,
            }
            for r in rows
        ],
    }
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(
        ["family", "n1", "order", "table_psi", "closed_psi",
         "table_ratio_num", "table_ratio_den", "formula_ratio_num",
         "formula_ratio_den", "formula_matches", "below_main_threshold"]
    )
    for r in rows:
        w.writerow(
            [r.kind, r.n1, r.order, r.table_psi, r.closed_psi,
             r.table_ratio.numerator, r.table_ratio.denominator,
             r.formula_ratio.numerator, r.formula_ratio.denominator,
             r.formula_matches, r.below_main_threshold]
        )
    _emit(args, "\n".join(lines) + "\n", payload, buf.getvalue())
    return 0


def cmd_export_catalog(args) -> int:
    cap = _enumeration_cap(args)
    lo = args.min_order or 1
    groups: list[ConcreteGroup] = []
    for n in range(lo, args.max_order + 1):
        groups.extend(all_groups_of_order(n, cap).groups)
    with open(args.output, "wb") as fh:
        write_catalog(groups, fh)
    print(
        f"wrote {len(groups)} groups (orders {lo}..{args.max_order}) "
        f"to {args.output}"
    )
    return 0


def cmd_import_catalog(args) -> int:
    with open(args.file, "rb") as fh:
        groups = read_catalog(fh)
    by_order: dict[int, int] = {}
    for g in groups:
        by_order[g.order] = by_order.get(g.order, 0) + 1
    text_lines = [f"catalog: {len(groups)} groups, all tables validated"]
    for order in sorted(by_order):
        text_lines.append(f"    order {order}: {by_order[order]} groups")
    payload = {
        "schema": SCHEMA_NAME,
        "command": "import-catalog",
        "groups": len(groups),
        "byOrder": {str(k): v for k, v in sorted(by_order.items())},
    }
    _emit(args, "\n".join(text_lines) + "\n", payload, None)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # exit status 2, message on stderr
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="psi-lab",
        description="Exact sum-of-element-orders computations and "
        "threshold-criterion verification on finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_formats(p):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="machine-readable JSON")
        fmt.add_argument("--csv", action="store_true", help="flat CSV records")

    p = sub.add_parser("psi", help="psi, psi', and the order spectrum of a spec")
    p.add_argument("spec", help="group spec, e.g. S3xC5 or C7:C3[2]")
    add_formats(p)
    p.set_defaults(func=cmd_psi)

    def add_scan_args(p, with_spec=False):
        if with_spec:
            p.add_argument("spec", nargs="?", help="verify a single group spec")
        p.add_argument("--max-order", type=int, default=EXHAUSTIVE_CAP_DEFAULT)
        p.add_argument("--min-order", type=int, default=1)
        src = p.add_mutually_exclusive_group()
        src.add_argument(
            "--exhaustive", action="store_true",
            help="enumerate all groups of each order (default)",
        )
        src.add_argument(
            "--catalog", action="store_true",
            help="use the built-in named catalog instead of enumeration",
        )
        p.add_argument(
            "--catalog-file", help="read groups from an exported catalog file"
        )
        add_formats(p)

    p = sub.add_parser("scan", help="run all theorem checks over an order range")
    add_scan_args(p)
    p.add_argument(
        "--checks", help="comma-separated claim names (default: all)", default=None
    )
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run one claim over a range or a single spec")
    p.add_argument("claim", help=f"one of: {', '.join(harness.CHECKS)}")
    add_scan_args(p, with_spec=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="print reference tables")
    p.add_argument("what", help="which table (families)")
    p.add_argument("--max-param", type=int, default=6)
    add_formats(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("export-catalog", help="enumerate and save groups to a file")
    p.add_argument("--max-order", type=int, default=EXHAUSTIVE_CAP_DEFAULT)
    p.add_argument("--min-order", type=int, default=1)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_export_catalog)

    p = sub.add_parser("import-catalog", help="load and validate a catalog file")
    p.add_argument("file")
    add_formats(p)
    p.set_defaults(func=cmd_import_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"psi-lab: spec error: {exc}", file=sys.stderr)
        return 2
    except (EnumerationCapExceeded, CapExceeded) as exc:
        print(f"psi-lab: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"psi-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
