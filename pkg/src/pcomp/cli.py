"""Command-line interface: ``pcomp <subcommand> ...``.

Exit codes: 0 YES (or success), 1 NO (or a failed check), 2 UNKNOWN,
3 usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from pcomp.certificates import (
    Certificate,
    CertificateError,
    caterpillar_graph,
    caterpillar_matrix,
    complete_union_matrix,
    cycle_certificate,
    cycle_graph,
    format_certificate,
    join_form_graph,
    join_form_matrix,
    parse_certificate,
    path_certificate,
    path_graph,
    relabel_certificate,
    star_certificate,
    star_graph,
    upsilon_full_matrix,
    verify,
)
from pcomp.checks import SUITES, run_suites
from pcomp.generators import complete_union, kary_tree
from pcomp.graph import Graph, GraphFormatError, condensation, format_edge_list, parse_edge_list
from pcomp.matrix import MatrixFormatError
from pcomp.solver import (
    NO,
    UNKNOWN,
    YES,
    SearchBudget,
    decide,
    format_report,
    format_verdict,
    realizer,
)
from pcomp.solver.filters import filter_families, filter_tree_diameter


EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
FAMILIES = ("path", "cycle", "star", "caterpillar", "complete-union", "join-form", "kary-tree")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _attach_map(text: str) -> dict[int, int]:
    """Parse "2:2,3:3,4:1" (spine position : pendant count)."""
    out: dict[int, int] = {}
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            pos, count = item.split(":")
            out[int(pos)] = out.get(int(pos), 0) + int(count)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad attachment {item!r}; expected position:count") from None
    return out


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=_positive_int, default=10**8, help="search node budget per p")
    p.add_argument("--timeout", type=float, default=60.0, help="wall-clock seconds per p")
    p.add_argument("--jobs", type=_positive_int, default=int(os.environ.get("PCOMP_JOBS", "1")),
                   help="parallel search workers (default: $PCOMP_JOBS or 1)")
    p.add_argument("--deterministic", action="store_true", help="force sequential search for reproducible certificates")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.add_argument("--search-only", action="store_true", help="skip the filters and search directly")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcomp", description="p-competition graphs: decisions, realizers and certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="is the graph a p-competition graph?")
    d.add_argument("graph", help="edge-list file")
    d.add_argument("--p", type=_positive_int, required=True)
    d.add_argument("--emit-certificate", metavar="PATH", help="write the certificate on YES")
    _add_budget(d)

    c = sub.add_parser("certify", help="decide and print the certificate on YES")
    c.add_argument("graph")
    c.add_argument("--p", type=_positive_int, required=True)
    c.add_argument("-o", "--output", metavar="PATH", help="certificate file (default: stdout)")
    _add_budget(c)

    r = sub.add_parser("realizer", help="compute Upsilon(G)")
    r.add_argument("graph")
    _add_budget(r)

    g = sub.add_parser("gen", help="generate a family member, optionally with a certificate")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=_positive_int, help="order (path, cycle) or number of leaves (star)")
    g.add_argument("--spine", type=_positive_int, help="caterpillar spine vertices")
    g.add_argument("--attach", type=_attach_map, default={}, help="caterpillar pendants, e.g. 2:2,3:3,4:1")
    g.add_argument("--sizes", type=_int_list, help="complete-union component orders, e.g. 2,3")
    g.add_argument("--n0", type=int, default=0, help="join-form core size")
    g.add_argument("--parts", type=_int_list, default=[], help="join-form clique sizes")
    g.add_argument("--m", type=int, default=0, help="join-form isolated vertices")
    g.add_argument("--k", type=_positive_int, help="kary-tree arity")
    g.add_argument("--height", type=int, help="kary-tree height")
    g.add_argument("--certify", type=_positive_int, metavar="P", help="also emit a certificate at this p")
    g.add_argument("-o", "--output", metavar="PATH", help="edge-list file (default: stdout)")
    g.add_argument("--certificate-output", metavar="PATH", help="certificate file (default: stdout or OUTPUT.cert)")

    k = sub.add_parser("condense", help="print the condensation and its classes")
    k.add_argument("graph")
    k.add_argument("-o", "--output", metavar="PATH", help="quotient edge-list file")

    v = sub.add_parser("verify-paper", help="run the self-check suites")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), help="suite to run (repeatable; default all)")
    v.add_argument("--max-n", type=_positive_int, help="size limit passed to each suite")
    v.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    vc = sub.add_parser("verify-certificate", help="re-check a certificate file")
    vc.add_argument("certificate")
    return parser


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_nodes, args.timeout, args.jobs, args.deterministic)


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_certificate(path: str | None, cert: Certificate) -> None:
    # never emit anything that does not re-verify
    checked = verify(cert)
    if not checked.verified:
        raise CertificateError("refusing to write a certificate that does not verify")
    _write(path, format_certificate(checked))


def _exit_for(status: str) -> int:
    return {YES: EXIT_YES, NO: EXIT_NO, UNKNOWN: EXIT_UNKNOWN}[status]


def _check_p(g: Graph, p: int) -> None:
    if p > g.n:
        raise UsageError(f"--p must lie in 1..{g.n}")


def cmd_decide(args) -> int:
    g = _read_graph(args.graph)
    _check_p(g, args.p)
    v = decide(g, args.p, _budget(args), use_filters=not args.search_only)
    sys.stdout.write(format_verdict(g, v, args.format))
    if v.status == YES and args.emit_certificate:
        _write_certificate(args.emit_certificate, v.certificate)
    return _exit_for(v.status)


def cmd_certify(args) -> int:
    g = _read_graph(args.graph)
    _check_p(g, args.p)
    v = decide(g, args.p, _budget(args), use_filters=not args.search_only)
    if v.status == YES:
        _write_certificate(args.output, v.certificate)
    else:
        sys.stderr.write(format_verdict(g, v, args.format))
    return _exit_for(v.status)


def cmd_realizer(args) -> int:
    g = _read_graph(args.graph)
    report = realizer(g, _budget(args), use_filters=not args.search_only)
    sys.stdout.write(format_report(report, args.format))
    return EXIT_UNKNOWN if report.unknown else EXIT_YES


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this family")
    return value


def _family_graph(args) -> tuple[Graph, list[int]]:
    """The requested graph, plus caterpillar attachments (1-indexed spine positions)."""
    fam = args.family
    if fam == "path":
        return path_graph(_require(args.n, "--n")), []
    if fam == "cycle":
        n = _require(args.n, "--n")
        if n < 3:
            raise UsageError("a cycle needs at least 3 vertices")
        return cycle_graph(n), []
    if fam == "star":
        return star_graph(_require(args.n, "--n")), []
    if fam == "caterpillar":
        spine = _require(args.spine, "--spine")
        if spine < 2:
            raise UsageError("--spine must be at least 2")
        attachments = []
        for pos, count in sorted(args.attach.items()):
            if not 2 <= pos <= spine - 1 or count < 0:
                raise UsageError(f"attachment position {pos} must be an interior spine vertex 2..{spine - 1}")
            attachments += [pos] * count
        return caterpillar_graph(spine, attachments), attachments
    if fam == "complete-union":
        sizes = _require(args.sizes, "--sizes")
        if not sizes or any(s < 1 for s in sizes):
            raise UsageError("--sizes must list positive orders")
        return complete_union(sizes), []
    if fam == "join-form":
        if args.n0 < 0 or args.m < 0 or any(s < 0 for s in args.parts):
            raise UsageError("join-form sizes must be nonnegative")
        try:
            return join_form_graph(args.n0, args.parts, args.m), []
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    k = _require(args.k, "--k")
    height = _require(args.height, "--height")
    if height < 0:
        raise UsageError("--height must be nonnegative")
    return kary_tree(k, height), []


def _family_certificate(args, g: Graph, attachments: list[int], p: int) -> Certificate:
    fam = args.family
    n = g.n
    try:
        if fam == "path":
            if n == 3:
                return relabel_certificate(star_certificate(2, p), g)
            return path_certificate(p, n)
        if fam == "cycle":
            return cycle_certificate(p, n)
        if fam == "star":
            return star_certificate(n - 1, p)
        if fam == "caterpillar":
            t = p - len(attachments)
            spine = args.spine
            if (spine, t) == (4, 2) or (spine >= 4 and 1 <= t <= spine - 3):
                return caterpillar_matrix(spine, t, attachments)
        elif fam == "complete-union":
            if len(args.sizes) == 1:
                return upsilon_full_matrix(n, n, p)
            return complete_union_matrix(args.sizes, p)
        elif fam == "join-form":
            if p == n - 1:
                return join_form_matrix(args.n0, args.parts, args.m)
    except ValueError as exc:
        raise UsageError(f"the {fam} constructor does not cover p={p}: {exc}") from None
    if fam in ("caterpillar", "kary-tree"):
        # closed-form tree constructions: caterpillars and the diameter bound
        for claim in filter_families(g) + filter_tree_diameter(g):
            if claim.p == p and claim.status == YES:
                return claim.certificate
    raise UsageError(f"the {fam} constructor does not cover p={p}")


def cmd_gen(args) -> int:
    g, attachments = _family_graph(args)
    cert = None
    if args.certify is not None:
        _check_p(g, args.certify)
        cert = _family_certificate(args, g, attachments, args.certify)
    _write(args.output, format_edge_list(g))
    if cert is not None:
        target = args.certificate_output
        if target is None and args.output is not None:
            target = args.output + ".cert"
        _write_certificate(target, cert)
    return EXIT_YES


def cmd_condense(args) -> int:
    g = _read_graph(args.graph)
    q, part = condensation(g)
    _write(args.output, format_edge_list(q))
    for i, block in enumerate(part.blocks, start=1):
        sys.stdout.write(f"class {i}: " + " ".join(str(v + 1) for v in block) + "\n")
    return EXIT_YES


def cmd_verify_paper(args) -> int:
    results = run_suites(args.suite, args.max_n, seed=args.seed)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        sys.stdout.write(f"{res.name}: {status} ({res.checked} checks, {len(res.failures)} failures, {res.elapsed:.2f}s)\n")
        for msg in res.failures[:10]:
            sys.stdout.write(f"  - {msg}\n")
        ok = ok and res.passed
    return EXIT_YES if ok else EXIT_NO


def cmd_verify_certificate(args) -> int:
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc.strerror}") from None
    try:
        cert = parse_certificate(text)
    except (CertificateError, GraphFormatError, MatrixFormatError, ValueError) as exc:
        raise UsageError(f"{args.certificate}: {exc}") from None
    checked = verify(cert)
    if checked.verified:
        sys.stdout.write(f"verified: {cert.matrix.n_rows}x{cert.matrix.cols} matrix realizes the graph at p={cert.p}\n")
        return EXIT_YES
    sys.stdout.write(f"FAILED: the {cert.p}-row graph of the matrix is not the stated graph\n")
    return EXIT_NO


COMMANDS = {
    "decide": cmd_decide,
    "certify": cmd_certify,
    "realizer": cmd_realizer,
    "gen": cmd_gen,
    "condense": cmd_condense,
    "verify-paper": cmd_verify_paper,
    "verify-certificate": cmd_verify_certificate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"pcomp: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
