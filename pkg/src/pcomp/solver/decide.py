"""Per-p decisions and the competition-realizer report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from pcomp.certificates import Certificate, verify
from pcomp.graph import Graph
from pcomp.solver.filters import OPEN, FilterVerdict, apply_filters
from pcomp.solver.search import NO, UNKNOWN, YES, SearchBudget, search_realization

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Verdict:
    p: int
    status: str
    reason: str
    certificate: Certificate | None = None
    nodes: int = 0
    elapsed: float = 0.0
    detail: str = ""

    def __post_init__(self):
        if self.status not in (YES, NO, UNKNOWN):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == YES and (self.certificate is None or not self.certificate.verified):
            raise ValueError("a YES verdict needs a verified certificate")


def _from_filter(fv: FilterVerdict, elapsed: float) -> Verdict:
    return Verdict(fv.p, fv.status, f"filter:{fv.reason}", fv.certificate, 0, elapsed, fv.detail)


def decide(
    g: Graph,
    p: int,
    budget: SearchBudget | None = None,
    *,
    use_filters: bool = True,
    sorted_columns: bool = True,
    filters: dict[int, FilterVerdict] | None = None,
) -> Verdict:
    """Is ``g`` a p-competition graph?  Filters first, then exhaustive search."""
    if not 1 <= p <= g.n:
        raise ValueError(f"p must lie in 1..{g.n}")
    start = time.monotonic()
    if use_filters:
        if filters is None:
            filters = apply_filters(g)
        fv = filters[p]
        if fv.status != OPEN:
            return _from_filter(fv, time.monotonic() - start)
    result = search_realization(g, p, budget, sorted_columns=sorted_columns)
    elapsed = time.monotonic() - start
    if result.status == YES:
        cert = verify(Certificate(result.matrix, p, g, f"exhaustive search (p={p})"))
        return Verdict(p, YES, "exhaustive-search", cert, result.nodes, elapsed)
    if result.status == NO:
        return Verdict(p, NO, "exhausted-search", None, result.nodes, elapsed)
    return Verdict(p, UNKNOWN, "budget", None, result.nodes, elapsed, "search budget exhausted")


@dataclass(frozen=True)
class RealizerReport:
    graph: Graph
    verdicts: tuple[Verdict, ...]
    elapsed: float = 0.0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if [v.p for v in self.verdicts] != list(range(1, self.graph.n + 1)):
            raise ValueError("a report needs exactly one verdict for each p in 1..n")

    @property
    def upsilon(self) -> frozenset[int]:
        return frozenset(v.p for v in self.verdicts if v.status == YES)

    @property
    def refuted(self) -> frozenset[int]:
        return frozenset(v.p for v in self.verdicts if v.status == NO)

    @property
    def unknown(self) -> frozenset[int]:
        return frozenset(v.p for v in self.verdicts if v.status == UNKNOWN)

    @property
    def complete(self) -> bool:
        return not self.unknown

    @property
    def is_interval(self) -> bool:
        """True when the YES set is empty or a run of consecutive integers."""
        ys = sorted(self.upsilon)
        return not ys or ys[-1] - ys[0] + 1 == len(ys)

    def verdict(self, p: int) -> Verdict:
        return self.verdicts[p - 1]


def realizer(
    g: Graph,
    budget: SearchBudget | None = None,
    *,
    use_filters: bool = True,
    sorted_columns: bool = True,
) -> RealizerReport:
    """Decide every p in [n], sharing one filter pass across all of them."""
    start = time.monotonic()
    filters = apply_filters(g) if use_filters else None
    verdicts = tuple(
        decide(g, p, budget, use_filters=use_filters, sorted_columns=sorted_columns, filters=filters)
        for p in range(1, g.n + 1)
    )
    report = RealizerReport(g, verdicts, time.monotonic() - start)
    if not report.is_interval:
        report = RealizerReport(g, verdicts, report.elapsed, ("NON-INTERVAL realizer found",))
    return report


def format_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def format_report(report: RealizerReport, fmt: str = "text") -> str:
    """Render as a human-readable report ("text") or flat key=value lines ("kv")."""
    if fmt == "kv":
        lines = [
            f"format_version={REPORT_FORMAT_VERSION}",
            f"n={report.graph.n}",
            f"edges={report.graph.edge_count()}",
        ]
        for v in report.verdicts:
            prefix = f"p.{v.p}"
            lines += [
                f"{prefix}.status={v.status}",
                f"{prefix}.reason={v.reason}",
                f"{prefix}.nodes={v.nodes}",
                f"{prefix}.elapsed={v.elapsed:.6f}",
                f"{prefix}.certificate={v.certificate.provenance if v.certificate else ''}",
            ]
        lines += [
            f"upsilon={','.join(str(p) for p in sorted(report.upsilon))}",
            f"unknown={','.join(str(p) for p in sorted(report.unknown))}",
            f"interval={'true' if report.is_interval else 'false'}",
            f"elapsed={report.elapsed:.6f}",
        ]
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        f"# pcomp report format {REPORT_FORMAT_VERSION}",
        f"graph: n={report.graph.n} m={report.graph.edge_count()}",
    ]
    for v in report.verdicts:
        extra = f" nodes={v.nodes}" if v.nodes else ""
        detail = f" [{v.detail}]" if v.detail else ""
        lines.append(f"p={v.p}: {v.status} ({v.reason}){extra}{detail}")
    for note in report.notes:
        lines.append(f"WARNING: {note}")
    lines.append(f"Upsilon = {format_set(report.upsilon)}")
    if report.unknown:
        lines.append(f"undecided = {format_set(report.unknown)}")
    return "\n".join(lines) + "\n"


def format_verdict(g: Graph, v: Verdict, fmt: str = "text") -> str:
    if fmt == "kv":
        return "\n".join(
            [
                f"format_version={REPORT_FORMAT_VERSION}",
                f"n={g.n}",
                f"p={v.p}",
                f"status={v.status}",
                f"reason={v.reason}",
                f"nodes={v.nodes}",
                f"elapsed={v.elapsed:.6f}",
                f"certificate={v.certificate.provenance if v.certificate else ''}",
            ]
        ) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    detail = f"\ndetail: {v.detail}" if v.detail else ""
    cert = f"\ncertificate: {v.certificate.provenance}" if v.certificate else ""
    return (
        f"# pcomp report format {REPORT_FORMAT_VERSION}\n"
        f"p={v.p}: {v.status} ({v.reason}) nodes={v.nodes} time={v.elapsed:.3f}s{detail}{cert}\n"
    )
