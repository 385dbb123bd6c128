"""Command-line front end and the matroid exchange file format.

Files are canonical JSON: the ground set in canonical label order, and
either a reduced-row-echelon GF(2) matrix serialized as bitstrings
(leftmost character = first ground element) or an explicit circuit list.
Canonicalization makes emission deterministic, so identical matroids
produce identical rep payloads regardless of how they were built.  Each
file carries a provenance chain that can be replayed to reproduce the
stored matroid.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 unsupported representation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import gf2
from .errors import NotBinary, SpikesError
from .gf2 import GF2Matrix
from .matroid import (
    CircuitFamily,
    Matroid,
    VectorRep,
    circuits,
    is_3connected,
    is_binary_by_symdiff,
    rank_of,
    sort_labels,
)
from .spike import (
    binary_spike,
    build_spike,
    phi_family,
    recognize_spike,
    relax,
    spike_labels,
)
from .essplit import (
    EVEN,
    ODD_X_IS_E,
    ODD_X_PHI3,
    SplitSpec,
    es_split,
    relabel_to_spike,
)
from .verify import ClaimReport, run_suite

FORMAT_NAME = "spikes-matroid"
REPORT_FORMAT_NAME = "spikes-verify-report"
FORMAT_VERSION = 1


class FileFormatError(SpikesError):
    """The exchange file is malformed."""


def matroid_payload(
    m: Matroid, name: str, provenance: list[dict[str, Any]] | None = None
) -> dict[str, Any]:
    """Canonical JSON-ready payload for a matroid."""
    if isinstance(m.rep, VectorRep):
        reduced, _ = gf2.rref(m.rep.matrix)
        rep = {"kind": "gf2_matrix", "rows": list(reduced.to_bitstrings())}
    else:
        rep = {
            "kind": "circuits",
            "circuits": [list(sort_labels(c)) for c in m.rep.family],
        }
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "name": name,
        "ground": list(m.ground),
        "rep": rep,
        "metadata": {"provenance": provenance or []},
    }


def payload_matroid(payload: dict[str, Any]) -> Matroid:
    """Matroid described by a parsed exchange payload."""
    try:
        ground = [str(x) for x in payload["ground"]]
        rep = payload["rep"]
        kind = rep["kind"]
        if kind == "gf2_matrix":
            matrix = GF2Matrix.from_bitstrings([str(s) for s in rep["rows"]], ground)
            return Matroid.from_matrix(matrix)
        if kind == "circuits":
            return Matroid.from_circuits(
                ground, [frozenset(str(x) for x in c) for c in rep["circuits"]]
            )
        raise FileFormatError(f"unknown rep kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"malformed matroid file: {exc}") from exc


def dump_payload(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_matroid(
    path: str | Path,
    m: Matroid,
    name: str,
    provenance: list[dict[str, Any]] | None = None,
) -> None:
    Path(path).write_text(dump_payload(matroid_payload(m, name, provenance)))


def read_matroid(path: str | Path) -> tuple[Matroid, dict[str, Any]]:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != FORMAT_NAME:
        raise FileFormatError(f"{path} is not a {FORMAT_NAME} file")
    return payload_matroid(payload), payload


def replay_provenance(payload: dict[str, Any]) -> Matroid | None:
    """Re-run the recorded operation chain; None when there is no chain."""
    steps = payload.get("metadata", {}).get("provenance", [])
    if not steps or steps[0].get("op") != "gen-spike":
        return None
    head = steps[0]
    rank_ = int(head["rank"])
    mode = head["mode"]
    if mode == "binary":
        m = binary_spike(rank_)
    elif mode == "free":
        m = build_spike(rank_)
    else:
        c3 = CircuitFamily.of(
            frozenset(str(x) for x in c) for c in head["c3"]
        )
        m = build_spike(rank_, c3)
    for step in steps[1:]:
        op = step["op"]
        if op == "essplit":
            spec = SplitSpec(frozenset(str(x) for x in step["x"]), str(step["e"]))
            m = es_split(m, spec).matroid
            variant = step.get("relabel")
            if variant:
                m = relabel_to_spike(m, variant)
        elif op == "relax":
            m = relax(m, frozenset(str(x) for x in step["circuit"]))
        else:
            raise FileFormatError(f"unknown provenance op {op!r}")
    return m


def _parse_labels(text: str) -> tuple[str, ...]:
    labels = tuple(part.strip() for part in text.replace(",", " ").split())
    if not labels:
        raise FileFormatError("empty label list")
    return labels


def _read_c3_file(path: str) -> CircuitFamily:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    members = [
        frozenset(_parse_labels(line))
        for line in lines
        if line.strip() and not line.lstrip().startswith("#")
    ]
    return CircuitFamily.of(members)


def _auto_variant(m_ground: tuple[str, ...], spec: SplitSpec) -> str | None:
    """Pick the relabeling variant when (X, e) matches a spike-producing
    pattern on a canonically labeled binary spike ground set."""
    n = len(m_ground)
    if n % 2 == 0 or n < 7:
        return None
    r = (n - 1) // 2
    if set(m_ground) != set(spike_labels(r)) or spec.e != "t":
        return None
    everything = frozenset(spike_labels(r))
    if r % 2 == 1 and spec.x == everything:
        return ODD_X_IS_E
    if r % 2 == 1 and "t" in spec.x and (spec.x - {"t"}) in phi_family(r, 3):
        return ODD_X_PHI3
    if r % 2 == 0 and spec.x in phi_family(r, 4):
        return EVEN
    return None


def _cmd_gen_spike(args: argparse.Namespace) -> int:
    if args.binary:
        m = binary_spike(args.rank)
        mode, name = "binary", f"Z{args.rank}"
        step: dict[str, Any] = {"op": "gen-spike", "rank": args.rank, "mode": mode}
    elif args.free:
        m = build_spike(args.rank)
        mode, name = "free", f"free-spike-{args.rank}"
        step = {"op": "gen-spike", "rank": args.rank, "mode": mode}
    else:
        c3 = _read_c3_file(args.c3)
        m = build_spike(args.rank, c3)
        mode, name = "c3", f"spike-{args.rank}"
        step = {
            "op": "gen-spike",
            "rank": args.rank,
            "mode": mode,
            "c3": [list(sort_labels(c)) for c in c3],
        }
    write_matroid(args.out, m, args.name or name, [step])
    return 0


def _cmd_essplit(args: argparse.Namespace) -> int:
    m, payload = read_matroid(args.input)
    spec = SplitSpec(frozenset(_parse_labels(args.x)), args.e)
    result = es_split(m, spec)
    out = result.matroid
    variant: str | None = None
    if args.relabel == "auto":
        variant = _auto_variant(m.ground, spec)
        if variant:
            out = relabel_to_spike(out, variant)
    provenance = list(payload["metadata"].get("provenance", []))
    provenance.append(
        {
            "op": "essplit",
            "x": list(sort_labels(spec.x)),
            "e": spec.e,
            "relabel": variant,
        }
    )
    name = payload.get("name", "matroid") + "-split"
    write_matroid(args.out, out, args.name or name, provenance)
    return 0


def _cmd_relax(args: argparse.Namespace) -> int:
    m, payload = read_matroid(args.input)
    circuit = frozenset(_parse_labels(args.circuit))
    out = relax(m, circuit)
    provenance = list(payload["metadata"].get("provenance", []))
    provenance.append({"op": "relax", "circuit": list(sort_labels(circuit))})
    name = payload.get("name", "matroid") + "-relaxed"
    write_matroid(args.out, out, args.name or name, provenance)
    return 0


def _props_payload(m: Matroid, name: str) -> dict[str, Any]:
    fam = circuits(m)
    tips = [d.tip for d in recognize_spike(m)]
    return {
        "name": name,
        "elements": len(m.ground),
        "rank": rank_of(m, m.ground),
        "circuits": len(fam),
        "size_histogram": {str(k): v for k, v in sorted(fam.histogram().items())},
        "binary": is_binary_by_symdiff(fam),
        "three_connected": is_3connected(m),
        "spike_tips": tips,
    }


def _cmd_props(args: argparse.Namespace) -> int:
    m, payload = read_matroid(args.input)
    props = _props_payload(m, payload.get("name", "matroid"))
    if args.json:
        sys.stdout.write(json.dumps(props, indent=2) + "\n")
        return 0
    hist = " ".join(f"{k}:{v}" for k, v in props["size_histogram"].items())
    lines = [
        f"name: {props['name']}",
        f"elements: {props['elements']}",
        f"rank: {props['rank']}",
        f"circuits: {props['circuits']}",
        f"circuit sizes: {hist}",
        f"binary: {'yes' if props['binary'] else 'no'}",
        f"3-connected: {'yes' if props['three_connected'] else 'no'}",
        f"spike tips: {' '.join(props['spike_tips']) or '(not a spike)'}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def report_payload(
    reports: list[ClaimReport],
    suites: tuple[str, ...],
    max_rank: int,
    seed: int,
    timings: bool = False,
) -> dict[str, Any]:
    """Canonical verify-report payload; timings are omitted by default so
    identical runs are byte-identical at any worker count."""
    return {
        "format": REPORT_FORMAT_NAME,
        "version": FORMAT_VERSION,
        "suites": sorted(set(suites)),
        "max_rank": max_rank,
        "seed": seed,
        "reports": [
            {
                "claim_id": rep.claim_id,
                "rank": rep.rank,
                "universe_size": rep.universe_size,
                "verdict": rep.verdict,
                "witnesses": list(rep.witnesses),
                "elapsed_seconds": rep.elapsed if timings else None,
                "seed": rep.seed,
            }
            for rep in reports
        ],
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    try:
        reports = run_suite(
            max_rank=args.max_rank, suites=suites, jobs=args.jobs, seed=args.seed
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for rep in reports:
        line = (
            f"{rep.claim_id} rank={rep.rank} {rep.verdict}"
            f" cases={rep.universe_size} ({rep.elapsed:.2f}s)"
        )
        print(line)
    if args.report:
        payload = report_payload(
            reports, suites, args.max_rank, args.seed, timings=args.timings
        )
        Path(args.report).write_text(dump_payload(payload))
    return 0 if all(rep.passed for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spikes",
        description="Build, transform, and exhaustively verify spike matroids over GF(2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-spike", help="write a spike matroid file")
    p.add_argument("--rank", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--binary", action="store_true", help="the binary spike Z_r")
    mode.add_argument("--free", action="store_true", help="the free spike")
    mode.add_argument("--c3", metavar="FILE", help="transversal circuits, one per line")
    p.add_argument("--name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_spike)

    p = sub.add_parser("essplit", help="apply the es-splitting operation")
    p.add_argument("input")
    p.add_argument("--x", required=True, help="comma-separated labels of X")
    p.add_argument("--e", required=True, help="the element e of X")
    p.add_argument("--relabel", choices=("none", "auto"), default="none")
    p.add_argument("--name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_essplit)

    p = sub.add_parser("relax", help="relax a circuit-hyperplane")
    p.add_argument("input")
    p.add_argument("--circuit", required=True, help="comma-separated labels")
    p.add_argument("--name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_relax)

    p = sub.add_parser("props", help="print matroid properties")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_props)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suites", default="all", help="comma-separated suite names")
    p.add_argument("--max-rank", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write the report file here")
    p.add_argument(
        "--timings",
        action="store_true",
        help="record wall-clock times in the report (breaks byte determinism)",
    )
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotBinary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SpikesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
