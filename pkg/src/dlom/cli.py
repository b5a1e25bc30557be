"""Command-line interface: ingest, query, rank, elicit, synthesize, serve,
export-triples.

Exit codes: 0 success, 1 domain error, 2 usage error. Output is one JSON
document on stdout (compact unless --pretty), except export-triples which
emits N-Triples text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import decision, query, service, synthesis
from .errors import DlomError
from .repository import Repository, parse_device_xml
from .schema import (
    OBJECTIVES,
    Objective,
    ObjectiveWeights,
    record_from_dict,
    record_to_dict,
)

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlom",
        description="Manage, query, rank, and synthesize DL-on-IoT optimization models.",
    )
    parser.add_argument(
        "--repo",
        default=None,
        help="repository root (default: $DLOM_REPO or ./dlom-repo)",
    )
    parser.add_argument(
        "--pretty", action="store_true", help="pretty-print JSON output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="add a model (JSON) or attach a device spec (XML)")
    ingest.add_argument("file", help="path to a .json model record or .xml device fragment")
    ingest.add_argument("--model-id", help="model to attach an XML device fragment to")

    run = sub.add_parser("query", help="evaluate a query against the repository")
    run.add_argument("text", help="query text, e.g. 'SELECT * WHERE { ... }'")

    rank = sub.add_parser("rank", help="rank stored models by weighted overall score")
    rank.add_argument("--weights", required=True, help="weights JSON object or file path")
    rank.add_argument("--query", dest="query_text", help="only rank models matching this query")

    elicit = sub.add_parser("elicit", help="derive weights from pairwise comparisons")
    elicit.add_argument(
        "--comparisons", required=True,
        help="JSON array of {more, less, intensity} or file path",
    )

    synth = sub.add_parser("synthesize", help="search the effect matrix for the best method set")
    synth.add_argument("--weights", required=True, help="weights JSON object or file path")
    synth.add_argument("--max-methods", type=int, default=None)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--read-only", action="store_true")

    triples = sub.add_parser("export-triples", help="print a model's knowledge-graph triples")
    triples.add_argument("id")

    return parser


def _repo(args) -> Repository:
    root = args.repo or os.environ.get("DLOM_REPO") or service.DEFAULT_REPO_ROOT
    return Repository(root)


def _load_json_arg(value: str):
    """A CLI value that is either inline JSON or a path to a JSON file."""
    path = Path(value)
    if path.exists():
        return json.loads(path.read_text("utf-8"))
    return json.loads(value)


def _weights_arg(value: str) -> ObjectiveWeights:
    return ObjectiveWeights.from_mapping(_load_json_arg(value)).normalized()


def _dump(args, payload) -> str:
    if args.pretty:
        return json.dumps(payload, indent=2)
    return json.dumps(payload, separators=(",", ":"))


def _format_weights(weights: ObjectiveWeights, pretty: bool) -> str:
    # fixed 6-decimal rendering, so equal runs emit equal bytes
    items = [f'"{o.value}": {weights[o]:.6f}' for o in OBJECTIVES]
    if pretty:
        return "{\n  " + ",\n  ".join(items) + "\n}"
    return "{" + ", ".join(items) + "}"


def _cmd_ingest(args) -> int:
    repo = _repo(args)
    path = Path(args.file)
    if path.suffix.lower() == ".xml":
        if not args.model_id:
            print("error: --model-id is required for XML device fragments", file=sys.stderr)
            return 2
        result = parse_device_xml(path.read_text("utf-8"))
        record = repo.get_model(args.model_id).with_device(result.device)
        repo.replace_model(record)
        print(_dump(args, {"id": record.id, "warnings": list(result.warnings)}))
        return 0
    record = record_from_dict(json.loads(path.read_text("utf-8")))
    repo.add_model(record)
    print(_dump(args, {"id": record.id}))
    return 0


def _cmd_query(args) -> int:
    parsed = query.parse_query(args.text)
    matches = query.evaluate(parsed, _repo(args).list_models())
    print(_dump(args, [record_to_dict(r) for r in matches]))
    return 0


def _cmd_rank(args) -> int:
    weights = _weights_arg(args.weights)
    models = _repo(args).list_models()
    if args.query_text:
        models = query.evaluate(query.parse_query(args.query_text), models)
    ranking = decision.rank_models(weights, models)
    print(_dump(args, [{"id": mid, "score": score} for mid, score in ranking]))
    return 0


def _cmd_elicit(args) -> int:
    raw = _load_json_arg(args.comparisons)
    comparisons = [
        decision.PairwiseComparison(
            more_important=Objective(item["more"].lower()),
            less_important=Objective(item["less"].lower()),
            intensity=decision.Intensity(item["intensity"].lower()),
        )
        for item in raw
    ]
    weights = decision.derive_weights(comparisons)
    print(_format_weights(weights, args.pretty))
    return 0


def _cmd_synthesize(args) -> int:
    weights = _weights_arg(args.weights)
    result = synthesis.synthesize(weights, args.max_methods)
    print(
        _dump(
            args,
            {
                "methods": result.method_names(),
                "net_effect": {o.value: result.net_effect[o] for o in OBJECTIVES},
                "weighted_score": result.weighted_score,
            },
        )
    )
    return 0


def _cmd_serve(args) -> int:
    root = args.repo or os.environ.get("DLOM_REPO") or service.DEFAULT_REPO_ROOT
    service.serve(port=args.port, repo_root=root, read_only=args.read_only, host=args.host)
    return 0


def _cmd_export_triples(args) -> int:
    from .repository import format_ntriples

    sys.stdout.write(format_ntriples(_repo(args).export_triples(args.id)))
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "query": _cmd_query,
    "rank": _cmd_rank,
    "elicit": _cmd_elicit,
    "synthesize": _cmd_synthesize,
    "serve": _cmd_serve,
    "export-triples": _cmd_export_triples,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except KeyboardInterrupt:
        return 130
    except (DlomError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
