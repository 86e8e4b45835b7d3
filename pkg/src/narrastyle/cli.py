"""Command-line entry points.

Subcommands mirror the pipeline stages: extract -> baseline/cluster ->
score -> evaluate, plus resources-check. Exit codes: 0 success, 1 partial
failure (some documents failed but output was produced), 2 invalid
invocation or configuration.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import __version__
from ._kernels import BACKEND
from .config import ConfigError, PipelineConfig, load_config
from .correlate import CorrelationError, evaluate, write_report_csv
from .dpi import DpiError, parse_formula, read_scores_csv, score, write_scores_csv
from .graph import build_graph, export_graph
from .hanna import RatingsError, load_hanna_ratings
from .louvain import louvain
from .manifest import ManifestError, load_manifest
from .pipeline import (ArtifactError, extract_from_manifest, load_baseline,
                       read_features_csv, save_baseline, write_features_csv)
from .resources import ResourceError, default_resource_dir, load_resources
from .similarity import (SimilarityError, build_similarity_matrix,
                         rohde_transform, write_similarity_csv)
from .vectors import (VectorError, compute_baseline, internal_baseline,
                      normalize)

_DATA_ERRORS = (ManifestError, ResourceError, ArtifactError, VectorError,
                SimilarityError, DpiError, CorrelationError, ValueError, OSError)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(args) -> tuple[PipelineConfig, Path]:
    cfg = load_config(args.config)
    cfg = cfg.override(strategy=getattr(args, "strategy", None),
                       formula=getattr(args, "formula", None),
                       seed=getattr(args, "seed", None))
    out_dir = Path(args.out if args.out else cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return cfg, out_dir


def _resources(cfg: PipelineConfig):
    directory = cfg.resource_dir if cfg.resource_dir else default_resource_dir()
    return load_resources(directory)


def cmd_extract(args) -> int:
    cfg, out_dir = _load(args)
    res = _resources(cfg)
    registry = cfg.registry()
    entries = load_manifest(args.manifest)
    outcome = extract_from_manifest(entries, res, registry,
                                    cfg.figurative_thresholds)
    if not outcome.vectors:
        return _fail("every document failed extraction", 1)
    write_features_csv(outcome.vectors, out_dir / "features.csv")
    with open(out_dir / "missing_features.csv", "w", encoding="utf-8",
              newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "feature_id"])
        for v in outcome.vectors:
            for fid in v.feature_ids:
                if fid in v.missing:
                    writer.writerow([v.doc_id, fid])
    for doc_id, message in outcome.failures:
        print(f"error: {doc_id}: {message}", file=sys.stderr)
    print(f"extracted {len(outcome.vectors)} of {len(entries)} documents "
          f"-> {out_dir / 'features.csv'}")
    return 1 if outcome.failures else 0


def cmd_baseline(args) -> int:
    cfg, out_dir = _load(args)
    registry = cfg.registry()
    vectors = read_features_csv(args.features, registry)
    entries = load_manifest(args.manifest)
    labels = {e.doc_id: e.class_label for e in entries
              if e.class_label is not None}
    automatic = None
    if args.automatic_classes:
        automatic = _read_class_csv(args.automatic_classes)
    profile = compute_baseline(vectors, labels, cfg.weights, automatic, registry)
    # self-test on write: the corpus normalized by its own means must have
    # per-feature column mean 100 under the unweighted config
    internal = internal_baseline(vectors, registry)
    for pos, fid in enumerate(internal.vectors_unweighted[0].feature_ids):
        col = [v.values[pos] for v in internal.vectors_unweighted
               if fid not in v.imputed]
        if col and abs(sum(col) / len(col) - 100.0) > 1e-9:
            return _fail(f"baseline self-test failed on {fid}", 1)
    save_baseline(profile, out_dir / "baseline.json")
    print(f"baseline over {len(vectors)} documents, "
          f"strategies {list(profile.class_maps)} -> {out_dir / 'baseline.json'}")
    return 0


def cmd_cluster(args) -> int:
    cfg, out_dir = _load(args)
    registry = cfg.registry()
    vectors = read_features_csv(args.features, registry)
    if len(vectors) < 2:
        return _fail("clustering needs at least 2 documents", 1)
    if len(vectors) == 2:
        print("warning: 2-document corpus clusters degenerately", file=sys.stderr)
    profile = internal_baseline(vectors, registry)
    doc_ids, M = build_similarity_matrix(profile.vectors_unweighted)
    transformed = rohde_transform(M)
    graph = build_graph(doc_ids, transformed, cfg.edge_threshold)
    if graph.edges:
        partition, q = louvain(graph, cfg.resolution, cfg.seed)
    else:
        # a 2-doc corpus always lands here: its normalized vectors are exact
        # mirrors, so similarity is -1 and no edge survives the threshold
        print("warning: no similarity above threshold; "
              "degenerate single community", file=sys.stderr)
        partition, q = {doc_id: 0 for doc_id in doc_ids}, 0.0
    write_similarity_csv(doc_ids, transformed, out_dir / "similarity.csv")
    export_graph(graph, partition, out_dir / "edges.csv",
                 out_dir / "communities.csv", out_dir / "graph.gexf")
    n_comm = len(set(partition.values()))
    with open(out_dir / "cluster_summary.txt", "w", encoding="utf-8") as fh:
        fh.write(f"documents,{len(doc_ids)}\n")
        fh.write(f"communities,{n_comm}\n")
        fh.write(f"modularity,{q:.6f}\n")
        fh.write(f"resolution,{cfg.resolution:.6f}\n")
        fh.write(f"seed,{cfg.seed}\n")
    print(f"{n_comm} communities, modularity {q:.6f} -> {out_dir}")
    return 0


def cmd_score(args) -> int:
    cfg, out_dir = _load(args)
    baseline = load_baseline(args.baseline)
    vectors = read_features_csv(args.features, baseline.registry)
    parse_formula(cfg.formula, cfg.strategy,
                  class_labels=baseline.classes_of(cfg.strategy))
    scores = []
    failures = []
    for v in vectors:
        try:
            candidate = normalize(v, baseline)
            scores.append(score(candidate, baseline, cfg.strategy, cfg.formula,
                                cfg.transformed_scoring))
        except (VectorError, DpiError) as exc:
            failures.append((v.doc_id, str(exc)))
    if not scores:
        return _fail("every candidate failed scoring", 1)
    write_scores_csv(scores, out_dir / "scores.csv")
    for doc_id, message in failures:
        print(f"error: {doc_id}: {message}", file=sys.stderr)
    print(f"scored {len(scores)} of {len(vectors)} candidates "
          f"({cfg.strategy}, {cfg.formula}) -> {out_dir / 'scores.csv'}")
    return 1 if failures else 0


def _read_class_csv(path) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["doc_id", "class"]:
            raise ArtifactError(f"{path}: expected header doc_id,class")
        for row in reader:
            if len(row) < 2 or not row[0].strip():
                raise ArtifactError(f"{path}: bad class row {row}")
            if row[0] in out:
                raise ArtifactError(f"{path}: duplicate doc_id {row[0]}")
            out[row[0]] = row[1].strip()
    if not out:
        raise ArtifactError(f"{path}: no class rows")
    return out


def _read_ratings(path) -> dict[str, float]:
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().strip().split(",")
    if [h.strip().lower() for h in header] == ["doc_id", "rating"]:
        out: dict[str, float] = {}
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            for row in reader:
                out[row["doc_id"]] = float(row["rating"])
        if not out:
            raise RatingsError(f"{path}: no rating rows")
        return out
    return load_hanna_ratings(path)


def cmd_evaluate(args) -> int:
    cfg, out_dir = _load(args)
    scores = read_scores_csv(args.scores)
    ratings = _read_ratings(args.ratings)
    groups: dict[tuple[str, str], list] = {}
    for s in scores:
        groups.setdefault((s.strategy, s.formula), []).append(s)
    rows = []
    for (strategy, formula), members in sorted(groups.items()):
        report = evaluate(members, ratings)
        rows.append((strategy, formula, report))
        print(f"{strategy} {formula}: n={report.n} "
              f"pearson={report.pearson_r:.6f} (p={report.pearson_p:.6f}) "
              f"kendall={report.kendall_tau:.6f} (p={report.kendall_p:.6f})")
    write_report_csv(rows, out_dir / "correlations.csv")
    return 0


def cmd_resources_check(args) -> int:
    cfg, _ = _load(args)
    res = _resources(cfg)
    for name, count in res.load_summary().items():
        print(f"{name}: {count} entries")
    print("resources ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="narrastyle",
        description="Stylometric scoring of narrative texts from CoNLL-U input.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({BACKEND} backend)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, manifest=False):
        p.add_argument("--config", help="pipeline config JSON")
        p.add_argument("--out", help="output directory (default from config)")
        if manifest:
            p.add_argument("--manifest", required=True,
                           help="corpus manifest CSV")

    p = sub.add_parser("extract", help="extract raw feature vectors")
    common(p, manifest=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("baseline", help="build a gold-standard baseline profile")
    common(p, manifest=True)
    p.add_argument("--features", required=True, help="raw feature CSV")
    p.add_argument("--automatic-classes",
                   help="doc_id,class CSV for the Automatic grouping")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("cluster", help="community detection over the corpus")
    common(p)
    p.add_argument("--features", required=True, help="raw feature CSV")
    p.add_argument("--seed", type=int, help="louvain seed override")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("score", help="differential polarity scores")
    common(p)
    p.add_argument("--features", required=True, help="candidate feature CSV")
    p.add_argument("--baseline", required=True, help="baseline profile JSON")
    p.add_argument("--strategy", help="grouping strategy override")
    p.add_argument("--formula", help="scoring formula override")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", help="correlate scores with human ratings")
    common(p)
    p.add_argument("--scores", required=True, help="scores CSV")
    p.add_argument("--ratings", required=True,
                   help="ratings CSV (doc_id,rating or the six-dimension layout)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("resources-check", help="validate lexical resources")
    common(p)
    p.set_defaults(func=cmd_resources_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(str(exc), 2)
    except _DATA_ERRORS as exc:
        return _fail(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
