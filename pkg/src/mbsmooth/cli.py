"""Command-line interface.

Reports go to stdout as JSON (one object, or one object per line for
per-case commands); a short human-readable summary goes to stderr unless
``--quiet`` is given. Exit status is 0 on success and 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import backoff, corpus, evaluation, synthetic
from .errors import MBSmoothError, RaggedRow
from .instances import Instance, InstanceBase
from .metrics import MetricConfig
from .neighbors import DUDANI, MAJORITY, classify_with_neighbors
from .weighting import INFORMATION_GAIN, UNIFORM, compute_weights, discretize_weights

METRIC_SCHEMES = {"overlap": UNIFORM, "ig": INFORMATION_GAIN, "cosine": INFORMATION_GAIN}


def _delimiter(args):
    d = getattr(args, "delimiter", None)
    return None if d in (None, "", "whitespace") else d


def _load_cases(path, args):
    return corpus.parse_case_file(path, _delimiter(args), skip_columns=args.skip_columns)


def _load_queries(path, arity, args):
    """Rows of ``arity`` features, optionally followed by a gold label."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            tokens = corpus._split(line.rstrip("\n"), _delimiter(args))[args.skip_columns:]
            if len(tokens) == arity:
                rows.append((tuple(tokens), None))
            elif len(tokens) == arity + 1:
                rows.append((tuple(tokens[:-1]), tokens[-1]))
            else:
                raise RaggedRow(lineno, arity + 1 + args.skip_columns, len(tokens) + args.skip_columns, path)
    return rows


def _say(args, text):
    if not args.quiet:
        print(text, file=sys.stderr)


def _emit(obj):
    print(json.dumps(obj, sort_keys=False))


def _weights(base, args):
    w = compute_weights(base, METRIC_SCHEMES.get(args.metric, args.metric))
    if args.bins:
        w = discretize_weights(w, args.bins)
    return w


def _vectorized(train, queries, args):
    """Training base and query patterns for the cosine metric."""
    if not args.vectors:
        raise MBSmoothError("--metric cosine needs --vectors")
    lexicon = corpus.load_vector_lexicon(args.vectors)
    train_vec = corpus.vectorize_cases(train, lexicon, "zero")
    vec_queries = [
        tuple(lexicon.get(v, np.zeros(lexicon.dimension)) for v in q) for q in queries
    ]
    return InstanceBase(train_vec), vec_queries


def cmd_weights(args):
    base = InstanceBase(_load_cases(args.train, args))
    scheme = {"ig": INFORMATION_GAIN, "uniform": UNIFORM}[args.scheme]
    w = compute_weights(base, scheme)
    if args.bins:
        w = discretize_weights(w, args.bins)
    _emit(list(w.w))
    _say(args, "  ".join(f"f{i}={x:.4f}" for i, x in enumerate(w.w)))


def cmd_classify(args):
    train = _load_cases(args.train, args)
    sym_base = InstanceBase(train)
    rows = _load_queries(args.input, sym_base.arity, args)
    weights = _weights(sym_base, args)
    if args.metric == "cosine":
        base, queries = _vectorized(train, [q for q, _ in rows], args)
    else:
        base, queries = sym_base, [q for q, _ in rows]
    config = MetricConfig.for_base(base, weights)
    correct = 0
    for (sym_query, gold), query in zip(rows, queries):
        label, dist, nbrs = classify_with_neighbors(base, query, config, args.k, args.voting)
        out = {
            "query": list(sym_query),
            "label": label,
            "distribution": dist.to_dict(),
            "nearest_distance": nbrs.nearest_distance,
            "k_used": nbrs.k_used,
        }
        if gold is not None:
            out["gold"] = gold
            correct += gold == label
        _emit(out)
    _say(args, f"classified {len(rows)} cases ({correct} matching gold labels)")


def cmd_backoff(args):
    base = InstanceBase(_load_cases(args.train, args))
    rows = _load_queries(args.input, base.arity, args)
    lambdas = None
    if args.lambdas:
        values = [float(x) for x in args.lambdas.split(",")]
        lambdas = backoff.InterpolationConfig.from_sequence(values)
    weights = compute_weights(base, INFORMATION_GAIN) if args.mode == "ig" else None
    for query, gold in rows:
        if lambdas is not None:
            dist = backoff.interpolation_estimate(base, query, lambdas)
            out = {"query": list(query), "mode": "interpolation", "distribution": dist.to_dict()}
        elif args.mode == "ig":
            dist, step = backoff.ig_backoff_estimate(base, query, weights)
            out = {
                "query": list(query),
                "mode": "ig",
                "distribution": dist.to_dict(),
                "level": step.level,
                "distance": step.distance,
                "schemata": step.wildcard_sets,
            }
        else:
            dist, step = backoff.naive_backoff_trace(base, query)
            out = {
                "query": list(query),
                "mode": "naive",
                "distribution": dist.to_dict(),
                "level": step.level,
                "schemata": step.wildcard_sets,
            }
        out["label"] = dist.argmax()
        if gold is not None:
            out["gold"] = gold
        _emit(out)
    _say(args, f"estimated {len(rows)} cases")


def _eval_config(args):
    method = args.method.replace("-", "_")
    scheme = METRIC_SCHEMES[args.metric]
    return evaluation.EvalConfig(
        method=method, scheme=scheme, k=args.k, voting=args.voting, bins=args.bins
    )


def _print_report(args, report, label):
    line = f"{label}: accuracy {100 * report.accuracy:.2f}% on {report.n_cases} cases"
    if report.per_fold is not None:
        line += f" (folds mean {100 * report.mean_fold_accuracy:.2f}, sd {100 * report.stddev:.2f})"
    _say(args, line)


def cmd_eval(args):
    train = _load_cases(args.train, args)
    test = _load_cases(args.test, args)
    config = _eval_config(args)
    start = time.perf_counter()
    if args.metric == "cosine":
        sym_base = InstanceBase(train)
        weights = _weights(sym_base, args)
        base, queries = _vectorized(train, [c.values for c in test], args)
        test = [Instance(q, c.label) for q, c in zip(queries, test)]
        config = evaluation.EvalConfig(k=args.k, voting=args.voting, weights=weights)
    else:
        base = InstanceBase(train)
    report = evaluation.evaluate(base, test, config)
    out = report.to_dict()
    out["seconds"] = round(time.perf_counter() - start, 3)
    _emit(out)
    _print_report(args, report, "eval")


def cmd_cv(args):
    cases = _load_cases(args.cases, args)
    if args.metric == "cosine":
        raise MBSmoothError("cross-validation supports the overlap and ig metrics")
    report = evaluation.cross_validate(
        cases, args.folds, args.seed, _eval_config(args), stratify=args.stratify
    )
    _emit(report.to_dict())
    _print_report(args, report, f"{args.folds}-fold cv")


def cmd_extract(args):
    sentences = corpus.read_tagged_corpus(args.corpus)
    if args.lexicon:
        lexicon = corpus.load_tag_lexicon(args.lexicon)
    else:
        lexicon = corpus.tag_lexicon_from_corpus(sentences)
    if args.all_words:
        open_class = None
    elif args.open_tags:
        open_class = args.open_tags.split(",")
    else:
        open_class = corpus.PENN_OPEN_CLASS
    cases = corpus.extract_unknown_word_cases(sentences, args.template, lexicon, open_class)
    corpus.write_case_file(cases, sys.stdout, _delimiter(args) or " ")
    _say(args, f"extracted {len(cases)} cases with template {args.template}")


def cmd_check_equivalence(args):
    rng = np.random.default_rng(args.seed)
    pool = _load_cases(args.cases, args) if args.cases else None
    failures = []
    start = time.perf_counter()
    for trial in range(args.trials):
        if pool is None:
            base = synthetic.random_base(rng)
            query = synthetic.random_query(rng, base)
        else:
            size = int(rng.integers(1, min(len(pool), args.max_instances) + 1))
            picked = rng.choice(len(pool), size=size, replace=False)
            base = InstanceBase(pool[i] for i in sorted(picked))
            query = synthetic.resample_query(rng, pool)
        report = backoff.equivalence_check(base, query)
        if not report.passed:
            failures.append({"trial": trial, **report.to_dict()})
    out = {
        "trials": args.trials,
        "passed": args.trials - len(failures),
        "failed": len(failures),
        "ok": not failures,
        "seconds": round(time.perf_counter() - start, 3),
        "failures": failures[:20],
    }
    _emit(out)
    _say(args, f"equivalence: {out['passed']}/{args.trials} trials passed")
    return 0 if not failures else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share the single failure exit status
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mbsmooth", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")
    common.add_argument("--delimiter", default=None, help="field delimiter (default: whitespace)")
    common.add_argument(
        "--skip-columns", type=int, default=0, help="leading columns to drop, e.g. 1 for sentence ids"
    )
    knn = _Parser(add_help=False)
    knn.add_argument("--metric", choices=["overlap", "ig", "cosine"], default="ig")
    knn.add_argument("--k", type=int, default=1, help="number of nearest distance groups")
    knn.add_argument("--voting", choices=[MAJORITY, DUDANI], default=MAJORITY)
    knn.add_argument("--bins", type=int, default=None, help="discretise weights into N bins")
    knn.add_argument("--vectors", default=None, help="vector lexicon for --metric cosine")
    method = _Parser(add_help=False)
    method.add_argument(
        "--method", choices=["knn", "naive-backoff", "ig-backoff"], default="knn"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", parents=[common], help="feature weights as a JSON array")
    p.add_argument("--train", required=True)
    p.add_argument("--scheme", choices=["ig", "uniform"], default="ig")
    p.add_argument("--bins", type=int, default=None)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("classify", parents=[common, knn], help="k-NN classification, JSON lines")
    p.add_argument("--train", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("backoff", parents=[common], help="back-off estimates, JSON lines")
    p.add_argument("--train", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["naive", "ig"], default="naive")
    p.add_argument("--lambdas", default=None, help="interpolation weights per wildcard level, CSV")
    p.set_defaults(func=cmd_backoff)

    p = sub.add_parser("eval", parents=[common, knn, method], help="train/test accuracy")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cv", parents=[common, knn, method], help="k-fold cross-validation")
    p.add_argument("--cases", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stratify", action="store_true")
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("extract", parents=[common], help="unknown-word cases from a tagged corpus")
    p.add_argument("--corpus", required=True, help="one sentence per line, word/TAG tokens")
    p.add_argument("--template", required=True, help="e.g. pdass or pdddaaasss")
    p.add_argument("--lexicon", default=None, help="word TAG... lines (default: built from corpus)")
    p.add_argument("--open-tags", default=None, help="comma-separated open-class tags")
    p.add_argument("--all-words", action="store_true", help="emit a case for every word")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser(
        "check-equivalence", parents=[common], help="randomised Naive Back-off vs IB1 comparison"
    )
    p.add_argument("--cases", default=None, help="draw bases from this case file instead")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-instances", type=int, default=50)
    p.set_defaults(func=cmd_check_equivalence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (MBSmoothError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
