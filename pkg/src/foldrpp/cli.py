"""Command-line front end: train, predict, explain, eval.

Every command is a thin shell over the library; outputs are byte-reproducible
functions of the input files, flags and seed (wall-clock timings appear only
on stdout, never in written artifacts).

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict

from . import asp
from .data import MISSING, Dataset, infer_value, load_csv
from .errors import DataError, FoldRppError, SchemaMismatchError
from .evaluation import Metrics, cross_validate
from .interpreter import (
    Record,
    classify,
    justification_to_dict,
    justify,
    render_justification,
)
from .learner import Hyperparams, Program, fit

USAGE_ERROR = 1
DATA_ERROR = 2
INTERNAL_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; keep 2 for data errors
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foldrpp", description="Learn, apply and explain default-rule models.")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="learn a rule set and write it as a .lp model")
    train.add_argument("data", help="training CSV with a header row")
    train.add_argument("--target", required=True, help="name of the target column")
    train.add_argument("--positive", required=True, help="target value treated as positive")
    train.add_argument("--ratio", type=float, default=0.5, help="exception ratio (default 0.5)")
    train.add_argument("--model", required=True, help="output model path (.lp)")
    train.add_argument("--pred-file", help="also write #pred declarations here")

    predict = sub.add_parser("predict", help="classify CSV rows with a trained model")
    predict.add_argument("data", help="input CSV with a header row")
    predict.add_argument("--model", required=True, help="model path (.lp)")
    predict.add_argument("--out", help="output CSV path (default: stdout)")

    explain = sub.add_parser("explain", help="print the justification for one row")
    explain.add_argument("data", help="input CSV with a header row")
    explain.add_argument("row", type=int, help="0-based data row to explain")
    explain.add_argument("--model", required=True, help="model path (.lp)")
    explain.add_argument("--pred-file", help="read #pred templates from this file")
    explain.add_argument("--english", action="store_true", help="also print the rules in English")
    explain.add_argument("--out", help="write the justification tree as JSON here")

    evaluate = sub.add_parser("eval", help="k-fold cross-validation report")
    evaluate.add_argument("data", help="dataset CSV with a header row")
    evaluate.add_argument("--target", required=True)
    evaluate.add_argument("--positive", required=True)
    evaluate.add_argument("--ratio", type=float, default=0.5)
    evaluate.add_argument("--folds", type=int, default=10)
    evaluate.add_argument("--seed", type=int, default=0)
    evaluate.add_argument("--out", help="write the structured report as JSON here")

    return parser


def _load_model(path: str) -> Program:
    with open(path, encoding="utf-8") as fh:
        return asp.parse_asp(fh.read())


def _referenced_features(p: Program) -> set[int]:
    seen: set[int] = set()
    for rules in [p.rules, *p.ab_rules.values()]:
        for r in rules:
            seen.update(lit.feature for lit in r.defaults)
    return seen


def _read_records(path: str, p: Program) -> list[Record]:
    """Align CSV rows to the model schema by column name.

    Columns the model never tests may be absent (their values are missing);
    a referenced column without a match is a schema mismatch.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            return []
        positions = {name: j for j, name in enumerate(header)}
        referenced = _referenced_features(p)
        lookup = []
        for i, name in enumerate(p.schema.feature_names):
            if name in positions:
                lookup.append(positions[name])
            elif i in referenced:
                raise SchemaMismatchError(f"{path}: model feature {name!r} missing from header")
            else:
                lookup.append(None)
        records = []
        for i, row in enumerate(reader):
            values = tuple(
                infer_value(row[j]) if j is not None and j < len(row) else MISSING
                for j in lookup
            )
            records.append(Record(values, rid=i))
    return records


def cmd_train(args) -> int:
    dataset = load_csv(args.data, args.target, args.positive)
    program = fit(dataset, Hyperparams(args.ratio))
    text = asp.emit_asp(program)
    with open(args.model, "w", encoding="utf-8") as fh:
        fh.write(text)
    if args.pred_file:
        with open(args.pred_file, "w", encoding="utf-8") as fh:
            fh.write(asp.emit_pred_decls(program))
    print(
        f"trained on {len(dataset)} examples: {len(program.rules)} rules, "
        f"{program.clause_count()} clauses -> {args.model}"
    )
    return 0


def cmd_predict(args) -> int:
    program = _load_model(args.model)
    positive = program.schema.positive_value
    rows = [
        (r.rid, positive if classify(program, r) else f"not_{positive}")
        for r in _read_records(args.data, program)
    ]
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def cmd_explain(args) -> int:
    program = _load_model(args.model)
    records = _read_records(args.data, program)
    if not 0 <= args.row < len(records):
        raise DataError(f"row {args.row} out of range (file has {len(records)} data rows)")
    templates = None
    if args.pred_file:
        with open(args.pred_file, encoding="utf-8") as fh:
            templates = asp.load_pred_decls(fh.read())
        templates = asp.resolve_templates(program, templates, strict=False)
    prediction = justify(program, records[args.row], templates)
    print(render_justification(prediction.tree))
    if args.english:
        print()
        print(asp.explain_rules_english(program, templates))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(justification_to_dict(prediction.tree), fh, indent=2)
            fh.write("\n")
    return 0


def _metrics_row(m: Metrics, deterministic: bool) -> dict:
    row = asdict(m)
    row["undefined"] = list(m.undefined)
    if deterministic:
        del row["train_time_ms"]  # wall clock would break byte-identical reports
    return row


def cmd_eval(args) -> int:
    dataset = load_csv(args.data, args.target, args.positive)
    folds, mean = cross_validate(dataset, args.folds, Hyperparams(args.ratio), args.seed)
    header = f"{'fold':>4}  {'acc':>6}  {'prec':>6}  {'rec':>6}  {'f1':>6}  {'clauses':>7}  {'ms':>8}"
    print(header)
    for i, m in enumerate(folds):
        print(
            f"{i:>4}  {m.accuracy:6.3f}  {m.precision:6.3f}  {m.recall:6.3f}  "
            f"{m.f1:6.3f}  {m.rule_count:7.1f}  {m.train_time_ms:8.2f}"
        )
    print(
        f"{'mean':>4}  {mean.accuracy:6.3f}  {mean.precision:6.3f}  {mean.recall:6.3f}  "
        f"{mean.f1:6.3f}  {mean.rule_count:7.1f}  {mean.train_time_ms:8.2f}"
    )
    if args.out:
        report = {
            "data": args.data,
            "target": args.target,
            "positive_class": args.positive,
            "ratio": args.ratio,
            "folds": args.folds,
            "seed": args.seed,
            "per_fold": [_metrics_row(m, deterministic=True) for m in folds],
            "mean": _metrics_row(mean, deterministic=True),
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0


_COMMANDS = {
    "train": cmd_train,
    "predict": cmd_predict,
    "explain": cmd_explain,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DataError, OSError) as exc:
        print(f"foldrpp: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except FoldRppError as exc:
        print(f"foldrpp: internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
