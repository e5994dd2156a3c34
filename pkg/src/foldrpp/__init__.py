"""FOLD-R++: learn default-with-exception rule sets from mixed tabular data,
classify with them, and justify every prediction with a proof tree.

The learned model is a stratified answer set program; emit_asp/parse_asp
round-trip it through the textual .lp form, and FoldRppClassifier wraps the
whole pipeline behind a scikit-learn estimator interface.
"""

from .asp import (
    PredTemplate,
    default_templates,
    emit_asp,
    emit_pred_decls,
    explain_rules_english,
    load_pred_decls,
    make_templates,
    parse_asp,
)
from .data import (
    MISSING,
    MISSING_TOKEN,
    Dataset,
    Example,
    Schema,
    Value,
    ValueKind,
    infer_value,
    load_csv,
    make_folds,
    split_examples,
)
from .errors import (
    AspSyntaxError,
    DataError,
    FoldRppError,
    MissingColumnError,
    MissingTemplateError,
    RaggedRowError,
    SchemaMismatchError,
    StratificationError,
)
from .estimator import FoldRppClassifier
from .evaluation import Metrics, confusion, cross_validate, mean_metrics, metrics
from .heuristics import (
    ConfusionCounts,
    FeatureTally,
    IgCounter,
    Literal,
    Op,
    best_info_gain,
    evaluate_literal,
    find_best_literal,
    ig,
    tally_feature,
)
from .interpreter import (
    JustificationNode,
    Prediction,
    Record,
    classify,
    fixpoint_oracle,
    justification_to_dict,
    justification_to_json,
    justify,
    render_justification,
)
from .learner import (
    Hyperparams,
    Program,
    Rule,
    ab_reference_order,
    covers,
    fit,
    fold_rpp,
    learn_rule,
)

__version__ = "0.1.0"

__all__ = [
    "AspSyntaxError",
    "ConfusionCounts",
    "DataError",
    "Dataset",
    "Example",
    "FeatureTally",
    "FoldRppClassifier",
    "FoldRppError",
    "Hyperparams",
    "IgCounter",
    "JustificationNode",
    "Literal",
    "MISSING",
    "MISSING_TOKEN",
    "Metrics",
    "MissingColumnError",
    "MissingTemplateError",
    "Op",
    "PredTemplate",
    "Prediction",
    "Program",
    "RaggedRowError",
    "Record",
    "Rule",
    "Schema",
    "SchemaMismatchError",
    "StratificationError",
    "Value",
    "ValueKind",
    "ab_reference_order",
    "best_info_gain",
    "classify",
    "confusion",
    "covers",
    "cross_validate",
    "default_templates",
    "emit_asp",
    "emit_pred_decls",
    "evaluate_literal",
    "explain_rules_english",
    "find_best_literal",
    "fit",
    "fixpoint_oracle",
    "fold_rpp",
    "ig",
    "infer_value",
    "justification_to_dict",
    "justification_to_json",
    "justify",
    "learn_rule",
    "load_csv",
    "load_pred_decls",
    "make_folds",
    "make_templates",
    "mean_metrics",
    "metrics",
    "parse_asp",
    "render_justification",
    "split_examples",
    "tally_feature",
]
