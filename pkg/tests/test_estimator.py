import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import cross_val_score

from foldrpp import DataError, FoldRppClassifier, parse_asp
from foldrpp.estimator import cell_to_value
from foldrpp.data import MISSING, Value


X_MIXED = [
    ["male", 22.0, 7.25, "third"],
    ["female", 38.0, 71.28, "first"],
    ["female", 26.0, 7.92, "third"],
    ["male", 35.0, 53.1, "first"],
    ["male", None, 8.05, "third"],
    ["female", 27.0, 11.13, "third"],
    ["male", 54.0, 51.86, "first"],
    ["female", 4.0, 16.7, "third"],
    ["male", 2.0, 21.07, "third"],
    ["female", 14.0, 30.07, "second"],
] * 3
Y_MIXED = [0, 1, 1, 0, 0, 1, 0, 1, 1, 1] * 3


class TestCellToValue:
    def test_mappings(self):
        assert cell_to_value(None) == MISSING
        assert cell_to_value(float("nan")) == MISSING
        assert cell_to_value(True) == Value.categorical("true")
        assert cell_to_value(np.float64(2.5)) == Value.numeric(2.5)
        assert cell_to_value("?") == MISSING
        assert cell_to_value("23.5") == Value.numeric(23.5)
        assert cell_to_value("male") == Value.categorical("male")

    def test_infinite_cell_rejected(self):
        with pytest.raises(DataError):
            cell_to_value(float("inf"))


class TestFoldRppClassifier:
    def test_fit_predict_recovers_labels(self):
        clf = FoldRppClassifier(feature_names=["sex", "age", "fare", "class"])
        clf.fit(X_MIXED, Y_MIXED)
        assert clf.score(X_MIXED, Y_MIXED) == 1.0
        assert set(clf.predict(X_MIXED)) <= {0, 1}

    def test_default_positive_class_is_sorted_last(self):
        clf = FoldRppClassifier().fit(X_MIXED, Y_MIXED)
        assert clf.positive_class_ == 1

    def test_explicit_positive_class(self):
        clf = FoldRppClassifier(positive_class=0).fit(X_MIXED, Y_MIXED)
        assert clf.positive_class_ == 0
        assert clf.score(X_MIXED, Y_MIXED) == 1.0

    def test_unknown_positive_class(self):
        with pytest.raises(DataError):
            FoldRppClassifier(positive_class="maybe").fit(X_MIXED, Y_MIXED)

    def test_string_labels(self):
        y = ["no" if v == 0 else "yes" for v in Y_MIXED]
        clf = FoldRppClassifier().fit(X_MIXED, y)
        assert clf.positive_class_ == "yes"
        assert list(clf.predict(X_MIXED[:2])) == ["no", "yes"]

    def test_rejects_multiclass(self):
        with pytest.raises(DataError):
            FoldRppClassifier().fit(X_MIXED[:3], [0, 1, 2])

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            FoldRppClassifier().predict(X_MIXED)

    def test_feature_count_checked_at_predict(self):
        clf = FoldRppClassifier().fit(X_MIXED, Y_MIXED)
        with pytest.raises(DataError):
            clf.predict([["male", 1.0]])

    def test_to_asp_reparses(self):
        clf = FoldRppClassifier(
            target_name="status", feature_names=["sex", "age", "fare", "class"]
        ).fit(X_MIXED, Y_MIXED)
        prog = parse_asp(clf.to_asp())
        assert prog.schema.target_name == "status"

    def test_justify_labels_match_predict(self):
        clf = FoldRppClassifier().fit(X_MIXED, Y_MIXED)
        labels = clf.predict(X_MIXED)
        for pred, label in zip(clf.justify(X_MIXED), labels):
            assert pred.label == (label == clf.positive_class_)

    def test_get_params_round_trip(self):
        clf = FoldRppClassifier(ratio=0.25, target_name="status")
        params = clf.get_params()
        assert params["ratio"] == 0.25
        assert clone(clf).get_params() == params

    def test_works_with_sklearn_cv(self):
        clf = FoldRppClassifier()
        scores = cross_val_score(
            clf, np.asarray(X_MIXED, dtype=object), np.asarray(Y_MIXED), cv=3
        )
        assert scores.mean() >= 0.9

    def test_pandas_dataframe_column_names(self):
        pd = pytest.importorskip("pandas")
        df = pd.DataFrame(X_MIXED, columns=["sex", "age", "fare", "class"])
        clf = FoldRppClassifier().fit(df, Y_MIXED)
        assert "sex" in clf.to_asp()
        assert list(clf.feature_names_in_) == ["sex", "age", "fare", "class"]

    def test_single_class_training(self):
        clf = FoldRppClassifier().fit(X_MIXED[:4], [1, 1, 1, 1])
        preds = clf.predict(X_MIXED[:4])
        assert all(p in (1, "not_1") for p in preds)

    def test_label_length_mismatch(self):
        with pytest.raises(DataError):
            FoldRppClassifier().fit(X_MIXED, Y_MIXED[:-1])
