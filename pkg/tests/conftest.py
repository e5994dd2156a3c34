import os
import random
from pathlib import Path

import pytest

from foldrpp import Dataset, Example, Schema, Value, infer_value, load_csv

FIXTURES = Path(__file__).parent / "fixtures"

# Real benchmark CSVs are not redistributed; scripts/fetch_datasets.py
# downloads them into data/ (or point FOLDRPP_DATA_DIR elsewhere).
DATA_DIR = Path(os.environ.get("FOLDRPP_DATA_DIR", Path(__file__).parent.parent / "data"))


def dataset_path(name: str) -> Path:
    return DATA_DIR / name


def require_dataset(name: str) -> Path:
    path = dataset_path(name)
    if not path.exists():
        pytest.skip(
            f"benchmark file {path} not present; run scripts/fetch_datasets.py "
            "on a networked machine (this sandbox has no dataset access)"
        )
    return path


@pytest.fixture
def penguin_csv() -> Path:
    return FIXTURES / "penguin.csv"


@pytest.fixture
def penguin_dataset(penguin_csv) -> Dataset:
    return load_csv(penguin_csv, "fly", "true")


def make_examples(raw, label, start=0):
    """One-feature examples from raw cell spellings ("3", "b", "?")."""
    return [
        Example(start + i, (infer_value(str(tok)),), label) for i, tok in enumerate(raw)
    ]


@pytest.fixture
def mixed_feature_sets():
    """The worked one-feature example: 8 positives, 5 negatives, mixed types."""
    pos = make_examples([1, 2, 3, 3, 5, 6, 6, "b"], True)
    neg = make_examples([2, 4, 6, 7, "a"], False, start=8)
    return pos, neg


def random_table(rng: random.Random, max_rows=300, max_features=5):
    """A random mixed-type dataset: numeric, categorical and missing cells."""
    n_features = rng.randint(1, max_features)
    n_rows = rng.randint(2, max_rows)
    numeric_pool = [round(rng.uniform(-5, 5), 2) for _ in range(12)]
    token_pool = ["a", "b", "c", "red", "blue"]
    examples = []
    for i in range(n_rows):
        values = []
        for _ in range(n_features):
            roll = rng.random()
            if roll < 0.55:
                values.append(Value.numeric(rng.choice(numeric_pool)))
            elif roll < 0.9:
                values.append(Value.categorical(rng.choice(token_pool)))
            else:
                values.append(infer_value("?"))
        examples.append(Example(i, tuple(values), rng.random() < 0.5))
    schema = Schema(tuple(f"f{j}" for j in range(n_features)), "y", "true")
    return Dataset(schema, tuple(examples))


@pytest.fixture
def survival_csv(tmp_path) -> Path:
    """A deterministic 60-row mixed table with planted rule structure, shaped
    like the passenger-survival example (sex/age/fare/class, target status)."""
    rng = random.Random(7)
    rows = []
    for i in range(60):
        sex = rng.choice(["male", "female"])
        age = rng.choice([2, 4, 9, 14, 21, 28, 35, 47, 58, 63])
        fare = rng.choice([6.5, 7.25, 8.05, 11.13, 16.7, 26.55, 53.1, 71.28])
        klass = rng.choice(["first", "second", "third"])
        spared = (age <= 4 and fare > 50.0) or (klass == "first" and age >= 58)
        perished = sex == "male" and not spared
        if sex == "female" and klass == "third" and fare <= 7.25:
            perished = True
        rows.append((sex, age, fare, klass, 0 if perished else 1))
    path = tmp_path / "survival.csv"
    with open(path, "w") as fh:
        fh.write("sex,age,fare,class,status\n")
        for sex, age, fare, klass, status in rows:
            fh.write(f"{sex},{age},{fare},{klass},{status}\n")
    return path
