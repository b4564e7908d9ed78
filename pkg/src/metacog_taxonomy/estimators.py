"""scikit-learn compatible encoder and nearest-neighbour tier classifier.

``ScenarioEncoder`` turns scenarios (objects, notation strings or row dicts)
into a binary attribute matrix; ``TierClassifier`` is a Hamming-distance
1-NN with an ordinal tie-break. Both compose in a ``sklearn.pipeline``.
"""
from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .enumeration import CatalogEntry, TierLabel, scenario_from_dict
from .model import (
    ATOMIC_ATTRIBUTES,
    DERIVED_ATTRIBUTES,
    Scenario,
    attributes_of,
    derived_attributes,
    scenario_from_attributes,
)
from .notation import parse


def check_scenarios(X) -> List[Scenario]:
    """Coerce ``X`` into a list of Scenario.

    Accepts Scenario objects, catalog entries, notation strings and scenario
    dicts (the JSON row format). Raises ValueError naming the offending item.
    """
    if isinstance(X, (str, bytes, Scenario, dict)):
        raise ValueError("expected a sequence of scenarios, got a single item")
    out = []
    for i, item in enumerate(X):
        if isinstance(item, Scenario):
            out.append(item)
        elif isinstance(item, CatalogEntry):
            out.append(item.scenario.with_label(item.label))
        elif isinstance(item, str):
            try:
                out.append(parse(item))
            except ValueError as exc:
                raise ValueError(f"item {i}: {exc}") from None
        elif isinstance(item, dict):
            try:
                out.append(scenario_from_dict(item))
            except (KeyError, ValueError) as exc:
                raise ValueError(f"item {i}: invalid scenario dict ({exc})") from None
        else:
            raise ValueError(f"item {i}: cannot interpret {type(item).__name__} as a scenario")
    return out


def check_tiers(y) -> np.ndarray:
    try:
        return np.array([TierLabel(getattr(t, "value", t)).value for t in y], dtype=object)
    except ValueError as exc:
        raise ValueError(f"unknown tier label: {exc}") from None


class ScenarioEncoder(TransformerMixin, BaseEstimator):
    def __init__(self, derived: bool = False):
        self.derived = derived

    def _features(self) -> Sequence[str]:
        return ATOMIC_ATTRIBUTES + (DERIVED_ATTRIBUTES if self.derived else ())

    def fit(self, X, y=None):
        check_scenarios(X)
        self.feature_names_out_ = np.array(self._features(), dtype=object)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "feature_names_out_")
        scenarios = check_scenarios(X)
        features = list(self.feature_names_out_)
        out = np.zeros((len(scenarios), len(features)), dtype=np.uint8)
        for i, s in enumerate(scenarios):
            attrs = attributes_of(s)
            attrs = attrs | derived_attributes(attrs)
            for j, name in enumerate(features):
                out[i, j] = name in attrs
        return out

    def inverse_transform(self, Xt) -> List[Scenario]:
        check_is_fitted(self, "feature_names_out_")
        Xt = check_array(Xt, dtype=None)
        atomic = [j for j, f in enumerate(self.feature_names_out_) if f in ATOMIC_ATTRIBUTES]
        return [
            scenario_from_attributes(self.feature_names_out_[j] for j in atomic if row[j])
            for row in Xt
        ]

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_.copy()


class TierClassifier(ClassifierMixin, BaseEstimator):
    """1-nearest-neighbour on Hamming distance over binary feature rows.

    Ties between tiers at the minimal distance go to the lower tier
    (``tie_break="lower"``) or the higher one.
    """

    def __init__(self, tie_break: str = "lower"):
        self.tie_break = tie_break

    def fit(self, X, y):
        if self.tie_break not in ("lower", "higher"):
            raise ValueError(f"tie_break must be 'lower' or 'higher', got {self.tie_break!r}")
        X = check_array(X, dtype=np.uint8)
        y = check_tiers(y)
        if len(y) != X.shape[0]:
            raise ValueError(f"X has {X.shape[0]} rows but y has {len(y)} labels")
        if not np.isin(X, (0, 1)).all():
            raise ValueError("X must be binary")
        self.X_ = X
        self.y_ = y
        self.ranks_ = np.array([TierLabel(t).rank for t in y])
        self.classes_ = np.array([t.value for t in TierLabel if t.value in set(y)], dtype=object)
        self.n_features_in_ = X.shape[1]
        return self

    def _validate(self, X) -> np.ndarray:
        check_is_fitted(self, "X_")
        X = check_array(X, dtype=np.uint8)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return X

    def distances(self, X) -> np.ndarray:
        X = self._validate(X)
        return (X[:, None, :] != self.X_[None, :, :]).sum(axis=2)

    def nearest(self, X) -> List[np.ndarray]:
        """Indices of all training rows at the minimal distance, per query row."""
        d = self.distances(X)
        return [np.flatnonzero(row == row.min()) for row in d]

    def predict(self, X) -> np.ndarray:
        out = []
        for idx in self.nearest(X):
            ranks = self.ranks_[idx]
            rank = ranks.min() if self.tie_break == "lower" else ranks.max()
            out.append(list(TierLabel)[rank].value)
        return np.array(out, dtype=object)


def encode(scenarios: Iterable, derived: bool = False) -> np.ndarray:
    return ScenarioEncoder(derived=derived).fit_transform(list(scenarios))
