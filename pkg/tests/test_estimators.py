import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from metacog_taxonomy import appendix2_catalog, enumerate_space
from metacog_taxonomy.estimators import ScenarioEncoder, TierClassifier, check_scenarios, check_tiers, encode
from metacog_taxonomy.model import ATOMIC_ATTRIBUTES, Scenario

CAT = appendix2_catalog()


def test_encoder_shape_and_names():
    enc = ScenarioEncoder().fit(CAT.scenarios)
    X = enc.transform(CAT.scenarios)
    assert X.shape == (24, 9) and X.dtype == np.uint8
    assert list(enc.get_feature_names_out()) == list(ATOMIC_ATTRIBUTES)
    assert ScenarioEncoder(derived=True).fit_transform(CAT.scenarios).shape == (24, 12)


def test_encoder_inverse_round_trip():
    space = enumerate_space()
    enc = ScenarioEncoder(derived=True).fit(space)
    assert enc.inverse_transform(enc.transform(space)) == space


def test_encoder_accepts_mixed_inputs():
    items = [CAT["S1"], "I->P, P->S, P->O, Topology 4", {"entry": ["P"], "internal": "bottom-up", "exit": ["P"],
                                                        "shortcuts": ["FI"]}]
    X = encode(items)
    assert (X[0] == X[1]).all() and (X[1] == X[2]).all()


@pytest.mark.parametrize("bad", ["I->P", [42], ["I->X"], [{"entry": ["P"]}]])
def test_check_scenarios_errors(bad):
    with pytest.raises(ValueError):
        check_scenarios(bad)


def test_check_tiers():
    with pytest.raises(ValueError):
        check_tiers(["guru"])


def test_classifier_reproduces_catalog():
    X = encode(CAT)
    clf = TierClassifier().fit(X, [e.tier for e in CAT])
    pred = clf.predict(X)
    for e, p in zip(CAT, pred):
        assert p == ("developing" if e.label == "S19" else e.tier.value)
    assert list(clf.classes_) == ["novice", "developing", "expert"]


def test_tie_break_direction():
    X = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    y = ["expert", "novice"]
    q = np.array([[1, 1]], dtype=np.uint8)
    assert TierClassifier("lower").fit(X, y).predict(q)[0] == "novice"
    assert TierClassifier("higher").fit(X, y).predict(q)[0] == "expert"
    with pytest.raises(ValueError):
        TierClassifier("sideways").fit(X, y)


def test_classifier_validation():
    clf = TierClassifier().fit(np.eye(3, dtype=np.uint8), ["novice"] * 3)
    with pytest.raises(ValueError):
        clf.predict(np.ones((1, 4)))
    with pytest.raises(ValueError):
        TierClassifier().fit(np.full((2, 2), 2), ["novice", "novice"])
    with pytest.raises(ValueError):
        TierClassifier().fit(np.eye(2), ["novice"])


def test_sklearn_protocol():
    clf = TierClassifier(tie_break="higher")
    assert clf.get_params() == {"tie_break": "higher"}
    assert clone(clf).get_params() == clf.get_params()
    assert clone(ScenarioEncoder(derived=True)).derived is True
    pipe = make_pipeline(ScenarioEncoder(), TierClassifier()).fit(CAT.scenarios, [e.tier for e in CAT])
    assert pipe.predict([Scenario("P", "bottom-up", "P")])[0] == "novice"
    assert pipe.score(CAT.scenarios, [e.tier.value for e in CAT]) == pytest.approx(23 / 24)
