import os
import pathlib

import pytest

import planrec

DATA = pathlib.Path(os.environ.get("PLANREC_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def lib():
    return planrec.load_library((DATA / "hang.lib").read_text())


@pytest.fixture(scope="module")
def story(lib):
    return planrec.load_story((DATA / "rope.story").read_text(), lib)


def hang(net):
    return planrec.posterior(net, net.find("(hang k1)"))


def test_library(lib):
    assert lib.type_names == ["kill", "rope"]
    assert lib.triggers_for_type("kill") == ["hang"]
    assert lib.slots_accepting("rope") == [("hang", "rope-of")]
    assert lib.type_prior("rope") == 1e-5


def test_network_and_inference(lib, story):
    net = planrec.build_network(lib, story, planrec.preset("life"))
    assert len(net) == 7
    assert len(net.evidence) == 2
    q = net.find("(hang k1)")
    assert abs(planrec.posterior(net, q) - planrec.enumerate_posterior(net, q)) <= 1e-9
    assert planrec.to_dot(net).startswith("digraph g {")
    kinds = {n["kind"] for n in net.nodes}
    assert "equality" in kinds and "word" in kinds


def test_modes_separate(lib, story):
    assert hang(planrec.build_network(lib, story, planrec.preset("life"))) < 0.01
    assert hang(planrec.build_network(lib, story, planrec.preset("story"))) >= 0.2


def test_session_matches_batch(lib, story):
    s = planrec.Session(lib, planrec.preset("life"))
    s.assert_token("rope", "r2")
    s.assert_token("kill", "k1")
    batch = planrec.build_network(lib, story, planrec.preset("life"))
    assert abs(hang(s.network()) - hang(batch)) <= 1e-12


def test_analysis(lib, story):
    assert planrec.fragment_ratio(1e-5, 1e-5, 1e-6) == pytest.approx(2.0, rel=1e-3)
    assert planrec.fragment_mention_lift(1e-5, 0.01, 50) == pytest.approx(50, rel=1e-3)
    rows = planrec.sweep_equality_prior(lib, story, planrec.knob_preset(1e-5), [1e-6, 1e-5, 1e-4], "(hang k1)")
    assert [p for _, p in rows] == sorted(p for _, p in rows)
    labels = [label for label, _ in planrec.recognize(planrec.build_network(lib, story, planrec.preset("life")))]
    assert labels == ["(= (rope-of k1) r2)", "(hang k1)"]


def test_errors(lib):
    with pytest.raises(planrec.ParseError):
        planrec.load_library("(library")
    with pytest.raises(planrec.ValidationError):
        planrec.load_story('(story (token "pistol" p1))', lib)
    with pytest.raises(planrec.Error):
        planrec.preset("dream")
