"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Tolerances are pinned here and nowhere else: exact integers for the counting
scores, 1e-9 for reflexivity, 1e-12 for symmetry and score ties, two decimal
places for the published evaluation-rate arithmetic, and wall-clock budgets
where stated.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np

from mcsreason import (
    Method,
    answer_query,
    brute_force_mcs,
    check_consistency,
    count_mc,
    enumerate_mcs,
    evaluate,
    hash_embed,
    infers,
    is_consistent,
    mcs_score,
    parse_axiom,
    score_sharp_mc_sum,
    score_subset,
    sim_cos,
    sim_euc,
    similarity_matrix,
    to_sentences,
)
from mcsreason.cli import main
from mcsreason.embedding import SimilarityMatrix, TransEConfig, train_transe_model
from mcsreason.harness import GoldRecord
from mcsreason.inference import ACCEPTED, UNDETERMINED

import helpers
from test_embedding import TOY_TRIPLES
from test_inference import OUTLIER_A3, _angle_embedding, _expected_argmax


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    print(f"PASS: {name}")


def test_monument_pipeline(monument):
    with criterion("Monument pipeline: 4 MCSs, #mc=3, sharp-mc score 9, <1s"):
        start = time.monotonic()
        assert monument.ids() == ("a1", "a2", "a3", "a4")
        assert check_consistency(monument.axioms) is not None
        mcs_list = enumerate_mcs(monument)
        assert {m.id_set() for m in mcs_list} == {
            frozenset({"a2", "a3", "a4"}),
            frozenset({"a1", "a3", "a4"}),
            frozenset({"a1", "a2", "a4"}),
            frozenset({"a1", "a2", "a3"}),
        }
        for axiom_id in monument.ids():
            assert count_mc(monument, mcs_list, axiom_id) == 3
        for mcs in mcs_list:
            assert score_sharp_mc_sum(monument, mcs_list, mcs) == 9
        assert time.monotonic() - start < 1.0


def test_bioportal_fixture(bioportal):
    with criterion("Bioportal fixture: inconsistent, four 3-subsets, <1s"):
        start = time.monotonic()
        assert check_consistency(bioportal.axioms) is not None
        expected = {frozenset({"a1", "a2", "a3", "a4"}) - {i}
                    for i in ("a1", "a2", "a3", "a4")}
        assert {m.id_set() for m in enumerate_mcs(bioportal)} == expected
        assert {m.id_set() for m in brute_force_mcs(bioportal)} == expected
        assert time.monotonic() - start < 1.0


def test_oracle_equivalence_200_seeds():
    with criterion("Oracle equivalence: 200 random ontologies, zero mismatches, <60s"):
        start = time.monotonic()
        mismatches = 0
        for seed in range(200):
            ontology = helpers.random_ontology(seed, max_axioms=8)
            enumerated = {m.id_set() for m in enumerate_mcs(ontology)}
            brute = brute_force_mcs(ontology)
            if enumerated != {m.id_set() for m in brute}:
                mismatches += 1
                continue
            mcs_list = enumerate_mcs(ontology)
            for axiom_id in ontology.ids():
                expected = sum(1 for m in brute if axiom_id in m.id_set())
                if count_mc(ontology, mcs_list, axiom_id) != expected:
                    mismatches += 1
        assert mismatches == 0
        assert time.monotonic() - start < 60.0


def test_similarity_properties():
    with criterion("Similarity: range, reflexivity 1e-9, symmetry 1e-12, 10^4 pairs"):
        rng = np.random.default_rng(2024)
        for _ in range(10_000):
            arity = int(rng.integers(2, 16))
            v1 = rng.normal(scale=3.0, size=arity)
            v2 = rng.normal(scale=3.0, size=arity)
            for metric in (sim_cos, sim_euc):
                s12 = metric(v1, v2)
                assert 0.0 <= s12 <= 1.0
                assert abs(metric(v2, v1) - s12) <= 1e-12
                assert abs(metric(v1, v1) - 1.0) <= 1e-9
                assert abs(metric(v2, v2) - 1.0) <= 1e-9


def test_reduction_identity(monument, bioportal, departments):
    with criterion("Reduction: all-ones similarity makes mcs_score equal sharp-mc"):
        for ontology in (monument, bioportal, departments):
            mcs_list = enumerate_mcs(ontology)
            ones = SimilarityMatrix.all_ones(ontology.ids())
            for mcs in mcs_list:
                weighted = mcs_score(ontology, mcs_list, mcs, ones)
                counted = score_sharp_mc_sum(ontology, mcs_list, mcs)
                assert weighted == counted
                assert isinstance(counted, int) and float(weighted).is_integer()


def test_monotonic_selection(monument, bioportal):
    with criterion("Monotonic selection: strict growth on all consistent subsets"):
        suite = [monument, bioportal] + \
            [helpers.random_ontology(seed, max_axioms=6) for seed in range(10)]
        violations = 0
        for ontology in suite:
            if not (1 <= len(ontology) <= 6):
                continue
            mcs_list = enumerate_mcs(ontology)
            sim = similarity_matrix(
                hash_embed(to_sentences(ontology), dim=128, seed=7))
            ids = ontology.ids()
            for k in range(len(ids) + 1):
                for subset in itertools.combinations(ids, k):
                    if not is_consistent(ontology.subset(subset)):
                        continue
                    base = score_subset(ontology, mcs_list, subset, sim)
                    for extra in ids:
                        if extra in subset:
                            continue
                        if score_subset(ontology, mcs_list,
                                        subset + (extra,), sim) <= base:
                            violations += 1
        assert violations == 0


def test_inference_reflexivity(monument, bioportal, departments):
    with criterion("Inference Ref: alpha entails itself, all methods, all fixtures"):
        for ontology in (monument, bioportal, departments):
            embedding = hash_embed(to_sentences(ontology), dim=64, seed=0)
            methods = (Method.skeptical(), Method.cmcs(), Method.sharp_mc(),
                       Method.embedding_based(embedding))
            for axiom in ontology:
                for method in methods:
                    assert infers(ontology, axiom, axiom, method)


def test_monument_verdicts(monument):
    with criterion("Monument verdicts: skeptical undetermined, embedding accepted"):
        query = parse_axiom("ClassAssertion(ExistingObjectType Monument)")
        skeptical = answer_query(monument, query, Method.skeptical())
        assert skeptical.verdict == UNDETERMINED

        embedding = _angle_embedding(OUTLIER_A3)
        assert _expected_argmax(monument, embedding) == {("a1", "a2", "a4")}
        answer = answer_query(monument, query, Method.embedding_based(embedding))
        assert [m.ids for m in answer.preferred] == [("a1", "a2", "a4")]
        assert answer.verdict == ACCEPTED


def test_harness_arithmetic():
    with criterion("Harness arithmetic: published rate rows exact to 2 decimals"):
        gold = [GoldRecord(f"q{i}", "x", "accepted") for i in range(124)]
        answers = [(f"q{i}", "accepted") for i in range(6)] + \
                  [(f"q{i}", "undetermined") for i in range(6, 124)]
        report = evaluate(answers, gold)
        assert (report.ia, report.ca, report.ra, report.cia) == (6, 118, 0, 0)
        assert round(100 * report.ia_rate, 2) == 4.84
        assert round(100 * report.icr_rate, 2) == 100.0

        verdicts = (["accepted"] * 71 + ["undetermined"] * 12
                    + ["accepted"] * 5 + ["rejected"] * 4)
        gold_verdicts = (["accepted"] * 71 + ["accepted"] * 12
                         + ["undetermined"] * 5 + ["accepted"] * 4)
        report = evaluate(
            [(f"q{i}", v) for i, v in enumerate(verdicts)],
            [GoldRecord(f"q{i}", "x", g) for i, g in enumerate(gold_verdicts)])
        assert (report.ia, report.ca, report.ra, report.cia) == (71, 12, 5, 4)
        assert round(100 * report.ia_rate, 2) == 77.17
        assert round(100 * report.icr_rate, 2) == 95.65


def test_transe_sanity():
    with criterion("TransE sanity: loss non-increasing, ranking >= 80%, <30s"):
        start = time.monotonic()
        model = train_transe_model(TOY_TRIPLES, TransEConfig(seed=42))
        assert model.epoch_losses[-1] <= model.epoch_losses[0]

        rng = np.random.default_rng(123)
        entities = sorted(model.entity_index)
        known = {(t.subject, t.relation, t.object) for t in TOY_TRIPLES}
        wins = trials = 0
        while trials < 100:
            triple = TOY_TRIPLES[int(rng.integers(len(TOY_TRIPLES)))]
            replacement = entities[int(rng.integers(len(entities)))]
            if bool(rng.integers(2)):
                corrupted = (replacement, triple.relation, triple.object)
            else:
                corrupted = (triple.subject, triple.relation, replacement)
            if corrupted in known:
                continue
            trials += 1
            if model.distance(triple.subject, triple.relation, triple.object) \
                    < model.distance(*corrupted):
                wins += 1
        assert wins >= 80
        assert time.monotonic() - start < 30.0


def test_score_determinism(tmp_path, capsys):
    with criterion("Determinism: identical score invocations, byte-identical output"):
        path = tmp_path / "monument.ofn"
        path.write_text(helpers.MONUMENT, encoding="utf-8")
        argv = ["score", str(path), "--backend", "hash", "--metric", "cos", "--seed", "7"]
        assert main(list(argv)) == 0
        first = capsys.readouterr().out
        assert main(list(argv)) == 0
        second = capsys.readouterr().out
        assert first.encode("utf-8") == second.encode("utf-8")
        assert first  # non-empty data output
