import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propsearch import (
    GoldInstance,
    PropertyRecord,
    audit_aliases,
    build_gold,
    build_index,
    entity_simulation,
    evaluate,
    load_model,
    rank_of_target,
)
from propsearch.evaluation import (
    FLAG_DUPLICATE,
    FLAG_LOW_SIMILARITY,
    FLAG_OK,
    _metrics,
    format_report,
    report_row,
)

from conftest import random_model

# Fixture engineered so the two gold aliases land at ranks [1, 4]:
# four orthogonal basis properties; "w5" leans towards w1/w2/w3 and only
# faintly towards its target P4.
RANKS_14_MODEL = (
    "5 4\n"
    "w1 1 0 0 0\n"
    "w2 0 1 0 0\n"
    "w3 0 0 1 0\n"
    "w4 0 0 0 1\n"
    "w5 1 1 1 0.1\n"
)
RANKS_14_PROPS = [
    PropertyRecord("P1", "w1", aliases=("w1",)),
    PropertyRecord("P2", "w2"),
    PropertyRecord("P3", "w3"),
    PropertyRecord("P4", "w4", aliases=("w5",)),
]


@pytest.fixture
def ranks14():
    model = load_model(io.StringIO(RANKS_14_MODEL), model_id="ranks14")
    idx = build_index(model, RANKS_14_PROPS, False, frozenset())
    return idx, model


class TestBuildGold:
    def test_instances_per_alias(self):
        props = [PropertyRecord("P582", "end time", aliases=("divorced", "to"))]
        gold = build_gold(props)
        assert gold == [
            GoldInstance("divorced", "P582"),
            GoldInstance("to", "P582"),
        ]

    def test_no_aliases_no_instances(self):
        assert build_gold([PropertyRecord("P1", "x")]) == []

    def test_exclude_label_identical(self):
        props = [PropertyRecord("P1", "Same", aliases=("same", "other"))]
        assert len(build_gold(props)) == 2
        kept = build_gold(props, exclude_label_identical=True)
        assert kept == [GoldInstance("other", "P1")]

    def test_deterministic_order(self):
        props = [
            PropertyRecord("P10", "b", aliases=("y",)),
            PropertyRecord("P2", "a", aliases=("x", "z")),
        ]
        gold = build_gold(props)
        assert [(g.alias, g.target_property) for g in gold] == [
            ("x", "P2"),
            ("z", "P2"),
            ("y", "P10"),
        ]


class TestRankOfTarget:
    def test_exact_vector_match_rank1(self, ranks14):
        idx, model = ranks14
        assert rank_of_target(idx, model, GoldInstance("w1", "P1")) == 1

    def test_weak_alias_rank4(self, ranks14):
        idx, model = ranks14
        assert rank_of_target(idx, model, GoldInstance("w5", "P4")) == 4

    def test_all_oov_alias_unresolved(self, ranks14):
        idx, model = ranks14
        assert rank_of_target(idx, model, GoldInstance("zzz", "P1")) is None

    def test_vectorless_target_unresolved(self):
        model = load_model(io.StringIO("1 2\nx 1 0\n"))
        props = [PropertyRecord("P1", "x"), PropertyRecord("P2", "oovlabel")]
        idx = build_index(model, props, False, frozenset())
        assert rank_of_target(idx, model, GoldInstance("x", "P2")) is None

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_matches_sort_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 51))
        dim = int(rng.integers(1, 21))
        model = random_model(rng, n, dim)
        props = [PropertyRecord(f"P{i}", f"w{i - 1}") for i in range(1, n + 1)]
        idx = build_index(model, props, False, frozenset())
        target = f"P{int(rng.integers(1, n + 1))}"
        alias = f"w{int(rng.integers(0, n))}"
        got = rank_of_target(idx, model, GoldInstance(alias, target))

        qvec = model.vectors[model.vocab[alias]].astype(float)
        scored = []
        for e in idx.entries:
            v = e.vector.astype(float)
            na, nb = np.linalg.norm(qvec), np.linalg.norm(v)
            s = 0.0 if na == 0 or nb == 0 else float(qvec @ v / (na * nb))
            scored.append((e.property_id, s))
        scored.sort(key=lambda t: (-t[1], int(t[0][1:])))
        expected = [p for p, _ in scored].index(target) + 1
        assert got == expected


class TestEvaluate:
    def test_hand_metrics_ranks_1_and_4(self, ranks14):
        idx, model = ranks14
        gold = [GoldInstance("w1", "P1"), GoldInstance("w5", "P4")]
        report = evaluate(idx, model, gold)
        assert report.top1 == 0.5
        assert report.top3 == 0.5
        assert report.top10 == 1.0
        assert report.mrr == pytest.approx(0.625)
        assert report.unresolvable_count == 0

    def test_all_rank_one(self, ranks14):
        idx, model = ranks14
        gold = [GoldInstance("w1", "P1")]
        report = evaluate(idx, model, gold)
        assert (report.top1, report.top3, report.top10, report.mrr) == (1, 1, 1, 1)

    def test_single_instance_mrr_is_reciprocal(self, ranks14):
        idx, model = ranks14
        report = evaluate(idx, model, [GoldInstance("w5", "P4")])
        assert report.mrr == pytest.approx(1 / 4)

    def test_unresolved_counts_in_denominator(self, ranks14):
        idx, model = ranks14
        gold = [GoldInstance("w1", "P1"), GoldInstance("zzz", "P1")]
        report = evaluate(idx, model, gold)
        assert report.unresolvable_count == 1
        assert report.mrr == pytest.approx(0.5)
        assert report.top1 == 0.5

    def test_empty_gold_rejected(self, ranks14):
        idx, model = ranks14
        with pytest.raises(ValueError):
            evaluate(idx, model, [])

    @settings(max_examples=200)
    @given(st.lists(st.one_of(st.none(), st.integers(1, 200)), min_size=1, max_size=50))
    def test_metric_monotonicity(self, ranks):
        top1, top3, top10, mrr, unresolved = _metrics(ranks)
        assert 0 <= top1 <= top3 <= top10 <= 1
        assert top1 <= mrr <= 1
        assert unresolved == sum(1 for r in ranks if r is None)


class TestEntitySimulation:
    def _setup(self):
        model = load_model(io.StringIO(RANKS_14_MODEL), model_id="ranks14")
        idx = build_index(model, RANKS_14_PROPS, False, frozenset())
        emap = {
            "Q1": frozenset({"P1", "P4"}),
            "Q2": frozenset({"P2", "P3"}),
            "Q3": frozenset({"P1", "P2", "P3", "P4"}),
        }
        return idx, model, emap

    def test_toy_counts(self):
        idx, model, emap = self._setup()
        report = entity_simulation(
            idx, model, {"Q1": frozenset({"P1", "P4"})}, RANKS_14_PROPS, 1, seed=0
        )
        # P1 has 1 alias, P4 has 1 alias -> 2 instances, scope size 2
        assert report.instance_count == 2
        assert report.sampled_entities == ["Q1"]
        assert report.config.scope_mode == "per_entity"

    def test_seed_determinism_byte_identical(self):
        idx, model, emap = self._setup()
        a = entity_simulation(idx, model, emap, RANKS_14_PROPS, 2, seed=42)
        b = entity_simulation(idx, model, emap, RANKS_14_PROPS, 2, seed=42)
        assert format_report(a).encode() == format_report(b).encode()
        assert a == b

    def test_scope_never_hurts_rank(self):
        idx, model, emap = self._setup()
        # w5 targets P4: full-scope rank 4; within Q1's {P1, P4} it must improve
        full = rank_of_target(idx, model, GoldInstance("w5", "P4"))
        scoped = rank_of_target(
            idx, model, GoldInstance("w5", "P4"), scope=emap["Q1"]
        )
        assert scoped <= full

    def test_sample_size_validation(self):
        idx, model, emap = self._setup()
        with pytest.raises(ValueError):
            entity_simulation(idx, model, emap, RANKS_14_PROPS, 99, seed=0)
        with pytest.raises(ValueError):
            entity_simulation(idx, model, {}, RANKS_14_PROPS, 1, seed=0)


class TestAuditAliases:
    def test_duplicate_of_label_flag(self):
        model = load_model(io.StringIO("1 2\nsame 1 0\n"))
        props = [PropertyRecord("P1", "Same", aliases=("same",))]
        idx = build_index(model, props, False, frozenset())
        (row,) = audit_aliases(idx, model, props)
        assert row.flag == FLAG_DUPLICATE
        assert row.similarity == pytest.approx(1.0)

    def test_low_similarity_flag(self):
        model = load_model(io.StringIO("2 2\nx 1 0\ny 0 1\n"))
        props = [PropertyRecord("P1", "x", aliases=("y",))]
        idx = build_index(model, props, False, frozenset())
        (row,) = audit_aliases(idx, model, props, threshold=0.2)
        assert row.flag == FLAG_LOW_SIMILARITY
        assert row.similarity == pytest.approx(0.0)

    def test_ok_flag_above_threshold(self):
        model = load_model(io.StringIO("2 2\nx 1 0\nnear 0.9 0.1\n"))
        props = [PropertyRecord("P1", "x", aliases=("near",))]
        idx = build_index(model, props, False, frozenset())
        (row,) = audit_aliases(idx, model, props)
        assert row.flag == FLAG_OK

    def test_oov_alias_scores_zero(self):
        model = load_model(io.StringIO("1 2\nx 1 0\n"))
        props = [PropertyRecord("P1", "x", aliases=("zzz",))]
        idx = build_index(model, props, False, frozenset())
        (row,) = audit_aliases(idx, model, props)
        assert row.similarity == 0.0
        assert row.flag == FLAG_LOW_SIMILARITY


class TestReportOutput:
    def test_text_and_row_forms(self, ranks14):
        idx, model = ranks14
        gold = [GoldInstance("w1", "P1"), GoldInstance("w5", "P4")]
        report = evaluate(idx, model, gold)
        text = format_report(report)
        assert "mrr: 0.6250" in text
        assert "instances: 2" in text
        row = report_row(report)
        assert row["mrr"] == pytest.approx(0.625)
        assert set(row) == {
            "model", "vocab_cap", "dim", "use_description",
            "top1", "top3", "top10", "mrr",
        }
