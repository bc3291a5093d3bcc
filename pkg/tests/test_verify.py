"""Tests for the comparison harness, canonical replays and bundled grammars."""
import pytest

from gcid.compilers import compile_t1, compile_t2, compile_t4, compile_theorem
from gcid.control import Configuration, trace_is_valid
from gcid.core import Budget, word
from gcid.grammar import grammar_enumerate
from gcid.verify import (
    NoCanonicalTrace,
    compare,
    grammar_anbn,
    grammar_erasing,
    replay_group,
    replay_prefix,
)


class TestBundledGrammars:
    def test_anbn_matches_closed_form(self, anbn):
        got = grammar_enumerate(anbn.grammar, Budget(10, 16)).words
        assert got == {("a",) * n + ("b",) * n for n in range(1, 6)}

    def test_erasing_language_is_empty_word(self, erasing):
        got = grammar_enumerate(erasing.grammar, Budget(4, 10)).words
        assert got == {()}

    def test_loaders_are_stable(self):
        assert grammar_anbn() == grammar_anbn()
        assert grammar_erasing().grammar.terminals == frozenset()


class TestCompare:
    def test_equal_up_to_bound(self, anbn):
        report = compare(anbn, compile_t1(anbn).system, Budget(6, 12))
        assert report.verdict == "equal-up-to-bound"
        assert report.bound == 6
        assert report.missing == set() and report.extra == set()

    def test_deliberate_mismatch_reports_missing(self, anbn, erasing):
        report = compare(anbn, compile_t1(erasing).system, Budget(6, 12))
        assert report.verdict == "mismatch"
        assert word("a b") in report.missing
        assert report.extra == set()

    def test_extra_words_detected(self, anbn, erasing):
        report = compare(erasing, compile_t1(anbn).system, Budget(2, 12))
        # the system produces "a b"; the erasing oracle cannot
        assert report.extra == {word("a b")}

    def test_empty_word_equivalence(self, erasing):
        report = compare(erasing, compile_t4(erasing).system, Budget(2))
        assert report.verdict == "equal-up-to-bound"
        assert report.oracle_words == report.system_words == {()}

    def test_resource_flags_propagate(self, anbn):
        report = compare(anbn, compile_t1(anbn).system,
                         Budget(6, 12, max_visited=20))
        assert "system-enumeration-exhausted" in report.resource_flags
        assert report.verdict in ("mismatch", "inconclusive")
        assert not report.equal_up_to_bound


class TestReplayGroup:
    def test_t1_seven_configurations(self, anbn):
        trace = replay_group(compile_t1(anbn), "p1", word("S"))
        assert trace.configurations() == (
            Configuration(1, word("S")),
            Configuration(2, word("S p1")),
            Configuration(3, word("S p1 Z")),
            Configuration(4, word("S p1 p1' Z")),
            Configuration(3, word("p1' Z")),
            Configuration(2, word("p1' a Z")),
            Configuration(1, word("a Z")),
        )

    def test_t1_right_linear_mirror(self, anbn):
        trace = replay_group(compile_t1(anbn), "p2", word("Z"))
        assert trace.configurations() == (
            Configuration(1, word("Z")),
            Configuration(2, word("Z p2")),
            Configuration(3, word("Z p2 b")),
            Configuration(4, word("Z p2 p2' b")),
            Configuration(3, word("p2' b")),
            Configuration(2, word("p2' S b")),
            Configuration(1, word("S b")),
        )

    def test_t1_respects_context(self, anbn):
        trace = replay_group(compile_t1(anbn), "p2", word("a Z b"))
        assert trace.end == Configuration(1, word("a S b b"))

    def test_every_production_in_every_compilation(self, anbn, erasing):
        for sg in (anbn, erasing):
            for n in (1, 2, 3, 4):
                out = compile_theorem(n, sg)
                for p in sg.grammar.productions:
                    trace = replay_group(out, p.label, p.lhs)
                    expected = p.rhs  # lhs -> rhs with empty context
                    assert trace.end == Configuration(1, expected)
                    assert trace.start == Configuration(1, p.lhs)
                    assert trace_is_valid(out.system, trace)

    def test_group_rules_only(self, anbn):
        out = compile_t2(anbn)
        trace = replay_group(out, "p1", word("S"))
        allowed = out.marker_table["p1"].labels
        assert {label for label, _ in trace.steps} <= allowed

    def test_rejects_marker_in_form(self, anbn):
        with pytest.raises(ValueError):
            replay_group(compile_t1(anbn), "p1", word("S p1"))

    def test_rejects_multiple_occurrences(self, anbn):
        with pytest.raises(ValueError):
            replay_group(compile_t1(anbn), "p1", word("S S"))

    def test_unknown_production(self, anbn):
        with pytest.raises(KeyError):
            replay_group(compile_t1(anbn), "nope", word("S"))

    def test_no_canonical_trace_signals_regression(self, anbn):
        out = compile_t2(anbn)
        # cripple the group by dropping its final exit rule
        broken = out.system.rules
        broken = tuple(r for r in broken if r.label != "p1.2.2")
        crippled = type(out)(system=type(out.system)(
            out.system.k, out.system.alphabet, out.system.terminals,
            out.system.axioms, out.system.initial, out.system.final, broken),
            marker_table=out.marker_table,
            eraser_symbols=out.eraser_symbols,
            grammar=out.grammar)
        with pytest.raises(NoCanonicalTrace):
            replay_group(crippled, "p1", word("S"))


class TestReplayPrefix:
    def test_matches_group_replay(self, anbn):
        out = compile_t2(anbn)
        by_table = replay_group(out, "p1", word("S"))
        by_prefix = replay_prefix(out.system, "p1", word("S"))
        assert by_prefix == by_table

    def test_identity_exits_are_skipped(self, anbn):
        out = compile_t2(anbn)
        trace = replay_prefix(out.system, "p1", word("S"))
        assert trace.end.word != word("S")

    def test_unknown_prefix(self, anbn):
        with pytest.raises(KeyError):
            replay_prefix(compile_t2(anbn).system, "zz", word("S"))

    def test_no_effect_returns_none(self, anbn):
        out = compile_t2(anbn)
        assert replay_prefix(out.system, "p1", word("b")) is None


class TestNegativePaths:
    def test_misplaced_marker_only_restores_word(self, anbn):
        # spot-check; the exhaustive sweep lives in the acceptance suite
        out = compile_t2(anbn)
        sub_labels = out.marker_table["p1"].labels
        sub = [r for r in out.system.rules if r.label in sub_labels]
        from gcid.control import ComponentGCID
        from gcid import control
        sys_ = ComponentGCID(4, out.system.alphabet, out.system.alphabet,
                             {word("b S a")}, 1, 1, tuple(sub))
        res = control.enumerate(sys_, Budget(5, 7, 5))
        rewrites = {word("b a Z a")}
        assert res.words <= {word("b S a")} | rewrites
