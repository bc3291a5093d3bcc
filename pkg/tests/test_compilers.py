"""Golden-table and structural tests for the four constructions."""
import pytest

from conftest import SPECIAL, make_special
from gcid import control
from gcid.compilers import (
    compile_t1,
    compile_t2,
    compile_t3,
    compile_t4,
    compile_theorem,
)
from gcid.core import Budget, size_of, word
from gcid.grammar import Grammar, Production, SpecialGNFGrammar


def rule_tuples(output):
    return sorted(
        (r.label, r.source, r.rule.mode,
         " ".join(r.rule.left), " ".join(r.rule.body), " ".join(r.rule.right),
         r.target)
        for r in output.system.rules)


T1_GOLDEN = sorted([
    ("pL.1.1", 1, "ins", "S", "pL", "", 2),
    ("pL.2.1", 2, "ins", "pL", "Q", "", 3),
    ("pL.2.2", 2, "del", "", "pL'", "", 1),
    ("pL.3.1", 3, "ins", "pL", "pL'", "", 4),
    ("pL.3.2", 3, "ins", "pL'", "a", "", 2),
    ("pL.4.1", 4, "del", "", "S pL", "", 3),
    ("pR.1.1", 1, "ins", "Q", "pR", "", 2),
    ("pR.2.1", 2, "ins", "pR", "b", "", 3),
    ("pR.2.2", 2, "del", "", "pR'", "", 1),
    ("pR.3.1", 3, "ins", "pR", "pR'", "", 4),
    ("pR.3.2", 3, "ins", "pR'", "S'", "", 2),
    ("pR.4.1", 4, "del", "", "Q pR", "", 3),
    ("e.1.1", 1, "del", "", "S'", "", 1),
    ("e.1.2", 1, "del", "", "A B", "", 1),
    ("e.1.3", 1, "del", "", "C D", "", 1),
])

T2_GOLDEN = sorted([
    ("pL.1.1", 1, "ins", "", "pL", "", 2),
    ("pL.2.1", 2, "del", "pL", "S", "", 3),
    ("pL.2.2", 2, "del", "", "pL", "", 1),
    ("pL.3.1", 3, "ins", "pL", "Q", "", 4),
    ("pL.4.1", 4, "ins", "pL", "a", "", 2),
    ("pR.1.1", 1, "ins", "", "pR", "", 2),
    ("pR.2.1", 2, "del", "pR", "Q", "", 3),
    ("pR.2.2", 2, "del", "", "pR", "", 1),
    ("pR.3.1", 3, "ins", "pR", "b", "", 4),
    ("pR.4.1", 4, "ins", "pR", "S'", "", 2),
    ("e.1.1", 1, "del", "", "S'", "", 1),
    ("k.1.1", 1, "ins", "", "K", "", 2),
    ("k.1.2", 1, "ins", "", "K'", "", 2),
    ("k.2.1", 2, "del", "K", "A", "", 3),
    ("k.2.2", 2, "del", "K'", "C", "", 3),
    ("k.2.3", 2, "del", "", "K", "", 1),
    ("k.2.4", 2, "del", "", "K'", "", 1),
    ("k.3.1", 3, "del", "K", "B", "", 2),
    ("k.3.2", 3, "del", "K'", "D", "", 2),
])

T3_GOLDEN = sorted([
    ("pL.1.1", 1, "ins", "", "pL", "", 2),
    ("pL.2.1", 2, "del", "", "S", "pL", 3),
    ("pL.2.2", 2, "del", "", "pL", "", 1),
    ("pL.3.1", 3, "ins", "pL", "Q", "", 4),
    ("pL.4.1", 4, "ins", "pL", "a", "", 2),
    ("pR.1.1", 1, "ins", "", "pR", "", 2),
    ("pR.2.1", 2, "del", "", "Q", "pR", 3),
    ("pR.2.2", 2, "del", "", "pR", "", 1),
    ("pR.3.1", 3, "ins", "pR", "b", "", 4),
    ("pR.4.1", 4, "ins", "pR", "S'", "", 2),
    ("e.1.1", 1, "del", "", "S'", "", 1),
    ("k.1.1", 1, "ins", "", "K", "", 2),
    ("k.1.2", 1, "ins", "", "K'", "", 2),
    # the eraser symbol stays right of the pair: second symbol goes first
    ("k.2.1", 2, "del", "", "B", "K", 3),
    ("k.2.2", 2, "del", "", "D", "K'", 3),
    ("k.2.3", 2, "del", "", "K", "", 1),
    ("k.2.4", 2, "del", "", "K'", "", 1),
    ("k.3.1", 3, "del", "", "A", "K", 2),
    ("k.3.2", 3, "del", "", "C", "K'", 2),
])

T4_GOLDEN = sorted([
    ("pL.1.1", 1, "ins", "", "a pL", "", 2),
    ("pL.2.1", 2, "del", "pL", "S", "", 3),
    ("pL.2.2", 2, "del", "Q", "pL", "", 1),
    ("pL.3.1", 3, "ins", "", "Q", "", 2),
    ("pR.1.1", 1, "ins", "", "S' pR", "", 2),
    ("pR.2.1", 2, "del", "pR", "Q", "", 3),
    ("pR.2.2", 2, "del", "b", "pR", "", 1),
    ("pR.3.1", 3, "ins", "", "b", "", 2),
    ("e.1.1", 1, "del", "", "S'", "", 1),
    ("k.1.1", 1, "ins", "", "K", "", 2),
    ("k.1.2", 1, "ins", "", "K'", "", 2),
    ("k.2.1", 2, "del", "K", "A", "", 3),
    ("k.2.2", 2, "del", "K'", "C", "", 3),
    ("k.3.1", 3, "del", "K", "B", "", 4),
    ("k.3.2", 3, "del", "K'", "D", "", 4),
    ("k.4.1", 4, "del", "", "K", "", 1),
    ("k.4.2", 4, "del", "", "K'", "", 1),
])


class TestGoldenTables:
    def test_t1(self, golden):
        assert rule_tuples(compile_t1(golden)) == T1_GOLDEN

    def test_t2(self, golden):
        assert rule_tuples(compile_t2(golden)) == T2_GOLDEN

    def test_t3(self, golden):
        assert rule_tuples(compile_t3(golden)) == T3_GOLDEN

    def test_t4(self, golden):
        assert rule_tuples(compile_t4(golden)) == T4_GOLDEN

    def test_no_duplicate_labels_anywhere(self, golden, anbn, erasing):
        for sg in (golden, anbn, erasing):
            for n in (1, 2, 3, 4):
                labels = compile_theorem(n, sg).system.labels
                assert len(labels) == len(set(labels))


class TestShape:
    def test_four_components_initial_final_one(self, anbn, erasing):
        for sg in (anbn, erasing):
            for n in (1, 2, 3, 4):
                sys_ = compile_theorem(n, sg).system
                assert sys_.k == 4
                assert sys_.initial == 1 and sys_.final == 1
                assert sys_.axioms == {word(sg.grammar.start)}
                assert control.validate(sys_) == []

    def test_alphabet_extends_grammar(self, anbn):
        out = compile_t2(anbn)
        expected = anbn.grammar.symbols | {"p1", "p2", "p3", "K", "K'"}
        assert out.system.alphabet == expected
        assert out.eraser_symbols == ("K", "K'")

    def test_t1_markers_carry_primes(self, anbn):
        out = compile_t1(anbn)
        assert out.marker_table["p1"].markers == ("p1", "p1'")
        assert out.eraser_symbols == ()

    def test_marker_table_covers_every_production(self, anbn, erasing):
        for sg in (anbn, erasing):
            for n in (1, 2, 3, 4):
                out = compile_theorem(n, sg)
                assert set(out.marker_table) \
                    == {p.label for p in sg.grammar.productions}

    def test_eraser_groups_point_at_machinery(self, erasing):
        out = compile_t2(erasing)
        assert out.marker_table["eAB"].labels \
            == {"k.1.1", "k.2.1", "k.2.3", "k.3.1"}
        assert out.marker_table["e"].labels == {"e.1.1"}
        out4 = compile_t4(erasing)
        assert out4.marker_table["eAB"].labels \
            == {"k.1.1", "k.2.1", "k.3.1", "k.4.1"}


SIZE_BY_THEOREM = {
    1: (1, 1, 0, 2, 0, 0),
    2: (1, 1, 0, 1, 1, 0),
    3: (1, 1, 0, 1, 0, 1),
    4: (2, 0, 0, 1, 1, 0),
}


class TestSizeVectors:
    @pytest.mark.parametrize("theorem", [1, 2, 3, 4])
    def test_bundled_grammars(self, theorem, anbn, erasing):
        for sg in (anbn, erasing):
            out = compile_theorem(theorem, sg)
            sv = size_of(out.system.insertions, out.system.deletions)
            assert sv.as_tuple() == SIZE_BY_THEOREM[theorem]

    @pytest.mark.parametrize("theorem", [1, 2, 3, 4])
    def test_single_shape_grammars(self, theorem):
        left_only = make_special([Production("p", ("S",), ("a", "Z")),
                                  Production("e", ("S'",), ())])
        right_only = make_special([Production("p", ("S",), ("Z", "a")),
                                   Production("e", ("S'",), ())])
        for sg in (left_only, right_only):
            out = compile_theorem(theorem, sg)
            sv = size_of(out.system.insertions, out.system.deletions)
            assert sv.as_tuple() == SIZE_BY_THEOREM[theorem]


class TestFreshness:
    def fresh_ok(self, out):
        grammar_symbols = out.grammar.grammar.symbols
        minted = set(out.eraser_symbols)
        for group in out.marker_table.values():
            minted.update(group.markers)
        assert not minted & grammar_symbols
        assert len(minted) == sum(len(g.markers) for g in out.marker_table.values()) \
            + len(out.eraser_symbols)

    def test_marker_collision_with_grammar_symbol(self):
        # a terminal literally named like the production label
        sg = make_special([Production("p", ("S",), ("p", "Z")),
                           Production("e", ("S'",), ())],
                          terminals=("p",))
        for compiler in (compile_t1, compile_t2, compile_t3, compile_t4):
            out = compiler(sg)
            self.fresh_ok(out)
        out = compile_t1(sg)
        assert out.marker_table["p"].markers == ("p~2", "p~2'")

    def test_k_collision_with_grammar_symbol(self):
        sg = make_special([Production("p", ("S",), ("K", "Z")),
                           Production("e", ("S'",), ())],
                          terminals=("K",))
        out = compile_t2(sg)
        self.fresh_ok(out)
        assert out.eraser_symbols[0] == "K~2"

    def test_linear_production_labelled_e_does_not_collide(self):
        sg = make_special([Production("e", ("S",), ("a", "Z")),
                           Production("u", ("S'",), ())])
        out = compile_t1(sg)
        labels = out.system.labels
        assert len(labels) == len(set(labels))
        assert "ee.1.1" in labels  # eraser base escalated past the clash
        rep = control.enumerate(out.system, Budget(4, 10))
        assert rep.words == set()  # Z is a dead end; nothing terminal


class TestRejections:
    def test_invalid_grammar_refused(self):
        bad = make_special([Production("p", ("S",), ("a", "b"))])
        for compiler in (compile_t1, compile_t2, compile_t3, compile_t4):
            with pytest.raises(ValueError):
                compiler(bad)

    def test_unknown_theorem_number(self, anbn):
        with pytest.raises(ValueError):
            compile_theorem(5, anbn)


class TestCrossEnumeration:
    def test_t3_equals_t2_on_anbn(self, anbn):
        budget = Budget(6, 12)
        got2 = control.enumerate(compile_t2(anbn).system, budget)
        got3 = control.enumerate(compile_t3(anbn).system, budget)
        assert got2.words == got3.words
        assert not got2.exhausted and not got3.exhausted

    def test_t3_erases_pairs(self, erasing):
        budget = Budget(2)
        got = control.enumerate(compile_t3(erasing).system, budget)
        assert got.words == {()}
