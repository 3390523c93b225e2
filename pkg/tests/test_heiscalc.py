from itertools import product

import pytest

from boolkerov import basischange, heiscalc
from boolkerov.combinatorics import (Partition, Permutation,
                                     enumerate_partitions, partitions_up_to,
                                     reflection_length)
from boolkerov.exactmath import GradedPolynomial, InvalidInputError
from boolkerov.heiscalc import (DiagramState, PermDiagramExpansion,
                                RewriteInvariantError, aggregate_by_cycle_type,
                                alpha_center, bubble_move_full,
                                bubble_move_step, c_variable, close_state,
                                evaluate_center, expand_dotted_strand,
                                make_config, reduce_alpha)


def ypoly(terms):
    return GradedPolynomial("y", terms)


class TestBubbleMoveStep:
    def test_k0(self):
        want = DiagramState({make_config((0,), [(0, 1)]): 1,
                             make_config((0,), []): -1})
        assert bubble_move_step(0) == want

    def test_k1(self):
        want = DiagramState({make_config((0,), [(1, 1)]): 1,
                             make_config((1,), []): -2})
        assert bubble_move_step(1) == want

    def test_k2(self):
        want = DiagramState({make_config((0,), [(2, 1)]): 1,
                             make_config((2,), []): -3,
                             make_config((0,), [(0, 0)]): 1})
        assert bubble_move_step(2) == want

    def test_rejects_negative(self):
        with pytest.raises(InvalidInputError):
            bubble_move_step(-1)


class TestBubbleMoveFull:
    def test_examples(self):
        assert bubble_move_full(0) == ({(0, 0): 1}, {0: 1})
        assert bubble_move_full(1) == ({(1, 0): 1}, {1: 2})
        assert bubble_move_full(2) == ({(2, 0): 1, (0, 0): 1}, {2: 3, 0: 1})
        assert bubble_move_full(3) == ({(3, 0): 1, (0, 1): 2, (1, 0): 1},
                                       {3: 4, 1: 4})
        assert bubble_move_full(4) == (
            {(4, 0): 1, (0, 2): 3, (1, 1): 2, (2, 0): 1, (0, 0): 1},
            {4: 5, 2: 10, 0: 1})

    def test_positivity_and_support(self):
        for k in range(13):
            m, n = bubble_move_full(k)
            assert all(c > 0 for c in m.values())
            assert all(c > 0 for c in n.values())
            assert all(i + j <= k for i, j in m)
            assert all(l <= k for l in n)


class TestReduceAlpha:
    def test_single_strand_is_a_generator(self):
        for i in range(5):
            assert reduce_alpha(Partition((1,)), (i,)) == ypoly({(i,): 1})

    def test_worked_examples(self):
        assert reduce_alpha(Partition((2,)), (0, 0)) == ypoly({(1,): 1})
        assert reduce_alpha(Partition((1, 1)), (0, 0)) == \
            ypoly({(0, 0): 1, (0,): 1})
        assert reduce_alpha(Partition((3,)), (0, 0, 0)) == \
            ypoly({(2,): 1, (0, 0): 1, (0,): 1})

    def test_dots_length_enforced(self):
        with pytest.raises(InvalidInputError):
            reduce_alpha(Partition((2,)), (0,))

    def test_degree_bound_exhaustive(self):
        for pi in partitions_up_to(4):
            if pi.size == 0:
                continue
            for dots in product(range(4), repeat=pi.size):
                if sum(dots) > 3:
                    continue
                p = reduce_alpha(pi, dots)
                assert p.has_integer_coefficients()
                assert p.has_nonnegative_coefficients()
                wd = p.weighted_degree()
                assert wd is None or wd <= pi.size - pi.length + sum(dots)

    def test_schedule_independence(self):
        for pi in partitions_up_to(4):
            for dots in product(range(3), repeat=pi.size):
                if sum(dots) > 2:
                    continue
                assert alpha_center(pi.parts, dots, "innermost") == \
                    alpha_center(pi.parts, dots, "outermost")

    def test_matches_solver_route(self):
        for pi in partitions_up_to(5):
            if pi.size == 0:
                continue
            diagrammatic = reduce_alpha(pi, (0,) * pi.size).relabel(
                "x", index_fn=lambda j: j + 2)
            assert diagrammatic == basischange.boolean_kerov_polynomial(pi)


class TestExpandDottedStrand:
    def test_base_case(self):
        assert expand_dotted_strand(0).as_dict() == {(1,): 1}

    def test_one_dot_is_a_transposition(self):
        assert expand_dotted_strand(1).as_dict() == {(2, 1): 1}

    def test_two_dots(self):
        assert expand_dotted_strand(2).as_dict() == {(3, 1, 2): 1, (1, 2): 1}

    def test_three_dots(self):
        assert expand_dotted_strand(3).as_dict() == {
            (4, 1, 2, 3): 1, (1, 3, 2): 1, (2, 1, 3): 1, (3, 2, 1): 1,
            (2, 1): 1}

    def test_parity_and_support(self):
        for k in range(8):
            for images, c in expand_dotted_strand(k).items():
                rl = reflection_length(Permutation(images))
                assert c > 0
                assert rl <= k and (rl - k) % 2 == 0
                assert 1 <= len(images) <= k + 1


class TestAggregation:
    def test_examples(self):
        def agg(k):
            return {pi.parts: c for pi, c in
                    aggregate_by_cycle_type(expand_dotted_strand(k)).items()}
        assert agg(0) == {(1,): 1}
        assert agg(1) == {(2,): 1}
        assert agg(2) == {(3,): 1, (1, 1): 1}

    def test_matches_solver_route(self):
        for k in range(7):
            agg = aggregate_by_cycle_type(expand_dotted_strand(k))
            want = {pi: int(c) for pi, c in
                    basischange.boolean_in_characters(k + 2).items()}
            assert agg == want


class TestBridge:
    def test_evaluate_examples(self):
        assert evaluate_center(c_variable(0), Partition((2, 1))) == 3
        assert evaluate_center(c_variable(1), Partition((1, 1))) == -2
        one = GradedPolynomial.constant("c", 1)
        assert evaluate_center(one, Partition((3, 2))) == 1

    def test_evaluate_rejects_wrong_family(self):
        with pytest.raises(InvalidInputError):
            evaluate_center(GradedPolynomial.variable("y", 1), Partition((1,)))

    def test_alpha_closes_to_normalized_character(self):
        # the closed diagram of pi evaluates to Sigma_pi on every diagram
        from boolkerov.observables import normalized_character
        for pi in partitions_up_to(4):
            if pi.size == 0:
                continue
            a = alpha_center(pi.parts, (0,) * pi.size)
            for lam in partitions_up_to(6):
                assert evaluate_center(a, lam) == normalized_character(pi, lam)

    def test_bubble_move_closure_identity(self):
        for k in range(9):
            lhs = close_state(DiagramState({make_config((0,), [(k, 0)]): 1}))
            rhs = close_state(bubble_move_step(k))
            assert lhs == rhs
            for lam in partitions_up_to(8):
                assert evaluate_center(lhs, lam) == evaluate_center(rhs, lam)

    def test_close_state_scalars_and_bubbles(self):
        empty = DiagramState({make_config((), ()): 3})
        assert close_state(empty) == GradedPolynomial.constant("c", 3)
        free_bubble = DiagramState({make_config((), [(4, 0)]): 1})
        assert close_state(free_bubble) == c_variable(4)


class TestMutationSensitivity:
    def test_dropping_curl_dot_breaks_reduction(self, monkeypatch):
        monkeypatch.setattr(heiscalc, "_CURL_EXTRA_DOTS", 0)
        heiscalc.clear_caches()
        try:
            broken = None
            try:
                broken = reduce_alpha(Partition((2,)), (0, 0))
            except RewriteInvariantError:
                pass
            assert broken != ypoly({(1,): 1})
        finally:
            monkeypatch.undo()
            heiscalc.clear_caches()
        assert reduce_alpha(Partition((2,)), (0, 0)) == ypoly({(1,): 1})
