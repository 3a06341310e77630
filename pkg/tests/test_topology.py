from fractions import Fraction

import pytest

from symbreak.autsearch import automorphism_group
from symbreak.errors import CapExceededError
from symbreak.graphs import complete_graph, cycle_graph, hypercube, path_graph
from symbreak.perms import Perm
from symbreak.rng import SeededRng
from symbreak.topology import (
    ExhaustionSequence,
    agreement_level,
    ball_decomposition,
    coset_tree_text,
    expected_stabiliser_measure,
    haar_fraction,
    ultrametric_distance,
)


class TestExhaustionSequence:
    def test_ball_sequence_of_c8(self):
        seq = ExhaustionSequence.balls(cycle_graph(8), 0)
        assert seq.sets[0] == (0,)
        assert seq.sets[1] == (0, 1, 7)
        assert set(seq.sets[-1]) == set(range(8))

    def test_prefix_sequence(self):
        seq = ExhaustionSequence.prefixes(5, step=2)
        assert seq.sets == ((0, 1), (0, 1, 2, 3), (0, 1, 2, 3, 4))

    def test_nesting_enforced(self):
        with pytest.raises(ValueError):
            ExhaustionSequence(((0, 1), (0, 1)), 2)

    def test_final_set_must_cover(self):
        with pytest.raises(ValueError):
            ExhaustionSequence(((0,), (0, 1)), 3)


class TestAgreementLevel:
    def setup_method(self):
        self.g = cycle_graph(8)
        self.seq = ExhaustionSequence.balls(self.g, 0)
        self.rot = Perm([(i + 1) % 8 for i in range(8)])
        self.refl = Perm([(8 - i) % 8 for i in range(8)])
        self.ident = Perm.identity(8)

    def test_equal_marker(self):
        assert agreement_level(self.rot, self.rot, self.seq) is None
        assert ultrametric_distance(self.rot, self.rot, self.seq) == 0

    def test_rotation_differs_at_root(self):
        assert agreement_level(self.rot, self.ident, self.seq) == 0
        assert ultrametric_distance(self.rot, self.ident, self.seq) == 1

    def test_reflection_agrees_on_root_only(self):
        assert agreement_level(self.refl, self.ident, self.seq) == 1
        assert ultrametric_distance(self.refl, self.ident, self.seq) == Fraction(1, 2)

    def test_symmetric(self):
        elems = list(automorphism_group(self.g).elements())
        for a in elems:
            for b in elems:
                assert ultrametric_distance(a, b, self.seq) == ultrametric_distance(
                    b, a, self.seq
                )

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            agreement_level(Perm.identity(3), self.ident, self.seq)


from hypothesis import given
from hypothesis import strategies as st

_perm8 = st.permutations(range(8)).map(Perm)


@given(_perm8, _perm8, _perm8)
def test_ultrametric_holds_for_arbitrary_permutations(a, b, c):
    # the metric is defined on all of Pi_V, not just automorphisms
    seq = ExhaustionSequence.prefixes(8, step=2)
    dab = ultrametric_distance(a, b, seq)
    dbc = ultrametric_distance(b, c, seq)
    dac = ultrametric_distance(a, c, seq)
    assert dac <= max(dab, dbc)


def _sample_triples(elems, count, seed):
    rng = SeededRng(seed)
    idx = rng.integers_below(len(elems), 3 * count)
    for t in range(count):
        yield elems[idx[3 * t]], elems[idx[3 * t + 1]], elems[idx[3 * t + 2]]


class TestUltrametric:
    @pytest.mark.parametrize("graph", [cycle_graph(8), hypercube(3)])
    def test_triangle_inequality_on_triples(self, graph):
        elems = list(automorphism_group(graph).elements())
        for seq in (
            ExhaustionSequence.balls(graph, 0),
            ExhaustionSequence.prefixes(graph.vertex_count),
        ):
            for a, b, c in _sample_triples(elems, 500, seed=13):
                dab = ultrametric_distance(a, b, seq)
                dbc = ultrametric_distance(b, c, seq)
                dac = ultrametric_distance(a, c, seq)
                assert dac <= max(dab, dbc)

    def test_right_multiplication_is_isometry(self):
        g = cycle_graph(8)
        elems = list(automorphism_group(g).elements())
        seq = ExhaustionSequence.balls(g, 0)
        for a, b, s in _sample_triples(elems, 300, seed=29):
            assert ultrametric_distance(a * s, b * s, seq) == ultrametric_distance(
                a, b, seq
            )

    def test_left_multiplication_is_not_an_isometry(self):
        # witness on C8 with the root-ball sequence
        g = cycle_graph(8)
        seq = ExhaustionSequence.balls(g, 0)
        elems = list(automorphism_group(g).elements())
        broken = False
        for a, b, s in _sample_triples(elems, 300, seed=31):
            if ultrametric_distance(s * a, s * b, seq) != ultrametric_distance(a, b, seq):
                broken = True
                break
        assert broken

    def test_topology_independence_at_ball_level(self):
        # every ball of one metric contains, around each member, a ball of the other
        g = cycle_graph(8)
        group = automorphism_group(g)
        elems = list(group.elements())
        seq_a = ExhaustionSequence.balls(g, 0)
        seq_b = ExhaustionSequence.prefixes(8)

        def ball(center, radius_level, seq):
            return {
                e.images
                for e in elems
                if ultrametric_distance(e, center, seq) <= Fraction(1, 2**radius_level)
            }

        for seq1, seq2 in ((seq_a, seq_b), (seq_b, seq_a)):
            for level in range(1, len(seq1) + 1):
                s1 = set(seq1.sets[level - 1])
                # a level in seq2 whose set contains s1 gives a finer ball
                finer = next(
                    m for m in range(1, len(seq2) + 1) if s1 <= set(seq2.sets[m - 1])
                )
                for e in elems:
                    assert ball(e, finer, seq2) <= ball(e, level, seq1)


class TestBallDecomposition:
    def test_c4_level_one(self):
        g = cycle_graph(4)
        deco = ball_decomposition(
            automorphism_group(g), ExhaustionSequence.balls(g, 0), 1
        )
        assert deco.ball_count == 4
        assert all(b.size == 2 for b in deco.balls)
        assert deco.radius == Fraction(1, 2)

    def test_partition_properties(self):
        for graph in [cycle_graph(8), hypercube(3)]:
            group = automorphism_group(graph)
            seq = ExhaustionSequence.balls(graph, 0)
            order = group.order()
            for level in range(1, len(seq) + 1):
                deco = ball_decomposition(group, seq, level)
                sizes = [b.size for b in deco.balls]
                assert sum(sizes) == order
                assert all(order % s == 0 for s in sizes)
                seen = set()
                for b in deco.balls:
                    members = {m.images for m in b.members}
                    assert len(members) == b.size
                    assert not (members & seen)
                    seen |= members
                assert len(seen) == order

    def test_final_level_is_singletons(self):
        g = cycle_graph(4)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        deco = ball_decomposition(group, seq, len(seq))
        assert deco.ball_count == group.order()
        assert all(b.size == 1 for b in deco.balls)

    def test_balls_are_distance_classes(self):
        g = cycle_graph(8)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        level = 2
        deco = ball_decomposition(group, seq, level)
        radius = deco.radius
        for b in deco.balls:
            for m1 in b.members:
                for m2 in b.members:
                    assert ultrametric_distance(m1, m2, seq) <= radius
        for i, b1 in enumerate(deco.balls):
            for b2 in deco.balls[i + 1 :]:
                assert ultrametric_distance(
                    b1.representative, b2.representative, seq
                ) > radius

    def test_subball_refinement_partitions_parent(self):
        g = cycle_graph(4)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        top = ball_decomposition(group, seq, 1)
        parent = top.balls[0]
        sub = ball_decomposition(group, seq, 2, within=parent)
        assert sum(b.size for b in sub.balls) == parent.size
        members = {m.images for b in sub.balls for m in b.members}
        assert members == {m.images for m in parent.members}

    def test_representatives_only_mode_matches(self):
        g = hypercube(3)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        full = ball_decomposition(group, seq, 1)
        reps = ball_decomposition(group, seq, 1, materialize=False)
        assert reps.ball_count == full.ball_count
        assert [b.size for b in reps.balls] == [b.size for b in full.balls]
        assert [b.key for b in reps.balls] == [b.key for b in full.balls]
        assert all(b.members is None for b in reps.balls)

    def test_cap_is_explicit(self):
        g = cycle_graph(8)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        with pytest.raises(CapExceededError):
            ball_decomposition(group, seq, 1, cap=3)

    def test_ball_count_equals_stabiliser_index(self):
        g = hypercube(3)
        group = automorphism_group(g)
        seq = ExhaustionSequence.balls(g, 0)
        for level in (1, 2):
            deco = ball_decomposition(group, seq, level)
            stab = group.pointwise_stabiliser(seq.sets[level - 1])
            assert deco.ball_count == group.order() // stab.order()

    def test_coset_tree_text_smoke(self):
        g = cycle_graph(4)
        text = coset_tree_text(automorphism_group(g), ExhaustionSequence.balls(g, 0), 2)
        assert "radius 1/2" in text

    def test_balls_are_right_stabiliser_cosets(self):
        # each ball equals {h * rep : h fixes S_level pointwise}
        for graph in [cycle_graph(8), hypercube(3)]:
            group = automorphism_group(graph)
            seq = ExhaustionSequence.balls(graph, 0)
            for level in (1, 2):
                stab = group.pointwise_stabiliser(seq.sets[level - 1])
                stab_elems = list(stab.elements())
                deco = ball_decomposition(group, seq, level)
                for b in deco.balls:
                    coset = {(h * b.representative).images for h in stab_elems}
                    assert coset == {m.images for m in b.members}


class TestHaarFraction:
    def test_whole_group(self):
        group = automorphism_group(cycle_graph(4))
        assert haar_fraction(list(group.elements()), group) == 1

    def test_identity_alone(self):
        group = automorphism_group(cycle_graph(4))
        assert haar_fraction([Perm.identity(4)], group) == Fraction(1, 8)

    def test_stabiliser_fraction(self):
        group = automorphism_group(cycle_graph(4))
        stab = group.pointwise_stabiliser([0])
        assert haar_fraction(list(stab.elements()), group) == Fraction(1, 4)

    def test_duplicates_collapse(self):
        group = automorphism_group(cycle_graph(4))
        e = Perm.identity(4)
        assert haar_fraction([e, e], group) == Fraction(1, 8)

    def test_non_member_rejected(self):
        group = automorphism_group(path_graph(4))
        with pytest.raises(ValueError):
            haar_fraction([Perm.from_cycles(4, [(0, 1, 2)])], group)


class TestExpectedStabiliserMeasure:
    def test_k1(self):
        assert expected_stabiliser_measure(complete_graph(1)).value == 1

    def test_c4(self):
        rep = expected_stabiliser_measure(cycle_graph(4))
        assert rep.colour_first == rep.group_first == Fraction(3, 8)

    def test_p4(self):
        rep = expected_stabiliser_measure(path_graph(4))
        assert rep.value == Fraction(5, 8)

    def test_both_routes_agree_on_corpus(self, corpus):
        for name, g in corpus.items():
            rep = expected_stabiliser_measure(g)
            assert rep.agree, name

    def test_third_route_via_stabiliser_search(self):
        # average |stabiliser|/|Aut| with the stabiliser computed by the
        # colour-constrained search, independent of both summation routes
        from fractions import Fraction as F

        from symbreak.colourings import Colouring, colouring_stabiliser

        for g in [path_graph(4), cycle_graph(4), complete_graph(3)]:
            n = g.vertex_count
            order = automorphism_group(g).order()
            total = F(0)
            for bits in range(2**n):
                c = Colouring(tuple((bits >> v) & 1 for v in range(n)))
                total += F(colouring_stabiliser(g, c).order(), order)
            assert total / 2**n == expected_stabiliser_measure(g).value

    def test_vertex_cap(self):
        g = path_graph(4)
        with pytest.raises(CapExceededError):
            expected_stabiliser_measure(g, vertex_cap=3)
