"""Verification corpora: completeness, canonicity, and equivariance."""

from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from milnorbook import (
    SuiteSpec,
    automorphism_group,
    is_milnor_fillable,
    iter_suite,
    labeled_connected_count,
    minimal_divisor,
)

from oracles import full_suite, nd_suite


class TestEnumeration:
    def test_negative_definite_class_counts(self):
        """Regression pin: sizes of the default verification family."""
        by_rank = {}
        for g in nd_suite():
            by_rank[g.vertex_count] = by_rank.get(g.vertex_count, 0) + 1
        assert by_rank == {1: 8, 2: 51, 3: 690, 4: 13084}
        assert len(nd_suite()) == 13833

    def test_definite_classes_are_a_subset(self):
        assert len(nd_suite()) < len(full_suite())
        assert all(is_milnor_fillable(g) for g in nd_suite())

    def test_no_weight_window_violations(self):
        spec = SuiteSpec()
        for g in full_suite():
            assert g.vertex_count <= spec.max_vertices
            assert all(e in spec.euler_values for e in g.euler)
            assert all(gg in spec.genus_values for gg in g.genus)
            assert all(k <= spec.max_edge_multiplicity
                       for k in g.edge_multiplicities().values())

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_orbit_sizes_account_for_every_labeled_graph(self, r):
        """Sum of orbit sizes r!/|Aut| equals the direct labeled count.

        Exact equality certifies simultaneously that no isomorphism class
        is missing and that no class is enumerated twice.
        """
        spec = SuiteSpec()
        classes = [
            g
            for g in iter_suite(spec, negative_definite_only=False)
            if g.vertex_count == r
        ]
        total = sum(
            factorial(r) // len(automorphism_group(g)) for g in classes
        )
        assert total == labeled_connected_count(r, spec)

    def test_orbit_size_identity_on_four_vertices_small_window(self):
        spec = SuiteSpec(
            max_vertices=4,
            euler_values=(-2, -1),
            genus_values=(0,),
            max_edge_multiplicity=2,
        )
        classes = [
            g
            for g in iter_suite(spec, negative_definite_only=False)
            if g.vertex_count == 4
        ]
        total = sum(
            factorial(4) // len(automorphism_group(g)) for g in classes
        )
        assert total == labeled_connected_count(4, spec)


class TestEquivariance:
    @given(st.data())
    @settings(max_examples=40)
    def test_minimal_divisor_is_relabeling_equivariant(self, data):
        """sigma(minimal divisor of g) = minimal divisor of sigma(g).

        This is why checking one representative per class covers the whole
        labeled family.
        """
        pool = [g for g in nd_suite() if g.vertex_count <= 3]
        g = data.draw(st.sampled_from(pool))
        sigma = data.draw(st.permutations(list(range(g.vertex_count))))
        divisor = minimal_divisor(g).multiplicities
        relabeled = minimal_divisor(g.relabel(sigma)).multiplicities
        pushed = [0] * len(divisor)
        for i, image in enumerate(sigma):
            pushed[image] = divisor[i]
        assert relabeled == tuple(pushed)

    @given(st.data())
    @settings(max_examples=40)
    def test_automorphism_count_is_relabeling_invariant(self, data):
        pool = [g for g in full_suite() if g.vertex_count <= 3]
        g = data.draw(st.sampled_from(pool))
        sigma = data.draw(st.permutations(list(range(g.vertex_count))))
        assert len(automorphism_group(g)) == len(
            automorphism_group(g.relabel(sigma))
        )
