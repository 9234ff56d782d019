"""Inequality verifiers: block bounds, constant estimators, the grid
pigeonhole, and spreading witnesses."""

import random
from fractions import Fraction

import pytest

from banachlab.dual import dual_norm
from banachlab.errors import CapExceeded, InputError
from banachlab.norms import NormEngine
from banachlab.spaces import parse_space
from banachlab.vectors import SparseVec, parse_vector, unit
from banachlab.verifiers import (
    GridVec,
    c0_sampled_report,
    estimate_cm,
    estimate_dm,
    hat_sampled_report,
    hat_select,
    random_c0_instance,
    random_hat_instance,
    select_c0_subsequence,
    spreading_report,
    spreading_witness,
    tt_space,
    verify_block_c0,
    verify_lemma_l2,
)

F = Fraction


class TestGridVec:
    def test_rectangle_projection_idempotent(self):
        g = GridVec(parse_vector("1.2:1,3.4:1/2,5.1:-1"))
        rect = g.p_rect(range(1, 4), range(1, 5))
        assert rect.p_rect(range(1, 4), range(1, 5)) == rect
        assert g.p_rect(range(1, 100), range(1, 100)) == g

    def test_row_projection(self):
        g = GridVec(parse_vector("1.2:1,3.4:1/2"))
        assert g.p_row(3).cells() == [(3, 4)]

    def test_depth_guard(self):
        with pytest.raises(InputError):
            GridVec(parse_vector("1:1"))


class TestBlockC0:
    def test_single_block_ratio_one(self):
        report = verify_block_c0(max_support=3, variant="strict")
        assert report.max_ratio >= 1

    def test_strict_bound_attained_by_e2_e3(self):
        assert dual_norm(parse_vector("2:1,3:1")).value == 2
        report = verify_block_c0(max_support=6, variant="strict")
        assert report.max_ratio == 2
        assert report.passed is True
        blocks = report.witness["blocks"]
        assert [sorted(b) for b in blocks] == [[2], [3]]

    def test_relaxed_bound_three(self):
        report = verify_block_c0(max_support=7, variant="relaxed")
        assert report.max_ratio <= 3
        assert report.passed is True

    def test_variant_validation(self):
        with pytest.raises(InputError):
            verify_block_c0(max_support=4, variant="loose")


class TestEstimateDM:
    def test_singleton_families(self):
        report = estimate_dm(1, 4)
        assert report.max_ratio == 1
        assert report.passed == "reported"

    def test_successive_pair_reaches_two(self):
        report = estimate_dm(2, 6)
        assert report.max_ratio >= 2

    def test_interleaved_family_measured(self):
        # the x_1 on {2,4}, x_2 on {3,5} configuration is part of the
        # search space; compute its ratio directly from the dual norms
        union = dual_norm(parse_vector("2:1,3:1,4:1,5:1")).value
        parts = max(
            dual_norm(parse_vector("2:1,4:1")).value,
            dual_norm(parse_vector("3:1,5:1")).value,
        )
        report = estimate_dm(2, 5)
        assert report.max_ratio >= union / parts

    def test_monotone_in_support(self):
        small = estimate_dm(2, 5).max_ratio
        large = estimate_dm(2, 7).max_ratio
        assert small <= large


class TestEstimateCM:
    def test_reports_at_least_one(self):
        report = estimate_cm(max_support=6, samples=25, seed=9)
        assert report.max_ratio >= 1
        assert report.passed == "reported"

    def test_pair_ratio_is_one(self):
        engine = NormEngine(parse_space("M"))
        assert engine.norm(parse_vector("2:1,3:1")) == 1

    def test_deterministic_under_seed(self):
        a = estimate_cm(max_support=5, samples=10, seed=123)
        b = estimate_cm(max_support=5, samples=10, seed=123)
        assert a.to_json() == b.to_json()

    def test_support_precondition(self):
        with pytest.raises(CapExceeded):
            estimate_cm(max_support=9)


class TestLemmaL2:
    def test_k1_single_normalized_vector(self):
        report = verify_lemma_l2(1, [1, 4], samples=8, seed=3)
        assert report.max_ratio <= 1
        assert report.passed == "reported"

    def test_k2_unit_vectors(self):
        report = verify_lemma_l2(2, [2, 4, 8], samples=10, seed=4)
        assert report.max_ratio > 0
        assert report.passed == "reported"

    def test_cut_validation(self):
        with pytest.raises(InputError):
            verify_lemma_l2(2, [2, 4], samples=1)
        with pytest.raises(InputError):
            verify_lemma_l2(2, [3, 4, 8], samples=1)
        with pytest.raises(InputError):
            verify_lemma_l2(2, [2, 8, 4], samples=1)


class TestHatSelect:
    def test_k1_trivial(self):
        w = [F(1, 2) * unit((1, 2))]
        indices, cell, report = hat_select(1, w)
        assert indices == [1]
        assert report.passed is True

    def test_all_equal_vectors_select_first_two(self):
        base = parse_vector("1.3:1/2,2.4:1/2")
        engine = NormEngine(tt_space())
        assert engine.norm(base) <= 1
        vecs = []
        for j in range(8):
            shift = 2 * j
            vecs.append(
                SparseVec({(r, c + shift): v for (r, c), v in base.items()})
            )
        indices, cell, report = hat_select(2, vecs)
        assert indices == [1, 2]
        assert report.passed is True
        assert report.max_ratio <= 2

    def test_random_instances(self):
        rng = random.Random(51)
        for _ in range(5):
            instance = random_hat_instance(2, rng)
            indices, cell, report = hat_select(2, instance)
            assert len(indices) == 2 and indices[0] < indices[1]
            assert report.passed is True

    def test_wrong_length(self):
        with pytest.raises(InputError):
            hat_select(2, [unit((1, 5))])

    def test_support_outside_rows(self):
        rng = random.Random(52)
        instance = random_hat_instance(2, rng)
        bad = list(instance)
        bad[0] = bad[0] + F(1, 10) * unit((3, 100))
        with pytest.raises(InputError):
            hat_select(2, bad)

    def test_band_violation(self):
        rng = random.Random(53)
        instance = random_hat_instance(2, rng)
        bad = list(instance)
        bad[-1] = unit((1, 3))  # reuses the first band
        with pytest.raises(InputError):
            hat_select(2, bad)

    def test_sampled_report(self):
        report = hat_sampled_report(2, samples=10, seed=88)
        assert report.passed is True
        assert report.max_ratio <= 2
        again = hat_sampled_report(2, samples=10, seed=88)
        assert report.to_json() == again.to_json()


class TestSelectC0:
    def test_k1(self):
        x = [unit((2, 2))]
        indices, (c_low, c_up), report = select_c0_subsequence(1, x)
        assert indices == [1]
        assert (c_low, c_up) == (1, 1)

    def test_unit_blocks(self):
        vecs = []
        col = 3
        for _ in range(8):
            vecs.append(unit((1, col)))
            col += 2
        indices, (c_low, c_up), report = select_c0_subsequence(2, vecs)
        assert c_low >= 1
        assert report.passed == "reported"

    def test_random_instances(self):
        rng = random.Random(61)
        instance = random_c0_instance(2, rng)
        indices, (c_low, c_up), report = select_c0_subsequence(2, instance)
        assert c_low >= 1
        assert len(indices) == 2

    def test_normalization_required(self):
        vecs = [F(1, 2) * unit((1, 3 + 2 * j)) for j in range(8)]
        with pytest.raises(InputError):
            select_c0_subsequence(2, vecs)

    def test_sampled_report_deterministic(self):
        a = c0_sampled_report(2, samples=3, seed=7)
        b = c0_sampled_report(2, samples=3, seed=7)
        assert a.to_json() == b.to_json()
        assert a.passed == "reported"


class TestSpreading:
    def test_k1(self):
        assert spreading_witness(parse_space("T"), "unit", 1, 5) == (1, 1)

    def test_tsirelson_block_units(self):
        c_low, c_up = spreading_witness(parse_space("T"), "unit", 4, 3)
        assert (c_low, c_up) == (1, 2)

    def test_truncated_tower_within_six(self):
        space = parse_space("sum(T*,indexed(sum(lpn(1,#),repeat(T*))))")
        for k in (1, 2, 3):
            c_low, c_up = spreading_witness(space, "unit", k, 4)
            assert c_up / c_low <= 6

    def test_doubleton_family(self):
        c_low, c_up = spreading_witness(parse_space("T*"), "doubleton", 2, 2)
        assert c_low >= 1

    def test_unknown_family(self):
        with pytest.raises(InputError):
            spreading_witness(parse_space("T"), "mystery", 2, 4)

    def test_report(self):
        report = spreading_report(parse_space("T"), "unit", 2, 4, space_text="T")
        assert report.passed == "reported"
        assert report.max_ratio >= 1
