"""Tests for position schemes: symmetric indices, alignment, allocation, text identity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ropelab import (
    ConfigError,
    CoordinateError,
    DimensionError,
    ParameterError,
    SchemeConfig,
    TokenCoordinate,
    VideoGrid,
    center_align,
    group_allocation,
    pair_positions,
    rotate_with_scheme,
    scheme_position,
    symmetric_indices,
    temporal_offset,
    text_position,
    vrope_position,
)

from oracles import vrope_position_ref


class TestSymmetricIndices:
    @pytest.mark.parametrize(
        "w,h,expected",
        [
            (0, 0, (0, 0, 0, 0)),
            (2, 1, (3, 1, -3, -1)),
            (1, 2, (3, -1, -3, 1)),
        ],
    )
    def test_examples(self, w, h, expected):
        assert symmetric_indices(TokenCoordinate(w, h, 0)) == expected

    @given(w=st.integers(0, 1000), h=st.integers(0, 1000))
    def test_antisymmetry(self, w, h):
        u = symmetric_indices(TokenCoordinate(w, h, 0))
        assert u.u1 + u.u3 == 0
        assert u.u2 + u.u4 == 0

    def test_degeneration_single_row(self):
        for w in range(64):
            assert symmetric_indices(TokenCoordinate(w, 0, 0)) == (w, w, -w, -w)

    def test_degeneration_single_column(self):
        for h in range(64):
            assert symmetric_indices(TokenCoordinate(0, h, 0)) == (h, -h, -h, h)


class TestCenterAlign:
    def test_center_is_isotropic(self):
        grid = VideoGrid(3, 3, 1)
        u = symmetric_indices(TokenCoordinate(1, 1, 0))
        assert center_align(u, grid, 0) == (2, 2, 2, 2)

    def test_corner(self):
        grid = VideoGrid(3, 3, 1)
        u = symmetric_indices(TokenCoordinate(0, 0, 0))
        assert center_align(u, grid, 0) == (0, 2, 4, 2)

    def test_with_offset(self):
        grid = VideoGrid(3, 3, 1)
        u = symmetric_indices(TokenCoordinate(2, 2, 0))
        assert center_align(u, grid, 10) == (14, 12, 10, 12)


class TestTemporalOffset:
    def test_one_frame_step(self):
        grid = VideoGrid(3, 3, 2)
        assert temporal_offset((2, 2, 2, 2), 1, grid) == (7, 7, 7, 7)

    def test_zero_is_identity(self):
        grid = VideoGrid(3, 3, 2)
        assert temporal_offset((0, 2, 4, 2), 0, grid) == (0, 2, 4, 2)

    def test_two_frame_steps(self):
        grid = VideoGrid(3, 3, 3)
        assert temporal_offset((0, 2, 4, 2), 2, grid) == (10, 12, 14, 12)

    def test_out_of_range(self):
        grid = VideoGrid(3, 3, 2)
        with pytest.raises(CoordinateError):
            temporal_offset((0, 0, 0, 0), 2, grid)
        with pytest.raises(CoordinateError):
            temporal_offset((0, 0, 0, 0), -1, grid)


class TestVropePosition:
    def test_small_grid_with_offset(self):
        grid = VideoGrid(2, 2, 1)
        assert vrope_position(TokenCoordinate(1, 0, 0), grid, 2) == (3, 4, 3, 2)

    def test_center_of_second_frame(self):
        grid = VideoGrid(3, 3, 2)
        assert vrope_position(TokenCoordinate(1, 1, 1), grid, 0) == (7, 7, 7, 7)

    def test_outside_grid(self):
        grid = VideoGrid(2, 2, 1)
        with pytest.raises(CoordinateError):
            vrope_position(TokenCoordinate(2, 0, 0), grid, 0)

    @settings(max_examples=200)
    @given(
        width=st.integers(1, 12),
        height=st.integers(1, 12),
        frames=st.integers(1, 12),
        p_start=st.integers(0, 50),
        data=st.data(),
    )
    def test_matches_reference_and_bounds(self, width, height, frames, p_start, data):
        grid = VideoGrid(width, height, frames)
        w = data.draw(st.integers(0, width - 1))
        h = data.draw(st.integers(0, height - 1))
        t = data.draw(st.integers(0, frames - 1))
        v = vrope_position(TokenCoordinate(w, h, t), grid, p_start)
        assert v == vrope_position_ref(w, h, t, width, height, p_start)
        lo = p_start + t * (height + width - 1)
        assert all(lo <= x <= lo + height + width - 2 for x in v)


class TestSchemePosition:
    def test_rope1d_raster(self):
        grid = VideoGrid(2, 2, 1)
        config = SchemeConfig("rope1d", d=8)
        assert scheme_position(config, TokenCoordinate(1, 0, 0), grid, 4) == (5,)

    def test_rope1d_frame_stride(self):
        grid = VideoGrid(3, 2, 2)
        config = SchemeConfig("rope1d", d=8)
        assert scheme_position(config, TokenCoordinate(0, 0, 1), grid, 0) == (6,)
        assert scheme_position(config, TokenCoordinate(2, 1, 1), grid, 0) == (11,)

    def test_rope3d_order_t_h_w(self):
        grid = VideoGrid(3, 3, 1)
        config = SchemeConfig("rope3d", d=8)
        assert scheme_position(config, TokenCoordinate(1, 2, 0), grid, 4) == (4, 6, 5)

    def test_rope2d_ignores_frame(self):
        grid = VideoGrid(3, 3, 4)
        config = SchemeConfig("rope2d", d=8)
        for t in range(4):
            assert scheme_position(config, TokenCoordinate(2, 1, t), grid, 5) == (7, 6)

    def test_rope_share_one_id_per_frame(self):
        grid = VideoGrid(8, 8, 5)
        config = SchemeConfig("rope_share", d=8)
        ids = {
            scheme_position(config, TokenCoordinate(w, h, 3), grid, 10)
            for w in range(8)
            for h in range(8)
        }
        assert ids == {(14,)}  # p + 1 + t

    def test_rope_compact_video_matches_rope3d(self):
        grid = VideoGrid(4, 3, 2)
        compact = SchemeConfig("rope_compact", d=12)
        rope3d = SchemeConfig("rope3d", d=12)
        for t in range(2):
            for h in range(3):
                for w in range(4):
                    coord = TokenCoordinate(w, h, t)
                    assert scheme_position(compact, coord, grid, 6) == scheme_position(
                        rope3d, coord, grid, 6
                    )

    def test_invalid_coordinate(self):
        grid = VideoGrid(2, 2, 2)
        for scheme in ("rope1d", "rope2d", "rope3d", "rope_share", "rope_compact", "vrope"):
            config = SchemeConfig(scheme, d=8)
            with pytest.raises(CoordinateError):
                scheme_position(config, TokenCoordinate(0, 2, 0), grid, 0)


class TestSchemeConfig:
    def test_vrope_requires_divisible_pairs(self):
        SchemeConfig("vrope", d=8)
        with pytest.raises(ConfigError):
            SchemeConfig("vrope", d=6)
        with pytest.raises(ConfigError):
            SchemeConfig("vrope", d=12)

    def test_rope2d_requires_even_pairs(self):
        SchemeConfig("rope2d", d=8)
        with pytest.raises(ConfigError):
            SchemeConfig("rope2d", d=6)

    def test_unknown_scheme(self):
        with pytest.raises(ConfigError):
            SchemeConfig("rope5d", d=8)

    def test_dimension_and_base_validation(self):
        with pytest.raises(DimensionError):
            SchemeConfig("rope1d", d=7)
        with pytest.raises(ParameterError):
            SchemeConfig("rope1d", d=8, base=0.0)

    def test_partition_sum_must_match(self):
        SchemeConfig("rope3d", d=16, partition=(4, 2, 2))
        with pytest.raises(ConfigError):
            SchemeConfig("rope3d", d=16, partition=(4, 2, 3))
        with pytest.raises(ConfigError):
            SchemeConfig("rope3d", d=16, partition=(6, 2))

    def test_partition_rejected_for_fixed_schemes(self):
        for scheme in ("rope1d", "rope_share", "vrope"):
            with pytest.raises(ConfigError):
                SchemeConfig(scheme, d=8, partition=(2, 2))


class TestGroupAllocation:
    def test_vrope_interleaved(self):
        assert group_allocation(SchemeConfig("vrope", d=8)).tolist() == [0, 1, 2, 3]
        assert group_allocation(SchemeConfig("vrope", d=16)).tolist() == [0, 1, 2, 3] * 2

    def test_vrope_pair_five_reads_second_dim(self):
        assert group_allocation(SchemeConfig("vrope", d=16))[5] == 1

    def test_rope3d_equal_thirds(self):
        alloc = group_allocation(SchemeConfig("rope3d", d=12))
        assert alloc.tolist() == [0, 0, 1, 1, 2, 2]

    def test_rope3d_remainder_to_t(self):
        alloc = group_allocation(SchemeConfig("rope3d", d=16))
        assert alloc.tolist() == [0, 0, 0, 0, 1, 1, 2, 2]

    def test_rope3d_explicit_partition(self):
        alloc = group_allocation(SchemeConfig("rope3d", d=16, partition=(2, 3, 3)))
        assert alloc.tolist() == [0, 0, 1, 1, 1, 2, 2, 2]

    def test_rope2d_halves(self):
        alloc = group_allocation(SchemeConfig("rope2d", d=8))
        assert alloc.tolist() == [0, 0, 1, 1]

    def test_single_group_schemes(self):
        for scheme in ("rope1d", "rope_share"):
            assert group_allocation(SchemeConfig(scheme, d=8)).tolist() == [0, 0, 0, 0]


class TestTextPosition:
    def test_isotropic(self):
        assert text_position(7, SchemeConfig("vrope", d=8)) == (7, 7, 7, 7)
        assert text_position(0, SchemeConfig("rope3d", d=8)) == (0, 0, 0)
        assert text_position(3, SchemeConfig("rope1d", d=8)) == (3,)

    @pytest.mark.parametrize("scheme", ["rope2d", "rope3d", "rope_share", "rope_compact", "vrope"])
    @pytest.mark.parametrize("d", [8, 64])
    def test_text_rotation_matches_plain_rope(self, scheme, d):
        rng = np.random.default_rng(d)
        config = SchemeConfig(scheme, d=d)
        plain = SchemeConfig("rope1d", d=d)
        for _ in range(50):
            x = rng.standard_normal(d)
            m = int(rng.integers(0, 5000))
            expected = rotate_with_scheme(x, (m,), plain)
            got = rotate_with_scheme(x, text_position(m, config), config)
            assert np.max(np.abs(got - expected)) < 1e-9

    def test_pair_positions_shape_validation(self):
        config = SchemeConfig("vrope", d=8)
        with pytest.raises(DimensionError):
            pair_positions((1, 2, 3), config)
        assert pair_positions((5, 6, 7, 8), config).tolist() == [5.0, 6.0, 7.0, 8.0]


class TestVideoGrid:
    def test_rejects_zero_sizes(self):
        with pytest.raises(ParameterError):
            VideoGrid(0, 2, 2)
        with pytest.raises(ParameterError):
            VideoGrid(2, 2, 0)

    def test_token_counts(self):
        grid = VideoGrid(3, 2, 4)
        assert grid.tokens_per_frame == 6
        assert grid.token_count == 24
