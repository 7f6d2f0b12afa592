import math
from dataclasses import replace

import numpy as np
import pytest

import src.core.pipeline as pipeline_module
from src.core.config import SimConfig
from src.core.errors import ConfigurationError
from src.core.pipeline import (
    SimulationPipeline,
    SweepPoint,
    make_rng,
    optimal_threads,
    run_drop,
    run_sweep,
    sweep_points,
)
from src.report.writer import render_csv


@pytest.fixture
def small_config() -> SimConfig:
    return SimConfig(k_users=3, m_streams=[1], n_t_list=[16, 32], n_r_list=[4], drops=2,
                     base_seed=11, threads=1)


def same_metric(a: float, b: float) -> bool:
    return (math.isnan(a) and math.isnan(b)) or a == b


class TestSweepPoints:
    def test_order_and_indices(self):
        config = SimConfig(m_streams=[1, 3], n_t_list=[16, 32], n_r_list=[4, 8])
        points = sweep_points(config)
        assert [p.index for p in points] == list(range(8))
        assert points[0] == SweepPoint(index=0, n_t=16, n_r=4, m=1)
        assert points[1] == SweepPoint(index=1, n_t=16, n_r=8, m=1)
        assert points[-1] == SweepPoint(index=7, n_t=32, n_r=8, m=3)


class TestRng:
    def test_deterministic(self):
        a = make_rng(5, 2, 7).standard_normal(4)
        b = make_rng(5, 2, 7).standard_normal(4)
        np.testing.assert_array_equal(a, b)

    def test_streams_differ(self):
        base = make_rng(5, 2, 7).standard_normal(4)
        assert not np.array_equal(base, make_rng(5, 2, 8).standard_normal(4))
        assert not np.array_equal(base, make_rng(5, 3, 7).standard_normal(4))
        assert not np.array_equal(base, make_rng(6, 2, 7).standard_normal(4))

    def test_optimal_threads(self):
        assert optimal_threads() >= 1


class TestRunDrop:
    def test_one_sample_per_architecture(self, small_config):
        point = sweep_points(small_config)[0]
        samples = run_drop(small_config, point, 0)
        assert [s.arch for s in samples] == small_config.architectures
        for s in samples:
            assert (s.n_t, s.n_r, s.k, s.m, s.drop) == (16, 4, 3, 1, 0)
            assert s.valid
            assert s.ase >= 0
            assert s.gee >= 0

    def test_bit_identical(self, small_config):
        point = sweep_points(small_config)[1]
        first = run_drop(small_config, point, 1)
        second = run_drop(small_config, point, 1)
        for a, b in zip(first, second):
            assert same_metric(a.ase, b.ase)
            assert same_metric(a.gee, b.gee)
            assert a.flags == b.flags

    def test_shared_channels(self, small_config, monkeypatch):
        seen = []
        original = pipeline_module.synthesize

        def recording(arch, channels, m, settings=None, reference=None):
            seen.append(hash(b"".join(ch.h.tobytes() for ch in channels)))
            return original(arch, channels, m, settings, reference)

        monkeypatch.setattr(pipeline_module, "synthesize", recording)
        run_drop(small_config, sweep_points(small_config)[0], 0)
        assert len(seen) == len(small_config.architectures)
        assert len(set(seen)) == 1

    def test_channels_depend_on_drop(self, small_config):
        pipeline = SimulationPipeline(small_config)
        point = sweep_points(small_config)[0]
        first = pipeline.draw_channels(point, 0)
        again = pipeline.draw_channels(point, 0)
        other = pipeline.draw_channels(point, 1)
        np.testing.assert_array_equal(first[0].h, again[0].h)
        assert not np.array_equal(first[0].h, other[0].h)

    def test_infeasible_point_flagged(self):
        config = SimConfig(architectures=["cm-fd", "an"], k_users=3, m_streams=[1],
                           n_t_list=[2], n_r_list=[4], drops=1, threads=1)
        cm, an = run_drop(config, sweep_points(config)[0], 0)
        assert math.isnan(cm.ase) and math.isnan(cm.gee)
        assert cm.flags == ("error:configuration",)
        assert not cm.valid
        assert cm.p_tx_c > 0 and cm.p_rx_c > 0
        assert an.valid

    def test_gee_consistency(self, small_config):
        config = small_config
        pipeline = SimulationPipeline(config)
        for s in pipeline.run_drop(sweep_points(config)[0], 0):
            denominator = config.power.eta * pipeline.p_t + s.p_tx_c + s.k * s.p_rx_c
            assert s.gee * denominator == pytest.approx(config.bandwidth_hz * s.ase, rel=1e-6)


class TestRunSweep:
    def test_row_count_and_order(self, small_config):
        table = run_sweep(small_config)
        assert len(table) == 6 * 2 * 2
        frame = table.to_frame()
        assert list(frame["n_t"][:12]) == [16] * 12
        assert list(frame["drop"][:6]) == [0] * 6
        assert list(frame["arch"][:6]) == small_config.architectures

    def test_metadata(self, small_config):
        metadata = run_sweep(small_config).metadata
        assert metadata["seed"] == 11
        assert metadata["tool"].startswith("mmbeamsim")
        assert "threads" not in metadata["config"]
        assert metadata["power_constants"]["p_bb"] == 243.0
        assert metadata["noise_variance_w"] == pytest.approx(3.97e-12, rel=2e-3)

    def test_byte_identical_across_thread_counts(self, small_config):
        single = render_csv(run_sweep(small_config))
        parallel = render_csv(run_sweep(replace(small_config, threads=4)))
        assert single == parallel

    def test_summary(self, small_config):
        summary = run_sweep(small_config).summary()
        assert len(summary) == 6 * 2
        assert set(summary["drops"]) == {2}
        assert set(summary["flagged"]) == {0}

    def test_empty_architecture_list(self, small_config):
        with pytest.raises(ConfigurationError):
            replace(small_config, architectures=[])

    def test_pipeline_info(self, small_config):
        pipeline = SimulationPipeline(small_config)
        pipeline.run_sweep()
        info = pipeline.get_pipeline_info()
        assert info["sweep_points"] == 2
        assert info["threads"] == 1
        assert info["processing_stats"]["sweep"] >= 0
