import math

import pytest

from src.metrics.performance import MetricSample
from src.report.table import COLUMNS, ResultTable, summarize
from src.report.writer import emit_csv, emit_summary_csv, read_results, render_csv, summary_path

HEADER = "arch,n_t,n_r,k,m,p_t_dbw,drop,ase_bit_s_hz,p_txc_w,p_rxc_w,gee_bit_per_joule,flags"


def sample(arch="cm-fd", drop=0, ase=12.345678912345, flags=()):
    gee = float("nan") if math.isnan(ase) else ase * 1.7e7
    return MetricSample(arch=arch, n_t=100, n_r=30, k=10, m=1, p_t_dbw=0.0, drop=drop, ase=ase,
                        p_tx_c=16.843, p_rx_c=8.343, gee=gee, flags=tuple(flags))


class TestRenderCsv:
    def test_empty_table(self):
        text = render_csv(ResultTable(metadata={"seed": 3, "tool": "mmbeamsim"}))
        lines = text.splitlines()
        assert lines == ['# seed: 3', '# tool: "mmbeamsim"', HEADER]

    def test_one_sample(self):
        text = render_csv(ResultTable(samples=[sample()], metadata={"seed": 0}))
        data = [line for line in text.splitlines() if not line.startswith("#")]
        assert data[0] == HEADER
        assert len(data) == 2
        fields = data[1].split(",")
        assert len(fields) == 12
        assert fields[0] == "cm-fd"
        assert fields[7] == "12.3456789"
        assert fields[-1] == ""

    def test_nan_and_flags(self):
        text = render_csv(ResultTable(samples=[
            sample(ase=float("nan"), flags=("error:rank-collision",)),
            sample(arch="an", flags=("an-separation-fallback:user0", "an-separation-fallback:user4")),
        ]))
        rows = text.splitlines()[1:]
        assert rows[0].split(",")[7] == "nan"
        assert rows[0].endswith("error:rank-collision")
        assert rows[1].endswith("an-separation-fallback:user0;an-separation-fallback:user4")

    def test_columns(self):
        assert ",".join(COLUMNS) == HEADER


class TestFiles:
    def test_emit_and_read_back(self, tmp_path):
        samples = [sample(drop=d, ase=1.0 / (d + 3)) for d in range(4)]
        samples.append(sample(drop=4, ase=float("nan"), flags=("error:degenerate-channel",)))
        metadata = {"seed": 42, "config": {"drops": 5, "architectures": ["cm-fd"]}}
        destination = tmp_path / "out" / "sweep.csv"

        written = emit_csv(ResultTable(samples=samples, metadata=metadata), str(destination))
        assert written == str(destination)

        parsed_metadata, frame = read_results(written)
        assert parsed_metadata == metadata
        assert list(frame.columns) == COLUMNS
        assert len(frame) == 5
        for original, value in zip(samples[:4], frame["ase_bit_s_hz"][:4]):
            assert value == pytest.approx(original.ase, rel=1e-8)
        assert math.isnan(frame["ase_bit_s_hz"][4])
        assert frame["flags"][0] == ""
        assert frame["flags"][4] == "error:degenerate-channel"

    def test_summary_file(self, tmp_path):
        samples = [sample(drop=d, ase=float(d + 1)) for d in range(3)]
        samples.append(sample(drop=3, ase=float("nan"), flags=("error:numerical",)))
        table = ResultTable(samples=samples, metadata={"seed": 1})
        destination = tmp_path / "sweep.csv"

        path = emit_summary_csv(table, str(destination))
        assert path == str(tmp_path / "sweep_summary.csv")
        _, frame = read_results(path)
        row = frame.iloc[0]
        assert row["drops"] == 4
        assert row["flagged"] == 1
        assert row["ase_mean"] == pytest.approx(2.0)
        assert row["ase_sem"] == pytest.approx(1.0 / math.sqrt(3))

    def test_summary_path(self):
        assert str(summary_path("results/run.csv")).endswith("run_summary.csv")
        assert str(summary_path("results/run")).endswith("run_summary.csv")

    def test_unwritable_destination(self, tmp_path):
        blocker = tmp_path / "file.txt"
        blocker.write_text("x")
        with pytest.raises(OSError, match="file.txt"):
            emit_csv(ResultTable(metadata={}), str(blocker / "out.csv"))


def test_summarize_empty_frame():
    summary = ResultTable().summary()
    assert summary.empty
    assert "ase_mean" in summary.columns


def test_summarize_groups_by_point():
    samples = [sample(arch=a, drop=d, ase=float(d)) for a in ("cm-fd", "sw") for d in range(2)]
    summary = summarize(ResultTable(samples=samples).to_frame())
    assert list(summary["arch"]) == ["cm-fd", "sw"]
    assert list(summary["ase_mean"]) == [0.5, 0.5]
