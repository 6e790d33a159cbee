import math

import pytest

from polarsim.cli import main as cli_main
from polarsim.sim import CSV_HEADER, FerRecord, SimConfig, run_campaign, run_point


def _small_cfg(**kw):
    base = dict(n=6, K=32, decoder="sc", max_frames=400, max_frame_errors=0,
                seed=9, workers=2)
    base.update(kw)
    return SimConfig(**base)


class TestRunPoint:
    def test_high_snr_error_free(self):
        cfg = _small_cfg(max_frames=100)
        rec = run_point(cfg, 12.0)
        assert rec.fer == 0.0 and rec.frames == 100

    def test_noiseless_rate_one(self):
        cfg = SimConfig(n=2, K=4, decoder="sc", max_frames=50,
                        max_frame_errors=0, seed=1, workers=1)
        rec = run_point(cfg, math.inf)
        assert rec.fer == 0.0

    def test_same_seed_identical(self):
        cfg = _small_cfg()
        assert run_point(cfg, 3.0) == run_point(cfg, 3.0)

    def test_batch_size_does_not_change_results(self):
        a = run_point(_small_cfg(batch_rounds=7), 2.0)
        b = run_point(_small_cfg(batch_rounds=50), 2.0)
        assert (a.frames, a.frame_errors, a.bit_errors) == \
               (b.frames, b.frame_errors, b.bit_errors)

    def test_early_stop_counts_through_stopping_frame(self):
        cfg = _small_cfg(max_frames=100000, max_frame_errors=20)
        rec = run_point(cfg, 0.0)
        assert rec.frame_errors == 20
        # rerunning without the error cap but with max_frames = observed
        # frame count reproduces the exact same tallies
        cfg2 = _small_cfg(max_frames=rec.frames, max_frame_errors=0)
        rec2 = run_point(cfg2, 0.0)
        assert (rec2.frames, rec2.frame_errors, rec2.bit_errors) == \
               (rec.frames, rec.frame_errors, rec.bit_errors)

    def test_all_decoders_run(self):
        for decoder in ("sc", "ssc", "scl", "cascl", "sscl"):
            kw = dict(decoder=decoder, max_frames=40, list_size=2,
                      stage1_keep=2, symbol_bits=2)
            if decoder == "cascl":
                kw["crc_width"] = 8
            rec = run_point(_small_cfg(**kw), 4.0)
            assert rec.frames == 40

    def test_worker_streams_give_compatible_estimates(self):
        # different worker counts are different but valid estimators: their
        # 95% confidence intervals overlap on a common operating point
        cfgs = [_small_cfg(workers=w, max_frames=4000, seed=17) for w in (1, 4)]
        intervals = []
        for cfg in cfgs:
            rec = run_point(cfg, 1.0)
            half = 1.96 * math.sqrt(rec.fer * (1 - rec.fer) / rec.frames)
            intervals.append((rec.fer - half, rec.fer + half))
        (lo1, hi1), (lo2, hi2) = intervals
        assert max(lo1, lo2) <= min(hi1, hi2)


class TestRunCampaign:
    def test_sweep_point_count(self):
        cfg = _small_cfg(snr_start=1.0, snr_step=0.5, snr_stop=2.0,
                         max_frames=30)
        records = run_campaign(cfg, log=lambda msg: None)
        assert [r.snr_db for r in records] == [1.0, 1.5, 2.0]

    def test_fer_monotone_within_tolerance(self):
        cfg = _small_cfg(snr_start=0.0, snr_step=2.0, snr_stop=4.0,
                         max_frames=2000, seed=21)
        records = run_campaign(cfg, log=lambda msg: None)
        for a, b in zip(records, records[1:]):
            sigma = math.sqrt(
                a.fer * (1 - a.fer) / a.frames + b.fer * (1 - b.fer) / b.frames)
            assert b.fer <= a.fer + 2 * sigma + 1e-12

    def test_csv_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            cfg = _small_cfg(snr_start=2.0, snr_step=1.0, snr_stop=3.0,
                             max_frames=60, out=str(out))
            run_campaign(cfg, log=lambda msg: None)
        assert out1.read_bytes() == out2.read_bytes()
        assert (tmp_path / "a.csv.meta").read_text() \
            .replace("a.csv", "X") != ""

    def test_csv_header_and_rows(self, tmp_path):
        out = tmp_path / "r.csv"
        cfg = _small_cfg(snr_start=3.0, snr_step=0.0, snr_stop=3.0,
                         max_frames=50, out=str(out))
        records = run_campaign(cfg, log=lambda msg: None)
        lines = out.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + len(records)
        fields = lines[1].split(",")
        assert len(fields) == 7
        assert int(fields[1]) == 50

    def test_metadata_digest_present(self, tmp_path):
        out = tmp_path / "r.csv"
        cfg = _small_cfg(max_frames=20, out=str(out), snr_start=3.0,
                         snr_step=0.0, snr_stop=3.0)
        run_campaign(cfg, log=lambda msg: None)
        meta = (tmp_path / "r.csv.meta").read_text()
        assert "frozen_set_sha256" in meta
        assert "decoder = sc" in meta

    def test_paired_scl_sscl_parity_small(self):
        # symbol-based and bit-based list decoding agree within Monte Carlo
        # noise on a shared-seed campaign (desk-scale parity check)
        n_frames = 3000
        fers = {}
        for decoder in ("scl", "sscl"):
            cfg = SimConfig(n=6, K=32, decoder=decoder, symbol_bits=4,
                            list_size=4, stage1_keep=4, max_frames=n_frames,
                            max_frame_errors=0, seed=33, workers=2)
            fers[decoder] = run_point(cfg, 2.0)
        a, b = fers["scl"], fers["sscl"]
        se = math.sqrt(a.fer * (1 - a.fer) / a.frames
                       + b.fer * (1 - b.fer) / b.frames)
        assert abs(a.fer - b.fer) <= 2 * se + 1e-12


class TestFerRecord:
    def test_counts_to_rates(self):
        rec = FerRecord.from_counts(2.0, 100, 7, 21, 16, 1.5)
        assert rec.fer == pytest.approx(0.07)
        assert rec.ber == pytest.approx(21 / 1600)
        assert rec.wall_seconds == 1.5

    def test_csv_row_excludes_timing(self):
        rec = FerRecord.from_counts(2.0, 100, 7, 21, 16, 1.5)
        assert rec.csv_row().endswith(",0")


class TestConfigValidation:
    def test_rejects_unknown_decoder(self):
        with pytest.raises(ValueError):
            SimConfig(decoder="viterbi")

    def test_rejects_bad_sweep(self):
        with pytest.raises(ValueError):
            SimConfig(snr_start=3.0, snr_stop=1.0)


class TestCli:
    def test_construct_emits_frozen_set(self, capsys):
        assert cli_main(["construct", "--n", "8", "--k", "4"]) == 0
        out = capsys.readouterr().out.strip().split("\n")
        assert out == ["0", "1", "2", "4"]

    def test_cost_table(self, capsys, tmp_path):
        csv = tmp_path / "cost.csv"
        assert cli_main(["cost", "--M", "4", "--L", "8", "--q", "4",
                         "--csv", str(csv)]) == 0
        out = capsys.readouterr().out
        assert "48" in out and "24" in out
        lines = csv.read_text().strip().split("\n")
        assert lines[0] == "quantity,value,label"
        assert len(lines) == 7

    def test_run_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "fer.csv"
        rc = cli_main([
            "run", "--n", "16", "--k", "8", "--decoder", "scl", "--list", "2",
            "--snr", "4.0", "--frames", "40", "--max-errors", "0",
            "--seed", "5", "--workers", "2", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER and len(lines) == 2

    def test_run_stdout_when_no_out(self, capsys):
        rc = cli_main([
            "run", "--n", "16", "--k", "8", "--decoder", "sc",
            "--snr", "5.0", "--frames", "20", "--max-errors", "0"])
        assert rc == 0
        out = capsys.readouterr().out
        assert CSV_HEADER in out

    def test_block_length_must_be_power_of_two(self, capsys):
        with pytest.raises(SystemExit):
            cli_main(["construct", "--n", "1000", "--k", "500"])
        capsys.readouterr()

    def test_run_sscl_flags(self, tmp_path):
        out = tmp_path / "s.csv"
        rc = cli_main([
            "run", "--n", "16", "--k", "8", "--decoder", "sscl",
            "--symbol-bits", "4", "--list", "4", "--q", "2",
            "--snr", "4.0", "--frames", "30", "--max-errors", "0",
            "--out", str(out)])
        assert rc == 0
