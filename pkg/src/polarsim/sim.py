"""Monte Carlo FER/BER campaigns: frame generation, decoding, aggregation.

Frames are distributed round-robin over `workers` logical streams, each
backed by its own SeedSequence-spawned generator, and processed in
vectorized batches of whole rounds. The global frame order (round-major,
worker-minor) is what early stopping is defined on: the run counts every
frame up to and including the frame that reaches the error budget, so the
estimator is the standard unbiased fixed-stopping-rule one. Results are
byte-reproducible for identical configurations: the CSV's wall_seconds
column is written as 0 (measured time lives on the FerRecord and the
console log; file output must not depend on the clock).
"""

from __future__ import annotations

import hashlib
import math
import sys
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import initial_metrics, modulate, noise_sigma2
from .codec import attach_crc, crc16_ccitt, encode_bits, scatter_info_batch
from .construction import construct_code, partition_symbols
from .sc import sc_decode_batch, symbol_sc_decode_batch
from .scl import ca_scl_decode_batch, scl_decode_batch, symbol_scl_decode_batch

DECODERS = ("sc", "ssc", "scl", "cascl", "sscl")

CSV_HEADER = "snr_db,frames,frame_errors,bit_errors,fer,ber,wall_seconds"


@dataclass(frozen=True)
class SimConfig:
    """One simulation campaign: code, decoder, sweep and stopping rules."""

    n: int = 10
    K: int = 512
    decoder: str = "scl"
    symbol_bits: int = 4
    list_size: int = 4
    stage1_keep: int = 4
    snr_start: float = 1.0
    snr_step: float = 0.5
    snr_stop: float = 3.0
    max_frames: int = 10000
    max_frame_errors: int = 100
    seed: int = 0
    workers: int = 1
    out: str | None = None
    design_snr_db: float = 0.0
    frozen_file: str | None = None
    crc_width: int = 0
    crc_poly: int | None = None  # None: standard polynomial for the width
    batch_rounds: int = 0  # 0 = auto

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.snr_stop < self.snr_start:
            raise ValueError("snr_stop must be >= snr_start")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.symbol_bits < 1 or (self.symbol_bits & (self.symbol_bits - 1)):
            raise ValueError("symbol_bits must be a power of two")

    def snr_points(self):
        if self.snr_step <= 0:
            return [self.snr_start]
        count = int(math.floor((self.snr_stop - self.snr_start)
                               / self.snr_step + 1e-9)) + 1
        return [self.snr_start + i * self.snr_step for i in range(count)]

    def crc_spec(self):
        if self.crc_width == 0:
            return None
        poly = self.crc_poly
        if poly is None:
            defaults = {4: 0x3, 8: 0x07, 12: 0x80F, 16: 0x1021,
                        24: 0x864CFB, 32: 0x04C11DB7}
            if self.crc_width not in defaults:
                raise ValueError(
                    f"no default polynomial for width {self.crc_width}; "
                    f"set crc_poly")
            poly = defaults[self.crc_width]
        return replace(crc16_ccitt(), width=self.crc_width, poly=poly,
                       init=(1 << self.crc_width) - 1)

    def build_code(self):
        method = "file" if self.frozen_file else "bhattacharyya"
        return construct_code(self.n, self.K, design_snr_db=self.design_snr_db,
                              method=method, frozen_file=self.frozen_file,
                              crc=self.crc_spec())


@dataclass(frozen=True)
class FerRecord:
    """One simulation result row; wall time is telemetry, not a result."""

    snr_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    wall_seconds: float = field(compare=False)

    @classmethod
    def from_counts(cls, snr_db, frames, frame_errors, bit_errors,
                    payload_bits, wall_seconds):
        return cls(snr_db=snr_db, frames=frames, frame_errors=frame_errors,
                   bit_errors=bit_errors, fer=frame_errors / frames,
                   ber=bit_errors / (frames * payload_bits),
                   wall_seconds=wall_seconds)

    def csv_row(self):
        """Deterministic CSV serialization (timing column fixed at zero)."""
        return (f"{self.snr_db:.6g},{self.frames},{self.frame_errors},"
                f"{self.bit_errors},{self.fer:.10e},{self.ber:.10e},0")


def _make_decoder(cfg, code):
    kind = cfg.decoder
    if kind == "sc":
        return lambda m: sc_decode_batch(code, m)
    if kind == "ssc":
        part = partition_symbols(code, cfg.symbol_bits.bit_length() - 1)
        return lambda m: symbol_sc_decode_batch(code, part, m)
    if kind == "scl":
        def decode(m):
            hist, pm, alpha = scl_decode_batch(code, m, cfg.list_size)
            best = np.argmax(pm[:, :alpha], axis=1)
            return hist[np.arange(m.shape[0]), best]
        return decode
    if kind == "cascl":
        return lambda m: ca_scl_decode_batch(code, m, cfg.list_size)
    if kind == "sscl":
        part = partition_symbols(code, cfg.symbol_bits.bit_length() - 1)

        def decode(m):
            hist, pm, alpha = symbol_scl_decode_batch(
                code, part, m, cfg.list_size, cfg.stage1_keep)
            best = np.argmax(pm[:, :alpha], axis=1)
            return hist[np.arange(m.shape[0]), best]
        return decode
    raise ValueError(f"unknown decoder {kind!r}")


def _auto_rounds(cfg, code):
    if cfg.batch_rounds > 0:
        return cfg.batch_rounds
    budget = (1 << 23) // max(code.N * max(cfg.list_size, 1), 1)
    frames = max(cfg.workers, min(128, budget))
    return max(1, frames // cfg.workers)


def run_point(cfg, snr_db, code=None):
    """Estimate FER/BER at one SNR point.

    Deterministic for a given (cfg, snr_db): worker streams are spawned from
    SeedSequence(seed, worker) and consumed in a fixed round order, so the
    result is independent of batch sizing and identical across runs.
    """
    if code is None:
        code = cfg.build_code()
    payload_bits = code.payload_bits
    rate = payload_bits / code.N
    sigma2 = noise_sigma2(snr_db, rate)
    metric_sigma2 = sigma2 if sigma2 > 0 else 1.0  # any constant: argmax-invariant
    decode = _make_decoder(cfg, code)
    W = cfg.workers
    rngs = [np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(w,)))
            for w in range(W)]
    rounds_per_batch = _auto_rounds(cfg, code)
    crc = code.crc

    start = time.perf_counter()
    frames = 0
    frame_errors = 0
    bit_errors = 0
    budget = cfg.max_frames
    while frames < budget:
        rounds = min(rounds_per_batch, (budget - frames + W - 1) // W)
        payloads = np.empty((rounds, W, payload_bits), dtype=np.int8)
        noise = np.empty((rounds, W, code.N))
        # one (payload, noise) draw pair per frame keeps each worker's stream
        # consumption independent of how many rounds a batch spans
        for r in range(rounds):
            for w, rng in enumerate(rngs):
                payloads[r, w] = rng.integers(0, 2, size=payload_bits,
                                              dtype=np.int8)
                noise[r, w] = rng.standard_normal(code.N)
        payloads = payloads.reshape(rounds * W, payload_bits)
        noise = noise.reshape(rounds * W, code.N)
        info = attach_crc(payloads, crc) if crc is not None else payloads
        u = scatter_info_batch(code, info)
        x = encode_bits(u, code.n)
        y = modulate(x) + math.sqrt(sigma2) * noise
        metrics = initial_metrics(y, metric_sigma2)
        u_hat = decode(metrics)
        payload_hat = u_hat[:, code.info_set][:, :payload_bits]
        bit_errs = (payload_hat != payloads).sum(axis=1)
        err = bit_errs > 0

        take = min(rounds * W, budget - frames)
        bit_errs = bit_errs[:take]
        err = err[:take]
        if cfg.max_frame_errors > 0:
            cum = frame_errors + np.cumsum(err)
            hit = np.flatnonzero(cum >= cfg.max_frame_errors)
            if hit.size:
                take = hit[0] + 1
                bit_errs = bit_errs[:take]
                err = err[:take]
                frames += take
                frame_errors += int(err.sum())
                bit_errors += int(bit_errs.sum())
                break
        frames += take
        frame_errors += int(err.sum())
        bit_errors += int(bit_errs.sum())
    wall = time.perf_counter() - start
    return FerRecord.from_counts(snr_db, frames, frame_errors, bit_errors,
                                 payload_bits, wall)


def frozen_set_digest(code):
    text = "\n".join(str(i) for i in code.frozen_set)
    return hashlib.sha256(text.encode()).hexdigest()


def _metadata_text(cfg, code):
    lines = ["[config]"]
    for key, value in sorted(vars(cfg).items()):
        lines.append(f"{key} = {value}")
    lines += [
        "",
        "[code]",
        f"N = {code.N}",
        f"K = {code.K}",
        f"payload_bits = {code.payload_bits}",
        f"frozen_set_sha256 = {frozen_set_digest(code)}",
        "",
    ]
    return "\n".join(lines)


def run_campaign(cfg, log=None):
    """Sweep the configured SNR range, returning one FerRecord per point.

    When `cfg.out` is set, rows are appended to the CSV as they finish and a
    `<out>.meta` file records the full configuration and a digest of the
    frozen set. Output files are byte-identical across runs of the same
    configuration.
    """
    if log is None:
        log = lambda msg: print(msg, file=sys.stderr)
    code = cfg.build_code()
    records = []
    out = open(cfg.out, "w") if cfg.out else None
    try:
        if out:
            out.write(CSV_HEADER + "\n")
            out.flush()
            with open(cfg.out + ".meta", "w") as meta:
                meta.write(_metadata_text(cfg, code))
        for snr_db in cfg.snr_points():
            rec = run_point(cfg, snr_db, code=code)
            records.append(rec)
            log(f"snr={snr_db:g} dB: fer={rec.fer:.4e} ber={rec.ber:.4e} "
                f"({rec.frames} frames, {rec.frame_errors} errors, "
                f"{rec.wall_seconds:.1f}s)")
            if out:
                out.write(rec.csv_row() + "\n")
                out.flush()
    finally:
        if out:
            out.close()
    return records
