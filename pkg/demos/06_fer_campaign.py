"""A small Monte Carlo FER sweep comparing decoders on one code.

Writes fer_demo_<decoder>.csv next to this script; the same campaigns are
reproducible from the command line, e.g.

    polarsim run --n 256 --k 128 --decoder sscl --symbol-bits 4 --list 4 \
        --q 4 --snr 1.0:0.5:3.0 --frames 2000 --max-errors 100 \
        --seed 7 --workers 4 --out fer_demo_sscl.csv
"""

from pathlib import Path

from polarsim import SimConfig, run_campaign

HERE = Path(__file__).resolve().parent

results = {}
for decoder in ("sc", "scl", "sscl"):
    cfg = SimConfig(
        n=8, K=128, decoder=decoder, symbol_bits=4, list_size=4,
        stage1_keep=4, snr_start=1.0, snr_step=0.5, snr_stop=3.0,
        max_frames=2000, max_frame_errors=100, seed=7, workers=4,
        out=str(HERE / f"fer_demo_{decoder}.csv"),
    )
    print(f"--- {decoder} ---")
    results[decoder] = run_campaign(cfg, log=print)

print("\nFER by Eb/N0 (dB):")
points = [rec.snr_db for rec in results["sc"]]
header = "snr_db " + " ".join(f"{d:>10}" for d in results)
print(header)
for i, snr in enumerate(points):
    row = f"{snr:6.2f} " + " ".join(
        f"{results[d][i].fer:>10.3e}" for d in results)
    print(row)
print("\nCSV files written to", HERE)
