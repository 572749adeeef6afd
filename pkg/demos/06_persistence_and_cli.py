"""
Saving models and using the command line
========================================

Models are JSON documents that reload bit for bit.  The same steps are
available from the ``entropic-occ`` command; here its entry point is called
in-process.
"""
import tempfile
from pathlib import Path

from entropic_occ import SyntheticSpec, generate_synthetic, load_model, save_model, score_samples, train
from entropic_occ.cli import main

ds = generate_synthetic(SyntheticSpec("crescent_full_moon", n=200, seed=1))
model = train(ds)

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    save_model(model, tmp / "model.json")
    again = load_model(tmp / "model.json")
    same = [d.membership for d in score_samples(model, ds.samples[:10])] == \
           [d.membership for d in score_samples(again, ds.samples[:10])]
    print("reloaded model scores identically:", same)

    # command-line round trip: generate, train, score, report
    main(["synth", "--generator", "gaussians3", "--n", "90", "--out", str(tmp / "blobs.csv")])
    main(["train", "--input", str(tmp / "blobs.csv"), "--label-col", "label",
          "--out", str(tmp / "blobs.json")])
    main(["score", "--input", str(tmp / "blobs.csv"), "--label-col", "label",
          "--model", str(tmp / "blobs.json"), "--out", str(tmp / "scores.csv")])
    main(["report", "--model", str(tmp / "blobs.json"), "--out", str(tmp / "report")])
    print((tmp / "scores.csv").read_text().splitlines()[:3])
    print(sorted(p.name for p in (tmp / "report").iterdir()))
