"""
Fuzzy membership and binary decisions
=====================================

After training, every region is a fuzzy set.  A test sample is inserted into
each region, its closeness-centrality deficit is measured and turned into a
membership degree.  Centrality uses 2^-distance, so with blobs of standard
deviation 0.05 membership falls from 1 at a blob centre to nearly 0 a few
standard deviations out.
"""
import numpy as np

from entropic_occ import SyntheticSpec, TrainerConfig, generate_synthetic, score_sample, train

ds = generate_synthetic(SyntheticSpec("gaussians3", n=90, seed=0))
model = train(ds, config=TrainerConfig(seed=0))
print(f"{model.d} regions; thresholds {np.round(model.thresholds, 4).tolist()}")

centre = ds.samples[:30].mean(axis=0)
probes = {
    "blob centre": centre,
    "blob edge": centre + [0.1, 0.0],
    "between blobs": ds.samples.mean(axis=0),
    "far away": centre + [50.0, 50.0],
}
for name, x in probes.items():
    dec = score_sample(model, x)
    print(f"{name:14s} mu={dec.membership:.4f} accepted={dec.accepted} region={dec.component} "
          f"per-region={np.round(dec.memberships, 3).tolist()}")

# membership along a ray leaving the first blob
for r in np.linspace(0.0, 0.12, 7):
    print(f"  distance {r:.2f}: mu={score_sample(model, centre + [-r, 0.0]).membership:.4f}")
