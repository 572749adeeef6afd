"""
AUC on Breast Wisconsin
=======================

Benign samples are the nominal class.  Each repeat trains on half of them and
scores the other half together with every malignant sample.  Pass the number
of repeats as the first argument (default 3; the acceptance suite uses 10).
"""
import sys
from pathlib import Path

from entropic_occ import load_csv, run_experiment

repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
data = Path(__file__).resolve().parents[1] / "data" / "breast_wisconsin.csv"
ds = load_csv(data, "class")
print(f"{len(ds)} samples, {ds.labels.count('benign')} benign / {ds.labels.count('malignant')} malignant")

report = run_experiment(ds, "benign", repeats=repeats)
for seed, auc, model in zip(report.seeds, report.aucs, report.models):
    print(f"  trainer seed {seed}: AUC {auc:.4f} (d={model.d}, k*={model.k_star})")
print(f"mean AUC {report.mean:.4f} (sd {report.std:.4f})")
