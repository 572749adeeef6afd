"""
Sequences with a weighted edit distance
=======================================

The same pipeline works on symbol sequences.  The trainer searches the
insertion, deletion and substitution weights of the edit distance instead of
feature weights.  Edit distances take few distinct values, so a motif family
is often split into several regions; each region still holds one family only.
"""
import numpy as np

from entropic_occ import Dataset, TrainerConfig, score_samples, train, weighted_edit_distance

print("kitten -> sitting, unit costs:", weighted_edit_distance("kitten", "sitting", (1, 1, 1)))
print("kitten -> sitting, cheap substitutions:", weighted_edit_distance("kitten", "sitting", (1, 1, 0.2)))

# nominal sequences: noisy repeats of two motifs
rng = np.random.default_rng(3)


def noisy(motif, n):
    out = []
    for _ in range(n):
        s = list(motif)
        i = rng.integers(len(s))
        s[i] = rng.choice(list("ACGT"))
        out.append("".join(s))
    return out


nominal = noisy("ACGTACGTAC", 40) + noisy("TTTTGGGGCC", 40)
family = np.repeat(["ACGT...", "TTTT..."], 40)
ds = Dataset(nominal, kind="sequence", alphabet="ACGT")
model = train(ds, "weighted_edit", TrainerConfig(seed=3, max_iterations=10))
print(f"trained: d={model.d}, weights (ins, del, sub) = {np.round(model.p_star.values, 3).tolist()}")
for comp in model.partition.components:
    print(f"    region of {comp.size:2d} sequences from families {sorted(set(family[comp].tolist()))}")

tests = ["ACGTACGTAC", "TTTTGGGGCA", "GATTACAGAT", "AAAAAAAAAA"]
for s, dec in zip(tests, score_samples(model, tests)):
    print(f"  {s}: mu={dec.membership:.4f} accepted={dec.accepted}")
