"""Edit single attributes of a sampled face.

Draws one latent code, walks it along each planted direction, and writes an
SVG per step so the progression is visible in any browser.
"""

from pathlib import Path

import numpy as np

from hypersem import LatentCode, edit, face_params, make_generator, render, true_scores

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

gen = make_generator(d=64, seed=7, noise_sigma=0.0)
rng = np.random.default_rng(11)
z = LatentCode(rng.standard_normal(64))

print("base scores:", dict(zip(gen.attributes, np.round(true_scores(gen, z), 3))))

for attr in ("smile", "age", "eyeglasses"):
    direction = gen.ground_truth_direction(attr)
    for alpha in (-3.0, 0.0, 3.0):
        moved = edit(z, direction, alpha)
        params = face_params(gen, moved)
        path = OUT / f"edit_{attr}_{alpha:+.0f}.svg"
        path.write_text(render(params), encoding="utf-8")
    scores = [true_scores(gen, edit(z, direction, a))[gen.attribute_index(attr)] for a in (-3, 0, 3)]
    print(f"{attr:<11} score along alpha -3/0/+3: "
          + " -> ".join(f"{s:+.3f}" for s in scores))

print(f"\nwrote SVG frames to {OUT}/edit_*.svg")
