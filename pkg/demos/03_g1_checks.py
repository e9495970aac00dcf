"""The G1 test on joins that are smooth by construction, and on a corpus.

Run: python3 demos/03_g1_checks.py
"""

# %%
import random
from importlib.resources import files

from dsbicubic import check_complex
from dsbicubic.fixtures import mirror_edge_data, random_rows
from dsbicubic.g1 import g1_necessary_test, normal_jump, summarize
from dsbicubic.patches import BezierPatch, split_patch_complex
from dsbicubic.repro import run_course

rng = random.Random(7)

# %% [markdown]
# Mirroring the first inner row through the boundary gives a C1 join: the
# determinant vanishes identically and the normals agree to rounding.

# %%
e = mirror_edge_data(random_rows(rng), random_rows(rng))
r = g1_necessary_test(e)
print(r.verdict.value, "det zero:", r.is_coplanar, "unbiased:", r.unbiased_ok,
      f"max normal jump {normal_jump(e, 64).max_angle:.1e}")

# %% [markdown]
# Splitting one patch in four gives four interior edges, all C1.

# %%
patch = BezierPatch([random_rows(rng) for _ in range(4)])
print(summarize(check_complex(split_patch_complex(patch), "unbiased")))

# %% [markdown]
# The bundled corpus: the cube keeps half of its edges G1, the tetrahedron none.

# %%
for row in run_course(files("dsbicubic") / "data" / "course"):
    print(f"{row.name:16s} patches={row.patches:3d} G1={row.g1:3d} NotG1={row.not_g1:3d} "
          f"max jump={row.max_normal_jump:.3f} rad")
