"""Exact Doo-Sabin refinement of a tetrahedron.

Run: python3 demos/01_subdivision.py
"""

# %% [markdown]
# Every coordinate stays a `Fraction`, so refinement levels can be compared
# with `==` and the limit point of each facet is an exact rational point.

# %%
from dsbicubic import ds_refine, face_limit_point, make_tetrahedron
from dsbicubic.doosabin import LimitMethod

mesh = make_tetrahedron(1260)
trace = ds_refine(mesh, 3)
for level, m in enumerate(trace.meshes):
    print(f"level {level}: {m.stats().line()}  valences={m.stats().vertex_valence_histogram}")

# %% [markdown]
# After one step every vertex has valence 4. Level-1 facets come in three
# families: one per input face, one per input vertex, one per input edge.

# %%
for f in (0, 4, 8):
    kind, idx = trace.source_of(f)
    eig = face_limit_point(trace, f, LimitMethod.EIGEN_EXTRAPOLATE)
    cen = face_limit_point(trace, f, LimitMethod.CENTROID)
    print(f"facet {f:2d} from {kind} {idx}: limit {tuple(map(str, eig))}  methods agree: {eig == cen}")

# %% [markdown]
# Doo-Sabin masks are circulant, so a facet's centroid never moves as it
# shrinks. That is why both limit methods return the same point. The first
# corner of facet 0 closes in on (420, 420, 420):

# %%
for k in (1, 2, 3):
    corner = trace.meshes[k].vertices[trace.meshes[k].faces[0][0]]
    print(f"  level {k}: {tuple(map(str, corner))}")
