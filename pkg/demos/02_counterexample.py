"""The tetrahedron edge whose patches do not share a tangent plane.

Run: python3 demos/02_counterexample.py
"""

# %%
from dsbicubic import construct, edge_derivatives, extract_edge_data, g1_necessary_test, make_tetrahedron
from dsbicubic.exact import primitive_vector
from dsbicubic.g1 import normal_jump
from dsbicubic.repro import DEFAULT_CONFIG, counterexample_edge

mesh = make_tetrahedron(1260)
complex_ = construct(mesh, DEFAULT_CONFIG)
print(DEFAULT_CONFIG.label())
print(f"{len(complex_.patches)} patches, {len(complex_.shared_edges)} shared edges, "
      f"C0 violations: {complex_.c0_violations()}")

# %% [markdown]
# The edge from the limit point of face B, C, D to the split point of edge
# C-D. Rows are shown as coprime integers (one common positive factor).

# %%
k = counterexample_edge(complex_, mesh)
e = extract_edge_data(complex_, k)
scale, ints = primitive_vector([x for p in e.points() for x in p])
pts = [tuple(ints[i:i + 3]) for i in range(0, 36, 3)]
print(f"common factor {scale}")
for name, row in zip(("p_i1", "p_i0", "q_i2"), (pts[0:4], pts[4:8], pts[8:12])):
    print(f"  {name}: {row}")

# %% [markdown]
# Cross derivative of p, derivative along the edge, cross derivative of q.

# %%
for name, v in zip(("d2p", "d1p", "d2q"), edge_derivatives(e)):
    print(f"  {name} (degree {v.degree}): {[tuple(map(str, p)) for p in v.control_points()]}")

# %% [markdown]
# Tangent-plane continuity forces the triple product to vanish. Here it does not.

# %%
report = g1_necessary_test(e, edge_id=k)
print("det ~", list(report.det_primitive), "->", report.verdict.value)

# %% [markdown]
# The jump between the two unit normals, sampled along the edge.

# %%
jump = normal_jump(e, 16)
for u, angle in jump.angle_profile[::4]:
    print(f"  u={u:.2f}  angle={angle:.4e} rad")
print(f"max {jump.max_angle:.4e} rad")
