#!/usr/bin/env python3
"""Plot-ready data for the Gaussian secrecy regions.

Scalar case: the joint-coding region strictly contains the separate
two-code time-sharing region, with the corner point witnessing perfect
embedding.  Parallel case with a pooled power budget: the two objectives
prefer different power splits, so the corner is unreachable; the gap is
printed and the boundary written as CSV.
"""

from secembed import gauss
from secembed.gauss import ParallelGaussChannel, ScalarGaussChannel

ch = ScalarGaussChannel(power=1.0, a=1.0, b1=0.5, b2=0.1)
res = gauss.region_scalar(ch)
naive = gauss.naive_region(ch)
print("scalar channel P=1, a=1, b1=0.5, b2=0.1")
print(f"  cap_high={res.cap_high:.6f}  cap_low={res.cap_low:.6f}")
print(f"  corner point ({res.corner[0]:.6f}, {res.corner[1]:.6f})")
print(f"  naive hull violation at corner: {naive.hull_violation(res.corner):.6f}")

with open("scalar_region.csv", "w") as f:
    f.write("R1,R2\n")
    for r1, r2 in res.region.upper_boundary(201):
        f.write(f"{r1:.9f},{r2:.9f}\n")
print("  boundary written to scalar_region.csv")

pch = ParallelGaussChannel(a=(1.0, 1.0), b1=(0.8, 0.25), b2=(0.1, 0.1),
                           total_power=1.0)
bnd = gauss.region_parallel_total(pch, grid=1e-3)
print("\ntwo subchannels, pooled power P=1")
print(f"  allocation maximizing R1:       {bnd.alloc_max_r1}")
print(f"  allocation maximizing sum rate: {bnd.alloc_max_sum}")
print(f"  max R1 = {bnd.max_r1:.6f}, max sum = {bnd.max_sum:.6f}")
print(f"  would-be corner sits {bnd.embedding_gap():.6f} bits above the boundary")
print("  (embeddable, but not perfectly embeddable under pooled power)")

with open("pooled_region.csv", "w") as f:
    f.write("R1,R2\n")
    for r1, r2 in bnd.points:
        f.write(f"{r1:.9f},{r2:.9f}\n")
print("  boundary written to pooled_region.csv")

# fixed split for contrast: every fixed allocation is perfectly embeddable
fixed = gauss.region_parallel_individual(
    ParallelGaussChannel(a=pch.a, b1=pch.b1, b2=pch.b2, powers=(0.5, 0.5)))
print(f"\nfixed even split: corner ({fixed.corner[0]:.6f}, {fixed.corner[1]:.6f}) "
      f"inside its region: {fixed.region.contains(fixed.corner)}")
