"""The nilpotent catalog: one stratum per partition.

Conjugacy classes of nilpotent matrices are partitions of n.  For each
partition the exact label eta, its squared norm q, and the normalized
ladder eta/q are computed and checked against the closed block formulas.
The gradient flow recovers the same data analytically: the limit moment
spectrum of the Jordan representative equals eta.
"""

from momentflow import (build_context, dominates, jordan_label, jordan_vector,
                        kn_label_via_flow, partitions)

n = 5
print(f"partitions of {n} and their exact label data")
print(f"{'partition':<16}{'q(eta)':<10}{'q_paper':<10}{'identity':<10}{'negdef'}")
reports = {}
for p in partitions(n):
    if p.parts[0] == 1:
        continue  # the zero matrix has no stratum
    rep = jordan_label(p)
    reports[p] = rep
    print(f"{str(p.parts):<16}{str(rep.label.q):<10}{str(rep.q_paper):<10}"
          f"{str(rep.identity_ok):<10}{rep.negdef_ok}")

# Dominance order reverses the label norms strictly: the closure of a
# bigger orbit meets smaller orbits whose labels are longer.
print("\ndominance chains reverse q(eta):")
ps = list(reports)
for a in ps:
    for b in ps:
        if a.parts != b.parts and dominates(a, b):
            qa, qb = reports[a].label.q, reports[b].label.q
            print(f"  {a.parts} > {b.parts}:  q = {qa} < {qb}")

# The flow side of the same story: for each partition, the gradient flow
# from the Jordan representative converges to a critical direction whose
# moment spectrum reproduces eta.
print("\nflow cross-check (limit spectrum vs exact label):")
ctx = build_context(n, "GL")
for p in reports:
    v = jordan_vector(p)
    rep = kn_label_via_flow(ctx, v.spec, v)
    print(f"  {str(p.parts):<12} deviation = {rep.max_deviation:.2e}  match = {rep.match}")
