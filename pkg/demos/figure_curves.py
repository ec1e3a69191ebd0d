"""
Bound curves along the three qubit families
===========================================

Evaluates each named family on a coarse grid and prints the table.  The CLI
``varbounds figure --id fig1 --out fig1.csv`` writes the same data as CSV.
"""

from varbounds import sweep

for fig in sweep.FIGURES:
    spec = sweep.figure_spec(fig, points=7)
    cols, rows = sweep.evaluate(spec)
    print(f"\n{fig}: {spec.family} radius={spec.radius:.4f} "
          f"A={[a.label for a in spec.observables_a]}"
          + (f" B={[b.label for b in spec.observables_b]}" if spec.observables_b else ""))
    print("  ".join(f"{c:>12}" for c in cols[:-1]))
    for row in rows:
        print("  ".join(f"{row[c]:12.6f}" if row[c] is not None else f"{'-':>12}" for c in cols[:-1]))

# the gap between the variance sum and the bound
_, rows = sweep.evaluate(sweep.figure_spec("fig2", points=181))
gap = [r["lhs"] - r["thm1"] for r in rows]
print("\nfig2 smallest gap", min(gap), "at theta", rows[gap.index(min(gap))]["theta"])
