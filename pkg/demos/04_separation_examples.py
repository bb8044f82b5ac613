"""Convergence of corpus sequences under five notions.

Run: python3 demos/04_separation_examples.py   (about half a minute)
"""
from starmetrics import analyze, corpus

CASES = [
    ("en_spikes", "origin"),
    ("moszynska_cones", "unit-ball"),
    ("xn_powers", "segment"),
    ("rotating_segments", "segment-e1"),
    ("tilting_halfspaces", "open-halfplane-ray"),
    ("flower_wedge", "strip"),
]

for name, tag in CASES:
    r = analyze(corpus(name), tag, 60)
    print(f"\n{name} against {tag} (eps_g = {r.eps_g:.2e})")
    for notion, entry in r.notions.items():
        last = entry.trace[-1][1]
        print(f"  {notion:17s} {entry.verdict:13s} last value {last:.4g}  ({entry.reason})")
    for note in r.notes:
        print(f"  note: {note}")
    if "flower" in r.extras:
        fl = r.extras["flower"]
        print(f"  flowers: rho(e1) = {fl['rho_e1'][-1][1]} for K_60, {fl['limit_rho_e1']} for K; "
              f"d_AW^r between flowers {fl['radial_aw_verdict']}")
