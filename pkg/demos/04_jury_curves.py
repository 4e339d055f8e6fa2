# Equal-weight majorities: the jury curve for a few competence levels.
from liquidsim import jury_curve

for p in (0.45, 0.5, 0.55, 0.6):
    curve = dict(jury_curve(p, 201))
    print(f"p={p}: n=1 {curve[1]:.4f}  n=11 {curve[11]:.4f}  n=101 {curve[101]:.4f}  n=201 {curve[201]:.4f}")
