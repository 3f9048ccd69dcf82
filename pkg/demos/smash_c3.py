"""The smash product of the Kronecker algebra over GF(4) with C_3, and restriction of AR sequences."""

from arquiver.algebra import simple
from arquiver.smash import induce, kronecker_c3, restrict, restriction_of_ar_sequence

sp, frob, frob_gamma = kronecker_c3()
q = sp.alg.quiver
print("vertices:", q.vertices)
for a in q.arrows:
    print(f"  {a.name}: {a.src} -> {a.tgt}")
for rel in sp.alg.relations:
    print("  relation:", " + ".join(f"{sp.alg.field.to_str(c)}*{q.path_name(p)}" for c, p in rel))
print("dimension:", sp.alg.dim)

s = simple(sp.alg, "e0")
print("restriction of S(e0) has dimension", restrict(s, sp).dim)
print("induced module of the Gamma-simple has dimension vector", induce(simple(sp.gamma, "1"), sp).dim_vector)
rep = restriction_of_ar_sequence(s, frob, sp, frob_gamma)
print("restricted AR sequence class:", rep["class_restricted"])
print("Gamma-side sum:              ", rep["class_gamma"])
print("identity holds:", rep["holds"])
