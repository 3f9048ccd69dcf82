"""Nakayama twist, syzygies and tau on the quantum plane A_q over GF(5)."""

from arquiver.algebra import nakayama
from arquiver.artheory import almost_split_sequence, dtr, tau
from arquiver.catalog import m_gamma, quantum_plane
from arquiver.exactcore import PrimeField
from arquiver.rep import decompose, iso, omega_period, syzygy

f = PrimeField(5)
q = 2
alg = quantum_plane(f, q)
frob = nakayama(alg, {"xy": 1})
print("basis:", alg.basis_names())
print("nu(x) =", [f.to_str(c) for c in frob.nu(alg.arrow("x"))])
print("nu(y) =", [f.to_str(c) for c in frob.nu(alg.arrow("y"))])

for g in range(1, 5):
    om = syzygy(m_gamma(alg, g))
    img = next(h for h in range(1, 5) if iso(om, m_gamma(alg, h)))
    print(f"Omega(M_{g}) = M_{img}")
print("Omega-period of M_1:", omega_period(m_gamma(alg, 1), 8))

m = m_gamma(alg, 1)
t = tau(m, frob)
print("tau(M_1) agrees with D Tr:", iso(t, dtr(m)))
seq = almost_split_sequence(m, frob)
mid = [r.dim_vector for r, k in decompose(seq.middle).multiplicities() for _ in range(k)]
print("almost split sequence ending at M_1: middle summands", mid, "exact", seq.is_exact())
