"""Length residues forced by mesh congruences on Z[A~1,2], Z[D~5] and Z[D~7]."""

from arquiver.lengthsolver import a12_problem, chain_pattern, d5_problem, solution_ls, solve_profile

print("A~1,2 with boundary (1, -1): l >= 4 gives", solution_ls(solve_profile(a12_problem()), 4))
sols = solve_profile(d5_problem())
print("D~5 with tips (1, -1): solvable for l in", solution_ls(sols))
for s in sols:
    print(f"  l={s.l}: {s.count} solution(s), e.g. {s.particular}")
for x in range(8):
    c = chain_pattern(7, x)
    if c["consistent"]:
        print(f"D~7 chain mod 8 with x={x}: {c['chain']}, residue 4 present: {c['has_four']}")
