"""Root-lattice machinery: Cartan data, parabolic longest elements, and the
enumeration of admissible involution pairs (X, tau).
"""

from qcoideal import (
    cartan_datum,
    enumerate_admissible,
    longest_word,
    rho_check_pairing,
    validate_admissible,
    admissible_violations,
)

a3 = cartan_datum("A", 3)
print("== A_3 basics ==")
print("Cartan matrix:", a3.A)
print("longest word of the middle-node parabolic:", longest_word(a3, {2}))
print("alpha_1 against the half-sum of X={2} coroots:",
      rho_check_pairing(a3, {2}, a3.simple_root(1)))

print()
print("== admissibility is decided, with reasons ==")
print("X={2}, tau=(1 3):", admissible_violations(a3, {2}, {1: 3, 2: 2, 3: 1}) or "valid")
print("X={2}, tau=id:  ", admissible_violations(a3, {2}, {i: i for i in a3.labels}))

print()
print("== enumerations over small data ==")
for kind, rank in (("A", 3), ("B", 3), ("C", 3), ("D", 4)):
    datum = cartan_datum(kind, rank)
    pairs = enumerate_admissible(datum)
    print(f"{kind}_{rank}: {len(pairs)} admissible pairs")
    for p in pairs:
        moved = {i: j for i, j in sorted(p.tau.items()) if i != j}
        print(f"   X={sorted(p.X)}, tau={moved or 'id'}")

print()
print("== the lattice involution of a pair ==")
pair = validate_admissible(a3, {2}, {1: 3, 2: 2, 3: 1})
for i in a3.labels:
    print(f"Theta(alpha_{i}) =", pair.theta_alpha(i))
