#pragma once

// Prime-power modular arithmetic.
//
// Everything downstream works relative to one primitive root per prime:
// the smallest primitive root g mod p, bumped to g+p when g^(p-1) = 1 mod p^2,
// so that the same a generates (Z/p^s)^* for every s >= 1 and satisfies the
// normalization a^(p-1) = 1 + r p with p not dividing r.

#include <memory>
#include <optional>
#include <vector>

#include "charsum/common.hpp"

namespace charsum {

struct PrimePowerModulus {
    i64 p = 0;    // odd prime
    int m = 0;    // exponent >= 1
    i64 q = 0;    // p^m
    i64 phi = 0;  // p^(m-1) (p-1)
};

struct PrimitiveRootData {
    i64 a = 0;  // primitive root mod p^s for all s >= 1
    i64 r = 0;  // a^(p-1) = 1 + r p; canonical residue mod p^m
    // r_tower[s-1] = r_s mod p^m where a^(phi(p^s)) = 1 + r_s p^s, s = 1..m.
    std::vector<i64> r_tower;
};

// Decomposition (1.9)/(1.10): A = p^n A', d = (k, p-1), p^t || k,
// D = (k, phi(p^m)) = d p^min(t, m-1).
struct StructuralData {
    int n = 0;
    i64 aprime = 0;  // signed, p does not divide it
    i64 d = 1;
    int t = 0;
    i64 D = 1;
};

i64 mul_mod(i64 a, i64 b, i64 mod);
i64 pow_mod_raw(i64 base, i64 exp, i64 mod);  // exp >= 0
i64 inv_mod(i64 a, i64 mod);                  // throws NotAUnit
i64 gcd_i64(i64 a, i64 b);
bool is_prime(i64 n);
int valuation(i64 x, i64 p);  // x != 0
std::vector<std::pair<i64, int>> factorize(i64 n);

// Euler-criterion Legendre symbol; 0 iff p | alpha.
int legendre(i64 alpha, i64 p);

PrimePowerModulus make_modulus(i64 p, int m);

// base^exp mod q; negative exponents mean inverse powers (base must be a unit).
i64 pow_mod(i64 base, i64 exp, const PrimePowerModulus& mod);

PrimitiveRootData find_primitive_root(i64 p, int m);

StructuralData decompose_structural(i64 A, i64 B, i64 k, i64 p, int m);

// Shared per-(p,m) state: modulus, root, discrete-log machinery.  Immutable
// after construction, safe to share across threads.
class ModulusContext {
  public:
    static std::shared_ptr<const ModulusContext> get(i64 p, int m);

    const PrimePowerModulus& modulus() const { return mod_; }
    const PrimitiveRootData& root() const { return root_; }
    i64 p() const { return mod_.p; }
    int m() const { return mod_.m; }
    i64 q() const { return mod_.q; }
    i64 phi() const { return mod_.phi; }
    // Working cyclotomic order N = p^m (p-1); zeta_phi = zeta_N^p and
    // zeta_{p^m} = zeta_N^(p-1) both embed.
    i64 ring_order() const { return mod_.q * (mod_.p - 1); }

    // Index of x relative to root().a, in [0, phi).  Throws NotAUnit if p | x.
    // Uses the full power table below `table_threshold`, Pohlig-Hellman above.
    i64 discrete_log(i64 x, i64 table_threshold = kDlogTableThreshold) const;

    // ind[] for all residues; -1 on non-units.  Built at construction for
    // desk-scale moduli, which is all the oracles accept.
    const std::vector<std::int32_t>& index_table() const;

    bool is_unit(i64 x) const { return mod_floor(x, mod_.p) != 0; }

    static constexpr i64 kDlogTableThreshold = 10'000;

    explicit ModulusContext(i64 p, int m);

  private:
    i64 pohlig_hellman(i64 x) const;
    i64 subgroup_log(i64 h, i64 ell, int e) const;  // base a^(phi/ell^e)

    PrimePowerModulus mod_;
    PrimitiveRootData root_;
    std::vector<std::pair<i64, int>> phi_factors_;  // prime powers of phi
    std::vector<std::int32_t> index_;               // empty above build threshold
};

using ModulusContextPtr = std::shared_ptr<const ModulusContext>;

// Unit solutions x of U x^k + V = 0 mod p^e with p not dividing U.
struct PowerCongruence {
    i64 p = 0;
    i64 U = 0;
    i64 V = 0;
    i64 k = 1;

    i64 eval(i64 x, i64 mod) const;  // (U x^k + V) mod, canonical
};

// All unit solution classes mod p^e, ascending.
std::vector<i64> solve_power_congruence(const PowerCongruence& cg, int e);

// All lifts mod p^(e_to) of the class c0 (a solution mod p^(e_from)) that
// still satisfy the congruence.  Empty result is a valid answer.  Newton step
// when the derivative is a unit, candidate refinement otherwise.
std::vector<i64> hensel_lift_power_congruence(const PowerCongruence& cg, i64 c0,
                                              int e_from, int e_to);

}  // namespace charsum
