#pragma once

// Brute-force exact oracles.  Each function is a direct transcription of its
// defining summation, accumulating exponent hits into a length-N integer
// vector: one add per term, exact by construction.  These define ground truth
// for everything the theorem engine produces.
//
// Convention: characters vanish on non-units.  The one exception is the
// `restrict_units = false` variant of the binomial sum, where a principal
// chi1 counts every x (the "full sum" of the counting examples); the
// restricted variant is the paper's object and what the engine compares
// against.

#include <utility>

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"

namespace charsum {

// Oracles refuse moduli above this rather than running unbounded.
constexpr i64 kOracleMaxQ = 10'000'000;

// x -> x^k mod q for all residues; shared across oracle calls with the same k.
std::vector<i64> power_table(const ModulusContext& ctx, i64 k);

// sum_x chi1(x) chi2(A x^k + B) over x mod p^m (eq. 1.5 / 1.4).
CycInt binomial_sum(const Character& chi1, const Character& chi2, i64 A, i64 B, i64 k,
                    bool restrict_units, const std::vector<i64>* xk = nullptr);

// G(chi, p^j) = sum_x chi(x) e_{p^j}(x), chi viewed at level j (conductor <= j).
// The value lives in the full working ring of chi's modulus.
CycInt gauss_sum(const Character& chi, int j);

// J(chi1, chi2) = sum_x chi1(x) chi2(1 - x) mod p^m.
CycInt jacobi_sum(const Character& chi1, const Character& chi2);

// sum_y chi(y) e_{p^j}(A y), chi viewed at level j.
CycInt twisted_gauss(const Character& chi, i64 A, int j);

// sum*_x chi(A x + x^-1) over units mod p^m; p must not divide A.
CycInt kloosterman_mult(const Character& chi, i64 A);

// The two Jacobsthal-type Legendre sums for p = 1 mod 2k, p not dividing B:
//   sum_{x=1}^{p-1} (x/p)((x^k+B)/p)  and  sum_{x=0}^{p-1} ((x^k+B)/p).
// Both are rational integers, returned in the order-p(p-1) ring.
std::pair<CycInt, CycInt> jacobsthal_pair(i64 p, i64 k, i64 B);

// sum_{x mod rs} chi(g(x)) = product of the prime-power factor sums, for
// g(x) = x^l (A x^k + B)^w with l, w >= 0 and chi = chi_r * chi_s given by
// exponents against each factor's primitive root.  Verified exactly in the
// order-lcm(phi(r), phi(s)) ring.
struct CrtCheckResult {
    bool pass = false;
    CycInt lhs;
    CycInt rhs;
};
CrtCheckResult crt_product_check(i64 p1, int m1, i64 c1, i64 p2, int m2, i64 c2, i64 l, i64 A,
                                 i64 k, i64 B, i64 w);

// The section-1 reduction trichotomy for S(chi1, chi2, Ax^k+B, p^m), m >= 2:
// chi2 primitive        -> NotApplicable
// chi1 primitive only   -> the sum is 0
// neither primitive     -> the sum is p * (same sum one level down)
enum class ReductionCase { NotApplicable, PrimitiveChi1Vanishes, FactorsThroughLowerLevel };
struct ReductionOutcome {
    ReductionCase kind = ReductionCase::NotApplicable;
    bool pass = true;
};
ReductionOutcome reduction_identity_check(const Character& chi1, const Character& chi2, i64 A,
                                          i64 B, i64 k);

}  // namespace charsum
