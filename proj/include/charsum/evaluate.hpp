#pragma once

// The theorem engine: structural analysis, vanishing conditions, the
// characteristic congruence, and two independent closed-form constructions
// (the explicit evaluation and the Gauss-sum decomposition), all returning
// exact cyclotomic integers for comparison against the brute-force oracles.

#include <optional>
#include <string>
#include <vector>

#include "charsum/sums.hpp"

namespace charsum {

// The tuple (p, m, A, B, k, l, w) plus the generator-character exponent c
// (chi1 = chi^l, chi2 = chi^w with chi(a) = e_phi(c)) and derived data.
// The validated invariants: p odd prime, B and A' units, v_p(A) < m, k > 0,
// chi2 primitive.
struct BinomialSumSpec {
    ModulusContextPtr ctx;
    i64 A = 1, B = 1, k = 1, l = 0, w = 1, c = 1;
    StructuralData st;
    i64 c1 = 0, c2 = 0;  // canonical exponents of chi1, chi2

    i64 p() const { return ctx->p(); }
    int m() const { return ctx->m(); }
    i64 q() const { return ctx->q(); }
    i64 phi() const { return ctx->phi(); }
    i64 ring_order() const { return ctx->ring_order(); }
    Character chi() const { return Character(ctx, c); }
    Character chi1() const { return Character(ctx, c1); }
    Character chi2() const { return Character(ctx, c2); }
    i64 h_at(i64 x) const;  // (A x^k + B) mod q
};

BinomialSumSpec make_spec(i64 p, int m, i64 A, i64 B, i64 k, i64 l, i64 w, i64 c = 1);

// The trichotomy on m against n+t+1 and 2t+n+2.
enum class Regime { Boundary, MidRange, EvenHigh, OddHigh };
const char* regime_name(Regime r);

struct ConditionReport {
    Regime regime = Regime::Boundary;
    int depth = 0;          // characteristic depth min{m-1, floor((m+n)/2)+t}
    bool kth_power_ok = false;   // chi1 = chi3^k solvable: D | c1
    bool val_l_exact = false;    // p^(n+t) || c1
    bool val_lwk_exact = false;  // p^t || c1 + c2 k
    bool boundary_div = false;   // p^(n+t) | c1 (meaningful at m = n+t+1)
    // Conditions verdict for m >= n+t+2; the critical point can still be missing.
    bool conditions_pass = false;
};
ConditionReport analyze(const BinomialSumSpec& spec);

struct CriticalPoint {
    i64 x0 = 0;        // canonical integer representative, a unit
    int depth = 0;     // depth of (1.12) it certifies
    int class_exp = 0; // solution known as a class mod p^class_exp
    bool strong = false;  // solves the one-deeper congruence (forces beta = 0)
};

// The reduced characteristic congruence: A'((c1+c2 k)/(d p^t)) x^k + (c1/(d p^(n+t))) B = 0
// mod p^(e-n-t), derived from (1.12) by dividing out the guaranteed p^(n+t).
PowerCongruence reduced_characteristic(const BinomialSumSpec& spec);
std::optional<CriticalPoint> solve_characteristic(const BinomialSumSpec& spec);
// All solution classes at a chosen class depth (test support).
std::vector<i64> characteristic_solutions(const BinomialSumSpec& spec, int class_exp);

struct ClosedFormData {
    Regime regime = Regime::MidRange;
    i64 lambda = 0;  // mod p; OddHigh only
    i64 alpha = 0;   // mod p, never divisible by p
    i64 beta = 0;    // mod p; 0 whenever the strong lift succeeded
    int epsilon_class = 1;  // p mod 4
    i64 chi_g_exponent = 0;  // chi(g(x0)) as exponent mod phi
    unsigned long long magnitude_sq = 0;  // the exact |S|^2 from the magnitude law
};

enum class ZeroReason { None, NotKthPower, ConditionsFail, NoCriticalPoint };

struct EvaluationResult {
    enum class Kind { Zero, ClosedForm, BruteForceFallback } kind;
    ZeroReason reason = ZeroReason::None;
    CycInt value;  // exact; the zero element for Kind::Zero
    std::optional<ClosedFormData> data;
    std::optional<CriticalPoint> critical;
    std::string note;
};

EvaluationResult closed_form(const BinomialSumSpec& spec);

// OddHigh constants: lambda via the symbolic cancellation
// beta = (c1 h + c2 k A x0^k) / (d p^(t+n+(m-n-1)/2)) * h^-1 mod p, with a
// redundant direct evaluation of x0 g1'(x0) cross-checking lambda.
ClosedFormData compute_lambda_alpha_beta(const BinomialSumSpec& spec, const CriticalPoint& cp);

// One term of Theorem 2.1's right-hand side (without the leading p^n).
struct GaussTerm {
    i64 c4 = 0;
    i64 prefactor_exp = 0;  // exponent mod phi of (chi3 chi4)bar(A') chi2chi3chi4(B)
    CycInt value;           // prefactor * G(chi3chi4, p^(m-n)) * G(conj(chi2 chi3 chi4), p^m)
};

struct GaussDecomposition {
    bool kth_power_ok = false;
    std::optional<Character> chi3;
    std::vector<GaussTerm> terms;
    CycInt rhs;           // p^n * sum of terms (the zero element when !kth_power_ok)
    CycInt lhs;           // S * G(conj(chi2), p^m), S the restricted oracle
    bool identity_holds = false;
};

// Division-free certificate of Theorem 2.1: S * G(conj chi2) = p^n * sum terms.
GaussDecomposition gauss_decomposition(const BinomialSumSpec& spec,
                                       const std::optional<Character>& chi3_override = {});

// The displayed mod p^m Jacobi closed form (chi1 = chi^l, chi2 = chi^w,
// p not dividing l w (l+w), m >= 2), as an exact cyclotomic integer.
CycInt jacobi_closed_form(i64 c, i64 l, i64 w, i64 p, int m);

// sum_{y=0}^{p-1} zeta_p^(alpha y^2), the exact quadratic Gauss element, in
// the working ring of ctx.
CycInt quadratic_gauss(const ModulusContext& ctx, i64 alpha);

}  // namespace charsum
