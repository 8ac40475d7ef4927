#pragma once

// Top-level conformance driver: runs the oracle, the closed form and the
// Gauss decomposition for one spec and reports exact-equality verdicts, the
// magnitude-law check, the numeric Weil-bound check and witness-independence.
// Disagreements are report entries, never silent.

#include <map>
#include <mutex>
#include <tuple>

#include "charsum/evaluate.hpp"

namespace charsum {

enum class TriState { Pass, Fail, NotApplicable };
const char* tristate_name(TriState t);

struct SpecVerdicts {
    TriState closed_vs_oracle = TriState::NotApplicable;
    TriState gauss_identity = TriState::NotApplicable;
    TriState magnitude = TriState::NotApplicable;
    TriState weil_bound = TriState::NotApplicable;
    TriState chi3_independence = TriState::NotApplicable;
    TriState zero_consistency = TriState::NotApplicable;
    TriState boundary_factorization = TriState::NotApplicable;
    bool all_pass() const;
};

struct VerifyOptions {
    // Compare |S|^2 against the oracle vector directly (not only against the
    // certified-equal closed form) whenever q <= this.
    i64 direct_magnitude_q = 4000;
    bool force_direct_magnitude = false;
    // Compute S * G(conj chi2) from the raw oracle vector instead of the
    // certified-equal closed form.
    bool force_direct_gauss_lhs = false;
};

// Cross-spec cache of Gauss sums and reduced Gauss-sum pair products; the
// pair products are what Theorem 2.1's terms share across (A, B).
class VerifyCache {
  public:
    // G(chi_c, p^level) in the full ring of ctx.
    const CycInt& gauss(const ModulusContextPtr& ctx, i64 c, int level);
    // reduce(G(chi_u, p^(m-n)) * G(conj(chi2 chi_u), p^m))
    const CycInt& gauss_pair_reduced(const ModulusContextPtr& ctx, i64 u, i64 c2, int n);
    void clear();

  private:
    std::mutex mu_;
    std::map<std::tuple<i64, int, i64, int>, std::unique_ptr<CycInt>> gauss_;
    std::map<std::tuple<i64, int, i64, i64, int>, std::unique_ptr<CycInt>> pairs_;
};

struct VerificationReport {
    i64 p = 0;
    int m = 0;
    i64 A = 0, B = 0, k = 0, l = 0, w = 0, c = 1;
    StructuralData st;
    ConditionReport conditions;
    EvaluationResult evaluation{EvaluationResult::Kind::Zero, ZeroReason::None, CycInt(1), {}, {}, ""};
    CycInt oracle_reduced{1};
    double abs_s = 0.0;                    // numeric |S|
    unsigned long long expected_mag_sq = 0;  // magnitude law constant; 0 when n/a
    SpecVerdicts verdicts;
    std::vector<std::string> notes;
};

VerificationReport verify_spec(const BinomialSumSpec& spec, VerifyCache* cache = nullptr,
                               const VerifyOptions& opt = {},
                               const std::vector<i64>* xk = nullptr);

}  // namespace charsum
