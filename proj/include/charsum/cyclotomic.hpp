#pragma once

// Exact arithmetic in Z[zeta_N], represented as the group ring
// Z[x]/(x^N - 1): an integer coefficient vector of length N.  Equality is
// decided modulo the cyclotomic polynomial Phi_N, never coefficientwise, so
// two different vectors can (and routinely do) denote the same algebraic
// number.  Every sum, Gauss sum and closed form in this project lives here;
// nothing is ever rounded.
//
// Coefficients are stored as 64-bit integers with certified-bound fast paths;
// any computation whose exact result cannot be certified to fit is redone in
// GMP and, if the result itself does not fit the storage, rejected with
// CoefficientOverflow.  Nothing silently wraps.

#include <complex>
#include <utility>
#include <vector>

#include "charsum/common.hpp"

namespace charsum {

class CycInt {
  public:
    explicit CycInt(i64 order);
    static CycInt constant(i64 order, i64 value);
    static CycInt root_of_unity(i64 order, i64 exponent);  // zeta_N^j, j mod N
    static CycInt from_sparse(i64 order, const std::vector<std::pair<i64, i64>>& terms);

    i64 order() const { return order_; }
    const std::vector<i64>& coeffs() const { return c_; }

    // Accumulate coeff at zeta^exp (exp taken mod N).  Oracle loops live on this.
    void add_term(i64 exp, i64 coeff);

    bool coeffwise_zero() const;
    // Nonzero (exponent, coefficient) pairs sorted by exponent.
    std::vector<std::pair<i64, i64>> sparse_terms() const;

  private:
    friend class RingOps;
    i64 order_;
    std::vector<i64> c_;
};

CycInt add(const CycInt& u, const CycInt& v);
CycInt sub(const CycInt& u, const CycInt& v);
CycInt neg(const CycInt& u);
CycInt scalar_mul(const CycInt& u, i64 s);
CycInt mul(const CycInt& u, const CycInt& v);  // cyclic convolution
CycInt mul_root(const CycInt& u, i64 j);       // times zeta_N^j: an index rotation

// Complex conjugation, i.e. the zeta -> zeta^-1 automorphism.
CycInt conj(const CycInt& u);

// True iff Phi_N divides u - v as an integer polynomial.
bool equals(const CycInt& u, const CycInt& v);
bool is_zero(const CycInt& u);

// Canonical remainder of u modulo Phi_N (degree < phi(N)).  reduce(u) == reduce(v)
// coefficientwise iff equals(u, v).
CycInt reduce(const CycInt& u);

// u * conj(u), exact.
CycInt magnitude_squared_exact(const CycInt& u);

struct Embedding {
    std::complex<double> value;
    double err_bound;  // conservative absolute bound on the rounding error
};
Embedding embed_complex(const CycInt& u);

// Re-express u in a larger ring; requires order(u) | new_order.
CycInt embed_into(const CycInt& u, i64 new_order);

// Phi_n computed by dividing x^n - 1 by the Phi_d of all proper divisors d.
// Dense coefficient vector, constant term first, monic of degree phi(n).
std::vector<i64> cyclotomic_poly(i64 n);

i64 euler_phi(i64 n);

}  // namespace charsum
