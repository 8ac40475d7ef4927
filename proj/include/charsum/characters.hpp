#pragma once

// Multiplicative characters mod p^m, stored as an exponent c against the one
// fixed primitive root of the modulus: chi(a) = e_{phi(p^m)}(c).  All
// character identity is relative to that root; cross-root identity is out of
// scope.  Values are carried as exponents, never as floating complex.

#include <optional>
#include <vector>

#include "charsum/modarith.hpp"

namespace charsum {

// Either zero (argument not a unit) or the root of unity zeta_N^exp_ring,
// N = p^m (p-1) the working cyclotomic order of the modulus.  exp_phi is the
// same value expressed against e_{phi(p^m)}.
struct CharacterValue {
    bool zero = true;
    i64 exp_phi = 0;
    i64 phi = 1;
    i64 exp_ring = 0;
    i64 ring_order = 1;
};

class Character {
  public:
    Character(ModulusContextPtr ctx, i64 c);

    const ModulusContextPtr& context() const { return ctx_; }
    i64 exponent() const { return c_; }
    i64 p() const { return ctx_->p(); }
    int m() const { return ctx_->m(); }
    i64 q() const { return ctx_->q(); }
    i64 phi() const { return ctx_->phi(); }

    CharacterValue eval(i64 x) const;

    bool is_principal() const { return c_ == 0; }
    // Not induced by any mod p^(m-1) character.
    bool is_primitive() const;
    // Smallest j with chi induced from mod p^j; 0 for the principal character.
    int conductor() const;

    // Some chi3 with chi3^k = chi, smallest nonnegative exponent, if one exists.
    std::optional<Character> kth_power_witness(i64 k) const;

    Character mul(const Character& other) const;
    Character pow(i64 e) const;
    Character inverse() const;
    Character conjugate() const { return inverse(); }

    // The mod p^j character inducing chi; requires conductor() <= j.
    Character restrict_to_level(int j) const;

    bool operator==(const Character& other) const;

  private:
    ModulusContextPtr ctx_;
    i64 c_;
};

Character principal_character(const ModulusContextPtr& ctx);
Character generator_character(const ModulusContextPtr& ctx);  // c = 1
// chi*: the mod p^m extension of the Legendre symbol (c = phi/2).
Character legendre_character(const ModulusContextPtr& ctx);

// Theorem 2.1's set X: the chi4 with chi4^D = chi0 such that chi3*chi4 is a
// mod p^(m-n) character (conductor <= m-n).  At most D entries.
std::vector<Character> enumerate_X(const Character& chi3, i64 D, int n);

}  // namespace charsum
