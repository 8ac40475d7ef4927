#include "charsum/characters.hpp"

#include <numeric>

namespace charsum {

namespace {
i64 canonical_exp(i64 c, i64 phi) { return mod_floor(c, phi); }
}  // namespace

Character::Character(ModulusContextPtr ctx, i64 c)
    : ctx_(std::move(ctx)), c_(canonical_exp(c, ctx_->phi())) {}

CharacterValue Character::eval(i64 x) const {
    CharacterValue v;
    v.phi = ctx_->phi();
    v.ring_order = ctx_->ring_order();
    if (!ctx_->is_unit(x)) return v;  // zero
    i64 ind = ctx_->discrete_log(x);
    v.zero = false;
    v.exp_phi = mul_mod(c_, ind, v.phi);
    v.exp_ring = v.exp_phi * ctx_->p();  // zeta_phi = zeta_N^p
    return v;
}

bool Character::is_primitive() const {
    if (m() == 1) return c_ != 0;
    return c_ % p() != 0;
}

int Character::conductor() const {
    if (c_ == 0) return 0;
    if (m() == 1) return 1;
    return m() - valuation(c_, p());
}

std::optional<Character> Character::kth_power_witness(i64 k) const {
    if (k < 1) throw std::invalid_argument("kth_power_witness: k >= 1 required");
    const i64 phi = ctx_->phi();
    const i64 kr = mod_floor(k, phi);
    const i64 g = (kr == 0) ? phi : std::gcd(kr, phi);  // (k, phi)
    if (c_ % g != 0) return std::nullopt;
    const i64 step = phi / g;
    if (step == 1) return Character(ctx_, 0);
    i64 kg = (kr / g) % step;  // a unit mod phi/g
    i64 c3 = mul_mod(c_ / g % step, inv_mod(kg, step), step);
    return Character(ctx_, c3);
}

Character Character::mul(const Character& other) const {
    if (ctx_->q() != other.ctx_->q())
        throw std::invalid_argument("character product needs matching moduli");
    return Character(ctx_, c_ + other.c_);
}

Character Character::pow(i64 e) const {
    i128 prod = static_cast<i128>(c_) * e;
    return Character(ctx_, static_cast<i64>(prod % ctx_->phi()));
}

Character Character::inverse() const { return Character(ctx_, -c_); }

Character Character::restrict_to_level(int j) const {
    if (j < 1 || j > m()) throw std::invalid_argument("restrict_to_level: need 1 <= j <= m");
    if (conductor() > j)
        throw UnsupportedSpec("character of conductor " + std::to_string(conductor()) +
                              " is not a mod p^" + std::to_string(j) + " character");
    i64 scale = 1;
    for (int i = j; i < m(); ++i) scale *= p();
    return Character(ModulusContext::get(p(), j), c_ / scale);
}

bool Character::operator==(const Character& other) const {
    return p() == other.p() && m() == other.m() && c_ == other.c_;
}

Character principal_character(const ModulusContextPtr& ctx) { return Character(ctx, 0); }

Character generator_character(const ModulusContextPtr& ctx) { return Character(ctx, 1); }

Character legendre_character(const ModulusContextPtr& ctx) {
    return Character(ctx, ctx->phi() / 2);
}

std::vector<Character> enumerate_X(const Character& chi3, i64 D, int n) {
    const i64 phi = chi3.phi();
    const int m = chi3.m();
    if (D < 1 || phi % D != 0) throw std::invalid_argument("enumerate_X: D must divide phi");
    if (n < 0 || n >= m) throw std::invalid_argument("enumerate_X: need 0 <= n < m");
    std::vector<Character> out;
    i64 step = phi / D;
    for (i64 j = 0; j < D; ++j) {
        Character chi4(chi3.context(), j * step);
        if (chi3.mul(chi4).conductor() <= m - n) out.push_back(chi4);
    }
    return out;
}

}  // namespace charsum
