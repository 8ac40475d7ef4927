#include "charsum/sums.hpp"

#include <numeric>

namespace charsum {

namespace {

void check_oracle_budget(i64 q) {
    if (q > kOracleMaxQ)
        throw BudgetExceeded("oracle refuses q = " + std::to_string(q) + " > 10^7");
}

void require_same_context(const Character& a, const Character& b) {
    if (a.p() != b.p() || a.m() != b.m())
        throw std::invalid_argument("characters must share one modulus");
}

}  // namespace

std::vector<i64> power_table(const ModulusContext& ctx, i64 k) {
    const i64 q = ctx.q();
    check_oracle_budget(q);
    std::vector<i64> xk(q);
    for (i64 x = 0; x < q; ++x) xk[x] = pow_mod_raw(x, k, q);
    return xk;
}

CycInt binomial_sum(const Character& chi1, const Character& chi2, i64 A, i64 B, i64 k,
                    bool restrict_units, const std::vector<i64>* xk) {
    require_same_context(chi1, chi2);
    const auto& ctx = *chi1.context();
    const i64 p = ctx.p(), q = ctx.q(), phi = ctx.phi();
    check_oracle_budget(q);
    const auto& ind = ctx.index_table();
    const i64 c1 = chi1.exponent(), c2 = chi2.exponent();
    const i64 Am = mod_floor(A, q), Bm = mod_floor(B, q);
    const bool principal_chi1 = (c1 == 0);

    CycInt out(ctx.ring_order());
    for (i64 x = 1; x <= q; ++x) {
        const i64 xr = x % q;
        const bool unit = (xr % p) != 0;
        if (!unit && (restrict_units || !principal_chi1)) continue;
        const i64 xe = xk ? (*xk)[xr] : pow_mod_raw(xr, k, q);
        const i64 h = mod_floor(mul_mod(Am, xe, q) + Bm, q);
        if (h % p == 0) continue;  // chi2 vanishes
        i64 e = mod_floor(c2 * static_cast<i128>(ind[h]) % phi, phi);
        if (unit) e = mod_floor(e + c1 * static_cast<i128>(ind[xr]) % phi, phi);
        out.add_term(p * e, 1);
    }
    return out;
}

CycInt gauss_sum(const Character& chi, int j) {
    const auto& ctx = *chi.context();
    const i64 p = ctx.p();
    if (j < 1 || j > ctx.m()) throw std::invalid_argument("gauss_sum: need 1 <= j <= m");
    const Character chij = chi.restrict_to_level(j);
    const auto& cj = *chij.context();
    const i64 qj = cj.q(), phij = cj.phi();
    check_oracle_budget(qj);
    const auto& ind = cj.index_table();
    const i64 N = ctx.ring_order();
    const i64 mul_scale = N / phij;  // zeta_phi(p^j) = zeta_N^(N/phi_j)
    const i64 add_scale = N / qj;    // zeta_{p^j}   = zeta_N^(N/p^j)
    const i64 c = chij.exponent();

    CycInt out(N);
    for (i64 x = 1; x <= qj; ++x) {
        const i64 xr = x % qj;
        if (xr % p == 0) continue;
        const i64 e = mod_floor(c * static_cast<i128>(ind[xr]) % phij, phij);
        out.add_term(mul_scale * e + add_scale * x, 1);
    }
    return out;
}

CycInt jacobi_sum(const Character& chi1, const Character& chi2) {
    require_same_context(chi1, chi2);
    const auto& ctx = *chi1.context();
    const i64 p = ctx.p(), q = ctx.q(), phi = ctx.phi();
    check_oracle_budget(q);
    const auto& ind = ctx.index_table();
    const i64 c1 = chi1.exponent(), c2 = chi2.exponent();

    CycInt out(ctx.ring_order());
    for (i64 x = 1; x <= q; ++x) {
        const i64 xr = x % q;
        if (xr % p == 0) continue;
        const i64 y = mod_floor(1 - xr, q);
        if (y % p == 0) continue;
        const i64 e = mod_floor((c1 * static_cast<i128>(ind[xr]) + c2 * static_cast<i128>(ind[y])) % phi, phi);
        out.add_term(p * e, 1);
    }
    return out;
}

CycInt twisted_gauss(const Character& chi, i64 A, int j) {
    const auto& ctx = *chi.context();
    const i64 p = ctx.p();
    if (j < 1 || j > ctx.m()) throw std::invalid_argument("twisted_gauss: need 1 <= j <= m");
    const Character chij = chi.restrict_to_level(j);
    const auto& cj = *chij.context();
    const i64 qj = cj.q(), phij = cj.phi();
    check_oracle_budget(qj);
    const auto& ind = cj.index_table();
    const i64 N = ctx.ring_order();
    const i64 mul_scale = N / phij;
    const i64 add_scale = N / qj;
    const i64 c = chij.exponent();
    const i64 Am = mod_floor(A, qj);

    CycInt out(N);
    for (i64 y = 1; y <= qj; ++y) {
        const i64 yr = y % qj;
        if (yr % p == 0) continue;
        const i64 e = mod_floor(c * static_cast<i128>(ind[yr]) % phij, phij);
        out.add_term(mul_scale * e + add_scale * mul_mod(Am, yr, qj), 1);
    }
    return out;
}

CycInt kloosterman_mult(const Character& chi, i64 A) {
    const auto& ctx = *chi.context();
    const i64 p = ctx.p(), q = ctx.q(), phi = ctx.phi();
    check_oracle_budget(q);
    if (mod_floor(A, p) == 0) throw UnsupportedSpec("kloosterman: p divides A");
    const auto& ind = ctx.index_table();
    const i64 c = chi.exponent();
    const i64 Am = mod_floor(A, q);
    const i64 a = ctx.root().a;

    CycInt out(ctx.ring_order());
    for (i64 x = 1; x < q; ++x) {
        if (x % p == 0) continue;
        const i64 xinv = pow_mod_raw(a, phi - ind[x], q);
        const i64 u = mod_floor(mul_mod(Am, x, q) + xinv, q);
        if (u % p == 0) continue;
        out.add_term(p * mod_floor(c * static_cast<i128>(ind[u]) % phi, phi), 1);
    }
    return out;
}

std::pair<CycInt, CycInt> jacobsthal_pair(i64 p, i64 k, i64 B) {
    if (!is_prime(p) || p % 2 == 0) throw UnsupportedSpec("jacobsthal: p must be an odd prime");
    if (k < 1 || (p - 1) % (2 * k) != 0)
        throw UnsupportedSpec("jacobsthal: requires p = 1 mod 2k");
    if (mod_floor(B, p) == 0) throw UnsupportedSpec("jacobsthal: p divides B");
    const i64 N = p * (p - 1);
    i64 s1 = 0, s2 = 0;
    for (i64 x = 0; x < p; ++x) {
        const i64 h = mod_floor(pow_mod_raw(x, k, p) + B, p);
        if (x > 0) s1 += legendre(x, p) * legendre(h, p);
        s2 += legendre(h, p);
    }
    return {CycInt::constant(N, s1), CycInt::constant(N, s2)};
}

CrtCheckResult crt_product_check(i64 p1, int m1, i64 c1, i64 p2, int m2, i64 c2, i64 l, i64 A,
                                 i64 k, i64 B, i64 w) {
    if (l < 0 || w < 0 || k < 1)
        throw std::invalid_argument("crt_product_check: polynomial case needs l, w >= 0, k >= 1");
    auto ca = ModulusContext::get(p1, m1);
    auto cb = ModulusContext::get(p2, m2);
    const i64 r = ca->q(), s = cb->q();
    if (std::gcd(r, s) != 1) throw std::invalid_argument("crt_product_check: moduli must be coprime");
    check_oracle_budget(r * s);
    const i64 N = std::lcm(ca->phi(), cb->phi());

    auto g_exp = [&](const ModulusContext& ctx, i64 c, i64 x) -> std::pair<bool, i64> {
        // chi(g(x)) for g = x^l (A x^k + B)^w; zero flag when p | g(x)
        const i64 q = ctx.q(), phi = ctx.phi();
        const i64 xe = pow_mod_raw(x, k, q);
        const i64 h = mod_floor(mul_mod(mod_floor(A, q), xe, q) + B, q);
        const i64 gv = mul_mod(pow_mod_raw(x, l, q), pow_mod_raw(h, w, q), q);
        if (gv % ctx.p() == 0) return {false, 0};
        return {true, mod_floor(c * static_cast<i128>(ctx.discrete_log(gv)) % phi, phi)};
    };

    CycInt lhs(N);
    for (i64 x = 0; x < r * s; ++x) {
        auto [ua, ea] = g_exp(*ca, c1, x % r);
        if (!ua) continue;
        auto [ub, eb] = g_exp(*cb, c2, x % s);
        if (!ub) continue;
        lhs.add_term(ea * (N / ca->phi()) + eb * (N / cb->phi()), 1);
    }
    CycInt fa(N), fb(N);
    for (i64 x = 0; x < r; ++x) {
        auto [u, e] = g_exp(*ca, c1, x);
        if (u) fa.add_term(e * (N / ca->phi()), 1);
    }
    for (i64 x = 0; x < s; ++x) {
        auto [u, e] = g_exp(*cb, c2, x);
        if (u) fb.add_term(e * (N / cb->phi()), 1);
    }
    CycInt rhs = mul(fa, fb);
    CrtCheckResult out{equals(lhs, rhs), std::move(lhs), std::move(rhs)};
    return out;
}

ReductionOutcome reduction_identity_check(const Character& chi1, const Character& chi2, i64 A,
                                          i64 B, i64 k) {
    require_same_context(chi1, chi2);
    const int m = chi1.m();
    if (m < 2) throw std::invalid_argument("reduction_identity_check: m >= 2 required");
    ReductionOutcome out;
    if (chi2.is_primitive()) return out;  // NotApplicable, trivially passes

    CycInt sum_m = binomial_sum(chi1, chi2, A, B, k, /*restrict_units=*/true);
    if (chi1.is_primitive()) {
        out.kind = ReductionCase::PrimitiveChi1Vanishes;
        out.pass = is_zero(sum_m);
        return out;
    }
    // Both induced from one level down: S_m = p * S_{m-1}.
    out.kind = ReductionCase::FactorsThroughLowerLevel;
    Character lo1 = chi1.restrict_to_level(m - 1);
    Character lo2 = chi2.restrict_to_level(m - 1);
    CycInt sum_lo = binomial_sum(lo1, lo2, A, B, k, true);
    CycInt lifted = scalar_mul(embed_into(sum_lo, chi1.context()->ring_order()), chi1.p());
    out.pass = equals(sum_m, lifted);
    return out;
}

}  // namespace charsum
