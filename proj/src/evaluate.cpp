#include "charsum/evaluate.hpp"

#include <climits>

namespace charsum {

namespace {

int val_or_inf(i64 x, i64 p) { return x == 0 ? INT_MAX : valuation(x, p); }

int val128(i128 x, i64 p) {
    if (x == 0) return INT_MAX;
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
}

i64 ipow(i64 b, int e) {
    i64 out = 1;
    for (int i = 0; i < e; ++i) out *= b;
    return out;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Boundary: return "boundary";
        case Regime::MidRange: return "mid";
        case Regime::EvenHigh: return "even-high";
        case Regime::OddHigh: return "odd-high";
    }
    return "?";
}

i64 BinomialSumSpec::h_at(i64 x) const {
    const i64 q = ctx->q();
    return mod_floor(mul_mod(mod_floor(A, q), pow_mod_raw(x, k, q), q) + mod_floor(B, q), q);
}

BinomialSumSpec make_spec(i64 p, int m, i64 A, i64 B, i64 k, i64 l, i64 w, i64 c) {
    BinomialSumSpec s;
    s.ctx = ModulusContext::get(p, m);
    s.st = decompose_structural(A, B, k, p, m);
    s.A = A;
    s.B = B;
    s.k = k;
    s.l = l;
    s.w = w;
    const i64 phi = s.ctx->phi();
    s.c = mod_floor(c, phi);
    s.c1 = static_cast<i64>(mod_floor(static_cast<i64>(static_cast<i128>(s.c) * l % phi), phi));
    s.c2 = static_cast<i64>(mod_floor(static_cast<i64>(static_cast<i128>(s.c) * w % phi), phi));
    const bool chi2_primitive = (m == 1) ? (s.c2 != 0) : (s.c2 % p != 0);
    if (!chi2_primitive)
        throw UnsupportedSpec("chi2 = chi^w must be primitive (p divides c*w)");
    return s;
}

ConditionReport analyze(const BinomialSumSpec& spec) {
    ConditionReport rep;
    const i64 p = spec.p();
    const int m = spec.m(), n = spec.st.n, t = spec.st.t;

    if (m <= n + t + 1)
        rep.regime = Regime::Boundary;
    else if (m <= 2 * t + n + 2)
        rep.regime = Regime::MidRange;
    else
        rep.regime = ((m - n) % 2 == 0) ? Regime::EvenHigh : Regime::OddHigh;

    rep.depth = std::min<i64>(m - 1, floor_div(m + n, 2) + t);
    rep.kth_power_ok = (spec.c1 % spec.st.D == 0);
    rep.val_l_exact = (val_or_inf(spec.c1, p) == n + t);
    const i128 lwk = static_cast<i128>(spec.c1) + static_cast<i128>(spec.c2) * spec.k;
    rep.val_lwk_exact = (val128(lwk, p) == t);
    const i64 pnt = ipow(p, std::min(n + t, m));  // p^(n+t) can exceed phi's p-part only off-regime
    rep.boundary_div = (spec.c1 % pnt == 0);
    rep.conditions_pass = rep.kth_power_ok && rep.val_l_exact && rep.val_lwk_exact;
    return rep;
}

PowerCongruence reduced_characteristic(const BinomialSumSpec& spec) {
    const ConditionReport rep = analyze(spec);
    if (rep.regime == Regime::Boundary)
        throw std::logic_error("reduced_characteristic: no characteristic equation at the boundary");
    if (!rep.conditions_pass)
        throw std::logic_error("reduced_characteristic: conditions (1.11)/(1.14) must hold first");
    const i64 p = spec.p();
    const int n = spec.st.n, t = spec.st.t;
    const i64 d = spec.st.d;
    const int class_exp = rep.depth - n - t;
    const i64 pe = ipow(p, class_exp);

    const i128 lwk = static_cast<i128>(spec.c1) + static_cast<i128>(spec.c2) * spec.k;
    const i128 dpt = static_cast<i128>(d) * ipow(p, t);
    const i64 U = mul_mod(mod_floor(spec.st.aprime, pe),
                          static_cast<i64>(mod_floor(static_cast<i64>((lwk / dpt) % pe), pe)), pe);
    const i64 C1 = (spec.c1 / d) / ipow(p, n + t);
    const i64 V = mul_mod(mod_floor(C1, pe), mod_floor(spec.B, pe), pe);
    return PowerCongruence{p, U, V, spec.k};
}

std::vector<i64> characteristic_solutions(const BinomialSumSpec& spec, int class_exp) {
    return solve_power_congruence(reduced_characteristic(spec), class_exp);
}

std::optional<CriticalPoint> solve_characteristic(const BinomialSumSpec& spec) {
    const ConditionReport rep = analyze(spec);
    if (rep.regime == Regime::Boundary || !rep.conditions_pass) return std::nullopt;
    const int n = spec.st.n, t = spec.st.t;
    const int class_exp = rep.depth - n - t;
    const PowerCongruence cg = reduced_characteristic(spec);
    auto sols = solve_power_congruence(cg, class_exp);
    if (sols.empty()) return std::nullopt;

    CriticalPoint cp;
    cp.depth = rep.depth;
    cp.class_exp = class_exp;
    cp.x0 = sols.front();
    if (rep.regime == Regime::OddHigh) {
        auto deeper = solve_power_congruence(cg, class_exp + 1);
        if (!deeper.empty()) {
            cp.x0 = deeper.front();
            cp.class_exp = class_exp + 1;
            cp.strong = true;
        }
    }
    if (!spec.ctx->is_unit(cp.x0) || !spec.ctx->is_unit(spec.h_at(cp.x0)))
        throw InternalError("critical point hit a non-unit x0 or h(x0)");
    return cp;
}

ClosedFormData compute_lambda_alpha_beta(const BinomialSumSpec& spec, const CriticalPoint& cp) {
    const ConditionReport rep = analyze(spec);
    if (rep.regime != Regime::OddHigh)
        throw std::logic_error("lambda/alpha/beta only exist in the odd high regime");
    const i64 p = spec.p();
    const int m = spec.m(), n = spec.st.n, t = spec.st.t;
    const i64 d = spec.st.d;
    const int s = (m - n - 1) / 2;
    const int M = t + n + s + 1;
    if (M > m) throw InternalError("lambda depth exceeds the modulus");
    const i64 pM = ipow(p, M);
    const i64 pM1 = pM / p;  // p^(M-1)
    const i64 x0 = cp.x0;
    const i64 h0 = spec.h_at(x0);

    // NUM = c1 h(x0) + c2 k A x0^k mod d p^M, then strip d and p^(M-1).
    const i64 dpM = d * pM;
    const i64 t1 = mul_mod(spec.c1 % dpM, h0 % dpM, dpM);
    const i64 c2k = static_cast<i64>(static_cast<i128>(spec.c2) * spec.k % dpM);
    const i64 t2 = mul_mod(mul_mod(c2k, mod_floor(spec.A, dpM), dpM), pow_mod_raw(x0, spec.k, dpM), dpM);
    const i64 num = mod_floor(t1 + t2, dpM);
    if (num % d != 0) throw InternalError("beta: d does not divide the derivative numerator");
    const i64 numd = num / d;  // mod p^M
    if (numd % pM1 != 0)
        throw InternalError("beta: critical point does not reach depth p^(t+n+(m-n-1)/2)");
    const i64 nu = (numd / pM1) % p;

    ClosedFormData out;
    out.regime = rep.regime;
    out.epsilon_class = static_cast<int>(p % 4);
    const i64 h0p = h0 % p;
    out.beta = mul_mod(nu, inv_mod(h0p, p), p);
    const i64 g1p = mul_mod(pow_mod_raw(x0 % p, spec.c1, p), pow_mod_raw(h0p, spec.c2, p), p);
    out.lambda = mul_mod(g1p, out.beta, p);

    // Redundant direct route: x0 g1'(x0) = g1(x0) NUM / h(x0), divided at full depth.
    {
        const i64 g1M = mul_mod(pow_mod_raw(x0, spec.c1, pM), pow_mod_raw(h0, spec.c2, pM), pM);
        const i64 W = mul_mod(mul_mod(g1M, numd % pM, pM), inv_mod(h0 % pM, pM), pM);
        if (W % pM1 != 0) throw InternalError("lambda cross-check: depth mismatch");
        if ((W / pM1) % p != out.lambda)
            throw InternalError("lambda cross-check: symbolic and direct routes disagree");
    }

    // alpha = 2^-1 c2 h^-2 r A' B (k/(d p^t))^2 x0^k mod p
    const i64 kk = (spec.k / d) / ipow(p, t);
    i64 alpha = inv_mod(2, p);
    alpha = mul_mod(alpha, spec.c2 % p, p);
    const i64 h0inv = inv_mod(h0p, p);
    alpha = mul_mod(alpha, mul_mod(h0inv, h0inv, p), p);
    alpha = mul_mod(alpha, spec.ctx->root().r % p, p);
    alpha = mul_mod(alpha, mod_floor(spec.st.aprime, p), p);
    alpha = mul_mod(alpha, mod_floor(spec.B, p), p);
    alpha = mul_mod(alpha, mul_mod(kk % p, kk % p, p), p);
    alpha = mul_mod(alpha, pow_mod_raw(x0, spec.k, p), p);
    if (alpha == 0) throw InternalError("alpha is divisible by p");
    out.alpha = alpha;

    if (cp.strong && out.beta != 0)
        throw InternalError("strong lift succeeded but beta != 0");
    return out;
}

EvaluationResult closed_form(const BinomialSumSpec& spec) {
    const ConditionReport rep = analyze(spec);
    const i64 p = spec.p();
    const int m = spec.m(), n = spec.st.n, t = spec.st.t;
    const i64 N = spec.ring_order();

    if (rep.regime == Regime::Boundary) {
        EvaluationResult res{EvaluationResult::Kind::BruteForceFallback, ZeroReason::None,
                             binomial_sum(spec.chi1(), spec.chi2(), spec.A, spec.B, spec.k, true),
                             std::nullopt, std::nullopt,
                             rep.boundary_div && m == n + t + 1
                                 ? "boundary m = n+t+1; p^(m-1) * (mod p sum) factorization applies"
                                 : "boundary regime, no closed form"};
        return res;
    }

    auto zero = [&](ZeroReason why, const char* note) {
        return EvaluationResult{EvaluationResult::Kind::Zero, why, CycInt(N), std::nullopt,
                                std::nullopt, note};
    };
    if (!rep.kth_power_ok) return zero(ZeroReason::NotKthPower, "chi1 is not a k-th power");
    if (!rep.conditions_pass)
        return zero(ZeroReason::ConditionsFail, "valuation conditions (1.14) fail");
    auto cp = solve_characteristic(spec);
    if (!cp) return zero(ZeroReason::NoCriticalPoint, "characteristic congruence has no unit solution");

    const i64 h0 = spec.h_at(cp->x0);
    const i64 phi = spec.phi();
    const i64 E = mod_floor(static_cast<i64>((static_cast<i128>(spec.c1) * spec.ctx->discrete_log(cp->x0) +
                                              static_cast<i128>(spec.c2) * spec.ctx->discrete_log(h0)) %
                                             phi),
                            phi);

    ClosedFormData data;
    data.regime = rep.regime;
    data.epsilon_class = static_cast<int>(p % 4);
    data.chi_g_exponent = E;

    CycInt value(N);
    if (rep.regime == Regime::MidRange) {
        const i64 scalar = spec.st.d * ipow(p, m - 1);
        value = scalar_mul(CycInt::root_of_unity(N, p * E), scalar);
        data.magnitude_sq = static_cast<unsigned long long>(scalar) * scalar;
    } else if (rep.regime == Regime::EvenHigh) {
        const i64 scalar = spec.st.d * ipow(p, (m + n) / 2 + t);
        value = scalar_mul(CycInt::root_of_unity(N, p * E), scalar);
        data.magnitude_sq = static_cast<unsigned long long>(scalar) * scalar;
    } else {
        data = compute_lambda_alpha_beta(spec, *cp);
        data.chi_g_exponent = E;
        const i64 scalar = spec.st.d * ipow(p, (m + n - 1) / 2 + t);
        const i64 e2 = mod_floor(
            -mul_mod(mul_mod(data.beta, data.beta, p), inv_mod(mul_mod(4 % p, data.alpha, p), p), p), p);
        CycInt qg = quadratic_gauss(*spec.ctx, data.alpha);
        value = scalar_mul(mul_root(qg, p * E + (p - 1) * (spec.q() / p) * e2), scalar);
        data.magnitude_sq = static_cast<unsigned long long>(scalar) * scalar * p;
    }
    return EvaluationResult{EvaluationResult::Kind::ClosedForm, ZeroReason::None, std::move(value),
                            data, cp, regime_name(rep.regime)};
}

CycInt quadratic_gauss(const ModulusContext& ctx, i64 alpha) {
    const i64 p = ctx.p();
    const i64 N = ctx.ring_order();
    const i64 scale = (p - 1) * (ctx.q() / p);  // zeta_p = zeta_N^((p-1) p^(m-1))
    CycInt out(N);
    const i64 am = mod_floor(alpha, p);
    for (i64 y = 0; y < p; ++y) out.add_term(scale * mul_mod(am, mul_mod(y, y, p), p), 1);
    return out;
}

GaussDecomposition gauss_decomposition(const BinomialSumSpec& spec,
                                       const std::optional<Character>& chi3_override) {
    const i64 p = spec.p();
    const int m = spec.m(), n = spec.st.n;
    const i64 phi = spec.phi(), N = spec.ring_order();

    GaussDecomposition out{false, std::nullopt, {}, CycInt(N), CycInt(N), false};
    CycInt S = binomial_sum(spec.chi1(), spec.chi2(), spec.A, spec.B, spec.k, true);
    out.lhs = mul(S, gauss_sum(spec.chi2().conjugate(), m));

    std::optional<Character> chi3 = chi3_override;
    if (!chi3) chi3 = spec.chi1().kth_power_witness(spec.k);
    if (chi3 && !(chi3->pow(spec.k) == spec.chi1()))
        throw std::invalid_argument("gauss_decomposition: chi3 is not a k-th root of chi1");
    out.kth_power_ok = chi3.has_value();
    if (!out.kth_power_ok) {
        out.identity_holds = is_zero(out.lhs);  // Lemma 1.1 forces S = 0
        return out;
    }
    out.chi3 = chi3;

    const i64 indA = spec.ctx->discrete_log(mod_floor(spec.st.aprime, spec.q()));
    const i64 indB = spec.ctx->discrete_log(mod_floor(spec.B, spec.q()));
    CycInt total(N);
    for (const Character& chi4 : enumerate_X(*chi3, spec.st.D, n)) {
        const i64 u = mod_floor(chi3->exponent() + chi4.exponent(), phi);
        const i64 E4 = mod_floor(
            static_cast<i64>((static_cast<i128>(phi - u) * indA +
                              static_cast<i128>(mod_floor(spec.c2 + u, phi)) * indB) %
                             phi),
            phi);
        CycInt prod = mul(gauss_sum(Character(spec.ctx, u), m - n),
                          gauss_sum(Character(spec.ctx, phi - mod_floor(spec.c2 + u, phi)), m));
        GaussTerm term{chi4.exponent(), E4, mul_root(prod, p * E4)};
        total = add(total, term.value);
        out.terms.push_back(std::move(term));
    }
    out.rhs = scalar_mul(total, ipow(p, n));
    out.identity_holds = equals(out.lhs, out.rhs);
    return out;
}

CycInt jacobi_closed_form(i64 c, i64 l, i64 w, i64 p, int m) {
    if (m < 2) throw UnsupportedSpec("jacobi_closed_form: m >= 2 required");
    auto ctx = ModulusContext::get(p, m);
    const i64 phi = ctx->phi(), q = ctx->q(), N = ctx->ring_order();
    const i64 cc = mod_floor(c, phi);
    if (cc % p == 0) throw UnsupportedSpec("jacobi_closed_form: chi must be primitive");
    if (mod_floor(l, p) == 0 || mod_floor(w, p) == 0 || mod_floor(l + w, p) == 0)
        throw UnsupportedSpec("jacobi_closed_form: p must not divide l w (l+w)");

    const i64 c1 = mod_floor(static_cast<i64>(static_cast<i128>(cc) * l % phi), phi);
    const i64 c2 = mod_floor(static_cast<i64>(static_cast<i128>(cc) * w % phi), phi);
    const i64 indl = ctx->discrete_log(mod_floor(l, q));
    const i64 indw = ctx->discrete_log(mod_floor(w, q));
    const i64 indlw = ctx->discrete_log(mod_floor(l + w, q));
    const i64 E = mod_floor(
        static_cast<i64>((static_cast<i128>(c1) * indl + static_cast<i128>(c2) * indw -
                          static_cast<i128>(mod_floor(c1 + c2, phi)) * indlw) %
                         phi),
        phi);

    if (m % 2 == 0)
        return scalar_mul(CycInt::root_of_unity(N, p * E), ipow(p, m / 2));

    const i64 r = ctx->root().r;
    const int sign = legendre(mod_floor(static_cast<i64>(static_cast<i128>(-2) * mod_floor(r, p) % p * (cc % p)), p), p) *
                     legendre(mod_floor(static_cast<i64>(static_cast<i128>(mod_floor(l, p)) * mod_floor(w, p) % p *
                                                         mod_floor(l + w, p)),
                                        p),
                              p);
    CycInt qg = quadratic_gauss(*ctx, 1);
    return scalar_mul(mul_root(qg, p * E), sign * ipow(p, (m - 1) / 2));
}

}  // namespace charsum
