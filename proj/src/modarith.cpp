#include "charsum/modarith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace charsum {

i64 mul_mod(i64 a, i64 b, i64 mod) {
    return static_cast<i64>(static_cast<i128>(a) * b % mod);
}

i64 pow_mod_raw(i64 base, i64 exp, i64 mod) {
    if (mod <= 0) throw std::invalid_argument("pow_mod_raw: modulus must be positive");
    if (exp < 0) throw std::invalid_argument("pow_mod_raw: negative exponent");
    i64 b = mod_floor(base, mod), acc = 1 % mod;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, b, mod);
        b = mul_mod(b, b, mod);
        exp >>= 1;
    }
    return acc;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 inv_mod(i64 a, i64 mod) {
    i64 r0 = mod, r1 = mod_floor(a, mod);
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        s0 -= qt * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        throw NotAUnit("inv_mod: " + std::to_string(a) + " is not invertible mod " +
                       std::to_string(mod));
    return mod_floor(s0, mod);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 w : {2, 3, 5, 7, 11, 13}) {
        if (n % w == 0) return n == w;
    }
    // Deterministic Miller-Rabin for 64-bit range.
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (a % n == 0) continue;
        i64 x = pow_mod_raw(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int valuation(i64 x, i64 p) {
    if (x == 0) throw std::invalid_argument("valuation: x must be nonzero");
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 f = 2; f * f <= n; f += (f == 2) ? 1 : 2) {
        if (n % f == 0) {
            int e = 0;
            while (n % f == 0) n /= f, ++e;
            out.emplace_back(f, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int legendre(i64 alpha, i64 p) {
    i64 a = mod_floor(alpha, p);
    if (a == 0) return 0;
    return pow_mod_raw(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

PrimePowerModulus make_modulus(i64 p, int m) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw UnsupportedSpec("modulus: p = " + std::to_string(p) + " is not an odd prime");
    if (m < 1) throw UnsupportedSpec("modulus: exponent m must be >= 1");
    constexpr i64 kMaxQ = 10'000'000;  // desk scale; keeps p^(2m) in i64 range
    i64 q = 1;
    for (int i = 0; i < m; ++i) {
        if (q > kMaxQ / p) throw UnsupportedSpec("modulus: p^m exceeds the desk-scale bound 10^7");
        q *= p;
    }
    return PrimePowerModulus{p, m, q, q / p * (p - 1)};
}

i64 pow_mod(i64 base, i64 exp, const PrimePowerModulus& mod) {
    if (exp >= 0) return pow_mod_raw(base, exp, mod.q);
    i64 b = mod_floor(base, mod.q);
    if (b % mod.p == 0)
        throw NotAUnit("pow_mod: negative exponent needs an invertible base");
    return pow_mod_raw(inv_mod(b, mod.q), -exp, mod.q);
}

PrimitiveRootData find_primitive_root(i64 p, int m) {
    PrimePowerModulus pm = make_modulus(p, m);
    auto fac = factorize(p - 1);
    i64 g = 0;
    for (i64 cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto& [ell, e] : fac) {
            (void)e;
            if (pow_mod_raw(cand, (p - 1) / ell, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw InternalError("find_primitive_root: no generator mod p");

    // Normalize so one root serves every power of p.
    i64 psq = p * p;
    i64 a = (pow_mod_raw(g, p - 1, psq) == 1) ? g + p : g;

    PrimitiveRootData out;
    out.a = a;
    out.r_tower.resize(m);
    i64 ps = 1;  // p^s
    for (int s = 1; s <= m; ++s) {
        ps *= p;
        i64 big = ps * pm.q;  // p^(s+m) <= p^(2m), fits i64 at desk scale
        i64 val = pow_mod_raw(a, ps / p * (p - 1), big);
        if ((val - 1) % ps != 0) throw InternalError("find_primitive_root: tower value not 1 mod p^s");
        i64 rs = (val - 1) / ps;  // canonical mod p^m
        if (rs % p == 0) throw InternalError("find_primitive_root: p divides r_s");
        out.r_tower[s - 1] = rs;
    }
    out.r = out.r_tower[0];
    return out;
}

StructuralData decompose_structural(i64 A, i64 B, i64 k, i64 p, int m) {
    if (A == 0 || B == 0) throw UnsupportedSpec("decompose: A and B must be nonzero");
    if (k <= 0) throw UnsupportedSpec("decompose: k must be positive");
    if (mod_floor(B, p) == 0) throw UnsupportedSpec("decompose: p divides B");
    StructuralData st;
    st.n = valuation(A, p);
    if (st.n >= m) throw UnsupportedSpec("decompose: v_p(A) >= m");
    st.aprime = A;
    for (int i = 0; i < st.n; ++i) st.aprime /= p;
    st.d = std::gcd(k, p - 1);
    st.t = valuation(k, p);
    i64 pp = 1;
    for (int i = 0; i < std::min<i64>(st.t, m - 1); ++i) pp *= p;
    st.D = st.d * pp;
    return st;
}

// ---------------------------------------------------------------------------
// ModulusContext

namespace {
std::mutex g_ctx_mutex;
std::map<std::pair<i64, int>, ModulusContextPtr> g_ctx_cache;
constexpr i64 kIndexBuildLimit = 4'000'000;
}  // namespace

ModulusContextPtr ModulusContext::get(i64 p, int m) {
    std::lock_guard<std::mutex> lock(g_ctx_mutex);
    auto key = std::make_pair(p, m);
    auto it = g_ctx_cache.find(key);
    if (it != g_ctx_cache.end()) return it->second;
    auto ctx = std::make_shared<const ModulusContext>(p, m);
    g_ctx_cache.emplace(key, ctx);
    return ctx;
}

ModulusContext::ModulusContext(i64 p, int m)
    : mod_(make_modulus(p, m)), root_(find_primitive_root(p, m)) {
    phi_factors_ = factorize(p - 1);
    if (m > 1) phi_factors_.emplace_back(p, m - 1);
    if (mod_.q <= kIndexBuildLimit) {
        index_.assign(mod_.q, -1);
        i64 x = 1;
        for (i64 i = 0; i < mod_.phi; ++i) {
            index_[x] = static_cast<std::int32_t>(i);
            x = mul_mod(x, root_.a, mod_.q);
        }
        if (x != 1) throw InternalError("index table: root order mismatch");
    }
}

const std::vector<std::int32_t>& ModulusContext::index_table() const {
    if (index_.empty())
        throw BudgetExceeded("index table not built for q = " + std::to_string(mod_.q));
    return index_;
}

i64 ModulusContext::discrete_log(i64 x, i64 table_threshold) const {
    i64 xr = mod_floor(x, mod_.q);
    if (xr % mod_.p == 0)
        throw NotAUnit("discrete_log: p divides " + std::to_string(x));
    if (mod_.q <= table_threshold && !index_.empty()) return index_[xr];
    return pohlig_hellman(xr);
}

// Digit-by-digit discrete log in the order-ell^e subgroup, baby-step/giant-step
// inside each order-ell slice.
i64 ModulusContext::subgroup_log(i64 h, i64 ell, int e) const {
    const i64 q = mod_.q, phi = mod_.phi;
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= ell;
    i64 gamma = pow_mod_raw(root_.a, phi / pe, q);  // order ell^e
    i64 base = pow_mod_raw(gamma, pe / ell, q);     // order ell

    i64 steps = 1;
    while (steps * steps < ell) ++steps;
    std::unordered_map<i64, i64> baby;
    baby.reserve(static_cast<size_t>(steps) * 2);
    i64 cur = 1;
    for (i64 j = 0; j < steps; ++j) {
        baby.emplace(cur, j);
        cur = mul_mod(cur, base, q);
    }
    i64 giant = inv_mod(cur, q);  // base^-steps

    auto order_ell_log = [&](i64 target) -> i64 {
        i64 t = target;
        for (i64 i = 0; i * steps < ell + steps; ++i) {
            auto it = baby.find(t);
            if (it != baby.end()) return i * steps + it->second;
            t = mul_mod(t, giant, q);
        }
        throw InternalError("bsgs: element not in subgroup");
    };

    i64 result = 0, pk = 1;
    i64 gamma_inv = inv_mod(gamma, q);
    i64 rest = h;
    for (int kdig = 0; kdig < e; ++kdig) {
        i64 probe = pow_mod_raw(rest, pe / (pk * ell), q);
        i64 digit = order_ell_log(probe);
        result += digit * pk;
        rest = mul_mod(rest, pow_mod_raw(gamma_inv, digit * pk, q), q);
        pk *= ell;
    }
    return result;
}

i64 ModulusContext::pohlig_hellman(i64 x) const {
    const i64 phi = mod_.phi;
    i64 result = 0, mod_so_far = 1;
    for (auto& [ell, e] : phi_factors_) {
        i64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= ell;
        i64 h = pow_mod_raw(x, phi / pe, mod_.q);
        i64 yi = subgroup_log(h, ell, e);
        // CRT combine result (mod mod_so_far) with yi (mod pe).
        i64 diff = mod_floor(yi - result, pe);
        i64 inc = mul_mod(diff, inv_mod(mod_so_far % pe, pe), pe);
        result += inc * mod_so_far;
        mod_so_far *= pe;
    }
    return mod_floor(result, phi);
}

// ---------------------------------------------------------------------------
// Power congruences

i64 PowerCongruence::eval(i64 x, i64 mod) const {
    i64 xe = pow_mod_raw(x, k, mod);
    return mod_floor(mul_mod(mod_floor(U, mod), xe, mod) + V, mod);
}

std::vector<i64> solve_power_congruence(const PowerCongruence& cg, int e) {
    if (e < 1) throw std::invalid_argument("solve_power_congruence: e >= 1 required");
    if (mod_floor(cg.U, cg.p) == 0)
        throw UnsupportedSpec("solve_power_congruence: p divides the leading coefficient");
    const i64 p = cg.p;
    // Base level: x^k = -V/U mod p over units.
    i64 rhs = mod_floor(mul_mod(mod_floor(-cg.V, p), inv_mod(mod_floor(cg.U, p), p), p), p);
    std::vector<i64> sols;
    if (rhs == 0) return sols;  // x must be a unit, x^k never 0
    auto ctx = ModulusContext::get(p, 1);
    i64 ind = ctx->discrete_log(rhs);
    i64 g = std::gcd(cg.k, p - 1);
    if (ind % g != 0) return sols;
    i64 step = (p - 1) / g;
    i64 base_exp = mod_floor(mul_mod(ind / g, inv_mod((cg.k / g) % (p - 1), step), step), step);
    for (i64 j = 0; j < g; ++j)
        sols.push_back(pow_mod_raw(ctx->root().a, base_exp + j * step, p));
    std::sort(sols.begin(), sols.end());

    std::vector<i64> out;
    for (i64 s : sols) {
        auto lifted = hensel_lift_power_congruence(cg, s, 1, e);
        out.insert(out.end(), lifted.begin(), lifted.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> hensel_lift_power_congruence(const PowerCongruence& cg, i64 c0, int e_from,
                                              int e_to) {
    if (e_to < e_from) throw std::invalid_argument("hensel: e_to < e_from");
    const i64 p = cg.p;
    i64 pe = 1;
    for (int i = 0; i < e_from; ++i) pe *= p;
    if (cg.eval(mod_floor(c0, pe), pe) != 0)
        throw std::invalid_argument("hensel: c0 does not solve the congruence mod p^e_from");

    std::vector<i64> classes{mod_floor(c0, pe)};
    for (int lev = e_from; lev < e_to; ++lev) {
        i64 pnext = pe * p;
        std::vector<i64> next;
        for (i64 c : classes) {
            // F'(x) = k U x^(k-1); unit derivative gives the unique Newton lift.
            i64 deriv = mul_mod(mul_mod(mod_floor(cg.k, p), mod_floor(cg.U, p), p),
                                pow_mod_raw(c, cg.k - 1, p), p);
            if (deriv != 0) {
                i64 fc = cg.eval(c, pnext);
                i64 y = mod_floor(mul_mod(-(fc / pe), inv_mod(deriv, p), p), p);
                next.push_back(c + y * pe);
            } else {
                for (i64 i = 0; i < p; ++i) {
                    i64 cand = c + i * pe;
                    if (cg.eval(cand, pnext) == 0) next.push_back(cand);
                }
            }
        }
        classes = std::move(next);
        pe = pnext;
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

}  // namespace charsum
