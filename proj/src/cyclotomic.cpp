#include "charsum/cyclotomic.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "charsum/modarith.hpp"

namespace charsum {

namespace {

constexpr i64 kMaxOrder = 20'000'000;
// Product fast path is taken only when the certified L1 bound stays below this.
constexpr i64 kCoefLimit = i64(1) << 62;

i64 checked_add(i64 a, i64 b) {
    i64 out;
    if (__builtin_add_overflow(a, b, &out))
        throw CoefficientOverflow("cyclotomic coefficient exceeds 63-bit range");
    return out;
}

struct SparseView {
    std::vector<i64> exps;
    std::vector<i64> coefs;
    i64 l1 = 0;  // sum of |coef|, capped at kCoefLimit to avoid overflow itself
};

SparseView collect(const CycInt& u) {
    SparseView s;
    const auto& c = u.coeffs();
    for (i64 i = 0; i < static_cast<i64>(c.size()); ++i) {
        if (c[i] != 0) {
            s.exps.push_back(i);
            s.coefs.push_back(c[i]);
            i64 a = c[i] < 0 ? -c[i] : c[i];
            s.l1 = (s.l1 > kCoefLimit - a) ? kCoefLimit : s.l1 + a;
        }
    }
    return s;
}

// ---- Phi_N structure -------------------------------------------------------
//
// Every working order here has the shape N = s * rad with rad squarefree and
// rad | s * rad sharing all prime factors, so Phi_N(x) = Phi_rad(x^(N/rad)).
// Division by Phi_N therefore splits into N/rad independent short divisions,
// one per residue class of exponents mod N/rad.

struct RingInfo {
    i64 N = 0;
    i64 stride = 1;          // N / rad(N)
    i64 rad = 1;
    i64 phi_N = 0;
    std::vector<i64> base;   // Phi_rad, dense, monic
    int base_deg = 0;
    std::vector<std::pair<int, i64>> base_nz;  // nonzero (degree, coeff), degree < base_deg
};

std::mutex g_ring_mutex;
std::map<i64, std::shared_ptr<const RingInfo>> g_ring_cache;

std::shared_ptr<const RingInfo> ring_info(i64 N) {
    std::lock_guard<std::mutex> lock(g_ring_mutex);
    auto it = g_ring_cache.find(N);
    if (it != g_ring_cache.end()) return it->second;
    auto ri = std::make_shared<RingInfo>();
    ri->N = N;
    i64 rad = 1;
    for (auto& [p, e] : factorize(N)) {
        (void)e;
        rad *= p;
    }
    ri->rad = rad;
    ri->stride = N / rad;
    ri->base = cyclotomic_poly(rad);
    ri->base_deg = static_cast<int>(ri->base.size()) - 1;
    for (int j = 0; j < ri->base_deg; ++j)
        if (ri->base[j] != 0) ri->base_nz.emplace_back(j, ri->base[j]);
    ri->phi_N = static_cast<i64>(ri->base_deg) * ri->stride;
    g_ring_cache.emplace(N, ri);
    return g_ring_cache[N];
}

// One strip of the division of w by Phi_N: coefficients w[r], w[r+stride], ...
// viewed as a polynomial in z = x^stride, divided by Phi_rad(z).  Fast 128-bit
// path with explicit overflow checks; GMP retry on overflow.
//
// If rem_out is null only a remainder-is-zero test is performed.
bool strip_divide(const std::vector<i64>& w, const RingInfo& ri, i64 r,
                  std::vector<i64>* rem_out) {
    const i64 L = ri.rad;
    const int B = ri.base_deg;
    static thread_local std::vector<i128> buf;
    buf.assign(L, 0);
    for (i64 j = 0; j < L; ++j) buf[j] = w[r + j * ri.stride];

    bool overflowed = false;
    for (i64 i = L - 1; i >= B && !overflowed; --i) {
        i128 qc = buf[i];
        if (qc == 0) continue;
        for (auto& [deg, cf] : ri.base_nz) {
            i128 prod;
            if (__builtin_mul_overflow(qc, (i128)cf, &prod) ||
                __builtin_sub_overflow(buf[i - B + deg], prod, &buf[i - B + deg])) {
                overflowed = true;
                break;
            }
        }
        buf[i] = 0;
    }

    if (overflowed) {
        // exact retry with arbitrary precision
        std::vector<mpz_class> zb(L);
        for (i64 j = 0; j < L; ++j) zb[j] = static_cast<long>(w[r + j * ri.stride]);
        for (i64 i = L - 1; i >= B; --i) {
            if (zb[i] == 0) continue;
            for (auto& [deg, cf] : ri.base_nz)
                zb[i - B + deg] -= zb[i] * static_cast<long>(cf);
            zb[i] = 0;
        }
        bool zero = true;
        for (int j = 0; j < B; ++j)
            if (zb[j] != 0) zero = false;
        if (rem_out) {
            rem_out->assign(B, 0);
            for (int j = 0; j < B; ++j) {
                if (!zb[j].fits_slong_p())
                    throw CoefficientOverflow("reduced coefficient exceeds 63-bit range");
                (*rem_out)[j] = zb[j].get_si();
            }
        }
        return zero;
    }

    bool zero = true;
    for (int j = 0; j < B; ++j)
        if (buf[j] != 0) zero = false;
    if (rem_out) {
        rem_out->assign(B, 0);
        for (int j = 0; j < B; ++j) {
            if (buf[j] > std::numeric_limits<i64>::max() || buf[j] < std::numeric_limits<i64>::min())
                throw CoefficientOverflow("reduced coefficient exceeds 63-bit range");
            (*rem_out)[j] = static_cast<i64>(buf[j]);
        }
    }
    return zero;
}

void require_same_order(const CycInt& u, const CycInt& v) {
    if (u.order() != v.order())
        throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(u.order()) +
                                    " vs " + std::to_string(v.order()));
}

}  // namespace

// ---- CycInt basics ---------------------------------------------------------

CycInt::CycInt(i64 order) : order_(order) {
    if (order < 1 || order > kMaxOrder)
        throw BudgetExceeded("cyclotomic order " + std::to_string(order) + " out of range");
    c_.assign(order, 0);
}

CycInt CycInt::constant(i64 order, i64 value) {
    CycInt u(order);
    u.c_[0] = value;
    return u;
}

CycInt CycInt::root_of_unity(i64 order, i64 exponent) {
    CycInt u(order);
    u.c_[mod_floor(exponent, order)] = 1;
    return u;
}

CycInt CycInt::from_sparse(i64 order, const std::vector<std::pair<i64, i64>>& terms) {
    CycInt u(order);
    for (auto& [e, c] : terms) u.add_term(e, c);
    return u;
}

void CycInt::add_term(i64 exp, i64 coeff) {
    i64& slot = c_[mod_floor(exp, order_)];
    slot = checked_add(slot, coeff);
}

bool CycInt::coeffwise_zero() const {
    for (i64 x : c_)
        if (x != 0) return false;
    return true;
}

std::vector<std::pair<i64, i64>> CycInt::sparse_terms() const {
    std::vector<std::pair<i64, i64>> out;
    for (i64 i = 0; i < order_; ++i)
        if (c_[i] != 0) out.emplace_back(i, c_[i]);
    return out;
}

// ---- ring operations -------------------------------------------------------

CycInt add(const CycInt& u, const CycInt& v) {
    require_same_order(u, v);
    CycInt out(u.order());
    for (i64 i = 0; i < u.order(); ++i) {
        i64 s = checked_add(u.coeffs()[i], v.coeffs()[i]);
        if (s != 0) out.add_term(i, s);
    }
    return out;
}

CycInt sub(const CycInt& u, const CycInt& v) { return add(u, neg(v)); }

CycInt neg(const CycInt& u) {
    CycInt out(u.order());
    for (i64 i = 0; i < u.order(); ++i)
        if (u.coeffs()[i] != 0) out.add_term(i, -u.coeffs()[i]);
    return out;
}

CycInt scalar_mul(const CycInt& u, i64 s) {
    CycInt out(u.order());
    if (s == 0) return out;
    for (i64 i = 0; i < u.order(); ++i) {
        i64 c = u.coeffs()[i];
        if (c == 0) continue;
        i64 prod;
        if (__builtin_mul_overflow(c, s, &prod))
            throw CoefficientOverflow("scalar_mul coefficient exceeds 63-bit range");
        out.add_term(i, prod);
    }
    return out;
}

CycInt mul_root(const CycInt& u, i64 j) {
    CycInt out(u.order());
    i64 shift = mod_floor(j, u.order());
    for (i64 i = 0; i < u.order(); ++i)
        if (u.coeffs()[i] != 0) out.add_term(i + shift, u.coeffs()[i]);
    return out;
}

CycInt conj(const CycInt& u) {
    CycInt out(u.order());
    for (i64 i = 0; i < u.order(); ++i)
        if (u.coeffs()[i] != 0) out.add_term(-i, u.coeffs()[i]);
    return out;
}

CycInt mul(const CycInt& u, const CycInt& v) {
    require_same_order(u, v);
    const i64 N = u.order();
    CycInt out(N);
    SparseView su = collect(u), sv = collect(v);
    if (su.exps.empty() || sv.exps.empty()) return out;

    bool fits = su.l1 < kCoefLimit && sv.l1 < kCoefLimit && su.l1 <= kCoefLimit / sv.l1;
    if (fits) {
        // Every partial accumulation is bounded by L1(u) * L1(v) < 2^62.
        const SparseView& a = su.exps.size() <= sv.exps.size() ? su : sv;
        const SparseView& b = su.exps.size() <= sv.exps.size() ? sv : su;
        std::vector<i64> acc(2 * N, 0);
        const size_t nb = b.exps.size();
        for (size_t ia = 0; ia < a.exps.size(); ++ia) {
            const i64 base = a.exps[ia];
            const i64 ca = a.coefs[ia];
            i64* dst = acc.data() + base;
            for (size_t jb = 0; jb < nb; ++jb) dst[b.exps[jb]] += ca * b.coefs[jb];
        }
        for (i64 i = 0; i < N; ++i) {
            i64 s = acc[i] + acc[i + N];
            if (s != 0) out.add_term(i, s);
        }
        return out;
    }

    // arbitrary-precision path; the stored result must still fit
    std::vector<mpz_class> acc(N);
    for (size_t ia = 0; ia < su.exps.size(); ++ia) {
        mpz_class ca = static_cast<long>(su.coefs[ia]);
        for (size_t jb = 0; jb < sv.exps.size(); ++jb) {
            i64 idx = su.exps[ia] + sv.exps[jb];
            if (idx >= N) idx -= N;
            acc[idx] += ca * static_cast<long>(sv.coefs[jb]);
        }
    }
    for (i64 i = 0; i < N; ++i) {
        if (acc[i] == 0) continue;
        if (!acc[i].fits_slong_p())
            throw CoefficientOverflow("product coefficient exceeds 63-bit range");
        out.add_term(i, acc[i].get_si());
    }
    return out;
}

bool is_zero(const CycInt& u) {
    if (u.coeffwise_zero()) return true;
    auto ri = ring_info(u.order());
    for (i64 r = 0; r < ri->stride; ++r)
        if (!strip_divide(u.coeffs(), *ri, r, nullptr)) return false;
    return true;
}

bool equals(const CycInt& u, const CycInt& v) {
    require_same_order(u, v);
    return is_zero(sub(u, v));
}

CycInt reduce(const CycInt& u) {
    auto ri = ring_info(u.order());
    CycInt out(u.order());
    std::vector<i64> rem;
    for (i64 r = 0; r < ri->stride; ++r) {
        strip_divide(u.coeffs(), *ri, r, &rem);
        for (int j = 0; j < ri->base_deg; ++j)
            if (rem[j] != 0) out.add_term(r + static_cast<i64>(j) * ri->stride, rem[j]);
    }
    return out;
}

CycInt magnitude_squared_exact(const CycInt& u) { return mul(u, conj(u)); }

Embedding embed_complex(const CycInt& u) {
    const double tau = 6.283185307179586476925286766559;
    const i64 N = u.order();
    double re = 0.0, im = 0.0, l1 = 0.0;
    for (i64 i = 0; i < N; ++i) {
        i64 c = u.coeffs()[i];
        if (c == 0) continue;
        double ang = tau * (static_cast<double>(i) / static_cast<double>(N));
        re += static_cast<double>(c) * std::cos(ang);
        im += static_cast<double>(c) * std::sin(ang);
        l1 += std::abs(static_cast<double>(c));
    }
    // crude but safe: a few ulp per term, scaled by the L1 mass
    double err = l1 * 1e-14 + 1e-300;
    return Embedding{{re, im}, err};
}

CycInt embed_into(const CycInt& u, i64 new_order) {
    if (new_order % u.order() != 0)
        throw std::invalid_argument("embed_into: old order must divide new order");
    i64 scale = new_order / u.order();
    CycInt out(new_order);
    for (i64 i = 0; i < u.order(); ++i)
        if (u.coeffs()[i] != 0) out.add_term(i * scale, u.coeffs()[i]);
    return out;
}

// ---- cyclotomic polynomials -------------------------------------------------

namespace {
std::mutex g_phi_mutex;
std::map<i64, std::vector<i64>> g_phi_cache;

std::vector<i64> cyclotomic_poly_locked(i64 n) {
    auto it = g_phi_cache.find(n);
    if (it != g_phi_cache.end()) return it->second;
    if (n > 100'000) throw BudgetExceeded("cyclotomic_poly: order too large for the dense chain");

    // x^n - 1 divided by Phi_d for every proper divisor d.
    std::vector<i128> acc(n + 1, 0);
    acc[0] = -1;
    acc[n] = 1;
    for (i64 d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<i64> phid = cyclotomic_poly_locked(d);
        const int B = static_cast<int>(phid.size()) - 1;
        const int du = static_cast<int>(acc.size()) - 1;
        std::vector<i128> q(du - B + 1, 0);
        for (int i = du; i >= B; --i) {
            i128 qc = acc[i];
            if (qc != 0) {
                q[i - B] = qc;
                for (int j = 0; j <= B; ++j) acc[i - B + j] -= qc * phid[j];
            }
        }
        for (int j = 0; j < B; ++j)
            if (acc[j] != 0) throw InternalError("cyclotomic_poly: non-exact division");
        acc = std::move(q);
    }
    std::vector<i64> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] > std::numeric_limits<i64>::max() || acc[i] < std::numeric_limits<i64>::min())
            throw CoefficientOverflow("cyclotomic_poly coefficient out of range");
        out[i] = static_cast<i64>(acc[i]);
    }
    g_phi_cache.emplace(n, out);
    return out;
}
}  // namespace

std::vector<i64> cyclotomic_poly(i64 n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n >= 1 required");
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return cyclotomic_poly_locked(n);
}

i64 euler_phi(i64 n) {
    i64 out = n;
    for (auto& [p, e] : factorize(n)) {
        (void)e;
        out -= out / p;
    }
    return out;
}

}  // namespace charsum
