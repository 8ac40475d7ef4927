#include "charsum/sweep.hpp"

#include <atomic>
#include <cctype>
#include <sstream>
#include <thread>

namespace charsum {

namespace {

std::vector<i64> parse_range(const std::string& text, const std::string& key) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoll(item));
            } else {
                i64 lo = std::stoll(item.substr(0, dots));
                i64 hi = std::stoll(item.substr(dots + 2));
                if (hi < lo || hi - lo > 1'000'000)
                    throw std::invalid_argument("bad range bounds");
                for (i64 v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("grid: cannot parse range for '" + key + "': " + item);
        }
    }
    if (out.empty()) throw std::invalid_argument("grid: empty range for '" + key + "'");
    return out;
}

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

SweepGrid SweepGrid::parse(const std::string& text) {
    SweepGrid g = SweepGrid::default_grid();
    g.ps.clear(); g.ms.clear(); g.ks.clear(); g.ls.clear(); g.ws.clear(); g.As.clear(); g.Bs.clear();
    std::stringstream ss(text);
    std::string clause;
    while (std::getline(ss, clause, ';')) {
        clause = strip(clause);
        if (clause.empty() || clause[0] == '#') continue;
        auto eq = clause.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid: expected key=range, got: " + clause);
        std::string key = strip(clause.substr(0, eq));
        std::string val = strip(clause.substr(eq + 1));
        if (key == "p") g.ps = parse_range(val, key);
        else if (key == "m") g.ms = parse_range(val, key);
        else if (key == "k") g.ks = parse_range(val, key);
        else if (key == "l") g.ls = parse_range(val, key);
        else if (key == "w") g.ws = parse_range(val, key);
        else if (key == "A") g.As = parse_range(val, key);
        else if (key == "B") g.Bs = parse_range(val, key);
        else if (key == "c") g.c = parse_range(val, key).at(0);
        else throw std::invalid_argument("grid: unknown key '" + key + "'");
    }
    for (auto* v : {&g.ps, &g.ms, &g.ks, &g.ls, &g.ws, &g.As, &g.Bs})
        if (v->empty()) throw std::invalid_argument("grid: a required key is missing");
    return g;
}

SweepGrid SweepGrid::default_grid() {
    SweepGrid g;
    g.ps = {3, 5, 7};
    g.ms = {2, 3, 4, 5};
    g.ks = {1, 2, 3, 4, 5, 6};
    g.ls = {-3, -2, -1, 0, 1, 2, 3};
    g.ws = {1, 2, 3};
    g.As = {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
    g.Bs = {1, 2, 3, 4, 5};
    return g;
}

SweepResult run_sweep(const SweepGrid& grid, int jobs, bool keep_values) {
    SweepResult result;
    std::vector<size_t> todo;  // row indices still to verify; rows stay in generation order

    for (i64 p : grid.ps)
        for (i64 m0 : grid.ms)
            for (i64 k : grid.ks)
                for (i64 l : grid.ls)
                    for (i64 w : grid.ws)
                        for (i64 A : grid.As)
                            for (i64 B : grid.Bs) {
                                const int m = static_cast<int>(m0);
                                SweepRow row;
                                row.p = p; row.m = m;
                                row.A = A; row.B = B; row.k = k; row.l = l; row.w = w;
                                row.c = grid.c;
                                std::string why;
                                i64 q = 1;
                                bool over = false;
                                for (int i = 0; i < m; ++i) {
                                    if (q > grid.max_q / p) { over = true; break; }
                                    q *= p;
                                }
                                if (A == 0) why = "A = 0";
                                else if (mod_floor(B, p) == 0) why = "p | B";
                                else if (valuation(A, p) >= m) why = "v_p(A) >= m";
                                else if (over || q > grid.max_q) why = "q over budget";
                                else {
                                    auto mm = make_modulus(p, m);
                                    i64 c2 = mod_floor(
                                        static_cast<i64>(static_cast<i128>(grid.c) * w % mm.phi),
                                        mm.phi);
                                    bool prim = (m == 1) ? (c2 != 0) : (c2 % p != 0);
                                    if (!prim) why = "chi2 not primitive";
                                }
                                if (!why.empty()) {
                                    row.skipped = true;
                                    row.skip_reason = why;
                                    row.verdict = "skip";
                                } else {
                                    todo.push_back(result.rows.size());
                                }
                                result.rows.push_back(std::move(row));
                            }
    if (static_cast<i64>(todo.size()) > grid.max_specs)
        throw BudgetExceeded("sweep: " + std::to_string(todo.size()) + " specs exceed --max-specs " +
                             std::to_string(grid.max_specs) + " (raise the budget to proceed)");

    VerifyCache cache;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) break;
            SweepRow& row = result.rows[todo[i]];
            try {
                BinomialSumSpec spec =
                    make_spec(row.p, row.m, row.A, row.B, row.k, row.l, row.w, grid.c);
                VerificationReport rep = verify_spec(spec, &cache);
                row.n = rep.st.n;
                row.t = rep.st.t;
                row.d = rep.st.d;
                row.regime = regime_name(rep.conditions.regime);
                row.s2 = rep.abs_s * rep.abs_s;
                row.expected_s2 = rep.evaluation.kind == EvaluationResult::Kind::ClosedForm
                                      ? static_cast<long long>(rep.expected_mag_sq)
                                      : (rep.evaluation.kind == EvaluationResult::Kind::Zero ? 0 : -1);
                row.verdicts = rep.verdicts;
                row.verdict = rep.verdicts.all_pass() ? "pass" : "fail";
                row.ring = spec.ring_order();
                if (keep_values) {
                    row.oracle_sparse = rep.oracle_reduced.sparse_terms();
                    row.closed_sparse = reduce(rep.evaluation.value).sparse_terms();
                }
            } catch (const std::exception& e) {
                row.skipped = true;
                row.skip_reason = std::string("error: ") + e.what();
                row.verdict = "skip";
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const SweepRow& row : result.rows) {
        if (row.skipped) ++result.skipped;
        else if (row.verdict == "pass") ++result.passed;
        else ++result.failed;
    }
    return result;
}

}  // namespace charsum
