#include "dllab/juggling.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dllab {

std::string JuggStats::balls_string() const {
    if (balls_den == 1) return std::to_string(balls_num);
    return std::to_string(balls_num) + "/" + std::to_string(balls_den);
}

bool jugg_valid(const JugglingSequence& s) {
    const size_t n = s.j.size();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    for (size_t i = 0; i < n; ++i) {
        size_t t = (i + s.j[i]) % n;
        if (seen[t]) return false;
        seen[t] = 1;
    }
    return true;
}

JuggStats jugg_stats(const JugglingSequence& s) {
    if (!jugg_valid(s)) throw std::invalid_argument("not a juggling sequence: " + jugg_to_string(s));
    const uint32_t n = uint32_t(s.j.size());
    JuggStats st;
    st.sigma.resize(n);
    uint64_t total = 0;
    for (uint32_t i = 0; i < n; ++i) {
        st.sigma[i] = uint32_t((i + s.j[i]) % n);
        if (st.sigma[i] < i) ++st.f;
        total += s.j[i];
    }
    std::vector<char> done(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        uint32_t len = 0;
        for (uint32_t c = i; !done[c]; c = st.sigma[c]) {
            done[c] = 1;
            ++len;
        }
        if (len % 2 == 0) st.sign = -st.sign;
    }
    uint64_t g = std::gcd(total, uint64_t(n));
    st.balls_num = total / g;
    st.balls_den = n / g;
    return st;
}

JugglingSequence cyclic_shift(const JugglingSequence& s) {
    JugglingSequence out;
    out.j.assign(s.j.begin() + 1, s.j.end());
    out.j.push_back(s.j.front());
    return out;
}

std::vector<JugglingSequence> enumerate_jugg(const RingParams& P, uint32_t m) {
    if (m < 1 || m + 1 > P.h) throw std::invalid_argument("enumerate_jugg: need 1 <= m <= h-1");
    const uint32_t n = P.n;
    std::vector<uint32_t> entries{0};
    for (auto s : P.S_flat()) entries.push_back(s);
    const uint64_t cap = uint64_t(m) * n;

    std::vector<JugglingSequence> out;
    JugglingSequence cur;
    cur.j.resize(n);
    std::vector<char> used(n, 0);
    std::function<void(uint32_t, uint64_t)> rec = [&](uint32_t pos, uint64_t sum) {
        if (pos == n) {
            JuggStats st = jugg_stats(cur);
            int64_t want = (int64_t(m) - int64_t(P.k - 1) * st.f) * n;
            if (int64_t(sum) == want) out.push_back(cur);
            return;
        }
        for (uint32_t e : entries) {
            if (sum + e > cap) break;
            uint32_t t = (pos + e) % n;
            if (used[t]) continue;
            used[t] = 1;
            cur.j[pos] = e;
            rec(pos + 1, sum + e);
            used[t] = 0;
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::string jugg_shape(const JugglingSequence& s) {
    const uint32_t n = uint32_t(s.j.size());
    uint64_t total = std::accumulate(s.j.begin(), s.j.end(), uint64_t(0));
    if (total == 0 || total % n != 0) return "other";
    auto shifts_match = [&](const std::vector<uint32_t>& target) {
        JugglingSequence t{s};
        for (uint32_t c = 0; c < n; ++c) {
            if (t.j == target) return true;
            t = cyclic_shift(t);
        }
        return false;
    };
    std::vector<uint32_t> single(n, 0);
    single[0] = uint32_t(total);
    if (shifts_match(single)) return "single";
    std::vector<uint32_t> nz;
    for (auto e : s.j)
        if (e) nz.push_back(e);
    if (nz.size() == 2 && nz[0] + nz[1] == total) {
        for (uint32_t a : {nz[0], nz[1]}) {
            if (a % n == 0) continue;
            std::vector<uint32_t> pair(n, 0);
            pair[0] = a;
            pair[a % n] = uint32_t(total - a);
            if (shifts_match(pair)) return "pair";
        }
    }
    return "other";
}

std::string jugg_to_string(const JugglingSequence& s) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < s.j.size(); ++i) os << (i ? "," : "") << s.j[i];
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- SymPoly

bool SymPoly::MonoOrder::operator()(const Mono& a, const Mono& b) const {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

SymPoly::SymPoly(uint32_t p, std::vector<uint32_t> vars) : p_(p), vars_(std::move(vars)) {}

SymPoly SymPoly::constant(uint32_t p, const std::vector<uint32_t>& vars, int64_t c) {
    SymPoly r(p, vars);
    int64_t cm = ((c % int64_t(p)) + p) % p;
    r.add_term(Mono(vars.size(), 0), uint64_t(cm));
    return r;
}

SymPoly SymPoly::var(uint32_t p, const std::vector<uint32_t>& vars, uint32_t s) {
    if (s == 0) return constant(p, vars, 1);
    auto it = std::find(vars.begin(), vars.end(), s);
    if (it == vars.end()) return SymPoly(p, vars);  // coordinate outside the index set vanishes
    SymPoly r(p, vars);
    Mono m(vars.size(), 0);
    m[size_t(it - vars.begin())] = 1;
    r.add_term(m, 1);
    return r;
}

void SymPoly::add_term(const Mono& m, uint64_t c) {
    c %= p_;
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, uint32_t(c));
        return;
    }
    it->second = uint32_t((it->second + c) % p_);
    if (it->second == 0) terms_.erase(it);
}

void SymPoly::check_compatible(const SymPoly& o) const {
    if (p_ != o.p_ || vars_ != o.vars_) throw std::invalid_argument("SymPoly: incompatible operands");
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, p_ - c);
    return *this;
}

SymPoly SymPoly::mul(const SymPoly& o) const {
    check_compatible(o);
    SymPoly r(p_, vars_);
    Mono m(vars_.size());
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            for (size_t i = 0; i < m.size(); ++i) m[i] = a[i] + b[i];
            r.add_term(m, uint64_t(ca) * cb);
        }
    return r;
}

SymPoly SymPoly::scale(int64_t c) const {
    SymPoly r(p_, vars_);
    uint64_t cm = uint64_t(((c % int64_t(p_)) + p_) % p_);
    for (const auto& [m, a] : terms_) r.add_term(m, a * cm);
    return r;
}

SymPoly SymPoly::pow(uint64_t e) const {
    SymPoly r = constant(p_, vars_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

SymPoly SymPoly::power_subst(uint64_t e) const {
    SymPoly r(p_, vars_);
    for (const auto& [m, c] : terms_) {
        Mono k = m;
        for (auto& x : k) x *= e;
        r.add_term(k, c);
    }
    return r;
}

FqElem SymPoly::evaluate(const FieldCtx& F, const std::vector<FqElem>& values) const {
    if (values.size() != vars_.size()) throw std::invalid_argument("SymPoly::evaluate: wrong number of values");
    FqElem acc = F.zero();
    for (const auto& [m, c] : terms_) {
        FqElem t = F.from_int(c);
        for (size_t i = 0; i < m.size() && !t.is_zero(); ++i)
            if (m[i]) t = F.mul(t, F.pow(values[i], int64_t(m[i])));
        acc = F.add(acc, t);
    }
    return acc;
}

std::string SymPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        // symmetric representative of the coefficient
        int64_t cs = (c > p_ / 2) ? int64_t(c) - int64_t(p_) : int64_t(c);
        bool negative = cs < 0;
        uint64_t mag = uint64_t(negative ? -cs : cs);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::ostringstream mono;
        bool any = false;
        for (size_t i = vars_.size(); i-- > 0;) {
            if (!m[i]) continue;
            mono << (any ? "*" : "") << "x" << vars_[i];
            if (m[i] > 1) mono << "^" << m[i];
            any = true;
        }
        if (!any)
            os << mag;
        else if (mag == 1)
            os << mono.str();
        else
            os << mag << "*" << mono.str();
    }
    return os.str();
}

// ---------------------------------------------------------------- g_r

namespace {

void require_equal(const RingParams& P, const char* what) {
    if (P.regime != Regime::Equal)
        throw std::invalid_argument(std::string(what) + ": symbolic construction needs the equal characteristic regime");
}

}  // namespace

SymPoly build_gr(const RingParams& P, uint32_t m) {
    require_equal(P, "build_gr");
    const auto vars = P.S_flat();
    const uint32_t n = P.n, p = P.p;
    const uint64_t q = P.q();
    SymPoly g(p, vars);
    for (const auto& s : enumerate_jugg(P, m)) {
        JuggStats st = jugg_stats(s);
        SymPoly term = SymPoly::constant(p, vars, st.sign);
        uint64_t e = 1;
        for (uint32_t r = 0; r + 1 < n; ++r) {
            e *= q;
            term = term * SymPoly::var(p, vars, s.j[r]).power_subst(e);
        }
        SymPoly last = SymPoly::var(p, vars, s.j[n - 1]);
        term = term * (last.power_subst(e * q) - last);
        g += term;
    }
    return g;
}

std::vector<SymPoly> symbolic_det_series(const RingParams& P) {
    require_equal(P, "symbolic_det_c");
    if (P.n > 3 || P.h > 4)
        throw std::invalid_argument("symbolic_det_c: expansion guarded to n <= 3 and h <= 4 (got n = " +
                                    std::to_string(P.n) + ", h = " + std::to_string(P.h) + ")");
    const auto vars = P.S_flat();
    const uint32_t n = P.n, h = P.h, k = P.k, hk = P.hk(), p = P.p;
    const uint64_t q = P.q();
    using Series = std::vector<SymPoly>;  // coefficients of pi^0..pi^{h-1}
    auto zero_series = [&] { return Series(h, SymPoly(p, vars)); };

    // Entry (r,c): phi^r of slot c-r above the diagonal, phi^r(pi^k slot n+c-r) below.
    std::vector<Series> entry(n * n, zero_series());
    for (uint32_t r = 0; r < n; ++r) {
        uint64_t e = ipow(q, r);
        for (uint32_t c = 0; c < n; ++c) {
            Series& s = entry[r * n + c];
            if (c >= r) {
                uint32_t slot = c - r, len = slot == 0 ? h : hk;
                for (uint32_t i = 0; i < len && i < h; ++i) s[i] = SymPoly::var(p, vars, slot + n * i).power_subst(e);
            } else {
                uint32_t slot = n + c - r;
                for (uint32_t i = 0; i < hk && i + k < h; ++i)
                    s[i + k] = SymPoly::var(p, vars, slot + n * i).power_subst(e);
            }
        }
    }
    auto series_mul = [&](const Series& a, const Series& b) {
        Series out = zero_series();
        for (uint32_t i = 0; i < h; ++i) {
            if (a[i].is_zero()) continue;
            for (uint32_t j = 0; i + j < h; ++j)
                if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
        }
        return out;
    };

    Series det = zero_series();
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int sign = 1;
        for (uint32_t a = 0; a < n; ++a)
            for (uint32_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) sign = -sign;
        Series prod = zero_series();
        prod[0] = SymPoly::constant(p, vars, 1);
        for (uint32_t r = 0; r < n; ++r) prod = series_mul(prod, entry[r * n + perm[r]]);
        for (uint32_t i = 0; i < h; ++i) det[i] += prod[i].scale(sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

SymPoly symbolic_det_c(const RingParams& P, uint32_t m) {
    if (m < 1 || m + 1 > P.h) throw std::invalid_argument("symbolic_det_c: need 1 <= m <= h-1");
    auto series = symbolic_det_series(P);
    const SymPoly& c = series[m];
    return c.power_subst(P.q()) - c;
}

// ---------------------------------------------------------------- descent

DescentReport descent_invariance_check(const RingParams& P, uint32_t trials, uint64_t seed) {
    DescentReport rep;
    rep.trials = trials;
    rep.strict_equal.assign(P.h, 0);
    auto F = FieldCtx::make(P.p, P.f * 2 * P.n, P.f);
    DlRing R(P, F);
    const uint32_t n = P.n, hk = P.hk();
    std::mt19937_64 rng(seed);

    // J: slots i >= 1 outside the support of H'
    std::vector<uint32_t> J, I;
    for (uint32_t s : R.S_flat()) {
        uint32_t i = s % n, j = s / n;
        bool in_J = i >= 1 && 2 * int64_t(n) * j <= int64_t(n) * hk - 2 * int64_t(i);
        (in_J ? J : I).push_back(s);
    }
    auto rand_el = [&] { return F->element(uint32_t(rng() % F->order())); };

    auto deltas = R.enumerate(SubgroupId::Hprime, P.n);
    const size_t kMaxDeltas = 16;
    std::vector<DlElement> chosen;
    if (deltas.size() <= kMaxDeltas) {
        chosen = deltas;
    } else {
        chosen.push_back(R.one());
        while (chosen.size() < kMaxDeltas) chosen.push_back(deltas[rng() % deltas.size()]);
    }

    std::vector<SymPoly> g;
    const bool symbolic = P.regime == Regime::Equal && P.n <= 3 && P.h <= 4;
    if (symbolic)
        for (uint32_t m = 1; m < P.h; ++m) g.push_back(build_gr(P, m));

    auto defects = [&](const WittVector& d) {
        std::vector<FqElem> out(P.h);
        for (uint32_t m = 0; m < P.h; ++m) out[m] = F->sub(F->frobenius(d[m], 1), d[m]);
        return out;
    };
    auto prefix_vanishing = [&](const std::vector<FqElem>& d) {
        uint32_t c = 0;
        for (uint32_t m = 1; m < P.h && d[m].is_zero(); ++m) ++c;
        return c;
    };

    for (uint32_t t = 0; t < trials; ++t) {
        DlElement s = R.one(), y = R.one();
        for (uint32_t idx : J) R.flat_set(s, idx, rand_el());
        for (uint32_t idx : I) R.flat_set(y, idx, rand_el());
        DlElement z = R.mul(s, y);
        WittVector dz = R.det_iota(z);
        auto gz = defects(dz);
        if (symbolic) {
            auto vals = R.flat(z);
            for (uint32_t m = 1; m < P.h; ++m)
                if (g[m - 1].evaluate(*F, vals) != gz[m]) {
                    ++rep.symbolic_mismatch;
                    if (rep.witness.empty()) rep.witness = "symbolic g_" + std::to_string(m * n) + " at " + R.to_string(z);
                }
        }
        for (const auto& d : chosen) {
            ++rep.pairs;
            DlElement zd = R.mul(z, d);
            WittVector dzd = R.det_iota(zd), dd = R.det_iota(d);
            if (dzd != R.W().mul(dz, dd)) {
                ++rep.product_failures;
                if (rep.witness.empty()) rep.witness = "det product at z = " + R.to_string(z) + ", delta = " + R.to_string(d);
            }
            auto gzd = defects(dzd);
            for (uint32_t m = 1; m < P.h; ++m)
                if (gzd[m] == gz[m]) ++rep.strict_equal[m];
            if (prefix_vanishing(gz) != prefix_vanishing(gzd)) {
                ++rep.vanishing_mismatch;
                if (rep.witness.empty())
                    rep.witness = "vanishing at z = " + R.to_string(z) + ", delta = " + R.to_string(d);
            }
        }
    }
    return rep;
}

}  // namespace dllab
