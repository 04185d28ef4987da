#include "dllab/witt.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dllab {

std::string regime_name(Regime r) { return r == Regime::Equal ? "equal" : "mixed"; }

Regime parse_regime(const std::string& s) {
    if (s == "equal") return Regime::Equal;
    if (s == "mixed") return Regime::Mixed;
    throw std::invalid_argument("unknown regime: " + s);
}

// ---------------------------------------------------------------- IntPoly

IntPoly IntPoly::var(uint32_t nvars, uint32_t bits, uint32_t i, uint32_t e) {
    IntPoly P(nvars, bits);
    std::vector<uint32_t> ex(nvars, 0);
    ex[i] = e;
    P.terms_.emplace(P.make_key(ex), mpz_class(1));
    return P;
}

IntPoly IntPoly::constant(uint32_t nvars, uint32_t bits, const mpz_class& c) {
    IntPoly P(nvars, bits);
    if (c != 0) P.terms_.emplace(Key(0), c);
    return P;
}

IntPoly::Key IntPoly::make_key(const std::vector<uint32_t>& e) const {
    Key k = 0;
    for (uint32_t i = 0; i < nvars_; ++i) {
        if (e[i] >> bits_) throw std::overflow_error("exponent exceeds packed width");
        k |= Key(e[i]) << (i * bits_);
    }
    return k;
}

std::vector<uint32_t> IntPoly::exponents(Key k) const {
    std::vector<uint32_t> e(nvars_);
    for (uint32_t i = 0; i < nvars_; ++i) e[i] = exponent(k, i);
    return e;
}

void IntPoly::add_term(Key k, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.nvars_, a.bits_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(std::min<size_t>(a.size() * b.size(), size_t(1) << 22));
    mpz_class t;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            mpz_mul(t.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            auto [it, fresh] = r.terms_.try_emplace(ka + kb, t);
            if (!fresh) it->second += t;
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        if (it->second == 0)
            it = r.terms_.erase(it);
        else
            ++it;
    }
    return r;
}

IntPoly IntPoly::pow(uint64_t e) const {
    IntPoly result = constant(nvars_, bits_, 1);
    IntPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool IntPoly::divide_exact(const mpz_class& d) {
    for (auto& kv : terms_) {
        if (!mpz_divisible_p(kv.second.get_mpz_t(), d.get_mpz_t())) return false;
        mpz_divexact(kv.second.get_mpz_t(), kv.second.get_mpz_t(), d.get_mpz_t());
    }
    return true;
}

bool IntPoly::operator==(const IntPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [k, c] : terms_) {
        auto it = o.terms_.find(k);
        if (it == o.terms_.end() || it->second != c) return false;
    }
    return true;
}

std::vector<std::pair<std::vector<uint32_t>, mpz_class>> IntPoly::sorted_terms() const {
    std::vector<std::pair<std::vector<uint32_t>, mpz_class>> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(exponents(k), c);
    auto deg = [](const std::vector<uint32_t>& e) {
        uint64_t s = 0;
        for (auto x : e) s += x;
        return s;
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        uint64_t da = deg(a.first), db = deg(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    return out;
}

std::string IntPoly::to_string(const std::vector<std::string>& names) const {
    auto ts = sorted_terms();
    if (ts.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ts) {
        mpz_class a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        for (uint32_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            os << a.get_str();
        else if (a == 1)
            os << mono;
        else
            os << a.get_str() << "*" << mono;
    }
    return os.str();
}

// ---------------------------------------------------------- UniversalPolys

std::vector<std::string> UniversalPolys::var_names() const {
    std::vector<std::string> v;
    for (uint32_t i = 0; i <= r_max; ++i) v.push_back("X" + std::to_string(i));
    for (uint32_t i = 0; i <= r_max; ++i) v.push_back("Y" + std::to_string(i));
    return v;
}

namespace {

uint32_t bit_length(uint64_t x) {
    uint32_t b = 0;
    while (x) {
        ++b;
        x >>= 1;
    }
    return std::max<uint32_t>(b, 1);
}

IntPoly ghost_in(const UniversalPolys& U, uint32_t r, uint32_t offset) {
    uint32_t nv = 2 * (U.r_max + 1);
    uint32_t bits = bit_length(ipow(U.q, U.r_max));
    IntPoly W(nv, bits);
    mpz_class pi = 1;
    for (uint32_t i = 0; i <= r; ++i) {
        IntPoly t = IntPoly::var(nv, bits, offset + i, uint32_t(ipow(U.q, r - i)));
        t *= pi;
        W += t;
        pi *= U.p;
    }
    return W;
}

}  // namespace

IntPoly UniversalPolys::ghost_X(uint32_t r) const { return ghost_in(*this, r, 0); }
IntPoly UniversalPolys::ghost_Y(uint32_t r) const { return ghost_in(*this, r, r_max + 1); }

IntPoly UniversalPolys::ghost_of(const std::vector<IntPoly>& P, uint32_t r) const {
    IntPoly W = P.at(0);
    W *= 0;
    mpz_class pi = 1;
    for (uint32_t i = 0; i <= r; ++i) {
        IntPoly t = P[i].pow(ipow(q, r - i));
        t *= pi;
        W += t;
        pi *= p;
    }
    return W;
}

double universal_poly_size_estimate(uint32_t r, uint32_t p, uint32_t f) {
    // number of monomials of weight q^r, variables X_i, Y_i of weight q^i
    uint64_t q = ipow(p, f);
    uint64_t target = ipow(q, r);
    if (target > (uint64_t(1) << 24)) return 1e300;
    std::vector<double> cnt(target + 1, 0.0);
    cnt[0] = 1.0;
    for (uint32_t i = 0; i <= r; ++i) {
        uint64_t w = ipow(q, i);
        for (int rep = 0; rep < 2; ++rep)
            for (uint64_t s = w; s <= target; ++s) cnt[s] += cnt[s - w];
    }
    return cnt[target];
}

UniversalPolys universal_polys(uint32_t r_max, uint32_t p, uint32_t f) {
    if (!is_prime(p) || f < 1) throw std::invalid_argument("universal_polys: bad (p, f)");
    UniversalPolys U;
    U.r_max = r_max;
    U.p = p;
    U.f = f;
    U.q = ipow(p, f);
    uint32_t nv = 2 * (r_max + 1);
    uint32_t bits = bit_length(ipow(U.q, r_max));
    if (uint64_t(nv) * bits > 128) throw std::invalid_argument("universal_polys: r_max too large");
    for (uint32_t r = 0; r <= r_max; ++r) {
        double est = universal_poly_size_estimate(r, p, f);
        if (est > kUniversalPolyGuard)
            throw std::runtime_error("universal_polys: expansion of degree " + std::to_string(ipow(U.q, r)) +
                                     " exceeds the symbolic size guard (" + std::to_string(int64_t(est)) +
                                     " monomials)");
    }

    // powS[i] holds S_i^(q^(r-1-i)) entering step r; raised to q each step.
    std::vector<IntPoly> powS, powM;
    mpz_class pr = 1;
    for (uint32_t r = 0; r <= r_max; ++r) {
        for (uint32_t i = 0; i < r; ++i) {
            powS[i] = powS[i].pow(U.q);
            powM[i] = powM[i].pow(U.q);
        }
        IntPoly WX = U.ghost_X(r), WY = U.ghost_Y(r);
        IntPoly s = WX + WY;
        IntPoly m = WX * WY;
        mpz_class pi = 1;
        for (uint32_t i = 0; i < r; ++i) {
            IntPoly ts = powS[i], tm = powM[i];
            ts *= pi;
            tm *= pi;
            s -= ts;
            m -= tm;
            pi *= p;
        }
        if (!s.divide_exact(pr) || !m.divide_exact(pr))
            throw std::logic_error("universal_polys: non-exact division by p^" + std::to_string(r));
        U.S.push_back(s);
        U.M.push_back(m);
        powS.push_back(s);
        powM.push_back(m);
        pr *= p;
    }
    return U;
}

namespace {

ReducedPoly reduce_mod_p(const IntPoly& P, uint32_t p) {
    ReducedPoly R;
    mpz_class mp = p;
    for (const auto& [e, c] : P.sorted_terms()) {
        mpz_class cm;
        mpz_mod(cm.get_mpz_t(), c.get_mpz_t(), mp.get_mpz_t());
        if (cm == 0) continue;
        ReducedPoly::Term t;
        t.coeff = uint32_t(cm.get_ui());
        for (uint32_t i = 0; i < e.size(); ++i)
            if (e[i]) t.factors.emplace_back(uint8_t(i), e[i]);
        R.terms.push_back(std::move(t));
    }
    return R;
}

std::mutex g_reduced_mu;
std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<ReducedUniversal>> g_reduced;

}  // namespace

const ReducedUniversal& reduced_universal(uint32_t r_max, uint32_t p, uint32_t f) {
    std::lock_guard<std::mutex> lock(g_reduced_mu);
    auto key = std::make_pair(p, f);
    auto it = g_reduced.find(key);
    if (it != g_reduced.end() && it->second->r_max >= r_max) return *it->second;
    UniversalPolys U = universal_polys(r_max, p, f);
    auto R = std::make_unique<ReducedUniversal>();
    R->r_max = r_max;
    R->p = p;
    R->f = f;
    for (uint32_t r = 0; r <= r_max; ++r) {
        R->S.push_back(reduce_mod_p(U.S[r], p));
        R->M.push_back(reduce_mod_p(U.M[r], p));
    }
    // Older entries stay alive: rings built earlier hold pointers into them.
    static std::vector<std::unique_ptr<ReducedUniversal>> retired;
    if (it != g_reduced.end()) retired.push_back(std::move(it->second));
    auto& slot = g_reduced[key];
    slot = std::move(R);
    return *slot;
}

// ---------------------------------------------------------------- WittRing

WittRing::WittRing(FieldPtr field, Regime regime, uint32_t h) : field_(std::move(field)), regime_(regime), h_(h) {
    if (h < 1 || h > kMaxWittLength) throw std::invalid_argument("witt length out of range");
    if (regime_ == Regime::Mixed) polys_ = &reduced_universal(h - 1, field_->p(), field_->f());
}

void WittRing::check(const WittVector& u) const {
    if (u.len != h_) throw std::invalid_argument("witt vector length mismatch");
}

WittVector WittRing::zero() const {
    WittVector u;
    u.len = h_;
    return u;
}

WittVector WittRing::one() const {
    WittVector u = zero();
    u[0] = field_->one();
    return u;
}

WittVector WittRing::make(const std::vector<FqElem>& coords) const {
    if (coords.size() != h_) throw std::invalid_argument("witt vector length mismatch");
    WittVector u = zero();
    for (uint32_t i = 0; i < h_; ++i) u[i] = coords[i];
    return u;
}

WittVector WittRing::teichmuller(FqElem a) const {
    WittVector u = zero();
    u[0] = a;
    return u;
}

WittVector WittRing::top_layer(FqElem a) const {
    WittVector u = one();
    if (h_ >= 2) u[h_ - 1] = a;
    return u;
}

FqElem WittRing::eval(const ReducedPoly& P, const WittVector& u, const WittVector& v) const {
    const FieldCtx& F = *field_;
    uint32_t off = polys_->r_max + 1;
    FqElem acc = F.zero();
    for (const auto& t : P.terms) {
        FqElem m = F.from_int(t.coeff);
        for (const auto& [var, e] : t.factors) {
            FqElem x = var < off ? u[var] : v[var - off];
            if (x.is_zero()) {
                m = F.zero();
                break;
            }
            m = F.mul(m, F.pow(x, e));
        }
        if (!m.is_zero()) acc = F.add(acc, m);
    }
    return acc;
}

WittVector WittRing::add(const WittVector& u, const WittVector& v) const {
    check(u);
    check(v);
    WittVector w = zero();
    if (regime_ == Regime::Equal) {
        for (uint32_t i = 0; i < h_; ++i) w[i] = field_->add(u[i], v[i]);
    } else {
        for (uint32_t i = 0; i < h_; ++i) w[i] = eval(polys_->S[i], u, v);
    }
    return w;
}

WittVector WittRing::mul(const WittVector& u, const WittVector& v) const {
    check(u);
    check(v);
    WittVector w = zero();
    const FieldCtx& F = *field_;
    if (regime_ == Regime::Equal) {
        for (uint32_t i = 0; i < h_; ++i) {
            if (u[i].is_zero()) continue;
            for (uint32_t j = 0; i + j < h_; ++j) w[i + j] = F.add(w[i + j], F.mul(u[i], v[j]));
        }
    } else {
        for (uint32_t i = 0; i < h_; ++i) w[i] = eval(polys_->M[i], u, v);
    }
    return w;
}

WittVector WittRing::neg(const WittVector& u) const {
    check(u);
    WittVector v = zero();
    if (regime_ == Regime::Equal || field_->p() != 2) {
        for (uint32_t i = 0; i < h_; ++i) v[i] = field_->neg(u[i]);
        return v;
    }
    // coordinate r of u + v is v_r + (terms in lower coordinates)
    for (uint32_t r = 0; r < h_; ++r) {
        WittVector w = add(u, v);
        v[r] = field_->neg(w[r]);
    }
    return v;
}

WittVector WittRing::inverse(const WittVector& u) const {
    check(u);
    if (!is_unit(u)) throw std::domain_error("inversion of a non-unit witt vector");
    const FieldCtx& F = *field_;
    WittVector v = zero();
    v[0] = F.inv(u[0]);
    // coordinate r of u*v is affine in v_r with unit slope; solve layer by layer
    for (uint32_t r = 1; r < h_; ++r) {
        WittVector w0 = mul(u, v);
        WittVector v1 = v;
        v1[r] = F.one();
        WittVector w1 = mul(u, v1);
        FqElem slope = F.sub(w1[r], w0[r]);
        v[r] = F.div(F.neg(w0[r]), slope);
    }
    return v;
}

WittVector WittRing::verschiebung(const WittVector& u) const {
    check(u);
    WittVector v = zero();
    for (uint32_t i = 1; i < h_; ++i) v[i] = u[i - 1];
    return v;
}

WittVector WittRing::frobenius(const WittVector& u, int64_t j) const {
    check(u);
    WittVector v = zero();
    for (uint32_t i = 0; i < h_; ++i) v[i] = field_->frobenius(u[i], j);
    return v;
}

WittVector WittRing::mult_by_pi(const WittVector& u) const {
    if (regime_ == Regime::Equal) return verschiebung(u);
    check(u);
    WittVector acc = u;
    for (uint32_t i = 1; i < field_->p(); ++i) acc = add(acc, u);
    return acc;
}

WittVector WittRing::mult_by_pi_pow(const WittVector& u, uint32_t k) const {
    WittVector v = u;
    for (uint32_t i = 0; i < k; ++i) {
        bool z = true;
        for (uint32_t j = 0; j < h_ && z; ++j) z = v[j].is_zero();
        if (z) break;
        v = mult_by_pi(v);
    }
    return v;
}

WittVector WittRing::scalar_int(int64_t c) const {
    bool negate = c < 0;
    uint64_t a = negate ? uint64_t(-c) : uint64_t(c);
    WittVector acc = zero(), base = one();
    while (a) {
        if (a & 1) acc = add(acc, base);
        a >>= 1;
        if (a) base = add(base, base);
    }
    return negate ? neg(acc) : acc;
}

WittVector WittRing::extend(const WittVector& u) const {
    if (u.len > h_) throw std::invalid_argument("extend: vector longer than ring length");
    WittVector v = zero();
    for (uint32_t i = 0; i < u.len; ++i) v[i] = u[i];
    return v;
}

WittVector WittRing::truncate(const WittVector& u, uint32_t len) {
    if (len > u.len) throw std::invalid_argument("truncate: target longer than vector");
    WittVector v;
    v.len = len;
    for (uint32_t i = 0; i < len; ++i) v[i] = u[i];
    return v;
}

// -------------------------------------------------------- GaloisRingOracle

GaloisRingOracle::GaloisRingOracle(FieldPtr field, uint32_t h) : field_(std::move(field)), h_(h) {
    mod_ = int64_t(ipow(field_->p(), h));
    for (auto c : field_->modulus()) modulus_.push_back(int64_t(c));
}

GaloisRingOracle::Elem GaloisRingOracle::lift(FqElem a) const {
    auto c = field_->coeffs(a);
    return Elem(c.begin(), c.end());
}

GaloisRingOracle::Elem GaloisRingOracle::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % mod_;
    return r;
}

GaloisRingOracle::Elem GaloisRingOracle::mul(const Elem& a, const Elem& b) const {
    uint32_t m = field_->m();
    std::vector<int64_t> t(2 * m, 0);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % mod_;
    for (uint32_t d = 2 * m - 1; d >= m; --d) {
        int64_t c = t[d];
        if (!c) continue;
        t[d] = 0;
        for (uint32_t i = 0; i < m; ++i) t[d - m + i] = ((t[d - m + i] - c * modulus_[i]) % mod_ + mod_) % mod_;
    }
    return Elem(t.begin(), t.begin() + m);
}

GaloisRingOracle::Elem GaloisRingOracle::pow(Elem a, uint64_t e) const {
    Elem r(field_->m(), 0);
    r[0] = 1 % mod_;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

GaloisRingOracle::Elem GaloisRingOracle::teichmuller(FqElem a) const {
    Elem x = lift(a);
    for (uint32_t i = 1; i < h_; ++i) x = pow(x, field_->order());
    return x;
}

GaloisRingOracle::Elem GaloisRingOracle::from_witt(const WittVector& u) const {
    Elem z(field_->m(), 0);
    int64_t pi = 1;
    for (uint32_t i = 0; i < h_; ++i) {
        Elem t = teichmuller(field_->frobenius(u[i], -int64_t(i)));
        for (auto& c : t) c = (c * pi) % mod_;
        z = add(z, t);
        pi *= field_->p();
    }
    return z;
}

WittVector GaloisRingOracle::to_witt(const Elem& z0) const {
    WittVector u;
    u.len = h_;
    Elem z = z0;
    int64_t p = field_->p();
    int64_t cur_mod = mod_;
    for (uint32_t i = 0; i < h_; ++i) {
        std::vector<uint32_t> c(field_->m());
        for (uint32_t j = 0; j < c.size(); ++j) c[j] = uint32_t(((z[j] % p) + p) % p);
        FqElem b = field_->from_coeffs(c);
        u[i] = field_->frobenius(b, int64_t(i));
        Elem t = teichmuller(b);
        for (uint32_t j = 0; j < z.size(); ++j) {
            int64_t d = ((z[j] - t[j]) % cur_mod + cur_mod) % cur_mod;
            z[j] = d / p;
        }
        cur_mod /= p;
    }
    return u;
}

}  // namespace dllab
