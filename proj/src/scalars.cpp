#include "dllab/scalars.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dllab {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

uint64_t ipow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

namespace {

using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    uint64_t r = 1, b = a % p;
    uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return uint32_t(r);
}

Poly poly_mod(Poly a, const Poly& f, uint32_t p) {
    trim(a);
    size_t df = f.size() - 1;
    uint32_t lead_inv = inv_mod(f.back(), p);
    while (a.size() > df) {
        uint64_t c = uint64_t(a.back()) * lead_inv % p;
        size_t shift = a.size() - 1 - df;
        for (size_t j = 0; j <= df; ++j)
            a[shift + j] = uint32_t((a[shift + j] + uint64_t(p - c) * f[j]) % p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = uint32_t((r[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return poly_mod(r, f, p);
}

Poly poly_powmod(Poly a, uint64_t e, const Poly& f, uint32_t p) {
    Poly r{1};
    r = poly_mod(r, f, p);
    a = poly_mod(a, f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, f, p);
        a = poly_mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly unpack(uint32_t v, uint32_t p, uint32_t m) {
    Poly c(m);
    for (uint32_t i = 0; i < m; ++i) {
        c[i] = v % p;
        v /= p;
    }
    return c;
}

uint32_t pack(const Poly& c, uint32_t p) {
    uint32_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<uint32_t>& f0, uint32_t p) {
    Poly f = f0;
    trim(f);
    if (f.size() < 2) return false;
    uint32_t m = uint32_t(f.size() - 1);
    if (m == 1) return true;
    Poly x{0, 1};
    // Rabin: x^(p^m) = x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for primes r | m.
    std::vector<Poly> frob(m + 1);
    frob[0] = poly_mod(x, f, p);
    for (uint32_t i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    if (!poly_sub(frob[m], frob[0], p).empty()) return false;
    for (uint64_t r : prime_factors(m)) {
        Poly g = poly_gcd(f, poly_sub(frob[m / r], frob[0], p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<uint32_t> smallest_irreducible(uint32_t p, uint32_t m) {
    uint64_t total = ipow(p, m);
    for (uint64_t rank = 0; rank < total; ++rank) {
        Poly f(m + 1, 0);
        uint64_t r = rank;
        for (uint32_t i = m; i-- > 0;) {
            f[i] = uint32_t(r % p);
            r /= p;
        }
        f[m] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

std::shared_ptr<const FieldCtx> FieldCtx::make(uint32_t p, uint32_t m, uint32_t f) {
    if (!is_prime(p)) throw std::invalid_argument("field_make: p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("field_make: degree must be >= 1");
    if (f < 1 || m % f != 0)
        throw std::invalid_argument("field_make: f = " + std::to_string(f) + " does not divide m = " + std::to_string(m));
    uint64_t order = 1;
    for (uint32_t i = 0; i < m; ++i) {
        order *= p;
        if (order > kMaxOrder)
            throw std::invalid_argument("field_make: order " + std::to_string(p) + "^" + std::to_string(m) +
                                        " exceeds guard 2^20");
    }
    std::shared_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->p_ = p;
    ctx->m_ = m;
    ctx->f_ = f;
    ctx->q_ = ipow(p, f);
    ctx->order_ = uint32_t(order);
    ctx->modulus_ = smallest_irreducible(p, m);

    const Poly& mod = ctx->modulus_;
    uint64_t n1 = order - 1;
    auto factors = prime_factors(n1);
    uint32_t gen = 0;
    if (n1 == 1) {
        gen = 1;
    } else {
        for (uint64_t rank = 1; rank < order && !gen; ++rank) {
            Poly c(m, 0);
            uint64_t r = rank;
            for (uint32_t i = m; i-- > 0;) {
                c[i] = uint32_t(r % p);
                r /= p;
            }
            bool primitive = true;
            for (uint64_t ell : factors) {
                Poly t = poly_powmod(c, n1 / ell, mod, p);
                if (t.size() == 1 && t[0] == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) gen = pack(c, p);
        }
    }
    ctx->exp_.assign(n1, 0);
    ctx->log_.assign(order, 0);
    Poly g = unpack(gen, p, m);
    Poly cur{1};
    for (uint64_t k = 0; k < n1; ++k) {
        Poly padded = cur;
        padded.resize(m, 0);
        uint32_t v = pack(padded, p);
        ctx->exp_[k] = v;
        ctx->log_[v] = uint32_t(k);
        cur = poly_mulmod(cur, g, mod, p);
        if (cur.empty()) cur = Poly{};
    }
    ctx->zech_.assign(n1, 0);
    for (uint64_t k = 0; k < n1; ++k) {
        auto digits = ctx->packed_add_digits(ctx->exp_[k], 1);
        uint32_t v = pack(digits, p);
        ctx->zech_[k] = v == 0 ? uint32_t(n1) : ctx->log_[v];
    }
    ctx->neg_one_log_ = p == 2 ? 0 : uint32_t(n1 / 2);
    return ctx;
}

std::vector<uint32_t> FieldCtx::packed_add_digits(uint32_t a, uint32_t b) const {
    Poly x = unpack(a, p_, m_), y = unpack(b, p_, m_);
    for (uint32_t i = 0; i < m_; ++i) x[i] = (x[i] + y[i]) % p_;
    return x;
}

std::string FieldCtx::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = modulus_.size(); i-- > 0;) {
        uint32_t c = modulus_[i];
        if (!c) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << "*";
        os << "x";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

FqElem FieldCtx::from_int(int64_t c) const {
    int64_t r = c % int64_t(p_);
    if (r < 0) r += p_;
    return FqElem{uint32_t(r)};
}

FqElem FieldCtx::from_coeffs(const std::vector<uint32_t>& c) const {
    Poly x(m_, 0);
    for (size_t i = 0; i < c.size() && i < m_; ++i) x[i] = c[i] % p_;
    return FqElem{pack(x, p_)};
}

std::vector<uint32_t> FieldCtx::coeffs(FqElem a) const { return unpack(a.v, p_, m_); }

FqElem FieldCtx::element(uint32_t packed) const {
    if (packed >= order_) throw std::out_of_range("field element index out of range");
    return FqElem{packed};
}

uint32_t FieldCtx::log(FqElem a) const {
    if (a.v == 0) throw std::domain_error("log of zero");
    return log_[a.v];
}

FqElem FieldCtx::add(FqElem a, FqElem b) const {
    if (p_ == 2) return FqElem{a.v ^ b.v};
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    uint32_t n1 = order_ - 1;
    uint32_t la = log_[a.v], lb = log_[b.v];
    uint32_t d = lb >= la ? lb - la : lb + n1 - la;
    uint32_t z = zech_[d];
    if (z == n1) return FqElem{0};
    uint64_t s = uint64_t(la) + z;
    return FqElem{exp_[s % n1]};
}

FqElem FieldCtx::neg(FqElem a) const {
    if (p_ == 2 || a.v == 0) return a;
    uint32_t n1 = order_ - 1;
    return FqElem{exp_[(uint64_t(log_[a.v]) + neg_one_log_) % n1]};
}

FqElem FieldCtx::mul(FqElem a, FqElem b) const {
    if (a.v == 0 || b.v == 0) return FqElem{0};
    uint32_t n1 = order_ - 1;
    uint64_t s = uint64_t(log_[a.v]) + log_[b.v];
    return FqElem{exp_[s % n1]};
}

FqElem FieldCtx::inv(FqElem a) const {
    if (a.v == 0) throw std::domain_error("inversion of zero in F_" + std::to_string(order_));
    uint32_t n1 = order_ - 1;
    return FqElem{exp_[(n1 - log_[a.v]) % n1]};
}

FqElem FieldCtx::pow(FqElem a, int64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) {
        if (e < 0) throw std::domain_error("negative power of zero");
        return a;
    }
    int64_t n1 = order_ - 1;
    int64_t r = e % n1;
    if (r < 0) r += n1;
    return FqElem{exp_[(uint64_t(log_[a.v]) * uint64_t(r)) % uint64_t(n1)]};
}

FqElem FieldCtx::frobenius_p(FqElem a, int64_t j) const {
    if (a.v == 0) return a;
    int64_t jj = j % int64_t(m_);
    if (jj < 0) jj += m_;
    uint64_t n1 = order_ - 1;
    uint64_t e = 1;
    for (int64_t i = 0; i < jj; ++i) e = e * p_ % n1;
    if (n1 == 1) e = 0;
    return FqElem{exp_[(uint64_t(log_[a.v]) * e) % n1]};
}

FqElem FieldCtx::frobenius(FqElem a, int64_t j) const { return frobenius_p(a, j * int64_t(f_)); }

FqElem FieldCtx::subfield_generator(uint32_t d) const {
    if (d == 0 || m_ % d != 0)
        throw std::invalid_argument("F_{p^" + std::to_string(d) + "} is not a subfield of F_{p^" + std::to_string(m_) + "}");
    uint64_t n1 = order_ - 1;
    uint64_t sub = ipow(p_, d) - 1;
    return FqElem{exp_[(n1 / sub) % n1]};
}

bool FieldCtx::in_subfield(FqElem a, uint32_t d) const { return frobenius_p(a, d) == a; }

std::vector<FqElem> FieldCtx::subfield_elements(uint32_t d) const {
    FqElem g = subfield_generator(d);
    uint64_t sub = ipow(p_, d) - 1;
    std::vector<FqElem> out;
    out.reserve(sub + 1);
    out.push_back(zero());
    FqElem cur = one();
    for (uint64_t k = 0; k < sub; ++k) {
        out.push_back(cur);
        cur = mul(cur, g);
    }
    return out;
}

FqElem FieldCtx::trace(FqElem a, uint32_t d_from, uint32_t d_to) const {
    if (d_to == 0 || d_from % d_to != 0) throw std::invalid_argument("trace: degrees do not divide");
    FqElem s = zero();
    for (uint32_t i = 0; i < d_from / d_to; ++i) s = add(s, frobenius_p(a, int64_t(i) * d_to));
    return s;
}

uint64_t FieldCtx::lex_rank(FqElem a) const {
    auto c = coeffs(a);
    uint64_t r = 0;
    for (uint32_t i = 0; i < m_; ++i) r = r * p_ + c[i];
    return r;
}

GaloisData galois_data(const FieldCtx& ctx, FqElem a, uint32_t n) {
    uint32_t d = ctx.f() * n;
    if (ctx.m() % d != 0 || !ctx.in_subfield(a, d))
        throw std::invalid_argument("galois_data: element outside F_{q^" + std::to_string(n) + "}");
    GaloisData g;
    FqElem cur = a;
    do {
        g.orbit.push_back(cur);
        cur = ctx.frobenius(cur, 1);
    } while (cur != a);
    g.trivial_stabilizer = g.orbit.size() == n;
    return g;
}

// ---------------------------------------------------------------------------

uint32_t euler_phi(uint32_t M) {
    uint32_t r = M;
    for (uint64_t ell : prime_factors(M)) r = r / uint32_t(ell) * uint32_t(ell - 1);
    return r;
}

const std::vector<long>& cyclotomic_poly(uint32_t M) {
    static std::mutex mu;
    static std::map<uint32_t, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
    }
    if (M == 0) throw std::invalid_argument("cyclotomic order must be positive");
    std::vector<long> num(M + 1, 0);
    num[0] = -1;
    num[M] = 1;
    for (uint32_t d = 1; d < M; ++d) {
        if (M % d) continue;
        const std::vector<long>& den = cyclotomic_poly(d);
        // Exact division by a monic polynomial.
        size_t dd = den.size() - 1;
        std::vector<long> quo(num.size() - dd, 0);
        for (size_t i = num.size(); i-- > dd;) {
            long c = num[i];
            quo[i - dd] = c;
            if (c)
                for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = quo;
    }
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(M, num).first->second;
}

CycNumber::CycNumber(uint32_t M) : M_(M), c_(euler_phi(M)) {
    if (M == 0) throw std::invalid_argument("cyclotomic order must be positive");
}

CycNumber::CycNumber(uint32_t M, const mpq_class& r) : CycNumber(M) { c_[0] = r; }

CycNumber CycNumber::from_poly(uint32_t M, const std::vector<mpq_class>& poly0) {
    CycNumber out(M);
    const auto& phi = cyclotomic_poly(M);
    size_t d = phi.size() - 1;
    std::vector<mpq_class> poly = poly0;
    for (size_t i = poly.size(); i-- > d;) {
        if (sgn(poly[i]) == 0) continue;
        mpq_class c = poly[i];
        for (size_t j = 0; j <= d; ++j)
            if (phi[j]) poly[i - d + j] -= c * phi[j];
    }
    for (size_t i = 0; i < d && i < poly.size(); ++i) out.c_[i] = poly[i];
    return out;
}

CycNumber CycNumber::root(uint32_t M, int64_t e) {
    int64_t r = e % int64_t(M);
    if (r < 0) r += M;
    uint32_t d = euler_phi(M);
    if (uint32_t(r) < d) {
        CycNumber out(M);
        out.c_[r] = 1;
        return out;
    }
    std::vector<mpq_class> poly(r + 1);
    poly[r] = 1;
    return from_poly(M, poly);
}

bool CycNumber::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool CycNumber::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

CycNumber CycNumber::lift(uint32_t M2) const {
    if (M2 % M_ != 0) throw std::invalid_argument("lift: target order is not a multiple");
    if (M2 == M_) return *this;
    uint32_t s = M2 / M_;
    std::vector<mpq_class> poly(size_t(c_.size() - 1) * s + 1);
    for (size_t i = 0; i < c_.size(); ++i) poly[i * s] = c_[i];
    return from_poly(M2, poly);
}

CycNumber CycNumber::galois_twist(int64_t j) const {
    int64_t r = j % int64_t(M_);
    if (r < 0) r += M_;
    if (std::gcd(uint64_t(r), uint64_t(M_)) != 1)
        throw std::invalid_argument("galois_twist: gcd(" + std::to_string(j) + ", " + std::to_string(M_) + ") != 1");
    std::vector<mpq_class> poly(M_);
    for (size_t i = 0; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) poly[(i * uint64_t(r)) % M_] += c_[i];
    return from_poly(M_, poly);
}

CycNumber CycNumber::mul_root(int64_t e) const {
    int64_t r = e % int64_t(M_);
    if (r < 0) r += M_;
    if (r == 0) return *this;
    std::vector<mpq_class> poly(c_.size() + r);
    for (size_t i = 0; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) poly[i + r] = c_[i];
    return from_poly(M_, poly);
}

void CycNumber::align(CycNumber& a, CycNumber& b) const {
    if (a.M_ == b.M_) return;
    uint32_t L = uint32_t(lcm_u64(a.M_, b.M_));
    a = a.lift(L);
    b = b.lift(L);
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
    if (o.M_ != M_) {
        CycNumber b = o;
        align(*this, b);
        return *this += b;
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) {
    if (o.M_ != M_) {
        CycNumber b = o;
        align(*this, b);
        return *this -= b;
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycNumber& CycNumber::operator*=(const mpq_class& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
    if (o.M_ != M_) {
        CycNumber b = o;
        align(*this, b);
        return *this *= b;
    }
    size_t d = c_.size();
    std::vector<mpq_class> poly(2 * d - 1);
    for (size_t i = 0; i < d; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (sgn(o.c_[j]) != 0) poly[i + j] += c_[i] * o.c_[j];
    }
    *this = from_poly(M_, poly);
    return *this;
}

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

bool CycNumber::operator==(const CycNumber& o) const {
    if (o.M_ != M_) {
        CycNumber a = *this, b = o;
        align(a, b);
        return a.c_ == b.c_;
    }
    return c_ == o.c_;
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
    size_t d = c_.size();
    // Column j of the multiplication matrix is this * z^j.
    std::vector<std::vector<mpq_class>> A(d, std::vector<mpq_class>(d + 1));
    CycNumber col = *this;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) A[i][j] = col.c_[i];
        col = col.mul_root(1);
    }
    A[0][d] = 1;
    for (size_t c = 0; c < d; ++c) {
        size_t piv = c;
        while (piv < d && sgn(A[piv][c]) == 0) ++piv;
        if (piv == d) throw std::logic_error("singular multiplication matrix");
        std::swap(A[piv], A[c]);
        mpq_class inv = 1 / A[c][c];
        for (size_t k = c; k <= d; ++k) A[c][k] *= inv;
        for (size_t r = 0; r < d; ++r) {
            if (r == c || sgn(A[r][c]) == 0) continue;
            mpq_class t = A[r][c];
            for (size_t k = c; k <= d; ++k) A[r][k] -= t * A[c][k];
        }
    }
    CycNumber out(M_);
    for (size_t i = 0; i < d; ++i) out.c_[i] = A[i][d];
    return out;
}

std::vector<std::string> CycNumber::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x.get_str());
    return out;
}

std::string CycNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        mpq_class a = c_[i];
        if (!first) os << (sgn(a) < 0 ? " - " : " + ");
        else if (sgn(a) < 0) os << "-";
        mpq_class aa = abs(a);
        first = false;
        if (i == 0) {
            os << aa.get_str();
        } else {
            if (aa != 1) os << aa.get_str() << "*";
            os << "z" << M_;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace dllab
