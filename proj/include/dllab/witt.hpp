#ifndef DLLAB_WITT_HPP
#define DLLAB_WITT_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "dllab/scalars.hpp"

namespace dllab {

enum class Regime { Equal, Mixed };

std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

// Exact polynomial over Z in variables X_0..X_r, Y_0..Y_r, monomials packed
// into a 128-bit key with a fixed bit width per exponent.
class IntPoly {
public:
    using Key = unsigned __int128;
    struct KeyHash {
        size_t operator()(Key k) const {
            uint64_t lo = uint64_t(k), hi = uint64_t(k >> 64);
            return size_t(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6) + (lo >> 2)));
        }
    };
    using TermMap = std::unordered_map<Key, mpz_class, KeyHash>;

    IntPoly() = default;
    IntPoly(uint32_t nvars, uint32_t bits) : nvars_(nvars), bits_(bits) {}
    static IntPoly var(uint32_t nvars, uint32_t bits, uint32_t i, uint32_t e = 1);
    static IntPoly constant(uint32_t nvars, uint32_t bits, const mpz_class& c);

    uint32_t nvars() const { return nvars_; }
    uint32_t bits() const { return bits_; }
    const TermMap& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    uint32_t exponent(Key k, uint32_t i) const {
        return uint32_t((k >> (i * bits_)) & ((Key(1) << bits_) - 1));
    }
    Key make_key(const std::vector<uint32_t>& e) const;
    std::vector<uint32_t> exponents(Key k) const;

    void add_term(Key k, const mpz_class& c);
    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const mpz_class& c);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    IntPoly pow(uint64_t e) const;
    // Exact division by d; returns false if some coefficient is not divisible.
    bool divide_exact(const mpz_class& d);
    bool operator==(const IntPoly& o) const;

    // Terms sorted by descending total degree, then descending exponent vector.
    std::vector<std::pair<std::vector<uint32_t>, mpz_class>> sorted_terms() const;
    std::string to_string(const std::vector<std::string>& names) const;

private:
    uint32_t nvars_ = 0, bits_ = 0;
    TermMap terms_;
};

struct UniversalPolys {
    uint32_t r_max = 0, p = 0, f = 1;
    uint64_t q = 0;
    // variables X_0..X_{r_max} then Y_0..Y_{r_max}
    std::vector<IntPoly> S, M;
    std::vector<std::string> var_names() const;
    IntPoly ghost_X(uint32_t r) const;
    IntPoly ghost_Y(uint32_t r) const;
    // W_r evaluated at the polynomial vector P_0..P_r.
    IntPoly ghost_of(const std::vector<IntPoly>& P, uint32_t r) const;
};

// Guard on the estimated number of monomials in the largest expansion.
constexpr double kUniversalPolyGuard = 4.0e6;

UniversalPolys universal_polys(uint32_t r_max, uint32_t p, uint32_t f);
// Estimated monomial count of S_r (the dominant expansion).
double universal_poly_size_estimate(uint32_t r, uint32_t p, uint32_t f);

// Reduced mod p, for evaluation at F_q-algebra points.
struct ReducedPoly {
    struct Term {
        uint32_t coeff;
        std::vector<std::pair<uint8_t, uint32_t>> factors;  // (variable, exponent)
    };
    std::vector<Term> terms;
};

struct ReducedUniversal {
    uint32_t r_max = 0, p = 0, f = 1;
    std::vector<ReducedPoly> S, M;
};

// Cached, write-once per (p, f, r_max).
const ReducedUniversal& reduced_universal(uint32_t r_max, uint32_t p, uint32_t f);

struct WittParams {
    Regime regime = Regime::Equal;
    uint32_t p = 2, f = 1, h = 1;
    bool operator==(const WittParams& o) const {
        return regime == o.regime && p == o.p && f == o.f && h == o.h;
    }
};

constexpr uint32_t kMaxWittLength = 8;

struct WittVector {
    uint32_t len = 0;
    std::array<FqElem, kMaxWittLength> c{};

    FqElem operator[](uint32_t i) const { return c[i]; }
    FqElem& operator[](uint32_t i) { return c[i]; }
    bool operator==(const WittVector& o) const {
        if (len != o.len) return false;
        for (uint32_t i = 0; i < len; ++i)
            if (c[i] != o.c[i]) return false;
        return true;
    }
    bool operator!=(const WittVector& o) const { return !(*this == o); }
};

// The ring W_h over the ambient field, for a fixed regime and truncation length.
class WittRing {
public:
    WittRing(FieldPtr field, Regime regime, uint32_t h);

    const FieldCtx& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    Regime regime() const { return regime_; }
    uint32_t h() const { return h_; }
    uint32_t p() const { return field_->p(); }
    uint32_t f() const { return field_->f(); }
    WittParams params() const { return WittParams{regime_, p(), f(), h_}; }

    WittVector zero() const;
    WittVector one() const;
    WittVector make(const std::vector<FqElem>& coords) const;
    WittVector teichmuller(FqElem a) const;
    WittVector top_layer(FqElem a) const;

    WittVector add(const WittVector& u, const WittVector& v) const;
    WittVector mul(const WittVector& u, const WittVector& v) const;
    WittVector neg(const WittVector& u) const;
    WittVector sub(const WittVector& u, const WittVector& v) const { return add(u, neg(v)); }
    WittVector inverse(const WittVector& u) const;
    bool is_unit(const WittVector& u) const { return u.len > 0 && !u[0].is_zero(); }

    WittVector verschiebung(const WittVector& u) const;
    WittVector frobenius(const WittVector& u, int64_t j = 1) const;
    WittVector mult_by_pi(const WittVector& u) const;
    WittVector mult_by_pi_pow(const WittVector& u, uint32_t k) const;
    WittVector scalar_int(int64_t c) const;

    // Zero-padded lift of a shorter vector, and truncation to a shorter length.
    WittVector extend(const WittVector& u) const;
    static WittVector truncate(const WittVector& u, uint32_t len);

private:
    FieldPtr field_;
    Regime regime_;
    uint32_t h_;
    const ReducedUniversal* polys_ = nullptr;
    void check(const WittVector& u) const;
    FqElem eval(const ReducedPoly& P, const WittVector& u, const WittVector& v) const;
};

// Independent model of W_h(F_{p^m}) in mixed characteristic: the Galois ring
// (Z/p^h)[x]/(lift of the modulus), with Witt coordinates a_i mapped to
// sum_i p^i [a_i^{q^{-i}}].
class GaloisRingOracle {
public:
    GaloisRingOracle(FieldPtr field, uint32_t h);
    using Elem = std::vector<int64_t>;
    Elem from_witt(const WittVector& u) const;
    WittVector to_witt(const Elem& z) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem teichmuller(FqElem a) const;

private:
    FieldPtr field_;
    uint32_t h_;
    int64_t mod_;
    std::vector<int64_t> modulus_;
    Elem lift(FqElem a) const;
    Elem pow(Elem a, uint64_t e) const;
};

}  // namespace dllab

#endif
