#ifndef DLLAB_SCALARS_HPP
#define DLLAB_SCALARS_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dllab {

class FieldCtx;

// Element of the ambient field, stored as the packed integer sum c_i p^i of
// its coefficient vector with respect to the power basis of the modulus.
struct FqElem {
    uint32_t v = 0;

    bool operator==(const FqElem& o) const { return v == o.v; }
    bool operator!=(const FqElem& o) const { return v != o.v; }
    bool operator<(const FqElem& o) const { return v < o.v; }
    bool is_zero() const { return v == 0; }
};

class FieldCtx {
public:
    // Guard on the ambient order; tables are O(p^m).
    static constexpr uint64_t kMaxOrder = uint64_t(1) << 20;

    static std::shared_ptr<const FieldCtx> make(uint32_t p, uint32_t m, uint32_t f = 1);

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    uint32_t m() const { return m_; }
    uint64_t q() const { return q_; }
    uint32_t order() const { return order_; }
    // Coefficients c_0..c_m of the modulus, c_m = 1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    FqElem zero() const { return FqElem{0}; }
    FqElem one() const { return FqElem{1}; }
    FqElem from_int(int64_t c) const;
    FqElem from_coeffs(const std::vector<uint32_t>& c) const;
    std::vector<uint32_t> coeffs(FqElem a) const;
    FqElem element(uint32_t packed) const;

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
    FqElem pow(FqElem a, int64_t e) const;
    // a^(q^j); negative j gives the inverse automorphism.
    FqElem frobenius(FqElem a, int64_t j) const;
    // a^(p^j)
    FqElem frobenius_p(FqElem a, int64_t j) const;

    // Discrete log to base generator(); requires a != 0.
    uint32_t log(FqElem a) const;
    FqElem exp(uint64_t k) const { return FqElem{exp_[k % (order_ - 1)]}; }

    // First primitive element in lexicographic order of (c_0, ..., c_{m-1}).
    FqElem generator() const { return FqElem{exp_[1 % (order_ - 1)]}; }
    // Generator of F_{p^d}^x inside the ambient field.
    FqElem subfield_generator(uint32_t d) const;
    bool in_subfield(FqElem a, uint32_t d) const;
    // Elements of F_{p^d}, 0 first, then powers of subfield_generator(d).
    std::vector<FqElem> subfield_elements(uint32_t d) const;
    FqElem trace(FqElem a, uint32_t d_from, uint32_t d_to) const;

    // Rank of the coefficient vector in lexicographic (c_0 first) order.
    uint64_t lex_rank(FqElem a) const;

private:
    FieldCtx() = default;
    uint32_t p_ = 0, f_ = 1, m_ = 0, order_ = 0;
    uint64_t q_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;
    std::vector<uint32_t> log_;
    std::vector<uint32_t> zech_;  // log(1 + g^k), or order_-1 for (1 + g^k) = 0
    uint32_t neg_one_log_ = 0;
    std::vector<uint32_t> packed_add_digits(uint32_t a, uint32_t b) const;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);
uint64_t ipow(uint64_t b, uint32_t e);

// Lexicographically smallest monic irreducible (constant term compared first).
std::vector<uint32_t> smallest_irreducible(uint32_t p, uint32_t m);
bool is_irreducible_mod_p(const std::vector<uint32_t>& f, uint32_t p);

struct GaloisData {
    std::vector<FqElem> orbit;
    bool trivial_stabilizer = false;
};
// Orbit of a under x -> x^q inside F_{q^n}.
GaloisData galois_data(const FieldCtx& ctx, FqElem a, uint32_t n);

// Cyclotomic polynomial Phi_M with integer coefficients, low degree first.
const std::vector<long>& cyclotomic_poly(uint32_t M);
uint32_t euler_phi(uint32_t M);

// Element of Q(zeta_M) in the power basis 1, z, ..., z^{phi(M)-1}.
class CycNumber {
public:
    CycNumber() : M_(1), c_(1) {}
    explicit CycNumber(uint32_t M);
    CycNumber(uint32_t M, const mpq_class& r);
    static CycNumber root(uint32_t M, int64_t e);
    // Reduces an arbitrary coefficient vector in z modulo Phi_M.
    static CycNumber from_poly(uint32_t M, const std::vector<mpq_class>& poly);

    uint32_t order() const { return M_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    mpq_class rational_part() const { return c_[0]; }

    CycNumber lift(uint32_t M2) const;
    CycNumber conjugate() const { return galois_twist(-1); }
    CycNumber galois_twist(int64_t j) const;
    CycNumber inverse() const;
    CycNumber mul_root(int64_t e) const;

    CycNumber& operator+=(const CycNumber& o);
    CycNumber& operator-=(const CycNumber& o);
    CycNumber& operator*=(const CycNumber& o);
    CycNumber& operator*=(const mpq_class& r);
    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator*(CycNumber a, const mpq_class& r) { return a *= r; }
    CycNumber operator-() const;
    bool operator==(const CycNumber& o) const;
    bool operator!=(const CycNumber& o) const { return !(*this == o); }

    std::string to_string() const;
    std::vector<std::string> coeff_strings() const;

private:
    uint32_t M_;
    std::vector<mpq_class> c_;
    void align(CycNumber& a, CycNumber& b) const;
};

uint64_t lcm_u64(uint64_t a, uint64_t b);

}  // namespace dllab

#endif
