#ifndef DLLAB_JUGGLING_HPP
#define DLLAB_JUGGLING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dllab/dlring.hpp"

namespace dllab {

struct JugglingSequence {
    std::vector<uint32_t> j;
    bool operator==(const JugglingSequence& o) const { return j == o.j; }
    bool operator<(const JugglingSequence& o) const { return j < o.j; }
};

struct JuggStats {
    std::vector<uint32_t> sigma;  // zero-based: sigma[i] = (i + j_i) mod n
    int sign = 1;
    uint32_t f = 0;            // #{i : sigma(i) < i}
    uint64_t balls_num = 0;    // balls = balls_num / balls_den, reduced
    uint64_t balls_den = 1;
    std::string balls_string() const;
};

bool jugg_valid(const JugglingSequence& s);
JuggStats jugg_stats(const JugglingSequence& s);
// (j_1, ..., j_n) -> (j_2, ..., j_n, j_1)
JugglingSequence cyclic_shift(const JugglingSequence& s);
// Sequences with entries in S_flat u {0} and |j| = (m - (k-1) f_j) n.
std::vector<JugglingSequence> enumerate_jugg(const RingParams& P, uint32_t m);
// "single" for a cyclic shift of (rn) e_1, "pair" for s e_1 + (rn - s) e_{s mod n + 1}
// up to shift, "other" otherwise.
std::string jugg_shape(const JugglingSequence& s);
std::string jugg_to_string(const JugglingSequence& s);

// Polynomial over F_p in the flat variables x_s; x_0 is the constant 1.
class SymPoly {
public:
    using Mono = std::vector<uint64_t>;
    // Descending pure lex, highest variable compared first.
    struct MonoOrder {
        bool operator()(const Mono& a, const Mono& b) const;
    };

    SymPoly() = default;
    SymPoly(uint32_t p, std::vector<uint32_t> vars);
    static SymPoly constant(uint32_t p, const std::vector<uint32_t>& vars, int64_t c);
    static SymPoly var(uint32_t p, const std::vector<uint32_t>& vars, uint32_t s);

    uint32_t p() const { return p_; }
    const std::vector<uint32_t>& vars() const { return vars_; }
    const std::map<Mono, uint32_t, MonoOrder>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b) { return a.mul(b); }
    SymPoly mul(const SymPoly& o) const;
    SymPoly scale(int64_t c) const;
    SymPoly pow(uint64_t e) const;
    // Substitution x_s -> x_s^e; a ring endomorphism when e is a power of p.
    SymPoly power_subst(uint64_t e) const;
    bool operator==(const SymPoly& o) const { return p_ == o.p_ && vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }

    // values[i] is the value of vars()[i].
    FqElem evaluate(const FieldCtx& F, const std::vector<FqElem>& values) const;
    std::string to_string() const;

private:
    uint32_t p_ = 2;
    std::vector<uint32_t> vars_;
    std::map<Mono, uint32_t, MonoOrder> terms_;
    void add_term(const Mono& m, uint64_t c);
    void check_compatible(const SymPoly& o) const;
};

// g_{mn} assembled from juggling sequences (equal characteristic).
SymPoly build_gr(const RingParams& P, uint32_t m);
// pi-adic coefficients c_0..c_{h-1} of det iota(generic element of U).
std::vector<SymPoly> symbolic_det_series(const RingParams& P);
// c_m^q - c_m from the expanded determinant.
SymPoly symbolic_det_c(const RingParams& P, uint32_t m);

struct DescentReport {
    uint32_t trials = 0;
    uint64_t pairs = 0;
    // strict_equal[m] counts pairs with g_m(z delta) = g_m(z), m = 1..h-1
    std::vector<uint64_t> strict_equal;
    uint64_t product_failures = 0;     // det(z delta) != det(z) det(delta)
    uint64_t vanishing_mismatch = 0;   // prefix vanishing of g differs between z and z delta
    uint64_t symbolic_mismatch = 0;    // symbolic g_m disagrees with the determinant
    std::string witness;
    bool pass() const { return product_failures == 0 && vanishing_mismatch == 0 && symbolic_mismatch == 0; }
};

// z = s(x) y with s(x) supported on the complement of H', y in H' over F_{q^{2n}},
// delta running over H'(F_{q^n}) (sampled when large).
DescentReport descent_invariance_check(const RingParams& P, uint32_t trials, uint64_t seed);

}  // namespace dllab

#endif
