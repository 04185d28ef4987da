#ifndef DLLAB_DLRING_HPP
#define DLLAB_DLRING_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dllab/witt.hpp"

namespace dllab {

struct RingParams {
    uint32_t p = 2, f = 1, n = 2, h = 2, k = 1;
    Regime regime = Regime::Equal;

    uint64_t q() const { return ipow(p, f); }
    // truncation length of the slots A_1..A_{n-1}
    uint32_t hk() const { return h > k ? h - k : 0; }
    uint32_t D() const { return (n - 1) * hk(); }
    bool case2() const { return D() % 2 == 1; }
    std::string case_tag() const { return case2() ? "Case2" : "Case1"; }
    // Flat coordinates s = i + j n  <->  slot A_{i, j}.
    std::vector<uint32_t> S_flat() const;
    void validate() const;
    std::string to_string() const;
};

constexpr uint32_t kMaxN = 8;

struct DlElement {
    uint32_t n = 0;
    std::array<WittVector, kMaxN> A{};

    bool operator==(const DlElement& o) const {
        if (n != o.n) return false;
        for (uint32_t i = 0; i < n; ++i)
            if (A[i] != o.A[i]) return false;
        return true;
    }
    bool operator!=(const DlElement& o) const { return !(*this == o); }
};

// n x n matrix over W_h; entries above the diagonal are known modulo pi^(h-k),
// entries below carry their pi^k factor already.
struct MatHK {
    uint32_t n = 0;
    std::vector<WittVector> e;  // row-major
    WittVector& at(uint32_t r, uint32_t c) { return e[r * n + c]; }
    const WittVector& at(uint32_t r, uint32_t c) const { return e[r * n + c]; }
};

enum class SubgroupId { U, H, Hprime, Hplus, H0prime, H0plus, Z };
std::string subgroup_name(SubgroupId id);
const std::vector<SubgroupId>& all_subgroups();

class DlRing {
public:
    // ambient must contain F_{q^n}: f | m and n | m/f.
    DlRing(const RingParams& params, FieldPtr ambient);

    const RingParams& params() const { return P_; }
    const FieldCtx& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }
    const WittRing& W() const { return Wh_; }
    // Ring of the slots A_1..; only valid when hk() > 0.
    const WittRing& Wk() const { return Whk_; }
    uint32_t slot_len(uint32_t i) const { return i == 0 ? P_.h : P_.hk(); }

    DlElement zero() const;
    DlElement one() const;
    DlElement tau() const;
    DlElement constant(const WittVector& a0) const;

    DlElement add(const DlElement& x, const DlElement& y) const;
    DlElement neg(const DlElement& x) const;
    DlElement mul(const DlElement& x, const DlElement& y) const;
    DlElement pow(const DlElement& x, uint64_t e) const;
    bool is_unit(const DlElement& x) const { return Wh_.is_unit(x.A[0]); }
    bool in_U(const DlElement& x) const { return x.A[0][0] == F_->one(); }
    // Right inverse in R^x (x * y = 1); two-sided wherever the product is associative.
    DlElement inverse(const DlElement& x) const;
    // Coordinatewise q^j-power Frobenius.
    DlElement galois(const DlElement& x, int64_t j) const;
    DlElement conjugate(const DlElement& g, const DlElement& x) const;  // g x g^{-1}
    // Conjugation by the Teichmueller lift of a (a != 0).
    DlElement teich_conjugate(FqElem a, const DlElement& x) const;

    // Flat coordinates x_s, s in S_flat, of an element of U.
    std::vector<FqElem> flat(const DlElement& x) const;
    DlElement from_flat(const std::vector<FqElem>& coords) const;
    FqElem flat_get(const DlElement& x, uint32_t s) const;
    void flat_set(DlElement& x, uint32_t s, FqElem v) const;
    const std::vector<uint32_t>& S_flat() const { return S_; }
    bool coords_in(const DlElement& x, uint32_t ext) const;  // all coordinates in F_{q^ext}

    // U(F_{q^ext}) by index: digits of idx in base q^ext, one per flat coordinate.
    uint64_t U_order(uint32_t ext) const;
    DlElement U_element(uint64_t idx, uint32_t ext) const;
    DlElement U_element(uint64_t idx, const std::vector<FqElem>& subfield) const;

    MatHK iota(const DlElement& x) const;
    MatHK mat_mul(const MatHK& a, const MatHK& b) const;
    bool mat_equal(const MatHK& a, const MatHK& b) const;
    WittVector det(const MatHK& a) const;
    WittVector det_iota(const DlElement& x) const { return det(iota(x)); }
    // Read x back from the first row of a matrix in the image of iota; asserts
    // that iota of the result reproduces the matrix.
    DlElement iota_inverse(const MatHK& a) const;

    // Left action of H(F_{q^n}) on X_h through diag(A_0, phi A_0, ...).
    DlElement H_left_action(const DlElement& hA0, const DlElement& x) const;

    // Subgroup predicates on U(F_{q^n}); the centre is computed from generators.
    bool in_subgroup(SubgroupId id, const DlElement& x) const;
    std::vector<DlElement> enumerate(SubgroupId id, uint32_t ext) const;
    // Generators of U(F_{q^ext}): one coordinate set to an F_p-basis element.
    std::vector<DlElement> U_generators(uint32_t ext) const;
    bool is_central(const DlElement& x) const;

    std::string to_string(const DlElement& x) const;

private:
    RingParams P_;
    FieldPtr F_;
    WittRing Wh_, Whk_;
    std::vector<uint32_t> S_;
    mutable std::vector<DlElement> gens_n_;

    WittVector pi_k_lift(const WittVector& a) const;
};

std::vector<uint32_t> flat_key(const std::vector<FqElem>& c);

struct VecKeyHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

}  // namespace dllab

#endif
