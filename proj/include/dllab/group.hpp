#ifndef DLLAB_GROUP_HPP
#define DLLAB_GROUP_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dllab/dlring.hpp"
#include "dllab/scalars.hpp"

namespace dllab {

// Finite subgroup of U(F) realised with a full multiplication table.
class FiniteGroup {
public:
    static constexpr size_t kMaxOrder = 4096;

    // els must be closed under multiplication; the identity must be present.
    static FiniteGroup from_elements(const DlRing& R, std::vector<DlElement> els);

    size_t order() const { return els_.size(); }
    uint32_t mul(uint32_t a, uint32_t b) const { return table_[size_t(a) * els_.size() + b]; }
    uint32_t inv(uint32_t a) const { return inv_[a]; }
    uint32_t identity() const { return id_; }
    uint32_t conj(uint32_t g, uint32_t x) const { return mul(mul(g, x), inv(g)); }
    const DlElement& element(uint32_t i) const { return els_[i]; }
    // Throws if x is not in the group.
    uint32_t index_of(const DlElement& x) const;
    bool contains(const DlElement& x) const;

    uint32_t element_order(uint32_t a) const;
    uint64_t exponent() const;
    bool is_abelian() const;
    bool is_abelian(const std::vector<uint32_t>& sub) const;
    bool is_subgroup(const std::vector<uint32_t>& sub) const;
    std::vector<uint32_t> select(const std::function<bool(const DlElement&)>& pred) const;
    std::vector<uint32_t> centre() const;

private:
    const DlRing* R_ = nullptr;
    std::vector<DlElement> els_;
    std::vector<uint32_t> table_, inv_;
    uint32_t id_ = 0;
    std::unordered_map<std::vector<uint32_t>, uint32_t, VecKeyHash> index_;
};

// Exact sum of M-th roots of unity with integer multiplicities.
class RootSum {
public:
    explicit RootSum(uint32_t M = 1) : counts_(M, 0) {}
    uint32_t order() const { return uint32_t(counts_.size()); }
    void add(uint64_t e, int64_t c = 1) { counts_[e % counts_.size()] += c; }
    void add(const RootSum& o);
    CycNumber value() const;
    const std::vector<int64_t>& counts() const { return counts_; }

private:
    std::vector<int64_t> counts_;
};

// Character of an abelian subgroup with values zeta_M^e; exps[g] = -1 off the subgroup.
struct FinChar {
    uint32_t M = 1;
    std::vector<int64_t> exps;

    bool defined_at(uint32_t g) const { return exps[g] >= 0; }
    uint32_t exp_at(uint32_t g) const;
    CycNumber value(uint32_t g) const { return CycNumber::root(M, exp_at(g)); }
    bool operator==(const FinChar& o) const { return M == o.M && exps == o.exps; }
    bool operator!=(const FinChar& o) const { return !(*this == o); }
    bool is_trivial() const;
};

// All characters of the abelian subgroup sub, built along a chain of generators of
// maximal order (greedy splitting).  Throws if sub is not an abelian subgroup.
std::vector<FinChar> dual_group(const FiniteGroup& G, const std::vector<uint32_t>& sub, uint32_t M);
bool is_character(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi);
// <a, b> over sub, exact.
mpq_class char_inner(const std::vector<uint32_t>& sub, const FinChar& a, const FinChar& b);

}  // namespace dllab

#endif
