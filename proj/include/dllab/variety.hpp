#ifndef DLLAB_VARIETY_HPP
#define DLLAB_VARIETY_HPP

#include <cstdint>
#include <vector>

#include "dllab/dlring.hpp"
#include "dllab/group.hpp"
#include "dllab/report.hpp"

namespace dllab {

// x -> zeta^z (h * x . g) zeta^{-z}
struct ActionTriple {
    int64_t z = 0;
    DlElement h_elt, g_elt;
};

class Variety {
public:
    static constexpr uint64_t kMaxSearch = uint64_t(1) << 24;

    // Points over F_{q^m}; the ambient field is F_{q^lcm(m,n)}.
    Variety(const RingParams& P, uint32_t m);

    const RingParams& params() const { return R_.params(); }
    const DlRing& ring() const { return R_; }
    const FieldCtx& field() const { return R_.field(); }
    uint32_t m() const { return m_; }
    FqElem zeta() const { return zeta_; }

    // det iota(x) has all coordinates in F_q.
    bool is_member(const DlElement& x) const;
    uint64_t search_size() const;
    // Members of U(F_{q^m}) in index order; threads = 0 reads DLLAB_THREADS.
    std::vector<DlElement> enumerate(unsigned threads = 0) const;

    DlElement act(const ActionTriple& t, const DlElement& x) const;
    DlElement lang(const DlElement& g) const;  // Fr_{q^n}(g) g^{-1}
    bool in_H_locus(const DlElement& x) const;
    bool zeta_fixed(const DlElement& x) const;
    std::vector<DlElement> fixed_points_zeta(const std::vector<DlElement>& pts) const;

private:
    DlRing R_;
    uint32_t m_;
    FqElem zeta_;
};

unsigned worker_threads();

// Suites; every report lists its checks with witnesses on failure.
SuiteReport variety_count_report(const RingParams& P, uint32_t m);
SuiteReport actions_suite(const RingParams& P, uint32_t m, uint64_t seed);
SuiteReport lang_suite(const RingParams& P, uint32_t fibers, uint64_t seed);
SuiteReport fixed_suite(const RingParams& P, uint32_t m);
// sum_h chi(h)^{-1} #Fix(x -> h * x . g on the zeta-fixed locus) = chi(g) |H| for
// every character of H(F_{q^n}) and every g in H(F_{q^n}).
SuiteReport lefschetz_suite(const RingParams& P);

}  // namespace dllab

#endif
