#ifndef DLLAB_SUITES_HPP
#define DLLAB_SUITES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dllab/dlring.hpp"
#include "dllab/report.hpp"

namespace dllab {

// Orders, case data and flat coordinates of one parameter point.
SuiteReport params_report(const RingParams& P);

// Symbolic ghost identities of the universal sum and product polynomials for
// every r <= r_max, plus the closed form of S_1 when f = 1.
// Subgroup orders of U(F_{q^ext}) and the index relations among them.
SuiteReport group_info_report(const RingParams& P, uint32_t ext);

SuiteReport witt_ghost_suite(const std::vector<uint32_t>& ps, const std::vector<uint32_t>& fs, uint32_t r_max);

// Ring axioms on random triples for W_h and W_{h-k} over F_{q^n}, and agreement
// with an independent model (Galois ring / truncated power series).
SuiteReport witt_ring_suite(const RingParams& P, uint32_t pairs, uint64_t seed);

// build_gr == c_m^q - c_m from the expanded determinant, every 1 <= m <= h-1.
SuiteReport gr_suite(const RingParams& P);

// Every suite at one parameter point; ext is the extension degree for counts.
// progress, when set, sees each finished sub-suite.
SuiteReport verify_all(const RingParams& P, uint32_t ext, uint64_t seed,
                       const std::function<void(const SuiteReport&)>& progress = {});

}  // namespace dllab

#endif
