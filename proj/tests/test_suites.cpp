#include "doctest.h"

#include <stdexcept>

#include "dllab/suites.hpp"

using namespace dllab;

namespace {

RingParams at(uint32_t p, uint32_t f, uint32_t n, uint32_t h, uint32_t k, Regime r = Regime::Equal) {
    RingParams P;
    P.p = p;
    P.f = f;
    P.n = n;
    P.h = h;
    P.k = k;
    P.regime = r;
    return P;
}

uint64_t pw(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_CASE("group info orders against a coordinate count") {
    for (auto P : {at(2, 1, 2, 2, 1), at(2, 1, 2, 3, 1), at(2, 1, 3, 2, 2), at(3, 1, 2, 2, 1)})
        for (uint32_t ext : {1u, 2u}) {
            auto r = group_info_report(P, ext);
            CHECK(r.pass());
            // h-1 free coordinates in A_0, (h-k)^+ in each of the n-1 other slots
            uint64_t qe = pw(P.q(), ext);
            CHECK(r.data["orders"]["U"].get<uint64_t>() == pw(qe, P.h - 1 + (P.n - 1) * P.hk()));
            CHECK(r.data["orders"]["H"].get<uint64_t>() == pw(qe, P.h - 1));
        }
    CHECK_THROWS_AS(group_info_report(at(2, 1, 2, 2, 1), 0), std::invalid_argument);
}

TEST_CASE("ghost suite reports levels beyond the guard as failures") {
    auto ok = witt_ghost_suite({2}, {1}, 2);
    CHECK(ok.pass());
    CHECK(ok.checks.size() == 4);

    auto r = witt_ghost_suite({3}, {2}, 3);
    CHECK_FALSE(r.pass());
    uint32_t failed = 0;
    for (const auto& c : r.checks)
        if (!c.pass) {
            ++failed;
            CHECK(c.name.find("r=3") != std::string::npos);
            CHECK(c.witness.find("guard") != std::string::npos);
        }
    CHECK(failed == 1);
}

TEST_CASE("ring suite in both regimes") {
    CHECK(witt_ring_suite(at(3, 1, 2, 2, 1, Regime::Mixed), 200, 5).pass());
    CHECK(witt_ring_suite(at(2, 1, 2, 3, 1, Regime::Equal), 200, 5).pass());
    auto r = witt_ring_suite(at(2, 1, 2, 3, 1, Regime::Mixed), 200, 5);
    CHECK(r.checks.size() == 6);  // W_3 and W_2
}

TEST_CASE("gr suite") {
    auto r = gr_suite(at(2, 1, 2, 3, 1));
    CHECK(r.pass());
    CHECK(r.data["g"]["1"].get<std::string>() == "x2^4 + x2 + x1^6 + x1^3");
    CHECK_THROWS_AS(gr_suite(at(2, 1, 2, 2, 1, Regime::Mixed)), std::invalid_argument);
}

TEST_CASE("verify all reports each sub-suite once") {
    for (auto reg : {Regime::Equal, Regime::Mixed}) {
        std::vector<std::string> seen;
        auto all = verify_all(at(2, 1, 2, 2, 1, reg), 2, 3, [&](const SuiteReport& r) { seen.push_back(r.suite); });
        CHECK(all.pass());
        CHECK(seen.size() == (reg == Regime::Equal ? 11u : 10u));
        for (const auto& c : all.checks) CHECK(c.name.find('/') != std::string::npos);
    }
}
