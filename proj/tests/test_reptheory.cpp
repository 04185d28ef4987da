#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>

#include "dllab/reptheory.hpp"

using namespace dllab;

namespace {

using cd = std::complex<double>;

RingParams rp(uint32_t p, uint32_t f, uint32_t n, uint32_t h, uint32_t k, Regime reg = Regime::Equal) {
    RingParams P;
    P.p = p;
    P.f = f;
    P.n = n;
    P.h = h;
    P.k = k;
    P.regime = reg;
    return P;
}

const std::vector<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t, uint32_t>> kGrid{
    {2, 1, 2, 2, 1}, {3, 1, 2, 2, 1}, {2, 1, 2, 3, 1}, {2, 1, 2, 3, 2}, {2, 1, 3, 2, 1}, {2, 1, 3, 2, 2}};

void require_pass(const SuiteReport& r) {
    for (const auto& c : r.checks) {
        CAPTURE(r.suite);
        CAPTURE(c.name);
        CAPTURE(c.actual);
        CAPTURE(c.witness);
        CHECK(c.pass);
    }
}

cd root(uint32_t M, int64_t e) { return std::polar(1.0, 2 * M_PI * double(e) / double(M)); }

// Floating-point character of a monomial representation, computed from the
// matrices rather than the stored diagonal.
std::vector<cd> float_character(const MonomialRep& rho, size_t order) {
    std::vector<cd> out(order);
    for (uint32_t g = 0; g < order; ++g)
        for (uint32_t i = 0; i < rho.dim; ++i)
            if (rho.p(g, i) == i) out[g] += root(rho.M, rho.e(g, i));
    return out;
}

cd float_inner(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s = 0;
    for (size_t g = 0; g < a.size(); ++g) s += a[g] * std::conj(b[g]);
    return s / double(a.size());
}

cd to_complex(const CycNumber& c) {
    cd s = 0;
    for (size_t i = 0; i < c.coeffs().size(); ++i) s += c.coeffs()[i].get_d() * root(c.order(), int64_t(i));
    return s;
}

}  // namespace

TEST_CASE("dual groups: sizes and orthogonality") {
    for (auto [p, f, n, h, k] : kGrid) {
        RepContext C(rp(p, f, n, h, k));
        const auto& H = C.sub(SubgroupId::H);
        const auto& chars = C.chars_H();
        CHECK(chars.size() == H.size());
        for (size_t a = 0; a < chars.size(); ++a)
            for (size_t b = a; b < chars.size(); ++b) CHECK(char_inner(H, chars[a], chars[b]) == (a == b ? 1 : 0));
        CHECK(C.chars_Z().size() == C.sub(SubgroupId::Z).size());
    }
    // H(F_4) at q = 2, n = 2, h = 2 is elementary abelian of order 4.
    RepContext C(rp(2, 1, 2, 2, 1));
    CHECK(C.chars_H().size() == 4);
    for (auto g : C.sub(SubgroupId::H)) CHECK(C.group().element_order(g) <= 2);
}

TEST_CASE("primitivity") {
    RepContext C(rp(2, 1, 2, 2, 1));
    for (const auto& chi : C.chars_H())
        if (chi.is_trivial()) CHECK_FALSE(is_primitive(C, chi));
    // psi o Frob = psi iff psi is trivial on F_2: two of the four characters.
    CHECK(primitive_indices(C).size() == 2);

    for (auto [p, f, n, h, k] : kGrid) {
        RepContext D(rp(p, f, n, h, k));
        size_t orbit_free_omegas = 0;
        for (const auto& om : D.chars_Z())
            if (is_primitive(D, om)) ++orbit_free_omegas;
        size_t HZ = D.sub(SubgroupId::H).size() / D.sub(SubgroupId::Z).size();
        CHECK(primitive_indices(D).size() == orbit_free_omegas * HZ);
        for (auto i : primitive_indices(D)) CHECK(centre_orbit_free(D, D.chars_H()[i]));
    }
}

TEST_CASE("centre larger than the top layer") {
    // h - k = 1 with k = 2 makes all of H central.
    RepContext C(rp(2, 1, 2, 3, 2));
    CHECK(C.sub(SubgroupId::Z).size() == C.sub(SubgroupId::H).size());
    size_t extra = 0;
    for (uint32_t i = 0; i < C.chars_H().size(); ++i) {
        const auto& chi = C.chars_H()[i];
        if (!centre_orbit_free(C, chi) || is_primitive(C, chi)) continue;
        ++extra;
        RhoChi rc = build_rho(C, i);
        CHECK(inner(rc.character, rc.character) != CycNumber(C.M(), 1));
    }
    CHECK(extra == 4);
}

TEST_CASE("chi sharp and extensions to H^+") {
    {
        // q = 2, n = 2, h = 3, k = 1 is Case 1.
        RepContext C(rp(2, 1, 2, 3, 1));
        for (auto i : primitive_indices(C)) {
            auto rc = build_rho(C, i);
            CHECK(rc.extensions.size() == 1);
            CHECK(rc.extensions[0] == rc.sharp);
        }
    }
    {
        RepContext C(rp(2, 1, 2, 2, 1));
        for (auto i : primitive_indices(C)) {
            auto rc = build_rho(C, i);
            CHECK(rc.extensions.size() == 2);
            for (const auto& e : rc.extensions)
                for (auto g : C.sub(SubgroupId::Hprime)) CHECK(e.exps[g] == rc.sharp.exps[g]);
        }
    }
}

TEST_CASE("induced representations") {
    struct Ex {
        RingParams P;
        uint32_t dim;
    };
    for (auto ex : {Ex{rp(2, 1, 2, 2, 1), 2}, Ex{rp(2, 1, 3, 2, 1), 8}, Ex{rp(2, 1, 2, 3, 1), 4},
                    Ex{rp(3, 1, 2, 2, 1), 3}, Ex{rp(2, 1, 3, 2, 2), 1}}) {
        RepContext C(ex.P);
        const auto& G = C.group();
        for (auto i : primitive_indices(C)) {
            auto rc = build_rho(C, i);
            CHECK(rc.rho.dim == ex.dim);
            CHECK(is_homomorphism(G, rc.rho));
            // trace at the identity is the index
            CHECK(rc.character[G.identity()].value() == CycNumber(C.M(), G.order() / C.sub(SubgroupId::Hplus).size()));
            // monomial trace agrees with the induced-character formula
            CHECK(equal_class_fn(induced_character_scaled(G, C.sub(SubgroupId::Hplus), rc.extensions[0]), rc.character,
                                 int64_t(C.sub(SubgroupId::Hplus).size())));
            // floating-point oracle for irreducibility
            auto fc = float_character(rc.rho, G.order());
            CHECK(std::abs(float_inner(fc, fc) - cd(1, 0)) < 1e-9);
            // Frobenius reciprocity: Res_H rho contains chi
            CycNumber m = inner(rc.character, class_fn(rc.chi), C.sub(SubgroupId::H));
            REQUIRE(m.is_rational());
            CHECK(m.rational_part() >= 1);
        }
    }
}

TEST_CASE("Case 2 induction from H' and distinctness") {
    RepContext C(rp(2, 1, 2, 3, 2));
    const auto& G = C.group();
    CHECK(C.sub(SubgroupId::Hplus).size() == 2 * C.sub(SubgroupId::Hprime).size());
    std::vector<std::vector<cd>> fcs;
    for (auto i : primitive_indices(C)) {
        auto rc = build_rho(C, i);
        auto ind = induced_character_scaled(G, C.sub(SubgroupId::Hprime), rc.sharp);
        CHECK(equal_class_fn(ind, rc.character, int64_t(2 * C.sub(SubgroupId::Hprime).size())));
        fcs.push_back(float_character(rc.rho, G.order()));
    }
    for (size_t a = 0; a < fcs.size(); ++a)
        for (size_t b = a + 1; b < fcs.size(); ++b) CHECK(std::abs(float_inner(fcs[a], fcs[b])) < 1e-9);
}

TEST_CASE("exhaustion at q = 2, n = 2, h = 2") {
    RepContext C(rp(2, 1, 2, 2, 1));
    // one rho of dimension 2 per primitive central character; 2^2 = [U : Z] = 4
    CHECK(C.group().order() / C.sub(SubgroupId::Z).size() == 4);
    for (auto i : primitive_indices(C)) CHECK(build_rho(C, i).rho.dim == 2);
}

TEST_CASE("representation suite on the grid") {
    for (auto reg : {Regime::Equal, Regime::Mixed})
        for (auto [p, f, n, h, k] : kGrid) require_pass(rep_suite(rp(p, f, n, h, k, reg)));
}

TEST_CASE("extension to the semidirect product") {
    {
        RepContext C(rp(2, 1, 2, 2, 1));
        for (auto i : primitive_indices(C)) {
            auto rc = build_rho(C, i);
            auto X = extension_select(C, rc);
            REQUIRE(X.ok);
            CHECK(X.powers[1].trace() == CycNumber(C.M(), -1));
            CHECK(X.powers[0] == CycMatrix::identity(C.M(), rc.rho.dim));
            CHECK(extension_homomorphism_failures(C, rc, X, 200, 7) == 0);
        }
    }
    {
        // D = 2: Tr eta(zeta g) = +chi(g) for all 16 g
        RepContext C(rp(2, 1, 2, 3, 1));
        for (auto i : primitive_indices(C)) {
            auto rc = build_rho(C, i);
            auto X = extension_select(C, rc);
            REQUIRE(X.ok);
            CHECK(C.sub(SubgroupId::H).size() == 16);
            for (auto g : C.sub(SubgroupId::H)) {
                cd t = 0;
                auto m = mul_monomial_right(X.powers[1], rc.rho, g);
                t = to_complex(m.trace());
                CHECK(std::abs(t - root(rc.chi.M, rc.chi.exp_at(g))) < 1e-9);
            }
        }
    }
    for (auto reg : {Regime::Equal, Regime::Mixed})
        for (auto [p, f, n, h, k] : kGrid) require_pass(extension_suite(rp(p, f, n, h, k, reg), 300, 11));
}

TEST_CASE("very regular exponents") {
    auto P = rp(2, 1, 2, 2, 1);  // F_4^x, N = 3
    CHECK_FALSE(very_regular(P, 0));
    CHECK(very_regular(P, 1));
    CHECK(very_regular(P, 2));
    auto Q = rp(2, 1, 3, 2, 1);  // F_8^x has no proper subfield besides F_2
    for (uint64_t a = 1; a < 7; ++a) CHECK(very_regular(Q, a));
    auto R = rp(2, 1, 4, 2, 1);  // F_16^x: F_4^x is the subgroup of order 3
    CHECK_FALSE(very_regular(R, 5));
    CHECK(very_regular(R, 1));
}

TEST_CASE("very regular traces") {
    RepContext C(rp(2, 1, 3, 2, 1));
    auto prim = primitive_indices(C);
    REQUIRE(!prim.empty());
    ThetaChar th = make_theta(C, C.chars_H()[prim[0]], 3);
    CHECK(theta_is_primitive(C, th));
    auto rc = build_rho(C, theta_restriction(C, th));
    auto X = extension_select(C, rc);
    REQUIRE(X.ok);
    // x = zeta, u = 1, D = 2: theta(zeta) + theta(zeta)^2 + theta(zeta)^4
    auto tv = vr_trace(C, th, rc, X, 1, C.group().identity());
    cd want = root(7, 3) + root(7, 6) + root(7, 12);
    CHECK(std::abs(to_complex(tv.lhs) - want) < 1e-9);
    CHECK(tv.lhs == tv.rhs);
    CHECK_THROWS(vr_trace(C, th, rc, X, 0, C.group().identity()));

    // h <= k: U = H and rho_chi = chi
    RepContext D(rp(2, 1, 3, 2, 2));
    CHECK(D.group().order() == D.sub(SubgroupId::H).size());
    auto pd = primitive_indices(D);
    REQUIRE(!pd.empty());
    ThetaChar t2 = make_theta(D, D.chars_H()[pd[0]], 1);
    auto r2 = build_rho(D, theta_restriction(D, t2));
    CHECK(r2.rho.dim == 1);
    auto X2 = extension_select(D, r2);
    REQUIRE(X2.ok);
    for (auto u : D.sub(SubgroupId::H)) {
        auto v = vr_trace(D, t2, r2, X2, 2, u);
        cd s = 0;
        for (uint32_t j = 0; j < 3; ++j) {
            uint32_t fu = D.frob(u, j);
            s += root(7, (2 * (1u << j)) % 7) * root(r2.chi.M, r2.chi.exp_at(fu));
        }
        CHECK(std::abs(to_complex(v.lhs) - s) < 1e-9);
    }
    for (auto [p, f, n, h, k] : kGrid) require_pass(theta_suite(rp(p, f, n, h, k), 2));
}

TEST_CASE("comparison across invariants") {
    auto a = jl_compare(rp(2, 1, 3, 2, 1), 2, 4);
    require_pass(a);
    CHECK(a.data["dims"][0] == 24);
    CHECK(a.data["dims"][1] == 3);
    auto b = jl_compare(rp(2, 1, 2, 3, 1), 3, 4);
    require_pass(b);
    CHECK(b.data["dims"][0] == 8);
    CHECK(b.data["dims"][1] == 2);
    require_pass(jl_compare(rp(2, 1, 2, 3, 1, Regime::Mixed), 3, 2));
}
