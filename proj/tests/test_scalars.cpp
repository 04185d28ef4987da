#include "doctest.h"

#include <random>
#include <set>

#include "dllab/scalars.hpp"

using namespace dllab;

namespace {

// Trial-division irreducibility: no monic factor of degree 1..m/2 divides f.
bool brute_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
    uint32_t m = uint32_t(f.size() - 1);
    for (uint32_t d = 1; 2 * d <= m; ++d) {
        uint64_t count = ipow(p, d);
        for (uint64_t idx = 0; idx < count; ++idx) {
            std::vector<int64_t> g(d + 1);
            uint64_t x = idx;
            for (uint32_t i = 0; i < d; ++i) {
                g[i] = int64_t(x % p);
                x /= p;
            }
            g[d] = 1;
            std::vector<int64_t> r(f.begin(), f.end());
            for (int64_t top = int64_t(m); top >= int64_t(d); --top) {
                int64_t c = ((r[top] % int64_t(p)) + p) % p;
                if (!c) continue;
                for (uint32_t i = 0; i <= d; ++i) r[top - d + i] -= c * g[i];
            }
            bool zero = true;
            for (uint32_t i = 0; i < d; ++i)
                if (((r[i] % int64_t(p)) + p) % p) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

// Scan monic degree-m polynomials, constant term most significant.
std::vector<uint32_t> brute_smallest(uint32_t p, uint32_t m) {
    uint64_t count = ipow(p, m);
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> f(m + 1);
        uint64_t x = idx;
        for (int i = int(m) - 1; i >= 0; --i) {
            f[i] = uint32_t(x % p);
            x /= p;
        }
        f[m] = 1;
        if (brute_irreducible(f, p)) return f;
    }
    return {};
}

}  // namespace

TEST_CASE("modulus is the lex-smallest irreducible") {
    for (auto [p, m] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 1}, {3, 2}, {3, 4}, {5, 2}}) {
        CAPTURE(p);
        CAPTURE(m);
        auto F = FieldCtx::make(p, m);
        CHECK(F->modulus() == brute_smallest(p, m));
        CHECK(brute_irreducible(F->modulus(), p));
    }
    CHECK(FieldCtx::make(2, 2)->modulus() == std::vector<uint32_t>{1, 1, 1});
    CHECK(FieldCtx::make(2, 1)->modulus() == std::vector<uint32_t>{0, 1});
}

TEST_CASE("rabin test agrees with trial division") {
    for (uint32_t p : {2u, 3u}) {
        for (uint32_t m = 1; m <= 5; ++m) {
            uint64_t count = ipow(p, m);
            for (uint64_t idx = 0; idx < count; ++idx) {
                std::vector<uint32_t> f(m + 1);
                uint64_t x = idx;
                for (uint32_t i = 0; i < m; ++i) {
                    f[i] = uint32_t(x % p);
                    x /= p;
                }
                f[m] = 1;
                REQUIRE(is_irreducible_mod_p(f, p) == brute_irreducible(f, p));
            }
        }
    }
}

TEST_CASE("field construction errors") {
    CHECK_THROWS(FieldCtx::make(4, 2));
    CHECK_THROWS(FieldCtx::make(2, 0));
}

TEST_CASE("F_4 basics") {
    auto F = FieldCtx::make(2, 2);
    FqElem g = F->generator();
    // g = x under modulus x^2+x+1
    CHECK(F->coeffs(g) == std::vector<uint32_t>{0, 1});
    CHECK(F->mul(g, g) == F->add(g, F->one()));
    for (uint32_t v = 1; v < 4; ++v) CHECK(F->pow(F->element(v), 3) == F->one());
    CHECK(F->frobenius(g, 1) == F->add(g, F->one()));
    for (uint32_t v = 0; v < 4; ++v) {
        FqElem a = F->element(v);
        CHECK(F->add(a, F->zero()) == a);
        CHECK(F->mul(a, F->one()) == a);
    }
    CHECK_THROWS(F->inv(F->zero()));
}

TEST_CASE("field axioms against schoolbook polynomial arithmetic") {
    for (auto [p, m] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::make(p, m);
        const auto& mod = F->modulus();
        auto school = [&](FqElem a, FqElem b) {
            auto ca = F->coeffs(a), cb = F->coeffs(b);
            std::vector<int64_t> t(2 * m, 0);
            for (uint32_t i = 0; i < m; ++i)
                for (uint32_t j = 0; j < m; ++j) t[i + j] += int64_t(ca[i]) * cb[j];
            for (int d = int(2 * m) - 1; d >= int(m); --d) {
                int64_t c = t[d] % p;
                t[d] = 0;
                for (uint32_t i = 0; i < m; ++i) t[d - m + i] -= c * int64_t(mod[i]);
            }
            std::vector<uint32_t> out(m);
            for (uint32_t i = 0; i < m; ++i) out[i] = uint32_t(((t[i] % int64_t(p)) + p) % p);
            return F->from_coeffs(out);
        };
        for (uint32_t a = 0; a < F->order(); ++a)
            for (uint32_t b = 0; b < F->order(); ++b) {
                FqElem x = F->element(a), y = F->element(b);
                REQUIRE(F->mul(x, y) == school(x, y));
                auto cx = F->coeffs(x), cy = F->coeffs(y);
                std::vector<uint32_t> s(m);
                for (uint32_t i = 0; i < m; ++i) s[i] = (cx[i] + cy[i]) % p;
                REQUIRE(F->add(x, y) == F->from_coeffs(s));
            }
        for (uint32_t a = 1; a < F->order(); ++a) {
            FqElem x = F->element(a);
            REQUIRE(F->mul(x, F->inv(x)) == F->one());
            REQUIRE(F->add(x, F->neg(x)) == F->zero());
        }
    }
}

TEST_CASE("a^(p^m) = a exhaustively") {
    for (auto [p, m] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 6}, {2, 12}, {3, 7}, {5, 5}, {7, 4}}) {
        auto F = FieldCtx::make(p, m);
        REQUIRE(F->order() <= 4096 * 4);
        for (uint32_t v = 0; v < F->order(); ++v) {
            FqElem a = F->element(v);
            REQUIRE(F->frobenius_p(a, m) == a);
        }
    }
}

TEST_CASE("subfield predicate counts") {
    for (auto [p, m] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 6}, {2, 12}, {3, 4}, {3, 6}}) {
        auto F = FieldCtx::make(p, m);
        for (uint32_t d = 1; d <= m; ++d) {
            if (m % d) continue;
            uint64_t c = 0;
            for (uint32_t v = 0; v < F->order(); ++v)
                if (F->frobenius_p(F->element(v), d) == F->element(v)) ++c;
            CHECK(c == ipow(p, d));
            CHECK(F->subfield_elements(d).size() == ipow(p, d));
            for (auto a : F->subfield_elements(d)) CHECK(F->in_subfield(a, d));
            // the subfield generator has exact order p^d - 1
            FqElem g = F->subfield_generator(d);
            auto els = F->subfield_elements(d);
            CHECK(std::set<FqElem>(els.begin(), els.end()).size() == els.size());
            CHECK(F->pow(g, int64_t(ipow(p, d) - 1)) == F->one());
        }
    }
}

TEST_CASE("frobenius is a ring automorphism") {
    auto F = FieldCtx::make(2, 12, 2);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 2000; ++it) {
        FqElem a = F->element(uint32_t(rng() % F->order())), b = F->element(uint32_t(rng() % F->order()));
        for (int j : {1, 2, -1, 5}) {
            REQUIRE(F->frobenius(F->add(a, b), j) == F->add(F->frobenius(a, j), F->frobenius(b, j)));
            REQUIRE(F->frobenius(F->mul(a, b), j) == F->mul(F->frobenius(a, j), F->frobenius(b, j)));
        }
        REQUIRE(F->frobenius(F->frobenius(a, 1), -1) == a);
        REQUIRE(F->frobenius(a, 6) == a);  // m/f = 6
        REQUIRE(F->frobenius(a, 1) == F->pow(a, 4));
    }
    auto Fq = FieldCtx::make(3, 4, 2);
    for (auto a : Fq->subfield_elements(2)) CHECK(Fq->frobenius(a, 1) == a);
}

TEST_CASE("trace to a subfield") {
    auto F = FieldCtx::make(2, 6);
    for (uint32_t v = 0; v < F->order(); ++v) {
        FqElem a = F->element(v);
        FqElem t = F->trace(a, 6, 2);
        FqElem brute = F->zero();
        for (int i = 0; i < 3; ++i) brute = F->add(brute, F->frobenius_p(a, 2 * i));
        REQUIRE(t == brute);
        REQUIRE(F->in_subfield(t, 2));
    }
}

TEST_CASE("galois data") {
    auto F = FieldCtx::make(2, 2);
    FqElem g = F->generator();
    auto d = galois_data(*F, g, 2);
    CHECK(d.orbit.size() == 2);
    CHECK(d.trivial_stabilizer);
    auto d1 = galois_data(*F, F->one(), 2);
    CHECK(d1.orbit.size() == 1);
    CHECK_FALSE(d1.trivial_stabilizer);
    auto d0 = galois_data(*F, F->zero(), 2);
    CHECK(d0.orbit.size() == 1);
    CHECK_FALSE(d0.trivial_stabilizer);
    auto G = FieldCtx::make(2, 6);
    CHECK_THROWS(galois_data(*G, G->generator(), 2));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_poly(6) == std::vector<long>{1, -1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<long>{1, 0, -1, 0, 1});
    for (uint32_t M = 1; M <= 60; ++M) CHECK(cyclotomic_poly(M).size() == euler_phi(M) + 1);
}

TEST_CASE("cyclotomic numbers") {
    CHECK(CycNumber::root(4, 1) * CycNumber::root(4, 1) == CycNumber(4, -1));
    CHECK((CycNumber::root(3, 2) + CycNumber::root(3, 1) + CycNumber(3, 1)).is_zero());
    CHECK(CycNumber::root(8, 1).conjugate() * CycNumber::root(8, 1) == CycNumber(8, 1));
    CHECK(CycNumber::root(8, 1).conjugate() == CycNumber::root(8, 7));
    CHECK(CycNumber::root(9, 1).galois_twist(2) == CycNumber::root(9, 2));
    CHECK_THROWS(CycNumber::root(9, 1).galois_twist(3));
    for (uint32_t M : {1u, 2u, 5u, 12u, 15u, 28u}) {
        CycNumber z = CycNumber::root(M, 1);
        CycNumber acc(M, 1);
        for (uint32_t d = 1; d < M; ++d) {
            acc = acc * z;
            CHECK(acc != CycNumber(M, 1));
        }
        CHECK(acc * z == CycNumber(M, 1));
    }
    // lifting to a common order
    CHECK(CycNumber::root(3, 1) + CycNumber::root(4, 1) == CycNumber::root(12, 4) + CycNumber::root(12, 3));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        uint32_t M = 12;
        auto rnd = [&] {
            CycNumber x(M);
            for (int k = 0; k < 4; ++k) x = x + CycNumber::root(M, int64_t(rng() % M)) * mpq_class(int(rng() % 7) - 3);
            return x;
        };
        CycNumber a = rnd(), b = rnd(), c = rnd();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a.conjugate().conjugate() == a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        if (!a.is_zero()) CHECK(a * a.inverse() == CycNumber(M, 1));
        CHECK(a.mul_root(5) == a * CycNumber::root(M, 5));
    }
}
