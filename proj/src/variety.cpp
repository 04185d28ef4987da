#include "dllab/variety.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dllab/juggling.hpp"

namespace dllab {

namespace {

uint32_t lcm32(uint32_t a, uint32_t b) { return uint32_t(lcm_u64(a, b)); }

using KeySet = std::unordered_set<std::vector<uint32_t>, VecKeyHash>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

unsigned worker_threads() {
    if (const char* env = std::getenv("DLLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min(hw, 8u) : 1u;
}

Variety::Variety(const RingParams& P, uint32_t m)
    : R_(P, FieldCtx::make(P.p, P.f * lcm32(m, P.n), P.f)), m_(m) {
    if (m < 1) throw std::invalid_argument("extension degree m must be >= 1");
    zeta_ = R_.field().subfield_generator(P.f * P.n);
}

bool Variety::is_member(const DlElement& x) const {
    if (!R_.in_U(x)) return false;
    WittVector d = R_.det_iota(x);
    for (uint32_t i = 0; i < d.len; ++i)
        if (!field().in_subfield(d[i], params().f)) return false;
    return true;
}

uint64_t Variety::search_size() const {
    const double bound = double(kMaxSearch) * 4;
    double s = 1;
    for (size_t i = 0; i < R_.S_flat().size() && s <= bound; ++i) s *= double(ipow(params().q(), m_));
    if (s > bound) return uint64_t(bound) + 1;
    return R_.U_order(m_);
}

std::vector<DlElement> Variety::enumerate(unsigned threads) const {
    const uint64_t N = search_size();
    if (N > kMaxSearch)
        throw std::invalid_argument("enumeration of " + std::to_string(N) + " candidates exceeds the guard 2^24");
    if (threads == 0) threads = worker_threads();
    threads = unsigned(std::max<uint64_t>(1, std::min<uint64_t>(threads, N / 256 + 1)));
    const auto els = field().subfield_elements(params().f * m_);
    std::vector<std::vector<DlElement>> shards(threads);
    auto work = [&](unsigned t) {
        uint64_t lo = N * t / threads, hi = N * (t + 1) / threads;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            DlElement x = R_.U_element(idx, els);
            if (is_member(x)) shards[t].push_back(x);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::vector<DlElement> out;
    for (auto& s : shards) out.insert(out.end(), s.begin(), s.end());
    return out;
}

DlElement Variety::act(const ActionTriple& t, const DlElement& x) const {
    const uint32_t n = params().n;
    if (!R_.in_subgroup(SubgroupId::H, t.h_elt) || !R_.coords_in(t.h_elt, n))
        throw std::invalid_argument("act: left factor is not in H(F_{q^n})");
    if (!R_.in_U(t.g_elt) || !R_.coords_in(t.g_elt, n))
        throw std::invalid_argument("act: right factor is not in U(F_{q^n})");
    DlElement y = R_.mul(R_.H_left_action(t.h_elt, x), t.g_elt);
    if (t.z % int64_t(ipow(params().q(), n) - 1) == 0) return y;
    FqElem zz = field().pow(zeta_, t.z);
    return R_.teich_conjugate(zz, y);
}

DlElement Variety::lang(const DlElement& g) const { return R_.mul(R_.galois(g, params().n), R_.inverse(g)); }

bool Variety::in_H_locus(const DlElement& x) const { return R_.in_subgroup(SubgroupId::H, x); }

bool Variety::zeta_fixed(const DlElement& x) const { return R_.teich_conjugate(zeta_, x) == x; }

std::vector<DlElement> Variety::fixed_points_zeta(const std::vector<DlElement>& pts) const {
    std::vector<DlElement> out;
    for (const auto& x : pts)
        if (zeta_fixed(x)) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------- suites

SuiteReport variety_count_report(const RingParams& P, uint32_t m) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "variety.count";
    Variety V(P, m);
    auto pts = V.enumerate();
    rep.data["m"] = m;
    rep.data["candidates"] = V.search_size();
    rep.data["points"] = pts.size();
    rep.add("identity is a point", V.is_member(V.ring().one()));
    bool all_rational = true;
    for (const auto& x : pts) all_rational = all_rational && V.ring().coords_in(x, m);
    rep.add("points are F_{q^m}-rational", all_rational);
    rep.seconds = seconds_since(t0);
    return rep;
}

SuiteReport actions_suite(const RingParams& P, uint32_t m, uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "variety.actions";
    if (m % P.n != 0) throw std::invalid_argument("actions: the extension degree must be a multiple of n");
    Variety V(P, m);
    const DlRing& R = V.ring();
    const uint32_t n = P.n;
    std::mt19937_64 rng(seed);
    auto pts = V.enumerate();
    KeySet keys;
    for (const auto& x : pts) keys.insert(flat_key(R.flat(x)));
    rep.data["m"] = m;
    rep.data["points"] = pts.size();

    auto Hn = R.enumerate(SubgroupId::H, n);
    auto Un = R.enumerate(SubgroupId::U, n);
    const bool full = double(pts.size()) * double(Un.size() + Hn.size()) <= 4e6;
    std::vector<DlElement> Hs = full ? Hn : R.U_generators(n), Us = full ? Un : R.U_generators(n);
    if (!full) {
        Hs.erase(std::remove_if(Hs.begin(), Hs.end(), [&](const DlElement& x) { return !R.in_subgroup(SubgroupId::H, x); }),
                 Hs.end());
    }
    rep.data["closure_mode"] = full ? "all elements" : "generators";

    uint64_t left_bad = 0, right_bad = 0, zeta_bad = 0;
    std::string witness;
    for (const auto& x : pts) {
        for (const auto& h : Hs) {
            DlElement y = V.act({0, h, R.one()}, x);
            if (!keys.count(flat_key(R.flat(y)))) {
                if (!left_bad++) witness = "left h = " + R.to_string(h) + " on x = " + R.to_string(x);
            }
        }
        for (const auto& g : Us) {
            DlElement y = V.act({0, R.one(), g}, x);
            if (!keys.count(flat_key(R.flat(y)))) {
                if (!right_bad++ && witness.empty()) witness = "right g = " + R.to_string(g) + " on x = " + R.to_string(x);
            }
        }
        DlElement y = V.act({1, R.one(), R.one()}, x);
        if (!keys.count(flat_key(R.flat(y)))) {
            if (!zeta_bad++ && witness.empty()) witness = "zeta on x = " + R.to_string(x);
        }
    }
    rep.add("closed under the left H(F)-action", left_bad == 0, "0", std::to_string(left_bad), left_bad ? witness : "");
    rep.add("closed under the right U(F)-action", right_bad == 0, "0", std::to_string(right_bad), right_bad ? witness : "");
    rep.add("closed under zeta-conjugation", zeta_bad == 0, "0", std::to_string(zeta_bad), zeta_bad ? witness : "");

    // identity triple, commutation of left and right actions
    uint64_t id_bad = 0, comm_bad = 0;
    std::string cw;
    const uint32_t samples = pts.empty() ? 0 : 1000;
    for (uint32_t t = 0; t < samples; ++t) {
        const auto& x = pts[rng() % pts.size()];
        const auto& h = Hn[rng() % Hn.size()];
        const auto& g = Un[rng() % Un.size()];
        if (V.act({0, R.one(), R.one()}, x) != x) ++id_bad;
        DlElement a = V.act({0, R.one(), g}, V.act({0, h, R.one()}, x));
        DlElement b = V.act({0, h, R.one()}, V.act({0, R.one(), g}, x));
        if (a != b && !comm_bad++) cw = "h = " + R.to_string(h) + ", g = " + R.to_string(g) + ", x = " + R.to_string(x);
    }
    rep.add("identity triple acts trivially", id_bad == 0, "0", std::to_string(id_bad));
    rep.add("left and right actions commute", comm_bad == 0, "0", std::to_string(comm_bad), cw);

    // the two actions of the centre agree
    uint64_t z_bad = 0;
    std::string zw;
    std::vector<DlElement> Z;
    for (const auto& u : Un)
        if (R.is_central(u)) Z.push_back(u);
    for (const auto& z : Z) {
        bool inH = R.in_subgroup(SubgroupId::H, z);
        for (const auto& x : pts) {
            if (!inH || V.act({0, z, R.one()}, x) != V.act({0, R.one(), z}, x)) {
                if (!z_bad++) zw = "z = " + R.to_string(z) + ", x = " + R.to_string(x);
                break;
            }
        }
    }
    rep.data["centre_order"] = Z.size();
    rep.add("left and right actions of the centre coincide", z_bad == 0, "0", std::to_string(z_bad), zw);

    // equal characteristic: membership agrees with the defining polynomials
    if (P.regime == Regime::Equal) {
        std::vector<SymPoly> g;
        for (uint32_t r = 1; r < P.h; ++r) g.push_back(build_gr(P, r));
        auto vanish = [&](const DlElement& x) {
            auto vals = R.flat(x);
            for (const auto& gr : g)
                if (!gr.evaluate(V.field(), vals).is_zero()) return false;
            return true;
        };
        uint64_t bad = 0, nonpoints = 0;
        std::string bw;
        for (const auto& x : pts)
            if (!vanish(x) && !bad++) bw = "point " + R.to_string(x);
        const auto els = V.field().subfield_elements(P.f * m);
        const uint64_t N = V.search_size();
        for (uint32_t t = 0; t < 1000 && N > pts.size(); ++t) {
            DlElement x = R.U_element(rng() % N, els);
            bool mem = V.is_member(x);
            if (!mem) ++nonpoints;
            if (mem != vanish(x) && !bad++) bw = "sample " + R.to_string(x);
        }
        rep.data["nonpoints_sampled"] = nonpoints;
        rep.add("membership iff all g_r vanish", bad == 0, "0", std::to_string(bad), bw);
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

SuiteReport lang_suite(const RingParams& P, uint32_t fibers, uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "variety.lang";
    const uint32_t n = P.n;
    Variety V(P, 2 * n);
    const DlRing& R = V.ring();
    std::mt19937_64 rng(seed);
    const uint64_t N = V.search_size();
    if (N > Variety::kMaxSearch)
        throw std::invalid_argument("lang: U(F_{q^{2n}}) has " + std::to_string(N) + " elements, above the guard 2^24");

    const auto els = V.field().subfield_elements(P.f * 2 * n);
    std::vector<std::vector<uint32_t>> lkey(N);
    {
        unsigned threads = unsigned(std::min<uint64_t>(worker_threads(), N / 256 + 1));
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (uint64_t idx = N * t / threads; idx < N * (t + 1) / threads; ++idx)
                    lkey[idx] = flat_key(R.flat(V.lang(R.U_element(idx, els))));
            });
        for (auto& th : pool) th.join();
    }
    std::unordered_map<std::vector<uint32_t>, std::vector<uint64_t>, VecKeyHash> classes;
    for (uint64_t idx = 0; idx < N; ++idx) classes[lkey[idx]].push_back(idx);
    auto Un = R.enumerate(SubgroupId::U, n);
    rep.data["order_U_qn"] = Un.size();
    rep.data["order_U_q2n"] = N;
    rep.data["distinct_images"] = classes.size();

    // rational elements map to 1
    uint64_t rat_bad = 0;
    for (const auto& g : Un)
        if (V.lang(g) != R.one()) ++rat_bad;
    rep.add("L(g) = 1 for rational g", rat_bad == 0, "0", std::to_string(rat_bad));

    // fiber over 1
    auto one_key = flat_key(R.flat(R.one()));
    KeySet fiber1, rational;
    for (auto idx : classes[one_key]) fiber1.insert(flat_key(R.flat(R.U_element(idx, els))));
    for (const auto& g : Un) rational.insert(flat_key(R.flat(g)));
    rep.add("fiber over 1 equals U(F_{q^n})", fiber1 == rational, std::to_string(rational.size()),
            std::to_string(fiber1.size()));

    // random fibers are right U(F_{q^n})-torsors
    uint64_t bad = 0, free_bad = 0;
    std::string w;
    for (uint32_t t = 0; t < fibers; ++t) {
        uint64_t idx = rng() % N;
        DlElement y = R.U_element(idx, els);
        KeySet fiber, orbit;
        for (auto j : classes[lkey[idx]]) fiber.insert(flat_key(R.flat(R.U_element(j, els))));
        for (const auto& d : Un) orbit.insert(flat_key(R.flat(R.mul(y, d))));
        if (orbit.size() != Un.size()) ++free_bad;
        if (fiber != orbit && !bad++)
            w = "y = " + R.to_string(y) + ": fiber size " + std::to_string(fiber.size()) + ", orbit size " +
                std::to_string(orbit.size());
    }
    rep.data["fibers_checked"] = fibers;
    rep.add("right action of U(F_{q^n}) is free", free_bad == 0, "0", std::to_string(free_bad));
    rep.add("fibers equal y U(F_{q^n})", bad == 0, "0", std::to_string(bad), w);
    rep.seconds = seconds_since(t0);
    return rep;
}

SuiteReport fixed_suite(const RingParams& P, uint32_t m) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "variety.fixed";
    Variety V(P, m);
    const DlRing& R = V.ring();
    auto pts = V.enumerate();
    KeySet fixed, hloc;
    for (const auto& x : V.fixed_points_zeta(pts)) fixed.insert(flat_key(R.flat(x)));
    for (const auto& x : pts)
        if (V.in_H_locus(x)) hloc.insert(flat_key(R.flat(x)));
    rep.data["m"] = m;
    rep.data["points"] = pts.size();
    rep.data["fixed"] = fixed.size();
    rep.add("zeta-fixed locus equals the H-locus", fixed == hloc, std::to_string(hloc.size()), std::to_string(fixed.size()));
    if (m == P.n) {
        uint64_t want = ipow(P.q(), P.n * (P.h - 1));
        rep.add("fixed locus has q^{n(h-1)} points", fixed.size() == want, std::to_string(want), std::to_string(fixed.size()));
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

SuiteReport lefschetz_suite(const RingParams& P) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "variety.lefschetz";
    const uint32_t n = P.n;
    Variety V(P, n);
    const DlRing& R = V.ring();
    auto fixed = V.fixed_points_zeta(V.enumerate());
    auto G = FiniteGroup::from_elements(R, R.enumerate(SubgroupId::H, n));
    std::vector<uint32_t> all(G.order());
    std::iota(all.begin(), all.end(), 0);
    const uint32_t M = uint32_t(G.exponent());
    auto chars = dual_group(G, all, M);
    const size_t H = G.order();

    // fix[h][g] = #{x in X^zeta : h * x . g = x}
    std::vector<uint64_t> fix(H * H, 0);
    for (uint32_t a = 0; a < H; ++a)
        for (uint32_t b = 0; b < H; ++b) {
            uint64_t c = 0;
            for (const auto& x : fixed)
                if (V.act({0, G.element(a), G.element(b)}, x) == x) ++c;
            fix[a * H + b] = c;
        }
    uint64_t bad = 0;
    std::string w;
    for (size_t ci = 0; ci < chars.size(); ++ci) {
        const auto& chi = chars[ci];
        for (uint32_t g = 0; g < H; ++g) {
            RootSum lhs(M), rhs(M);
            for (uint32_t h = 0; h < H; ++h) lhs.add((M - chi.exp_at(h)) % M, int64_t(fix[h * H + g]));
            rhs.add(chi.exp_at(g), int64_t(H));
            if (lhs.value() != rhs.value() && !bad++)
                w = "character " + std::to_string(ci) + ", g = " + R.to_string(G.element(g));
        }
    }
    rep.data["order_H"] = H;
    rep.data["characters"] = chars.size();
    rep.data["fixed_locus"] = fixed.size();
    rep.add("Lefschetz identity for every character and every g in H(F)", bad == 0, "0", std::to_string(bad), w);
    rep.seconds = seconds_since(t0);
    return rep;
}

}  // namespace dllab
