#include "dllab/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dllab {

FiniteGroup FiniteGroup::from_elements(const DlRing& R, std::vector<DlElement> els) {
    if (els.size() > kMaxOrder)
        throw std::invalid_argument("group order " + std::to_string(els.size()) + " exceeds the table guard " +
                                    std::to_string(kMaxOrder));
    FiniteGroup G;
    G.R_ = &R;
    G.els_ = std::move(els);
    const size_t N = G.els_.size();
    for (size_t i = 0; i < N; ++i) {
        auto [it, fresh] = G.index_.emplace(flat_key(R.flat(G.els_[i])), uint32_t(i));
        if (!fresh) throw std::invalid_argument("FiniteGroup: duplicate element");
    }
    G.id_ = G.index_of(R.one());
    G.table_.resize(N * N);
    for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
            auto it = G.index_.find(flat_key(R.flat(R.mul(G.els_[a], G.els_[b]))));
            if (it == G.index_.end()) throw std::invalid_argument("FiniteGroup: element set is not closed");
            G.table_[a * N + b] = it->second;
        }
    G.inv_.assign(N, 0);
    for (size_t a = 0; a < N; ++a) {
        bool found = false;
        for (size_t b = 0; b < N && !found; ++b)
            if (G.table_[a * N + b] == G.id_) {
                G.inv_[a] = uint32_t(b);
                found = true;
            }
        if (!found) throw std::invalid_argument("FiniteGroup: missing inverse");
    }
    return G;
}

uint32_t FiniteGroup::index_of(const DlElement& x) const {
    auto it = index_.find(flat_key(R_->flat(x)));
    if (it == index_.end()) throw std::invalid_argument("element not in group");
    return it->second;
}

bool FiniteGroup::contains(const DlElement& x) const { return index_.count(flat_key(R_->flat(x))) > 0; }

uint32_t FiniteGroup::element_order(uint32_t a) const {
    uint32_t o = 1;
    for (uint32_t x = a; x != id_; x = mul(x, a)) ++o;
    return o;
}

uint64_t FiniteGroup::exponent() const {
    uint64_t e = 1;
    for (uint32_t a = 0; a < order(); ++a) e = lcm_u64(e, element_order(a));
    return e;
}

bool FiniteGroup::is_abelian(const std::vector<uint32_t>& sub) const {
    for (auto a : sub)
        for (auto b : sub)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool FiniteGroup::is_abelian() const {
    std::vector<uint32_t> all(order());
    std::iota(all.begin(), all.end(), 0);
    return is_abelian(all);
}

bool FiniteGroup::is_subgroup(const std::vector<uint32_t>& sub) const {
    if (sub.empty()) return false;
    std::vector<char> in(order(), 0);
    for (auto a : sub) in[a] = 1;
    if (!in[id_]) return false;
    for (auto a : sub) {
        if (!in[inv(a)]) return false;
        for (auto b : sub)
            if (!in[mul(a, b)]) return false;
    }
    return true;
}

std::vector<uint32_t> FiniteGroup::select(const std::function<bool(const DlElement&)>& pred) const {
    std::vector<uint32_t> out;
    for (uint32_t a = 0; a < order(); ++a)
        if (pred(els_[a])) out.push_back(a);
    return out;
}

std::vector<uint32_t> FiniteGroup::centre() const {
    std::vector<uint32_t> out;
    for (uint32_t a = 0; a < order(); ++a) {
        bool c = true;
        for (uint32_t b = 0; b < order() && c; ++b) c = mul(a, b) == mul(b, a);
        if (c) out.push_back(a);
    }
    return out;
}

void RootSum::add(const RootSum& o) {
    if (o.order() != order()) throw std::invalid_argument("RootSum: order mismatch");
    for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
}

CycNumber RootSum::value() const {
    std::vector<mpq_class> poly(counts_.size());
    for (size_t i = 0; i < counts_.size(); ++i) poly[i] = mpq_class(long(counts_[i]));
    return CycNumber::from_poly(order(), poly);
}

uint32_t FinChar::exp_at(uint32_t g) const {
    if (exps[g] < 0) throw std::invalid_argument("character evaluated outside its subgroup");
    return uint32_t(exps[g]);
}

bool FinChar::is_trivial() const {
    for (auto e : exps)
        if (e > 0) return false;
    return true;
}

bool is_character(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi) {
    for (auto a : sub) {
        if (!chi.defined_at(a)) return false;
        for (auto b : sub)
            if ((chi.exp_at(a) + chi.exp_at(b)) % chi.M != chi.exp_at(G.mul(a, b))) return false;
    }
    return true;
}

std::vector<FinChar> dual_group(const FiniteGroup& G, const std::vector<uint32_t>& sub, uint32_t M) {
    if (sub.size() > (size_t(1) << 16)) throw std::invalid_argument("dual_group: subgroup order exceeds 2^16");
    if (!G.is_subgroup(sub)) throw std::invalid_argument("dual_group: not a subgroup");
    if (!G.is_abelian(sub)) throw std::invalid_argument("dual_group: group is not abelian");
    uint64_t ex = 1;
    for (auto a : sub) ex = lcm_u64(ex, G.element_order(a));
    if (M % ex != 0) throw std::invalid_argument("dual_group: root order M is not a multiple of the exponent");

    const size_t N = G.order();
    // Current subgroup S (as a membership list) and its characters.
    std::vector<uint32_t> S{G.identity()};
    std::vector<char> inS(N, 0);
    inS[G.identity()] = 1;
    FinChar triv;
    triv.M = M;
    triv.exps.assign(N, -1);
    triv.exps[G.identity()] = 0;
    std::vector<FinChar> chars{triv};

    std::vector<uint32_t> by_order(sub);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](uint32_t a, uint32_t b) { return G.element_order(a) > G.element_order(b); });
    for (uint32_t g : by_order) {
        if (inS[g]) continue;
        // d = order of g modulo S
        uint32_t d = 1;
        uint32_t gd = g;
        while (!inS[gd]) {
            gd = G.mul(gd, g);
            ++d;
        }
        std::vector<uint32_t> newS;
        std::vector<std::pair<uint32_t, uint32_t>> decomposition;  // element -> (s, i): s g^i
        uint32_t gi = G.identity();
        for (uint32_t i = 0; i < d; ++i) {
            for (auto s : S) {
                uint32_t e = G.mul(s, gi);
                newS.push_back(e);
                decomposition.emplace_back(s, i);
            }
            gi = G.mul(gi, g);
        }
        std::vector<FinChar> next;
        for (const auto& chi : chars) {
            uint64_t e = chi.exp_at(gd);
            size_t before = next.size();
            // c with d c = e (mod M)
            for (uint64_t c0 = 0; c0 < M; ++c0) {
                if ((d * c0) % M != e) continue;
                FinChar ext = chi;
                for (size_t t = 0; t < newS.size(); ++t) {
                    auto [s, i] = decomposition[t];
                    ext.exps[newS[t]] = int64_t((chi.exp_at(s) + c0 * i) % M);
                }
                next.push_back(std::move(ext));
            }
            if (next.size() - before != d) throw std::logic_error("dual_group: wrong number of extensions");
        }
        chars = std::move(next);
        S = newS;
        for (auto e : S) inS[e] = 1;
    }
    if (S.size() != sub.size() || chars.size() != sub.size())
        throw std::logic_error("dual_group: size mismatch after splitting");
    return chars;
}

mpq_class char_inner(const std::vector<uint32_t>& sub, const FinChar& a, const FinChar& b) {
    RootSum acc(a.M);
    for (auto g : sub) acc.add(a.exp_at(g) + (a.M - b.exp_at(g)) % a.M);
    CycNumber v = acc.value();
    if (!v.is_rational()) throw std::logic_error("char_inner: non-rational inner product");
    return v.rational_part() / mpq_class(long(sub.size()));
}

}  // namespace dllab
