#include "dllab/dlring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dllab {

std::vector<uint32_t> RingParams::S_flat() const {
    std::vector<uint32_t> s;
    for (uint32_t j = 1; j < h; ++j) s.push_back(j * n);
    for (uint32_t i = 1; i < n; ++i)
        for (uint32_t j = 0; j < hk(); ++j) s.push_back(i + j * n);
    std::sort(s.begin(), s.end());
    return s;
}

void RingParams::validate() const {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw std::invalid_argument("f must be >= 1");
    if (n < 2 || n > kMaxN) throw std::invalid_argument("n must lie in [2, " + std::to_string(kMaxN) + "]");
    if (h < 1 || h > kMaxWittLength) throw std::invalid_argument("h must lie in [1, " + std::to_string(kMaxWittLength) + "]");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

std::string RingParams::to_string() const {
    std::ostringstream os;
    os << "(p,f,n,h,k)=(" << p << "," << f << "," << n << "," << h << "," << k << ") " << regime_name(regime);
    return os.str();
}

std::string subgroup_name(SubgroupId id) {
    switch (id) {
        case SubgroupId::U: return "U";
        case SubgroupId::H: return "H";
        case SubgroupId::Hprime: return "Hprime";
        case SubgroupId::Hplus: return "Hplus";
        case SubgroupId::H0prime: return "H0prime";
        case SubgroupId::H0plus: return "H0plus";
        case SubgroupId::Z: return "Z";
    }
    return "?";
}

const std::vector<SubgroupId>& all_subgroups() {
    static const std::vector<SubgroupId> v{SubgroupId::U,       SubgroupId::H,      SubgroupId::Hprime, SubgroupId::Hplus,
                                           SubgroupId::H0prime, SubgroupId::H0plus, SubgroupId::Z};
    return v;
}

std::vector<uint32_t> flat_key(const std::vector<FqElem>& c) {
    std::vector<uint32_t> k(c.size());
    for (size_t i = 0; i < c.size(); ++i) k[i] = c[i].v;
    return k;
}

namespace {

FieldPtr check_ambient(const RingParams& P, FieldPtr F) {
    P.validate();
    if (F->p() != P.p || F->f() != P.f) throw std::invalid_argument("ambient field does not match (p, f)");
    if ((F->m() / P.f) % P.n != 0) throw std::invalid_argument("ambient field does not contain F_{q^n}");
    return F;
}

}  // namespace

DlRing::DlRing(const RingParams& params, FieldPtr ambient)
    : P_(params),
      F_(check_ambient(params, ambient)),
      Wh_(F_, params.regime, params.h),
      Whk_(F_, params.regime, std::max<uint32_t>(params.hk(), 1)),
      S_(params.S_flat()) {
    gens_n_ = U_generators(P_.n);
}

DlElement DlRing::zero() const {
    DlElement x;
    x.n = P_.n;
    x.A[0] = Wh_.zero();
    for (uint32_t i = 1; i < P_.n; ++i) {
        x.A[i] = WittVector{};
        x.A[i].len = P_.hk();
    }
    return x;
}

DlElement DlRing::one() const {
    DlElement x = zero();
    x.A[0] = Wh_.one();
    return x;
}

DlElement DlRing::tau() const {
    DlElement x = zero();
    if (P_.hk() > 0) x.A[1][0] = F_->one();
    return x;
}

DlElement DlRing::constant(const WittVector& a0) const {
    DlElement x = zero();
    x.A[0] = a0;
    return x;
}

DlElement DlRing::add(const DlElement& x, const DlElement& y) const {
    DlElement z = zero();
    z.A[0] = Wh_.add(x.A[0], y.A[0]);
    if (P_.hk() > 0)
        for (uint32_t i = 1; i < P_.n; ++i) z.A[i] = Whk_.add(x.A[i], y.A[i]);
    return z;
}

DlElement DlRing::neg(const DlElement& x) const {
    DlElement z = zero();
    z.A[0] = Wh_.neg(x.A[0]);
    if (P_.hk() > 0)
        for (uint32_t i = 1; i < P_.n; ++i) z.A[i] = Whk_.neg(x.A[i]);
    return z;
}

WittVector DlRing::pi_k_lift(const WittVector& a) const { return Wh_.mult_by_pi_pow(Wh_.extend(a), P_.k); }

DlElement DlRing::mul(const DlElement& x, const DlElement& y) const {
    const uint32_t n = P_.n, hk = P_.hk();
    std::array<WittVector, kMaxN> acc;
    for (uint32_t l = 0; l < n; ++l) acc[l] = Wh_.zero();
    for (uint32_t i = 0; i < n; ++i) {
        if (i > 0 && hk == 0) break;
        WittVector a = Wh_.extend(x.A[i]);
        for (uint32_t j = 0; j < n; ++j) {
            if (j > 0 && hk == 0) break;
            uint32_t l = (i + j) % n;
            if (l != 0 && hk == 0) continue;
            WittVector b = Wh_.frobenius(Wh_.extend(y.A[j]), i);
            WittVector t = Wh_.mul(a, b);
            if (i + j >= n) t = Wh_.mult_by_pi_pow(t, P_.k);
            acc[l] = Wh_.add(acc[l], t);
        }
    }
    DlElement z = zero();
    z.A[0] = acc[0];
    for (uint32_t l = 1; l < n; ++l) z.A[l] = WittRing::truncate(acc[l], hk);
    return z;
}

DlElement DlRing::pow(const DlElement& x, uint64_t e) const {
    DlElement r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

DlElement DlRing::inverse(const DlElement& x) const {
    if (!is_unit(x)) throw std::domain_error("inverse: element is not a unit of R");
    DlElement y0 = constant(Wh_.inverse(x.A[0]));
    // y <- y + y0 (1 - x y); the error moves up the (pi, tau)-adic filtration
    // each step. This never reassociates, so it also works over fields where
    // the product is only associative against rational right factors.
    DlElement y = y0, e1 = one();
    for (uint32_t it = 0; it <= 2 * P_.n * P_.h + 2; ++it) {
        DlElement err = add(e1, neg(mul(x, y)));
        if (err == zero()) return y;
        y = add(y, mul(y0, err));
    }
    throw std::logic_error("inverse: correction did not terminate");
}

DlElement DlRing::galois(const DlElement& x, int64_t j) const {
    DlElement z = x;
    z.A[0] = Wh_.frobenius(x.A[0], j);
    if (P_.hk() > 0)
        for (uint32_t i = 1; i < P_.n; ++i) z.A[i] = Whk_.frobenius(x.A[i], j);
    return z;
}

DlElement DlRing::conjugate(const DlElement& g, const DlElement& x) const { return mul(mul(g, x), inverse(g)); }

DlElement DlRing::teich_conjugate(FqElem a, const DlElement& x) const {
    return conjugate(constant(Wh_.teichmuller(a)), x);
}

FqElem DlRing::flat_get(const DlElement& x, uint32_t s) const { return x.A[s % P_.n][s / P_.n]; }

void DlRing::flat_set(DlElement& x, uint32_t s, FqElem v) const { x.A[s % P_.n][s / P_.n] = v; }

std::vector<FqElem> DlRing::flat(const DlElement& x) const {
    std::vector<FqElem> c;
    c.reserve(S_.size());
    for (auto s : S_) c.push_back(flat_get(x, s));
    return c;
}

DlElement DlRing::from_flat(const std::vector<FqElem>& coords) const {
    if (coords.size() != S_.size()) throw std::invalid_argument("from_flat: wrong number of coordinates");
    DlElement x = one();
    for (size_t t = 0; t < S_.size(); ++t) flat_set(x, S_[t], coords[t]);
    return x;
}

bool DlRing::coords_in(const DlElement& x, uint32_t ext) const {
    uint32_t d = P_.f * ext;
    for (uint32_t i = 0; i < P_.n; ++i)
        for (uint32_t j = 0; j < x.A[i].len; ++j)
            if (!F_->in_subfield(x.A[i][j], d)) return false;
    return true;
}

uint64_t DlRing::U_order(uint32_t ext) const {
    uint64_t Qe = ipow(P_.q(), ext);
    uint64_t r = 1;
    for (size_t i = 0; i < S_.size(); ++i) {
        if (r > (uint64_t(1) << 62) / Qe) throw std::overflow_error("U_order overflows");
        r *= Qe;
    }
    return r;
}

DlElement DlRing::U_element(uint64_t idx, uint32_t ext) const {
    return U_element(idx, F_->subfield_elements(P_.f * ext));
}

DlElement DlRing::U_element(uint64_t idx, const std::vector<FqElem>& els) const {
    uint64_t Qe = els.size();
    DlElement x = one();
    for (auto s : S_) {
        flat_set(x, s, els[idx % Qe]);
        idx /= Qe;
    }
    return x;
}

MatHK DlRing::iota(const DlElement& x) const {
    const uint32_t n = P_.n;
    MatHK m;
    m.n = n;
    m.e.resize(n * n);
    for (uint32_t r = 0; r < n; ++r)
        for (uint32_t c = 0; c < n; ++c) {
            if (c >= r) {
                uint32_t i = c - r;
                m.at(r, c) = (i == 0 || P_.hk() > 0) ? Wh_.frobenius(Wh_.extend(x.A[i]), r) : Wh_.zero();
            } else {
                uint32_t i = n + c - r;
                m.at(r, c) = P_.hk() > 0 ? Wh_.frobenius(pi_k_lift(x.A[i]), r) : Wh_.zero();
            }
        }
    return m;
}

MatHK DlRing::mat_mul(const MatHK& a, const MatHK& b) const {
    const uint32_t n = a.n;
    MatHK c;
    c.n = n;
    c.e.assign(n * n, Wh_.zero());
    for (uint32_t r = 0; r < n; ++r)
        for (uint32_t l = 0; l < n; ++l)
            for (uint32_t s = 0; s < n; ++s) c.at(r, s) = Wh_.add(c.at(r, s), Wh_.mul(a.at(r, l), b.at(l, s)));
    return c;
}

bool DlRing::mat_equal(const MatHK& a, const MatHK& b) const {
    if (a.n != b.n) return false;
    const uint32_t hk = P_.hk();
    for (uint32_t r = 0; r < a.n; ++r)
        for (uint32_t c = 0; c < a.n; ++c) {
            if (c > r) {
                for (uint32_t t = 0; t < hk; ++t)
                    if (a.at(r, c)[t] != b.at(r, c)[t]) return false;
            } else if (a.at(r, c) != b.at(r, c)) {
                return false;
            }
        }
    return true;
}

WittVector DlRing::det(const MatHK& a) const {
    const uint32_t n = a.n;
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    WittVector acc = Wh_.zero();
    do {
        // sign by inversion count
        uint32_t inv = 0;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        WittVector t = Wh_.one();
        bool zero = false;
        for (uint32_t r = 0; r < n && !zero; ++r) {
            t = Wh_.mul(t, a.at(r, perm[r]));
            zero = t == Wh_.zero();
        }
        if (zero) continue;
        acc = (inv % 2) ? Wh_.sub(acc, t) : Wh_.add(acc, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

DlElement DlRing::iota_inverse(const MatHK& a) const {
    DlElement x = zero();
    x.A[0] = a.at(0, 0);
    for (uint32_t c = 1; c < P_.n; ++c) x.A[c] = WittRing::truncate(a.at(0, c), P_.hk());
    if (!mat_equal(iota(x), a)) throw std::logic_error("iota_inverse: matrix is not in the image of iota");
    return x;
}

DlElement DlRing::H_left_action(const DlElement& hA0, const DlElement& x) const {
    MatHK d;
    d.n = P_.n;
    d.e.assign(P_.n * P_.n, Wh_.zero());
    for (uint32_t r = 0; r < P_.n; ++r) d.at(r, r) = Wh_.frobenius(hA0.A[0], r);
    return iota_inverse(mat_mul(d, iota(x)));
}

std::vector<DlElement> DlRing::U_generators(uint32_t ext) const {
    uint32_t d = P_.f * ext;
    FqElem g = F_->subfield_generator(d);
    std::vector<FqElem> basis;
    FqElem cur = F_->one();
    for (uint32_t i = 0; i < d; ++i) {
        basis.push_back(cur);
        cur = F_->mul(cur, g);
    }
    std::vector<DlElement> gens;
    for (auto s : S_)
        for (auto b : basis) {
            DlElement x = one();
            flat_set(x, s, b);
            gens.push_back(x);
        }
    return gens;
}

bool DlRing::is_central(const DlElement& x) const {
    for (const auto& g : gens_n_)
        if (mul(x, g) != mul(g, x)) return false;
    return true;
}

bool DlRing::in_subgroup(SubgroupId id, const DlElement& x) const {
    if (!in_U(x)) return false;
    const uint32_t n = P_.n, hk = P_.hk();
    auto tail_zero = [&](bool strict) {
        // A_{ij} = 0 for i > 0 and j <= (h-k)/2 - i/n  (strict: j < ...)
        for (uint32_t i = 1; i < n; ++i)
            for (uint32_t j = 0; j < hk; ++j) {
                int64_t lhs = 2 * int64_t(n) * j, rhs = int64_t(n) * hk - 2 * int64_t(i);
                bool constrained = strict ? lhs < rhs : lhs <= rhs;
                if (constrained && !x.A[i][j].is_zero()) return false;
            }
        return true;
    };
    auto plus_cond = [&] {
        if (!P_.case2()) return true;
        return F_->in_subfield(x.A[n / 2][(hk - 1) / 2], P_.f * n / 2);
    };
    auto a0_central = [&] { return is_central(constant(x.A[0])); };
    switch (id) {
        case SubgroupId::U: return true;
        case SubgroupId::H:
            for (uint32_t i = 1; i < n; ++i)
                for (uint32_t j = 0; j < hk; ++j)
                    if (!x.A[i][j].is_zero()) return false;
            return true;
        case SubgroupId::Hprime: return tail_zero(false);
        case SubgroupId::Hplus: return tail_zero(true) && plus_cond();
        case SubgroupId::H0prime: return tail_zero(false) && a0_central();
        case SubgroupId::H0plus: return tail_zero(true) && plus_cond() && a0_central();
        case SubgroupId::Z: return is_central(x);
    }
    return false;
}

std::vector<DlElement> DlRing::enumerate(SubgroupId id, uint32_t ext) const {
    if (id == SubgroupId::Z && U_order(ext) > (uint64_t(1) << 20))
        throw std::invalid_argument("centre computation guarded to groups of order <= 2^20");
    std::vector<DlElement> out;
    uint64_t N = U_order(ext);
    auto els = F_->subfield_elements(P_.f * ext);
    for (uint64_t idx = 0; idx < N; ++idx) {
        DlElement x = U_element(idx, els);
        if (id == SubgroupId::U || in_subgroup(id, x)) out.push_back(x);
    }
    return out;
}

std::string DlRing::to_string(const DlElement& x) const {
    std::ostringstream os;
    for (uint32_t i = 0; i < P_.n; ++i) {
        if (i) os << " + ";
        os << "(";
        for (uint32_t j = 0; j < x.A[i].len; ++j) os << (j ? "," : "") << x.A[i][j].v;
        os << ")";
        if (i) os << "t^" << i;
    }
    return os.str();
}

}  // namespace dllab
