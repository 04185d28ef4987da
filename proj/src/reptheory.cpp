#include "dllab/reptheory.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

namespace dllab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<uint32_t> witt_key(const WittVector& w) {
    std::vector<uint32_t> k(w.len);
    for (uint32_t i = 0; i < w.len; ++i) k[i] = w[i].v;
    return k;
}

CycNumber sign_D(const RingParams& P, uint32_t M) { return CycNumber(M, P.D() % 2 ? -1 : 1); }

uint64_t expected_dim(const RingParams& P) { return ipow(P.q(), P.n * P.D() / 2); }

// rho(g) A
CycMatrix mul_monomial_left(const MonomialRep& rho, uint32_t g, const CycMatrix& A) {
    CycMatrix out = CycMatrix::zero(A.M, A.dim);
    for (uint32_t j = 0; j < A.dim; ++j) {
        uint32_t r = rho.p(g, j), e = rho.e(g, j);
        for (uint32_t s = 0; s < A.dim; ++s) out.at(r, s) = A.at(j, s).mul_root(e);
    }
    return out;
}

// Tr(A rho(g))
CycNumber trace_with(const CycMatrix& A, const MonomialRep& rho, uint32_t g) {
    CycNumber t(A.M);
    for (uint32_t i = 0; i < A.dim; ++i) {
        // (A rho(g))_{ii} = A_{i, j} rho(g)_{j, i} with j = perm(g, i)
        t += A.at(i, rho.p(g, i)).mul_root(rho.e(g, i));
    }
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Context

RepContext::RepContext(const RingParams& P) : R_(P, FieldCtx::make(P.p, P.f * P.n, P.f)) {
    G_ = FiniteGroup::from_elements(R_, R_.enumerate(SubgroupId::U, P.n));
    const uint32_t Ng = uint32_t(G_.order());
    for (uint32_t a = 0; a < Ng && assoc_; ++a)
        for (uint32_t b = 0; b < Ng && assoc_; ++b) {
            uint32_t ab = G_.mul(a, b);
            for (uint32_t c = 0; c < Ng; ++c)
                if (G_.mul(ab, c) != G_.mul(a, G_.mul(b, c))) {
                    assoc_ = false;
                    break;
                }
        }
    N_ = uint32_t(P.q() == 0 ? 0 : ipow(P.q(), P.n) - 1);
    M_ = uint32_t(lcm_u64(G_.exponent(), N_));
    zeta_ = R_.field().generator();

    for (auto id : all_subgroups())
        subs_[id] = G_.select([&](const DlElement& x) { return R_.in_subgroup(id, x); });
    centre_ok_ = subs_[SubgroupId::Z] == G_.centre();

    a0_.resize(Ng);
    fr_.resize(Ng);
    zc_.resize(Ng);
    zci_.resize(Ng);
    for (uint32_t g = 0; g < Ng; ++g) {
        const DlElement& x = G_.element(g);
        a0_[g] = G_.index_of(R_.constant(x.A[0]));
        fr_[g] = G_.index_of(R_.galois(x, 1));
        zc_[g] = G_.index_of(R_.teich_conjugate(zeta_, x));
    }
    for (uint32_t g = 0; g < Ng; ++g) zci_[zc_[g]] = g;
    if (P.h >= 2)
        for (FqElem a : R_.field().subfield_elements(P.f * P.n)) {
            DlElement x = R_.one();
            x.A[0][P.h - 1] = a;
            top_.push_back(G_.index_of(x));
        }
    chars_H_ = dual_group(G_, subs_[SubgroupId::H], M_);
    chars_Z_ = dual_group(G_, subs_[SubgroupId::Z], M_);
}

const std::vector<uint32_t>& RepContext::sub(SubgroupId id) const { return subs_.at(id); }

uint32_t RepContext::frob(uint32_t g, int64_t j) const {
    int64_t n = params().n;
    j %= n;
    if (j < 0) j += n;
    for (int64_t t = 0; t < j; ++t) g = fr_[g];
    return g;
}

uint32_t RepContext::central_index(const FinChar& chi) const {
    const auto& Z = sub(SubgroupId::Z);
    for (uint32_t i = 0; i < chars_Z_.size(); ++i) {
        bool same = true;
        for (auto z : Z)
            if (chars_Z_[i].exps[z] != chi.exps[z]) {
                same = false;
                break;
            }
        if (same) return i;
    }
    throw std::logic_error("central_index: restriction is not a character of the centre");
}

// ---------------------------------------------------------------------------
// Characters

FinChar galois_char(const RepContext& C, const FinChar& chi, int64_t j) {
    FinChar out = chi;
    for (uint32_t g = 0; g < chi.exps.size(); ++g)
        if (chi.defined_at(g)) {
            uint32_t fg = C.frob(g, j);
            if (!chi.defined_at(fg)) throw std::invalid_argument("galois_char: subgroup is not Frobenius-stable");
            out.exps[g] = chi.exps[fg];
        }
    return out;
}

bool orbit_free(const RepContext& C, const FinChar& chi, const std::vector<uint32_t>& on) {
    for (uint32_t j = 1; j < C.params().n; ++j) {
        bool moved = false;
        for (auto z : on)
            if (chi.exp_at(C.frob(z, j)) != chi.exp_at(z)) {
                moved = true;
                break;
            }
        if (!moved) return false;
    }
    return true;
}

bool centre_orbit_free(const RepContext& C, const FinChar& chi) { return orbit_free(C, chi, C.sub(SubgroupId::Z)); }

bool top_layer_primitive(const RepContext& C, const FinChar& chi) {
    if (C.top_layer().empty()) return false;
    return orbit_free(C, chi, C.top_layer());
}

bool is_primitive(const RepContext& C, const FinChar& chi) { return top_layer_primitive(C, chi); }

FinChar chi_sharp(const RepContext& C, const FinChar& chi, SubgroupId on) {
    const auto& G = C.group();
    FinChar out;
    out.M = chi.M;
    out.exps.assign(G.order(), -1);
    const auto& S = C.sub(on);
    for (auto g : S) {
        uint32_t a = C.a0(g);
        if (!chi.defined_at(a)) throw std::invalid_argument("chi_sharp: A_0 outside the domain of chi");
        out.exps[g] = chi.exps[a];
    }
    if (!is_character(G, S, out)) throw std::logic_error("chi_sharp: not multiplicative on " + subgroup_name(on));
    return out;
}

std::vector<FinChar> extensions_to_Hplus(const RepContext& C, const FinChar& sharp) {
    const auto& G = C.group();
    const auto& Hp = C.sub(SubgroupId::Hprime);
    const auto& Hpl = C.sub(SubgroupId::Hplus);
    if (Hp.size() == Hpl.size()) return {sharp};
    if (!G.is_abelian(Hpl)) throw std::logic_error("extensions_to_Hplus: H^+ is not abelian");
    std::vector<FinChar> out;
    for (auto& ext : dual_group(G, Hpl, sharp.M)) {
        bool agrees = true;
        for (auto g : Hp)
            if (ext.exps[g] != sharp.exps[g]) {
                agrees = false;
                break;
            }
        if (agrees) out.push_back(std::move(ext));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Induction and class functions

MonomialRep induce(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi) {
    if (!G.is_subgroup(sub)) throw std::invalid_argument("induce: not a subgroup");
    const uint32_t Ng = uint32_t(G.order());
    std::vector<int64_t> coset(Ng, -1);
    std::vector<uint32_t> reps;
    for (uint32_t g = 0; g < Ng; ++g) {
        if (coset[g] >= 0) continue;
        for (auto s : sub) coset[G.mul(g, s)] = int64_t(reps.size());
        reps.push_back(g);
    }
    MonomialRep rho;
    rho.M = chi.M;
    rho.dim = uint32_t(reps.size());
    rho.perm.resize(size_t(Ng) * rho.dim);
    rho.exps.resize(size_t(Ng) * rho.dim);
    for (uint32_t g = 0; g < Ng; ++g)
        for (uint32_t i = 0; i < rho.dim; ++i) {
            uint32_t x = G.mul(g, reps[i]);
            uint32_t j = uint32_t(coset[x]);
            rho.perm[size_t(g) * rho.dim + i] = j;
            rho.exps[size_t(g) * rho.dim + i] = chi.exp_at(G.mul(G.inv(reps[j]), x));
        }
    return rho;
}

bool is_homomorphism(const FiniteGroup& G, const MonomialRep& rho) {
    for (uint32_t a = 0; a < G.order(); ++a)
        for (uint32_t b = 0; b < G.order(); ++b) {
            uint32_t ab = G.mul(a, b);
            for (uint32_t i = 0; i < rho.dim; ++i) {
                uint32_t j = rho.p(b, i);
                if (rho.p(a, j) != rho.p(ab, i)) return false;
                if ((rho.e(b, i) + rho.e(a, j)) % rho.M != rho.e(ab, i)) return false;
            }
        }
    return true;
}

ClassFn character(const MonomialRep& rho) {
    const size_t Ng = rho.perm.size() / std::max<uint32_t>(rho.dim, 1);
    ClassFn out(Ng, RootSum(rho.M));
    for (uint32_t g = 0; g < Ng; ++g)
        for (uint32_t i = 0; i < rho.dim; ++i)
            if (rho.p(g, i) == i) out[g].add(rho.e(g, i));
    return out;
}

ClassFn induced_character_scaled(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi) {
    std::vector<char> in(G.order(), 0);
    for (auto s : sub) in[s] = 1;
    ClassFn out(G.order(), RootSum(chi.M));
    for (uint32_t g = 0; g < G.order(); ++g)
        for (uint32_t t = 0; t < G.order(); ++t) {
            uint32_t y = G.mul(G.mul(G.inv(t), g), t);
            if (in[y]) out[g].add(chi.exp_at(y));
        }
    return out;
}

ClassFn class_fn(const FinChar& chi) {
    ClassFn out(chi.exps.size(), RootSum(chi.M));
    for (uint32_t g = 0; g < chi.exps.size(); ++g)
        if (chi.defined_at(g)) out[g].add(chi.exp_at(g));
    return out;
}

CycNumber inner(const ClassFn& a, const ClassFn& b, const std::vector<uint32_t>& S) {
    const uint32_t M = a.empty() ? 1 : a[0].order();
    RootSum acc(M);
    size_t count = 0;
    auto one = [&](uint32_t g) {
        const auto& ca = a[g].counts();
        const auto& cb = b[g].counts();
        for (uint32_t i = 0; i < M; ++i) {
            if (!ca[i]) continue;
            for (uint32_t j = 0; j < M; ++j)
                if (cb[j]) acc.add(i + M - j, ca[i] * cb[j]);
        }
        ++count;
    };
    if (S.empty())
        for (uint32_t g = 0; g < a.size(); ++g) one(g);
    else
        for (auto g : S) one(g);
    return acc.value() * mpq_class(1, long(count));
}

bool equal_class_fn(const ClassFn& a, const ClassFn& b, int64_t scale_b) {
    if (a.size() != b.size()) return false;
    for (size_t g = 0; g < a.size(); ++g) {
        RootSum d = a[g];
        const auto& cb = b[g].counts();
        for (uint32_t i = 0; i < cb.size(); ++i)
            if (cb[i]) d.add(i, -scale_b * cb[i]);
        if (!d.value().is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Matrices

CycMatrix CycMatrix::zero(uint32_t M, uint32_t d) {
    CycMatrix A;
    A.M = M;
    A.dim = d;
    A.e.assign(size_t(d) * d, CycNumber(M));
    return A;
}

CycMatrix CycMatrix::identity(uint32_t M, uint32_t d) {
    CycMatrix A = zero(M, d);
    for (uint32_t i = 0; i < d; ++i) A.at(i, i) = CycNumber(M, 1);
    return A;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    CycMatrix out = zero(M, dim);
    for (uint32_t r = 0; r < dim; ++r)
        for (uint32_t j = 0; j < dim; ++j) {
            if (at(r, j).is_zero()) continue;
            for (uint32_t c = 0; c < dim; ++c)
                if (!o.at(j, c).is_zero()) out.at(r, c) += at(r, j) * o.at(j, c);
        }
    return out;
}

CycMatrix CycMatrix::scaled(const CycNumber& c) const {
    CycMatrix out = *this;
    for (auto& x : out.e) x *= c;
    return out;
}

CycNumber CycMatrix::trace() const {
    CycNumber t(M);
    for (uint32_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

bool CycMatrix::operator==(const CycMatrix& o) const { return dim == o.dim && e == o.e; }

bool CycMatrix::is_scalar(CycNumber* value) const {
    for (uint32_t r = 0; r < dim; ++r)
        for (uint32_t c = 0; c < dim; ++c) {
            if (r == c && at(r, c) != at(0, 0)) return false;
            if (r != c && !at(r, c).is_zero()) return false;
        }
    if (value && dim) *value = at(0, 0);
    return true;
}

CycMatrix monomial_matrix(const MonomialRep& rho, uint32_t g) {
    CycMatrix A = CycMatrix::zero(rho.M, rho.dim);
    for (uint32_t i = 0; i < rho.dim; ++i) A.at(rho.p(g, i), i) = CycNumber::root(rho.M, rho.e(g, i));
    return A;
}

CycMatrix mul_monomial_right(const CycMatrix& A, const MonomialRep& rho, uint32_t g) {
    CycMatrix out = CycMatrix::zero(A.M, A.dim);
    for (uint32_t s = 0; s < A.dim; ++s) {
        uint32_t j = rho.p(g, s), e = rho.e(g, s);
        for (uint32_t r = 0; r < A.dim; ++r) out.at(r, s) = A.at(r, j).mul_root(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rho_chi

RhoChi build_rho(const RepContext& C, uint32_t chi_index) {
    RhoChi rc;
    rc.chi_index = chi_index;
    rc.chi = C.chars_H().at(chi_index);
    rc.sharp = chi_sharp(C, rc.chi);
    rc.extensions = extensions_to_Hplus(C, rc.sharp);
    if (rc.extensions.empty()) throw std::logic_error("build_rho: chi^sharp has no extension to H^+");
    rc.rho = induce(C.group(), C.sub(SubgroupId::Hplus), rc.extensions[0]);
    rc.character = character(rc.rho);
    return rc;
}

RhoChi build_rho(const RepContext& C, const FinChar& chi) {
    for (uint32_t i = 0; i < C.chars_H().size(); ++i)
        if (C.chars_H()[i] == chi) return build_rho(C, i);
    throw std::invalid_argument("build_rho: not a character of H(F_{q^n})");
}

std::vector<uint32_t> primitive_indices(const RepContext& C) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < C.chars_H().size(); ++i)
        if (is_primitive(C, C.chars_H()[i])) out.push_back(i);
    return out;
}

SuiteReport rep_suite(const RingParams& P) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "reps";
    RepContext C(P);
    const auto& G = C.group();
    const auto& Z = C.sub(SubgroupId::Z);
    const auto& Hp = C.sub(SubgroupId::Hprime);
    const auto& Hpl = C.sub(SubgroupId::Hplus);
    const auto& H0p = C.sub(SubgroupId::H0prime);
    const uint64_t q = P.q();
    const bool c2 = P.case2();
    const uint64_t n_ext = c2 ? ipow(q, P.n / 2) : 1;

    rep.data["order_U"] = G.order();
    rep.data["order_H"] = C.sub(SubgroupId::H).size();
    rep.data["order_Z"] = Z.size();
    rep.data["order_Hprime"] = Hp.size();
    rep.data["order_Hplus"] = Hpl.size();
    rep.data["order_H0prime"] = H0p.size();
    rep.data["case"] = P.case_tag();
    rep.data["M"] = C.M();
    rep.add("U(F_{q^n}) is associative", C.associative());
    rep.add("centre equals the subgroup predicate", C.centre_matches());
    rep.add("[H^+ : H'] matches the case", Hpl.size() == Hp.size() * n_ext, std::to_string(n_ext),
            std::to_string(Hpl.size() / std::max<size_t>(Hp.size(), 1)));
    rep.add("[U : H^+] = q^{n D / 2}", G.order() == Hpl.size() * expected_dim(P), std::to_string(expected_dim(P)),
            std::to_string(G.order() / Hpl.size()));

    auto prim = primitive_indices(C);
    rep.data["primitive_characters"] = prim.size();
    rep.add("primitive characters exist", !prim.empty());
    {
        // Characters admitted by the centre condition alone.
        uint64_t extra = 0, extra_irreducible = 0;
        for (uint32_t i = 0; i < C.chars_H().size(); ++i) {
            const auto& chi = C.chars_H()[i];
            if (!centre_orbit_free(C, chi) || is_primitive(C, chi)) continue;
            ++extra;
            RhoChi rc = build_rho(C, i);
            if (inner(rc.character, rc.character) == CycNumber(C.M(), 1)) ++extra_irreducible;
        }
        rep.data["centre_orbit_free_not_primitive"] = extra;
        rep.data["centre_orbit_free_not_primitive_irreducible"] = extra_irreducible;
    }

    std::vector<RhoChi> rhos;
    uint64_t bad_irr = 0, bad_dim = 0, bad_central = 0, bad_ext = 0, bad_count = 0, bad_hom = 0, bad_ind = 0,
             bad_same = 0, bad_psi = 0;
    std::string w_irr, w_dim, w_central, w_ext, w_count, w_hom, w_ind, w_same, w_psi;
    auto note = [](uint64_t& c, std::string& w, const std::string& what) {
        if (!c++) w = what;
    };
    auto table = nlohmann::ordered_json::array();
    for (auto ci : prim) {
        RhoChi rc = build_rho(C, ci);
        const std::string tag = "chi " + std::to_string(ci);
        CycNumber nn = inner(rc.character, rc.character);
        bool irr = nn == CycNumber(C.M(), 1);
        if (!irr) note(bad_irr, w_irr, tag + ": <chi_rho, chi_rho> = " + nn.to_string());
        if (rc.rho.dim != expected_dim(P)) note(bad_dim, w_dim, tag + ": dim " + std::to_string(rc.rho.dim));
        if (!is_homomorphism(G, rc.rho)) note(bad_hom, w_hom, tag);

        bool central = true;
        for (auto z : Z)
            for (uint32_t i = 0; i < rc.rho.dim; ++i)
                if (rc.rho.p(z, i) != i || rc.rho.e(z, i) != rc.chi.exp_at(z)) central = false;
        if (!central) note(bad_central, w_central, tag);

        FinChar omega = rc.chi;
        for (uint32_t g = 0; g < omega.exps.size(); ++g)
            if (!std::binary_search(Z.begin(), Z.end(), g)) omega.exps[g] = -1;
        FinChar om_sharp = chi_sharp(C, omega, SubgroupId::H0prime);
        CycNumber mult = inner(rc.character, class_fn(om_sharp), H0p);
        bool contains = mult.is_rational() && mult.rational_part() >= 1;
        if (!contains) note(bad_ext, w_ext, tag + ": multiplicity " + mult.to_string());

        if (!centre_orbit_free(C, rc.chi)) note(bad_psi, w_psi, tag);
        if (rc.extensions.size() != n_ext)
            note(bad_count, w_count, tag + ": " + std::to_string(rc.extensions.size()) + " extensions");

        ClassFn ind = induced_character_scaled(G, Hp, rc.sharp);
        if (!equal_class_fn(ind, rc.character, int64_t(Hp.size() * n_ext))) note(bad_ind, w_ind, tag);
        for (size_t e = 1; e < rc.extensions.size(); ++e)
            if (!equal_class_fn(character(induce(G, Hpl, rc.extensions[e])), rc.character))
                note(bad_same, w_same, tag + ", extension " + std::to_string(e));

        nlohmann::ordered_json row;
        row["chi"] = ci;
        row["dim"] = rc.rho.dim;
        row["irreducible"] = irr;
        row["central_char_id"] = C.central_index(rc.chi);
        row["extensions"] = rc.extensions.size();
        row["centralext_multiplicity"] = mult.is_rational() ? mult.rational_part().get_str() : mult.to_string();
        table.push_back(row);
        rhos.push_back(std::move(rc));
    }
    const std::string n_prim = std::to_string(prim.size());
    rep.add("<chi_rho, chi_rho> = 1", bad_irr == 0, "0 failures", std::to_string(bad_irr), w_irr);
    rep.add("dim rho_chi = q^{n D / 2}", bad_dim == 0, std::to_string(expected_dim(P)), std::to_string(bad_dim) + " failures",
            w_dim);
    rep.add("rho_chi is a homomorphism", bad_hom == 0, "0 failures", std::to_string(bad_hom), w_hom);
    rep.add("central character is chi on Z", bad_central == 0, "0 failures", std::to_string(bad_central), w_central);
    rep.add("restriction to H_0' contains omega^sharp", bad_ext == 0, "0 failures", std::to_string(bad_ext), w_ext);
    rep.add("primitive chi has orbit-free central character", bad_psi == 0, "0 failures", std::to_string(bad_psi), w_psi);
    rep.add("number of extensions to H^+", bad_count == 0, std::to_string(n_ext), std::to_string(bad_count) + " failures",
            w_count);
    rep.add(std::string("Ind_{H'} chi^sharp = ") + (c2 ? "q^{n/2}" : "1") + " rho_chi", bad_ind == 0, "0 failures",
            std::to_string(bad_ind), w_ind);
    rep.add("all extensions give the same rho_chi", bad_same == 0, "0 failures", std::to_string(bad_same), w_same);

    uint64_t bad_dist = 0;
    std::string w_dist;
    for (size_t a = 0; a < rhos.size(); ++a)
        for (size_t b = a + 1; b < rhos.size(); ++b)
            if (!inner(rhos[a].character, rhos[b].character).is_zero())
                note(bad_dist, w_dist,
                     "chi " + std::to_string(rhos[a].chi_index) + " vs chi " + std::to_string(rhos[b].chi_index));
    rep.add("distinct chi give non-isomorphic rho_chi", bad_dist == 0, "0 pairs", std::to_string(bad_dist), w_dist);

    // Exhaustion: for each orbit-free omega, the rho_chi with that central character
    // account for all of [U : Z].
    const uint64_t UZ = G.order() / Z.size();
    std::vector<uint64_t> mass(C.chars_Z().size(), 0);
    for (const auto& rc : rhos) mass[C.central_index(rc.chi)] += uint64_t(rc.rho.dim) * rc.rho.dim;
    uint64_t free_omegas = 0, bad_exh = 0;
    std::string w_exh;
    for (uint32_t i = 0; i < C.chars_Z().size(); ++i) {
        if (!is_primitive(C, C.chars_Z()[i])) continue;
        ++free_omegas;
        if (mass[i] != UZ) note(bad_exh, w_exh, "omega " + std::to_string(i) + ": " + std::to_string(mass[i]));
    }
    rep.data["primitive_central_characters"] = free_omegas;
    rep.add("sum of dim^2 over chi with primitive central character omega = [U : Z]", bad_exh == 0 && free_omegas > 0,
            std::to_string(UZ), std::to_string(bad_exh) + " failures", w_exh);
    const uint64_t HZ = C.sub(SubgroupId::H).size() / Z.size();
    rep.add("#primitive chi = #primitive omega * [H : Z]", prim.size() == free_omegas * HZ,
            std::to_string(free_omegas * HZ), n_prim);
    rep.data["reps"] = table;
    rep.seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Extension to <zeta> x U

ZetaExtension extension_select(const RepContext& C, const RhoChi& rc) {
    ZetaExtension X;
    const auto& G = C.group();
    const auto& rho = rc.rho;
    const uint32_t d = rho.dim, M = C.M(), N = C.N();
    const RingParams& P = C.params();

    // Reynolds average of a matrix unit E_ab
    bool found = false;
    for (uint32_t a = 0; a < d && !found; ++a)
        for (uint32_t b = 0; b < d && !found; ++b) {
            std::vector<RootSum> acc(size_t(d) * d, RootSum(M));
            for (uint32_t g = 0; g < G.order(); ++g) {
                uint32_t A = C.zconj(g), B = G.inv(g);
                uint32_t r = rho.p(A, a);
                for (uint32_t s = 0; s < d; ++s)
                    if (rho.p(B, s) == b) acc[size_t(r) * d + s].add(uint64_t(rho.e(A, a)) + rho.e(B, s));
            }
            X.T = CycMatrix::zero(M, d);
            for (size_t i = 0; i < acc.size(); ++i) {
                X.T.e[i] = acc[i].value();
                if (!X.T.e[i].is_zero()) found = true;
            }
        }
    if (!found) {
        X.failure = "every Reynolds average vanishes";
        return X;
    }
    for (uint32_t g = 0; g < G.order(); ++g)
        if (!(mul_monomial_right(X.T, rho, g) == mul_monomial_left(rho, C.zconj(g), X.T))) ++X.intertwining_failures;

    CycNumber tr = X.T.trace();
    if (tr.is_zero()) {
        X.failure = "the intertwiner has trace zero";
        return X;
    }
    X.scale = sign_D(P, M) * tr.inverse();
    CycMatrix cT = X.T.scaled(X.scale);
    X.powers.push_back(CycMatrix::identity(M, d));
    for (uint32_t a = 1; a < N; ++a) X.powers.push_back(X.powers.back() * cT);
    X.order_ok = (X.powers.back() * cT) == CycMatrix::identity(M, d);

    const auto& H = C.sub(SubgroupId::H);
    std::vector<CycNumber> tr_g, target;
    for (auto g : H) {
        tr_g.push_back(trace_with(cT, rho, g));
        target.push_back(sign_D(P, M) * rc.chi.value(g));
    }
    for (uint32_t e = 0; e < N; ++e) {
        bool all = true;
        for (size_t i = 0; i < H.size() && all; ++i) all = tr_g[i].mul_root(int64_t(e) * (M / N)) == target[i];
        if (all) ++X.twists_passing;
    }
    X.ok = X.twists_passing == 1 && X.order_ok && X.intertwining_failures == 0;
    if (!X.ok)
        X.failure = "twists passing " + std::to_string(X.twists_passing) + ", order " + (X.order_ok ? "ok" : "wrong") +
                    ", intertwining failures " + std::to_string(X.intertwining_failures);
    return X;
}

uint64_t extension_homomorphism_failures(const RepContext& C, const RhoChi& rc, const ZetaExtension& ext,
                                         uint32_t pairs, uint64_t seed, std::string* witness) {
    if (ext.powers.empty()) return pairs;
    const auto& G = C.group();
    const uint32_t N = C.N();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> da(0, N - 1), dg(0, uint32_t(G.order() - 1));
    uint64_t bad = 0;
    for (uint32_t t = 0; t < pairs; ++t) {
        uint32_t a = da(rng), b = da(rng), g = dg(rng), g2 = dg(rng);
        CycMatrix lhs = mul_monomial_right(ext.powers[a], rc.rho, g) * mul_monomial_right(ext.powers[b], rc.rho, g2);
        // zeta^a g zeta^b g2 = zeta^{a+b} (zeta^{-b} g zeta^b) g2
        uint32_t c = g;
        for (uint32_t i = 0; i < b; ++i) c = C.zconj_inv(c);
        CycMatrix rhs = mul_monomial_right(ext.powers[(a + b) % N], rc.rho, G.mul(c, g2));
        if (!(lhs == rhs) && !bad++ && witness)
            *witness = "a=" + std::to_string(a) + " b=" + std::to_string(b) + " g=" + std::to_string(g) +
                       " g'=" + std::to_string(g2);
    }
    return bad;
}

SuiteReport extension_suite(const RingParams& P, uint32_t pairs, uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "reps.extension";
    RepContext C(P);
    auto prim = primitive_indices(C);
    rep.add("primitive characters exist", !prim.empty());
    uint64_t bad_twist = 0, bad_int = 0, bad_order = 0, bad_hom = 0, bad_res = 0, tested = 0;
    std::string w_twist, w_int, w_order, w_hom, w_res;
    auto table = nlohmann::ordered_json::array();
    const uint32_t per = prim.empty() ? 0 : uint32_t((pairs + prim.size() - 1) / prim.size());
    for (size_t idx = 0; idx < prim.size(); ++idx) {
        RhoChi rc = build_rho(C, prim[idx]);
        ZetaExtension X = extension_select(C, rc);
        const std::string tag = "chi " + std::to_string(prim[idx]);
        if (X.twists_passing != 1 && !bad_twist++)
            w_twist = tag + ": " + std::to_string(X.twists_passing) + (X.failure.empty() ? "" : " (" + X.failure + ")");
        if (X.intertwining_failures && !bad_int++) w_int = tag;
        if (!X.order_ok && !bad_order++) w_order = tag;
        if (!X.powers.empty() && !(X.powers[0] == CycMatrix::identity(C.M(), rc.rho.dim)) && !bad_res++) w_res = tag;
        std::string w;
        uint64_t hb = extension_homomorphism_failures(C, rc, X, per, seed + idx, &w);
        tested += per;
        if (hb && !bad_hom) w_hom = tag + ": " + w;
        bad_hom += hb;
        nlohmann::ordered_json row;
        row["chi"] = prim[idx];
        row["dim"] = rc.rho.dim;
        row["twists_passing"] = X.twists_passing;
        if (!X.powers.empty()) row["trace_eta_zeta"] = cyc_json(X.powers.size() > 1 ? X.powers[1].trace() : X.powers[0].trace());
        table.push_back(row);
    }
    const std::string s = P.D() % 2 ? "-" : "+";
    rep.add("exactly one scalar twist gives Tr eta(zeta g) = " + s + "chi(g) for all g in H(F)", bad_twist == 0,
            "1 per chi", std::to_string(bad_twist) + " failures", w_twist);
    rep.add("T rho(g) T^{-1} = rho(zeta g zeta^{-1}) for all g", bad_int == 0, "0 failures", std::to_string(bad_int), w_int);
    rep.add("(c T)^{q^n - 1} = I", bad_order == 0, "0 failures", std::to_string(bad_order), w_order);
    rep.add("restriction to U(F) is rho_chi", bad_res == 0, "0 failures", std::to_string(bad_res), w_res);
    rep.add("homomorphism on random pairs", bad_hom == 0, "0 of " + std::to_string(tested), std::to_string(bad_hom), w_hom);
    rep.data["pairs"] = tested;
    rep.data["extensions"] = table;
    rep.seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// theta, very regular traces, comparison across invariants

CycNumber ThetaChar::chi_value(const DlElement& a0_elt, uint32_t M) const {
    auto it = chi.find(witt_key(a0_elt.A[0]));
    if (it == chi.end()) throw std::invalid_argument("theta: element outside the one-units");
    if (M % chi_order) throw std::invalid_argument("theta: cyclotomic order too small");
    return CycNumber::root(M, int64_t(it->second) * (M / chi_order));
}

ThetaChar make_theta(const RepContext& C, const FinChar& chi, uint32_t zeta_exp) {
    const auto& G = C.group();
    const auto& H = C.sub(SubgroupId::H);
    uint64_t ex = 1;
    for (auto g : H) ex = lcm_u64(ex, G.element_order(g));
    ThetaChar th;
    th.N = C.N();
    th.zeta_exp = zeta_exp % th.N;
    th.chi_order = uint32_t(ex);
    th.level = C.params().h;
    const uint32_t step = C.M() / th.chi_order;
    for (auto g : H) {
        uint32_t e = chi.exp_at(g);
        if (e % step) throw std::logic_error("make_theta: value order exceeds exp H");
        th.chi[witt_key(G.element(g).A[0])] = e / step;
    }
    return th;
}

FinChar theta_restriction(const RepContext& C, const ThetaChar& th) {
    const auto& G = C.group();
    FinChar out;
    out.M = C.M();
    out.exps.assign(G.order(), -1);
    const uint32_t step = C.M() / th.chi_order;
    for (auto g : C.sub(SubgroupId::H)) {
        auto it = th.chi.find(witt_key(G.element(g).A[0]));
        if (it == th.chi.end()) throw std::invalid_argument("theta_restriction: H(F) does not match");
        out.exps[g] = int64_t(it->second) * step;
    }
    return out;
}

bool theta_is_primitive(const RepContext& C, const ThetaChar& th) {
    return th.level == C.params().h && top_layer_primitive(C, theta_restriction(C, th));
}

bool very_regular(const RingParams& P, uint64_t a) {
    const uint64_t N = ipow(P.q(), P.n) - 1;
    for (uint32_t j = 1; j < P.n; ++j)
        if ((a % N) * ((ipow(P.q(), j) - 1) % N) % N == 0) return false;
    return true;
}

TraceValue vr_trace(const RepContext& C, const ThetaChar& th, const RhoChi& rc, const ZetaExtension& ext, uint64_t a,
                    uint32_t u) {
    const RingParams& P = C.params();
    if (!very_regular(P, a)) throw std::invalid_argument("vr_trace: zeta^a has a nontrivial Galois stabilizer");
    if (!theta_is_primitive(C, th)) throw std::invalid_argument("vr_trace: theta is not primitive of level h");
    if (ext.powers.empty()) throw std::invalid_argument("vr_trace: extension unavailable");
    const uint32_t M = C.M(), N = C.N();
    const auto& G = C.group();
    TraceValue tv{CycNumber(M), CycNumber(M)};
    uint64_t b = a % N;
    for (uint32_t j = 0; j < P.n; ++j) {
        uint32_t v = C.frob(u, j);
        CycNumber theta_zeta_b = CycNumber::root(M, int64_t((th.zeta_exp * b) % N) * (M / N));
        tv.lhs += theta_zeta_b * trace_with(ext.powers[b], rc.rho, v);
        tv.rhs += theta_zeta_b * th.chi_value(G.element(v), M);
        b = (b * P.q()) % N;
    }
    tv.rhs = tv.rhs * sign_D(P, M);
    return tv;
}

namespace {

std::vector<ThetaChar> pick_thetas(const RepContext& C, uint32_t count) {
    auto prim = primitive_indices(C);
    std::vector<ThetaChar> out;
    for (uint32_t i = 0; i < count && !prim.empty(); ++i)
        out.push_back(make_theta(C, C.chars_H()[prim[i % prim.size()]], 1 + i));
    return out;
}

}  // namespace

SuiteReport theta_suite(const RingParams& P, uint32_t thetas) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "theta";
    RepContext C(P);
    const auto& H = C.sub(SubgroupId::H);
    auto ths = pick_thetas(C, thetas);
    rep.add("primitive theta of level h exist", !ths.empty());
    rep.data["very_regular_definition"] = "zeta^a with trivial Galois stabilizer, one-unit part unconstrained";
    uint64_t checked = 0, bad = 0, bad_exp = 0;
    std::string w, w_exp;
    auto per_exp = nlohmann::ordered_json::object();
    auto values = nlohmann::ordered_json::array();
    for (size_t t = 0; t < ths.size(); ++t) {
        const auto& th = ths[t];
        RhoChi rc = build_rho(C, theta_restriction(C, th));
        ZetaExtension X = extension_select(C, rc);
        if (X.powers.empty()) {
            bad++;
            if (w.empty()) w = "theta " + std::to_string(t) + ": " + X.failure;
            continue;
        }
        for (uint64_t a = 0; a < C.N(); ++a) {
            if (!very_regular(P, a)) continue;
            // Single-exponent form: Tr eta(zeta^a v) = (-1)^D chi(v)
            uint64_t exp_bad = 0;
            for (auto v : H)
                if (trace_with(X.powers[a], rc.rho, v) != sign_D(P, C.M()) * rc.chi.value(v)) ++exp_bad;
            std::string key = "theta" + std::to_string(t) + "_a" + std::to_string(a);
            per_exp[key] = exp_bad == 0;
            if (exp_bad && !bad_exp++) w_exp = key;
            for (auto u : H) {
                TraceValue tv = vr_trace(C, th, rc, X, a, u);
                ++checked;
                if (tv.lhs != tv.rhs && !bad++)
                    w = "theta " + std::to_string(t) + ", a = " + std::to_string(a) + ", u = " +
                        C.ring().to_string(C.group().element(u));
                if (u == C.group().identity()) {
                    nlohmann::ordered_json row;
                    row["theta"] = t;
                    row["a"] = a;
                    row["trace"] = cyc_json(tv.lhs);
                    values.push_back(row);
                }
            }
        }
    }
    rep.add("Tr eta(zeta^a g) = (-1)^D chi(g) for each very regular exponent", bad_exp == 0, "0 failures",
            std::to_string(bad_exp), w_exp);
    rep.add("full trace = (-1)^D sum_gamma theta^gamma(x) at every very regular x", bad == 0 && checked > 0,
            "0 failures", std::to_string(bad) + " of " + std::to_string(checked), w);
    rep.data["per_exponent"] = per_exp;
    rep.data["traces_at_u_1"] = values;
    rep.seconds = seconds_since(t0);
    return rep;
}

SuiteReport jl_compare(const RingParams& P, uint32_t k2, uint32_t thetas) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "jl";
    RingParams P2 = P;
    P2.k = k2;
    RepContext C1(P), C2(P2);
    const auto& H1 = C1.sub(SubgroupId::H);
    auto ths = pick_thetas(C1, thetas);
    rep.add("primitive theta of level h exist", ths.size() == thetas, std::to_string(thetas), std::to_string(ths.size()));
    rep.data["very_regular_definition"] = "zeta^a with trivial Galois stabilizer, one-unit part unconstrained";
    const uint64_t dim1 = P.n * expected_dim(P), dim2 = P.n * expected_dim(P2);
    rep.data["k"] = {P.k, P2.k};
    rep.data["D"] = {P.D(), P2.D()};

    uint64_t checked = 0, bad_eq = 0, bad_id = 0, bad_dim = 0, bad_prim = 0;
    std::string w_eq, w_id, w_dim;
    auto trace_table = nlohmann::ordered_json::array();
    nlohmann::ordered_json dims = nlohmann::ordered_json::array();
    for (size_t t = 0; t < ths.size(); ++t) {
        const auto& th = ths[t];
        if (!theta_is_primitive(C2, th)) {
            ++bad_prim;
            continue;
        }
        RhoChi r1 = build_rho(C1, theta_restriction(C1, th));
        RhoChi r2 = build_rho(C2, theta_restriction(C2, th));
        ZetaExtension X1 = extension_select(C1, r1), X2 = extension_select(C2, r2);
        uint64_t d1 = P.n * uint64_t(r1.rho.dim), d2 = P2.n * uint64_t(r2.rho.dim);
        dims.push_back({d1, d2});
        if ((d1 != dim1 || d2 != dim2) && !bad_dim++)
            w_dim = "theta " + std::to_string(t) + ": " + std::to_string(d1) + " vs " + std::to_string(d2);
        if (X1.powers.empty() || X2.powers.empty()) {
            ++bad_id;
            if (w_id.empty()) w_id = "theta " + std::to_string(t) + ": extension unavailable";
            continue;
        }
        for (uint64_t a = 0; a < C1.N(); ++a) {
            if (!very_regular(P, a)) continue;
            for (auto u : H1) {
                uint32_t u2 = C2.group().index_of(C2.ring().constant(C1.group().element(u).A[0]));
                TraceValue v1 = vr_trace(C1, th, r1, X1, a, u);
                TraceValue v2 = vr_trace(C2, th, r2, X2, a, u2);
                ++checked;
                std::string where = "theta " + std::to_string(t) + ", a = " + std::to_string(a) + ", u = " +
                                    C1.ring().to_string(C1.group().element(u));
                if (v1.lhs != v2.lhs && !bad_eq++) w_eq = where;
                if ((v1.lhs != v1.rhs || v2.lhs != v2.rhs) && !bad_id++) w_id = where;
                nlohmann::ordered_json row;
                row["theta"] = t;
                row["a"] = a;
                row["u"] = u;
                row["trace"] = cyc_json(v1.lhs);
                row["trace_k2"] = cyc_json(v2.lhs);
                trace_table.push_back(row);
            }
        }
    }
    rep.add("theta is primitive of level h for both invariants", bad_prim == 0, "0 failures", std::to_string(bad_prim));
    rep.add("dimensions n q^{n D / 2}", bad_dim == 0, std::to_string(dim1) + " vs " + std::to_string(dim2),
            std::to_string(bad_dim) + " failures", w_dim);
    rep.add("very regular traces agree across invariants", bad_eq == 0 && checked > 0, "0 failures",
            std::to_string(bad_eq) + " of " + std::to_string(checked), w_eq);
    rep.add("very regular traces equal (-1)^D sum_gamma theta^gamma(x)", bad_id == 0 && checked > 0, "0 failures",
            std::to_string(bad_id) + " of " + std::to_string(checked), w_id);
    rep.data["dims"] = {dim1, dim2};
    rep.data["dims_per_theta"] = dims;
    rep.data["equal"] = bad_eq == 0 && checked > 0;
    rep.data["trace_table"] = trace_table;
    rep.seconds = seconds_since(t0);
    return rep;
}

nlohmann::ordered_json cyc_json(const CycNumber& c) {
    nlohmann::ordered_json j;
    j["M"] = c.order();
    j["coeffs"] = c.coeff_strings();
    return j;
}

}  // namespace dllab
