#ifndef DLLAB_REPTHEORY_HPP
#define DLLAB_REPTHEORY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dllab/dlring.hpp"
#include "dllab/group.hpp"
#include "dllab/report.hpp"

namespace dllab {

// U(F_{q^n}) with its distinguished subgroups, Frobenius and zeta-conjugation as
// permutations of the element indices.
class RepContext {
public:
    explicit RepContext(const RingParams& P);

    const RingParams& params() const { return R_.params(); }
    const DlRing& ring() const { return R_; }
    const FiniteGroup& group() const { return G_; }
    uint32_t M() const { return M_; }      // cyclotomic order for every value below
    uint32_t N() const { return N_; }      // q^n - 1
    FqElem zeta() const { return zeta_; }  // generator of F_{q^n}^x

    const std::vector<uint32_t>& sub(SubgroupId id) const;
    uint32_t a0(uint32_t g) const { return a0_[g]; }  // index of the constant A_0 of g
    uint32_t frob(uint32_t g, int64_t j = 1) const;   // q^j-power Frobenius
    uint32_t zconj(uint32_t g) const { return zc_[g]; }  // zeta g zeta^{-1}
    uint32_t zconj_inv(uint32_t g) const { return zci_[g]; }
    // Elements 1 + V^{h-1}[a] of the top layer, indexed like field().subfield_elements(f n).
    const std::vector<uint32_t>& top_layer() const { return top_; }
    bool associative() const { return assoc_; }
    bool centre_matches() const { return centre_ok_; }

    const std::vector<FinChar>& chars_H() const { return chars_H_; }
    const std::vector<FinChar>& chars_Z() const { return chars_Z_; }
    // Index into chars_Z() of chi restricted to the centre.
    uint32_t central_index(const FinChar& chi) const;

private:
    DlRing R_;
    FiniteGroup G_;
    uint32_t M_ = 1, N_ = 1;
    FqElem zeta_{};
    std::map<SubgroupId, std::vector<uint32_t>> subs_;
    std::vector<uint32_t> a0_, fr_, zc_, zci_, top_;
    bool assoc_ = true, centre_ok_ = true;
    std::vector<FinChar> chars_H_, chars_Z_;
};

// chi o Frob^j on a Frobenius-stable subgroup.
FinChar galois_char(const RepContext& C, const FinChar& chi, int64_t j);
bool orbit_free(const RepContext& C, const FinChar& chi, const std::vector<uint32_t>& on);
// chi restricted to Z(U) has trivial Galois stabilizer.
bool centre_orbit_free(const RepContext& C, const FinChar& chi);
// psi(a) = chi(1 + V^{h-1}[a]) has trivial Galois stabilizer.
bool top_layer_primitive(const RepContext& C, const FinChar& chi);
// Level-h primitivity (the top-layer condition). It implies centre_orbit_free and
// agrees with it whenever Z(U) is the top layer; when Z(U) is larger the weaker
// condition admits characters whose induced representation is reducible.
bool is_primitive(const RepContext& C, const FinChar& chi);

// x -> chi(A_0(x)) on H' (or, for a character of Z, on H_0').
FinChar chi_sharp(const RepContext& C, const FinChar& chi, SubgroupId on = SubgroupId::Hprime);
std::vector<FinChar> extensions_to_Hplus(const RepContext& C, const FinChar& sharp);

// rho(g) e_i = zeta_M^{exp(g, i)} e_{perm(g, i)}
struct MonomialRep {
    uint32_t M = 1, dim = 0;
    std::vector<uint32_t> perm, exps;  // |G| * dim
    uint32_t p(uint32_t g, uint32_t i) const { return perm[size_t(g) * dim + i]; }
    uint32_t e(uint32_t g, uint32_t i) const { return exps[size_t(g) * dim + i]; }
};

// Class function as exact root multiplicities per element.
using ClassFn = std::vector<RootSum>;

MonomialRep induce(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi);
bool is_homomorphism(const FiniteGroup& G, const MonomialRep& rho);
ClassFn character(const MonomialRep& rho);
// |sub| * Ind_sub^G(chi), kept integral.
ClassFn induced_character_scaled(const FiniteGroup& G, const std::vector<uint32_t>& sub, const FinChar& chi);
// (1/|S|) sum_{g in S} a(g) conj(b(g)); S = all of G when empty.
CycNumber inner(const ClassFn& a, const ClassFn& b, const std::vector<uint32_t>& S = {});
bool equal_class_fn(const ClassFn& a, const ClassFn& b, int64_t scale_b = 1);
ClassFn class_fn(const FinChar& chi);  // zero off the subgroup

// Dense square matrix over Q(zeta_M).
struct CycMatrix {
    uint32_t M = 1, dim = 0;
    std::vector<CycNumber> e;
    static CycMatrix zero(uint32_t M, uint32_t d);
    static CycMatrix identity(uint32_t M, uint32_t d);
    CycNumber& at(uint32_t r, uint32_t c) { return e[size_t(r) * dim + c]; }
    const CycNumber& at(uint32_t r, uint32_t c) const { return e[size_t(r) * dim + c]; }
    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix scaled(const CycNumber& c) const;
    CycNumber trace() const;
    bool operator==(const CycMatrix& o) const;
    bool is_scalar(CycNumber* value = nullptr) const;
};

CycMatrix monomial_matrix(const MonomialRep& rho, uint32_t g);
CycMatrix mul_monomial_right(const CycMatrix& A, const MonomialRep& rho, uint32_t g);  // A rho(g)

// rho_chi for a primitive chi, built from the first extension to H^+.
struct RhoChi {
    uint32_t chi_index = 0;
    FinChar chi, sharp;
    std::vector<FinChar> extensions;
    MonomialRep rho;
    ClassFn character;
};
RhoChi build_rho(const RepContext& C, uint32_t chi_index);
RhoChi build_rho(const RepContext& C, const FinChar& chi);
std::vector<uint32_t> primitive_indices(const RepContext& C);

// Criterion bundle for every primitive chi at one parameter point.
SuiteReport rep_suite(const RingParams& P);

// Extension of rho_chi to <zeta> x U(F_{q^n}): eta(zeta^a g) = powers[a] rho(g).
struct ZetaExtension {
    bool ok = false;
    std::string failure;
    CycMatrix T;                  // Reynolds intertwiner
    CycNumber scale;              // c with Tr(c T) = (-1)^D
    std::vector<CycMatrix> powers;  // (c T)^a, 0 <= a < q^n - 1
    uint32_t twists_passing = 0;  // among all omega with omega^{q^n-1} = 1
    uint64_t intertwining_failures = 0;
    bool order_ok = false;        // (c T)^{q^n-1} = I
};
ZetaExtension extension_select(const RepContext& C, const RhoChi& rc);
// Homomorphism property of the extension on random pairs.
uint64_t extension_homomorphism_failures(const RepContext& C, const RhoChi& rc, const ZetaExtension& ext,
                                         uint32_t pairs, uint64_t seed, std::string* witness = nullptr);
SuiteReport extension_suite(const RingParams& P, uint32_t pairs, uint64_t seed);

// theta on L^x at finite level: theta(zeta) = zeta_N^zeta_exp, chi = theta on the
// one-units, keyed by the Witt coordinates of A_0.
struct ThetaChar {
    uint32_t N = 1;        // q^n - 1
    uint32_t zeta_exp = 0;
    uint32_t chi_order = 1;
    std::map<std::vector<uint32_t>, uint32_t> chi;
    int64_t theta_pi = 0;  // exponent metadata for theta(pi); not visible at finite level
    uint32_t level = 0;

    CycNumber chi_value(const DlElement& a0_elt, uint32_t M) const;
};
ThetaChar make_theta(const RepContext& C, const FinChar& chi, uint32_t zeta_exp);
FinChar theta_restriction(const RepContext& C, const ThetaChar& th);
bool theta_is_primitive(const RepContext& C, const ThetaChar& th);
bool very_regular(const RingParams& P, uint64_t a);

struct TraceValue {
    CycNumber lhs, rhs;  // assembled trace, (-1)^D sum_gamma theta^gamma(x)
};
// Full trace at x = zeta^a u, u in H(F_{q^n}) given by its index in C.group().
TraceValue vr_trace(const RepContext& C, const ThetaChar& th, const RhoChi& rc, const ZetaExtension& ext, uint64_t a,
                    uint32_t u);
SuiteReport theta_suite(const RingParams& P, uint32_t thetas);
SuiteReport jl_compare(const RingParams& P, uint32_t k2, uint32_t thetas);

// Coefficient strings of a cyclotomic number in the power basis of Q(zeta_M).
nlohmann::ordered_json cyc_json(const CycNumber& c);

}  // namespace dllab

#endif
