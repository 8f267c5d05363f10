#ifndef SINGKIT_TANGENT_HPP
#define SINGKIT_TANGENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "singkit/errors.hpp"
#include "singkit/jet.hpp"
#include "singkit/linsub.hpp"

namespace singkit {

enum class Group { R, K, A, L };

struct GroupSpec {
    Group group = Group::K;
    // -1: extended tangent space; j >= 0: filtration level for I = m.
    int level = -1;
};

std::string group_name(Group g);
Group parse_group(const std::string& name);

// xi = sum coeffs[i] * d/dx_i over the source variables.
struct Derivation {
    std::vector<Jet> coeffs;
    Jet apply(const Jet& f) const;
};

struct DerivationBasis {
    RingPtr ring;
    int level = -1;
    std::vector<Derivation> generators;
    // Spanning set solved at jet level (J != 0) rather than written down.
    bool solved = false;
};

// Derivations of R_X (t-linear for rings with parameters) with coefficients in m^{level+1}.
DerivationBasis derivations(const RingPtr& ring, int level);

// Where a tangent-space generator came from; witnesses are mapped back to group elements through this.
struct TangentGenerator {
    enum Kind { Right, Contact, Left } kind = Right;
    int derivation = -1;      // Right: index into the derivation basis
    int monomial = 0;         // Contact: multiplier monomial; Left: parameter monomial t^gamma
    int row = 0;              // Contact/Left: target component e_row
    int col = 0;              // Contact: multiplied component f_col
    std::vector<int> beta;    // Left: exponent of the target monomial y^beta
};

struct TangentSpace {
    Subspace space;
    DerivationBasis ders;
    std::vector<TangentGenerator> gens;
};

TangentSpace tangent_space(const GermMap& f, GroupSpec spec, bool track_witness = false);
TangentSpace tangent_space(const UnfoldingMap& F, GroupSpec spec, bool track_witness = false);

struct T1Data {
    QuotientData q;
    // A and L only: same dimension after raising D twice (weaker evidence than a certificate).
    std::optional<bool> stable_under_increments;
};

T1Data t1(const GermMap& f, GroupSpec spec);
// Least N <= D-1 with every monomial vector of degree N inside T_G f + m^{N+1}; R and K only.
std::optional<int> finiteness_certificate(const GermMap& f, GroupSpec spec);
std::optional<int> finiteness_certificate(const Subspace& module_space);

struct TjurinaResult {
    int tau = 0;
    bool certified = false;
    std::optional<int> certificate_degree;
};
TjurinaResult tjurina(const GermMap& f);

// v = cobasis of m*T1_K f; checks span{(y^beta o f) v_j} + T_A f covers the jet module.
bool ta_vs_tk_check(const GermMap& f);

// Applies (y^beta o comps), the monomial in target variables evaluated on the map.
Jet target_monomial(const std::vector<Jet>& comps, const std::vector<int>& beta);

}  // namespace singkit

#endif
