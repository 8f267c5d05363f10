#ifndef SINGKIT_STABILITY_HPP
#define SINGKIT_STABILITY_HPP

#include <map>
#include <string>
#include <vector>

#include "singkit/tangent.hpp"

namespace singkit {

// Dimension of the constant-term part of T_R F (rank of the differential at the origin).
int rank(const GermMap& F);
// dim Der_X|_o: values at the origin of the derivations of the ring.
int der_values_dim(const RingPtr& ring);
// T_G f = T_{G^(0)} f (A: T_A f = T_{R^(0)} f + T_L f) at jet level; characteristic 0 only.
bool factor_criteria(const GermMap& f, GroupSpec spec);

// F ~ (f(x~) + h(x~, u), u). The u-coordinates reuse the names of the pivot source
// variables; x~ are the remaining source variables.
struct PreliminaryForm {
    GermMap input;
    int rank = 0;
    std::vector<int> pivot_rows;   // components of F that become the u-coordinates
    std::vector<int> core_vars;    // x~
    std::vector<int> param_vars;   // u, one per pivot row
    std::vector<std::vector<Scalar>> target_matrix;  // G = M F: core rows first, then pivot rows
    std::map<int, Jet> source_change;                // x_param -> w(x~, u)
    std::vector<Jet> target_correction;              // c_k(u), removed by y_k -> y_k - c_k(y_u)
    GermMap core;                                    // f over x~ only (no components when p = rank)
    std::vector<Jet> correction;                     // h in the input ring, one per core row

    // (f + h, u) in the input ring.
    std::vector<Jet> normal() const;
    // Undoes the transformations on normal(); equals the input at jet level.
    std::vector<Jet> replay() const;
};

PreliminaryForm preliminary_form(const GermMap& F);

struct StabilityVerdict {
    enum Kind { CertifiedStable, JetLevelStable, NotStable } kind = NotStable;
    std::vector<CoordIndex> residue;  // NotStable: monomial vectors below degree D missed by T_A F
    std::string reason;               // JetLevelStable: why the genotype route did not certify
};

std::string kind_name(StabilityVerdict::Kind k);
StabilityVerdict inf_stable(const GermMap& F);

struct GenotypeReport {
    PreliminaryForm form;
    GermMap genotype;
    std::vector<SparseVec> generators;           // cobasis of (x) T1_K f
    std::vector<std::string> labels;
    bool certified = false;                      // u-linear classes of h span (x) T1_K f
    std::vector<std::vector<Scalar>> coefficients;  // class of dh/du_l over the generators
};

GenotypeReport genotype(const GermMap& F);
// (f + sum t_j v_j, t) as a map germ in x and t.
GermMap stable_unfolding(const GermMap& f);

struct Fingerprint {
    int tau = 0;
    std::vector<int> hilbert;
    std::optional<int> ord;
    int source_dim = 0;
    int target_dim = 0;
};

Fingerprint k_fingerprint(const GermMap& f);

struct Comparison {
    bool equivalent_fingerprints = false;
    std::string reason;  // set when distinguished
};

Comparison compare_stable(const GermMap& F1, const GermMap& F2);

}  // namespace singkit

#endif
