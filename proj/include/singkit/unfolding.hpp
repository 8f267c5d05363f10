#ifndef SINGKIT_UNFOLDING_HPP
#define SINGKIT_UNFOLDING_HPP

#include <string>
#include <vector>

#include "singkit/tangent.hpp"

namespace singkit {

// Infinitesimal group data read off a membership witness.
struct TangentWitness {
    struct TargetTerm {
        std::vector<int> beta;  // exponent of y^beta
        int row = 0;
        Jet coeff;              // constant in the base ring, a t-polynomial in a family ring
    };
    std::vector<Jet> source;                // xi = sum source[i] d/dx_i (empty: no right part)
    std::vector<std::vector<Jet>> contact;  // U with (U f)_row = sum_col U[row][col] f_col (empty: none)
    std::vector<TargetTerm> target;         // h(y) = sum coeff * y^beta e_row

    bool is_zero() const;
    std::string str() const;
};

TangentWitness witness_data(const TangentSpace& ts, const SparseVec& witness);

// g = (source part, contact part, target part) scaled by t^gamma:
//   x_i -> x_i - t^gamma * source_i, or exp(-t^gamma xi) when exponential is set;
//   f -> (I - t^gamma U) f;  f -> f - t^gamma h(f).
struct GroupElement {
    int t_monomial = 0;  // index in the family ring
    bool exponential = false;
    TangentWitness w;    // jets in the family ring

    std::string str(const RingPtr& family) const;
};

std::vector<Jet> apply_element(const GroupElement& g, const std::vector<Jet>& comps);
std::vector<Jet> replay(const std::vector<Jet>& comps, const std::vector<GroupElement>& log);

struct ParamTriviality {
    std::string param;
    bool member = false;
    // Also a member of the level-0 tangent space, i.e. the witness lies in (x) * T.
    bool within_level0 = false;
    SparseVec residue;  // family-module coordinates
    TangentWitness witness;
};

struct TrivialityReport {
    bool trivial = true;
    std::vector<ParamTriviality> params;
};

// Membership of each d/dt_i f_t in T_{G_t} f_t, modulo the top x- and t-degree shells
// where derivatives of truncated jets are unknown.
TrivialityReport inf_trivial(const UnfoldingMap& F, GroupSpec spec);

struct PreNormalForm {
    GermMap base;
    RingPtr family;
    GroupSpec spec;
    std::vector<SparseVec> cobasis;      // base-module vectors v_j
    std::vector<std::string> labels;     // printable v_j
    std::vector<Jet> coefficients;       // a_j(t) in the family ring
    std::vector<Jet> reduced;            // the unfolding after the whole log
    int t_max = 0;
    bool complete = false;               // every t-degree up to the family bound was reduced
    std::vector<GroupElement> log;

    bool trivial() const;
    // f_o + sum a_j(t) v_j in the family ring.
    std::vector<Jet> normal_form() const;
};

PreNormalForm prenormal(const UnfoldingMap& F, GroupSpec spec, int t_max);

struct SeparabilityVerdict {
    enum Kind { TrivialUpTo, SeparableObstruction, Inseparable } kind = TrivialUpTo;
    int degree = 0;       // t-degree of the first obstruction, or T_max
    SparseVec cls;        // base-module class of the obstruction
    std::string class_str;
    PreNormalForm form;
};

std::string kind_name(SeparabilityVerdict::Kind k);
SeparabilityVerdict separability(const UnfoldingMap& F, GroupSpec spec, int t_max);

struct VersalityReport {
    bool versal = false;
    bool certified = false;                     // T1 of the base is certified finite
    QuotientData t1;
    std::vector<std::vector<Scalar>> classes;   // row per parameter, column per cobasis vector
};

VersalityReport inf_versal(const UnfoldingMap& F, GroupSpec spec);
// (f + sum t_j v_j, t) over the deterministic cobasis of T1_G f.
UnfoldingMap versal_construct(const GermMap& f, GroupSpec spec, int degree_t = 1);

struct TransversalData {
    QuotientData q;
    std::vector<SparseVec> reps;  // elements of (x)(f)R^p independent modulo T_A f
};

TransversalData k_to_a_transversal(const GermMap& f);
PreNormalForm a_prenormal_of_k_trivial(const UnfoldingMap& F, int t_max);

}  // namespace singkit

#endif
