#ifndef SINGKIT_JET_HPP
#define SINGKIT_JET_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "singkit/echelon.hpp"
#include "singkit/field.hpp"

namespace singkit {

class Jet;
class JetRing;
using RingPtr = std::shared_ptr<const JetRing>;

// Truncated local ring k[[x,t]] / (J + (x)^{D+1} + (t)^{T+1}). Monomials within
// the bounds are indexed in the fixed local order: total degree ascending, then
// larger exponent of the earlier variable first.
class JetRing : public std::enable_shared_from_this<JetRing> {
public:
    // quotient: generators of J, given in any ring whose variables are named here.
    static RingPtr make(FieldSpec field, std::vector<std::string> source_vars, std::vector<std::string> param_vars,
                        int degree_x, int degree_t = 0, const std::vector<Jet>& quotient = {});

    // Same source variables and J, with the given parameters and t-bound.
    RingPtr with_params(std::vector<std::string> param_vars, int degree_t) const;
    // Same variables and J, different bounds.
    RingPtr with_bounds(int degree_x, int degree_t) const;

    const FieldSpec& field() const { return field_; }
    int nvars() const { return static_cast<int>(names_.size()); }
    int n_source() const { return n_source_; }
    int n_params() const { return nvars() - n_source_; }
    bool is_param(int v) const { return v >= n_source_; }
    const std::vector<std::string>& var_names() const { return names_; }
    std::vector<std::string> source_names() const;
    std::vector<std::string> param_names() const;
    int var_index(const std::string& name) const;
    int degree_x() const { return D_; }
    int degree_t() const { return T_; }

    int size() const { return static_cast<int>(degree_.size()); }
    const int* exponents(int idx) const { return &exps_[static_cast<std::size_t>(idx) * nvars()]; }
    std::vector<int> exponent_vector(int idx) const;
    int degree(int idx) const { return degree_[idx]; }
    int x_degree(int idx) const { return xdeg_[idx]; }
    int t_degree(int idx) const { return degree_[idx] - xdeg_[idx]; }
    // -1 when outside the truncation bounds.
    int index_of(const std::vector<int>& exps) const;
    int mul_index(int a, int b) const;
    int var_monomial(int v) const { return var_mono_[v]; }
    std::string monomial_str(int idx) const;

    bool has_quotient() const { return !quotient_terms_.empty(); }
    // Raw (unreduced) generator terms of J.
    const std::vector<SparseVec>& quotient_terms() const { return quotient_terms_; }
    std::vector<std::string> quotient_strs() const;
    // Genuine group elements can be built from jets: char 0 or J = 0.
    bool jet0_guaranteed() const { return field_.is_rational() || !has_quotient(); }
    const Echelon& ideal() const { return ideal_; }
    SparseVec reduce(const SparseVec& terms) const;
    // Monomial is not a leading monomial of J, i.e. part of the canonical basis.
    bool is_standard(int idx) const { return !has_quotient() || !ideal_.is_pivot(idx); }

    bool same_as(const JetRing& o) const;

private:
    friend class RingBuilder;
    JetRing() = default;
    void build_table();
    void build_ideal();
    std::uint64_t key_of(const int* exps) const;
    int lookup(std::uint64_t key) const;

    FieldSpec field_;
    std::vector<std::string> names_;
    int n_source_ = 0;
    int D_ = 0;
    int T_ = 0;
    std::vector<int> exps_;
    std::vector<int> degree_;
    std::vector<int> xdeg_;
    std::vector<std::uint64_t> key_;
    std::vector<std::uint64_t> stride_;
    std::vector<int> dense_lookup_;
    std::unordered_map<std::uint64_t, int> sparse_lookup_;
    std::vector<int> var_mono_;
    std::vector<SparseVec> quotient_terms_;
    Echelon ideal_;
};

// Element of a JetRing in canonical form.
class Jet {
public:
    Jet() = default;
    explicit Jet(RingPtr ring) : ring_(std::move(ring)) {}
    static Jet from_terms(RingPtr ring, const SparseVec& terms);
    static Jet constant(RingPtr ring, const Scalar& c);
    static Jet constant(RingPtr ring, long long c);
    static Jet variable(RingPtr ring, int v);
    static Jet variable(RingPtr ring, const std::string& name);
    static Jet monomial(RingPtr ring, int idx, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    const SparseVec& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(int idx) const;
    Scalar constant_term() const { return coeff(0); }
    // Minimum x-degree of a nonzero term; empty for the zero jet.
    std::optional<int> ord() const;

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator-() const;
    Jet operator*(const Jet& o) const;
    Jet operator*(const Scalar& c) const;
    friend Jet operator*(const Scalar& c, const Jet& j) { return j * c; }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet mul_monomial(int idx) const;
    bool operator==(const Jet& o) const;
    bool operator!=(const Jet& o) const { return !(*this == o); }

    std::string str() const;

private:
    RingPtr ring_;
    SparseVec terms_;
};

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_pow(const Jet& a, int e);
Jet jet_partial(const Jet& f, int var);
Jet jet_partial(const Jet& f, const std::string& var);
// Replaces each assigned variable by its image. Images must have zero constant term.
Jet jet_substitute(const Jet& f, const std::map<int, Jet>& assignment);
// Moves a jet into another ring by variable names; variables absent from the
// target are set to 0 and terms outside the target bounds are dropped.
Jet transfer(const Jet& f, const RingPtr& target);
// Derivative of raw terms (no reduction), used on quotient generators.
SparseVec raw_partial(const JetRing& ring, const SparseVec& terms, int var);
SparseVec raw_mul_monomial(const JetRing& ring, const SparseVec& terms, int idx);

void require_same_ring(const RingPtr& a, const RingPtr& b);

// Map germ f: X -> (k^p, o); every component has zero constant term.
struct GermMap {
    RingPtr ring;
    std::vector<Jet> comps;

    GermMap() = default;
    GermMap(RingPtr ring, std::vector<Jet> comps);
    int p() const { return static_cast<int>(comps.size()); }
    std::optional<int> ord() const;
    bool operator==(const GermMap& o) const;
    std::string str() const;
};

// Unfolding F(x,t) = (f_t(x), t) of a base germ f_o.
struct UnfoldingMap {
    GermMap base;
    RingPtr family;
    std::vector<Jet> comps;

    UnfoldingMap() = default;
    UnfoldingMap(GermMap base, std::vector<Jet> comps);
    int p() const { return static_cast<int>(comps.size()); }
    int params() const { return family->n_params(); }
    static UnfoldingMap constant(const GermMap& base, const std::vector<std::string>& params, int degree_t);
    std::string str() const;
};

}  // namespace singkit

#endif
