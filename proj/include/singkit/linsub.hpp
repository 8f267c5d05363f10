#ifndef SINGKIT_LINSUB_HPP
#define SINGKIT_LINSUB_HPP

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "singkit/echelon.hpp"
#include "singkit/jet.hpp"

namespace singkit {

// Coordinate of the free module R^p: monomial times e_component (component 0-based).
// Integer coordinates are monomial * p + component, so ordering follows the
// monomial order first and the component second.
struct CoordIndex {
    int component = 0;
    int monomial = 0;
    friend bool operator==(const CoordIndex& a, const CoordIndex& b) {
        return a.component == b.component && a.monomial == b.monomial;
    }
};

SparseVec to_vec(const std::vector<Jet>& comps);
SparseVec to_vec(const Jet& j);
std::vector<Jet> from_vec(const RingPtr& ring, int p, const SparseVec& v);
// Componentwise product of a ring element with a module vector.
SparseVec scale_vec(const RingPtr& ring, int p, const Jet& c, const SparseVec& v);
std::string coord_str(const RingPtr& ring, int p, const CoordIndex& c);
std::string vec_str(const RingPtr& ring, int p, const SparseVec& v);

struct Membership {
    bool member = false;
    SparseVec residue;
    // Coefficients over the generator ids in insertion order.
    SparseVec witness;
};

// Subspace of the jet module R^p held as an echelon basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(RingPtr ring, int p, bool track_witness = false);
    static Subspace span(RingPtr ring, int p, const std::vector<SparseVec>& vectors, bool track_witness = false);
    static Subspace full(RingPtr ring, int p);

    // Adds a generator (gets the next generator id). Returns true if the rank grew.
    bool add(const SparseVec& v) { return ech_.insert(v); }
    bool add(const SparseVec& v, SparseVec* relation) { return ech_.insert(v, relation); }

    const RingPtr& ring() const { return ring_; }
    int p() const { return p_; }
    int ambient_dim() const { return ring_->size() * p_; }
    int rank() const { return ech_.rank(); }
    int coord(int component, int monomial) const { return monomial * p_ + component; }
    CoordIndex index(int coord) const { return {coord % p_, coord / p_}; }
    int coord_degree(int coord) const { return ring_->x_degree(coord / p_); }

    Membership member(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return ech_.contains(v); }
    bool contains(const Subspace& o) const;
    bool equals(const Subspace& o) const { return rank() == o.rank() && contains(o); }
    // Fully reduced echelon basis ordered by pivot.
    std::vector<SparseVec> basis() const { return ech_.rref(); }
    const Echelon& echelon() const { return ech_; }

private:
    RingPtr ring_;
    int p_ = 1;
    Echelon ech_;
};

struct QuotientData {
    int dimension = 0;
    std::vector<CoordIndex> cobasis;
    std::vector<int> hilbert;
    bool certified = false;
    std::optional<int> certificate_degree;
};

// Quotient of the block of coordinates with x-degree in [min_degree, max_degree] by S.
QuotientData quotient(const Subspace& s, int min_degree = 0, int max_degree = INT_MAX);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
// span{ i * s : i basis of the ideal, s basis of S }, truncated.
Subspace subspace_multiply(const Subspace& s, const Subspace& ideal);

// Ideal subspaces of the scalar ring (p = 1).
Subspace ideal_from_generators(const RingPtr& ring, const std::vector<Jet>& gens);
Subspace maximal_ideal_power(const RingPtr& ring, int d);
// Submodule of R^p spanned by all monomial vectors of x-degree >= d.
Subspace degree_shell(const RingPtr& ring, int p, int d);

}  // namespace singkit

#endif
