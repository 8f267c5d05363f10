#ifndef SINGKIT_ECHELON_HPP
#define SINGKIT_ECHELON_HPP

#include <utility>
#include <vector>

#include "singkit/field.hpp"

namespace singkit {

// Sparse vector: (coordinate, coefficient) pairs sorted by coordinate, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Scalar& c);
// a + c*b
SparseVec sparse_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);

struct Reduction {
    SparseVec residue;
    // v - residue = sum over generator ids g of witness[g] * generator_g
    SparseVec witness;
};

// Echelon basis of a subspace of k^dim. The pivot of a row is its smallest
// coordinate; rows are reduced against earlier rows only, so a vector lying in
// the span of the first k generators is always expressed through them.
class Echelon {
public:
    Echelon() = default;
    Echelon(FieldSpec field, int dim, bool track_witness);

    // Appends a generator. Returns true when the rank grew. When the generator
    // is dependent and witnesses are tracked, *relation receives coefficients
    // over generator ids with sum relation[g] * generator_g = 0.
    bool insert(const SparseVec& v, SparseVec* relation = nullptr);
    Reduction reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).residue.empty(); }

    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    int generator_count() const { return generators_; }
    bool tracks_witness() const { return track_; }
    const FieldSpec& field() const { return field_; }
    bool is_pivot(int c) const { return pivot_row_[c] >= 0; }
    std::vector<int> pivots() const;
    // Fully reduced echelon basis (pivot coefficient 1, pivot columns cleared), by pivot.
    std::vector<SparseVec> rref() const;

private:
    FieldSpec field_;
    int dim_ = 0;
    bool track_ = false;
    int generators_ = 0;
    std::vector<int> pivot_row_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> combos_;
};

}  // namespace singkit

#endif
