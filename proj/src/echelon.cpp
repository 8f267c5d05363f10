#include "singkit/echelon.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace singkit {

SparseVec sparse_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            Scalar v = c * j->second;
            if (!v.is_zero()) out.emplace_back(j->first, std::move(v));
            ++j;
        } else {
            Scalar v = i->second + c * j->second;
            if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
    if (b.empty()) return a;
    return sparse_axpy(a, Scalar::one(b.front().second.field()), b);
}

SparseVec sparse_scale(const SparseVec& a, const Scalar& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    out.reserve(a.size());
    for (const auto& [k, v] : a) out.emplace_back(k, v * c);
    return out;
}

Echelon::Echelon(FieldSpec field, int dim, bool track_witness)
    : field_(field), dim_(dim), track_(track_witness), pivot_row_(dim, -1) {}

Reduction Echelon::reduce(const SparseVec& v) const {
    std::map<int, Scalar> work;
    for (const auto& [c, a] : v) {
        if (c < 0 || c >= dim_) throw std::out_of_range("coordinate outside the ambient block");
        work.emplace(c, a);
    }
    Reduction out;
    std::map<int, Scalar> wit;
    while (!work.empty()) {
        auto it = work.begin();
        int c = it->first;
        Scalar a = std::move(it->second);
        work.erase(it);
        if (a.is_zero()) continue;
        int r = pivot_row_[c];
        if (r < 0) {
            out.residue.emplace_back(c, std::move(a));
            continue;
        }
        for (const auto& [cc, val] : rows_[r]) {
            if (cc == c) continue;
            auto [pos, fresh] = work.try_emplace(cc, field_, 0);
            pos->second -= a * val;
        }
        if (track_) {
            for (const auto& [g, val] : combos_[r]) {
                auto [pos, fresh] = wit.try_emplace(g, field_, 0);
                pos->second += a * val;
            }
        }
    }
    for (auto& [g, val] : wit)
        if (!val.is_zero()) out.witness.emplace_back(g, std::move(val));
    return out;
}

bool Echelon::insert(const SparseVec& v, SparseVec* relation) {
    int id = generators_++;
    Reduction red = reduce(v);
    SparseVec combo;
    if (track_) {
        combo = sparse_scale(red.witness, Scalar(field_, -1));
        combo = sparse_add(combo, SparseVec{{id, Scalar::one(field_)}});
    }
    if (red.residue.empty()) {
        if (relation) *relation = std::move(combo);
        return false;
    }
    Scalar inv = red.residue.front().second.inverse();
    pivot_row_[red.residue.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(sparse_scale(red.residue, inv));
    combos_.push_back(track_ ? sparse_scale(combo, inv) : SparseVec{});
    return true;
}

std::vector<int> Echelon::pivots() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.front().first);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SparseVec> Echelon::rref() const {
    std::vector<int> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rows_[a].front().first > rows_[b].front().first; });
    std::vector<SparseVec> reduced(rows_.size());
    for (int r : order) {
        SparseVec row = rows_[r];
        for (;;) {
            auto it = std::find_if(row.begin() + 1, row.end(), [&](const auto& e) { return pivot_row_[e.first] >= 0; });
            if (it == row.end()) break;
            Scalar a = it->second;
            row = sparse_axpy(row, -a, reduced[pivot_row_[it->first]]);
        }
        reduced[r] = std::move(row);
    }
    std::sort(reduced.begin(), reduced.end(), [](const SparseVec& a, const SparseVec& b) { return a.front().first < b.front().first; });
    return reduced;
}

}  // namespace singkit
