#include "singkit/linsub.hpp"

#include <algorithm>
#include <stdexcept>

namespace singkit {

SparseVec to_vec(const std::vector<Jet>& comps) {
    int p = static_cast<int>(comps.size());
    SparseVec out;
    for (int j = 0; j < p; ++j)
        for (const auto& [idx, c] : comps[j].terms()) out.emplace_back(idx * p + j, c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

SparseVec to_vec(const Jet& j) { return j.terms(); }

std::vector<Jet> from_vec(const RingPtr& ring, int p, const SparseVec& v) {
    std::vector<SparseVec> parts(p);
    for (const auto& [c, a] : v) parts[c % p].emplace_back(c / p, a);
    std::vector<Jet> out;
    for (auto& part : parts) out.push_back(Jet::from_terms(ring, part));
    return out;
}

SparseVec scale_vec(const RingPtr& ring, int p, const Jet& c, const SparseVec& v) {
    auto comps = from_vec(ring, p, v);
    for (auto& j : comps) j = c * j;
    return to_vec(comps);
}

std::string coord_str(const RingPtr& ring, int p, const CoordIndex& c) {
    std::string m = ring->monomial_str(c.monomial);
    if (p == 1) return m;
    std::string e = "e" + std::to_string(c.component + 1);
    return m == "1" ? e : m + "*" + e;
}

std::string vec_str(const RingPtr& ring, int p, const SparseVec& v) {
    auto comps = from_vec(ring, p, v);
    if (p == 1) return comps[0].str();
    std::string s = "(";
    for (int j = 0; j < p; ++j) s += (j ? ", " : "") + comps[j].str();
    return s + ")";
}

Subspace::Subspace(RingPtr ring, int p, bool track_witness)
    : ring_(std::move(ring)), p_(p), ech_(ring_->field(), ring_->size() * p, track_witness) {
    if (p < 1) throw std::invalid_argument("module rank must be positive");
}

Subspace Subspace::span(RingPtr ring, int p, const std::vector<SparseVec>& vectors, bool track_witness) {
    Subspace s(std::move(ring), p, track_witness);
    for (const auto& v : vectors) s.add(v);
    return s;
}

Subspace Subspace::full(RingPtr ring, int p) {
    Subspace s(ring, p, false);
    Scalar one = Scalar::one(ring->field());
    for (int c = 0; c < s.ambient_dim(); ++c)
        if (ring->is_standard(c / p)) s.add(SparseVec{{c, one}});
    return s;
}

Membership Subspace::member(const SparseVec& v) const {
    Reduction r = ech_.reduce(v);
    Membership m;
    m.member = r.residue.empty();
    m.residue = std::move(r.residue);
    m.witness = std::move(r.witness);
    return m;
}

bool Subspace::contains(const Subspace& o) const {
    if (!ring_->same_as(*o.ring_) || p_ != o.p_) throw std::invalid_argument("subspaces in different ambients");
    for (const auto& b : o.basis())
        if (!contains(b)) return false;
    return true;
}

QuotientData quotient(const Subspace& s, int min_degree, int max_degree) {
    QuotientData q;
    const Echelon& e = s.echelon();
    for (int c = 0; c < s.ambient_dim(); ++c) {
        int deg = s.coord_degree(c);
        if (deg < min_degree || deg > max_degree || e.is_pivot(c) || !s.ring()->is_standard(c / s.p())) continue;
        q.cobasis.push_back(s.index(c));
        if (static_cast<int>(q.hilbert.size()) <= deg) q.hilbert.resize(deg + 1, 0);
        ++q.hilbert[deg];
    }
    q.dimension = static_cast<int>(q.cobasis.size());
    return q;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (!a.ring()->same_as(*b.ring()) || a.p() != b.p()) throw std::invalid_argument("subspaces in different ambients");
    Subspace out(a.ring(), a.p());
    for (const auto& v : a.basis()) out.add(v);
    for (const auto& v : b.basis()) out.add(v);
    return out;
}

Subspace subspace_multiply(const Subspace& s, const Subspace& ideal) {
    if (!s.ring()->same_as(*ideal.ring()) || ideal.p() != 1) throw std::invalid_argument("ideal must be a scalar subspace of the same ring");
    Subspace out(s.ring(), s.p());
    auto sb = s.basis();
    for (const auto& iv : ideal.basis()) {
        Jet c = Jet::from_terms(s.ring(), iv);
        for (const auto& v : sb) {
            SparseVec prod = scale_vec(s.ring(), s.p(), c, v);
            if (!prod.empty()) out.add(prod);
        }
    }
    return out;
}

Subspace ideal_from_generators(const RingPtr& ring, const std::vector<Jet>& gens) {
    Subspace out(ring, 1);
    for (const Jet& g : gens)
        for (int m = 0; m < ring->size(); ++m) {
            Jet prod = g.mul_monomial(m);
            if (!prod.is_zero()) out.add(prod.terms());
        }
    return out;
}

Subspace maximal_ideal_power(const RingPtr& ring, int d) { return degree_shell(ring, 1, d); }

Subspace degree_shell(const RingPtr& ring, int p, int d) {
    Subspace out(ring, p);
    for (int m = 0; m < ring->size(); ++m) {
        if (ring->x_degree(m) < d) continue;
        Jet mono = Jet::monomial(ring, m, Scalar::one(ring->field()));
        for (int j = 0; j < p; ++j) {
            SparseVec v;
            for (const auto& [idx, c] : mono.terms()) v.emplace_back(out.coord(j, idx), c);
            if (!v.empty()) out.add(v);
        }
    }
    return out;
}

}  // namespace singkit
