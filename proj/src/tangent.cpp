#include "singkit/tangent.hpp"

#include <algorithm>
#include <functional>

namespace singkit {

std::string group_name(Group g) {
    switch (g) {
        case Group::R: return "R";
        case Group::K: return "K";
        case Group::A: return "A";
        case Group::L: return "L";
    }
    return "?";
}

Group parse_group(const std::string& name) {
    if (name == "R") return Group::R;
    if (name == "K") return Group::K;
    if (name == "A") return Group::A;
    if (name == "L") return Group::L;
    throw std::invalid_argument("unknown group '" + name + "'");
}

Jet Derivation::apply(const Jet& f) const {
    Jet out(f.ring());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) out += coeffs[i] * jet_partial(f, static_cast<int>(i));
    return out;
}

DerivationBasis derivations(const RingPtr& ring, int level) {
    DerivationBasis basis;
    basis.ring = ring;
    basis.level = level;
    int n = ring->n_source();
    Scalar one = Scalar::one(ring->field());
    if (!ring->has_quotient()) {
        for (int m = 0; m < ring->size(); ++m) {
            if (ring->x_degree(m) < level + 1) continue;
            for (int i = 0; i < n; ++i) {
                Derivation d;
                d.coeffs.assign(n, Jet(ring));
                d.coeffs[i] = Jet::monomial(ring, m, one);
                basis.generators.push_back(std::move(d));
            }
        }
        return basis;
    }
    basis.solved = true;
    const auto& gens = ring->quotient_terms();
    int A = static_cast<int>(gens.size());
    std::vector<std::vector<SparseVec>> partials(A, std::vector<SparseVec>(n));
    for (int a = 0; a < A; ++a)
        for (int i = 0; i < n; ++i) partials[a][i] = raw_partial(*ring, gens[a], i);
    Echelon ech(ring->field(), ring->size() * A, true);
    std::vector<std::pair<int, int>> domain;
    for (int m = 0; m < ring->size(); ++m) {
        if (ring->x_degree(m) < level + 1 || !ring->is_standard(m)) continue;
        for (int i = 0; i < n; ++i) {
            SparseVec image;
            for (int a = 0; a < A; ++a) {
                SparseVec part = ring->reduce(raw_mul_monomial(*ring, partials[a][i], m));
                for (const auto& [idx, c] : part)
                    if (ring->x_degree(idx) <= ring->degree_x() - 1) image.emplace_back(idx * A + a, c);
            }
            std::sort(image.begin(), image.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
            domain.emplace_back(m, i);
            SparseVec relation;
            if (ech.insert(image, &relation)) continue;
            Derivation d;
            d.coeffs.assign(n, Jet(ring));
            for (const auto& [g, c] : relation) {
                auto [mm, ii] = domain[g];
                d.coeffs[ii] += Jet::monomial(ring, mm, c);
            }
            basis.generators.push_back(std::move(d));
        }
    }
    return basis;
}

Jet target_monomial(const std::vector<Jet>& comps, const std::vector<int>& beta) {
    Jet out = Jet::constant(comps.front().ring(), 1);
    for (std::size_t k = 0; k < beta.size(); ++k)
        if (beta[k]) out = out * jet_pow(comps[k], beta[k]);
    return out;
}

namespace {

bool uses_right(Group g) { return g != Group::L; }
bool uses_contact(Group g) { return g == Group::K; }
bool uses_left(Group g) { return g == Group::A || g == Group::L; }

// All (beta, comps^beta) with min_size <= |beta| <= max_size and nonzero value.
std::vector<std::pair<std::vector<int>, Jet>> target_powers(const std::vector<Jet>& comps, int min_size, int max_size) {
    int p = static_cast<int>(comps.size());
    std::vector<std::pair<std::vector<int>, Jet>> out;
    std::vector<int> beta(p, 0);
    std::function<void(int, int, const Jet&)> rec = [&](int k, int size, const Jet& value) {
        if (k == p) {
            if (size >= min_size) out.emplace_back(beta, value);
            return;
        }
        Jet cur = value;
        for (int e = 0; size + e <= max_size; ++e) {
            if (e > 0) {
                cur = cur * comps[k];
                if (cur.is_zero()) break;
            }
            beta[k] = e;
            rec(k + 1, size + e, cur);
        }
        beta[k] = 0;
    };
    rec(0, 0, Jet::constant(comps.front().ring(), 1));
    return out;
}

SparseVec place(const Jet& j, int row, int p) {
    SparseVec v;
    for (const auto& [idx, c] : j.terms()) v.emplace_back(idx * p + row, c);
    return v;
}

TangentSpace build_tangent(const RingPtr& ring, const std::vector<Jet>& comps, GroupSpec spec, bool track) {
    if (spec.level < -1) throw std::invalid_argument("filtration level must be at least -1");
    int p = static_cast<int>(comps.size());
    TangentSpace ts{Subspace(ring, p, track), DerivationBasis{ring, spec.level, {}, false}, {}};
    struct Pending {
        SparseVec v;
        TangentGenerator g;
    };
    std::vector<Pending> contact, left_main, left_const, right_main, right_const;

    if (uses_right(spec.group)) {
        ts.ders = derivations(ring, spec.level);
        int n = ring->n_source();
        std::vector<std::vector<Jet>> partial(n);
        for (int i = 0; i < n; ++i)
            for (const Jet& c : comps) partial[i].push_back(jet_partial(c, i));
        for (int d = 0; d < static_cast<int>(ts.ders.generators.size()); ++d) {
            const Derivation& xi = ts.ders.generators[d];
            std::vector<Jet> image(p, Jet(ring));
            bool vanishes_at_origin = true;
            for (int i = 0; i < n; ++i) {
                const Jet& c = xi.coeffs[i];
                if (c.is_zero()) continue;
                if (!c.constant_term().is_zero()) vanishes_at_origin = false;
                for (int k = 0; k < p; ++k) {
                    if (c.terms().size() == 1 && c.terms().front().second.is_one())
                        image[k] += partial[i][k].mul_monomial(c.terms().front().first);
                    else
                        image[k] += c * partial[i][k];
                }
            }
            TangentGenerator g;
            g.kind = TangentGenerator::Right;
            g.derivation = d;
            (vanishes_at_origin ? right_main : right_const).push_back({to_vec(image), g});
        }
    }
    if (uses_contact(spec.group)) {
        int min_deg = std::max(0, spec.level - 1);
        for (int m = 0; m < ring->size(); ++m) {
            if (ring->x_degree(m) < min_deg || !ring->is_standard(m)) continue;
            for (int col = 0; col < p; ++col) {
                Jet prod = comps[col].mul_monomial(m);
                if (prod.is_zero()) continue;
                for (int row = 0; row < p; ++row) {
                    TangentGenerator g;
                    g.kind = TangentGenerator::Contact;
                    g.monomial = m;
                    g.row = row;
                    g.col = col;
                    contact.push_back({place(prod, row, p), g});
                }
            }
        }
    }
    if (uses_left(spec.group)) {
        int min_size = spec.level >= 0 ? spec.level + 1 : 0;
        int max_size = ring->degree_x() + (ring->n_params() ? ring->degree_t() : 0);
        auto powers = target_powers(comps, min_size, max_size);
        for (int gamma = 0; gamma < ring->size(); ++gamma) {
            if (ring->x_degree(gamma) != 0) continue;
            for (const auto& [beta, value] : powers) {
                Jet shifted = value.mul_monomial(gamma);
                if (shifted.is_zero()) continue;
                int size = 0;
                for (int b : beta) size += b;
                for (int row = 0; row < p; ++row) {
                    TangentGenerator g;
                    g.kind = TangentGenerator::Left;
                    g.monomial = gamma;
                    g.row = row;
                    g.beta = beta;
                    (size > 0 ? left_main : left_const).push_back({place(shifted, row, p), g});
                }
            }
        }
    }
    for (auto* group : {&contact, &left_main, &right_main, &right_const, &left_const})
        for (auto& pend : *group) {
            if (pend.v.empty()) continue;
            ts.space.add(pend.v);
            ts.gens.push_back(std::move(pend.g));
        }
    return ts;
}

int standard_coord_count(const Subspace& s) {
    int count = 0;
    for (int c = 0; c < s.ambient_dim(); ++c)
        if (s.ring()->is_standard(c / s.p())) ++count;
    return count;
}

}  // namespace

TangentSpace tangent_space(const GermMap& f, GroupSpec spec, bool track_witness) {
    if (f.comps.empty()) throw std::invalid_argument("map without components");
    return build_tangent(f.ring, f.comps, spec, track_witness);
}

TangentSpace tangent_space(const UnfoldingMap& F, GroupSpec spec, bool track_witness) {
    return build_tangent(F.family, F.comps, spec, track_witness);
}

std::optional<int> finiteness_certificate(const Subspace& s) {
    const JetRing& ring = *s.ring();
    for (int N = 0; N <= ring.degree_x() - 1; ++N) {
        bool all = true;
        for (int c = 0; c < s.ambient_dim() && all; ++c) {
            if (s.coord_degree(c) != N || !ring.is_standard(c / s.p())) continue;
            if (!s.echelon().is_pivot(c)) all = false;
        }
        if (all) return N;
    }
    return std::nullopt;
}

std::optional<int> finiteness_certificate(const GermMap& f, GroupSpec spec) {
    if (spec.group != Group::R && spec.group != Group::K)
        throw Refusal("finiteness certificates need a module tangent space (groups R and K)");
    return finiteness_certificate(tangent_space(f, spec).space);
}

T1Data t1(const GermMap& f, GroupSpec spec) {
    T1Data out;
    TangentSpace ts = tangent_space(f, spec);
    out.q = quotient(ts.space);
    if (spec.group == Group::R || spec.group == Group::K) {
        out.q.certificate_degree = finiteness_certificate(ts.space);
        out.q.certified = out.q.certificate_degree.has_value() && !f.ring->has_quotient();
    } else {
        int D = f.ring->degree_x();
        bool stable = true;
        for (int extra = 1; extra <= 2 && stable; ++extra) {
            RingPtr bigger = f.ring->with_bounds(D + extra, f.ring->degree_t());
            std::vector<Jet> comps;
            for (const Jet& c : f.comps) comps.push_back(transfer(c, bigger));
            GermMap g(bigger, comps);
            stable = quotient(tangent_space(g, spec).space).dimension == out.q.dimension;
        }
        out.stable_under_increments = stable;
    }
    return out;
}

TjurinaResult tjurina(const GermMap& f) {
    T1Data d = t1(f, GroupSpec{Group::K, -1});
    return {d.q.dimension, d.q.certified, d.q.certificate_degree};
}

bool ta_vs_tk_check(const GermMap& f) {
    TangentSpace tk = tangent_space(f, GroupSpec{Group::K, -1});
    if (!finiteness_certificate(tk.space)) throw Refusal("no K-finiteness certificate");
    QuotientData mq = quotient(tk.space, 1);
    TangentSpace ta = tangent_space(f, GroupSpec{Group::A, -1});
    Subspace cover = ta.space;
    int p = f.p();
    auto powers = target_powers(f.comps, 0, f.ring->degree_x());
    Scalar one = Scalar::one(f.ring->field());
    for (const auto& v : mq.cobasis) {
        Jet mono = Jet::monomial(f.ring, v.monomial, one);
        for (const auto& [beta, value] : powers) {
            Jet prod = value * mono;
            if (!prod.is_zero()) cover.add(place(prod, v.component, p));
        }
    }
    return cover.rank() == standard_coord_count(cover);
}

}  // namespace singkit
