#include "singkit/unfolding.hpp"

#include <algorithm>
#include <map>

namespace singkit {

namespace {

std::string target_name(int row) { return "y" + std::to_string(row + 1); }

std::string beta_str(const std::vector<int>& beta) {
    std::string s;
    for (std::size_t k = 0; k < beta.size(); ++k) {
        if (!beta[k]) continue;
        if (!s.empty()) s += "*";
        s += target_name(static_cast<int>(k));
        if (beta[k] > 1) s += "^" + std::to_string(beta[k]);
    }
    return s.empty() ? "1" : s;
}

bool all_zero(const std::vector<Jet>& v) {
    return std::all_of(v.begin(), v.end(), [](const Jet& j) { return j.is_zero(); });
}

// Coordinates of a family ring against its base: x-part, t-part and the embedding.
struct Layout {
    RingPtr base, family;
    int p;
    std::vector<int> x_part, t_part, embed;

    Layout(RingPtr b, RingPtr fam, int rank) : base(std::move(b)), family(std::move(fam)), p(rank) {
        int n = family->n_source(), nv = family->nvars();
        x_part.resize(family->size());
        t_part.resize(family->size());
        for (int idx = 0; idx < family->size(); ++idx) {
            std::vector<int> e = family->exponent_vector(idx);
            std::vector<int> xe(e.begin(), e.begin() + n), te(nv, 0);
            for (int v = n; v < nv; ++v) te[v] = e[v];
            x_part[idx] = base->index_of(xe);
            t_part[idx] = family->index_of(te);
        }
        embed.resize(base->size());
        for (int idx = 0; idx < base->size(); ++idx) {
            std::vector<int> e = base->exponent_vector(idx);
            e.resize(nv, 0);
            embed[idx] = family->index_of(e);
        }
    }

    // t-monomial -> base-module vector of its coefficient, for all t-monomials of t-degree d.
    std::map<int, SparseVec> blocks(const std::vector<Jet>& comps, int d) const {
        std::map<int, SparseVec> out;
        for (int k = 0; k < p; ++k)
            for (const auto& [idx, c] : comps[k].terms())
                if (family->t_degree(idx) == d) out[t_part[idx]].emplace_back(x_part[idx] * p + k, c);
        for (auto& [g, v] : out)
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    std::vector<Jet> lift(const SparseVec& v) const {
        std::vector<Jet> out;
        for (const Jet& j : from_vec(base, p, v)) out.push_back(transfer(j, family));
        return out;
    }
};

TangentWitness lift_witness(const TangentWitness& w, const RingPtr& family) {
    TangentWitness out;
    for (const Jet& c : w.source) out.source.push_back(transfer(c, family));
    for (const auto& row : w.contact) {
        out.contact.emplace_back();
        for (const Jet& c : row) out.contact.back().push_back(transfer(c, family));
    }
    for (const auto& t : w.target) out.target.push_back({t.beta, t.row, transfer(t.coeff, family)});
    return out;
}

void add_shells(Subspace& s) {
    const JetRing& r = *s.ring();
    Scalar one = Scalar::one(r.field());
    for (int c = 0; c < s.ambient_dim(); ++c) {
        int m = c / s.p();
        if (!r.is_standard(m)) continue;
        bool top_x = r.x_degree(m) == r.degree_x();
        bool top_t = r.n_params() > 0 && r.t_degree(m) == r.degree_t();
        if (top_x || top_t) s.add(SparseVec{{c, one}});
    }
}

int standard_coords(const Subspace& s) {
    int count = 0;
    for (int c = 0; c < s.ambient_dim(); ++c)
        if (s.ring()->is_standard(c / s.p())) ++count;
    return count;
}

void require_jet0(const RingPtr& r) {
    if (!r->jet0_guaranteed()) throw Refusal(kJet0Refusal);
}

// Reduces t-degree blocks one t-monomial at a time against `space`, whose first
// generators are those of `ts`. Without reps the residues are the pre-normal
// classes; with reps they must vanish and the rep coefficients are the classes.
PreNormalForm reduce_blocks(const UnfoldingMap& F, GroupSpec spec, int t_max, const TangentSpace& ts,
                            const Subspace& space, const std::vector<SparseVec>* reps) {
    PreNormalForm out;
    out.base = F.base;
    out.family = F.family;
    out.spec = spec;
    out.t_max = std::min(t_max, F.family->degree_t());
    out.complete = F.params() == 0 || out.t_max >= F.family->degree_t();
    int p = F.p();
    Layout layout(F.base.ring, F.family, p);

    std::map<int, int> coord_slot;
    if (reps) {
        out.cobasis = *reps;
    } else {
        for (const auto& c : quotient(ts.space).cobasis) {
            int coord = ts.space.coord(c.component, c.monomial);
            coord_slot[coord] = static_cast<int>(out.cobasis.size());
            out.cobasis.push_back(SparseVec{{coord, Scalar::one(F.base.ring->field())}});
        }
    }
    for (const auto& v : out.cobasis) out.labels.push_back(vec_str(F.base.ring, p, v));
    out.coefficients.assign(out.cobasis.size(), Jet(F.family));

    int ngens = static_cast<int>(ts.gens.size());
    std::vector<Jet> cur = F.comps;
    for (int d = 1; d <= out.t_max; ++d) {
        for (const auto& [gamma, block] : layout.blocks(cur, d)) {
            Membership m = space.member(block);
            Jet tg = Jet::monomial(F.family, gamma, Scalar::one(F.family->field()));
            SparseVec group_part;
            for (const auto& [g, c] : m.witness) {
                if (g < ngens)
                    group_part.emplace_back(g, c);
                else if (reps)
                    out.coefficients[g - ngens] += tg * c;
            }
            if (reps && !m.member) throw Refusal("not K-trivial at jet level");
            for (const auto& [coord, c] : m.residue) out.coefficients[coord_slot.at(coord)] += tg * c;
            TangentWitness w = witness_data(ts, group_part);
            if (w.is_zero()) continue;
            GroupElement g{gamma, F.family->has_quotient() && !w.source.empty(), lift_witness(w, F.family)};
            cur = apply_element(g, cur);
            out.log.push_back(std::move(g));
        }
    }
    out.reduced = cur;
    return out;
}

}  // namespace

bool TangentWitness::is_zero() const { return source.empty() && contact.empty() && target.empty(); }

std::string TangentWitness::str() const {
    std::vector<std::string> parts;
    if (!source.empty()) {
        std::string s;
        const auto& names = source.front().ring()->var_names();
        for (std::size_t i = 0; i < source.size(); ++i) {
            if (source[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + source[i].str() + ")*d/d" + names[i];
        }
        parts.push_back("xi = " + s);
    }
    if (!contact.empty()) {
        std::string s = "U = [";
        for (std::size_t r = 0; r < contact.size(); ++r) {
            s += r ? ", [" : "[";
            for (std::size_t c = 0; c < contact[r].size(); ++c) s += (c ? ", " : "") + contact[r][c].str();
            s += "]";
        }
        parts.push_back(s + "]");
    }
    if (!target.empty()) {
        std::string s;
        for (const auto& t : target) {
            if (!s.empty()) s += " + ";
            s += "(" + t.coeff.str() + ")*" + beta_str(t.beta) + "*e" + std::to_string(t.row + 1);
        }
        parts.push_back("h = " + s);
    }
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
    return s;
}

TangentWitness witness_data(const TangentSpace& ts, const SparseVec& witness) {
    TangentWitness w;
    const RingPtr& ring = ts.space.ring();
    int p = ts.space.p();
    int n = ring->n_source();
    std::vector<Jet> source(n, Jet(ring));
    std::vector<std::vector<Jet>> contact(p, std::vector<Jet>(p, Jet(ring)));
    std::map<std::pair<std::vector<int>, int>, Jet> target;
    for (const auto& [g, c] : witness) {
        if (g >= static_cast<int>(ts.gens.size())) continue;
        const TangentGenerator& gen = ts.gens[g];
        switch (gen.kind) {
            case TangentGenerator::Right:
                for (int i = 0; i < n; ++i) source[i] += ts.ders.generators[gen.derivation].coeffs[i] * c;
                break;
            case TangentGenerator::Contact:
                contact[gen.row][gen.col] += Jet::monomial(ring, gen.monomial, c);
                break;
            case TangentGenerator::Left: {
                auto key = std::make_pair(gen.beta, gen.row);
                auto it = target.find(key);
                if (it == target.end()) it = target.emplace(key, Jet(ring)).first;
                it->second += Jet::monomial(ring, gen.monomial, c);
                break;
            }
        }
    }
    if (!all_zero(source)) w.source = std::move(source);
    if (std::any_of(contact.begin(), contact.end(), [](const auto& row) { return !all_zero(row); }))
        w.contact = std::move(contact);
    for (auto& [key, coeff] : target)
        if (!coeff.is_zero()) w.target.push_back({key.first, key.second, coeff});
    return w;
}

std::string GroupElement::str(const RingPtr& family) const {
    std::string tm = family->monomial_str(t_monomial);
    std::vector<std::string> parts;
    if (!w.source.empty()) {
        const auto& names = family->var_names();
        if (exponential) {
            TangentWitness xi;
            xi.source = w.source;
            parts.push_back("exp(-" + tm + "*xi), " + xi.str());
        } else {
            for (std::size_t i = 0; i < w.source.size(); ++i)
                if (!w.source[i].is_zero())
                    parts.push_back(names[i] + " -> " + names[i] + " - " + tm + "*(" + w.source[i].str() + ")");
        }
    }
    if (!w.contact.empty()) {
        TangentWitness u;
        u.contact = w.contact;
        parts.push_back("f -> (I - " + tm + "*U) f, " + u.str());
    }
    if (!w.target.empty()) {
        TangentWitness h;
        h.target = w.target;
        parts.push_back("f -> f - " + tm + "*h(f), " + h.str());
    }
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
    return s;
}

std::vector<Jet> apply_element(const GroupElement& g, const std::vector<Jet>& comps) {
    const RingPtr& ring = comps.front().ring();
    Scalar one = Scalar::one(ring->field());
    Jet tg = Jet::monomial(ring, g.t_monomial, one);
    std::vector<Jet> out = comps;
    if (!g.w.source.empty()) {
        if (g.exponential) {
            Derivation xi{g.w.source};
            for (Jet& f : out) {
                Jet term = f;
                for (int k = 1;; ++k) {
                    term = xi.apply(term) * tg * (-one / Scalar(ring->field(), k));
                    if (term.is_zero()) break;
                    f += term;
                }
            }
        } else {
            std::map<int, Jet> sub;
            for (std::size_t i = 0; i < g.w.source.size(); ++i)
                if (!g.w.source[i].is_zero())
                    sub.emplace(static_cast<int>(i), Jet::variable(ring, static_cast<int>(i)) - tg * g.w.source[i]);
            for (Jet& f : out) f = jet_substitute(f, sub);
        }
    }
    int p = static_cast<int>(out.size());
    if (!g.w.contact.empty()) {
        std::vector<Jet> next = out;
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c)
                if (!g.w.contact[r][c].is_zero()) next[r] -= tg * g.w.contact[r][c] * out[c];
        out = std::move(next);
    }
    if (!g.w.target.empty()) {
        std::vector<Jet> next = out;
        for (const auto& t : g.w.target) next[t.row] -= tg * t.coeff * target_monomial(out, t.beta);
        out = std::move(next);
    }
    return out;
}

std::vector<Jet> replay(const std::vector<Jet>& comps, const std::vector<GroupElement>& log) {
    std::vector<Jet> cur = comps;
    for (const auto& g : log) cur = apply_element(g, cur);
    return cur;
}

TrivialityReport inf_trivial(const UnfoldingMap& F, GroupSpec spec) {
    TangentSpace ts = tangent_space(F, spec, true);
    Subspace space = ts.space;
    add_shells(space);
    Subspace level0 = tangent_space(F, GroupSpec{spec.group, std::max(spec.level, 0)}).space;
    add_shells(level0);
    TrivialityReport report;
    const auto& names = F.family->var_names();
    for (int v = F.family->n_source(); v < F.family->nvars(); ++v) {
        std::vector<Jet> dt;
        for (const Jet& c : F.comps) dt.push_back(jet_partial(c, v));
        SparseVec vec = to_vec(dt);
        Membership m = space.member(vec);
        ParamTriviality pt;
        pt.param = names[v];
        pt.member = m.member;
        pt.within_level0 = m.member && level0.contains(vec);
        pt.residue = std::move(m.residue);
        pt.witness = witness_data(ts, m.witness);
        report.trivial = report.trivial && pt.member;
        report.params.push_back(std::move(pt));
    }
    return report;
}

bool PreNormalForm::trivial() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Jet& a) { return a.is_zero(); });
}

std::vector<Jet> PreNormalForm::normal_form() const {
    std::vector<Jet> out;
    for (const Jet& c : base.comps) out.push_back(transfer(c, family));
    Layout layout(base.ring, family, base.p());
    for (std::size_t j = 0; j < cobasis.size(); ++j) {
        if (coefficients[j].is_zero()) continue;
        auto v = layout.lift(cobasis[j]);
        for (int k = 0; k < base.p(); ++k) out[k] += coefficients[j] * v[k];
    }
    return out;
}

PreNormalForm prenormal(const UnfoldingMap& F, GroupSpec spec, int t_max) {
    require_jet0(F.family);
    TangentSpace ts = tangent_space(F.base, spec, true);
    return reduce_blocks(F, spec, t_max, ts, ts.space, nullptr);
}

std::string kind_name(SeparabilityVerdict::Kind k) {
    switch (k) {
        case SeparabilityVerdict::TrivialUpTo: return "TrivialUpTo";
        case SeparabilityVerdict::SeparableObstruction: return "SeparableObstruction";
        case SeparabilityVerdict::Inseparable: return "Inseparable";
    }
    return "?";
}

SeparabilityVerdict separability(const UnfoldingMap& F, GroupSpec spec, int t_max) {
    if (F.params() != 1) throw Refusal(kOneParamRefusal);
    SeparabilityVerdict out;
    out.form = prenormal(F, spec, t_max);
    const auto& form = out.form;
    int first = -1;
    for (const Jet& a : form.coefficients)
        for (const auto& [idx, c] : a.terms())
            if (first < 0 || F.family->t_degree(idx) < first) first = F.family->t_degree(idx);
    if (first < 0) {
        out.kind = SeparabilityVerdict::TrivialUpTo;
        out.degree = form.t_max;
        return out;
    }
    out.degree = first;
    int gamma = F.family->index_of([&] {
        std::vector<int> e(F.family->nvars(), 0);
        e.back() = first;
        return e;
    }());
    for (std::size_t j = 0; j < form.cobasis.size(); ++j) {
        Scalar c = form.coefficients[j].coeff(gamma);
        if (!c.is_zero()) out.cls = sparse_axpy(out.cls, c, form.cobasis[j]);
    }
    out.class_str = vec_str(F.base.ring, F.p(), out.cls);
    unsigned long ch = F.family->field().characteristic;
    out.kind = (ch != 0 && first % ch == 0) ? SeparabilityVerdict::Inseparable : SeparabilityVerdict::SeparableObstruction;
    return out;
}

VersalityReport inf_versal(const UnfoldingMap& F, GroupSpec spec) {
    VersalityReport out;
    TangentSpace ts = tangent_space(F.base, spec);
    out.t1 = quotient(ts.space);
    if (spec.group == Group::R || spec.group == Group::K) {
        out.t1.certificate_degree = finiteness_certificate(ts.space);
        out.t1.certified = out.t1.certificate_degree.has_value() && !F.base.ring->has_quotient();
    }
    out.certified = out.t1.certified;
    Subspace cover = ts.space;
    std::map<int, int> slot;
    for (const auto& c : out.t1.cobasis) slot[ts.space.coord(c.component, c.monomial)] = static_cast<int>(slot.size());
    Scalar zero = Scalar::zero(F.base.ring->field());
    for (int v = F.family->n_source(); v < F.family->nvars(); ++v) {
        std::vector<Jet> dt;
        for (const Jet& c : F.comps) dt.push_back(transfer(jet_partial(c, v), F.base.ring));
        SparseVec vec = to_vec(dt);
        std::vector<Scalar> row(slot.size(), zero);
        for (const auto& [coord, c] : ts.space.member(vec).residue) row[slot.at(coord)] = c;
        out.classes.push_back(std::move(row));
        cover.add(vec);
    }
    out.versal = cover.rank() == standard_coords(cover);
    return out;
}

UnfoldingMap versal_construct(const GermMap& f, GroupSpec spec, int degree_t) {
    if (spec.group != Group::R && spec.group != Group::K)
        throw Refusal("no finiteness certificate for T1 (certificates exist for groups R and K)");
    T1Data d = t1(f, spec);
    if (!d.q.certified) throw Refusal("no finiteness certificate for T1");
    int k = d.q.dimension;
    std::string prefix;
    for (const char* cand : {"t", "s", "w", "param"}) {
        bool clash = false;
        for (int j = 1; j <= k; ++j)
            if (f.ring->var_index(cand + std::to_string(j)) >= 0) clash = true;
        if (!clash) {
            prefix = cand;
            break;
        }
    }
    std::vector<std::string> names;
    for (int j = 1; j <= k; ++j) names.push_back(prefix + std::to_string(j));
    RingPtr family = f.ring->with_params(names, k ? std::max(degree_t, 1) : 0);
    std::vector<Jet> comps;
    for (const Jet& c : f.comps) comps.push_back(transfer(c, family));
    Scalar one = Scalar::one(f.ring->field());
    for (int j = 0; j < k; ++j) {
        const auto& c = d.q.cobasis[j];
        Jet mono = transfer(Jet::monomial(f.ring, c.monomial, one), family);
        comps[c.component] += Jet::variable(family, names[j]) * mono;
    }
    return UnfoldingMap(f, comps);
}

TransversalData k_to_a_transversal(const GermMap& f) {
    T1Data tk = t1(f, GroupSpec{Group::K, -1});
    if (!tk.q.certified) throw Refusal("no K-finiteness certificate");
    TransversalData out;
    out.q.certificate_degree = tk.q.certificate_degree;
    Subspace cover = tangent_space(f, GroupSpec{Group::A, -1}).space;
    int p = f.p();
    for (int m = 0; m < f.ring->size(); ++m) {
        if (f.ring->x_degree(m) < 1 || !f.ring->is_standard(m)) continue;
        for (int k = 0; k < p; ++k) {
            Jet prod = f.comps[k].mul_monomial(m);
            if (prod.is_zero()) continue;
            for (int row = 0; row < p; ++row) {
                SparseVec v;
                for (const auto& [idx, c] : prod.terms()) v.emplace_back(idx * p + row, c);
                Membership mem = cover.member(v);
                if (mem.member) continue;
                CoordIndex lead = cover.index(mem.residue.front().first);
                out.q.cobasis.push_back(lead);
                int deg = f.ring->x_degree(lead.monomial);
                if (static_cast<int>(out.q.hilbert.size()) <= deg) out.q.hilbert.resize(deg + 1, 0);
                ++out.q.hilbert[deg];
                out.reps.push_back(v);
                cover.add(v);
            }
        }
    }
    out.q.dimension = static_cast<int>(out.reps.size());
    return out;
}

PreNormalForm a_prenormal_of_k_trivial(const UnfoldingMap& F, int t_max) {
    require_jet0(F.family);
    if (!inf_trivial(F, GroupSpec{Group::K, -1}).trivial) throw Refusal("not K-trivial at jet level");
    TransversalData tr = k_to_a_transversal(F.base);
    TangentSpace ts = tangent_space(F.base, GroupSpec{Group::A, -1}, true);
    Subspace space = ts.space;
    for (const auto& v : tr.reps) space.add(v);
    return reduce_blocks(F, GroupSpec{Group::A, -1}, t_max, ts, space, &tr.reps);
}

}  // namespace singkit
