#include "singkit/stability.hpp"

#include <algorithm>

namespace singkit {

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix invert(Matrix a, const FieldSpec& field) {
    int n = static_cast<int>(a.size());
    Matrix inv(n, std::vector<Scalar>(n, Scalar::zero(field)));
    for (int i = 0; i < n; ++i) inv[i][i] = Scalar::one(field);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::invalid_argument("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Scalar s = a[c][c].inverse();
        for (int k = 0; k < n; ++k) {
            a[c][k] = a[c][k] * s;
            inv[c][k] = inv[c][k] * s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Scalar m = a[r][c];
            for (int k = 0; k < n; ++k) {
                a[r][k] = a[r][k] - m * a[c][k];
                inv[r][k] = inv[r][k] - m * inv[c][k];
            }
        }
    }
    return inv;
}

std::vector<Jet> apply_matrix(const Matrix& m, const std::vector<Jet>& v) {
    std::vector<Jet> out;
    for (const auto& row : m) {
        Jet acc(v.front().ring());
        for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero()) acc += v[k] * row[k];
        out.push_back(acc);
    }
    return out;
}

Jet linear_part(const Jet& f) {
    SparseVec keep;
    for (const auto& [idx, c] : f.terms())
        if (f.ring()->degree(idx) == 1) keep.emplace_back(idx, c);
    return Jet::from_terms(f.ring(), keep);
}

// Subspace of the core ring spanned by T_K f plus the given vectors covers (x) R^p.
bool covers_maximal_part(const Subspace& s) { return quotient(s, 1).dimension == 0; }

}  // namespace

int rank(const GermMap& F) {
    Subspace tr = tangent_space(F, GroupSpec{Group::R, -1}).space;
    int count = 0;
    for (int c = 0; c < F.p(); ++c)
        if (tr.echelon().is_pivot(c)) ++count;
    return count;
}

int der_values_dim(const RingPtr& ring) {
    int n = ring->n_source();
    Echelon values(ring->field(), n, false);
    for (const auto& d : derivations(ring, -1).generators) {
        SparseVec v;
        for (int i = 0; i < n; ++i) {
            Scalar c = d.coeffs[i].constant_term();
            if (!c.is_zero()) v.emplace_back(i, c);
        }
        values.insert(v);
    }
    return values.rank();
}

bool factor_criteria(const GermMap& f, GroupSpec spec) {
    if (!f.ring->field().is_rational()) throw Refusal("factorization criteria are stated in characteristic 0 only");
    switch (spec.group) {
        case Group::R:
        case Group::K:
            return tangent_space(f, GroupSpec{spec.group, -1}).space.equals(tangent_space(f, GroupSpec{spec.group, 0}).space);
        case Group::A: {
            Subspace filtered =
                subspace_sum(tangent_space(f, GroupSpec{Group::R, 0}).space, tangent_space(f, GroupSpec{Group::L, -1}).space);
            return tangent_space(f, GroupSpec{Group::A, -1}).space.equals(filtered);
        }
        case Group::L: break;
    }
    throw std::invalid_argument("factorization criteria exist for R, K and A");
}

std::vector<Jet> PreliminaryForm::normal() const {
    std::vector<Jet> out;
    for (std::size_t k = 0; k < correction.size(); ++k) out.push_back(transfer(core.comps[k], input.ring) + correction[k]);
    for (int v : param_vars) out.push_back(Jet::variable(input.ring, v));
    return out;
}

std::vector<Jet> PreliminaryForm::replay() const {
    std::vector<Jet> g = normal();
    for (std::size_t k = 0; k < target_correction.size(); ++k) g[k] += target_correction[k];
    std::map<int, Jet> back;
    for (int l = 0; l < rank; ++l) back.emplace(param_vars[l], input.comps[pivot_rows[l]]);
    for (Jet& c : g) c = jet_substitute(c, back);
    return apply_matrix(invert(target_matrix, input.ring->field()), g);
}

PreliminaryForm preliminary_form(const GermMap& F) {
    const RingPtr& ring = F.ring;
    const FieldSpec& field = ring->field();
    if (ring->has_quotient()) throw Refusal("preliminary form is implemented for J = 0");
    PreliminaryForm out;
    out.input = F;
    int p = F.p(), n = ring->n_source();

    // linear parts: rows = components, columns = source variables
    Matrix lin(p, std::vector<Scalar>(n, Scalar::zero(field)));
    for (int k = 0; k < p; ++k)
        for (int i = 0; i < n; ++i) lin[k][i] = F.comps[k].coeff(ring->var_monomial(i));
    Echelon rows(field, n, false);
    for (int k = 0; k < p; ++k) {
        SparseVec v;
        for (int i = 0; i < n; ++i)
            if (!lin[k][i].is_zero()) v.emplace_back(i, lin[k][i]);
        if (rows.insert(v)) out.pivot_rows.push_back(k);
    }
    out.rank = static_cast<int>(out.pivot_rows.size());
    int r = out.rank;
    for (int i = 0; i < n; ++i) (rows.is_pivot(i) ? out.param_vars : out.core_vars).push_back(i);

    Matrix A(r, std::vector<Scalar>(r, Scalar::zero(field)));
    for (int l = 0; l < r; ++l)
        for (int m = 0; m < r; ++m) A[l][m] = lin[out.pivot_rows[l]][out.param_vars[m]];
    Matrix Ainv = invert(A, field);

    // target matrix: core rows lose their linear part, pivot rows are kept
    std::vector<int> core_rows;
    for (int k = 0; k < p; ++k)
        if (std::find(out.pivot_rows.begin(), out.pivot_rows.end(), k) == out.pivot_rows.end()) core_rows.push_back(k);
    for (int k : core_rows) {
        std::vector<Scalar> row(p, Scalar::zero(field));
        row[k] = Scalar::one(field);
        for (int l = 0; l < r; ++l) {
            Scalar lam = Scalar::zero(field);
            for (int m = 0; m < r; ++m) lam = lam + lin[k][out.param_vars[m]] * Ainv[m][l];
            row[out.pivot_rows[l]] = row[out.pivot_rows[l]] - lam;
        }
        out.target_matrix.push_back(row);
    }
    for (int k : out.pivot_rows) {
        std::vector<Scalar> row(p, Scalar::zero(field));
        row[k] = Scalar::one(field);
        out.target_matrix.push_back(row);
    }

    // solve F_pivot(x_param = w, x~) = u by iteration: w = A^{-1}(u - B x~ - N(w, x~))
    std::vector<Jet> rhs_base(r, Jet(ring)), nonlinear(r, Jet(ring));
    for (int l = 0; l < r; ++l) {
        const Jet& fk = F.comps[out.pivot_rows[l]];
        Jet lin_core(ring);
        for (int i : out.core_vars) lin_core += Jet::variable(ring, i) * lin[out.pivot_rows[l]][i];
        rhs_base[l] = Jet::variable(ring, out.param_vars[l]) - lin_core;
        nonlinear[l] = fk - linear_part(fk);
    }
    std::vector<Jet> w(r, Jet(ring));
    for (int iter = 0; iter <= ring->degree_x() && r > 0; ++iter) {
        std::map<int, Jet> sub;
        for (int m = 0; m < r; ++m) sub.emplace(out.param_vars[m], w[m]);
        std::vector<Jet> rhs(r, Jet(ring));
        for (int l = 0; l < r; ++l) rhs[l] = rhs_base[l] - jet_substitute(nonlinear[l], sub);
        std::vector<Jet> next(r, Jet(ring));
        for (int m = 0; m < r; ++m)
            for (int l = 0; l < r; ++l)
                if (!Ainv[m][l].is_zero()) next[m] += rhs[l] * Ainv[m][l];
        if (next == w) break;
        w = std::move(next);
    }
    for (int m = 0; m < r; ++m) out.source_change.emplace(out.param_vars[m], w[m]);

    std::vector<Jet> g = apply_matrix(out.target_matrix, F.comps);
    for (Jet& c : g) c = jet_substitute(c, out.source_change);
    for (int l = 0; l < r; ++l)
        if (g[core_rows.size() + l] != Jet::variable(ring, out.param_vars[l]))
            throw std::logic_error("implicit function iteration did not converge");

    std::map<int, Jet> kill_core, kill_params;
    for (int i : out.core_vars) kill_core.emplace(i, Jet(ring));
    for (int i : out.param_vars) kill_params.emplace(i, Jet(ring));
    std::vector<std::string> core_names;
    for (int i : out.core_vars) core_names.push_back(ring->var_names()[i]);
    RingPtr core_ring = JetRing::make(field, core_names, {}, ring->degree_x());
    std::vector<Jet> core_comps;
    for (std::size_t k = 0; k < core_rows.size(); ++k) {
        Jet c = jet_substitute(g[k], kill_core);
        Jet rest = g[k] - c;
        Jet f = jet_substitute(rest, kill_params);
        out.target_correction.push_back(c);
        out.correction.push_back(rest - f);
        core_comps.push_back(transfer(f, core_ring));
    }
    out.core.ring = core_ring;
    out.core.comps = std::move(core_comps);
    return out;
}

std::string kind_name(StabilityVerdict::Kind k) {
    switch (k) {
        case StabilityVerdict::CertifiedStable: return "CertifiedStable";
        case StabilityVerdict::JetLevelStable: return "JetLevelStable";
        case StabilityVerdict::NotStable: return "NotStable";
    }
    return "?";
}

GenotypeReport genotype(const GermMap& F) {
    GenotypeReport out;
    out.form = preliminary_form(F);
    out.genotype = out.form.core;
    const GermMap& f = out.genotype;
    int p = f.p();
    if (p == 0 || f.ring->n_source() == 0) {
        // (x~) R^p vanishes: nothing to generate
        out.certified = true;
        return out;
    }
    TangentSpace tk = tangent_space(f, GroupSpec{Group::K, -1});
    if (!finiteness_certificate(tk.space)) throw Refusal("genotype is not K-finite (no certificate)");
    Scalar one = Scalar::one(f.ring->field());
    std::map<int, int> slot;
    for (const auto& c : quotient(tk.space, 1).cobasis) {
        int coord = tk.space.coord(c.component, c.monomial);
        slot[coord] = static_cast<int>(out.generators.size());
        out.generators.push_back(SparseVec{{coord, one}});
        out.labels.push_back(coord_str(f.ring, p, c));
    }
    Subspace span = tk.space;
    const RingPtr& ring = F.ring;
    for (int v : out.form.param_vars) {
        std::vector<Jet> lin;
        std::map<int, Jet> zero_params;
        for (int u : out.form.param_vars) zero_params.emplace(u, Jet(ring));
        for (const Jet& h : out.form.correction)
            lin.push_back(transfer(jet_substitute(jet_partial(h, v), zero_params), f.ring));
        SparseVec vec = to_vec(lin);
        std::vector<Scalar> row(out.generators.size(), Scalar::zero(f.ring->field()));
        for (const auto& [coord, c] : tk.space.member(vec).residue) {
            auto it = slot.find(coord);
            if (it != slot.end()) row[it->second] = c;
        }
        out.coefficients.push_back(std::move(row));
        span.add(vec);
    }
    out.certified = covers_maximal_part(span);
    return out;
}

StabilityVerdict inf_stable(const GermMap& F) {
    StabilityVerdict out;
    Subspace ta = tangent_space(F, GroupSpec{Group::A, -1}).space;
    QuotientData missed = quotient(ta, 0, F.ring->degree_x() - 1);
    if (missed.dimension > 0) {
        out.kind = StabilityVerdict::NotStable;
        out.residue = missed.cobasis;
        return out;
    }
    try {
        out.kind = genotype(F).certified ? StabilityVerdict::CertifiedStable : StabilityVerdict::JetLevelStable;
        if (out.kind == StabilityVerdict::JetLevelStable) out.reason = "u-linear classes do not span (x) T1_K of the genotype";
    } catch (const Refusal& e) {
        out.kind = StabilityVerdict::JetLevelStable;
        out.reason = e.what();
    }
    return out;
}

GermMap stable_unfolding(const GermMap& f) {
    T1Data d = t1(f, GroupSpec{Group::K, -1});
    if (!d.q.certified) throw Refusal("no K-finiteness certificate");
    QuotientData v = quotient(tangent_space(f, GroupSpec{Group::K, -1}).space, 1);
    int k = v.dimension;
    std::string prefix = "t";
    for (const char* cand : {"t", "s", "w", "param"}) {
        bool clash = false;
        for (int j = 1; j <= k; ++j)
            if (f.ring->var_index(cand + std::to_string(j)) >= 0) clash = true;
        if (!clash) {
            prefix = cand;
            break;
        }
    }
    std::vector<std::string> names = f.ring->source_names();
    for (int j = 1; j <= k; ++j) names.push_back(prefix + std::to_string(j));
    RingPtr big = JetRing::make(f.ring->field(), names, {}, f.ring->degree_x());
    std::vector<Jet> comps;
    for (const Jet& c : f.comps) comps.push_back(transfer(c, big));
    Scalar one = Scalar::one(f.ring->field());
    for (int j = 0; j < k; ++j) {
        const auto& c = v.cobasis[j];
        Jet mono = transfer(Jet::monomial(f.ring, c.monomial, one), big);
        comps[c.component] += Jet::variable(big, prefix + std::to_string(j + 1)) * mono;
    }
    for (int j = 1; j <= k; ++j) comps.push_back(Jet::variable(big, prefix + std::to_string(j)));
    return GermMap(big, comps);
}

Fingerprint k_fingerprint(const GermMap& f) {
    Fingerprint fp;
    fp.source_dim = f.ring->n_source();
    fp.target_dim = f.p();
    if (f.p() == 0) return fp;
    T1Data d = t1(f, GroupSpec{Group::K, -1});
    fp.tau = d.q.dimension;
    fp.hilbert = d.q.hilbert;
    fp.ord = f.ord();
    return fp;
}

Comparison compare_stable(const GermMap& F1, const GermMap& F2) {
    for (const GermMap* F : {&F1, &F2})
        if (inf_stable(*F).kind != StabilityVerdict::CertifiedStable) throw Refusal("map is not certified stable");
    Comparison out;
    int r1 = rank(F1), r2 = rank(F2);
    if (r1 != r2) {
        out.reason = "parameter counts differ: " + std::to_string(r1) + " vs " + std::to_string(r2);
        return out;
    }
    Fingerprint a = k_fingerprint(genotype(F1).genotype), b = k_fingerprint(genotype(F2).genotype);
    auto ord_str = [](const std::optional<int>& o) { return o ? std::to_string(*o) : std::string("infinite"); };
    auto hilb_str = [](const std::vector<int>& h) {
        std::string s = "(";
        for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
        return s + ")";
    };
    if (a.source_dim != b.source_dim)
        out.reason = "genotype source dimensions differ: " + std::to_string(a.source_dim) + " vs " + std::to_string(b.source_dim);
    else if (a.target_dim != b.target_dim)
        out.reason = "genotype target dimensions differ: " + std::to_string(a.target_dim) + " vs " + std::to_string(b.target_dim);
    else if (a.tau != b.tau)
        out.reason = "tau differs: " + std::to_string(a.tau) + " vs " + std::to_string(b.tau);
    else if (a.hilbert != b.hilbert)
        out.reason = "T1_K Hilbert functions differ: " + hilb_str(a.hilbert) + " vs " + hilb_str(b.hilbert);
    else if (a.ord != b.ord)
        out.reason = "orders differ: " + ord_str(a.ord) + " vs " + ord_str(b.ord);
    out.equivalent_fingerprints = out.reason.empty();
    return out;
}

}  // namespace singkit
