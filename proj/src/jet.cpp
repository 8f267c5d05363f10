#include "singkit/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace singkit {

namespace {

constexpr int kMaxMonomials = 400000;
constexpr std::uint64_t kDenseKeyLimit = std::uint64_t{1} << 22;

using RawPoly = std::vector<std::pair<std::vector<int>, Scalar>>;

void enumerate(int v, int nsrc, int nvars, int xleft, int tleft, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (v == nvars) {
        out.push_back(cur);
        return;
    }
    int left = v < nsrc ? xleft : tleft;
    for (int e = 0; e <= left; ++e) {
        cur[v] = e;
        if (v < nsrc)
            enumerate(v + 1, nsrc, nvars, xleft - e, tleft, cur, out);
        else
            enumerate(v + 1, nsrc, nvars, xleft, tleft - e, cur, out);
    }
    cur[v] = 0;
}

SparseVec normalize(SparseVec terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return t.second.is_zero(); }), out.end());
    return out;
}

RingPtr build_ring(FieldSpec field, std::vector<std::string> names, int nsrc, int D, int T, const std::vector<RawPoly>& quotient);

}  // namespace

class RingBuilder {
public:
    static std::shared_ptr<JetRing> fresh() { return std::shared_ptr<JetRing>(new JetRing()); }
    static void set(JetRing& r, FieldSpec field, std::vector<std::string> names, int nsrc, int D, int T) {
        r.field_ = field;
        r.names_ = std::move(names);
        r.n_source_ = nsrc;
        r.D_ = D;
        r.T_ = T;
    }
    static void table(JetRing& r) { r.build_table(); }
    static void add_quotient(JetRing& r, SparseVec terms) { r.quotient_terms_.push_back(std::move(terms)); }
    static void ideal(JetRing& r) { r.build_ideal(); }
};

namespace {

RingPtr build_ring(FieldSpec field, std::vector<std::string> names, int nsrc, int D, int T, const std::vector<RawPoly>& quotient) {
    if (D < 1) throw std::invalid_argument("jet degree bound must be at least 1");
    if (T < 0) throw std::invalid_argument("parameter degree bound must be non-negative");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw std::invalid_argument("variable declared twice: " + names[i]);
    auto ring = RingBuilder::fresh();
    RingBuilder::set(*ring, field, std::move(names), nsrc, D, T);
    RingBuilder::table(*ring);
    for (const auto& g : quotient) {
        SparseVec terms;
        std::optional<int> order;
        for (const auto& [e, c] : g) {
            int xd = 0;
            for (int v = 0; v < ring->nvars(); ++v) {
                if (ring->is_param(v) && e[v] > 0) throw std::invalid_argument("quotient generators may not involve parameters");
                if (!ring->is_param(v)) xd += e[v];
            }
            if (!order || xd < *order) order = xd;
            int idx = ring->index_of(e);
            if (idx >= 0) terms.emplace_back(idx, c);
        }
        if (!order) continue;
        if (*order < 2) throw std::invalid_argument("quotient generator of order < 2");
        RingBuilder::add_quotient(*ring, normalize(std::move(terms)));
    }
    RingBuilder::ideal(*ring);
    return ring;
}

RawPoly raw_from(const JetRing& ring, const SparseVec& terms) {
    RawPoly out;
    for (const auto& [idx, c] : terms) out.emplace_back(ring.exponent_vector(idx), c);
    return out;
}

}  // namespace

RingPtr JetRing::make(FieldSpec field, std::vector<std::string> source_vars, std::vector<std::string> param_vars, int degree_x,
                      int degree_t, const std::vector<Jet>& quotient) {
    std::vector<std::string> names = source_vars;
    names.insert(names.end(), param_vars.begin(), param_vars.end());
    std::vector<RawPoly> raw;
    for (const Jet& g : quotient) {
        if (!(g.ring()->field() == field)) throw std::invalid_argument("quotient generator over a different field");
        RawPoly poly;
        for (const auto& [idx, c] : g.terms()) {
            std::vector<int> e(names.size(), 0);
            const int* src = g.ring()->exponents(idx);
            for (int v = 0; v < g.ring()->nvars(); ++v) {
                if (src[v] == 0) continue;
                auto it = std::find(names.begin(), names.end(), g.ring()->var_names()[v]);
                if (it == names.end()) throw std::invalid_argument("undeclared variable " + g.ring()->var_names()[v]);
                e[it - names.begin()] = src[v];
            }
            poly.emplace_back(std::move(e), c);
        }
        raw.push_back(std::move(poly));
    }
    return build_ring(field, std::move(names), static_cast<int>(source_vars.size()), degree_x, degree_t, raw);
}

RingPtr JetRing::with_params(std::vector<std::string> param_vars, int degree_t) const {
    std::vector<std::string> names = source_names();
    names.insert(names.end(), param_vars.begin(), param_vars.end());
    std::vector<RawPoly> raw;
    for (const auto& g : quotient_terms_) {
        RawPoly poly;
        for (auto& [e, c] : raw_from(*this, g)) {
            std::vector<int> ee(e.begin(), e.begin() + n_source_);
            ee.resize(names.size(), 0);
            poly.emplace_back(std::move(ee), c);
        }
        raw.push_back(std::move(poly));
    }
    return build_ring(field_, std::move(names), n_source_, D_, degree_t, raw);
}

RingPtr JetRing::with_bounds(int degree_x, int degree_t) const {
    std::vector<RawPoly> raw;
    for (const auto& g : quotient_terms_) raw.push_back(raw_from(*this, g));
    return build_ring(field_, names_, n_source_, degree_x, degree_t, raw);
}

std::vector<std::string> JetRing::source_names() const { return {names_.begin(), names_.begin() + n_source_}; }
std::vector<std::string> JetRing::param_names() const { return {names_.begin() + n_source_, names_.end()}; }

int JetRing::var_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

void JetRing::build_table() {
    int n = nvars();
    std::vector<std::vector<int>> all;
    std::vector<int> cur(n, 0);
    enumerate(0, n_source_, n, D_, n_params() ? T_ : 0, cur, all);
    if (all.size() > static_cast<std::size_t>(kMaxMonomials))
        throw std::invalid_argument("jet ring too large (" + std::to_string(all.size()) + " monomials)");
    auto total = [](const std::vector<int>& e) {
        int s = 0;
        for (int x : e) s += x;
        return s;
    };
    std::sort(all.begin(), all.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
        int da = total(a), db = total(b);
        if (da != db) return da < db;
        return a > b;
    });
    stride_.assign(n, 1);
    unsigned __int128 space = 1;
    for (int v = 0; v < n; ++v) {
        stride_[v] = static_cast<std::uint64_t>(space);
        space *= static_cast<unsigned>((v < n_source_ ? D_ : T_) + 1);
        if (space > (static_cast<unsigned __int128>(1) << 62)) throw std::invalid_argument("too many variables for the jet ring");
    }
    exps_.clear();
    degree_.clear();
    xdeg_.clear();
    key_.clear();
    for (const auto& e : all) {
        exps_.insert(exps_.end(), e.begin(), e.end());
        degree_.push_back(total(e));
        int xd = 0;
        for (int v = 0; v < n_source_; ++v) xd += e[v];
        xdeg_.push_back(xd);
        key_.push_back(key_of(e.data()));
    }
    if (space <= kDenseKeyLimit) {
        dense_lookup_.assign(static_cast<std::size_t>(space), -1);
        for (int i = 0; i < size(); ++i) dense_lookup_[key_[i]] = i;
    } else {
        for (int i = 0; i < size(); ++i) sparse_lookup_.emplace(key_[i], i);
    }
    var_mono_.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        std::vector<int> e(n, 0);
        e[v] = 1;
        var_mono_[v] = index_of(e);
    }
}

void JetRing::build_ideal() {
    ideal_ = Echelon(field_, size(), false);
    for (const auto& g : quotient_terms_)
        for (int m = 0; m < size(); ++m) {
            SparseVec prod = raw_mul_monomial(*this, g, m);
            if (!prod.empty()) ideal_.insert(prod);
        }
    // closure under multiplication by the variables
    for (const auto& row : ideal_.rref())
        for (int v = 0; v < nvars(); ++v) {
            if (var_mono_[v] < 0) continue;
            SparseVec shifted = raw_mul_monomial(*this, row, var_mono_[v]);
            if (!ideal_.contains(shifted)) throw std::logic_error("quotient ideal subspace not closed under multiplication");
        }
}

std::uint64_t JetRing::key_of(const int* e) const {
    std::uint64_t k = 0;
    for (int v = 0; v < nvars(); ++v) k += static_cast<std::uint64_t>(e[v]) * stride_[v];
    return k;
}

int JetRing::lookup(std::uint64_t key) const {
    if (!dense_lookup_.empty()) return key < dense_lookup_.size() ? dense_lookup_[key] : -1;
    auto it = sparse_lookup_.find(key);
    return it == sparse_lookup_.end() ? -1 : it->second;
}

std::vector<int> JetRing::exponent_vector(int idx) const {
    const int* e = exponents(idx);
    return {e, e + nvars()};
}

int JetRing::index_of(const std::vector<int>& e) const {
    if (static_cast<int>(e.size()) != nvars()) throw std::invalid_argument("exponent vector of wrong length");
    int xd = 0, td = 0;
    for (int v = 0; v < nvars(); ++v) {
        if (e[v] < 0) return -1;
        (v < n_source_ ? xd : td) += e[v];
    }
    if (xd > D_ || td > (n_params() ? T_ : 0)) return -1;
    return lookup(key_of(e.data()));
}

int JetRing::mul_index(int a, int b) const {
    if (xdeg_[a] + xdeg_[b] > D_) return -1;
    if (t_degree(a) + t_degree(b) > T_) return -1;
    return lookup(key_[a] + key_[b]);
}

std::string JetRing::monomial_str(int idx) const {
    const int* e = exponents(idx);
    std::string out;
    for (int v = 0; v < nvars(); ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += names_[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out.empty() ? "1" : out;
}

std::vector<std::string> JetRing::quotient_strs() const {
    std::vector<std::string> out;
    for (const auto& g : quotient_terms_) {
        std::string s;
        for (const auto& [idx, c] : g) {
            std::string mono = monomial_str(idx);
            std::string coef = c.str();
            std::string term = c.is_one() ? mono : (coef == "-1" ? "-" + mono : coef + (mono == "1" ? "" : "*" + mono));
            if (s.empty())
                s = term;
            else if (term[0] == '-')
                s += " - " + term.substr(1);
            else
                s += " + " + term;
        }
        out.push_back(s.empty() ? "0" : s);
    }
    return out;
}

SparseVec JetRing::reduce(const SparseVec& terms) const {
    if (!has_quotient()) return terms;
    return ideal_.reduce(terms).residue;
}

bool JetRing::same_as(const JetRing& o) const {
    if (this == &o) return true;
    if (!(field_ == o.field_) || names_ != o.names_ || n_source_ != o.n_source_ || D_ != o.D_ || T_ != o.T_) return false;
    if (quotient_terms_.size() != o.quotient_terms_.size()) return false;
    for (std::size_t i = 0; i < quotient_terms_.size(); ++i)
        if (quotient_terms_[i] != o.quotient_terms_[i]) return false;
    return true;
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (!a || !b) throw std::invalid_argument("jet without a ring");
    if (a != b && !a->same_as(*b)) throw std::invalid_argument("jets from different rings");
}

SparseVec raw_mul_monomial(const JetRing& ring, const SparseVec& terms, int idx) {
    SparseVec out;
    out.reserve(terms.size());
    for (const auto& [k, c] : terms) {
        int m = ring.mul_index(k, idx);
        if (m >= 0) out.emplace_back(m, c);
    }
    return out;
}

SparseVec raw_partial(const JetRing& ring, const SparseVec& terms, int var) {
    if (var < 0 || var >= ring.nvars()) throw std::invalid_argument("unknown variable");
    SparseVec out;
    for (const auto& [k, c] : terms) {
        std::vector<int> e = ring.exponent_vector(k);
        if (e[var] == 0) continue;
        Scalar coef = c * Scalar(ring.field(), e[var]);
        if (coef.is_zero()) continue;
        --e[var];
        out.emplace_back(ring.index_of(e), std::move(coef));
    }
    return normalize(std::move(out));
}

Jet Jet::from_terms(RingPtr ring, const SparseVec& terms) {
    Jet j(std::move(ring));
    for (const auto& [k, c] : terms)
        if (k < 0 || k >= j.ring_->size()) throw std::out_of_range("monomial index outside the ring");
    j.terms_ = j.ring_->reduce(normalize(terms));
    return j;
}

Jet Jet::constant(RingPtr ring, const Scalar& c) { return from_terms(ring, SparseVec{{0, c}}); }

Jet Jet::constant(RingPtr ring, long long c) {
    Scalar s(ring->field(), c);
    return constant(std::move(ring), s);
}

Jet Jet::variable(RingPtr ring, int v) {
    if (v < 0 || v >= ring->nvars()) throw std::invalid_argument("unknown variable");
    int idx = ring->var_monomial(v);
    if (idx < 0) return Jet(std::move(ring));
    return monomial(ring, idx, Scalar::one(ring->field()));
}

Jet Jet::variable(RingPtr ring, const std::string& name) {
    int v = ring->var_index(name);
    if (v < 0) throw std::invalid_argument("unknown variable " + name);
    return variable(std::move(ring), v);
}

Jet Jet::monomial(RingPtr ring, int idx, const Scalar& c) { return from_terms(std::move(ring), SparseVec{{idx, c}}); }

Scalar Jet::coeff(int idx) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx, [](const auto& t, int k) { return t.first < k; });
    if (it != terms_.end() && it->first == idx) return it->second;
    return Scalar::zero(ring_->field());
}

std::optional<int> Jet::ord() const {
    std::optional<int> best;
    for (const auto& [k, c] : terms_) {
        int d = ring_->x_degree(k);
        if (!best || d < *best) best = d;
    }
    return best;
}

Jet Jet::operator+(const Jet& o) const {
    require_same_ring(ring_, o.ring_);
    Jet r(ring_);
    r.terms_ = sparse_add(terms_, o.terms_);
    return r;
}

Jet Jet::operator-() const {
    Jet r(ring_);
    r.terms_ = sparse_scale(terms_, Scalar(ring_->field(), -1));
    return r;
}

Jet Jet::operator-(const Jet& o) const {
    require_same_ring(ring_, o.ring_);
    Jet r(ring_);
    r.terms_ = sparse_axpy(terms_, Scalar(ring_->field(), -1), o.terms_);
    return r;
}

Jet Jet::operator*(const Scalar& c) const {
    Jet r(ring_);
    r.terms_ = sparse_scale(terms_, c);
    return r;
}

Jet Jet::operator*(const Jet& o) const { return jet_mul(*this, o); }

Jet Jet::mul_monomial(int idx) const {
    Jet r(ring_);
    r.terms_ = ring_->reduce(raw_mul_monomial(*ring_, terms_, idx));
    return r;
}

bool Jet::operator==(const Jet& o) const {
    require_same_ring(ring_, o.ring_);
    return terms_ == o.terms_;
}

std::string Jet::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [idx, c] : terms_) {
        std::string mono = ring_->monomial_str(idx);
        std::string coef = c.str();
        std::string term;
        if (c.is_one())
            term = mono;
        else if (coef == "-1")
            term = mono == "1" ? "-1" : "-" + mono;
        else
            term = mono == "1" ? coef : coef + "*" + mono;
        if (s.empty())
            s = term;
        else if (term[0] == '-')
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    require_same_ring(a.ring(), b.ring());
    const JetRing& ring = *a.ring();
    if (a.is_zero() || b.is_zero()) return Jet(a.ring());
    std::vector<Scalar> acc(ring.size());
    std::vector<char> used(ring.size(), 0);
    std::vector<int> touched;
    for (const auto& [i, ca] : a.terms())
        for (const auto& [j, cb] : b.terms()) {
            int m = ring.mul_index(i, j);
            if (m < 0) continue;
            if (!used[m]) {
                used[m] = 1;
                touched.push_back(m);
                acc[m] = ca * cb;
            } else {
                acc[m] += ca * cb;
            }
        }
    std::sort(touched.begin(), touched.end());
    SparseVec out;
    out.reserve(touched.size());
    for (int m : touched)
        if (!acc[m].is_zero()) out.emplace_back(m, std::move(acc[m]));
    return Jet::from_terms(a.ring(), out);
}

Jet jet_pow(const Jet& a, int e) {
    Jet r = Jet::constant(a.ring(), 1);
    Jet b = a;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Jet jet_partial(const Jet& f, int var) { return Jet::from_terms(f.ring(), raw_partial(*f.ring(), f.terms(), var)); }

Jet jet_partial(const Jet& f, const std::string& var) {
    int v = f.ring()->var_index(var);
    if (v < 0) throw std::invalid_argument("unknown variable " + var);
    return jet_partial(f, v);
}

Jet jet_substitute(const Jet& f, const std::map<int, Jet>& assignment) {
    const RingPtr& ring = f.ring();
    std::vector<int> vars;
    std::vector<const Jet*> images;
    for (const auto& [v, img] : assignment) {
        if (v < 0 || v >= ring->nvars()) throw std::invalid_argument("unknown variable in substitution");
        require_same_ring(ring, img.ring());
        if (!img.constant_term().is_zero()) throw std::invalid_argument("substitution image has a nonzero constant term");
        vars.push_back(v);
        images.push_back(&img);
    }
    if (vars.empty()) return f;
    std::map<std::vector<int>, SparseVec> groups;
    for (const auto& [idx, c] : f.terms()) {
        std::vector<int> e = ring->exponent_vector(idx);
        std::vector<int> sub(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            sub[i] = e[vars[i]];
            e[vars[i]] = 0;
        }
        groups[sub].emplace_back(ring->index_of(e), c);
    }
    std::vector<std::vector<Jet>> powers(vars.size());
    auto power = [&](std::size_t i, int k) -> const Jet& {
        auto& p = powers[i];
        if (p.empty()) p.push_back(Jet::constant(ring, 1));
        while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * *images[i]);
        return p[k];
    };
    Jet result(ring);
    for (auto& [sub, terms] : groups) {
        Jet g = Jet::from_terms(ring, terms);
        for (std::size_t i = 0; i < vars.size() && !g.is_zero(); ++i)
            if (sub[i] > 0) g = g * power(i, sub[i]);
        result += g;
    }
    return result;
}

Jet transfer(const Jet& f, const RingPtr& target) {
    const JetRing& src = *f.ring();
    if (!(src.field() == target->field())) throw std::invalid_argument("transfer between different fields");
    std::vector<int> map(src.nvars());
    for (int v = 0; v < src.nvars(); ++v) map[v] = target->var_index(src.var_names()[v]);
    SparseVec out;
    for (const auto& [idx, c] : f.terms()) {
        const int* e = src.exponents(idx);
        std::vector<int> te(target->nvars(), 0);
        bool keep = true;
        for (int v = 0; v < src.nvars() && keep; ++v) {
            if (e[v] == 0) continue;
            if (map[v] < 0)
                keep = false;
            else
                te[map[v]] = e[v];
        }
        if (!keep) continue;
        int k = target->index_of(te);
        if (k >= 0) out.emplace_back(k, c);
    }
    return Jet::from_terms(target, out);
}

GermMap::GermMap(RingPtr r, std::vector<Jet> c) : ring(std::move(r)), comps(std::move(c)) {
    for (const Jet& j : comps) {
        require_same_ring(ring, j.ring());
        if (!j.constant_term().is_zero()) throw std::invalid_argument("map component has a nonzero constant term");
    }
}

std::optional<int> GermMap::ord() const {
    std::optional<int> best;
    for (const Jet& j : comps) {
        auto o = j.ord();
        if (o && (!best || *o < *best)) best = o;
    }
    return best;
}

bool GermMap::operator==(const GermMap& o) const {
    if (comps.size() != o.comps.size()) return false;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (comps[i] != o.comps[i]) return false;
    return true;
}

std::string GermMap::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? ", " : "") + comps[i].str();
    return s + ")";
}

UnfoldingMap::UnfoldingMap(GermMap b, std::vector<Jet> c) : base(std::move(b)), comps(std::move(c)) {
    if (comps.size() != base.comps.size()) throw std::invalid_argument("unfolding has a different number of components than its base");
    if (comps.empty()) throw std::invalid_argument("unfolding without components");
    family = comps.front().ring();
    if (family->source_names() != base.ring->var_names())
        throw std::invalid_argument("unfolding source variables differ from its base");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        require_same_ring(family, comps[i].ring());
        if (!comps[i].constant_term().is_zero()) throw std::invalid_argument("unfolding component has a nonzero constant term");
        if (transfer(comps[i], base.ring) != base.comps[i]) throw std::invalid_argument("unfolding does not restrict to its base");
    }
}

UnfoldingMap UnfoldingMap::constant(const GermMap& base, const std::vector<std::string>& params, int degree_t) {
    RingPtr fam = base.ring->with_params(params, degree_t);
    std::vector<Jet> comps;
    for (const Jet& j : base.comps) comps.push_back(transfer(j, fam));
    return UnfoldingMap(base, std::move(comps));
}

std::string UnfoldingMap::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? ", " : "") + comps[i].str();
    for (const auto& t : family->param_names()) s += ", " + t;
    return s + ")";
}

}  // namespace singkit
