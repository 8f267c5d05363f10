#ifndef SINGKIT_TESTS_SUPPORT_HPP
#define SINGKIT_TESTS_SUPPORT_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "singkit/expr.hpp"
#include "singkit/jet.hpp"
#include "singkit/tangent.hpp"

namespace testsupport {

using namespace singkit;

inline FieldSpec Q() { return FieldSpec::rationals(); }
inline FieldSpec F(unsigned p) { return FieldSpec::prime(p); }

inline RingPtr ring(FieldSpec f, std::vector<std::string> vars, int D, std::vector<std::string> params = {}, int T = 0) {
    return JetRing::make(f, std::move(vars), std::move(params), D, T);
}

inline RingPtr ring_mod(FieldSpec f, std::vector<std::string> vars, int D, const std::vector<std::string>& gens) {
    RingPtr free = JetRing::make(f, vars, {}, D, 0);
    std::vector<Jet> js;
    for (const auto& g : gens) js.push_back(parse_jet(free, g));
    return JetRing::make(f, std::move(vars), {}, D, 0, js);
}

inline Jet J(const RingPtr& r, const std::string& s) { return parse_jet(r, s); }
inline GermMap germ(const RingPtr& r, const std::vector<std::string>& comps) { return parse_germ(r, comps); }
inline UnfoldingMap unfold(const GermMap& base, const std::vector<std::string>& params, int T,
                           const std::vector<std::string>& comps) {
    return parse_unfolding(base, params, T, comps);
}

inline oracle::Poly to_poly(const Jet& f) {
    oracle::Poly out;
    for (const auto& [idx, c] : f.terms()) out[f.ring()->exponent_vector(idx)] = c.to_rational();
    return out;
}

// Hand-rolled generator: sparse random jet with small integer coefficients.
inline Jet random_jet(std::mt19937& rng, const RingPtr& r, int terms, int min_degree = 0, int coef_range = 3) {
    std::uniform_int_distribution<int> pick(0, r->size() - 1);
    std::uniform_int_distribution<int> coef(-coef_range, coef_range);
    SparseVec t;
    for (int i = 0; i < terms; ++i) {
        int idx = pick(rng);
        if (r->degree(idx) < min_degree) continue;
        t.emplace_back(idx, Scalar(r->field(), coef(rng)));
    }
    return Jet::from_terms(r, t);
}

// x_i -> x_i + (strictly upper triangular linear part) + (terms of degree >= 2)
inline std::map<int, Jet> random_unipotent(std::mt19937& rng, const RingPtr& r) {
    std::map<int, Jet> sub;
    std::uniform_int_distribution<int> coef(-2, 2);
    int n = r->n_source();
    for (int i = 0; i < n; ++i) {
        Jet img = Jet::variable(r, i);
        for (int k = i + 1; k < n; ++k) img += Scalar(r->field(), coef(rng)) * Jet::variable(r, k);
        img += random_jet(rng, r, 3, 2);
        sub.emplace(i, img);
    }
    return sub;
}

// Applies a random element of G_t that is the identity at t = 0: a source change
// x -> x + t*c(x,t), then for K a matrix I + t*M(x,t), for A a target change y -> y + t*h(y,t).
inline std::vector<Jet> random_group_action(std::mt19937& rng, Group g, const std::vector<Jet>& comps) {
    const RingPtr& r = comps.front().ring();
    int p = static_cast<int>(comps.size());
    std::uniform_int_distribution<int> param(r->n_source(), r->nvars() - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    auto t = [&] { return Jet::variable(r, param(rng)); };
    std::vector<Jet> out = comps;
    if (g != Group::L) {
        std::map<int, Jet> sub;
        for (int i = 0; i < r->n_source(); ++i) sub.emplace(i, Jet::variable(r, i) + t() * random_jet(rng, r, 2, 0, 2));
        for (Jet& c : out) c = jet_substitute(c, sub);
    }
    if (g == Group::K) {
        std::vector<Jet> next = out;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) next[a] += t() * random_jet(rng, r, 2, 0, 2) * out[b];
        out = next;
    }
    if (g == Group::A || g == Group::L) {
        std::vector<Jet> next = out;
        std::uniform_int_distribution<int> expo(0, 2);
        for (int a = 0; a < p; ++a) {
            Jet h = Jet::constant(r, coef(rng));
            std::vector<int> beta(p);
            for (int& b : beta) b = expo(rng);
            h += Scalar(r->field(), coef(rng)) * target_monomial(out, beta);
            next[a] += t() * h;
        }
        out = next;
    }
    return out;
}

}  // namespace testsupport

#endif
