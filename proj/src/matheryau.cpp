#include "singkit/matheryau.hpp"

#include <stdexcept>

namespace singkit {

namespace {

// L * R^p for a scalar ideal subspace L.
Subspace free_multiple(const Subspace& ideal, int p) {
    Subspace out(ideal.ring(), p);
    for (const auto& v : ideal.basis())
        for (int k = 0; k < p; ++k) {
            SparseVec placed;
            for (const auto& [m, c] : v) placed.emplace_back(out.coord(k, m), c);
            out.add(placed);
        }
    return out;
}

void require_inside(const Subspace& ideal, int d, const std::string& what) {
    if (!maximal_ideal_power(ideal.ring(), d).contains(ideal)) throw std::invalid_argument("ideal a must lie in " + what);
}

}  // namespace

ConditionSpec condition_spec(Group group, const RingPtr& ring, int d) {
    return ConditionSpec{group, maximal_ideal_power(ring, d)};
}

ConditionSpec condition_spec(Group group, const RingPtr& ring, const std::vector<Jet>& generators) {
    return ConditionSpec{group, ideal_from_generators(ring, generators)};
}

ConditionResult condition_check(const GermMap& f, const ConditionSpec& spec) {
    const RingPtr& ring = f.ring;
    const Subspace& a = spec.ideal;
    if (!a.ring()->same_as(*ring) || a.p() != 1) throw std::invalid_argument("ideal must be a scalar subspace of the map's ring");
    if (spec.group == Group::L) throw std::invalid_argument("condition shapes exist for R, K and A");
    if (spec.group == Group::R)
        require_inside(a, 1, "m");
    else
        require_inside(a, 2, "m^2");
    auto ord = f.ord();
    if (!ord) throw std::invalid_argument("condition check needs f != 0");
    ConditionResult out;
    out.ord = *ord;
    int p = f.p();

    Subspace lhs_ideal = subspace_multiply(subspace_multiply(a, a), maximal_ideal_power(ring, std::max(*ord - 2, 0)));
    Subspace lhs = free_multiple(lhs_ideal, p);

    Subspace tr = tangent_space(f, GroupSpec{Group::R, -1}).space;
    Subspace ma = subspace_multiply(a, maximal_ideal_power(ring, 1));
    Subspace rhs(ring, p);
    switch (spec.group) {
        case Group::K: {
            Subspace comps = ideal_from_generators(ring, f.comps);
            rhs = subspace_sum(subspace_multiply(tr, ma),
                               free_multiple(subspace_multiply(comps, maximal_ideal_power(ring, 1)), p));
            break;
        }
        case Group::A:
            rhs = subspace_sum(subspace_multiply(tr, a), tangent_space(f, GroupSpec{Group::L, 1}).space);
            break;
        default: rhs = subspace_multiply(tr, ma); break;
    }

    out.holds = true;
    for (const auto& v : lhs.basis()) {
        if (rhs.contains(v)) continue;
        out.holds = false;
        out.failing = rhs.index(v.front().first);
        out.failing_str = vec_str(ring, p, v);
        break;
    }
    // only module-shaped right sides admit the Nakayama certificate
    if (out.holds && spec.group != Group::A) out.certified = finiteness_certificate(rhs).has_value();
    return out;
}

QuotientData algebra_fingerprint(const GermMap& f, const ConditionSpec& spec) {
    const RingPtr& ring = f.ring;
    Subspace ideal(ring, 1);
    switch (spec.group) {
        case Group::K: {
            if (f.p() != 1 || ring->has_quotient())
                throw Refusal("a_R is only defined as Jac(f) for p = 1 and J = 0; the general shape is not available");
            std::vector<Jet> jac;
            for (int i = 0; i < ring->n_source(); ++i) jac.push_back(jet_partial(f.comps[0], i));
            ideal = subspace_sum(ideal_from_generators(ring, f.comps), subspace_multiply(ideal_from_generators(ring, jac), spec.ideal));
            break;
        }
        case Group::A:
            ideal = subspace_sum(ideal_from_generators(ring, f.comps), subspace_multiply(spec.ideal, spec.ideal));
            break;
        default: throw Refusal("a_R is not defined for this group; the general shape is not available");
    }
    QuotientData q = quotient(ideal);
    q.certificate_degree = finiteness_certificate(ideal);
    q.certified = q.certificate_degree.has_value();
    return q;
}

bool corollary_trivial_check(const UnfoldingMap& F, GroupSpec spec) {
    if (spec.group != Group::K && spec.group != Group::A) throw std::invalid_argument("corollary check exists for K and A");
    if (!F.family->field().is_rational()) {
        SeparabilityVerdict v = separability(F, spec, F.family->degree_t());
        if (v.kind == SeparabilityVerdict::Inseparable) throw Refusal("family is " + group_name(spec.group) + "-inseparable");
    }
    UnfoldingMap trivial = UnfoldingMap::constant(F.base, F.family->param_names(), F.family->degree_t());
    Subspace shell = degree_shell(F.family, F.p(), F.family->degree_x());
    Subspace moving = subspace_sum(tangent_space(F, spec).space, shell);
    Subspace still = subspace_sum(tangent_space(trivial, spec).space, shell);
    return moving.equals(still);
}

}  // namespace singkit
