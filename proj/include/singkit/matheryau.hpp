#ifndef SINGKIT_MATHERYAU_HPP
#define SINGKIT_MATHERYAU_HPP

#include <optional>
#include <string>

#include "singkit/tangent.hpp"
#include "singkit/unfolding.hpp"

namespace singkit {

// Inclusion shape by group, with the ideal a given as a scalar subspace (p = 1):
//   K: a^2 m^(ord-2) R^p in m a T_R f + m (f) R^p
//   A: a^2 m^(ord-2) R^p in a T_R f + (y)^2 T_L f
//   R: a^2 m^(ord-2) R^p in m a T_R f
// with m^(ord-2) = R when ord(f) <= 2.
struct ConditionSpec {
    Group group = Group::K;
    Subspace ideal;
};

// a = m^d.
ConditionSpec condition_spec(Group group, const RingPtr& ring, int d);
ConditionSpec condition_spec(Group group, const RingPtr& ring, const std::vector<Jet>& generators);

struct ConditionResult {
    bool holds = false;
    // The right side contains m^N R^p for some N <= D-1, so a true verdict is exact.
    // False verdicts are always exact.
    bool certified = false;
    int ord = 0;
    std::optional<CoordIndex> failing;  // leading coordinate of the first left-side vector not included
    std::string failing_str;
};

ConditionResult condition_check(const GermMap& f, const ConditionSpec& spec);

// K: R/((f) + a Jac(f)) for p = 1, J = 0. A: R/((f_1..f_p) + a^2). R is refused.
QuotientData algebra_fingerprint(const GermMap& f, const ConditionSpec& spec);

// T_{G_t} f_t = T_{G_t} f_o at jet level, modulo the top x-degree shell.
// In positive characteristic the family must also be G-separable (one parameter).
bool corollary_trivial_check(const UnfoldingMap& F, GroupSpec spec);

}  // namespace singkit

#endif
