#include <random>

#include "doctest.h"
#include "singkit/matheryau.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const GroupSpec kK{Group::K, -1};

int dim_of(const GermMap& f, int d) { return algebra_fingerprint(f, condition_spec(Group::K, f.ring, d)).dimension; }

}  // namespace

TEST_CASE("condition_check examples") {
    RingPtr r = ring(Q(), {"x"}, 10);
    GermMap cubic = germ(r, {"x^3"});
    std::vector<Jet> a = {J(r, "x^2")};
    ConditionResult k = condition_check(cubic, condition_spec(Group::K, r, a));
    CHECK(k.holds);
    CHECK(k.certified);
    CHECK(k.ord == 3);
    CHECK(condition_check(cubic, condition_spec(Group::R, r, a)).holds);
    CHECK(condition_check(cubic, condition_spec(Group::A, r, a)).holds);

    // ord(f) <= 2 uses R in place of m^(ord-2)
    CHECK(condition_check(germ(r, {"x"}), condition_spec(Group::R, r, std::vector<Jet>{J(r, "x")})).holds);
    ConditionResult fold = condition_check(germ(r, {"x^2"}), condition_spec(Group::R, r, std::vector<Jet>{J(r, "x")}));
    CHECK_FALSE(fold.holds);
    CHECK(fold.failing_str == "x^2");
    // a = m for x^3 under R: (x^3) against m * m * (x^2) = (x^4)
    ConditionResult miss = condition_check(cubic, condition_spec(Group::R, r, 1));
    CHECK_FALSE(miss.holds);
    REQUIRE(miss.failing.has_value());
    CHECK(miss.failing_str == "x^3");

    CHECK_THROWS_AS(condition_check(cubic, condition_spec(Group::K, r, 1)), std::invalid_argument);
}

TEST_CASE("condition_check golden value in characteristic 2") {
    for (int D : {12, 14}) {
        RingPtr r = ring(F(2), {"x", "y"}, D);
        ConditionResult res = condition_check(germ(r, {"x^3+y^7"}), condition_spec(Group::K, r, 3));
        CHECK_FALSE(res.holds);
        CHECK(res.failing_str == "x*y^6");
    }
}

TEST_CASE("condition_check is monotone along a * m^k") {
    struct Case {
        FieldSpec field;
        std::vector<std::string> vars;
        std::vector<std::string> comps;
        std::vector<std::string> ideal;
    };
    std::vector<Case> cases = {
        {Q(), {"x", "y"}, {"x^3+y^4"}, {"x^2", "x*y"}},
        {Q(), {"x", "y"}, {"x^2*y+y^4"}, {"y^2"}},
        {Q(), {"x", "y"}, {"x^2+y^3", "x*y"}, {"x^2", "y^2"}},
        {F(3), {"x", "y"}, {"x^4+y^5"}, {"x^2", "y^3"}},
        {F(2), {"x", "y"}, {"x^3+y^7"}, {"x*y"}},
    };
    for (const auto& c : cases) {
        RingPtr r = ring(c.field, c.vars, 10);
        GermMap f = germ(r, c.comps);
        for (Group g : {Group::R, Group::K, Group::A}) {
            std::vector<Jet> gens;
            for (const auto& s : c.ideal) gens.push_back(J(r, s));
            bool prev = false;
            for (int k = 0; k <= 3; ++k) {
                std::vector<Jet> shifted;
                for (const Jet& gj : gens)
                    for (int m = 0; m < r->size(); ++m)
                        if (r->degree(m) == k) shifted.push_back(gj.mul_monomial(m));
                bool now = condition_check(f, condition_spec(g, r, shifted)).holds;
                CAPTURE(c.comps[0]);
                CAPTURE(k);
                if (prev) CHECK(now);
                prev = now;
            }
            for (int d = 2; d <= 5; ++d) {
                bool here = condition_check(f, condition_spec(g, r, d)).holds;
                if (here) CHECK(condition_check(f, condition_spec(g, r, d + 1)).holds);
            }
        }
    }
}

TEST_CASE("algebra_fingerprint examples") {
    RingPtr r = ring(Q(), {"x"}, 10);
    QuotientData cubic = algebra_fingerprint(germ(r, {"x^3"}), condition_spec(Group::K, r, std::vector<Jet>{J(r, "x^2")}));
    CHECK(cubic.dimension == 3);
    CHECK(cubic.hilbert == std::vector<int>{1, 1, 1});
    CHECK(cubic.certified);
    CHECK(algebra_fingerprint(germ(r, {"x"}), condition_spec(Group::K, r, 0)).dimension == 0);

    RingPtr r2 = ring(Q(), {"x", "y"}, 8);
    QuotientData a_shape = algebra_fingerprint(germ(r2, {"x^2", "y^2"}), condition_spec(Group::A, r2, 1));
    // (x^2, y^2) + m^2 = m^2
    CHECK(a_shape.dimension == 3);

    CHECK_THROWS_AS(algebra_fingerprint(germ(r2, {"x^2", "y^2"}), condition_spec(Group::K, r2, 1)), Refusal);
    CHECK_THROWS_AS(algebra_fingerprint(germ(r2, {"x^2"}), condition_spec(Group::R, r2, 1)), Refusal);
}

TEST_CASE("characteristic 2 pair with equal Jacobian ideals has equal fingerprints") {
    RingPtr r = ring(F(2), {"x", "y"}, 12);
    GermMap f = germ(r, {"x^3+y^7"});
    GermMap g = germ(r, {"x^3+y^7+x^2*y^2"});
    for (int j = 0; j <= 1; ++j) {
        QuotientData a = algebra_fingerprint(f, condition_spec(Group::K, r, j));
        QuotientData b = algebra_fingerprint(g, condition_spec(Group::K, r, j));
        CHECK(a.dimension == b.dimension);
        CHECK(a.hilbert == b.hilbert);
        CHECK(a.certified);
        CHECK(b.certified);
    }
    // (x^3, x^2 y, x y^6, y^7)
    QuotientData level1 = algebra_fingerprint(f, condition_spec(Group::K, r, 1));
    CHECK(level1.dimension == 14);
}

TEST_CASE("fingerprints are invariant under coordinate changes") {
    std::mt19937 rng(99);
    int compared = 0;
    const std::vector<std::string> bases = {"x^3+y^4", "x^2*y+y^5", "x^3+x*y^3", "x^4+y^4+x^2*y^2"};
    for (FieldSpec field : {Q(), F(5)}) {
        RingPtr r = ring(field, {"x", "y"}, 12);
        for (const auto& s : bases) {
            GermMap f = germ(r, {s});
            auto sub = random_unipotent(rng, r);
            GermMap moved(r, {jet_substitute(f.comps[0], sub)});
            for (int d : {0, 1, 2}) {
                QuotientData a = algebra_fingerprint(f, condition_spec(Group::K, r, d));
                QuotientData b = algebra_fingerprint(moved, condition_spec(Group::K, r, d));
                CAPTURE(s);
                if (!a.certified || !b.certified) continue;
                CHECK(a.dimension == b.dimension);
                CHECK(a.hilbert == b.hilbert);
                ++compared;
            }
        }
    }
    CHECK(compared == 24);
    CHECK(dim_of(germ(ring(Q(), {"x"}, 10), {"x^4"}), 1) == 4);
}

TEST_CASE("corollary_trivial_check examples") {
    GermMap cubic = germ(ring(Q(), {"x"}, 8), {"x^3"});
    CHECK(corollary_trivial_check(UnfoldingMap::constant(cubic, {"t"}, 6), kK));
    CHECK(corollary_trivial_check(unfold(cubic, {"t"}, 6, {"x^3*(1+t)"}), kK));
    CHECK_FALSE(corollary_trivial_check(unfold(cubic, {"t"}, 6, {"x^3+t*x"}), kK));
    CHECK(corollary_trivial_check(UnfoldingMap::constant(cubic, {"t"}, 6), GroupSpec{Group::A, -1}));

    // unit multiple of the base in characteristic 2
    GermMap ex_ii = germ(ring(F(2), {"x"}, 17), {"x^2+x^3"});
    CHECK(corollary_trivial_check(unfold(ex_ii, {"t"}, 16, {"x^2+x^3*(1+t)"}), kK));
    GermMap ex_i = germ(ring(F(5), {"x"}, 8), {"x^3"});
    CHECK_THROWS_AS(corollary_trivial_check(unfold(ex_i, {"t"}, 16, {"x^3+t^5*x"}), kK), Refusal);
}
