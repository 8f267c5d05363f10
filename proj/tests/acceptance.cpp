// Acceptance suite: one PASS/FAIL line per criterion. With an argument, runs only that criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "singkit/matheryau.hpp"
#include "singkit/stability.hpp"
#include "singkit/unfolding.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

// Collects failed expectations of one criterion.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++count_;
    }
    bool ok() const { return count_ == 0; }
    std::string summary() const {
        std::string s = std::to_string(count_) + " failed: ";
        for (std::size_t i = 0; i < failures_.size(); ++i) s += (i ? "; " : "") + failures_[i];
        return s;
    }

private:
    std::vector<std::string> failures_;
    int count_ = 0;
};

const GroupSpec kR{Group::R, -1};
const GroupSpec kK{Group::K, -1};
constexpr std::array<Group, 3> kGroups{Group::R, Group::K, Group::A};

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

struct Fixture {
    FieldSpec field;
    std::vector<std::string> vars;
    std::vector<std::string> comps;
    int D;
};

GermMap make(const Fixture& fx) { return germ(ring(fx.field, fx.vars, fx.D), fx.comps); }

std::string label(const Fixture& fx) {
    std::string s = fx.field.name() + " (";
    for (std::size_t i = 0; i < fx.comps.size(); ++i) s += (i ? ", " : "") + fx.comps[i];
    return s + ")";
}

// Germs for the randomized invariance properties.
std::vector<Fixture> property_bases() {
    return {
        {Q(), {"x"}, {"x^3"}, 8},
        {Q(), {"x"}, {"x^4"}, 8},
        {Q(), {"x", "y"}, {"x^3+y^3"}, 7},
        {Q(), {"x", "y"}, {"x^2+y^4"}, 7},
        {F(5), {"x"}, {"x^3"}, 8},
        {F(5), {"x", "y"}, {"x^2+y^3"}, 7},
        {Q(), {"x", "u"}, {"x^3+u*x", "u"}, 6},
    };
}

UnfoldingMap random_unfolding(std::mt19937& rng, const GermMap& base, int T) {
    UnfoldingMap c = UnfoldingMap::constant(base, {"t"}, T);
    std::vector<Jet> comps = c.comps;
    Jet t = Jet::variable(c.family, "t");
    for (Jet& j : comps) j += t * random_jet(rng, c.family, 3, 1);
    return UnfoldingMap(base, comps);
}

void tjurina_table(Checker& c) {
    for (int k = 1; k <= 6; ++k) {
        std::string mono = "x^" + std::to_string(k + 1);
        GermMap f = germ(ring(Q(), {"x"}, 10), {mono});
        TjurinaResult t = tjurina(f);
        c.expect(t.tau == k && t.certified, "tau(" + mono + ") = " + std::to_string(t.tau));
        c.expect(oracle::tjurina(to_poly(f.comps[0]), 1, 10) == k, "oracle disagrees on " + mono);
    }
    for (auto [s, tau, D] : {std::tuple<std::string, int, int>{"x^3+y^3", 4, 8}, {"x^3+y^4", 6, 9}}) {
        GermMap f = germ(ring(Q(), {"x", "y"}, D), {s});
        TjurinaResult t = tjurina(f);
        c.expect(t.tau == tau && t.certified, "tau(" + s + ") = " + std::to_string(t.tau));
        c.expect(oracle::tjurina(to_poly(f.comps[0]), 2, D) == tau, "oracle disagrees on " + s);
    }
}

void char_p_tjurina(Checker& c) {
    GermMap f = germ(ring(F(3), {"x"}, 8), {"x^3"});
    TjurinaResult t = tjurina(f);
    c.expect(t.tau == 3, "tau = " + std::to_string(t.tau));
    c.expect(t.certified, "not certified");
    c.expect(oracle::tjurina(to_poly(f.comps[0]), 1, 8, 3) == 3, "oracle disagrees");
}

const char* kExI = "field F 5\nvars x\nmap f = (x^3)\nunfolding F params t = (x^3 + t^5*x)\n";

void example_i(Checker& c) {
    cli::Options o;
    o.group = "R";
    cli::Outcome triv = cli::run("trivial", kExI, o);
    c.expect(triv.code == cli::kOk, "trivial exit code " + std::to_string(triv.code));
    c.expect(triv.out.rfind("infinitesimally trivial\nt: member, witness = 0,", 0) == 0, "trivial report: " + triv.out);
    cli::Outcome sep = cli::run("separable", kExI, o);
    c.expect(first_line(sep.out) == "INSEPARABLE at t-degree 5, class = x", "separable report: " + first_line(sep.out));
}

void example_ii(Checker& c) {
    GermMap f = germ(ring(F(2), {"x"}, 17), {"x^2+x^3"});
    UnfoldingMap F = unfold(f, {"t"}, 16, {"x^2+x^3*(1+t)"});
    TrivialityReport tr = inf_trivial(F, kR);
    c.expect(tr.trivial, "not infinitesimally trivial");
    c.expect(tr.params[0].within_level0, "witness not in (x)*T_R");
    SeparabilityVerdict v = separability(F, kR, 16);
    c.expect(v.kind == SeparabilityVerdict::Inseparable, "verdict " + kind_name(v.kind));
    c.expect(v.degree % 2 == 0 && v.degree <= 16, "degree " + std::to_string(v.degree));
    c.expect(v.degree == 4 && v.class_str == "1 + x", "golden mismatch: d = " + std::to_string(v.degree) + ", class " + v.class_str);
}

void versality(Checker& c) {
    GermMap f = germ(ring(Q(), {"x"}, 8), {"x^3"});
    c.expect(inf_versal(unfold(f, {"t1", "t2"}, 4, {"x^3+t1+t2*x"}), kR).versal, "x^3+t1+t2*x not versal");
    c.expect(!inf_versal(unfold(f, {"t"}, 4, {"x^3+t*x"}), kR).versal, "x^3+t*x versal");
    UnfoldingMap built = versal_construct(f, kR);
    T1Data d = t1(f, kR);
    c.expect(built.params() == 2, "constructed " + std::to_string(built.params()) + " parameters");
    c.expect(d.q.dimension == 2 && d.q.certified, "dim T1 = " + std::to_string(d.q.dimension));
    c.expect(inf_versal(built, kR).versal, "constructed unfolding not versal");
}

void stability(Checker& c) {
    auto stable = [&](const Fixture& fx) {
        StabilityVerdict v = inf_stable(make(fx));
        c.expect(v.kind == StabilityVerdict::CertifiedStable, label(fx) + " is " + kind_name(v.kind));
    };
    stable({Q(), {"x"}, {"x^2"}, 8});
    stable({Q(), {"x", "u"}, {"x^3+u*x", "u"}, 8});
    stable({Q(), {"x", "u1", "u2"}, {"x^4+u1*x+u2*x^2", "u1", "u2"}, 8});
    GermMap cubic = germ(ring(Q(), {"x"}, 8), {"x^3"});
    StabilityVerdict v = inf_stable(cubic);
    bool has_x = false;
    for (const auto& r : v.residue) has_x |= coord_str(cubic.ring, 1, r) == "x";
    c.expect(v.kind == StabilityVerdict::NotStable && has_x, "x^3 verdict " + kind_name(v.kind));

    for (const Fixture& fx : {Fixture{Q(), {"x"}, {"x^3"}, 8}, Fixture{Q(), {"x"}, {"x^4"}, 8}, Fixture{Q(), {"x", "y"}, {"x^3+y^3"}, 7}}) {
        GermMap f = make(fx);
        GermMap F = stable_unfolding(f);
        c.expect(inf_stable(F).kind == StabilityVerdict::CertifiedStable, "stable unfolding of " + label(fx) + " not certified");
        Fingerprint a = k_fingerprint(f), b = k_fingerprint(genotype(F).genotype);
        c.expect(a.tau == b.tau && a.hilbert == b.hilbert && a.ord == b.ord && a.source_dim == b.source_dim &&
                     a.target_dim == b.target_dim,
                 "fingerprint changed for " + label(fx));
    }
}

void lemma_span(Checker& c) {
    std::vector<Fixture> catalog = {
        {Q(), {"x"}, {"x^2"}, 8},           {Q(), {"x"}, {"x^3"}, 8},          {Q(), {"x"}, {"x^4"}, 8},
        {Q(), {"x", "y"}, {"x^2+y^2"}, 7},  {Q(), {"x", "y"}, {"x^3+y^3"}, 7}, {Q(), {"x", "y"}, {"x^3+y^4"}, 8},
        {Q(), {"x", "y"}, {"x^2*y+y^4"}, 8}, {Q(), {"x", "y"}, {"x*y", "x^2+y^2"}, 6},
        {F(5), {"x"}, {"x^3"}, 8},          {F(5), {"x", "y"}, {"x^2+y^3"}, 7}, {F(5), {"x", "y"}, {"x^3+y^4"}, 8},
    };
    int q = 0, p = 0;
    for (const auto& fx : catalog) {
        GermMap f = make(fx);
        c.expect(t1(f, kK).q.certified, label(fx) + " is not K-finite at D");
        c.expect(ta_vs_tk_check(f), "span check fails for " + label(fx));
        (fx.field.is_rational() ? q : p)++;
    }
    c.expect(q + p >= 8 && q > 0 && p > 0, "catalog too small");
}

void transversal(Checker& c) {
    TransversalData cubic = k_to_a_transversal(germ(ring(Q(), {"x"}, 8), {"x^3"}));
    c.expect(cubic.q.dimension == 0, "x^3 transversal dim " + std::to_string(cubic.q.dimension));
    int d14 = k_to_a_transversal(germ(ring(Q(), {"x", "y"}, 14), {"x^5+x^3*y^3+y^5"})).q.dimension;
    int d16 = k_to_a_transversal(germ(ring(Q(), {"x", "y"}, 16), {"x^5+x^3*y^3+y^5"})).q.dimension;
    c.expect(d14 == d16, "not D-stable: " + std::to_string(d14) + " vs " + std::to_string(d16));
    c.expect(d14 == 0, "golden mismatch: " + std::to_string(d14));
}

void mather_yau(Checker& c) {
    RingPtr r = ring(Q(), {"x"}, 10);
    GermMap cubic = germ(r, {"x^3"});
    ConditionSpec a = condition_spec(Group::K, r, std::vector<Jet>{J(r, "x^2")});
    c.expect(condition_check(cubic, a).holds, "condition fails for x^3");
    c.expect(algebra_fingerprint(cubic, a).dimension == 3, "fingerprint dim != 3");

    RingPtr r2 = ring(F(2), {"x", "y"}, 12);
    GermMap f = germ(r2, {"x^3+y^7"}), g = germ(r2, {"x^3+y^7+x^2*y^2"});
    auto jac = [&](const GermMap& h) {
        return ideal_from_generators(r2, {jet_partial(h.comps[0], 0), jet_partial(h.comps[0], 1)});
    };
    c.expect(jac(f).equals(jac(g)), "Jacobian ideals differ");
    QuotientData qa = algebra_fingerprint(f, condition_spec(Group::K, r2, 1));
    QuotientData qb = algebra_fingerprint(g, condition_spec(Group::K, r2, 1));
    c.expect(qa.dimension == qb.dimension && qa.hilbert == qb.hilbert, "m-fingerprints differ");
}

void invariance(Checker& c) {
    constexpr int kTrials = 100;
    auto bases = property_bases();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Fixture& fx = bases[trial % bases.size()];
        Group g = kGroups[trial % 3];
        GermMap f = make(fx);
        UnfoldingMap F = trial % 2 ? random_unfolding(rng, f, 3) : UnfoldingMap::constant(f, {"t"}, 3);
        UnfoldingMap moved(f, random_group_action(rng, g, F.comps));
        c.expect(inf_trivial(F, GroupSpec{g, -1}).trivial == inf_trivial(moved, GroupSpec{g, -1}).trivial,
                 "triviality changed, trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < kTrials; ++trial) {
        const Fixture& fx = bases[trial % bases.size()];
        Group g = kGroups[trial % 3];
        GermMap f = make(fx);
        UnfoldingMap F = trial % 2 ? random_unfolding(rng, f, 2) : versal_construct(f, kK);
        UnfoldingMap moved(f, random_group_action(rng, g, F.comps));
        c.expect(inf_versal(F, GroupSpec{g, -1}).versal == inf_versal(moved, GroupSpec{g, -1}).versal,
                 "versality changed, trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < kTrials; ++trial) {
        const Fixture& fx = bases[trial % bases.size()];
        Group g = trial % 2 ? Group::K : Group::R;
        GermMap f = make(fx);
        auto sub = random_unipotent(rng, f.ring);
        std::vector<Jet> comps;
        for (const Jet& j : f.comps) comps.push_back(jet_substitute(j, sub));
        T1Data a = t1(f, GroupSpec{g, -1}), b = t1(GermMap(f.ring, comps), GroupSpec{g, -1});
        if (!a.q.certified) continue;
        c.expect(b.q.certified && a.q.dimension == b.q.dimension && a.q.hilbert == b.q.hilbert,
                 "certified T1 changed for " + label(fx) + ", trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < kTrials; ++trial) {
        const Fixture& fx = bases[trial % bases.size()];
        Group g = kGroups[trial % 3];
        GermMap f = make(fx);
        TangentSpace base_ts = tangent_space(f, GroupSpec{g, -1});
        std::vector<SparseVec> lambda;
        for (const auto& cb : quotient(base_ts.space).cobasis)
            lambda.push_back(SparseVec{{base_ts.space.coord(cb.component, cb.monomial), Scalar::one(fx.field)}});
        UnfoldingMap F = random_unfolding(rng, f, 2);
        for (const UnfoldingMap& G : {F, UnfoldingMap(f, random_group_action(rng, g, F.comps))}) {
            Subspace lifted = tangent_space(G, GroupSpec{g, -1}).space;
            for (const auto& v : lambda) {
                std::vector<Jet> comps;
                for (const Jet& j : from_vec(f.ring, f.p(), v)) comps.push_back(transfer(j, G.family));
                for (int m = 0; m < G.family->size(); ++m)
                    if (G.family->x_degree(m) == 0) {
                        std::vector<Jet> shifted;
                        for (const Jet& j : comps) shifted.push_back(j.mul_monomial(m));
                        lifted.add(to_vec(shifted));
                    }
            }
            c.expect(lifted.rank() == lifted.ambient_dim(), "coverage lost for " + label(fx) + ", trial " + std::to_string(trial));
        }
    }
}

void closure(Checker& c) {
    constexpr int kTrials = 50;
    std::vector<Fixture> bases;
    for (const auto& fx : property_bases())
        if (fx.field.is_rational()) bases.push_back(fx);
    std::mt19937 rng(77);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Fixture& fx = bases[trial % bases.size()];
        Group g = kGroups[trial % 3];
        GermMap f = make(fx);
        UnfoldingMap moved(f, random_group_action(rng, g, UnfoldingMap::constant(f, {"t"}, 3).comps));
        c.expect(inf_trivial(moved, GroupSpec{g, -1}).trivial, "not trivial: " + label(fx) + ", trial " + std::to_string(trial));
        PreNormalForm form = prenormal(moved, GroupSpec{g, -1}, 3);
        c.expect(form.trivial() && form.complete, "nonzero a_j: " + label(fx) + ", trial " + std::to_string(trial));
    }
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Checker&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "Tjurina numbers of the A_k and E-type table over Q", tjurina_table},
        {2, "Tjurina number of x^3 over F_3", char_p_tjurina},
        {3, "F_5 family x^3 + t^5 x: trivial with zero witness, inseparable at degree 5", example_i},
        {4, "F_2 family x^2 + x^3(1+t): trivial, inseparable at an even degree", example_ii},
        {5, "R-versality of x^3 unfoldings and minimal versal construction", versality},
        {6, "stability verdicts and genotype round-trip of stable unfoldings", stability},
        {7, "span check of T_A f against the K-cobasis on the K-finite catalog", lemma_span},
        {8, "K-to-A transversal module of x^3 and x^5 + x^3 y^3 + y^5", transversal},
        {9, "condition check, fingerprints and the characteristic 2 pair", mather_yau},
        {10, "invariance and lifting properties, 100 trials each", invariance},
        {11, "char 0 orbits of constant unfoldings, 50 trials", closure},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (const auto& cr : criteria()) {
        if (only && cr.id != only) continue;
        Checker c;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << timing << ")";
        if (!c.ok()) std::cout << " -- " << c.summary();
        std::cout << "\n";
        failed += !c.ok();
    }
    return failed ? 1 : 0;
}
