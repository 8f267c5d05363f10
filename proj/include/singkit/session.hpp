#ifndef SINGKIT_SESSION_HPP
#define SINGKIT_SESSION_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singkit/expr.hpp"
#include "singkit/tangent.hpp"

namespace singkit {

// Parsed session script:
//   field Q | field F p
//   vars x y [mod g1, g2]
//   map f = (p1, p2)
//   unfolding F params t s = (p1, p2)     (base: the most recent map)
//   jetdeg N | tdeg N | group R|K|A [level j]
struct Session {
    using ExprPtr = std::shared_ptr<const Expr>;

    struct MapDecl {
        std::string name;
        std::vector<ExprPtr> comps;
        int line = 0;
    };
    struct UnfoldingDecl {
        std::string name;
        std::string base;
        std::vector<std::string> params;
        std::vector<ExprPtr> comps;
        int line = 0;
    };

    FieldSpec field;
    std::vector<std::string> vars;
    std::vector<ExprPtr> quotient;
    std::vector<MapDecl> maps;
    std::vector<UnfoldingDecl> unfoldings;
    std::optional<int> jetdeg;
    std::optional<int> tdeg;
    std::optional<Group> group;
    std::optional<int> level;

    const MapDecl* find_map(const std::string& name) const;
    const UnfoldingDecl* find_unfolding(const std::string& name) const;

    RingPtr ring(int degree_x) const;
    GermMap build_map(const MapDecl& m, int degree_x) const;
    UnfoldingMap build_unfolding(const UnfoldingDecl& u, int degree_x, int degree_t) const;
};

// Throws ParseError with line and column on syntax and semantic errors.
Session parse_session(std::string_view text);

}  // namespace singkit

#endif
