#include "singkit/session.hpp"

#include <algorithm>
#include <cctype>

namespace singkit {

namespace {

// Cap on the exact-evaluation degree used by parse-time checks.
constexpr int kExactDegreeCap = 30;

// Upper bound on the total degree of the polynomial an expression denotes.
int degree_bound(const Expr& e) {
    switch (e.kind) {
        case Expr::Num: return 0;
        case Expr::Var: return 1;
        case Expr::Add:
        case Expr::Sub: return std::max(degree_bound(*e.lhs), degree_bound(*e.rhs));
        case Expr::Mul: return std::min(kExactDegreeCap, degree_bound(*e.lhs) + degree_bound(*e.rhs));
        case Expr::Neg: return degree_bound(*e.lhs);
        case Expr::Pow: return std::min<long long>(kExactDegreeCap, 1LL * e.exponent * degree_bound(*e.lhs));
    }
    return 0;
}

int degree_bound(const std::vector<Session::ExprPtr>& es) {
    int d = 1;
    for (const auto& e : es) d = std::max(d, degree_bound(*e));
    return d;
}

class ScriptParser {
public:
    explicit ScriptParser(std::string_view text) : toks_(tokenize(text)) {}

    Session run() {
        while (peek().kind != Token::End) {
            if (peek().kind == Token::Newline) {
                ++pos_;
                continue;
            }
            statement();
            const Token& t = peek();
            if (t.kind != Token::Newline && t.kind != Token::End) fail(t, "unexpected '" + t.text + "'");
        }
        return std::move(s_);
    }

private:
    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    bool is_symbol(const std::string& sym) const { return peek().kind == Token::Symbol && peek().text == sym; }
    void expect_symbol(const std::string& sym) {
        if (!is_symbol(sym)) fail(peek(), "expected '" + sym + "'");
        ++pos_;
    }
    std::string ident(const std::string& what) {
        if (peek().kind != Token::Ident) fail(peek(), "expected " + what);
        return next().text;
    }
    int integer(const std::string& what) {
        bool neg = is_symbol("-");
        if (neg) ++pos_;
        const Token& t = peek();
        if (t.kind != Token::Number || t.text.size() > 9) fail(t, "expected " + what);
        ++pos_;
        int v = std::stoi(t.text);
        return neg ? -v : v;
    }
    Session::ExprPtr poly() {
        ExprParser p(toks_, pos_);
        std::shared_ptr<const Expr> e = p.parse_sum();
        pos_ = p.position();
        return e;
    }
    // Records where each expression starts in starts_.
    std::vector<Session::ExprPtr> poly_list() {
        starts_ = {peek()};
        std::vector<Session::ExprPtr> out{poly()};
        while (is_symbol(",")) {
            ++pos_;
            starts_.push_back(peek());
            out.push_back(poly());
        }
        return out;
    }
    std::vector<Session::ExprPtr> tuple() {
        expect_symbol("=");
        expect_symbol("(");
        auto out = poly_list();
        expect_symbol(")");
        return out;
    }

    void check_vars(const std::vector<Session::ExprPtr>& es, const std::vector<std::string>& allowed) {
        for (const auto& e : es) {
            std::vector<const Expr*> vs;
            collect_vars(*e, vs);
            for (const Expr* v : vs)
                if (std::find(allowed.begin(), allowed.end(), v->name) == allowed.end())
                    throw ParseError(v->line, v->col, "undeclared variable '" + v->name + "'");
        }
    }
    void check_name(const Token& t) {
        if (s_.find_map(t.text) || s_.find_unfolding(t.text)) fail(t, "name '" + t.text + "' already declared");
    }

    void statement() {
        const Token& kw = peek();
        if (kw.kind != Token::Ident) fail(kw, "expected a statement keyword");
        ++pos_;
        if (kw.text == "field")
            field(kw);
        else if (kw.text == "vars")
            vars(kw);
        else if (kw.text == "map")
            map(kw);
        else if (kw.text == "unfolding")
            unfolding(kw);
        else if (kw.text == "jetdeg" || kw.text == "tdeg") {
            int v = integer("a non-negative integer");
            if (v < (kw.text == "jetdeg" ? 1 : 0)) fail(kw, kw.text + " out of range");
            (kw.text == "jetdeg" ? s_.jetdeg : s_.tdeg) = v;
        } else if (kw.text == "group") {
            const Token& g = peek();
            std::string name = ident("a group name");
            if (name != "R" && name != "K" && name != "A") fail(g, "group must be R, K or A");
            s_.group = parse_group(name);
            if (peek().kind == Token::Ident && peek().text == "level") {
                ++pos_;
                int j = integer("an integer level");
                if (j < -1) fail(kw, "level must be at least -1");
                s_.level = j;
            }
        } else {
            fail(kw, "unknown statement '" + kw.text + "'");
        }
    }

    void field(const Token& kw) {
        if (has_field_) fail(kw, "field declared twice");
        const Token& t = peek();
        std::string name = ident("Q or F p");
        if (name == "Q") {
            s_.field = FieldSpec::rationals();
        } else if (name == "F" || (name.size() > 1 && name[0] == 'F' &&
                                     std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))) {
            std::string digits = name.substr(1);
            if (digits.empty()) {
                if (peek().kind != Token::Number) fail(peek(), "expected a prime modulus");
                digits = next().text;
            }
            if (digits.size() > 9) fail(t, "modulus too large");
            std::uint64_t p = std::stoull(digits);
            if (!is_prime(p)) fail(t, "field modulus " + digits + " is not prime");
            s_.field = FieldSpec::prime(p);
        } else {
            fail(t, "expected Q or F p");
        }
        has_field_ = true;
    }

    void vars(const Token& kw) {
        if (!has_field_) fail(kw, "field must precede vars");
        if (!s_.vars.empty()) fail(kw, "vars declared twice");
        while (peek().kind == Token::Ident && peek().text != "mod") {
            const Token& v = next();
            if (std::find(s_.vars.begin(), s_.vars.end(), v.text) != s_.vars.end()) fail(v, "variable '" + v.text + "' declared twice");
            s_.vars.push_back(v.text);
        }
        if (s_.vars.empty()) fail(peek(), "expected variable names");
        if (peek().kind == Token::Ident && peek().text == "mod") {
            ++pos_;
            RingPtr free = JetRing::make(s_.field, s_.vars, {}, 2);
            for (;;) {
                const Token start = peek();
                Session::ExprPtr g = poly();
                check_vars({g}, s_.vars);
                auto o = eval_expr(*g, free).ord();
                if (o && *o < 2) fail(start, "quotient generator of order < 2");
                s_.quotient.push_back(g);
                if (!is_symbol(",")) break;
                ++pos_;
            }
        }
    }

    void map(const Token& kw) {
        if (s_.vars.empty()) fail(kw, "vars must precede map");
        const Token& name = peek();
        Session::MapDecl m;
        m.name = ident("a map name");
        check_name(name);
        m.line = kw.line;
        m.comps = tuple();
        check_vars(m.comps, s_.vars);
        RingPtr exact = s_.ring(degree_bound(m.comps));
        for (std::size_t i = 0; i < m.comps.size(); ++i)
            if (!eval_expr(*m.comps[i], exact).constant_term().is_zero()) fail(starts_[i], "map component has a nonzero constant term");
        s_.maps.push_back(std::move(m));
    }

    void unfolding(const Token& kw) {
        if (s_.maps.empty()) fail(kw, "unfolding needs a declared base map");
        const Token& name = peek();
        Session::UnfoldingDecl u;
        u.name = ident("an unfolding name");
        check_name(name);
        u.line = kw.line;
        u.base = s_.maps.back().name;
        if (!(peek().kind == Token::Ident && peek().text == "params")) fail(peek(), "expected 'params'");
        ++pos_;
        while (peek().kind == Token::Ident) {
            const Token& p = next();
            if (std::find(s_.vars.begin(), s_.vars.end(), p.text) != s_.vars.end() ||
                std::find(u.params.begin(), u.params.end(), p.text) != u.params.end())
                fail(p, "parameter '" + p.text + "' clashes with a declared name");
            u.params.push_back(p.text);
        }
        if (u.params.empty()) fail(peek(), "expected parameter names");
        const Token open = peek();
        u.comps = tuple();
        std::vector<std::string> allowed = s_.vars;
        allowed.insert(allowed.end(), u.params.begin(), u.params.end());
        check_vars(u.comps, allowed);
        const auto& base = s_.maps.back();
        if (u.comps.size() != base.comps.size()) fail(open, "unfolding has a different number of components than map '" + base.name + "'");
        int d = std::max(degree_bound(u.comps), degree_bound(base.comps));
        RingPtr exact = s_.ring(d);
        RingPtr fam = exact->with_params(u.params, d);
        for (std::size_t i = 0; i < u.comps.size(); ++i) {
            Jet c = eval_expr(*u.comps[i], fam);
            if (!c.constant_term().is_zero()) fail(starts_[i], "unfolding component has a nonzero constant term");
            if (transfer(c, exact) != eval_expr(*base.comps[i], exact))
                fail(starts_[i], "unfolding '" + u.name + "' does not restrict to map '" + base.name + "'");
        }
        s_.unfoldings.push_back(std::move(u));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Token> starts_;
    Session s_;
    bool has_field_ = false;
};

}  // namespace

const Session::MapDecl* Session::find_map(const std::string& name) const {
    for (const auto& m : maps)
        if (m.name == name) return &m;
    return nullptr;
}

const Session::UnfoldingDecl* Session::find_unfolding(const std::string& name) const {
    for (const auto& u : unfoldings)
        if (u.name == name) return &u;
    return nullptr;
}

RingPtr Session::ring(int degree_x) const {
    if (quotient.empty()) return JetRing::make(field, vars, {}, degree_x);
    RingPtr free = JetRing::make(field, vars, {}, degree_x);
    std::vector<Jet> gens;
    for (const auto& g : quotient) gens.push_back(eval_expr(*g, free));
    return JetRing::make(field, vars, {}, degree_x, 0, gens);
}

GermMap Session::build_map(const MapDecl& m, int degree_x) const {
    RingPtr r = ring(degree_x);
    std::vector<Jet> comps;
    for (const auto& c : m.comps) comps.push_back(eval_expr(*c, r));
    return GermMap(r, std::move(comps));
}

UnfoldingMap Session::build_unfolding(const UnfoldingDecl& u, int degree_x, int degree_t) const {
    GermMap base = build_map(*find_map(u.base), degree_x);
    RingPtr fam = base.ring->with_params(u.params, degree_t);
    std::vector<Jet> comps;
    for (const auto& c : u.comps) comps.push_back(eval_expr(*c, fam));
    return UnfoldingMap(base, std::move(comps));
}

Session parse_session(std::string_view text) { return ScriptParser(text).run(); }

}  // namespace singkit
