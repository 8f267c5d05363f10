#include "singkit/expr.hpp"

#include <cctype>

namespace singkit {

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (c == '\n') {
            out.push_back({Token::Newline, "\n", line, col});
            advance(1);
            continue;
        }
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        std::size_t j = i;
        if (std::isalpha(c) || c == '_') {
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            t.kind = Token::Ident;
        } else if (std::isdigit(c)) {
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Token::Number;
        } else if (std::string_view("+-*^(),=").find(static_cast<char>(c)) != std::string_view::npos) {
            j = i + 1;
            t.kind = Token::Symbol;
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        t.text = std::string(text.substr(i, j - i));
        out.push_back(t);
        advance(j - i);
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

bool ExprParser::accept(const std::string& sym) {
    if (peek().kind == Token::Symbol && peek().text == sym) {
        ++pos_;
        return true;
    }
    return false;
}

std::unique_ptr<Expr> ExprParser::parse_sum() {
    auto lhs = parse_term();
    for (;;) {
        const Token& t = peek();
        Expr::Kind k;
        if (accept("+"))
            k = Expr::Add;
        else if (accept("-"))
            k = Expr::Sub;
        else
            return lhs;
        auto node = std::make_unique<Expr>();
        node->kind = k;
        node->line = t.line;
        node->col = t.col;
        node->lhs = std::move(lhs);
        node->rhs = parse_term();
        lhs = std::move(node);
    }
}

std::unique_ptr<Expr> ExprParser::parse_term() {
    auto lhs = parse_unary();
    for (;;) {
        const Token& t = peek();
        if (!accept("*")) return lhs;
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Mul;
        node->line = t.line;
        node->col = t.col;
        node->lhs = std::move(lhs);
        node->rhs = parse_unary();
        lhs = std::move(node);
    }
}

std::unique_ptr<Expr> ExprParser::parse_unary() {
    const Token& t = peek();
    if (accept("-")) {
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Neg;
        node->line = t.line;
        node->col = t.col;
        node->lhs = parse_unary();
        return node;
    }
    return parse_power();
}

std::unique_ptr<Expr> ExprParser::parse_power() {
    auto base = parse_atom();
    const Token& t = peek();
    if (!accept("^")) return base;
    const Token& e = peek();
    if (e.kind != Token::Number) throw ParseError(e.line, e.col, "expected a non-negative integer exponent");
    if (e.text.size() > 4) throw ParseError(e.line, e.col, "exponent too large");
    ++pos_;
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Pow;
    node->line = t.line;
    node->col = t.col;
    node->lhs = std::move(base);
    node->exponent = std::stoi(e.text);
    return node;
}

std::unique_ptr<Expr> ExprParser::parse_atom() {
    const Token& t = peek();
    auto node = std::make_unique<Expr>();
    node->line = t.line;
    node->col = t.col;
    if (t.kind == Token::Number) {
        node->kind = Expr::Num;
        node->value = mpz_class(t.text);
        ++pos_;
        return node;
    }
    if (t.kind == Token::Ident) {
        node->kind = Expr::Var;
        node->name = t.text;
        ++pos_;
        return node;
    }
    if (accept("(")) {
        auto inner = parse_sum();
        const Token& close = peek();
        if (!accept(")")) throw ParseError(close.line, close.col, "expected ')'");
        return inner;
    }
    throw ParseError(t.line, t.col, t.kind == Token::End || t.kind == Token::Newline ? "unexpected end of expression"
                                                                                    : "unexpected '" + t.text + "'");
}

Jet eval_expr(const Expr& e, const RingPtr& ring) {
    switch (e.kind) {
        case Expr::Num:
            return Jet::constant(ring, Scalar(ring->field(), mpq_class(e.value)));
        case Expr::Var: {
            int v = ring->var_index(e.name);
            if (v < 0) throw ParseError(e.line, e.col, "undeclared variable '" + e.name + "'");
            return Jet::variable(ring, v);
        }
        case Expr::Add:
            return eval_expr(*e.lhs, ring) + eval_expr(*e.rhs, ring);
        case Expr::Sub:
            return eval_expr(*e.lhs, ring) - eval_expr(*e.rhs, ring);
        case Expr::Mul:
            return eval_expr(*e.lhs, ring) * eval_expr(*e.rhs, ring);
        case Expr::Neg:
            return -eval_expr(*e.lhs, ring);
        case Expr::Pow:
            return jet_pow(eval_expr(*e.lhs, ring), e.exponent);
    }
    return Jet(ring);
}

void collect_vars(const Expr& e, std::vector<const Expr*>& out) {
    if (e.kind == Expr::Var) out.push_back(&e);
    if (e.lhs) collect_vars(*e.lhs, out);
    if (e.rhs) collect_vars(*e.rhs, out);
}

Jet parse_jet(const RingPtr& ring, std::string_view text) {
    auto toks = tokenize(text);
    ExprParser p(toks, 0);
    auto e = p.parse_sum();
    const Token& t = toks[p.position()];
    if (t.kind != Token::End) throw ParseError(t.line, t.col, "unexpected '" + t.text + "'");
    return eval_expr(*e, ring);
}

GermMap parse_germ(const RingPtr& ring, const std::vector<std::string>& comps) {
    std::vector<Jet> js;
    for (const auto& c : comps) js.push_back(parse_jet(ring, c));
    return GermMap(ring, std::move(js));
}

UnfoldingMap parse_unfolding(const GermMap& base, const std::vector<std::string>& params, int degree_t,
                             const std::vector<std::string>& comps) {
    RingPtr fam = base.ring->with_params(params, degree_t);
    std::vector<Jet> js;
    for (const auto& c : comps) js.push_back(parse_jet(fam, c));
    return UnfoldingMap(base, std::move(js));
}

}  // namespace singkit
