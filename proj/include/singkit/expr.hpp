#ifndef SINGKIT_EXPR_HPP
#define SINGKIT_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "singkit/jet.hpp"

namespace singkit {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

struct Token {
    enum Kind { Ident, Number, Symbol, Newline, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

// Splits text into identifiers, integers, single-character symbols and newlines.
// '#' starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

struct Expr {
    enum Kind { Num, Var, Add, Sub, Mul, Pow, Neg } kind = Num;
    mpz_class value;
    std::string name;
    std::unique_ptr<Expr> lhs;
    std::unique_ptr<Expr> rhs;
    int exponent = 0;
    int line = 1;
    int col = 1;
};

// Recursive-descent polynomial parser over a token stream:
//   sum := term (('+'|'-') term)* ; term := unary ('*' unary)*
//   unary := '-' unary | power ; power := atom ['^' integer] ; atom := integer | ident | '(' sum ')'
class ExprParser {
public:
    ExprParser(const std::vector<Token>& tokens, std::size_t pos) : toks_(tokens), pos_(pos) {}
    std::unique_ptr<Expr> parse_sum();
    std::size_t position() const { return pos_; }

private:
    std::unique_ptr<Expr> parse_term();
    std::unique_ptr<Expr> parse_unary();
    std::unique_ptr<Expr> parse_power();
    std::unique_ptr<Expr> parse_atom();
    const Token& peek() const { return toks_[pos_]; }
    bool accept(const std::string& sym);

    const std::vector<Token>& toks_;
    std::size_t pos_;
};

// Variables not in the ring raise ParseError("undeclared variable ...").
Jet eval_expr(const Expr& e, const RingPtr& ring);
void collect_vars(const Expr& e, std::vector<const Expr*>& out);

// Convenience: parse a single polynomial expression into a ring.
Jet parse_jet(const RingPtr& ring, std::string_view text);
GermMap parse_germ(const RingPtr& ring, const std::vector<std::string>& comps);
UnfoldingMap parse_unfolding(const GermMap& base, const std::vector<std::string>& params, int degree_t,
                             const std::vector<std::string>& comps);

}  // namespace singkit

#endif
