#pragma once

#include "cliffsym/simplex.hpp"
#include "cliffsym/symprod.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cliffsym {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Basis, Name, Neg, Add, Sub, Mul, Pow, Inv, Sym };
    Kind kind;
    double number = 0.0;
    std::string text;  // basis digits or binding name
    int exponent = 0;
    std::vector<ExprPtr> args;
};

bool operator==(const Expr& a, const Expr& b);

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := '-'? factor factor*
//   factor := atom ('^' int | '^-1')?
//   atom   := number | 'e' digits | name | '(' expr ')' | 'sym(' list ')'
// Inside sym(...) juxtaposed factors are separate entries; an entry may be a
// sum of factors, and commas may separate entries. max_index bounds e-digits
// (negative means unchecked).
ExprPtr parse_expr(const std::string& text, int max_index = -1);
std::string print_expr(const Expr& e);

struct EvalConfig {
    int dim = 3;
    Engine engine = Engine::Auto;
    QuadratureSpec quad;
    std::map<std::string, MV> bindings;
};

struct EvalInfo {
    std::vector<std::string> engines;  // one per sym block, in evaluation order
    double error_estimate = 0.0;
    bool quadrature = false;
};

MV eval_expr(const Expr& e, const EvalConfig& cfg, EvalInfo* info = nullptr);

}  // namespace cliffsym
