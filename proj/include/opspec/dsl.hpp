#pragma once

#include "opspec/operator_expr.hpp"

#include <memory>
#include <string>
#include <vector>

namespace opspec {

/* Parse or elaboration failure, with a 1-based source position. */
struct DslError : std::runtime_error {
    int line, col;
    bool semantic;
    DslError(int line_, int col_, const std::string& msg, bool semantic_ = false)
        : std::runtime_error(msg), line(line_), col(col_), semantic(semantic_) {}
};

/* Parse tree of the operator DSL:

     expr    := term { "(+)" term } ;
     term    := atom [ "^" mult ] | "adj" "(" expr ")" ;
     atom    := "ushift" [ "(" gq "," gq ")" ]
              | "bshift" [ "(" gq "," gq ")" ]
              | "diag" "{" gq ":" mult { "," gq ":" mult } "}" ;
     mult    := nat | "inf" ;
     gq      := rat [ ("+"|"-") rat "i" ] | rat "i" ;
     rat     := ["-"] nat [ "/" nat ] ;                                  */
struct Ast {
    enum class Kind { DirectSum, Adj, UShift, BShift, Diag };
    Kind kind = Kind::UShift;
    int line = 1, col = 1;  // start of the production
    std::vector<Ast> children;             // DirectSum terms / Adj operand
    GQ a, b;                               // shift affine parameters
    ExtNat mult = ExtNat::fin(1);          // shift/diag multiplicity
    std::vector<std::pair<GQ, ExtNat>> values;  // diag
};

Ast parse(const std::string& text);
OperatorExpr elaborate(const Ast& ast);
inline OperatorExpr parse_operator(const std::string& text) { return elaborate(parse(text)); }

/* Canonical text; parse(print(e)) elaborates to a structurally equal e. */
std::string print_operator(const OperatorExpr& expr);

GQ parse_gq(const std::string& text);  // standalone scalar parser for CLI flags
std::string print_gq(const GQ& z);

}  // namespace opspec
