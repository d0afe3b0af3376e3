#ifndef KIRWAN_EXPR_HPP
#define KIRWAN_EXPR_HPP

#include "kirwan/equivariant.hpp"
#include "kirwan/series.hpp"

#include <map>
#include <string>

namespace kirwan {

// Evaluation environment for series expressions.
struct ExprEnv {
    int trunc = 20;
    const std::map<std::string, TruncatedSeries>* names = nullptr;
    EquivariantEngine* engine = nullptr;   // for SS(n,d)/SSP(n,d)
};

// Series expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (factor | '*' factor | '/' denom)*
//   denom  := factor factor*          (juxtaposed parenthesized factors
//                                      after '/' divide as one product)
//   factor := atom ['^' uint]
//   atom   := uint | 't' | '(' expr ')' | func '(' args ')' | name
// Functions: BG(SLn|GLn|T^r|SO2|SO3), Proj(n), WProj(a,b,...), InvT(k),
// FinGeo(lo,hi), SS(n,d), SSP(n,d), Pal(expr, d).
// Division requires an invertible (nonzero constant term) denominator.
TruncatedSeries eval_series_expr(const std::string& text, const ExprEnv& env);

} // namespace kirwan

#endif
