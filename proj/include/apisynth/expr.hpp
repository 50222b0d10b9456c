#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace apisynth {

// Array-comprehension DSL terms. Binding forms (let, monadic bind, guard)
// carry their continuation, so a program body is a spine of statements ending
// in a result expression.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Var, Proj, Call, Let, Bind, Guard, Return };

    Kind kind = Kind::Var;
    std::string name;   // Var: variable; Call: method; Let/Bind: binder
    std::string label;  // Proj
    ExprPtr a, b, c;    // Proj: a=base. Call: unused. Let/Bind: a=rhs b=body.
                        // Guard: a=lhs b=rhs c=body. Return: a=value.
    std::vector<std::pair<std::string, ExprPtr>> args; // Call arguments, in order

    static ExprPtr var(std::string n);
    static ExprPtr proj(ExprPtr base, std::string label);
    static ExprPtr call(std::string method, std::vector<std::pair<std::string, ExprPtr>> args);
    static ExprPtr let(std::string binder, ExprPtr rhs, ExprPtr body);
    static ExprPtr bind(std::string binder, ExprPtr rhs, ExprPtr body);
    static ExprPtr guard(ExprPtr lhs, ExprPtr rhs, ExprPtr body);
    static ExprPtr ret(ExprPtr v);
};

struct Program {
    std::vector<std::string> params;
    ExprPtr body;

    bool operator==(const Program& o) const;
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Node count: every expression form and every call-argument pair counts one.
int ast_size(const ExprPtr& e);
int ast_size(const Program& p);

// Renames let/bind binders to x0, x1, ... in traversal order (params are kept:
// they are pinned by the query labels). Structural equality of normalized
// programs is alpha-equivalence.
Program alpha_normalize(const Program& p);

// Canonicalizing cleanup used for display and golden comparison: inlines
// single-use lets of variables/projection chains, fuses `let x = f(...)`
// immediately consumed by `y <- x`, and collapses a trailing
// `let r = return e; r` into `return e`. Preserves typing and replay
// semantics (no call is duplicated or reordered past another call).
Program simplify_program(const Program& p);

} // namespace apisynth
