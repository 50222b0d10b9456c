#include "apisynth/expr.hpp"

#include <map>
#include <optional>
#include <set>

namespace apisynth {

ExprPtr Expr::var(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    return e;
}

ExprPtr Expr::proj(ExprPtr base, std::string label) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Proj;
    e->a = std::move(base);
    e->label = std::move(label);
    return e;
}

ExprPtr Expr::call(std::string method, std::vector<std::pair<std::string, ExprPtr>> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->name = std::move(method);
    e->args = std::move(args);
    return e;
}

ExprPtr Expr::let(std::string binder, ExprPtr rhs, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Let;
    e->name = std::move(binder);
    e->a = std::move(rhs);
    e->b = std::move(body);
    return e;
}

ExprPtr Expr::bind(std::string binder, ExprPtr rhs, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bind;
    e->name = std::move(binder);
    e->a = std::move(rhs);
    e->b = std::move(body);
    return e;
}

ExprPtr Expr::guard(ExprPtr lhs, ExprPtr rhs, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Guard;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    e->c = std::move(body);
    return e;
}

ExprPtr Expr::ret(ExprPtr v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Return;
    e->a = std::move(v);
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->label != b->label) return false;
    if (a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i) {
        if (a->args[i].first != b->args[i].first) return false;
        if (!expr_equal(a->args[i].second, b->args[i].second)) return false;
    }
    return expr_equal(a->a, b->a) && expr_equal(a->b, b->b) && expr_equal(a->c, b->c);
}

bool Program::operator==(const Program& o) const {
    return params == o.params && expr_equal(body, o.body);
}

int ast_size(const ExprPtr& e) {
    if (!e) return 0;
    int n = 1;
    n += ast_size(e->a) + ast_size(e->b) + ast_size(e->c);
    for (const auto& [l, arg] : e->args) n += 1 + ast_size(arg);
    return n;
}

int ast_size(const Program& p) { return ast_size(p.body); }

namespace {

ExprPtr rename(const ExprPtr& e, std::map<std::string, std::string>& env,
               const std::set<std::string>& taken, int& counter) {
    if (!e) return nullptr;
    auto fresh = [&]() {
        std::string n;
        do {
            n = "x" + std::to_string(counter++);
        } while (taken.count(n));
        return n;
    };
    switch (e->kind) {
        case Expr::Kind::Var: {
            auto it = env.find(e->name);
            return Expr::var(it == env.end() ? e->name : it->second);
        }
        case Expr::Kind::Proj:
            return Expr::proj(rename(e->a, env, taken, counter), e->label);
        case Expr::Kind::Call: {
            std::vector<std::pair<std::string, ExprPtr>> args;
            for (const auto& [l, a] : e->args)
                args.emplace_back(l, rename(a, env, taken, counter));
            return Expr::call(e->name, std::move(args));
        }
        case Expr::Kind::Let:
        case Expr::Kind::Bind: {
            std::string nn = fresh();
            ExprPtr rhs = rename(e->a, env, taken, counter); // binder not visible in rhs
            auto saved = env.find(e->name) == env.end()
                             ? std::optional<std::string>{}
                             : std::optional<std::string>{env[e->name]};
            env[e->name] = nn;
            ExprPtr body = rename(e->b, env, taken, counter);
            if (saved) env[e->name] = *saved; else env.erase(e->name);
            return e->kind == Expr::Kind::Let ? Expr::let(nn, rhs, body)
                                              : Expr::bind(nn, rhs, body);
        }
        case Expr::Kind::Guard:
            return Expr::guard(rename(e->a, env, taken, counter),
                               rename(e->b, env, taken, counter),
                               rename(e->c, env, taken, counter));
        case Expr::Kind::Return:
            return Expr::ret(rename(e->a, env, taken, counter));
    }
    return nullptr;
}

} // namespace

Program alpha_normalize(const Program& p) {
    std::set<std::string> taken(p.params.begin(), p.params.end());
    std::map<std::string, std::string> env;
    int counter = 0;
    Program out;
    out.params = p.params;
    out.body = rename(p.body, env, taken, counter);
    return out;
}

namespace {

int count_uses(const ExprPtr& e, const std::string& name) {
    if (!e) return 0;
    int n = 0;
    if (e->kind == Expr::Kind::Var && e->name == name) n++;
    n += count_uses(e->a, name) + count_uses(e->b, name) + count_uses(e->c, name);
    for (const auto& [l, a] : e->args) n += count_uses(a, name);
    return n;
}

ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& repl) {
    if (!e) return nullptr;
    if (e->kind == Expr::Kind::Var) return e->name == name ? repl : e;
    auto out = std::make_shared<Expr>(*e);
    out->a = substitute(e->a, name, repl);
    out->b = substitute(e->b, name, repl);
    out->c = substitute(e->c, name, repl);
    for (auto& [l, a] : out->args) a = substitute(a, name, repl);
    return out;
}

// Variables and projection chains rooted at a variable: safe to move to their
// single use site (no effects, no replay involved).
bool is_pure_chain(const ExprPtr& e) {
    if (!e) return false;
    if (e->kind == Expr::Kind::Var) return true;
    if (e->kind == Expr::Kind::Proj) return is_pure_chain(e->a);
    return false;
}

ExprPtr simplify_once(const ExprPtr& e, bool& changed) {
    if (!e || changed) return e;
    if (e->kind == Expr::Kind::Let) {
        // trailing `let r = return v; r` -> `return v`
        if (e->a && e->a->kind == Expr::Kind::Return && e->b &&
            e->b->kind == Expr::Kind::Var && e->b->name == e->name) {
            changed = true;
            return e->a;
        }
        // `let x = f(...); x <- ...` fusion when x feeds the bind directly
        if (e->a && e->a->kind == Expr::Kind::Call && e->b &&
            e->b->kind == Expr::Kind::Bind && e->b->a &&
            e->b->a->kind == Expr::Kind::Var && e->b->a->name == e->name &&
            count_uses(e->b->b, e->name) == 0) {
            changed = true;
            return Expr::bind(e->b->name, e->a, e->b->b);
        }
        if (is_pure_chain(e->a) && count_uses(e->b, e->name) == 1) {
            changed = true;
            return substitute(e->b, e->name, e->a);
        }
    }
    auto out = std::make_shared<Expr>(*e);
    out->a = simplify_once(e->a, changed);
    out->b = simplify_once(e->b, changed);
    out->c = simplify_once(e->c, changed);
    for (auto& [l, a] : out->args) a = simplify_once(a, changed);
    return out;
}

} // namespace

Program simplify_program(const Program& p) {
    Program out = p;
    for (;;) {
        bool changed = false;
        out.body = simplify_once(out.body, changed);
        if (!changed) break;
    }
    return out;
}

} // namespace apisynth
