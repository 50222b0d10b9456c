#include "apisynth/typecheck.hpp"

#include <set>

namespace apisynth {

namespace {

struct TcError {
    TypeStatus status;
    std::string message;
};

[[noreturn]] void ill_typed(const std::string& msg) {
    throw TcError{TypeStatus::IllTyped, msg};
}
[[noreturn]] void ill_formed(const std::string& msg) {
    throw TcError{TypeStatus::IllFormed, msg};
}

bool matches_rec(const SemanticLibrary& lib, const SemTypePtr& a, const SemTypePtr& e,
                 int depth) {
    if (depth > 64) return false;
    if (sem_equal(a, e)) return true;
    if (a->kind == SemanticType::Kind::Object) {
        auto it = lib.objects.find(a->object_name);
        if (it == lib.objects.end()) return false;
        return matches_rec(lib, it->second, e, depth + 1);
    }
    if (a->kind == SemanticType::Kind::Array && e->kind == SemanticType::Kind::Array)
        return matches_rec(lib, a->elem, e->elem, depth + 1);
    if (a->kind == SemanticType::Kind::Record && e->kind == SemanticType::Kind::Record) {
        if (a->fields.size() != e->fields.size()) return false;
        for (size_t i = 0; i < a->fields.size(); ++i) {
            if (a->fields[i].label != e->fields[i].label) return false;
            if (a->fields[i].optional != e->fields[i].optional) return false;
            if (!matches_rec(lib, a->fields[i].type, e->fields[i].type, depth + 1))
                return false;
        }
        return true;
    }
    return false;
}

struct Checker {
    const SemanticLibrary& lib;
    std::map<std::string, SemTypePtr> bindings;

    SemTypePtr unfold_objects(SemTypePtr t) {
        int guard = 0;
        while (t->kind == SemanticType::Kind::Object) {
            auto it = lib.objects.find(t->object_name);
            if (it == lib.objects.end())
                ill_typed("unknown object '" + t->object_name + "'");
            t = it->second;
            if (++guard > 64) ill_typed("cyclic object definition");
        }
        return t;
    }

    SemTypePtr infer(const ExprPtr& e, std::map<std::string, SemTypePtr>& env) {
        switch (e->kind) {
            case Expr::Kind::Var: {
                auto it = env.find(e->name);
                if (it == env.end()) ill_formed("unbound variable '" + e->name + "'");
                return it->second;
            }
            case Expr::Kind::Proj: {
                SemTypePtr base = unfold_objects(infer(e->a, env));
                if (base->kind != SemanticType::Kind::Record)
                    ill_typed("projection '." + e->label + "' on a non-record value");
                const SemField* f = base->field(e->label);
                if (!f) ill_typed("no field '" + e->label + "'");
                return f->type;
            }
            case Expr::Kind::Call: {
                auto it = lib.methods.find(e->name);
                if (it == lib.methods.end()) ill_typed("unknown method '" + e->name + "'");
                const SemTypePtr& input = it->second.input;
                std::set<std::string> provided;
                for (const auto& [label, arg] : e->args) {
                    if (!provided.insert(label).second)
                        ill_formed("duplicate argument '" + label + "'");
                    const SemField* f = input->field(label);
                    if (!f)
                        ill_typed("method '" + e->name + "' has no parameter '" + label + "'");
                    SemTypePtr at = infer(arg, env);
                    if (!matches_rec(lib, at, f->type, 0))
                        ill_typed("argument '" + label + "' of '" + e->name +
                                  "' has the wrong type");
                }
                for (const auto& f : input->fields)
                    if (!f.optional && !provided.count(f.label))
                        ill_typed("missing required argument '" + f.label + "' of '" +
                                  e->name + "'");
                return it->second.output;
            }
            case Expr::Kind::Let: {
                SemTypePtr t1 = infer(e->a, env);
                bindings[e->name] = t1;
                env[e->name] = t1;
                SemTypePtr t2 = infer(e->b, env);
                env.erase(e->name);
                return t2;
            }
            case Expr::Kind::Bind: {
                SemTypePtr t1 = infer(e->a, env);
                if (t1->kind != SemanticType::Kind::Array)
                    ill_typed("bind over a non-array value");
                bindings[e->name] = t1->elem;
                env[e->name] = t1->elem;
                SemTypePtr t2 = infer(e->b, env);
                env.erase(e->name);
                if (t2->kind != SemanticType::Kind::Array)
                    ill_typed("bind body must produce an array");
                return t2;
            }
            case Expr::Kind::Guard: {
                SemTypePtr tl = infer(e->a, env);
                SemTypePtr tr = infer(e->b, env);
                if (tl->kind != SemanticType::Kind::LocSet ||
                    tr->kind != SemanticType::Kind::LocSet || !sem_equal(tl, tr))
                    ill_typed("guard operands must share one location-set type");
                SemTypePtr tb = infer(e->c, env);
                if (tb->kind != SemanticType::Kind::Array)
                    ill_typed("guard body must produce an array");
                return tb;
            }
            case Expr::Kind::Return:
                return SemanticType::array(infer(e->a, env));
        }
        ill_typed("malformed expression");
    }
};

void check_well_formed(const ExprPtr& e, std::set<std::string>& scope,
                       std::set<std::string>& binders) {
    if (!e) return;
    switch (e->kind) {
        case Expr::Kind::Var:
            if (!scope.count(e->name)) ill_formed("unbound variable '" + e->name + "'");
            return;
        case Expr::Kind::Proj:
            check_well_formed(e->a, scope, binders);
            return;
        case Expr::Kind::Call:
            for (const auto& [l, a] : e->args) check_well_formed(a, scope, binders);
            return;
        case Expr::Kind::Let:
        case Expr::Kind::Bind: {
            check_well_formed(e->a, scope, binders);
            if (scope.count(e->name) || !binders.insert(e->name).second)
                ill_formed("duplicate binder '" + e->name + "'");
            scope.insert(e->name);
            check_well_formed(e->b, scope, binders);
            scope.erase(e->name);
            return;
        }
        case Expr::Kind::Guard:
            check_well_formed(e->a, scope, binders);
            check_well_formed(e->b, scope, binders);
            check_well_formed(e->c, scope, binders);
            return;
        case Expr::Kind::Return:
            check_well_formed(e->a, scope, binders);
            return;
    }
}

} // namespace

bool type_matches(const SemanticLibrary& lib, const SemTypePtr& actual,
                  const SemTypePtr& expected) {
    return matches_rec(lib, actual, expected, 0);
}

TypecheckResult typecheck(const SemanticLibrary& lib, const Program& p, const Query& q) {
    TypecheckResult res;
    try {
        std::set<std::string> param_set(p.params.begin(), p.params.end());
        if (param_set.size() != p.params.size()) ill_formed("duplicate parameter");
        std::set<std::string> qlabels;
        for (const auto& [l, t] : q.args) qlabels.insert(l);
        if (param_set != qlabels)
            ill_formed("lambda parameters do not match the query's argument labels");

        std::set<std::string> scope = param_set;
        std::set<std::string> binders;
        check_well_formed(p.body, scope, binders);

        Checker ck{lib, {}};
        std::map<std::string, SemTypePtr> env;
        for (const auto& [l, t] : q.args) env[l] = t;
        SemTypePtr out = ck.infer(p.body, env);
        if (!matches_rec(lib, out, q.output, 0))
            ill_typed("program result type does not match the query");
        res.bindings = std::move(ck.bindings);
        return res;
    } catch (const TcError& err) {
        res.status = err.status;
        res.message = err.message;
        return res;
    }
}

} // namespace apisynth
