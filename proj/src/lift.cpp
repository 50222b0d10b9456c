#include "apisynth/lift.hpp"

#include <map>
#include <set>

#include "apisynth/typecheck.hpp"
#include "apisynth/ttn.hpp"

namespace apisynth {

namespace {

int array_depth(const SemTypePtr& t) {
    int d = 0;
    SemTypePtr cur = t;
    while (cur->kind == SemanticType::Kind::Array) {
        ++d;
        cur = cur->elem;
    }
    return d;
}

struct Stmt {
    enum class Kind { Let, Bind, Guard };
    Kind kind = Kind::Let;
    std::string binder;
    ExprPtr rhs;      // Let/Bind
    ExprPtr lhs, cmp; // Guard
};

void collect_names(const ExprPtr& e, std::set<std::string>& names) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var) names.insert(e->name);
    if (e->kind == Expr::Kind::Let || e->kind == Expr::Kind::Bind) names.insert(e->name);
    collect_names(e->a, names);
    collect_names(e->b, names);
    collect_names(e->c, names);
    for (const auto& [l, arg] : e->args) {
        (void)l;
        collect_names(arg, names);
    }
}

struct Lifter {
    const SemanticLibrary& lib;
    std::map<std::string, SemTypePtr> env;
    std::map<std::string, std::string> mapping; // array var -> element var
    std::vector<Stmt> stmts;
    std::set<std::string> taken;
    int counter = 0;
    bool failed = false;

    std::string fresh() {
        while (true) {
            std::string name = "x" + std::to_string(counter++);
            if (taken.insert(name).second) return name;
        }
    }

    // brings var to a value usable at `expected`, inserting binds/returns
    std::string adjust(std::string var, const SemTypePtr& expected) {
        while (!failed) {
            auto it = env.find(var);
            if (it == env.end()) {
                failed = true;
                break;
            }
            SemTypePtr actual = it->second;
            if (type_matches(lib, actual, expected)) return var;
            int da = array_depth(actual), de = array_depth(expected);
            if (da > de) {
                auto known = mapping.find(var);
                if (known != mapping.end()) {
                    var = known->second;
                } else {
                    std::string elem = fresh();
                    stmts.push_back({Stmt::Kind::Bind, elem, Expr::var(var), {}, {}});
                    env[elem] = actual->elem;
                    mapping[var] = elem;
                    var = elem;
                }
            } else if (da < de) {
                std::string wrapped = fresh();
                stmts.push_back(
                    {Stmt::Kind::Let, wrapped, Expr::ret(Expr::var(var)), {}, {}});
                env[wrapped] = SemanticType::array(actual);
                var = wrapped;
            } else {
                failed = true; // same depth, incompatible cores
            }
        }
        return var;
    }

    // scalar view of a variable (its own type with arrays stripped)
    std::string scalar(const std::string& var) {
        auto it = env.find(var);
        if (it == env.end()) {
            failed = true;
            return var;
        }
        return adjust(var, downgrade(it->second));
    }

    const std::vector<SemField>* fields_of(const SemTypePtr& t) const {
        if (t->kind == SemanticType::Kind::Record) return &t->fields;
        if (t->kind == SemanticType::Kind::Object) {
            auto it = lib.objects.find(t->object_name);
            if (it != lib.objects.end()) return &it->second->fields;
        }
        return nullptr;
    }
};

} // namespace

std::optional<Program> lift_program(const SemanticLibrary& lib, const Program& p,
                                    const Query& q) {
    Lifter lifter{lib, {}, {}, {}, {}, 0, false};
    collect_names(p.body, lifter.taken);
    for (const auto& param : p.params) {
        const SemTypePtr* t = q.arg(param);
        if (!t) return std::nullopt;
        lifter.taken.insert(param);
        lifter.env[param] = *t;
    }

    ExprPtr cur = p.body;
    while (!lifter.failed) {
        if (cur->kind == Expr::Kind::Let) {
            const ExprPtr& rhs = cur->a;
            if (rhs->kind == Expr::Kind::Call) {
                auto sig = lib.methods.find(rhs->name);
                if (sig == lib.methods.end()) return std::nullopt;
                std::vector<std::pair<std::string, ExprPtr>> args;
                for (const auto& [label, arg] : rhs->args) {
                    if (arg->kind != Expr::Kind::Var) return std::nullopt;
                    const SemField* f = sig->second.input->field(label);
                    if (!f) return std::nullopt;
                    args.emplace_back(label,
                                      Expr::var(lifter.adjust(arg->name, f->type)));
                }
                if (lifter.failed) return std::nullopt;
                lifter.stmts.push_back(
                    {Stmt::Kind::Let, cur->name, Expr::call(rhs->name, args), {}, {}});
                lifter.env[cur->name] = sig->second.output;
            } else if (rhs->kind == Expr::Kind::Proj) {
                if (rhs->a->kind != Expr::Kind::Var) return std::nullopt;
                std::string base = lifter.scalar(rhs->a->name);
                if (lifter.failed) return std::nullopt;
                const auto* fields = lifter.fields_of(lifter.env.at(base));
                const SemField* f = nullptr;
                if (fields)
                    for (const auto& candidate : *fields)
                        if (candidate.label == rhs->label) f = &candidate;
                if (!f) return std::nullopt;
                lifter.stmts.push_back({Stmt::Kind::Let, cur->name,
                                        Expr::proj(Expr::var(base), rhs->label),
                                        {},
                                        {}});
                lifter.env[cur->name] = f->type;
            } else {
                return std::nullopt; // outside the straight-line fragment
            }
            cur = cur->b;
        } else if (cur->kind == Expr::Kind::Guard) {
            if (cur->a->kind != Expr::Kind::Var || cur->b->kind != Expr::Kind::Var)
                return std::nullopt;
            std::string lhs = lifter.scalar(cur->a->name);
            std::string rhs = lifter.scalar(cur->b->name);
            if (lifter.failed) return std::nullopt;
            lifter.stmts.push_back(
                {Stmt::Kind::Guard, {}, {}, Expr::var(lhs), Expr::var(rhs)});
            cur = cur->c;
        } else if (cur->kind == Expr::Kind::Var) {
            break;
        } else {
            return std::nullopt;
        }
    }
    if (lifter.failed) return std::nullopt;

    Query target = arrayified(q);
    std::string result = lifter.adjust(cur->name, target.output);
    if (lifter.failed) return std::nullopt;

    ExprPtr body = Expr::var(result);
    for (auto it = lifter.stmts.rbegin(); it != lifter.stmts.rend(); ++it) {
        if (it->kind == Stmt::Kind::Let)
            body = Expr::let(it->binder, it->rhs, body);
        else if (it->kind == Stmt::Kind::Bind)
            body = Expr::bind(it->binder, it->rhs, body);
        else
            body = Expr::guard(it->lhs, it->cmp, body);
    }
    return Program{p.params, body};
}

} // namespace apisynth
