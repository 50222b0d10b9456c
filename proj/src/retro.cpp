#include "apisynth/retro.hpp"

#include <optional>

namespace apisynth {

const char* fail_reason_name(FailReason r) {
    switch (r) {
        case FailReason::None: return "none";
        case FailReason::NoWitness: return "no-witness";
        case FailReason::Unbound: return "unbound";
        case FailReason::BadProjection: return "bad-projection";
    }
    return "none";
}

namespace {

struct Exec {
    const SemanticLibrary& lib;
    const WitnessStore& witnesses;
    std::mt19937_64& rng;
    std::map<std::string, SemTypePtr> param_types;
    std::map<std::string, Value> env;
    std::map<std::string, Value> sampled;
    FailReason fail = FailReason::None;

    std::optional<Value> failure(FailReason r) {
        fail = r;
        return std::nullopt;
    }

    bool unbound_var(const ExprPtr& e) const {
        return e->kind == Expr::Kind::Var && !env.count(e->name);
    }

    std::optional<Value> eval(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Var: {
                auto it = env.find(e->name);
                if (it != env.end()) return it->second;
                auto pt = param_types.find(e->name);
                if (pt == param_types.end()) return failure(FailReason::Unbound);
                const std::vector<Value>* bank = lib.bank_for(pt->second);
                if (!bank || bank->empty()) return failure(FailReason::Unbound);
                Value v = (*bank)[rng() % bank->size()];
                env[e->name] = v;
                sampled[e->name] = v;
                return v;
            }
            case Expr::Kind::Proj: {
                auto base = eval(e->a);
                if (!base) return std::nullopt;
                const Value* f = base->is_object() ? base->field(e->label) : nullptr;
                if (!f) return failure(FailReason::BadProjection);
                return *f;
            }
            case Expr::Kind::Call: {
                std::vector<std::pair<std::string, Value>> fields;
                for (const auto& [label, arg] : e->args) {
                    auto v = eval(arg);
                    if (!v) return std::nullopt;
                    fields.emplace_back(label, *v);
                }
                Value input = Value::object(std::move(fields));
                auto exact = witnesses.exact_matches(e->name, input);
                if (!exact.empty()) return exact[rng() % exact.size()]->output;
                auto close = witnesses.label_matches(e->name, input.labels());
                if (!close.empty()) return close[rng() % close.size()]->output;
                return failure(FailReason::NoWitness);
            }
            case Expr::Kind::Let: {
                auto v = eval(e->a);
                if (!v) return std::nullopt;
                env[e->name] = *v;
                return eval(e->b);
            }
            case Expr::Kind::Bind: {
                auto arr = eval(e->a);
                if (!arr) return std::nullopt;
                if (!arr->is_array()) return failure(FailReason::BadProjection);
                std::optional<Value> saved;
                if (auto it = env.find(e->name); it != env.end()) saved = it->second;
                std::vector<Value> collected;
                for (const auto& item : arr->items()) {
                    env[e->name] = item;
                    auto part = eval(e->b);
                    if (!part) return std::nullopt;
                    if (!part->is_array()) return failure(FailReason::BadProjection);
                    for (const auto& v : part->items()) collected.push_back(v);
                }
                if (saved) env[e->name] = *saved;
                else env.erase(e->name);
                return Value::array(std::move(collected));
            }
            case Expr::Kind::Guard: {
                if (unbound_var(e->a)) {
                    auto v = eval(e->b);
                    if (!v) return std::nullopt;
                    env[e->a->name] = *v; // biased true
                    return eval(e->c);
                }
                if (unbound_var(e->b)) {
                    auto v = eval(e->a);
                    if (!v) return std::nullopt;
                    env[e->b->name] = *v;
                    return eval(e->c);
                }
                auto lhs = eval(e->a);
                if (!lhs) return std::nullopt;
                auto rhs = eval(e->b);
                if (!rhs) return std::nullopt;
                if (*lhs == *rhs) return eval(e->c);
                return Value::array({});
            }
            case Expr::Kind::Return: {
                auto v = eval(e->a);
                if (!v) return std::nullopt;
                return Value::array({*v});
            }
        }
        return failure(FailReason::BadProjection);
    }
};

} // namespace

RunResult execute(const SemanticLibrary& lib, const Program& p, const Query& q,
                  const WitnessStore& witnesses, std::mt19937_64& rng) {
    Exec exec{lib, witnesses, rng, {}, {}, {}, FailReason::None};
    for (const auto& [label, t] : q.args) exec.param_types[label] = t;

    RunResult result;
    auto v = exec.eval(p.body);
    if (v) {
        result.success = true;
        result.value = *v;
    } else {
        result.reason = exec.fail;
    }
    result.sampled = exec.sampled;
    return result;
}

} // namespace apisynth
