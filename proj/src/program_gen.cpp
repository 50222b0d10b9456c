#include "apisynth/program_gen.hpp"

#include <algorithm>
#include <set>

#include "apisynth/dsl.hpp"

namespace apisynth {

namespace {

struct Token {
    std::string place;
    std::string var;
};

struct Stmt {
    enum class Kind { Let, Guard };
    Kind kind = Kind::Let;
    std::string binder; // Let
    ExprPtr rhs;        // Let
    ExprPtr lhs, cmp;   // Guard operands
};

struct Gen {
    const Ttn& net;
    const NetPath& path;
    const std::string goal;
    size_t cap;

    std::vector<Token> pool;
    std::vector<Stmt> stmts;
    std::set<std::string> taken_names;
    int fresh_counter = 0;

    std::vector<Program> out;
    std::set<std::string> seen;
    std::vector<std::string> params;

    std::string fresh() {
        while (true) {
            std::string name = "x" + std::to_string(fresh_counter++);
            if (taken_names.insert(name).second) return name;
        }
    }

    void release(const std::string& name) {
        taken_names.erase(name);
        --fresh_counter;
    }

    void finish() {
        if (pool.size() != 1 || pool[0].place != goal) return;
        ExprPtr body = Expr::var(pool[0].var);
        for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
            if (it->kind == Stmt::Kind::Let)
                body = Expr::let(it->binder, it->rhs, body);
            else
                body = Expr::guard(it->lhs, it->cmp, body);
        }
        Program p{params, body};
        if (seen.insert(render_program(p)).second) out.push_back(std::move(p));
    }

    // indices of pool tokens in `place`
    std::vector<size_t> candidates(const std::string& place) const {
        std::vector<size_t> idx;
        for (size_t i = 0; i < pool.size(); ++i)
            if (pool[i].place == place) idx.push_back(i);
        return idx;
    }

    // assigns one distinct token per slot, in slot order, trying token
    // choices in pool order
    void assign(const std::vector<std::pair<std::string, std::string>>& slots, size_t slot,
                std::vector<size_t>& chosen,
                const std::function<void(const std::vector<size_t>&)>& fire) {
        if (out.size() >= cap) return;
        if (slot == slots.size()) {
            fire(chosen);
            return;
        }
        for (size_t i : candidates(slots[slot].second)) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
            chosen.push_back(i);
            assign(slots, slot + 1, chosen, fire);
            chosen.pop_back();
            if (out.size() >= cap) return;
        }
    }

    std::vector<Token> pool_without(const std::vector<size_t>& removed) const {
        std::vector<Token> next;
        for (size_t i = 0; i < pool.size(); ++i)
            if (std::find(removed.begin(), removed.end(), i) == removed.end())
                next.push_back(pool[i]);
        return next;
    }

    void go(size_t step) {
        if (out.size() >= cap) return;
        if (step == path.steps.size()) {
            finish();
            return;
        }
        const PathStep& ps = path.steps[step];
        const TtnTransition* tr = net.transition(ps.transition);
        if (!tr) return;

        switch (tr->kind) {
            case TtnTransition::Kind::Method: {
                auto slots = tr->required_args;
                for (const auto& [place, count] : ps.optional_used) {
                    int taken = 0;
                    for (const auto& [label, argplace] : tr->optional_args) {
                        if (taken == count) break;
                        if (argplace == place) {
                            slots.emplace_back(label, argplace);
                            ++taken;
                        }
                    }
                    if (taken < count) return; // more consumed than declared
                }
                std::vector<size_t> chosen;
                assign(slots, 0, chosen, [&](const std::vector<size_t>& pick) {
                    std::vector<std::pair<std::string, ExprPtr>> args;
                    for (size_t s = 0; s < slots.size(); ++s)
                        args.emplace_back(slots[s].first, Expr::var(pool[pick[s]].var));
                    std::sort(args.begin(), args.end(),
                              [](const auto& a, const auto& b) { return a.first < b.first; });
                    std::string v = fresh();
                    auto saved_pool = pool;
                    stmts.push_back({Stmt::Kind::Let, v, Expr::call(tr->method, args), {}, {}});
                    pool = pool_without(pick);
                    pool.push_back({tr->output_place, v});
                    go(step + 1);
                    pool = saved_pool;
                    stmts.pop_back();
                    release(v);
                });
                break;
            }
            case TtnTransition::Kind::Proj: {
                for (size_t i : candidates(tr->source_place)) {
                    std::string v = fresh();
                    auto saved_pool = pool;
                    stmts.push_back({Stmt::Kind::Let, v,
                                     Expr::proj(Expr::var(pool[i].var), tr->field_path[0]),
                                     {},
                                     {}});
                    pool = pool_without({i});
                    pool.push_back({tr->output_place, v});
                    go(step + 1);
                    pool = saved_pool;
                    stmts.pop_back();
                    release(v);
                    if (out.size() >= cap) return;
                }
                break;
            }
            case TtnTransition::Kind::Filter: {
                std::string leaf_place;
                for (const auto& [p, n] : tr->required_in) {
                    (void)n;
                    if (p != tr->source_place) leaf_place = p;
                }
                for (size_t i : candidates(tr->source_place)) {
                    for (size_t j : candidates(leaf_place)) {
                        if (j == i) continue;
                        size_t n_stmts = stmts.size();
                        int fresh_before = fresh_counter;
                        ExprPtr chain_end = Expr::var(pool[i].var);
                        std::vector<std::string> chain_vars;
                        for (const auto& label : tr->field_path) {
                            std::string v = fresh();
                            chain_vars.push_back(v);
                            stmts.push_back(
                                {Stmt::Kind::Let, v, Expr::proj(chain_end, label), {}, {}});
                            chain_end = Expr::var(v);
                        }
                        stmts.push_back({Stmt::Kind::Guard,
                                         {},
                                         {},
                                         chain_end,
                                         Expr::var(pool[j].var)});
                        auto saved_pool = pool;
                        pool = pool_without({i, j});
                        pool.push_back({tr->source_place, saved_pool[i].var});
                        go(step + 1);
                        pool = saved_pool;
                        stmts.resize(n_stmts);
                        for (auto it = chain_vars.rbegin(); it != chain_vars.rend(); ++it)
                            taken_names.erase(*it);
                        fresh_counter = fresh_before;
                        if (out.size() >= cap) return;
                    }
                }
                break;
            }
            case TtnTransition::Kind::Copy: {
                for (size_t i : candidates(tr->source_place)) {
                    auto saved_pool = pool;
                    Token t = pool[i];
                    pool.push_back(t); // same variable twice, no statement
                    go(step + 1);
                    pool = saved_pool;
                    if (out.size() >= cap) return;
                }
                break;
            }
        }
    }
};

} // namespace

std::vector<Program> path_to_programs(const SemanticLibrary& lib, const Ttn& net,
                                      const Query& q, const NetPath& path,
                                      size_t max_programs) {
    (void)lib;
    Gen gen{net, path, goal_place(q), max_programs, {}, {}, {}, 0, {}, {}, {}};
    for (const auto& [label, type] : q.args) {
        gen.pool.push_back({downgrade(type)->key(), label});
        gen.taken_names.insert(label);
        gen.params.push_back(label);
    }
    gen.go(0);
    return gen.out;
}

} // namespace apisynth
