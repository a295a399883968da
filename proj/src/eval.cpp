#include "egoref/eval.hpp"

namespace egoref {

bool eval(const Graph& g, int v, const Env& env, const FormulaPtr& f) {
    if (!f) throw Error("eval: null formula");
    if (v < 0 || v >= g.node_count()) throw Error("eval: node id out of range");
    switch (f->op) {
        case Op::Top:
            return true;
        case Op::Prop: {
            auto idx = g.universe().index_of(f->name);
            return idx && g.has_label(v, *idx);
        }
        case Op::Var: {
            auto it = env.find(f->name);
            return it != env.end() && it->second && *it->second == v;
        }
        case Op::Not:
            return !eval(g, v, env, f->left);
        case Op::And:
            return eval(g, v, env, f->left) && eval(g, v, env, f->right);
        case Op::Or:
            return eval(g, v, env, f->left) || eval(g, v, env, f->right);
        case Op::DiaGe: {
            long long hits = 0;
            for (int u : g.neighbors(v)) {
                if (eval(g, u, env, f->left) && ++hits >= f->count) return true;
            }
            return false;
        }
        case Op::Box: {
            for (int u : g.neighbors(v))
                if (!eval(g, u, env, f->left)) return false;
            return true;
        }
        case Op::Down: {
            Env inner = env;
            inner[f->name] = v;
            return eval(g, v, inner, f->left);
        }
        case Op::Within: {
            EgoSubgraph ego = ego_subgraph(g, v, f->radius);
            Env inner;
            for (const auto& [name, node] : env) {
                if (node && ego.to_sub[*node] >= 0)
                    inner[name] = ego.to_sub[*node];
                else
                    inner[name] = std::nullopt;  // dropped: unsatisfiable
            }
            return eval(ego.graph, ego.to_sub[v], inner, f->left);
        }
        case Op::At: {
            auto it = env.find(f->name);
            if (it == env.end() || !it->second) return false;
            return eval(g, *it->second, env, f->left);
        }
    }
    throw Error("eval: unhandled operator");
}

int count_satisfying(const Graph& g, const FormulaPtr& f) {
    int count = 0;
    for (int v = 0; v < g.node_count(); ++v)
        if (eval(g, v, Env{}, f)) ++count;
    return count;
}

bool formula_separates(const Graph& a, const Graph& b, const FormulaPtr& f) {
    if (a.node_count() != b.node_count()) return true;
    return count_satisfying(a, f) != count_satisfying(b, f);
}

}  // namespace egoref
