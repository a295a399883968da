#include "egoref/compile.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "egoref/rewrite.hpp"

namespace egoref {

namespace {

// Rewrites Or/Box through their definitions so the compiler only sees
// Top / Prop / Not / And / DiaGe.
FormulaPtr desugar(const FormulaPtr& f) {
    if (!f) return nullptr;
    switch (f->op) {
        case Op::Top:
        case Op::Prop:
            return f;
        case Op::Not:
            return f_not(desugar(f->left));
        case Op::And:
            return f_and(desugar(f->left), desugar(f->right));
        case Op::Or:
            return f_not(f_and(f_not(desugar(f->left)), f_not(desugar(f->right))));
        case Op::DiaGe:
            return f_dia(f->count, desugar(f->left));
        case Op::Box:
            return f_not(f_dia(1, f_not(desugar(f->left))));
        default:
            throw Error("compile_gml: formula outside the graded-modal fragment");
    }
}

int gml_depth(const FormulaPtr& f) {
    switch (f->op) {
        case Op::Top:
        case Op::Prop:
            return 0;
        case Op::Not:
        case Op::DiaGe:
            return gml_depth(f->left) + 1;
        case Op::And:
            return std::max(gml_depth(f->left), gml_depth(f->right)) + 1;
        default:
            throw Error("compile_gml: formula outside the graded-modal fragment");
    }
}

struct Closure {
    std::vector<FormulaPtr> formulas;          // deduplicated subformulas
    std::map<std::string, int> index;          // printed form -> coordinate

    int add(const FormulaPtr& f) {
        std::string key = print_formula(f);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (f->left) add(f->left);
        if (f->right) add(f->right);
        int idx = static_cast<int>(formulas.size());
        formulas.push_back(f);
        index.emplace(std::move(key), idx);
        return idx;
    }

    int at(const FormulaPtr& f) const { return index.at(print_formula(f)); }
};

}  // namespace

GnnSpec compile_gml_multi(const std::vector<FormulaPtr>& fs, const PropositionUniverse& universe) {
    if (fs.empty()) throw Error("compile_gml: no sentences");
    std::vector<FormulaPtr> targets;
    Closure closure;
    int max_depth = 0;
    for (const auto& f : fs) {
        FormulaPtr core = desugar(f);
        closure.add(core);
        max_depth = std::max(max_depth, gml_depth(core));
        targets.push_back(core);
    }
    int p = universe.size();
    int k = static_cast<int>(closure.formulas.size());

    GnnSpec spec;
    spec.input_dim = p;

    // Bootstrap layer: propositions copied from the multi-hot input, truth
    // constant set, everything else zero until later layers compute it.
    {
        AffineStage s;
        s.rows = k;
        s.cols = 2 * p;
        s.weights.assign(static_cast<std::size_t>(k) * 2 * p, 0.0);
        s.bias.assign(k, 0.0);
        s.relu = true;
        for (int i = 0; i < k; ++i) {
            const FormulaPtr& fi = closure.formulas[i];
            if (fi->op == Op::Top) {
                s.bias[i] = 1.0;
            } else if (fi->op == Op::Prop) {
                if (auto idx = universe.index_of(fi->name))
                    s.weights[static_cast<std::size_t>(i) * 2 * p + *idx] = 1.0;
                // Propositions outside the universe stay 0 (never true).
            }
        }
        spec.layers.push_back(GnnLayer{Ffnn{{s}}});
    }

    // One layer per operator-depth level. Own coordinates are x, aggregated
    // neighbor coordinates are y (offset k).
    for (int l = 0; l < max_depth; ++l) {
        AffineStage a;  // gadget pre-activation
        a.rows = k;
        a.cols = 2 * k;
        a.weights.assign(static_cast<std::size_t>(k) * 2 * k, 0.0);
        a.bias.assign(k, 0.0);
        a.relu = true;
        AffineStage b;  // gadget post-activation
        b.rows = k;
        b.cols = k;
        b.weights.assign(static_cast<std::size_t>(k) * k, 0.0);
        b.bias.assign(k, 0.0);
        b.relu = true;
        auto aw = [&](int r, int c) -> double& {
            return a.weights[static_cast<std::size_t>(r) * 2 * k + c];
        };
        auto bw = [&](int r, int c) -> double& {
            return b.weights[static_cast<std::size_t>(r) * k + c];
        };
        for (int i = 0; i < k; ++i) {
            const FormulaPtr& fi = closure.formulas[i];
            switch (fi->op) {
                case Op::Top:
                    a.bias[i] = 1.0;
                    bw(i, i) = 1.0;
                    break;
                case Op::Prop:
                    aw(i, i) = 1.0;
                    bw(i, i) = 1.0;
                    break;
                case Op::Not:
                    a.bias[i] = 1.0;
                    aw(i, closure.at(fi->left)) = -1.0;
                    bw(i, i) = 1.0;
                    break;
                case Op::And:
                    // += so (and F F) accumulates on the shared coordinate.
                    aw(i, closure.at(fi->left)) += 1.0;
                    aw(i, closure.at(fi->right)) += 1.0;
                    a.bias[i] = -1.0;
                    bw(i, i) = 1.0;
                    break;
                case Op::DiaGe:
                    // ReLU(1 - ReLU(n - y_j))
                    a.bias[i] = static_cast<double>(fi->count);
                    aw(i, k + closure.at(fi->left)) = -1.0;
                    b.bias[i] = 1.0;
                    bw(i, i) = -1.0;
                    break;
                default:
                    throw Error("compile_gml: unexpected operator");
            }
        }
        spec.layers.push_back(GnnLayer{Ffnn{{a, b}}});
    }

    // Output projection appended to the last layer's network.
    {
        AffineStage proj;
        proj.rows = static_cast<int>(targets.size());
        proj.cols = k;
        proj.weights.assign(static_cast<std::size_t>(proj.rows) * k, 0.0);
        proj.bias.assign(proj.rows, 0.0);
        proj.relu = false;
        for (std::size_t t = 0; t < targets.size(); ++t)
            proj.weights[t * k + closure.at(targets[t])] = 1.0;
        spec.layers.back().combine.stages.push_back(std::move(proj));
    }
    spec.validate();
    return spec;
}

GnnSpec compile_gml(const FormulaPtr& f, const PropositionUniverse& universe) {
    return compile_gml_multi({f}, universe);
}

namespace {

// Maximal binder subformulas: Down nodes not enclosed by another Down.
void collect_maximal_binders(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (!f) return;
    if (f->op == Op::Down) {
        out.push_back(f);
        return;
    }
    collect_maximal_binders(f->left, out);
    collect_maximal_binders(f->right, out);
}

FormulaPtr subst_free_var(const FormulaPtr& f, const std::string& x, const FormulaPtr& repl) {
    if (!f) return nullptr;
    switch (f->op) {
        case Op::Var:
            return f->name == x ? repl : f;
        case Op::Down:
            if (f->name == x) return f;  // shadowed
            return f_down(f->name, subst_free_var(f->left, x, repl));
        case Op::At: {
            if (f->name == x) throw Error("compile: at-operator not supported; eliminate it first");
            Formula out = *f;
            out.left = subst_free_var(f->left, x, repl);
            return std::make_shared<const Formula>(std::move(out));
        }
        default: {
            Formula out = *f;
            out.left = subst_free_var(f->left, x, repl);
            out.right = subst_free_var(f->right, x, repl);
            return std::make_shared<const Formula>(std::move(out));
        }
    }
}

FormulaPtr replace_subformula(const FormulaPtr& f, const FormulaPtr& pattern,
                              const FormulaPtr& repl) {
    if (!f) return nullptr;
    if (structurally_equal(f, pattern)) return repl;
    Formula out = *f;
    out.left = replace_subformula(f->left, pattern, repl);
    out.right = replace_subformula(f->right, pattern, repl);
    return std::make_shared<const Formula>(std::move(out));
}

HeGnnSpec compile_tuple(const std::vector<FormulaPtr>& sentences,
                        const PropositionUniverse& universe, int level) {
    std::vector<FormulaPtr> binders;
    for (const auto& f : sentences) collect_maximal_binders(f, binders);
    if (binders.empty()) return he_leaf(compile_gml_multi(sentences, universe));

    // Deduplicate structurally identical binder subformulas.
    std::vector<FormulaPtr> unique;
    std::map<std::string, int> seen;
    for (const auto& b : binders) {
        std::string key = print_formula(b);
        if (seen.emplace(key, static_cast<int>(unique.size())).second) unique.push_back(b);
    }

    std::optional<int> radius;
    std::vector<FormulaPtr> nested;
    std::string mark = "!m" + std::to_string(level);
    for (const auto& b : unique) {
        FormulaPtr body = b->left;
        if (body && body->op == Op::Within) {
            if (radius && *radius != body->radius)
                throw Error("compile: binder radii differ");
            radius = body->radius;
            body = body->left;
        }
        nested.push_back(subst_free_var(body, b->name, f_prop(mark)));
    }

    PropositionUniverse inner_universe = universe;
    inner_universe.add(mark);
    HeGnnSpec inner = compile_tuple(nested, inner_universe, level - 1);

    PropositionUniverse outer_universe = universe;
    std::vector<FormulaPtr> outer_sentences = sentences;
    for (std::size_t j = 0; j < unique.size(); ++j) {
        std::string q = "!q" + std::to_string(level) + "_" + std::to_string(j);
        outer_universe.add(q);
        for (auto& s : outer_sentences) s = replace_subformula(s, unique[j], f_prop(q));
    }
    GnnSpec outer = compile_gml_multi(outer_sentences, outer_universe);
    return he_node(std::move(inner), std::move(outer), radius);
}

}  // namespace

HeGnnSpec compile_hgml(const FormulaPtr& f, const PropositionUniverse& universe) {
    FormulaPtr canonical = canonicalize(f);
    DownWithinShape shape = check_down_within(canonical);
    return compile_tuple({canonical}, universe, shape.down_depth);
}

HeGnnSpec example32_spec() {
    AffineStage add;
    add.rows = 2;
    add.cols = 4;
    add.weights = {1, 0, 1, 0, 0, 1, 0, 1};  // combine(x ++ s) = x + s
    add.bias = {0, 0};
    add.relu = false;
    GnnSpec b;
    b.input_dim = 2;
    for (int i = 0; i < 3; ++i) b.layers.push_back(GnnLayer{Ffnn{{add}}});
    GnnSpec c;
    c.input_dim = 3;  // zero layers: identity on the extended embedding
    return he_node(he_leaf(std::move(b)), std::move(c), std::nullopt);
}

}  // namespace egoref
