#include "egoref/rewrite.hpp"

#include <map>
#include <string>

namespace egoref {

namespace {

bool contains_op(const FormulaPtr& f, Op op) {
    if (!f) return false;
    if (f->op == op) return true;
    return contains_op(f->left, op) || contains_op(f->right, op);
}

void shape_walk(const FormulaPtr& f, bool under_down_head, DownWithinShape& s, int nest) {
    if (!f) return;
    switch (f->op) {
        case Op::Down:
            s.down_depth = std::max(s.down_depth, nest + 1);
            if (f->left && f->left->op == Op::Within) {
                s.paired = true;
                if (s.radius && *s.radius != f->left->radius)
                    throw Error("down/within fragment requires a single radius");
                s.radius = f->left->radius;
                shape_walk(f->left, true, s, nest + 1);
            } else {
                shape_walk(f->left, false, s, nest + 1);
            }
            return;
        case Op::Within:
            if (!under_down_head) throw Error("within-operator not paired with a binder");
            shape_walk(f->left, false, s, nest);
            return;
        case Op::At:
            throw Error("at-operator outside the down/within fragment");
        default:
            shape_walk(f->left, false, s, nest);
            shape_walk(f->right, false, s, nest);
            return;
    }
}

}  // namespace

DownWithinShape check_down_within(const FormulaPtr& f) {
    DownWithinShape s;
    shape_walk(f, false, s, 0);
    if (s.paired) {
        // Mixed plain/paired binders are outside both fragments.
        // shape_walk already rejected unpaired withins; now reject unpaired downs.
        struct Check {
            static void run(const FormulaPtr& g) {
                if (!g) return;
                if (g->op == Op::Down && (!g->left || g->left->op != Op::Within))
                    throw Error("mixed plain and within-paired binders");
                run(g->left);
                run(g->right);
            }
        };
        Check::run(f);
    }
    return s;
}

namespace {

FormulaPtr rebuild(const FormulaPtr& f, FormulaPtr left, FormulaPtr right) {
    Formula out = *f;
    out.left = std::move(left);
    out.right = std::move(right);
    return std::make_shared<const Formula>(std::move(out));
}

// Renames binders to canonical indices. `wcount` counts enclosing
// within-operators (plain binders contribute an implicit one).
FormulaPtr canon_walk(const FormulaPtr& f, int d, int wcount,
                      const std::map<std::string, std::string>& names) {
    if (!f) return nullptr;
    switch (f->op) {
        case Op::Var: {
            auto it = names.find(f->name);
            if (it == names.end()) throw Error("unbound variable: " + f->name);
            return f_var(it->second);
        }
        case Op::Down: {
            std::string fresh = "x" + std::to_string(d - wcount);
            auto inner_names = names;
            inner_names[f->name] = fresh;
            if (f->left && f->left->op == Op::Within) {
                FormulaPtr body = canon_walk(f->left->left, d, wcount + 1, inner_names);
                return f_down(fresh, f_within(f->left->radius, std::move(body)));
            }
            return f_down(fresh, canon_walk(f->left, d, wcount + 1, inner_names));
        }
        default: {
            FormulaPtr left = canon_walk(f->left, d, wcount, names);
            FormulaPtr right = canon_walk(f->right, d, wcount, names);
            if (!left && !right) return f;
            return rebuild(f, std::move(left), std::move(right));
        }
    }
}

}  // namespace

FormulaPtr canonicalize(const FormulaPtr& f) {
    DownWithinShape shape = check_down_within(f);
    if (shape.down_depth == 0) return f;
    return canon_walk(f, shape.down_depth, 0, {});
}

namespace {

bool canonical_walk(const FormulaPtr& f, int d, int wcount,
                    const std::map<std::string, std::string>& names) {
    if (!f) return true;
    switch (f->op) {
        case Op::Var: {
            auto it = names.find(f->name);
            return it != names.end() && it->second == f->name;
        }
        case Op::Down: {
            if (f->name != "x" + std::to_string(d - wcount)) return false;
            auto inner = names;
            inner[f->name] = f->name;
            FormulaPtr body = (f->left && f->left->op == Op::Within) ? f->left->left : f->left;
            return canonical_walk(body, d, wcount + 1, inner);
        }
        default:
            return canonical_walk(f->left, d, wcount, names) &&
                   canonical_walk(f->right, d, wcount, names);
    }
}

}  // namespace

bool is_canonical(const FormulaPtr& f) {
    DownWithinShape shape = check_down_within(f);
    if (shape.down_depth == 0) return true;
    return canonical_walk(f, shape.down_depth, 0, {});
}

namespace {

// Makes every binder variable unique so ball-membership tests inserted by
// the within-elimination cannot be captured.
FormulaPtr freshen(const FormulaPtr& f, int& counter,
                   const std::map<std::string, std::string>& names) {
    if (!f) return nullptr;
    switch (f->op) {
        case Op::Var: {
            auto it = names.find(f->name);
            if (it == names.end()) throw Error("unbound variable: " + f->name);
            return f_var(it->second);
        }
        case Op::At: {
            auto it = names.find(f->name);
            if (it == names.end()) throw Error("unbound variable: " + f->name);
            return f_at(it->second, freshen(f->left, counter, names));
        }
        case Op::Down: {
            std::string fresh = "v" + std::to_string(++counter);
            auto inner = names;
            inner[f->name] = fresh;
            return f_down(fresh, freshen(f->left, counter, inner));
        }
        default: {
            FormulaPtr left = freshen(f->left, counter, names);
            FormulaPtr right = freshen(f->right, counter, names);
            if (!left && !right) return f;
            return rebuild(f, std::move(left), std::move(right));
        }
    }
}

// Ball membership: at distance <= r from the node x denotes.
FormulaPtr ball_test(const std::string& x, int r) {
    FormulaPtr out = f_var(x);
    FormulaPtr walk = f_var(x);
    for (int i = 1; i <= r; ++i) {
        walk = f_dia(1, walk);
        out = f_or(out, walk);
    }
    return out;
}

// Restricts every modal step to nodes satisfying xi.
FormulaPtr relativize(const FormulaPtr& f, const FormulaPtr& xi) {
    if (!f) return nullptr;
    switch (f->op) {
        case Op::DiaGe:
            return f_dia(f->count, f_and(xi, relativize(f->left, xi)));
        case Op::Box:
            return f_box(f_or(f_not(xi), relativize(f->left, xi)));
        default: {
            FormulaPtr left = relativize(f->left, xi);
            FormulaPtr right = relativize(f->right, xi);
            if (!left && !right) return f;
            return rebuild(f, std::move(left), std::move(right));
        }
    }
}

FormulaPtr elim_within_walk(const FormulaPtr& f) {
    if (!f) return nullptr;
    if (f->op == Op::Within) throw Error("within-operator not paired with a binder");
    if (f->op == Op::Down && f->left && f->left->op == Op::Within) {
        int r = f->left->radius;
        FormulaPtr body = elim_within_walk(f->left->left);
        return f_down(f->name, relativize(body, ball_test(f->name, r)));
    }
    FormulaPtr left = elim_within_walk(f->left);
    FormulaPtr right = elim_within_walk(f->right);
    if (!left && !right) return f;
    return rebuild(f, std::move(left), std::move(right));
}

}  // namespace

FormulaPtr eliminate_within(const FormulaPtr& f) {
    if (!contains_op(f, Op::Within)) return f;
    if (contains_op(f, Op::At)) throw Error("at-operator outside the down/within fragment");
    int counter = 0;
    return elim_within_walk(freshen(f, counter, {}));
}

namespace {

FormulaPtr elim_at_walk(const FormulaPtr& f, int n) {
    if (!f) return nullptr;
    if (f->op == Op::At) {
        FormulaPtr body = elim_at_walk(f->left, n);
        FormulaPtr hit = f_and(f_var(f->name), body);
        FormulaPtr out = hit;  // walk of length 0
        FormulaPtr walk = hit;
        for (int i = 1; i <= 2 * n; ++i) {
            walk = f_dia(1, walk);
            out = f_or(out, walk);
        }
        return out;
    }
    FormulaPtr left = elim_at_walk(f->left, n);
    FormulaPtr right = elim_at_walk(f->right, n);
    if (!left && !right) return f;
    return rebuild(f, std::move(left), std::move(right));
}

}  // namespace

FormulaPtr eliminate_at(const FormulaPtr& f) {
    if (!contains_op(f, Op::At)) return f;
    if (contains_op(f, Op::Within)) throw Error("at-elimination outside the within-free fragment");
    return elim_at_walk(f, modal_depth(f));
}

namespace {

FormulaPtr radius_walk(const FormulaPtr& f, int r) {
    if (!f) return nullptr;
    if (f->op == Op::Down) return f_down(f->name, f_within(r, radius_walk(f->left, r)));
    FormulaPtr left = radius_walk(f->left, r);
    FormulaPtr right = radius_walk(f->right, r);
    if (!left && !right) return f;
    return rebuild(f, std::move(left), std::move(right));
}

}  // namespace

FormulaPtr with_radius(const FormulaPtr& f, int r) {
    if (contains_op(f, Op::Within)) throw Error("sentence already fixes its subgraph radius");
    if (r < 1) throw Error("radius must be >= 1");
    return radius_walk(f, r);
}

}  // namespace egoref
