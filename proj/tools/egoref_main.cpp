// Command-line front end: graph ingestion, refinement analyses, logic model
// checking, logic-to-network compilation, and reproduction reports.
//
// Exit codes: 0 = indistinguishable / not satisfied, 10 = distinguished /
// satisfied, 2 = usage or input error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "egoref/builtins.hpp"
#include "egoref/compile.hpp"
#include "egoref/egorank.hpp"
#include "egoref/eval.hpp"
#include "egoref/graph6.hpp"
#include "egoref/herefine.hpp"
#include "egoref/homcount.hpp"
#include "egoref/keys.hpp"
#include "egoref/net.hpp"
#include "egoref/rewrite.hpp"
#include "egoref/wlir.hpp"

namespace {

using egoref::Graph;
using json = nlohmann::json;

constexpr int kExitSame = 0;
constexpr int kExitDistinguished = 10;
constexpr int kExitUsage = 2;

struct NamedGraph {
    std::string name;
    Graph graph;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw egoref::Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph_file(const std::string& path) {
    std::string text = read_file(path);
    if (path.size() > 3 && path.substr(path.size() - 3) == ".g6") {
        auto nl = text.find('\n');
        if (nl != std::string::npos && text.find_first_not_of(" \t\r\n", nl) != std::string::npos)
            throw egoref::Error("graph6 file has multiple records; use the report command: " + path);
        return egoref::parse_graph6(text.substr(0, nl == std::string::npos ? text.size() : nl));
    }
    return egoref::parse_labeled_text(text);
}

// Sources: "builtin:NAME", "g6:LINE", a file path, or a bare graph6 record.
std::vector<NamedGraph> load_source(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        std::string name = source.substr(8);
        if (egoref::is_builtin_pair(name)) {
            auto [a, b] = egoref::builtin_pair(name);
            return {{name + "#1", a}, {name + "#2", b}};
        }
        return {{name, egoref::builtin_graph(name)}};
    }
    if (source.rfind("g6:", 0) == 0) return {{source, egoref::parse_graph6(source.substr(3))}};
    if (std::filesystem::exists(source)) return {{source, load_graph_file(source)}};
    try {
        return {{source, egoref::parse_graph6(source)}};
    } catch (const egoref::Error&) {
        throw egoref::Error("cannot resolve graph source '" + source +
                            "': not a builtin, file, or graph6 record");
    }
}

egoref::FormulaPtr load_formula(const std::string& source, bool allow_free = false) {
    if (source.rfind("builtin:", 0) == 0) return egoref::builtin_formula(source.substr(8));
    if (std::filesystem::exists(source))
        return egoref::parse_formula(read_file(source), allow_free);
    return egoref::parse_formula(source, allow_free);
}

std::string graph_digest(const Graph& g) {
    return egoref::sha256_hex(egoref::serialize_labeled_text(g));
}

std::optional<int> parse_radius(const std::string& text) {
    if (text.empty() || text == "inf" || text == "unbounded") return std::nullopt;
    return std::stoi(text);
}

int worker_budget(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("EGO_REFINE_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

struct Output {
    std::string format = "json";
    std::string out_path;

    void emit(const json& report, const std::string& text_summary) const {
        std::string body = format == "text" ? text_summary : report.dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw egoref::Error("cannot write: " + out_path);
            out << body;
        } else {
            std::cout << body;
        }
    }
};

json base_report(const std::string& command, const std::vector<NamedGraph>& inputs) {
    json inputs_json = json::array();
    for (const auto& in : inputs)
        inputs_json.push_back({{"name", in.name}, {"digest", graph_digest(in.graph)}});
    return {{"schema", 1}, {"command", command}, {"inputs", inputs_json}};
}

json histogram_json(const egoref::Histogram& hist) {
    auto& table = egoref::KeyTable::instance();
    json out = json::array();
    for (auto [id, count] : hist)
        out.push_back({{"color", table.digest_hex(id)}, {"count", count}});
    return out;
}

// Per-method graph comparison used by distinguish and report.
struct MethodParams {
    std::string method = "wl";
    int depth = 1;
    std::optional<int> radius;
    std::optional<int> iters;
    egoref::FormulaPtr formula;
    std::optional<egoref::HeGnnSpec> spec;
};

// Multi-hot when the dimensions line up; constant ones for unlabeled graphs
// fed to specs that expect features.
egoref::Embedding embedding_for(const egoref::HeGnnSpec& spec, const Graph& g) {
    if (spec.input_dim() == g.universe().size()) return egoref::multihot(g);
    if (g.universe().size() == 0)
        return egoref::Embedding(g.node_count(), std::vector<double>(spec.input_dim(), 1.0));
    throw egoref::Error("spec input dimension does not match the graph's universe");
}

bool method_distinguishes(const MethodParams& p, const Graph& a, const Graph& b) {
    if (p.method == "wl") {
        if (!p.iters) return !egoref::graph_equiv_wl(a, b);
        auto ha = egoref::histogram(egoref::wl(a, egoref::initial_coloring(a), *p.iters));
        auto hb = egoref::histogram(egoref::wl(b, egoref::initial_coloring(b), *p.iters));
        return ha != hb;
    }
    if (p.method == "he")
        return !egoref::graph_equiv_he(a, b, egoref::HeParams{p.depth, p.radius, p.iters});
    if (p.method == "wlir") return !egoref::wlir_graph_equiv(a, b, p.depth);
    if (p.method == "formula") return egoref::formula_separates(a, b, p.formula);
    if (p.method == "net") {
        if (a.node_count() != b.node_count()) return true;
        auto out_a = egoref::run_hegnn(*p.spec, a, embedding_for(*p.spec, a));
        auto out_b = egoref::run_hegnn(*p.spec, b, embedding_for(*p.spec, b));
        std::sort(out_a.begin(), out_a.end());
        std::sort(out_b.begin(), out_b.end());
        return out_a != out_b;
    }
    throw egoref::Error("unknown method: " + p.method);
}

// Signature digest of a graph under the chosen method (for reports).
std::string method_digest(const MethodParams& p, const Graph& g, int iters_default) {
    using egoref::KeyTable;
    if (p.method == "wl") {
        auto col = egoref::wl(g, egoref::initial_coloring(g), p.iters.value_or(iters_default));
        return KeyTable::instance().digest_hex(egoref::histogram_key(egoref::histogram(col)));
    }
    if (p.method == "he") {
        egoref::HeParams hp{p.depth, p.radius, p.iters ? p.iters : std::optional<int>(iters_default)};
        auto sigs = egoref::he_signatures(g, hp);
        egoref::Coloring col{sigs};
        return KeyTable::instance().digest_hex(egoref::histogram_key(egoref::histogram(col)));
    }
    if (p.method == "wlir") {
        auto tree = egoref::wlir(g, egoref::initial_coloring(g), p.depth);
        return KeyTable::instance().digest_hex(tree.key);
    }
    if (p.method == "formula")
        return "count:" + std::to_string(egoref::count_satisfying(g, p.formula));
    if (p.method == "net") {
        auto out = egoref::run_hegnn(*p.spec, g, embedding_for(*p.spec, g));
        std::sort(out.begin(), out.end());
        return egoref::sha256_hex(json(out).dump());
    }
    throw egoref::Error("unknown method: " + p.method);
}

json tree_json(const egoref::RefinementTree& tree, bool full_keys) {
    auto& table = egoref::KeyTable::instance();
    json out;
    out["histogram"] = histogram_json(tree.hist);
    out["key"] = table.digest_hex(tree.key);
    if (full_keys) out["full_key"] = table.render(tree.key);
    json children = json::array();
    for (const auto& c : tree.children) children.push_back(tree_json(c, full_keys));
    out["children"] = children;
    return out;
}

long long wall_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
}

egoref::Env parse_env(const std::string& text, const Graph& g) {
    egoref::Env env;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw egoref::Error("env binding must look like x=3");
        int node = std::stoi(item.substr(eq + 1));
        if (node < 0 || node >= g.node_count()) throw egoref::Error("env binding out of range");
        env[item.substr(0, eq)] = node;
    }
    return env;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"egoref: ego-refinement, logic and network toolkit for small graphs"};
    app.require_subcommand(1);

    Output output;
    auto add_output_flags = [&output](CLI::App* cmd) {
        cmd->add_option("--format", output.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", output.out_path, "write the report to a file instead of stdout");
    };

    std::string method = "wl", radius_text, formula_source, spec_source, env_text, pattern_path;
    std::string counter = "auto";
    int depth = 1, node = 0, workers_flag = 0;
    std::optional<int> iters;
    bool full_keys = false;

    auto add_method_flags = [&](CLI::App* cmd) {
        cmd->add_option("--method", method, "wl | he | wlir | formula | net");
        cmd->add_option("--depth", depth, "nesting / individualization depth");
        cmd->add_option("--radius", radius_text, "subgraph radius; 'inf' for unbounded");
        cmd->add_option("--iters", iters, "refinement rounds (default: max node count)");
        cmd->add_option("--formula", formula_source, "formula for --method formula");
        cmd->add_option("--spec", spec_source, "network spec for --method net");
    };

    auto* cmd_distinguish = app.add_subcommand(
        "distinguish", "compare two graphs (or a builtin pair) under a method");
    add_output_flags(cmd_distinguish);
    std::vector<std::string> graph_sources;
    cmd_distinguish->add_option("sources", graph_sources, "one pair source or two graph sources")
        ->expected(1, 2);
    add_method_flags(cmd_distinguish);

    auto* cmd_check = app.add_subcommand("check", "evaluate a formula at a node");
    add_output_flags(cmd_check);
    std::string check_graph, check_formula;
    cmd_check->add_option("graph", check_graph, "graph source")->required();
    cmd_check->add_option("formula", check_formula, "formula source")->required();
    cmd_check->add_option("--node", node, "evaluation node (default 0)");
    cmd_check->add_option("--env", env_text, "variable bindings, e.g. x=0,y=3");

    auto* cmd_compile = app.add_subcommand("compile", "compile a formula to a network spec");
    add_output_flags(cmd_compile);
    std::string compile_formula;
    cmd_compile->add_option("formula", compile_formula, "formula source")->required();
    cmd_compile->add_option("--radius", radius_text, "radius for plain binders; 'inf' default");
    std::vector<std::string> compile_props;
    cmd_compile->add_option("--props", compile_props, "proposition universe (ordered names)");

    auto* cmd_run_net = app.add_subcommand("run-net", "run a network spec on a graph");
    add_output_flags(cmd_run_net);
    std::string run_spec, run_graph;
    cmd_run_net->add_option("spec", run_spec, "spec file or builtin:example32")->required();
    cmd_run_net->add_option("graph", run_graph, "graph source")->required();

    auto* cmd_report = app.add_subcommand("report", "pairwise comparison over a graph6 dataset dir");
    add_output_flags(cmd_report);
    std::string report_dir;
    cmd_report->add_option("dir", report_dir, "directory of .g6 files")->required();
    add_method_flags(cmd_report);
    cmd_report->add_option("--workers", workers_flag, "worker pool size (or EGO_REFINE_WORKERS)");

    auto* cmd_wl = app.add_subcommand("wl", "refinement histogram of one graph");
    add_output_flags(cmd_wl);
    std::string wl_graph;
    cmd_wl->add_option("graph", wl_graph, "graph source")->required();
    cmd_wl->add_option("--iters", iters, "refinement rounds (default: node count)");

    auto* cmd_wlir = app.add_subcommand("wlir", "refinement tree of one graph");
    add_output_flags(cmd_wlir);
    std::string wlir_graph;
    cmd_wlir->add_option("graph", wlir_graph, "graph source")->required();
    cmd_wlir->add_option("--depth", depth, "individualization budget");
    cmd_wlir->add_flag("--full-keys", full_keys, "include full canonical keys (size-capped)");

    auto* cmd_homcount = app.add_subcommand("homcount", "homomorphism counts of a rooted pattern");
    add_output_flags(cmd_homcount);
    std::string hom_graph;
    cmd_homcount->add_option("pattern", pattern_path, "pattern file (labeled text + root trailer)")
        ->required();
    cmd_homcount->add_option("graph", hom_graph, "graph source")->required();
    cmd_homcount->add_option("--counter", counter, "auto | brute | tree | cacyclic");

    auto* cmd_egorank = app.add_subcommand("egorank", "exact ego-rank of a rooted pattern");
    add_output_flags(cmd_egorank);
    cmd_egorank->add_option("pattern", pattern_path, "pattern file")->required();

    auto* cmd_examples = app.add_subcommand("examples", "list builtin graphs and formulas");
    add_output_flags(cmd_examples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        if (cmd_distinguish->parsed()) {
            std::vector<NamedGraph> graphs;
            for (const auto& s : graph_sources)
                for (auto& g : load_source(s)) graphs.push_back(std::move(g));
            if (graphs.size() != 2)
                throw egoref::Error("distinguish needs exactly two graphs (got " +
                                    std::to_string(graphs.size()) + ")");
            MethodParams params;
            params.method = method;
            params.depth = depth;
            params.radius = parse_radius(radius_text);
            params.iters = iters;
            if (method == "formula") {
                if (formula_source.empty()) throw egoref::Error("--formula is required");
                params.formula = load_formula(formula_source);
            }
            if (method == "net") {
                if (spec_source.empty()) throw egoref::Error("--spec is required");
                if (spec_source == "builtin:example32")
                    params.spec = egoref::example32_spec();
                else
                    params.spec = egoref::spec_from_json(json::parse(read_file(spec_source)));
            }
            const Graph& a = graphs[0].graph;
            const Graph& b = graphs[1].graph;
            int iters_default = std::max(a.node_count(), b.node_count());
            bool distinguished = method_distinguishes(params, a, b);
            json report = base_report("distinguish", graphs);
            report["params"] = {{"method", method},
                                {"depth", depth},
                                {"radius", radius_text.empty() ? "inf" : radius_text},
                                {"iters", iters ? json(*iters) : json(nullptr)}};
            report["results"] = {
                {"distinguished", distinguished},
                {"left", method_digest(params, a, iters_default)},
                {"right", method_digest(params, b, iters_default)},
            };
            report["wall_ms"] = wall_ms_since(start);
            output.emit(report, std::string(distinguished ? "distinguished" : "indistinguishable") +
                                    "\n");
            return distinguished ? kExitDistinguished : kExitSame;
        }

        if (cmd_check->parsed()) {
            auto graphs = load_source(check_graph);
            if (graphs.size() != 1) throw egoref::Error("check needs a single graph source");
            const Graph& g = graphs[0].graph;
            if (node < 0 || node >= g.node_count()) throw egoref::Error("node out of range");
            egoref::Env env = env_text.empty() ? egoref::Env{} : parse_env(env_text, g);
            auto f = load_formula(check_formula, !env_text.empty());
            bool sat = egoref::eval(g, node, env, f);
            json report = base_report("check", graphs);
            report["params"] = {{"node", node}, {"formula", egoref::print_formula(f)}};
            report["results"] = {{"satisfied", sat}};
            report["wall_ms"] = wall_ms_since(start);
            output.emit(report, std::string(sat ? "satisfied" : "not satisfied") + "\n");
            return sat ? kExitDistinguished : kExitSame;
        }

        if (cmd_compile->parsed()) {
            auto f = load_formula(compile_formula);
            if (auto r = parse_radius(radius_text)) f = egoref::with_radius(f, *r);
            egoref::PropositionUniverse universe{compile_props};
            egoref::HeGnnSpec spec = egoref::compile_hgml(f, universe);
            json body = egoref::spec_to_json(spec);
            if (!output.out_path.empty()) {
                std::ofstream out(output.out_path, std::ios::binary);
                if (!out) throw egoref::Error("cannot write: " + output.out_path);
                out << body.dump(2) << "\n";
                json report = {{"schema", 1},
                               {"command", "compile"},
                               {"results",
                                {{"formula", egoref::print_formula(f)},
                                 {"out", output.out_path},
                                 {"depth", spec.depth()}}}};
                std::cout << report.dump(2) << std::endl;
            } else {
                std::cout << body.dump(2) << std::endl;
            }
            return kExitSame;
        }

        if (cmd_run_net->parsed()) {
            egoref::HeGnnSpec spec =
                run_spec == "builtin:example32"
                    ? egoref::example32_spec()
                    : egoref::spec_from_json(json::parse(read_file(run_spec)));
            auto graphs = load_source(run_graph);
            if (graphs.size() != 1) throw egoref::Error("run-net needs a single graph source");
            const Graph& g = graphs[0].graph;
            auto out = egoref::run_hegnn(spec, g, embedding_for(spec, g));
            json report = base_report("run-net", graphs);
            report["results"] = {{"outputs", out}};
            report["wall_ms"] = wall_ms_since(start);
            std::ostringstream text;
            for (int v = 0; v < g.node_count(); ++v) {
                text << v << ":";
                for (double x : out[v]) text << ' ' << x;
                text << '\n';
            }
            output.emit(report, text.str());
            return kExitSame;
        }

        if (cmd_report->parsed()) {
            std::vector<NamedGraph> graphs;
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(report_dir))
                if (entry.is_regular_file()) files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& path : files) {
                if (path.extension() != ".g6") continue;
                std::istringstream in(read_file(path.string()));
                std::string line;
                int idx = 0;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    graphs.push_back(
                        {path.filename().string() + "#" + std::to_string(idx++),
                         egoref::parse_graph6(line)});
                }
            }
            if (graphs.empty()) throw egoref::Error("no .g6 graphs found in " + report_dir);
            bool mixed_order = false;
            for (const auto& g : graphs)
                if (g.graph.node_count() != graphs[0].graph.node_count()) mixed_order = true;
            if (mixed_order)
                std::cerr << "warning: graphs of different order in dataset" << std::endl;

            MethodParams params;
            params.method = method;
            params.depth = depth;
            params.radius = parse_radius(radius_text);
            params.iters = iters;
            if (method == "formula") params.formula = load_formula(formula_source);

            int n = static_cast<int>(graphs.size());
            int iters_default = 0;
            for (const auto& g : graphs) iters_default = std::max(iters_default, g.graph.node_count());
            // One shared budget so pair verdicts and per-graph digests agree.
            if (!params.iters) params.iters = iters_default;

            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
            std::vector<char> distinguished(pairs.size(), 0);
            int workers = worker_budget(workers_flag);
            std::size_t next = 0;
            std::mutex mu;
            auto work = [&] {
                while (true) {
                    std::size_t k;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= pairs.size()) return;
                        k = next++;
                    }
                    auto [i, j] = pairs[k];
                    distinguished[k] =
                        method_distinguishes(params, graphs[i].graph, graphs[j].graph) ? 1 : 0;
                }
            };
            if (workers <= 1) {
                work();
            } else {
                std::vector<std::future<void>> futures;
                for (int w = 0; w < workers; ++w)
                    futures.push_back(std::async(std::launch::async, work));
                for (auto& f : futures) f.get();
            }

            // Equivalence classes: union the indistinguishable pairs.
            std::vector<int> cls(n);
            for (int i = 0; i < n; ++i) cls[i] = i;
            std::function<int(int)> find = [&](int x) {
                return cls[x] == x ? x : cls[x] = find(cls[x]);
            };
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if (!distinguished[k]) cls[find(pairs[k].first)] = find(pairs[k].second);
            std::map<int, std::vector<std::string>> classes;
            for (int i = 0; i < n; ++i) classes[find(i)].push_back(graphs[i].name);

            json matrix = json::array();
            for (std::size_t k = 0; k < pairs.size(); ++k)
                matrix.push_back({{"left", graphs[pairs[k].first].name},
                                  {"right", graphs[pairs[k].second].name},
                                  {"distinguished", distinguished[k] != 0}});
            json classes_json = json::array();
            for (auto& [root, members] : classes) classes_json.push_back(members);
            json digests = json::object();
            for (const auto& g : graphs)
                digests[g.name] = method_digest(params, g.graph, iters_default);

            json report = base_report("report", graphs);
            report["params"] = {{"method", method},
                                {"depth", depth},
                                {"radius", radius_text.empty() ? "inf" : radius_text}};
            report["results"] = {{"pairs", matrix},
                                 {"classes", classes_json},
                                 {"class_count", classes_json.size()},
                                 {"signatures", digests}};
            report["wall_ms"] = wall_ms_since(start);
            std::ostringstream text;
            text << classes_json.size() << " equivalence classes\n";
            output.emit(report, text.str());
            return kExitSame;
        }

        if (cmd_wl->parsed()) {
            auto graphs = load_source(wl_graph);
            if (graphs.size() != 1) throw egoref::Error("wl needs a single graph source");
            const Graph& g = graphs[0].graph;
            int t = iters.value_or(g.node_count());
            auto hist = egoref::histogram(egoref::wl(g, egoref::initial_coloring(g), t));
            json report = base_report("wl", graphs);
            report["params"] = {{"iters", t}};
            report["results"] = {{"histogram", histogram_json(hist)},
                                 {"classes", hist.size()}};
            report["wall_ms"] = wall_ms_since(start);
            output.emit(report, std::to_string(hist.size()) + " color classes\n");
            return kExitSame;
        }

        if (cmd_wlir->parsed()) {
            auto graphs = load_source(wlir_graph);
            if (graphs.size() != 1) throw egoref::Error("wlir needs a single graph source");
            const Graph& g = graphs[0].graph;
            auto tree = egoref::wlir(g, egoref::initial_coloring(g), depth);
            json report = base_report("wlir", graphs);
            report["params"] = {{"depth", depth}};
            report["results"] = {{"tree", tree_json(tree, full_keys)},
                                 {"key", egoref::KeyTable::instance().digest_hex(tree.key)}};
            report["wall_ms"] = wall_ms_since(start);
            output.emit(report, egoref::KeyTable::instance().digest_hex(tree.key) + "\n");
            return kExitSame;
        }

        if (cmd_homcount->parsed()) {
            egoref::RootedPattern pattern = egoref::parse_pattern(read_file(pattern_path));
            auto graphs = load_source(hom_graph);
            if (graphs.size() != 1) throw egoref::Error("homcount needs a single graph source");
            const Graph& g = graphs[0].graph;
            auto count_at = [&](int v) -> egoref::HomCount {
                egoref::PointedGraph pg{g, v};
                if (counter == "brute") return egoref::hom_brute(pattern, pg);
                if (counter == "tree") return egoref::hom_tree(pattern, pg);
                if (counter == "cacyclic") return egoref::hom_cacyclic(pattern, pg);
                return egoref::hom_vector({pattern}, pg)[0];
            };
            std::vector<egoref::HomCount> counts;
            for (int v = 0; v < g.node_count(); ++v) counts.push_back(count_at(v));
            json report = base_report("homcount", graphs);
            report["params"] = {{"pattern", egoref::sha256_hex(egoref::serialize_pattern(pattern))},
                                {"counter", counter},
                                {"acyclic", egoref::is_acyclic(pattern)},
                                {"cacyclic", egoref::is_cacyclic(pattern)}};
            report["results"] = {{"counts", counts}};
            report["wall_ms"] = wall_ms_since(start);
            std::ostringstream text;
            for (std::size_t v = 0; v < counts.size(); ++v)
                text << v << ": " << counts[v] << '\n';
            output.emit(report, text.str());
            return kExitSame;
        }

        if (cmd_egorank->parsed()) {
            egoref::RootedPattern pattern = egoref::parse_pattern(read_file(pattern_path));
            auto result = egoref::ego_rank(pattern);
            json dep = json::array();
            for (int d : result.witness.dep) dep.push_back(d < 0 ? json(nullptr) : json(d));
            json report = {{"schema", 1},
                           {"command", "egorank"},
                           {"inputs",
                            json::array({{{"name", pattern_path},
                                          {"digest",
                                           egoref::sha256_hex(egoref::serialize_pattern(pattern))}}})},
                           {"results", {{"rank", result.rank}, {"dep", dep}}}};
            report["wall_ms"] = wall_ms_since(start);
            output.emit(report, "ego-rank " + std::to_string(result.rank) + "\n");
            return kExitSame;
        }

        if (cmd_examples->parsed()) {
            json report = {{"schema", 1},
                           {"command", "examples"},
                           {"results",
                            {{"graphs", egoref::builtin_graph_names()},
                             {"formulas", egoref::builtin_formula_names()},
                             {"specs", {"example32"}}}}};
            std::ostringstream text;
            text << "graphs:";
            for (const auto& n : egoref::builtin_graph_names()) text << ' ' << n;
            text << "\nformulas:";
            for (const auto& n : egoref::builtin_formula_names()) text << ' ' << n;
            text << "\n";
            output.emit(report, text.str());
            return kExitSame;
        }
    } catch (const egoref::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    }
    return kExitUsage;
}
