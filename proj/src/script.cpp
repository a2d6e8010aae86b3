#include "spqr/script.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "spqr/embedding_tree.hpp"
#include "spqr/expand.hpp"
#include "spqr/graph_io.hpp"
#include "spqr/planarity.hpp"
#include "spqr/spqr_tree.hpp"

namespace spqr {

namespace {

struct ParseError {
    std::string what;
};
struct SemanticError {
    std::string what;
};
struct InvariantError {
    std::string what;
};

// a named tree plus the external labels of its represented elements
struct TreeEntry {
    SkeletonDecomposition d;
    std::map<long, VertexId> v_by_label;
    std::map<long, EdgeId> e_by_label;
    std::unordered_map<std::uint32_t, long> vlabel;
    std::unordered_map<std::uint32_t, long> elabel;
    long next_v = 0, next_e = 0;

    void adopt_labels(const LabeledGraph& g) {
        for (const auto& [label, id] : g.vertex_order) {
            v_by_label[label] = id;
            vlabel[id.index] = label;
            next_v = std::max(next_v, label + 1);
        }
        for (const auto& [label, id] : g.edge_order) {
            e_by_label[label] = id;
            elabel[id.index] = label;
            next_e = std::max(next_e, label + 1);
        }
    }
    VertexId vertex(long label) const {
        auto it = v_by_label.find(label);
        if (it == v_by_label.end() || !d.represented().is_vertex(it->second))
            throw SemanticError{"unknown vertex " + std::to_string(label)};
        return it->second;
    }
    EdgeId edge(long label) const {
        auto it = e_by_label.find(label);
        if (it == e_by_label.end() || !d.represented().is_edge(it->second))
            throw SemanticError{"unknown edge " + std::to_string(label)};
        return it->second;
    }
    void drop_vertex_label(VertexId v) {
        auto it = vlabel.find(v.index);
        if (it == vlabel.end()) return;
        v_by_label.erase(it->second);
        vlabel.erase(it);
    }
    void drop_dead_edge_labels() {
        std::vector<long> dead;
        for (const auto& [label, id] : e_by_label)
            if (!d.represented().is_edge(id)) dead.push_back(label);
        for (long label : dead) {
            elabel.erase(e_by_label[label].index);
            e_by_label.erase(label);
        }
    }
    void label_vertex(VertexId v, long label) {
        v_by_label[label] = v;
        vlabel[v.index] = label;
        next_v = std::max(next_v, label + 1);
    }
    void label_edge(EdgeId e, long label) {
        e_by_label[label] = e;
        elabel[e.index] = label;
        next_e = std::max(next_e, label + 1);
    }
    std::string vname(std::uint32_t repr_index) const {
        auto it = vlabel.find(repr_index);
        return it == vlabel.end() ? "?" + std::to_string(repr_index) : std::to_string(it->second);
    }
    std::string ename(std::uint32_t repr_index) const {
        auto it = elabel.find(repr_index);
        return it == elabel.end() ? "?" + std::to_string(repr_index) : std::to_string(it->second);
    }
};

LabeledGraph read_graph_checked(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SemanticError{"cannot open graph file " + path};
    try {
        return read_graph_text(in);
    } catch (const Error& e) {
        throw ParseError{std::string("bad graph file ") + path + ": " + e.what()};
    }
}

std::vector<std::pair<long, long>> read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SemanticError{"cannot open map file " + path};
    std::vector<std::pair<long, long>> out;
    long a, b;
    while (in >> a >> b) out.emplace_back(a, b);
    if (!in.eof() && !in.fail()) throw ParseError{"bad map file " + path};
    return out;
}

struct Runner {
    std::map<std::string, TreeEntry> trees;
    std::string base_dir;
    std::ostringstream out;
    std::uint64_t seed = 0;

    std::string resolve(const std::string& path) const {
        if (!base_dir.empty() && !path.empty() && path.front() != '/') return base_dir + "/" + path;
        return path;
    }

    TreeEntry& tree(const std::string& name) {
        auto it = trees.find(name);
        if (it == trees.end()) throw SemanticError{"unknown tree " + name};
        return it->second;
    }

    void check_clean(TreeEntry& t) {
        auto report = t.d.validate();
        if (!report.ok()) throw InvariantError{report.to_string()};
    }

    void cmd_load(const std::string& name, const std::string& file, bool build) {
        LabeledGraph g = read_graph_checked(resolve(file));
        TreeEntry entry;
        try {
            entry.d = build ? build_spqr(g.graph) : trivial_decomposition(g.graph);
        } catch (const Error& e) {
            throw SemanticError{e.what()};
        }
        if (!build) {
            init_planarity(entry.d);
            entry.d.set_spqr_clean(is_spqr(entry.d));
        }
        entry.adopt_labels(g);
        std::size_t skels = entry.d.skeleton_count();
        check_clean(entry);
        trees[name] = std::move(entry);
        out << (build ? "built " : "loaded ") << name << ": vertices=" << g.vertex_order.size()
            << " edges=" << g.edge_order.size() << " skeletons=" << skels << "\n";
    }

    void cmd_expand(const std::string& name, long uid, const std::string& file, const std::string& mapfile) {
        TreeEntry& t = tree(name);
        VertexId u = t.vertex(uid);
        LabeledGraph part = read_graph_checked(resolve(file));
        auto pairs = read_map_file(resolve(mapfile));
        std::vector<VertexId> marked;
        std::unordered_map<VertexId, VertexId, VertexIdHash> phi;
        for (auto [left, right] : pairs) {
            VertexId m;
            try {
                m = part.vertex(left);
            } catch (const Error& e) {
                throw SemanticError{e.what()};
            }
            marked.push_back(m);
            phi.emplace(m, t.vertex(right));
        }
        ExpandResult res;
        try {
            res = insert_graph_spqr(t.d, u, part.graph, marked, phi);
        } catch (const Error& e) {
            throw SemanticError{e.what()};
        }
        // u and its edges are gone; fresh elements get labels in file order
        t.drop_vertex_label(u);
        t.drop_dead_edge_labels();
        std::unordered_map<std::uint32_t, bool> is_marked;
        for (VertexId m : marked) is_marked[m.index] = true;
        for (const auto& [label, pv] : part.vertex_order) {
            if (is_marked.count(pv.index)) continue;
            t.label_vertex(res.repr_vertex_map.at(pv), t.next_v);
        }
        for (const auto& [label, pe] : part.edge_order) t.label_edge(res.repr_edge_map.at(pe), t.next_e);
        check_clean(t);
        out << "expanded " << name << " at " << uid << ": vertices=" << t.d.represented().vertex_count()
            << " edges=" << t.d.represented().edge_count() << " skeletons=" << t.d.skeleton_count() << "\n";
    }

    void cmd_merge(const std::string& name, const std::string& name2, long v1, long v2,
                   const std::string& mapfile) {
        if (name == name2) throw SemanticError{"merge needs two distinct trees"};
        TreeEntry& t1 = tree(name);
        TreeEntry& t2 = tree(name2);
        VertexId u1 = t1.vertex(v1), u2 = t2.vertex(v2);
        auto pairs = read_map_file(resolve(mapfile));
        std::unordered_map<EdgeId, EdgeId, EdgeIdHash> phi;
        for (auto [left, right] : pairs) phi.emplace(t1.edge(left), t2.edge(right));
        MergeResult res;
        try {
            res = merge_spqr(t1.d, std::move(t2.d), u1, u2, phi);
        } catch (const Error& e) {
            throw SemanticError{e.what()};
        }
        t1.drop_vertex_label(u1);
        t1.drop_dead_edge_labels();
        // adopt the other tree's surviving elements in its own label order
        for (const auto& [label, id] : t2.v_by_label) {
            auto it = res.repr_vertex_map.find(id);
            if (it != res.repr_vertex_map.end()) t1.label_vertex(it->second, t1.next_v);
        }
        for (const auto& [label, id] : t2.e_by_label) {
            auto it = res.repr_edge_map.find(id);
            if (it == res.repr_edge_map.end()) continue;
            if (t1.elabel.count(it->second.index)) continue; // identified with a kept edge
            t1.label_edge(it->second, t1.next_e);
        }
        trees.erase(name2);
        check_clean(t1);
        out << "merged " << name << " " << name2 << " at " << v1 << "/" << v2
            << ": vertices=" << t1.d.represented().vertex_count()
            << " edges=" << t1.d.represented().edge_count() << " skeletons=" << t1.d.skeleton_count()
            << "\n";
    }

    void cmd_query(TreeEntry& t, const std::vector<std::string>& args) {
        if (args.empty()) throw ParseError{"QUERY needs a subcommand"};
        const std::string& what = args[0];
        try {
            if (what == "PLANAR") {
                out << "planar " << (is_planar(t.d) ? "true" : "false") << "\n";
            } else if (what == "ROTATION") {
                if (args.size() != 2) throw ParseError{"QUERY ROTATION <v>"};
                VertexId v = t.vertex(std::stol(args[1]));
                VertexId alloc{};
                int rigids = 0;
                for (VertexId a : t.d.allocation_vertices(v))
                    if (t.d.cached_class(t.d.skeleton_of(a)) == SkeletonClass::Rigid) {
                        alloc = a;
                        ++rigids;
                    }
                if (rigids == 0) throw SemanticError{"vertex has no rigid allocation skeleton"};
                if (rigids > 1) throw SemanticError{"vertex is not confined to a single rigid"};
                auto rot = rotation(t.d, alloc);
                std::vector<std::string> names;
                for (EdgeId e : rot) {
                    if (t.d.edge_kind(e) == EdgeKind::Real) {
                        names.push_back(t.ename(t.d.orig_edge(e).index));
                    } else {
                        auto [x, y] = t.d.arena().endpoints(e);
                        std::string a = t.vname(t.d.orig_vertex(x).index);
                        std::string b = t.vname(t.d.orig_vertex(y).index);
                        if (b < a) std::swap(a, b);
                        names.push_back("v(" + a + "-" + b + ")");
                    }
                }
                std::vector<std::string> best;
                auto consider = [&](const std::vector<std::string>& seq) {
                    for (std::size_t s = 0; s < seq.size(); ++s) {
                        std::vector<std::string> cand;
                        for (std::size_t i = 0; i < seq.size(); ++i)
                            cand.push_back(seq[(s + i) % seq.size()]);
                        if (best.empty() || cand < best) best = std::move(cand);
                    }
                };
                consider(names);
                std::reverse(names.begin(), names.end());
                consider(names);
                out << "rotation " << args[1] << ":";
                for (const auto& n : best) out << " " << n;
                out << "\n";
            } else if (what == "3PATHS") {
                if (args.size() != 3) throw ParseError{"QUERY 3PATHS <u> <v>"};
                bool yes = three_paths(t.d, t.vertex(std::stol(args[1])), t.vertex(std::stol(args[2])));
                out << "3paths " << args[1] << " " << args[2] << ": " << (yes ? "true" : "false") << "\n";
            } else if (what == "EMBEDTREE") {
                if (args.size() != 2) throw ParseError{"QUERY EMBEDTREE <v>"};
                auto tr = embedding_tree(t.d, t.vertex(std::stol(args[1])));
                out << "embedtree " << args[1] << ": "
                    << format_embedding_tree(tr, [&](std::uint32_t e) { return t.ename(e); }) << "\n";
            } else {
                throw ParseError{"unknown QUERY subcommand " + what};
            }
        } catch (const Error& e) {
            throw SemanticError{e.what()};
        }
    }

    void run_line(const std::string& line) {
        std::istringstream ls(line);
        std::string cmd;
        if (!(ls >> cmd) || cmd[0] == '#') return;
        std::vector<std::string> args;
        std::string a;
        while (ls >> a) args.push_back(a);
        auto need = [&](std::size_t n, const char* usage) {
            if (args.size() != n) throw ParseError{usage};
        };
        if (cmd == "LOAD") {
            need(2, "LOAD <name> <graphfile>");
            cmd_load(args[0], args[1], false);
        } else if (cmd == "BUILD") {
            need(2, "BUILD <name> <graphfile>");
            cmd_load(args[0], args[1], true);
        } else if (cmd == "EXPAND") {
            need(4, "EXPAND <name> <vertex-id> <graphfile> <mapfile>");
            cmd_expand(args[0], std::stol(args[1]), args[2], args[3]);
        } else if (cmd == "MERGE") {
            need(5, "MERGE <name> <name2> <v1> <v2> <edgemapfile>");
            cmd_merge(args[0], args[1], std::stol(args[2]), std::stol(args[3]), args[4]);
        } else if (cmd == "QUERY") {
            if (args.size() < 2) throw ParseError{"QUERY <name> <subcommand> ..."};
            TreeEntry& t = tree(args[0]);
            cmd_query(t, {args.begin() + 1, args.end()});
        } else if (cmd == "DUMP") {
            bool canonical = args.size() == 2 && args[1] == "--canonical";
            if (args.size() != 1 && !canonical) throw ParseError{"DUMP <name> [--canonical]"};
            TreeEntry& t = tree(args[0]);
            if (canonical) {
                out << canonical_form(t.d) << "\n";
            } else {
                std::ostringstream dump;
                t.d.dump(dump, [&](std::uint32_t v) { return t.vname(v); },
                         [&](std::uint32_t e) { return t.ename(e); });
                out << dump.str();
            }
        } else if (cmd == "VALIDATE") {
            need(1, "VALIDATE <name>");
            TreeEntry& t = tree(args[0]);
            auto report = t.d.validate();
            if (report.ok()) {
                out << "validate " << args[0] << ": OK\n";
            } else {
                out << "validate " << args[0] << ":\n" << report.to_string();
                throw InvariantError{report.to_string()};
            }
        } else if (cmd == "SEED") {
            need(1, "SEED <int>");
            seed = std::stoull(args[0]);
            out << "seed " << seed << "\n";
        } else {
            throw ParseError{"unknown command " + cmd};
        }
    }
};

} // namespace

ScriptResult run_script(std::istream& script, const std::string& base_dir) {
    Runner runner;
    runner.base_dir = base_dir;
    std::string line;
    int lineno = 0;
    while (std::getline(script, line)) {
        ++lineno;
        try {
            runner.run_line(line);
        } catch (const ParseError& e) {
            runner.out << "parse error (line " << lineno << "): " << e.what << "\n";
            return {2, runner.out.str()};
        } catch (const SemanticError& e) {
            runner.out << "error (line " << lineno << "): " << e.what << "\n";
            return {3, runner.out.str()};
        } catch (const InvariantError& e) {
            runner.out << "invariant violation (line " << lineno << ")\n";
            return {4, runner.out.str()};
        } catch (const std::invalid_argument&) {
            runner.out << "parse error (line " << lineno << "): expected a number\n";
            return {2, runner.out.str()};
        } catch (const Error& e) {
            runner.out << "error (line " << lineno << "): " << e.what() << "\n";
            return {3, runner.out.str()};
        }
    }
    return {0, runner.out.str()};
}

ScriptResult run_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {2, "cannot open script: " + path + "\n"};
    std::string dir = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return run_script(in, dir);
}

} // namespace spqr
