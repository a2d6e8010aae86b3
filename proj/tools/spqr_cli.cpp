#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spqr/bench.hpp"
#include "spqr/connectivity.hpp"
#include "spqr/graph_io.hpp"
#include "spqr/oracle.hpp"
#include "spqr/script.hpp"

namespace {

spqr::LabeledGraph load_or_exit(const std::string& path) {
    try {
        return spqr::read_graph_file(path);
    } catch (const spqr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(2);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic SPQR-tree workbench"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a workspace script");
    std::string script_path;
    run->add_option("script", script_path, "script file")->required();

    auto* bench = app.add_subcommand("bench", "locality benchmark for vertex expansion");
    spqr::BenchOptions opt;
    bench->add_option("--sizes", opt.sizes, "host sizes")->delimiter(',');
    bench->add_option("--degree", opt.degree, "degree of the timed expansions");
    bench->add_option("--trials", opt.trials, "timed expansions per size");
    bench->add_option("--seed", opt.seed, "random seed");
    bench->add_option("--baseline-trials", opt.baseline_trials, "full rebuilds per size");
    bench->add_flag("--tsv", opt.tsv, "tab-separated output");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference queries");
    std::string oracle_what, oracle_file;
    long oa = -1, ob = -1;
    oracle_cmd->add_option("what", oracle_what, "planar | seppairs | menger3 | rotations")->required();
    oracle_cmd->add_option("graph", oracle_file, "graph file")->required();
    oracle_cmd->add_option("a", oa, "first vertex id");
    oracle_cmd->add_option("b", ob, "second vertex id");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        spqr::ScriptResult res = spqr::run_script_file(script_path);
        std::cout << res.transcript;
        return res.exit_code;
    }
    if (bench->parsed()) {
        auto report = spqr::bench_locality(opt);
        std::cout << report.render(opt.tsv);
        return 0;
    }
    if (oracle_cmd->parsed()) {
        spqr::LabeledGraph g = load_or_exit(oracle_file);
        try {
            if (oracle_what == "planar") {
                std::cout << (spqr::oracle::planar_bf(g.graph) ? "true" : "false") << "\n";
            } else if (oracle_what == "seppairs") {
                for (auto [x, y] : spqr::oracle::separation_pairs_bf(g.graph)) {
                    long lx = g.label_of(x), ly = g.label_of(y);
                    if (ly < lx) std::swap(lx, ly);
                    std::cout << lx << " " << ly << "\n";
                }
            } else if (oracle_what == "menger3") {
                if (oa < 0 || ob < 0) {
                    std::cerr << "error: menger3 needs two vertex ids\n";
                    return 3;
                }
                std::cout << (spqr::oracle::menger3_bf(g.graph, g.vertex(oa), g.vertex(ob)) ? "true" : "false")
                          << "\n";
            } else if (oracle_what == "rotations") {
                if (oa < 0) {
                    std::cerr << "error: rotations needs a vertex id\n";
                    return 3;
                }
                for (const auto& cls : spqr::oracle::rotations_at_bf(g.graph, g.vertex(oa))) {
                    for (spqr::EdgeId e : cls) std::cout << g.label_of(e) << " ";
                    std::cout << "\n";
                }
            } else {
                std::cerr << "error: unknown oracle query " << oracle_what << "\n";
                return 2;
            }
        } catch (const spqr::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
    }
    return 0;
}
