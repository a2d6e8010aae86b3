#ifndef SPQR_BENCH_HPP
#define SPQR_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spqr {

struct BenchOptions {
    std::vector<std::size_t> sizes{1000, 10000, 100000};
    int degree = 8;          // degree of the vertices expanded in the timed phase
    int trials = 50;         // timed expansions per size
    std::uint64_t seed = 1;  // drives host growth and part choice
    int baseline_trials = 1; // full build_spqr rebuilds per size
    bool tsv = false;
};

struct BenchRow {
    std::size_t size;         // requested host size
    std::size_t reached;      // actual vertex count when measuring started
    double mean_touched;      // skeleton elements touched per timed expansion
    double mean_micros;       // wall time per timed expansion
    double baseline_micros;   // wall time of one full rebuild
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string render(bool tsv) const;
};

/// Grows one host per size by random expansions from a triangle, then times
/// expansions of degree-`degree` vertices and one full from-scratch rebuild.
BenchReport bench_locality(const BenchOptions& opt);

} // namespace spqr

#endif
