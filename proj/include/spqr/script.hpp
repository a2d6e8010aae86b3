#ifndef SPQR_SCRIPT_HPP
#define SPQR_SCRIPT_HPP

#include <iosfwd>
#include <string>

namespace spqr {

/// Outcome of one script run: transcript on stdout semantics, deterministic
/// given the same script, input files and seed.
struct ScriptResult {
    int exit_code = 0; // 0 ok, 2 parse error, 3 semantic error, 4 invariant violation
    std::string transcript;
};

/// Executes a workspace script. Commands, one per line ('#' starts a
/// comment):
///   LOAD <name> <graphfile>      trivial decomposition of the file
///   BUILD <name> <graphfile>     SPQR-tree built from scratch
///   EXPAND <name> <vertex-id> <graphfile> <mapfile>
///   MERGE <name> <name2> <v1> <v2> <edgemapfile>
///   QUERY <name> PLANAR | ROTATION <v> | 3PATHS <u> <v> | EMBEDTREE <v>
///   DUMP <name> [--canonical]
///   VALIDATE <name>
///   SEED <int>
/// Map files hold `<left-id> <right-id>` lines. File paths resolve against
/// `base_dir`. Every mutating command leaves the tree validate-clean or the
/// script aborts with exit code 4.
ScriptResult run_script(std::istream& script, const std::string& base_dir);
ScriptResult run_script_file(const std::string& path);

} // namespace spqr

#endif
