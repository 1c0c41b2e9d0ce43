#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bvhh {

/* One invocation's worth of configuration, shared by all subcommands. */
struct JobConfig {
    std::string command;             // hh | bv | cyclic | verify
    std::string algebra;             // path or fixture name; verify: empty = whole corpus
    std::string coeff = "self";      // self | dual
    long long max_degree = 4;        // half-width of the degree window
    std::optional<int> word_cutoff;  // bar-word truncation
    int u_trunc = 4;                 // u-power window order
    std::string variant = "cyclic";  // cyclic | negative | periodic
    std::string suite = "all";       // verify: which battery
    int trials = 20;                 // verify: random homogeneous trials per fixture
    std::uint64_t seed = 7;
    std::string cache_dir;           // empty: $BVHH_CACHE_DIR if set, else no cache
    std::string format = "table";    // table | structured
    std::string m_cocycle;           // bv: explicit fundamental cocycle file
    std::string mutate_sign;         // debug: flip one sign convention
};

struct JobResult {
    int exit_code = 0;  // 0 clean, 2 theorem violation, 3 input error
    std::string text;
};

/* Run one job. Input problems and structural violations detected before any
   report exists throw; verification failures inside a report return it with
   exit_code 2 so the diagnosis is printed, not swallowed. */
JobResult run_job(const JobConfig& cfg);

/* Parse a command line (without argv[0]), run it, print the report. */
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bvhh
