#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifista/analysis.hpp"
#include "ifista/instance.hpp"
#include "ifista/solver.hpp"

namespace ifista {

// Parsed run specification file. Grammar (one "key value..." per line,
// '#' starts a comment, keys may carry a trailing ':'):
//   problem <path> | problem gen lsq <m> <n> <seed> <density> <lambda>
//   rule constant <L> | rule backtrack <L1> <eta>
//   s1 <v>                      (default 1)
//   mu <v> | mu auto            (default auto)
//   s power <c> <r> | s list <v2> <v3> ...   (default power 1 2)
//   sigma sigma|sigma_prime|sigma_tilde      (default sigma)
//   perturb zero | random <seed> <fill> | saturate <fill> <seed>
//         | directed tv <fill> | directed sqnorm <fill>   (default zero)
//   iters <K>
//   seed <v>                    (default 0)
//   t2 <v>                      (default 1)
//   ref_iters <v>               (default 100000; reference-run length)
//   report_phi tv|sqnorm        (repeatable)
struct RunSpec {
    std::string name;  // spec file stem
    std::string problem_desc;
    ProblemInstance instance;
    StepSizeRule rule = ConstantStep{1.0};
    BudgetConfig budget;
    PerturbStrategy strategy = ZeroPerturb{};
    int iters = 0;
    std::uint64_t seed = 0;
    double t2 = 1.0;
    int ref_iters = 100000;
    std::vector<AuxCost> report_phi;
};

// Throws std::runtime_error with a line-numbered diagnostic on bad input.
RunSpec parse_run_spec(const std::string& path);

RunConfig make_run_config(const RunSpec& spec);

// Exit codes: 0 success, 1 I/O or oracle error, 2 budget breach detected.
int cmd_solve(const std::string& spec_path, const std::string& out_dir = ".",
              bool quiet = false, bool bound_csv = false);

int cmd_sweep(const std::string& spec_path, const std::string& param,
              const std::vector<std::string>& values,
              const std::string& out_dir = ".", bool quiet = false);

int cmd_verify(const std::string& corpus_path, const std::string& suite = "",
               bool quiet = false);

}  // namespace ifista
