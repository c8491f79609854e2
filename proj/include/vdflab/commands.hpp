#ifndef VDFLAB_COMMANDS_HPP
#define VDFLAB_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vdflab/serialize.hpp"

namespace vdflab::cmd {

// Exit-status contract shared by every command: 0 success/accept,
// 1 verification reject, 2 malformed input or invalid configuration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitMalformed = 2;

struct Config {
    std::string scheme = "wesolowski";
    unsigned lambda = 16;
    std::uint64_t time_param = 1024;
    unsigned ell_bits = 0;  // 0 picks the per-command default
    unsigned delta = 2;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string variant = "A";
    std::string params_path;
    std::string secrets_path;
    std::string out_path;       // empty: print the document to stdout
    std::string transcript_path;
    bool with_t_in_hash = false;
    std::string exec = "openmp";
    std::string mode = "auto";  // characterize: auto | exhaustive | sampled
    bool wall_times = false;    // bench: include machine-dependent timings
};

int cmd_setup(const Config& cfg);
int cmd_eval(const Config& cfg);
int cmd_verify(const Config& cfg);
int cmd_attack(const Config& cfg);
int cmd_bench(const Config& cfg);
int cmd_characterize(const Config& cfg);

// ---- benchmark internals (exposed for the test gate) ----------------------

struct BenchRow {
    std::string scheme;
    unsigned lambda = 0;
    std::uint64_t t = 0;
    unsigned ell_bits = 0;  // 0 when the scheme draws no challenge prime
    OpCounter eval_ops;     // proof generation included
    OpCounter verify_ops;
    std::size_t proof_elements = 0;
    double eval_ms = -1.0;  // negative: not measured
    double verify_ms = -1.0;
};

struct EllFitPoint {
    unsigned ell_bits = 0;
    double mean_verify_ops = 0.0;
    std::uint64_t samples = 0;
};

struct BenchReport {
    std::uint64_t seed = 0;
    std::vector<BenchRow> rows;
    std::vector<EllFitPoint> fit_points;
    double slope_per_bit = 0.0;
    double intercept = 0.0;
};

// The full grid: lambda in {8,16,32} x T in {2^4,2^6,...,2^16} x all three
// schemes, on matched moduli and inputs. Asserts the structural op-count
// bounds (two-square verify squarings, the verifier's challenge-size bound,
// halving-proof length) and fits verify cost against challenge width.
BenchReport run_bench(std::uint64_t seed, bool wall_times);

serialize::Json bench_json(const BenchReport& report);

}  // namespace vdflab::cmd

#endif
