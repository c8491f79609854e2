// Command-line surface for the sequential-squaring delay-function lab.
// Every option can also be set through an environment variable with the
// VDFLAB_ prefix; explicit flags win. Exit statuses are uniform across
// subcommands: 0 success/accept, 1 verification reject, 2 malformed input
// or configuration.
#include <CLI11.hpp>

#include "vdflab/commands.hpp"

namespace {

using vdflab::cmd::Config;

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--scheme", cfg.scheme, "wesolowski | pietrzak | two_square")
        ->envname("VDFLAB_SCHEME")
        ->check(CLI::IsMember({"wesolowski", "pietrzak", "two_square"}));
    sub->add_option("--lambda", cfg.lambda, "security parameter: factors get 2*lambda bits")
        ->envname("VDFLAB_LAMBDA");
    sub->add_option("--time-param", cfg.time_param, "delay parameter T")
        ->envname("VDFLAB_TIME_PARAM");
    sub->add_option("--ell-bits", cfg.ell_bits,
                    "challenge prime width; 0 picks the per-command default")
        ->envname("VDFLAB_ELL_BITS");
    sub->add_option("--delta", cfg.delta, "two-square verification squaring count")
        ->envname("VDFLAB_DELTA");
    sub->add_option("--trials", cfg.trials, "trial count for the experiment commands")
        ->envname("VDFLAB_TRIALS");
    sub->add_option("--seed", cfg.seed, "master seed; fixes every random choice of the run")
        ->envname("VDFLAB_SEED");
    sub->add_option("--variant", cfg.variant, "two-square verification reading: A | B | C")
        ->envname("VDFLAB_VARIANT")
        ->check(CLI::IsMember({"A", "B", "C"}));
    sub->add_option("--params", cfg.params_path, "parameter file (JSON)")
        ->envname("VDFLAB_PARAMS");
    sub->add_option("--secrets", cfg.secrets_path, "secrets file (JSON)")
        ->envname("VDFLAB_SECRETS");
    sub->add_option("--out", cfg.out_path, "output file; omitted: document goes to stdout")
        ->envname("VDFLAB_OUT");
    sub->add_option("--exec", cfg.exec, "trial-loop lane: openmp | serial")
        ->envname("VDFLAB_EXEC")
        ->check(CLI::IsMember({"openmp", "serial"}));
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{
        "Delay-function lab: sequential-squaring schemes, their verifiers, "
        "and the experiments that measure them."};
    app.require_subcommand(1);

    CLI::App* setup =
        app.add_subcommand("setup", "generate a parameter file (and optionally secrets)");
    add_common(setup, cfg);
    setup->add_flag("--with-t-in-hash", cfg.with_t_in_hash,
                    "bind T into the challenge-prime derivation")
        ->envname("VDFLAB_WITH_T_IN_HASH");

    CLI::App* eval =
        app.add_subcommand("eval", "evaluate the configured scheme and write a transcript");
    add_common(eval, cfg);

    CLI::App* verify = app.add_subcommand(
        "verify", "check a transcript: exit 0 accept, 1 reject, 2 malformed");
    add_common(verify, cfg);
    verify->add_option("transcript", cfg.transcript_path, "transcript file (JSON)")
        ->required();

    CLI::App* attack =
        app.add_subcommand("attack", "run the delay-forgery experiment against the verifier");
    add_common(attack, cfg);
    attack->add_flag("--with-t-in-hash", cfg.with_t_in_hash,
                     "re-derive the challenge for every candidate T (countermeasure)")
        ->envname("VDFLAB_WITH_T_IN_HASH");

    CLI::App* bench =
        app.add_subcommand("bench", "operation-count comparison across the three schemes");
    add_common(bench, cfg);
    bench->add_flag("--wall-times", cfg.wall_times,
                    "also record machine-dependent wall-clock timings")
        ->envname("VDFLAB_WALL_TIMES");

    CLI::App* characterize = app.add_subcommand(
        "characterize", "map when two-square verification accepts honest outputs");
    add_common(characterize, cfg);
    characterize->add_option("--mode", cfg.mode, "auto | exhaustive | sampled")
        ->envname("VDFLAB_MODE")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? vdflab::cmd::kExitOk : vdflab::cmd::kExitMalformed;
    }

    if (setup->parsed()) return vdflab::cmd::cmd_setup(cfg);
    if (eval->parsed()) return vdflab::cmd::cmd_eval(cfg);
    if (verify->parsed()) return vdflab::cmd::cmd_verify(cfg);
    if (attack->parsed()) return vdflab::cmd::cmd_attack(cfg);
    if (bench->parsed()) return vdflab::cmd::cmd_bench(cfg);
    return vdflab::cmd::cmd_characterize(cfg);
}
