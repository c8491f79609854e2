#include "vdflab/commands.hpp"

#include <bit>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <new>
#include <sstream>

namespace vdflab::cmd {

using serialize::Json;
using serialize::MalformedFile;

namespace {

// The maximal-order hash materializes a (T+delta+2)-bit integer, so the
// delay it accepts is capped to keep hostile transcripts from demanding a
// gigantic allocation.
constexpr std::uint64_t kMaxMaximalOrderDelay = 1ull << 26;

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
}

// Every command derives its evaluation input from the seed, so a (config,
// seed) pair pins the whole run.
Bytes input_from_seed(std::uint64_t seed) {
    Rng rng(seed);
    return to_bytes_be(rng.random_bits(128), 16);
}

serialize::ParamsFile load_params(const Config& cfg) {
    if (cfg.params_path.empty()) {
        throw Error("this command needs --params FILE");
    }
    return serialize::params_from_json(serialize::load_json(cfg.params_path));
}

unsigned effective_ell_bits(const Config& cfg, unsigned fallback) {
    return cfg.ell_bits == 0 ? fallback : cfg.ell_bits;
}

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

int cmd_setup(const Config& cfg) {
    return guarded([&] {
        if (cfg.lambda < 8) throw Error("setup: --lambda must be at least 8");
        if (cfg.delta < 1) throw Error("setup: --delta must be at least 1");
        if (cfg.params_path.empty()) throw Error("setup: --params FILE is required");
        const unsigned ell_bits = effective_ell_bits(cfg, 2 * cfg.lambda);
        if (ell_bits < 4) throw Error("setup: --ell-bits must be at least 4");

        Rng rng(cfg.seed);
        const GroupModulus modulus = setup_modulus(cfg.lambda, rng);

        serialize::ParamsFile params;
        params.lambda = cfg.lambda;
        params.n = modulus.n();
        params.delta = cfg.delta;
        params.ell_bits = ell_bits;
        params.challenge_bits = cfg.lambda;
        params.t_in_hash = cfg.with_t_in_hash;
        params.seed = cfg.seed;
        serialize::save_json(serialize::to_json(params), cfg.params_path);

        bool wrote_secrets = false;
        if (!cfg.secrets_path.empty()) {
            const Trapdoor& td = modulus.trapdoor();
            serialize::save_json(
                serialize::to_json(serialize::SecretsFile{modulus.n(), td.p, td.q}),
                cfg.secrets_path);
            wrote_secrets = true;
        }

        Json report;
        report["format_version"] = serialize::kFormatVersion;
        report["kind"] = "setup_report";
        report["n_bits"] = modulus.bit_length();
        report["params"] = cfg.params_path;
        report["secrets"] = wrote_secrets ? Json(cfg.secrets_path) : Json(nullptr);
        std::cout << report.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_eval(const Config& cfg) {
    return guarded([&] {
        if (cfg.out_path.empty()) throw Error("eval: --out FILE is required");
        const serialize::ParamsFile params = load_params(cfg);
        const GroupModulus modulus = GroupModulus::public_only(params.n);
        const Bytes x = input_from_seed(cfg.seed);
        const std::uint64_t t = cfg.time_param;

        Json doc;
        OpCounter ops;
        if (cfg.scheme == "wesolowski") {
            wesolowski::Params pp{modulus, params.ell_bits, params.t_in_hash};
            auto res = wesolowski::eval(pp, x, t);
            ops = res.ops;
            doc = serialize::to_json(res.transcript, modulus.n());
        } else if (cfg.scheme == "pietrzak") {
            pietrzak::Params pp{modulus, params.challenge_bits};
            auto ev = pietrzak::eval(pp, x, t);
            auto pr = pietrzak::prove(pp, x, t, ev.y);
            ops = ev.ops;
            ops += pr.ops;
            doc = serialize::to_json(pr.transcript, modulus.n());
        } else if (cfg.scheme == "two_square") {
            if (t > kMaxMaximalOrderDelay) {
                throw Error("eval: the delay exceeds the desk-scale cap of the maximal-order hash");
            }
            two_square::Params pp{modulus, params.delta, t};
            auto res = two_square::eval(pp, x, t);
            ops = res.ops;
            doc = serialize::to_json(res.output, params.delta,
                                     two_square::variant_from_string(cfg.variant),
                                     modulus.n());
        } else {
            throw Error("unknown scheme '" + cfg.scheme +
                        "' (expected wesolowski|pietrzak|two_square)");
        }
        serialize::save_json(doc, cfg.out_path);

        Json report;
        report["format_version"] = serialize::kFormatVersion;
        report["kind"] = "eval_report";
        report["scheme"] = cfg.scheme;
        report["T"] = t;
        report["x"] = serialize::hex_of_bytes(x);
        report["ops"] = serialize::ops_json(ops);
        report["out"] = cfg.out_path;
        std::cout << report.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_verify(const Config& cfg) {
    return guarded([&] {
        const serialize::ParamsFile params = load_params(cfg);
        if (cfg.transcript_path.empty()) {
            throw Error("verify: a transcript file argument is required");
        }
        const Json doc = serialize::load_json(cfg.transcript_path);
        const GroupModulus modulus = GroupModulus::public_only(params.n);
        const std::string scheme = serialize::transcript_scheme(doc);

        VerifyOutcome outcome;
        if (scheme == "wesolowski") {
            auto tr = serialize::wesolowski_transcript_from_json(doc, modulus);
            wesolowski::Params pp{modulus, params.ell_bits, params.t_in_hash};
            outcome = wesolowski::verify(pp, tr);
        } else if (scheme == "pietrzak") {
            auto tr = serialize::pietrzak_transcript_from_json(doc, modulus);
            pietrzak::Params pp{modulus, params.challenge_bits};
            outcome = pietrzak::verify(pp, tr);
        } else if (scheme == "two_square") {
            auto tr = serialize::two_square_transcript_from_json(doc, modulus);
            if (tr.delta != params.delta) {
                outcome = {VerifyOutcome::Status::malformed,
                           "transcript delta disagrees with the parameters",
                           {}};
            } else if (tr.output.t > kMaxMaximalOrderDelay) {
                outcome = {VerifyOutcome::Status::malformed,
                           "the delay exceeds the desk-scale cap of the maximal-order hash",
                           {}};
            } else {
                two_square::Params pp{modulus, tr.delta, tr.output.t};
                outcome = two_square::verify(pp, tr.output.x, tr.output.t,
                                             tr.output.y, tr.variant)
                              .outcome;
            }
        } else {
            outcome = {VerifyOutcome::Status::malformed,
                       "unknown scheme tag '" + scheme + "'",
                       {}};
        }

        int exit_code = kExitOk;
        const char* status = "accepted";
        if (outcome.status == VerifyOutcome::Status::rejected) {
            exit_code = kExitReject;
            status = "rejected";
        } else if (outcome.status == VerifyOutcome::Status::malformed) {
            exit_code = kExitMalformed;
            status = "malformed";
        }

        Json report;
        report["format_version"] = serialize::kFormatVersion;
        report["kind"] = "verify_report";
        report["scheme"] = scheme;
        report["status"] = status;
        report["reason"] = outcome.reason;
        report["exit_status"] = exit_code;
        report["ops"] = serialize::ops_json(outcome.ops);
        if (!cfg.out_path.empty()) serialize::save_json(report, cfg.out_path);
        std::cout << report.dump(2) << '\n';
        return exit_code;
    });
}

int cmd_attack(const Config& cfg) {
    return guarded([&] {
        const unsigned ell_bits = effective_ell_bits(cfg, 8);
        if (ell_bits < 4 || ell_bits > 24) {
            throw Error("attack: --ell-bits must lie in [4, 24]");
        }
        // The attack is a public-data experiment: it never reads secrets.
        // When parameters come from a file, the verifier cross-check against
        // the honest output is skipped (it would need the factorization).
        GroupModulus modulus = [&] {
            if (!cfg.params_path.empty()) {
                return GroupModulus::public_only(load_params(cfg).n);
            }
            Rng rng(cfg.seed);
            return setup_modulus(cfg.lambda, rng);
        }();

        attack::Params pp{std::move(modulus), cfg.lambda, ell_bits,
                          cfg.with_t_in_hash};
        const attack::AttackReport report = attack::success_experiment(
            pp, cfg.trials, cfg.seed, exec_mode_from_string(cfg.exec));
        const Json doc = serialize::to_json(report);

        if (cfg.out_path.empty()) {
            std::cout << doc.dump(2) << '\n';
            return kExitOk;
        }
        serialize::save_json(doc, cfg.out_path);

        std::ostringstream table;
        table << std::fixed << std::setprecision(4);
        table << "  ell    trials  measured  claimed   reference\n";
        for (const auto& [ell, stats] : report.per_ell) {
            table << "  " << std::setw(6) << std::left << ell << std::right
                  << std::setw(7) << stats.trials << "  " << std::setw(8)
                  << stats.termination_rate() << "  " << std::setw(8)
                  << 1.0 / static_cast<double>(ell) << "  " << std::setw(8)
                  << stats.reference_rate << '\n';
        }
        table << "termination rate " << report.termination_rate
              << " vs mean reference " << report.mean_reference_rate
              << "; accept rate on terminated forgeries " << report.accept_rate
              << '\n';
        if (report.low_confidence) {
            table << "low confidence: fewer than 1000 trials\n";
        }
        std::cout << table.str();
        return kExitOk;
    });
}

BenchReport run_bench(std::uint64_t seed, bool wall_times) {
    using Clock = std::chrono::steady_clock;
    static constexpr unsigned kLambdas[] = {8, 16, 32};

    std::vector<std::uint64_t> delays;
    for (unsigned e = 4; e <= 16; e += 2) delays.push_back(1ull << e);

    BenchReport report;
    report.seed = seed;

    struct FitAcc {
        double sum = 0.0;
        std::uint64_t count = 0;
    };
    std::map<unsigned, FitAcc> fit;

    for (const unsigned lambda : kLambdas) {
        Rng rng(derive_subseed(seed, lambda));
        const GroupModulus modulus = setup_modulus(lambda, rng);
        const unsigned ell_bits = 2 * lambda;

        for (std::size_t ti = 0; ti < delays.size(); ++ti) {
            const std::uint64_t t = delays[ti];
            const std::uint64_t cell =
                (static_cast<std::uint64_t>(lambda) << 32) | ti;
            const Bytes x =
                to_bytes_be(Rng(derive_subseed(seed, cell)).random_bits(128), 16);

            {
                wesolowski::Params pp{modulus, ell_bits, false};
                BenchRow row;
                row.scheme = "wesolowski";
                row.lambda = lambda;
                row.t = t;
                row.ell_bits = ell_bits;
                const auto t0 = Clock::now();
                auto ev = wesolowski::eval(pp, x, t);
                const auto t1 = Clock::now();
                auto vr = wesolowski::verify(pp, ev.transcript);
                const auto t2 = Clock::now();
                if (!vr.accepted()) {
                    throw Error("bench: the challenge-prime verifier rejected an honest transcript");
                }
                if (vr.ops.total() > 2ull * bit_length(ev.transcript.ell) + 4) {
                    throw Error("bench: verification exceeded its operation bound");
                }
                row.eval_ops = ev.ops;
                row.verify_ops = vr.ops;
                row.proof_elements = 1;
                if (wall_times) {
                    row.eval_ms = ms_between(t0, t1);
                    row.verify_ms = ms_between(t1, t2);
                }
                FitAcc& acc = fit[ell_bits];
                acc.sum += static_cast<double>(vr.ops.total());
                acc.count += 1;
                report.rows.push_back(std::move(row));
            }

            {
                pietrzak::Params pp{modulus, lambda};
                BenchRow row;
                row.scheme = "pietrzak";
                row.lambda = lambda;
                row.t = t;
                const auto t0 = Clock::now();
                auto ev = pietrzak::eval(pp, x, t);
                auto pr = pietrzak::prove(pp, x, t, ev.y);
                const auto t1 = Clock::now();
                auto vr = pietrzak::verify(pp, pr.transcript);
                const auto t2 = Clock::now();
                if (!vr.accepted()) {
                    throw Error("bench: the halving verifier rejected an honest transcript");
                }
                const auto levels = static_cast<std::size_t>(
                    std::countr_zero(t));
                if (pr.transcript.mu.size() != levels) {
                    throw Error("bench: halving proof length is not log2(T)");
                }
                row.eval_ops = ev.ops;
                row.eval_ops += pr.ops;
                row.verify_ops = vr.ops;
                row.proof_elements = pr.transcript.mu.size();
                if (wall_times) {
                    row.eval_ms = ms_between(t0, t1);
                    row.verify_ms = ms_between(t1, t2);
                }
                report.rows.push_back(std::move(row));
            }

            {
                two_square::Params pp{modulus, 2, t};
                BenchRow row;
                row.scheme = "two_square";
                row.lambda = lambda;
                row.t = t;
                const auto t0 = Clock::now();
                auto ev = two_square::eval(pp, x, t);
                const auto t1 = Clock::now();
                auto vr = two_square::verify(pp, x, t, ev.output.y,
                                             two_square::VerifyVariant::a_compare_to_one);
                const auto t2 = Clock::now();
                if (ev.ops.squarings != t || ev.ops.multiplications != 1) {
                    throw Error("bench: two-square evaluation is not T squarings + 1 multiplication");
                }
                if (vr.outcome.ops.squarings != pp.delta) {
                    throw Error("bench: two-square verification did not take exactly delta squarings");
                }
                row.eval_ops = ev.ops;
                row.verify_ops = vr.outcome.ops;
                row.proof_elements = 0;
                if (wall_times) {
                    row.eval_ms = ms_between(t0, t1);
                    row.verify_ms = ms_between(t1, t2);
                }
                report.rows.push_back(std::move(row));
            }
        }
    }

    double mean_bits = 0.0;
    double mean_ops = 0.0;
    for (const auto& [bits, acc] : fit) {
        EllFitPoint point;
        point.ell_bits = bits;
        point.mean_verify_ops = acc.sum / static_cast<double>(acc.count);
        point.samples = acc.count;
        mean_bits += bits;
        mean_ops += point.mean_verify_ops;
        report.fit_points.push_back(point);
    }
    mean_bits /= static_cast<double>(report.fit_points.size());
    mean_ops /= static_cast<double>(report.fit_points.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const EllFitPoint& p : report.fit_points) {
        const double dx = p.ell_bits - mean_bits;
        sxx += dx * dx;
        sxy += dx * (p.mean_verify_ops - mean_ops);
    }
    report.slope_per_bit = sxy / sxx;
    report.intercept = mean_ops - report.slope_per_bit * mean_bits;
    return report;
}

Json bench_json(const BenchReport& report) {
    Json j;
    j["format_version"] = serialize::kFormatVersion;
    j["kind"] = "bench_report";
    j["seed"] = report.seed;
    Json rows = Json::array();
    for (const BenchRow& row : report.rows) {
        Json r;
        r["scheme"] = row.scheme;
        r["lambda"] = row.lambda;
        r["T"] = row.t;
        r["ell_bits"] = row.ell_bits == 0 ? Json(nullptr) : Json(row.ell_bits);
        r["eval_squarings"] = row.eval_ops.squarings;
        r["eval_mults"] = row.eval_ops.multiplications;
        r["verify_squarings"] = row.verify_ops.squarings;
        r["verify_mults"] = row.verify_ops.multiplications;
        r["verify_inversions"] = row.verify_ops.inversions;
        r["proof_elements"] = row.proof_elements;
        r["wall_times"] = row.eval_ms < 0
                              ? Json(nullptr)
                              : Json{{"eval_ms", row.eval_ms},
                                     {"verify_ms", row.verify_ms}};
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json points = Json::array();
    for (const EllFitPoint& p : report.fit_points) {
        points.push_back(Json{{"ell_bits", p.ell_bits},
                              {"mean_verify_ops", p.mean_verify_ops},
                              {"samples", p.samples}});
    }
    j["wesolowski_ell_fit"] = Json{{"points", std::move(points)},
                                   {"slope_per_bit", report.slope_per_bit},
                                   {"intercept", report.intercept}};
    return j;
}

int cmd_bench(const Config& cfg) {
    return guarded([&] {
        const BenchReport report = run_bench(cfg.seed, cfg.wall_times);
        const Json doc = bench_json(report);
        if (cfg.out_path.empty()) {
            std::cout << doc.dump(2) << '\n';
            return kExitOk;
        }
        serialize::save_json(doc, cfg.out_path);
        std::ostringstream table;
        table << "scheme      lambda  T       eval sq  eval mul  verify sq  verify mul  proof\n";
        for (const BenchRow& row : report.rows) {
            table << std::setw(12) << std::left << row.scheme << std::right
                  << std::setw(4) << row.lambda << "  " << std::setw(6) << row.t
                  << "  " << std::setw(7) << row.eval_ops.squarings << "  "
                  << std::setw(8) << row.eval_ops.multiplications << "  "
                  << std::setw(9) << row.verify_ops.squarings << "  "
                  << std::setw(10) << row.verify_ops.multiplications << "  "
                  << std::setw(5) << row.proof_elements << '\n';
        }
        table << std::fixed << std::setprecision(3)
              << "challenge-prime verify cost: " << report.slope_per_bit
              << " ops per challenge bit (intercept " << report.intercept
              << ")\n";
        std::cout << table.str();
        return kExitOk;
    });
}

int cmd_characterize(const Config& cfg) {
    return guarded([&] {
        const serialize::ParamsFile params = load_params(cfg);
        if (cfg.secrets_path.empty()) {
            throw Error("characterize: --secrets FILE is required");
        }
        const serialize::SecretsFile secrets =
            serialize::secrets_from_json(serialize::load_json(cfg.secrets_path));
        if (secrets.n != params.n) {
            throw MalformedFile("parameters and secrets disagree on the modulus");
        }
        const GroupModulus modulus = GroupModulus::from_primes(secrets.p, secrets.q);
        const two_square::Params pp{modulus, params.delta, cfg.time_param};

        bool exhaustive = false;
        if (cfg.mode == "auto") {
            exhaustive = modulus.n() <= 10000;
        } else if (cfg.mode == "exhaustive") {
            exhaustive = true;
        } else if (cfg.mode == "sampled") {
            exhaustive = false;
        } else {
            throw Error("characterize: --mode must be auto|exhaustive|sampled");
        }

        const ExecMode exec = exec_mode_from_string(cfg.exec);
        const two_square::CharacterizeReport report =
            exhaustive
                ? two_square::characterize_exhaustive(pp, cfg.time_param, exec)
                : two_square::characterize_sampled(pp, cfg.time_param, cfg.trials,
                                                   cfg.seed, exec);
        const Json doc = serialize::characterization_json(
            report, modulus.n(), exhaustive ? Json(nullptr) : Json(cfg.seed),
            exhaustive ? "exhaustive" : "sampled");
        if (cfg.out_path.empty()) {
            std::cout << doc.dump(2) << '\n';
            return kExitOk;
        }
        serialize::save_json(doc, cfg.out_path);
        std::ostringstream summary;
        summary << (exhaustive ? "exhaustive" : "sampled") << " run over "
                << report.instances << " bases: variant A accepts "
                << report.a_accepted << ", B " << report.b_accepted << ", C "
                << report.c_accepted << "; order divides 2^(T+delta) on "
                << report.order_divides << "; equivalence exceptions "
                << report.equivalence_exceptions << '\n';
        std::cout << summary.str();
        return kExitOk;
    });
}

}  // namespace vdflab::cmd
