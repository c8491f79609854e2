#include "vdflab/serialize.hpp"

#include <fstream>
#include <limits>

namespace vdflab::serialize {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw MalformedFile(std::string("missing field '") + name + "'");
    }
    return *it;
}

std::uint64_t u64_field(const Json& j, const char* name) {
    // The parser stores non-negative numbers as unsigned, but documents
    // built in memory may carry them as signed integers; both are fine.
    const Json& v = field(j, name);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw MalformedFile(std::string("field '") + name +
                        "' must be an unsigned integer");
}

unsigned uint_field(const Json& j, const char* name) {
    const std::uint64_t v = u64_field(j, name);
    if (v > 0xffffffffULL) {
        throw MalformedFile(std::string("field '") + name + "' is out of range");
    }
    return static_cast<unsigned>(v);
}

bool bool_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_boolean()) {
        throw MalformedFile(std::string("field '") + name + "' must be a boolean");
    }
    return v.get<bool>();
}

std::string str_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string()) {
        throw MalformedFile(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

Bigint hex_field(const Json& j, const char* name) {
    const std::string s = str_field(j, name);
    try {
        return from_hex(s);
    } catch (const Error&) {
        throw MalformedFile(std::string("field '") + name +
                            "' is not a hex integer");
    }
}

void require_document(const Json& j, const char* kind) {
    if (!j.is_object()) throw MalformedFile("document is not a JSON object");
    if (u64_field(j, "format_version") != static_cast<std::uint64_t>(kFormatVersion)) {
        throw MalformedFile("unsupported format_version");
    }
    if (str_field(j, "kind") != kind) {
        throw MalformedFile(std::string("expected a '") + kind + "' document");
    }
}

GroupElement element_field(const Json& j, const char* name, const GroupModulus& m) {
    return unchecked_element(hex_field(j, name), m.n());
}

void check_modulus(const Json& j, const GroupModulus& m) {
    if (hex_field(j, "n") != m.n()) {
        throw MalformedFile("modulus mismatch between parameters and transcript");
    }
}

Json hash_config_json() {
    return Json{{"xof", std::string(kXofName)},
                {"group_tag", std::string(kTagGroup)},
                {"prime_tag", std::string(kTagPrime)},
                {"maximal_order_tag", std::string(kTagMaximalOrder)},
                {"challenge_tag", std::string(kTagChallenge)}};
}

}  // namespace

std::string hex_of_bytes(ByteView bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes bytes_of_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw MalformedFile("byte-string hex must have even length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_nibble(hex[i]);
        const int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw MalformedFile("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

Json ops_json(const OpCounter& ops) {
    return Json{{"squarings", ops.squarings},
                {"multiplications", ops.multiplications},
                {"inversions", ops.inversions}};
}

Json to_json(const ParamsFile& params) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "params";
    j["lambda"] = params.lambda;
    j["n"] = to_hex(params.n);
    j["delta"] = params.delta;
    j["ell_bits"] = params.ell_bits;
    j["challenge_bits"] = params.challenge_bits;
    j["t_in_hash"] = params.t_in_hash;
    j["seed"] = params.seed;
    j["hash"] = hash_config_json();
    return j;
}

ParamsFile params_from_json(const Json& j) {
    require_document(j, "params");
    ParamsFile p;
    p.lambda = uint_field(j, "lambda");
    p.n = hex_field(j, "n");
    p.delta = uint_field(j, "delta");
    p.ell_bits = uint_field(j, "ell_bits");
    p.challenge_bits = uint_field(j, "challenge_bits");
    p.t_in_hash = bool_field(j, "t_in_hash");
    p.seed = u64_field(j, "seed");
    const Json& hash = field(j, "hash");
    if (!hash.is_object() || str_field(hash, "xof") != kXofName) {
        throw MalformedFile("unsupported hash configuration");
    }
    return p;
}

Json to_json(const SecretsFile& secrets) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "secrets";
    j["n"] = to_hex(secrets.n);
    j["p"] = to_hex(secrets.p);
    j["q"] = to_hex(secrets.q);
    return j;
}

SecretsFile secrets_from_json(const Json& j) {
    require_document(j, "secrets");
    SecretsFile s;
    s.n = hex_field(j, "n");
    s.p = hex_field(j, "p");
    s.q = hex_field(j, "q");
    if (s.p * s.q != s.n) {
        throw MalformedFile("secrets file is inconsistent: p*q != n");
    }
    return s;
}

Json to_json(const wesolowski::Transcript& tr, const Bigint& n) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "transcript";
    j["scheme"] = "wesolowski";
    j["n"] = to_hex(n);
    j["x"] = hex_of_bytes(tr.x);
    j["T"] = tr.t;
    j["y"] = to_hex(tr.y.value());
    j["pi"] = to_hex(tr.pi.value());
    j["ell"] = to_hex(tr.ell);
    j["flags"] = Json{{"t_in_hash", tr.include_t_in_hash}};
    return j;
}

Json to_json(const pietrzak::Transcript& tr, const Bigint& n) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "transcript";
    j["scheme"] = "pietrzak";
    j["n"] = to_hex(n);
    j["x"] = hex_of_bytes(tr.x);
    j["T"] = tr.t;
    j["y"] = to_hex(tr.y.value());
    Json mu = Json::array();
    for (const GroupElement& e : tr.mu) mu.push_back(to_hex(e.value()));
    j["mu"] = std::move(mu);
    j["lambda"] = tr.lambda_bits;
    return j;
}

Json to_json(const two_square::Output& out, unsigned delta,
             two_square::VerifyVariant variant, const Bigint& n) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "transcript";
    j["scheme"] = "two_square";
    j["n"] = to_hex(n);
    j["x"] = hex_of_bytes(out.x);
    j["T"] = out.t;
    j["delta"] = delta;
    j["y"] = to_hex(out.y.value());
    j["variant"] = two_square::to_string(variant);
    return j;
}

std::string transcript_scheme(const Json& j) {
    require_document(j, "transcript");
    return str_field(j, "scheme");
}

wesolowski::Transcript wesolowski_transcript_from_json(const Json& j,
                                                       const GroupModulus& m) {
    require_document(j, "transcript");
    if (str_field(j, "scheme") != "wesolowski") {
        throw MalformedFile("not a wesolowski transcript");
    }
    check_modulus(j, m);
    wesolowski::Transcript tr;
    tr.x = bytes_of_hex(str_field(j, "x"));
    tr.t = u64_field(j, "T");
    tr.y = element_field(j, "y", m);
    tr.pi = element_field(j, "pi", m);
    tr.ell = hex_field(j, "ell");
    const Json& flags = field(j, "flags");
    if (!flags.is_object()) throw MalformedFile("field 'flags' must be an object");
    tr.include_t_in_hash = bool_field(flags, "t_in_hash");
    return tr;
}

pietrzak::Transcript pietrzak_transcript_from_json(const Json& j,
                                                   const GroupModulus& m) {
    require_document(j, "transcript");
    if (str_field(j, "scheme") != "pietrzak") {
        throw MalformedFile("not a pietrzak transcript");
    }
    check_modulus(j, m);
    pietrzak::Transcript tr;
    tr.x = bytes_of_hex(str_field(j, "x"));
    tr.t = u64_field(j, "T");
    tr.y = element_field(j, "y", m);
    const Json& mu = field(j, "mu");
    if (!mu.is_array()) throw MalformedFile("field 'mu' must be an array");
    for (const Json& item : mu) {
        if (!item.is_string()) throw MalformedFile("field 'mu' must hold hex strings");
        try {
            tr.mu.push_back(unchecked_element(from_hex(item.get<std::string>()), m.n()));
        } catch (const Error&) {
            throw MalformedFile("field 'mu' holds a non-hex entry");
        }
    }
    tr.lambda_bits = uint_field(j, "lambda");
    return tr;
}

TwoSquareTranscript two_square_transcript_from_json(const Json& j,
                                                    const GroupModulus& m) {
    require_document(j, "transcript");
    if (str_field(j, "scheme") != "two_square") {
        throw MalformedFile("not a two_square transcript");
    }
    check_modulus(j, m);
    TwoSquareTranscript tr;
    tr.output.x = bytes_of_hex(str_field(j, "x"));
    tr.output.t = u64_field(j, "T");
    tr.delta = uint_field(j, "delta");
    tr.output.y = element_field(j, "y", m);
    try {
        tr.variant = two_square::variant_from_string(str_field(j, "variant"));
    } catch (const Error& e) {
        throw MalformedFile(e.what());
    }
    return tr;
}

Json to_json(const attack::AttackReport& report) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "attack_report";
    j["ell_bits"] = report.ell_bits;
    j["trials"] = report.trials;
    j["accept_rate"] = report.accept_rate;
    j["termination_rate"] = report.termination_rate;
    j["mean_reference_rate"] = report.mean_reference_rate;
    j["with_T_in_hash"] = report.with_t_in_hash;
    j["low_confidence"] = report.low_confidence;
    j["honest_checked"] = report.honest_checked;
    j["terminated"] = report.terminated;
    j["accepted"] = report.accepted;
    j["degenerate_honest"] = report.degenerate_honest;
    j["soundness_violations"] = report.soundness_violations;
    Json per_ell = Json::object();
    for (const auto& [ell, stats] : report.per_ell) {
        per_ell[std::to_string(ell)] =
            Json{{"trials", stats.trials},
                 {"terminated", stats.terminated},
                 {"termination_rate", stats.termination_rate()},
                 {"claimed_rate", 1.0 / static_cast<double>(ell)},
                 {"reference_rate", stats.reference_rate}};
    }
    j["per_ell"] = std::move(per_ell);
    return j;
}

Json characterization_json(const two_square::CharacterizeReport& report,
                           const Bigint& n, const Json& seed,
                           const std::string& mode) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "characterization_report";
    j["n"] = to_hex(n);
    j["T"] = report.t;
    j["delta"] = report.delta;
    j["mode"] = mode;
    j["seed"] = seed;
    j["instances"] = report.instances;
    const double count = report.instances == 0
                             ? std::numeric_limits<double>::quiet_NaN()
                             : static_cast<double>(report.instances);
    auto variant = [&](std::uint64_t accepted) {
        return Json{{"accepted", accepted},
                    {"rate", static_cast<double>(accepted) / count}};
    };
    j["variants"] = Json{{"A", variant(report.a_accepted)},
                         {"B", variant(report.b_accepted)},
                         {"C", variant(report.c_accepted)}};
    Json two_power = Json::object();
    for (const auto& [v, c] : report.two_power_orders) {
        two_power[std::to_string(v)] = c;
    }
    j["order"] = Json{{"divides_2_pow_t_plus_delta", report.order_divides},
                      {"two_power_orders", std::move(two_power)},
                      {"other_orders", report.other_orders}};
    j["equivalence"] = Json{{"exceptions", report.equivalence_exceptions},
                            {"m_is_one", report.m_is_one}};
    j["shortcut"] = Json{{"applicable", report.shortcut_applicable},
                         {"accepted", report.shortcut_accepted},
                         {"matches_honest", report.shortcut_matches_honest},
                         {"max_ops", report.shortcut_max_ops}};
    return j;
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing '" + path + "'");
}

Json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open '" + path + "'");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw MalformedFile("'" + path + "' is not valid JSON");
    }
    return j;
}

}  // namespace vdflab::serialize
