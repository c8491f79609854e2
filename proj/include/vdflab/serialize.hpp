#ifndef VDFLAB_SERIALIZE_HPP
#define VDFLAB_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vdflab/attack.hpp"
#include "vdflab/pietrzak.hpp"
#include "vdflab/two_square.hpp"
#include "vdflab/wesolowski.hpp"

namespace vdflab::serialize {

using Json = nlohmann::ordered_json;

inline constexpr unsigned kFormatVersion = 1;

// A persisted file failed to parse or violates its schema. Commands map
// this onto the "malformed input" exit status.
struct MalformedFile : Error {
    explicit MalformedFile(const std::string& what) : Error(what) {}
};

// Byte-string hex: two lowercase digits per byte, length preserved.
std::string hex_of_bytes(ByteView bytes);
Bytes bytes_of_hex(std::string_view hex);

Json ops_json(const OpCounter& ops);

// ---- parameter and secrets files -----------------------------------------

struct ParamsFile {
    unsigned lambda = 16;
    Bigint n;
    unsigned delta = 2;
    unsigned ell_bits = 32;      // wesolowski challenge prime width
    unsigned challenge_bits = 16;  // halving-protocol challenge width
    bool t_in_hash = false;
    std::uint64_t seed = 0;
};

Json to_json(const ParamsFile& params);
ParamsFile params_from_json(const Json& j);

struct SecretsFile {
    Bigint n;
    Bigint p;
    Bigint q;
};

Json to_json(const SecretsFile& secrets);
SecretsFile secrets_from_json(const Json& j);

// ---- transcripts ----------------------------------------------------------

Json to_json(const wesolowski::Transcript& tr, const Bigint& n);
Json to_json(const pietrzak::Transcript& tr, const Bigint& n);
Json to_json(const two_square::Output& out, unsigned delta,
             two_square::VerifyVariant variant, const Bigint& n);

// Scheme tag of a transcript document (validates kind and version).
std::string transcript_scheme(const Json& j);

// Each parser checks the document's modulus against `m` and throws
// MalformedFile on mismatch. Element values are NOT canonicalized here;
// the verifiers report out-of-range or non-unit values as malformed.
wesolowski::Transcript wesolowski_transcript_from_json(const Json& j,
                                                       const GroupModulus& m);
pietrzak::Transcript pietrzak_transcript_from_json(const Json& j,
                                                   const GroupModulus& m);

struct TwoSquareTranscript {
    two_square::Output output;
    unsigned delta = 2;
    two_square::VerifyVariant variant = two_square::VerifyVariant::a_compare_to_one;
};

TwoSquareTranscript two_square_transcript_from_json(const Json& j,
                                                    const GroupModulus& m);

// ---- reports --------------------------------------------------------------

Json to_json(const attack::AttackReport& report);
Json characterization_json(const two_square::CharacterizeReport& report,
                           const Bigint& n, const Json& seed,
                           const std::string& mode);

// ---- file IO --------------------------------------------------------------

void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

}  // namespace vdflab::serialize

#endif
