#ifndef VDFLAB_TESTS_FIXTURES_HPP
#define VDFLAB_TESTS_FIXTURES_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/integer/common_factor_rt.hpp>

#include "vdflab/rsa_group.hpp"

namespace fixtures {

using vdflab::Bigint;
using vdflab::GroupModulus;

// Hand-sized safe-prime moduli shared across the suites. 35 and 77 are
// small enough to check every unit by hand; 37909 = 167 * 227 gives the
// randomized tests room while staying fully word-sized for the oracles.
inline const GroupModulus& m35() {
    static const GroupModulus m = GroupModulus::from_primes(5, 7);
    return m;
}

inline const GroupModulus& m77() {
    static const GroupModulus m = GroupModulus::from_primes(7, 11);
    return m;
}

inline const GroupModulus& m37909() {
    static const GroupModulus m = GroupModulus::from_primes(167, 227);
    return m;
}

// A unit drawn uniformly from Z*_N by rejection.
inline vdflab::GroupElement random_unit(const GroupModulus& m, vdflab::Rng& rng) {
    for (;;) {
        const Bigint v = rng.random_below(m.n());
        if (v == 0 || boost::integer::gcd(v, m.n()) != 1) continue;
        return vdflab::make_element(m, v);
    }
}

// Redirects a stream into a buffer for the scope; the commands print their
// reports to stdout and their errors to stderr, which would otherwise drown
// the test runner's own output.
class CaptureStream {
  public:
    explicit CaptureStream(std::ostream& stream)
        : stream_(&stream), old_(stream.rdbuf(buffer_.rdbuf())) {}
    CaptureStream(const CaptureStream&) = delete;
    CaptureStream& operator=(const CaptureStream&) = delete;
    ~CaptureStream() { stream_->rdbuf(old_); }

    std::string text() const { return buffer_.str(); }

  private:
    std::ostream* stream_;
    std::stringstream buffer_;
    std::streambuf* old_;
};

// Scratch directory removed on destruction.
class TempDir {
  public:
    TempDir() {
        std::string tpl =
            (std::filesystem::temp_directory_path() / "vdflab-test-XXXXXX").string();
        if (::mkdtemp(tpl.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = tpl;
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    std::string file(const std::string& name) const {
        return (std::filesystem::path(path_) / name).string();
    }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures

#endif
