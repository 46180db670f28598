#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphsw/ensembles.hpp"
#include "graphsw/entropy.hpp"
#include "graphsw/graph.hpp"

namespace graphsw {

/// Code sizes L_i = floor(exp(alpha_i n ln n + R_i n)); bins are materialized
/// integers when log L fits comfortably in 64 bits, otherwise bin equality is
/// decided lazily per unordered pair.
struct CodeParams {
    int n = 0;
    RateTuple rates;
    uint64_t seed = 0;

    double logL(int side) const;
};

/// Random binning of canonical marginal serializations. Lazy mode reproduces
/// pairwise collision statistics exactly; joint statistics of three-way
/// collisions are approximated.
class Binner {
  public:
    explicit Binner(CodeParams params);

    bool materialized(int side) const;
    /// Materialized-mode bin index; throws in lazy mode.
    uint64_t bin(int side, uint64_t serialHash) const;
    /// Bin equality for two (possibly equal) marginal serialization hashes.
    bool sameBin(int side, uint64_t hashA, uint64_t hashB) const;

    const CodeParams& params() const { return params_; }

  private:
    CodeParams params_;
    double logL_[2];
    uint64_t l_[2];  // 0 when not materialized
};

struct EncodeResult {
    uint64_t hash1 = 0, hash2 = 0;  // hashes of the marginal serializations
    std::optional<uint64_t> bin1, bin2;
};

/// bin_i depends only on the canonical serialization of marginal i.
EncodeResult encode(const MarkSpaces& ms, const JointGraph& j, const Binner& binner);

struct ConditionCheck {
    std::string name;
    bool satisfied = true;
};

struct TypicalDiagnostics {
    bool typical = true;
    std::vector<ConditionCheck> conditions;
};

/// Membership in the ER typical set: edge- and vertex-mark counts within
/// n^(2/3) total slack of their means.
TypicalDiagnostics typicalEr(const JointGraph& j, const ErModel& model);

/// Membership in the configuration-model typical set: exact degree classes,
/// edge/vertex mark slack, and joint (degree, marginal-degree) class slack for
/// both sides.
TypicalDiagnostics typicalCm(const JointGraph& j, const CmModel& model);

/// Typical set materialized for exhaustive decoding; serializations and their
/// hashes are precomputed per marginal.
struct TypicalSet {
    std::vector<JointGraph> graphs;
    std::vector<std::string> serial1, serial2;
    std::vector<uint64_t> hash1, hash2;
};

/// Full enumeration; n <= 7 and small joint alphabets, else resource error.
TypicalSet enumerateTypical(const ErModel& model, int n);
TypicalSet enumerateTypical(const CmModel& model, int n);

enum class DecodeStatus { ok, ambiguous, notFound };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::notFound;
    std::optional<JointGraph> graph;
    int survivors = 0;
};

/// Returns the unique typical graph whose bins match, an ambiguity error when
/// several match, or not-found when none does.
DecodeResult decodeExhaustive(const EncodeResult& bins, const Binner& binner,
                              const TypicalSet& typical);

struct WilsonInterval {
    double lo = 0, hi = 0;
};

WilsonInterval wilson(long long successes, long long trials, double z = 1.96);

struct EventRate {
    long long count = 0;
    double rate = 0;
    WilsonInterval interval;
};

struct SimTrial {
    uint64_t seed = 0;
    bool typical = false;
    bool decoded = false;
    std::string event;  // "", "e1".."e4"
};

struct SimReport {
    long long trials = 0;
    EventRate pe, e1, e2, e3, e4;
    std::vector<SimTrial> trialLog;
};

/// Monte Carlo over independent sources and binnings; failures attributed to
/// the first applicable event in the order e1, e2, e3, e4. Trials derive
/// their seeds from their index, so partitioning across `jobs` threads leaves
/// the output unchanged.
SimReport simulate(const ErModel& model, const CodeParams& params, int trials, uint64_t seed,
                   int jobs = 1);
SimReport simulate(const CmModel& model, const CodeParams& params, int trials, uint64_t seed,
                   int jobs = 1);

}  // namespace graphsw
