#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "domp/dnn.hpp"
#include "domp/instance.hpp"

namespace domp::harness {

struct WeightPreset {
  enum class Kind { kMedian, kCenter, kTrimmed, kCustom };
  Kind kind = Kind::kMedian;
  int k1 = 0;
  int k2 = 0;
  std::vector<double> custom;

  /// "median", "center", "trimmed:k1,k2" or "custom:v1,v2,...".
  /// Throws InvalidArgument on anything else.
  static WeightPreset parse(const std::string& text);
  std::string to_string() const;
  /// Throws InvalidArgument when the preset does not fit n.
  Eigen::VectorXd lambda(int n) const;
};

/// Uniform integer in [lo, hi] by rejection sampling on raw 64-bit draws, so
/// the sequence does not depend on the standard library's distributions.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// Costs uniform in [1, 100] off the diagonal, drawn row-major from
/// mt19937_64(seed). Throws InvalidArgument unless 1 <= p < n.
Instance gen_instance(int n, int p, std::uint64_t seed, const WeightPreset& preset);

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {"sort",  "surrogate", "lift",    "recover",
                                                 "mu",    "bound",     "explicit"};
  return names;
}

struct VerificationFlags {
  std::set<std::string> checks{all_checks().begin(), all_checks().end()};
  double tol = 1e-9;
  std::uint64_t seed = 1;  ///< hull weights and sort probes
  int hull_samples = 20;
  dnn::DnnSettings dnn;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

struct Report {
  std::string instance_json;  ///< empty when the instance failed to load
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Runs the enabled checks. Guard violations (size limits, unsupported
/// inputs) fail the affected check only.
Report run_verification(const Instance& instance, const VerificationFlags& flags);

/// Loads the instance first; a load failure becomes a failed "load" check.
Report verify_file(const std::filesystem::path& path, const VerificationFlags& flags);

struct CampaignEntry {
  std::uint64_t seed;
  Report report;
};

/// One generated instance per seed, returned sorted by seed.
std::vector<CampaignEntry> run_campaign(int n, int p, const std::vector<std::uint64_t>& seeds,
                                        const WeightPreset& preset,
                                        const VerificationFlags& flags);

/// {"instance":...,"checks":[{"name","pass","residual","detail"}]}
std::string report_to_json(const Report& report, int indent = 2);
/// Array of {"seed":..,"report":{...}}.
std::string campaign_to_json(const std::vector<CampaignEntry>& entries, int indent = 2);

}  // namespace domp::harness
