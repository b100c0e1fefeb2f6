// The verification pipeline: every family check as an ordered list of
// results, the JSON report, and the randomized kernel property suite.
#pragma once

#include "conelab/flops.hpp"

#include "json.hpp"

#include <cstdint>

namespace conelab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, delegated };
std::string to_string(Status s);

struct CheckResult {
  std::string id;
  std::string family;
  Status status = Status::pass;
  std::string summary;
  Json witness;  // null when there is nothing to report
  std::string citation;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  int radius = 0;            // 0: 2 for k <= 5, 1 otherwise
  std::size_t samples = 1000;
  bool timing = false;       // include the wall-clock duration in the report
};

struct VerificationReport {
  std::string version = kVersion;
  std::vector<std::string> families;
  std::vector<CheckResult> results;
  std::size_t passed = 0, failed = 0, delegated = 0;
  double duration_seconds = 0;

  bool ok() const { return failed == 0; }
};

// Checks of one family in their fixed order.
std::vector<CheckResult> verify_family(const FamilySpec& spec, const VerifyOptions& options);
VerificationReport run_all(const std::vector<std::string>& families, const VerifyOptions& options);

Json report_to_json(const VerificationReport& report, bool timing);
std::string report_to_string(const VerificationReport& report, bool timing);

struct KernelPropertyReport {
  std::size_t cones = 0;
  std::size_t duality = 0;       // dual of the dual is the cone
  std::size_t consistency = 0;   // rays and facets describe the same cone
  std::size_t irredundant = 0;   // no ray or facet is implied by the others
  std::size_t deterministic = 0; // shuffled and scaled input gives the same cone
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Random cones in dimensions 3..8 drawn from the seed.
KernelPropertyReport kernel_property_check(std::uint64_t seed, std::size_t count);

} // namespace conelab
