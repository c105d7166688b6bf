#ifndef BANDITRANK_CONFIG_HPP_
#define BANDITRANK_CONFIG_HPP_

// Run configuration. The file format is one `key = value` per line with `#`
// comments; keys are the CLI flag names without the leading dashes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "banditrank/learners.hpp"

namespace banditrank {

enum class LearnerKind { kBandit, kDueling, kFullInfo };

LearnerKind parse_learner_kind(std::string_view name);
std::string to_string(LearnerKind kind);

struct RunConfig {
  LearnerKind learner = LearnerKind::kBandit;
  LearningRateSchedule schedule{ScheduleKind::kInverseT, 1.0};
  double delta = 1.0;
  double gamma = 0.1;
  std::size_t epochs = 1;
  std::vector<std::uint64_t> seeds{1};
  bool shuffle = true;
  // Iterations between test evaluations; unset means once per epoch.
  std::optional<std::size_t> eval_every;
  std::string loss = "bleu";

  std::filesystem::path train;
  std::filesystem::path train_refs;
  std::filesystem::path dev;
  std::filesystem::path dev_refs;
  std::filesystem::path test;
  std::filesystem::path test_refs;
  std::filesystem::path warm_start;
  std::filesystem::path out;

  /// Throws if an invariant (epochs ≥ 1, at least one seed, period ≥ 1,
  /// positive dueling radii) does not hold.
  void validate() const;
};

/// Sets one field from its textual key and value. Unknown keys throw.
void apply_config_key(RunConfig& config, std::string_view key, std::string_view value);

/// Reads key/value lines on top of `base`. Relative paths are kept as written.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

void write_config(std::ostream& out, const RunConfig& config);

/// Every key understood by apply_config_key.
const std::vector<std::string>& config_keys();

}  // namespace banditrank

#endif  // BANDITRANK_CONFIG_HPP_
