#include "banditrank/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "banditrank/nbest_io.hpp"

namespace banditrank {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  Int value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw Error("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                std::string(text) + "'");
  }
  return value;
}

double parse_config_real(std::string_view key, std::string_view text) {
  try {
    return parse_real(text);
  } catch (const Error&) {
    throw Error("config key '" + std::string(key) + "': expected a number, got '" + std::string(trim(text)) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error("config key '" + std::string(key) + "': expected a boolean, got '" + std::string(text) + "'");
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    seeds.push_back(parse_unsigned<std::uint64_t>("seeds", text.substr(start, comma - start)));
    start = comma + 1;
  }
  return seeds;
}

}  // namespace

LearnerKind parse_learner_kind(std::string_view name) {
  if (name == "bandit") return LearnerKind::kBandit;
  if (name == "dueling") return LearnerKind::kDueling;
  if (name == "full-info") return LearnerKind::kFullInfo;
  throw Error("unknown learner '" + std::string(name) + "' (expected bandit, dueling, full-info)");
}

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kBandit: return "bandit";
    case LearnerKind::kDueling: return "dueling";
    case LearnerKind::kFullInfo: return "full-info";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (epochs < 1) throw Error("epochs must be at least 1");
  if (seeds.empty()) throw Error("at least one seed is required");
  if (eval_every && *eval_every < 1) throw Error("eval-every must be at least 1");
  if (schedule.base < 0.0) throw Error("rate-c must be non-negative");
  if (learner == LearnerKind::kDueling && !(delta > 0.0 && gamma > 0.0)) {
    throw Error("dueling learner needs delta > 0 and gamma > 0");
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "learner", "schedule", "rate-c",     "delta", "gamma",    "epochs",     "seeds",
      "shuffle", "eval-every", "loss",     "train", "train-refs", "dev",      "dev-refs",
      "test",    "test-refs",  "warm-start", "out"};
  return keys;
}

void apply_config_key(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "learner") {
    c.learner = parse_learner_kind(value);
  } else if (key == "schedule") {
    c.schedule.kind = parse_schedule_kind(value);
  } else if (key == "rate-c") {
    c.schedule.base = parse_config_real(key, value);
  } else if (key == "delta") {
    c.delta = parse_config_real(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_config_real(key, value);
  } else if (key == "epochs") {
    c.epochs = parse_unsigned<std::size_t>(key, value);
  } else if (key == "seeds") {
    c.seeds = parse_seeds(value);
  } else if (key == "shuffle") {
    c.shuffle = parse_bool(key, value);
  } else if (key == "eval-every") {
    c.eval_every = parse_unsigned<std::size_t>(key, value);
  } else if (key == "loss") {
    c.loss = std::string(value);
  } else if (key == "train") {
    c.train = value;
  } else if (key == "train-refs") {
    c.train_refs = value;
  } else if (key == "dev") {
    c.dev = value;
  } else if (key == "dev-refs") {
    c.dev_refs = value;
  } else if (key == "test") {
    c.test = value;
  } else if (key == "test-refs") {
    c.test_refs = value;
  } else if (key == "warm-start") {
    c.warm_start = value;
  } else if (key == "out") {
    c.out = value;
  } else {
    throw Error("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    try {
      apply_config_key(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  try {
    RunConfig config = parse_config(in, std::move(base));
    // Paths in a config file are relative to the file itself.
    const auto dir = path.parent_path();
    for (auto* p : {&config.train, &config.train_refs, &config.dev, &config.dev_refs, &config.test,
                    &config.test_refs, &config.warm_start, &config.out}) {
      if (!p->empty() && p->is_relative()) *p = dir / *p;
    }
    return config;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "learner = " << to_string(c.learner) << '\n';
  out << "schedule = " << to_string(c.schedule.kind) << '\n';
  out << "rate-c = " << format_real(c.schedule.base) << '\n';
  out << "delta = " << format_real(c.delta) << '\n';
  out << "gamma = " << format_real(c.gamma) << '\n';
  out << "epochs = " << c.epochs << '\n';
  out << "seeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
  out << '\n';
  out << "shuffle = " << (c.shuffle ? "true" : "false") << '\n';
  if (c.eval_every) out << "eval-every = " << *c.eval_every << '\n';
  out << "loss = " << c.loss << '\n';
  const std::pair<const char*, const std::filesystem::path*> paths[] = {
      {"train", &c.train},     {"train-refs", &c.train_refs}, {"dev", &c.dev},
      {"dev-refs", &c.dev_refs}, {"test", &c.test},           {"test-refs", &c.test_refs},
      {"warm-start", &c.warm_start}, {"out", &c.out}};
  for (const auto& [key, path] : paths) {
    if (!path->empty()) out << key << " = " << path->string() << '\n';
  }
}

}  // namespace banditrank
