#include "banditrank/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "banditrank/config.hpp"
#include "banditrank/diagnostics.hpp"
#include "banditrank/harness.hpp"
#include "banditrank/nbest_io.hpp"
#include "banditrank/sigtest.hpp"

namespace banditrank {

namespace {

namespace fs = std::filesystem;

// Flag values kept as text so that only flags given on the command line
// override the config file.
struct RunFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_run_flags(CLI::App& cmd, RunFlags& flags, bool with_learner) {
  cmd.add_option("--config", flags.config_path, "key = value run configuration file");
  for (const std::string& key : config_keys()) {
    if (key == "learner" && !with_learner) continue;
    cmd.add_option("--" + key, flags.values[key], "overrides '" + key + "' from the config file");
  }
}

RunConfig resolve_config(const CLI::App& cmd, const RunFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) config = load_config(flags.config_path);
  for (const auto& [key, value] : flags.values) {
    if (cmd.count("--" + key) > 0) apply_config_key(config, key, value);
  }
  return config;
}

Dataset load_with_references(const fs::path& nbest, const fs::path& refs, const char* what) {
  if (nbest.empty()) throw Error(std::string("missing ") + what + " n-best file");
  if (refs.empty()) throw Error(std::string("missing ") + what + " reference file");
  Dataset data = load_nbest(nbest);
  attach_references(data, load_references(refs));
  return data;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
  if (!out) throw Error("write failed for " + path.string());
}

void write_summary(std::ostream& out, const RunConfig& config, const SuiteSummary& summary,
                   const std::vector<double>& dev_bleu) {
  QueryReport queries;
  for (const RunResult& r : summary.runs) {
    queries.one_point_count += r.queries.one_point_count;
    queries.two_point_count += r.queries.two_point_count;
  }
  out << "learner=" << to_string(config.learner) << '\n'
      << "runs=" << summary.runs.size() << '\n'
      << "epochs=" << config.epochs << '\n'
      << "mean_test_bleu=" << format_real(summary.mean_bleu) << '\n'
      << "std_test_bleu=" << format_real(summary.std_bleu) << '\n'
      << "one_point_queries=" << queries.one_point_count << '\n'
      << "two_point_queries=" << queries.two_point_count << '\n'
      << "loss_evaluations=" << queries.loss_evaluations() << '\n';
  for (std::size_t i = 0; i < summary.runs.size(); ++i) {
    const RunResult& r = summary.runs[i];
    out << "test_bleu_seed_" << r.seed << '=' << format_real(r.final_test_bleu) << '\n'
        << "cumulative_loss_seed_" << r.seed << '=' << format_real(r.cumulative_loss) << '\n';
    if (i < dev_bleu.size()) out << "dev_bleu_seed_" << r.seed << '=' << format_real(dev_bleu[i]) << '\n';
  }
}

int run_train(const CLI::App& cmd, const RunFlags& flags, std::optional<LearnerKind> forced, std::ostream& out) {
  RunConfig config = resolve_config(cmd, flags);
  if (forced) config.learner = *forced;
  config.validate();

  const Dataset train = load_with_references(config.train, config.train_refs, "training");
  const Dataset test = load_with_references(config.test, config.test_refs, "test");
  if (test.dim != train.dim) throw DimensionError("test and training feature dimensions differ");
  WeightVector w0 = WeightVector::Zero(static_cast<Eigen::Index>(train.dim));
  if (!config.warm_start.empty()) {
    w0 = load_weights(config.warm_start);
    if (static_cast<std::size_t>(w0.size()) != train.dim) {
      throw DimensionError("warm-start weights have dimension " + std::to_string(w0.size()) + ", data has " +
                           std::to_string(train.dim));
    }
  }

  const SuiteSummary summary = run_suite(config, train, test, w0);

  std::vector<double> dev_bleu;
  if (!config.dev.empty()) {
    const Dataset dev = load_with_references(config.dev, config.dev_refs, "dev");
    for (const RunResult& r : summary.runs) dev_bleu.push_back(map_corpus_bleu(dev, r.final_weights));
  }

  if (!config.out.empty()) {
    fs::create_directories(config.out);
    std::vector<CurveRecord> curve;
    for (const RunResult& r : summary.runs) curve.insert(curve.end(), r.curve.begin(), r.curve.end());
    write_file(config.out / "curve.csv", [&](std::ostream& o) { write_curve(o, curve); });
    write_file(config.out / "summary.txt", [&](std::ostream& o) { write_summary(o, config, summary, dev_bleu); });
    for (const RunResult& r : summary.runs) {
      write_file(config.out / ("weights.seed_" + std::to_string(r.seed) + ".txt"),
                 [&](std::ostream& o) { write_weights(o, r.final_weights); });
    }
  }
  write_summary(out, config, summary, dev_bleu);
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bandit structured prediction for n-best list reranking", "banditrank"};
  app.require_subcommand(1);

  RunFlags train_flags;
  CLI::App* train = app.add_subcommand("train", "online training over one or more seeds");
  add_run_flags(*train, train_flags, true);

  RunFlags duel_flags;
  CLI::App* duel = app.add_subcommand("duel", "online training with the two-point dueling learner");
  add_run_flags(*duel, duel_flags, false);

  std::string eval_nbest, eval_refs, eval_weights, eval_hyp_out;
  CLI::App* evaluate = app.add_subcommand("evaluate", "corpus BLEU of MAP outputs under given weights");
  evaluate->add_option("--nbest", eval_nbest, "n-best file")->required();
  evaluate->add_option("--refs", eval_refs, "reference file")->required();
  evaluate->add_option("--weights", eval_weights, "weight file (default: all zero)");
  evaluate->add_option("--hyp-out", eval_hyp_out, "write the MAP outputs here, one per line");

  std::string check_nbest, check_refs, check_weights, check_schedule = "inverse-t", check_loss = "bleu";
  double check_rate = 1.0;
  std::uint64_t check_seed = 1;
  std::size_t check_draws = 100000, check_instances = 10;
  CLI::App* check = app.add_subcommand("check", "numerical checks of the one-point learner's update");
  check->add_option("--nbest", check_nbest, "n-best file")->required();
  check->add_option("--refs", check_refs, "reference file")->required();
  check->add_option("--weights", check_weights, "weight file (default: all zero)");
  check->add_option("--schedule", check_schedule, "constant | inverse-t | inverse-sqrt-t");
  check->add_option("--rate-c", check_rate, "schedule constant");
  check->add_option("--loss", check_loss, "bleu | zero-one");
  check->add_option("--seed", check_seed, "sampling seed");
  check->add_option("--draws", check_draws, "Monte-Carlo draws per instance");
  check->add_option("--max-instances", check_instances, "instances taken from the start of the file");

  std::string sig_a, sig_b, sig_refs;
  std::size_t sig_shuffles = 9999;
  std::uint64_t sig_seed = 1;
  CLI::App* sigtest = app.add_subcommand("sigtest", "approximate randomization test on corpus BLEU");
  sigtest->add_option("--a", sig_a, "outputs of system A, one per line")->required();
  sigtest->add_option("--b", sig_b, "outputs of system B, one per line")->required();
  sigtest->add_option("--refs", sig_refs, "reference file")->required();
  sigtest->add_option("--shuffles", sig_shuffles, "number of random shuffles")->check(CLI::PositiveNumber);
  sigtest->add_option("--seed", sig_seed, "shuffle seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (train->parsed()) return run_train(*train, train_flags, std::nullopt, out);
    if (duel->parsed()) return run_train(*duel, duel_flags, LearnerKind::kDueling, out);

    if (evaluate->parsed()) {
      Dataset data = load_with_references(eval_nbest, eval_refs, "evaluation");
      WeightVector w = eval_weights.empty() ? WeightVector::Zero(static_cast<Eigen::Index>(data.dim))
                                            : load_weights(eval_weights);
      if (static_cast<std::size_t>(w.size()) != data.dim) throw DimensionError("weight dimension mismatch");
      if (!eval_hyp_out.empty()) {
        write_file(eval_hyp_out, [&](std::ostream& o) {
          for (const Tokens& hyp : map_outputs(data, w)) o << join_tokens(hyp) << '\n';
        });
      }
      out << "corpus_bleu=" << format_real(map_corpus_bleu(data, w)) << '\n';
      return 0;
    }

    if (check->parsed()) {
      Dataset data = load_with_references(check_nbest, check_refs, "diagnostics");
      if (data.size() > check_instances) data.instances.resize(check_instances);
      DiagnosticsOptions options;
      options.draws = check_draws;
      options.schedule = LearningRateSchedule{parse_schedule_kind(check_schedule), check_rate};
      // Keep the top of each n-best list so the Monte-Carlo checks stay small.
      for (Instance& inst : data.instances) {
        if (inst.size() <= options.max_candidates) continue;
        const auto k = static_cast<Eigen::Index>(options.max_candidates);
        inst.features.conservativeResize(k, Eigen::NoChange);
        inst.hypotheses.resize(options.max_candidates);
        inst.base_scores.resize(options.max_candidates);
      }
      WeightVector w = check_weights.empty() ? WeightVector::Zero(static_cast<Eigen::Index>(data.dim))
                                             : load_weights(check_weights);
      if (static_cast<std::size_t>(w.size()) != data.dim) throw DimensionError("weight dimension mismatch");
      const auto loss = make_loss(check_loss);
      const DiagnosticsReport report = diagnostics_suite(data, loss_table(data, *loss), w, check_seed, options);
      write_report(out, report);
      out << "all=" << (report.all_pass() ? "pass" : "fail") << '\n';
      return report.all_pass() ? 0 : 1;
    }

    if (sigtest->parsed()) {
      const auto a = load_references(sig_a);
      const auto b = load_references(sig_b);
      const auto refs = load_references(sig_refs);
      const RandomizationResult r = approx_randomization_test(a, b, refs, corpus_bleu_metric(), sig_shuffles, sig_seed);
      out << "metric_a=" << format_real(r.metric_a) << '\n'
          << "metric_b=" << format_real(r.metric_b) << '\n'
          << "observed_difference=" << format_real(r.observed) << '\n'
          << "shuffles=" << r.shuffles << '\n'
          << "p_value=" << format_real(r.p_value) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace banditrank
