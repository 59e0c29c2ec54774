#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "elommr/checkpoint.hpp"
#include "elommr/contest_io.hpp"
#include "elommr/error.hpp"
#include "elommr/evaluation.hpp"
#include "elommr/synthetic.hpp"
#include "elommr/system.hpp"

#ifndef ELOMMR_VERSION
#define ELOMMR_VERSION "0.0.0"
#endif

namespace elommr::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* version() noexcept { return ELOMMR_VERSION; }

namespace {

// Raised for option combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string exact(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ec == std::errc{} ? end : buf);
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ',';
    out += exact(values[k]);
  }
  return out;
}

struct ParamFlags {
  std::string variant = "mmr";
  double rho = 1.0;
  double beta = 200.0;
  double gamma = 80.0;
  double mu0 = 1500.0;
  double sigma0 = 350.0;
  double tol = kDefaultTolerance;
  std::size_t subsample = 500;
  std::string subsample_mode = "per-player";
  std::size_t history_cap = 500;
  std::size_t threads = 1;
  std::uint64_t seed = 1;

  void attach(CLI::App& cmd) {
    cmd.add_option("--variant", variant, "Rating variant")
        ->envname("ELOMMR_VARIANT")
        ->check(CLI::IsMember({"chi", "mmr", "mmr-inf"}))
        ->capture_default_str();
    cmd.add_option("--rho", rho, "Pseudodiffusion transfer ratio (mmr only)")
        ->envname("ELOMMR_RHO")
        ->capture_default_str();
    cmd.add_option("--beta", beta, "Performance spread")->envname("ELOMMR_BETA")->capture_default_str();
    cmd.add_option("--gamma", gamma, "Skill drift per round")
        ->envname("ELOMMR_GAMMA")
        ->capture_default_str();
    cmd.add_option("--mu0", mu0, "Newcomer rating")->envname("ELOMMR_MU0")->capture_default_str();
    cmd.add_option("--sigma0", sigma0, "Newcomer uncertainty")
        ->envname("ELOMMR_SIGMA0")
        ->capture_default_str();
    cmd.add_option("--tol", tol, "Solver tolerance")->envname("ELOMMR_TOL")->capture_default_str();
    cmd.add_option("--subsample", subsample, "Opponents considered per player")
        ->envname("ELOMMR_SUBSAMPLE")
        ->capture_default_str();
    cmd.add_option("--subsample-mode", subsample_mode, "Opponent selection")
        ->envname("ELOMMR_SUBSAMPLE_MODE")
        ->check(CLI::IsMember({"per-player", "global"}))
        ->capture_default_str();
    cmd.add_option("--history-cap", history_cap, "Logistic factors kept per player")
        ->envname("ELOMMR_HISTORY_CAP")
        ->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads")
        ->envname("ELOMMR_THREADS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--seed", seed, "Random seed")->envname("ELOMMR_SEED")->capture_default_str();
  }

  SystemParams params() const {
    SystemParams p;
    p.variant = parse_variant(variant);
    p.rho = rho;
    p.beta = beta;
    p.gamma = gamma;
    p.mu_newcomer = mu0;
    p.sigma_newcomer = sigma0;
    p.tol = tol;
    p.subsample_cap = subsample;
    p.subsample_mode =
        subsample_mode == "global" ? SubsampleMode::kGlobal : SubsampleMode::kPerPlayer;
    p.history_cap = history_cap;
    try {
      p.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  void append_args(std::vector<std::string>& args) const {
    args.insert(args.end(),
                {"--variant", variant, "--rho", exact(rho), "--beta", exact(beta), "--gamma",
                 exact(gamma), "--mu0", exact(mu0), "--sigma0", exact(sigma0), "--tol", exact(tol),
                 "--subsample", std::to_string(subsample), "--subsample-mode", subsample_mode,
                 "--history-cap", std::to_string(history_cap), "--threads",
                 std::to_string(threads), "--seed", std::to_string(seed)});
  }
};

json params_json(const SystemParams& p) {
  return {
      {"variant", to_string(p.variant)},
      {"rho", p.rho},
      {"beta", p.beta},
      {"gamma", p.gamma},
      {"mu_newcomer", p.mu_newcomer},
      {"sigma_newcomer", p.sigma_newcomer},
      {"tol", p.tol},
      {"subsample_cap", p.subsample_cap},
      {"subsample_mode", p.subsample_mode == SubsampleMode::kGlobal ? "global" : "per-player"},
      {"history_cap", p.history_cap},
      {"tie_weights", {{"loss", p.tie_weights.loss}, {"victory", p.tie_weights.victory}}},
  };
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::string> replay_args;
  json params = json::object();
  json inputs = json::object();
  json outputs = json::object();
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void write(const fs::path& dir) const {
    const json doc = {
        {"tool", "elommr"},     {"version", version()},  {"command", command},
        {"argv", argv},         {"replay_args", replay_args},
        {"params", params},     {"inputs", inputs},      {"outputs", outputs},
        {"seed", seed},         {"threads", threads},
    };
    std::ofstream out(dir / "manifest.json");
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + (dir / "manifest.json").string());
    out << doc.dump(2) << '\n';
  }
};

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  return out;
}

// Contest indices continue after the last round recorded in a checkpoint so a
// resumed run numbers rounds exactly like an uninterrupted one.
std::int64_t next_round_index(const PlayerMap& players) {
  std::int64_t last = -1;
  for (const auto& [id, state] : players) last = std::max(last, state.last_update_round);
  return last + 1;
}

void write_leaderboard(const fs::path& path, const std::vector<RatingSummary>& board) {
  auto out = open_output(path);
  out << "rank\tplayer\trating\tsigma\tcontests\n";
  for (std::size_t k = 0; k < board.size(); ++k) {
    const auto& r = board[k];
    out << k + 1 << '\t' << r.player_id << '\t' << fixed(r.display(), 2) << '\t'
        << fixed(r.sigma, 2) << '\t' << r.contest_count << '\n';
  }
}

void print_report(std::ostream& out, const std::string& label, const MetricReport& report) {
  out << label << ": pair_inversion " << fixed(report.pair_inversion_pct, 1)
      << "% rank_deviation " << fixed(report.rank_deviation_pct, 1) << "% counted "
      << report.counted_participants << " equal_rating_matchups "
      << report.equal_rating_matchups << '\n';
  if (!report.defined()) out << label << ": no participant met the contest threshold\n";
}

void write_report(const fs::path& dir, const std::string& stem, const MetricReport& report,
                  json& outputs) {
  const fs::path table = dir / (stem + ".tsv");
  const fs::path records = dir / (stem + ".jsonl");
  auto t = open_output(table);
  write_metric_table(t, report);
  auto r = open_output(records);
  write_metric_records(r, report);
  outputs[stem + "_table"] = table.string();
  outputs[stem + "_records"] = records.string();
}

struct RateCommand {
  std::string contests;
  std::string checkpoint_in;
  std::string checkpoint_out;
  std::string out_dir = ".";
  std::size_t top = 10;

  void attach(CLI::App& cmd) {
    cmd.add_option("--contests", contests, "Contest stream file")->required();
    cmd.add_option("--checkpoint-in", checkpoint_in, "Resume from this checkpoint");
    cmd.add_option("--checkpoint-out", checkpoint_out, "Write the final state here");
    cmd.add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--top", top, "Leaderboard rows printed to stdout")->capture_default_str();
  }

  void append_args(std::vector<std::string>& args) const {
    args.insert(args.end(), {"--contests", contests});
    if (!checkpoint_in.empty()) args.insert(args.end(), {"--checkpoint-in", checkpoint_in});
    if (!checkpoint_out.empty()) args.insert(args.end(), {"--checkpoint-out", checkpoint_out});
    args.insert(args.end(), {"--out", out_dir, "--top", std::to_string(top)});
  }

  void execute(const ParamFlags& flags, Manifest& manifest, std::ostream& out) const {
    const SystemParams params = flags.params();
    auto stream = parse_contests(fs::path(contests));
    RatingSystem system(params, flags.threads);
    manifest.inputs["contests"] = contests;
    if (!checkpoint_in.empty()) {
      system.mutable_players() = load_checkpoint(fs::path(checkpoint_in));
      manifest.inputs["checkpoint"] = checkpoint_in;
    }
    const std::int64_t offset = next_round_index(system.players());
    for (auto& c : stream) c.index += offset;

    const fs::path dir = prepare_dir(out_dir);
    const fs::path changes_path = dir / "rating_changes.tsv";
    auto changes = open_output(changes_path);
    changes << "contest\tplayer\tplace\tnewcomer\tprior\tperformance\trating\tsigma\n";
    for (const auto& contest : stream) {
      const RoundReport report = system.process_round(contest);
      for (const auto& r : report.results) {
        changes << report.contest_id << '\t' << r.player_id << '\t' << r.tie_group + 1 << '\t'
                << (r.newcomer ? 1 : 0) << '\t' << fixed(r.prior_rating, 2) << '\t'
                << fixed(r.performance, 2) << '\t' << fixed(r.new_rating, 2) << '\t'
                << fixed(r.new_sigma, 2) << '\n';
      }
    }
    const auto board = system.leaderboard();
    const fs::path board_path = dir / "leaderboard.tsv";
    write_leaderboard(board_path, board);
    manifest.outputs["leaderboard"] = board_path.string();
    manifest.outputs["rating_changes"] = changes_path.string();
    if (!checkpoint_out.empty()) {
      save_checkpoint(system.players(), fs::path(checkpoint_out));
      manifest.outputs["checkpoint"] = checkpoint_out;
    }

    out << "rated " << stream.size() << " contests, " << board.size() << " players\n";
    for (std::size_t k = 0; k < std::min(top, board.size()); ++k) {
      out << k + 1 << '\t' << board[k].player_id << '\t' << fixed(board[k].display(), 2) << '\t'
          << fixed(board[k].sigma, 2) << '\n';
    }
  }
};

struct EvalCommand {
  std::string contests;
  std::size_t min_contests = 5;
  std::string out_dir = ".";

  void attach(CLI::App& cmd) {
    cmd.add_option("--contests", contests, "Contest stream file")->required();
    cmd.add_option("--min-contests", min_contests, "Lifetime contests needed to be scored")
        ->capture_default_str();
    cmd.add_option("--out", out_dir, "Output directory")->capture_default_str();
  }

  void append_args(std::vector<std::string>& args) const {
    args.insert(args.end(), {"--contests", contests, "--min-contests",
                             std::to_string(min_contests), "--out", out_dir});
  }

  void execute(const ParamFlags& flags, Manifest& manifest, std::ostream& out) const {
    const SystemParams params = flags.params();
    const auto stream = parse_contests(fs::path(contests));
    manifest.inputs["contests"] = contests;
    EvaluationOptions options;
    options.min_contests = min_contests;
    options.threads = flags.threads;
    const MetricReport report = evaluate(stream, params, options);
    const fs::path dir = prepare_dir(out_dir);
    write_report(dir, "metrics", report, manifest.outputs);
    print_report(out, "all", report);
  }
};

struct GenCommand {
  std::size_t players = 10000;
  std::size_t rounds = 50;
  double skill_mean = 1500.0;
  double skill_spread = 300.0;
  double perf_spread = 200.0;
  double drift_spread = 35.0;
  double participation = 1.0;
  std::string out_dir = ".";

  void attach(CLI::App& cmd) {
    cmd.add_option("--players", players, "Population size")->capture_default_str();
    cmd.add_option("--rounds", rounds, "Number of rounds")->capture_default_str();
    cmd.add_option("--skill-mean", skill_mean, "Mean initial skill")->capture_default_str();
    cmd.add_option("--skill-spread", skill_spread, "Initial skill standard deviation")
        ->capture_default_str();
    cmd.add_option("--perf-spread", perf_spread, "Performance noise standard deviation")
        ->capture_default_str();
    cmd.add_option("--drift-spread", drift_spread, "Per-round skill drift standard deviation")
        ->capture_default_str();
    cmd.add_option("--participation", participation, "Chance a player enters a round")
        ->capture_default_str();
    cmd.add_option("--out", out_dir, "Output directory")->capture_default_str();
  }

  void append_args(std::vector<std::string>& args) const {
    args.insert(args.end(),
                {"--players", std::to_string(players), "--rounds", std::to_string(rounds),
                 "--skill-mean", exact(skill_mean), "--skill-spread", exact(skill_spread),
                 "--perf-spread", exact(perf_spread), "--drift-spread", exact(drift_spread),
                 "--participation", exact(participation), "--out", out_dir});
  }

  void execute(const ParamFlags& flags, Manifest& manifest, std::ostream& out) const {
    SyntheticConfig cfg;
    cfg.num_players = players;
    cfg.num_rounds = rounds;
    cfg.skill_mean = skill_mean;
    cfg.skill_spread = skill_spread;
    cfg.perf_spread = perf_spread;
    cfg.drift_spread = drift_spread;
    cfg.participation = participation;
    cfg.seed = flags.seed;
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const SyntheticDataset data = generate_synthetic(cfg);
    const fs::path dir = prepare_dir(out_dir);
    const fs::path contests_path = dir / "contests.txt";
    const fs::path truth_path = dir / "truth.txt";
    write_contests(contests_path, data.contests);
    write_ground_truth(truth_path, data);
    manifest.inputs["synthetic"] = {
        {"players", players},           {"rounds", rounds},
        {"skill_mean", skill_mean},     {"skill_spread", skill_spread},
        {"perf_spread", perf_spread},   {"drift_spread", drift_spread},
        {"participation", participation},
    };
    manifest.outputs["contests"] = contests_path.string();
    manifest.outputs["truth"] = truth_path.string();
    std::size_t entries = 0;
    for (const auto& c : data.contests) entries += c.participant_count();
    out << "generated " << data.contests.size() << " contests, " << entries
        << " participations\n";
  }
};

struct TuneCommand {
  std::string contests;
  std::vector<double> grid_beta;
  std::vector<double> grid_gamma;
  std::vector<double> grid_rho;
  std::vector<double> grid_sigma0;
  std::string metric = "pair";
  double train_fraction = 0.1;
  bool warm_test = false;
  std::size_t min_contests = 5;
  std::string out_dir = ".";
  std::vector<CLI::Option*> grid_options;

  void attach(CLI::App& cmd) {
    cmd.add_option("--contests", contests, "Contest stream file")->required();
    const ParamGrid defaults = ParamGrid::default_grid();
    grid_beta = defaults.beta;
    grid_gamma = defaults.gamma;
    grid_rho = defaults.rho;
    grid_sigma0 = defaults.sigma_newcomer;
    grid_options = {
        cmd.add_option("--grid-beta", grid_beta, "Comma-separated beta values")->delimiter(','),
        cmd.add_option("--grid-gamma", grid_gamma, "Comma-separated gamma values")->delimiter(','),
        cmd.add_option("--grid-rho", grid_rho, "Comma-separated rho values")->delimiter(','),
        cmd.add_option("--grid-sigma0", grid_sigma0, "Comma-separated newcomer sigmas")
            ->delimiter(','),
    };
    for (auto* opt : grid_options) {
      opt->capture_default_str()->check(CLI::Validator(
          [](std::string& value) {
            return value.empty() ? std::string("grid axes must not be empty") : std::string();
          },
          "NONEMPTY"));
    }
    cmd.add_option("--metric", metric, "Selection metric")
        ->check(CLI::IsMember({"pair", "rank"}))
        ->capture_default_str();
    cmd.add_option("--train-fraction", train_fraction, "Share of rounds used for tuning")
        ->capture_default_str();
    cmd.add_flag("--warm-test", warm_test, "Carry the tuned state into the test rounds");
    cmd.add_option("--min-contests", min_contests, "Lifetime contests needed to be scored")
        ->capture_default_str();
    cmd.add_option("--out", out_dir, "Output directory")->capture_default_str();
  }

  void append_args(std::vector<std::string>& args) const {
    args.insert(args.end(),
                {"--contests", contests, "--grid-beta", join(grid_beta), "--grid-gamma",
                 join(grid_gamma), "--grid-rho", join(grid_rho), "--grid-sigma0",
                 join(grid_sigma0), "--metric", metric, "--train-fraction",
                 exact(train_fraction), "--min-contests", std::to_string(min_contests), "--out",
                 out_dir});
    if (warm_test) args.push_back("--warm-test");
  }

  void execute(const ParamFlags& flags, Manifest& manifest, std::ostream& out) const {
    for (const auto* values : {&grid_beta, &grid_gamma, &grid_rho, &grid_sigma0}) {
      if (values->empty()) throw UsageError("grid axes must not be empty");
    }
    if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
      throw UsageError("--train-fraction must be in (0, 1]");
    }
    const SystemParams base = flags.params();
    const ParamGrid grid{grid_beta, grid_gamma, grid_rho, grid_sigma0};
    std::vector<SystemParams> lattice;
    try {
      lattice = grid.lattice(base);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const auto stream = parse_contests(fs::path(contests));
    manifest.inputs["contests"] = contests;

    GridSearchOptions options;
    options.evaluation.min_contests = min_contests;
    options.evaluation.threads = flags.threads;
    options.train_fraction = train_fraction;
    options.warm_test = warm_test;
    const auto result = grid_search(stream, base, grid, parse_metric_selector(metric), options);

    const fs::path dir = prepare_dir(out_dir);
    const fs::path grid_path = dir / "grid.tsv";
    auto g = open_output(grid_path);
    g << "beta\tgamma\trho\tsigma0\tpair_inversion_pct\trank_deviation_pct\tcounted\n";
    for (const auto& point : result.points) {
      g << exact(point.params.beta) << '\t' << exact(point.params.gamma) << '\t'
        << exact(point.params.rho) << '\t' << exact(point.params.sigma_newcomer) << '\t'
        << fixed(point.train.pair_inversion_pct, 1) << '\t'
        << fixed(point.train.rank_deviation_pct, 1) << '\t' << point.train.counted_participants
        << '\n';
    }
    manifest.outputs["grid"] = grid_path.string();
    write_report(dir, "train_metrics", result.train, manifest.outputs);
    write_report(dir, "test_metrics", result.test, manifest.outputs);
    manifest.outputs["best_params"] = params_json(result.best);
    manifest.outputs["split_round"] = result.split_round;

    out << "best: beta " << exact(result.best.beta) << " gamma " << exact(result.best.gamma)
        << " rho " << exact(result.best.rho) << " sigma0 " << exact(result.best.sigma_newcomer)
        << " (" << result.points.size() << " grid points, split after round "
        << result.split_round << ")\n";
    print_report(out, "train", result.train);
    print_report(out, "test", result.test);
  }
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kBracketFailure:
    case ErrorKind::kNumericDomain:
    case ErrorKind::kVariantMismatch:
      return kExitNumeric;
    case ErrorKind::kValidation:
    case ErrorKind::kParse:
    case ErrorKind::kVersion:
    case ErrorKind::kIo:
      return kExitData;
  }
  return kExitData;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int replay_depth);

int replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out,
           std::ostream& err, int replay_depth) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + manifest_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, manifest_path + ": " + e.what());
  }
  if (!doc.contains("replay_args") || !doc["replay_args"].is_array()) {
    throw Error(ErrorKind::kParse, manifest_path + ": missing replay_args");
  }
  auto args = doc["replay_args"].get<std::vector<std::string>>();
  if (args.empty() || args.front() == "replay") {
    throw Error(ErrorKind::kParse, manifest_path + ": replay_args do not name a command");
  }
  if (!out_override.empty()) {
    const auto it = std::find(args.begin(), args.end(), "--out");
    if (it == args.end() || std::next(it) == args.end()) {
      args.insert(args.end(), {"--out", out_override});
    } else {
      *std::next(it) = out_override;
    }
  }
  return run_impl(args, out, err, replay_depth + 1);
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int replay_depth) {
  CLI::App app{"Bayesian skill ratings for ranked multiplayer contests", "elommr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  ParamFlags flags;
  RateCommand rate;
  EvalCommand eval;
  GenCommand gen;
  TuneCommand tune;
  std::string manifest_path;
  std::string replay_out;

  auto* rate_cmd = app.add_subcommand("rate", "Rate a contest stream");
  auto* eval_cmd = app.add_subcommand("eval", "Score prediction accuracy on a contest stream");
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic contest stream");
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search hyperparameters on a train split");
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  for (auto* cmd : {rate_cmd, eval_cmd, gen_cmd, tune_cmd}) flags.attach(*cmd);
  rate.attach(*rate_cmd);
  eval.attach(*eval_cmd);
  gen.attach(*gen_cmd);
  tune.attach(*tune_cmd);
  replay_cmd->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
  replay_cmd->add_option("--out", replay_out, "Write outputs here instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (replay_cmd->parsed()) {
      if (replay_depth > 0) throw UsageError("a manifest cannot replay another replay");
      return replay(manifest_path, replay_out, out, err, replay_depth);
    }

    Manifest manifest;
    manifest.argv = args;
    manifest.seed = flags.seed;
    manifest.threads = flags.threads;
    std::string out_dir;
    std::function<void()> execute;
    if (rate_cmd->parsed()) {
      manifest.command = "rate";
      out_dir = rate.out_dir;
      execute = [&] { rate.execute(flags, manifest, out); };
    } else if (eval_cmd->parsed()) {
      manifest.command = "eval";
      out_dir = eval.out_dir;
      execute = [&] { eval.execute(flags, manifest, out); };
    } else if (gen_cmd->parsed()) {
      manifest.command = "gen";
      out_dir = gen.out_dir;
      execute = [&] { gen.execute(flags, manifest, out); };
    } else {
      manifest.command = "tune";
      out_dir = tune.out_dir;
      execute = [&] { tune.execute(flags, manifest, out); };
    }

    manifest.params = params_json(flags.params());
    manifest.replay_args = {manifest.command};
    flags.append_args(manifest.replay_args);
    if (rate_cmd->parsed()) rate.append_args(manifest.replay_args);
    if (eval_cmd->parsed()) eval.append_args(manifest.replay_args);
    if (gen_cmd->parsed()) gen.append_args(manifest.replay_args);
    if (tune_cmd->parsed()) tune.append_args(manifest.replay_args);

    execute();
    manifest.write(prepare_dir(out_dir));
    return kExitOk;
  } catch (const UsageError& e) {
    err << "elommr: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "elommr: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "elommr: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_impl(args, out, err, 0);
}

}  // namespace elommr::cli
