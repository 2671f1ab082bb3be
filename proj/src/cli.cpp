#include "apportion/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "apportion/bench.hpp"
#include "apportion/error.hpp"
#include "apportion/records.hpp"

namespace apportion {
namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::droop_infeasible:
    case Errc::positivity_infeasible:
    case Errc::unsupported_method:
      return kExitInfeasible;
    default:
      return kExitInputError;
  }
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(Errc::parse_error, "cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  void emit(const Json& j) { *stream_ << j.dump() << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

Json run_record(const std::string& command, Json config, double wall_ms) {
  return Json{{"record", "run"}, {"command", command}, {"config", std::move(config)},
              {"wall_ms", wall_ms}};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  return in;
}

double two_places(double v) { return std::round(v * 100.0) / 100.0; }

// ---- allocate -------------------------------------------------------------

struct AllocateOptions {
  std::string scenario;
  long long incoming = 0;
  std::string methods = "prorata,hamilton,jd,ws";
  std::uint64_t seed = 0;
  std::string format = "jsonl";
  std::string out;
};

Units read_sidecar_incoming(const std::string& scenario) {
  const std::string path = scenario + ".incoming";
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::parse_error, "no --incoming given and no sidecar '" + path + "'");
  }
  const auto values = parse_scenario(in);
  if (values.size() != 1) throw Error(Errc::parse_error, "sidecar must hold one integer");
  return values.front();
}

int cmd_allocate(const AllocateOptions& opt, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto in = open_input(opt.scenario);
  std::vector<Units> sizes = parse_scenario(in);
  const Units incoming = opt.incoming > 0 ? opt.incoming : read_sidecar_incoming(opt.scenario);
  const auto methods = parse_method_list(opt.methods, opt.seed);
  const AllocationProblem problem(sizes, incoming);
  const IdealAllocation ideal = ideal_allocation(problem);
  const bool text = opt.format == "text";
  Sink sink(opt.out, out);

  std::vector<std::string> ideal_display;
  for (std::size_t i = 0; i < ideal.size(); ++i) ideal_display.push_back(ideal.display(i));

  if (text) {
    auto& os = sink.stream();
    os << std::left << std::setw(12) << "T";
    for (const Units t : sizes) os << std::right << std::setw(8) << t;
    os << '\n' << std::left << std::setw(12) << "I";
    for (const auto& d : ideal_display) os << std::right << std::setw(8) << d;
    os << '\n';
  } else {
    sink.emit({{"record", "ideal"}, {"sizes", sizes}, {"incoming", incoming},
               {"ideal", ideal_display}});
  }

  int status = kExitOk;
  Json outputs = Json::array();
  for (const auto& method : methods) {
    AllocationVector alloc;
    std::vector<std::size_t> over_capacity;
    try {
      if (const auto* r = std::get_if<Rss>(&method)) {
        RssAllocation res = rss(problem, r->seed);
        alloc = std::move(res.allocation);
        over_capacity = std::move(res.over_capacity);
      } else {
        alloc = allocate(problem, method);
      }
    } catch (const Error& e) {
      err << "error: " << method_name(method) << ": " << e.what() << '\n';
      if (!text) {
        sink.emit({{"record", "allocation_error"}, {"method", method_name(method)},
                   {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      }
      status = std::max(status, exit_code_for(e.code()));
      continue;
    }
    const DistancePair d = distances(alloc, ideal);
    const QuotaReport quota = quota_report(problem, alloc);
    const ExactDistance exact = exact_distance(alloc, ideal);
    const std::string l1_display = to_fixed(static_cast<i128>(exact.l1_numerator),
                                            problem.total(), 2);
    if (text) {
      auto& os = sink.stream();
      os << std::left << std::setw(12) << method_name(method);
      for (const Units f : alloc.fills) os << std::right << std::setw(8) << f;
      os << "  l1=" << l1_display << " l2=" << std::fixed << std::setprecision(2) << d.l2
         << std::defaultfloat << " quota=" << (quota.violated ? "violated" : "ok");
      if (!over_capacity.empty()) os << " over_capacity=" << over_capacity.size();
      os << '\n';
    } else {
      Json rec{{"record", "allocation"},
               {"method", method_name(method)},
               {"fills", alloc.fills},
               {"l1", std::stod(l1_display)},
               {"l2", two_places(d.l2)},
               {"l1_value", d.l1},
               {"l2_value", d.l2},
               {"quota_violated", quota.violated},
               {"quota_extents", quota.per_order}};
      if (std::holds_alternative<Rss>(method)) {
        rec["seed"] = std::get<Rss>(method).seed;
        rec["over_capacity"] = over_capacity;
      }
      outputs.push_back(rec);
      sink.emit(rec);
    }
  }
  if (!text) {
    sink.emit(run_record("allocate",
                         {{"scenario", opt.scenario},
                          {"incoming", incoming},
                          {"methods", opt.methods},
                          {"seed", opt.seed}},
                         elapsed_ms(start)));
  }
  return status;
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::size_t n = 50;
  long long q = 100;
  std::size_t iters = 1000;
  double decay = 2.0;
  std::uint64_t seed = 0;
  std::string mode = "distance";
  std::string methods;
  unsigned threads = 0;
  bool verbose = false;
  std::string out;
  std::string from_record;
};

SimulationConfig config_from_record_file(const std::string& path, SimulationMode& mode) {
  auto in = open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(Errc::parse_error, std::string("record file: ") + e.what());
    }
    const auto rec = j.value("record", std::string());
    if ((rec == "distance_summary" || rec == "quota_summary") && j.contains("config")) {
      return config_from_json(j.at("config"), &mode);
    }
  }
  throw Error(Errc::parse_error, "no summary record in '" + path + "'");
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  SimulationMode mode;
  SimulationConfig config;
  if (!opt.from_record.empty()) {
    config = config_from_record_file(opt.from_record, mode);
  } else {
    if (opt.mode == "distance") {
      mode = SimulationMode::distance;
    } else if (opt.mode == "quota") {
      mode = SimulationMode::quota;
    } else {
      throw Error(Errc::invalid_config, "--mode must be distance or quota");
    }
    config.n = opt.n;
    config.quantum = opt.q;
    config.iterations = opt.iters;
    config.decay = opt.decay;
    config.seed = opt.seed;
    const std::string methods =
        !opt.methods.empty() ? opt.methods : (mode == SimulationMode::distance ? "prorata,jd,ws" : "ws");
    config.methods = parse_method_list(methods);
    if (mode == SimulationMode::quota && config.methods.size() != 1) {
      throw Error(Errc::invalid_config, "quota mode audits exactly one method");
    }
  }
  config.threads = opt.threads;
  config.validate();

  Sink sink(opt.out, out);
  if (mode == SimulationMode::distance) {
    IterationObserver observer;
    if (opt.verbose) observer = [&](const IterationRecord& r) { sink.emit(to_json(r, config)); };
    sink.emit(to_json(run_distance_simulation(config, observer)));
  } else {
    QuotaObserver observer;
    if (opt.verbose) observer = [&](const QuotaIteration& r) { sink.emit(to_json(r)); };
    sink.emit(to_json(run_quota_simulation(config, observer)));
  }
  sink.emit(run_record("simulate", config_to_json(config, mode), elapsed_ms(start)));
  return kExitOk;
}

// ---- replay ---------------------------------------------------------------

struct ReplayOptions {
  std::string file;
  std::string method = "prorata";
  std::uint64_t seed = 0;
  std::string format = "jsonl";
  std::string out;
};

int cmd_replay(const ReplayOptions& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  auto in = open_input(opt.file);
  const auto orders = parse_replay(in);
  const MethodSpec method = parse_method(opt.method, opt.seed);
  if (!respects_capacity(method)) {
    throw Error(Errc::unsupported_method, method_name(method) + " can overfill resting orders");
  }
  const bool text = opt.format == "text";
  Sink sink(opt.out, out);
  OrderBook book;
  for (const auto& order : orders) {
    const ExecutionReport report = book.submit(order, method);
    if (text) {
      auto& os = sink.stream();
      os << "exec " << report.taker << " fills=";
      for (std::size_t i = 0; i < report.fills.size(); ++i) {
        os << (i ? "," : "") << report.fills[i].maker << ':' << report.fills[i].units;
      }
      os << " residual=" << report.residual << '\n';
    } else {
      sink.emit(to_json(report));
    }
  }
  const auto snapshot = book.snapshot();
  if (text) {
    for (const auto& o : snapshot) sink.stream() << format_replay_line(o) << '\n';
  } else {
    sink.emit(to_json(snapshot));
    sink.emit(run_record("replay", {{"file", opt.file}, {"method", opt.method}},
                         elapsed_ms(start)));
  }
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> n{100};
  std::vector<long long> incoming;
  std::vector<double> fractions;
  std::string methods = "prorata,hamilton,jd,ws";
  std::size_t reps = 5;
  long long q = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  if (opt.incoming.empty() && opt.fractions.empty()) {
    throw Error(Errc::invalid_config, "give --incoming or --incoming-fraction");
  }
  for (const auto n : opt.n) {
    if (n == 0) throw Error(Errc::invalid_config, "grid n must be positive");
  }
  for (const auto s : opt.incoming) {
    if (s <= 0) throw Error(Errc::invalid_config, "grid incoming sizes must be positive");
  }
  for (const auto f : opt.fractions) {
    if (!(f > 0 && f < 1)) throw Error(Errc::invalid_config, "fractions must lie in (0, 1)");
  }
  if (opt.reps == 0 || opt.q <= 0) throw Error(Errc::invalid_config, "reps and q must be positive");

  const auto methods = parse_method_list(opt.methods, opt.seed);
  Sink sink(opt.out, out);
  for (const auto n : opt.n) {
    const std::vector<Units> sizes = bench_sizes(n, opt.q, opt.seed);
    Units total = 0;
    for (const Units t : sizes) total += t;
    std::vector<Units> cells(opt.incoming.begin(), opt.incoming.end());
    for (const double f : opt.fractions) {
      cells.push_back(std::max<Units>(1, static_cast<Units>(f * static_cast<double>(total))));
    }
    for (const Units s : cells) {
      if (s >= total) {
        throw Error(Errc::invalid_config, "incoming " + std::to_string(s) +
                                              " not below total " + std::to_string(total) +
                                              " at n=" + std::to_string(n) + "; raise --q");
      }
      const AllocationProblem problem(sizes, s);
      for (const auto& method : methods) {
        const BenchResult r = time_allocation(problem, method, opt.reps);
        sink.emit({{"record", "bench"},
                   {"method", r.method},
                   {"n", r.n},
                   {"incoming", r.incoming},
                   {"total", r.total},
                   {"reps", r.samples_ns.size()},
                   {"median_ns", r.median_ns},
                   {"samples_ns", r.samples_ns}});
      }
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proportional allocation methods for pro-rata order matching", "apportion"};
  app.require_subcommand(1);

  AllocateOptions alloc_opt;
  auto* allocate_cmd = app.add_subcommand("allocate", "Split one incoming order across resting orders");
  allocate_cmd->add_option("scenario", alloc_opt.scenario, "Scenario file, one order size per line")
      ->required();
  allocate_cmd->add_option("--incoming", alloc_opt.incoming,
                           "Incoming size S (default: <scenario>.incoming sidecar)");
  allocate_cmd->add_option("--method", alloc_opt.methods, "Comma-separated methods");
  allocate_cmd->add_option("--seed", alloc_opt.seed, "Seed for rss");
  allocate_cmd->add_option("--format", alloc_opt.format)->check(CLI::IsMember({"jsonl", "text"}));
  allocate_cmd->add_option("--out", alloc_opt.out, "Write records to this file");

  SimulateOptions sim_opt;
  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded power-law simulations");
  simulate_cmd->add_option("--n", sim_opt.n, "Resting orders per scenario");
  simulate_cmd->add_option("--q", sim_opt.q, "Quantum size");
  simulate_cmd->add_option("--iters", sim_opt.iters, "Iterations N");
  simulate_cmd->add_option("--decay", sim_opt.decay, "Power-law density exponent");
  simulate_cmd->add_option("--seed", sim_opt.seed, "Root seed");
  simulate_cmd->add_option("--mode", sim_opt.mode)->check(CLI::IsMember({"distance", "quota"}));
  simulate_cmd->add_option("--method", sim_opt.methods, "Comma-separated methods");
  simulate_cmd->add_option("--threads", sim_opt.threads, "Worker threads (0 = all cores)");
  simulate_cmd->add_flag("--verbose", sim_opt.verbose, "Emit per-iteration records");
  simulate_cmd->add_option("--out", sim_opt.out, "Write records to this file");
  simulate_cmd->add_option("--from-record", sim_opt.from_record,
                           "Re-run the config stored in a summary record file");

  ReplayOptions replay_opt;
  auto* replay_cmd = app.add_subcommand("replay", "Replay an order file through the book");
  replay_cmd->add_option("file", replay_opt.file, "Replay file, id,side,size,price per line")
      ->required();
  replay_cmd->add_option("--method", replay_opt.method, "Allocation method for partial fills");
  replay_cmd->add_option("--format", replay_opt.format)->check(CLI::IsMember({"jsonl", "text"}));
  replay_cmd->add_option("--out", replay_opt.out, "Write records to this file");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Time methods over an (n, S) grid");
  bench_cmd->add_option("--n", bench_opt.n, "Order counts")->delimiter(',');
  bench_cmd->add_option("--incoming", bench_opt.incoming, "Absolute incoming sizes")
      ->delimiter(',');
  bench_cmd->add_option("--incoming-fraction", bench_opt.fractions, "Incoming size as S/T")
      ->delimiter(',');
  bench_cmd->add_option("--method", bench_opt.methods, "Comma-separated methods");
  bench_cmd->add_option("--reps", bench_opt.reps, "Repetitions per cell");
  bench_cmd->add_option("--q", bench_opt.q, "Quantum size of generated orders");
  bench_cmd->add_option("--seed", bench_opt.seed, "Seed for generated orders");
  bench_cmd->add_option("--out", bench_opt.out, "Write records to this file");

  std::vector<const char*> argv{"apportion"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*allocate_cmd) return cmd_allocate(alloc_opt, out, err);
    if (*simulate_cmd) return cmd_simulate(sim_opt, out);
    if (*replay_cmd) return cmd_replay(replay_opt, out);
    if (*bench_cmd) return cmd_bench(bench_opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInputError;
}

}  // namespace apportion
