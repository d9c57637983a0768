// flipdist command-line tool. Talks to the library only through the C API.
//
// Machine output is JSON lines on stdout; human summaries go to stderr.
// Exit codes: 0 success/accept, 1 reject, 2 input error, 3 budget exceeded.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flipdist/flipdist.h"

using json = nlohmann::json;

namespace {

constexpr int exit_input = FD_ERR_INPUT;

struct InstanceHandle {
  fd_instance* ptr = nullptr;
  InstanceHandle() = default;
  InstanceHandle(const InstanceHandle&) = delete;
  InstanceHandle& operator=(const InstanceHandle&) = delete;
  ~InstanceHandle() { fd_instance_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { fd_string_free(ptr); }
};

int report_error(fd_status status) {
  std::cerr << "error: " << fd_last_error() << "\n";
  return status;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fd_status load_instance(const std::string& path, InstanceHandle& out) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else if (auto contents = read_file(path)) {
    text = *contents;
  } else {
    std::cerr << "error: cannot read " << path << "\n";
    return FD_ERR_INPUT;
  }
  const fd_status s = fd_instance_parse(text.data(), text.size(), &out.ptr);
  if (s != FD_OK) report_error(s);
  return s;
}

std::optional<fd_hull_shape> parse_shape(const std::string& name) {
  if (name == "scatter" || name == "random") return FD_SHAPE_SCATTER;
  if (name == "polygon" || name == "convex") return FD_SHAPE_POLYGON;
  return std::nullopt;
}

/// "a-b,c-d" or "a b; c d"
std::optional<std::vector<uint32_t>> parse_flip_list(const std::string& text) {
  std::vector<uint32_t> ids;
  std::string token;
  for (char c : text + ",") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      token.push_back(c);
      continue;
    }
    if (!token.empty()) {
      try {
        ids.push_back(static_cast<uint32_t>(std::stoul(token)));
      } catch (const std::exception&) {
        return std::nullopt;
      }
      token.clear();
    }
    if (!(c == '-' || c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c)))) {
      return std::nullopt;
    }
  }
  if (ids.size() % 2 != 0) return std::nullopt;
  return ids;
}

struct SolverFlags {
  std::string pruning = "on";
  std::string stack = "cleared";
  bool rotations = false;
  uint64_t state_budget = 0;

  fd_solver_options options() const {
    fd_solver_options o = fd_default_solver_options();
    o.pruning = pruning == "on" ? 1 : 0;
    o.stack_mode = stack == "persistent" ? FD_STACK_PERSISTENT : FD_STACK_CLEARED;
    o.all_rotations = rotations ? 1 : 0;
    o.state_budget = state_budget;
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--pruning", flags.pruning, "State memoization")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--stack", flags.stack, "Stack behaviour between iterations")
      ->check(CLI::IsMember({"cleared", "persistent"}))
      ->capture_default_str();
  cmd->add_flag("--all-rotations", flags.rotations, "Also try every rotation of the changed-edge order");
  cmd->add_option("--state-budget", flags.state_budget, "Abort after this many solver states (0 = unlimited)");
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  InstanceHandle inst;
  if (const fd_status s = load_instance(path, inst); s != FD_OK) return s;
  json rec{{"file", path},
           {"valid", true},
           {"n", fd_instance_point_count(inst.ptr)},
           {"h", fd_instance_hull_size(inst.ptr)},
           {"changed_edges", fd_instance_changed_edge_count(inst.ptr)}};
  uint32_t k = 0;
  rec["k"] = fd_instance_get_k(inst.ptr, &k) ? json(k) : json(nullptr);
  std::cout << rec.dump() << "\n";
  return 0;
}

int cmd_gen(uint32_t n, const std::string& shape_name, uint32_t scramble, uint64_t seed,
            std::optional<uint32_t> k, const std::string& output) {
  const auto shape = parse_shape(shape_name);
  if (!shape) {
    std::cerr << "error: unknown shape '" << shape_name << "'\n";
    return exit_input;
  }
  InstanceHandle inst;
  if (const fd_status s = fd_instance_generate(n, *shape, scramble, seed, &inst.ptr); s != FD_OK) {
    return report_error(s);
  }
  if (k) fd_instance_set_k(inst.ptr, *k);
  OwnedString text;
  if (const fd_status s = fd_instance_render(inst.ptr, &text.ptr); s != FD_OK) return report_error(s);
  std::ostringstream header;
  header << "# generated: n=" << n << " shape=" << shape_name << " scramble=" << scramble
         << " seed=" << seed << "\n";
  if (output.empty() || output == "-") {
    std::cout << header.str() << text.ptr;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return exit_input;
    }
    out << header.str() << text.ptr;
  }
  return 0;
}

int cmd_distance(const std::string& path, const std::string& engine, uint32_t cap,
                 uint64_t node_budget, std::optional<uint32_t> k_flag, const SolverFlags& flags) {
  InstanceHandle inst;
  if (const fd_status s = load_instance(path, inst); s != FD_OK) return s;
  std::optional<uint32_t> k = k_flag;
  if (uint32_t file_k = 0; !k && fd_instance_get_k(inst.ptr, &file_k)) k = file_k;

  json rec{{"n", fd_instance_point_count(inst.ptr)},
           {"h", fd_instance_hull_size(inst.ptr)},
           {"k", k ? json(*k) : json(nullptr)},
           {"engine", engine}};
  const fd_solver_options options = flags.options();

  if (engine == "oracle") {
    uint32_t d = 0;
    fd_search_stats st{};
    const fd_status s = fd_oracle_distance(inst.ptr, cap, node_budget, &d, &st);
    if (s != FD_OK) return report_error(s);
    rec["result"] = d;
    rec["states_explored"] = st.states_explored;
    rec["millis"] = st.millis;
    std::cout << rec.dump() << "\n";
    std::cerr << "flip distance " << d << "\n";
    return 0;
  }

  if (engine == "fpt") {
    if (!k) {
      std::cerr << "error: engine fpt needs k (--k or a 'k' line in the instance)\n";
      return exit_input;
    }
    fd_search_stats st{};
    const fd_status s = fd_fpt_decide(inst.ptr, *k, &options, &st);
    if (s != FD_OK && s != FD_REJECT) return report_error(s);
    rec["result"] = s == FD_OK ? "accept" : "reject";
    rec["states_explored"] = st.states_explored;
    rec["millis"] = st.millis;
    std::cout << rec.dump() << "\n";
    std::cerr << "distance " << (s == FD_OK ? "is " : "is not ") << *k << "\n";
    return s;
  }

  // both
  uint32_t d = 0;
  fd_search_stats oracle_stats{};
  if (const fd_status s = fd_oracle_distance(inst.ptr, cap, node_budget, &d, &oracle_stats); s != FD_OK) {
    return report_error(s);
  }
  const uint32_t asked = k.value_or(d);
  fd_search_stats fpt_stats{};
  const fd_status s = fd_fpt_decide(inst.ptr, asked, &options, &fpt_stats);
  if (s != FD_OK && s != FD_REJECT) return report_error(s);
  const bool accept = s == FD_OK;
  const bool agree = accept == (asked == d);
  rec["k"] = asked;
  rec["result"] = {{"oracle", d}, {"fpt", accept ? "accept" : "reject"}, {"agree", agree}};
  rec["states_explored"] = oracle_stats.states_explored + fpt_stats.states_explored;
  rec["millis"] = oracle_stats.millis + fpt_stats.millis;
  std::cout << rec.dump() << "\n";
  if (!agree) {
    std::cerr << "DISAGREEMENT: oracle distance " << d << ", fpt " << (accept ? "accepts" : "rejects")
              << " k=" << asked << "\n";
    return FD_REJECT;
  }
  std::cerr << "oracle " << d << ", fpt " << (accept ? "accepts" : "rejects") << " k=" << asked
            << ", agree\n";
  return 0;
}

int cmd_dag(const std::string& path, const std::string& flips_text, const std::string& format) {
  InstanceHandle inst;
  if (const fd_status s = load_instance(path, inst); s != FD_OK) return s;
  const auto flips = parse_flip_list(flips_text);
  if (!flips) {
    std::cerr << "error: cannot parse flip list '" << flips_text << "' (expected \"a-b,c-d\")\n";
    return exit_input;
  }
  OwnedString text;
  size_t bad = 0;
  const fd_status s = fd_dag_report(inst.ptr, flips->data(), flips->size() / 2,
                                    format == "dot" ? FD_DAG_DOT : FD_DAG_TEXT, &text.ptr, &bad);
  if (s != FD_OK) {
    if (bad != 0) std::cerr << "invalid flip at position " << bad << "\n";
    return report_error(s);
  }
  std::cout << text.ptr;
  return 0;
}

struct BenchRow {
  uint32_t n;
  uint32_t scramble;
  uint32_t trial;
  uint64_t seed;
  std::string shape;
};

json bench_one(const BenchRow& row, uint32_t cap, uint64_t node_budget, const fd_solver_options& options) {
  json rec{{"n", row.n}, {"shape", row.shape}, {"scramble", row.scramble}, {"trial", row.trial}, {"seed", row.seed}};
  InstanceHandle inst;
  const auto shape = parse_shape(row.shape).value_or(FD_SHAPE_SCATTER);
  if (fd_instance_generate(row.n, shape, row.scramble, row.seed, &inst.ptr) != FD_OK) {
    rec["error"] = fd_last_error();
    rec["agree"] = false;
    return rec;
  }
  rec["h"] = fd_instance_hull_size(inst.ptr);
  uint32_t d = 0;
  fd_search_stats ost{};
  if (fd_oracle_distance(inst.ptr, cap, node_budget, &d, &ost) != FD_OK) {
    rec["error"] = fd_last_error();
    rec["agree"] = false;
    return rec;
  }
  rec["oracle_distance"] = d;
  rec["oracle_states"] = ost.states_explored;
  rec["oracle_millis"] = ost.millis;

  json per_k = json::array();
  bool agree = true;
  uint64_t states = 0;
  double millis = 0;
  for (uint32_t k = 0; k <= d; ++k) {
    fd_search_stats st{};
    const fd_status s = fd_fpt_exists(inst.ptr, k, &options, &st);
    if (s != FD_OK && s != FD_REJECT) {
      rec["error"] = fd_last_error();
      agree = false;
      break;
    }
    const bool accepted = s == FD_OK;
    agree = agree && accepted == (k == d);
    states += st.states_explored;
    millis += st.millis;
    per_k.push_back({{"k", k}, {"accept", accepted}, {"states", st.states_explored},
                     {"max_branching", st.max_branching}, {"millis", st.millis}});
  }
  rec["fpt"] = per_k;
  rec["fpt_states"] = states;
  rec["fpt_millis"] = millis;
  rec["agree"] = agree;
  return rec;
}

int cmd_bench(const std::string& config_path, std::vector<uint32_t> sizes,
              std::vector<uint32_t> scrambles, uint32_t trials, uint64_t seed,
              const std::string& shape, unsigned jobs, uint32_t cap, uint64_t node_budget,
              const SolverFlags& flags) {
  std::vector<BenchRow> rows;
  auto expand = [&](uint32_t n, uint32_t scramble, uint32_t count, uint64_t base_seed,
                    const std::string& row_shape) {
    for (uint32_t t = 0; t < count; ++t) {
      // Seeds are derived deterministically so any row can be regenerated with `gen`.
      const uint64_t row_seed = base_seed * 1'000'003ULL + n * 10'007ULL + scramble * 101ULL + t;
      rows.push_back(BenchRow{n, scramble, t, row_seed, row_shape});
    }
  };
  if (!config_path.empty()) {
    const auto text = read_file(config_path);
    if (!text) {
      std::cerr << "error: cannot read " << config_path << "\n";
      return exit_input;
    }
    try {
      const json config = json::parse(*text);
      for (const json& entry : config.at("suites")) {
        expand(entry.at("n").get<uint32_t>(), entry.at("scramble").get<uint32_t>(),
               entry.value("trials", 1u), entry.value("seed", uint64_t{1}),
               entry.value("shape", std::string("scatter")));
      }
    } catch (const json::exception& e) {
      std::cerr << "error: bad bench config: " << e.what() << "\n";
      return exit_input;
    }
  } else {
    for (uint32_t n : sizes) {
      for (uint32_t s : scrambles) expand(n, s, trials, seed, shape);
    }
  }

  const fd_solver_options options = flags.options();
  std::mutex out_mutex;
  std::atomic<size_t> next{0};
  std::atomic<size_t> agreed{0};
  auto worker = [&] {
    for (size_t i = next++; i < rows.size(); i = next++) {
      json rec = bench_one(rows[i], cap, node_budget, options);
      if (rec.value("agree", false)) ++agreed;
      std::lock_guard lock(out_mutex);
      std::cout << rec.dump() << "\n" << std::flush;
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, jobs);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const double rate = rows.empty() ? 100.0 : 100.0 * static_cast<double>(agreed) / rows.size();
  std::cerr << "bench: " << rows.size() << " instances, agreement " << agreed << "/" << rows.size()
            << " (" << rate << "%)\n";
  return agreed == rows.size() ? 0 : FD_REJECT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flip distance between triangulations of a planar point set"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fd_version()));

  std::string path;
  SolverFlags flags;
  uint32_t cap = 10;
  uint64_t node_budget = 1'000'000;

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance file");
  validate->add_option("file", path, "Instance file ('-' for stdin)")->required();

  uint32_t n = 6;
  uint32_t scramble = 3;
  uint64_t seed = 1;
  std::string shape = "scatter";
  std::optional<uint32_t> k;
  std::string output;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("-n,--n", n, "Number of points")->capture_default_str();
  gen->add_option("--shape", shape, "scatter | polygon")->capture_default_str();
  gen->add_option("--scramble", scramble, "Random flips applied to get the final triangulation")
      ->capture_default_str();
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--k", k, "Store this k in the instance");
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  std::string engine = "both";
  auto* distance = app.add_subcommand("distance", "Compute or decide the flip distance");
  distance->add_option("file", path, "Instance file ('-' for stdin)")->required();
  distance->add_option("--engine", engine, "oracle | fpt | both")
      ->check(CLI::IsMember({"oracle", "fpt", "both"}))
      ->capture_default_str();
  distance->add_option("--cap", cap, "Oracle depth cap")->capture_default_str();
  distance->add_option("--node-budget", node_budget, "Oracle node budget")->capture_default_str();
  distance->add_option("--k", k, "Distance to decide (overrides the file)");
  add_solver_flags(distance, flags);

  std::string flips_text;
  std::string format = "text";
  auto* dag = app.add_subcommand("dag", "Print the dependency DAG of a flip sequence");
  dag->add_option("file", path, "Instance file ('-' for stdin)")->required();
  dag->add_option("--flips", flips_text, "Edges to flip in order, e.g. \"0-2,1-3\"");
  dag->add_option("--format", format, "text | dot")->check(CLI::IsMember({"text", "dot"}))->capture_default_str();

  std::string config;
  std::vector<uint32_t> sizes{5, 6, 7};
  std::vector<uint32_t> scrambles{1, 2, 3};
  uint32_t trials = 3;
  unsigned jobs = 1;
  auto* bench = app.add_subcommand("bench", "Cross-check both engines on generated instances");
  bench->add_option("--config", config, "JSON file: {\"suites\": [{\"n\", \"scramble\", \"trials\", \"seed\", \"shape\"}]}");
  bench->add_option("--n", sizes, "Point counts")->delimiter(',')->capture_default_str();
  bench->add_option("--scramble", scrambles, "Scramble flip counts")->delimiter(',')->capture_default_str();
  bench->add_option("--trials", trials, "Instances per (n, scramble)")->capture_default_str();
  bench->add_option("--seed", seed, "Base seed")->capture_default_str();
  bench->add_option("--shape", shape, "scatter | polygon")->capture_default_str();
  bench->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bench->add_option("--cap", cap, "Oracle depth cap")->capture_default_str();
  bench->add_option("--node-budget", node_budget, "Oracle node budget")->capture_default_str();
  add_solver_flags(bench, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  if (*validate) return cmd_validate(path);
  if (*gen) return cmd_gen(n, shape, scramble, seed, k, output);
  if (*distance) return cmd_distance(path, engine, cap, node_budget, k, flags);
  if (*dag) return cmd_dag(path, flips_text, format);
  if (*bench) return cmd_bench(config, sizes, scrambles, trials, seed, shape, jobs, cap, node_budget, flags);
  return exit_input;
}
