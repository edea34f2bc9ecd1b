#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "buchidet/families.hh"
#include "buchidet/hoa.hh"
#include "buchidet/lasso.hh"
#include "buchidet/pipeline.hh"

namespace fs = std::filesystem;
using namespace buchidet;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_differ = 1;
constexpr int exit_input = 2;
constexpr int exit_cap = 3;

std::string read_input(std::string const& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

void write_output(std::string const& path, std::string const& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::size_t default_state_cap() {
  if (char const* env = std::getenv("BUCHIDET_STATE_CAP")) {
    try {
      return std::stoull(env);
    } catch (std::exception const&) {
      std::cerr << "warning: ignoring invalid BUCHIDET_STATE_CAP '" << env << "'\n";
    }
  }
  return DetConfig{}.state_cap;
}

struct DetArgs {
  std::string input;
  std::string merge = "safra";
  std::string opts = "def";
  std::string output;
  std::string stats;
  std::size_t state_cap = 0;
  bool separate_sccs = false;
};

int cmd_det(DetArgs const& a) {
  try {
    auto const nba = parse_nba(read_input(a.input));
    auto cfg = DetConfig::from_opts(a.opts, parse_merge(a.merge));
    cfg.state_cap = a.state_cap ? a.state_cap : default_state_cap();
    cfg.separate_sccs = a.separate_sccs;
    RunStats stats;
    auto const dpa = run_pipeline(nba, cfg, &stats);
    write_output(a.output, emit_hoa(dpa));
    if (!a.stats.empty()) write_output(a.stats, stats_json(stats));
    return exit_ok;
  } catch (StateCapExceeded const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_cap;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
}

int report(std::optional<Lasso> const& cex, Alphabet const& alpha) {
  if (!cex) {
    std::cout << "equivalent\n";
    return exit_ok;
  }
  std::cout << "counterexample: " << format_lasso(*cex, alpha) << "\n";
  return exit_differ;
}

int cmd_verify(std::string const& nba_path, std::string const& dpa_path, std::size_t prefix, std::size_t cycle) {
  Nba nba;
  Dpa dpa;
  try {
    nba = parse_nba(read_input(nba_path));
    dpa = parse_dpa(read_input(dpa_path));
    if (nba.alphabet != dpa.alphabet) throw std::invalid_argument("automata have different alphabets");
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return report(bounded_equivalence(nba, dpa, prefix, cycle), nba.alphabet);
}

int cmd_equiv(std::string const& p1, std::string const& p2) {
  Dpa a;
  Dpa b;
  try {
    a = parse_dpa(read_input(p1));
    b = parse_dpa(read_input(p2));
    if (a.alphabet != b.alphabet) throw std::invalid_argument("automata have different alphabets");
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return report(dpa_equivalent(a, b), a.alphabet);
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> configs{"def"};
  std::vector<std::string> merges{"safra"};
  std::string csv;
  unsigned jobs = 1;
  double timeout = 0;
  std::size_t state_cap = 0;
};

struct BenchRow {
  std::string file;
  std::string config;
  std::string merge;
  std::size_t in_states = 0;
  std::size_t out_states = 0;
  std::size_t priorities = 0;
  double ms = 0;
  std::string status;
};

BenchRow run_bench_job(fs::path const& file, std::string const& opts, std::string const& merge,
                       BenchArgs const& a) {
  BenchRow row;
  row.file = file.filename().string();
  row.config = opts;
  row.merge = merge;
  try {
    auto const nba = parse_nba(read_file(file.string()));
    row.in_states = nba.state_count;
    auto cfg = DetConfig::from_opts(opts, parse_merge(merge));
    row.config = cfg.opts_string();
    cfg.state_cap = a.state_cap ? a.state_cap : default_state_cap();
    if (a.timeout > 0)
      cfg.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(a.timeout));
    RunStats stats;
    auto const dpa = run_pipeline(nba, cfg, &stats);
    row.out_states = dpa.state_count;
    row.priorities = stats.priorities;
    row.ms = stats.timings_ms.at("total");
    row.status = "ok";
  } catch (DeadlineExceeded const&) {
    row.status = "timeout";
  } catch (StateCapExceeded const&) {
    row.status = "cap";
  } catch (ParseError const&) {
    row.status = "parse_error";
  } catch (std::exception const&) {
    row.status = "error";
  }
  return row;
}

/// Opts string of `config` with `letter` removed, or empty if absent.
std::string without(std::string const& config, char letter) {
  if (config.find(letter) == std::string::npos) return {};
  auto s = config;
  s.erase(std::remove(s.begin(), s.end(), letter), s.end());
  return s.empty() ? "def" : s;
}

int cmd_bench(BenchArgs a) {
  std::vector<fs::path> files;
  try {
    for (auto const& e : fs::directory_iterator(a.dir))
      if (e.is_regular_file() && e.path().extension() == ".hoa") files.push_back(e.path());
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  std::sort(files.begin(), files.end());
  try {
    for (auto& c : a.configs) c = DetConfig::from_opts(c).opts_string();
    for (auto const& m : a.merges) (void)parse_merge(m);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }

  struct Job {
    std::size_t file;
    std::string merge;
    std::string config;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < files.size(); ++f)
    for (auto const& m : a.merges)
      for (auto const& c : a.configs) jobs.push_back({f, m, c});

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();)
      rows[i] = run_bench_job(files[jobs[i].file], jobs[i].config, jobs[i].merge, a);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, a.jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "file,config,merge,in_states,out_states,priorities,ms,status\n";
  for (auto const& r : rows)
    csv << r.file << "," << r.config << "," << r.merge << "," << r.in_states << "," << r.out_states << ","
        << r.priorities << "," << std::fixed << std::setprecision(3) << r.ms << "," << r.status << "\n";

  // state-sum ratios against the first config, over files where both finished
  std::map<std::tuple<std::string, std::string, std::string>, BenchRow const*> by_key;
  for (auto const& r : rows) by_key[{r.file, r.merge, r.config}] = &r;
  auto const& base = a.configs.front();
  for (auto const& m : a.merges)
    for (auto const& c : a.configs) {
      std::size_t sum_c = 0;
      std::size_t sum_b = 0;
      for (auto const& f : files) {
        auto const name = f.filename().string();
        auto const* rc = by_key.at({name, m, c});
        auto const* rb = by_key.at({name, m, base});
        if (rc->status != "ok" || rb->status != "ok") continue;
        sum_c += rc->out_states;
        sum_b += rb->out_states;
      }
      auto const ratio = sum_b ? static_cast<double>(sum_c) / static_cast<double>(sum_b) : 0.0;
      csv << "SUMMARY," << c << "," << m << ",," << sum_c << ",,," << "ratio_vs_" << base << "=" << std::fixed
          << std::setprecision(4) << ratio << "\n";
    }

  // monotonicity of +S and +T against the same config without the letter
  for (auto const& m : a.merges)
    for (auto const& c : a.configs)
      for (char letter : {'S', 'T'}) {
        auto const b = without(c, letter);
        if (b.empty() || std::find(a.configs.begin(), a.configs.end(), b) == a.configs.end()) continue;
        std::size_t violations = 0;
        for (auto const& f : files) {
          auto const name = f.filename().string();
          auto const* rc = by_key.at({name, m, c});
          auto const* rb = by_key.at({name, m, b});
          if (rc->status == "ok" && rb->status == "ok" && rc->out_states > rb->out_states) ++violations;
        }
        csv << "CHECK," << c << "," << m << ",,,,," << "monotone_vs_" << b << "="
            << (violations ? "fail(" + std::to_string(violations) + ")" : std::string("pass")) << "\n";
      }

  try {
    write_output(a.csv, csv.str());
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinization of Buchi automata into parity automata"};
  app.require_subcommand(1);

  DetArgs det;
  auto* c_det = app.add_subcommand("det", "Determinize an HOA NBA into an HOA DPA");
  c_det->add_option("input", det.input, "Input file (stdin if omitted or '-')");
  c_det->add_option("--merge", det.merge, "Merge strategy: ms, safra or max")->capture_default_str();
  c_det->add_option("--opts", det.opts, "Optimizations, a subset of TEIMSAWD")->capture_default_str();
  c_det->add_option("-o,--output", det.output, "Output file (stdout if omitted)");
  c_det->add_option("--stats-json", det.stats, "Write run statistics as JSON");
  c_det->add_option("--state-cap", det.state_cap, "Abort beyond this many macrostates");
  c_det->add_flag("--separate-sccs", det.separate_sccs, "One determinization component per NBA SCC");

  std::string v_nba;
  std::string v_dpa;
  std::size_t v_prefix = 4;
  std::size_t v_cycle = 4;
  auto* c_verify = app.add_subcommand("verify", "Compare an NBA and a DPA on all small lassos");
  c_verify->add_option("nba", v_nba)->required();
  c_verify->add_option("dpa", v_dpa)->required();
  c_verify->add_option("--prefix", v_prefix, "Maximal prefix length")->capture_default_str();
  c_verify->add_option("--cycle", v_cycle, "Maximal cycle length")->capture_default_str();

  std::string e_a;
  std::string e_b;
  auto* c_equiv = app.add_subcommand("equiv", "Decide language equivalence of two DPAs");
  c_equiv->add_option("first", e_a)->required();
  c_equiv->add_option("second", e_b)->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Determinize every .hoa file of a directory under several configs");
  c_bench->add_option("dir", bench.dir)->required();
  c_bench->add_option("--configs", bench.configs, "Comma-separated configs, the first is the baseline")
      ->delimiter(',')
      ->capture_default_str();
  c_bench->add_option("--merge", bench.merges, "Comma-separated merge strategies")->delimiter(',')->capture_default_str();
  c_bench->add_option("--csv", bench.csv, "CSV output file (stdout if omitted)");
  c_bench->add_option("--jobs", bench.jobs, "Parallel jobs")->capture_default_str();
  c_bench->add_option("--timeout", bench.timeout, "Per-run timeout in seconds (0 = none)")->capture_default_str();
  c_bench->add_option("--state-cap", bench.state_cap, "Abort beyond this many macrostates");

  auto* c_gen = app.add_subcommand("gen", "Generate automata families");
  c_gen->require_subcommand(1);
  std::string g_out;
  c_gen->add_option("-o,--output", g_out, "Output file (stdout if omitted)");
  std::size_t g_n = 0;
  auto* g_bn = c_gen->add_subcommand("bn", "B(n), n+1 states");
  g_bn->add_option("n", g_n)->required();
  auto* g_cn = c_gen->add_subcommand("cn", "C(n), 2n+1 states");
  g_cn->add_option("n", g_n)->required();
  RandomNbaParams g_rand;
  bool g_weak = false;
  auto* g_random = c_gen->add_subcommand("random", "Seeded random NBA");
  g_random->add_option("--states", g_rand.states)->capture_default_str();
  g_random->add_option("--symbols", g_rand.symbols)->capture_default_str();
  g_random->add_option("--density", g_rand.density)->capture_default_str();
  g_random->add_option("--acc-frac", g_rand.acc_frac)->capture_default_str();
  g_random->add_option("--seed", g_rand.seed)->capture_default_str();
  g_random->add_flag("--weak", g_weak, "Make every SCC fully accepting or fully rejecting");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  if (*c_det) return cmd_det(det);
  if (*c_verify) return cmd_verify(v_nba, v_dpa, v_prefix, v_cycle);
  if (*c_equiv) return cmd_equiv(e_a, e_b);
  if (*c_bench) return cmd_bench(bench);
  if (*c_gen) {
    try {
      Nba nba;
      std::string name;
      if (*g_bn) {
        nba = family_b(g_n);
        name = "B(" + std::to_string(g_n) + ")";
      } else if (*g_cn) {
        nba = family_c(g_n);
        name = "C(" + std::to_string(g_n) + ")";
      } else {
        nba = g_weak ? random_weak_nba(g_rand) : random_nba(g_rand);
        name = "random seed " + std::to_string(g_rand.seed);
      }
      write_output(g_out, emit_hoa(nba, name));
      return exit_ok;
    } catch (std::exception const& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_input;
    }
  }
  return exit_input;
}
