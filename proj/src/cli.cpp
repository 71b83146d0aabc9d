#include "nos/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "CLI11.hpp"

#include "nos/analysis.hpp"
#include "nos/construction.hpp"
#include "nos/covers.hpp"
#include "nos/errors.hpp"
#include "nos/json_io.hpp"
#include "nos/rng.hpp"
#include "nos/spectral.hpp"
#include "nos/verify.hpp"

namespace nos::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMaxSweepPoints = 10000;

struct CommandResult {
  int code = kPass;
  Json report;
  std::string text;  ///< printed instead of the JSON report when non-empty
  std::vector<std::pair<std::string, std::string>> files;
};

int code_of(Outcome o) {
  switch (o) {
    case Outcome::pass: return kPass;
    case Outcome::fail: return kFail;
    case Outcome::inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<FpVector> read_vector_set(const std::string& path) {
  const auto text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
  return vector_set_from_json(j);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NOS_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// ---- subcommand options

struct ConstructOpts {
  std::uint32_t p = 2;
  std::size_t t = 0, m = 0, n = 0, k = 0;
  std::uint64_t d = 0;
  std::string mode = "clique";
  std::uint64_t seed = 0;
  std::size_t max_retries = 20;
  std::string schedule;
  std::uint64_t budget = kDefaultSubsetBudget;
};

struct VerifyOpts {
  std::string input;
  std::size_t k = 0;
  std::string mode = "clique";
  std::uint64_t budget = kDefaultSubsetBudget;
};

struct SpectralOpts {
  std::uint32_t p = 2;
  std::size_t t = 0;
  std::size_t mixing_samples = 0;
  bool cross = false;
  std::size_t restarts = 1000;
  std::uint64_t seed = 0;
  std::string format = "json";
};

struct CoversOpts {
  std::string op;
  std::uint32_t p = 2;
  std::size_t t = 0;
  std::string input, input2;
  std::uint64_t budget = 10'000'000;
};

struct CountOpts {
  std::uint32_t p = 2;
  std::size_t t = 0;
};

struct SweepOpts {
  std::string p = "2", t, m = "1", n = "32", k;
  std::uint64_t d = 0;
  std::string mode = "clique";
  std::string seeds = "1";
  std::size_t max_retries = 20;
  std::size_t max_points = kMaxSweepPoints;
  std::uint64_t budget = kDefaultSubsetBudget;
};

struct ExportOpts {
  std::string input;
  std::string format = "dimacs";
};

// ---- handlers

CommandResult do_construct(ConstructOpts o, Json& config) {
  ConstructionParams params;
  params.p = PrimeModulus(o.p);
  params.mode = parse_build_mode(o.mode);
  params.k = o.k;
  if (!o.schedule.empty()) {
    if (o.d == 0) throw PreconditionError("--schedule needs --d");
    Schedule s;
    if (o.schedule == "f2") {
      if (o.p != 2) throw PreconditionError("the f2 schedule needs --p 2");
      s = schedule_f2(o.k, o.d);
    } else if (o.schedule == "fp") {
      s = schedule_fp(params.p, o.k, o.d);
    } else {
      throw PreconditionError("unknown schedule '" + o.schedule + "'");
    }
    if (s.n > 100000) throw GuardrailExceeded("scheduled n = " + s.n.str() + " exceeds 10^5");
    o.t = s.t;
    o.m = s.m;
    o.n = s.n.convert_to<std::size_t>();
  }
  params.t = o.t;
  params.m = o.m;
  params.n = o.n;
  params.d = o.d ? o.d : params.product_dim();

  config = {{"p", o.p},   {"t", o.t},       {"m", o.m},      {"n", o.n},
            {"k", o.k},   {"d", params.d},  {"mode", o.mode}, {"seed", o.seed},
            {"max_retries", o.max_retries}, {"schedule", o.schedule}, {"budget", o.budget}};

  const auto run = build(params, o.seed, o.max_retries, o.budget);
  CommandResult res;
  res.report = to_json(run);
  res.report["union_bound_log2"] = union_bound_log2(params);
  if (run.verdict.passed()) {
    const auto bound = ramsey_bound(params.d, params.k);
    res.report["ramsey_bound"] = bound.str();
    res.report["ramsey_ok"] = bound > run.result.size();
    const std::size_t clique_bound = params.mode == BuildMode::clique ? params.k : params.k - 1;
    if (clique_bound > 0) res.report["ratio"] = to_json(cover_ratio(run.result.size(), clique_bound, params.d));
  }
  res.code = code_of(run.verdict.outcome);
  return res;
}

CommandResult do_verify(const VerifyOpts& o, Json& config) {
  const auto text = read_file(o.input);
  config = {{"input", o.input}, {"input_sha256", sha256_hex(text)}, {"k", o.k}, {"mode", o.mode},
            {"budget", o.budget}};
  const auto set = read_vector_set(o.input);
  const auto mode = parse_build_mode(o.mode);
  if (o.k == 0) throw PreconditionError("k must be at least 1");
  const auto verdict = mode == BuildMode::clique ? is_k_nearly_orthogonal(set, o.k) : bipartite_check(set, o.k, o.budget);

  CommandResult res;
  res.report["k"] = o.k;
  res.report["mode"] = o.mode;
  res.report["size"] = set.size();
  res.report["dim"] = set.empty() ? 0 : set.front().dim();
  res.report["verdict"] = to_json(verdict);
  res.report["witness_revalidates"] = witness_revalidates(verdict, set, o.k);
  res.code = code_of(verdict.outcome);
  return res;
}

CommandResult do_spectral(const SpectralOpts& o, Json& config) {
  config = {{"p", o.p},       {"t", o.t},           {"mixing_samples", o.mixing_samples},
            {"cross", o.cross}, {"restarts", o.restarts}, {"seed", o.seed}, {"format", o.format}};
  const auto g = build_Gpt(PrimeModulus(o.p), o.t);
  CommandResult res;
  if (o.format == "dimacs") {
    res.text = to_dimacs(g);
    res.files.emplace_back("graph.dimacs", res.text);
  } else if (o.format == "matrix") {
    res.text = to_matrix_text(g);
    res.files.emplace_back("adjacency.txt", res.text);
  } else if (o.format != "json") {
    throw PreconditionError("unknown format '" + o.format + "'");
  }

  const auto sr = spectrum(g);
  res.report = to_json(sr);
  bool ok = sr.pass;
  if (o.mixing_samples > 0) {
    RandomStream rng(derive_seed(o.seed, 0));
    std::size_t violations = 0;
    double worst = 0;
    for (std::size_t s = 0; s < o.mixing_samples; ++s) {
      std::vector<std::size_t> c1, c2;
      for (std::size_t i = 0; i < g.order(); ++i) {
        if (rng.uniform_below(2)) c1.push_back(i);
        if (rng.uniform_below(2)) c2.push_back(i);
      }
      const auto m = mixing_check(g, c1, c2, sr.lambda_bound);
      if (!m.holds) ++violations;
      if (m.bound > 0) worst = std::max(worst, m.deviation / m.bound);
    }
    res.report["mixing"] = {{"samples", o.mixing_samples}, {"violations", violations}, {"worst_ratio", worst}};
    ok = ok && violations == 0;
  }
  if (o.cross) {
    const auto c = cross_product_bound_check(PrimeModulus(o.p), o.t, derive_seed(o.seed, 1), o.restarts);
    res.report["cross_bound"] = to_json(c);
    ok = ok && c.holds();
  }
  res.code = ok ? kPass : kFail;
  return res;
}

CommandResult do_covers(const CoversOpts& o, Json& config) {
  config = {{"op", o.op}, {"p", o.p}, {"t", o.t}, {"input", o.input}, {"input2", o.input2}, {"budget", o.budget}};
  CommandResult res;
  if (o.op == "f2cover") {
    const auto a = read_vector_set(o.input);
    if (a.empty()) throw PreconditionError("cover input is empty");
    const std::size_t t = a.front().dim();
    const auto w = f2_cover_of(a, t);
    res.report = {{"t", t}, {"size", a.size()}, {"dimension", w.rank()}, {"max_dimension", (t + 1) / 2},
                  {"cover", to_json(w)}};
  } else if (o.op == "gcheck") {
    const auto r = g_inner_identity_check(PrimeModulus(o.p), o.t, o.budget);
    res.report = to_json(r);
    res.code = r.ok() ? kPass : kFail;
  } else if (o.op == "pair") {
    const auto a1 = read_vector_set(o.input);
    const auto a2 = read_vector_set(o.input2);
    res.report = to_json(cover_pair_for(PrimeModulus(o.p), o.t, a1, a2));
  } else if (o.op == "count-f2") {
    const auto c = count_f2_collection(o.t);
    res.report = {{"t", c.t}, {"dimension", c.dimension}, {"count", c.count.str()}, {"coarse_bound", c.coarse_bound.str()}};
  } else {
    throw PreconditionError("unknown op '" + o.op + "'");
  }
  return res;
}

CommandResult do_count(const CountOpts& o, Json& config) {
  config = {{"p", o.p}, {"t", o.t}};
  const auto r = count_Npt(PrimeModulus(o.p), o.t);
  CommandResult res;
  res.report = to_json(r);
  const bool ok = pow_big(2, r.lower_bound_witness.size()) <= r.total_sets;
  res.report["witness_bound_ok"] = ok;
  res.code = ok ? kPass : kFail;
  return res;
}

struct SweepPoint {
  ConstructionParams params;
  std::uint64_t seed = 0;
};

std::string sweep_row(const SweepPoint& pt, std::size_t max_retries, std::uint64_t budget) {
  const auto& q = pt.params;
  std::ostringstream row;
  row << q.p.value() << ',' << q.t << ',' << q.m << ',' << q.n << ',' << q.k << ',' << q.d << ',';
  try {
    const auto run = build(q, pt.seed, max_retries, budget);
    std::string ratio;
    const std::size_t clique_bound = q.mode == BuildMode::clique ? q.k : q.k - 1;
    if (run.verdict.passed() && clique_bound > 0)
      ratio = format_double(cover_ratio(run.result.size(), clique_bound, q.d).value);
    row << run.result.size() << ',' << run.retries_used << ',' << ratio << ',' << pt.seed << ','
        << to_string(run.verdict.outcome);
  } catch (const GuardrailExceeded&) {
    row << ",,," << pt.seed << ",GUARDRAIL";
  } catch (const BudgetExceeded&) {
    row << ",,," << pt.seed << ",BUDGET";
  } catch (const std::exception&) {
    row << ",,," << pt.seed << ",ERROR";
  }
  return row.str();
}

CommandResult do_sweep(const SweepOpts& o, Json& config) {
  config = {{"p", o.p},       {"t", o.t},     {"m", o.m},         {"n", o.n},
            {"k", o.k},       {"d", o.d},     {"mode", o.mode},   {"seeds", o.seeds},
            {"max_retries", o.max_retries},   {"max_points", o.max_points}, {"budget", o.budget}};
  const auto mode = parse_build_mode(o.mode);
  const auto ps = parse_range(o.p), ts = parse_range(o.t), ms = parse_range(o.m), ns = parse_range(o.n),
             ks = parse_range(o.k), seeds = parse_range(o.seeds);
  const std::uint64_t total = ps.size() * ts.size() * ms.size() * ns.size() * ks.size() * seeds.size();
  if (total > o.max_points) throw GuardrailExceeded("sweep grid has " + std::to_string(total) + " points");

  std::vector<SweepPoint> points;
  std::vector<std::string> rows;
  for (auto p : ps)
    for (auto t : ts)
      for (auto m : ms)
        for (auto k : ks)
          for (auto n : ns)
            for (auto seed : seeds) {
              SweepPoint pt;
              pt.params.p = PrimeModulus(static_cast<std::uint32_t>(p));
              pt.params.t = t;
              pt.params.m = m;
              pt.params.n = n;
              pt.params.k = k;
              pt.params.mode = mode;
              pt.params.d = o.d ? o.d : pt.params.product_dim();
              pt.seed = seed;
              points.push_back(pt);
            }
  rows.resize(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = sweep_row(points[i], o.max_retries, o.budget);
  };
  std::vector<std::thread> pool;
  const std::size_t workers = worker_count(points.size());
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string csv = "p,t,m,n,k,d,size,retries,ratio,seed,verdict\n";
  for (const auto& r : rows) csv += r + '\n';
  CommandResult res;
  res.text = csv;
  res.files.emplace_back("sweep.csv", csv);
  res.report = {{"points", points.size()}, {"rows", rows}};
  return res;
}

CommandResult do_export(const ExportOpts& o, Json& config) {
  const auto text = read_file(o.input);
  config = {{"input", o.input}, {"input_sha256", sha256_hex(text)}, {"format", o.format}};
  const auto set = read_vector_set(o.input);
  CommandResult res;
  if (o.format == "dimacs") {
    res.text = to_dimacs(OrthoGraph::from_vectors(set, GraphMode::non_orthogonality));
    res.files.emplace_back("graph.dimacs", res.text);
    res.report = {{"format", "dimacs"}, {"vertices", set.size()}};
  } else if (o.format == "json") {
    res.report = {{"vectors", to_json(std::span<const FpVector>(set))}};
  } else {
    throw PreconditionError("unknown format '" + o.format + "'");
  }
  return res;
}

/// Writes run.json and extra files under out_dir/<hash prefix>/, then the manifest.
fs::path persist(const std::string& out_dir, const std::string& command, const Json& config, const CommandResult& res) {
  Json doc;
  doc["command"] = command;
  doc["config"] = config;
  doc["report"] = res.report;
  const std::string run_text = doc.dump(2) + "\n";
  const std::string hash = sha256_hex(run_text);
  const fs::path dir = fs::path(out_dir) / hash.substr(0, 16);
  fs::create_directories(dir);

  Json files;
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    files[name] = sha256_hex(content);
  };
  write("run.json", run_text);
  for (const auto& [name, content] : res.files) write(name, content);

  Json manifest;
  manifest["tool"] = "nos";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["files"] = files;
  manifest["created"] = utc_timestamp();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  return dir;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
  return os.str();
}

std::vector<std::uint64_t> parse_range(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-') throw PreconditionError("bad range '" + text + "'");
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto a = number(text.substr(0, dots));
    const auto b = number(text.substr(dots + 2));
    for (auto v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nearly orthogonal vector sets over prime fields"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML or INI file; sections name subcommands, flags win");
  app.require_subcommand(1);
  std::string out_dir = "out";
  bool no_save = false;
  app.add_option("--out", out_dir, "directory for run directories")->capture_default_str();
  app.add_flag("--no-save", no_save, "print the report without writing a run directory");

  ConstructOpts co;
  auto* construct = app.add_subcommand("construct", "randomized tensor-power construction");
  construct->add_option("--p", co.p, "field size (prime)")->capture_default_str();
  construct->add_option("--t", co.t, "base dimension");
  construct->add_option("--m", co.m, "tensor power");
  construct->add_option("--n", co.n, "samples per attempt");
  construct->add_option("--k", co.k, "near-orthogonality parameter")->required();
  construct->add_option("--d", co.d, "output dimension (default t^m)");
  construct->add_option("--mode", co.mode, "clique or bipartite")->capture_default_str();
  construct->add_option("--seed", co.seed, "master seed")->capture_default_str();
  construct->add_option("--max-retries", co.max_retries, "attempt limit")->capture_default_str();
  construct->add_option("--schedule", co.schedule, "derive t, m, n from k and d: f2 or fp");
  construct->add_option("--budget", co.budget, "k-subset budget for bipartite checks")->capture_default_str();

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "check a vector set exactly");
  verify->add_option("--input", vo.input, "vector set JSON")->required();
  verify->add_option("--k", vo.k, "near-orthogonality parameter")->required();
  verify->add_option("--mode", vo.mode, "clique or bipartite")->capture_default_str();
  verify->add_option("--budget", vo.budget, "k-subset budget for bipartite checks")->capture_default_str();

  SpectralOpts so;
  auto* spectral = app.add_subcommand("spectral", "spectrum of the orthogonality graph of F_p^t");
  spectral->add_option("--p", so.p, "field size (prime)")->capture_default_str();
  spectral->add_option("--t", so.t, "dimension")->required();
  spectral->add_option("--mixing-samples", so.mixing_samples, "random subset pairs for the mixing check");
  spectral->add_flag("--cross", so.cross, "also check the cross product bound");
  spectral->add_option("--restarts", so.restarts, "local search starts for the cross bound")->capture_default_str();
  spectral->add_option("--seed", so.seed, "seed for sampled checks")->capture_default_str();
  spectral->add_option("--format", so.format, "json, dimacs or matrix")->capture_default_str();

  CoversOpts vo2;
  auto* covers = app.add_subcommand("covers", "subspace covers of non-orthogonal sets");
  covers->add_option("--op", vo2.op, "f2cover, gcheck, pair or count-f2")->required();
  covers->add_option("--p", vo2.p, "field size (prime)")->capture_default_str();
  covers->add_option("--t", vo2.t, "dimension");
  covers->add_option("--input", vo2.input, "vector set JSON");
  covers->add_option("--input2", vo2.input2, "second vector set JSON (pair)");
  covers->add_option("--budget", vo2.budget, "pair budget for gcheck")->capture_default_str();

  CountOpts cn;
  auto* count = app.add_subcommand("count", "count pairwise non-orthogonal sets in F_p^t");
  count->add_option("--p", cn.p, "field size (prime)")->capture_default_str();
  count->add_option("--t", cn.t, "dimension")->required();

  SweepOpts sw;
  auto* sweep = app.add_subcommand("sweep", "run construct over a parameter grid, CSV summary");
  sweep->add_option("--p", sw.p, "primes, list or range")->capture_default_str();
  sweep->add_option("--t", sw.t, "range a..b or list a,b")->required();
  sweep->add_option("--m", sw.m, "range or list")->capture_default_str();
  sweep->add_option("--n", sw.n, "range or list")->capture_default_str();
  sweep->add_option("--k", sw.k, "range or list")->required();
  sweep->add_option("--d", sw.d, "output dimension (default t^m per point)");
  sweep->add_option("--mode", sw.mode, "clique or bipartite")->capture_default_str();
  sweep->add_option("--seeds", sw.seeds, "seed list or range")->capture_default_str();
  sweep->add_option("--max-retries", sw.max_retries, "attempt limit per point")->capture_default_str();
  sweep->add_option("--max-points", sw.max_points, "grid size limit")->capture_default_str();
  sweep->add_option("--budget", sw.budget, "k-subset budget for bipartite checks")->capture_default_str();

  ExportOpts eo;
  auto* exp = app.add_subcommand("export", "convert a vector set to DIMACS or canonical JSON");
  exp->add_option("--input", eo.input, "vector set JSON")->required();
  exp->add_option("--format", eo.format, "dimacs or json")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsage;
  }

  std::string command;
  try {
    Json config;
    CommandResult res;
    if (construct->parsed()) {
      command = "construct";
      res = do_construct(co, config);
    } else if (verify->parsed()) {
      command = "verify";
      res = do_verify(vo, config);
    } else if (spectral->parsed()) {
      command = "spectral";
      res = do_spectral(so, config);
    } else if (covers->parsed()) {
      command = "covers";
      res = do_covers(vo2, config);
    } else if (count->parsed()) {
      command = "count";
      res = do_count(cn, config);
    } else if (sweep->parsed()) {
      command = "sweep";
      res = do_sweep(sw, config);
    } else {
      command = "export";
      res = do_export(eo, config);
    }
    if (!res.text.empty())
      out << res.text;
    else
      out << res.report.dump(2) << '\n';
    if (!no_save) err << "run directory: " << persist(out_dir, command, config, res).string() << '\n';
    return res.code;
  } catch (const PreconditionError& e) {
    err << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const GuardrailExceeded& e) {
    err << command << ": guardrail: " << e.what() << '\n';
    return kInconclusive;
  } catch (const BudgetExceeded& e) {
    err << command << ": budget: " << e.what() << '\n';
    return kInconclusive;
  } catch (const NumericalError& e) {
    err << command << ": numerical: " << e.what() << '\n';
    return kInconclusive;
  } catch (const InternalError& e) {
    err << command << ": check failed: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace nos::cli
