#include "cfdyn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cfdyn/attractor.hpp"
#include "cfdyn/csv.hpp"
#include "cfdyn/density.hpp"
#include "cfdyn/entropy.hpp"
#include "cfdyn/expansion.hpp"
#include "cfdyn/map_io.hpp"
#include "cfdyn/maps.hpp"
#include "cfdyn/matching.hpp"
#include "cfdyn/natext.hpp"
#include "cfdyn/parallel.hpp"
#include "cfdyn/reproduce.hpp"
#include "cfdyn/rng.hpp"

namespace cfdyn::cli {

namespace {

using nlohmann::json;

struct Context {
  std::string command;
  std::ostream& out;
  std::ostream& err;
};

/// Output file, or the caller's stream when the path is empty or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }
  bool to_file() const { return os_ == &file_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (file_.fail()) throw std::runtime_error("writing '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

// The summary goes to stdout unless stdout already carries the data.
std::ostream& summary_stream(const Sink& sink, Context& ctx) { return sink.to_file() ? ctx.out : ctx.err; }

void write_meta(CsvWriter& w, const Context& ctx, std::optional<std::uint64_t> seed = std::nullopt) {
  w.meta("command", ctx.command);
  if (seed) w.meta("seed", std::to_string(*seed));
  w.meta("version", kVersion);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

struct MapSelect {
  std::string name;
  std::string json_path;
  int N = 2;
  double alpha = 0.0;
  CLI::Option* n_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
};

void add_map_options(CLI::App* app, MapSelect& m) {
  app->add_option("--map", m.name, "Named map (" + [] {
    std::string s;
    for (const auto& n : named_map_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }() + ")");
  app->add_option("--map-json", m.json_path, "Map description file {N, domain, branches}");
  m.n_opt = app->add_option("--N", m.N, "Modulus N of the greedy map T_{alpha,N}");
  m.alpha_opt = app->add_option("--alpha", m.alpha, "Parameter alpha of the greedy map");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CFMap resolve_map(const MapSelect& m) {
  const bool greedy = m.alpha_opt->count() > 0;
  const int chosen = int(!m.name.empty()) + int(!m.json_path.empty()) + int(greedy);
  if (chosen != 1) throw CLI::ValidationError("map", "give exactly one of --map, --map-json, or --alpha (with --N)");
  if (!m.name.empty()) return named_map(m.name);
  if (!m.json_path.empty()) return map_from_json(read_file(m.json_path));
  return greedy_alpha(m.N, m.alpha);
}

std::vector<double> parse_range(const std::string& text, const std::string& option) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  try {
    if (parts.size() != 3) throw std::invalid_argument("parts");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const long steps = std::stol(parts[2]);
    if (steps < 1 || hi < lo) throw std::invalid_argument("order");
    return linear_grid(lo, hi, static_cast<std::size_t>(steps));
  } catch (const std::logic_error&) {
    throw CLI::ValidationError(option, "expected lo:hi:steps with lo <= hi and steps >= 1, got '" + text + "'");
  }
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> word;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    try {
      word.push_back(std::stoi(p));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--check-cylinder", "expected comma-separated digits, got '" + text + "'");
    }
  }
  return word;
}

// ---------------------------------------------------------------------------
// expand

struct ExpandArgs {
  MapSelect map;
  double x = 0.0;
  std::size_t n = 20;
  std::string out;
};

int run_expand(const ExpandArgs& a, Context& ctx) {
  const CFMap T = resolve_map(a.map);
  const DigitSequence seq = expand(T, a.x, a.n);
  Sink sink(a.out, ctx.out);
  CsvWriter w(sink.stream());
  write_meta(w, ctx);
  w.meta("x", format_double(a.x));
  w.header({"k", "digit", "epsilon", "convergent", "abs_error"});
  for (std::size_t k = 1; k <= seq.entries.size(); ++k) {
    std::span<const DigitEntry> head(seq.entries.data(), k);
    double conv = std::numeric_limits<double>::quiet_NaN();
    try {
      conv = evaluate(seq.N, head);
    } catch (const EvaluationError&) {
    }
    w.row({std::to_string(k), std::to_string(head.back().digit), std::to_string(head.back().epsilon),
           format_double(conv), format_double(std::abs(conv - a.x))});
  }
  sink.close();
  summary_stream(sink, ctx) << "expand: x=" << format_double(a.x) << " " << seq.shorthand()
                            << (seq.clamped ? " (orbit clamped to the domain)" : "") << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// density

struct DensityArgs {
  MapSelect map;
  std::string method = "gkl";
  int iters = -1;
  std::size_t grid = 1000;
  std::size_t points = 2500;
  std::size_t repeats = 400;
  std::size_t resample = 1;
  std::uint64_t seed = 1;
  std::string analytic;
  std::string compare;
  std::string out;
};

AnalyticDensity resolve_analytic(const std::string& explicit_name, const MapSelect& m) {
  if (!explicit_name.empty()) {
    if (explicit_name == "plateau" || explicit_name == "theorem2") {
      if (!m.alpha_opt->count()) throw CLI::ValidationError("--analytic", "plateau needs --alpha");
      return analytic_density(explicit_name, m.alpha);
    }
    return analytic_density(explicit_name);
  }
  if (!m.name.empty()) return analytic_density(m.name);
  if (m.alpha_opt->count() && m.N == 2) {
    if (std::abs(m.alpha - (std::sqrt(2.0) - 1.0)) < 1e-15) return analytic_density("two_exp_sqrt2");
    return analytic_density("plateau", m.alpha);
  }
  throw CLI::ValidationError("--analytic", "no closed-form density known for this map; name one with --analytic");
}

int run_density(const DensityArgs& a, Context& ctx) {
  if (a.grid == 0) throw CLI::ValidationError("--grid", "must be positive");
  const CFMap T = resolve_map(a.map);
  std::optional<std::uint64_t> seed;
  std::string note;
  std::optional<DensityEstimate> estimate;

  if (a.method == "gkl") {
    GklDiagnostics diag;
    estimate = gkl_density(T, a.iters < 0 ? 10 : a.iters, a.grid, &diag);
    note = "cylinders=" + std::to_string(diag.cylinders) + " raw_mass=" + format_double(diag.raw_mass);
  } else if (a.method == "histogram") {
    HistogramOptions h;
    h.n_points = a.points;
    h.n_iters = a.iters < 0 ? 20 : static_cast<std::size_t>(a.iters);
    h.n_repeats = a.repeats;
    h.resample_rounds = a.resample;
    h.grid_cells = a.grid;
    h.seed = a.seed;
    estimate = histogram_density(T, h);
    seed = a.seed;
  } else if (a.method == "analytic") {
    const AnalyticDensity f = resolve_analytic(a.analytic, a.map);
    DensityEstimate grid = DensityEstimate::uniform(f.domain(), a.grid);
    for (std::size_t i = 0; i < grid.cells(); ++i) grid.values[i] = f(grid.x_mid(i));
    estimate = std::move(grid);
    note = f.normalizable() ? "normalizable" : "not normalizable, raw values";
  } else {
    throw CLI::ValidationError("--method", "expected gkl, histogram or analytic, got '" + a.method + "'");
  }

  std::string l2;
  if (!a.compare.empty()) {
    const AnalyticDensity f = resolve_analytic(a.compare, a.map);
    l2 = format_double(l2_distance(*estimate, f));
  }

  Sink sink(a.out, ctx.out);
  CsvWriter w(sink.stream());
  write_meta(w, ctx, seed);
  w.meta("method", a.method);
  if (!note.empty()) w.meta("note", note);
  if (!l2.empty()) w.meta("l2_to_" + a.compare, l2);
  w.header({"x_mid", "density"});
  for (std::size_t i = 0; i < estimate->cells(); ++i) w.row({estimate->x_mid(i), estimate->values[i]});
  sink.close();
  auto& s = summary_stream(sink, ctx);
  s << "density: method=" << a.method << " cells=" << estimate->cells();
  if (!note.empty()) s << " " << note;
  if (!l2.empty()) s << " l2=" << l2;
  s << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// natext

struct NatextArgs {
  MapSelect map;
  std::string model;
  std::size_t simulate = 0;
  std::size_t burn = 1000;
  bool solve = false;
  bool verify = false;
  std::uint64_t seed = 1;
  std::string out;
};

int run_natext(const NatextArgs& a, Context& ctx) {
  const int modes = int(a.simulate > 0) + int(a.solve) + int(a.verify);
  if (modes != 1) throw CLI::ValidationError("natext", "give exactly one of --simulate, --solve-heights, --verify");
  std::optional<double> alpha;
  if (a.map.alpha_opt->count()) alpha = a.map.alpha;

  if (a.simulate > 0) {
    const CFMap T = a.model.empty() ? resolve_map(a.map) : natext_model(a.model, alpha).map.base();
    const NatExtMap nat(T);
    Rng rng(a.seed);
    const Point start{rng.uniform(T.domain().lo(), T.domain().hi()), 0.0};
    const std::vector<Point> pts = simulate_domain(nat, start, a.burn, a.simulate);
    Sink sink(a.out, ctx.out);
    CsvWriter w(sink.stream());
    write_meta(w, ctx, a.seed);
    w.header({"x", "y"});
    for (const auto& p : pts) w.row({p.x, p.y});
    sink.close();
    summary_stream(sink, ctx) << "natext: " << pts.size() << " points after " << a.burn << " burn-in steps\n";
    return 0;
  }

  if (a.model.empty()) throw CLI::ValidationError("--model", "--solve-heights and --verify need a named domain model");
  json doc;
  doc["model"] = a.model;
  doc["version"] = kVersion;
  std::string line;
  if (a.solve) {
    const HeightSystem sys = named_height_system(a.model);
    const HeightSolution sol = solve_heights(sys);
    doc["N"] = sys.N;
    for (const auto& [k, v] : sol.values) doc["heights"][k] = number(v);
    doc["iterations"] = sol.iterations;
    doc["residual"] = number(sol.residual);
    line = "natext: solved " + std::to_string(sol.values.size()) + " heights in " + std::to_string(sol.iterations) +
           " sweeps, residual " + format_double(sol.residual);
  } else {
    const NatExtModel m = natext_model(a.model, alpha);
    const BijectivityReport r = verify_bijectivity(m.map, m.domain);
    for (const auto& [k, v] : m.heights) doc["heights"][k] = number(v);
    if (alpha) doc["alpha"] = *alpha;
    doc["overlap"] = r.overlap;
    doc["gap"] = r.gap;
    doc["excess"] = r.excess;
    doc["skipped"] = r.skipped;
    const bool ok = !r.skipped && r.worst() < 1e-10;
    doc["bijective"] = ok;
    line = "natext: " + std::string(r.skipped ? "unbounded domain, area test skipped"
                                              : (ok ? "bijective" : "NOT bijective")) +
           " overlap=" + format_double(r.overlap) + " gap=" + format_double(r.gap) +
           " excess=" + format_double(r.excess);
  }
  Sink sink(a.out, ctx.out);
  sink.stream() << doc.dump(2) << '\n';
  sink.close();
  summary_stream(sink, ctx) << line << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// entropy

struct EntropyArgs {
  int N = 2;
  double alpha = 0.0;
  CLI::Option* alpha_opt = nullptr;
  std::string range;
  std::string method = "birkhoff";
  EntropyBudget budget;
  std::string out;
};

int run_entropy(const EntropyArgs& a, Context& ctx) {
  if (bool(a.alpha_opt->count()) == !a.range.empty())
    throw CLI::ValidationError("entropy", "give exactly one of --alpha, --alpha-range");
  const std::vector<double> alphas = a.range.empty() ? std::vector<double>{a.alpha} : parse_range(a.range, "--alpha-range");
  const EntropyMethod method = parse_entropy_method(a.method);
  const EntropyCurve curve = entropy_sweep(a.N, alphas, method, a.budget);

  Sink sink(a.out, ctx.out);
  CsvWriter w(sink.stream());
  write_meta(w, ctx, a.budget.seed);
  w.meta("N", std::to_string(a.N));
  w.meta("method", to_string(method));
  std::size_t failed = 0;
  for (const auto& s : curve.samples) {
    if (!s.error.empty()) {
      ++failed;
      w.meta("failed", "alpha=" + format_double(s.alpha) + " " + s.error);
    }
  }
  w.header({"alpha", "h", "stderr"});
  for (const auto& s : curve.samples) w.row({s.alpha, s.h, s.std_error});
  sink.close();
  summary_stream(sink, ctx) << "entropy: " << curve.samples.size() - failed << "/" << curve.samples.size()
                            << " samples, method " << to_string(method) << '\n';
  if (failed) {
    ctx.err << "entropy: " << failed << " samples failed, see the 'failed' metadata lines\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// matching

struct MatchingArgs {
  int N = 2;
  MatchingScanOptions opt;
  std::string records;
  std::string out;
};

int run_matching(const MatchingArgs& a, Context& ctx) {
  const MatchingScan scan = scan_matching(a.N, a.opt);
  Sink sink(a.out, ctx.out);
  CsvWriter w(sink.stream());
  write_meta(w, ctx, a.opt.seed);
  w.meta("N", std::to_string(a.N));
  w.meta("tol", format_double(a.opt.tol));
  w.meta("sampled", std::to_string(scan.sampled));
  w.meta("skipped", std::to_string(scan.skipped));
  std::vector<std::string> head{"M\\K"};
  for (int K = 1; K <= a.opt.max_exp; ++K) head.push_back(std::to_string(K));
  w.row(head);
  for (int M = 1; M <= a.opt.max_exp; ++M) {
    std::vector<std::string> row{std::to_string(M)};
    for (int K = 1; K <= a.opt.max_exp; ++K) row.push_back(scan.observed(M, K) ? "1" : "0");
    w.row(row);
  }
  sink.close();
  if (!a.records.empty()) {
    Sink rec(a.records, ctx.out);
    for (const auto& r : scan.minimal) {
      json j{{"N", r.N}, {"alpha", r.alpha}, {"K", r.K}, {"M", r.M}, {"residual", r.residual}};
      rec.stream() << j.dump() << '\n';
    }
    rec.close();
  }
  std::size_t cells = 0;
  for (int M = 1; M <= a.opt.max_exp; ++M)
    for (int K = 1; K <= a.opt.max_exp; ++K) cells += scan.observed(M, K);
  summary_stream(sink, ctx) << "matching: " << scan.sampled << " samples (" << scan.skipped << " skipped), "
                            << scan.minimal.size() << " matched, " << cells << " exponent pairs observed\n";
  return 0;
}

// ---------------------------------------------------------------------------
// attractor

struct AttractorArgs {
  int N = 9;
  double alpha = 0.0;
  CLI::Option* alpha_opt = nullptr;
  std::string range;
  std::string cylinder;
  std::string threshold;
  double expand_x = 0.0;
  CLI::Option* expand_opt = nullptr;
  std::size_t digits = 20;
  AttractorOptions opt;
  std::string out;
};

int run_attractor(const AttractorArgs& a, Context& ctx) {
  if (!a.threshold.empty()) {
    const auto colon = a.threshold.find(':');
    int lo = 0, hi = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("colon");
      lo = std::stoi(a.threshold.substr(0, colon));
      hi = std::stoi(a.threshold.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--threshold", "expected lo:hi, got '" + a.threshold + "'");
    }
    const auto rows = attractor_threshold_check(lo, hi);
    Sink sink(a.out, ctx.out);
    CsvWriter w(sink.stream());
    write_meta(w, ctx);
    w.header({"N", "alpha", "two_branches", "gap", "strict_printed", "strict_corrected"});
    for (const auto& r : rows) {
      w.row({std::to_string(r.N), format_double(r.alpha), std::to_string(int(r.two_branches)), std::to_string(int(r.gap)),
             std::to_string(int(r.strict_printed())), std::to_string(int(r.strict_corrected()))});
    }
    sink.close();
    summary_stream(sink, ctx) << "attractor: threshold check for N=" << lo << ".." << hi << '\n';
    return 0;
  }

  if (bool(a.alpha_opt->count()) == !a.range.empty())
    throw CLI::ValidationError("attractor", "give exactly one of --alpha, --alpha-range");

  if (a.expand_opt->count()) {
    if (a.range.size()) throw CLI::ValidationError("--expand", "needs a single --alpha");
    const DigitSequence seq = endpoint_expansions(a.N, a.alpha, a.expand_x, a.digits);
    Sink sink(a.out, ctx.out);
    sink.stream() << seq.shorthand() << '\n';
    sink.close();
    return 0;
  }

  if (a.range.empty()) {
    const AttractorResult res = find_attractor(a.N, a.alpha, a.opt);
    std::string cyl;
    if (!a.cylinder.empty()) {
      const std::vector<int> word = parse_word(a.cylinder);
      const IntervalSet c = cylinder_interval(a.N, a.alpha, word);
      cyl = c.empty() ? "cylinder [" + a.cylinder + "] is empty"
                      : "cylinder [" + a.cylinder + "] = [" + format_double(c.hull().lo()) + ", " +
                            format_double(c.hull().hi()) + "] " +
                            (cylinder_in_holes(a.N, a.alpha, word, res.holes) ? "lies in a hole" : "meets the support");
    }
    Sink sink(a.out, ctx.out);
    CsvWriter w(sink.stream());
    write_meta(w, ctx, a.opt.seed);
    w.meta("N", std::to_string(a.N));
    for (const auto& h : res.holes.parts()) w.meta("hole", "[" + format_double(h.lo()) + ", " + format_double(h.hi()) + "]");
    w.header({"alpha", "lo", "hi"});
    for (const auto& p : res.support.parts()) w.row({a.alpha, p.lo(), p.hi()});
    sink.close();
    auto& s = summary_stream(sink, ctx);
    s << "attractor: N=" << a.N << " alpha=" << format_double(a.alpha) << " support measure "
      << format_double(res.support.measure()) << ", " << res.holes.size() << " holes, " << res.steps << " steps";
    if (!cyl.empty()) s << "; " << cyl;
    s << '\n';
    return 0;
  }

  if (!a.cylinder.empty()) throw CLI::ValidationError("--check-cylinder", "needs a single --alpha");
  const std::vector<double> alphas = parse_range(a.range, "--alpha-range");
  const auto rows = attractor_sweep(a.N, alphas, a.opt);
  Sink sink(a.out, ctx.out);
  CsvWriter w(sink.stream());
  write_meta(w, ctx, a.opt.seed);
  w.meta("N", std::to_string(a.N));
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++failed;
      w.meta("failed", "alpha=" + format_double(r.alpha) + " " + r.error);
    }
  }
  w.header({"alpha", "lo", "hi"});
  for (const auto& r : rows)
    for (const auto& p : r.support.parts()) w.row({r.alpha, p.lo(), p.hi()});
  sink.close();
  summary_stream(sink, ctx) << "attractor: " << rows.size() - failed << "/" << rows.size() << " alphas for N=" << a.N
                            << '\n';
  if (failed) {
    ctx.err << "attractor: " << failed << " alphas failed, see the 'failed' metadata lines\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  std::string id;
  std::string out_dir = ".";
  bool long_jobs = false;
};

int run_reproduce(const ReproduceArgs& a, Context& ctx) {
  ReproduceOptions opt;
  opt.out_dir = a.out_dir;
  opt.long_jobs = a.long_jobs;
  opt.command = ctx.command;
  const ReproduceReport rep = reproduce(a.id, opt);
  std::size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.pass;
  ctx.out << "reproduce " << rep.id << ": " << passed << "/" << rep.checks.size() << " checks passed, "
          << rep.files.size() << " files in " << a.out_dir << '\n';
  for (const auto& c : rep.checks)
    if (!c.pass) ctx.err << "FAIL " << c.name << ": " << c.detail << '\n';
  return rep.pass() ? 0 : 2;
}

// Arguments echoed into metadata; thread count and output paths are left out
// so identical jobs produce identical files.
std::string echo(const std::vector<std::string>& args) {
  static const std::vector<std::string> skip{"--threads", "--out", "--out-dir", "--records"};
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    bool dropped = false;
    for (const auto& k : skip) {
      if (args[i] == k) {
        ++i;
        dropped = true;
      } else if (args[i].rfind(k + "=", 0) == 0) {
        dropped = true;
      }
    }
    if (dropped) continue;
    if (!s.empty()) s += ' ';
    s += args[i];
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued-fraction map dynamics: expansions, invariant densities, natural extensions, entropy, "
               "matching and attractors.",
               "cfdyn"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: CFDYN_THREADS, else all cores)");

  ExpandArgs ea;
  auto* expand_cmd = app.add_subcommand("expand", "Digits and convergents of x");
  add_map_options(expand_cmd, ea.map);
  expand_cmd->add_option("--x", ea.x, "Point to expand")->required();
  expand_cmd->add_option("--n", ea.n, "Number of digits")->capture_default_str();
  expand_cmd->add_option("--out", ea.out, "CSV output (default stdout)");

  DensityArgs da;
  auto* density_cmd = app.add_subcommand("density", "Invariant density on a uniform grid");
  add_map_options(density_cmd, da.map);
  density_cmd->add_option("--method", da.method, "gkl, histogram or analytic")->capture_default_str();
  density_cmd->add_option("--iters", da.iters, "GKL depth (default 10) or histogram iterations (default 20)");
  density_cmd->add_option("--grid", da.grid, "Number of cells")->capture_default_str();
  density_cmd->add_option("--points", da.points, "Histogram: orbits per repeat")->capture_default_str();
  density_cmd->add_option("--repeats", da.repeats, "Histogram: repeats")->capture_default_str();
  density_cmd->add_option("--resample", da.resample, "Histogram: resampling rounds")->capture_default_str();
  density_cmd->add_option("--seed", da.seed, "Histogram: RNG seed")->capture_default_str();
  density_cmd->add_option("--analytic", da.analytic, "Closed-form density for --method analytic");
  density_cmd->add_option("--compare", da.compare, "Report the L2 distance to this closed-form density");
  density_cmd->add_option("--out", da.out, "CSV output (default stdout)");

  NatextArgs na;
  auto* natext_cmd = app.add_subcommand("natext", "Natural extension: point clouds, heights, bijectivity");
  add_map_options(natext_cmd, na.map);
  natext_cmd->add_option("--model", na.model, "Known domain: four_exp_12, four_exp_15, four_exp_24, two_exp_sqrt2, plateau");
  natext_cmd->add_option("--simulate", na.simulate, "Number of orbit points to write");
  natext_cmd->add_option("--burn", na.burn, "Discarded steps before recording")->capture_default_str();
  natext_cmd->add_flag("--solve-heights", na.solve, "Solve the height system of --model");
  natext_cmd->add_flag("--verify", na.verify, "Check that --model's domain is tiled by its image");
  natext_cmd->add_option("--seed", na.seed, "RNG seed for the start point")->capture_default_str();
  natext_cmd->add_option("--out", na.out, "Output file (default stdout)");

  EntropyArgs ta;
  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of T_{alpha,N}");
  entropy_cmd->add_option("--N", ta.N, "Modulus")->capture_default_str();
  ta.alpha_opt = entropy_cmd->add_option("--alpha", ta.alpha, "Single alpha");
  entropy_cmd->add_option("--alpha-range", ta.range, "lo:hi:steps, inclusive");
  entropy_cmd->add_option("--method", ta.method, "birkhoff or rohlin-gkl")->capture_default_str();
  entropy_cmd->add_option("--orbits", ta.budget.n_orbits, "Birkhoff orbits")->capture_default_str();
  entropy_cmd->add_option("--iters", ta.budget.n_iters, "Birkhoff steps per orbit")->capture_default_str();
  entropy_cmd->add_option("--burn", ta.budget.burn_in, "Birkhoff burn-in")->capture_default_str();
  entropy_cmd->add_option("--gkl-iters", ta.budget.gkl_iters, "GKL depth for rohlin-gkl")->capture_default_str();
  entropy_cmd->add_option("--grid", ta.budget.grid_cells, "GKL cells for rohlin-gkl")->capture_default_str();
  entropy_cmd->add_option("--seed", ta.budget.seed, "RNG seed")->capture_default_str();
  entropy_cmd->add_option("--out", ta.out, "CSV output (default stdout)");

  MatchingArgs ma;
  auto* matching_cmd = app.add_subcommand("matching", "Scan random alphas for matching exponents");
  matching_cmd->add_option("--N", ma.N, "Modulus")->capture_default_str();
  matching_cmd->add_option("--samples", ma.opt.n_samples, "Random alphas")->capture_default_str();
  matching_cmd->add_option("--max-exp", ma.opt.max_exp, "Largest exponent")->capture_default_str();
  matching_cmd->add_option("--tol", ma.opt.tol, "Matching tolerance")->capture_default_str();
  matching_cmd->add_option("--seed", ma.opt.seed, "RNG seed")->capture_default_str();
  matching_cmd->add_option("--records", ma.records, "JSON lines of the smallest match per alpha");
  matching_cmd->add_option("--out", ma.out, "Table CSV output (default stdout)");

  AttractorArgs aa;
  auto* attractor_cmd = app.add_subcommand("attractor", "Support of the invariant measure of T_{alpha,N}");
  attractor_cmd->add_option("--N", aa.N, "Modulus")->capture_default_str();
  aa.alpha_opt = attractor_cmd->add_option("--alpha", aa.alpha, "Single alpha");
  attractor_cmd->add_option("--alpha-range", aa.range, "lo:hi:steps, inclusive");
  attractor_cmd->add_option("--check-cylinder", aa.cylinder, "Digit word such as 1,1,2; reports whether it lies in a hole");
  attractor_cmd->add_option("--threshold", aa.threshold, "lo:hi; two-branch and strict-attractor table at sqrt(N)-1");
  aa.expand_opt = attractor_cmd->add_option("--expand", aa.expand_x, "Print the expansion of this point");
  attractor_cmd->add_option("--digits", aa.digits, "Digits for --expand")->capture_default_str();
  attractor_cmd->add_option("--max-steps", aa.opt.max_steps, "Growth steps before giving up")->capture_default_str();
  attractor_cmd->add_option("--seeds", aa.opt.n_seeds, "Seed intervals")->capture_default_str();
  attractor_cmd->add_option("--seed", aa.opt.seed, "RNG seed")->capture_default_str();
  attractor_cmd->add_option("--out", aa.out, "CSV output (default stdout)");

  ReproduceArgs ra;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate the data and checks for one figure or table");
  reproduce_cmd->add_option("id", ra.id, "fig5 fig6 fig7 fig8 fig9 fig10 fig12 fig13 table1 thm1 thm2 corollary")
      ->required()
      ->check(CLI::IsMember(reproduce_ids()));
  reproduce_cmd->add_option("--out-dir", ra.out_dir, "Directory for the artifacts")->capture_default_str();
  reproduce_cmd->add_flag("--long", ra.long_jobs, "Include the slow optional jobs");

  std::vector<const char*> argv{"cfdyn"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  set_thread_count(threads);
  Context ctx{echo(args), out, err};
  try {
    if (expand_cmd->parsed()) return run_expand(ea, ctx);
    if (density_cmd->parsed()) return run_density(da, ctx);
    if (natext_cmd->parsed()) return run_natext(na, ctx);
    if (entropy_cmd->parsed()) return run_entropy(ta, ctx);
    if (matching_cmd->parsed()) return run_matching(ma, ctx);
    if (attractor_cmd->parsed()) return run_attractor(aa, ctx);
    if (reproduce_cmd->parsed()) return run_reproduce(ra, ctx);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace cfdyn::cli
