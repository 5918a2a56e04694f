#include "epr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "epr/analytics.hpp"
#include "epr/mc_engine.hpp"
#include "epr/rng.hpp"

namespace epr::cli {

namespace {

constexpr double kDegToRad = kPi / 180.0;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string fmt_exact(double v) { return fmt("%.17g", v); }
std::string fmt_value(double v) { return fmt("%.12g", v); }
std::string fmt_degrees(double v) { return fmt("%.6f", v); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": '" + s + "' is not a number");
  }
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_double(text.substr(start, end - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

nlohmann::ordered_json meta_json(const Metadata& meta) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  return m;
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string csv_header(const Metadata& meta) {
  std::string s;
  for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
  return s;
}

// --- option handling -------------------------------------------------------

struct Options {
  std::string command;
  std::string model = "entangled";
  std::string engine = "analytic";
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned streams = 1;
  std::string phase_window;
  double accidental_rate = 0.0;
  std::string out;
  std::string format = "csv";
  std::string config;
  std::string grid;
  double a0 = 0.70710678118654752440;
  double a1 = 0.70710678118654752440;
  std::string detector = "I";
  double a_deg = 0.0;
  double b_deg = 0.0;
  std::string angles = "0,45,22.5,67.5";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "Source model")
      ->check(CLI::IsMember({"entangled", "disentangled"}));
  sub->add_option("--engine", o.engine, "Evaluation engine")
      ->check(CLI::IsMember({"analytic", "montecarlo"}));
  sub->add_option("--trials", o.trials, "Monte Carlo trials per evaluation")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "64-bit seed");
  sub->add_option("--streams", o.streams, "Independent trial blocks")->check(CLI::Range(1u, 4096u));
  sub->add_option("--phase-window", o.phase_window, "Phase-matching half-width in degrees, or 'off'");
  sub->add_option("--accidental-rate", o.accidental_rate, "Accidental coincidence probability per trial")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--out", o.out, "Output path (default: standard output)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", o.config, "key=value file; command-line flags take precedence");
}

double phase_window_degrees(const std::string& text, double fallback_deg) {
  if (text.empty()) return fallback_deg;
  if (text == "off" || text == "inf") return std::numeric_limits<double>::infinity();
  const double deg = parse_double(text, "--phase-window");
  if (deg < 0.0) throw ValidationError("--phase-window must be >= 0");
  return deg;
}

std::string phase_window_text(double window_deg) {
  return std::isinf(window_deg) ? "off" : fmt_exact(window_deg);
}

SourceModel to_model(const std::string& name) {
  if (name == "entangled") return EntangledPair{BellKind::PsiMinus};
  return DisentangledEnsemble{};
}

// Inserts "--key value" tokens from a flat key=value file ahead of the
// command-line flags, so later (command-line) values win.
std::vector<std::string> expand_config(const std::vector<std::string>& argv) {
  std::string path;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--config" && i + 1 < argv.size()) path = argv[i + 1];
    if (argv[i].rfind("--config=", 0) == 0) path = argv[i].substr(9);
  }
  if (path.empty() || argv.empty()) return argv;

  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key == "config") continue;
    injected.push_back("--" + key);
    injected.push_back(trim(std::string_view(t).substr(eq + 1)));
  }
  std::vector<std::string> out;
  out.push_back(argv[0]);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), argv.begin() + 1, argv.end());
  return out;
}

struct Run {
  Options opt;
  SourceModel model;
  Engine engine = Engine::Analytic;
  Format format = Format::Csv;
  McConfig mc;
  double window_deg = 0.0;
  Metadata meta;
  std::vector<std::string> rerun;  // canonical flags after the command name
};

void base_metadata(Run& r) {
  r.meta.emplace_back("tool", std::string(kToolName));
  r.meta.emplace_back("version", std::string(kVersion));
  r.meta.emplace_back("command", r.opt.command);
  r.meta.emplace_back("model", r.opt.model);
  r.meta.emplace_back("engine", r.opt.engine);
  r.meta.emplace_back("seed", std::to_string(r.mc.seed));
  r.meta.emplace_back("trials", std::to_string(r.mc.trials));
  r.meta.emplace_back("streams", std::to_string(r.mc.streams));
  r.meta.emplace_back("phase_window_deg", phase_window_text(r.window_deg));
  r.meta.emplace_back("accidental_rate", fmt_exact(r.mc.accidental_rate));
  r.meta.emplace_back("rng", std::string(RandomStream::kAlgorithm));

  r.rerun = {"--model",   r.opt.model,
             "--engine",  r.opt.engine,
             "--format",  r.opt.format,
             "--trials",  std::to_string(r.mc.trials),
             "--seed",    std::to_string(r.mc.seed),
             "--streams", std::to_string(r.mc.streams),
             "--phase-window", phase_window_text(r.window_deg),
             "--accidental-rate", fmt_exact(r.mc.accidental_rate)};
}

void add_param(Run& r, const std::string& key, const std::string& flag, const std::string& value) {
  r.meta.emplace_back(key, value);
  r.rerun.push_back(flag);
  r.rerun.push_back(value);
}

void finish_metadata(Run& r) {
  std::string line = std::string(kToolName) + " " + r.opt.command;
  for (const auto& tok : r.rerun) line += " " + tok;
  r.meta.emplace_back("rerun", line);
}

void write_output(const std::string& bytes, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << bytes;
    out.flush();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + opt.out + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + opt.out + "'");
}

// --- subcommands -------------------------------------------------------------

std::string run_curve(Run& r, ExperimentKind kind, const std::string& default_grid) {
  const std::string grid_spec = r.opt.grid.empty() ? default_grid : r.opt.grid;
  const std::vector<double> grid_deg = parse_grid_degrees(grid_spec);
  std::vector<double> grid_rad;
  grid_rad.reserve(grid_deg.size());
  for (double d : grid_deg) grid_rad.push_back(d * kDegToRad);

  SweepParams params;
  add_param(r, "grid", "--grid", grid_spec);
  if (kind == ExperimentKind::GisinTriple) {
    params.a0 = r.opt.a0;
    params.a1 = r.opt.a1;
    add_param(r, "a0", "--a0", fmt_exact(params.a0));
    add_param(r, "a1", "--a1", fmt_exact(params.a1));
  } else {
    params.detector = r.opt.detector == "I" ? KimDetector::I : KimDetector::II;
    add_param(r, "detector", "--detector", r.opt.detector);
  }
  finish_metadata(r);

  const std::optional<McConfig> mc =
      r.engine == Engine::MonteCarlo ? std::optional<McConfig>(r.mc) : std::nullopt;
  const Curve curve = sweep(kind, r.model, grid_rad, r.engine, params, mc);

  std::vector<CurveRow> rows;
  rows.reserve(curve.points.size());
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    rows.push_back({grid_deg[i], curve.points[i].y, curve.points[i].std_err});
  }
  return emit_curve(rows, r.meta, r.format);
}

std::string run_zeilinger(Run& r) {
  const std::string grid_spec = r.opt.grid.empty() ? "zeilinger-table1" : r.opt.grid;
  if (grid_spec != "zeilinger-table1") {
    throw ValidationError("zeilinger: the only supported grid is 'zeilinger-table1'");
  }
  add_param(r, "grid", "--grid", grid_spec);
  finish_metadata(r);

  struct Cell {
    Diagonal alice, bob;
    const char* name;
  };
  const Cell cells[] = {{Diagonal::Plus, Diagonal::Plus, "alice+45/bob+45"},
                        {Diagonal::Plus, Diagonal::Minus, "alice+45/bob-45"},
                        {Diagonal::Minus, Diagonal::Plus, "alice-45/bob+45"},
                        {Diagonal::Minus, Diagonal::Minus, "alice-45/bob-45"}};

  std::vector<QuantityRow> rows;
  for (std::size_t i = 0; i < 4; ++i) {
    const ZeilingerSettings s{cells[i].alice, cells[i].bob};
    if (r.engine == Engine::Analytic) {
      rows.push_back({cells[i].name, zeilinger_rate(r.model, s.alice, s.bob), std::nullopt});
    } else {
      McConfig cfg = r.mc;
      cfg.seed = derive_seed(r.mc.seed, i);
      const TripleEstimate est = run_triple_coincidence(s, r.model, cfg);
      rows.push_back({cells[i].name, est.value, est.std_err});
    }
  }

  const double matched = rows[0].value;
  const double mismatched = rows[1].value;
  if (!(matched > 0.0)) throw ConsistencyError("zeilinger: matched rate is zero");
  QuantityRow rel{"relative_intensity", mismatched / matched, std::nullopt};
  if (r.engine == Engine::MonteCarlo) {
    const double sm = *rows[1].std_err;
    const double sn = *rows[0].std_err;
    rel.std_err = std::sqrt(sm * sm / (matched * matched) +
                            mismatched * mismatched * sn * sn / (matched * matched * matched * matched));
  }
  rows.push_back(rel);
  return emit_quantities(rows, r.meta, r.format, {rel});
}

std::string run_aspect(Run& r) {
  add_param(r, "a_deg", "--a", fmt_exact(r.opt.a_deg));
  add_param(r, "b_deg", "--b", fmt_exact(r.opt.b_deg));
  finish_metadata(r);

  const PolarizerSetting a(r.opt.a_deg * kDegToRad);
  const PolarizerSetting b(r.opt.b_deg * kDegToRad);
  std::vector<QuantityRow> rows;
  QuantityRow e{"E", 0.0, std::nullopt};
  if (r.engine == Engine::Analytic) {
    const ChannelProbabilities p = aspect_probabilities(r.model, a, b);
    rows = {{"P_pp", p.pp, std::nullopt},
            {"P_pm", p.pm, std::nullopt},
            {"P_mp", p.mp, std::nullopt},
            {"P_mm", p.mm, std::nullopt}};
    e.value = p.correlation();
  } else {
    const CoincidenceCounts c = run_double_coincidence(r.model, a, b, r.mc);
    auto count = [](std::uint64_t n) { return static_cast<double>(n); };
    rows = {{"n_pp", count(c.n_pp), std::nullopt},
            {"n_pm", count(c.n_pm), std::nullopt},
            {"n_mp", count(c.n_mp), std::nullopt},
            {"n_mm", count(c.n_mm), std::nullopt},
            {"n_trials", count(c.n_trials), std::nullopt},
            {"n_accidental", count(c.n_accidental), std::nullopt}};
    const CorrelationEstimate est = correlation_from_counts(c);
    e.value = est.value;
    e.std_err = est.std_err;
  }
  rows.push_back(e);
  return emit_quantities(rows, r.meta, r.format, {e});
}

std::string run_chsh(Run& r) {
  const std::vector<double> deg = parse_list(r.opt.angles, "--angles");
  if (deg.size() != 4) throw ValidationError("--angles needs exactly four values: a,a',b,b'");
  add_param(r, "angles_deg", "--angles", r.opt.angles);
  finish_metadata(r);

  const double a = deg[0] * kDegToRad, a2 = deg[1] * kDegToRad;
  const double b = deg[2] * kDegToRad, b2 = deg[3] * kDegToRad;
  const std::pair<double, double> terms[4] = {{a, b}, {a, b2}, {a2, b}, {a2, b2}};
  const char* names[4] = {"E_ab", "E_ab'", "E_a'b", "E_a'b'"};

  std::vector<QuantityRow> rows;
  double var = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (r.engine == Engine::Analytic) {
      rows.push_back({names[k], correlation_analytic(r.model, terms[k].first, terms[k].second),
                      std::nullopt});
    } else {
      McConfig cfg = r.mc;
      cfg.seed = derive_seed(r.mc.seed, k);
      const CorrelationEstimate est = correlation_from_counts(run_double_coincidence(
          r.model, PolarizerSetting(terms[k].first), PolarizerSetting(terms[k].second), cfg));
      rows.push_back({names[k], est.value, est.std_err});
      var += est.std_err * est.std_err;
    }
  }
  QuantityRow s{"S", chsh(rows[0].value, rows[1].value, rows[2].value, rows[3].value), std::nullopt};
  if (r.engine == Engine::MonteCarlo) s.std_err = std::sqrt(var);
  rows.push_back(s);
  return emit_quantities(rows, r.meta, r.format, {s});
}

std::string run_rate(Run& r) {
  finish_metadata(r);
  const double w = r.mc.phase_window;
  const double analytic = std::min(w, kPi) / kPi;
  std::vector<QuantityRow> rows;
  rows.push_back({"window_deg", r.window_deg, std::nullopt});
  QuantityRow rate{"rate", analytic, std::nullopt};
  if (r.engine == Engine::MonteCarlo) {
    rate.value = estimate_detection_rate(w, r.mc.trials, r.mc.seed, r.mc.streams);
    rate.std_err = std::sqrt(rate.value * (1.0 - rate.value) / static_cast<double>(r.mc.trials));
  }
  rows.push_back(rate);
  rows.push_back({"analytic_rate", analytic, std::nullopt});
  return emit_quantities(rows, r.meta, r.format, {rate});
}

std::string execute(Run& r) {
  const std::string& c = r.opt.command;
  if (c == "gisin") return run_curve(r, ExperimentKind::GisinTriple, "gisin-figure1");
  if (c == "kim") return run_curve(r, ExperimentKind::KimCompleteBsm, "kim-figure3");
  if (c == "zeilinger") return run_zeilinger(r);
  if (c == "aspect") return run_aspect(r);
  if (c == "chsh") return run_chsh(r);
  return run_rate(r);
}

}  // namespace

std::vector<double> parse_grid_degrees(std::string_view text) {
  const std::string s = trim(text);
  if (s == "gisin-figure1" || s == "kim-figure3") return parse_grid_degrees("0:360:64");
  if (s.empty()) throw ValidationError("--grid is empty");

  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos) {
      throw ValidationError("--grid: expected START:STOP:N");
    }
    const double start = parse_double(std::string_view(s).substr(0, c1), "--grid start");
    const double stop = parse_double(std::string_view(s).substr(c1 + 1, c2 - c1 - 1), "--grid stop");
    const double count = parse_double(std::string_view(s).substr(c2 + 1), "--grid count");
    if (count < 1.0 || count != std::floor(count) || count > 1e6) {
      throw ValidationError("--grid: N must be a positive integer");
    }
    if (!(stop > start)) throw ValidationError("--grid: STOP must exceed START");
    const auto n = static_cast<std::size_t>(count);
    const double step = (stop - start) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(start + step * static_cast<double>(i));
  } else {
    grid = parse_list(s, "--grid");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ValidationError("--grid must be strictly increasing");
  }
  return grid;
}

std::string emit_curve(const std::vector<CurveRow>& rows, const Metadata& meta, Format format) {
  if (rows.empty()) throw ValidationError("emit: refusing to write an empty curve");
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["meta"] = meta_json(meta);
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      doc["points"].push_back({{"x", row.x_deg}, {"y", row.y}, {"stderr", optional_number(row.std_err)}});
    }
    return doc.dump(2) + "\n";
  }
  std::string s = csv_header(meta);
  s += "x,y,stderr\n";
  for (const auto& row : rows) {
    s += fmt_degrees(row.x_deg) + "," + fmt_value(row.y) + "," +
         (row.std_err ? fmt_value(*row.std_err) : std::string()) + "\n";
  }
  return s;
}

std::string emit_quantities(const std::vector<QuantityRow>& rows, const Metadata& meta,
                            Format format, const std::vector<QuantityRow>& results) {
  if (rows.empty()) throw ValidationError("emit: refusing to write an empty table");
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["meta"] = meta_json(meta);
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      doc["points"].push_back({{"quantity", row.quantity},
                               {"value", std::isinf(row.value) ? nlohmann::ordered_json("inf")
                                                               : nlohmann::ordered_json(row.value)},
                               {"stderr", optional_number(row.std_err)}});
    }
    if (!results.empty()) {
      nlohmann::ordered_json res = nlohmann::ordered_json::object();
      for (const auto& q : results) res[q.quantity] = q.value;
      doc["results"] = res;
    }
    return doc.dump(2) + "\n";
  }
  std::string s = csv_header(meta);
  s += "quantity,value,stderr\n";
  for (const auto& row : rows) {
    s += row.quantity + "," + fmt_value(row.value) + "," +
         (row.std_err ? fmt_value(*row.std_err) : std::string()) + "\n";
  }
  return s;
}

std::vector<CurveRow> parse_curve_csv(std::string_view text) {
  std::vector<CurveRow> rows;
  bool header_seen = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "x,y,stderr") throw ValidationError("curve CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ValidationError("curve CSV: malformed row '" + line + "'");
    }
    CurveRow row;
    row.x_deg = parse_double(std::string_view(line).substr(0, c1), "x");
    row.y = parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), "y");
    const std::string_view se = std::string_view(line).substr(c2 + 1);
    if (!se.empty()) row.std_err = parse_double(se, "stderr");
    rows.push_back(row);
  }
  return rows;
}

Metadata parse_csv_metadata(std::string_view text) {
  Metadata meta;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
  }
  return meta;
}

int run_command(const std::vector<std::string>& raw_argv, std::ostream& out, std::ostream& err) {
  Run run;
  Options& o = run.opt;

  CLI::App app{"Coincidence-experiment simulator for entangled and disentangled photon pairs",
               std::string(kToolName)};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* aspect = app.add_subcommand("aspect", "Double-coincidence polarizer correlation");
  add_common(aspect, o);
  aspect->add_option("--a", o.a_deg, "Polarizer a in degrees");
  aspect->add_option("--b", o.b_deg, "Polarizer b in degrees");

  auto* gisin = app.add_subcommand("gisin", "Triple-coincidence curve versus analyzer phase beta");
  add_common(gisin, o);
  gisin->add_option("--grid", o.grid, "START:STOP:N degrees, comma list, or gisin-figure1");
  gisin->add_option("--a0", o.a0, "Amplitude of |+> in Bob's analyzer state");
  gisin->add_option("--a1", o.a1, "Amplitude of |-> in Bob's analyzer state");

  auto* zeil = app.add_subcommand("zeilinger", "Teleportation rates for +-45 degree inputs");
  add_common(zeil, o);
  zeil->add_option("--grid", o.grid, "zeilinger-table1");

  auto* kim = app.add_subcommand("kim", "Complete Bell-state measurement versus analyzer angle");
  add_common(kim, o);
  kim->add_option("--detector", o.detector, "Alice detector")->check(CLI::IsMember({"I", "II"}));
  kim->add_option("--grid", o.grid, "START:STOP:N degrees, comma list, or kim-figure3");

  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH combination of four correlations");
  add_common(chsh_cmd, o);
  chsh_cmd->add_option("--angles", o.angles, "a,a',b,b' in degrees");

  auto* rate = app.add_subcommand("rate", "Phase-matching detection rate");
  add_common(rate, o);

  try {
    const std::vector<std::string> argv = expand_config(raw_argv);
    std::vector<const char*> cargv;
    cargv.push_back(kToolName.data());
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (const CLI::CallForVersion& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kUsageError;
    }

    o.command = app.get_subcommands().front()->get_name();
    run.model = to_model(o.model);
    run.engine = o.engine == "analytic" ? Engine::Analytic : Engine::MonteCarlo;
    run.format = o.format == "json" ? Format::Json : Format::Csv;
    run.mc.trials = o.trials;
    run.mc.seed = o.seed;
    run.mc.streams = o.streams;
    run.mc.accidental_rate = o.accidental_rate;
    run.window_deg = phase_window_degrees(
        o.phase_window, o.command == "rate" ? 0.58 : std::numeric_limits<double>::infinity());
    run.mc.phase_window = run.window_deg * kDegToRad;
    run.mc.validate();

    base_metadata(run);
    const std::string bytes = execute(run);
    write_output(bytes, o, out);
    return kOk;
  } catch (const IoError& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace epr::cli
