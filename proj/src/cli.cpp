#include "nilosc/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nilosc/extension.hpp"
#include "nilosc/heisenberg.hpp"
#include "nilosc/io.hpp"
#include "nilosc/polyseq.hpp"

namespace nilosc::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<PreciseReal> parse_reals(const std::string& s) {
  std::vector<PreciseReal> out;
  for (const auto& item : split_list(s)) out.push_back(PreciseReal::parse(item));
  if (out.empty()) throw ParseError("expected at least one constant");
  return out;
}

std::vector<CirclePoint> parse_points(const std::string& s) {
  std::vector<CirclePoint> out;
  for (const auto& r : parse_reals(s)) out.push_back(CirclePoint::wrap(r));
  return out;
}

std::size_t parse_count(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad length '" + s + "'");
  }
  if (used != s.size() || v < 0 || v != std::floor(v) || v > 1e15) throw ParseError("bad length '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_schedule(const std::string& s, bool strictly_increasing) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) out.push_back(parse_count(item));
  if (out.empty()) throw ParseError("empty length schedule");
  if (strictly_increasing)
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i] <= out[i - 1]) throw ParseError("length schedule must be strictly increasing");
  return out;
}

std::string describe(const SequenceSpec& s) {
  if (s.kind == "bracket") {
    if (!s.bracket.empty()) return "bracket: " + s.bracket;
    return "bracket: phi=exp(m=" + std::to_string(s.character) + "); a=[" + s.alpha + "]; b=[" + s.beta + "]";
  }
  if (s.kind == "poly-phase" || s.kind == "affine") return s.kind + ": P=[" + s.poly + "]";
  if (s.kind == "omega")
    return "omega: m=" + std::to_string(s.character) + "; alpha=[" + s.alpha + "]; beta=[" + s.beta + "]; gamma=" + s.gamma;
  if (s.kind == "extension")
    return "extension: alpha=" + s.alpha + "; p=" + std::to_string(s.tower) + "; seed=" + std::to_string(s.seed);
  if (s.kind == "quasi-eigen") return "quasi-eigen: theta=[" + s.theta + "]; fx=" + s.fx;
  return s.kind + ": seed=" + std::to_string(s.seed);
}

ExtensionState extension_start(const SequenceSpec& spec) {
  if (spec.tower == 0) throw ParseError("extension needs --p >= 1");
  return {BasePoint{CirclePoint{}}, std::vector<CirclePoint>(spec.tower), choose_lambda(spec.seed)};
}

struct Output {
  std::optional<std::ofstream> file;
  std::ostream* stream;

  Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (!path.empty() && path != "-") {
      file.emplace(path, std::ios::binary);
      if (!*file) throw ParseError("cannot open output file '" + path + "'");
      stream = &*file;
    }
  }
  std::ostream& operator*() { return *stream; }
};

struct Common {
  unsigned precision = kDefaultPrecisionBits;
  std::string out;
  std::string format;
  bool dump_config = false;
};

io::Format resolve_format(const Common& c, io::Format fallback) {
  if (!c.format.empty()) return io::parse_format(c.format);
  if (auto f = io::format_from_path(c.out)) return *f;
  return fallback;
}

json common_config(const Common& c, const std::string& command, io::Format fmt) {
  static const char* names[] = {"jsonl", "json", "csv"};
  return {{"command", command},
          {"precision_bits", precision_bits()},
          {"guard_bits", guard_bits()},
          {"output", c.out.empty() ? "-" : c.out},
          {"format", names[static_cast<int>(fmt)]}};
}

void add_sequence_options(CLI::App* cmd, SequenceSpec& spec, const std::string& kind_flag) {
  cmd->add_option(kind_flag, spec.kind, "sequence family")
      ->check(CLI::IsMember({"bracket", "poly-phase", "omega", "extension", "quasi-eigen", "affine", "random", "heisenberg"}));
  cmd->add_option("--alpha", spec.alpha, "alpha (comma list for m > 1); rotation number for extension");
  cmd->add_option("--beta", spec.beta, "beta (comma list for m > 1)");
  cmd->add_option("--gamma", spec.gamma, "gamma");
  cmd->add_option("--bracket", spec.bracket, "compact bracket form, e.g. \"phi=exp(m=1); a=[sqrt(2)]; b=[sqrt(3)]\"");
  cmd->add_option("--poly", spec.poly, "polynomial coefficients c_0, c_1, ...");
  cmd->add_option("--theta", spec.theta, "quasi-eigen phases theta_0, ..., theta_{k-1}");
  cmd->add_option("--fx", spec.fx, "phase of f(x) for quasi-eigen sequences");
  cmd->add_option("--char", spec.character, "character index m in e(m x)");
  cmd->add_option("--p", spec.tower, "tower height of the extension");
  cmd->add_option("--seed", spec.seed, "seed for lambda / random sequences");
}

// --- orbit -------------------------------------------------------------------

struct OrbitArgs {
  SequenceSpec spec{.kind = "heisenberg"};
  std::string N;
  std::string coords = "malcev2";
};

class RecordWriter {
 public:
  RecordWriter(std::ostream& os, io::Format fmt, json header, std::vector<std::string> columns)
      : os_(os), fmt_(fmt), header_(std::move(header)), columns_(std::move(columns)) {
    if (fmt_ == io::Format::jsonl) {
      os_ << header_.dump() << "\n";
    } else if (fmt_ == io::Format::csv) {
      for (auto& [k, v] : header_.items()) os_ << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << "\n";
    }
  }

  /// rec holds fields in column order; array fields expand to several CSV cells.
  void write(const json& rec) {
    if (fmt_ == io::Format::jsonl) {
      os_ << rec.dump() << "\n";
    } else if (fmt_ == io::Format::json) {
      records_.push_back(rec);
    } else {
      bool first = true;
      for (auto& [k, v] : rec.items()) {
        auto emit = [&](const json& cell) {
          os_ << (first ? "" : ",") << (cell.is_string() ? cell.get<std::string>() : cell.dump());
          first = false;
        };
        if (v.is_array())
          for (const auto& cell : v) emit(cell);
        else
          emit(v);
      }
      os_ << "\n";
    }
  }

  void finish() {
    if (fmt_ == io::Format::json) {
      json doc = header_;
      doc["records"] = std::move(records_);
      os_ << doc.dump(2) << "\n";
    }
  }

 private:
  std::ostream& os_;
  io::Format fmt_;
  json header_;
  std::vector<std::string> columns_;
  json records_ = json::array();
};

json ordered_record(std::initializer_list<std::pair<const char*, json>> fields) {
  json j = json::object();
  for (const auto& [k, v] : fields) j[k] = v;
  return j;
}

int cmd_orbit(const Common& common, const OrbitArgs& a, std::ostream& out) {
  const std::size_t N = parse_count(a.N);
  const io::Format fmt = resolve_format(common, io::Format::jsonl);
  json header = {{"schema", io::kOrbitSchema}, {"system", a.spec.kind}, {"precision_bits", precision_bits()}};
  if (common.dump_config) {
    header["config"] = common_config(common, "orbit", fmt);
    header["config"]["sequence"] = to_json(a.spec);
    header["config"]["N"] = N;
    header["config"]["coords"] = a.coords;
  }
  Output sink(common.out, out);
  const auto& spec = a.spec;

  if (spec.kind == "heisenberg") {
    auto alpha = parse_reals(spec.alpha);
    auto beta = parse_reals(spec.beta);
    auto gamma = PreciseReal::parse(spec.gamma);
    if (alpha.size() != beta.size()) throw DimensionMismatch("--alpha and --beta differ in length");
    const std::size_t m = alpha.size();
    Coordinates conv = a.coords == "first" || a.coords == "first_kind" ? Coordinates::first_kind : Coordinates::malcev2;
    if (m > 1 && conv == Coordinates::malcev2) throw ParseError("second-kind coordinates are only available for m = 1");
    header["system"] = m == 1 ? "heisenberg" : "heisenberg_m";
    header["m"] = m;
    header["coords"] = to_string(conv);
    std::vector<std::string> cols{"n"};
    for (std::size_t i = 0; i < 2 * m + 1; ++i) cols.push_back("c" + std::to_string(i + 1));
    RecordWriter w(*sink, fmt, header, cols);
    for (std::size_t n = 0; n < N; ++n) {
      FundamentalPoint p;
      if (m == 1 && conv == Coordinates::malcev2)
        p = orbit_origin_malcev2(MalcevIIElement{alpha[0], beta[0], gamma}, n);
      else if (m == 1)
        p = orbit_point(HeisenbergElement{alpha[0], beta[0], gamma}, FundamentalPoint::origin(), n);
      else
        p = orbit_point(HeisenbergMElement{alpha, beta, gamma}, FundamentalPoint::origin(m), n);
      w.write(ordered_record({{"n", n}, {"coords", io::format_points(p.coords)}}));
    }
    w.finish();
    return kOk;
  }

  if (spec.kind == "extension") {
    BaseSystem base = circle_rotation(CirclePoint::parse(spec.alpha));
    ExtensionState s0 = extension_start(spec);
    header["p"] = spec.tower;
    header["lambda"] = io::format_point(s0.lambda);
    std::vector<std::string> cols{"n", "x1"};
    for (std::size_t j = 1; j <= spec.tower; ++j) cols.push_back("z" + std::to_string(j));
    RecordWriter w(*sink, fmt, header, cols);
    for (std::size_t n = 0; n < N; ++n) {
      auto s = power_closed_form(base, s0, n);
      w.write(ordered_record({{"n", n}, {"x", io::format_points(s.x)}, {"z", io::format_points(s.z)}}));
    }
    w.finish();
    return kOk;
  }

  if (spec.kind == "affine") {
    auto A = poly_to_affine(PhasePoly::parse(spec.poly));
    header["dimension"] = A.dimension();
    std::vector<std::string> cols{"n"};
    for (std::size_t i = 0; i < A.dimension(); ++i) cols.push_back("y" + std::to_string(i + 1));
    RecordWriter w(*sink, fmt, header, cols);
    auto y = A.y0();
    for (std::size_t n = 0; n < N; ++n) {
      w.write(ordered_record({{"n", n}, {"y", io::format_points(y)}}));
      y = A.apply(y);
    }
    w.finish();
    return kOk;
  }

  header["schema"] = io::kSequenceSchema;
  header["sequence"] = describe(spec);
  Sequence seq = build_sequence(spec, N);
  RecordWriter w(*sink, fmt, header, {"n", "re", "im"});
  for (std::size_t n = 0; n < N; ++n) w.write(ordered_record({{"n", n}, {"re", seq[n].real()}, {"im", seq[n].imag()}}));
  w.finish();
  return kOk;
}

// --- oscillate -------------------------------------------------------------------

struct OscillateArgs {
  SequenceSpec spec;
  std::string N;
  std::size_t degree = 2;
  std::size_t grid = 0;
  std::size_t fft_size = 0;
  std::vector<std::string> inject;
  std::optional<double> max_slack;
};

int cmd_oscillate(const Common& common, const OscillateArgs& a, std::ostream& out, std::ostream& err) {
  const auto schedule = parse_schedule(a.N, true);
  const io::Format fmt = resolve_format(common, io::Format::json);
  GridSpec grid;
  grid.points_per_coeff = a.grid;
  grid.fft_size = a.fft_size;
  grid.max_slack = a.max_slack;
  for (const auto& p : a.inject) grid.injected.push_back(PhasePoly::parse(p));

  Sequence seq = build_sequence(a.spec, schedule.back());
  OscillationReport report;
  report.sequence = describe(a.spec);
  for (std::size_t N : schedule) {
    if (N == 0) throw ParseError("lengths must be positive");
    report.add(sup_over_degree(seq, N, a.degree, grid));
  }
  std::optional<DecayFit> fit;
  std::string fit_note;
  try {
    fit = decay_fit(report);
  } catch (const DegenerateFit& e) {
    fit_note = e.what();
    err << "note: no decay fit: " << e.what() << "\n";
  }

  json config;
  if (common.dump_config) {
    config = common_config(common, "oscillate", fmt);
    config["sequence"] = to_json(a.spec);
    config["N"] = schedule;
    config["degree"] = a.degree;
    config["grid"] = {{"points_per_coeff", a.grid ? a.grid : default_points_per_coeff(a.degree)},
                      {"fft_size", a.fft_size},
                      {"inject", a.inject},
                      {"max_slack", a.max_slack ? json(*a.max_slack) : json(nullptr)}};
  }
  Output sink(common.out, out);
  if (fmt == io::Format::csv) {
    std::vector<std::string> comments{"degree=" + std::to_string(a.degree)};
    if (!config.is_null()) comments.push_back("config=" + config.dump());
    *sink << io::report_to_csv(report, fit, comments);
  } else {
    json doc = io::report_to_json(report, fit);
    if (!fit_note.empty()) doc["fit_note"] = fit_note;
    if (!config.is_null()) doc["config"] = config;
    *sink << (fmt == io::Format::jsonl ? doc.dump() : doc.dump(2)) << "\n";
  }
  return kOk;
}

// --- vdc -----------------------------------------------------------------------

struct VdcArgs {
  SequenceSpec spec{.kind = "random"};
  std::string N = "100,1000";
  std::string H = "0,1,10";
  std::string phase_alpha = "0";
};

int cmd_vdc(const Common& common, const VdcArgs& a, std::ostream& out, std::ostream& err) {
  const auto Ns = parse_schedule(a.N, false);
  const auto Hs = parse_schedule(a.H, false);
  const io::Format fmt = resolve_format(common, io::Format::csv);
  const PhasePoly P({CirclePoint{}, CirclePoint::parse(a.phase_alpha)});
  std::size_t maxN = 0;
  for (auto n : Ns) maxN = std::max(maxN, n);
  Sequence seq = build_sequence(a.spec, maxN);

  json rows = json::array();
  int status = kOk;
  for (std::size_t N : Ns) {
    for (std::size_t H : Hs) {
      try {
        auto r = van_der_corput_check(seq, N, H, P);
        rows.push_back(ordered_record({{"N", N}, {"H", H}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}}));
      } catch (const BadWindow& e) {
        err << "rejected row N=" << N << " H=" << H << ": " << e.what() << "\n";
        status = kUsage;
      } catch (const EmptyRange& e) {
        err << "rejected row N=" << N << " H=" << H << ": " << e.what() << "\n";
        status = kUsage;
      }
    }
  }

  json header = {{"schema", io::kVdcSchema}, {"sequence", describe(a.spec)}, {"alpha", a.phase_alpha},
                 {"tolerance", kVanDerCorputTolerance}};
  if (common.dump_config) {
    header["config"] = common_config(common, "vdc", fmt);
    header["config"]["sequence"] = to_json(a.spec);
    header["config"]["N"] = Ns;
    header["config"]["H"] = Hs;
  }
  Output sink(common.out, out);
  if (fmt == io::Format::csv) {
    for (auto& [k, v] : header.items()) *sink << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    *sink << "N,H,lhs,rhs,holds\n";
    for (const auto& r : rows)
      *sink << r["N"].get<std::size_t>() << ',' << r["H"].get<std::size_t>() << ',' << io::format_double(r["lhs"].get<double>())
            << ',' << io::format_double(r["rhs"].get<double>()) << ',' << (r["holds"].get<bool>() ? "true" : "false")
            << "\n";
  } else {
    header["rows"] = rows;
    *sink << (fmt == io::Format::jsonl ? header.dump() : header.dump(2)) << "\n";
  }
  return status;
}

}  // namespace

json to_json(const SequenceSpec& s) {
  return {{"kind", s.kind},   {"alpha", s.alpha}, {"beta", s.beta},   {"gamma", s.gamma},
          {"bracket", s.bracket}, {"poly", s.poly},   {"theta", s.theta}, {"fx", s.fx},
          {"char", s.character},  {"p", s.tower},     {"seed", s.seed}};
}

Sequence build_sequence(const SequenceSpec& spec, std::size_t N) {
  Sequence w;
  w.reserve(N);
  const auto& k = spec.kind;
  if (k == "bracket") {
    BracketForm form = spec.bracket.empty()
                           ? BracketForm{parse_reals(spec.alpha), parse_reals(spec.beta), TrigObservable::character(spec.character)}
                           : BracketForm::parse(spec.bracket);
    if (form.alpha.size() != form.beta.size()) throw DimensionMismatch("--alpha and --beta differ in length");
    for (std::size_t n = 0; n < N; ++n) w.push_back(bracket_eval(form, n));
  } else if (k == "poly-phase") {
    PhasePoly P = PhasePoly::parse(spec.poly);
    for (std::size_t n = 0; n < N; ++n) w.push_back(poly_phase(P, n));
  } else if (k == "omega" || k == "heisenberg") {
    OmegaSequence omega(parse_reals(spec.alpha), parse_reals(spec.beta), PreciseReal::parse(spec.gamma));
    const mpz_class m(spec.character);
    for (std::size_t n = 0; n < N; ++n) w.push_back(unit_exp(scale_mod1(m, omega(n))));
  } else if (k == "extension") {
    BaseSystem base = circle_rotation(CirclePoint::parse(spec.alpha));
    w = observe(base, extension_start(spec), tower_character(spec.tower), N);
  } else if (k == "quasi-eigen") {
    QuasiEigenData Q{parse_points(spec.theta)};
    CirclePoint fx = CirclePoint::parse(spec.fx);
    for (std::size_t n = 0; n < N; ++n) w.push_back(quasi_eigen_orbit(Q, fx, n));
  } else if (k == "affine") {
    auto A = poly_to_affine(PhasePoly::parse(spec.poly));
    auto y = A.y0();
    for (std::size_t n = 0; n < N; ++n) {
      w.push_back(affine_observable(y));
      y = A.apply(y);
    }
  } else if (k == "random") {
    std::mt19937_64 gen(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n = 0; n < N; ++n) {
      double r = std::sqrt(unit(gen));
      double t = unit(gen);
      w.push_back(std::polar(r, 2.0 * M_PI * t));
    }
  } else {
    throw ParseError("unknown sequence family '" + k + "'");
  }
  return w;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nilosc: Heisenberg nilsystems, tower extensions and oscillation of Weyl averages"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--precision", common.precision, "fixed-point precision in bits (>= 128)")
        ->envname(kPrecisionEnv)
        ->check(CLI::Range(kMinPrecisionBits, 1u << 16));
    cmd->add_option("--out,-o", common.out, "output path (default stdout)");
    cmd->add_option("--format", common.format, "jsonl | json | csv (default from extension)");
    cmd->add_flag("--dump-config", common.dump_config, "embed the resolved configuration in the output header");
  };

  OrbitArgs orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "stream orbit records of a system or sequence");
  add_common(orbit_cmd);
  add_sequence_options(orbit_cmd, orbit.spec, "--system");
  orbit_cmd->add_option("--N", orbit.N, "number of records")->required();
  orbit_cmd->add_option("--coords", orbit.coords, "first | malcev2 (Heisenberg, m = 1)")
      ->check(CLI::IsMember({"first", "first_kind", "malcev2"}));

  OscillateArgs osc;
  auto* osc_cmd = app.add_subcommand("oscillate", "certified suprema of Weyl averages over a length schedule");
  add_common(osc_cmd);
  add_sequence_options(osc_cmd, osc.spec, "--sequence");
  osc_cmd->add_option("--N", osc.N, "length schedule, e.g. 1000,10000,100000")->required();
  osc_cmd->add_option("--degree,-d", osc.degree, "polynomial degree d");
  osc_cmd->add_option("--grid", osc.grid, "grid points per coefficient of degree >= 2");
  osc_cmd->add_option("--fft-size", osc.fft_size, "DFT length for the degree-1 sweep");
  osc_cmd->add_option("--inject", osc.inject, "extra polynomial c_0,c_1,... evaluated exactly (repeatable)");
  osc_cmd->add_option("--max-slack", osc.max_slack, "fail with exit 4 when the slack exceeds this");

  VdcArgs vdc;
  auto* vdc_cmd = app.add_subcommand("vdc", "evaluate both sides of the Van der Corput inequality");
  add_common(vdc_cmd);
  add_sequence_options(vdc_cmd, vdc.spec, "--sequence");
  vdc_cmd->add_option("--N", vdc.N, "lengths");
  vdc_cmd->add_option("--H", vdc.H, "window sizes");
  vdc_cmd->add_option("--phase-alpha", vdc.phase_alpha, "alpha of the linear phase e(n alpha)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    configure_precision(common.precision);
    if (orbit_cmd->parsed()) return cmd_orbit(common, orbit, out);
    if (osc_cmd->parsed()) return cmd_oscillate(common, osc, out, err);
    return cmd_vdc(common, vdc, out, err);
  } catch (const GridTooCoarse& e) {
    err << "error: " << e.what() << "\n";
    return kGridTooCoarse;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nilosc::cli
