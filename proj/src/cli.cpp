#include "kerrspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kerrspec/horizon.hpp"

namespace kerrspec::cli {

namespace {

using json = nlohmann::ordered_json;
using horizon::PhysicalParams;
using horizon::SmarrShape;

constexpr int kMinNumericModes = 24;
constexpr double kClosedFormTolerance = 1e-12;
constexpr double kNumericTolerance = 1e-3;
constexpr int kProfileSamples = 101;

struct Common {
  std::string format;
  std::string out_path;
};

struct Physical {
  double m = 1.0;
  double a = 0.0;
  double e = 0.0;
  PhysicalParams params() const { return {m, a, e}; }
};

struct Numeric {
  int count = 60;
  int basis_size = 0;
  int window = 0;
  int resolved_basis() const { return basis_size > 0 ? basis_size : spectral::default_basis_size(count); }
  int resolved_window() const { return window > 0 ? window : spectral::default_tail_window(count); }
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out_path, "Write output to PATH instead of stdout");
}

void add_physical(CLI::App* sub, Physical& p) {
  sub->add_option("-m,--mass", p.m, "Mass m (geometric units, G = c = 1)")->required();
  sub->add_option("-a,--spin", p.a, "Spin per unit mass a (length)");
  sub->add_option("-e,--charge", p.e, "Charge e (length)");
}

void add_numeric(CLI::App* sub, Numeric& n) {
  sub->add_option("-J,--modes", n.count, "Eigenvalues per channel")->check(CLI::PositiveNumber);
  sub->add_option("-N,--basis", n.basis_size, "Galerkin basis size (default 2J+16)");
}

json shape_json(const SmarrShape& s) { return json{{"eta2", s.eta2}, {"beta2", s.beta2}}; }

json params_json(const PhysicalParams& p) { return json{{"m", p.m}, {"a", p.a}, {"e", p.e}}; }

json estimate_json(const spectral::TraceEstimate& t) {
  return json{{"k", t.k},
              {"gamma", t.value},
              {"partial_sum", t.partial_sum},
              {"tail_correction", t.tail_correction},
              {"modes_used", t.modes_used}};
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + c.out_path + " for writing");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_numeric_modes(const Numeric& n) {
  if (n.count < kMinNumericModes) {
    throw CLI::ValidationError("-J", "trace estimation needs J >= 24");
  }
}

std::string comment_shape(const SmarrShape& s) {
  return "# eta2=" + format_number(s.eta2) + " beta2=" + format_number(s.beta2) + "\n";
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  const double v = parse_number(text);
  if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "not an integer: " + std::string(text));
  return static_cast<int>(v);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// key=value pairs from a '#' comment line.
std::map<std::string, std::string> parse_comment(std::string_view line) {
  std::map<std::string, std::string> kv;
  line.remove_prefix(1);
  std::istringstream words{std::string(line)};
  std::string word;
  while (words >> word) {
    const auto eq = word.find('=');
    if (eq != std::string::npos) kv[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return kv;
}

bool is_header_row(std::string_view line) { return !line.empty() && line.front() == 'k'; }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  return in;
}

// ---- commands -------------------------------------------------------------

std::string cmd_forward(const Physical& p, const Common& c) {
  const auto valid = horizon::validate(p.params());
  const auto shape = horizon::smarr_from_physical(p.params());
  const auto f = horizon::profile(shape);

  std::vector<double> xs(kProfileSamples);
  for (int i = 0; i < kProfileSamples; ++i) {
    xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (kProfileSamples - 1);
  }

  if (c.format == "csv") {
    std::string text = comment_shape(shape) + "x,f,K\n";
    for (double x : xs) {
      text += format_number(x) + "," + format_number(f(x)) + "," +
              format_number(horizon::gauss_curvature(shape, x)) + "\n";
    }
    return text;
  }

  json table = json::array();
  for (double x : xs) {
    table.push_back(json{{"x", x}, {"f", f(x)}, {"K", horizon::gauss_curvature(shape, x)}});
  }
  json shape_j = shape_json(shape);
  shape_j["curvature"] = json{{"south_pole", horizon::gauss_curvature(shape, -1.0)},
                              {"equator", horizon::gauss_curvature(shape, 0.0)},
                              {"north_pole", horizon::gauss_curvature(shape, 1.0)}};
  shape_j["profile"] = std::move(table);

  json physical = params_json(p.params());
  physical["r_plus"] = horizon::r_plus(p.params());
  physical["area"] = horizon::area(shape);

  json report{{"input", params_json(p.params())},
              {"shape", std::move(shape_j)},
              {"physical", std::move(physical)},
              {"flags", json{{"extremal", valid.extremal}}},
              {"residuals", json::object()}};
  return dump(report);
}

std::string cmd_spectrum(const Physical& p, const std::vector<int>& ks, const Numeric& n,
                         const Common& c) {
  horizon::validate(p.params());
  const auto shape = horizon::smarr_from_physical(p.params());
  const auto spectra = spectral::eigenvalues_many(ks, shape, n.count, n.resolved_basis());

  if (c.format == "csv") return write_spectrum_csv(spectra);

  json list = json::array();
  for (const auto& s : spectra) {
    list.push_back(json{{"k", s.k}, {"basis_size", s.basis_size}, {"eigenvalues", s.eigenvalues}});
  }
  json report{{"input", params_json(p.params())},
              {"shape", shape_json(shape)},
              {"physical", json{{"r_plus", horizon::r_plus(p.params())}, {"area", horizon::area(shape)}}},
              {"spectral", json{{"spectra", std::move(list)}}},
              {"flags", json::object()},
              {"residuals", json::object()}};
  report["input"]["J"] = n.count;
  report["input"]["N"] = n.resolved_basis();
  return dump(report);
}

std::string cmd_traces(const std::optional<Physical>& p, const std::vector<std::string>& files,
                       int k_max, const Numeric& n, const Common& c) {
  std::vector<spectral::ModeSpectrum> spectra;
  SmarrShape shape;
  json input;
  if (!files.empty()) {
    bool first = true;
    for (const auto& path : files) {
      auto in = open_input(path);
      auto file = read_spectrum_csv(in);
      if (!first && (file.shape.eta2 != shape.eta2 || file.shape.beta2 != shape.beta2)) {
        throw Error(ErrorCode::InvalidArgument, "spectrum files describe different shapes");
      }
      shape = file.shape;
      first = false;
      for (auto& s : file.spectra) spectra.push_back(std::move(s));
    }
    std::stable_sort(spectra.begin(), spectra.end(),
                     [](const auto& x, const auto& y) { return x.k < y.k; });
    input = json{{"spectrum_files", files}};
  } else {
    require_numeric_modes(n);
    horizon::validate(p->params());
    shape = horizon::smarr_from_physical(p->params());
    std::vector<int> ks(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) ks[static_cast<std::size_t>(k)] = k;
    spectra = spectral::eigenvalues_many(ks, shape, n.count, n.resolved_basis());
    input = params_json(p->params());
    input["J"] = n.count;
    input["N"] = n.resolved_basis();
  }

  std::vector<spectral::TraceEstimate> estimates;
  for (const auto& s : spectra) {
    const int window = n.window > 0 ? n.window
                                    : spectral::default_tail_window(static_cast<int>(s.eigenvalues.size()));
    estimates.push_back(spectral::trace_numeric(s, window));
  }

  if (c.format == "csv") return write_traces_csv(shape, estimates);

  const auto closed = inverse::traces_closed_form(shape, std::max(1, k_max));
  json list = json::array();
  double worst = 0.0;
  for (const auto& t : estimates) {
    json row = estimate_json(t);
    const double exact = t.k == 0 ? closed.gamma0 : shape.eta2 / std::abs(t.k);
    const double rel = std::abs(t.value - exact) / exact;
    worst = std::max(worst, rel);
    row["closed_form"] = exact;
    row["relative_error"] = rel;
    list.push_back(std::move(row));
  }
  json report{{"input", std::move(input)},
              {"shape", shape_json(shape)},
              {"spectral", json{{"traces", std::move(list)}}},
              {"flags", json::object()},
              {"residuals", json{{"max_relative_error", worst}}}};
  return dump(report);
}

json reconstruction_json(const inverse::ReconstructionReport& r) {
  json physical = params_json(r.physical);
  physical["r_plus"] = r.r_plus;
  physical["area"] = r.area;
  return physical;
}

json residuals_json(const inverse::ReconstructionReport& r) {
  json channels = json::object();
  for (const auto& c : r.residuals) channels[std::to_string(c.k)] = c.deviation;
  return json{{"mass_crosscheck", r.mass_crosscheck}, {"channels", std::move(channels)}};
}

json flags_json(const inverse::ReconstructionReport& r) {
  return json{{"clamped_beta2", r.clamped_beta2},
              {"clamped_spin", r.clamped_spin},
              {"mass_depends_on_charge", r.mass_depends_on_charge}};
}

std::string cmd_invert(std::optional<double> gamma0, const std::vector<std::string>& gammas,
                       const std::string& traces_file, double charge, int channel,
                       double consistency, const Common& c) {
  if (c.format != "json") throw CLI::ValidationError("--format", "invert only writes json");
  inverse::TraceSet traces;
  if (!traces_file.empty()) {
    auto in = open_input(traces_file);
    traces = read_traces_csv(in);
  }
  if (gamma0) traces.gamma0 = *gamma0;
  for (const auto& g : gammas) {
    const auto colon = g.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--gamma", "expected K:VALUE");
    const int k = parse_int(std::string_view(g).substr(0, colon));
    if (k == 0) throw CLI::ValidationError("--gamma", "use --gamma0 for k = 0");
    traces.equivariant[k] = parse_number(std::string_view(g).substr(colon + 1));
  }
  if (!traces.has(channel) && !traces.has(-channel)) {
    throw Error(ErrorCode::InvalidTraces, "no trace for channel k=" + std::to_string(channel));
  }
  inverse::check_traces(traces, consistency);
  const auto r = inverse::physical_from_traces(traces, charge, channel);

  json gamma = json::object();
  for (const auto& [k, v] : traces.equivariant) gamma[std::to_string(k)] = v;
  json report{{"input", json{{"gamma0", traces.gamma0}, {"gamma", std::move(gamma)},
                             {"charge", charge}, {"channel", channel}}},
              {"shape", shape_json(r.shape)},
              {"physical", reconstruction_json(r)},
              {"flags", flags_json(r)},
              {"residuals", residuals_json(r)}};
  if (r.mass_depends_on_charge) {
    report["flags"]["note"] = "charge is an input: the mass is not determined by the spectrum alone";
  }
  return dump(report);
}

std::pair<std::string, bool> cmd_roundtrip(const Physical& p, bool numeric, const Numeric& n,
                                           const Common& c) {
  if (c.format != "json") throw CLI::ValidationError("--format", "roundtrip only writes json");
  if (numeric) require_numeric_modes(n);
  const auto rt = inverse::roundtrip(p.params(), numeric, n.count, n.resolved_basis());
  const double tol = numeric ? kNumericTolerance : kClosedFormTolerance;
  const bool ok = rt.max_deviation < tol;

  json input = params_json(p.params());
  input["numeric"] = numeric;
  if (numeric) {
    input["J"] = n.count;
    input["N"] = n.resolved_basis();
  }
  json spectral_j{{"gamma0", rt.traces.gamma0}, {"gamma1", rt.traces.gamma(1)}};
  if (numeric) {
    json list = json::array();
    for (const auto& t : rt.estimates) list.push_back(estimate_json(t));
    spectral_j["estimates"] = std::move(list);
  }
  json flags = flags_json(rt.report);
  flags["within_tolerance"] = ok;
  json residuals = residuals_json(rt.report);
  residuals["max_deviation"] = rt.max_deviation;
  residuals["tolerance"] = tol;

  json report{{"input", std::move(input)},
              {"shape", shape_json(rt.report.shape)},
              {"physical", reconstruction_json(rt.report)},
              {"spectral", std::move(spectral_j)},
              {"flags", std::move(flags)},
              {"residuals", std::move(residuals)}};
  return {dump(report), ok};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveMass:
    case ErrorCode::HorizonAbsent:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DomainError:
      return kInvalidPhysical;
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::TailModelRejected:
    case ErrorCode::NonPositiveEigenvalue:
      return kNumerical;
    case ErrorCode::ChargeTooLarge:
    case ErrorCode::InvalidTraces:
    case ErrorCode::ZeroTrace:
      return kInvalidTraces;
  }
  return kUsage;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string write_spectrum_csv(std::span<const spectral::ModeSpectrum> spectra) {
  if (spectra.empty()) return "k,j,lambda\n";
  std::string text = comment_shape(spectra.front().shape);
  text += "# basis_size=" + std::to_string(spectra.front().basis_size) + "\n";
  text += "k,j,lambda\n";
  for (const auto& s : spectra) {
    for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
      text += std::to_string(s.k) + "," + std::to_string(j + 1) + "," + format_number(s.eigenvalues[j]) + "\n";
    }
  }
  return text;
}

SpectrumFile read_spectrum_csv(std::istream& in) {
  SpectrumFile file;
  bool have_shape = false;
  std::map<int, std::vector<std::pair<int, double>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto kv = parse_comment(line);
      if (kv.contains("eta2") && kv.contains("beta2")) {
        file.shape = {parse_number(kv.at("eta2")), parse_number(kv.at("beta2"))};
        have_shape = true;
      }
      if (kv.contains("basis_size")) file.basis_size = parse_int(kv.at("basis_size"));
      continue;
    }
    if (is_header_row(line)) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw Error(ErrorCode::InvalidArgument, "spectrum row needs k,j,lambda: " + line);
    rows[parse_int(cols[0])].emplace_back(parse_int(cols[1]), parse_number(cols[2]));
  }
  if (!have_shape) throw Error(ErrorCode::InvalidArgument, "spectrum file lacks '# eta2=... beta2=...'");
  horizon::check_shape(file.shape);

  for (auto& [k, list] : rows) {
    std::sort(list.begin(), list.end());
    spectral::ModeSpectrum s{k, {}, file.basis_size, file.shape};
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].first != static_cast<int>(i) + 1) {
        throw Error(ErrorCode::InvalidArgument, "spectrum rows for k=" + std::to_string(k) +
                                                    " must cover j = 1..J without gaps");
      }
      s.eigenvalues.push_back(list[i].second);
    }
    file.spectra.push_back(std::move(s));
  }
  return file;
}

std::string write_traces_csv(const SmarrShape& shape, std::span<const spectral::TraceEstimate> estimates) {
  std::string text = comment_shape(shape);
  text += "k,gamma,partial_sum,tail_correction,modes_used\n";
  for (const auto& t : estimates) {
    text += std::to_string(t.k) + "," + format_number(t.value) + "," + format_number(t.partial_sum) + "," +
            format_number(t.tail_correction) + "," + std::to_string(t.modes_used) + "\n";
  }
  return text;
}

inverse::TraceSet read_traces_csv(std::istream& in) {
  inverse::TraceSet traces;
  bool have_gamma0 = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || is_header_row(line)) continue;
    const auto cols = split(line, ',');
    if (cols.size() < 2) throw Error(ErrorCode::InvalidArgument, "trace row needs k,gamma: " + line);
    const int k = parse_int(cols[0]);
    const double g = parse_number(cols[1]);
    if (k == 0) {
      traces.gamma0 = g;
      have_gamma0 = true;
    } else {
      traces.equivariant[k] = g;
    }
  }
  if (!have_gamma0) throw Error(ErrorCode::InvalidTraces, "traces file has no k = 0 row");
  return traces;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of Kerr-Newman horizon Laplacians and inversion from Green's-operator traces.\n"
               "Geometric units (G = c = 1): m, a, e are lengths; eigenvalues are 1/length^2."};
  app.require_subcommand(1);

  Physical phys;

  auto* forward = app.add_subcommand("forward", "Horizon shape, curvature and area from (m, a, e)");
  add_physical(forward, phys);
  Common forward_common;
  add_common(forward, forward_common, "json");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of L_k on the horizon");
  Physical spec_phys;
  Numeric spec_num;
  Common spec_common;
  std::vector<int> ks{0};
  add_physical(spectrum, spec_phys);
  add_numeric(spectrum, spec_num);
  spectrum->add_option("-k,--k", ks, "Equivariant index (repeatable)");
  add_common(spectrum, spec_common, "csv");

  auto* traces = app.add_subcommand("traces", "Tail-corrected Green's-operator traces");
  Physical trace_phys;
  Numeric trace_num;
  Common trace_common;
  std::vector<std::string> spectrum_files;
  int k_max = 1;
  auto* trace_mass = traces->add_option("-m,--mass", trace_phys.m, "Mass m");
  traces->add_option("-a,--spin", trace_phys.a, "Spin a");
  traces->add_option("-e,--charge", trace_phys.e, "Charge e");
  add_numeric(traces, trace_num);
  traces->add_option("-W,--window", trace_num.window, "Tail-fit window (default clamp(J/3, 8, 12))");
  traces->add_option("--k-max", k_max, "Largest equivariant index")->check(CLI::Range(1, 64));
  auto* trace_files = traces->add_option("--spectrum", spectrum_files, "Spectrum CSV written by `spectrum`");
  trace_files->excludes(trace_mass);
  add_common(traces, trace_common, "json");

  auto* invert = app.add_subcommand("invert", "Recover shape and (m, a) from traces");
  std::optional<double> gamma0;
  std::vector<std::string> gammas;
  std::string traces_file;
  double charge = 0.0;
  int channel = 1;
  double consistency = 1e-3;
  Common invert_common;
  invert->add_option("--gamma0", gamma0, "S^1-invariant trace gamma_0");
  invert->add_option("--gamma", gammas, "Equivariant trace as K:VALUE (repeatable)");
  invert->add_option("--traces", traces_file, "Traces CSV written by `traces --format csv`");
  invert->add_option("-e,--charge", charge, "Charge e (default 0)");
  invert->add_option("--channel", channel, "Channel k used for eta^2 = k gamma_k");
  invert->add_option("--consistency-tol", consistency, "Relative tolerance on k gamma_k across channels");
  add_common(invert, invert_common, "json");

  auto* roundtrip = app.add_subcommand("roundtrip", "Forward map, traces, inversion; compare");
  Physical rt_phys;
  Numeric rt_num;
  Common rt_common;
  bool numeric = false;
  add_physical(roundtrip, rt_phys);
  add_numeric(roundtrip, rt_num);
  roundtrip->add_flag("--numeric", numeric, "Estimate traces from computed eigenvalues");
  add_common(roundtrip, rt_common, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*forward) {
      emit(cmd_forward(phys, forward_common), forward_common, out);
    } else if (*spectrum) {
      emit(cmd_spectrum(spec_phys, ks, spec_num, spec_common), spec_common, out);
    } else if (*traces) {
      if (spectrum_files.empty() && trace_mass->count() == 0) {
        throw CLI::ValidationError("traces", "give either --spectrum FILE or -m/-a/-e");
      }
      std::optional<Physical> p;
      if (spectrum_files.empty()) p = trace_phys;
      emit(cmd_traces(p, spectrum_files, k_max, trace_num, trace_common), trace_common, out);
    } else if (*invert) {
      if (!gamma0 && traces_file.empty()) throw CLI::ValidationError("invert", "need --gamma0 or --traces");
      emit(cmd_invert(gamma0, gammas, traces_file, charge, channel, consistency, invert_common),
           invert_common, out);
    } else if (*roundtrip) {
      auto [text, ok] = cmd_roundtrip(rt_phys, numeric, rt_num, rt_common);
      emit(text, rt_common, out);
      if (!ok) {
        err << "roundtrip deviation exceeds tolerance\n";
        return kToleranceBreach;
      }
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kOk;
}

}  // namespace kerrspec::cli
