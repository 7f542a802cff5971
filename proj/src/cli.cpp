#include "clockgap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "clockgap/analytic_bounds.hpp"
#include "clockgap/certifier.hpp"
#include "clockgap/eigensolver.hpp"
#include "clockgap/report.hpp"
#include "clockgap/selftest.hpp"
#include "clockgap/tridiagonal.hpp"

namespace clockgap::cli {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& raw, const char* what) {
  const std::string text = trim(raw);
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParameterError(std::string("cannot parse ") + what + ": '" + raw + "'");
  }
  return value;
}

}  // namespace

std::vector<double> SSpec::points() const {
  if (value) return {*value};
  return SGrid::uniform(steps).points;
}

DRange parse_d_range(const std::string& text) {
  const auto dots = text.find("..");
  DRange r{};
  if (dots == std::string::npos) {
    r.first = r.last = parse_number<long>(text, "d");
  } else {
    r.first = parse_number<long>(text.substr(0, dots), "d range start");
    r.last = parse_number<long>(text.substr(dots + 2), "d range end");
  }
  if (r.first < 2) throw ParameterError("d must be >= 2");
  if (r.last < r.first) throw ParameterError("d range '" + text + "' is empty");
  return r;
}

SSpec parse_s_spec(const std::string& text) {
  SSpec spec;
  const std::string t = trim(text);
  if (t.rfind("steps=", 0) == 0) {
    spec.steps = parse_number<int>(t.substr(6), "grid steps");
    if (spec.steps < 2) throw ParameterError("steps must be >= 2");
    return spec;
  }
  const double s = parse_number<double>(t, "s");
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("s must lie in [0, 1]");
  spec.value = s;
  return spec;
}

std::vector<ClockBlock<double>> parse_blocks(const std::string& text) {
  std::vector<ClockBlock<double>> blocks;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ';', ',');
  std::stringstream items(normalized);
  std::string item;
  while (std::getline(items, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParameterError("empty item in block list '" + text + "'");
    std::size_t sep = std::string::npos, sep_len = 0;
    for (const std::string marker : {"\xC3\x97", "x", "X", "*"}) {
      if (const auto pos = item.find(marker); pos != std::string::npos) {
        sep = pos;
        sep_len = marker.size();
        break;
      }
    }
    ClockBlock<double> blk{};
    if (sep == std::string::npos) {
      blk.b = parse_number<double>(item, "block weight");
      blk.multiplicity = 1;
    } else {
      blk.b = parse_number<double>(item.substr(0, sep), "block weight");
      blk.multiplicity = parse_number<int>(item.substr(sep + sep_len), "block multiplicity");
    }
    if (!(blk.b >= 1.0)) throw ParameterError("block weights must be >= 1");
    if (blk.multiplicity < 1) throw ParameterError("block multiplicity must be >= 1");
    blocks.push_back(blk);
  }
  if (blocks.empty()) throw ParameterError("block list is empty");
  return blocks;
}

namespace {

struct Options {
  std::string d = "2";
  std::string s;
  double b = 0.0;
  std::string blocks;
  int k = 2;
  double tol = 1e-12;
  std::string format = "csv";
  std::string out;
  double inject_mu0_scale = 1.0;
};

SolverConfig solver_config(const Options& o, bool want_vectors = false) {
  SolverConfig cfg;
  cfg.abs_tol = o.tol;
  cfg.want_vectors = want_vectors;
  cfg.validate();
  return cfg;
}

std::optional<FamilySpec> family_for(const Options& o, long d) {
  if (o.blocks.empty()) return std::nullopt;
  return FamilySpec::with_ground_block(d, parse_blocks(o.blocks));
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const DRange dr = parse_d_range(o.d);
  if (dr.first != dr.last) throw ParameterError("spectrum takes a single d");
  const SSpec ss = parse_s_spec(o.s.empty() ? "1" : o.s);
  if (!ss.value) throw ParameterError("spectrum takes a single s value");
  const long d = dr.first;
  const double s = *ss.value;
  if (o.k < 1 || o.k > d) throw ParameterError("k must satisfy 1 <= k <= d");

  const auto op = build_hj(d, s, o.b);
  const auto res = smallest_eigenvalues(op, o.k, solver_config(o, true));
  const bool lemma_case = s == 1.0 && o.b == 0.5;
  const auto closed = lemma_case ? lemma_spectrum(d) : std::vector<AnalyticEigenpair<double>>{};

  nlohmann::json pairs = nlohmann::json::array();
  std::ostringstream csv;
  csv << "n,lambda,operator_residual,interior_residual,left_residual,right_residual,"
         "lemma_lambda,lemma_delta\n";
  for (int i = 0; i < o.k; ++i) {
    const double lambda = res.eigenvalues[i];
    const auto& u = (*res.eigenvectors)[i];
    const double op_res = (op.apply(u) - lambda * u).norm();
    const auto r = eigen_residuals(d, s, o.b, lambda, u);
    std::optional<double> lemma, delta;
    if (lemma_case) {
      lemma = closed[i].lambda;
      delta = lambda - *lemma;
    }
    csv << (i + 1) << ',' << format_real(lambda) << ',' << format_real(op_res) << ','
        << format_real(r.interior) << ',' << format_real(r.left) << ',' << format_real(r.right)
        << ',' << format_optional(lemma) << ',' << format_optional(delta) << '\n';
    pairs.push_back({{"n", i + 1},
                     {"lambda", lambda},
                     {"operator_residual", op_res},
                     {"interior_residual", r.interior},
                     {"left_residual", r.left},
                     {"right_residual", r.right},
                     {"lemma_lambda", lemma ? nlohmann::json(*lemma) : nlohmann::json(nullptr)},
                     {"lemma_delta", delta ? nlohmann::json(*delta) : nlohmann::json(nullptr)}});
  }
  if (o.format == "json") {
    out << nlohmann::json{{"d", d}, {"s", s}, {"b", o.b}, {"abs_tol", res.abs_tol},
                          {"eigenpairs", pairs}}
               .dump(2)
        << '\n';
  } else {
    out << csv.str();
  }
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const DRange dr = parse_d_range(o.d);
  const SSpec ss = parse_s_spec(o.s.empty() ? "steps=11" : o.s);
  std::vector<BoundCurve<double>> rows;
  for (long d = dr.first; d <= dr.last; ++d) {
    for (double s : ss.points()) rows.push_back(bound_curve(d, s));
  }
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    write_bounds_csv(out, rows);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const DRange dr = parse_d_range(o.d);
  const SSpec ss = parse_s_spec(o.s.empty() ? "steps=101" : o.s);
  if (ss.value) throw ParameterError("sweep needs a grid: --s steps=N");
  const SolverConfig cfg = solver_config(o);
  SGrid grid = SGrid::uniform(ss.steps);

  std::vector<SweepRow> rows;
  for (long d = dr.first; d <= dr.last; ++d) {
    auto part = sweep(d, family_for(o, d), grid, cfg);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    write_sweep_csv(out, rows);
  }
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const DRange dr = parse_d_range(o.d);
  const SSpec ss = parse_s_spec(o.s.empty() ? "steps=1001" : o.s);
  if (ss.value) throw ParameterError("certify needs a grid: --s steps=N");
  const SolverConfig cfg = solver_config(o);

  std::vector<GapCertificate> certs;
  bool all_pass = true;
  for (long d = dr.first; d <= dr.last; ++d) {
    certs.push_back(certify(d, family_for(o, d), ss.steps, cfg));
    all_pass = all_pass && certs.back().verdict_floor;
  }
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : certs) arr.push_back(to_json(c));
    out << arr.dump(2) << '\n';
  } else {
    write_certificates_csv(out, certs);
  }
  return all_pass ? kExitOk : kExitCertificationFailed;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  SelftestOptions opts;
  opts.tol = o.tol;
  opts.mu0_scale = o.inject_mu0_scale;
  const auto checks = run_selftest(opts);
  print_selftest_table(out, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  out << (ok ? "selftest: all checks passed\n" : "selftest: FAILED\n");
  return ok ? kExitOk : kExitCertificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral-gap certification for clock-model Hamiltonians", "clockgap"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "bisection absolute tolerance")->capture_default_str();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "output file (default: standard output)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of H_b(s) with residuals");
  spectrum->add_option("--d", o.d, "dimension")->required();
  spectrum->add_option("--s", o.s, "interpolation parameter in [0,1] (default 1)");
  spectrum->add_option("--b", o.b, "boundary weight b >= 0")->capture_default_str();
  spectrum->add_option("--k", o.k, "number of eigenvalues")->capture_default_str();
  add_common(spectrum);

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds at (d, s)");
  bounds->add_option("--d", o.d, "dimension or range a..b")->required();
  bounds->add_option("--s", o.s, "s value or steps=N (default steps=11)");
  add_common(bounds);

  auto* sweep_cmd = app.add_subcommand("sweep", "numeric gaps and bounds over an s grid");
  sweep_cmd->add_option("--d", o.d, "dimension or range a..b")->required();
  sweep_cmd->add_option("--s", o.s, "grid steps=N (default steps=101)");
  sweep_cmd->add_option("--blocks", o.blocks, "nonzero block weights, e.g. 1,2,7 or 1x2");
  add_common(sweep_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "certify gap >= 1/(2 d^2)");
  certify_cmd->add_option("--d", o.d, "dimension or range a..b")->required();
  certify_cmd->add_option("--s", o.s, "grid steps=N (default steps=1001)");
  certify_cmd->add_option("--blocks", o.blocks, "nonzero block weights, e.g. 1,2,7 or 1x2");
  add_common(certify_cmd);

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  selftest->add_option("--tol", o.tol, "solver tolerance; thresholds scale with it")
      ->capture_default_str();
  selftest->add_option("--inject-mu0-scale", o.inject_mu0_scale)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << o.out << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, sink);
    if (bounds->parsed()) return cmd_bounds(o, sink);
    if (sweep_cmd->parsed()) return cmd_sweep(o, sink);
    if (certify_cmd->parsed()) return cmd_certify(o, sink);
    return cmd_selftest(o, sink);
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace clockgap::cli
