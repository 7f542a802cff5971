#include "clockgap/report.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace clockgap {

using nlohmann::json;

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string();
}

std::string format_blocks(const FamilySpec& family) {
  std::string out;
  for (const auto& blk : family.blocks()) {
    if (blk.b == 0.0) continue;
    if (!out.empty()) out += ';';
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), blk.b);
    out.append(buf.data(), res.ptr);
    if (blk.multiplicity > 1) out += 'x' + std::to_string(blk.multiplicity);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool header) {
  if (header) out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.d << ',' << format_real(r.s) << ',' << format_real(r.lambda1) << ','
        << format_real(r.lambda2) << ',' << format_real(r.gap) << ',' << format_optional(r.Lambda1)
        << ',' << format_optional(r.Lambda2) << ',' << format_optional(r.family_gap) << ','
        << format_real(r.upper_min) << ',' << format_real(r.lambda2_lower) << ','
        << format_real(r.gap_lower) << ',' << format_real(r.floor) << ','
        << format_real(r.margin_vs_floor) << '\n';
  }
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundCurve<double>>& rows,
                      bool header) {
  if (header) out << kBoundsCsvHeader << '\n';
  for (const auto& c : rows) {
    out << c.d << ',' << format_real(c.s) << ',' << format_real(c.upper_e1) << ','
        << format_real(c.upper_const) << ',' << format_real(c.upper_min) << ','
        << format_real(c.s_c) << ',' << format_real(c.mu0) << ',' << format_real(c.lambda2_lower)
        << ',' << format_real(c.gap_lower) << ',' << format_real(c.block_lower) << ','
        << format_real(c.floor) << '\n';
  }
}

namespace {

const char* flag(bool v) { return v ? "true" : "false"; }

}  // namespace

void write_certificates_csv(std::ostream& out, const std::vector<GapCertificate>& certs,
                            bool header) {
  if (header) out << kCertificateCsvHeader << '\n';
  for (const auto& c : certs) {
    out << c.d << ',' << (c.family ? format_blocks(*c.family) : std::string()) << ','
        << c.grid_size << ',' << format_real(c.grid_min_s) << ',' << format_real(c.grid_min_gap)
        << ',' << format_real(c.refined_min_s) << ',' << format_real(c.refined_min_gap) << ','
        << format_real(c.floor) << ',' << format_real(c.chain_bound) << ','
        << flag(c.chain_meets_floor) << ',' << flag(c.verdict_floor) << ','
        << flag(c.verdict_upper) << ','
        << (c.verdict_lower ? flag(*c.verdict_lower) : "not-applicable") << ','
        << flag(c.verdict_lambda1_identity) << ',' << flag(c.low_resolution) << ','
        << format_real(c.solver_tol) << ',' << c.timestamp << '\n';
  }
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const SweepRow& r) {
  return json{{"d", r.d},
              {"s", r.s},
              {"lambda1", r.lambda1},
              {"lambda2", r.lambda2},
              {"gap", r.gap},
              {"Lambda1", optional_json(r.Lambda1)},
              {"Lambda2", optional_json(r.Lambda2)},
              {"family_gap", optional_json(r.family_gap)},
              {"upper_min", r.upper_min},
              {"lambda2_lower", r.lambda2_lower},
              {"gap_lower", r.gap_lower},
              {"floor", r.floor},
              {"margin_vs_floor", r.margin_vs_floor}};
}

json to_json(const BoundCurve<double>& c) {
  return json{{"d", c.d},
              {"s", c.s},
              {"upper_e1", c.upper_e1},
              {"upper_const", c.upper_const},
              {"upper_min", c.upper_min},
              {"s_c", c.s_c},
              {"mu0", c.mu0},
              {"lambda2_lower", c.lambda2_lower},
              {"gap_lower", c.gap_lower},
              {"block_lower", c.block_lower},
              {"floor", c.floor}};
}

json to_json(const GapCertificate& c) {
  json family = nullptr;
  if (c.family) {
    family = json::array();
    for (const auto& blk : c.family->blocks()) {
      family.push_back({{"b", blk.b}, {"multiplicity", blk.multiplicity}});
    }
  }
  return json{{"d", c.d},
              {"family", family},
              {"grid_size", c.grid_size},
              {"grid_min_s", c.grid_min_s},
              {"grid_min_gap", c.grid_min_gap},
              {"refined_min_s", c.refined_min_s},
              {"refined_min_gap", c.refined_min_gap},
              {"floor", c.floor},
              {"chain_bound", c.chain_bound},
              {"chain_meets_floor", c.chain_meets_floor},
              {"verdict_floor", c.verdict_floor},
              {"verdict_upper", c.verdict_upper},
              {"verdict_lower", c.verdict_lower ? json(*c.verdict_lower) : json("not-applicable")},
              {"verdict_lambda1_identity", c.verdict_lambda1_identity},
              {"low_resolution", c.low_resolution},
              {"solver_tol", c.solver_tol},
              {"timestamp", c.timestamp}};
}

GapCertificate certificate_from_json(const json& j) {
  GapCertificate c;
  c.d = j.at("d").get<Eigen::Index>();
  if (const json& fam = j.at("family"); !fam.is_null()) {
    std::vector<ClockBlock<double>> blocks;
    for (const json& blk : fam) {
      blocks.push_back({blk.at("b").get<double>(), blk.at("multiplicity").get<int>()});
    }
    c.family = FamilySpec(c.d, std::move(blocks));
  }
  c.grid_size = j.at("grid_size").get<int>();
  c.grid_min_s = j.at("grid_min_s").get<double>();
  c.grid_min_gap = j.at("grid_min_gap").get<double>();
  c.refined_min_s = j.at("refined_min_s").get<double>();
  c.refined_min_gap = j.at("refined_min_gap").get<double>();
  c.floor = j.at("floor").get<double>();
  c.chain_bound = j.at("chain_bound").get<double>();
  c.chain_meets_floor = j.at("chain_meets_floor").get<bool>();
  c.verdict_floor = j.at("verdict_floor").get<bool>();
  c.verdict_upper = j.at("verdict_upper").get<bool>();
  if (const json& vl = j.at("verdict_lower"); vl.is_boolean()) c.verdict_lower = vl.get<bool>();
  c.verdict_lambda1_identity = j.at("verdict_lambda1_identity").get<bool>();
  c.low_resolution = j.at("low_resolution").get<bool>();
  c.solver_tol = j.at("solver_tol").get<double>();
  c.timestamp = j.at("timestamp").get<std::string>();
  return c;
}

}  // namespace clockgap
