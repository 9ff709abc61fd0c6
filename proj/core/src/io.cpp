#include "amoeba/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "amoeba/error.hpp"

namespace amoeba::io {

namespace {

using nlohmann::json;

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

std::optional<double> parse_optional(const std::string& field) {
  if (field == "NA") return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ConfigError("bad numeric field '" + field + "' in results CSV");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string map_to_json(const TspInstance& inst) {
  json j;
  j["n"] = inst.n();
  const auto flat = inst.distances().flat();
  j["dist"] = std::vector<double>(flat.begin(), flat.end());
  if (const auto& gen = inst.generation()) {
    j["gen"] = {{"seed", gen->seed}, {"mean", gen->mean}, {"sd", gen->sd}};
  } else {
    j["gen"] = nullptr;
  }
  return j.dump() + "\n";
}

TspInstance map_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw InvalidInstance("map file must hold a JSON object");
    for (const auto& [key, _] : j.items()) {
      if (key != "n" && key != "dist" && key != "gen") throw InvalidInstance("unknown map key '" + key + "'");
    }
    const auto n = j.at("n").get<std::size_t>();
    const auto dist = j.at("dist").get<std::vector<double>>();
    if (dist.size() != n * n) throw InvalidInstance("dist must hold n*n entries");
    Matrix m(n);
    std::copy(dist.begin(), dist.end(), m.flat().begin());
    std::optional<GenerationInfo> gen;
    if (j.contains("gen") && !j.at("gen").is_null()) {
      const json& g = j.at("gen");
      gen = GenerationInfo{g.at("seed").get<std::uint64_t>(), g.at("mean").get<double>(), g.at("sd").get<double>()};
    }
    return TspInstance(std::move(m), gen);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed map file: ") + e.what());
  }
}

void write_map(const std::filesystem::path& path, const TspInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << map_to_json(inst);
  if (!out) throw ConfigError("failed writing " + path.string());
}

TspInstance read_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInstance("cannot read map file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return map_from_json(buf.str());
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "t,L_off,sum_X,S,total_O,residual\n";
  for (const auto& r : rows) {
    out << r.t << ',' << r.l_off << ',' << format_double(r.sum_x) << ',' << format_double(r.stock) << ','
        << format_double(r.total_o) << ',' << format_double(r.residual) << '\n';
  }
}

void write_results_csv(std::ostream& out, std::span<const AggregateStats> stats) {
  out << kResultsHeader << '\n';
  for (const auto& s : stats) {
    out << s.variant << ',' << s.n << ',' << s.trials << ',' << format_double(s.success_rate) << ','
        << optional_field(s.avg_iterations) << ',' << optional_field(s.std_iterations) << ','
        << optional_field(s.avg_ratio) << ',' << optional_field(s.std_ratio) << '\n';
  }
}

std::vector<AggregateStats> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) throw ConfigError("unexpected results CSV header");
  std::vector<AggregateStats> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw ConfigError("results CSV row needs 8 fields: " + line);
    AggregateStats s;
    s.variant = f[0];
    s.n = static_cast<std::size_t>(parse_optional(f[1]).value_or(0.0));
    s.trials = static_cast<std::size_t>(parse_optional(f[2]).value_or(0.0));
    s.success_rate = parse_optional(f[3]).value_or(0.0);
    s.successes = static_cast<std::size_t>(std::llround(s.success_rate * static_cast<double>(s.trials)));
    s.avg_iterations = parse_optional(f[4]);
    s.std_iterations = parse_optional(f[5]);
    s.avg_ratio = parse_optional(f[6]);
    s.std_ratio = parse_optional(f[7]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string fit_to_json(const ScalingFit& fit) {
  json points = json::array();
  for (const auto& p : fit.points) points.push_back({{"n", p.n}, {"avg_iterations", p.iterations}});
  const json j = {{"points", points},
                  {"exponent", fit.exponent},
                  {"prefactor", fit.prefactor},
                  {"r_squared", fit.r_squared}};
  return j.dump(2) + "\n";
}

void write_iterations_plot_csv(std::ostream& out, std::span<const ScalingPoint> points) {
  const double c = sqrt_n_coefficient(points);
  out << "n,avg_iterations,sqrt_n_fit\n";
  for (const auto& p : points) {
    out << format_double(p.n) << ',' << format_double(p.iterations) << ',' << format_double(c * std::sqrt(p.n))
        << '\n';
  }
}

void write_ratio_plot_csv(std::ostream& out, std::span<const AggregateStats> stats) {
  out << "n,avg_ratio,reference_0.9\n";
  for (const auto& s : stats) out << s.n << ',' << optional_field(s.avg_ratio) << ",0.9\n";
}

}  // namespace amoeba::io
