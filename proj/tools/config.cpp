#include "config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "amoeba/error.hpp"

namespace amoeba::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
std::optional<T> get_opt(const json& obj, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return obj.at(key).get<T>();
}

VariantConfig parse_elements(const json& e) {
  reject_unknown(e, "elements", {"a", "b", "b_factor", "c", "normal_sd"});
  VariantConfig cfg;
  if (auto a = get_opt<std::string>(e, "a")) cfg.element_a = parse_element_a(*a);
  const double factor = get_opt<double>(e, "b_factor").value_or(1.0);
  if (auto b = get_opt<std::string>(e, "b")) {
    cfg.element_b = parse_element_b(*b, factor);
  } else if (e.contains("b_factor")) {
    throw ConfigError("b_factor needs \"b\": \"scale\"");
  }
  if (auto c = get_opt<std::vector<std::string>>(e, "c")) cfg.element_c = parse_element_c(*c);
  if (auto sd = get_opt<double>(e, "normal_sd")) cfg.normal_sd = *sd;
  validate(cfg);
  return cfg;
}

}  // namespace

Fluctuation parse_element_a(const std::string& name) {
  if (name == "uniform") return Fluctuation::kUniform;
  if (name == "zero") return Fluctuation::kZero;
  if (name == "normal") return Fluctuation::kNormal;
  throw ConfigError("element A must be uniform, zero or normal, got '" + name + "'");
}

ElongationRule parse_element_b(const std::string& name, double factor) {
  if (name == "original") return ElongationRule::original();
  if (name == "scale") {
    if (!(factor > 0.0)) throw ConfigError("element B scale factor must be positive");
    return ElongationRule::scale_i(factor);
  }
  if (name == "zero-delta-in") return ElongationRule::zero_delta_in();
  if (name == "denom-n") return ElongationRule::denom_n();
  throw ConfigError("element B must be original, scale, zero-delta-in or denom-n, got '" + name + "'");
}

SigmoidSwitches parse_element_c(const std::vector<std::string>& flags) {
  SigmoidSwitches c;
  for (const auto& f : flags) {
    if (f == "o-const") {
      c.constant_contraction = true;
    } else if (f == "l-outer-step") {
      c.outer_step = true;
    } else if (f == "l-inner-step") {
      c.inner_step = true;
    } else {
      throw ConfigError("element C flags are o-const, l-outer-step and l-inner-step, got '" + f + "'");
    }
  }
  return c;
}

std::string describe(const VariantConfig& cfg) {
  std::string a = cfg.element_a == Fluctuation::kUniform ? "uniform"
                  : cfg.element_a == Fluctuation::kZero  ? "zero"
                                                         : "normal";
  std::string b;
  switch (cfg.element_b.kind) {
    case ElongationRule::Kind::kOriginal: b = "original"; break;
    case ElongationRule::Kind::kScaleI: {
      std::ostringstream f;
      f << "scale(" << cfg.element_b.factor << ")";
      b = f.str();
      break;
    }
    case ElongationRule::Kind::kZeroDeltaIn: b = "zero-delta-in"; break;
    case ElongationRule::Kind::kDenomN: b = "denom-n"; break;
  }
  std::string c;
  if (cfg.element_c.constant_contraction) c += "o-const ";
  if (cfg.element_c.outer_step) c += "l-outer-step ";
  if (cfg.element_c.inner_step) c += "l-inner-step ";
  if (c.empty()) c = "none";
  else c.pop_back();
  return "A=" + a + " B=" + b + " C=" + c;
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "config", {"params", "preset", "elements", "n", "n_list", "trials", "max_iters", "seed",
                               "workers", "map_policy", "map_seed", "map_mean", "map_sd", "outputs"});
  RunConfig rc;
  try {
    if (j.contains("params")) {
      const json& p = j.at("params");
      reject_unknown(p, "params", {"lambda", "mu", "nu", "delta", "delta_out", "delta_in"});
      rc.params.lambda = get_opt<double>(p, "lambda").value_or(rc.params.lambda);
      rc.params.mu = get_opt<double>(p, "mu").value_or(rc.params.mu);
      rc.params.delta = get_opt<double>(p, "delta").value_or(rc.params.delta);
      rc.params.delta_out = get_opt<double>(p, "delta_out").value_or(rc.params.delta_out);
      rc.params.delta_in = get_opt<double>(p, "delta_in").value_or(rc.params.delta_in);
      rc.params.nu = get_opt<double>(p, "nu");
    }
    if (j.contains("preset") && j.contains("elements")) {
      throw ConfigError("\"preset\" and \"elements\" are mutually exclusive");
    }
    if (auto name = get_opt<std::string>(j, "preset")) {
      (void)preset(*name);
      rc.preset = *name;
    }
    if (j.contains("elements")) rc.elements = parse_elements(j.at("elements"));
    rc.n = get_opt<std::size_t>(j, "n");
    rc.n_list = get_opt<std::vector<std::size_t>>(j, "n_list").value_or(std::vector<std::size_t>{});
    rc.trials = get_opt<std::size_t>(j, "trials");
    rc.max_iters = get_opt<std::uint64_t>(j, "max_iters");
    rc.seed = get_opt<std::uint64_t>(j, "seed");
    rc.workers = get_opt<unsigned>(j, "workers");

    if (j.contains("map_policy") || j.contains("map_seed") || j.contains("map_mean") || j.contains("map_sd")) {
      MapPolicy map;
      const auto kind = get_opt<std::string>(j, "map_policy").value_or("fresh");
      if (kind == "fresh") {
        map.kind = MapPolicy::Kind::kFreshPerTrial;
        if (j.contains("map_seed")) throw ConfigError("map_seed needs \"map_policy\": \"fixed\"");
      } else if (kind == "fixed") {
        map.kind = MapPolicy::Kind::kFixed;
        map.seed = get_opt<std::uint64_t>(j, "map_seed").value_or(0);
      } else {
        throw ConfigError("map_policy must be fresh or fixed");
      }
      map.mean = get_opt<double>(j, "map_mean").value_or(map.mean);
      map.sd = get_opt<double>(j, "map_sd").value_or(map.sd);
      rc.map = map;
    }

    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      reject_unknown(o, "outputs", {"results", "fit", "plot_prefix"});
      rc.results_path = get_opt<std::string>(o, "results");
      rc.fit_path = get_opt<std::string>(o, "fit");
      rc.plot_prefix = get_opt<std::string>(o, "plot_prefix");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace amoeba::cli
