#include "privspec/config.hpp"

#include <initializer_list>
#include <limits>
#include <set>
#include <stdexcept>

#include "privspec/errors.hpp"
#include "privspec/io.hpp"

namespace privspec {

namespace {

using nlohmann::json;

std::string child(const std::string& pointer, const std::string& key) {
  return pointer + "/" + key;
}

void require_object(const json& j, const std::string& pointer,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(pointer.empty() ? "/" : pointer, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) throw ConfigError(child(pointer, key), "unknown key");
}

double number_at(const json& j, const std::string& pointer) {
  if (!j.is_number()) throw ConfigError(pointer, "expected a number");
  return j.get<double>();
}

long long integer_at(const json& j, const std::string& pointer, long long min_value) {
  if (!j.is_number_integer()) throw ConfigError(pointer, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value) throw ConfigError(pointer, "must be at least " + std::to_string(min_value));
  return v;
}

std::string string_at(const json& j, const std::string& pointer) {
  if (!j.is_string()) throw ConfigError(pointer, "expected a string");
  return j.get<std::string>();
}

template <typename Fn>
auto guarded(const std::string& pointer, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(pointer, e.what());
  }
}

ArmaNoiseModel parse_model(const json& j, const std::string& p) {
  require_object(j, p, {"a1", "a2", "b0", "b1", "b2", "sigma"});
  const auto d = ArmaNoiseModel::benchmark();
  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? number_at(j.at(key), child(p, key)) : fallback;
  };
  const double a1 = get("a1", d.a1()), a2 = get("a2", d.a2()), b0 = get("b0", d.b0()),
               b1 = get("b1", d.b1()), b2 = get("b2", d.b2()), sigma = get("sigma", d.sigma());
  return guarded(p, [&] { return ArmaNoiseModel(a1, a2, b0, b1, b2, sigma); });
}

TruncationPolicy parse_truncation(const json& j, const std::string& p) {
  require_object(j, p, {"mode", "tau", "nu"});
  const std::string mode = j.contains("mode") ? string_at(j.at("mode"), child(p, "mode")) : "fixed";
  if (mode == "fixed") {
    if (j.contains("nu")) throw ConfigError(child(p, "nu"), "nu is only valid in theoretical mode");
    const double tau = j.contains("tau") ? number_at(j.at("tau"), child(p, "tau")) : kDefaultTau;
    return guarded(child(p, "tau"), [&] { return TruncationPolicy::fixed(tau); });
  }
  if (mode == "theoretical") {
    if (j.contains("tau")) throw ConfigError(child(p, "tau"), "tau is only valid in fixed mode");
    if (!j.contains("nu")) throw ConfigError(child(p, "nu"), "theoretical mode requires nu");
    const double nu = number_at(j.at("nu"), child(p, "nu"));
    return guarded(child(p, "nu"), [&] { return TruncationPolicy::theoretical(nu); });
  }
  throw ConfigError(child(p, "mode"), "must be 'fixed' or 'theoretical'");
}

ModelFamily parse_family(const json& j, const std::string& p) {
  require_object(j, p, {"kind", "d_min", "d_max"});
  ModelFamily f;
  if (j.contains("kind"))
    f.kind = guarded(child(p, "kind"), [&] { return parse_basis_kind(string_at(j.at("kind"), child(p, "kind"))); });
  if (j.contains("d_min")) f.d_min = integer_at(j.at("d_min"), child(p, "d_min"), 1);
  if (j.contains("d_max")) f.d_max = integer_at(j.at("d_max"), child(p, "d_max"), 1);
  if (f.d_max < f.d_min) throw ConfigError(child(p, "d_max"), "must not be smaller than d_min");
  return f;
}

}  // namespace

CliConfig parse_config(const json& document) {
  require_object(document, "",
                 {"model", "lengths", "alphas", "truncation", "kappa", "family", "replications",
                  "master_seed", "burn_in", "risk_grid_size", "curve_grid_size",
                  "risk_normalization", "clamp_negative", "output_dir", "verbosity"});
  CliConfig config;
  auto& e = config.experiment;
  if (document.contains("model")) e.model = parse_model(document.at("model"), "/model");
  if (document.contains("lengths")) {
    const auto& arr = document.at("lengths");
    if (!arr.is_array() || arr.empty()) throw ConfigError("/lengths", "expected a non-empty array");
    e.lengths.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      e.lengths.push_back(integer_at(arr[i], "/lengths/" + std::to_string(i), 2));
  }
  if (document.contains("alphas")) {
    const auto& arr = document.at("alphas");
    if (!arr.is_array() || arr.empty()) throw ConfigError("/alphas", "expected a non-empty array");
    e.alphas.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto p = "/alphas/" + std::to_string(i);
      e.alphas.push_back(guarded(p, [&] { return privacy_level_from_json(arr[i]); }));
    }
  }
  if (document.contains("truncation")) e.truncation = parse_truncation(document.at("truncation"), "/truncation");
  if (document.contains("kappa")) {
    e.kappa = number_at(document.at("kappa"), "/kappa");
    if (!(e.kappa > 0.0)) throw ConfigError("/kappa", "must be positive");
  }
  if (document.contains("family")) e.family = parse_family(document.at("family"), "/family");
  if (document.contains("replications"))
    e.replications = integer_at(document.at("replications"), "/replications", 1);
  if (document.contains("master_seed")) {
    const auto& s = document.at("master_seed");
    if (!s.is_number_unsigned()) throw ConfigError("/master_seed", "expected a non-negative integer");
    e.master_seed = s.get<std::uint64_t>();
  }
  if (document.contains("burn_in")) e.burn_in = integer_at(document.at("burn_in"), "/burn_in", 0);
  if (document.contains("risk_grid_size"))
    e.risk_grid_size = integer_at(document.at("risk_grid_size"), "/risk_grid_size", 256);
  if (document.contains("curve_grid_size"))
    e.curve_grid_size = integer_at(document.at("curve_grid_size"), "/curve_grid_size", 256);
  if (document.contains("risk_normalization"))
    e.risk_normalization = guarded("/risk_normalization", [&] {
      return parse_risk_normalization(string_at(document.at("risk_normalization"), "/risk_normalization"));
    });
  if (document.contains("clamp_negative")) {
    if (!document.at("clamp_negative").is_boolean()) throw ConfigError("/clamp_negative", "expected a boolean");
    e.clamp_negative = document.at("clamp_negative").get<bool>();
  }
  if (document.contains("output_dir")) config.output_dir = string_at(document.at("output_dir"), "/output_dir");
  if (document.contains("verbosity"))
    config.verbosity = static_cast<int>(integer_at(document.at("verbosity"), "/verbosity", 0));

  for (std::size_t i = 0; i < e.lengths.size(); ++i) {
    const auto p = "/lengths/" + std::to_string(i);
    guarded(p, [&] {
      e.family.validate(e.lengths[i]);
      return e.truncation.threshold(e.lengths[i]);
    });
  }
  guarded("/", [&] {
    e.validate();
    return 0;
  });
  return config;
}

CliConfig load_config(const std::filesystem::path& path) {
  const auto text = io::read_file(path);
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(document);
}

json config_to_json(const CliConfig& config) {
  const auto& e = config.experiment;
  json alphas = json::array();
  for (const auto& a : e.alphas) alphas.push_back(privacy_level_to_json(a));
  json truncation = e.truncation.mode() == TruncationPolicy::Mode::Fixed
                        ? json{{"mode", "fixed"}, {"tau", e.truncation.parameter()}}
                        : json{{"mode", "theoretical"}, {"nu", e.truncation.parameter()}};
  json out = {
      {"model",
       {{"a1", e.model.a1()}, {"a2", e.model.a2()}, {"b0", e.model.b0()}, {"b1", e.model.b1()},
        {"b2", e.model.b2()}, {"sigma", e.model.sigma()}}},
      {"lengths", e.lengths},
      {"alphas", alphas},
      {"truncation", truncation},
      {"kappa", e.kappa},
      {"family", {{"kind", std::string(to_string(e.family.kind))}, {"d_min", e.family.d_min}, {"d_max", e.family.d_max}}},
      {"replications", e.replications},
      {"master_seed", e.master_seed},
      {"burn_in", e.burn_in},
      {"risk_grid_size", e.risk_grid_size},
      {"curve_grid_size", e.curve_grid_size},
      {"risk_normalization", std::string(to_string(e.risk_normalization))},
      {"clamp_negative", e.clamp_negative},
      {"verbosity", config.verbosity}};
  if (config.output_dir) out["output_dir"] = *config.output_dir;
  return out;
}

}  // namespace privspec
