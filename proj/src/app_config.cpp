#include "robustdtw/app_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace robustdtw {

namespace {

using nlohmann::json;

double number_value(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw std::invalid_argument("config key '" + key + "' must be a number");
  }
  const double v = value.get<double>();
  if (!std::isfinite(v)) {
    throw std::invalid_argument("config key '" + key + "' must be finite");
  }
  return v;
}

int integer_value(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw std::invalid_argument("config key '" + key + "' must be an integer");
  }
  return value.get<int>();
}

void check(bool ok, const std::string& key, const char* constraint) {
  if (!ok) {
    throw std::invalid_argument("config key '" + key + "' must be " + constraint);
  }
}

}  // namespace

AppConfig parse_app_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config must be a JSON object");

  AppConfig config;
  // Distance keys apply to the shared bundle and the periodicity bundle
  // alike; only the defaults differ between the two.
  const auto each_dtw = [&config](auto&& apply) {
    apply(config.dtw);
    apply(config.period_dtw);
  };

  std::map<std::string, std::function<void(const json&, const std::string&)>> setters;
  setters["self_lambda1"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value >= 0.0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.self_detrend.lambda1 = value; });
  };
  setters["self_lambda2"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value >= 0.0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.self_detrend.lambda2 = value; });
  };
  setters["huber_gamma"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value > 0.0, k, "> 0");
    each_dtw([value](RobustDtwConfig& d) { d.self_detrend.huber_gamma = value; });
  };
  setters["rho"] = [&](const json& v, const std::string& k) {
    const double rho = number_value(v, k);
    check(rho > 0.0, k, "> 0");
    each_dtw([rho](RobustDtwConfig& d) {
      d.self_detrend.rho = rho;
      d.graph_detrend.solver.rho = rho;
    });
  };
  setters["eps_abs"] = [&](const json& v, const std::string& k) {
    const double eps = number_value(v, k);
    check(eps > 0.0, k, "> 0");
    each_dtw([eps](RobustDtwConfig& d) {
      d.self_detrend.eps_abs = eps;
      d.graph_detrend.solver.eps_abs = eps;
    });
  };
  setters["eps_rel"] = [&](const json& v, const std::string& k) {
    const double eps = number_value(v, k);
    check(eps > 0.0, k, "> 0");
    each_dtw([eps](RobustDtwConfig& d) {
      d.self_detrend.eps_rel = eps;
      d.graph_detrend.solver.eps_rel = eps;
    });
  };
  setters["max_iter"] = [&](const json& v, const std::string& k) {
    const int iters = integer_value(v, k);
    check(iters >= 1, k, ">= 1");
    each_dtw([iters](RobustDtwConfig& d) {
      d.self_detrend.max_iter = iters;
      d.graph_detrend.solver.max_iter = iters;
    });
  };
  setters["graph_lambda1"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value >= 0.0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.graph_detrend.lambda1 = value; });
  };
  setters["graph_lambda2"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value >= 0.0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.graph_detrend.lambda2 = value; });
  };
  setters["cross_weight"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value > 0.0, k, "> 0");
    each_dtw([value](RobustDtwConfig& d) { d.graph_detrend.cross_weight = value; });
  };
  setters["robust_edge_weight"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value > 0.0, k, "> 0");
    each_dtw([value](RobustDtwConfig& d) { d.graph_detrend.robust_edge_weight = value; });
  };
  setters["neighborhood"] = [&](const json& v, const std::string& k) {
    const int value = integer_value(v, k);
    check(value >= 0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.graph_detrend.neighborhood = value; });
  };
  setters["radius"] = [&](const json& v, const std::string& k) {
    const int value = integer_value(v, k);
    check(value >= 1, k, ">= 1");
    each_dtw([value](RobustDtwConfig& d) { d.radius = value; });
  };
  setters["min_level_size"] = [&](const json& v, const std::string& k) {
    const int value = integer_value(v, k);
    check(value >= 4, k, ">= 4");
    each_dtw([value](RobustDtwConfig& d) { d.min_level_size = value; });
  };
  setters["inner_iterations"] = [&](const json& v, const std::string& k) {
    const int value = integer_value(v, k);
    check(value >= 1, k, ">= 1");
    each_dtw([value](RobustDtwConfig& d) { d.inner_iterations = value; });
  };
  setters["early_exit_rel_change"] = [&](const json& v, const std::string& k) {
    const double value = number_value(v, k);
    check(value >= 0.0, k, ">= 0");
    each_dtw([value](RobustDtwConfig& d) { d.early_exit_rel_change = value; });
  };
  setters["lof_k"] = [&](const json& v, const std::string& k) {
    config.lof.k_neighbors = integer_value(v, k);
    check(config.lof.k_neighbors >= 1, k, ">= 1");
  };
  setters["lof_contamination"] = [&](const json& v, const std::string& k) {
    config.lof.contamination = number_value(v, k);
    check(config.lof.contamination > 0.0 && config.lof.contamination < 1.0, k,
          "strictly between 0 and 1");
  };
  setters["period_threshold"] = [&](const json& v, const std::string& k) {
    config.period_threshold = number_value(v, k);
    check(config.period_threshold > 0.0, k, "> 0");
  };
  setters["iqr_factor"] = [&](const json& v, const std::string& k) {
    config.iqr_factor = number_value(v, k);
    check(config.iqr_factor > 0.0, k, "> 0");
  };

  for (const auto& [key, value] : root.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    it->second(value, key);
  }
  return config;
}

AppConfig load_app_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_app_config(text);
}

}  // namespace robustdtw
