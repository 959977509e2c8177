#include "fracmix/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracmix/errors.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix {

void ProblemConfig::validate() const {
  if (s < 1) throw DomainError("config: s must be >= 1");
  if (classical_switch) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("config: alpha must lie in (0, 1]");
    if (!(beta > 1.0) || beta > 2.0) throw DomainError("config: beta must lie in (1, 2]");
  } else {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
      throw DomainError("config: alpha must lie strictly in (0, 1); "
                        "set classical_switch for the alpha = 1 endpoint");
    }
    if (!(beta > 1.0) || !(beta < 2.0)) {
      throw DomainError("config: beta must lie strictly in (1, 2); "
                        "set classical_switch for the beta = 2 endpoint");
    }
  }
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("config: a and b must be positive");
  if (K < 1) throw DomainError("config: K must be >= 1");
  if (grid.nx < 4 || grid.ny < 4) throw DomainError("config: grid must be at least 4x4");
  if (const auto* c = std::get_if<double>(&p0)) {
    if (1.0 + *c <= 0.0) {
      throw PositivityViolationError("config: lambda_1 = 1 + p0 = " +
                                     std::to_string(1.0 + *c) + " is not positive");
    }
  } else {
    const auto& samples = std::get<std::vector<double>>(p0);
    if (s != 1) throw DomainError("config: sampled p0 requires s = 1 (numeric eigen path)");
    if (static_cast<int>(samples.size()) < 8 * K) {
      throw DomainError("config: sampled p0 needs >= 8K interior points");
    }
    for (double v : samples) {
      if (!std::isfinite(v)) throw DomainError("config: p0 samples must be finite");
    }
  }
  if (const auto* ps = std::get_if<spectral::PhiSamples>(&phi)) {
    int m = static_cast<int>(ps->values.size()) - 1;
    if (m < 8 || m % 2 != 0) {
      throw DomainError("config: phi samples need an odd count >= 9 (even interval count)");
    }
  }
}

std::vector<spectral::EigenPair> ProblemConfig::eigenpairs() const {
  if (const auto* c = std::get_if<double>(&p0)) {
    return spectral::analytic_eigens(s, *c, K);
  }
  const auto& samples = std::get<std::vector<double>>(p0);
  auto eigs = spectral::numeric_eigens_s1(samples, K);
  if (eigs.front().lambda <= 0.0) {
    throw PositivityViolationError("config: numeric lambda_1 = " +
                                   std::to_string(eigs.front().lambda) + " is not positive");
  }
  return eigs;
}

double ProblemConfig::p0_at(double x) const {
  if (const auto* c = std::get_if<double>(&p0)) return *c;
  const auto& samples = std::get<std::vector<double>>(p0);
  // Samples live on the interior nodes of a uniform grid.
  int n = static_cast<int>(samples.size());
  double h = M_PI / (n + 1);
  double lo = h, hi = M_PI - h;
  if (x <= lo) return samples.front();
  if (x >= hi) return samples.back();
  return lerp_uniform(samples, lo, hi, x);
}

std::string condition5_note() {
  return "jump datum interpreted as u(x,b) - u(x,-a) = phi(x): "
         "the condition-(5) trace at y = a is evaluated at y = -a, matching the "
         "a^beta dependence of Delta(k)";
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw DomainError("config: " + msg); }

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      bad("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double num(const json& j, const std::string& key) {
  if (!j.contains(key)) bad("missing key \"" + key + "\"");
  if (!j[key].is_number()) bad("key \"" + key + "\" must be a number");
  return j[key].get<double>();
}

}  // namespace

ProblemConfig parse_config_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  reject_unknown(j, {"s", "alpha", "beta", "a", "b", "p0", "phi", "K", "grid",
                     "tolerances", "classical_switch"},
                 "top level");
  for (const char* req : {"s", "alpha", "beta", "a", "b", "p0", "phi", "K", "grid"}) {
    if (!j.contains(req)) bad(std::string("missing key \"") + req + "\"");
  }

  ProblemConfig cfg;
  if (!j["s"].is_number_integer()) bad("\"s\" must be an integer");
  cfg.s = j["s"].get<int>();
  cfg.alpha = num(j, "alpha");
  cfg.beta = num(j, "beta");
  cfg.a = num(j, "a");
  cfg.b = num(j, "b");
  if (!j["K"].is_number_integer()) bad("\"K\" must be an integer");
  cfg.K = j["K"].get<int>();

  const json& jp = j["p0"];
  if (jp.is_number()) {
    cfg.p0 = jp.get<double>();
  } else if (jp.is_object()) {
    reject_unknown(jp, {"samples"}, "p0");
    if (!jp.contains("samples") || !jp["samples"].is_array()) bad("p0 object needs \"samples\" array");
    cfg.p0 = jp["samples"].get<std::vector<double>>();
  } else {
    bad("\"p0\" must be a number or {\"samples\": [...]}");
  }

  const json& jphi = j["phi"];
  if (!jphi.is_object()) bad("\"phi\" must be an object");
  reject_unknown(jphi, {"sine_coeffs", "samples"}, "phi");
  if (jphi.contains("sine_coeffs") == jphi.contains("samples")) {
    bad("\"phi\" needs exactly one of \"sine_coeffs\" or \"samples\"");
  }
  if (jphi.contains("sine_coeffs")) {
    if (!jphi["sine_coeffs"].is_array()) bad("phi.sine_coeffs must be an array");
    cfg.phi = spectral::SineCombo{jphi["sine_coeffs"].get<std::vector<double>>()};
  } else {
    if (!jphi["samples"].is_array()) bad("phi.samples must be an array");
    cfg.phi = spectral::PhiSamples{jphi["samples"].get<std::vector<double>>()};
  }

  const json& jg = j["grid"];
  if (!jg.is_object()) bad("\"grid\" must be an object");
  reject_unknown(jg, {"nx", "ny"}, "grid");
  if (!jg.contains("nx") || !jg.contains("ny")) bad("grid needs nx and ny");
  cfg.grid.nx = jg["nx"].get<int>();
  cfg.grid.ny = jg["ny"].get<int>();

  if (j.contains("tolerances")) {
    const json& jt = j["tolerances"];
    if (!jt.is_object()) bad("\"tolerances\" must be an object");
    reject_unknown(jt, {"ml_tol", "delta_ml_tol", "degenerate_threshold", "orthogonality_tol"},
                   "tolerances");
    if (jt.contains("ml_tol")) cfg.tol.ml_tol = jt["ml_tol"].get<double>();
    if (jt.contains("delta_ml_tol")) cfg.tol.delta_ml_tol = jt["delta_ml_tol"].get<double>();
    if (jt.contains("degenerate_threshold"))
      cfg.tol.degenerate_threshold = jt["degenerate_threshold"].get<double>();
    if (jt.contains("orthogonality_tol"))
      cfg.tol.orthogonality_tol = jt["orthogonality_tol"].get<double>();
  }
  if (j.contains("classical_switch")) {
    if (!j["classical_switch"].is_boolean()) bad("\"classical_switch\" must be a boolean");
    cfg.classical_switch = j["classical_switch"].get<bool>();
  }

  cfg.validate();
  return cfg;
}

ProblemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

}  // namespace fracmix
