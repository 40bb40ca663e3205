/*
 * Copyright 2026 The ameu-pricing Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ameu/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "ameu/error.hpp"

namespace ameu {

namespace {

using nlohmann::json;

const json& object(const json& doc, const std::string& where,
                   std::initializer_list<const char*> keys) {
  if (!doc.is_object()) fail(ErrorKind::ParseError, where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : doc.items()) {
    if (!allowed.count(k)) {
      fail(ErrorKind::ParseError, "unknown key '" + k + "' in " + where);
    }
  }
  for (const char* k : keys) {
    if (!doc.contains(k)) {
      fail(ErrorKind::ParseError, where + " is missing '" + k + "'");
    }
  }
  return doc;
}

double number(const json& doc, const char* key, const std::string& where) {
  const json& v = doc.at(key);
  if (!v.is_number()) {
    fail(ErrorKind::ParseError, where + "." + key + " must be a number");
  }
  return v.get<double>();
}

std::vector<double> numbers(const json& doc, const char* key,
                            const std::string& where) {
  const json& v = doc.at(key);
  if (!v.is_array()) {
    fail(ErrorKind::ParseError, where + "." + key + " must be an array");
  }
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) {
      fail(ErrorKind::ParseError, where + "." + key + " must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json config_to_json(const ModelConfig& c) {
  json share;
  if (const auto* q = dynamic_cast<const MeanRevertingQuadratic*>(c.share.get())) {
    share = {{"lambda", q->lambda()}, {"omega_bar", q->omega_bar()}, {"nu", q->nu()}};
  } else if (const auto* p =
                 dynamic_cast<const PolynomialDynamics*>(c.share.get())) {
    share = {{"mu_coeffs", p->mu_coeffs()}, {"sigma_coeffs", p->sigma_coeffs()}};
  } else {
    fail(ErrorKind::InvalidArgument, "share dynamics are not serialisable");
  }
  return {
      {"endowment", {{"mu_c", c.endowment.mu_c}, {"sigma_c", c.endowment.sigma_c}}},
      {"share", share},
      {"rho", c.rho},
      {"preferences",
       {{"phi", c.preferences.phi}, {"gamma", c.preferences.gamma}}},
      {"ambiguity",
       {{"kappa", c.ambiguity.kappa}, {"alpha", c.ambiguity.alpha}}},
  };
}

ModelConfig config_from_json(const json& doc) {
  object(doc, "config", {"endowment", "share", "rho", "preferences", "ambiguity"});
  ModelConfig c;
  const json& e = object(doc.at("endowment"), "endowment", {"mu_c", "sigma_c"});
  c.endowment = {number(e, "mu_c", "endowment"), number(e, "sigma_c", "endowment")};

  const json& s = doc.at("share");
  if (s.is_object() && s.contains("mu_coeffs")) {
    object(s, "share", {"mu_coeffs", "sigma_coeffs"});
    c.share = std::make_shared<PolynomialDynamics>(
        numbers(s, "mu_coeffs", "share"), numbers(s, "sigma_coeffs", "share"));
  } else {
    object(s, "share", {"lambda", "omega_bar", "nu"});
    c.share = std::make_shared<MeanRevertingQuadratic>(
        number(s, "lambda", "share"), number(s, "omega_bar", "share"),
        number(s, "nu", "share"));
  }

  c.rho = number(doc, "rho", "config");
  const json& p = object(doc.at("preferences"), "preferences", {"phi", "gamma"});
  c.preferences = {number(p, "phi", "preferences"),
                   number(p, "gamma", "preferences")};
  const json& a = object(doc.at("ambiguity"), "ambiguity", {"kappa", "alpha"});
  c.ambiguity = {number(a, "kappa", "ambiguity"), number(a, "alpha", "ambiguity")};
  check_invariants(c);
  return c;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

json constants_to_json(const EquilibriumConstants& e) {
  return {{"delta_plus", e.delta_plus}, {"delta_minus", e.delta_minus},
          {"theta_star", e.theta_star}, {"delta", e.delta},
          {"v_lower", e.v_lower},       {"v_upper", e.v_upper},
          {"r_f", e.r_f}};
}

}  // namespace ameu
