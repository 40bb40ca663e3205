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

#ifndef AMEU_CONFIG_IO_HPP
#define AMEU_CONFIG_IO_HPP

#include <filesystem>
#include <nlohmann/json.hpp>

#include "ameu/equilibrium.hpp"
#include "ameu/params.hpp"

namespace ameu {

/// {"endowment": {"mu_c", "sigma_c"},
///  "share": {"lambda", "omega_bar", "nu"} or {"mu_coeffs", "sigma_coeffs"},
///  "rho", "preferences": {"phi", "gamma"}, "ambiguity": {"kappa", "alpha"}}
nlohmann::json config_to_json(const ModelConfig& config);

/// Every key is required; unknown keys are rejected. Throws ParseError for
/// malformed documents and InvalidArgument when invariants fail.
ModelConfig config_from_json(const nlohmann::json& doc);

ModelConfig load_config(const std::filesystem::path& path);

nlohmann::json constants_to_json(const EquilibriumConstants& constants);

}  // namespace ameu

#endif  // AMEU_CONFIG_IO_HPP
