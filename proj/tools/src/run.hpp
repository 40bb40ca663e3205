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

#ifndef AMEU_TOOLS_RUN_HPP
#define AMEU_TOOLS_RUN_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameu/error.hpp"
#include "ameu/params.hpp"

namespace ameu::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitData = 4;

int exit_code(ErrorKind kind) noexcept;

struct GlobalOptions {
  std::string config_path;  // empty selects the built-in parameter set
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  std::size_t grid_n = 2000;
};

/// Collects the outputs of one subcommand and writes
/// <out>/<subcommand>.manifest.json listing every file produced.
class Run {
 public:
  Run(std::string subcommand, const GlobalOptions& global, const ModelConfig& config);

  const ModelConfig& config() const noexcept { return config_; }
  const GlobalOptions& global() const noexcept { return global_; }

  /// Path for an output file inside --out; the file is listed in the manifest.
  std::filesystem::path output(const std::string& name);
  void option(const std::string& key, nlohmann::json value);
  void diagnostic(const std::string& key, nlohmann::json value);
  /// Marks the subcommand as Monte Carlo so the seed is recorded.
  void uses_seed() { seeded_ = true; }

  void write_json(const std::string& name, const nlohmann::json& doc);
  void write_manifest() const;

 private:
  std::string subcommand_;
  GlobalOptions global_;
  ModelConfig config_;
  nlohmann::json options_ = nlohmann::json::object();
  nlohmann::json diagnostics_ = nlohmann::json::object();
  std::vector<std::string> outputs_;
  bool seeded_ = false;
  std::chrono::steady_clock::time_point start_;
};

/// Comma-separated numeric columns with a fixed header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

/// Shortest decimal form used in file names and column labels.
std::string label(double x);

}  // namespace ameu::cli

#endif  // AMEU_TOOLS_RUN_HPP
