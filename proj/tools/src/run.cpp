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

#include "run.hpp"

#include <cstdio>

#include "ameu/config_io.hpp"

namespace ameu::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonpositivePropensity:
    case ErrorKind::ConditionViolated:
    case ErrorKind::OutOfRange:
    case ErrorKind::UnknownFigure:
      return kExitValidation;
    case ErrorKind::SingularSystem:
    case ErrorKind::ResidualTooLarge:
    case ErrorKind::TruncationTooLarge:
    case ErrorKind::NormalizationFailure:
    case ErrorKind::GridMismatch:
    case ErrorKind::OptimizerDiverged:
    case ErrorKind::NoRoot:
      return kExitNumerical;
    case ErrorKind::DomainError:
    case ErrorKind::ParseError:
    case ErrorKind::GapError:
    case ErrorKind::NonpositiveError:
    case ErrorKind::InsufficientData:
      return kExitData;
  }
  return kExitNumerical;
}

Run::Run(std::string subcommand, const GlobalOptions& global, const ModelConfig& config)
    : subcommand_(std::move(subcommand)),
      global_(global),
      config_(config),
      start_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(global_.out);
}

std::filesystem::path Run::output(const std::string& name) {
  outputs_.push_back(name);
  return global_.out / name;
}

void Run::option(const std::string& key, nlohmann::json value) {
  options_[key] = std::move(value);
}

void Run::diagnostic(const std::string& key, nlohmann::json value) {
  diagnostics_[key] = std::move(value);
}

void Run::write_json(const std::string& name, const nlohmann::json& doc) {
  std::ofstream f(output(name));
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + (global_.out / name).string());
  f << doc.dump(2) << '\n';
}

void Run::write_manifest() const {
  nlohmann::json m;
  m["subcommand"] = subcommand_;
  m["tool_version"] = AMEU_VERSION;
  m["config"] = config_to_json(config_);
  m["config_path"] = global_.config_path;
  m["grid_n"] = global_.grid_n;
  m["seeds"] = seeded_ ? nlohmann::json::array({global_.seed}) : nlohmann::json::array();
  m["options"] = options_;
  m["diagnostics"] = diagnostics_;
  m["outputs"] = outputs_;
  m["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  std::ofstream f(global_.out / (subcommand_ + ".manifest.json"));
  f << m.dump(2) << '\n';
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) {
    out_ << (i ? "," : "") << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) {
    fail(ErrorKind::InvalidArgument, "CSV row has the wrong number of columns");
  }
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.15g", values[i]);
    out_ << (i ? "," : "") << buf;
  }
  out_ << '\n';
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace ameu::cli
