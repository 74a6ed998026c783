#pragma once

// Reports for the command-line front end. Every command produces an ordered
// JSON tree; the table format is a rendering of the same tree.

#include <optional>
#include <string>

#include <json.hpp>

#include "fimkit/io.hpp"
#include "fimkit/stability.hpp"

namespace fimkit {

using Report = nlohmann::ordered_json;

struct RunConfig {
  std::string command;  // expand | analyze | check | shift | nagpal | decompose | hilbert
  std::string input;
  std::optional<Shape> box;
  std::optional<Field> field;
  std::optional<Shape> shift;
  std::optional<Shape> at;
  int s_max = 2;
};

struct RunResult {
  Report report;
  int exit_code = 0;  // 0 ok, 1 violation or inconclusive verdict
};

/// Throws ParseError, UnsupportedError or BoxError on bad input.
RunResult run_command(const RunConfig& config, const PresentationFile& file);

std::string render_structured(const Report& report);
std::string render_table(const Report& report);

Report dims_report(const GradedDims& dims, bool nonzero_only);

}  // namespace fimkit
