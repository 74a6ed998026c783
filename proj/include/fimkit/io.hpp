#pragma once

// Presentation files: JSON documents with fields field, m, box, generators,
// relations and an optional list of matrix patches.

#include <optional>
#include <string>
#include <vector>

#include "fimkit/constructors.hpp"

namespace fimkit {

/// Replaces one structure matrix after construction.
struct Patch {
  Shape object;
  enum class Kind { Inclusion, Transposition } kind = Kind::Inclusion;
  int direction = 1;  // 1-based
  int index = 1;      // j of s_{i,j}, transpositions only
  Matrix matrix;
};

struct PresentationFile {
  Presentation presentation;
  std::vector<Patch> patches;
};

/// Throws ParseError with line and column for syntax errors and with the
/// offending path (for example relations[1].terms[0].injection) otherwise.
/// `field` overrides the field named in the document.
PresentationFile parse_presentation(const std::string& text, std::optional<Field> field = {});
PresentationFile read_presentation(const std::string& path, std::optional<Field> field = {});
std::string emit_presentation(const PresentationFile& file);

/// Builds the module on `box`, or on the document's box when absent.
TruncatedModule build_module(const PresentationFile& file, std::optional<Shape> box = {});

}  // namespace fimkit
