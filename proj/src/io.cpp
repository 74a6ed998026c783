#include "fimkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fimkit {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const Json& field_of(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text_of(const Json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  if (j.is_array()) return j.dump();
  fail(path, "expected a string, got " + j.dump());
}

Shape shape_of(const Json& j, const std::string& path) {
  std::string s = text_of(j, path);
  if (j.is_array()) s = "(" + s.substr(1, s.size() - 2) + ")";
  try {
    return Shape::parse(s);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

int int_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer, got " + j.dump());
  return j.get<int>();
}

Scalar scalar_of(const Field& F, const Json& j, const std::string& path) {
  try {
    return F.parse_scalar(text_of(j, path));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string position(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string scalar_text(const Scalar& s) { return s.get_str(); }

}  // namespace

PresentationFile parse_presentation(const std::string& text, std::optional<Field> field) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at " + position(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected an object");

  PresentationFile out;
  Presentation& p = out.presentation;
  if (field) {
    p.field = *field;
  } else if (doc.contains("field")) {
    try {
      p.field = Field::parse(text_of(doc["field"], "field"));
    } catch (const Error& e) {
      fail("field", e.what());
    }
  }
  p.m = int_of(field_of(doc, "m", "document"), "m");
  if (p.m < 1) fail("m", "must be positive");
  if (doc.contains("box")) {
    p.box = shape_of(doc["box"], "box");
    if (p.box->m() != p.m) fail("box", "has " + std::to_string(p.box->m()) + " entries, expected " + std::to_string(p.m));
  }

  const Json& gens = field_of(doc, "generators", "document");
  if (!gens.is_array()) fail("generators", "expected a list");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string path = "generators[" + std::to_string(g) + "]";
    Generator gen{shape_of(field_of(gens[g], "shape", path), path + ".shape"), "g" + std::to_string(g + 1)};
    if (gens[g].contains("label")) gen.label = text_of(gens[g]["label"], path + ".label");
    if (gen.shape.m() != p.m) fail(path + ".shape", "has the wrong number of entries");
    p.generators.push_back(std::move(gen));
  }

  auto generator_index = [&](const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
      const int g = j.get<int>();
      if (g < 0 || g >= static_cast<int>(p.generators.size())) fail(path, "generator index " + std::to_string(g) + " out of range");
      return g;
    }
    const std::string label = text_of(j, path);
    for (std::size_t g = 0; g < p.generators.size(); ++g)
      if (p.generators[g].label == label) return static_cast<int>(g);
    fail(path, "unknown generator \"" + label + "\"");
  };

  if (doc.contains("relations")) {
    const Json& rels = doc["relations"];
    if (!rels.is_array()) fail("relations", "expected a list");
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const std::string path = "relations[" + std::to_string(r) + "]";
      Relation rel{shape_of(field_of(rels[r], "shape", path), path + ".shape"), {}};
      if (rel.shape.m() != p.m) fail(path + ".shape", "has the wrong number of entries");
      const Json& terms = field_of(rels[r], "terms", path);
      if (!terms.is_array()) fail(path + ".terms", "expected a list");
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tp = path + ".terms[" + std::to_string(t) + "]";
        Term term;
        term.gen = generator_index(field_of(terms[t], "gen", tp), tp + ".gen");
        try {
          term.injection = Injection::parse(text_of(field_of(terms[t], "injection", tp), tp + ".injection"), rel.shape);
        } catch (const Error& e) {
          fail(tp + ".injection", e.what());
        }
        const Shape& gs = p.generators[static_cast<std::size_t>(term.gen)].shape;
        if (term.injection.domain() != gs) {
          fail(tp + ".injection", "has domain " + term.injection.domain().to_string() + " but generator \"" +
                                      p.generators[static_cast<std::size_t>(term.gen)].label + "\" has shape " + gs.to_string());
        }
        term.coeff = terms[t].contains("coeff") ? scalar_of(p.field, terms[t]["coeff"], tp + ".coeff") : p.field.from_int(1);
        rel.terms.push_back(std::move(term));
      }
      p.relations.push_back(std::move(rel));
    }
  }

  if (doc.contains("patches")) {
    const Json& patches = doc["patches"];
    if (!patches.is_array()) fail("patches", "expected a list");
    for (std::size_t k = 0; k < patches.size(); ++k) {
      const std::string path = "patches[" + std::to_string(k) + "]";
      Patch patch;
      patch.object = shape_of(field_of(patches[k], "object", path), path + ".object");
      const std::string kind = text_of(field_of(patches[k], "kind", path), path + ".kind");
      if (kind == "inclusion") {
        patch.kind = Patch::Kind::Inclusion;
      } else if (kind == "transposition") {
        patch.kind = Patch::Kind::Transposition;
        patch.index = int_of(field_of(patches[k], "index", path), path + ".index");
      } else {
        fail(path + ".kind", "expected \"inclusion\" or \"transposition\"");
      }
      patch.direction = int_of(field_of(patches[k], "direction", path), path + ".direction");
      if (patch.direction < 1 || patch.direction > p.m) fail(path + ".direction", "out of range");
      const Json& rows = field_of(patches[k], "matrix", path);
      if (!rows.is_array()) fail(path + ".matrix", "expected a list of rows");
      std::vector<std::vector<Scalar>> dense;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array()) fail(path + ".matrix", "expected a list of rows");
        std::vector<Scalar> row;
        for (std::size_t c = 0; c < rows[r].size(); ++c)
          row.push_back(scalar_of(p.field, rows[r][c], path + ".matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        if (!dense.empty() && row.size() != dense.front().size()) fail(path + ".matrix", "rows have different lengths");
        dense.push_back(std::move(row));
      }
      patch.matrix = dense.empty() ? Matrix(p.field, 0, 0) : Matrix::from_dense(p.field, dense);
      out.patches.push_back(std::move(patch));
    }
  }

  try {
    validate(p);
  } catch (const Error& e) {
    throw ParseError(std::string("presentation: ") + e.what());
  }
  return out;
}

PresentationFile read_presentation(const std::string& path, std::optional<Field> field) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_presentation(buf.str(), field);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string emit_presentation(const PresentationFile& file) {
  const Presentation& p = file.presentation;
  Json doc;
  doc["field"] = p.field.name();
  doc["m"] = p.m;
  if (p.box) doc["box"] = p.box->to_string();
  doc["generators"] = Json::array();
  for (const auto& g : p.generators) doc["generators"].push_back({{"shape", g.shape.to_string()}, {"label", g.label}});
  doc["relations"] = Json::array();
  for (const auto& r : p.relations) {
    Json terms = Json::array();
    for (const auto& t : r.terms)
      terms.push_back({{"gen", p.generators[static_cast<std::size_t>(t.gen)].label}, {"injection", t.injection.to_string()}, {"coeff", scalar_text(t.coeff)}});
    doc["relations"].push_back({{"shape", r.shape.to_string()}, {"terms", std::move(terms)}});
  }
  if (!file.patches.empty()) {
    doc["patches"] = Json::array();
    for (const auto& patch : file.patches) {
      Json rows = Json::array();
      for (int r = 0; r < patch.matrix.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < patch.matrix.cols(); ++c) row.push_back(scalar_text(entry_at(patch.matrix.row(r), c)));
        rows.push_back(std::move(row));
      }
      Json j{{"object", patch.object.to_string()}, {"kind", patch.kind == Patch::Kind::Inclusion ? "inclusion" : "transposition"}, {"direction", patch.direction}};
      if (patch.kind == Patch::Kind::Transposition) j["index"] = patch.index;
      j["matrix"] = std::move(rows);
      doc["patches"].push_back(std::move(j));
    }
  }
  return doc.dump(2) + "\n";
}

TruncatedModule build_module(const PresentationFile& file, std::optional<Shape> box) {
  const Presentation& p = file.presentation;
  if (!box) box = p.box;
  if (!box) throw ParseError("no box: give one in the file or on the command line");
  if (box->m() != p.m) throw ParseError("box " + box->to_string() + " has the wrong number of entries");
  TruncatedModule V = from_presentation(p, *box);
  for (const auto& patch : file.patches) {
    if (!V.box().contains(patch.object)) continue;
    const int i = patch.direction - 1;
    try {
      if (patch.kind == Patch::Kind::Inclusion) {
        V = V.with_inclusion(patch.object, i, patch.matrix);
      } else {
        V = V.with_transposition(patch.object, i, patch.index, patch.matrix);
      }
    } catch (const Error& e) {
      throw ParseError("patch at " + patch.object.to_string() + ": " + e.what());
    }
  }
  return V;
}

}  // namespace fimkit
