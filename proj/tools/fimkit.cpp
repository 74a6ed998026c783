#include <iostream>

#include <CLI11.hpp>

#include "fimkit/report.hpp"

namespace {

fimkit::Shape parse_shape_arg(const std::string& text) {
  return fimkit::Shape::parse(text.front() == '(' ? text : "(" + text + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finitely presented FI^m-modules"};
  app.require_subcommand(1, 1);

  std::string input, box, field, out = "table", shift, at;
  int s_max = 2;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"expand", "dimension table on the box"},
      {"analyze", "homology, torsion, relative projectivity, complex, fits and stability"},
      {"check", "module axioms and functor dimension identities"},
      {"shift", "shift by --shift and test relative projectivity"},
      {"nagpal", "complex of relative projectives and its thresholds"},
      {"decompose", "irreducible multiplicities (characteristic 0)"},
      {"hilbert", "product-polynomial fit of the dimension table"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", input, "presentation file")->required();
    sub->add_option("--box,-b", box, "box bound, e.g. 4,4");
    sub->add_option("--field,-f", field, "Q or Fp:p");
    sub->add_option("--out,-o", out, "table or structured")->check(CLI::IsMember({"table", "structured"}));
    sub->add_option("--shift,-s", shift, "shift amount, e.g. 1,1");
    sub->add_option("--at", at, "single object for decompose");
    sub->add_option("--smax", s_max, "highest homological degree for analyze")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  fimkit::RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  config.input = input;
  config.s_max = s_max;
  try {
    if (!field.empty()) config.field = fimkit::Field::parse(field);
    if (!box.empty()) config.box = parse_shape_arg(box);
    if (!shift.empty()) config.shift = parse_shape_arg(shift);
    if (!at.empty()) config.at = parse_shape_arg(at);
    const fimkit::PresentationFile file = fimkit::read_presentation(input, config.field);
    const fimkit::RunResult result = fimkit::run_command(config, file);
    std::cout << (out == "structured" ? fimkit::render_structured(result.report) : fimkit::render_table(result.report));
    return result.exit_code;
  } catch (const fimkit::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const fimkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
