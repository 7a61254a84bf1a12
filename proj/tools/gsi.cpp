// Command-line driver: gsi <command> [model-file] [--dot] [--cap N] ...

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gsi/model.hpp"
#include "gsi/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Semi-invariant presentations for gentle string algebras"};
  std::string command;
  std::string path = "-";
  gsi::CommandConfig cfg;
  bool json_flag = false;
  app.add_option("command", command,
                 "validate | color | cover | components | peg | generators | relations | "
                 "presentation | degrees | verify")
      ->required();
  app.add_option("model", path, "model file, '-' for stdin");
  app.add_flag("--dot", cfg.dot, "emit the PEG as DOT (peg only)");
  app.add_flag("--json", json_flag, "emit JSON (the default)");
  app.add_option("--cap", cfg.cap, "oracle coordinate cap")->check(CLI::PositiveNumber);
  app.add_option("--relation-cap", cfg.relation_cap, "f-degree cap for relations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed reported by verify");
  CLI11_PARSE(app, argc, argv);

  std::stringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cout << gsi::error_json("input", "cannot open '" + path + "'").dump(2) << "\n";
      return 1;
    }
    text << in.rdbuf();
  }
  gsi::Model model;
  try {
    model = gsi::parse_model(text.str());
  } catch (const gsi::input_error& e) {
    std::cout << gsi::error_json("input", e.what()).dump(2) << "\n";
    return 1;
  } catch (const gsi::precondition_error& e) {
    std::cout << gsi::error_json("precondition", e.what()).dump(2) << "\n";
    return 1;
  }
  gsi::CommandResult res = gsi::run_command(command, model, cfg);
  std::cout << res.text;
  return res.exit_code;
}
