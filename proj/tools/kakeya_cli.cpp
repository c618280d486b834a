#include <CLI11.hpp>

#include "kakeya/hull2d.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Convex-geometry toolkit for Kakeya-type translate sets"};
  app.require_subcommand(0, 1);
  CLI11_PARSE(app, argc, argv);
  if (app.get_subcommands().empty()) {
    std::cout << app.help() << std::endl;
    return 0;
  }
  return 0;
}
