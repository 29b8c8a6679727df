// Command-line front end: reads a deck and runs one command against it.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gradwb/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gradings, automorphism group schemes and Weyl groups over test rings"};
  std::string deck_path;
  gw::CliOptions opts;
  std::vector<std::string> command;
  app.add_option("--deck", deck_path, "Deck file with the declarations")->required();
  app.add_option("--cap", opts.cap, "Bound on |R|^(n^2) for exhaustive enumeration");
  app.add_option("--mode", opts.mode, "Weyl group mode without 'over': closure or rational");
  app.add_option("--report", opts.report, "Report format (plain)");
  app.add_option("command", command, "Command and its arguments")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::ifstream in(deck_path);
  if (!in) {
    std::cerr << "error: cannot read deck " << deck_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  gw::Deck deck;
  try {
    deck = gw::parse_deck(buf.str());
  } catch (const gw::Error& e) {
    std::cerr << "error: " << deck_path << ": " << e.what() << "\n";
    return 2;
  }
  const gw::Report rep = gw::run_command(deck, command, opts);
  std::cout << rep.text();
  return rep.status;
}
