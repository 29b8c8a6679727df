#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "gradwb/cli.hpp"

using namespace gw;

namespace {

std::string read_deck(const std::string& name) {
  std::ifstream in(std::string(GRADWB_DECK_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Report run(const std::string& deck, const std::string& command, CliOptions opts = {}) {
  std::istringstream in(command);
  std::vector<std::string> args;
  for (std::string w; in >> w;) args.push_back(w);
  return run_command(parse_deck(read_deck(deck)), args, opts);
}

bool has_line(const Report& r, const std::string& l) {
  return std::find(r.lines.begin(), r.lines.end(), l) != r.lines.end();
}

const char* kCubicDefaultNames = R"(group C3 = Z/3
algebra K over Q dim 3
mul b0 b0 = b0
mul b0 b1 = b1
mul b0 b2 = b2
mul b1 b0 = b1
mul b1 b1 = b2
mul b1 b2 = 2 b0
mul b2 b0 = b2
mul b2 b1 = 2 b0
mul b2 b2 = 2 b1
grading G on K by C3 deg b0=0 b1=1 b2=2
)";

}  // namespace

TEST_CASE("bundled decks parse and round-trip") {
  for (const char* name : {"ex24.deck", "ex26.deck", "ex34.deck", "triv.deck"}) {
    const Deck d = parse_deck(read_deck(name));
    CHECK_FALSE(d.empty());
    const std::string printed = print_deck(d);
    const Deck again = parse_deck(printed);
    CHECK(again == d);
    CHECK(print_deck(again) == printed);
  }
  const Deck ex34 = parse_deck(read_deck("ex34.deck"));
  CHECK(ex34.algebras.size() == 1);
  CHECK(ex34.gradings.size() == 1);
  CHECK(parse_deck("").empty());
  CHECK(parse_deck("# only a comment\n\n").empty());
}

TEST_CASE("random decks round-trip") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> fields = {"Q", "F2", "F3", "F5", "ext(F3,[1,0,1])"};
  for (int trial = 0; trial < 60; ++trial) {
    std::ostringstream deck;
    const std::string F = fields[rng() % fields.size()];
    const std::size_t n = 1 + rng() % 3;
    deck << "field K = " << F << "\n";
    deck << "ring R0 = dual K " << 2 + rng() % 2 << "\n";
    deck << "ring R1 = product R0 K\n";
    deck << "algebra A over K dim " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rng() % 2) continue;
        // Trivially graded products may use any basis element.
        deck << "mul b" << i << " b" << j << " = " << rng() % 5 << " b" << rng() % n << " + b" << rng() % n << "\n";
      }
    }
    deck << "grading G on A by 0 deg";
    for (std::size_t i = 0; i < n; ++i) deck << " b" << i << "=0";
    deck << "\n";
    const Deck d = parse_deck(deck.str());
    const Deck again = parse_deck(print_deck(d));
    CHECK(again == d);
    CHECK(print_deck(again) == print_deck(d));
  }
}

TEST_CASE("deck errors name the line") {
  std::string bad = kCubicDefaultNames;
  bad.replace(bad.find("b2=2"), 4, "b2=1");
  try {
    parse_deck(bad);
    FAIL("expected a deck error");
  } catch (const DeckError& e) {
    CHECK(e.line == 12);
    CHECK(std::string(e.what()).find("witness (b1,b1)") != std::string::npos);
  }
  CHECK_NOTHROW(parse_deck(kCubicDefaultNames));
  auto line_of = [](const std::string& text) {
    try {
      parse_deck(text);
    } catch (const DeckError& e) {
      return e.line;
    }
    return std::size_t{0};
  };
  CHECK(line_of("group C = Z/3\ngroup C = Z/2\n") == 2);
  CHECK(line_of("algebra A over F4 dim 1\n") == 1);
  CHECK(line_of("algebra A over Q dim 1\nmul b0 b7 = b0\n") == 2);
  CHECK(line_of("ring R = dual F3\n") == 1);
  CHECK(line_of("ring R = dual F3 2\n\nalgebra A over F3 dim 1\ngrading G on A by Z/2 deg b0=0\nmap m on A over R = [[1,2]]\n") == 5);
  CHECK(line_of("frobnicate X\n") == 1);
  CHECK(line_of("algebra A over Q dim 2\nmul b0 b0 = 1/0 b1\n") == 2);
}

TEST_CASE("reference commands") {
  CHECK(has_line(run("ex34.deck", "universal Cubic"), "U=Z/3"));
  const Report w = run("ex34.deck", "weyl Cubic");
  CHECK(w.status == 0);
  CHECK(has_line(w, "weyl.order=2"));
  CHECK(has_line(w, "weyl.mode=closure"));
  CHECK(has_line(run("ex34.deck", "weyl Cubic over Q"), "weyl.order=1"));
  CHECK(has_line(run("ex34.deck", "weyl Cubic", CliOptions{kDefaultPointCap, "rational", "plain"}), "weyl.order=1"));
  CHECK(has_line(run("ex34.deck", "weyl Cubic over F7"), "weyl.order=1"));

  const Report v = run("ex26.deck", "verify-theorem ParaHurwitz over F3eps");
  CHECK(v.status == 0);
  CHECK(has_line(v, "cent==stab: ok (6/6)"));
  CHECK(has_line(v, "norm==autGamma: ok (6/6)"));

  const Report m24 = run("ex24.deck", "member ZeroPair swap");
  CHECK(has_line(m24, "autgamma=yes"));
  CHECK(has_line(m24, "norm.generic=yes"));
  CHECK(has_line(m24, "dgroup.norm=non-member"));
  CHECK(has_line(m24, "dgroup.certificate=(3,0) -> 1*g3 != 1"));

  const Report m26 = run("ex26.deck", "member ParaHurwitz swap");
  CHECK(has_line(m26, "norm.generic=yes"));
  CHECK(std::any_of(m26.lines.begin(), m26.lines.end(), [](const auto& l) { return l.rfind("WARN ", 0) == 0; }));

  CHECK(has_line(run("ex26.deck", "points ParaHurwitz over F3eps aut"), "points.count=6"));
  CHECK(has_line(run("ex26.deck", "points ParaHurwitz over F3 diag"), "points.count=1"));
  CHECK(has_line(run("ex26.deck", "idempotents F3eps"), "idempotents.count=1"));
  CHECK(has_line(run("ex24.deck", "ses ZeroPair over F3"), "ses=ok"));
  CHECK(has_line(run("triv.deck", "check DualTrivial"), "thin=no"));
}

TEST_CASE("exit statuses") {
  CHECK(run("ex34.deck", "frobnicate").status == 2);
  CHECK(run("ex34.deck", "weyl Nope").status == 2);
  CHECK(run("ex34.deck", "weyl Cubic over").status == 2);
  CHECK(run("triv.deck", "weyl DualTrivial").status == 2);
  CHECK(run("ex34.deck", "weyl Cubic", CliOptions{kDefaultPointCap, "closure", "json"}).status == 2);
  CHECK(run("ex24.deck", "points ZeroPair over Q").status == 2);
  CHECK(run("ex24.deck", "points ZeroPair over F5 aut", CliOptions{100, "closure", "plain"}).status == 2);
}

TEST_CASE("reports are byte-deterministic") {
  for (const char* cmd : {"verify-theorem ZeroPair over Qeps", "member ZeroPair halfswap", "points ZeroPair over F3 stab"}) {
    CHECK(run("ex24.deck", cmd).text() == run("ex24.deck", cmd).text());
  }
  CHECK(run("ex34.deck", "verify-theorem Cubic over Q").text() ==
        run("ex34.deck", "verify-theorem Cubic over Q").text());
}
