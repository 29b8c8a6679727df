#ifndef GRADWB_CLI_HPP
#define GRADWB_CLI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gradwb/comrings.hpp"
#include "gradwb/galg.hpp"
#include "gradwb/points.hpp"

namespace gw {

/// Deck parse failure; the message starts with "line N: ".
class DeckError : public InputError {
 public:
  DeckError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Named objects declared by a deck, in declaration order per kind.
///
/// Every declaration keeps the references it was written with, so printing
/// reproduces the deck in canonical form.
struct Deck {
  struct FieldDecl {
    std::string name;
    Field field;
  };
  struct GroupDecl {
    std::string name;
    AbelianGroup group;
  };
  struct RingDecl {
    std::string name;
    /// Canonical recipe words, e.g. {"dual", "F3", "2"}.
    std::vector<std::string> recipe;
    TestRing ring;
  };
  struct AlgebraDecl {
    std::string name, field_ref;
    Algebra algebra;
  };
  struct GradingDecl {
    std::string name, algebra_ref, group_ref;
    Grading grading;
  };
  struct MapDecl {
    std::string name, algebra_ref, ring_ref;
    PointMatrix point;
  };

  std::vector<FieldDecl> fields;
  std::vector<GroupDecl> groups;
  std::vector<RingDecl> rings;
  std::vector<AlgebraDecl> algebras;
  std::vector<GradingDecl> gradings;
  std::vector<MapDecl> maps;

  /// Declared names first, then the built-in fields Q and Fp.
  Field field(const std::string& ref) const;
  /// A declared group, or a literal such as Z/6.
  AbelianGroup group(const std::string& ref) const;
  /// A declared ring, or the base-field ring of a field reference.
  TestRing ring(const std::string& ref) const;
  const Algebra& algebra(const std::string& ref) const;
  const Grading& grading(const std::string& ref) const;
  const MapDecl& map(const std::string& ref) const;

  bool empty() const;
  friend bool operator==(const Deck& a, const Deck& b);
};

/// One declaration per line, `#` starts a comment:
///   field F9 = ext(F3,[1,0,1])
///   group C3 = Z/3
///   ring R = field F3 | dual F3 2 | trunc F3 [c0,...,1] | product R1 R2 | groupalg F3 C3
///   algebra A over Q dim 3 basis one u u2
///   mul u u2 = 2 one            (terms "coef name" or "name" joined by " + "; unset products are 0)
///   grading G on A by C3 deg one=0 u=1 u2=2
///   map phi on A over R = [[1,0],[0,1]]
Deck parse_deck(const std::string& text);
std::string print_deck(const Deck& deck);

struct CliOptions {
  std::int64_t cap = kDefaultPointCap;
  /// "closure" or "rational"; only `weyl` without `over` reads it.
  std::string mode = "closure";
  std::string report = "plain";
};

struct Report {
  std::vector<std::string> lines;
  /// 0 ok, 1 a checked identity failed, 2 bad input.
  int status = 0;
  std::string text() const;
};

/// Commands: check G | support G | universal G | weyl G [over F] | points G over R [aut|stab|autgamma|diag]
///   | member G phi | idempotents R | ses G over F | verify-theorem G over R
Report run_command(const Deck& deck, const std::vector<std::string>& args, const CliOptions& opts = {});

}  // namespace gw

#endif  // GRADWB_CLI_HPP
