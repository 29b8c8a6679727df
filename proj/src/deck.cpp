#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "gradwb/cli.hpp"
#include "gradwb/poly.hpp"
#include "gradwb/text.hpp"

namespace gw {

namespace {

template <class Decl>
const Decl* find_decl(const std::vector<Decl>& v, const std::string& name) {
  for (const auto& d : v) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::optional<Field> builtin_field(const std::string& ref) {
  if (ref == "Q") return Field::rationals();
  if (ref.size() >= 2 && ref[0] == 'F' && std::all_of(ref.begin() + 1, ref.end(), ::isdigit)) {
    const std::int64_t p = text::parse_int(ref.substr(1), "field characteristic");
    if (is_prime(p)) return Field::prime(p);
  }
  return std::nullopt;
}

std::vector<Scalar> parse_coeff_list(const Field& F, const std::string& lit) {
  const std::string s = text::strip(lit);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("expected a coefficient list [c0,...,cn]");
  std::vector<Scalar> out;
  for (const auto& c : text::split_top(std::string_view(s).substr(1, s.size() - 2), ',')) out.push_back(F.parse(c));
  return out;
}

std::string coeff_list(const Field& F, const std::vector<Scalar>& cs) {
  return "[" + text::join(cs, ",", [&](const Scalar& c) { return F.format(c); }) + "]";
}

}  // namespace

Field Deck::field(const std::string& ref) const {
  if (const auto* d = find_decl(fields, ref)) return d->field;
  if (auto f = builtin_field(ref)) return *f;
  // ext(BASE,[c0,...,1]): the same syntax Field::name prints.
  if (text::starts_with(ref, "ext(") && ref.back() == ')') {
    const auto parts = text::split_top(std::string_view(ref).substr(4, ref.size() - 5), ',');
    if (parts.size() != 2) throw InputError("field extension needs ext(BASE,[c0,...,1])");
    const Field base = field(parts[0]);
    return Field::extension(base, parse_coeff_list(base, parts[1]));
  }
  throw InputError("unknown field '" + ref + "'");
}

AbelianGroup Deck::group(const std::string& ref) const {
  if (const auto* d = find_decl(groups, ref)) return d->group;
  if (ref == "0" || text::starts_with(ref, "Z")) return AbelianGroup::parse(ref);
  throw InputError("unknown group '" + ref + "'");
}

TestRing Deck::ring(const std::string& ref) const {
  if (const auto* d = find_decl(rings, ref)) return d->ring;
  try {
    return TestRing::base_field(field(ref));
  } catch (const InputError&) {
    throw InputError("unknown ring '" + ref + "'");
  }
}

const Algebra& Deck::algebra(const std::string& ref) const {
  if (const auto* d = find_decl(algebras, ref)) return d->algebra;
  throw InputError("unknown algebra '" + ref + "'");
}

const Grading& Deck::grading(const std::string& ref) const {
  if (const auto* d = find_decl(gradings, ref)) return d->grading;
  throw InputError("unknown grading '" + ref + "'");
}

const Deck::MapDecl& Deck::map(const std::string& ref) const {
  if (const auto* d = find_decl(maps, ref)) return *d;
  throw InputError("unknown map '" + ref + "'");
}

bool Deck::empty() const {
  return fields.empty() && groups.empty() && rings.empty() && algebras.empty() && gradings.empty() && maps.empty();
}

bool operator==(const Deck& a, const Deck& b) {
  auto same = [](const auto& x, const auto& y, auto eq) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].name != y[i].name || !eq(x[i], y[i])) return false;
    }
    return true;
  };
  return same(a.fields, b.fields, [](const auto& x, const auto& y) { return x.field == y.field; }) &&
         same(a.groups, b.groups, [](const auto& x, const auto& y) { return x.group == y.group; }) &&
         same(a.rings, b.rings,
              [](const auto& x, const auto& y) { return x.recipe == y.recipe && x.ring == y.ring; }) &&
         same(a.algebras, b.algebras,
              [](const auto& x, const auto& y) { return x.field_ref == y.field_ref && x.algebra == y.algebra; }) &&
         same(a.gradings, b.gradings,
              [](const auto& x, const auto& y) {
                return x.algebra_ref == y.algebra_ref && x.group_ref == y.group_ref &&
                       x.grading.algebra() == y.grading.algebra() && x.grading.group() == y.grading.group() &&
                       x.grading.labels() == y.grading.labels();
              }) &&
         same(a.maps, b.maps, [](const auto& x, const auto& y) {
           return x.algebra_ref == y.algebra_ref && x.ring_ref == y.ring_ref && x.point.R == y.point.R &&
                  x.point == y.point;
         });
}

namespace {

class DeckParser {
 public:
  Deck run(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string s = raw.substr(0, raw.find('#'));
      s = text::strip(s);
      if (s.empty()) continue;
      try {
        declaration(s);
      } catch (const DeckError&) {
        throw;
      } catch (const GradingAxiomError& e) {
        throw DeckError(line_, e.what());
      } catch (const Error& e) {
        throw DeckError(line_, e.what());
      }
    }
    try {
      finish_algebra();
    } catch (const Error& e) {
      throw DeckError(pending_line_, e.what());
    }
    return std::move(deck_);
  }

 private:
  struct PendingAlgebra {
    std::string name, field_ref;
    Field F = Field::rationals();
    std::vector<std::string> basis;
    Algebra::Table table;
    std::set<std::pair<std::size_t, std::size_t>> set;
  };

  Deck deck_;
  std::size_t line_ = 0, pending_line_ = 0;
  std::optional<PendingAlgebra> pending_;
  std::set<std::string> names_;

  void claim(const std::string& name) {
    if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
      throw InputError("invalid name '" + name + "'");
    }
    if (!names_.insert(name).second) throw InputError("name '" + name + "' is declared twice");
  }

  static void expect(const std::vector<std::string>& w, std::size_t i, const std::string& word) {
    if (w.size() <= i || w[i] != word) throw InputError("expected '" + word + "' at word " + std::to_string(i + 1));
  }

  static std::string after_equals(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("expected '='");
    return text::strip(std::string_view(s).substr(eq + 1));
  }

  void declaration(const std::string& s) {
    const auto w = text::words(s);
    const std::string& kind = w[0];
    if (kind == "mul") return mul(s, w);
    finish_algebra();
    if (w.size() < 2) throw InputError("declaration '" + kind + "' needs a name");
    if (kind == "field") {
      expect(w, 2, "=");
      if (w.size() != 4) throw InputError("field declaration takes one expression");
      claim(w[1]);
      deck_.fields.push_back({w[1], deck_.field(w[3])});
    } else if (kind == "group") {
      expect(w, 2, "=");
      claim(w[1]);
      deck_.groups.push_back({w[1], deck_.group(after_equals(s))});
    } else if (kind == "ring") {
      expect(w, 2, "=");
      claim(w[1]);
      std::vector<std::string> recipe(w.begin() + 3, w.end());
      deck_.rings.push_back({w[1], recipe, build_ring(recipe)});
    } else if (kind == "algebra") {
      algebra(w);
    } else if (kind == "grading") {
      grading(w);
    } else if (kind == "map") {
      map(s, w);
    } else {
      throw InputError("unknown declaration '" + kind + "'");
    }
  }

  TestRing build_ring(const std::vector<std::string>& r) const {
    if (r.empty()) throw InputError("ring recipe is empty");
    auto arity = [&](std::size_t n) {
      if (r.size() != n + 1) throw InputError("ring recipe '" + r[0] + "' takes " + std::to_string(n) + " arguments");
    };
    if (r[0] == "field") {
      arity(1);
      return TestRing::base_field(deck_.field(r[1]));
    }
    if (r[0] == "dual") {
      arity(2);
      return TestRing::dual_numbers(deck_.field(r[1]), static_cast<int>(text::parse_int(r[2], "dual number order")));
    }
    if (r[0] == "trunc") {
      arity(2);
      const Field F = deck_.field(r[1]);
      return TestRing::truncated_poly(F, parse_coeff_list(F, r[2]));
    }
    if (r[0] == "product") {
      arity(2);
      return TestRing::product(deck_.ring(r[1]), deck_.ring(r[2]));
    }
    if (r[0] == "groupalg") {
      arity(2);
      return TestRing::group_algebra_finite(deck_.field(r[1]), deck_.group(r[2]));
    }
    throw InputError("unknown ring recipe '" + r[0] + "'");
  }

  void algebra(const std::vector<std::string>& w) {
    // algebra A over F dim n [basis b1 ... bn]
    expect(w, 2, "over");
    expect(w, 4, "dim");
    claim(w[1]);
    PendingAlgebra p;
    p.name = w[1];
    p.field_ref = w[3];
    p.F = deck_.field(w[3]);
    const auto n = static_cast<std::size_t>(text::parse_int(w.size() > 5 ? w[5] : "", "algebra dimension"));
    if (w.size() > 6) {
      expect(w, 6, "basis");
      p.basis.assign(w.begin() + 7, w.end());
      if (p.basis.size() != n) throw InputError("basis lists " + std::to_string(p.basis.size()) + " names for dim " + std::to_string(n));
    } else {
      for (std::size_t i = 0; i < n; ++i) p.basis.push_back("b" + std::to_string(i));
    }
    p.table.assign(n, std::vector<Algebra::Vec>(n, Algebra::Vec(n, p.F.zero())));
    pending_ = std::move(p);
    pending_line_ = line_;
  }

  std::size_t basis_index(const std::string& name) const {
    const auto& b = pending_->basis;
    auto it = std::find(b.begin(), b.end(), name);
    if (it == b.end()) throw InputError("unknown basis element '" + name + "' of algebra " + pending_->name);
    return static_cast<std::size_t>(it - b.begin());
  }

  void mul(const std::string& s, const std::vector<std::string>& w) {
    // mul a b = c1 x1 + c2 x2 ...
    if (!pending_) throw InputError("'mul' must follow an algebra declaration");
    expect(w, 3, "=");
    const std::size_t i = basis_index(w[1]), j = basis_index(w[2]);
    if (!pending_->set.insert({i, j}).second) throw InputError("product " + w[1] + "*" + w[2] + " given twice");
    const Field& F = pending_->F;
    auto& out = pending_->table[i][j];
    const std::string rhs = after_equals(s);
    if (rhs == "0") return;
    for (const auto& term : text::split_top(rhs, '+')) {
      const auto tw = text::words(term);
      if (tw.empty() || tw.size() > 2) throw InputError("bad product term '" + term + "'");
      const Scalar c = tw.size() == 2 ? F.parse(tw[0]) : F.one();
      const std::size_t k = basis_index(tw.back());
      out[k] = F.add(out[k], c);
    }
  }

  void finish_algebra() {
    if (!pending_) return;
    PendingAlgebra p = std::move(*pending_);
    pending_.reset();
    deck_.algebras.push_back({p.name, p.field_ref, Algebra(p.F, std::move(p.table), p.basis)});
  }

  void grading(const std::vector<std::string>& w) {
    // grading G on A by GROUP deg b1=g1 ...
    expect(w, 2, "on");
    expect(w, 4, "by");
    expect(w, 6, "deg");
    claim(w[1]);
    const Algebra& A = deck_.algebra(w[3]);
    const AbelianGroup G = deck_.group(w[5]);
    std::vector<std::optional<AbelianGroup::Elem>> labels(A.dim());
    for (std::size_t k = 7; k < w.size(); ++k) {
      const auto eq = w[k].find('=');
      if (eq == std::string::npos) throw InputError("degree entry '" + w[k] + "' needs name=element");
      const std::size_t i = A.basis_index(w[k].substr(0, eq));
      if (labels[i]) throw InputError("degree of " + w[k].substr(0, eq) + " given twice");
      labels[i] = G.parse_element(w[k].substr(eq + 1));
    }
    std::vector<AbelianGroup::Elem> out;
    for (std::size_t i = 0; i < A.dim(); ++i) {
      if (!labels[i]) throw InputError("missing degree for " + A.basis_names()[i]);
      out.push_back(*labels[i]);
    }
    try {
      deck_.gradings.push_back({w[1], w[3], w[5], Grading::build(A, G, out)});
    } catch (const GradingAxiomError& e) {
      const auto& nm = A.basis_names();
      throw DeckError(line_, std::string(e.what()) + " (witness (" + nm[e.witness.i] + "," + nm[e.witness.j] + "))");
    }
  }

  void map(const std::string& s, const std::vector<std::string>& w) {
    // map phi on A over R = [[...]]
    expect(w, 2, "on");
    expect(w, 4, "over");
    expect(w, 6, "=");
    claim(w[1]);
    const Algebra& A = deck_.algebra(w[3]);
    const TestRing R = deck_.ring(w[5]);
    // The table must make sense over the ring's field (embedding or reduction mod p).
    if (!(R.field() == A.field())) A.over(R.field());
    deck_.maps.push_back({w[1], w[3], w[5], PointMatrix::parse(R, A.dim(), after_equals(s))});
  }
};

}  // namespace

Deck parse_deck(const std::string& text) { return DeckParser().run(text); }

std::string print_deck(const Deck& deck) {
  std::ostringstream out;
  for (const auto& f : deck.fields) out << "field " << f.name << " = " << f.field.name() << "\n";
  for (const auto& g : deck.groups) out << "group " << g.name << " = " << g.group.format() << "\n";
  for (const auto& r : deck.rings) {
    out << "ring " << r.name << " =";
    if (r.recipe[0] == "trunc") {
      out << " trunc " << r.recipe[1] << " " << coeff_list(r.ring.field(), parse_coeff_list(r.ring.field(), r.recipe[2]));
    } else {
      for (const auto& w : r.recipe) out << " " << w;
    }
    out << "\n";
  }
  for (const auto& a : deck.algebras) {
    const Algebra& A = a.algebra;
    const Field& F = A.field();
    const auto& nm = A.basis_names();
    out << "algebra " << a.name << " over " << a.field_ref << " dim " << A.dim() << " basis";
    for (const auto& b : nm) out << " " << b;
    out << "\n";
    for (std::size_t i = 0; i < A.dim(); ++i) {
      for (std::size_t j = 0; j < A.dim(); ++j) {
        std::vector<std::string> terms;
        for (std::size_t k = 0; k < A.dim(); ++k) {
          const Scalar& c = A.product(i, j)[k];
          if (F.is_zero(c)) continue;
          terms.push_back(F.is_one(c) ? nm[k] : F.format(c) + " " + nm[k]);
        }
        if (!terms.empty()) {
          out << "mul " << nm[i] << " " << nm[j] << " = " << text::join(terms, " + ", [](const auto& t) { return t; })
              << "\n";
        }
      }
    }
  }
  for (const auto& g : deck.gradings) {
    out << "grading " << g.name << " on " << g.algebra_ref << " by " << g.group_ref << " deg";
    for (std::size_t i = 0; i < g.grading.algebra().dim(); ++i) {
      out << " " << g.grading.algebra().basis_names()[i] << "=" << g.grading.group().format(g.grading.degree(i));
    }
    out << "\n";
  }
  for (const auto& m : deck.maps) {
    out << "map " << m.name << " on " << m.algebra_ref << " over " << m.ring_ref << " = " << m.point.format() << "\n";
  }
  return out.str();
}

}  // namespace gw
