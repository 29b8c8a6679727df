#include "gradwb/galg.hpp"

#include <algorithm>
#include <map>

#include "gradwb/comrings.hpp"

namespace gw {

Algebra::Algebra(Field F, Table table, std::vector<std::string> basis_names)
    : F_(std::move(F)), n_(table.size()), table_(std::move(table)), names_(std::move(basis_names)) {
  for (const auto& row : table_) {
    if (row.size() != n_) throw InputError("algebra structure table is not square");
    for (const auto& v : row) {
      if (v.size() != n_) throw InputError("algebra structure constant has wrong length");
    }
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < n_; ++i) names_.push_back("b" + std::to_string(i));
  }
  if (names_.size() != n_) throw InputError("algebra basis name count does not match dimension");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw InputError("duplicate basis name '" + names_[i] + "'");
    }
  }
}

std::size_t Algebra::basis_index(const std::string& name) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (names_[i] == name) return i;
  }
  throw InputError("unknown basis element '" + name + "'");
}

Algebra::Vec Algebra::mul(const Vec& x, const Vec& y) const {
  Vec out(n_, F_.zero());
  for (std::size_t i = 0; i < n_; ++i) {
    if (F_.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (F_.is_zero(y[j])) continue;
      Scalar c = F_.mul(x[i], y[j]);
      for (std::size_t k = 0; k < n_; ++k) {
        if (!F_.is_zero(table_[i][j][k])) out[k] = F_.add(out[k], F_.mul(c, table_[i][j][k]));
      }
    }
  }
  return out;
}

std::optional<Algebra::Vec> Algebra::unit() const {
  // u b_j = b_j and b_j u = b_j for all j, linear in u.
  linalg::Mat M;
  linalg::Vec rhs;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = 0; k < n_; ++k) {
      linalg::Vec left(n_), right(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        left[i] = table_[i][j][k];
        right[i] = table_[j][i][k];
      }
      M.push_back(std::move(left));
      M.push_back(std::move(right));
      rhs.push_back(j == k ? F_.one() : F_.zero());
      rhs.push_back(j == k ? F_.one() : F_.zero());
    }
  }
  if (n_ == 0) return std::nullopt;
  return linalg::solve(F_, M, rhs);
}

bool Algebra::is_zero_product() const {
  for (const auto& row : table_) {
    for (const auto& v : row) {
      if (!linalg::is_zero(F_, v)) return false;
    }
  }
  return true;
}

Algebra Algebra::over(const Field& K) const {
  Table t = table_;
  for (auto& row : t) {
    for (auto& v : row) {
      for (auto& c : v) c = K.coerce(F_, c);
    }
  }
  return Algebra(K, std::move(t), names_);
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.F_ == b.F_ && a.table_ == b.table_ && a.names_ == b.names_;
}

std::optional<GradingWitness> find_grading_violation(const Algebra& A, const AbelianGroup& G,
                                                     const std::vector<AbelianGroup::Elem>& labels) {
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto target = G.add(labels[i], labels[j]);
      const auto& v = A.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (!A.field().is_zero(v[k]) && labels[k] != target) return GradingWitness{i, j, k};
      }
    }
  }
  return std::nullopt;
}

namespace {

void check_labels(const Algebra& A, const AbelianGroup& G, std::vector<AbelianGroup::Elem>& labels) {
  if (labels.size() != A.dim()) throw InputError("grading needs one degree per basis vector");
  for (auto& l : labels) {
    if (l.size() != G.ngens()) throw InputError("degree label has the wrong number of coordinates for " + G.format());
    l = G.normalize(l);
  }
}

}  // namespace

Grading Grading::build(Algebra A, AbelianGroup G, std::vector<AbelianGroup::Elem> labels) {
  check_labels(A, G, labels);
  if (auto w = find_grading_violation(A, G, labels)) {
    const auto& nm = A.basis_names();
    throw GradingAxiomError("grading axiom fails: " + nm[w->i] + "*" + nm[w->j] + " has a nonzero " + nm[w->k] +
                                "-coordinate of degree " + G.format(labels[w->k]) + ", expected degree " +
                                G.format(G.add(labels[w->i], labels[w->j])),
                            *w);
  }
  Grading g;
  g.A_ = std::move(A);
  g.G_ = std::move(G);
  g.labels_ = std::move(labels);
  g.support_ = g.labels_;
  std::sort(g.support_.begin(), g.support_.end());
  g.support_.erase(std::unique(g.support_.begin(), g.support_.end()), g.support_.end());
  g.components_.assign(g.support_.size(), {});
  g.comp_of_.resize(g.labels_.size());
  for (std::size_t i = 0; i < g.labels_.size(); ++i) {
    const std::size_t s = g.support_index(g.labels_[i]);
    g.comp_of_[i] = s;
    g.components_[s].push_back(i);
  }
  const std::size_t m = g.support_.size();
  g.pattern_.assign(m, std::vector<bool>(m, false));
  const Field& F = g.A_.field();
  for (std::size_t i = 0; i < g.labels_.size(); ++i) {
    for (std::size_t j = 0; j < g.labels_.size(); ++j) {
      if (!linalg::is_zero(F, g.A_.product(i, j))) g.pattern_[g.comp_of_[i]][g.comp_of_[j]] = true;
    }
  }
  return g;
}

std::optional<std::size_t> Grading::find_support(const AbelianGroup::Elem& g) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), g);
  if (it == support_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

std::size_t Grading::support_index(const AbelianGroup::Elem& g) const {
  if (auto s = find_support(g)) return *s;
  throw InputError(G_.format(g) + " is not in the support");
}

bool Grading::is_thin() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.size() == 1; });
}

bool verify_grading_generic(const Algebra& A, const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& labels0) {
  auto labels = labels0;
  check_labels(A, G, labels);
  const TestRing F = TestRing::base_field(A.field());
  const GroupAlgebra FG(F, G);
  const std::size_t n = A.dim();
  using Gen = std::vector<GroupAlgebraElement>;  // an element of A (x) FG, by basis coordinate
  auto psi = [&](const Algebra::Vec& x) {
    Gen out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = FG.monomial({x[k]}, labels[k]);
    return out;
  };
  auto product = [&](const Gen& x, const Gen& y) {
    Gen out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const auto xy = FG.mul(x[i], y[j]);
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& c = A.product(i, j)[k];
          if (!A.field().is_zero(c)) out[k] = FG.add(out[k], FG.scale({c}, xy));
        }
      }
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Algebra::Vec bi(n, A.field().zero()), bj(n, A.field().zero());
      bi[i] = A.field().one();
      bj[j] = A.field().one();
      const Gen lhs = psi(A.product(i, j));
      const Gen rhs = product(psi(bi), psi(bj));
      for (std::size_t k = 0; k < n; ++k) {
        if (!FG.equal(lhs[k], rhs[k])) return false;
      }
    }
  }
  return true;
}

AbelianGroup::Elem UniversalGrading::fold_apply(const AbelianGroup& G, const AbelianGroup::Elem& u) const {
  AbelianGroup::Elem out = G.zero();
  for (std::size_t i = 0; i < u.size(); ++i) out = G.add(out, G.scale(u[i], fold[i]));
  return out;
}

UniversalGrading universal_group(const Grading& g) {
  const std::size_t m = g.support_size();
  const auto& G = g.group();
  Presentation P;
  P.ngens = m;
  P.relations = IntMatrix(0, m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (!g.pattern()[s][t]) continue;
      const std::size_t st = g.support_index(G.add(g.support()[s], g.support()[t]));
      std::vector<mpz_class> row(m, 0);
      row[s] += 1;
      row[t] += 1;
      row[st] -= 1;
      P.relations.append_row(row);
    }
  }
  PresentedGroup pg = group_from_presentation(P);
  UniversalGrading out;
  out.U = pg.group;
  out.degU = pg.projection;
  for (const auto& lift : pg.lift) {
    AbelianGroup::Elem img = G.zero();
    for (std::size_t s = 0; s < m; ++s) {
      img = G.add(img, G.scale(static_cast<std::int64_t>(lift[s].get_si()), g.support()[s]));
    }
    out.fold.push_back(img);
  }
  for (std::size_t s = 0; s < m; ++s) {
    if (out.fold_apply(G, out.degU[s]) != g.support()[s]) {
      throw IdentityViolation("universal group does not fold back onto degree " + g.format_support(s));
    }
  }
  std::vector<AbelianGroup::Elem> labels;
  for (std::size_t i = 0; i < g.algebra().dim(); ++i) labels.push_back(out.degU[g.component_of(i)]);
  try {
    out.regraded = Grading::build(g.algebra(), out.U, labels);
  } catch (const GradingAxiomError& e) {
    throw IdentityViolation(std::string("regrading by the universal group failed: ") + e.what());
  }
  return out;
}

Grading extend_scalars(const Grading& g, const Field& K) {
  if (!K.contains(g.algebra().field())) {
    throw InputError(K.name() + " is not an extension of " + g.algebra().field().name());
  }
  return reduce_to(g, K);
}

Grading reduce_to(const Grading& g, const Field& K) {
  return Grading::build(g.algebra().over(K), g.group(), g.labels());
}

ProductPattern product_pattern(const Grading& g) {
  ProductPattern out;
  for (std::size_t s = 0; s < g.support_size(); ++s) {
    for (std::size_t t = 0; t < g.support_size(); ++t) {
      (g.pattern()[s][t] ? out.nonzero : out.zero).emplace_back(s, t);
    }
  }
  return out;
}

}  // namespace gw
