#include "gradwb/fixtures.hpp"

namespace gw::fixtures {

namespace {

Algebra::Table zero_table(const Field& F, std::size_t n) {
  return Algebra::Table(n, std::vector<Algebra::Vec>(n, Algebra::Vec(n, F.zero())));
}

}  // namespace

Grading zero_product_pair(const Field& F) {
  return Grading::build(Algebra(F, zero_table(F, 2), {"u", "v"}), AbelianGroup::cyclic(6), {{2}, {3}});
}

Grading para_hurwitz(const Field& F) {
  auto t = zero_table(F, 2);
  t[0][0][1] = F.one();
  t[1][1][0] = F.one();
  return Grading::build(Algebra(F, std::move(t), {"e1", "e2"}), AbelianGroup::cyclic(3), {{1}, {2}});
}

Grading pure_cubic(const Field& F, std::int64_t c) {
  auto t = zero_table(F, 3);
  const Scalar cc = F.from_int(c);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i + j < 3) {
        t[i][j][i + j] = F.one();
      } else {
        t[i][j][i + j - 3] = cc;
      }
    }
  }
  return Grading::build(Algebra(F, std::move(t), {"one", "u", "u2"}), AbelianGroup::cyclic(3), {{0}, {1}, {2}});
}

Grading trivial_dual(const Field& F) {
  auto t = zero_table(F, 2);
  t[0][0][0] = F.one();
  t[0][1][1] = F.one();
  t[1][0][1] = F.one();
  return Grading::build(Algebra(F, std::move(t), {"one", "x"}), AbelianGroup(), {{}, {}});
}

}  // namespace gw::fixtures
