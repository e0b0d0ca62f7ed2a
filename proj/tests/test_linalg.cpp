#include <doctest.h>

#include "supercf/linalg.hpp"
#include "supercf/rng.hpp"

using namespace supercf;

namespace {

MatQ make(int r, int c, std::initializer_list<long> vals) {
  MatQ m(r, c);
  auto it = vals.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Rational(*it++);
  return m;
}

MatQ random_matrix(Rng& rng, int r, int c, long lo = -5, long hi = 5) {
  MatQ m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Rational(rng.next_int(lo, hi), rng.next_int(1, 4));
  return m;
}

}  // namespace

TEST_CASE("solve_linear pinned examples") {
  // identity
  MatQ id = MatQ::identity(3);
  VecQ b = {Rational(3), Rational(-1), Rational(7, 2)};
  auto x = solve_linear(id, b);
  REQUIRE(x);
  CHECK(*x == b);

  // zero matrix, nonzero rhs -> inconsistent
  MatQ z(2, 2);
  auto none = solve_linear(z, {Rational(1), Rational(0)});
  CHECK(!none);

  // {x+y=3, x-y=1} -> (2,1)
  MatQ a = make(2, 2, {1, 1, 1, -1});
  auto s = solve_linear(a, {Rational(3), Rational(1)});
  REQUIRE(s);
  CHECK((*s)[0] == Rational(2));
  CHECK((*s)[1] == Rational(1));
}

TEST_CASE("kernel_basis pinned examples") {
  CHECK(kernel_basis(MatQ::identity(4)).empty());

  auto k3 = kernel_basis(MatQ(3, 3));
  CHECK(k3.size() == 3);

  auto k = kernel_basis(make(2, 2, {1, 1, 1, 1}));
  REQUIRE(k.size() == 1);
  // proportional to (1,-1), normalized with positive leading entry
  CHECK(k[0][0] == Rational(1));
  CHECK(k[0][1] == Rational(-1));
}

TEST_CASE("rank-nullity on random matrices") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = int(rng.next_int(1, 7));
    const int c = int(rng.next_int(1, 7));
    MatQ a = random_matrix(rng, r, c);
    CHECK(rank(a) + int(kernel_basis(a).size()) == c);
  }
}

TEST_CASE("kernel vectors are exact null vectors and solve solutions solve") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = int(rng.next_int(1, 6));
    const int c = int(rng.next_int(1, 6));
    MatQ a = random_matrix(rng, r, c);
    for (const auto& v : kernel_basis(a)) {
      CHECK(is_zero_vec(a * v));
    }
    VecQ target(c);
    for (auto& t : target) t = Rational(rng.next_int(-3, 3));
    VecQ b = a * target;  // consistent by construction
    auto x = solve_linear(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
  }
}

TEST_CASE("inverse round-trips") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = int(rng.next_int(1, 6));
    MatQ a = random_matrix(rng, n, n);
    auto inv = inverse(a);
    if (!inv) {
      CHECK(rank(a) < n);
      continue;
    }
    CHECK((*inv * a) == MatQ::identity(n));
    CHECK((a * *inv) == MatQ::identity(n));
  }
  CHECK(!inverse(MatQ(2, 2)));
}

TEST_CASE("solver reuses one factorization") {
  MatQ a = make(3, 3, {2, 0, 1, 0, 1, 0, 4, 0, 2});  // rank 2
  LinearSolver solver(a);
  CHECK(solver.rank() == 2);
  auto x = solver.solve({Rational(3), Rational(5), Rational(6)});
  REQUIRE(x);
  CHECK(a * *x == VecQ{Rational(3), Rational(5), Rational(6)});
  CHECK(!solver.solve({Rational(1), Rational(0), Rational(0)}));
}

TEST_CASE("pivot_columns finds a column-space basis") {
  MatQ a = make(3, 4, {1, 2, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0});
  auto p = pivot_columns(a);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == 0);
  CHECK(p[1] == 2);
}

TEST_CASE("primitive normalization") {
  VecQ v = {Rational(-2, 3), Rational(4, 3), Rational(0)};
  VecQ n = primitive_normalized(v);
  CHECK(n == VecQ{Rational(1), Rational(-2), Rational(0)});
  VecQ zeros(3);
  CHECK(primitive_normalized(zeros) == zeros);
}
