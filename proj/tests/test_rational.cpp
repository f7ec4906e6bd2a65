#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zonomorse/rational.hpp"

using namespace zm;

TEST_CASE("vector arithmetic is exact") {
  Vec a{Q(1, 3), Q(1, 6)};
  Vec b{Q(2, 3), Q(-1, 6)};
  CHECK((a + b) == Vec{Q(1), Q(0)});
  CHECK((a - b) == Vec{Q(-1, 3), Q(1, 3)});
  CHECK((Q(6) * a) == Vec{Q(2), Q(1)});
  CHECK(dot(a, b) == Q(2, 9) - Q(1, 36));
  CHECK(norm2(Vec{Q(3), Q(4)}) == Q(25));
  CHECK((-a) == Vec{Q(-1, 3), Q(-1, 6)});
  CHECK(Vec(3).is_zero());
  CHECK_FALSE(a.is_zero());
}

TEST_CASE("lexicographic order is a strict weak order usable for map keys") {
  Vec a{Q(0), Q(1)};
  Vec b{Q(0), Q(2)};
  Vec c{Q(1), Q(-5)};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(a < c);
  CHECK_FALSE(a < a);
}

TEST_CASE("primitive scales to coprime integers with positive leading entry") {
  CHECK(primitive(Vec{Q(2, 3), Q(-4, 3)}) == Vec{Q(1), Q(-2)});
  CHECK(primitive(Vec{Q(-1, 2), Q(1, 4)}) == Vec{Q(2), Q(-1)});
  CHECK(primitive(Vec{Q(0), Q(0)}) == Vec{Q(0), Q(0)});
  CHECK(primitive(Vec{Q(0), Q(-7)}) == Vec{Q(0), Q(1)});
  // idempotent
  Vec v{Q(6), Q(-10), Q(4)};
  CHECK(primitive(primitive(v)) == primitive(v));
  CHECK(primitive(v) == Vec{Q(3), Q(-5), Q(2)});
}

TEST_CASE("solve_linear: unique solution") {
  std::vector<Vec> rows = {Vec{Q(2), Q(1)}, Vec{Q(1), Q(-1)}};
  auto sol = solve_linear(rows, Vec{Q(4), Q(-1)});
  REQUIRE(sol.kind == LinearSolution::Unique);
  CHECK(sol.x == Vec{Q(1), Q(2)});
  CHECK(sol.rank == 2);
}

TEST_CASE("solve_linear: inconsistent system") {
  std::vector<Vec> rows = {Vec{Q(1), Q(1)}, Vec{Q(2), Q(2)}};
  auto sol = solve_linear(rows, Vec{Q(1), Q(3)});
  CHECK(sol.kind == LinearSolution::None);
}

TEST_CASE("solve_linear: underdetermined system reports a kernel basis") {
  std::vector<Vec> rows = {Vec{Q(1), Q(1), Q(1)}};
  auto sol = solve_linear(rows, Vec{Q(3)});
  REQUIRE(sol.kind == LinearSolution::Many);
  CHECK(sol.rank == 1);
  REQUIRE(sol.kernel.size() == 2);
  // particular solution solves the system
  CHECK(dot(rows[0], sol.x) == Q(3));
  // kernel vectors are independent solutions of the homogeneous system
  for (const auto& k : sol.kernel) {
    CHECK_FALSE(k.is_zero());
    CHECK(dot(rows[0], k) == Q(0));
  }
  CHECK(rank_of(sol.kernel) == 2);
}

TEST_CASE("rank_of") {
  CHECK(rank_of({Vec{Q(1), Q(0)}, Vec{Q(0), Q(1)}}) == 2);
  CHECK(rank_of({Vec{Q(1), Q(2)}, Vec{Q(2), Q(4)}}) == 1);
  CHECK(rank_of({Vec{Q(0), Q(0)}}) == 0);
  CHECK(rank_of({}) == 0);
  CHECK(rank_of({Vec{Q(1), Q(1), Q(0)}, Vec{Q(0), Q(1), Q(1)}, Vec{Q(1), Q(0), Q(-1)}}) == 2);
}

TEST_CASE("project_span onto independent and dependent spanning sets") {
  Vec x{Q(1), Q(1)};
  CHECK(project_span({Vec{Q(1), Q(0)}}, x) == Vec{Q(1), Q(0)});
  CHECK(project_span({Vec{Q(1), Q(0)}, Vec{Q(2), Q(0)}}, x) == Vec{Q(1), Q(0)});
  CHECK(project_span({Vec{Q(1), Q(1)}, Vec{Q(1), Q(-1)}}, x) == x);
  CHECK(project_span({}, x) == Vec(2));

  // residual is orthogonal to every spanning vector; projection idempotent
  std::vector<Vec> basis = {Vec{Q(1), Q(2), Q(0)}, Vec{Q(0), Q(1), Q(1)}};
  Vec y{Q(3), Q(-1), Q(4)};
  Vec p = project_span(basis, y);
  for (const auto& b : basis) CHECK(dot(y - p, b) == Q(0));
  CHECK(project_span(basis, p) == p);
}

TEST_CASE("rng is deterministic and respects bounds") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(7);
  for (int i = 0; i < 200; ++i) {
    int64_t v = c.uniform(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
    Q q = c.rational(10, 4);
    CHECK(q >= Q(-10));
    CHECK(q <= Q(10));
  }
  // seed 0 still produces a usable stream
  Rng z(0);
  CHECK(z.next() != z.next());
}

TEST_CASE("errors carry their kind") {
  try {
    fail(ErrorKind::Capacity, "too many generators");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Capacity);
    CHECK(std::string(e.what()) == "too many generators");
  }
  CHECK_NOTHROW(require(true, ErrorKind::Precondition, ""));
  CHECK_THROWS_AS(require(false, ErrorKind::PaperContradiction, "bad"), Error);
}
