#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zm {

using Q = mpq_class;
using Z = mpz_class;

enum class ErrorKind {
  Precondition,        // caller violated an operation contract
  InsufficientRadius,  // patch too small for the requested computation
  Capacity,            // size limits of the brute-force kernels exceeded
  Unsupported,         // requested model/type not implemented
  PaperContradiction,  // a checked mathematical invariant failed
  Config,              // bad scenario configuration / usage
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool ok, ErrorKind k, const std::string& msg) {
  if (!ok) fail(k, msg);
}

// Dense rational vector. Dimensions stay tiny (<= 8), so no effort is spent
// on anything beyond exactness and a deterministic ordering.
struct Vec {
  std::vector<Q> c;

  Vec() = default;
  explicit Vec(int dim) : c(dim, Q(0)) {}
  Vec(std::initializer_list<Q> xs) : c(xs) {}

  int dim() const { return (int)c.size(); }
  Q& operator[](int i) { return c[i]; }
  const Q& operator[](int i) const { return c[i]; }

  bool operator==(const Vec& o) const { return c == o.c; }
  bool operator!=(const Vec& o) const { return c != o.c; }
  bool operator<(const Vec& o) const {  // lexicographic, for map keys
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = 0; i < c.size(); ++i) {
      int s = cmp(c[i], o.c[i]);
      if (s) return s < 0;
    }
    return false;
  }

  Vec& operator+=(const Vec& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Q& s, Vec a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  Vec operator-() const {
    Vec r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  std::string str() const;
};

Q dot(const Vec& a, const Vec& b);
inline Q norm2(const Vec& a) { return dot(a, a); }

// Scales to integer entries with content 1; first nonzero entry positive.
// Zero vector maps to itself. Used to identify directions up to positive scale.
Vec primitive(const Vec& v);
// Same, but identifies the full line: first nonzero entry forced positive.
inline Vec line_rep(const Vec& v) { return primitive(v); }

struct LinearSolution {
  enum Kind { Unique, None, Many } kind;
  Vec x;             // valid for Unique; one particular solution for Many
  int rank = 0;
  std::vector<Vec> kernel;  // basis of the homogeneous solution space (Many)
};

// Exact Gaussian elimination on the augmented system A x = b.
LinearSolution solve_linear(std::vector<Vec> rows, Vec rhs);

int rank_of(std::vector<Vec> rows);

// Orthogonal projection of x onto span(basis) (origin-based). Basis vectors
// need not be independent.
Vec project_span(const std::vector<Vec>& basis, const Vec& x);

// Deterministic RNG used by every sampled check; seeds are reported.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {  // splitmix64
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int64_t uniform(int64_t lo, int64_t hi) {  // inclusive bounds
    return lo + (int64_t)(next() % (uint64_t)(hi - lo + 1));
  }
  Q rational(int64_t num_range, int64_t max_den) {
    Q q(uniform(-num_range, num_range), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
};

}  // namespace zm
