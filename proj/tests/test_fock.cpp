#include <doctest.h>

#include <set>

#include "liefock/errors.hpp"
#include "liefock/fock.hpp"

using namespace liefock;

namespace {

// Brute-force count of occupation tuples with each entry in [0, cap] summing to n.
std::size_t brute_count(int modes, int cap, int n) {
  std::size_t count = 0;
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  while (true) {
    int sum = 0;
    for (int x : occ) sum += x;
    if (sum == n) ++count;
    std::size_t k = 0;
    while (k < occ.size() && occ[k] == cap) occ[k++] = 0;
    if (k == occ.size()) break;
    ++occ[k];
  }
  return count;
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

TEST_CASE("three boson modes at N=90 give the triangular count") {
  const auto b = enumerate_basis(std::vector<ModeSpec>(3, ModeSpec::boson(90)), 90);
  CHECK(b.size() == 4186u);
  CHECK(b.size() == 91u * 92u / 2u);
}

TEST_CASE("unconstrained single boson has cutoff + 1 states") {
  CHECK(enumerate_basis({ModeSpec::boson(5)}).size() == 6u);
}

TEST_CASE("four boson modes at N=2 match stars and bars") {
  const auto b = enumerate_basis(std::vector<ModeSpec>(4, ModeSpec::boson(2)), 2);
  CHECK(b.size() == 10u);
  CHECK(b.size() == brute_count(4, 2, 2));
}

TEST_CASE("constrained counts match brute force") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 12; ++n) {
      const auto b = enumerate_basis(std::vector<ModeSpec>(static_cast<std::size_t>(m), ModeSpec::boson(n == 0 ? 1 : n)), n);
      CAPTURE(m);
      CAPTURE(n);
      CHECK(b.size() == brute_count(m, n, n));
      CHECK(b.size() == binomial(n + m - 1, m - 1));
    }
  }
}

TEST_CASE("fermion modes give 2^f states") {
  for (int f = 1; f <= 6; ++f) {
    CHECK(enumerate_basis(std::vector<ModeSpec>(static_cast<std::size_t>(f), ModeSpec::fermion())).size() == (1u << f));
  }
}

TEST_CASE("index_of and state_at are inverse") {
  const auto b = enumerate_basis({ModeSpec::boson(3), ModeSpec::fermion(), ModeSpec::spin(2)});
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b.state_at(i)) == i);
  CHECK(b.index_of({0, 0, 0}) == 0u);
}

TEST_CASE("two modes at N=4 order |0,4> first and |4,0> last") {
  const auto b = enumerate_basis({ModeSpec::boson(4), ModeSpec::boson(4)}, 4);
  CHECK(b.state_at(0) == BasisState{0, 4});
  CHECK(index_of(b, {4, 0}) == 4u);
}

TEST_CASE("ordering is strict and duplicate free") {
  const auto b = enumerate_basis(std::vector<ModeSpec>(3, ModeSpec::boson(4)), 4);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b.state_at(i - 1) < b.state_at(i));
  std::set<BasisState> seen(b.states().begin(), b.states().end());
  CHECK(seen.size() == b.size());
}

TEST_CASE("enumeration errors") {
  CHECK_THROWS_AS(enumerate_basis({}), InvalidArgument);
  CHECK_THROWS_AS(enumerate_basis({ModeSpec::boson(2), ModeSpec::boson(2)}, 5), InfeasibleSector);
  CHECK_THROWS_AS(enumerate_basis({ModeSpec::boson(2)}, -1), InvalidArgument);
  const auto b = enumerate_basis({ModeSpec::boson(2)});
  CHECK_THROWS_AS(b.index_of({3}), StateLookupError);
  try {
    b.index_of({7});
  } catch (const StateLookupError& e) {
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("mode validity") {
  CHECK_THROWS_AS(ModeSpec::boson(0), InvalidArgument);
  CHECK_THROWS_AS(ModeSpec::spin(0), InvalidArgument);
  CHECK(ModeSpec::fermion().capacity == 1);
  CHECK(ModeSpec::spin(3).level_count() == 4);
  CHECK(ModeSpec::spin(3).spin() == doctest::Approx(1.5));
}

TEST_CASE("basis json round trip") {
  const auto b = enumerate_basis({ModeSpec::boson(3), ModeSpec::spin(2)}, 3);
  const auto j = b.to_json();
  CHECK(j.at("count") == b.size());
  CHECK(j.at("version") == kBasisSchemaVersion);
  CHECK_FALSE(j.contains("states"));
  const auto back = FockBasis::from_json(j);
  CHECK(back.states() == b.states());
}
