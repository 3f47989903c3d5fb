#include "dispbox/combinatorics.hpp"

#include <doctest.h>

#include <set>

using namespace dispbox;

TEST_CASE("checked_binomial values and cap") {
  CHECK(*checked_binomial(8, 4, 1000) == 70);
  CHECK(*checked_binomial(5, 1, 1000) == 5);
  CHECK(*checked_binomial(5, 0, 1000) == 1);
  CHECK(*checked_binomial(5, 7, 1000) == 0);
  CHECK(!checked_binomial(64, 32, 10'000'000).has_value());
  // Symmetric index: partial products of C(33,32) never pass through C(33,16).
  CHECK(*checked_binomial(33, 32, 10'000'000) == 33);
}

TEST_CASE("colex enumeration order") {
  std::vector<int> s{0, 1};
  std::vector<std::vector<int>> all{s};
  while (next_colex_subset(s, 4)) all.push_back(s);
  const std::vector<std::vector<int>> expected{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  CHECK(all == expected);
}

TEST_CASE("rank and unrank invert each other") {
  std::vector<int> s{0, 1, 2};
  std::uint64_t rank = 0;
  do {
    CHECK(colex_rank(s) == rank);
    CHECK(colex_unrank(rank, 3, 7) == s);
    ++rank;
  } while (next_colex_subset(s, 7));
  CHECK(rank == *checked_binomial(7, 3, 1000));
}

TEST_CASE("enumeration yields each subset once") {
  std::vector<int> s{0, 1, 2};
  std::set<std::vector<int>> seen;
  do {
    CHECK(seen.insert(s).second);
  } while (next_colex_subset(s, 6));
  CHECK(seen.size() == 20);  // C(6,3)
}
