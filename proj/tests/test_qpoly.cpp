#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lehmer/qpoly.hpp"

using namespace lehmer;

TEST_CASE("q-analogues") {
  CHECK(q_analog(0) == QPoly::zero());
  CHECK(q_analog(1) == QPoly::one());
  CHECK(q_analog(2) == QPoly{1, 1});
  CHECK(q_analog(5).eval_at_one() == 5);

  auto p = q_analog(2) * q_analog(6) * q_analog(8) * q_analog(12);
  CHECK(p.degree() == 24);
  CHECK(p.eval_at_one() == 1152);
}

TEST_CASE("arithmetic properties on random inputs") {
  std::mt19937 rng(7);
  auto random_poly = [&] {
    std::vector<long long> c(1 + rng() % 6);
    for (auto& x : c) x = int(rng() % 9) - 4;
    return QPoly(std::move(c));
  };
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
  }
}

TEST_CASE("palindromicity") {
  CHECK(is_palindromic(QPoly::one()));
  CHECK(is_palindromic(QPoly{1, 2, 1}));
  CHECK(!is_palindromic(QPoly{1, 3, 6, 12}));
  CHECK_THROWS_AS(is_palindromic(QPoly::zero()), Error);
}

TEST_CASE("exact division") {
  auto p = q_analog(6) * q_analog(8);
  auto q = divide_exact(p, q_analog(6));
  REQUIRE(q.has_value());
  CHECK(*q == q_analog(8));
  CHECK(!divide_exact(q_analog(7), q_analog(3)).has_value());
  CHECK(!divide_exact(QPoly{1, 1}, QPoly{1, 1, 1}).has_value());
}

TEST_CASE("greedy q-analogue factorization") {
  auto p = q_analog(2) * q_analog(6) * q_analog(8) * q_analog(12);
  auto ns = factor_q_analogues(p);
  REQUIRE(ns.has_value());
  CHECK(*ns == std::vector<int>{2, 6, 8, 12});

  auto h3 = q_analog(2) * q_analog(6) * q_analog(10);
  REQUIRE(factor_q_analogues(h3).has_value());
  CHECK(*factor_q_analogues(h3) == std::vector<int>{2, 6, 10});

  CHECK(factor_q_analogues(QPoly{1, 3, 6, 12}) == std::nullopt);
  CHECK(factor_q_analogues(QPoly::one()) == std::vector<int>{});
}

TEST_CASE("rendering") {
  CHECK(to_string(QPoly{1, 3, 6}) == "1 + 3q + 6q^2");
  CHECK(to_string(QPoly{0, 1}) == "q");
  CHECK(to_string(QPoly{1, 1, 1}) == "1 + q + q^2");
  CHECK(to_string(QPoly::zero()) == "0");
}
