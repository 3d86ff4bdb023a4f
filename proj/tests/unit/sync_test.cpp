#include <doctest.h>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "pcsync/error.hpp"
#include "pcsync/random.hpp"
#include "pcsync/sync.hpp"

using namespace pcsync;
using namespace pcsync::testing;

namespace {

std::size_t oracle_length(const PartialAutomaton& a, const Goal& goal) {
  auto r = shortest_word_exact(a, goal, {});
  REQUIRE(r.status == SearchStatus::Found);
  return r.witness.word.size();
}

}  // namespace

TEST_CASE("shortest_word_exact examples") {
  auto r = shortest_word_exact(small_decoder(), Goal::sync(), {});
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.witness.word == word_of("0"));
  CHECK(r.witness.survivor == State{0});

  CHECK(shortest_word_exact(literal_decoder(uniform_code(2, 2)), Goal::sync(), {}).status ==
        SearchStatus::NoneExists);

  auto one = shortest_word_exact(single_loop(2), Goal::sync(), {});
  REQUIRE(one.status == SearchStatus::Found);
  CHECK(one.witness.word.empty());

  SearchBudget tiny;
  tiny.max_subset_nodes = 2;
  CHECK(shortest_word_exact(literal_decoder(wielandt_code(4)), Goal::sync(), tiny).status ==
        SearchStatus::BudgetExceeded);

  SearchBudget short_words;
  short_words.max_word_len = 1;
  CHECK(shortest_word_exact(literal_decoder(wielandt_code(3)), Goal::sync(), short_words).status ==
        SearchStatus::LengthCapReached);
}

TEST_CASE("avoiding a non-root state of a complete literal decoder takes one letter") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    auto a = literal_decoder(random_maximal_code(rng, 2 + rng() % 2, 2 + rng() % 10));
    for (State q = 1; q < a.size(); ++q) CHECK(oracle_length(a, Goal::avoid(q)) == 1);
  }
}

TEST_CASE("subset search matches brute-force enumeration") {
  Rng rng(77);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng() % 6, k = 1 + rng() % 3;
    auto a = random_automaton(rng, n, k, 0.85);
    for (Goal goal : {Goal::sync(), Goal::mortal(), Goal::avoid(static_cast<State>(rng() % n))}) {
      auto r = shortest_word_exact(a, goal, {});
      REQUIRE(r.status != SearchStatus::BudgetExceeded);
      ImagePredicate pred = goal.kind == GoalKind::Sync     ? sync_pred()
                            : goal.kind == GoalKind::Mortal ? mortal_pred()
                                                            : avoid_pred(goal.avoided);
      std::size_t horizon = r.status == SearchStatus::Found ? r.witness.word.size() : 7;
      if (k == 3) horizon = std::min<std::size_t>(horizon, 6);
      auto brute = enumerate_shortest(a, pred, horizon);
      if (r.status == SearchStatus::Found) {
        if (r.witness.word.size() <= horizon) {
          REQUIRE(brute.has_value());
          CHECK(*brute == r.witness.word);
          ++compared;
        }
        CHECK(verify_witness(a, r.witness));
      } else {
        CHECK_FALSE(brute.has_value());
      }
    }
  }
  CHECK(compared > 300);
}

TEST_CASE("greedy_sync") {
  auto g = greedy_sync(small_decoder());
  CHECK(g.word == word_of("0"));

  auto w = minimize(literal_decoder(wielandt_code(3)));
  REQUIRE(w.size() == 4);
  auto gw = greedy_sync(w);
  CHECK(verify_witness(w, gw));
  CHECK(gw.word.size() <= 10);
  CHECK(gw.bound_value == 10u);

  CHECK(greedy_sync(single_loop(3)).word.empty());

  CHECK_THROWS_AS(greedy_sync(literal_decoder(uniform_code(2, 2))), DomainError);
  PartialAutomaton not_connected(2, {"a"}, {0, kUndefined});
  CHECK_THROWS_AS(greedy_sync(not_connected), DomainError);
}

TEST_CASE("greedy_sync stays under the cubic bound") {
  Rng rng(8);
  int runs = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + rng() % 9;
    auto a = rng() % 2 ? random_automaton(rng, n, 2, 1.0) : random_strongly_connected(rng, n, 2, 0.6);
    if (!pairwise_check_applies(a) || !is_synchronizing(a)) continue;
    auto w = greedy_sync(a);
    CHECK(verify_witness(a, w));
    CHECK(w.word.size() >= oracle_length(a, Goal::sync()));
    ++runs;
  }
  CHECK(runs > 50);
}

TEST_CASE("ceil_log") {
  CHECK(ceil_log(2, 1) == 0);
  CHECK(ceil_log(2, 2) == 1);
  CHECK(ceil_log(2, 3) == 2);
  CHECK(ceil_log(2, 4) == 2);
  CHECK(ceil_log(3, 10) == 3);
  CHECK(ceil_log(3, 9) == 2);
  CHECK(ceil_log(1, 5) == 5);
}

TEST_CASE("low_rank_word") {
  auto a = small_decoder();
  auto w = low_rank_word(a, false);
  CHECK(w == word_of("0"));
  CHECK(rank(a, w) == 1);

  auto trivial = literal_decoder(code_of({"0", "1"}));
  REQUIRE(trivial.size() == 1);
  CHECK(low_rank_word(trivial, false).empty());

  CHECK_THROWS_AS(low_rank_word(literal_decoder(code_of({"0", "10"})), false), DomainError);

  Rng rng(12);
  for (int i = 0; i < 150; ++i) {
    std::size_t k = 2 + rng() % 2;
    auto d = literal_decoder(random_maximal_code(rng, k, 1 + rng() % 60));
    auto lw = low_rank_word(d, false);
    std::size_t t = ceil_log(k, d.size());
    CHECK(lw.size() == t);
    CHECK(naive_image(d, lw).size() <= t + (d.size() == 1));
  }
}

TEST_CASE("two-word decoders: defined short words keep rank at least n - 1") {
  for (std::size_t n : {2u, 3u}) {
    auto d = literal_decoder(two_word_code(n));
    std::size_t min_rank = d.size();
    for (std::size_t len = 1; len <= n; ++len)
      for_each_word(2, len, [&](const Word& w) {
        auto r = naive_image(d, w).size();
        if (r > 0) min_rank = std::min(min_rank, r);
        return false;
      });
    CHECK(min_rank >= n - 1);
    auto lw = low_rank_word(d, true);
    CHECK(lw.size() == ceil_log(2, d.size()));
  }
}

TEST_CASE("approx_sync_log") {
  auto a = small_decoder();
  auto w = approx_sync_log(a);
  CHECK(w.word == word_of("0"));
  CHECK(w.method == "log/exhaustive");

  for (std::size_t n = 2; n <= 5; ++n) {
    auto d = literal_decoder(wielandt_code(n));
    auto r = approx_sync_log(d);
    CHECK(verify_witness(d, r));
    std::size_t opt = oracle_length(d, Goal::sync());
    std::size_t t = ceil_log(2, d.size());
    CHECK(r.word.size() >= opt);
    CHECK(r.word.size() <= t + (t - 1) * opt);
  }

  CHECK_THROWS_AS(approx_sync_log(literal_decoder(uniform_code(2, 3))), DomainError);
  CHECK_THROWS_AS(approx_sync_log(literal_decoder(code_of({"0", "10"}))), DomainError);
}

TEST_CASE("approx_sync_eps") {
  auto w = approx_sync_eps(small_decoder(), Epsilon(1));
  CHECK(w.word == word_of("0"));

  auto d = literal_decoder(wielandt_code(3));
  auto r = approx_sync_eps(d, Epsilon(1, 2));
  std::size_t opt = oracle_length(d, Goal::sync());
  CHECK(verify_witness(d, r));
  CHECK(2 * r.word.size() <= 3 * opt);

  // Exhaustive first stage covers length t/eps, so short optima come back exact.
  Rng rng(4);
  for (int i = 0; i < 60; ++i) {
    auto code = random_maximal_code(rng, 2, 2 + rng() % 14);
    auto dec = literal_decoder(code);
    if (!is_synchronizing(dec)) continue;
    std::size_t o = oracle_length(dec, Goal::sync());
    for (auto eps : {Epsilon(1), Epsilon(1, 2), Epsilon(1, 4)}) {
      auto res = approx_sync_eps(dec, eps);
      CHECK(verify_witness(dec, res));
      CHECK(Epsilon(static_cast<std::int64_t>(res.word.size())) <= (1 + eps) * static_cast<std::int64_t>(o));
      std::size_t t = ceil_log(2, dec.size());
      if (Epsilon(static_cast<std::int64_t>(o)) <= Epsilon(static_cast<std::int64_t>(t)) / eps)
        CHECK(res.word.size() == o);
    }
  }

  SearchBudget tiny;
  tiny.max_subset_nodes = 1;
  CHECK_THROWS_AS(approx_sync_eps(literal_decoder(wielandt_code(4)), Epsilon(1), tiny), BudgetExceeded);
  CHECK_THROWS_AS(approx_sync_eps(small_decoder(), Epsilon(0)), InputError);
}

TEST_CASE("approx_mortal_log") {
  PartialAutomaton dead(1, {"a", "b"});
  auto w = approx_mortal_log(dead);
  CHECK(w.word.size() == 1);

  auto d = literal_decoder(code_of({"0", "10"}));
  auto r = approx_mortal_log(d);
  CHECK(verify_word(d, r.word, Goal::mortal()));
  std::size_t opt = oracle_length(d, Goal::mortal());
  std::size_t t = ceil_log(2, d.size());
  CHECK(r.word.size() >= opt);
  CHECK(r.word.size() <= (t + 1) * opt);

  for (std::size_t n : {2u, 3u}) {
    auto two = literal_decoder(two_word_code(n));
    auto m = approx_mortal_log(two);
    CHECK(verify_witness(two, m));
    std::size_t tt = ceil_log(2, two.size());
    CHECK(m.word.size() <= tt * (two.size() + 1));
  }

  CHECK_THROWS_AS(approx_mortal_log(small_decoder()), DomainError);
  // Undefined transition that can never be reached from state 1.
  PartialAutomaton trapped(2, {"a"}, {kUndefined, 1});
  CHECK_THROWS_AS(approx_mortal_log(trapped), DomainError);
}

TEST_CASE("shortest_killing_word") {
  auto d = literal_decoder(code_of({"0", "10"}));
  CHECK(shortest_killing_word(d, 1) == word_of("1"));
  CHECK(shortest_killing_word(d, 0) == word_of("11"));
  CHECK_FALSE(shortest_killing_word(small_decoder(), 0).has_value());
}

TEST_CASE("approx_avoiding_eps") {
  Rng rng(19);
  for (int i = 0; i < 30; ++i) {
    auto d = literal_decoder(random_maximal_code(rng, 2, 2 + rng() % 12));
    for (State q = 1; q < d.size(); ++q) {
      auto w = approx_avoiding_eps(d, q, Epsilon(1));
      CHECK(w.word.size() == 1);
      CHECK(verify_word(d, w.word, Goal::avoid(q)));
    }
  }

  auto a = small_decoder();
  auto opt = oracle_length(a, Goal::avoid(0));
  for (auto eps : {Epsilon(1), Epsilon(1, 3)}) {
    auto w = approx_avoiding_eps(a, 0, eps);
    CHECK(verify_word(a, w.word, Goal::avoid(0)));
    CHECK(Epsilon(static_cast<std::int64_t>(w.word.size())) <= (1 + eps) * static_cast<std::int64_t>(opt));
  }

  CHECK_THROWS_AS(approx_avoiding_eps(single_loop(2), 0, Epsilon(1)), DomainError);
  CHECK_THROWS_AS(approx_avoiding_eps(a, 5, Epsilon(1)), InputError);
}

TEST_CASE("approximations never beat the oracle") {
  Rng rng(1234);
  for (int i = 0; i < 80; ++i) {
    std::size_t k = 2 + rng() % 2;
    auto dec = literal_decoder(random_maximal_code(rng, k, 2 + rng() % 12));
    if (!is_synchronizing(dec)) continue;
    std::size_t opt = oracle_length(dec, Goal::sync());
    for (const auto& w : {greedy_sync(dec), approx_sync_log(dec), approx_sync_eps(dec, Epsilon(1, 2))}) {
      CHECK(verify_witness(dec, w));
      CHECK(w.word.size() >= opt);
    }
  }
}
