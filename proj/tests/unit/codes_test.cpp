#include <doctest.h>

#include <map>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "pcsync/codes.hpp"
#include "pcsync/error.hpp"
#include "pcsync/random.hpp"

using namespace pcsync;
using namespace pcsync::testing;

TEST_CASE("validate_code metadata") {
  auto v = validate_code({"0", "1"}, {word_of("0"), word_of("10"), word_of("11")});
  CHECK(v.metadata.kraft_sum == 1);
  CHECK(v.metadata.is_maximal);
  CHECK(v.metadata.min_len == 1);
  CHECK(v.metadata.max_len == 2);

  auto partial = validate_code({"0", "1"}, {word_of("0"), word_of("10")});
  CHECK(partial.metadata.kraft_sum == Rational(3, 4));
  CHECK_FALSE(partial.metadata.is_maximal);
}

TEST_CASE("validate_code rejects prefix violations and empty words") {
  try {
    validate_code({"0", "1"}, {word_of("0"), word_of("01")});
    FAIL("expected a prefix violation");
  } catch (const PrefixViolation& e) {
    CHECK(e.prefix_index == 0);
    CHECK(e.longer_index == 1);
    CHECK(std::string(e.what()).find("'0' is a prefix of '01'") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_code({"0", "1"}, {word_of("1"), Word{}}), InputError);
  CHECK_THROWS_AS(validate_code({"0", "1"}, {word_of("10"), word_of("10")}), PrefixViolation);
  CHECK_THROWS_AS(validate_code({"0", "1"}, {Word{2}}), InputError);
}

TEST_CASE("literal_decoder structure") {
  auto a = literal_decoder(code_of({"0", "10", "11"}));
  CHECK(a.size() == 2);
  CHECK(a.complete());
  CHECK(a.next(0, 0) == 0);
  CHECK(a.next(0, 1) == 1);
  CHECK(a.next(1, 0) == 0);
  CHECK(a.next(1, 1) == 0);

  auto u = literal_decoder(uniform_code(2, 2));
  CHECK(u.size() == 3);
  CHECK(u.complete());

  auto w3 = wielandt_code(3);
  auto d = literal_decoder(w3);
  // 1 + 2 + 4 + 4 proper prefixes: the last level only continues under 1.
  CHECK(d.size() == count_proper_prefixes(w3));
  CHECK(d.size() == 11);
  CHECK(d.complete());

  auto partial = literal_decoder(code_of({"0", "10"}));
  CHECK_FALSE(partial.complete());
  CHECK_FALSE(partial.defined(1, 1));
}

TEST_CASE("literal decoder is complete exactly for maximal codes") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::size_t k = 2 + rng() % 2;
    auto code = rng() % 2 ? random_maximal_code(rng, k, 1 + rng() % 12)
                          : random_nonmaximal_code(rng, k, 1 + rng() % 12);
    CHECK(literal_decoder(code).complete() == code_metadata(code).is_maximal);
  }
}

TEST_CASE("first_return_code examples") {
  auto x = code_of({"0", "10", "11"});
  auto frc = first_return_code(literal_decoder(x), 0, 2);
  REQUIRE(frc.has_value());
  CHECK(frc->canonical() == x.canonical());

  auto loop = single_loop(2);
  auto letters = first_return_code(loop, 0, 1);
  REQUIRE(letters.has_value());
  CHECK(letters->words() == std::vector<Word>{{0}, {1}});

  auto w3 = wielandt_code(3);
  auto m = minimize_with_map(literal_decoder(w3));
  auto back = first_return_code(m.automaton, m.class_of[0], 4);
  REQUIRE(back.has_value());
  CHECK(back->canonical() == w3.canonical());

  CHECK_FALSE(first_return_code(m.automaton, m.class_of[0], 3).has_value());
  CHECK_THROWS_AS(first_return_code(loop, 3, 1), InputError);
}

TEST_CASE("first_return_code inverts literal_decoder on random maximal codes") {
  Rng rng(17);
  for (int i = 0; i < 150; ++i) {
    auto code = random_maximal_code(rng, 2 + rng() % 2, 1 + rng() % 20);
    auto meta = code_metadata(code);
    auto back = first_return_code(literal_decoder(code), 0, meta.max_len);
    REQUIRE(back.has_value());
    CHECK(back->canonical() == code.canonical());
  }
}

TEST_CASE("wielandt decoders minimize to n+1 states") {
  for (std::size_t n = 1; n <= 7; ++n) CHECK(minimize(literal_decoder(wielandt_code(n))).size() == n + 1);
}

TEST_CASE("generate_code families") {
  auto w3 = generate_code("wielandt", std::vector<std::size_t>{3});
  CHECK(w3.size() == 12);
  for (const auto& w : w3.words()) CHECK(w.size() == (w[0] == 0 ? 3u : 4u));
  CHECK(code_metadata(w3).is_maximal);

  auto u = generate_code("uniform", std::vector<std::size_t>{2, 1});
  CHECK(u.words() == std::vector<Word>{{0}, {1}});
  CHECK(uniform_code(3, 2).size() == 9);

  auto two = generate_code("twoword", std::vector<std::size_t>{2});
  CHECK(two.words() == std::vector<Word>{word_of("00110011"), word_of("11001100")});
  CHECK(two_word_code(3).words()[0].size() == 18);

  CHECK_THROWS_AS(uniform_code(2, 30, 1000), InputError);
  CHECK_THROWS_AS(wielandt_code(12, 100), InputError);
  CHECK_THROWS_AS(generate_code("nope", std::vector<std::size_t>{1}), InputError);
  CHECK_THROWS_AS(generate_code("uniform", std::vector<std::size_t>{1}), InputError);
}

namespace {

// Words of the composed code: beta applied letterwise.
Word apply_beta(const Word& y, const PrefixCode& z, const CompositionMap& beta) {
  Word out;
  for (Letter a : y) {
    const Word& piece = z.words()[beta.beta[a]];
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

}  // namespace

TEST_CASE("compose_decoders examples") {
  auto hy = literal_decoder(code_of({"0", "10", "11"}));
  auto ab = code_of({"a", "b"}, {"a", "b"});
  auto same = compose_decoders(hy, ab, CompositionMap::identity(2));
  CHECK(same.size() == hy.size());
  CHECK(same.table() == hy.table());
  CHECK(same.alphabet() == std::vector<std::string>{"a", "b"});

  auto single = single_loop(3);
  auto z = code_of({"0", "10", "11"});
  auto tree = compose_decoders(single, z, CompositionMap::identity(3));
  CHECK(tree.table() == literal_decoder(z).table());

  CHECK_THROWS_AS(compose_decoders(hy, z, CompositionMap::identity(3)), InputError);
  CHECK_THROWS_AS(compose_decoders(single, code_of({"0", "10"}), CompositionMap::identity(2)), InputError);
  CHECK_THROWS_AS(compose_decoders(single, z, CompositionMap{{0, 0, 1}}), InputError);
}

TEST_CASE("composed decoder recognises the composed code") {
  Rng rng(23);
  auto z = code_of({"0", "10", "11"});
  for (int i = 0; i < 60; ++i) {
    auto y = random_maximal_code(rng, 3, 1 + rng() % 5);
    auto hy = literal_decoder(y);
    CompositionMap beta{{0, 1, 2}};
    std::shuffle(beta.beta.begin(), beta.beta.end(), rng);
    auto composed = compose_decoders(hy, z, beta);
    CHECK(composed.size() == hy.size() * 2);
    CHECK(composed.complete());

    std::size_t cap = 0;
    std::vector<Word> expected;
    for (const auto& w : y.words()) {
      expected.push_back(apply_beta(w, z, beta));
      cap = std::max(cap, expected.back().size());
    }
    auto got = first_return_code(composed, 0, cap);
    REQUIRE(got.has_value());
    CHECK(got->canonical() == PrefixCode({"0", "1"}, expected).canonical());
  }
}
