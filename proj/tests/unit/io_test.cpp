#include <doctest.h>

#include "fixtures.hpp"
#include "pcsync/io.hpp"
#include "pcsync/random.hpp"

#include <algorithm>

using namespace pcsync;
using namespace pcsync::testing;

namespace {

std::size_t count_edges(const std::string& dot) {
  std::size_t n = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse_automaton") {
  auto a = parse_automaton("# comment\ndfa 2 2\na b\n1 -\n0 1\n");
  CHECK(a.size() == 2);
  CHECK(a.alphabet() == std::vector<std::string>{"a", "b"});
  CHECK(a.next(0, 0) == 1);
  CHECK_FALSE(a.defined(0, 1));
  CHECK(a.next(1, 1) == 1);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_automaton("dfa 2 1\na\n0\n5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.column == 1);
    CHECK(std::string(e.what()).find("state index out of range") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_automaton("dfa 2 1\na\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("dfa 1 2\na a\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("dfa 1 1\na\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("automaton\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton(""), ParseError);
}

TEST_CASE("automaton round trip") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_automaton(rng, 1 + rng() % 12, 1 + rng() % 4, 0.7);
    CHECK(parse_automaton(serialize_automaton(a)) == a);
  }
}

TEST_CASE("code parsing") {
  auto c = parse_code("code 0 1\n0\n10\n11\n");
  CHECK(c.words().size() == 3);
  CHECK(parse_code(serialize_code(c)).words() == c.words());

  try {
    parse_code("code 0 1\n0\n1\n01\n");
    FAIL("expected a prefix error");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("lines 2 and 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_code("code 0 1\n0\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_code("code 0 1\n0\n\n1\n"), ParseError);
}

TEST_CASE("code round trip") {
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    auto c = random_maximal_code(rng, 2 + rng() % 3, 1 + rng() % 20);
    CHECK(parse_code(serialize_code(c)).words() == c.words());
  }
}

TEST_CASE("set cover files") {
  auto sc = parse_set_cover("setcover 3\n1 2\n2 3\n");
  CHECK(sc.elements == 3);
  CHECK(sc.sets.size() == 2);
  auto back = parse_set_cover(serialize_set_cover(sc));
  CHECK(back.sets == sc.sets);
  CHECK_THROWS_AS(parse_set_cover("setcover 3\n1 2\n"), InputError);
}

TEST_CASE("export_dot") {
  auto one = export_dot(single_loop(1));
  CHECK(one.rfind("digraph", 0) == 0);
  CHECK(count_edges(one) == 1);
  CHECK(count_edges(export_dot(small_decoder())) == 4);
  PartialAutomaton partial(2, {"a"}, {1, kUndefined});
  CHECK(count_edges(export_dot(partial)) == 1);
}

TEST_CASE("words render and parse") {
  std::vector<std::string> bits{"0", "1"};
  CHECK(render_word(word_of("0110"), bits) == "0110");
  CHECK(parse_word("0110", bits) == word_of("0110"));
  std::vector<std::string> named{"s1", "s2", "b1"};
  CHECK(render_word(Word{0, 2, 1}, named) == "s1 b1 s2");
  CHECK(parse_word("s1 b1 s2", named) == Word{0, 2, 1});
  CHECK(render_word(Word{}, bits).empty());
  CHECK_THROWS_AS(parse_word("012", bits), InputError);
}

TEST_CASE("digest is stable") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("abc") != digest("abd"));
  CHECK(digest("abc").size() == 16);
}
