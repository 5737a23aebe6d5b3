#include <doctest.h>

#include <sstream>

#include "eec/io.hpp"

using namespace eec;

TEST_CASE("graph formats round trip") {
  const auto g = random_regular(10, 3, 5);
  std::istringstream reg(io::format_regular(g));
  CHECK(io::parse_regular(reg).adjacency() == g.adjacency());
  const auto b = double_cover(g);
  std::istringstream bip(io::format_bipartite(b));
  const auto back = io::parse_bipartite(bip);
  CHECK(back.left_ports() == b.left_ports());
  CHECK(back.right_ports() == b.right_ports());
}

TEST_CASE("generator and word formats round trip") {
  std::istringstream gen(io::format_generator(hamming74()));
  CHECK(io::parse_generator(gen).generator() == hamming74().generator());
  const auto w = ErasedWord::from_string("01?1??0");
  CHECK(io::parse_word(io::format_word(w)) == w);
  CHECK(io::parse_word(" 0 1\n?") == ErasedWord::from_string("01?"));
  CHECK_THROWS_AS(io::parse_word("01x"), std::invalid_argument);
}

TEST_CASE("list format round trip") {
  const ExpanderCode code(complete_bipartite(3), parity_code(3));
  const auto space = code.oracle_list_decode(code.erase_explicit(BitVector(9), {0, 1, 3, 4}));
  const auto list = ListDescription::from_affine(space);
  std::istringstream in(io::format_list(list));
  const auto back = io::parse_list(in);
  CHECK(back.L == list.L);
  CHECK(back.ell == list.ell);
  std::istringstream dep("list 3 2\n000\n110\n110\n");
  CHECK_THROWS(io::parse_list(dep));
}

TEST_CASE("spec strings") {
  CHECK(io::make_graph("complete:5", 0).graph.side_size() == 5);
  CHECK(io::make_graph("complete:5", 0).graph.degree() == 4);
  CHECK(io::make_graph("complete_bipartite[4]", 0).graph.degree() == 4);
  CHECK_FALSE(io::make_graph("complete_bipartite:4", 0).base.has_value());
  const auto a = io::make_graph("random_regular:20:4", 7), b = io::make_graph("random_regular[20,4]", 7);
  CHECK(a.graph.left_ports() == b.graph.left_ports());
  CHECK(io::make_graph("random_regular:20:4:9", 7).graph.left_ports() ==
        io::make_graph("random_regular:20:4", 9).graph.left_ports());
  CHECK(io::make_code("hamming74", 0).dimension() == 4);
  CHECK(io::make_code("parity[8]", 0).dimension() == 7);
  CHECK(io::make_code("repetition:3", 0).dimension() == 1);
  CHECK(io::make_code("random:8:3:2", 0).generator() == random_code(8, 3, 2).generator());
  CHECK_THROWS_AS(io::make_graph("petersen", 0), std::invalid_argument);
  CHECK_THROWS_AS(io::make_code("parity", 0), std::invalid_argument);
  CHECK_THROWS_AS(io::make_code("parity:x", 0), std::invalid_argument);
}

TEST_CASE("pattern parsing") {
  std::istringstream in("0 1\n3 4\n");
  CHECK(io::parse_pattern(in) == std::vector<std::uint32_t>{0, 1, 3, 4});
  std::istringstream bad("0 -1");
  CHECK_THROWS_AS(io::parse_pattern(bad), std::invalid_argument);
}
