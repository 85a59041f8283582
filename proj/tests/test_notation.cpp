#include <doctest.h>

#include "helpers.hpp"

using namespace wqs;

TEST_CASE("variable names") {
  VariableNames v4(4);
  CHECK(v4.name(0) == "x");
  CHECK(v4.name(3) == "t");
  CHECK(VariableNames(5).name(4) == "w");
  CHECK(VariableNames(7).name(6) == "x6");
  CHECK(v4.index_of("z") == 2);
  CHECK(v4.index_of("x3") == 3);
  CHECK_THROWS(v4.index_of("w"));
  CHECK_THROWS(v4.index_of("x4"));
  VariableNames custom(3, "abc");
  CHECK(custom.index_of("c") == 2);
}

TEST_CASE("monomial parsing") {
  VariableNames v(4);
  CHECK(parse_monomial("t*y^5*x", v) == Exponents{1, 5, 0, 1});
  CHECK(parse_monomial("ty^5x", v) == Exponents{1, 5, 0, 1});
  CHECK(parse_monomial("x^2 x", v) == Exponents{3, 0, 0, 0});
  CHECK(parse_monomial("x0^2*x3", v) == Exponents{2, 0, 0, 1});
  CHECK(parse_monomial("1", v) == Exponents{0, 0, 0, 0});
  CHECK_THROWS(parse_monomial("y^", v));
  CHECK_THROWS(parse_monomial("q^2", v));
  CHECK_THROWS(parse_monomial("y^-1", v));
  CHECK(parse_monomial_list("{y^7, z^7, t y^5 x}", v).size() == 3);
  CHECK(parse_variable_list("{x,z}", v) == IndexSet{0, 2});
  CHECK(parse_variable_list("{}", v).empty());
  CHECK(parse_variable_list("z, x", v) == IndexSet{0, 2});
  CHECK_THROWS(parse_variable_list("z, x, z", v));
}

TEST_CASE("formatting is canonical and round trips") {
  VariableNames v(4);
  CHECK(format_monomial({1, 11, 6, 1}, v) == "t*z^6*y^11*x");
  CHECK(format_monomial({0, 0, 0, 0}, v) == "1");
  CHECK(format_index_set({1, 2}, v) == "{y,z}");
  for (const char* s : {"t^3*z^7*y^12", "x", "t*y^5*x", "w^6*t^2"}) {
    VariableNames v5(5);
    auto e = parse_monomial(s, v5);
    CHECK(parse_monomial(format_monomial(e, v5), v5) == e);
  }
  auto f = SparsePoly::monomial(5, {1, 0, 0, 0}, 3) + SparsePoly::monomial(5, {0, 2, 0, 0});
  CHECK(format_poly(f, v) == "3*x + y^2");
  CHECK(format_poly(SparsePoly(5, 4), v) == "0");
}
