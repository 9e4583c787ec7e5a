#include <doctest.h>

#include <random>
#include <string>

#include "perioctrl/parser.hpp"
#include "perioctrl/printer.hpp"
#include "support/gen.hpp"

using namespace perioctrl;

namespace {

bool throws_with(const std::string& src, std::size_t d, const std::string& needle,
                 int* line = nullptr, int* col = nullptr) {
  try {
    parse_poly(src, d);
  } catch (const ParseError& e) {
    if (line) *line = e.line;
    if (col) *col = e.col;
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("parse_matrix examples") {
  MultiPolyMatrix heat = parse_matrix("[[t - x1^2]]", 1);
  CHECK(heat.rows == 1);
  CHECK(heat.cols == 1);
  MultiPoly expect(2);  // variables: x1, t
  expect.add_term({0, 1}, GaussianRational(Rational(1)));
  expect.add_term({2, 0}, GaussianRational(Rational(-1)));
  CHECK(heat.at(0, 0) == expect);

  MultiPolyMatrix transport = parse_matrix("[[t + x1, -1]]", 1);
  CHECK(transport.rows == 1);
  CHECK(transport.cols == 2);

  MultiPolyMatrix square = parse_matrix("[[x1, t], [t, x1]]", 1);
  CHECK(square.rows == 2);
  CHECK(square.cols == 2);
  CHECK(square.at(0, 0) == square.at(1, 1));
  CHECK(square.at(0, 1) == square.at(1, 0));
}

TEST_CASE("matrix accepts JSON string entries") {
  MultiPolyMatrix m1 = parse_matrix(R"([["t - x1^2"]])", 1);
  MultiPolyMatrix m2 = parse_matrix("[[t - x1^2]]", 1);
  CHECK(m1 == m2);
}

TEST_CASE("rational literals, i, signs") {
  MultiPoly p = parse_poly("3/4 + i - 2*i*t", 1);
  MultiPoly expect(2);
  expect.add_term({0, 0}, GaussianRational(Rational(3, 4), Rational(1)));
  expect.add_term({0, 1}, GaussianRational(Rational(0), Rational(-2)));
  CHECK(p == expect);

  CHECK(parse_poly("-2", 1) == parse_poly("0 - 2", 1));
  CHECK(parse_poly("x1^0", 1) == parse_poly("1", 1));
  CHECK(parse_poly("(t + 1)*(t - 1)", 1) == parse_poly("t^2 - 1", 1));
}

TEST_CASE("error positions and messages") {
  int line = 0, col = 0;
  CHECK(throws_with("t + x9", 1, "variable index", &line, &col));
  CHECK(line == 1);
  CHECK(col == 5);

  CHECK(throws_with("x0", 1, "variable index"));
  CHECK(throws_with("t ^ x", 1, "exponent"));
  CHECK(throws_with("t + y", 1, "unknown symbol 'y'"));
  CHECK(throws_with("3/t", 1, "denominator"));
  CHECK(throws_with("(t", 1, "expected"));
  CHECK(throws_with("t t", 1, ""));  // trailing input is an error
  CHECK(throws_with("pi", 1, "unknown symbol"));  // pi is output-only

  // line/column tracking across newlines
  CHECK(throws_with("t +\n  x7", 1, "variable index", &line, &col));
  CHECK(line == 2);
  CHECK(col == 3);
}

TEST_CASE("matrix errors name the entry") {
  // JSON-form entries are parsed separately, so errors carry the entry index
  try {
    parse_matrix(R"([["t", "x9"]])", 1);
    CHECK(false);
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("entry (1,2)") != std::string::npos);
    CHECK(msg.find("variable index 9") != std::string::npos);
    // the position suffix appears exactly once
    CHECK(msg.find("(line") == msg.rfind("(line"));
  }
  // the bare form reports the position within the whole source
  try {
    parse_matrix("[[t, x9]]", 1);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("variable index") != std::string::npos);
    CHECK(e.col == 6);
  }
  CHECK_THROWS_AS(parse_matrix("[]", 1), ParseError);
  CHECK_THROWS_AS(parse_matrix("[[t],[t,t]]", 1), ParseError);  // ragged rows
}

TEST_CASE("print uses the input grammar: parse(print(M)) == M, 500 matrices") {
  std::mt19937_64 rng(301);
  for (int it = 0; it < 500; ++it) {
    std::size_t d = 1 + rng() % 2;
    MultiPolyMatrix M = testgen::rand_system(rng, d);
    std::string s = print_matrix(M);
    MultiPolyMatrix back = parse_matrix(s, d);
    CHECK(back == M);
  }
}

TEST_CASE("report dialect round-trips invariant-factor strings") {
  // the output dialect adds 'pi' and quotient coefficients; both re-parse
  UniPoly p = unipoly_tau() + unipoly_const(FieldElement(
                                  PiPoly::monomial(GaussianRational(Rational(4)), 2),
                                  PiPoly::one()));
  CHECK(print_unipoly(p) == "t + 4*pi^2");
  CHECK(parse_unipoly_pi(print_unipoly(p)) == p);

  std::mt19937_64 rng(302);
  for (int it = 0; it < 300; ++it) {
    UniPoly q = testgen::rand_unipoly(rng, 4, 2);
    CHECK(parse_unipoly_pi(print_unipoly(q)) == q);
    // fraction coefficients exercise the quotient print form
    FieldElement c = testgen::rand_field(rng, 2);
    UniPoly scaled = q * unipoly_const(c);
    CHECK(parse_unipoly_pi(print_unipoly(scaled)) == scaled);
  }
}

TEST_CASE("print formats") {
  CHECK(print_unipoly(UniPoly()) == "0");
  CHECK(print_unipoly(unipoly_const(field_from(1))) == "1");
  UniPoly p = unipoly_tau() * unipoly_tau() - unipoly_const(field_from(1));
  CHECK(print_unipoly(p) == "t^2 - 1");
  CHECK(print_poly(parse_poly("t - x1^2", 1), 1) == "t - x1^2");
  CHECK(print_gaussian(GaussianRational(Rational(0), Rational(-1))) == "-1*i");
  CHECK(print_gaussian(GaussianRational(Rational(1, 2))) == "1/2");
}

}  // TEST_SUITE
