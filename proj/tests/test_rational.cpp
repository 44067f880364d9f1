#include <doctest.h>

#include <curvforge/rational.hpp>

#include <stdexcept>

using curvforge::parse_rational;
using curvforge::Rational;
using curvforge::to_string;

TEST_CASE("parse_rational canonicalizes") {
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK(to_string(parse_rational("3/-6")) == "-1/2");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK(to_string(parse_rational("-0")) == "0");
  CHECK(to_string(parse_rational("17")) == "17");
  CHECK(to_string(parse_rational("123456789012345678901234567890/2")) ==
        "61728394506172839450617283945");
}

TEST_CASE("parse_rational round-trips canonical text") {
  for (const char* text : {"0", "1", "-7", "2/3", "-1/2", "355/113"}) {
    CHECK(to_string(parse_rational(text)) == text);
  }
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* text : {"", "x", "1/", "/2", "1/0", "0/0", "-5/0", "+1",
                           "1.5", " 1", "1 ", "2 /3", "1/2/3", "0x10"}) {
    CHECK_THROWS_AS((void)parse_rational(text), std::invalid_argument);
  }
}

TEST_CASE("arithmetic keeps values canonical") {
  Rational a = parse_rational("1/6");
  Rational b = parse_rational("1/3");
  Rational sum(a + b);
  CHECK(to_string(sum) == "1/2");
  Rational prod(a * b);
  CHECK(to_string(prod) == "1/18");
  Rational diff(b - b);
  CHECK(to_string(diff) == "0");
}
