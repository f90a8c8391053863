#include <doctest.h>

#include "semife/errors.hpp"
#include "semife/json_io.hpp"
#include "support.hpp"

using namespace semife;
using namespace semife::testing;

TEST_SUITE("json") {

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(dump(Json(0.1)) == "0.10000000000000001\n");
  CHECK(dump(Json(1.0)) == "1.0\n");
  CHECK(dump(Json(-0.0)) == "0.0\n");
  CHECK(dump(Json(1e300)) == "1.0000000000000001e+300\n");
  CHECK(dump(Json(3)) == "3\n");
}

TEST_CASE("doubles read back bit for bit") {
  Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const CFunc f = gen.cfunc(5, 1e3);
    const CFunc back = cfunc_from_json(parse_json(dump(cfunc_to_json(f))));
    CHECK(back == f);
  }
}

TEST_CASE("complex values") {
  CHECK(complex_from_json(parse_json("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(complex_from_json(parse_json("3")) == Complex(3.0, 0.0));
  CHECK_THROWS_AS(complex_from_json(parse_json("[1]")), ParseError);
  CHECK_THROWS_AS(complex_from_json(parse_json("\"x\"")), ParseError);
  CHECK_THROWS_AS(cfunc_from_json(parse_json("{}")), ParseError);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(solution_from_json(parse_json("{\"f\": []}")), ParseError);
  CHECK_THROWS_AS(load_solution("/nonexistent.json"), ParseError);
  CHECK_THROWS_AS(case_from_json(parse_json("{\"case\": \"XX\"}")), ParseError);
  CHECK_THROWS_AS(case_from_json(parse_json("{\"case\": \"TE3.3\", \"params\": {\"beta\": 1}}")), ParseError);
  CHECK_THROWS_AS(case_from_json(parse_json("{\"case\": \"TE3.6\", \"params\": {\"sign\": 0.5}}")), ParseError);
}

TEST_CASE("solution files") {
  const auto zero = load_solution(data_path("zero.json"));
  CHECK(zero.f == CFunc(2));
  CHECK(zero.g == CFunc(2));
  const auto th = load_solution(data_path("th34_s4.json"));
  CHECK(th.f == CFunc{0.0, 1.0, -1.0, 0.0});
  const auto back = solution_from_json(parse_json(dump(solution_to_json(th.f, th.g))));
  CHECK(back.f == th.f);
  CHECK(back.g == th.g);
}

TEST_CASE("unclassified profiles serialize") {
  const auto rz3 = fixture("rz3");
  CFunc f(3, 0.3), g(3, 0.2);  // residual 0.07
  const auto c = classify(EquationTag::kCosSub, rz3.s, rz3.sigma, f, g, {.class_tol = 1.0, .fit_tol = 1e-6});
  REQUIRE_FALSE(c.classified());
  const Json j = classification_to_json(c);
  CHECK(j["case"] == "Unclassified");
  CHECK(j["profile"].contains("best_fit_errors"));
  CHECK(j["profile"]["out_of_scope"] == false);
}

}  // TEST_SUITE
