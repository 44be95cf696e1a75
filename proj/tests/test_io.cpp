#include "doctest.h"
#include "support.hpp"
#include "vdp/io.hpp"
#include "vdp/reconstruct.hpp"

using namespace vdp;
using vdp::io::json;

TEST_CASE("header") {
  io::Header h{3, 4, 6, CharMode::Equal};
  io::Header back = io::read_header(io::header_json(h));
  CHECK(back.r == 3);
  CHECK(back.q == 4);
  CHECK(&back.ring() == &h.ring());
  CHECK_THROWS(io::read_header(json{{"schema", "other"}}));
}

TEST_CASE("digit strings") {
  const RingSpec& R = RingSpec::get(9, 3);
  Scalar s = Scalar::from_digits(R, {5, 0, 8});
  CHECK(s.str() == "(2;1),(0;0),(2;2)");
  CHECK(Scalar::parse(R, s.str()) == s);
  const RingSpec& P = RingSpec::get(3, 4);
  CHECK(Scalar::parse(P, "1,2").str() == "1,2,0,0");
  CHECK_THROWS(Scalar::parse(P, "3"));
}

TEST_CASE("records round trip") {
  const RingSpec& R = RingSpec::get(4, 6);
  std::mt19937 rng(8);
  auto ball = std::make_shared<const Ball>(enumerate_ball(R, 2, 2));
  auto tree = std::make_shared<const SpecialTree>(special_structure(R, 2, 2));
  for (const auto& v : ball->vertices()) CHECK(io::parse_vertex(R, io::vertex_json(v)) == v);
  MonomialUnit u = testing::random_unit(R, 2, rng);
  CHECK(io::parse_unit(R, io::unit_json(u)) == u);
  Cochain phi = cochain_from_unit(u, ball);
  CHECK(io::parse_cochain(ball, io::cochain_json(phi)) == phi);
  Distribution d = cochain_to_distribution(phi, tree);
  CHECK(io::parse_distribution(tree, io::distribution_json(d)) == d);
  TreeCochain psi = restrict_to_tree(phi, tree);
  CHECK(io::parse_tree(tree, io::tree_json(psi)) == psi);
  FactorList f = reconstruct(phi);
  FactorList g = io::parse_factor_list(R, io::factor_list_json(f));
  CHECK(g.levels == f.levels);
  CHECK(io::cochain_json(phi).dump() == io::cochain_json(io::parse_cochain(ball, io::cochain_json(phi))).dump());
}

TEST_CASE("malformed records") {
  const RingSpec& R = RingSpec::get(2, 6);
  auto ball = std::make_shared<const Ball>(enumerate_ball(R, 2, 1));
  json j = io::cochain_json(Cochain(ball));
  j["depth"] = 2;
  CHECK_THROWS(io::parse_cochain(ball, j));
  json v = io::vertex_json(ball->vertices()[1]);
  v["sed"] = json::array({2, 0});
  CHECK_THROWS(io::parse_vertex(R, v));
  CHECK_THROWS_AS(io::parse_unit(R, json{{"factors", json::array({json{{"y", {"1", "0"}}, {"m", 1}}})}}), NonzeroSum);
}
