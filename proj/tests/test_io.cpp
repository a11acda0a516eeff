#include <doctest.h>

#include <sstream>

#include "framelab/io.hpp"
#include "framelab/random.hpp"

using namespace framelab;
using io::json;

TEST_CASE("frame JSON round trip is bit identical") {
  Rng rng(1);
  for (Field field : {Field::Real, Field::Complex}) {
    Frame f = random_spherical_tight_frame(5, 3, field, rng);
    json j = io::to_json(f);
    CHECK(j["field"] == (field == Field::Real ? "R" : "C"));
    CHECK(j["n"] == 3);
    CHECK(j["k"] == 5);
    Frame g = io::frame_from_json(json::parse(j.dump()));
    CHECK(g.field() == field);
    CHECK((g.entries().array() == f.entries().array()).all());
    CHECK(io::to_json(g).dump() == j.dump());
  }
}

TEST_CASE("frame JSON layout") {
  json j = io::to_json(simplex_frame(1));
  CHECK(j.dump() == R"({"entries":[[1.0,-1.0]],"field":"R","k":2,"n":1})");
  json c = io::to_json(Frame::complex(CMatrix::Constant(1, 2, cplx(0.5, -0.25))));
  CHECK(c["entries"][0][1] == json::array({0.5, -0.25}));
  Frame back = io::frame_from_json(c);
  CHECK(back(0, 1) == cplx(0.5, -0.25));
}

TEST_CASE("gram, partition, loop round trips") {
  Rng rng(2);
  GramPoint r = gram(random_spherical_tight_frame(6, 2, Field::Complex, rng));
  GramPoint back = io::gram_from_json(json::parse(io::to_json(r).dump()));
  CHECK((back.entries().array() == r.entries().array()).all());
  CHECK(back.n() == 2);
  CHECK(back.field() == Field::Complex);

  Partition p(5, {{0, 3}, {1, 2, 4}});
  json pj = io::to_json(p);
  CHECK(pj.dump() == R"({"blocks":[[1,4],[2,3,5]],"k":5})");
  CHECK(io::partition_from_json(pj) == p);

  std::vector<GramPoint> loop{gram(simplex_frame(2)), gram(simplex_frame(2))};
  auto lback = io::loop_from_json(io::loop_to_json(loop));
  REQUIRE(lback.size() == 2);
  CHECK((lback[1].entries().array() == loop[1].entries().array()).all());
}

TEST_CASE("path and complex round trips") {
  FramePath p = case3_explicit_path();
  FramePath q = io::path_from_json(json::parse(io::to_json(p).dump()));
  REQUIRE(q.samples.size() == p.samples.size());
  CHECK(q.kind == PathKind::Planar);
  for (size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(q.samples[i].t == p.samples[i].t);
    CHECK(q.samples[i].point == p.samples[i].point);
  }
  CHECK(q.max_step == p.observed_max_step());

  Complex2 g = build_g52();
  Complex2 h = io::complex_from_json(json::parse(io::to_json(g).dump()));
  CHECK(h.vertices() == g.vertices());
  CHECK(h.edges().size() == g.edges().size());
  CHECK(h.faces().size() == g.faces().size());
  CHECK(io::to_json(h).dump() == io::to_json(g).dump());
}

TEST_CASE("report JSON fields") {
  json t = io::to_json(TangentReport{4, true, 2, 6});
  CHECK(t == json{{"rank", 4}, {"regular", true}, {"stratum_dim", 2}, {"ambient_dim", 6}});
  json d = io::to_json(expected_dimensions(5, 2, Field::Real));
  CHECK(d == json{{"dimG", 2}, {"dimF", 3}, {"dimN", 2}, {"dimM", 3}});
  json s = io::to_json(surface_report(build_g42()));
  CHECK(s["euler"] == -12);
  CHECK(s["genus"].is_null());
}

TEST_CASE("malformed input is rejected as InvalidInput") {
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"R","n":2,"k":2})")), InvalidInput);
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"Q","n":1,"k":1,"entries":[[1]]})")), InvalidInput);
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"R","n":2,"k":2,"entries":[[1,0]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"R","n":1,"k":2,"entries":[[1,"x"]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"R","n":1,"k":1,"entries":[[[1,2]]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::frame_from_json(json::parse(R"({"field":"R","n":0,"k":1,"entries":[]})")), InvalidInput);
  CHECK_THROWS_AS(io::gram_from_json(json::parse(R"({"k":2,"n":1,"entries":[[1,0],[0,1]]})")), InvalidInput);
  CHECK_THROWS_AS(io::partition_from_json(json::parse(R"({"k":3,"blocks":[[1,2]]})")), InvalidInput);
  CHECK_THROWS_AS(io::path_from_json(json::parse(R"({"kind":"other","k":1,"samples":[]})")), InvalidInput);
  CHECK_THROWS_AS(io::path_from_json(json::parse(R"({"kind":"chain","k":2,"samples":[{"t":0,"z":[[1,0]]}]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({"vertices":["a"],"edges":[{"id":"e","ends":["a","b"]}]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::loop_from_json(json::parse(R"({"pts":[]})")), InvalidInput);
}

TEST_CASE("read_json") {
  std::istringstream in(R"({"a": 1})");
  CHECK(io::read_json("-", in)["a"] == 1);
  std::istringstream bad("{oops");
  CHECK_THROWS_AS(io::read_json("-", bad), InvalidInput);
  std::istringstream unused;
  CHECK_THROWS_AS(io::read_json("/nonexistent/frame.json", unused), InvalidInput);
}
