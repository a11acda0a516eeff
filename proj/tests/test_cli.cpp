#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "../tools/cli.hpp"
#include "framelab/io.hpp"

using framelab::io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "", const char* env_tol = nullptr) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = framelab::cli::run(args, in, out, err, env_tol);
  return {code, out.str(), err.str()};
}

// Pipes the output of one command into the next through "-".
Result pipe(std::vector<std::string> first, std::vector<std::string> second) {
  Result a = run(std::move(first));
  REQUIRE(a.code == 0);
  return run(std::move(second), a.out);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("framelab_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("simplex piped into verify") {
  Result r = pipe({"simplex", "--n", "3"}, {"verify", "-"});
  CHECK(r.code == 0);
  json j = r.j();
  CHECK(j["tight"] == true);
  CHECK(j["spherical"] == true);
  CHECK(j["bound"].get<double>() == doctest::Approx(4.0 / 3).epsilon(1e-12));
  CHECK(j["expected_bound"].get<double>() == doctest::Approx(4.0 / 3).epsilon(1e-12));
}

TEST_CASE("verify a non-tight frame exits 1 with bounds") {
  Result r = run({"verify", "-"}, R"({"field":"R","n":2,"k":3,"entries":[[1,0,1],[0,1,0]]})");
  CHECK(r.code == 1);
  json j = r.j();
  CHECK(j["tight"] == false);
  CHECK(j["bounds"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["bounds"][1].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("verify with axes and several files in parallel") {
  TempDir dir;
  std::string ell = dir.write("ell.json", framelab::io::to_json(framelab::Frame::real([] {
                                             double q = 1 / std::sqrt(3.0);
                                             framelab::RMatrix m(2, 4);
                                             m << q, -q, q, -q, q, q, -q, -q;
                                             return m;
                                           }()))
                                               .dump());
  Result e = run({"verify", ell, "--axes", "2,1"});
  CHECK(e.code == 0);
  CHECK(e.j()["on_ellipsoid"] == true);
  CHECK(e.j()["expected_bound"].get<double>() == doctest::Approx(4.0 / 3));

  std::vector<std::string> args{"--jobs", "3", "verify"};
  for (int n = 1; n <= 5; ++n) {
    Result s = run({"simplex", "--n", std::to_string(n)});
    args.push_back(dir.write("s" + std::to_string(n) + ".json", s.out));
  }
  Result all = run(args);
  CHECK(all.code == 0);
  REQUIRE(all.j().size() == 5);
  for (int n = 1; n <= 5; ++n)
    CHECK(all.j()[size_t(n - 1)]["bound"].get<double>() == doctest::Approx((n + 1.0) / n));
}

TEST_CASE("input errors exit 2 with a one-line diagnostic") {
  for (const auto& r : {run({"verify", "-"}, "{not json"), run({"verify", "/nonexistent.json"}),
                        run({"simplex", "--n", "0"}), run({"nosuch"}), run({"--tol", "-1", "simplex", "--n", "2"}),
                        run({"--max-step", "2", "case-path", "1"}), run({"dims", "--k", "2", "--n", "2"}),
                        run({"complex", "g99"}), run({"gram", "-"}, R"({"field":"R","n":2,"k":3,"entries":[[1,0,1],[0,1,0]]})"),
                        run({"simplex", "--n", "2"}, "", "abc")}) {
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("FRAMELAB_TOL and --tol") {
  std::string near = framelab::io::to_json(framelab::simplex_frame(2)).dump();
  json jn = json::parse(near);
  jn["entries"][0][0] = jn["entries"][0][0].get<double>() * (1 + 1e-7);
  CHECK(run({"verify", "-"}, jn.dump()).code == 1);
  CHECK(run({"verify", "-"}, jn.dump(), "1e-5").code == 0);
  CHECK(run({"--tol", "1e-5", "verify", "-"}, jn.dump()).code == 0);
  CHECK(run({"--tol", "1e-12", "verify", "-"}, jn.dump(), "1e-5").code == 1);
}

TEST_CASE("gram, complement and frame-from-gram compose") {
  Result c = pipe({"simplex", "--n", "4"}, {"gram", "-"});
  REQUIRE(c.code == 0);
  Result comp = run({"complement", "-"}, c.out);
  REQUIRE(comp.code == 0);
  CHECK(comp.j()["n"] == 1);
  Result f = run({"frame-from-gram", "-"}, comp.out);
  REQUIRE(f.code == 0);
  CHECK(f.j()["n"] == 1);
  CHECK(run({"verify", "-"}, f.out).code == 0);
}

TEST_CASE("stratification subcommands") {
  Result p = pipe({"harmonic", "--k", "4", "--n", "2"}, {"gram", "-"});
  Result part = run({"partition", "-"}, p.out);
  CHECK(part.code == 0);
  CHECK(part.j()["blocks"] == json::parse("[[1,3],[2,4]]"));
  Result tan = run({"tangent", "-"}, p.out);
  CHECK(tan.j()["rank"] == 2);
  CHECK(tan.j()["regular"] == false);
  Result text = run({"--format", "text", "partition", "-"}, p.out);
  CHECK(text.out.find("cardinalities_ok: true") != std::string::npos);

  Result d = run({"dims", "--k", "3", "--n", "2", "--field", "C"});
  CHECK(d.j() == json{{"dimG", 2}, {"dimF", 6}, {"dimN", 2}, {"dimM", 6}});
  Result reg = pipe({"regular-point", "--k", "6", "--n", "3"}, {"tangent", "-"});
  CHECK(reg.j()["regular"] == true);
  Result e = run({"enumerate-1red", "--n", "2"});
  CHECK(e.j()["point_count"] == 4);
  CHECK(e.j()["sign_orbits"] == 1);
  CHECK_FALSE(e.j().contains("points"));
  CHECK(run({"enumerate-1red", "--n", "2", "--points"}).j()["points"].size() == 4);
}

TEST_CASE("seeded random subcommands are deterministic") {
  CHECK(run({"--seed", "7", "random-frame", "--k", "5", "--n", "2"}).out ==
        run({"--seed", "7", "random-frame", "--k", "5", "--n", "2"}).out);
  CHECK(run({"--seed", "7", "random-frame", "--k", "5", "--n", "2"}).out !=
        run({"--seed", "8", "random-frame", "--k", "5", "--n", "2"}).out);
  Result p = run({"--seed", "3", "random-planar", "--k", "6"});
  CHECK(p.code == 0);
  CHECK(run({"verify", "-"}, p.out).code == 0);
}

TEST_CASE("planar subcommands") {
  Result frame = run({"--seed", "5", "random-planar", "--k", "7"});
  Result path = run({"planar-connect", "-"}, frame.out);
  REQUIRE(path.code == 0);
  CHECK(path.j()["kind"] == "planar");
  Result ok = run({"--tol", "1e-6", "validate-path", "-", "--end",
                   R"([[0.5,0.8660254037844386],[0.5,-0.8660254037844386],[1,0],[1,0],[0,1],[1,0],[0,1]])"},
                  path.out);
  CHECK(ok.code == 0);
  CHECK(ok.j()["ok"] == true);
  Result wrong = run({"validate-path", "-", "--end", "[[1,0],[1,0],[1,0],[1,0],[1,0],[1,0],[1,0]]"}, path.out);
  CHECK(wrong.code == 1);
  CHECK(wrong.j()["violation"] == "end endpoint");

  TempDir dir;
  std::string start = dir.write("start.json", frame.out);
  std::string chain = dir.write("chain.json", run({"straighten", start}).out);
  Result lifted = run({"lift", chain, start});
  REQUIRE(lifted.code == 0);
  CHECK(run({"validate-path", "-"}, lifted.out).code == 0);
  CHECK(run({"lift", "-", "-"}).code == 2);
}

TEST_CASE("case I loop holonomy through the CLI") {
  Result loop = pipe({"case-path", "1"}, {"path-to-loop", "-"});
  REQUIRE(loop.code == 0);
  Result h = run({"holonomy", "-"}, loop.out);
  CHECK(h.code == 0);
  CHECK(h.j()["sign"] == -1);
}

TEST_CASE("complex subcommands") {
  Result g = pipe({"complex", "g52"}, {"surface-report", "-"});
  CHECK(g.code == 0);
  CHECK(g.j()["euler"] == -48);
  CHECK(g.j()["v"] == 96);
  CHECK(g.j()["closed_surface"] == true);

  TempDir dir;
  std::string out = (dir.path / "g42.json").string();
  Result ex = run({"complex", "g42", "--export", out});
  CHECK(ex.code == 0);
  CHECK(ex.j()["euler"] == -12);
  Result again = run({"surface-report", out});
  CHECK(again.out == ex.out);
}

TEST_CASE("help exits 0") {
  Result h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify") != std::string::npos);
}
