#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>

#include "framelab/io.hpp"
#include "framelab/random.hpp"

namespace framelab::cli {

namespace {

using io::json;

struct RunConfig {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  double max_step = kDefaultMaxStep;
  std::string format = "json";
  int jobs = 1;
};


struct VerifyResult {
  std::string file;
  json report;
  bool pass = false;
};

VerifyResult verify_one(const std::string& file, std::istream& in, const RunConfig& cfg,
                        const std::vector<double>& axes) {
  Frame f = io::frame_from_json(io::read_json(file, in));
  TightnessReport t = is_tight(f, cfg.tol);
  bool spherical = has_unit_columns(f, cfg.tol);
  json r = {{"file", file},
            {"field", std::string(to_string(f.field()))},
            {"n", f.n()},
            {"k", f.k()},
            {"bounds", {t.bounds.lower, t.bounds.upper}},
            {"tight", t.tight},
            {"bound", t.bound},
            {"spherical", spherical}};
  bool pass = t.tight && spherical;
  if (!axes.empty()) {
    EllipsoidSpec a(axes);
    bool on = is_on_ellipsoid(f, a, cfg.tol);
    r["on_ellipsoid"] = on;
    if (f.k() > f.n()) r["expected_bound"] = expected_tight_bound(a, f.k());
    pass = t.tight && on;
  } else if (f.k() > f.n()) {
    r["expected_bound"] = expected_tight_bound(EllipsoidSpec::sphere(f.n()), f.k());
  }
  r["pass"] = pass;
  return {file, std::move(r), pass};
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

void emit_text(std::ostream& out, const json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) out << it.key() << ": " << it.value().dump() << '\n';
  } else if (j.is_array()) {
    for (const auto& e : j) {
      emit_text(out, e);
      out << '\n';
    }
  } else {
    out << j.dump() << '\n';
  }
}

std::vector<cplx> planar_from_json(const json& j, double tol) {
  if (j.contains("entries")) return to_planar(io::frame_from_json(j), tol).z();
  if (j.contains("z")) {
    std::vector<cplx> z;
    for (const auto& v : j.at("z")) z.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return PlanarFrame::make(std::move(z), tol).z();
  }
  throw InvalidInput("expected a frame file or {\"z\": [...]}");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* env_tol) {
  RunConfig cfg;
  if (env_tol && *env_tol) {
    try {
      size_t used = 0;
      cfg.tol = std::stod(env_tol, &used);
      if (used != std::string(env_tol).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: FRAMELAB_TOL is not a number: " << env_tol << '\n';
      return 2;
    }
  }

  CLI::App app{"framelab: spherical and ellipsoidal tight frame toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tol", cfg.tol, "Verification tolerance (default 1e-9 or FRAMELAB_TOL)");
  app.add_option("--seed", cfg.seed, "Seed for randomized subcommands");
  app.add_option("--max-step", cfg.max_step, "Path resolution in max norm");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", cfg.jobs, "Parallel workers for batch verify")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  std::string file, file2, field_name = "R", which;
  int n = 0, k = 0;
  std::vector<double> axes;
  std::string export_path;
  bool with_points = false;
  std::string start_json, end_json;

  auto* verify = app.add_subcommand("verify", "Frame bounds, tightness, sphericity or ellipsoid membership");
  verify->add_option("files", files, "Frame files ('-' for stdin)")->required();
  verify->add_option("--axes", axes, "Ellipsoid axes a_1 >= ... >= a_n > 0")->delimiter(',');

  auto* gram_cmd = app.add_subcommand("gram", "Gram point of a spherical tight frame");
  gram_cmd->add_option("file", file)->required();
  auto* comp_cmd = app.add_subcommand("complement", "Naimark complement of a Gram point");
  comp_cmd->add_option("file", file)->required();
  auto* ffg_cmd = app.add_subcommand("frame-from-gram", "A frame with the given Gram point");
  ffg_cmd->add_option("file", file)->required();

  auto* simplex_cmd = app.add_subcommand("simplex", "Simplex frame of n+1 vectors in dimension n");
  simplex_cmd->add_option("--n", n)->required();
  auto* harmonic_cmd = app.add_subcommand("harmonic", "Harmonic spherical tight frame");
  harmonic_cmd->add_option("--k", k)->required();
  harmonic_cmd->add_option("--n", n)->required();
  harmonic_cmd->add_option("--field", field_name);
  auto* random_cmd = app.add_subcommand("random-frame", "Seeded random spherical tight frame");
  random_cmd->add_option("--k", k)->required();
  random_cmd->add_option("--n", n)->required();
  random_cmd->add_option("--field", field_name);
  auto* random_planar_cmd = app.add_subcommand("random-planar", "Seeded random frame of k vectors in R^2");
  random_planar_cmd->add_option("--k", k)->required();

  auto* partition_cmd = app.add_subcommand("partition", "Commutant partition of a Gram point (1-based)");
  partition_cmd->add_option("file", file)->required();
  auto* tangent_cmd = app.add_subcommand("tangent", "Tangent rank and stratum dimension at a Gram point");
  tangent_cmd->add_option("file", file)->required();
  auto* dims_cmd = app.add_subcommand("dims", "Closed-form dimensions");
  dims_cmd->add_option("--k", k)->required();
  dims_cmd->add_option("--n", n)->required();
  dims_cmd->add_option("--field", field_name);
  auto* regular_cmd = app.add_subcommand("regular-point", "A Gram point with trivial commutant partition");
  regular_cmd->add_option("--k", k)->required();
  regular_cmd->add_option("--n", n)->required();
  auto* enum_cmd = app.add_subcommand("enumerate-1red", "Real Gram points with k = n + 1, rank 1");
  enum_cmd->add_option("--n", n)->required();
  enum_cmd->add_flag("--points", with_points, "Include the Gram points");

  auto* connect_cmd = app.add_subcommand("planar-connect", "Path from a frame in R^2 to the canonical frame");
  connect_cmd->add_option("file", file)->required();
  auto* straighten_cmd = app.add_subcommand("straighten", "Chain path from the squared frame to the standard chain");
  straighten_cmd->add_option("file", file)->required();
  auto* lift_cmd = app.add_subcommand("lift", "Lift a chain path through the squaring map");
  lift_cmd->add_option("chainpath", file)->required();
  lift_cmd->add_option("start", file2)->required();
  auto* case_cmd = app.add_subcommand("case-path", "Explicit homotopy for k = 4 (1) or k = 5 (3)");
  case_cmd->add_option("case", which)->required()->check(CLI::IsMember({"1", "3"}));
  auto* validate_cmd = app.add_subcommand("validate-path", "Check a sampled path");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_option("--start", start_json, "Declared start, JSON list of [re,im]");
  validate_cmd->add_option("--end", end_json, "Declared end, JSON list of [re,im]");
  auto* loop_cmd = app.add_subcommand("path-to-loop", "Gram points along a planar path");
  loop_cmd->add_option("file", file)->required();
  auto* holonomy_cmd = app.add_subcommand("holonomy", "Determinant sign picked up along a loop of Gram points");
  holonomy_cmd->add_option("file", file)->required();

  auto* complex_cmd = app.add_subcommand("complex", "Built-in cell complexes");
  complex_cmd->add_option("name", which)->required()->check(CLI::IsMember({"g42", "g52"}));
  complex_cmd->add_option("--export", export_path, "Write the complex JSON to this file and print its report");
  auto* report_cmd = app.add_subcommand("surface-report", "Euler characteristic, closedness, orientability, genus");
  report_cmd->add_option("file", file)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (!(cfg.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return 2;
  }
  if (!(cfg.max_step > 0.0 && cfg.max_step < 1.0)) {
    err << "error: --max-step must lie in (0, 1)\n";
    return 2;
  }

  const bool text = cfg.format == "text";
  auto show = [&](const json& j) { text ? emit_text(out, j) : emit(out, j); };
  auto load = [&](const std::string& path) { return io::read_json(path, in); };

  try {
    if (verify->parsed()) {
      if (std::count(files.begin(), files.end(), "-") > 1) throw InvalidInput("stdin can be read only once");
      std::vector<VerifyResult> results(files.size());
      if (cfg.jobs > 1 && files.size() > 1) {
        std::vector<std::future<VerifyResult>> futs;
        size_t next = 0;
        while (next < files.size()) {
          futs.clear();
          size_t base = next;
          for (int w = 0; w < cfg.jobs && next < files.size(); ++w, ++next)
            futs.push_back(std::async(std::launch::async, verify_one, files[next], std::ref(in), cfg, axes));
          for (size_t i = 0; i < futs.size(); ++i) results[base + i] = futs[i].get();
        }
      } else {
        for (size_t i = 0; i < files.size(); ++i) results[i] = verify_one(files[i], in, cfg, axes);
      }
      bool all = true;
      json arr = json::array();
      for (auto& r : results) {
        all = all && r.pass;
        arr.push_back(r.report);
      }
      show(arr.size() == 1 ? arr[0] : arr);
      return all ? 0 : 1;
    }
    if (gram_cmd->parsed()) {
      show(io::to_json(gram(io::frame_from_json(load(file)), cfg.tol)));
    } else if (comp_cmd->parsed()) {
      show(io::to_json(complement(io::gram_from_json(load(file), cfg.tol))));
    } else if (ffg_cmd->parsed()) {
      show(io::to_json(frame_from_gram(io::gram_from_json(load(file), cfg.tol), cfg.tol)));
    } else if (simplex_cmd->parsed()) {
      show(io::to_json(simplex_frame(n)));
    } else if (harmonic_cmd->parsed()) {
      show(io::to_json(harmonic_frame(k, n, parse_field(field_name))));
    } else if (random_cmd->parsed()) {
      Rng rng(cfg.seed);
      if (!(k > n && n >= 1)) throw InvalidInput("random-frame needs k > n >= 1");
      show(io::to_json(random_spherical_tight_frame(k, n, parse_field(field_name), rng)));
    } else if (random_planar_cmd->parsed()) {
      Rng rng(cfg.seed);
      show(io::to_json(from_planar(PlanarFrame::make(random_planar_frame(k, rng), 1e-12))));
    } else if (partition_cmd->parsed()) {
      GramPoint r = io::gram_from_json(load(file), cfg.tol);
      Partition p = commutant_partition(r.entries(), cfg.tol);
      json j = io::to_json(p);
      if (text) {
        j["orthodecomposable"] = p.size() > 1;
        j["cardinalities_ok"] = check_block_cardinalities(p, r.k(), r.n());
      }
      show(j);
    } else if (tangent_cmd->parsed()) {
      show(io::to_json(tangent_report(io::gram_from_json(load(file), cfg.tol), cfg.tol)));
    } else if (dims_cmd->parsed()) {
      show(io::to_json(expected_dimensions(k, n, parse_field(field_name))));
    } else if (regular_cmd->parsed()) {
      show(io::to_json(construct_regular_point(k, n)));
    } else if (enum_cmd->parsed()) {
      OneRedundantEnumeration e = enumerate_one_redundant(n);
      json j = {{"n", n},
                {"point_count", e.points.size()},
                {"permutation_orbits", e.permutation_orbits},
                {"sign_orbits", e.sign_orbits}};
      if (with_points) j["points"] = io::loop_to_json(e.points)["points"];
      show(j);
    } else if (connect_cmd->parsed()) {
      PlanarFrame z = PlanarFrame::make(planar_from_json(load(file), cfg.tol), cfg.tol);
      show(io::to_json(connect_to_standard(z, cfg.max_step, cfg.tol)));
    } else if (straighten_cmd->parsed()) {
      PlanarFrame z = PlanarFrame::make(planar_from_json(load(file), cfg.tol), cfg.tol);
      show(io::to_json(chain_straighten(square_map(z), cfg.max_step, std::max(cfg.tol, 1e-9))));
    } else if (lift_cmd->parsed()) {
      if (file == "-" && file2 == "-") throw InvalidInput("stdin can be read only once");
      FramePath cp = io::path_from_json(load(file));
      PlanarFrame start = PlanarFrame::make(planar_from_json(load(file2), cfg.tol), cfg.tol);
      show(io::to_json(lift_path(cp, start, cfg.tol)));
    } else if (case_cmd->parsed()) {
      show(io::to_json(which == "1" ? case1_explicit_path(cfg.max_step) : case3_explicit_path(cfg.max_step)));
    } else if (validate_cmd->parsed()) {
      FramePath p = io::path_from_json(load(file));
      PathEndpoints ends;
      auto parse_point = [](const std::string& s) {
        std::vector<cplx> z;
        json j;
        try {
          j = json::parse(s);
          for (const auto& v : j) z.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        } catch (const json::exception& e) {
          throw InvalidInput(std::string("malformed endpoint: ") + e.what());
        }
        return z;
      };
      if (!start_json.empty()) ends.start = parse_point(start_json);
      if (!end_json.empty()) ends.end = parse_point(end_json);
      PathValidation v = validate_path(p, cfg.tol, ends);
      show(io::to_json(v));
      return v.ok ? 0 : 1;
    } else if (loop_cmd->parsed()) {
      FramePath p = io::path_from_json(load(file));
      if (p.kind != PathKind::Planar) throw InvalidInput("path-to-loop needs a planar path");
      std::vector<GramPoint> loop;
      for (const auto& s : p.samples)
        loop.push_back(gram(from_planar(PlanarFrame::make(s.point, cfg.tol)), cfg.tol));
      show(io::loop_to_json(loop));
    } else if (holonomy_cmd->parsed()) {
      auto loop = io::loop_from_json(load(file), cfg.tol);
      show(json{{"sign", holonomy_sign(loop, cfg.tol)}, {"points", loop.size()}});
    } else if (complex_cmd->parsed()) {
      Complex2 c = which == "g42" ? build_g42() : build_g52();
      if (!export_path.empty()) {
        std::ofstream f(export_path);
        if (!f) throw InvalidInput("cannot write '" + export_path + "'");
        f << io::to_json(c).dump() << '\n';
        show(io::to_json(surface_report(c)));
      } else {
        emit(out, io::to_json(c));
      }
    } else if (report_cmd->parsed()) {
      show(io::to_json(surface_report(io::complex_from_json(load(file)))));
    }
    return 0;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalRefusal& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace framelab::cli
