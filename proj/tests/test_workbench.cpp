#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "convexdiff/random.hpp"
#include "convexdiff/workbench/app.hpp"

using namespace convexdiff;
using namespace convexdiff::workbench;
using Q = Rational;
using V = Vec<Q>;
using P = Polytope<Q>;

namespace {

const std::filesystem::path kSource = CONVEXDIFF_SOURCE_DIR;

Json fig1_doc() { return Json::parse(*bundled_scenario("fig1")); }

Json scenario(const std::string& op, Json inputs, Json output = Json{{"report", "r.json"}}) {
  return Json{{"version", 1},       {"arithmetic", "rational"}, {"seed", 5},
              {"operation", op},    {"inputs", std::move(inputs)}, {"output", std::move(output)}};
}

Json square_json() { return Json::parse(R"({"dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})"); }

Json abs_fn() { return Json::parse(R"({"pieces": [{"a": [1], "b": 0}, {"a": [-1], "b": 0}]})"); }

bool has_diag(const std::vector<Diagnostic>& ds, const std::string& path, const std::string& fragment) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) {
    return d.path == path && d.message.find(fragment) != std::string::npos;
  });
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("convexdiff-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("polytope JSON round trip is exact") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    auto x = random_shape<Q>(rng);
    auto text = to_json(x).dump();
    REQUIRE(parse_polytope<Q>(Json::parse(text), "") == x);
    auto xd = convert<double>(x);
    REQUIRE(parse_polytope<double>(Json::parse(to_json(xd).dump()), "") == xd);
  }
  P thirds = P::hull({V{Q(1) / Q(3), Q(-2) / Q(7)}, V{Q(5), Q(1) / Q(9)}});
  REQUIRE(to_json(thirds)["vertices"][0][0] == "1/3");
  REQUIRE(parse_polytope<Q>(to_json(thirds), "") == thirds);
  REQUIRE(parse_scalar<Q>(Json(0.1), "") == Q(1) / Q(10));
  REQUIRE(parse_scalar<Q>(Json("-3/6"), "") == Q(-1) / Q(2));
  REQUIRE(parse_scalar<double>(Json("1/4"), "") == 0.25);
}

TEST_CASE("function JSON round trip") {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto f = random_pwl<Q>(rng, 2);
    auto g = parse_function<Q>(Json::parse(to_json(f).dump()), "");
    REQUIRE(g.pieces().size() == f.pieces().size());
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
      REQUIRE(g.pieces()[k].a == f.pieces()[k].a);
      REQUIRE(g.pieces()[k].b == f.pieces()[k].b);
    }
  }
}

TEST_CASE("mixed scalar forms are rejected with a position") {
  auto j = Json::parse(R"({"dim": 2, "vertices": [[0, 0], ["1/2", "1"]]})");
  try {
    parse_polytope<Q>(j, "/inputs/A");
    FAIL("mixed forms accepted");
  } catch (const ParseError& e) {
    REQUIRE(e.diagnostic().path == "/inputs/A/vertices/1/0");
    REQUIRE(std::string(e.what()).find("mixes") != std::string::npos);
  }
  REQUIRE_THROWS_AS(parse_scalar<Q>(Json("1/0"), "/s"), ParseError);
  REQUIRE_THROWS_AS(parse_scalar<Q>(Json("abc"), "/s"), ParseError);
  REQUIRE_THROWS_AS(parse_scalar<Q>(Json(true), "/s"), ParseError);
  REQUIRE_THROWS_AS(parse_polytope<Q>(Json::parse(R"({"dim": 2, "vertices": []})"), ""), ParseError);
}

TEST_CASE("bundled scenarios validate and match the files on disk") {
  for (const auto& [name, text] : kBundledScenarios) {
    auto doc = Json::parse(text);
    CHECK(validate(doc).empty());
    auto file = Json::parse(read_file(kSource / "scenarios" / (std::string(name) + ".json")));
    CHECK(file == doc);
  }
  REQUIRE(bundled_scenario("fig1"));
  REQUIRE_FALSE(bundled_scenario("nope"));
}

TEST_CASE("validation reports positional and semantic errors") {
  SECTION("wrong vertex arity") {
    auto doc = fig1_doc();
    doc["inputs"]["A"]["vertices"][1] = Json::array({"1", "0", "0"});
    auto ds = validate(doc);
    REQUIRE(has_diag(ds, "/inputs/A/vertices/1", "expected 2 coordinates, got 3"));
  }
  SECTION("negative eps names the field") {
    auto ds = validate(scenario("eps-subdiff", {{"f", abs_fn()}, {"x", {1}}, {"eps", "-1/2"}}));
    REQUIRE(has_diag(ds, "/inputs/eps", "eps must be nonnegative"));
  }
  SECTION("structure") {
    auto doc = fig1_doc();
    doc.erase("seed");
    doc["version"] = 2;
    doc["args"]["X"] = "missing";
    auto ds = validate(doc);
    REQUIRE(has_diag(ds, "", "missing field \"seed\""));
    REQUIRE(has_diag(ds, "/version", "unsupported version"));
    REQUIRE(has_diag(ds, "/args/X", "undefined input"));
  }
  SECTION("operation and parameters") {
    REQUIRE(has_diag(validate(scenario("frobnicate", Json::object())), "/operation", "unknown operation"));
    auto ds = validate(scenario("gmp-minimal", {{"X", square_json()}, {"Y", square_json()}, {"grid", 4}}));
    REQUIRE(has_diag(ds, "/inputs/grid", "at least 8"));
    REQUIRE(has_diag(ds, "/inputs", "exactly one of"));
    ds = validate(scenario("lipschitz-probe", {{"f", abs_fn()}, {"x", {1}}, {"eps", 1}, {"upsilon", 1}}));
    REQUIRE(has_diag(ds, "/inputs/upsilon", "smaller than eps"));
    ds = validate(scenario("graph-convexity", {{"f", abs_fn()}, {"x", {1}}, {"eps1", 0}, {"eps2", 1}, {"t", 2}}));
    REQUIRE(has_diag(ds, "/inputs/t", "[0, 1]"));
  }
  SECTION("dimensions") {
    auto seg3 = Json::parse(R"({"dim": 3, "vertices": [[0, 0, 0], [1, 1, 1]]})");
    auto ds = validate(scenario("minkowski-sum", {{"X", square_json()}, {"Y", seg3}}));
    REQUIRE(has_diag(ds, "/inputs/Y", "does not match"));
    ds = validate(scenario("minimal-oracle", {{"X", seg3}, {"Y", seg3}}));
    REQUIRE(has_diag(ds, "/inputs/X", "only available in dimension 2"));
    ds = validate(scenario("norm", {{"X", seg3}}, {{"report", "r.json"}, {"svg", "r.svg"}}));
    REQUIRE(has_diag(ds, "/output/svg", "planar"));
  }
  SECTION("double mode needs a positive tolerance") {
    auto doc = fig1_doc();
    doc["inputs"]["tolerance"] = 0;
    REQUIRE(validate(doc).empty());
    REQUIRE(has_diag(validate(doc, {Arithmetic::floating, {}}), "/inputs/tolerance", "positive"));
  }
}

TEST_CASE("SVG rendering") {
  SECTION("unit square is one closed path with four points") {
    auto sq = P::hull({V{Q(0), Q(0)}, V{Q(1), Q(0)}, V{Q(1), Q(1)}, V{Q(0), Q(1)}});
    auto svg = render_svg({svg_item(sq, "square", "minuend")});
    REQUIRE(count(svg, "<path") == 1);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("d=\"([^\"]*)\"")));
    const std::string d = m[1];
    REQUIRE(count(d, "M ") == 1);
    REQUIRE(count(d, " L ") == 3);
    REQUIRE(d.back() == 'Z');
    REQUIRE(svg.find("viewBox=\"-0.1 -1.1 1.2 1.2\"") != std::string::npos);
  }
  SECTION("empty list is a valid empty canvas") {
    auto svg = render_svg({});
    REQUIRE(svg.find("<svg") != std::string::npos);
    REQUIRE(svg.find("</svg>") != std::string::npos);
    REQUIRE(count(svg, "<g") == 0);
  }
  SECTION("non-planar input is rejected") {
    REQUIRE_THROWS_AS(svg_item(P::origin(3), "", ""), UnsupportedDimension);
  }
  SECTION("fig1 overlay: triangle, base segment and the element segments") {
    auto s = load_scenario(fig1_doc());
    auto r = execute(s);
    REQUIRE(r.svg);
    const auto& svg = *r.svg;
    REQUIRE(count(svg, "<path") == 10);
    REQUIRE(count(svg, " Z\"") == 1);
    REQUIRE(count(svg, "class=\"element\"") == 8);
    REQUIRE(svg == *execute(s, RunOptions{3}).svg);
  }
}

TEST_CASE("fig1 scenario report") {
  auto r = execute(load_scenario(fig1_doc()));
  REQUIRE(r.exit_code == kOk);
  const auto& res = r.report["results"];
  REQUIRE(res["elements"].size() == 8);
  REQUIRE(res["pairwise_non_equivalent"] == 8);
  REQUIRE(res["segments"] == 8);
  for (const auto& e : res["elements"]) {
    REQUIRE(e["certified_feasible"] == true);
    REQUIRE(e["selector_gap"] == "0");
    // Segment from the origin to a point on the line y = 1.
    auto z = parse_polytope<Q>(e["element"], "");
    REQUIRE(z.size() == 2);
    REQUIRE(contains_point(z, V{Q(0), Q(0)}));
    REQUIRE((z.vertices()[0][1] == 1 || z.vertices()[1][1] == 1));
  }
  for (const auto& key : {"schema_version", "scenario", "results", "checks", "tolerances", "timing"})
    REQUIRE(r.report.contains(key));
}

TEST_CASE("fig1 scenario in double mode") {
  auto r = execute(load_scenario(fig1_doc(), {Arithmetic::floating, {}}));
  REQUIRE(r.exit_code == kOk);
  REQUIRE(r.report["arithmetic"] == "double");
  REQUIRE(r.report["results"]["segments"] == 8);
  for (const auto& e : r.report["results"]["elements"]) REQUIRE(e["certified_feasible"] == true);
}

TEST_CASE("lipschitz scenario on |x|") {
  auto r = execute(load_scenario(Json::parse(*bundled_scenario("lipschitz"))));
  REQUIRE(r.exit_code == kOk);
  const auto& res = r.report["results"];
  REQUIRE(res["L_emp"].get<double>() == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(res["L_bound"].get<double>() == Catch::Approx(3.0).margin(1e-12));
  REQUIRE(res["violations"] == 0);
}

TEST_CASE("reports are deterministic apart from timing") {
  for (const char* name : {"fig1", "lipschitz", "nested"}) {
    auto s = load_scenario(Json::parse(*bundled_scenario(name)));
    auto a = execute(s, RunOptions{1}), b = execute(s, RunOptions{4});
    REQUIRE(canonical_report(a.report) == canonical_report(b.report));
    REQUIRE(canonical_report(a.report).find("\"timing\"") == std::string::npos);
  }
}

TEST_CASE("every operation runs on a small scenario") {
  auto tri = Json::parse(R"({"dim": 2, "vertices": [["0", "0"], ["2", "0"], ["1", "2"]]})");
  auto pt = Json::parse(R"({"dim": 2, "vertices": [["1/2", "1/2"]]})");
  auto f2 = Json::parse(R"({"pieces": [{"a": [1, 0], "b": 0}, {"a": [-1, 1], "b": 0.5}, {"a": [0, -1], "b": 0}]})");
  std::vector<std::pair<std::string, Json>> cases = {
      {"hull", {{"points", {{0, 0}, {1, 0}, {0, 1}, {0.25, 0.25}}}}},
      {"support", {{"X", square_json()}, {"p", {1, 1}}}},
      {"minkowski-sum", {{"X", square_json()}, {"Y", tri}}},
      {"scale", {{"X", tri}, {"alpha", "-1/2"}}},
      {"contains-point", {{"X", tri}, {"v", {1, 1}}}},
      {"contains-set", {{"X", pt}, {"Y", tri}}},
      {"intersect", {{"X", square_json()}, {"Y", tri}}},
      {"hausdorff", {{"X", square_json()}, {"Y", tri}}},
      {"norm", {{"X", tri}}},
      {"cover-diff", {{"X", pt}, {"Y", tri}}},
      {"erode-diff", {{"X", tri}, {"Y", pt}}},
      {"sign-discrepancy", {{"X", pt}, {"Y", square_json()}}},
      {"collection-support", {{"X", tri}, {"Y", square_json()}, {"p", {0, 1}}}},
      {"collection-equivalent", {{"X", tri}, {"Y", pt}, {"Z", tri}, {"W", pt}}},
      {"feasible", {{"X", tri}, {"Y", pt}, {"Z", tri}}},
      {"gmp-minimal", {{"X", tri}, {"Y", square_json()}, {"selector_count", 4}, {"grid", 16}}},
      {"minimal-oracle", {{"X", tri}, {"Y", square_json()}, {"grid", 8}, {"ladder", 4}}},
      {"collection-norm", {{"X", tri}, {"Y", square_json()}, {"selector_count", 4}}},
      {"eval", {{"f", f2}, {"x", {0, 0}}}},
      {"eps-subdiff", {{"f", f2}, {"x", {0, 0}}, {"eps", "1/4"}}},
      {"eps-oracle", {{"f", f2}, {"x", {0, 0}}, {"eps", "1/4"}, {"g", {0, 0}}}},
      {"graph-convexity", {{"f", f2}, {"x", {0, 0}}, {"eps1", 0}, {"eps2", 1}, {"t", "1/3"}}},
      {"lipschitz-probe", {{"f", f2}, {"x", {0, 0}}, {"eps", 1}, {"upsilon", "1/2"}, {"pairs", 20}}},
      {"lemma-suite", {{"instances", 3}}},
      {"containment-suite", {{"instances", 3}}},
      {"mp-suite", {{"instances", 6}}},
      {"nested-exploration", {{"instances", 3}}},
  };
  REQUIRE(cases.size() == operations().size());
  for (const auto& [op, inputs] : cases) {
    INFO(op);
    auto doc = scenario(op, inputs);
    REQUIRE(validate(doc).empty());
    auto r = execute(load_scenario(doc));
    CHECK(r.exit_code == kOk);
    CHECK(r.report["status"] == "ok");
    CHECK_FALSE(r.report["results"].empty());
  }
}

TEST_CASE("selected operation results") {
  auto run = [](const std::string& op, Json inputs) { return execute(load_scenario(scenario(op, std::move(inputs)))).report["results"]; };
  auto sq = square_json();
  REQUIRE(run("support", {{"X", sq}, {"p", {1, 0}}})["value"] == "1");
  REQUIRE(run("contains-set", {{"X", sq}, {"Y", Json::parse(R"({"dim": 2, "vertices": [[0,0],[2,0],[2,2],[0,2]]})")}})["X_in_Y"] == true);
  REQUIRE(run("intersect", {{"X", sq}, {"Y", Json::parse(R"({"dim": 2, "vertices": [[2,2],[3,2],[3,3]]})")}})["empty"] == true);
  REQUIRE(run("eps-subdiff", {{"f", abs_fn()}, {"x", {1}}, {"eps", "1/2"}})["subdifferential"] ==
          Json::parse(R"({"dim": 1, "vertices": [["1/2"], ["1"]]})"));
  REQUIRE(run("eval", {{"f", abs_fn()}, {"x", {0}}})["active"] == Json::array({0, 1}));
  REQUIRE(run("collection-equivalent", {{"X", sq}, {"Y", sq}, {"Z", Json::parse(R"({"dim": 2, "vertices": [[0,0]]})")},
                                        {"W", Json::parse(R"({"dim": 2, "vertices": [[0,0]]})")}})["equivalent"] == true);
  auto mp = run("mp-suite", {{"instances", 20}});
  REQUIRE(mp["pass"] == true);
  REQUIRE(mp["details"]["sign_discrepancy"]["pairs_with_reflected_mismatch"].get<int>() > 0);
}

TEST_CASE("suites do not depend on the number of threads") {
  SuiteOptions o;
  o.instances = 6;
  o.seed = 9;
  auto a = to_json(lemma_suite<Q>(o));
  o.jobs = 3;
  REQUIRE(to_json(lemma_suite<Q>(o)) == a);
  REQUIRE(a["pass"] == true);
}

TEST_CASE("commands: exit codes, atomic outputs and the seed override") {
  TempDir tmp;
  CommandOptions opt;
  opt.out_dir = tmp.path / "out";
  opt.quiet = true;
  std::ostringstream out, err;

  auto write = [&](const std::string& name, const Json& doc) {
    auto p = tmp.path / name;
    write_atomic(p, doc.dump());
    return p;
  };

  SECTION("run writes report and svg") {
    auto p = write("fig1.json", fig1_doc());
    REQUIRE(run_command(p, opt, out, err) == kOk);
    REQUIRE(std::filesystem::exists(opt.out_dir / "fig1.report.json"));
    REQUIRE(std::filesystem::exists(opt.out_dir / "fig1.svg"));
    for (const auto& entry : std::filesystem::directory_iterator(opt.out_dir))
      REQUIRE(entry.path().string().find(".tmp.") == std::string::npos);
    auto report = Json::parse(read_file(opt.out_dir / "fig1.report.json"));
    REQUIRE(report["status"] == "ok");
    REQUIRE(validate_command(p, opt, out, err) == kOk);
  }
  SECTION("validation errors exit 2") {
    auto doc = fig1_doc();
    doc["inputs"]["B"]["vertices"][0] = Json::array({"0"});
    auto p = write("bad.json", doc);
    REQUIRE(validate_command(p, opt, out, err) == kInvalid);
    REQUIRE(run_command(p, opt, out, err) == kInvalid);
    REQUIRE(err.str().find("/inputs/B/vertices/0") != std::string::npos);
    auto q = tmp.path / "broken.json";
    write_atomic(q, "{\"version\": 1,");
    REQUIRE(run_command(q, opt, out, err) == kInvalid);
  }
  SECTION("budget exhaustion exits 3") {
    auto tri = Json::parse(R"({"dim": 2, "vertices": [[0, 0], [2, 0], [1, 2]]})");
    auto p = write("budget.json", scenario("minimal-oracle", {{"X", tri}, {"Y", square_json()}, {"budget", 1}}));
    REQUIRE(run_command(p, opt, out, err) == kFailed);
    auto report = Json::parse(read_file(opt.out_dir / "r.json"));
    REQUIRE(report["status"] == "budget_exceeded");
  }
  SECTION("missing file exits 1") {
    REQUIRE(run_command(tmp.path / "absent.json", opt, out, err) == kIoError);
  }
  SECTION("CONVEXDIFF_SEED overrides the scenario seed") {
    auto p = write("lip.json", Json::parse(*bundled_scenario("lipschitz")));
    ::setenv("CONVEXDIFF_SEED", "424242", 1);
    int rc = run_command(p, opt, out, err);
    ::unsetenv("CONVEXDIFF_SEED");
    REQUIRE(rc == kOk);
    auto report = Json::parse(read_file(opt.out_dir / "lipschitz.report.json"));
    REQUIRE(report["seed"] == 424242);
    REQUIRE(report["seed_source"] == "environment");
    ::setenv("CONVEXDIFF_SEED", "x1", 1);
    rc = run_command(p, opt, out, err);
    ::unsetenv("CONVEXDIFF_SEED");
    REQUIRE(rc == kInvalid);
  }
  SECTION("demo") {
    REQUIRE(demo_command("lipschitz", opt, out, err) == kOk);
    REQUIRE(std::filesystem::exists(opt.out_dir / "lipschitz.report.json"));
    REQUIRE(demo_command("nope", opt, out, err) == kInvalid);
  }
}
