#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "moire/csv.hpp"
#include "moire/experiments.hpp"

using namespace moire;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("moire-test-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Pull "config=..." / "content=..." tokens out of a CSV provenance record.
std::string token_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  return text.substr(pos + key.size(), 16);
}

RunConfig tiny_dos_config(const std::string& out) {
  RunConfig cfg;
  cfg.experiment = "dos-convergence";
  cfg.model = "reduced-chain";
  cfg.ladder = {8.0, 12.0};
  cfg.reference_L = 16.0;
  cfg.nodes2 = 3;
  cfg.grid_points = 64;
  cfg.out_dir = out;
  return cfg;
}

}  // namespace

TEST_CASE("canonical dump is stable and placement-blind") {
  RunConfig a;
  const std::string dump = canonical_dump(a);
  CHECK(dump == canonical_dump(a));
  CHECK(config_hash(a) == config_hash(a));
  // runtime placement must not alter the result identity
  RunConfig b = a;
  b.threads = 8;
  b.out_dir = "/somewhere/else";
  CHECK(canonical_dump(b) == dump);
  CHECK(config_hash(b) == config_hash(a));
  CHECK(dump.find("threads") == std::string::npos);
  CHECK(dump.find("out_dir") == std::string::npos);
  // every physical knob must alter it
  RunConfig c = a;
  c.b = 0.31;
  CHECK(config_hash(c) != config_hash(a));
  RunConfig d = a;
  d.seed = 43;
  CHECK(config_hash(d) != config_hash(a));
  RunConfig e = a;
  e.kernel = "lorentzian";
  CHECK(config_hash(e) != config_hash(a));
  // keys are sorted, so the dump starts with the first field alphabetically
  CHECK(dump.rfind("A=", 0) == 0);
}

TEST_CASE("config validation names the offending field") {
  RunConfig cfg;
  cfg.theta = 1.5;
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config field 'theta'"),
                       std::invalid_argument);
  cfg = RunConfig{};
  cfg.kernel = "box";
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config field 'kernel'"),
                       std::invalid_argument);
  cfg = RunConfig{};
  cfg.model = "tetrahedron";
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config field 'model'"),
                       std::invalid_argument);
  cfg = RunConfig{};
  cfg.experiment = "nope";
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config field 'experiment'"),
                       std::invalid_argument);
  cfg = RunConfig{};
  cfg.ladder = {10.0, -1.0};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = RunConfig{};
  cfg.bandwidth = 0.0;
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config field 'bandwidth'"),
                       std::invalid_argument);
  cfg = RunConfig{};
  cfg.grid_points = 1;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  CHECK_NOTHROW(validate_config(RunConfig{}));
}

TEST_CASE("configured models carry their parameters") {
  RunConfig cfg;
  cfg.model = "almost-mathieu";
  cfg.lambda = 1.75;
  cfg.theta_phase = 0.4;
  auto m = make_model(cfg);
  REQUIRE(std::holds_alternative<AlmostMathieu>(m));
  CHECK(std::get<AlmostMathieu>(m).lambda == 1.75);
  CHECK(std::get<AlmostMathieu>(m).theta == 0.4);

  cfg.model = "anderson";
  cfg.disorder = "gaussian";
  cfg.disorder_a = 0.5;
  cfg.disorder_b = 2.0;
  cfg.seed = 99;
  m = make_model(cfg);
  REQUIRE(std::holds_alternative<Anderson>(m));
  CHECK(std::get<Anderson>(m).law.kind == DisorderLaw::Kind::Gaussian);
  CHECK(std::get<Anderson>(m).law.seed == 99);

  cfg.model = "coupled-chain";
  cfg.A = 0.5;
  cfg.Lz = 2.0;
  m = make_model(cfg);
  REQUIRE(std::holds_alternative<CoupledChain>(m));
  CHECK(std::get<CoupledChain>(m).hopping.amplitude == 0.5);
  CHECK(std::get<CoupledChain>(m).hopping.distance == 2.0);

  cfg.model = "reduced-chain";
  cfg.b = 0.12;
  m = make_model(cfg);
  REQUIRE(std::holds_alternative<ReducedChain>(m));
  CHECK(std::get<ReducedChain>(m).b == 0.12);
}

TEST_CASE("dos-convergence writes its full artifact set deterministically") {
  const auto dir = fresh_dir("dosconv");
  auto cfg = tiny_dos_config((dir / "a").string());
  const auto res = run_dos_convergence(cfg);
  CHECK((res.verdict == "pass" || res.verdict == "fail"));
  CHECK(res.summary.at("levels").size() == 2);
  CHECK(res.summary.at("model") == "reduced-chain");
  for (const char* name :
       {"spectra.csv", "dos.csv", "curve.csv", "limiting_dos.csv", "limiting.json",
        "summary.json"})
    CHECK(fs::exists(dir / "a" / name));

  // identical configuration in a different directory: byte-identical artifacts
  auto cfg2 = tiny_dos_config((dir / "b").string());
  cfg2.threads = 4;  // placement only; must not perturb a single byte
  run_dos_convergence(cfg2);
  for (const char* name :
       {"spectra.csv", "dos.csv", "curve.csv", "limiting_dos.csv", "limiting.json",
        "summary.json"})
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  fs::remove_all(dir);
}

TEST_CASE("csv provenance records are self-consistent") {
  const auto dir = fresh_dir("prov");
  auto cfg = tiny_dos_config((dir / "run").string());
  run_dos_convergence(cfg);
  const std::string bytes = slurp(dir / "run" / "spectra.csv");
  CHECK(bytes.rfind("#provenance,", 0) == 0);
  const auto eol = bytes.find("\r\n");
  REQUIRE(eol != std::string::npos);
  const std::string first = bytes.substr(0, eol);
  const std::string body = bytes.substr(eol + 2);
  CHECK(token_after(first, "config=") == hex16(config_hash(cfg)));
  CHECK(token_after(first, "content=") == hex16(fnv1a64(body)));
  // all artifacts of one run share the config stamp
  const std::string dos_first = slurp(dir / "run" / "dos.csv");
  CHECK(token_after(dos_first, "config=") == hex16(config_hash(cfg)));
  fs::remove_all(dir);
}

TEST_CASE("summary json embeds a verifiable content hash") {
  const auto dir = fresh_dir("json");
  auto cfg = tiny_dos_config((dir / "run").string());
  run_dos_convergence(cfg);
  const auto root = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  REQUIRE(root.contains("provenance"));
  REQUIRE(root.contains("report"));
  CHECK(root.at("provenance").at("config_hash") == hex16(config_hash(cfg)));
  const std::string body = root.at("report").dump(2);
  CHECK(root.at("provenance").at("content_hash") == hex16(fnv1a64(body)));
  CHECK(root.at("report").at("experiment") == "dos-convergence");
  fs::remove_all(dir);
}

TEST_CASE("butterfly emits one spectrum row per frequency and eigenvalue") {
  const auto dir = fresh_dir("butterfly");
  RunConfig cfg;
  cfg.experiment = "butterfly";
  cfg.model = "almost-mathieu";
  cfg.alpha_points = 5;
  cfg.phases = 3;
  cfg.butterfly_L = 3.0;  // 7 sites
  cfg.grid_points = 32;
  cfg.out_dir = (dir / "run").string();
  const auto res = run_butterfly(cfg);
  CHECK(res.summary.at("rows") == 5 * 7);
  const std::string bytes = slurp(dir / "run" / "spectra.csv");
  // provenance + header + one record per row, CRLF-terminated
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = bytes.find("\r\n", pos)) != std::string::npos; pos += 2)
    ++lines;
  CHECK(lines == 2 + 5 * 7);
  CHECK(fs::exists(dir / "run" / "dos.csv"));
  CHECK(fs::exists(dir / "run" / "curve.csv"));
  // wrong family is rejected by name
  cfg.model = "anderson";
  CHECK_THROWS_WITH_AS(run_butterfly(cfg), doctest::Contains("config field 'model'"),
                       std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("covariance audit passes at machine precision") {
  const auto dir = fresh_dir("audit");
  RunConfig cfg;
  cfg.experiment = "covariance-audit";
  cfg.audit_L = 12.0;
  cfg.shift_range = 2;
  cfg.out_dir = (dir / "run").string();
  const auto res = run_covariance_audit(cfg);
  CHECK(res.pass);
  CHECK(res.verdict == "pass");
  CHECK(res.summary.at("families").size() == 5);
  CHECK(res.summary.at("max_residual").get<double>() <= 1e-12);
  const std::string bytes = slurp(dir / "run" / "residuals.csv");
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = bytes.find("\r\n", pos)) != std::string::npos; pos += 2)
    ++lines;
  CHECK(lines == 2 + 5 * 5);  // 5 families x shifts in [-2,2]
  fs::remove_all(dir);
}

TEST_CASE("birkhoff rates stay under the exponential-sum bound") {
  const auto dir = fresh_dir("rates");
  RunConfig cfg;
  cfg.experiment = "birkhoff-rates";
  cfg.birkhoff_N = {10, 100};
  cfg.birkhoff_modes = 2;
  cfg.out_dir = (dir / "run").string();
  const auto res = run_birkhoff_rates(cfg);
  CHECK(res.pass);
  CHECK(res.summary.at("rows").size() == 4);
  CHECK(fs::exists(dir / "run" / "rates.csv"));
  fs::remove_all(dir);
}

TEST_CASE("trace defect shrinks relative to the window on a small ladder") {
  const auto dir = fresh_dir("defect");
  RunConfig cfg;
  cfg.experiment = "trace-defect";
  cfg.ladder = {10.0, 20.0, 40.0};
  cfg.out_dir = (dir / "run").string();
  const auto res = run_trace_defect(cfg);
  CHECK(res.pass);
  CHECK(res.verdict == "pass");
  CHECK(fs::exists(dir / "run" / "defect.csv"));
  fs::remove_all(dir);
}

TEST_CASE("disorder ensemble self-averages down the ladder") {
  const auto dir = fresh_dir("ensemble");
  RunConfig cfg;
  cfg.experiment = "disorder-ensemble";
  cfg.model = "anderson";
  cfg.ladder = {15.0, 30.0, 60.0};
  cfg.samples = 6;
  cfg.grid_points = 64;
  cfg.out_dir = (dir / "run").string();
  const auto res = run_disorder_ensemble(cfg);
  CHECK(res.pass);
  CHECK(res.verdict == "pass");
  REQUIRE(res.summary.at("levels").size() == 3);
  // medians reported per level really decrease
  double prev = 1e300;
  for (const auto& level : res.summary.at("levels")) {
    const double med = level.at("median_ks_to_mixture").get<double>();
    CHECK(med < prev);
    prev = med;
  }
  for (const char* name : {"spectra.csv", "dos.csv", "curve.csv", "summary.json"})
    CHECK(fs::exists(dir / "run" / name));
  // spectra rows: one per (level, sample, eigenvalue)
  const std::string bytes = slurp(dir / "run" / "spectra.csv");
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = bytes.find("\r\n", pos)) != std::string::npos; pos += 2)
    ++lines;
  CHECK(lines == 2 + 6 * (31 + 61 + 121));
  // threads must not change a byte
  auto cfg4 = cfg;
  cfg4.threads = 4;
  cfg4.out_dir = (dir / "run4").string();
  run_disorder_ensemble(cfg4);
  CHECK(slurp(dir / "run" / "spectra.csv") == slurp(dir / "run4" / "spectra.csv"));
  CHECK(slurp(dir / "run" / "summary.json") == slurp(dir / "run4" / "summary.json"));
  // wrong family is rejected by name
  cfg.model = "almost-mathieu";
  CHECK_THROWS_WITH_AS(run_disorder_ensemble(cfg), doctest::Contains("config field 'model'"),
                       std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("experiment dispatch routes by name and rejects strangers") {
  const auto dir = fresh_dir("dispatch");
  auto cfg = tiny_dos_config((dir / "run").string());
  const auto direct = run_dos_convergence(cfg);
  auto cfg2 = tiny_dos_config((dir / "run2").string());
  const auto routed = run_experiment(cfg2);
  CHECK(routed.verdict == direct.verdict);
  cfg.experiment = "nope";
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  fs::remove_all(dir);
}
