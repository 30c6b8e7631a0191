// End-to-end checks of the command-line surface. The binary path arrives in
// HETDP_CLI; commands run through the shell with captured stdout/stderr.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* env = std::getenv("HETDP_CLI");
  REQUIRE_MESSAGE(env != nullptr, "HETDP_CLI must point at the binary");
  return env;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string err_path = "cli_stderr.tmp";
  const std::string cmd =
      cli_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

std::string write_file(const std::string& name, const std::string& body) {
  std::ofstream out(name);
  out << body;
  return name;
}

std::string two_tier_profile() {
  std::ostringstream ss;
  for (int i = 0; i < 1000; ++i) ss << "0.1\n";
  ss << "0.5\n0.7\n1.0\n5.0\n+inf\n";
  return write_file("cli_profile_two_tier.csv", ss.str());
}

// field (0-based) of the first CSV row starting with `prefix`
double csv_field(const std::string& text, const std::string& prefix,
                 int field) {
  const auto pos = text.find("\n" + prefix);
  REQUIRE_MESSAGE(pos != std::string::npos, "row not found: " << prefix);
  const auto end = text.find('\n', pos + 1);
  std::string line = text.substr(pos + 1, end - pos - 1);
  std::istringstream ss(line);
  std::string cell;
  for (int i = 0; i <= field; ++i) std::getline(ss, cell, ',');
  return std::stod(cell);
}

}  // namespace

TEST_CASE("weights: the two-tier profile grants 0.18 past the strict group") {
  const auto profile = two_tier_profile();
  const auto res = run_cli("weights --eps " + profile + " --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("# manifest:") == 0);
  CHECK(res.out.find("user,eps,granted,weight") != std::string::npos);
  // every relaxed user's granted column shows the saturation constant
  CHECK(csv_field(res.out, "1000,", 2) == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(csv_field(res.out, "1004,", 2) == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(csv_field(res.out, "0,", 2) == 0.1);
  std::remove(profile.c_str());
}

TEST_CASE("weights: singleton fallback is flagged in JSON") {
  const auto profile = write_file("cli_single.csv", "2.0\n");
  const auto res = run_cli("weights --eps " + profile);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"trivial_fallback\": true") != std::string::npos);
  CHECK(res.out.find("\"f\": 0.75") != std::string::npos);
  std::remove(profile.c_str());
}

TEST_CASE("weights: malformed CSV names the offending line") {
  const auto profile = write_file("cli_bad.csv", "0.1\n0.2\nwat\n");
  const auto res = run_cli("weights --eps " + profile);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("line 3") != std::string::npos);
  std::remove(profile.c_str());
}

TEST_CASE("bounds: closed-form profile and empty file") {
  std::ostringstream ss;
  for (int i = 0; i < 1000; ++i) ss << "0.1\n";
  const auto profile = write_file("cli_bounds.csv", ss.str());
  const auto res = run_cli("bounds --eps " + profile);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"ratio\": 0.438") != std::string::npos);
  CHECK(res.out.find("\"p\": 50") != std::string::npos);
  std::remove(profile.c_str());

  const auto empty = write_file("cli_empty.csv", "");
  const auto bad = run_cli("bounds --eps " + empty);
  CHECK(bad.exit_code == 2);
  std::remove(empty.c_str());
}

TEST_CASE("estimate: replayable, and method preconditions map to exit 2") {
  const auto profile = write_file("cli_est_eps.csv", "0.5\n1.0\n+inf\n");
  const auto data = write_file("cli_est_data.csv", "0.1\n-0.2\n0.3\n");

  const auto a = run_cli("estimate --method adpm --eps " + profile +
                         " --data " + data + " --seed 42");
  const auto b = run_cli("estimate --method adpm --eps " + profile +
                         " --data " + data + " --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto sm = run_cli("estimate --method sm --eps " + profile + " --data " +
                          data + " --seed 1");
  CHECK(sm.exit_code == 2);
  CHECK(sm.err.find("sm") != std::string::npos);

  const auto mismatch = write_file("cli_est_short.csv", "0.1\n");
  const auto bad = run_cli("estimate --method adpm --eps " + profile +
                           " --data " + mismatch);
  CHECK(bad.exit_code == 2);

  std::remove(profile.c_str());
  std::remove(data.c_str());
  std::remove(mismatch.c_str());
}

TEST_CASE("estimate: uni on a single user") {
  const auto profile = write_file("cli_uni_eps.csv", "1.0\n");
  const auto data = write_file("cli_uni_data.csv", "0.25\n");
  const auto res = run_cli("estimate --method uni --eps " + profile +
                           " --data " + data + " --seed 7");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"method\": \"uni\"") != std::string::npos);
  CHECK(res.out.find("\"eta_used\": [\n    1.0\n  ]") != std::string::npos);
  std::remove(profile.c_str());
  std::remove(data.c_str());
}

TEST_CASE("simulate: identical CSV for 1 and 8 threads") {
  const std::string base =
      "simulate --regime low --n 100 --trials 300 --seed 11 --format csv";
  const auto one = run_cli(base + " --threads 1");
  const auto eight = run_cli(base + " --threads 8");
  CHECK(one.exit_code == 0);
  CHECK(eight.exit_code == 0);
  CHECK(one.out == eight.out);
  CHECK(one.out.find("method,mse,ln_mse,mc_stderr") != std::string::npos);
  // threads must not leak into the manifest
  CHECK(one.out.find("threads") == std::string::npos);
}

TEST_CASE("simulate: usage errors exit with 1") {
  const auto res = run_cli("simulate --regime low --n 0 --trials 10");
  CHECK(res.exit_code == 1);
  const auto unknown = run_cli("simulate --no-such-flag");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("scatter: bound holds, zero sequences yields a bare header") {
  const auto res = run_cli("scatter --sequences 50 --seed 3");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("ln_f,ln_h") != std::string::npos);
  CHECK(res.out.find("# max_ratio=") != std::string::npos);

  const auto empty = run_cli("scatter --sequences 0 --seed 3");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.find("ln_f,ln_h") != std::string::npos);
  CHECK(empty.out.find("# max_ratio=") == std::string::npos);
}

TEST_CASE("gen-eps: regime interval, replay, and --n validation") {
  const std::string out1 = "cli_gen1.csv";
  const std::string out2 = "cli_gen2.csv";
  const auto a =
      run_cli("gen-eps --regime low --n 200 --seed 5 --out " + out1);
  const auto b =
      run_cli("gen-eps --regime low --n 200 --seed 5 --out " + out2);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));

  // values parse back and live inside [e^-3, e^-2]
  std::ifstream in(out1);
  std::string line;
  std::getline(in, line);  // manifest comment
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const double v = std::stod(line);
    CHECK(v >= 0.0497);
    CHECK(v <= 0.1354);
    ++count;
  }
  CHECK(count == 200);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  const auto bad = run_cli("gen-eps --regime low --n 0 --out nowhere.csv");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("trace: header and flat tail") {
  const auto profile = two_tier_profile();
  const auto res = run_cli("trace --eps " + profile);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("index,eps,r") != std::string::npos);
  CHECK(csv_field(res.out, "1005,", 2) == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(csv_field(res.out, "500,", 2) == 0.1);
  std::remove(profile.c_str());
}

TEST_CASE("reruns are byte-identical") {
  const auto profile = write_file("cli_rerun.csv", "0.2\n0.4\n0.9\n");
  const auto a = run_cli("bounds --eps " + profile);
  const auto b = run_cli("bounds --eps " + profile);
  CHECK(a.out == b.out);
  const auto w1 = run_cli("weights --eps " + profile + " --format csv");
  const auto w2 = run_cli("weights --eps " + profile + " --format csv");
  CHECK(w1.out == w2.out);
  std::remove(profile.c_str());
}
