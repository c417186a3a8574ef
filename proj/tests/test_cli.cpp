#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gkt/generate.hpp"
#include "gkt/json_io.hpp"

using namespace gkt;
using nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("GKT_BIN");
  REQUIRE(b != nullptr);
  return b;
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + bin() + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/gkt_cli_") + std::to_string(getpid()) + "_" + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_problem(const std::string& name, const ProblemFile& f) {
  std::string path = tmp_path(name);
  write_text(path, problem_to_json(f).dump(2) + "\n");
  return path;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("solve reports YES/NO through exit codes and stdout") {
  GroupPtr f1 = GroupSpec::free_group(1);
  SSPInstance yes{f1, {parse_word("x0"), parse_word("x0")},
                  parse_word("x0 x0")};
  std::string in = write_problem("ssp_yes.json", {"ssp", yes});

  RunResult r = run("solve ssp --in " + in + " 2>/dev/null");
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == "YES");

  SSPInstance no{f1, {parse_word("x0")}, parse_word("x0 x0")};
  std::string in_no = write_problem("ssp_no.json", {"ssp", no});
  RunResult rn = run("solve ssp --in " + in_no + " 2>/dev/null");
  CHECK(rn.status == 1);
  CHECK(first_line(rn.out) == "NO");

  // stats land on stderr as one JSON line; stdout stays bare
  std::string errs = tmp_path("stderr.txt");
  RunResult rs = run("solve ssp --in " + in + " 2>" + errs);
  CHECK(rs.out == "YES\n");
  json stats = json::parse(read_text(errs));
  CHECK(stats.contains("seconds"));
}

TEST_CASE("certificates round-trip through solve and verify") {
  GroupPtr f1 = GroupSpec::free_group(1);
  SSPInstance yes{f1, {parse_word("x0"), parse_word("x0^-1")}, {}};
  std::string in = write_problem("ssp_cert.json", {"ssp", yes});

  RunResult r = run("solve ssp --cert --in " + in + " 2>/dev/null");
  REQUIRE(r.status == 0);
  size_t nl = r.out.find('\n');
  REQUIRE(nl != std::string::npos);
  std::string cert_text = r.out.substr(nl + 1);
  REQUIRE_FALSE(cert_text.empty());
  std::string cert = tmp_path("ssp.cert");
  write_text(cert, cert_text);
  CHECK(run("verify --in " + in + " --cert " + cert + " 2>/dev/null").status ==
        0);

  // wrong answer: valid shape, fails the defining equation
  write_text(cert, json{{"type", "subset"}, {"bits", {1, 0}}}.dump() + "\n");
  CHECK(run("verify --in " + in + " --cert " + cert + " 2>/dev/null").status ==
        1);
  // malformed: dimension mismatch is an error, not a NO
  write_text(cert, json{{"type", "subset"}, {"bits", {1}}}.dump() + "\n");
  CHECK(run("verify --in " + in + " --cert " + cert + " 2>/dev/null").status ==
        2);
}

TEST_CASE("error handling and resource limits") {
  std::string bad = tmp_path("bad.json");
  write_text(bad, "{ not json");
  CHECK(run("solve ssp --in " + bad + " 2>/dev/null").status == 2);
  CHECK(run("solve ssp --in /nonexistent.json 2>/dev/null").status == 2);

  // declared problem must match the requested one
  GroupPtr f1 = GroupSpec::free_group(1);
  std::string in =
      write_problem("mismatch.json", {"ssp", SSPInstance{f1, {}, {}}});
  CHECK(run("solve kp --in " + in + " 2>/dev/null").status == 2);

  // tight budget turns the oracle's search into exit code 3
  Word long_target;
  for (int i = 0; i < 41; ++i) long_target.push_back({0, 1});
  SSPInstance big{f1, std::vector<Word>(40, parse_word("x0")), long_target};
  std::string in_big = write_problem("ssp_big.json", {"ssp", big});
  CHECK(run("oracle ssp --in " + in_big + " 2>/dev/null",
            "GKT_RESOURCE_LIMIT=100").status == 3);

  SSPInstance small{f1, std::vector<Word>(5, parse_word("x0")),
                    parse_word("x0 x0 x0 x0 x0")};
  std::string in_small = write_problem("ssp_small.json", {"ssp", small});
  CHECK(run("oracle ssp --in " + in_small + " 2>/dev/null").status == 0);
}

TEST_CASE("generation is deterministic and planted instances verify") {
  std::string a = tmp_path("gen_a.json");
  std::string b = tmp_path("gen_b.json");
  std::string base = "gen agp amalgam_z4z6 --seed 7 --planted --out ";
  CHECK(run(base + a + " 2>/dev/null").status == 0);
  CHECK(run(base + b + " 2>/dev/null").status == 0);
  CHECK(read_text(a) == read_text(b));
  CHECK(read_text(a + ".cert") == read_text(b + ".cert"));

  for (const char* spec : {"free2", "zstarzmod2", "amalgam_z4z6"}) {
    for (const char* problem : {"ssp", "bkp", "bsmp", "agp", "rational"}) {
      std::string path = tmp_path(std::string("gen_") + problem + "_" + spec);
      std::string cmd = std::string("gen ") + problem + " " + spec +
                        " --seed 11 --planted --out " + path;
      REQUIRE(run(cmd + " 2>/dev/null").status == 0);
      RunResult solve =
          run(std::string("solve ") + problem + " --in " + path +
              " 2>/dev/null");
      CHECK(solve.status == 0);
      CHECK(run("verify --in " + path + " --cert " + path +
                ".cert 2>/dev/null").status == 0);
    }
  }

  // unbounded-exponent instances only make sense over free products
  std::string kp = tmp_path("gen_kp");
  REQUIRE(run("gen kp zstarzmod2 --seed 3 --k 2 --len 2 --planted --out " +
              kp + " 2>/dev/null").status == 0);
  CHECK(run("solve kp --in " + kp + " 2>/dev/null").status == 0);
  CHECK(run("verify --in " + kp + " --cert " + kp + ".cert 2>/dev/null")
            .status == 0);
}

TEST_CASE("reductions preserve answers end to end") {
  GroupPtr f2 = GroupSpec::free_group(2);
  SSPInstance ssp{f2, {parse_word("x0"), parse_word("x1")},
                  parse_word("x0 x1")};
  std::string in = write_problem("red_in.json", {"ssp", ssp});
  std::string out = tmp_path("red_out.json");
  CHECK(run("reduce ssp-to-agp --in " + in + " --out " + out +
            " 2>/dev/null").status == 0);
  CHECK(run("solve agp --in " + out + " 2>/dev/null").status == 0);
  CHECK(run("oracle agp --in " + out + " 2>/dev/null").status == 0);

  BSMPInstance bsmp{f2, {parse_word("x0")}, parse_word("x1"), 2};
  std::string in_b = write_problem("red_b.json", {"bsmp", bsmp});
  std::string out_b = tmp_path("red_b_out.json");
  CHECK(run("reduce bsmp-to-ssp-z --in " + in_b + " --out " + out_b +
            " 2>/dev/null").status == 0);
  json members = json::parse(read_text(out_b));
  REQUIRE(members.is_array());
  REQUIRE(members.size() == 3);
  bool any = false;
  for (size_t m = 0; m < members.size(); ++m) {
    std::string mp = tmp_path("red_b_m" + std::to_string(m));
    write_text(mp, members[m].dump() + "\n");
    any = any || run("solve ssp --in " + mp + " 2>/dev/null").status == 0;
  }
  CHECK_FALSE(any);  // x1 is not a product of copies of x0

  CHECK(run("reduce nope --in " + in + " --out " + out + " 2>/dev/null")
            .status == 2);
}
