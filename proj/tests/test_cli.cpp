// End-to-end tests of the padicdyn binary: spawned via the shell, stdout /
// stderr captured to files in the test working directory. The binary path
// comes in through the PADICDYN_CLI_PATH compile definition.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += "\"" PADICDYN_CLI_PATH "\" " + args + " > cli_out.txt 2> cli_err.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(status != -1);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp("cli_out.txt");
  r.err = slurp("cli_err.txt");
  return r;
}

}  // namespace

TEST_CASE("decompose: p = 2 special report") {
  const RunResult r = run_cli("decompose -p 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("p = 2: P = {0, 1}, M = {}, B = Z_2 \\ {0, 1}") !=
        std::string::npos);
}

TEST_CASE("decompose: json output is deterministic and frozen") {
  const char* golden = R"json({
  "p": 3,
  "N": 2,
  "depth": 1,
  "periodic": [
    {
      "d": 1,
      "length": 1,
      "centers": [
        "1"
      ]
    }
  ],
  "minimal": [
    {
      "orbit": 0,
      "sphere": 1,
      "count_total": 1,
      "j": 2,
      "radius_exp": 2,
      "disks": [
        "4",
        "7"
      ],
      "odometer": [
        "1",
        "2",
        "6",
        "18",
        "54",
        "162"
      ],
      "sampled": false
    }
  ],
  "basin": {
    "zero_disk": true,
    "tree_residues": [
      "2"
    ]
  }
}
)json";
  const RunResult a =
      run_cli("decompose -p 3 --depth 1 --precision 2 --format json");
  CHECK(a.exit_code == 0);
  CHECK(a.out == golden);
  const RunResult b =
      run_cli("decompose -p 3 --depth 1 --precision 2 --format json");
  CHECK(b.out == a.out);
}

TEST_CASE("decompose: non-prime modulus exits 2") {
  CHECK(run_cli("decompose -p 9").exit_code == 2);
  CHECK(run_cli("decompose -p 1").exit_code == 2);
  const RunResult r = run_cli("decompose -p 9");
  CHECK(r.err.find("not prime") != std::string::npos);
}

TEST_CASE("graph: DOT output") {
  const RunResult r = run_cli("graph -p 3 -n 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "digraph G {\n"
        "  \"0\" -> \"0\";\n"
        "  \"1\" -> \"1\";\n"
        "  \"2\" -> \"1\";\n"
        "}\n");

  const RunResult u = run_cli("graph -p 11 -n 1 --units-only");
  CHECK(u.exit_code == 0);
  CHECK(u.out.find("\"0\"") == std::string::npos);
  int lines = 0;
  for (char c : u.out)
    if (c == '\n') ++lines;
  CHECK(lines == 12);  // brace, 10 edges, brace
}

TEST_CASE("graph: node bound from the environment exits 3") {
  const RunResult r = run_cli("graph -p 3 -n 9", "PADICDYN_MAX_NODES=100");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("classify: --all at level 1") {
  const RunResult r = run_cli("classify -p 3 -n 1 --all");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "rep=0 len=1 a=0 b=- class=GrowsTails\n"
        "rep=1 len=1 a=2 b=- class=PartiallySplits(2)\n");
}

TEST_CASE("classify: single cycles") {
  const RunResult r = run_cli("classify -p 3 -n 2 --cycle 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "rep=4 len=2 a=1 b=1 class=Grows\n");

  const RunResult q = run_cli("classify -p 7 -n 1 --cycle 2");
  CHECK(q.exit_code == 0);
  CHECK(q.out == "rep=2 len=2 a=4 b=- class=PartiallySplits(3)\n");

  const RunResult bad = run_cli("classify -p 3 -n 1 --cycle 2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("not periodic") != std::string::npos);

  CHECK(run_cli("classify -p 3 -n 1").exit_code == 1);
}

TEST_CASE("verify: passes for p = 3 and honors the soft deadline") {
  const RunResult r = run_cli("verify -p 3 --max-level 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  const RunResult t =
      run_cli("verify -p 3 --max-level 3", "PADICDYN_MAX_SECONDS=0.000000001");
  CHECK(t.exit_code == 3);
  CHECK(t.err.find("deadline") != std::string::npos);
}

TEST_CASE("wieferich scan") {
  const RunResult r = run_cli("wieferich --limit 4000");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1093 2\n3511 2\n");

  const RunResult none = run_cli("wieferich --limit 1000");
  CHECK(none.exit_code == 0);
  CHECK(none.out.empty());
}

TEST_CASE("locate") {
  const RunResult a = run_cli("locate -p 3 -x 4 --precision 4");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("sphere 1") != std::string::npos);
  CHECK(a.out.find("component id 4") != std::string::npos);

  const RunResult z = run_cli("locate -p 7 -x 0");
  CHECK(z.exit_code == 0);
  CHECK(z.out == "fixed point 0\n");

  const RunResult t = run_cli("locate -p 7 -x 3 --precision 2");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("tree basin") != std::string::npos);
  CHECK(t.out.find("(rep 2, length 2)") != std::string::npos);
}
