#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace gips;
using namespace gips::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

// Scratch directory removed when the test case ends.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("gips_cli_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file(path(name), text);
    return path(name);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

Result gips_cli(const Scratch& s, const std::string& args) {
  std::string out = s.path("stdout.txt");
  std::string err = s.path("stderr.txt");
  std::string cmd = std::string(GIPS_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
  int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string copy_fixture(const Scratch& s, const std::string& name) {
  return s.write(name, read_file(data_path(name)));
}

}  // namespace

TEST_CASE("check accepts the shipped fixtures") {
  Scratch s;
  Result r = gips_cli(s, "check --model " + data_path("mdvne_schema.json") + " --spec " +
                             data_path("mdvne.gipsl"));
  CHECK(r.code == 0);
  CHECK(r.out.find("4 rules") != std::string::npos);
  CHECK(gips_cli(s, "check --model " + data_path("twolink_model.json") + " --spec " +
                        data_path("twolink.gipsl"))
            .code == 0);
}

TEST_CASE("check reports unknown attributes") {
  Scratch s;
  std::string spec = read_file(data_path("twolink.gipsl"));
  spec.replace(spec.find("self.resBw"), 10, "self.capacity");
  std::string path = s.write("bad.gipsl", spec);
  Result r = gips_cli(s, "check --model " + data_path("twolink_model.json") + " --spec " + path);
  CHECK(r.code == 1);
  CHECK(r.err.find("capacity") != std::string::npos);
  CHECK(r.err.find("bad.gipsl:") != std::string::npos);
}

TEST_CASE("check rejects an empty specification") {
  Scratch s;
  std::string path = s.write("empty.gipsl", "");
  Result r = gips_cli(s, "check --model " + data_path("twolink_model.json") + " --spec " + path);
  CHECK(r.code == 1);
  CHECK(r.err.find("missing global objective") != std::string::npos);
}

TEST_CASE("usage errors") {
  Scratch s;
  CHECK(gips_cli(s, "").code == 1);
  CHECK(gips_cli(s, "solve --model /nonexistent --spec /nonexistent").code == 1);
  CHECK(gips_cli(s, "frobnicate").code == 1);
  CHECK(gips_cli(s, "--help").code == 0);
}

TEST_CASE("solve leaves the model untouched and writes a report") {
  Scratch s;
  std::string model = copy_fixture(s, "twolink_model.json");
  std::string before = read_file(model);
  Result r = gips_cli(s, "solve --model " + model + " --spec " + data_path("twolink.gipsl") +
                             " --report " + s.path("report.json"));
  CHECK(r.code == 0);
  CHECK(read_file(model) == before);
  auto report = nlohmann::json::parse(read_file(s.path("report.json")));
  CHECK(report["version"] == 1);
  CHECK(report["status"] == "optimal");
  CHECK(report["variables"] == 2);
  CHECK(report["rows"] == 3);
  REQUIRE(report["selected"].size() == 1);
  CHECK(report["selected"][0]["mapping"] == "l2l");
}

TEST_CASE("apply adds exactly one host edge for v11") {
  Scratch s;
  std::string model = copy_fixture(s, "twolink_model.json");
  Graph before = load_graph(read_file(model), mdvne_metamodel());
  Result r = gips_cli(s, "apply --model " + model + " --spec " + data_path("twolink.gipsl"));
  REQUIRE(r.code == 0);
  Graph after = load_graph(read_file(model), mdvne_metamodel());
  CHECK(after.edges().size() == before.edges().size() + 1);
  CHECK(after.targets("v11", "host").size() == 1);
  CHECK(std::get<bool>(after.attr("v11", "embedded")));

  SUBCASE("a second run finds nothing to do") {
    std::string applied = read_file(model);
    Result again = gips_cli(s, "apply --model " + model + " --spec " + data_path("twolink.gipsl"));
    CHECK(again.code == 0);
    CHECK(again.out.find("0 selected") != std::string::npos);
    CHECK(read_file(model) == applied);
  }
}

TEST_CASE("apply writes to a separate output") {
  Scratch s;
  std::string model = copy_fixture(s, "twolink_model.json");
  std::string before = read_file(model);
  Result r = gips_cli(s, "apply --model " + model + " --spec " + data_path("mdvne.gipsl") +
                             " --out " + s.path("after.json"));
  REQUIRE(r.code == 0);
  CHECK(read_file(model) == before);
  Graph after = load_graph(read_file(s.path("after.json")), mdvne_metamodel());
  for (const char* v : {"v1", "v2", "v11"}) CHECK(after.targets(v, "host").size() == 1);
}

TEST_CASE("export-lp stops after generation") {
  Scratch s;
  std::string model = copy_fixture(s, "twolink_model.json");
  std::string before = read_file(model);
  Result r = gips_cli(s, "apply --model " + model + " --spec " + data_path("twolink.gipsl") +
                             " --export-lp " + s.path("twolink.lp"));
  CHECK(r.code == 0);
  CHECK(read_file(model) == before);
  IlpProblem p = import_lp(read_file(s.path("twolink.lp")));
  CHECK(p.variables.size() == 2);
  CHECK(p.rows.size() == 3);

  Result e = gips_cli(s, "export-lp --model " + model + " --spec " + data_path("twolink.gipsl"));
  CHECK(e.code == 0);
  CHECK(e.out == read_file(s.path("twolink.lp")));
}

TEST_CASE("infeasible and timeout exit codes") {
  Scratch s;
  std::string model = copy_fixture(s, "twolink_model.json");
  std::string before = read_file(model);
  std::string spec = read_file(data_path("twolink.gipsl"));
  spec.replace(spec.find("== 1"), 4, "== 3");
  std::string infeasible = s.write("infeasible.gipsl", spec);
  Result r = gips_cli(s, "apply --model " + model + " --spec " + infeasible);
  CHECK(r.code == 2);
  CHECK(read_file(model) == before);

  Result t = gips_cli(s, "apply --model " + model + " --spec " + data_path("mdvne.gipsl") +
                             " --time-limit 1e-9");
  CHECK(t.code == 3);
  CHECK(read_file(model) == before);
}

TEST_CASE("vne runs") {
  Scratch s;
  SUBCASE("desk configuration") {
    Result r = gips_cli(s, "vne --config " + data_path("desk.cfg") + " --report " +
                               s.path("vne.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("0 violations") != std::string::npos);
    auto report = nlohmann::json::parse(read_file(s.path("vne.json")));
    CHECK(report["vnrs"].size() == 10);
  }
  SUBCASE("no requests") {
    std::string cfg = s.write("none.cfg", "vnr_count = 0\n");
    Result r = gips_cli(s, "vne --config " + cfg + " --report " + s.path("vne.json"));
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(read_file(s.path("vne.json")));
    CHECK(report["vnrs"].empty());
  }
  SUBCASE("tiny substrate rejects requests") {
    std::string cfg = s.write("tiny.cfg",
                              "racks = 1\nservers_per_rack = 1\ncore_switches = 1\n"
                              "vnr_count = 4\nvnr_servers = 2..3\nvnr_cpu = 10..16\n");
    Result r = gips_cli(s, "vne --config " + cfg + " --report " + s.path("vne.json") +
                               " --out " + s.path("substrate.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("0 violations") != std::string::npos);
    auto report = nlohmann::json::parse(read_file(s.path("vne.json")));
    CHECK(report["vnrs"].size() == 4);
    CHECK(report["rejected"].get<int>() > 0);
    Graph substrate = load_graph(read_file(s.path("substrate.json")), mdvne_metamodel());
    CHECK(std::get<std::int64_t>(substrate.attr("srv0_0", "resCpu")) >= 0);
  }
  SUBCASE("bad configuration") {
    std::string cfg = s.write("bad.cfg", "racks = 0\n");
    CHECK(gips_cli(s, "vne --config " + cfg).code == 1);
  }
}
