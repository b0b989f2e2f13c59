#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

using namespace orwell;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string fixture(const std::string& name) { return std::string(ORWELL_MODELS_DIR) + "/" + name; }

Run cli(const std::string& args) {
  const std::string command = std::string(ORWELL_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  while (auto n = std::fread(buffer, 1, sizeof buffer, pipe)) out.append(buffer, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string line_starting(const std::string& out, const std::string& prefix) {
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) return line;
  return "<none>";
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "orwell_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("orwellian check on the two-level fixture") {
  const auto r = cli("check orwellian --system " + fixture("g2.lts") + " --secret-re 'h l + h d h l l*'");
  CHECK(r.code == 1);
  CHECK(line_starting(r.out, "witness:") == "witness: h l");
  CHECK(line_starting(r.out, "entry 1:") == "entry 1: violated h l");
  CHECK(line_starting(r.out, "entry 4:") == "entry 4: violated h d h l l");
}

TEST_CASE("json-lines report") {
  const auto r = cli("check orwellian --system " + fixture("g2.lts") +
                     " --secret-re 'h l + h d h l l*' --report json-lines");
  CHECK(r.code == 1);
  std::istringstream in(r.out);
  std::vector<nlohmann::json> records;
  for (std::string line; std::getline(in, line);) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 3);
  CHECK(records[0]["state"] == "1");
  CHECK(records[0]["holds"] == false);
  CHECK(records[0]["witness"] == nlohmann::json::array({"h", "l"}));
  CHECK(records[1]["state"] == "4");
  CHECK(records[2]["summary"] == true);
  CHECK(records[2]["witness"] == nlohmann::json::array({"h", "l"}));

  const auto ok = cli("check ini --system " + fixture("hdl.lts") + " --report json-lines");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"witness\":null") != std::string::npos);
}

TEST_CASE("interference checks on the separation fixture") {
  const auto ini = cli("check ini --system " + fixture("hdl.lts"));
  CHECK(ini.code == 0);
  CHECK(line_starting(ini.out, "witness:") == "witness: ");
  for (const auto* method : {"direct", "decomposed", "both"})
    CHECK(cli("check ini --method " + std::string(method) + " --system " + fixture("hdl.lts")).code == 0);
  const auto ni = cli("check ni --system " + fixture("hdl.lts"));
  CHECK(ni.code == 1);
  CHECK(line_starting(ni.out, "witness:") == "witness: l");
}

TEST_CASE("static check of the empty-word secret holds") {
  const auto r = cli("check static --system " + fixture("g2.lts") + " --secret-re '()'");
  CHECK(r.code == 0);
  CHECK(line_starting(r.out, "witness:") == "witness: ");
}

TEST_CASE("secret from a file") {
  const auto path = scratch() / "secret.lts";
  std::ofstream(path) << render_model(compile_regex("a* (b* + c*)", load_model(fixture("static_observer.lts")).alphabet()));
  const auto r = cli("check static --system " + fixture("static_observer.lts") + " --secret " + path.string());
  CHECK(r.code == 1);
  CHECK(line_starting(r.out, "observation:") == "observation: a b b");
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(cli("").code == 2);
  CHECK(cli("check").code == 2);
  CHECK(cli("check sideways --system " + fixture("g2.lts")).code == 2);
  CHECK(cli("check static --system /nonexistent.lts").code == 2);
  CHECK(cli("check static --system " + fixture("hdl.lts")).code == 2);  // no secret
  CHECK(cli("check static --system " + fixture("g2.lts") + " --secret-re 'h +'").code == 2);
  CHECK(cli("check ni --system " + fixture("g2.lts") + " --secret-re 'h'").code == 2);
  CHECK(cli("oracle --system " + fixture("g2.lts") + " --obs sideways --max-len 3").code == 2);
  const auto bad = scratch() / "bad.lts";
  std::ofstream(bad) << "alphabet obs l\nstates 1 2\ninit 1\ntrans 1 l 2\ntrans 1 l 1\n";
  const auto r = cli("check ni --system " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("line 5") != std::string::npos);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("reductions write models with the same verdicts") {
  const auto dir = scratch();
  const auto g2 = load_model(fixture("g2.lts"));
  const auto ni_path = (dir / "g2_ni.lts").string();
  CHECK(cli("reduce to-ni --system " + fixture("g2.lts") + " -o " + ni_path).code == 0);
  CHECK(cli("check ni --system " + ni_path).code == (check_opacity_static(g2).holds ? 0 : 1));

  const auto ini_path = (dir / "g2_ini.lts").string();
  CHECK(cli("reduce to-ini --system " + fixture("g2.lts") + " -o " + ini_path).code == 0);
  CHECK(cli("check ini --system " + ini_path).code == 1);
  const auto erased = (dir / "g2_erased.lts").string();
  CHECK(cli("reduce to-ini --hidden-prefix erase --system " + fixture("g2.lts") + " -o " + erased).code == 0);
  CHECK(load_model(erased).alphabet().contains("h_1"));

  const auto op_path = (dir / "hdl_op.lts").string();
  CHECK(cli("reduce from-ini --system " + fixture("hdl.lts") + " -o " + op_path).code == 0);
  CHECK(cli("check orwellian --system " + op_path).code == 0);
  CHECK(cli("reduce from-ini --system " + fixture("hdl.lts") + " -o " + op_path + " --secret-re h").code == 2);
}

TEST_CASE("oracle subcommand") {
  const auto r = cli("oracle --system " + fixture("g2.lts") + " --obs orwellian --max-len 15");
  CHECK(r.code == 1);
  CHECK(line_starting(r.out, "witness:") == "witness: h l");
  const auto n = cli("oracle --system " + fixture("static_observer.lts") +
                     " --secret-re 'a* (b* + c*)' --obs natural --max-len 20");
  CHECK(n.code == 1);
  CHECK(line_starting(n.out, "observation:") == "observation: a b b");
}

TEST_CASE("cli verdicts equal library verdicts on every fixture") {
  for (const auto* name : {"g2.lts", "hdl.lts", "static_observer.lts"}) {
    const Lts m = load_model(fixture(name));
    CHECK(cli("check ni --system " + fixture(name)).code == (check_ni(m).holds ? 0 : 1));
    CHECK(cli("check ini --system " + fixture(name)).code == (check_ini(m).holds ? 0 : 1));
    const Lts secret = compile_regex("()", m.alphabet());
    CHECK(cli("check static --system " + fixture(name) + " --secret-re '()'").code ==
          (check_opacity_static(m, secret).holds ? 0 : 1));
    CHECK(cli("check orwellian --system " + fixture(name) + " --secret-re '()'").code ==
          (check_opacity_orwellian(m, secret).holds ? 0 : 1));
  }
}
