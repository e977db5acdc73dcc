#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("terms finds a majority system and exits 0") {
  RunResult r = run("terms --gen lattice-chain:2 --flavor jonsson --n 2");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["system"]["n"] == 2);
  CHECK(j["system"]["terms"].size() == 1);
}

TEST_CASE("terms reports not-found with exit 3") {
  RunResult r = run("terms --gen z2 --flavor jonsson --n 4");
  CHECK(r.exit_code == 3);
  CHECK(parse(r.out)["system"].is_null());
}

TEST_CASE("missing input is a usage error") {
  CHECK(run("terms").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("terms --gen no-such-gen:9").exit_code == 2);
}

TEST_CASE("a tiny closure cap gives the inconclusive exit") {
  RunResult r = run("terms --gen z2 --flavor jonsson --n 2", "JLAB_CAP=1");
  CHECK(r.exit_code == 4);
}

TEST_CASE("level scan") {
  RunResult r = run("terms --gen dualdisc3 --level --n-max 4");
  CHECK(r.exit_code == 0);
  CHECK(parse(r.out)["level"] == 2);
}

TEST_CASE("core chain over the product lattice validates with exit 0") {
  RunResult r = run(
      "chain --construction core --gen lattice-prod:2x2 --alpha top --beta proj1 "
      "--gamma proj2 --elements 0,1,3,3,1");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["chain"]["ok"] == true);
  CHECK(j["chain"]["factor_count"] <= 8);
  CHECK(j["chain"]["structural_factors"] == 8);
}

TEST_CASE("full reduction reports the final rung") {
  RunResult r = run(
      "chain --construction full-reduction --n 4 --gen lattice-prod:2x2 --alpha top "
      "--beta proj1 --gamma proj2 --elements 0,1,3,3,1");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["final_ell"] == 0);
  CHECK(j["chain"]["factor_count"] == 8);
}

TEST_CASE("congruences accepted as block vectors and indices") {
  RunResult by_blocks = run(
      "chain --construction core --gen lattice-prod:2x2 --alpha \"0 0 0 0\" "
      "--beta \"0 0 1 1\" --gamma \"0 1 0 1\" --elements 0,1,3,3,1");
  CHECK(by_blocks.exit_code == 0);
  RunResult listing = run("congruences --gen lattice-prod:2x2");
  CHECK(listing.exit_code == 0);
  auto j = parse(listing.out);
  REQUIRE(j["count"] == 4);
  CHECK(j["congruences"][0]["blocks"] == "0 1 2 3");
  CHECK(j["congruences"][3]["blocks"] == "0 0 0 0");
  RunResult by_index = run(
      "chain --construction core --gen lattice-prod:2x2 --alpha 3 --beta 1 --gamma 2 "
      "--elements 0,1,3,3,1");
  CHECK(by_index.exit_code == 0);
}

TEST_CASE("a corrupted system file fails with exit 5") {
  auto path = temp_file("jlab_bad_system.json",
                        R"({"flavor":"jonsson","n":4,"terms":["x","y","z"]})");
  RunResult r = run(
      "chain --construction core --gen lattice-prod:2x2 --system " + path.string() +
      " --alpha top --beta proj1 --gamma proj2 --elements 0,1,3,3,1");
  CHECK(r.exit_code == 5);
}

TEST_CASE("a valid system file round-trips through the chain command") {
  RunResult found = run("terms --gen lattice-prod:2x2 --flavor jonsson --n 2");
  REQUIRE(found.exit_code == 0);
  auto maj = parse(found.out)["system"]["terms"][0].get<std::string>();
  std::string system_json =
      std::string(R"({"flavor":"jonsson","n":4,"terms":[")") + maj + R"(","z","z"]})";
  auto path = temp_file("jlab_good_system.json", system_json);
  RunResult r = run(
      "chain --construction core --gen lattice-prod:2x2 --system " + path.string() +
      " --alpha top --beta proj1 --gamma proj2 --elements 0,1,3,3,1");
  CHECK(r.exit_code == 0);
}

TEST_CASE("extended and alvin constructions run end to end") {
  RunResult ext = run(
      "chain --construction extended --n-dist 6 --gen lattice-prod:2x2 --alpha top "
      "--beta proj1 --gamma proj2 --elements 0,1,3,3,1");
  CHECK(ext.exit_code == 0);
  CHECK(parse(ext.out)["chain"]["structural_factors"] == 14);
  RunResult alvin = run(
      "chain --construction alvin --n-dist 4 --gen lattice-prod:2x2 --alpha top "
      "--beta proj1 --gamma proj2 --elements 0,1,3,3,1");
  CHECK(alvin.exit_code == 0);
  CHECK(parse(alvin.out)["chain"]["structural_factors"] == 10);
}

TEST_CASE("malformed element lists are usage errors") {
  CHECK(run("chain --construction core --gen lattice-prod:2x2 --alpha top --beta proj1 "
            "--gamma proj2 --elements 0,9,3,3,1")
            .exit_code == 2);
  CHECK(run("chain --construction core --gen lattice-prod:2x2 --alpha top --beta proj1 "
            "--gamma proj2")
            .exit_code == 2);
}

TEST_CASE("spectrum output is deterministic and well-formed") {
  RunResult a = run("spectrum --gen lattice-chain:3 --m 2,4 --format csv");
  RunResult b = run("spectrum --gen lattice-chain:3 --m 2,4 --format csv");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("alpha,beta,gamma,m,minimal_k,witness_pair\n", 0) == 0);
  // 4 congruences, ordered triples, two m values.
  int lines = 0;
  for (char c : a.out) lines += c == '\n';
  CHECK(lines == 1 + 64 * 2);

  RunResult j = run("spectrum --gen trivial:1 --m 2 --format json");
  CHECK(j.exit_code == 0);
  auto trivial = parse(j.out);
  for (const auto& row : trivial["rows"]) CHECK(row["minimal_k"] == 1);

  RunResult p = run("spectrum --gen lattice-prod:2x2 --m 4 --format json");
  CHECK(p.exit_code == 0);
  CHECK(parse(p.out)["per_m_max"]["4"] <= 8);
}

TEST_CASE("check reports inclusions with exit 0 and failures with exit 3") {
  RunResult holds = run(
      "check --gen lattice-prod:2x2 --alpha top --beta proj1 --gamma proj2 --m 4 --k 8");
  CHECK(holds.exit_code == 0);
  CHECK(parse(holds.out)["holds"] == true);
  RunResult fails = run(
      "check --gen lattice-chain:2 --alpha top --beta delta --gamma top --m 2 --k 1");
  CHECK(fails.exit_code == 3);
  auto j = parse(fails.out);
  CHECK(j["holds"] == false);
  CHECK(j.contains("witness_pair"));
}

TEST_CASE("identical runs are byte-identical") {
  for (const std::string& args :
       {std::string("terms --gen lattice-chain:2 --flavor jonsson --n 2"),
        std::string("chain --construction core --gen lattice-prod:2x2 --alpha top "
                    "--beta proj1 --gamma proj2 --elements 0,1,3,3,1"),
        std::string("congruences --gen lattice-chain:3")}) {
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("algebra files load with validation") {
  auto good = temp_file("jlab_alg.json",
                        R"({"name":"two","size":2,"operations":[
                            {"symbol":"meet","arity":2,"table":[0,0,0,1]}]})");
  CHECK(run("congruences --input " + good.string()).exit_code == 0);
  auto bad = temp_file("jlab_alg_bad.json",
                       R"({"name":"two","size":2,"operations":[
                           {"symbol":"meet","arity":2,"table":[0,0,0,7]}]})");
  CHECK(run("congruences --input " + bad.string()).exit_code == 2);
  auto garbled = temp_file("jlab_alg_garbled.json", "{not json");
  CHECK(run("congruences --input " + garbled.string()).exit_code == 2);
}

TEST_CASE("reading policies on a fixture whose displayed reduction formula fails") {
  // Nine-element fixture: three constrained ternary operations on {0,1,2},
  // squared; the as-listed B'_0 formula breaks the ladder there while the
  // verification-line formula validates.
  const char* tables[3] = {"000011021012111210212112222", "002011021011210210202112102",
                           "002010022010210012002212102"};
  nlohmann::json alg;
  alg["name"] = "square9";
  alg["size"] = 9;
  alg["operations"] = nlohmann::json::array();
  for (int t = 0; t < 3; ++t) {
    std::vector<int> table(9 * 9 * 9);
    auto base = [&](int x, int y, int z) { return tables[t][(x * 3 + y) * 3 + z] - '0'; };
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int c = 0; c < 9; ++c)
          table[static_cast<std::size_t>((a * 9 + b) * 9 + c)] =
              base(a / 3, b / 3, c / 3) * 3 + base(a % 3, b % 3, c % 3);
    alg["operations"].push_back({{"symbol", "t" + std::to_string(t + 1)},
                                 {"arity", 3},
                                 {"table", table}});
  }
  auto alg_path = temp_file("jlab_square9.json", alg.dump());
  auto sys_path = temp_file(
      "jlab_square9_system.json",
      R"j({"flavor":"jonsson","n":4,"terms":["t1(x,y,z)","t2(x,y,z)","t3(x,y,z)"]})j");
  std::string common =
      "chain --construction full-reduction --input " + alg_path.string() + " --system " +
      sys_path.string() +
      " --alpha top --beta \"0 0 0 1 1 1 2 2 2\" --gamma \"0 1 2 0 1 2 0 1 2\" "
      "--elements 5,3,0,0,0";
  RunResult tryall = run(common);
  CHECK(tryall.exit_code == 0);
  auto j = parse(tryall.out);
  REQUIRE(j.contains("reduce_reports"));
  CHECK(j["reduce_reports"][0]["b0_reading"] == "t2(B0,B[l-1],B[l])");
  CHECK(j["reduce_reports"][0].contains("rejected"));
  RunResult strict = run(common + " --paper-reading strict");
  CHECK(strict.exit_code == 5);
}

TEST_CASE("text rendering is available") {
  RunResult r = run(
      "chain --construction core --gen lattice-prod:2x2 --alpha top --beta proj1 "
      "--gamma proj2 --elements 0,1,3,3,1 --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("factors:") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-jlab-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
