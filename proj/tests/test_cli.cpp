#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mhad/cli.hpp"
#include "mhad/text_io.hpp"

using namespace mhad;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mhad_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("construct writes a verifiable matrix and certificate") {
  const auto mat = scratch("c86.mh").string();
  const auto cert = scratch("c86.json").string();
  const auto r = run({"construct", "-n", "86", "-m", "5", "-o", mat, "--emit-cert", cert});
  CHECK(r.status == cli::kExitOk);
  CHECK(nlohmann::json::parse(r.out)["outcome"] == "exists");
  CHECK(parse_matrix(slurp(mat)).matrix.order() == 86);
  CHECK(slurp(cert) == r.out);

  const auto v = run({"verify", "-i", mat});
  CHECK(v.status == cli::kExitOk);
  CHECK(v.out.find("verified MH(86,5)") != std::string::npos);
  CHECK(run({"verify", "--cert", cert}).status == cli::kExitOk);
  CHECK(run({"verify", "-i", mat, "--cert", cert}).status == cli::kExitOk);
}

TEST_CASE("construct on a nonexistent order reports the obstruction") {
  const auto r = run({"construct", "-n", "6", "-m", "5", "-o", scratch("none.mh").string()});
  CHECK(r.status == cli::kExitNegative);
  CHECK(r.out.find("16") != std::string::npos);
}

TEST_CASE("verify names the offending rows") {
  const auto path = scratch("bad.mh");
  spit(path, "MH 3 5\n+++\n+++\n+-+\n");
  const auto r = run({"verify", "-i", path.string()});
  CHECK(r.status == cli::kExitNegative);
  CHECK(r.out.find("rows 1 and 2") != std::string::npos);
  CHECK(r.out.find("inner product 3") != std::string::npos);
  CHECK(run({"verify", "-i", path.string(), "--modulus", "3"}).status == cli::kExitNegative);

  spit(path, "MH 3 5\n+++\n++\n+-+\n");
  const auto p = run({"verify", "-i", path.string()});
  CHECK(p.status == cli::kExitUsage);
  CHECK(p.err.find("line 3, column 3") != std::string::npos);

  spit(path, "MH 2 5\n++\n+-\n");
  CHECK(run({"verify", "-i", path.string(), "--modulus", "0"}).status == cli::kExitOk);
}

TEST_CASE("verify design files") {
  const auto path = scratch("b11.des");
  const auto shown = run({"catalog", "show", "B11"});
  CHECK(shown.status == cli::kExitOk);
  spit(path, shown.out);
  CHECK(run({"verify", "-i", path.string()}).status == cli::kExitOk);
  CHECK(run({"verify", "-i", path.string(), "--modulus", "7"}).status == cli::kExitOk);
  spit(path, "DES 2 1 0 5\n11\n01\n");
  CHECK(run({"verify", "-i", path.string()}).status == cli::kExitNegative);
}

TEST_CASE("verify rejects a tampered certificate") {
  const auto path = scratch("forged.json");
  spit(path, R"({"n": 7, "m": 5, "outcome": "exists", "recipe": {"kind": "base", "builder": "J", "n": 7, "m": 5}})");
  CHECK(run({"verify", "--cert", path.string()}).status == cli::kExitNegative);
  spit(path, "{not json");
  CHECK(run({"verify", "--cert", path.string()}).status == cli::kExitUsage);
}

TEST_CASE("decide and explain exit codes") {
  const auto d = run({"decide", "-n", "21", "-m", "5"});
  CHECK(d.status == cli::kExitOk);
  CHECK(d.out.find("2D-J") != std::string::npos);
  CHECK(run({"decide", "-n", "13", "-m", "5"}).status == cli::kExitNegative);
  CHECK(run({"explain", "-n", "5", "-m", "3"}).out.find("QuadraticNonResidue") != std::string::npos);
  CHECK(run({"decide", "-n", "5", "-m", "7"}).status == cli::kExitUsage);
  CHECK(run({"decide", "-n", "0", "-m", "5"}).status == cli::kExitUsage);
}

TEST_CASE("search subcommand") {
  const auto none = run({"search", "-n", "5", "-m", "3", "--mode", "none"});
  CHECK(none.status == cli::kExitOk);
  CHECK(none.out.find("examined 65536 of 65536") != std::string::npos);
  const auto first = run({"search", "-n", "4", "-m", "5", "--threads", "4"});
  CHECK(first.status == cli::kExitOk);
  CHECK(first.out.find("witness:") != std::string::npos);
  CHECK(run({"search", "-n", "3", "-m", "4"}).status == cli::kExitNegative);
  CHECK(run({"search", "-n", "9", "-m", "5"}).status == cli::kExitUsage);
  CHECK(run({"search", "-n", "4", "-m", "5", "--mode", "bogus"}).status == cli::kExitUsage);
}

TEST_CASE("catalog and usage errors") {
  const auto list = run({"catalog", "list"});
  CHECK(list.status == cli::kExitOk);
  CHECK(list.out.find("D21 (21,5,1)") != std::string::npos);
  CHECK(run({"catalog", "show", "D26", "-m", "3"}).status == cli::kExitUsage);
  CHECK(run({"catalog", "show", "X9"}).status == cli::kExitUsage);
  CHECK(run({}).status == cli::kExitUsage);
  CHECK(run({"frobnicate"}).status == cli::kExitUsage);
  CHECK(run({"verify"}).status == cli::kExitUsage);
  CHECK(run({"--help"}).status == cli::kExitOk);
}
