#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "qinv/cli.hpp"

using nlohmann::json;
using qinv::cli::run;

namespace {

const std::string kM = R"({"epsilon":"o","genus":1,"fibers":[[3,1],[5,1]],"boundary":true})";
const std::string kT3 = R"({"epsilon":"o","genus":1,"fibers":[],"boundary":false})";

qinv::cli::CommandResult call(std::vector<std::string> args) {
  args.insert(args.begin(), "qinv");
  return run(args);
}

json ok_payload(const qinv::cli::CommandResult& r) {
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["status"] == "ok");
  return doc["payload"];
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qinv_cli_test_" + name);
}

}  // namespace

TEST_CASE("dedekind") {
  const json p = ok_payload(call({"dedekind", "1", "3"}));
  CHECK(p["value"] == "1/18");
  CHECK(p["numerator"] == 1);
  CHECK(p["denominator"] == 18);
  CHECK(call({"dedekind", "2", "4"}).exit_code == qinv::cli::kNotInvertible);
  CHECK(call({"dedekind", "1", "0"}).exit_code == qinv::cli::kDomainError);
}

TEST_CASE("certify") {
  const auto r = call({"certify", "--symbol", R"({"epsilon":"o","genus":1,"fibers":[[2,1],[3,1],[5,1]],"boundary":true})"});
  const json p = ok_payload(r);
  CHECK(p["case"] == "a");
  CHECK(p["cardinality"] == 8);
  CHECK(p["modulus"] == 30);
  const json doc = json::parse(r.out);
  bool warned = false;
  for (const auto& d : doc["diagnostics"]) warned |= d.get<std::string>().find("odd-r conflict") != std::string::npos;
  CHECK(warned);
  const json none = ok_payload(call({"certify", "--symbol", R"({"epsilon":"o","genus":1,"fibers":[[5,1],[5,3]],"boundary":true})"}));
  CHECK(none["case"] == "d");
  CHECK(none["hypothesis_holds"] == false);
  CHECK(none["certificate"].is_null());
}

TEST_CASE("rt") {
  const json p = ok_payload(call({"rt", "--symbol", kT3, "--r", "11"}));
  CHECK(p["value"]["re"].get<double>() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(p["value"]["im"].get<double>()) < 1e-10);
  CHECK(p["manifold"] == "M");
  const json d = ok_payload(call({"rt", "--symbol", kM, "--r", "15", "--method", "simplified"}));
  CHECK(d["manifold"] == "D(M)");
  CHECK(d["method"] == "simplified");
  CHECK(d["value"]["re"].get<double>() == doctest::Approx(174179.6).epsilon(1e-6));
}

TEST_CASE("tv from symbol and from triangulation") {
  const json a = ok_payload(call({"tv", "--symbol", kT3, "--r", "7"}));
  CHECK(a["value"].get<double>() == doctest::Approx(36.0).epsilon(1e-12));
  const json b = ok_payload(call({"tv", "--tri", QINV_DATA_DIR "/s3_double.tri", "--r", "5"}));
  const double z = 2 * std::sin(2 * M_PI / 5);
  CHECK(b["value"].get<double>() == doctest::Approx(z * z / 5).epsilon(1e-12));
  CHECK(b["edges"] == 6);
  CHECK(call({"tv", "--tri", "/nonexistent.tri", "--r", "5"}).exit_code == qinv::cli::kMalformedInput);
  CHECK(call({"tv", "--symbol", kT3, "--tri", QINV_DATA_DIR "/s3_double.tri", "--r", "5"}).exit_code ==
        qinv::cli::kUsage);
}

TEST_CASE("double and normalize") {
  const json d = ok_payload(call({"double", "--symbol", kM}));
  CHECK(d["symbol"]["genus"] == 2);
  CHECK(d["symbol"]["fibers"].size() == 4);
  CHECK(d["symbol"]["boundary"] == false);
  CHECK(d["euler_number"] == "0");
  const json n = ok_payload(call({"normalize", "--symbol", R"({"epsilon":"o","genus":1,"fibers":[[3,4],[5,1]],"boundary":false})"}));
  CHECK(n["symbol"]["fibers"] == json::parse("[[3,1],[5,6]]"));
  CHECK(call({"double", "--symbol", kT3}).exit_code == qinv::cli::kDomainError);
}

TEST_CASE("sixj") {
  const json p = ok_payload(call({"sixj", "0", "0", "0", "0", "0", "0", "--r", "7"}));
  CHECK(p["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(call({"sixj", "0", "0", "2", "0", "0", "0", "--r", "7"}).exit_code == qinv::cli::kDomainError);
  CHECK(call({"sixj", "0", "0", "0", "--r", "7"}).exit_code == qinv::cli::kUsage);
}

TEST_CASE("bound and verify") {
  const json b = ok_payload(call({"bound", "--symbol", kM, "--k", "1,3"}));
  REQUIRE(b["bounds"].size() == 2);
  CHECK(b["bounds"][0]["manifold"].get<double>() == doctest::Approx(56.25));
  CHECK(b["bounds"][1]["manifold"].get<double>() == doctest::Approx(506.25));
  CHECK(b["bounds"][0]["double"].get<double>() == doctest::Approx(3164.0625));
  const json v = ok_payload(call({"verify", "--symbol", kM, "--k", "1:3"}));
  REQUIRE(v["checks"].size() == 2);
  CHECK(v["smallest_k"] == 1);
  for (const auto& c : v["checks"]) CHECK(c["both_exceed_one"] == true);
  CHECK(call({"bound", "--symbol", R"({"epsilon":"o","genus":1,"fibers":[[5,1],[5,3]],"boundary":true})", "--k", "1"})
            .exit_code == qinv::cli::kPreconditionViolated);
  CHECK(call({"bound", "--symbol", kM, "--k", "2"}).exit_code == qinv::cli::kPreconditionViolated);
}

TEST_CASE("scan: json, csv, summary") {
  const json p = ok_payload(call({"scan", "--symbol", kM, "--k", "1,3,5"}));
  REQUIRE(p["samples"].size() == 3);
  CHECK(p["samples"][2]["r"] == 75);
  CHECK(p["summary"]["verdict"] == "consistent_with_ltv_zero");

  const auto summary = temp_file("summary.json");
  const auto csv = call({"--format", "csv", "scan", "--symbol", kM, "--r", "15,45", "--summary", summary.string()});
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("r,tv_abs,ltv_term,bound,bound_satisfied\n15,", 0) == 0);
  std::ifstream in(summary);
  const json s = json::parse(in);
  CHECK(s["summary"]["all_positive"] == true);
  std::filesystem::remove(summary);
}

TEST_CASE("deterministic output and timing") {
  const auto a = call({"scan", "--symbol", kM, "--r", "15,45", "--threads", "2"});
  const auto b = call({"scan", "--symbol", kM, "--r", "15,45"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out).count("timing_ms") == 0);
  const auto c = call({"--no-deterministic", "dedekind", "1", "3"});
  CHECK(json::parse(c.out).count("timing_ms") == 1);
}

TEST_CASE("kernel selection") {
  const json s = json::parse(call({"--kernel", "scalar", "rt", "--symbol", kM, "--r", "45"}).out);
  const json v = json::parse(call({"--kernel", "avx2", "rt", "--symbol", kM, "--r", "45"}).out);
  CHECK(s["kernel"] == "scalar");
  const double a = s["payload"]["value"]["re"].get<double>();
  const double b = v["payload"]["value"]["re"].get<double>();
  CHECK(b == doctest::Approx(a).epsilon(1e-12));
  CHECK(call({"--kernel", "neon", "dedekind", "1", "3"}).exit_code == qinv::cli::kUsage);
}

TEST_CASE("symbol from file") {
  const auto path = temp_file("symbol.json");
  {
    std::ofstream out(path);
    out << kT3;
  }
  const json p = ok_payload(call({"rt", "--symbol", "@" + path.string(), "--r", "5"}));
  CHECK(p["value"]["re"].get<double>() == doctest::Approx(4.0));
  std::filesystem::remove(path);
}

TEST_CASE("error exit codes") {
  CHECK(call({}).exit_code == qinv::cli::kUsage);
  CHECK(call({"frobnicate"}).exit_code == qinv::cli::kUsage);
  CHECK(call({"rt", "--r", "5"}).exit_code == qinv::cli::kUsage);
  CHECK(call({"rt", "--symbol", "{oops", "--r", "5"}).exit_code == qinv::cli::kMalformedInput);
  CHECK(call({"rt", "--symbol", R"({"epsilon":"o","genus":1,"fibers":[[4,2]],"boundary":false})", "--r", "5"})
            .exit_code == qinv::cli::kInvalidFiber);
  CHECK(call({"rt", "--symbol", kT3, "--r", "6"}).exit_code == qinv::cli::kDomainError);
  CHECK(call({"rt", "--symbol", kM, "--r", "21", "--method", "simplified"}).exit_code ==
        qinv::cli::kPreconditionViolated);
  const auto err = call({"rt", "--symbol", kT3, "--r", "6"});
  const json doc = json::parse(err.out);
  CHECK(doc["status"] == "error");
  CHECK(doc["error"]["code"].is_string());
  CHECK(!err.err.empty());
}

TEST_CASE("help documents the payload schema") {
  const auto h = call({"scan", "--help"});
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("payload") != std::string::npos);
  CHECK(h.out.find("csv columns") != std::string::npos);
}
