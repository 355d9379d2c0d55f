#include <doctest.h>

#include <json.hpp>

#include "deltaring/commands.hpp"
#include "golden_cases.hpp"

using namespace deltaring;
using nlohmann::json;

namespace {

json run_json(const std::vector<std::string>& args, int expected_exit = 0) {
  const CommandResult result = run_command(args);
  CAPTURE(result.output);
  CHECK(result.exit_code == expected_exit);
  return json::parse(result.output);
}

std::string error_kind(const std::vector<std::string>& args, int expected_exit) {
  const json j = run_json(args, expected_exit);
  REQUIRE(j.contains("error"));
  CHECK(j["error"].contains("detail"));
  return j["error"]["kind"].get<std::string>();
}

}  // namespace

TEST_CASE("golden fixtures") {
  for (const auto& c : golden::cases()) {
    CAPTURE(c.fixture);
    const std::string expected = golden::read_fixture(c.fixture);
    REQUIRE_FALSE(expected.empty());
    const CommandResult first = run_command(c.args), second = run_command(c.args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == expected);
    CHECK(second.output == expected);
    if (c.parallel) {
      for (const char* jobs : {"1", "4"}) {
        auto args = c.args;
        args.insert(args.end(), {"--jobs", jobs});
        CHECK(run_command(args).output == expected);
      }
    }
  }
}

TEST_CASE("example payloads") {
  CHECK(run_json({"rank1-enumerate", "--ring", "Zp(2,3)", "--group", "C2", "--depth", "2"})["units"] ==
        json::array({"1", "[g]"}));
  CHECK(run_json({"bass-unit", "--order", "5", "--k", "2"})["coefficients"] == json::array({-2, 1, 3, 1, -2}));
  CHECK(run_json({"artin-schreier", "--ring", "W(2,2,2)"})["kernel_size"] == 4);
}

TEST_CASE("ring-info") {
  const json j = run_json({"ring-info", "--ring", "W(2,2,2)"});
  CHECK(j["size"] == 16);
  CHECK(j["components"][0]["frobenius_image"] == "3x+3");
  const json product = run_json({"ring-info", "--ring", "Zp(3,2)xW(3,2,2)", "--group", "C3+Z^1"});
  CHECK(product["component_count"] == 2);
  CHECK(product["components"][0]["frobenius_image"] == "0");
  CHECK(product["components"][1]["frobenius_image"] == "8x");
  CHECK(product["group"]["descriptor"] == "C3+Z^1");
}

TEST_CASE("delta-eval") {
  const std::string one_plus_g = R"([{"elt":[0],"coeff":1},{"elt":[1],"coeff":1}])";
  const json j = run_json({"delta-eval", "--ring", "Z", "--group", "C3", "--prime", "2", "--element", one_plus_g});
  const json minus_g = json::parse(R"([{"elt":[1],"coeff":"-1"}])");
  CHECK(j["delta"]["terms"] == minus_g);
  CHECK(j["psi_equals_frobenius"] == true);

  const std::string nine = R"({"terms":[{"elt":[],"coeff":"9"}]})";
  const json w = run_json({"delta-eval", "--ring", "Zp(2,4)", "--element", nine});
  CHECK(w["precision_out"] == 3);
  const json four = json::parse(R"([{"elt":[],"coeff":"4"}])");
  CHECK(w["delta"]["terms"] == four);

  const std::string foreign = R"j({"ring":"Zp(2,4)","terms":[]})j";
  CHECK(error_kind({"delta-eval", "--ring", "Zp(2,3)", "--group", "C2", "--element", foreign}, 2) ==
        "ContextMismatch");
  CHECK(error_kind({"delta-eval", "--ring", "Zp(2,3)", "--group", "C2", "--element", "[{"}, 2) == "ValidationError");
  CHECK(error_kind({"delta-eval", "--ring", "Zp(2,1)", "--element", "[]"}, 2) == "PrecisionExhausted");
}

TEST_CASE("rank1-enumerate") {
  const json j = run_json({"rank1-enumerate", "--ring", "Zp(3,2)xZp(3,2)", "--group", "C3", "--depth", "1"});
  CHECK(j["units"].size() == 9);
  CHECK(j["matches_tautological"] == true);
  CHECK(j["counts"]["survivors"] == 9);
  CHECK(j["counts"]["tautological"] == 9);
}

TEST_CASE("tangent-fixed and idempotents") {
  const json t = run_json({"tangent-fixed", "--ring", "W(2,2,2)xW(2,2,2)", "--group", "C2"});
  CHECK(t["fixed_points"]["group"] == "C2+C2");
  CHECK(t["isomorphic"] == true);
  CHECK(error_kind({"tangent-fixed", "--ring", "Zp(2,2)", "--group", "C6"}, 2) == "GroupNotPPower");
  const json e = run_json({"idempotents", "--ring", "Zp(3,1)", "--group", "C2"});
  CHECK(e["idempotents"] == json::array({"2 + 2[g]", "2 + [g]"}));
}

TEST_CASE("integral subcommands") {
  const json h = run_json({"higman-check", "--group", "C4", "--bound", "1", "--order-bound", "8"});
  CHECK(h["torsion_units"] == json::array({"1", "[g]", "[g^2]", "[g^3]"}));
  CHECK(h["only_trivial"] == true);
  const json b = run_json({"bass-unit", "--order", "7", "--k", "2"});
  CHECK(b["coefficients"] == json::array({0, 2, 2, 0, -1, -1, -1}));
  CHECK(b["m"] == 3);
  const std::string g3 = R"([{"elt":[3],"coeff":"1"}])";
  const json c = run_json({"classify-integral", "--group", "C5", "--element", g3});
  CHECK(c["verdict"] == "tautological");
  CHECK(c["primes_queried"].empty());
  const std::string minus_one = R"([{"elt":[0],"coeff":"-1"}])";
  const json r = run_json({"classify-integral", "--group", "C5", "--element", minus_one});
  CHECK(r["verdict"] == "rejected");
  CHECK(r["prime"] == 2);
  CHECK(r["witness"] == "-1");
  CHECK(error_kind({"bass-unit", "--order", "6", "--k", "2"}, 2) == "InvalidSpec");
  const std::string two = R"([{"elt":[0],"coeff":"2"}])";
  CHECK(error_kind({"classify-integral", "--group", "C5", "--element", two}, 2) == "NotAUnit");
}

TEST_CASE("verify-axioms") {
  const json e = run_json({"verify-axioms", "--ring", "Zp(2,3)"});
  CHECK(e["mode"] == "exhaustive");
  CHECK(e["pairs_checked"] == 64);
  CHECK(e["passed"] == true);
  const std::vector<std::string> sampled = {"verify-axioms", "--ring", "Z",       "--group", "C6",
                                            "--prime",       "3",      "--seed", "11",      "--samples", "200"};
  const json s = run_json(sampled);
  CHECK(s["mode"] == "random");
  CHECK(s["pairs_checked"] == 200);
  CHECK(s["passed"] == true);
  CHECK(run_command(sampled).output == run_command(sampled).output);
}

TEST_CASE("exit codes") {
  CHECK(error_kind({"rank1-enumerate", "--ring", "Zp(2,", "--group", "C2"}, 2) == "SyntaxError");
  CHECK(error_kind({"rank1-enumerate", "--ring", "Zp(2,8)", "--group", "C8", "--depth", "1"}, 3) == "RingTooLarge");
  CHECK(error_kind({"higman-check", "--group", "C12", "--bound", "2"}, 3) == "SearchTooLarge");
  CHECK(error_kind({"ring-info", "--ring", "Zp(4,2)"}, 2) == "ValidationError");
  CHECK(error_kind({"no-such-command"}, 2) == "UsageError");
  CHECK(error_kind({"ring-info", "--ring", "Zp(2,2)", "--bogus"}, 2) == "UsageError");
  CHECK(error_kind({}, 2) == "UsageError");
  CHECK(run_command({"--help"}).exit_code == 0);
}

TEST_CASE("table output") {
  const CommandResult r = run_command({"ring-info", "--ring", "Zp(2,3)", "--output", "table"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("size: 8") != std::string::npos);
}
