#include "whitdim/cli.hpp"

#include <doctest.h>

#include <sstream>

using namespace whitdim;
using whitdim::cli::Json;

namespace {

std::string data(const std::string& name) { return std::string(WHITDIM_DATA_DIR) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "whitdim");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto o = invoke(std::move(args));
  REQUIRE(o.code == 0);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("info on the KP GL_2 document") {
  const Json j = invoke_json({"info", data("gl2_kp.json")});
  CHECK(j["command"] == "info");
  CHECK(j["version"] == cli::version);
  const Json& r = j["results"];
  CHECK(r["central_index"] == 16);
  CHECK(r["squeeze_lower"] == 2);
  CHECK(r["squeeze_upper"] == 4);
  CHECK(r["family"] == "kazhdan_patterson");
  CHECK(r["bold_p"] == 0);
  CHECK(r["bold_q"] == 1);
  CHECK(r["q_alpha"] == Json::parse("[-1]"));
  CHECK(r["y_qn_basis"] == Json::parse("[[4,0],[0,4]]"));
  CHECK(r["derived_simply_connected"] == true);
}

TEST_CASE("info with n = 1 reports trivial indices") {
  const Json r = invoke_json({"info", data("gl2_trivial_cover.json")})["results"];
  CHECK(r["central_index"] == 1);
  CHECK(r["squeeze_lower"] == 1);
  CHECK(r["squeeze_upper"] == 1);
}

TEST_CASE("info on non-GL data") {
  Json r = invoke_json({"info", data("sp4.json")})["results"];
  CHECK(r["semisimple_rank"] == 2);
  CHECK(!r.contains("bold_p"));
  CHECK(r["central_index"] == 1);
  r = invoke_json({"info", data("torus_swap.json")})["results"];
  CHECK(r["central_index"] == 2);
}

TEST_CASE("exit codes for bad documents") {
  CHECK(invoke({"info", data("gl2_bad_degree.json")}).code == 3);
  CHECK(invoke({"info", data("gl2_noninvariant.json")}).code == 3);
  const auto m = invoke({"info", data("malformed.json")});
  CHECK(m.code == 2);
  CHECK(m.err.rfind("error: ", 0) == 0);
  CHECK(invoke({"info", data("does_not_exist.json")}).code == 2);
  CHECK(invoke({"info"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"whittaker", "--r", "2", "--q", "5", "--n", "4", "--pp", "0", "--qq", "1", "--a", "x"}).code == 2);
  CHECK(invoke({"info", data("gl2_kp.json"), "--format", "yaml"}).code == 2);
}

TEST_CASE("residual subcommand") {
  Json r = invoke_json({"residual", data("gl2_kp.json"), "--point", "0,0"})["results"];
  REQUIRE(r["iota"].size() == 2);
  for (const auto& e : r["iota"]) CHECK(Json::parse(e["iota"].get<std::string>()).back() == 0);
  CHECK(r["hyperspecial"] == true);

  r = invoke_json({"residual", data("gl2_kp.json"), "--point", "1/2,-1/2"})["results"];
  CHECK(r["iota"][0]["iota"] == "[1,-1,-1]");
  CHECK(r["residual_simply_connected"] == true);
  CHECK(r["residual_splits"] == true);

  r = invoke_json({"residual", data("gl2_kp.json"), "--point", "1/3,0"})["results"];
  CHECK(r["phi_x"].empty());
  CHECK(r["vertex"] == false);

  CHECK(invoke({"residual", data("gl2_kp.json"), "--point", "1/2"}).code == 2);
  CHECK(invoke({"residual", data("gl2_kp.json"), "--point", "a,b"}).code == 2);
  CHECK(invoke({"residual", data("torus_swap.json"), "--point", "1,0"}).code == 3);
}

TEST_CASE("whittaker subcommand") {
  Json r = invoke_json({"whittaker", "--r", "2", "--q", "5", "--n", "4", "--pp", "0", "--qq", "1", "--a", "3",
                        "--oracle"})["results"];
  CHECK(r["dimension"] == 2);
  CHECK(r["oracle_dimension"] == 2);
  CHECK(r["orbit_dimension"] == 2);
  CHECK(r["agree"] == true);

  for (const char* a : {"1", "2", "7", "100"}) {
    r = invoke_json({"whittaker", "--r", "3", "--q", "5", "--n", "4", "--pp", "1", "--qq", "1", "--a", a})["results"];
    CHECK(r["dimension"] == 1);
  }
  CHECK(invoke({"whittaker", "--r", "2", "--q", "5", "--n", "4", "--pp", "0", "--qq", "1", "--a", "0"}).code == 4);
  CHECK(invoke({"whittaker", "--r", "2", "--q", "5", "--n", "3", "--pp", "0", "--qq", "1", "--a", "1"}).code == 3);
  CHECK(invoke({"whittaker", "--r", "2", "--q", "6", "--n", "1", "--pp", "0", "--qq", "1", "--a", "1"}).code == 3);
  CHECK(invoke({"whittaker", "--r", "2", "--q", "5", "--n", "4", "--pp", "0", "--qq", "1", "--a", "24"}).code == 3);
}

TEST_CASE("table subcommand") {
  Json r = invoke_json({"table", "--r", "2", "--q", "5", "--n", "4", "--pp", "0", "--qq", "1"})["results"];
  CHECK(r["classes"] == 10);
  for (const auto& row : r["rows"]) CHECK((row["dimension"] == 2 || row["dimension"] == 4));
  r = invoke_json({"table", "--r", "2", "--q", "7", "--n", "1", "--pp", "3", "--qq", "-1"})["results"];
  REQUIRE(r["histogram"].size() == 1);
  CHECK(r["histogram"][0]["dimension"] == 1);
  r = invoke_json({"table", "--r", "2", "--q", "5", "--n", "4", "--pp", "1", "--qq", "2"})["results"];
  REQUIRE(r["histogram"].size() == 1);
  CHECK(r["histogram"][0]["dimension"] == 1);
}

TEST_CASE("records round-trip and reruns are byte-identical") {
  const std::vector<std::vector<std::string>> commands{
      {"info", data("gl2_kp.json")},
      {"residual", data("sp4.json"), "--point", "1/2,0"},
      {"whittaker", "--r", "3", "--q", "3", "--n", "2", "--pp", "-1", "--qq", "0", "--a", "5", "--oracle"},
      {"table", "--r", "3", "--q", "3", "--n", "2", "--pp", "-1", "--qq", "0"}};
  for (auto args : commands) {
    const auto text1 = invoke(args), text2 = invoke(args);
    CHECK(text1.code == 0);
    CHECK(text1.out == text2.out);
    CHECK(text1.out.rfind("# whitdim " + std::string(cli::version), 0) == 0);

    args.push_back("--format");
    args.push_back("json");
    const auto json1 = invoke(args), json2 = invoke(args);
    CHECK(json1.out == json2.out);
    const auto rec = cli::OutputRecord::from_json(Json::parse(json1.out));
    CHECK(rec.to_json().dump(2) + "\n" == json1.out);
    CHECK(cli::OutputRecord::from_json(rec.to_json()) == rec);
    CHECK(rec.to_text() == text1.out);
  }
}

TEST_CASE("cover documents round-trip") {
  const Json j = Json::parse(R"({"rank": 2, "roots": [[1,-1],[-1,1]], "coroots": [[1,-1],[-1,1]],
                                 "simple": [0], "bq": [[0,1],[1,0]], "n": 4, "q": 5})");
  const auto doc = cli::parse_cover_document(j);
  CHECK(cli::to_json(doc) == j);
  CHECK(central_index(cli::to_cover(doc)) == 16);
  CHECK(cli::json_int(Int("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(cli::json_int(Int(-7)) == -7);
}
