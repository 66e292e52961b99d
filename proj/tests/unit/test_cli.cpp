/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"

using namespace difftower;
using namespace difftower::cli;
using nlohmann::json;

namespace {

const Script base = parse_script("");
const Script exp_tower = parse_script("base x\nextend y = y\n");

Report run(const std::string& cmd, std::vector<std::string> args, const Script& s = base, Options o = {}) {
    return run_command(s, cmd, args, o);
}

json golden(const std::string& name) {
    std::ifstream in(std::string(DIFFTOWER_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return json::parse(buf.str());
}

}  // namespace

TEST_CASE("reference commands") {
    CHECK(run("riccati", {"D^2 - 1"}).text == "u' + u^2 - 1");
    CHECK(run("verdict", {"D^2 - x"}).result["status"] == "not_solvable_by_admissible");
    const Report ord = run("ord", {"(y^2-1)/(y^2+1)"}, exp_tower);
    CHECK(ord.exit_code == exit_ok);
    CHECK(ord.text == "0");
    CHECK(ord.result["ord"] == 0);
}

TEST_CASE("operator and valuation commands") {
    CHECK(run("opmul", {"D - 1", "D + 1"}).text == "D^2 - 1");
    const Report div = run("opdiv", {"D^2 + x", "D - 1"});
    CHECK(div.result["quotient"] == "D + 1");
    CHECK(div.result["remainder"] == "x + 1");
    CHECK(run("reduce", {"D^2 - 1", "1"}).text == "D + 1");
    CHECK(run("apply", {"x*D^2", "x^3"}).text == "6*x^2");
    CHECK(run("ord", {"1/y^2"}, exp_tower).text == "-2");
    CHECK(run("ord", {"0"}, exp_tower).result["ord"] == "inf");
    CHECK(run("eval0", {"(y^2-1)/(y^2+1)"}, exp_tower).text == "-1");
    CHECK(run("descend", {"u' + u^2 - 1", "(y^2-1)/(y^2+1)"}, exp_tower).text == "-1");
    const Report special = run("check-special", {}, exp_tower);
    CHECK(special.result["special"] == true);
    CHECK(special.result["kind"] == "exp-of-integral");
    Options seeded;
    seeded.seed = 11;
    const Report lemma = run("check-order-lemma", {"30"}, exp_tower, seeded);
    CHECK(lemma.result["violations"] == 0);
    CHECK(lemma.provenance["seed"] == 11);
    const Report control = run("check-order-lemma", {"30"}, parse_script("extend t = 1"), seeded);
    CHECK(control.result["special"] == false);
    CHECK(control.result["violations"].get<int>() > 0);
}

TEST_CASE("base-field commands") {
    const Report ld = run("logder", {"2/x + 1/(x - 1)"});
    CHECK(ld.result["is_log_derivative"] == true);
    CHECK(ld.result["preimage"] == "x^3 - x^2");
    CHECK(run("logder", {"1/(2*x)"}).result["is_log_derivative"] == false);
    CHECK(run("antider", {"2*x - 1/x^2"}).text == "(x^3 + 1)/x");
    CHECK(run("antider", {"1/x"}).result["antiderivative"].is_null());
    const Report lat = run("lattice", {"1", "2"});
    CHECK(lat.result["lattice_basis"] == json::parse("[[2, -1]]"));
    CHECK(lat.result["torsion_free"] == true);
    const Report tor = run("lattice", {"1/(2*x)"});
    CHECK(tor.result["witness"] == json::parse(R"({"exponents": [1], "order": 2})"));
    const Report snf = run("snf", {"[[2, 4], [6, 8]]"});
    CHECK(snf.result["diagonal"] == json::parse("[2, 4]"));
    CHECK(run("expsols", {"x*D - 1"}).result["solutions"] == json::parse(R"(["1/x"])"));
    CHECK(run("polysols", {"D^2", "3"}).result["solutions"] == json::parse(R"(["1", "x"])"));
    const Report f = run("factor", {"D^2 - 1"});
    CHECK(f.result["chains"] == json::parse(R"([["-1", "1"], ["1", "-1"]])"));
    CHECK(f.result["complete"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run("eval0", {"1/(2x"}).exit_code == exit_usage);
    CHECK(run("eval0", {"1/(2x"}).error.find("column 5") != std::string::npos);
    CHECK(run("nope", {}).exit_code == exit_usage);
    CHECK(run("riccati", {}).exit_code == exit_usage);
    CHECK(run("snf", {"[[1, 2], [3]]"}).exit_code == exit_usage);
    CHECK(run("polysols", {"D", "many"}).exit_code == exit_usage);
    CHECK(run("reduce", {"D^2 - 1", "2"}).exit_code == exit_domain);
    CHECK(run("eval0", {"1/y"}, exp_tower).exit_code == exit_domain);
    CHECK(run("expsols", {"x^3*D^2 + 1"}).exit_code == exit_domain);
    CHECK(run("logder", {"y"}, exp_tower).exit_code == exit_domain);
    const Report bad = run("reduce", {"D^2 - 1", "2"});
    CHECK(bad.text.empty());
    CHECK(bad.result.empty());
}

TEST_CASE("reports round-trip through json") {
    for (const Report& r : {run("verdict", {"D^2 - 1"}), run("snf", {"[[1, 2], [3, 4]]"}),
                            run("ord", {"y"}, exp_tower), run("reduce", {"D", "3"})}) {
        const json j = r;
        CHECK(json::parse(j.dump()).get<Report>() == r);
    }
}

TEST_CASE("verdict schema is pinned by golden files") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"verdict_solvable.json", "D^2 - 1"},
        {"verdict_airy.json", "D^2 - x"},
        {"verdict_torsion.json", "D - 1/(2*x)"},
        {"verdict_unknown.json", "(x^2 + 1)*D^2 + 1"},
    };
    for (const auto& [file, op] : cases) {
        CAPTURE(file);
        const json got = run("verdict", {op}).result;
        CHECK(got == golden(file));
        for (const char* key : {"status", "chain", "lattice_basis", "elementary_divisors", "witness", "bounds_hit"})
            CHECK(got.contains(key));
    }
}
