#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "extalg/cli.hpp"

using namespace extalg;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::initializer_list<std::string> args) {
    std::ostringstream out, err;
    int code = cli::dispatch(std::vector<std::string>(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("count matches the documented value") {
    auto r = run({"count", "--p", "3", "--rank", "2", "--degree", "4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "21\n");
}

TEST_CASE("reduce prints the canonical sign and ordering") {
    auto r = run({"reduce", "--p", "5", "--rank", "2", "t2.t1"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "- t1.t2\n");
}

TEST_CASE("reduce output is a fixpoint of reduce") {
    auto first = run({"reduce", "--p", "3", "--rank", "2", "g[0,1].g[1,0].t1"});
    REQUIRE(first.code == cli::kExitOk);
    std::string text = first.out.substr(0, first.out.size() - 1);
    auto second = run({"reduce", "--p", "3", "--rank", "2", text});
    CHECK(second.code == cli::kExitOk);
    CHECK(second.out == first.out);
}

TEST_CASE("mul agrees with reduce of the concatenation") {
    auto via_mul = run({"mul", "--p", "3", "--rank", "2", "g[0,1]", "g[1,0]"});
    auto via_reduce = run({"reduce", "--p", "3", "--rank", "2", "g[0,1].g[1,0]"});
    CHECK(via_mul.code == cli::kExitOk);
    CHECK(via_mul.out == via_reduce.out);
}

TEST_CASE("series output and JSON schema") {
    auto r = run({"series", "--p", "3", "--rank", "2", "--upto", "6"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "0,1\n1,2\n2,5\n3,10\n4,21\n5,42\n6,85\n");

    auto j = run({"series", "--p", "3", "--rank", "2", "--upto", "4", "--format", "json"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["schema"] == 1);
    CHECK(parsed["coeffs"] == nlohmann::json({"1", "2", "5", "10", "21"}));

    auto rec = run({"series", "--p", "5", "--rank", "3", "--upto", "20", "--check-recurrence"});
    CHECK(rec.code == cli::kExitOk);
    CHECK(rec.out.find("recurrence ok") != std::string::npos);
}

TEST_CASE("basis listing and count-only") {
    auto r = run({"basis", "--p", "3", "--rank", "2", "--degree", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "g[1,0]\nt1.t2\ng[0,1]\ng[1,1]\ng[2,1]\n");

    auto c = run({"basis", "--p", "3", "--rank", "2", "--degree", "2", "--count-only"});
    CHECK(c.out == "5\n");

    auto j = run({"basis", "--p", "3", "--rank", "2", "--degree", "1", "--format", "json"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["words"] == nlohmann::json::parse(R"([["t1"],["t2"]])"));
}

TEST_CASE("lines listing") {
    auto r = run({"lines", "--p", "3", "--rank", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "[1,0] position=1\n[0,1] position=2\n[1,1] position=2\n[2,1] position=2\n");
}

TEST_CASE("oracle agrees with count and respects the guard") {
    auto r = run({"oracle", "--p", "3", "--rank", "1", "--upto", "4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "0,1\n1,1\n2,1\n3,1\n4,1\n");

    auto guarded = run({"oracle", "--p", "3", "--rank", "2", "--upto", "6"});
    CHECK(guarded.code == cli::kExitUsage);

    auto audit = run({"oracle", "--p", "3", "--rank", "1", "--upto", "2", "--audit"});
    CHECK(audit.out.find("algebra dimension: 6") != std::string::npos);
    CHECK(audit.out.find("radical dimension: 4") != std::string::npos);
}

TEST_CASE("validation errors exit 2") {
    CHECK(run({"count", "--p", "2", "--rank", "2", "--degree", "1"}).code == cli::kExitUsage);
    CHECK(run({"count", "--p", "9", "--rank", "2", "--degree", "1"}).code == cli::kExitUsage);
    CHECK(run({"nonsense"}).code == cli::kExitUsage);
    CHECK(run({"reduce", "--p", "3", "--rank", "2", "t9"}).code == cli::kExitUsage);
    CHECK(run({"count", "--p", "3", "--degree", "1"}).code == cli::kExitUsage); // missing rank
}

TEST_CASE("verify-all runs the triple agreement") {
    auto r = run({"verify-all", "--p", "3", "--rank", "2", "--upto", "4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("basis-series agreement (n <= 4): ok") != std::string::npos);
    CHECK(r.out.find("relation soundness") != std::string::npos);
    CHECK(r.out.find("strategy independence") != std::string::npos);
    CHECK(r.out.find("oracle agreement (n <= 4): ok") != std::string::npos);
}

TEST_CASE("check subcommand summarizes both reports") {
    auto r = run({"check", "--p", "5", "--rank", "1", "--samples", "50", "--seed", "7"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("all reduce to zero") != std::string::npos);
    CHECK(r.out.find("strategy independent") != std::string::npos);
}

TEST_CASE("json reduce carries the schema") {
    auto r = run({"reduce", "--p", "3", "--rank", "2", "--format", "json", "t1.t1"});
    auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["schema"] == 1);
    CHECK(parsed["p"] == 3);
    CHECK(parsed["terms"].size() == 3);
}

TEST_CASE("help exits zero") {
    auto r = run({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("verify-all") != std::string::npos);
}
