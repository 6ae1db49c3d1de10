#include <doctest.h>

#include <sstream>

#include "qcx/cli.hpp"
#include "qcx/serialize.hpp"

using namespace qcx;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const RingSpec golden = RingSpec::make(1, 1);

}  // namespace

TEST_CASE("parse_quadint") {
    CHECK(parse_quadint("1,1", golden) == QuadInt(golden, 1, 1));
    CHECK(parse_quadint("0,-1", golden) == QuadInt(golden, 0, -1));
    CHECK(parse_quadint("+3,-0", golden) == QuadInt(golden, 3, 0));
    try {
        parse_quadint("1;1", golden);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.position() == 1);
    }
    CHECK_THROWS_AS(parse_quadint("1,", golden), ParseError);
    CHECK_THROWS_AS(parse_quadint("1,2x", golden), ParseError);
    CHECK(parse_quadrat("1,1/4", golden) == QuadRat(QuadInt(golden, 1, 1), 4));
    const Interval w = parse_interval("0,0:1,0/2:co", golden);
    CHECK(w.lo_closed());
    CHECK_FALSE(w.hi_closed());
    CHECK(w.hi() == QuadRat(QuadInt(golden, 1), 2));
    CHECK_THROWS_AS(parse_interval("1,0:0,0", golden), ParseError);
    CHECK(parse_quadint_list("0,0;1,0", golden).size() == 2);
}

TEST_CASE("ring-info") {
    const Run r = run({"ring-info", "--m", "1", "--sign", "+"});
    CHECK(r.code == 0);
    CHECK(r.out.find("beta ≈ 1.6180") != std::string::npos);
    CHECK(r.out.find("beta' ≈ -0.6180") != std::string::npos);
    CHECK(r.out.find("1/beta = -1,1") != std::string::npos);
    CHECK(run({"ring-info", "--m", "3", "--sign", "-"}).code == 2);
    CHECK(run({"ring-info", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep") {
    const Run r = run({"sweep", "--max", "30", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["forcing_rows"] == 3);
    std::size_t nonempty = 0;
    for (const auto &row : j["rows"])
        nonempty += row["forcing"].empty() ? 0 : 1;
    CHECK(nonempty == 3);
}

TEST_CASE("witness subcommand") {
    const Run r = run({"witness", "--m", "1", "--sign", "+", "--target", "2,-1", "--reduce", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["value"]["a"] == 2);
    CHECK(j["value"]["b"] == -1);
    CHECK(j["verified"] == true);
    CHECK(j["ops"] == Json::array({1}));
    const Witness w = witness_from_json(j);
    CHECK(evaluate_witness(w) == QuadInt(golden, 2, -1));
    CHECK(run({"witness", "--target", "2,0"}).code == 2);
}

TEST_CASE("check subcommands signal absence with exit 1") {
    CHECK(run({"expand", "--m", "4", "--sign", "-", "--x", "-1,1"}).code == 1);
    CHECK(run({"expand", "--x", "2,0"}).out == "10.01\n");
    CHECK(run({"admissible", "--digits", "11"}).code == 1);
    CHECK(run({"admissible", "--digits", "1001"}).code == 0);
    CHECK(run({"gapwitness", "--m", "3", "--y", "20,-6", "--s", "4,-1"}).code == 1);
    CHECK(run({"gapwitness", "--m", "3", "--y", "0,0", "--s", "4,-1"}).code == 0);
    CHECK(run({"modelset", "--hull", "0,0;1,0;3,0"}).code == 1);
    CHECK(run({"modelset", "--range", "0,0:5,0", "--check-s", "0,-1"}).code == 0);
    CHECK(run({"modelset", "--range", "0,0:5,0", "--check-s", "2,0"}).code == 2);
    CHECK(run({"closure", "--s", "0,-1", "--depth", "4", "--check-window", "0,0:1,0"}).code == 0);
    CHECK(run({"closure", "--m", "3", "--s", "0,-1", "--depth", "2", "--check-window", "0,0:1,0/2"}).code == 1);
    CHECK(run({"reduce", "--m", "6", "--sign", "-", "--template", "3", "--depth", "1"}).code == 1);
}

TEST_CASE("modelset output formats") {
    const Run csv = run({"modelset", "--range", "0,0:5,0", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("a,b,value,conj\n0,0,", 0) == 0);

    const Run js = run({"modelset", "--range", "0,0:10,0", "--gaps", "--format", "json"});
    REQUIRE(js.code == 0);
    const Json j = Json::parse(js.out);
    CHECK(j["count"] == 6);
    CHECK(j["gaps"].size() == 3);
    for (const auto &p : j["points"]) {
        const QuadInt x = point_from_json(golden, p);
        CHECK(point_to_json(x) == p);
    }
}

TEST_CASE("reduce and pinch read witness documents") {
    const Run w = run({"witness", "--m", "2", "--target", "-2,1", "--format", "json"});
    REQUIRE(w.code == 0);
    const Run r = run({"reduce", "--witness", w.out, "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["verified"] == true);
    CHECK(j["value"] == Json::parse(w.out)["value"]);

    const Run p = run({"pinch", "--witness", w.out, "--format", "json"});
    CHECK(p.code == 0);
    CHECK(Json::parse(p.out)["matches"] == true);
    CHECK(run({"reduce", "--witness", "{not json"}).code == 2);
}

TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::string> args{"closure", "--m", "4", "--sign", "-", "--s", "0,1", "--depth", "3",
                                        "--format", "json"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
