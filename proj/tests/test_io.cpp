#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "progfree/report_io.hpp"

using namespace progfree;

TEST_CASE("bound report json round-trips") {
    const BoundReport report = progression_bound(4, 4);
    const nlohmann::json j = to_json(report);
    CHECK(j.at("d") == 2);
    CHECK(j.at("m") == 2);
    CHECK(j.contains("witness_y"));
    CHECK(j.contains("a_value"));
    CHECK(j.contains("c_value"));
    CHECK(j.contains("trivial_flag"));
    CHECK(j.contains("grid_lower"));
    const BoundReport back = bound_report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.k == report.k);
    CHECK(back.q == report.q);
    CHECK(back.d == report.d);
    CHECK(back.m == report.m);
    CHECK(back.witness_y == report.witness_y);
    CHECK(back.a_value == report.a_value);
    CHECK(back.c_value == report.c_value);
    CHECK(back.trivial == report.trivial);
    CHECK(back.grid_lower == report.grid_lower);
}

TEST_CASE("count report json round-trips with exact integers") {
    const CountReport report = make_count_report(MSetSpec{1, 3, 4, 2});
    const nlohmann::json j = to_json(report);
    CHECK(j.at("size").is_string());  // exact integer, never scientific notation
    const CountReport back = count_report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.size == report.size);
    CHECK(back.complement_size == report.complement_size);
    CHECK(back.mirror_size == report.mirror_size);
    CHECK(back.identity_holds == report.identity_holds);
    CHECK(back.boundary_integral == report.boundary_integral);
    CHECK(back.alpha_num == 1);
    CHECK(back.alpha_den == 3);
}

TEST_CASE("search output json round-trips") {
    const SearchResult r = max_progression_free(3, 2, 3, Semantics::literal);
    SearchOutput output;
    output.q = 3;
    output.n = 2;
    output.k = 3;
    output.semantics = "literal";
    output.threads = 1;
    output.budget_nodes = r.budget_nodes;
    output.max_size = r.max_size;
    output.witness = r.witness;
    output.nodes_explored = r.nodes_explored;
    output.optimal = r.optimal;
    output.consistency = bound_consistency(3, 2, 3);
    const std::string dumped = to_json(output).dump();
    const SearchOutput back = search_output_from_json(nlohmann::json::parse(dumped));
    CHECK(back.max_size == output.max_size);
    CHECK(back.witness == output.witness);
    CHECK(back.nodes_explored == output.nodes_explored);
    CHECK(back.optimal == output.optimal);
    REQUIRE(back.consistency.has_value());
    CHECK(back.consistency->ok == output.consistency->ok);
    CHECK(back.consistency->bound_floor == output.consistency->bound_floor);
    // serialization is stable
    CHECK(to_json(back).dump() == dumped);
}

TEST_CASE("identical seeds give byte-identical verify output") {
    const auto a = to_json(verification::run_suite("chernoff", 42), 42).dump();
    const auto b = to_json(verification::run_suite("chernoff", 42), 42).dump();
    CHECK(a == b);
    const auto c = to_json(verification::run_suite("algebra", 9), 9).dump();
    const auto d = to_json(verification::run_suite("algebra", 9), 9).dump();
    CHECK(c == d);
}

TEST_CASE("csv formats") {
    SUBCASE("bound row") {
        const std::string csv = bound_csv(progression_bound(3, 3));
        CHECK(csv.find("k,q,d,m,witness_y,a_value,c_value,trivial_flag,grid_lower\n") == 0);
        CHECK(csv.find("3,3,1,3,") != std::string::npos);
    }
    SUBCASE("count row uses exact integers") {
        const std::string csv = count_csv(make_count_report(MSetSpec{1, 3, 4, 4}));
        CHECK(csv.find(",66,") != std::string::npos);
        CHECK(csv.find("e+") == std::string::npos);
    }
    SUBCASE("empty table keeps the header") {
        const std::string csv = table_csv({});
        CHECK(csv ==
              "k,q,d,m,witness_y,a_value,c_value,trivial_flag,reference_a,below_reference,error\n");
    }
    SUBCASE("table marks invalid cells per cell") {
        std::vector<TableCell> cells;
        TableCell good;
        good.k = 3;
        good.q = 3;
        good.report = progression_bound(3, 3);
        TableCell bad;
        bad.k = 3;
        bad.q = 2;
        bad.error = "q < k";
        cells.push_back(good);
        cells.push_back(bad);
        const std::string csv = table_csv(cells);
        CHECK(csv.find("true") != std::string::npos);   // below_reference for m=3
        CHECK(csv.find("q < k") != std::string::npos);  // error marker, not a dropped row
    }
}

TEST_CASE("format_double uses 15 significant digits") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
}
