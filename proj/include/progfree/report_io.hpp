#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "progfree/bound.hpp"
#include "progfree/lattice.hpp"
#include "progfree/search.hpp"
#include "progfree/verification.hpp"

namespace progfree {

/// 15 significant digits, plain decimal/exponent form.
std::string format_double(double value);

struct CountReport {
    long long alpha_num = 0;
    long long alpha_den = 1;
    int q = 0;
    int n = 0;
    BigInt size;
    BigInt complement_size;
    BigInt mirror_size;  // |M_{1-alpha}|
    bool identity_holds = false;
    bool boundary_integral = false;
};

CountReport make_count_report(const MSetSpec& spec);

struct SearchOutput {
    int q = 0, n = 0, k = 0;
    std::string semantics;
    int threads = 1;
    std::uint64_t budget_nodes = UINT64_MAX;
    int max_size = 0;
    std::vector<ExpVec> witness;
    std::uint64_t nodes_explored = 0;
    bool optimal = false;
    std::optional<BoundConsistency> consistency;
};

// JSON (machine-readable; deterministic key order, exact integers as strings)
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const CountReport& report);
nlohmann::json to_json(const BoundConsistency& report);
nlohmann::json to_json(const SearchOutput& output);
nlohmann::json to_json(const GeneralBoundReport& report);
nlohmann::json to_json(const std::vector<verification::SuiteReport>& reports,
                       std::uint64_t seed);

// Round-trip parsers for the emitting record types.
BoundReport bound_report_from_json(const nlohmann::json& j);
CountReport count_report_from_json(const nlohmann::json& j);
SearchOutput search_output_from_json(const nlohmann::json& j);

// CSV (exact integers unquoted, reals with 15 significant digits)
std::string bound_csv(const BoundReport& report);
std::string count_csv(const CountReport& report);
std::string search_csv(const SearchOutput& output);
std::string verify_csv(const std::vector<verification::SuiteReport>& reports);

/// One c_k(q) table cell: either a bound report or a per-cell error marker.
struct TableCell {
    int k = 0, q = 0;
    std::optional<BoundReport> report;
    std::string error;  // nonempty iff the cell failed its preconditions
};

std::string table_csv(const std::vector<TableCell>& cells);
nlohmann::json table_json(const std::vector<TableCell>& cells);

// text renderings
std::string bound_text(const BoundReport& report);
std::string count_text(const CountReport& report);
std::string search_text(const SearchOutput& output);
std::string verify_text(const std::vector<verification::SuiteReport>& reports);

}  // namespace progfree
