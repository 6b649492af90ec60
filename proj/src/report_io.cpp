#include "progfree/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace progfree {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

CountReport make_count_report(const MSetSpec& spec) {
    CountReport report;
    report.alpha_num = spec.alpha_num;
    report.alpha_den = spec.alpha_den;
    report.q = spec.q;
    report.n = spec.n;
    report.size = m_set_size(spec);
    const ComplementCheck check = complement_identity_check(spec);
    report.complement_size = check.complement_size;
    report.mirror_size = check.mirror_size;
    report.identity_holds = check.holds;
    report.boundary_integral = check.boundary_integral;
    return report;
}

json to_json(const BoundReport& report) {
    return json{{"k", report.k},
                {"q", report.q},
                {"d", report.d},
                {"m", report.m},
                {"witness_y", report.witness_y},
                {"a_value", report.a_value},
                {"c_value", report.c_value},
                {"trivial_flag", report.trivial},
                {"grid_lower", report.grid_lower}};
}

BoundReport bound_report_from_json(const json& j) {
    BoundReport report;
    report.k = j.at("k").get<int>();
    report.q = j.at("q").get<int>();
    report.d = j.at("d").get<int>();
    report.m = j.at("m").get<int>();
    report.witness_y = j.at("witness_y").get<double>();
    report.a_value = j.at("a_value").get<double>();
    report.c_value = j.at("c_value").get<double>();
    report.trivial = j.at("trivial_flag").get<bool>();
    report.grid_lower = j.at("grid_lower").get<double>();
    return report;
}

json to_json(const CountReport& report) {
    return json{{"alpha", std::to_string(report.alpha_num) + "/" + std::to_string(report.alpha_den)},
                {"q", report.q},
                {"n", report.n},
                {"size", report.size.str()},
                {"complement_size", report.complement_size.str()},
                {"mirror_size", report.mirror_size.str()},
                {"identity_holds", report.identity_holds},
                {"boundary_integral", report.boundary_integral}};
}

CountReport count_report_from_json(const json& j) {
    CountReport report;
    const Rational alpha = parse_rational(j.at("alpha").get<std::string>());
    report.alpha_num = alpha.numerator();
    report.alpha_den = alpha.denominator();
    report.q = j.at("q").get<int>();
    report.n = j.at("n").get<int>();
    report.size = BigInt(j.at("size").get<std::string>());
    report.complement_size = BigInt(j.at("complement_size").get<std::string>());
    report.mirror_size = BigInt(j.at("mirror_size").get<std::string>());
    report.identity_holds = j.at("identity_holds").get<bool>();
    report.boundary_integral = j.at("boundary_integral").get<bool>();
    return report;
}

json to_json(const BoundConsistency& report) {
    json reductions = json::array();
    for (const auto& entry : report.reductions)
        reductions.push_back(json{{"divisor", entry.divisor},
                                  {"sub_max", entry.sub_max},
                                  {"rhs", entry.rhs.str()},
                                  {"holds", entry.holds}});
    json j{{"q", report.q},
           {"n", report.n},
           {"k", report.k},
           {"max_size", report.max_size},
           {"theorem_applicable", report.theorem_applicable},
           {"reductions", reductions},
           {"reductions_hold", report.reductions_hold},
           {"ok", report.ok}};
    if (report.theorem_applicable) {
        j["c_value"] = report.c_value;
        j["bound_floor"] = report.bound_floor.str();
        j["theorem_holds"] = report.theorem_holds;
    }
    return j;
}

namespace {

BoundConsistency consistency_from_json(const json& j) {
    BoundConsistency report;
    report.q = j.at("q").get<int>();
    report.n = j.at("n").get<int>();
    report.k = j.at("k").get<int>();
    report.max_size = j.at("max_size").get<int>();
    report.theorem_applicable = j.at("theorem_applicable").get<bool>();
    if (report.theorem_applicable) {
        report.c_value = j.at("c_value").get<double>();
        report.bound_floor = BigInt(j.at("bound_floor").get<std::string>());
        report.theorem_holds = j.at("theorem_holds").get<bool>();
    }
    for (const auto& e : j.at("reductions")) {
        ReductionEntry entry;
        entry.divisor = e.at("divisor").get<int>();
        entry.sub_max = e.at("sub_max").get<int>();
        entry.rhs = BigInt(e.at("rhs").get<std::string>());
        entry.holds = e.at("holds").get<bool>();
        report.reductions.push_back(std::move(entry));
    }
    report.reductions_hold = j.at("reductions_hold").get<bool>();
    report.ok = j.at("ok").get<bool>();
    return report;
}

}  // namespace

json to_json(const SearchOutput& output) {
    json witness = json::array();
    for (const ExpVec& p : output.witness) witness.push_back(p);
    json j{{"q", output.q},
           {"n", output.n},
           {"k", output.k},
           {"semantics", output.semantics},
           {"threads", output.threads},
           {"budget_nodes", output.budget_nodes},
           {"max_size", output.max_size},
           {"witness", witness},
           {"nodes_explored", output.nodes_explored},
           {"optimal", output.optimal}};
    if (output.consistency) j["consistency"] = to_json(*output.consistency);
    return j;
}

SearchOutput search_output_from_json(const json& j) {
    SearchOutput output;
    output.q = j.at("q").get<int>();
    output.n = j.at("n").get<int>();
    output.k = j.at("k").get<int>();
    output.semantics = j.at("semantics").get<std::string>();
    output.threads = j.at("threads").get<int>();
    output.budget_nodes = j.at("budget_nodes").get<std::uint64_t>();
    output.max_size = j.at("max_size").get<int>();
    for (const auto& p : j.at("witness")) output.witness.push_back(p.get<ExpVec>());
    output.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
    output.optimal = j.at("optimal").get<bool>();
    if (j.contains("consistency")) output.consistency = consistency_from_json(j.at("consistency"));
    return output;
}

json to_json(const GeneralBoundReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back(json{{"divisor", e.divisor},
                               {"a_value", e.a_value},
                               {"constant", e.constant},
                               {"n_below_k", e.n_below_k}});
    return json{{"k", report.k},
                {"q", report.q},
                {"entries", entries},
                {"best_divisor", report.best_divisor},
                {"best_constant", report.best_constant},
                {"any_n_below_k", report.any_n_below_k}};
}

json to_json(const std::vector<verification::SuiteReport>& reports, std::uint64_t seed) {
    json suites = json::array();
    bool all = true;
    for (const auto& suite : reports) {
        json checks = json::array();
        for (const auto& c : suite.checks) {
            checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            all = all && c.passed;
        }
        suites.push_back(json{{"suite", suite.suite}, {"checks", checks}});
    }
    return json{{"seed", seed}, {"suites", suites}, {"all_passed", all}};
}

namespace {

// minimal CSV quoting: quote only when the value contains , " or newline
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string witness_field(const std::vector<ExpVec>& witness) {
    std::string s;
    for (size_t i = 0; i < witness.size(); ++i) {
        if (i) s += ";";
        for (size_t j = 0; j < witness[i].size(); ++j) {
            if (j) s += " ";
            s += std::to_string(witness[i][j]);
        }
    }
    return s;
}

std::optional<double> reference_for(int m) {
    for (const auto& [value, bound] : reference_a_bounds())
        if (value == m) return bound;
    return std::nullopt;
}

}  // namespace

std::string bound_csv(const BoundReport& report) {
    std::ostringstream out;
    out << "k,q,d,m,witness_y,a_value,c_value,trivial_flag,grid_lower\n";
    out << report.k << ',' << report.q << ',' << report.d << ',' << report.m << ','
        << format_double(report.witness_y) << ',' << format_double(report.a_value) << ','
        << format_double(report.c_value) << ',' << (report.trivial ? "true" : "false") << ','
        << format_double(report.grid_lower) << '\n';
    return out.str();
}

std::string count_csv(const CountReport& report) {
    std::ostringstream out;
    out << "alpha,q,n,size,complement_size,mirror_size,identity_holds,boundary_integral\n";
    out << report.alpha_num << '/' << report.alpha_den << ',' << report.q << ',' << report.n << ','
        << report.size.str() << ',' << report.complement_size.str() << ','
        << report.mirror_size.str() << ',' << (report.identity_holds ? "true" : "false") << ','
        << (report.boundary_integral ? "true" : "false") << '\n';
    return out.str();
}

std::string search_csv(const SearchOutput& output) {
    std::ostringstream out;
    out << "q,n,k,semantics,threads,max_size,nodes_explored,optimal,witness\n";
    out << output.q << ',' << output.n << ',' << output.k << ',' << output.semantics << ','
        << output.threads << ',' << output.max_size << ',' << output.nodes_explored << ','
        << (output.optimal ? "true" : "false") << ',' << csv_field(witness_field(output.witness))
        << '\n';
    return out.str();
}

std::string verify_csv(const std::vector<verification::SuiteReport>& reports) {
    std::ostringstream out;
    out << "suite,check,passed,detail\n";
    for (const auto& suite : reports)
        for (const auto& c : suite.checks)
            out << csv_field(suite.suite) << ',' << csv_field(c.name) << ','
                << (c.passed ? "true" : "false") << ',' << csv_field(c.detail) << '\n';
    return out.str();
}

std::string table_csv(const std::vector<TableCell>& cells) {
    std::ostringstream out;
    out << "k,q,d,m,witness_y,a_value,c_value,trivial_flag,reference_a,below_reference,error\n";
    for (const TableCell& cell : cells) {
        if (!cell.report) {
            out << cell.k << ',' << cell.q << ",,,,,,,,," << csv_field(cell.error) << '\n';
            continue;
        }
        const BoundReport& r = *cell.report;
        out << r.k << ',' << r.q << ',' << r.d << ',' << r.m << ','
            << format_double(r.witness_y) << ',' << format_double(r.a_value) << ','
            << format_double(r.c_value) << ',' << (r.trivial ? "true" : "false") << ',';
        if (const auto ref = reference_for(r.m)) {
            out << format_double(*ref) << ','
                << (below_with_ulps(r.a_value, *ref) ? "true" : "false");
        } else {
            out << ',';
        }
        out << ",\n";
    }
    return out.str();
}

json table_json(const std::vector<TableCell>& cells) {
    json rows = json::array();
    for (const TableCell& cell : cells) {
        if (!cell.report) {
            rows.push_back(json{{"k", cell.k}, {"q", cell.q}, {"error", cell.error}});
            continue;
        }
        json row = to_json(*cell.report);
        if (const auto ref = reference_for(cell.report->m)) {
            row["reference_a"] = *ref;
            row["below_reference"] = below_with_ulps(cell.report->a_value, *ref);
        }
        rows.push_back(std::move(row));
    }
    return json{{"rows", rows}};
}

std::string bound_text(const BoundReport& report) {
    std::ostringstream out;
    out << "k = " << report.k << ", q = " << report.q << "\n"
        << "d = gcd(lcm(2.." << report.k - 1 << "), q) = " << report.d << ", m = q/d = "
        << report.m << (report.trivial ? "  [trivial: ratio identically 1]" : "") << "\n"
        << "witness y* = " << format_double(report.witness_y) << "\n"
        << "A(m) <= " << format_double(report.a_value)
        << "   (grid lower estimate " << format_double(report.grid_lower) << ")\n"
        << "c_" << report.k << "(" << report.q << ") = q * A(m) <= "
        << format_double(report.c_value) << "\n";
    return out.str();
}

std::string count_text(const CountReport& report) {
    std::ostringstream out;
    out << "alpha = " << report.alpha_num << "/" << report.alpha_den << ", q = " << report.q
        << ", n = " << report.n << "\n"
        << "|M_alpha| = " << report.size.str() << "\n"
        << "|complement| = " << report.complement_size.str() << "\n"
        << "|M_{1-alpha}| = " << report.mirror_size.str() << "\n"
        << "identity |complement| == |M_{1-alpha}|: " << (report.identity_holds ? "holds" : "fails")
        << (report.boundary_integral ? "  (threshold integral: boundary shell may differ)" : "")
        << "\n";
    return out.str();
}

std::string search_text(const SearchOutput& output) {
    std::ostringstream out;
    out << "r_" << output.k << "(Z_" << output.q << "^" << output.n << ") ["
        << output.semantics << "] = " << output.max_size
        << (output.optimal ? "  (optimal, tree exhausted)" : "  (budget exhausted, lower bound)")
        << "\n"
        << "nodes explored: " << output.nodes_explored << "\n"
        << "witness: " << witness_field(output.witness) << "\n";
    if (output.consistency) {
        const BoundConsistency& c = *output.consistency;
        if (c.theorem_applicable)
            out << "bound check: " << output.max_size << " <= floor(c^n) = "
                << c.bound_floor.str() << " with c = " << format_double(c.c_value) << ": "
                << (c.theorem_holds ? "holds" : "FAILS") << "\n";
        for (const auto& entry : c.reductions)
            out << "reduction via N=" << entry.divisor << ": " << output.max_size
                << " <= (q/N)^n * r_k(Z_N^n) = " << entry.rhs.str() << ": "
                << (entry.holds ? "holds" : "FAILS") << "\n";
    }
    return out.str();
}

std::string verify_text(const std::vector<verification::SuiteReport>& reports) {
    std::ostringstream out;
    bool all = true;
    for (const auto& suite : reports) {
        for (const auto& c : suite.checks) {
            out << (c.passed ? "PASS" : "FAIL") << "  [" << suite.suite << "] " << c.name;
            if (!c.detail.empty()) out << "  -- " << c.detail;
            out << "\n";
            all = all && c.passed;
        }
    }
    out << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return out.str();
}

}  // namespace progfree
