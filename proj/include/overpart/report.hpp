#pragma once

// Deterministic csv / json / text serialization of verification reports and
// congruence family lists, plus parsers for the csv and json forms.

#include "overpart/congruence.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace overpart {

enum class OutputFormat { Text, Csv, Json };

inline OutputFormat parse_format(const std::string& s)
{
    if (s == "text") {
        return OutputFormat::Text;
    }
    if (s == "csv") {
        return OutputFormat::Csv;
    }
    if (s == "json") {
        return OutputFormat::Json;
    }
    throw std::invalid_argument("unknown output format '" + s + "' (expected text, csv or json)");
}

inline std::vector<CongruenceFamily> sorted_families(std::vector<CongruenceFamily> families)
{
    std::stable_sort(families.begin(), families.end(), [](const CongruenceFamily& a, const CongruenceFamily& b) {
        return std::pair(a.m, a.ell) < std::pair(b.m, b.ell);
    });
    return families;
}

inline constexpr const char* kFamilyCsvHeader = "m,ell,exponent,epsilon";

inline nlohmann::ordered_json family_to_json(const CongruenceFamily& fam)
{
    nlohmann::ordered_json j;
    j["m"] = fam.m;
    j["ell"] = fam.ell;
    j["exponent"] = fam.exponent;
    j["epsilon"] = fam.epsilon;
    j["eigenvalue"] = fam.eigenvalue;
    j["sturm_bound"] = fam.verified_bound;
    j["status"] = to_string(fam.status);
    auto checks = nlohmann::ordered_json::array();
    for (const auto& [index, residue] : fam.spot_checks) {
        checks.push_back({{"index", index}, {"residue", residue}});
    }
    j["spot_checks"] = checks;
    j["cache_hash"] = fam.cache_hash ? nlohmann::ordered_json(*fam.cache_hash) : nlohmann::ordered_json(nullptr);
    return j;
}

inline FamilyStatus parse_status(const std::string& s)
{
    for (auto st : {FamilyStatus::Arithmetic, FamilyStatus::Verified, FamilyStatus::Candidate, FamilyStatus::Failed}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    throw std::invalid_argument("unknown family status '" + s + "'");
}

inline CongruenceFamily family_from_json(const nlohmann::ordered_json& j)
{
    CongruenceFamily fam;
    fam.m = j.at("m").get<std::uint32_t>();
    fam.ell = j.at("ell").get<std::uint64_t>();
    fam.exponent = j.at("exponent").get<int>();
    fam.epsilon = j.at("epsilon").get<int>();
    fam.eigenvalue = j.value("eigenvalue", std::uint64_t{0});
    fam.verified_bound = j.value("sturm_bound", std::uint64_t{0});
    if (j.contains("status")) {
        fam.status = parse_status(j.at("status").get<std::string>());
    }
    if (j.contains("spot_checks")) {
        for (const auto& c : j.at("spot_checks")) {
            fam.spot_checks.emplace_back(c.at("index").get<std::uint64_t>(), c.at("residue").get<std::uint64_t>());
        }
    }
    if (j.contains("cache_hash") && !j.at("cache_hash").is_null()) {
        fam.cache_hash = j.at("cache_hash").get<std::string>();
    }
    return fam;
}

inline void emit_families(std::ostream& os, const std::vector<CongruenceFamily>& families, OutputFormat format)
{
    const auto sorted = sorted_families(families);
    switch (format) {
    case OutputFormat::Csv:
        os << kFamilyCsvHeader << '\n';
        for (const auto& f : sorted) {
            os << f.m << ',' << f.ell << ',' << f.exponent << ',' << f.epsilon << '\n';
        }
        break;
    case OutputFormat::Json: {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& f : sorted) {
            arr.push_back(family_to_json(f));
        }
        os << arr.dump(2) << '\n';
        break;
    }
    case OutputFormat::Text:
        for (const auto& f : sorted) {
            os << "m=" << f.m << " l=" << f.ell << " exponent=" << f.exponent << " epsilon=" << f.epsilon
               << " eigenvalue=" << f.eigenvalue << " status=" << to_string(f.status);
            if (!f.spot_checks.empty()) {
                os << " spot_checks=" << f.spot_checks.size();
            }
            os << '\n';
        }
        break;
    }
}

inline std::vector<CongruenceFamily> parse_families_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kFamilyCsvHeader) {
        throw std::invalid_argument("family csv: missing header '" + std::string(kFamilyCsvHeader) + "'");
    }
    std::vector<CongruenceFamily> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 4) {
            throw std::invalid_argument("family csv: expected 4 fields in '" + line + "'");
        }
        CongruenceFamily fam;
        fam.m = static_cast<std::uint32_t>(std::stoul(cells[0]));
        fam.ell = std::stoull(cells[1]);
        fam.exponent = std::stoi(cells[2]);
        fam.epsilon = std::stoi(cells[3]);
        out.push_back(fam);
    }
    return out;
}

inline std::vector<CongruenceFamily> parse_families_json(const std::string& text)
{
    const auto arr = nlohmann::ordered_json::parse(text);
    if (!arr.is_array()) {
        throw std::invalid_argument("family json: expected an array");
    }
    std::vector<CongruenceFamily> out;
    for (const auto& j : arr) {
        out.push_back(family_from_json(j));
    }
    return out;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r)
{
    nlohmann::ordered_json j;
    j["subject"] = r.subject;
    j["status"] = r.pass ? "pass" : "fail";
    j["range"] = {r.lo, r.hi};
    j["modulus"] = r.modulus;
    j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
    j["detail"] = r.detail;
    return j;
}

inline void emit_reports(std::ostream& os, const std::vector<VerificationReport>& reports, OutputFormat format)
{
    switch (format) {
    case OutputFormat::Csv:
        os << "subject,status,lo,hi,modulus,witness\n";
        for (const auto& r : reports) {
            os << '"' << r.subject << "\"," << (r.pass ? "pass" : "fail") << ',' << r.lo << ',' << r.hi << ','
               << r.modulus << ',' << (r.witness ? std::to_string(*r.witness) : "") << '\n';
        }
        break;
    case OutputFormat::Json: {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            arr.push_back(report_to_json(r));
        }
        os << arr.dump(2) << '\n';
        break;
    }
    case OutputFormat::Text:
        for (const auto& r : reports) {
            os << (r.pass ? "PASS " : "FAIL ") << r.subject << " [n = " << r.lo << ".." << r.hi << "]";
            if (r.witness) {
                os << " witness n = " << *r.witness;
            }
            if (!r.detail.empty()) {
                os << " (" << r.detail << ")";
            }
            os << '\n';
        }
        break;
    }
}

}  // namespace overpart
