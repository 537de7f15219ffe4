#pragma once

// Command-line front end: expansions, verifications and family searches with
// text / csv / json output. Exit status 0 = all pass, 1 = a check failed,
// 2 = usage error.

#include "overpart/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace overpart::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    std::string cache_dir;
    std::uint64_t index_cap = kDefaultIndexCap;
    std::string format = "text";
    std::string hm_config;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads {"<m>": [[a, b, coefficient], ...], ...} giving h_m = sum coefficient D2^a E4^b.
inline std::map<std::uint32_t, std::vector<Monomial>> load_hm_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open h_m config '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed h_m config '" + path + "': " + e.what());
    }
    std::map<std::uint32_t, std::vector<Monomial>> out;
    try {
        for (const auto& [key, terms] : j.items()) {
            std::vector<Monomial> h;
            for (const auto& t : terms) {
                if (!t.is_array() || t.size() != 3) {
                    throw UsageError("h_m config: each term must be [a, b, coefficient]");
                }
                const Integer c(t[2].is_string() ? t[2].get<std::string>() : std::to_string(t[2].get<long long>()));
                h.push_back({t[0].get<unsigned>(), t[1].get<unsigned>(), c});
            }
            out[static_cast<std::uint32_t>(std::stoul(key))] = std::move(h);
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed h_m config '" + path + "': " + e.what());
    }
    return out;
}

class Runner {
public:
    Runner(CliConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

    [[nodiscard]] OutputFormat format() const { return parse_format(cfg_.format); }

    ResidueStore& store()
    {
        if (!store_) {
            std::optional<std::filesystem::path> dir;
            if (!cfg_.cache_dir.empty()) {
                dir = cfg_.cache_dir;
                std::error_code ec;
                std::filesystem::create_directories(*dir, ec);
                if (ec || !std::filesystem::is_directory(*dir)) {
                    throw UsageError("cache directory '" + cfg_.cache_dir + "' is not usable");
                }
            }
            store_.emplace(dir, cfg_.index_cap);
        }
        return *store_;
    }

    PrimeParams params(std::uint32_t m)
    {
        if (!cfg_.hm_config.empty()) {
            const auto table = load_hm_config(cfg_.hm_config);
            if (const auto it = table.find(m); it != table.end()) {
                return prime_params(m, it->second);
            }
        }
        if (!builtin_hm_table().contains(m)) {
            throw UsageError("no h_m for m = " + std::to_string(m) + "; supply one with --hm-config");
        }
        return prime_params(m);
    }

    int overpartition(std::uint64_t n, std::optional<std::uint64_t> mod)
    {
        if (n == 0) {
            throw UsageError("--n must be positive");
        }
        std::vector<std::string> values;
        if (mod) {
            if (*mod < 2) {
                throw UsageError("--mod must be at least 2");
            }
            const auto s = overpartition_series(n, ModRing(*mod), cfg_.index_cap);
            for (std::size_t i = 0; i < n; ++i) {
                values.push_back(std::to_string(s[i]));
            }
        } else {
            detail::check_cap(n, cfg_.index_cap);
            const auto s = overpartition_series(n);
            for (std::size_t i = 0; i < n; ++i) {
                values.push_back(s[i].get_str());
            }
        }
        emit_indexed(values, mod ? "residue" : "value");
        return kExitPass;
    }

    int eta(const std::string& spec, std::size_t terms)
    {
        EtaQuotient x;
        try {
            x = parse_eta_quotient(spec);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const auto meta = eta_quotient_metadata(x);
        std::vector<std::string> coeffs;
        std::string expansion_error;
        try {
            const auto s = eta_quotient_series(x, terms, IntegerRing{});
            for (std::size_t i = 0; i < terms; ++i) {
                coeffs.push_back(s[i].get_str());
            }
        } catch (const std::domain_error& e) {
            expansion_error = e.what();
        }
        std::vector<std::pair<std::uint64_t, std::string>> orders;
        for (std::uint64_t c : cusp_denominators(meta.level)) {
            orders.emplace_back(c, ligozat_order(x, c, meta.level).get_str());
        }
        const std::string weight = meta.weight_times_2 % 2 == 0 ? std::to_string(meta.weight_times_2 / 2)
                                                                : std::to_string(meta.weight_times_2) + "/2";
        switch (format()) {
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["spec"] = to_string(x);
            j["weight"] = weight;
            j["level"] = meta.level;
            j["character_m"] = meta.character_m.get_str();
            auto cusps = nlohmann::ordered_json::array();
            for (const auto& [c, o] : orders) {
                cusps.push_back({{"c", c}, {"order", o}});
            }
            j["cusp_orders"] = cusps;
            j["coefficients"] = coeffs;
            if (!expansion_error.empty()) {
                j["error"] = expansion_error;
            }
            out_ << j.dump(2) << '\n';
            break;
        }
        case OutputFormat::Csv:
            out_ << "n,coefficient\n";
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                out_ << i << ',' << coeffs[i] << '\n';
            }
            break;
        case OutputFormat::Text:
            out_ << "eta-quotient " << to_string(x) << ": weight " << weight << ", level " << meta.level
                 << ", character chi_" << meta.character_m.get_str() << '\n';
            out_ << "cusp orders:";
            for (const auto& [c, o] : orders) {
                out_ << " c=" << c << ':' << o;
            }
            out_ << '\n';
            if (expansion_error.empty()) {
                out_ << "expansion:";
                for (const auto& c : coeffs) {
                    out_ << ' ' << c;
                }
                out_ << '\n';
            }
            break;
        }
        if (!expansion_error.empty()) {
            err_ << expansion_error << '\n';
            return kExitUsage;
        }
        return kExitPass;
    }

    int eisenstein(int k, int N, bool primed, std::size_t terms)
    {
        EisSpec spec{k, N, primed, {}};
        try {
            validate(spec);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const auto s = eis_series(spec, terms);
        std::vector<std::string> values;
        for (std::size_t i = 0; i < terms; ++i) {
            values.push_back(s[i].get_str());
        }
        emit_indexed(values, "coefficient");
        return kExitPass;
    }

    int verify_gm(std::optional<std::uint32_t> m)
    {
        std::vector<std::uint32_t> ms;
        if (m) {
            ms.push_back(*m);
        } else {
            for (const auto& [mm, h] : builtin_hm_table()) {
                ms.push_back(mm);
            }
        }
        std::vector<VerificationReport> reports;
        for (auto mm : ms) {
            reports.push_back(verify_gm_congruence(params(mm), store()));
        }
        return finish(reports);
    }

    int verify_g11() { return finish({overpart::verify_g11()}); }

    int search(std::uint32_t m, const SearchOptions& opt)
    {
        const auto families = search_families(m, opt, store());
        emit_families(out_, families, format());
        for (const auto& f : families) {
            if (f.status == FamilyStatus::Failed) {
                return kExitFail;
            }
        }
        return kExitPass;
    }

    int spotcheck(std::uint32_t m, std::uint64_t ell, int exponent, int eps, std::size_t count)
    {
        CongruenceFamily fam;
        fam.m = m;
        fam.ell = ell;
        fam.exponent = exponent;
        fam.epsilon = eps;
        if (!is_prime(ell) || ell == 2 || ell == m) {
            throw UsageError("--ell must be an odd prime different from m");
        }
        if ((exponent == 3) != (eps == 0)) {
            throw UsageError("exponent 3 needs --eps 0; exponent 2 needs --eps 1 or -1");
        }
        return finish({verify_family_spotcheck(fam, admissible_n(fam, count), store())});
    }

    int sturm(std::uint64_t k, std::uint64_t level)
    {
        const auto b = sturm_bound({k, level});
        switch (format()) {
        case OutputFormat::Json:
            out_ << nlohmann::ordered_json{{"k", k}, {"level", level}, {"sturm_bound", b}}.dump() << '\n';
            break;
        case OutputFormat::Csv:
            out_ << "k,level,sturm_bound\n" << k << ',' << level << ',' << b << '\n';
            break;
        case OutputFormat::Text:
            out_ << b << '\n';
            break;
        }
        return kExitPass;
    }

private:
    int finish(const std::vector<VerificationReport>& reports)
    {
        emit_reports(out_, reports, format());
        for (const auto& r : reports) {
            if (!r.pass) {
                return kExitFail;
            }
        }
        return kExitPass;
    }

    void emit_indexed(const std::vector<std::string>& values, const std::string& name)
    {
        switch (format()) {
        case OutputFormat::Json: {
            auto arr = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < values.size(); ++i) {
                arr.push_back({{"n", i}, {name, values[i]}});
            }
            out_ << arr.dump(2) << '\n';
            break;
        }
        case OutputFormat::Csv:
            out_ << "n," << name << '\n';
            for (std::size_t i = 0; i < values.size(); ++i) {
                out_ << i << ',' << values[i] << '\n';
            }
            break;
        case OutputFormat::Text:
            for (std::size_t i = 0; i < values.size(); ++i) {
                out_ << i << ' ' << values[i] << '\n';
            }
            break;
        }
    }

    CliConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<ResidueStore> store_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"overpart: overpartition congruences via modular forms"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--cache-dir", cfg.cache_dir, "Directory for overpartition residue caches")
        ->envname("OVERPART_CACHE_DIR");
    app.add_option("--index-cap", cfg.index_cap, "Largest overpartition index any build may reach")
        ->check(CLI::Range(std::uint64_t{10'000}, std::numeric_limits<std::uint64_t>::max()));
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--hm-config", cfg.hm_config, "JSON file of extra h_m forms")->check(CLI::ExistingFile);

    std::uint64_t op_n = 0;
    std::optional<std::uint64_t> op_mod;
    auto* op = app.add_subcommand("overpartition", "pbar(0..N-1), exact or mod m");
    op->add_option("--n", op_n, "Number of terms")->required();
    op->add_option("--mod", op_mod, "Modulus");

    std::string eta_spec;
    std::size_t eta_terms = 10;
    auto* eta = app.add_subcommand("eta", "Eta-quotient expansion, metadata and cusp orders");
    eta->add_option("--spec", eta_spec, "delta:r,delta:r,...")->required();
    eta->add_option("--terms", eta_terms, "Number of terms")->check(CLI::PositiveNumber);

    int eis_k = 3;
    int eis_N = 4;
    bool eis_primed = false;
    std::size_t eis_terms = 10;
    auto* eis = app.add_subcommand("eisenstein", "Coefficients of E_{k,N} or E'_{k,N}");
    eis->add_option("--k", eis_k, "Odd weight numerator k >= 3")->required();
    eis->add_option("--N", eis_N, "Level 4 or 8")->required()->check(CLI::IsMember({4, 8}));
    eis->add_flag("--primed", eis_primed, "E' instead of E");
    eis->add_option("--terms", eis_terms, "Number of terms")->check(CLI::PositiveNumber);

    std::optional<std::uint32_t> gm_m;
    auto* vgm = app.add_subcommand("verify-gm", "Certify f|U(m) = F^{a_m} h_m (mod m) to the Sturm bound");
    vgm->add_option("--m", gm_m, "Prime m (all built-in primes when omitted)");

    auto* vg11 = app.add_subcommand("verify-g11", "Check the stated Eisenstein combination for g_11 mod 11");

    std::uint32_t s_m = 3;
    SearchOptions s_opt;
    auto* search = app.add_subcommand("search", "Congruence families for m over primes l <= lmax");
    search->add_option("--m", s_m, "Prime m")->required();
    search->add_option("--lmax", s_opt.lmax, "Largest l")->check(CLI::PositiveNumber);
    search->add_flag("--verify", s_opt.verify, "Confirm eigenforms and spot-check coefficients within the index cap");
    search->add_flag("--observed", s_opt.observed,
                     "m >= 13: classify eigenvalues read from overpartition residues for every l within the cap");
    search->add_option("--spot-count", s_opt.spot_count, "Admissible n per family to spot-check");

    std::uint32_t sc_m = 3;
    std::uint64_t sc_ell = 5;
    int sc_exp = 3;
    int sc_eps = 0;
    std::size_t sc_count = 5;
    auto* spot = app.add_subcommand("spotcheck", "Check pbar(m l^e n) = 0 (mod m) for the first admissible n");
    spot->add_option("--m", sc_m, "Prime m")->required();
    spot->add_option("--ell", sc_ell, "Prime l")->required();
    spot->add_option("--exp", sc_exp, "Exponent 2 or 3")->required()->check(CLI::IsMember({2, 3}));
    spot->add_option("--eps", sc_eps, "Kronecker class for exponent 2")->check(CLI::IsMember({-1, 0, 1}));
    spot->add_option("--count", sc_count, "Number of admissible n")->required()->check(CLI::PositiveNumber);

    std::uint64_t st_k = 1;
    std::uint64_t st_level = 1;
    auto* sturm = app.add_subcommand("sturm", "Sturm bound for weight k/2 on Gamma_0(N)");
    sturm->add_option("--k", st_k, "Weight numerator (weight k/2)")->required()->check(CLI::PositiveNumber);
    sturm->add_option("--level", st_level, "Level N")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    Runner runner(cfg, out, err);
    try {
        if (*op) {
            return runner.overpartition(op_n, op_mod);
        }
        if (*eta) {
            return runner.eta(eta_spec, eta_terms);
        }
        if (*eis) {
            return runner.eisenstein(eis_k, eis_N, eis_primed, eis_terms);
        }
        if (*vgm) {
            return runner.verify_gm(gm_m);
        }
        if (*vg11) {
            return runner.verify_g11();
        }
        if (*search) {
            if (!is_prime(s_m) || s_m == 2) {
                throw UsageError("--m must be an odd prime");
            }
            return runner.search(s_m, s_opt);
        }
        if (*spot) {
            return runner.spotcheck(sc_m, sc_ell, sc_exp, sc_eps, sc_count);
        }
        if (*sturm) {
            return runner.sturm(st_k, st_level);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitFail;
    } catch (const CacheFormatError& e) {
        err << "cache error: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace overpart::cli
