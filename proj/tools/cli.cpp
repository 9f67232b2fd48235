#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "subcrit/analytic.hpp"
#include "subcrit/blocks.hpp"
#include "subcrit/composition.hpp"
#include "subcrit/graph_oracle.hpp"
#include "subcrit/series_json.hpp"
#include "subcrit/tables.hpp"
#include "subcrit/trees.hpp"

namespace subcrit::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    unsigned k = 1;
    int n_max = 6;
    std::size_t trunc = 200;
    double tol = 1e-10;
    double drift_tol = 1e-6;
    unsigned jobs = 1;
    std::string format = "csv";
    std::string out;
    std::string name;
    std::string tail = "upper";
    int n_oracle = 6;
    std::size_t n_min = 1;
    std::size_t step = 1;
};

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// A positive number given by its natural log, in scientific notation with 12 significant digits.
std::string fmt_from_log(double lg) {
    if (std::isinf(lg) && lg < 0) return "0";
    const double e10 = lg / std::log(10.0);
    auto exponent = static_cast<long>(std::floor(e10));
    double mantissa = std::pow(10.0, e10 - static_cast<double>(exponent));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11f", mantissa);
    if (std::string(buf) == "10.00000000000") {
        mantissa /= 10;
        ++exponent;
        std::snprintf(buf, sizeof buf, "%.11f", mantissa);
    }
    return std::string(buf) + "e" + (exponent < 0 ? "-" : "+") + std::to_string(std::labs(exponent));
}

json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(fmt(x));
}

json big(const BigInt& v) { return v.get_str(); }

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
        return s;
    }
    return v.dump();
}

// Key/value record rendered as a JSON object or a two-column CSV.
std::string render_record(const json& rec, const std::string& format) {
    if (format == "json") return rec.dump(2) + "\n";
    std::string s = "key,value\n";
    for (const auto& [key, value] : rec.items())
        if (!value.is_object() && !(value.is_array() && !value.empty() && value[0].is_object()))
            s += key + "," + csv_cell(value) + "\n";
    return s;
}

// Rows rendered as CSV with a header or as a JSON array of objects.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows,
                         const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
    s << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_cell(row[i]);
        s << "\n";
    }
    return s.str();
}

void emit(const std::string& text, const RunConfig& cfg, const std::string& default_name, std::ostream& out,
          std::ostream& err) {
    std::filesystem::path path;
    if (!cfg.out.empty()) {
        path = cfg.out;
    } else if (const char* dir = std::getenv("SUBCRIT_OUTPUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        path = std::filesystem::path(dir) / default_name;
    } else {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
    err << "wrote " << path.string() << "\n";
}

std::string ext(const RunConfig& cfg) { return cfg.format == "json" ? "json" : "csv"; }
std::string k_tag(const RunConfig& cfg) { return "_k" + std::to_string(cfg.k); }

void require_oracle_range(int n, const char* what) {
    if (n > kMaxOracleVertices)
        throw UsageError(std::string(what) + " must be <= 8: exhaustive enumeration beyond 8 vertices is out of reach");
    if (n < 1) throw UsageError(std::string(what) + " must be >= 1");
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kSeriesNames = {"T", "t", "f", "T_biv", "t_biv", "f_biv", "Uk", "Lk", "Lk_corr"};

std::string cmd_series(const RunConfig& cfg) {
    const std::size_t N = cfg.trunc;
    if (N < 1) throw UsageError("--trunc must be >= 1");
    const bool bivariate = cfg.name.ends_with("_biv");
    if (cfg.name.starts_with("L") || cfg.name == "Uk") {
        if (cfg.k < 1) throw UsageError("--k must be >= 1 for " + cfg.name);
        if (N < cfg.k + 1) throw UsageError("--trunc must be >= k + 1 for " + cfg.name);
    }

    TruncatedEGF a;
    BivariateEGF b;
    if (bivariate || cfg.name == "T" || cfg.name == "t" || cfg.name == "f") {
        const TreeSeriesBundle bundle = build_tree_bundle(N, bivariate ? N : std::min<std::size_t>(N, 20));
        if (cfg.name == "T") a = bundle.T;
        else if (cfg.name == "t") a = bundle.t;
        else if (cfg.name == "f") a = bundle.f;
        else if (cfg.name == "T_biv") b = bundle.T_biv;
        else if (cfg.name == "t_biv") b = bundle.t_biv;
        else b = bundle.f_biv;
    } else if (cfg.name == "Uk") {
        a = upper_series(cfg.k, N);
    } else if (cfg.name == "Lk") {
        a = lower_series(cfg.k, N);
    } else if (cfg.name == "Lk_corr") {
        a = lower_correction_series(cfg.k, N);
    } else {
        throw UsageError("unknown series name: " + cfg.name);
    }

    if (cfg.format == "json") return (bivariate ? to_json(b) : to_json(a)).dump() + "\n";
    std::vector<std::vector<json>> rows;
    if (bivariate) {
        for (std::size_t n = 0; n <= b.order(); ++n)
            for (std::size_t l = 0; l < b[n].coeffs().size(); ++l)
                if (sgn(b[n].coeff(l)) != 0) rows.push_back({n, l, to_fraction_string(b[n].coeff(l))});
        return render_table({"n", "u_power", "coeff"}, rows, "csv");
    }
    for (std::size_t n = 0; n <= a.order(); ++n) {
        const Rational count = egf_count(a, n);
        rows.push_back({n, to_fraction_string(a[n]), count.get_den() == 1 ? count.get_num().get_str() : to_fraction_string(count)});
    }
    return render_table({"n", "coeff", "count"}, rows, "csv");
}

std::vector<CensusRow> census_rows(const RunConfig& cfg) {
    std::vector<CensusRow> rows;
    for (int n = 1; n <= cfg.n_max; ++n) rows.push_back(census(n, static_cast<int>(cfg.k), cfg.jobs));
    return rows;
}

std::vector<std::vector<json>> census_table(const std::vector<CensusRow>& census) {
    std::vector<std::vector<json>> rows;
    for (const CensusRow& r : census) {
        rows.push_back({r.n, r.k, big(r.count_A), big(r.count_Z), big(r.count_B), big(r.count_Gk_connected), big(r.count_Gk)});
    }
    return rows;
}
const std::vector<std::string> kCensusHeader = {"n", "k", "count_A", "count_Z", "count_B", "count_Gk_connected", "count_Gk"};

std::string cmd_census(const RunConfig& cfg) {
    require_oracle_range(cfg.n_max, "--n-max");
    return render_table(kCensusHeader, census_table(census_rows(cfg)), cfg.format);
}

json constants_record(unsigned k) {
    if (k < 1) throw UsageError("--k must be >= 1");
    const SingularityData s = singularity_data(k);
    const KMConstants km = km_constants(k);
    json rec = json::object();
    rec["k"] = k;
    rec["eta"] = num(s.eta);
    rec["eta_via_tree_function"] = num(eta_via_tree_function(k));
    rec["eta_residual"] = num(std::abs(std::ldexp(s.eta, static_cast<int>(k)) - std::exp(s.eta - 1)));
    rec["c_upper"] = num(s.c_upper);
    rec["gamma_minus_three_halves"] = num(s.gamma_minus_three_halves);
    rec["asymp_constant"] = num(s.c_upper / s.gamma_minus_three_halves);
    rec["km_zeta"] = num(km.zeta);
    rec["km_c"] = num(km.c);
    rec["zeta_eta_minus_exp_eta"] = num(km.zeta * s.eta - std::exp(s.eta));
    rec["two_connected_prob_rate"] = num(two_connected_prob_rate(k));
    rec["planar_alpha"] = num(PlanarConstants::alpha);
    rec["planar_beta"] = num(PlanarConstants::beta);
    rec["beta_check"] = planar_negligibility_check(k);
    return rec;
}

std::string cmd_constants(const RunConfig& cfg) { return render_record(constants_record(cfg.k), cfg.format); }

std::vector<std::vector<json>> asymptotics_table(unsigned k, std::size_t n_min, std::size_t n_max, std::size_t step) {
    if (k < 1) throw UsageError("--k must be >= 1");
    if (n_min < 1 || n_max < n_min || step < 1) throw UsageError("need 1 <= --n-min <= --n-max and --step >= 1");
    std::vector<std::size_t> ns;
    for (std::size_t n = n_min; n <= n_max; n += step) ns.push_back(n);
    std::vector<std::vector<json>> rows;
    for (const auto& r : asymptotic_rows(k, ns)) rows.push_back({r.n, fmt_from_log(r.log_exact), fmt_from_log(r.log_asymp), num(r.ratio)});
    return rows;
}
const std::vector<std::string> kAsymptoticsHeader = {"n", "exact_coeff", "asymp", "ratio"};

std::string cmd_asymptotics(const RunConfig& cfg) {
    return render_table(kAsymptoticsHeader, asymptotics_table(cfg.k, cfg.n_min, static_cast<std::size_t>(cfg.n_max), cfg.step),
                        cfg.format);
}

std::vector<std::vector<json>> blocks_table(const RunConfig& cfg, int oracle_max) {
    if (cfg.k < 1) throw UsageError("--k must be >= 1");
    std::vector<std::vector<json>> rows;
    for (const auto& r : sandwich_rows(cfg.k, cfg.n_max, oracle_max, cfg.jobs))
        rows.push_back({r.n, big(r.lower), r.oracle ? big(*r.oracle) : json(""), big(r.upper),
                        r.oracle ? json(r.holds()) : json("")});
    return rows;
}
const std::vector<std::string> kBlocksHeader = {"n", "lower", "oracle_count", "upper", "holds"};

std::string cmd_blocks(const RunConfig& cfg) {
    if (cfg.n_max < 1) throw UsageError("--n-max must be >= 1");
    require_oracle_range(cfg.n_oracle, "--n-oracle");
    return render_table(kBlocksHeader, blocks_table(cfg, std::min(cfg.n_oracle, cfg.n_max)), cfg.format);
}

std::vector<std::vector<json>> classes_table(const RunConfig& cfg) {
    std::vector<std::vector<json>> rows;
    for (const auto& r : gk_class_counts(static_cast<int>(cfg.k), cfg.n_max, cfg.jobs))
        rows.push_back({r.n, big(r.grammar_connected), big(r.oracle_connected), big(r.grammar_all), big(r.oracle_all), r.match()});
    return rows;
}
const std::vector<std::string> kClassesHeader = {"n", "grammar_connected", "oracle_connected", "grammar_all", "oracle_all", "match"};

std::string cmd_classes(const RunConfig& cfg) {
    require_oracle_range(cfg.n_max, "--n-max");
    return render_table(kClassesHeader, classes_table(cfg), cfg.format);
}

json certificate_record(const RunConfig& cfg) {
    if (cfg.k < 1) throw UsageError("--k must be >= 1");
    if (cfg.tail != "upper" && cfg.tail != "continuity") throw UsageError("--tail must be upper or continuity");
    require_oracle_range(cfg.n_oracle, "--n-oracle");
    if (cfg.n_oracle < 4) throw UsageError("--n-oracle must be >= 4");
    if (cfg.trunc < static_cast<std::size_t>(cfg.n_oracle)) throw UsageError("--trunc must be >= --n-oracle");
    SolveOptions opt;
    opt.tol = cfg.tol;
    opt.drift_tol = cfg.drift_tol;
    const SubcriticalityCertificate c = certify_gk(cfg.k, cfg.trunc, cfg.n_oracle,
                                                   cfg.tail == "upper" ? TailChoice::upper_bound : TailChoice::continuity,
                                                   opt, cfg.jobs);
    json rec = json::object();
    rec["k"] = c.k;
    rec["eta"] = num(c.eta);
    rec["tau"] = num(c.tau);
    rec["rho"] = num(c.rho);
    rec["cdot_at_rho"] = num(c.cdot_at_rho);
    rec["margin"] = num(c.margin);
    rec["relative_gap"] = num(c.relative_gap);
    rec["valid"] = c.valid;
    rec["orders"] = c.orders;
    rec["tau_drift"] = num(c.tau_drift);
    rec["residual"] = num(c.residual);
    rec["monotone"] = c.monotone;
    rec["tail"] = cfg.tail;
    rec["n_oracle"] = cfg.n_oracle;
    json per = json::array();
    for (const auto& r : c.per_order)
        per.push_back({{"order", r.order}, {"bracketed", r.bracketed}, {"tau", num(r.tau)}, {"residual", num(r.residual)},
                       {"remainder_share", num(r.remainder_share)}});
    rec["per_order"] = std::move(per);
    rec["diagnostic"] = c.diagnostic;
    return rec;
}

std::string cmd_certify(const RunConfig& cfg) { return render_record(certificate_record(cfg), cfg.format); }

std::string markdown_table(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows) {
    std::ostringstream s;
    s << "|";
    for (const auto& h : header) s << " " << h << " |";
    s << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) s << "---|";
    s << "\n";
    for (const auto& row : rows) {
        s << "|";
        for (const auto& v : row) s << " " << csv_cell(v) << " |";
        s << "\n";
    }
    return s.str();
}

std::string cmd_report(const RunConfig& cfg) {
    require_oracle_range(cfg.n_max, "--n-max");
    if (cfg.k < 1) throw UsageError("--k must be >= 1");
    std::ostringstream s;
    s << "# G_" << cfg.k << " summary\n\n## Constants\n\n";
    const json constants = constants_record(cfg.k);
    std::vector<std::vector<json>> kv;
    for (const auto& [key, value] : constants.items()) kv.push_back({key, value});
    s << markdown_table({"quantity", "value"}, kv);

    const std::vector<CensusRow> census = census_rows(cfg);
    s << "\n## Census\n\n" << markdown_table(kCensusHeader, census_table(census));
    std::vector<std::pair<int, BigInt>> two_connected;
    for (const CensusRow& r : census)
        if (r.n >= 3) two_connected.emplace_back(r.n, r.count_A);
    if (!two_connected.empty()) {
        const EmpiricalConstantRange range = empirical_constant_range(two_connected, eta(cfg.k));
        s << "\ncount_A * n^(5/2) * eta_k^n / n! over n = 3.." << cfg.n_max << ": [" << fmt(range.inf) << ", "
          << fmt(range.sup) << "]\n";
    }
    s << "\n## Bounds on 2-connected k-apex forests\n\n" << markdown_table(kBlocksHeader, blocks_table(cfg, cfg.n_max));
    s << "\n## Grammar against census\n\n" << markdown_table(kClassesHeader, classes_table(cfg));

    const std::size_t top = std::max<std::size_t>(cfg.trunc, 100);
    const std::size_t step = std::max<std::size_t>(top / 5, 1);
    s << "\n## Coefficients of U_" << cfg.k << " against the transfer asymptotic\n\n"
      << markdown_table(kAsymptoticsHeader, asymptotics_table(cfg.k, step, top, step));

    s << "\n## Subcriticality certificate\n\n";
    RunConfig cert_cfg = cfg;
    cert_cfg.n_oracle = std::min(cfg.n_oracle, cfg.n_max);
    if (cert_cfg.n_oracle < 4) {
        s << "skipped: needs --n-max >= 4\n";
    } else {
        const json cert = certificate_record(cert_cfg);
        kv.clear();
        for (const auto& [key, value] : cert.items())
            if (key != "per_order") kv.push_back({key, value});
        s << markdown_table({"field", "value"}, kv);
    }
    return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and numerical enumeration of graph classes with apex-forest blocks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* series = app.add_subcommand("series", "Dump a generating function as exact fractions");
    series->add_option("--name", cfg.name, "T, t, f, T_biv, t_biv, f_biv, Uk, Lk or Lk_corr")->required();
    series->add_option("--k", cfg.k, "number of apex vertices")->capture_default_str();
    series->add_option("--trunc", cfg.trunc, "truncation order (default 10)");
    series->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

    auto* census_cmd = app.add_subcommand("census", "Exhaustive counts of A_k, Z_k, B_k, G_k for n = 1..n_max");
    census_cmd->add_option("--n-max", cfg.n_max)->capture_default_str();

    auto* constants = app.add_subcommand("constants", "eta_k, c_k, apex-forest constants and the planar comparison");
    constants->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

    auto* asymptotics = app.add_subcommand("asymptotics", "[x^n]U_k against its transfer asymptotic");
    asymptotics->add_option("--n-max", cfg.n_max, "largest n (default 500)");
    asymptotics->add_option("--n-min", cfg.n_min)->capture_default_str();
    asymptotics->add_option("--step", cfg.step)->capture_default_str();

    auto* blocks = app.add_subcommand("blocks", "Lower and upper bounds on |A_k(n)| beside the oracle count");
    blocks->add_option("--n-max", cfg.n_max, "largest n (default 7)");
    blocks->add_option("--n-oracle", cfg.n_oracle, "largest n counted by the oracle (default 7)");

    auto* classes = app.add_subcommand("classes", "Grammar-derived G_k counts beside the census");
    classes->add_option("--n-max", cfg.n_max)->capture_default_str();

    auto* certify = app.add_subcommand("certify", "Subcriticality certificate for G_k");
    certify->add_option("--trunc", cfg.trunc)->capture_default_str();
    certify->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber)->capture_default_str();
    certify->add_option("--drift-tol", cfg.drift_tol)->check(CLI::PositiveNumber)->capture_default_str();
    certify->add_option("--tail", cfg.tail, "upper or continuity")->check(CLI::IsMember({"upper", "continuity"}))->capture_default_str();
    certify->add_option("--n-oracle", cfg.n_oracle)->capture_default_str();
    certify->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

    auto* report = app.add_subcommand("report", "Markdown summary for one k");
    report->add_option("--n-max", cfg.n_max)->capture_default_str();
    report->add_option("--trunc", cfg.trunc)->capture_default_str();
    report->add_option("--n-oracle", cfg.n_oracle)->capture_default_str();
    report->add_option("--tail", cfg.tail)->check(CLI::IsMember({"upper", "continuity"}))->capture_default_str();

    for (auto* sub : {census_cmd, asymptotics, blocks, classes, certify, report, constants})
        sub->add_option("--k", cfg.k, "number of apex vertices");
    for (auto* sub : {census_cmd, asymptotics, blocks, classes})
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    for (auto* sub : {series, census_cmd, asymptotics, blocks, classes, certify, constants, report})
        sub->add_option("--out", cfg.out, "output file (default: stdout or $SUBCRIT_OUTPUT_DIR)");
    for (auto* sub : {census_cmd, blocks, classes, certify, report})
        sub->add_option("--jobs", cfg.jobs, "worker threads for the census")->check(CLI::Range(1u, 256u))->capture_default_str();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        // Several subcommands share one RunConfig, so per-command defaults are filled in here.
        auto fill = [&](const char* flag, auto& field, auto value) {
            const auto* opt = sub->get_option_no_throw(flag);
            if (opt == nullptr || opt->count() == 0) field = value;
        };
        const bool k_one = name == "series" || name == "census" || name == "blocks" || name == "classes";
        fill("--k", cfg.k, k_one ? 1u : 4u);
        fill("--format", cfg.format, std::string(name == "series" || name == "constants" || name == "certify" ? "json" : "csv"));
        if (name == "series") fill("--trunc", cfg.trunc, std::size_t{10});
        if (name == "asymptotics") fill("--n-max", cfg.n_max, 500);
        if (name == "blocks") {
            fill("--n-max", cfg.n_max, 7);
            fill("--n-oracle", cfg.n_oracle, 7);
        }
        if (name == "series") {
            if (std::find(kSeriesNames.begin(), kSeriesNames.end(), cfg.name) == kSeriesNames.end())
                throw UsageError("unknown series name: " + cfg.name);
            const bool k_used = cfg.name == "Uk" || cfg.name.starts_with("L");
            emit(cmd_series(cfg), cfg, "series_" + cfg.name + (k_used ? k_tag(cfg) : "") + "." + ext(cfg), out, err);
        } else if (name == "census") {
            emit(cmd_census(cfg), cfg, "census" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "constants") {
            emit(cmd_constants(cfg), cfg, "constants" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "asymptotics") {
            emit(cmd_asymptotics(cfg), cfg, "asymptotics" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "blocks") {
            emit(cmd_blocks(cfg), cfg, "blocks" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "classes") {
            emit(cmd_classes(cfg), cfg, "classes" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "certify") {
            emit(cmd_certify(cfg), cfg, "certify" + k_tag(cfg) + "." + ext(cfg), out, err);
        } else if (name == "report") {
            emit(cmd_report(cfg), cfg, "report" + k_tag(cfg) + ".md", out, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace subcrit::cli
