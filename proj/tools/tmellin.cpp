#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tmellin/asymptotics.hpp"
#include "tmellin/errors.hpp"
#include "tmellin/function_spec.hpp"
#include "tmellin/polyseq.hpp"
#include "tmellin/transform.hpp"
#include "tmellin/verify.hpp"

namespace {

using nlohmann::json;
using namespace tmellin;

struct CliConfig {
    double tol = 1e-10;
    int max_nodes = 512;
    std::string format = "text";  // text | json | csv
    std::uint64_t seed = 20260810;

    void validate() const {
        if (!(tol >= 1e-13 && tol <= 1e-2))
            throw std::domain_error("tol must lie in [1e-13, 1e-2]");
        if (max_nodes < 32 || max_nodes > 512)
            throw std::domain_error("max-nodes must lie in [32, 512]");
        if (format != "text" && format != "json" && format != "csv")
            throw std::domain_error("format must be text, json or csv");
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Precedence: flags > environment > config file > defaults. The file and
// environment layers are applied before CLI11 binds flag values on top.
void apply_config_file(CliConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json doc = json::parse(in);
    if (doc.contains("tol")) cfg.tol = doc["tol"].get<double>();
    if (doc.contains("max_nodes")) cfg.max_nodes = doc["max_nodes"].get<int>();
    if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
}

void apply_env(CliConfig& cfg) {
    if (const char* v = std::getenv("TMELLIN_TOL")) cfg.tol = std::strtod(v, nullptr);
    if (const char* v = std::getenv("TMELLIN_MAX_NODES"))
        cfg.max_nodes = static_cast<int>(std::strtol(v, nullptr, 10));
    if (const char* v = std::getenv("TMELLIN_SEED"))
        cfg.seed = static_cast<std::uint64_t>(std::strtoull(v, nullptr, 10));
}

void print_transform_value(const CliConfig& cfg, double s, const quad::TransformValue& tv,
                           bool closed_available) {
    if (cfg.format == "json") {
        json doc;
        doc["value"] = tv.value;
        doc["error_estimate"] = tv.error_estimate;
        doc["method"] = quad::method_name(tv.method);
        doc["nodes_used"] = tv.nodes_used;
        std::cout << doc.dump() << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "s,value,error_estimate,method\n"
                  << fmt17(s) << "," << fmt17(tv.value) << "," << fmt17(tv.error_estimate) << ","
                  << quad::method_name(tv.method) << "\n";
    } else {
        std::cout << "value=" << fmt17(tv.value) << " error_estimate=" << fmt17(tv.error_estimate)
                  << " method=" << quad::method_name(tv.method) << " nodes_used=" << tv.nodes_used
                  << " closed_form_available=" << (closed_available ? "yes" : "no") << "\n";
        if (!tv.converged)
            std::cout << "# warning: quadrature did not meet tol at the node cap\n";
    }
}

int cmd_eval(const CliConfig& cfg, const std::string& fn, double s) {
    const FunctionSpec f = parse_function_descriptor(fn);
    const auto tv = mellin::twisted_mellin(f, s, cfg.tol, cfg.max_nodes);
    print_transform_value(cfg, s, tv, mellin::has_closed_form(f, s));
    return 0;
}

int cmd_table(const CliConfig& cfg, const std::string& fn, double s_start, double s_end,
              double step) {
    if (!(step > 0.0)) throw std::domain_error("table: step must be positive");
    if (s_start > s_end) throw std::domain_error("table: s-start must be <= s-end");
    const FunctionSpec f = parse_function_descriptor(fn);
    int failures = 0;
    bool divergence_seen = false;
    std::ostringstream body;
    const long rows = static_cast<long>(std::floor((s_end - s_start) / step + 1e-9)) + 1;
    for (long k = 0; k < rows; ++k) {
        const double s = s_start + k * step;
        try {
            const auto tv = mellin::twisted_mellin(f, s, cfg.tol, cfg.max_nodes);
            body << fmt17(s) << "," << fmt17(tv.value) << "," << fmt17(tv.error_estimate) << ","
                 << quad::method_name(tv.method) << "\n";
        } catch (const DivergenceError&) {
            body << fmt17(s) << ",nan,nan,none\n";
            ++failures;
            divergence_seen = true;
        } catch (const std::exception&) {
            body << fmt17(s) << ",nan,nan,none\n";
            ++failures;
        }
    }
    if (cfg.format == "json") {
        // still tabular content, one object per row
        std::istringstream rows(body.str());
        json arr = json::array();
        std::string line;
        while (std::getline(rows, line)) {
            const auto c1 = line.find(','), c2 = line.find(',', c1 + 1),
                       c3 = line.find(',', c2 + 1);
            json row;
            row["s"] = std::strtod(line.substr(0, c1).c_str(), nullptr);
            row["value"] = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
            row["error_estimate"] = std::strtod(line.substr(c2 + 1, c3 - c2 - 1).c_str(), nullptr);
            row["method"] = line.substr(c3 + 1);
            arr.push_back(row);
        }
        std::cout << arr.dump() << "\n";
    } else {
        std::cout << "s,value,error_estimate,method\n" << body.str();
    }
    if (failures == 0) return 0;
    return divergence_seen ? 3 : 2;
}

int cmd_poly(const CliConfig& cfg, const std::string& kind, int order) {
    std::vector<std::string> values;
    if (kind == "f") {
        for (const auto& c : poly::expansion_poly_recurrence(order).coeffs())
            values.push_back(c.str());
    } else if (kind == "stirling") {
        if (order < 1) throw std::domain_error("poly stirling: n must be >= 1");
        for (int k = 1; k <= order; ++k) values.push_back(poly::stirling_unsigned(order, k).str());
    } else if (kind == "coeffs") {
        if (order == 0) {
            values.push_back("1");
        } else {
            const auto table = poly::expansion_coefficient_table(order);
            for (const auto& a : table[order]) values.push_back(a.str());
        }
    } else {
        throw std::domain_error("poly: kind must be f, stirling or coeffs");
    }
    if (cfg.format == "json") {
        json doc;
        doc["kind"] = kind;
        doc["order"] = order;
        doc["values"] = values;
        std::cout << doc.dump() << "\n";
    } else {
        const char* sep = (cfg.format == "csv") ? "," : " ";
        for (size_t i = 0; i < values.size(); ++i)
            std::cout << (i ? sep : "") << values[i];
        std::cout << "\n";
    }
    return 0;
}

int cmd_verify(const CliConfig& cfg, const std::string& suite, double tol) {
    verify::VerifyOptions opts;
    opts.tol = tol;
    opts.seed = cfg.seed;
    std::vector<verify::CheckResult> results;
    if (suite == "polyseq") results = verify::run_polyseq();
    else if (suite == "catalog") results = verify::run_catalog(opts);
    else if (suite == "identities") results = verify::run_identities(opts);
    else if (suite == "asymptotics") results = verify::run_asymptotics(opts);
    else if (suite == "all") results = verify::run_all(opts);
    else throw std::domain_error("verify: suite must be identities, catalog, polyseq, asymptotics or all");
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : results) {
            json row;
            row["name"] = r.name;
            row["max_residual"] = r.max_residual;
            row["budget"] = r.budget;
            row["pass"] = r.pass;
            arr.push_back(row);
        }
        std::cout << arr.dump() << "\n";
    } else {
        for (const auto& r : results) {
            std::printf("%s, %.3g, %.3g, %s\n", r.name.c_str(), r.max_residual, r.budget,
                        r.pass ? "PASS" : "FAIL");
        }
    }
    return verify::all_pass(results) ? 0 : 1;
}

int cmd_expand(const CliConfig& cfg, const std::string& fn, double s, int order, bool compare,
               std::optional<double> big_n) {
    const FunctionSpec f = parse_function_descriptor(fn);
    if (big_n) {
        const double n = *big_n;
        std::optional<double> reference;
        if (compare) reference = asym::n_twisted(f, s, n, cfg.tol).value;
        json arr = json::array();
        if (cfg.format != "json")
            std::cout << (compare ? "order,value,abs_error\n" : "order,value\n");
        for (int j = 0; j <= order; ++j) {
            const double value = asym::n_expansion(f, s, n, j);
            if (cfg.format == "json") {
                json row;
                row["order"] = j;
                row["value"] = value;
                if (reference) row["abs_error"] = std::abs(value - *reference);
                arr.push_back(row);
            } else {
                std::cout << j << "," << fmt17(value);
                if (reference) std::cout << "," << fmt17(std::abs(value - *reference));
                std::cout << "\n";
            }
        }
        if (cfg.format == "json") std::cout << arr.dump() << "\n";
        return 0;
    }
    const auto result = asym::expansion(f, s, order);
    std::optional<double> reference;
    if (compare) reference = mellin::numeric_transform(f, s, cfg.tol, cfg.max_nodes).value;
    if (cfg.format == "json") {
        json doc;
        doc["s"] = s;
        json orders = json::array();
        for (const auto& term : result.orders) {
            json row;
            row["r"] = term.r;
            row["derivative_value"] = term.derivative_value;
            row["poly_value"] = term.poly_value;
            row["term"] = term.term;
            orders.push_back(row);
        }
        doc["orders"] = orders;
        doc["partial_sums"] = result.partial_sums;
        if (reference) doc["quadrature"] = *reference;
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << (reference ? "r,derivative,poly,term,partial_sum,abs_error\n"
                                : "r,derivative,poly,term,partial_sum\n");
        for (size_t i = 0; i < result.orders.size(); ++i) {
            const auto& term = result.orders[i];
            std::cout << term.r << "," << fmt17(term.derivative_value) << ","
                      << fmt17(term.poly_value) << "," << fmt17(term.term) << ","
                      << fmt17(result.partial_sums[i]);
            if (reference) std::cout << "," << fmt17(std::abs(result.partial_sums[i] - *reference));
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_invert(const CliConfig& cfg, const std::string& fn, double x, double c, double height,
               int steps) {
    const FunctionSpec f = parse_function_descriptor(fn);
    const auto mf = mellin::complex_closed_form(f);  // UnsupportedError -> exit 2
    mellin::InvertInfo info;
    const double value = mellin::invert(mf, x, c, height, steps, &info);
    const double exact = f.evaluate(x);
    if (cfg.format == "json") {
        json doc;
        doc["value"] = value;
        doc["exact"] = exact;
        doc["abs_error"] = std::abs(value - exact);
        doc["truncation_warning"] = info.truncation_warning;
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << "reconstructed=" << fmt17(value) << " exact=" << fmt17(exact)
                  << " abs_error=" << fmt17(std::abs(value - exact)) << "\n";
    }
    if (info.truncation_warning)
        std::cerr << "warning: contour truncation; integrand tail ratio "
                  << fmt17(info.integrand_tail_ratio) << "\n";
    return 0;
}

template <class F>
int run_guarded(F&& body) {
    try {
        return body();
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    // --config layer first, then environment, then flags on top
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
        else if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        if (!path.empty()) {
            const int rc = run_guarded([&] {
                apply_config_file(cfg, path);
                return 0;
            });
            if (rc != 0) return rc;
            break;
        }
    }
    apply_env(cfg);

    CLI::App app{"twisted Mellin transform toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (tol, max_nodes, format, seed)");
    app.add_option("--tol", cfg.tol, "numeric tolerance");
    app.add_option("--max-nodes", cfg.max_nodes, "Gauss-Laguerre node cap");
    app.add_option("--format", cfg.format, "output format: text, json, csv");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");

    auto* eval = app.add_subcommand("eval", "evaluate the transform at one point");
    std::string eval_fn;
    double eval_s = 0.0;
    eval->add_option("--fn", eval_fn, "function descriptor")->required();
    eval->add_option("--s", eval_s, "transform parameter")->required();

    auto* table = app.add_subcommand("table", "CSV table of transform values over an s grid");
    std::string table_fn;
    double table_start = 0.0, table_end = 0.0, table_step = 1.0;
    table->add_option("--fn", table_fn)->required();
    table->add_option("--s-start", table_start)->required();
    table->add_option("--s-end", table_end)->required();
    table->add_option("--step", table_step)->required();

    auto* polycmd = app.add_subcommand("poly", "exact polynomial / Stirling tables");
    std::string poly_kind;
    int poly_order = 0;
    polycmd->add_option("kind", poly_kind, "f, stirling or coeffs")->required();
    polycmd->add_option("order", poly_order, "row index")->required();

    auto* verifycmd = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite;
    double verify_tol = 1e-8;
    verifycmd->add_option("suite", verify_suite, "identities, catalog, polyseq, asymptotics, all")
        ->required();
    verifycmd->add_option("--tol", verify_tol, "identity residual budget");

    auto* expand = app.add_subcommand("expand", "asymptotic expansion terms and partial sums");
    std::string expand_fn;
    double expand_s = 0.0;
    int expand_order = 0;
    bool expand_compare = false;
    double expand_n = 0.0;
    expand->add_option("--fn", expand_fn)->required();
    expand->add_option("--s", expand_s)->required();
    expand->add_option("--order", expand_order)->required();
    expand->add_flag("--compare", expand_compare, "also print the quadrature reference");
    auto* n_opt = expand->add_option("--N", expand_n, "use the N-twisted expansion");

    auto* invert = app.add_subcommand("invert", "reconstruct f(x) from its transform");
    std::string invert_fn;
    double invert_x = 1.0, invert_c = 1.0, invert_height = 40.0;
    int invert_steps = 4000;
    invert->add_option("--fn", invert_fn)->required();
    invert->add_option("--x", invert_x)->required();
    invert->add_option("--c", invert_c, "contour abscissa");
    invert->add_option("--height", invert_height, "contour truncation height");
    invert->add_option("--steps", invert_steps, "trapezoid step count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    return run_guarded([&]() -> int {
        cfg.validate();
        if (eval->parsed()) return cmd_eval(cfg, eval_fn, eval_s);
        if (table->parsed()) return cmd_table(cfg, table_fn, table_start, table_end, table_step);
        if (polycmd->parsed()) return cmd_poly(cfg, poly_kind, poly_order);
        if (verifycmd->parsed()) return cmd_verify(cfg, verify_suite, verify_tol);
        if (expand->parsed())
            return cmd_expand(cfg, expand_fn, expand_s, expand_order, expand_compare,
                              n_opt->count() ? std::optional<double>(expand_n) : std::nullopt);
        if (invert->parsed())
            return cmd_invert(cfg, invert_fn, invert_x, invert_c, invert_height, invert_steps);
        return 2;
    });
}
