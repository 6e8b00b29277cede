#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qnk/chern.hpp"
#include "qnk/partitions.hpp"
#include "qnk/qseries.hpp"
#include "qnk/report.hpp"
#include "qnk/sod.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_identity = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

struct GlobalOptions {
    std::string format = "text";
    std::string out;
    std::size_t max_order = 10000;
    std::uint64_t max_nodes = 4'000'000;
};

void emit(const GlobalOptions& global, const std::string& payload) {
    if (global.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(global.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + global.out);
    file << payload;
}

std::size_t default_order() {
    const char* env = std::getenv("QNK_DEFAULT_ORDER");
    if (env == nullptr) return 20;
    const std::string text(env);
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("QNK_DEFAULT_ORDER is not a non-negative integer");
    }
    if (pos != text.size()) {
        throw std::invalid_argument("QNK_DEFAULT_ORDER is not a non-negative integer");
    }
    return static_cast<std::size_t>(value);
}

void check_order_guard(const GlobalOptions& global, std::size_t order) {
    if (order > global.max_order) {
        throw qnk::ResourceLimitError("requested order " + std::to_string(order) +
                                      " exceeds --max-order " +
                                      std::to_string(global.max_order));
    }
}

qnk::SurfaceInvariants parse_surface(const std::string& name) {
    if (name == "k3") return qnk::SurfaceInvariants::k3();
    if (name == "abelian") return qnk::SurfaceInvariants::abelian();
    if (name == "p2") return qnk::SurfaceInvariants::del_pezzo(9);
    if (name.size() == 3 && name.compare(0, 2, "dp") == 0 && name[2] >= '1' &&
        name[2] <= '9') {
        return qnk::SurfaceInvariants::del_pezzo(name[2] - '0');
    }
    if (name.compare(0, 6, "other:") == 0) {
        std::stringstream body(name.substr(6));
        long long e = 0, chi = 0, h1 = 0;
        char c1 = 0, c2 = 0;
        if (body >> e >> c1 >> chi >> c2 >> h1 && c1 == ',' && c2 == ',') {
            return qnk::SurfaceInvariants::other(e, chi, h1);
        }
        throw std::invalid_argument("malformed surface: " + name);
    }
    throw std::invalid_argument(
        "unknown surface '" + name +
        "' (expected k3, abelian, p2, dp1..dp9 or other:euler,chi,h1)");
}

// "w0,h,w2" with w2 an integer or p/q rational; w1^2 arrives separately.
qnk::BaseClass parse_class(const std::string& text, long long c1_sq) {
    const auto first = text.find(',');
    const auto second = first == std::string::npos ? first : text.find(',', first + 1);
    if (second == std::string::npos || text.find(',', second + 1) != std::string::npos) {
        throw std::invalid_argument("--w expects three comma-separated fields: w0,h_dot_c1,ch2");
    }
    qnk::BaseClass w;
    try {
        w.rank = std::stoll(text.substr(0, first));
        w.h_dot_c1 = std::stoll(text.substr(first + 1, second - first - 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed --w value: " + text);
    }
    w.ch2 = qnk::parse_rational(text.substr(second + 1));
    w.c1_sq = c1_sq;
    return w;
}

// Multiplicities depend only on the rank, so engine-backed commands that
// take a bare rank run on a fixed admissible class.
qnk::BaseClass engine_class(long long rank) {
    if (rank == 1) return {1, 0, 0, qnk::Rat(0)};
    return {rank, 1, 1, qnk::Rat(0)};
}

std::string series_payload(const GlobalOptions& global, const std::string& kind,
                           const std::vector<std::pair<std::string, long long>>& params,
                           const qnk::QSeries& series) {
    if (global.format == "json") {
        qnk::Json doc;
        doc["command"] = "series";
        doc["kind"] = kind;
        doc["params"] = qnk::params_json(params);
        qnk::Json coeffs = qnk::Json::array();
        for (const qnk::Int& c : series.coefficients()) coeffs.push_back(c.str());
        doc["coefficients"] = std::move(coeffs);
        return doc.dump() + "\n";
    }
    if (global.format == "csv") {
        std::string out = "n,coefficient\n";
        for (std::size_t n = 0; n <= series.order(); ++n) {
            out += std::to_string(n);
            out += ',';
            out += series.coefficient(n).str();
            out += '\n';
        }
        return out;
    }
    std::string out;
    for (std::size_t n = 0; n <= series.order(); ++n) {
        if (n > 0) out += ',';
        out += series.coefficient(n).str();
    }
    out += '\n';
    return out;
}

struct CoeffValues {
    std::vector<std::pair<std::string, std::string>> by_method;
    bool agree = true;
};

std::string coeff_payload(const GlobalOptions& global,
                          const std::vector<std::pair<std::string, long long>>& params,
                          const CoeffValues& values) {
    if (global.format == "json" || !values.agree) {
        qnk::Json doc;
        doc["command"] = "coeff";
        doc["params"] = qnk::params_json(params);
        qnk::Json methods = qnk::Json::object();
        for (const auto& [method, value] : values.by_method) methods[method] = value;
        doc["values"] = std::move(methods);
        doc["agree"] = values.agree;
        return doc.dump() + "\n";
    }
    if (global.format == "csv") {
        std::string out = "method,value\n";
        for (const auto& [method, value] : values.by_method) {
            out += method;
            out += ',';
            out += value;
            out += '\n';
        }
        return out;
    }
    if (values.by_method.size() == 1) return values.by_method[0].second + "\n";
    std::string out;
    for (const auto& [method, value] : values.by_method) {
        out += method;
        out += ' ';
        out += value;
        out += '\n';
    }
    out += "agreement yes\n";
    return out;
}

std::string verify_payload(const GlobalOptions& global, const std::string& suite,
                           const std::vector<std::pair<std::string, long long>>& bounds,
                           const std::vector<qnk::VerifyCheck>& checks) {
    std::size_t failed = 0;
    for (const auto& check : checks)
        if (!check.pass) ++failed;
    const std::size_t passed = checks.size() - failed;

    if (global.format == "json") {
        qnk::Json doc;
        doc["command"] = "verify";
        doc["suite"] = suite;
        doc["bounds"] = qnk::params_json(bounds);
        qnk::Json rows = qnk::Json::array();
        for (const auto& check : checks) rows.push_back(qnk::check_to_json(check));
        doc["checks"] = std::move(rows);
        doc["passed"] = passed;
        doc["failed"] = failed;
        return doc.dump() + "\n";
    }
    if (global.format == "csv") return qnk::checks_to_csv(checks);

    std::string out;
    for (const auto& check : checks) {
        out += check.pass ? "ok   " : "FAIL ";
        out += check.name;
        if (!check.params.empty()) {
            out += ' ';
            out += qnk::params_compact(check.params);
        }
        out += " lhs=";
        out += check.lhs;
        out += " rhs=";
        out += check.rhs;
        out += '\n';
    }
    out += "passed=" + std::to_string(passed) + " failed=" + std::to_string(failed) + "\n";
    return out;
}

void push_check(std::vector<qnk::VerifyCheck>& checks, std::string name,
                std::vector<std::pair<std::string, long long>> params, const qnk::Int& lhs,
                const qnk::Int& rhs) {
    checks.push_back({std::move(name), std::move(params), lhs.str(), rhs.str(), lhs == rhs});
}

std::vector<qnk::VerifyCheck> suite_lemma53(unsigned rmax, unsigned dmax, unsigned jmax) {
    std::vector<qnk::VerifyCheck> checks;
    for (unsigned r = 1; r <= rmax; ++r)
        for (unsigned d = 0; d <= dmax; ++d) {
            const qnk::QSeries series = qnk::theta_sum(r, d, jmax);
            for (unsigned j = 0; j <= jmax; ++j) {
                const qnk::Int tilde = qnk::a_tilde(r, d, j);
                push_check(checks, "count_equal", {{"r", r}, {"d", d}, {"j", j}}, tilde,
                           qnk::a_count(r, d, j));
                push_check(checks, "genfun_equal", {{"r", r}, {"d", d}, {"j", j}}, tilde,
                           series.coefficient(j));
            }
        }
    for (unsigned d = 0; d <= dmax; ++d)
        for (unsigned j = 0; j <= jmax; ++j) {
            const auto vectors = qnk::enumerate_theta(1, d, j);
            std::set<qnk::YoungDiagram> images;
            bool roundtrip = true;
            for (const auto& v : vectors) {
                const qnk::YoungDiagram y = qnk::rank1_diagram(v, d);
                roundtrip = roundtrip && y.boxes() == j && y.columns() <= d &&
                            qnk::rank1_vector(y, d) == v;
                images.insert(y);
            }
            const qnk::Int image_count =
                roundtrip ? qnk::Int(images.size()) : qnk::Int(-1);
            push_check(checks, "bijection", {{"d", d}, {"j", j}}, image_count,
                       qnk::restricted_partition_count(j, d));
        }
    return checks;
}

std::vector<qnk::VerifyCheck> suite_thm52(const GlobalOptions& global, unsigned rmax,
                                          unsigned dmax, unsigned jmax) {
    std::vector<qnk::VerifyCheck> checks;
    qnk::SODOptions options;
    options.max_nodes = global.max_nodes;
    for (unsigned r = 1; r <= rmax; ++r)
        for (unsigned d = 0; d <= dmax; ++d) {
            const auto terminal = qnk::run(engine_class(r), d, jmax, options).terminal;
            for (unsigned j = 0; j <= jmax; ++j) {
                const auto it = terminal.find(j);
                const qnk::Int got = it == terminal.end() ? qnk::Int(0) : it->second;
                push_check(checks, "sod_terminal", {{"r", r}, {"d", d}, {"j", j}}, got,
                           qnk::a_tilde(r, d + 1, j));
            }
        }
    return checks;
}

std::vector<qnk::VerifyCheck> suite_euler(const std::vector<qnk::SurfaceInvariants>& surfaces,
                                          std::size_t order, unsigned kmax) {
    std::vector<qnk::VerifyCheck> checks;
    const qnk::QSeries full = qnk::euler_product_inv(std::nullopt, 1, order);
    for (const auto& s : surfaces) {
        const qnk::QSeries z = qnk::goettsche_series(s.euler, order);
        const qnk::QSeries z_hat = qnk::goettsche_series(s.euler + 1, order);
        const qnk::QSeries product = full * z;
        for (std::size_t n = 0; n <= order; ++n) {
            push_check(checks, "blowup_coeff",
                       {{"euler", s.euler}, {"n", static_cast<long long>(n)}},
                       z_hat.coefficient(n), product.coefficient(n));
        }
        for (std::size_t n = 0; n <= order; ++n) {
            qnk::Int sum = 0;
            for (std::size_t j = 0; j <= n; ++j)
                sum += qnk::partition_count(static_cast<unsigned>(j)) * z.coefficient(n - j);
            push_check(checks, "point_convolution",
                       {{"euler", s.euler}, {"n", static_cast<long long>(n)}},
                       z_hat.coefficient(n), sum);
        }
        for (unsigned k = 0; k <= kmax; ++k) {
            const qnk::QSeries level = qnk::euler_product_inv(k, 1, order) * z;
            for (std::size_t n = 0; n <= order; ++n) {
                qnk::Int sum = 0;
                for (std::size_t j = 0; j <= n; ++j)
                    sum += qnk::a_count(1, k, static_cast<unsigned>(j)) *
                           z.coefficient(n - j);
                push_check(checks, "level_convolution",
                           {{"euler", s.euler},
                            {"k", k},
                            {"n", static_cast<long long>(n)}},
                           level.coefficient(n), sum);
            }
        }
    }
    return checks;
}

std::vector<qnk::VerifyCheck> suite_stabilize(unsigned rmax, unsigned dmax) {
    std::vector<qnk::VerifyCheck> checks;
    for (unsigned r = 1; r <= rmax; ++r) {
        for (unsigned d = 0; d <= dmax; ++d)
            for (unsigned j = 0; j <= d; ++j) {
                push_check(checks, "stabilize", {{"r", r}, {"d", d}, {"j", j}},
                           qnk::a_count(r, d, j), qnk::a_infinity(r, j));
            }
    }
    return checks;
}

std::vector<qnk::VerifyCheck> suite_dims(const qnk::SurfaceInvariants& surface,
                                         const qnk::BaseClass& w, unsigned dmax) {
    const auto admissible = qnk::validate_assumption(w, surface);
    if (!admissible.ok) {
        throw std::invalid_argument("inadmissible class: " + admissible.clause);
    }
    std::vector<qnk::VerifyCheck> checks;
    for (unsigned d = 0; d <= dmax; ++d) {
        const qnk::Int dim = qnk::moduli_dimension(w, d, surface);
        push_check(checks, "dim", {{"w0", w.rank}, {"d", d}}, dim, dim);
    }
    for (unsigned d = 0; d + 1 <= dmax; ++d) {
        const qnk::Int drop = qnk::moduli_dimension(w, d, surface) -
                              qnk::moduli_dimension(w, d + 1, surface);
        push_check(checks, "dim_decrement", {{"w0", w.rank}, {"d", d}}, drop,
                   qnk::Int(w.rank + 2 * d + 1));
    }
    std::mt19937_64 rng(20240825);
    std::uniform_int_distribution<long long> dim_x(-20, 40);
    std::uniform_int_distribution<long long> delta(0, 6);
    std::uniform_int_distribution<long long> dd(0, 6);
    for (int sample = 0; sample < 25; ++sample) {
        const long long m = dim_x(rng), de = delta(rng), d = dd(rng);
        const auto [on_g, on_k] = qnk::quot_expected_dims(m, de, d);
        push_check(checks, "quot_dim_g", {{"dim_x", m}, {"delta", de}, {"d", d}},
                   qnk::Int(on_g), qnk::Int(m + de * d - d * d));
        push_check(checks, "quot_dim_k", {{"dim_x", m}, {"delta", de}, {"d", d}},
                   qnk::Int(on_k), qnk::Int(m - de * d - d * d));
    }
    return checks;
}

std::vector<qnk::SurfaceInvariants> preset_surfaces() {
    return {qnk::SurfaceInvariants::abelian(), qnk::SurfaceInvariants::del_pezzo(9),
            qnk::SurfaceInvariants::del_pezzo(3), qnk::SurfaceInvariants::k3()};
}

int report_verify(const GlobalOptions& global, const std::string& suite,
                  const std::vector<std::pair<std::string, long long>>& bounds,
                  const std::vector<qnk::VerifyCheck>& checks) {
    emit(global, verify_payload(global, suite, bounds, checks));
    for (const auto& check : checks)
        if (!check.pass) return exit_identity;
    return exit_ok;
}

std::string trace_table_payload(const GlobalOptions& global, const qnk::SODResult& result,
                                const std::optional<qnk::SurfaceInvariants>& surface) {
    if (global.format == "json") {
        qnk::Json doc;
        doc["command"] = "sod_trace";
        doc["seed"] = qnk::trace_to_json(result, surface)["seed"];
        qnk::Json terminal = qnk::Json::array();
        for (const auto& [j, mult] : result.terminal) {
            qnk::Json entry;
            entry["j"] = j;
            entry["multiplicity"] = mult.str();
            terminal.push_back(std::move(entry));
        }
        doc["terminal"] = std::move(terminal);
        return doc.dump() + "\n";
    }
    if (global.format == "csv") {
        std::string out = "j,multiplicity\n";
        for (const auto& [j, mult] : result.terminal)
            out += std::to_string(j) + "," + mult.str() + "\n";
        return out;
    }
    std::string out;
    for (const auto& [j, mult] : result.terminal)
        out += std::to_string(j) + " " + mult.str() + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiplicity tables, q-series and expansion traces"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", global.out, "write output to a file instead of stdout");
    app.add_option("--max-order", global.max_order, "largest allowed truncation order")
        ->capture_default_str();
    app.add_option("--max-nodes", global.max_nodes, "node budget for the expansion engine")
        ->capture_default_str();

    // series
    auto* series = app.add_subcommand("series", "print coefficients of a generating series");
    series->require_subcommand(1);
    long long series_euler = 0;
    unsigned series_k = 0;
    unsigned series_rank = 1;
    std::string series_d = "0";
    std::optional<std::size_t> series_order;

    auto* goettsche = series->add_subcommand("goettsche", "points on a surface with the given euler number");
    goettsche->add_option("--euler", series_euler, "euler number of the surface")->required();
    goettsche->add_option("--order", series_order, "truncation order");

    auto* blowup = series->add_subcommand("blowup", "same surface after blowing up one point");
    blowup->add_option("--euler", series_euler, "euler number of the base surface")->required();
    blowup->add_option("--order", series_order, "truncation order");

    auto* nk = series->add_subcommand("nk", "level-k series: finite product prefactor times the point series");
    nk->add_option("--k", series_k, "number of prefactor terms")->required();
    nk->add_option("--euler", series_euler, "euler number of the base surface")->required();
    nk->add_option("--order", series_order, "truncation order");

    auto* theta = series->add_subcommand("theta", "lattice multiplicity series for a given rank");
    theta->add_option("--rank", series_rank, "rank (positive)")->required();
    theta->add_option("--d", series_d, "level: a non-negative integer or 'inf'");
    theta->add_option("--order", series_order, "truncation order");

    // coeff
    auto* coeff = app.add_subcommand("coeff", "one multiplicity, by one method or all four");
    std::string coeff_method;
    bool coeff_all = false;
    long long coeff_r = 1, coeff_d = 0, coeff_j = 0;
    coeff->add_option("--method", coeff_method, "enum, young, genfun or sod")
        ->check(CLI::IsMember({"enum", "young", "genfun", "sod"}));
    coeff->add_flag("--all", coeff_all, "compute all four methods and compare");
    coeff->add_option("--r", coeff_r, "rank (positive)")->required();
    coeff->add_option("--d", coeff_d,
                      "level; for --method sod it must be >= 1 (the engine reproduces "
                      "the other methods at the same --d)")
        ->required();
    coeff->add_option("--j", coeff_j, "weight (non-negative)")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run an identity suite and report every instance");
    verify->require_subcommand(1);
    unsigned v_rmax = 3, v_dmax = 0, v_jmax = 0, v_kmax = 6, v_dims_dmax = 3;
    std::optional<std::size_t> v_order;
    std::string v_surface;
    std::string v_w = "1,0,-5";
    long long v_c1sq = 0;

    auto* v_lemma = verify->add_subcommand("lemma53", "counting methods agree and the rank-one dictionary is a bijection");
    unsigned l_dmax = 5, l_jmax = 12;
    v_lemma->add_option("--rmax", v_rmax)->capture_default_str();
    v_lemma->add_option("--dmax", l_dmax)->capture_default_str();
    v_lemma->add_option("--jmax", l_jmax)->capture_default_str();

    auto* v_thm = verify->add_subcommand("thm52", "engine terminal tables match the index-vector counts");
    unsigned t_dmax = 4, t_jmax = 10;
    v_thm->add_option("--rmax", v_rmax)->capture_default_str();
    v_thm->add_option("--dmax", t_dmax)->capture_default_str();
    v_thm->add_option("--jmax", t_jmax)->capture_default_str();

    auto* v_euler = verify->add_subcommand("euler", "blow-up series identities on the preset surfaces");
    v_euler->add_option("--surface", v_surface, "restrict to one surface");
    v_euler->add_option("--order", v_order, "truncation order");
    v_euler->add_option("--kmax", v_kmax)->capture_default_str();

    auto* v_stab = verify->add_subcommand("stabilize", "low coefficients stop depending on the level");
    unsigned s_dmax = 8;
    v_stab->add_option("--rmax", v_rmax)->capture_default_str();
    v_stab->add_option("--dmax", s_dmax)->capture_default_str();

    auto* v_dims = verify->add_subcommand("dims", "dimension table and its step law for one class");
    v_dims->add_option("--surface", v_surface, "surface preset");
    v_dims->add_option("--w", v_w, "class as w0,h_dot_c1,ch2")->capture_default_str();
    v_dims->add_option("--c1sq", v_c1sq, "self-intersection of the first Chern part")
        ->capture_default_str();
    v_dims->add_option("--dmax", v_dims_dmax)->capture_default_str();

    auto* v_all = verify->add_subcommand("all", "every suite at its default bounds");
    v_all->add_option("--order", v_order, "truncation order for the series suites");

    // sod-trace
    auto* trace_cmd = app.add_subcommand("sod-trace", "run the expansion engine and export its trace");
    long long tr_w0 = 1, tr_hc1 = 0, tr_c1sq = 0, tr_d = 0;
    unsigned long long tr_jmax = 10;
    std::string tr_ch2 = "0";
    std::string tr_out;
    std::string tr_surface = "p2";
    trace_cmd->add_option("--w0", tr_w0, "rank of the class")->required();
    trace_cmd->add_option("--hc1", tr_hc1, "H.c1 of the class")->capture_default_str();
    trace_cmd->add_option("--c1sq", tr_c1sq, "c1^2 of the class")->capture_default_str();
    trace_cmd->add_option("--ch2", tr_ch2, "ch2 of the class, integer or p/q")
        ->capture_default_str();
    trace_cmd->add_option("--d", tr_d, "recursion parameter (terminal tables match level d+1)")
        ->required();
    trace_cmd->add_option("--jmax", tr_jmax, "largest weight kept")->capture_default_str();
    trace_cmd->add_option("--trace-out", tr_out, "write the full trace JSON to this file");
    trace_cmd->add_option("--surface", tr_surface, "surface preset used for dimension flags")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (goettsche->parsed() || blowup->parsed() || nk->parsed() || theta->parsed()) {
            const std::size_t order = series_order ? *series_order : default_order();
            check_order_guard(global, order);
            if (goettsche->parsed()) {
                emit(global, series_payload(global, "goettsche",
                                            {{"euler", series_euler},
                                             {"order", static_cast<long long>(order)}},
                                            qnk::goettsche_series(series_euler, order)));
            } else if (blowup->parsed()) {
                emit(global, series_payload(global, "blowup",
                                            {{"euler", series_euler},
                                             {"order", static_cast<long long>(order)}},
                                            qnk::goettsche_series(series_euler + 1, order)));
            } else if (nk->parsed()) {
                const qnk::QSeries value = qnk::euler_product_inv(series_k, 1, order) *
                                           qnk::goettsche_series(series_euler, order);
                emit(global, series_payload(global, "nk",
                                            {{"k", series_k},
                                             {"euler", series_euler},
                                             {"order", static_cast<long long>(order)}},
                                            value));
            } else {
                if (series_rank == 0) throw std::invalid_argument("--rank must be positive");
                if (series_d == "inf") {
                    emit(global, series_payload(global, "theta",
                                                {{"rank", series_rank},
                                                 {"order", static_cast<long long>(order)}},
                                                qnk::theta_sum_infinite(series_rank, order)));
                } else {
                    std::size_t pos = 0;
                    unsigned long long level = 0;
                    try {
                        level = std::stoull(series_d, &pos);
                    } catch (const std::exception&) {
                        pos = std::string::npos;
                    }
                    if (pos != series_d.size()) {
                        throw std::invalid_argument(
                            "--d must be a non-negative integer or 'inf'");
                    }
                    emit(global,
                         series_payload(global, "theta",
                                        {{"rank", series_rank},
                                         {"d", static_cast<long long>(level)},
                                         {"order", static_cast<long long>(order)}},
                                        qnk::theta_sum(series_rank,
                                                       static_cast<unsigned>(level), order)));
                }
            }
            return exit_ok;
        }

        if (coeff->parsed()) {
            if (!coeff_all && coeff_method.empty()) {
                throw std::invalid_argument("choose --method or --all");
            }
            if (coeff_all && !coeff_method.empty()) {
                throw std::invalid_argument("--method and --all are mutually exclusive");
            }
            if (coeff_r < 1) throw std::invalid_argument("--r must be positive");
            if (coeff_d < 0) throw std::invalid_argument("--d must be non-negative");
            if (coeff_j < 0) throw std::invalid_argument("--j must be non-negative");
            check_order_guard(global, static_cast<std::size_t>(coeff_j));
            const unsigned r = static_cast<unsigned>(coeff_r);
            const unsigned d = static_cast<unsigned>(coeff_d);
            const unsigned j = static_cast<unsigned>(coeff_j);

            qnk::SODOptions options;
            options.max_nodes = global.max_nodes;
            auto by_sod = [&]() {
                const auto terminal = qnk::sod_terminal_at_level(engine_class(coeff_r), d,
                                                                 j, options);
                const auto it = terminal.find(j);
                return it == terminal.end() ? qnk::Int(0) : it->second;
            };

            CoeffValues values;
            if (coeff_all) {
                values.by_method.emplace_back("enum", qnk::a_tilde(r, d, j).str());
                values.by_method.emplace_back("young", qnk::a_count(r, d, j).str());
                values.by_method.emplace_back(
                    "genfun", qnk::theta_sum(r, d, j).coefficient(j).str());
                values.by_method.emplace_back("sod", by_sod().str());
                for (const auto& [method, value] : values.by_method)
                    values.agree = values.agree && value == values.by_method[0].second;
            } else if (coeff_method == "enum") {
                values.by_method.emplace_back("enum", qnk::a_tilde(r, d, j).str());
            } else if (coeff_method == "young") {
                values.by_method.emplace_back("young", qnk::a_count(r, d, j).str());
            } else if (coeff_method == "genfun") {
                values.by_method.emplace_back(
                    "genfun", qnk::theta_sum(r, d, j).coefficient(j).str());
            } else {
                if (coeff_d < 1) {
                    throw std::invalid_argument("--method sod requires --d >= 1");
                }
                values.by_method.emplace_back("sod", by_sod().str());
            }
            emit(global, coeff_payload(global,
                                       {{"r", coeff_r}, {"d", coeff_d}, {"j", coeff_j}},
                                       values));
            return values.agree ? exit_ok : exit_identity;
        }

        if (v_lemma->parsed()) {
            return report_verify(global, "lemma53",
                                 {{"rmax", v_rmax}, {"dmax", l_dmax}, {"jmax", l_jmax}},
                                 suite_lemma53(v_rmax, l_dmax, l_jmax));
        }
        if (v_thm->parsed()) {
            return report_verify(global, "thm52",
                                 {{"rmax", v_rmax}, {"dmax", t_dmax}, {"jmax", t_jmax}},
                                 suite_thm52(global, v_rmax, t_dmax, t_jmax));
        }
        if (v_euler->parsed()) {
            const std::size_t order = v_order ? *v_order : default_order();
            check_order_guard(global, order);
            const auto surfaces = v_surface.empty()
                                      ? preset_surfaces()
                                      : std::vector<qnk::SurfaceInvariants>{
                                            parse_surface(v_surface)};
            return report_verify(global, "euler",
                                 {{"order", static_cast<long long>(order)},
                                  {"kmax", v_kmax}},
                                 suite_euler(surfaces, order, v_kmax));
        }
        if (v_stab->parsed()) {
            return report_verify(global, "stabilize",
                                 {{"rmax", v_rmax}, {"dmax", s_dmax}},
                                 suite_stabilize(v_rmax, s_dmax));
        }
        if (v_dims->parsed()) {
            const qnk::SurfaceInvariants surface =
                v_surface.empty() ? qnk::SurfaceInvariants::k3() : parse_surface(v_surface);
            const qnk::BaseClass w = parse_class(v_w, v_c1sq);
            return report_verify(global, "dims",
                                 {{"w0", w.rank}, {"dmax", v_dims_dmax}},
                                 suite_dims(surface, w, v_dims_dmax));
        }
        if (v_all->parsed()) {
            const std::size_t order = v_order ? *v_order : default_order();
            check_order_guard(global, order);
            std::vector<qnk::VerifyCheck> checks = suite_lemma53(3, 5, 12);
            auto append = [&checks](std::vector<qnk::VerifyCheck> more) {
                checks.insert(checks.end(), std::make_move_iterator(more.begin()),
                              std::make_move_iterator(more.end()));
            };
            append(suite_thm52(global, 3, 4, 10));
            append(suite_euler(preset_surfaces(), order, 6));
            append(suite_stabilize(3, 8));
            append(suite_dims(qnk::SurfaceInvariants::k3(), parse_class("1,0,-5", 0), 3));
            return report_verify(global, "all",
                                 {{"order", static_cast<long long>(order)}}, checks);
        }

        if (trace_cmd->parsed()) {
            qnk::BaseClass w{tr_w0, tr_hc1, tr_c1sq, qnk::parse_rational(tr_ch2)};
            const qnk::SurfaceInvariants surface = parse_surface(tr_surface);
            const auto admissible = qnk::validate_assumption(w, surface);
            if (!admissible.ok) {
                throw std::invalid_argument("inadmissible class: " + admissible.clause);
            }
            if (tr_d < 0) throw std::invalid_argument("--d must be non-negative");
            qnk::SODOptions options;
            options.max_nodes = global.max_nodes;
            options.record_trace = true;
            options.surface = surface;
            const qnk::SODResult result = qnk::run(w, tr_d, tr_jmax, options);
            if (!tr_out.empty()) {
                std::ofstream file(tr_out, std::ios::binary);
                if (!file) {
                    throw std::runtime_error("cannot open output file: " + tr_out);
                }
                file << qnk::trace_to_json(result, options.surface).dump(1) << "\n";
            }
            emit(global, trace_table_payload(global, result, options.surface));
            return exit_ok;
        }
    } catch (const qnk::ResourceLimitError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
