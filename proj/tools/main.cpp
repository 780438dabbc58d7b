// Command-line front end: Lyndon word tables, transformation matrices,
// series transduction, cost-model tables, operator evaluation, the CSTR
// demo, and the self-test battery. Emits plot-ready CSV plus JSON-lines run
// records.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "cfs/fliess.hpp"
#include "cfs/integrate.hpp"
#include "cfs/lyndon.hpp"
#include "cfs/realize.hpp"
#include "cfs/selftest.hpp"
#include "cfs/transduce.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return is;
}

// median wall time of `repeats` runs, milliseconds
template <typename F>
double median_wall_ms(int repeats, F&& body) {
    std::vector<double> ms;
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        auto start = std::chrono::steady_clock::now();
        body();
        auto stop = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(ms.begin(), ms.end());
    return ms[ms.size() / 2];
}

void write_xy_csv(std::ostream& os, const cfs::Signal& s, const std::vector<double>& y) {
    os << "t,y\n";
    char buf[64];
    for (std::size_t j = 0; j < s.points(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", s.t(j));
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", y[j]);
        os << buf << '\n';
    }
}

struct GlobalOpts {
    std::uint64_t seed = 12345;
    int repeats = 10;
};

int cmd_lyndon(int card, int nmax, bool list, const std::string& out) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file = open_out(out);
        os = &file;
    }
    if (list) {
        for (const auto& lw : cfs::generate_upto(cfs::Alphabet::with_cardinality(card), nmax))
            *os << 'l' << lw.index << ',' << lw.word.str() << '\n';
        return 0;
    }
    *os << "n,L,L_plus,L_hat,Lplus_hat\n";
    char buf[64];
    for (int n = 1; n <= nmax; ++n) {
        auto hat = cfs::asymptotic_counts(n, card);
        *os << n << ',' << cfs::count_length(n, card).get_str() << ','
            << cfs::count_upto(n, card).get_str() << ',';
        std::snprintf(buf, sizeof buf, "%.17g", hat.L_hat);
        *os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", hat.Lplus_hat);
        *os << buf << '\n';
    }
    return 0;
}

int cmd_matrix(int card, int k, const std::string& out) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file = open_out(out);
        os = &file;
    }
    const cfs::Alphabet a = cfs::Alphabet::with_cardinality(card);
    auto fwd = cfs::forward_matrix(a, k);
    auto inv = cfs::inverse_matrix(a, k);
    cfs::write_matrix_csv(*os, *fwd);
    *os << "# seminorm_T=" << cfs::to_string(cfs::seminorm_T(a, k))
        << " norm_inf_T=" << cfs::to_string(cfs::norm_inf_T(a, k))
        << " norm_inf_Tinv=" << cfs::norm_inf_Tinv(a, k).get_str() << '\n';
    cfs::write_matrix_csv(*os, *inv);
    return 0;
}

int cmd_transduce(const std::string& in, const std::string& out, bool inverse, int card) {
    auto is = open_in(in);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file = open_out(out);
        os = &file;
    }
    if (inverse) {
        cfs::LPoly q = cfs::read_lpoly(is);
        cfs::write_poly(*os, cfs::apply_L_inv(q));
    } else {
        cfs::Poly p = cfs::read_poly(is);
        const int min_card = std::max(p.max_letter(), 0) + 1;
        if (card == 0) card = min_card;
        if (card < min_card)
            throw std::runtime_error("series uses x" + std::to_string(min_card - 1) +
                                     "; --card must be at least " + std::to_string(min_card));
        cfs::write_lpoly(*os, cfs::apply_L(p, cfs::Alphabet::with_cardinality(card)));
    }
    return 0;
}

int cmd_efficiency(int card, int nmax, bool exact, bool bounds_only, const std::string& out) {
    std::vector<cfs::CostReport> rows;
    for (int n = 1; n <= nmax; ++n) rows.push_back(cfs::efficiency(n, card, bounds_only));
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file = open_out(out);
        os = &file;
    }
    cfs::write_cost_csv(*os, rows, exact);
    return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& series_path,
                 const std::string& signal_path, int n, const std::string& method,
                 const std::string& backend, const std::string& out,
                 const std::string& record_path) {
    auto sf = open_in(series_path);
    cfs::Poly p = cfs::read_poly(sf);
    auto gf = open_in(signal_path);
    cfs::Signal s = cfs::Signal::read_csv(gf);
    cfs::GeneratingSeries c = cfs::make_series(p, n);

    cfs::EvalResult result;
    auto run = [&] {
        result = (method == "alg1")
                     ? cfs::evaluate_alg1(c, s,
                                          backend == "direct" ? cfs::Backend::direct
                                                              : cfs::Backend::chen)
                     : cfs::evaluate_alg2(c, s);
    };
    run();  // warm the matrix cache; the blocks are inputs to the method
    const double wall = median_wall_ms(g.repeats, run);

    auto os = open_out(out);
    write_xy_csv(os, s, result.y);

    json rec{{"command", "evaluate"},
             {"method", method},
             {"backend", method == "alg1" ? backend : "direct"},
             {"n", n},
             {"integral_count", result.integral_count},
             {"wall_ms", wall},
             {"repeats", g.repeats},
             {"seed", g.seed},
             {"points", s.points()},
             {"out", out}};
    std::cout << rec.dump() << '\n';
    if (!record_path.empty()) {
        std::ofstream rf(record_path, std::ios::app);
        if (!rf) throw std::runtime_error("cannot open '" + record_path + "'");
        rf << rec.dump() << '\n';
    }
    return 0;
}

int cmd_cstr(const GlobalOpts& g, int n, double tmax, double dt, int taylor,
             const std::string& out_dir) {
    if (taylor == 0) taylor = n;
    fs::create_directories(out_dir);
    const auto points = static_cast<std::size_t>(std::llround(tmax / dt)) + 1;
    cfs::Signal u = cfs::attack_input(0.0, dt, points);

    cfs::GeneratingSeries c = cfs::series_from_realization(cfs::cstr_realization(taylor), n);
    {
        auto os = open_out((fs::path(out_dir) / "series.txt").string());
        os << "# CSTR generating series, truncation n=" << n << ", Taylor degree " << taylor
           << '\n';
        cfs::write_poly(os, c.poly);
    }
    const cfs::Alphabet two(1);
    {
        auto os = open_out((fs::path(out_dir) / "series_lyndon.txt").string());
        os << "# Lyndon-monomial form of the CSTR series, truncation n=" << n << '\n';
        cfs::write_lpoly(os, cfs::apply_L(c.poly, two));
    }

    cfs::EvalResult r1, r2;
    cfs::forward_matrix(two, n);  // build the blocks outside the timed region
    const double wall1 = median_wall_ms(g.repeats, [&] { r1 = cfs::evaluate_alg1(c, u); });
    const double wall2 = median_wall_ms(g.repeats, [&] { r2 = cfs::evaluate_alg2(c, u); });
    std::vector<double> yode;
    const double wall_ode = median_wall_ms(1, [&] { yode = cfs::cstr_reference_ode(u); });

    {
        auto os = open_out((fs::path(out_dir) / "y_alg1.csv").string());
        write_xy_csv(os, u, r1.y);
    }
    {
        auto os = open_out((fs::path(out_dir) / "y_alg2.csv").string());
        write_xy_csv(os, u, r2.y);
    }
    {
        auto os = open_out((fs::path(out_dir) / "y_ode.csv").string());
        write_xy_csv(os, u, yode);
    }

    auto rf = open_out((fs::path(out_dir) / "runrecord.jsonl").string());
    json common{{"command", "cstr"}, {"n", n},           {"tmax", tmax},
                {"dt", dt},          {"taylor", taylor}, {"repeats", g.repeats},
                {"seed", g.seed}};
    json rec1 = common;
    rec1["method"] = "alg1";
    rec1["integral_count"] = r1.integral_count;
    rec1["wall_ms"] = wall1;
    json rec2 = common;
    rec2["method"] = "alg2";
    rec2["integral_count"] = r2.integral_count;
    rec2["wall_ms"] = wall2;
    json rec3 = common;
    rec3["method"] = "rk4";
    rec3["wall_ms"] = wall_ode;
    rf << rec1.dump() << '\n' << rec2.dump() << '\n' << rec3.dump() << '\n';
    std::cout << rec1.dump() << '\n' << rec2.dump() << '\n' << rec3.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) try {
    CLI::App app{"Chen-Fliess series evaluation in Lyndon coordinates"};
    app.set_version_flag("--version", "cfs 0.1.0");
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for randomized checks");
    app.add_option("--repeats", g.repeats, "timing repetitions (median reported)")
        ->check(CLI::PositiveNumber);

    int card = 2, nmax = 10, k = 2, n = 9, taylor = 0;
    bool list = false, exact = false, bounds_only = false, inverse = false, quick = false;
    double tmax = 1.25, dt = 1e-4;
    std::string out, in, series_path, signal_path, record_path, out_dir = "cstr_out";
    std::string method = "alg1", backend = "chen";

    auto* lyndon = app.add_subcommand("lyndon", "Lyndon word counts or the word list");
    lyndon->fallthrough();
    lyndon->add_option("--card", card, "alphabet cardinality")->check(CLI::Range(1, 256));
    lyndon->add_option("--nmax", nmax, "maximum word length")->required()->check(CLI::PositiveNumber);
    lyndon->add_flag("--list", list, "emit the words instead of the count table");
    lyndon->add_option("--out", out, "output file (default stdout)");

    auto* matrix = app.add_subcommand("matrix", "transformation blocks T_k and T_k^-1");
    matrix->fallthrough();
    matrix->add_option("--card", card, "alphabet cardinality")->check(CLI::Range(1, 256));
    matrix->add_option("--k", k, "degree")->required()->check(CLI::NonNegativeNumber);
    matrix->add_option("--out", out, "output file (default stdout)");

    auto* transduce = app.add_subcommand("transduce", "series file <-> Lyndon monomial file");
    transduce->fallthrough();
    transduce->add_option("--in", in, "input file")->required();
    transduce->add_flag("--inverse", inverse, "monomial file to series file");
    int tcard = 0;
    transduce->add_option("--card", tcard, "alphabet cardinality (default: inferred)");
    transduce->add_option("--out", out, "output file (default stdout)");

    auto* efficiency = app.add_subcommand("efficiency", "cost model table I_X, I_L, CE and bounds");
    efficiency->fallthrough();
    efficiency->add_option("--card", card, "alphabet cardinality")->check(CLI::Range(1, 256));
    efficiency->add_option("--nmax", nmax, "maximum degree")->required()->check(CLI::PositiveNumber);
    efficiency->add_flag("--exact", exact, "emit exact p/q cells instead of doubles");
    efficiency->add_flag("--bounds-only", bounds_only, "skip the I_L enumeration");
    efficiency->add_option("--out", out, "output file (default stdout)");

    auto* evaluate = app.add_subcommand("evaluate", "evaluate a series on a signal");
    evaluate->fallthrough();
    evaluate->add_option("--series", series_path, "series file")->required();
    evaluate->add_option("--signal", signal_path, "signal CSV")->required();
    evaluate->add_option("--n", n, "truncation degree")->required()->check(CLI::PositiveNumber);
    evaluate->add_option("--method", method, "alg1 | alg2")->check(CLI::IsMember({"alg1", "alg2"}));
    evaluate->add_option("--backend", backend, "chen | direct (alg1 only)")
        ->check(CLI::IsMember({"chen", "direct"}));
    evaluate->add_option("--out", out, "output CSV t,y")->required();
    evaluate->add_option("--record", record_path, "append the JSON run record here");

    auto* cstr = app.add_subcommand("cstr", "CSTR zero-dynamics attack demo");
    cstr->fallthrough();
    cstr->add_option("--n", n, "truncation degree");
    cstr->add_option("--tmax", tmax, "time horizon");
    cstr->add_option("--dt", dt, "grid step");
    cstr->add_option("--taylor", taylor, "Taylor degree of the exponential (default n)");
    cstr->add_option("--out", out_dir, "output directory");

    auto* selftest = app.add_subcommand("selftest", "run the invariant battery");
    selftest->fallthrough();
    selftest->add_flag("--quick", quick, "trimmed trial counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*lyndon) return cmd_lyndon(card, nmax, list, out);
        if (*matrix) return cmd_matrix(card, k, out);
        if (*transduce) return cmd_transduce(in, out, inverse, tcard);
        if (*efficiency) return cmd_efficiency(card, nmax, exact, bounds_only, out);
        if (*evaluate)
            return cmd_evaluate(g, series_path, signal_path, n, method, backend, out, record_path);
        if (*cstr) return cmd_cstr(g, n, tmax, dt, taylor, out_dir);
        if (*selftest) return cfs::run_selftest(std::cout, g.seed, quick) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
}
