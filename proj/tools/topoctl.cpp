// Command line front end: generate instances, run the solvers and the exact
// searches, sweep the covering-cycle question, and batch results into csv.
//
// Exit codes: 0 fine, 1 bad input, 2 certificate violation, 3 out of time,
// 4 counterexample found.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "topo/dpa.hpp"
#include "topo/errors.hpp"
#include "topo/instance.hpp"
#include "topo/oracles.hpp"
#include "topo/scss.hpp"
#include "topo/second_ham.hpp"

namespace {

constexpr const char* kCsvHeader = "instance,algo,k,size,opt,ratio_num,ratio_den,millis,audit";

struct GenOpts {
    int n = 10;
    int count = 1;
    std::uint64_t seed = 1;
    std::int64_t extent = 100;
    std::int64_t rl_sq = 900;
    std::int64_t rh_sq = 4900;
    std::string out = ".";
};

struct SolveOpts {
    std::string kind;
    std::string in;
    int k = 8;
    bool audit = false;
    std::int64_t budget_ms = 0;
    std::string out;
    std::string trace;
    std::string dot;
};

struct ReportOpts {
    std::string kind;
    int k = 8;
    bool audit = false;
    bool with_opt = false;
    std::int64_t budget_ms = 0;
    std::string out;
};

struct SweepOpts {
    int max_v = 8;
    int max_u = 6;
    std::int64_t budget_ms = 0;
    std::string out;
};

struct Row {
    std::string instance;
    std::string algo;
    int k = 0;
    int size = 0;
    std::string opt;        // blank unless an exact search ran
    std::string ratio_num;  // size/opt in lowest terms; blank without opt
    std::string ratio_den;
    std::int64_t millis = 0;
    std::string audit;  // blank, "clean" or "dirty"
};

// opt of zero means the input needed nothing; the ratio is undefined then.
void fill_opt_ratio(Row& row, std::size_t size, std::size_t opt) {
    row.opt = std::to_string(opt);
    if (opt == 0) return;
    topo::Rational r(static_cast<std::int64_t>(size), static_cast<std::int64_t>(opt));
    row.ratio_num = std::to_string(r.num);
    row.ratio_den = std::to_string(r.den);
}

bool within_bound(std::size_t size, std::size_t opt, topo::Rational bound) {
    return static_cast<std::int64_t>(size) * bound.den <=
           bound.num * static_cast<std::int64_t>(opt);
}

std::string csv_row(const Row& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.algo << ',' << r.k << ',' << r.size << ',' << r.opt << ','
       << r.ratio_num << ',' << r.ratio_den << ',' << r.millis << ',' << r.audit;
    return os.str();
}

class Stopwatch {
  public:
    std::int64_t ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs one solver kind on one input file.  Returns 0, or 2 when an audit was
// asked for and came back dirty (complaints go to stderr).
int solve_one(const SolveOpts& o, bool with_opt, Row& row) {
    row.instance = o.in;
    row.algo = o.kind;
    row.k = o.k;
    if (o.audit && (o.kind == "dpa-exact" || o.kind == "scss-exact"))
        throw topo::input_error("--audit applies to the approximate solvers");
    if (!o.trace.empty() && o.kind != "dpa")
        throw topo::input_error("--trace applies to the dpa solver");

    int rc = 0;
    if (o.kind == "dpa" || o.kind == "dpa-exact") {
        topo::Instance inst = topo::instance_from_json(topo::read_file(o.in));
        topo::PowerAssignment best;
        std::optional<std::size_t> exact_opt;
        if (o.kind == "dpa") {
            Stopwatch sw;
            topo::DpaResult res = topo::dpa_approx(inst, o.k);
            row.millis = sw.ms();
            best = res.assignment;
            if (o.audit) {
                std::vector<std::string> complaints = topo::audit_trace(inst, res.trace);
                for (const std::string& c : complaints) std::cerr << "audit: " << c << "\n";
                exact_opt = topo::dpa_opt(inst, o.budget_ms).high.size();
                fill_opt_ratio(row, best.high.size(), *exact_opt);
                bool cert = within_bound(best.high.size(), *exact_opt, topo::ratio_bound(o.k));
                if (!cert) std::cerr << "audit: solution exceeds the guaranteed ratio\n";
                row.audit = (complaints.empty() && cert) ? "clean" : "dirty";
                if (row.audit == "dirty") rc = 2;
            } else if (with_opt) {
                exact_opt = topo::dpa_opt(inst, o.budget_ms).high.size();
                fill_opt_ratio(row, best.high.size(), *exact_opt);
            }
            if (!o.trace.empty()) topo::write_file(o.trace, topo::trace_to_json(res.trace));
        } else {
            Stopwatch sw;
            best = topo::dpa_opt(inst, o.budget_ms);
            row.millis = sw.ms();
            exact_opt = best.high.size();
            fill_opt_ratio(row, best.high.size(), best.high.size());
        }
        row.size = static_cast<int>(best.high.size());
        if (!o.out.empty()) {
            // the solution file carries the certificate whenever an exact
            // optimum was computed alongside it
            nlohmann::json sol = nlohmann::json::parse(topo::assignment_to_json(best));
            if (exact_opt) {
                sol["opt"] = *exact_opt;
                if (*exact_opt > 0) {
                    topo::Rational r(static_cast<std::int64_t>(best.high.size()),
                                     static_cast<std::int64_t>(*exact_opt));
                    sol["ratio_num"] = r.num;
                    sol["ratio_den"] = r.den;
                }
            }
            topo::write_file(o.out, sol.dump() + "\n");
        }
        if (!o.dot.empty()) topo::write_file(o.dot, topo::to_dot(topo::induce_graph(inst, best)));
    } else {
        topo::DiGraph g = topo::digraph_from_json(topo::read_file(o.in));
        std::vector<std::pair<int, int>> kept;
        if (o.kind == "scss") {
            topo::SymDigraph sg = topo::make_sym(g);
            Stopwatch sw;
            topo::ScssResult res = topo::scss_approx(sg, o.k);
            row.millis = sw.ms();
            kept = res.kept;
            if (o.audit || with_opt) {
                std::size_t opt = topo::scss_opt(g, o.budget_ms).size();
                fill_opt_ratio(row, kept.size(), opt);
                if (o.audit) {
                    bool cert = within_bound(kept.size(), opt, topo::ratio_bound(o.k));
                    if (!cert) std::cerr << "audit: solution exceeds the guaranteed ratio\n";
                    row.audit = cert ? "clean" : "dirty";
                    if (!cert) rc = 2;
                }
            }
            if (!o.out.empty()) topo::write_file(o.out, topo::scss_result_to_json(res));
        } else {
            Stopwatch sw;
            kept = topo::scss_opt(g, o.budget_ms);
            row.millis = sw.ms();
            fill_opt_ratio(row, kept.size(), kept.size());
            if (!o.out.empty())
                topo::write_file(o.out, topo::digraph_to_json(topo::digraph_from_arcs(g.n, kept)));
        }
        row.size = static_cast<int>(kept.size());
        if (!o.dot.empty())
            topo::write_file(o.dot, topo::to_dot(topo::digraph_from_arcs(g.n, kept)));
    }
    return rc;
}

int run_gen(const GenOpts& g) {
    std::filesystem::create_directories(g.out);
    for (int i = 0; i < g.count; ++i) {
        std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        topo::Instance inst = topo::generate_instance(g.n, g.extent, g.rl_sq, g.rh_sq, seed);
        std::filesystem::path path =
            std::filesystem::path(g.out) / ("inst_" + std::to_string(seed) + ".json");
        topo::write_file(path.string(), topo::instance_to_json(inst));
        std::cout << path.string() << "\n";
    }
    return 0;
}

int run_solve(const SolveOpts& o) {
    Row row;
    int rc = solve_one(o, /*with_opt=*/false, row);
    std::cout << kCsvHeader << "\n" << csv_row(row) << "\n";
    return rc;
}

int run_report(const ReportOpts& o, const std::vector<std::string>& files) {
    std::ostringstream csv;
    csv << kCsvHeader << "\n";
    int rc = 0;
    for (const std::string& path : files) {
        SolveOpts s;
        s.kind = o.kind;
        s.in = path;
        s.k = o.k;
        s.audit = o.audit;
        s.budget_ms = o.budget_ms;
        Row row;
        int one = solve_one(s, o.with_opt, row);
        if (one != 0) rc = one;
        csv << csv_row(row) << "\n";
    }
    std::cout << csv.str();
    if (!o.out.empty()) topo::write_file(o.out, csv.str());
    return rc;
}

int run_sweep(const SweepOpts& o) {
    topo::SweepOutcome res = topo::verify_conjecture_sweep(o.max_v, o.max_u, o.budget_ms);
    if (!o.out.empty()) {
        std::string text;
        for (const std::string& line : res.report_lines) text += line + "\n";
        topo::write_file(o.out, text);
    }
    std::cout << "instances=" << res.instances << " counterexamples=" << res.counterexamples
              << "\n";
    return res.counterexamples > 0 ? 4 : 0;
}

const std::vector<std::string> kKinds = {"dpa", "dpa-exact", "scss", "scss-exact"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-radius topology control toolkit"};
    app.require_subcommand(1);

    GenOpts g;
    CLI::App* gen = app.add_subcommand("gen", "write random feasible instances as json");
    gen->add_option("--n", g.n, "points per instance")->capture_default_str();
    gen->add_option("--count", g.count, "how many instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--seed", g.seed, "seed of the first instance; file i uses seed+i")
        ->capture_default_str();
    gen->add_option("--extent", g.extent, "points are drawn on [0,extent]^2")
        ->capture_default_str();
    gen->add_option("--rl-sq", g.rl_sq, "low squared radius")->capture_default_str();
    gen->add_option("--rh-sq", g.rh_sq, "high squared radius")->capture_default_str();
    gen->add_option("--out", g.out, "output directory")->capture_default_str();

    SolveOpts s;
    CLI::App* solve = app.add_subcommand("solve", "run one solver on one input, print a csv row");
    solve->add_option("--kind", s.kind, "dpa, dpa-exact, scss or scss-exact")
        ->required()
        ->check(CLI::IsMember(kKinds));
    solve->add_option("--in", s.in, "instance json (dpa kinds) or digraph json (scss kinds)")
        ->required();
    solve->add_option("--k", s.k, "contraction threshold")->capture_default_str();
    solve->add_flag("--audit", s.audit,
                    "certify against the exact optimum; for dpa also replay the run trace");
    solve->add_option("--budget-ms", s.budget_ms, "time limit for exact searches, 0 = none");
    solve->add_option("--out", s.out, "write the solution json here");
    solve->add_option("--trace", s.trace, "write the run trace json here");
    solve->add_option("--dot", s.dot, "write the solved graph as dot");

    ReportOpts r;
    std::vector<std::string> files;
    CLI::App* report = app.add_subcommand("report", "csv rows for many input files");
    report->add_option("--kind", r.kind, "dpa, dpa-exact, scss or scss-exact")
        ->required()
        ->check(CLI::IsMember(kKinds));
    report->add_option("--k", r.k, "contraction threshold")->capture_default_str();
    report->add_flag("--audit", r.audit, "certify every row against the exact optimum");
    report->add_flag("--with-opt", r.with_opt, "also run the exact search per input");
    report->add_option("--budget-ms", r.budget_ms, "time limit for exact searches, 0 = none");
    report->add_option("--out", r.out, "also write the csv here");
    report->add_option("files", files, "input files")->required();

    SweepOpts c;
    CLI::App* sweep =
        app.add_subcommand("verify-conjecture", "hunt for covering-cycle counterexamples");
    sweep->add_option("--max-v", c.max_v, "largest cycle size")->capture_default_str();
    sweep->add_option("--max-u", c.max_u, "most attachments per instance")->capture_default_str();
    sweep->add_option("--budget-ms", c.budget_ms, "time limit per single search, 0 = none");
    sweep->add_option("--out", c.out, "write the per-instance report lines here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(g);
        if (solve->parsed()) return run_solve(s);
        if (report->parsed()) return run_report(r, files);
        return run_sweep(c);
    } catch (const topo::timeout_error& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return 3;
    } catch (const topo::contract_error& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
