#include "kclab/cli_app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "kclab/errors.hpp"
#include "kclab/graph.hpp"
#include "kclab/gridtiling.hpp"
#include "kclab/kcenter.hpp"
#include "kclab/reduction.hpp"
#include "kclab/structure.hpp"

namespace kclab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolation = 2;

std::string join_ids(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t t = 0; t < ids.size(); ++t) {
        if (t) out += ",";
        out += std::to_string(ids[t]);
    }
    return out;
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const FormatError&) {
        throw FormatError(std::string("flag ") + flag + ": cannot parse rational '" + text + "'");
    }
}

// The library itself is sequential; the env var is validated and recorded as
// the permitted parallelism cap.
int read_thread_cap() {
    const char* raw = std::getenv("KCLAB_THREADS");
    if (!raw) return 1;
    std::string text(raw);
    try {
        std::size_t pos = 0;
        int value = std::stoi(text, &pos);
        if (pos != text.size() || value < 1) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw FormatError("KCLAB_THREADS must be a positive integer, got '" + text + "'");
    }
}

struct VerifyOutcome {
    bool all_pass = true;
};

void emit_check(std::ostream& out, VerifyOutcome& outcome, const std::string& name, bool pass,
                const std::string& detail) {
    out << "CHECK " << name << " " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) out << " " << detail;
    out << "\n";
    if (!pass) outcome.all_pass = false;
}

void run_claims_check(std::ostream& out, VerifyOutcome& outcome, const WeightedGraph& graph,
                      const LabelMap& labels) {
    auto report = check_gadget_distances(graph, labels);
    std::ostringstream detail;
    if (report.pass()) {
        detail << "pairs=" << report.x_pairs_checked << " min_x=" << report.min_x_pair
               << " max_x=" << report.max_x_pair << " min_y=" << report.min_y_distance;
    } else {
        detail << "violations=" << report.violations.size() << " first=\""
               << report.violations.front() << "\"";
    }
    emit_check(out, outcome, "claims", report.pass(), detail.str());
}

void run_pathdec_check(std::ostream& out, VerifyOutcome& outcome, const WeightedGraph& graph,
                       const LabelMap& labels) {
    auto pd = build_path_decomposition(labels);
    auto report = validate_path_decomposition(graph, pd);
    std::ostringstream detail;
    if (report.valid) {
        detail << "width=" << report.width << " bags=" << pd.bags.size();
    } else {
        detail << "violations=" << report.violations.size() << " first=\""
               << report.violations.front() << "\"";
    }
    emit_check(out, outcome, "pathdec", report.valid, detail.str());
}

void run_hubs_check(std::ostream& out, VerifyOutcome& outcome, const WeightedGraph& graph,
                    const LabelMap& labels, const Rational& r, const Rational& c) {
    HubSet hub_set = build_hub_set(labels, r, c);
    auto report = validate_hub_set(graph, r, hub_set.hubs, c);
    std::ostringstream detail;
    detail << "r=" << r << " c=" << c << " hubs=" << hub_set.hubs.size()
           << " max_ball_hubs=" << report.max_ball_hub_count;
    if (!report.violations.empty())
        detail << " violations=" << report.violations.size() << " first={"
               << report.violations.front().u << "," << report.violations.front().v << "}";
    emit_check(out, outcome, "hubs", report.violations.empty(), detail.str());
}

void run_doubling_check(std::ostream& out, VerifyOutcome& outcome, const WeightedGraph& graph,
                        const LabelMap& labels) {
    Metric metric = metric_of(graph);
    const int bound = 324;
    for (const CoverReport& report : doubling_cover_samples(metric, labels)) {
        std::ostringstream name;
        name << "doubling[v=" << report.center << ",r=" << report.radius << "]";
        std::ostringstream detail;
        detail << "ball=" << report.ball_size << " cover=" << report.cover_count
               << " exact=" << (report.exact ? 1 : 0) << " bound=" << bound;
        emit_check(out, outcome, name.str(), report.cover_count <= bound, detail.str());
    }
}

void run_equivalence_check(std::ostream& out, VerifyOutcome& outcome, const GTInstance& gt) {
    auto gt_solution = solve_gt(gt);
    ReductionInstance inst = build_reduction(gt);
    Metric metric = metric_of(inst.graph);
    auto cover = decide_cover(metric, inst.k, inst.threshold);
    const bool agree = gt_solution.has_value() == cover.has_value();
    std::ostringstream detail;
    detail << "gt=" << (gt_solution ? "true" : "false")
           << " kcenter=" << (cover ? "true" : "false");
    emit_check(out, outcome, "equivalence", agree, detail.str());
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-center laboratory: grid-tiling instances, gadget graphs, exact and "
                 "approximate solvers, structural verifiers"};
    app.name("kclab");
    app.require_subcommand(1);

    // gen-gt
    auto* gen = app.add_subcommand("gen-gt", "generate a grid-tiling instance");
    int gen_kappa = 2, gen_n = 2, gen_set_size = 1;
    std::uint64_t gen_seed = 0;
    bool gen_planted = false;
    std::string gen_out;
    gen->add_option("--kappa", gen_kappa, "grid dimension")->required();
    gen->add_option("--n", gen_n, "coordinate range")->required();
    gen->add_option("--set-size", gen_set_size, "pairs per set")->required();
    gen->add_option("--seed", gen_seed, "rng seed")->required();
    gen->add_flag("--planted", gen_planted, "embed a monotone solution");
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "compile a grid-tiling instance to a gadget graph");
    std::string reduce_gt, reduce_graph, reduce_labels;
    reduce->add_option("--gt", reduce_gt, "grid-tiling instance file")->required();
    reduce->add_option("--graph", reduce_graph, "output graph file")->required();
    reduce->add_option("--labels", reduce_labels, "output role sidecar file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "run a k-center solver on a graph file");
    std::string solve_graph, solve_algo, solve_epsilon, solve_radius;
    int solve_k = 1;
    solve->add_option("--graph", solve_graph, "graph file")->required();
    solve->add_option("--algo", solve_algo, "exact|greedy|epas")->required();
    solve->add_option("--k", solve_k, "number of centers")->required();
    solve->add_option("--epsilon", solve_epsilon, "epas accuracy, rational");
    solve->add_option("--radius", solve_radius, "decision radius, rational");

    // verify
    auto* verify = app.add_subcommand("verify", "run structural checks");
    std::string verify_graph, verify_labels, verify_check, verify_r, verify_c = "4/1", verify_gt;
    verify->add_option("--graph", verify_graph, "graph file");
    verify->add_option("--labels", verify_labels, "role sidecar file");
    verify->add_option("--check", verify_check, "pathdec|hubs|doubling|claims|equivalence|all")
        ->required();
    verify->add_option("--r", verify_r, "hub scale, rational");
    verify->add_option("--c", verify_c, "hub ball constant, rational");
    verify->add_option("--gt", verify_gt, "grid-tiling file (equivalence check)");

    // equivalence
    auto* equiv = app.add_subcommand("equivalence", "compare the two solution oracles");
    std::string equiv_gt;
    equiv->add_option("--gt", equiv_gt, "grid-tiling instance file")->required();

    // report
    auto* rep = app.add_subcommand("report", "equivalence plus the full verifier battery");
    std::string report_gt;
    rep->add_option("--gt", report_gt, "grid-tiling instance file")->required();

    std::reverse(args.begin(), args.end()); // CLI11 consumes args back to front
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        read_thread_cap();

        if (gen->parsed()) {
            GTInstance inst = gen_gt(gen_kappa, gen_n, gen_set_size, gen_planted, gen_seed);
            if (gen_out.empty()) {
                write_gt(inst, out);
            } else {
                save_gt(inst, gen_out);
                out << "WROTE " << gen_out << "\n";
            }
            return kExitOk;
        }

        if (reduce->parsed()) {
            GTInstance gt = load_gt(reduce_gt);
            ReductionInstance inst = build_reduction(gt);
            save_graph(inst.graph, reduce_graph);
            save_labels(inst.labels, reduce_labels);
            out << "REDUCED kappa=" << gt.kappa << " n=" << gt.n
                << " V=" << inst.graph.vertex_count() << " E=" << inst.graph.edges().size()
                << " k=" << inst.k << " threshold=" << inst.threshold << "\n";
            return kExitOk;
        }

        if (solve->parsed()) {
            WeightedGraph graph = load_graph(solve_graph);
            Metric metric = metric_of(graph);
            if (solve_algo == "exact") {
                if (!solve_radius.empty()) {
                    Rational radius = parse_rational_flag(solve_radius, "--radius");
                    auto witness = decide_cover(metric, solve_k, radius);
                    if (witness)
                        out << "SAT cost=" << cost(metric, *witness)
                            << " centers=" << join_ids(witness->ids) << "\n";
                    else
                        out << "UNSAT cost=" << radius << " centers=\n";
                    return kExitOk;
                }
                SolveOutcome outcome = solve_exact(metric, solve_k);
                out << to_string(outcome.status) << " cost=" << outcome.cost
                    << " centers=" << join_ids(outcome.centers.ids) << "\n";
                return kExitOk;
            }
            if (solve_algo == "greedy") {
                CenterSet centers = farthest_first(metric, solve_k);
                out << "SAT cost=" << cost(metric, centers)
                    << " centers=" << join_ids(centers.ids) << "\n";
                return kExitOk;
            }
            if (solve_algo == "epas") {
                if (solve_epsilon.empty()) throw FormatError("--algo epas requires --epsilon");
                Rational epsilon = parse_rational_flag(solve_epsilon, "--epsilon");
                SolveOutcome outcome = epas_doubling(metric, solve_k, epsilon);
                out << to_string(outcome.status) << " cost=" << outcome.cost
                    << " centers=" << join_ids(outcome.centers.ids) << "\n";
                return kExitOk;
            }
            throw FormatError("unknown --algo '" + solve_algo + "'");
        }

        if (verify->parsed() || rep->parsed()) {
            VerifyOutcome outcome;
            if (rep->parsed()) {
                GTInstance gt = load_gt(report_gt);
                ReductionInstance inst = build_reduction(gt);
                run_equivalence_check(out, outcome, gt);
                run_claims_check(out, outcome, inst.graph, inst.labels);
                run_pathdec_check(out, outcome, inst.graph, inst.labels);
                const int nsq = gt.n * gt.n;
                Rational c(4);
                for (const Rational& r :
                     {Rational(1, 2), Rational(nsq), Rational(8 * nsq + 3)})
                    run_hubs_check(out, outcome, inst.graph, inst.labels, r, c);
                run_doubling_check(out, outcome, inst.graph, inst.labels);
                return outcome.all_pass ? kExitOk : kExitViolation;
            }

            const std::string& check = verify_check;
            if (check == "equivalence") {
                if (verify_gt.empty()) throw FormatError("--check equivalence requires --gt");
                run_equivalence_check(out, outcome, load_gt(verify_gt));
                return outcome.all_pass ? kExitOk : kExitViolation;
            }
            if (verify_graph.empty() || verify_labels.empty())
                throw FormatError("--check " + check + " requires --graph and --labels");
            WeightedGraph graph = load_graph(verify_graph);
            LabelMap labels = load_labels(verify_labels);
            if (graph.vertex_count() != labels.vertex_count())
                throw FormatError("graph and label files disagree on the vertex count");

            if (check == "claims") {
                run_claims_check(out, outcome, graph, labels);
            } else if (check == "pathdec") {
                run_pathdec_check(out, outcome, graph, labels);
            } else if (check == "hubs") {
                Rational c = parse_rational_flag(verify_c, "--c");
                if (!verify_r.empty()) {
                    run_hubs_check(out, outcome, graph, labels, parse_rational_flag(verify_r, "--r"), c);
                } else {
                    const int nsq = labels.n() * labels.n();
                    for (const Rational& r :
                         {Rational(1, 2), Rational(nsq), Rational(8 * nsq + 3)})
                        run_hubs_check(out, outcome, graph, labels, r, c);
                }
            } else if (check == "doubling") {
                run_doubling_check(out, outcome, graph, labels);
            } else if (check == "all") {
                run_claims_check(out, outcome, graph, labels);
                run_pathdec_check(out, outcome, graph, labels);
                Rational c = parse_rational_flag(verify_c, "--c");
                const int nsq = labels.n() * labels.n();
                for (const Rational& r : {Rational(1, 2), Rational(nsq), Rational(8 * nsq + 3)})
                    run_hubs_check(out, outcome, graph, labels, r, c);
                run_doubling_check(out, outcome, graph, labels);
            } else {
                throw FormatError("unknown --check '" + check + "'");
            }
            return outcome.all_pass ? kExitOk : kExitViolation;
        }

        if (equiv->parsed()) {
            GTInstance gt = load_gt(equiv_gt);
            auto gt_solution = solve_gt(gt);
            ReductionInstance inst = build_reduction(gt);
            Metric metric = metric_of(inst.graph);
            auto cover = decide_cover(metric, inst.k, inst.threshold);
            if (gt_solution.has_value() == cover.has_value()) {
                out << "EQUIV OK sat=" << (gt_solution ? "true" : "false") << "\n";
                return kExitOk;
            }
            out << "EQUIV MISMATCH gt=" << (gt_solution ? "true" : "false")
                << " kcenter=" << (cover ? "true" : "false") << "\n";
            return kExitViolation;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    err << "error: no subcommand\n";
    return kExitInputError;
}

} // namespace kclab
