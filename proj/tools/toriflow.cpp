// toriflow: command-line front end for the library.
//
// Every subcommand reads JSON, computes, and then writes one JSON report to
// stdout (or --out).  The report is written only after the computation
// finishes, so a failed run never leaves a partial file.  Exit codes:
//   0 success, 1 verification failure, 2 input error, 3 cap exceeded.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toriflow/acceptance.hpp"
#include "toriflow/cells.hpp"
#include "toriflow/common.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/jsonio.hpp"
#include "toriflow/markov.hpp"
#include "toriflow/netflow.hpp"
#include "toriflow/order.hpp"
#include "toriflow/toric.hpp"
#include "toriflow/transform.hpp"
#include "toriflow/triangulate.hpp"
#include "toriflow/worstcase.hpp"

using namespace toriflow;

namespace {

constexpr int kOk = 0, kVerifyFail = 1, kInputError = 2, kCapExceeded = 3;

struct RunConfig {
    long long cap_points = 1000000;
    double cap_seconds = 0.0;
    int degree_cap = 0;
    std::uint64_t seed = 0;
    std::string out;

    Caps caps() const {
        Caps c;
        c.max_points = cap_points;
        c.max_seconds = cap_seconds;
        c.degree_cap = degree_cap;
        return c;
    }
};

json binomial_to_json(const Binomial& b) {
    return json{{"lead", b.lead}, {"trail", b.trail}, {"degree", b.degree()}};
}

json basis_to_json(const std::vector<Binomial>& basis) {
    json arr = json::array();
    for (const Binomial& b : basis) arr.push_back(binomial_to_json(b));
    return arr;
}

const char* status_name(GBStatus s) {
    switch (s) {
        case GBStatus::complete: return "complete";
        case GBStatus::degree_truncated: return "degree_truncated";
        default: return "time_truncated";
    }
}

// accepts a flat coordinate array, a nested row-major matrix, or an
// {"values": {arcId: value}} object
Vec vector_from_file(const std::string& path, const FlowPolytopeSpec& spec,
                     const char* what) {
    json j = load_json_file(path);
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        json flat = json::array();
        for (const auto& row : j)
            for (const auto& v : row) flat.push_back(v);
        j = flat;
    }
    Vec values = flow_from_json(j, spec).values;
    if (static_cast<int>(values.size()) != spec.num_arcs())
        throw InputError(std::string(what) + " has the wrong number of entries");
    return values;
}

json named_tables_to_json(const std::vector<Vec>& tables,
                          const std::vector<std::string>& names, int cols) {
    json arr = json::array();
    for (size_t i = 0; i < tables.size(); ++i) {
        json rows = json::array();
        for (size_t p = 0; p < tables[i].size(); p += static_cast<size_t>(cols))
            rows.push_back(std::vector<Coord>(tables[i].begin() + static_cast<long>(p),
                                              tables[i].begin() + static_cast<long>(p) + cols));
        arr.push_back(json{{"name", names[i]}, {"table", rows}});
    }
    return arr;
}

void emit(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f.good()) throw InputError("cannot write output file: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric ideals of flow and transportation polytopes"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--cap-points", cfg.cap_points, "maximum lattice points / fiber elements")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap-seconds", cfg.cap_seconds, "wall-clock budget in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--degree-cap", cfg.degree_cap, "truncate Groebner runs at this degree")
        ->check(CLI::NonNegativeNumber);
    auto* seed_opt = app.add_option("--seed", cfg.seed, "random seed (required for sample)");
    app.add_option("--out", cfg.out, "write the JSON report to this path instead of stdout");

    json report;
    int exit_code = kOk;

    // points <problem>
    std::string points_path;
    auto* sub_points = app.add_subcommand("points", "enumerate the lattice points");
    sub_points->add_option("problem", points_path, "problem JSON file")->required();
    sub_points->callback([&] {
        ParsedProblem prob = load_problem(points_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        report = {{"command", "points"},
                  {"count", pts.size()},
                  {"dimension", prob.spec.num_arcs()},
                  {"points", points_to_json(pts.points)}};
    });

    // cells <problem>
    std::string cells_path;
    auto* sub_cells = app.add_subcommand("cells", "covering unit-window cells");
    sub_cells->add_option("problem", cells_path, "problem JSON file")->required();
    sub_cells->callback([&] {
        ParsedProblem prob = load_problem(cells_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        std::vector<Cell> cells = covering_cells(prob.spec, pts);
        json arr = json::array();
        for (const Cell& c : cells)
            arr.push_back(json{{"offset", c.offset},
                               {"lo", c.lo},
                               {"hi", c.hi},
                               {"point_ids", c.point_ids}});
        report = {{"command", "cells"},
                  {"points", pts.size()},
                  {"count", static_cast<long long>(cells.size())},
                  {"cells", arr}};
    });

    // decompose <problem> --flow f.json -k K
    std::string dec_path, dec_flow;
    int dec_k = 0;
    auto* sub_dec = app.add_subcommand("decompose", "write a flow as a sum of k lattice points");
    sub_dec->add_option("problem", dec_path, "problem JSON file")->required();
    sub_dec->add_option("--flow", dec_flow, "flow JSON file (the k-fold sum)")->required();
    sub_dec->add_option("-k,--parts", dec_k, "number of parts")
        ->required()
        ->check(CLI::PositiveNumber);
    sub_dec->callback([&] {
        ParsedProblem prob = load_problem(dec_path);
        Vec total = vector_from_file(dec_flow, prob.spec, "flow");
        DecomposeResult dec = decompose_flow(prob.spec, IntegerFlow{total}, dec_k);
        report = {{"command", "decompose"}, {"k", dec_k}, {"ok", dec.ok()}};
        if (!dec.ok()) {
            report["error"] = dec.error;
            exit_code = kVerifyFail;
            return;
        }
        json parts = json::array();
        for (const IntegerFlow& p : dec.decomposition->parts)
            parts.push_back(flow_to_json(p, prob.spec));
        report["parts"] = parts;
    });

    // gb <problem> [--ranking r.json]
    std::string gb_path, gb_ranking;
    auto* sub_gb = app.add_subcommand("gb", "reduced Groebner basis of the toric ideal");
    sub_gb->add_option("problem", gb_path, "problem JSON file")->required();
    sub_gb->add_option("--ranking", gb_ranking,
                       "point ranking JSON (most expensive first); default graded revlex");
    sub_gb->callback([&] {
        ParsedProblem prob = load_problem(gb_path);
        FlowPolytopeSpec hspec = homogenize(prob.spec);
        PointList pts = enumerate_lattice_points(hspec, cfg.caps());
        TermOrder order =
            gb_ranking.empty()
                ? grevlex_order(pts.size())
                : order_from_ranking(ranking_from_json(load_json_file(gb_ranking), pts.size()));
        GBResult gb = toric_groebner_basis(pts.points, order, cfg.caps());
        Coord maxdeg = 0;
        for (const Binomial& b : gb.basis) maxdeg = std::max(maxdeg, b.degree());
        report = {{"command", "gb"},
                  {"homogenized", hspec.homogenized},
                  {"points", pts.size()},
                  {"status", status_name(gb.status)},
                  {"spairs_processed", gb.spairs_processed},
                  {"max_degree", maxdeg},
                  {"basis", basis_to_json(gb.basis)}};
        if (gb.status == GBStatus::time_truncated) exit_code = kCapExceeded;
    });

    // triangulate <problem> [--ranking r.json]
    std::string tri_path, tri_ranking;
    auto* sub_tri = app.add_subcommand("triangulate", "subdivide-and-pull triangulation");
    sub_tri->add_option("problem", tri_path, "problem JSON file")->required();
    sub_tri->add_option("--ranking", tri_ranking, "pull ranking JSON (ranking-last pulled first)");
    sub_tri->callback([&] {
        ParsedProblem prob = load_problem(tri_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        std::vector<int> ranking;
        if (!tri_ranking.empty())
            ranking = ranking_from_json(load_json_file(tri_ranking), pts.size());
        Triangulation tri = pull_triangulate(prob.spec, pts, ranking);
        report = {{"command", "triangulate"},
                  {"points", pts.size()},
                  {"dimension", tri.dim},
                  {"simplices", tri.simplices},
                  {"unimodular", is_unimodular(pts.points, tri)}};
    });

    // moves <problem>
    std::string moves_path;
    auto* sub_moves = app.add_subcommand("moves", "degree-<=3 fiber moves");
    sub_moves->add_option("problem", moves_path, "problem JSON file")->required();
    sub_moves->callback([&] {
        ParsedProblem prob = load_problem(moves_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        MoveSet moves = generate_moves_deg23(prob.spec, pts);
        report = {{"command", "moves"},
                  {"points", points_to_json(pts.points)},
                  {"count", moves.size()},
                  {"moves", basis_to_json(moves.moves)}};
    });

    // fiber-check <problem> --target t.json -k K [--move-degree D]
    std::string fib_path, fib_target;
    int fib_k = 0, fib_move_degree = 3;
    auto* sub_fib = app.add_subcommand("fiber-check", "connectivity of one fiber under the moves");
    sub_fib->add_option("problem", fib_path, "problem JSON file")->required();
    sub_fib->add_option("--target", fib_target, "target JSON (sum of k lattice points)")
        ->required();
    sub_fib->add_option("-k,--degree", fib_k, "fiber degree")->required()->check(
        CLI::PositiveNumber);
    sub_fib->add_option("--move-degree", fib_move_degree, "use only moves up to this degree")
        ->check(CLI::Range(2, 3));
    sub_fib->callback([&] {
        ParsedProblem prob = load_problem(fib_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        Vec target = vector_from_file(fib_target, prob.spec, "target");
        MoveSet all = generate_moves_deg23(prob.spec, pts), used;
        for (const Binomial& b : all.moves)
            if (b.degree() <= fib_move_degree) used.moves.push_back(b);
        Fiber fiber = enumerate_fiber(pts, target, fib_k, cfg.caps());
        FiberConnectivity conn = fiber_connected(fiber, used);
        report = {{"command", "fiber-check"},
                  {"k", fib_k},
                  {"move_degree", fib_move_degree},
                  {"moves_used", used.size()},
                  {"fiber_size", static_cast<long long>(fiber.elements.size())},
                  {"connected", conn.connected},
                  {"components", static_cast<long long>(conn.components.size())}};
        if (!conn.connected) exit_code = kVerifyFail;
    });

    // sample <problem> --target t.json -k K --steps N [--burn-in B] --seed S
    std::string smp_path, smp_target;
    int smp_k = 0;
    long long smp_steps = 0, smp_burn = 0;
    auto* sub_smp = app.add_subcommand("sample", "uniform random walk over one fiber");
    sub_smp->add_option("problem", smp_path, "problem JSON file")->required();
    sub_smp->add_option("--target", smp_target, "target JSON (sum of k lattice points)")
        ->required();
    sub_smp->add_option("-k,--degree", smp_k, "fiber degree")->required()->check(
        CLI::PositiveNumber);
    sub_smp->add_option("--steps", smp_steps, "number of walk steps")->required()->check(
        CLI::PositiveNumber);
    sub_smp->add_option("--burn-in", smp_burn, "steps excluded from the visit tally")
        ->check(CLI::NonNegativeNumber);
    sub_smp->callback([&] {
        if (seed_opt->count() == 0) throw InputError("sample requires --seed");
        ParsedProblem prob = load_problem(smp_path);
        PointList pts = enumerate_lattice_points(prob.spec, cfg.caps());
        Vec target = vector_from_file(smp_target, prob.spec, "target");
        MoveSet moves = generate_moves_deg23(prob.spec, pts);
        std::map<Vec, long long> visits;
        Vec final_state = sample_fiber(prob.spec, pts, target, smp_k, moves, smp_steps,
                                       cfg.seed, smp_burn, &visits);
        json tally = json::array();
        for (const auto& [state, count] : visits)
            tally.push_back(json{{"state", state}, {"count", count}});
        report = {{"command", "sample"},
                  {"seed", cfg.seed},
                  {"k", smp_k},
                  {"steps", smp_steps},
                  {"burn_in", smp_burn},
                  {"final_state", final_state},
                  {"states_visited", static_cast<long long>(visits.size())},
                  {"visits", tally}};
    });

    // worstcase --birkhoff n | --transport m n [--smooth]
    int wc_birkhoff = 0;
    std::vector<int> wc_transport;
    bool wc_smooth = false;
    auto* sub_wc = app.add_subcommand("worstcase", "high-degree relation families");
    auto* wc_b = sub_wc->add_option("--birkhoff", wc_birkhoff, "Birkhoff family B_{2n} for this n");
    auto* wc_t = sub_wc->add_option("--transport", wc_transport, "transportation family for m n")
                     ->expected(2);
    sub_wc->add_flag("--smooth", wc_smooth, "apply the last-column smooth shift (transport only)");
    wc_b->excludes(wc_t);
    sub_wc->callback([&] {
        WorstCaseInstance inst;
        if (wc_b->count())
            inst = birkhoff_family(wc_birkhoff);
        else if (wc_t->count())
            inst = transport_family(wc_transport[0], wc_transport[1]);
        else
            throw InputError("worstcase needs --birkhoff n or --transport m n");
        if (wc_smooth) inst = smooth_shift(inst);
        CoverReport cover = covering_certificate(inst);
        report = {{"command", "worstcase"},
                  {"family", inst.family == WorstCaseFamily::birkhoff ? "birkhoff"
                             : inst.family == WorstCaseFamily::transportation
                                 ? "transportation"
                                 : "transportation_smooth"},
                  {"rows", inst.table_rows()},
                  {"cols", inst.table_cols()},
                  {"margins", transportation_to_json(inst.margins)},
                  {"degree", inst.degree()},
                  {"lead", named_tables_to_json(inst.lead_tables, inst.lead_names,
                                                inst.table_cols())},
                  {"trail", named_tables_to_json(inst.trail_tables, inst.trail_names,
                                                 inst.table_cols())},
                  {"certificate", json{{"necessity", cover.necessity},
                                       {"privacy", cover.privacy},
                                       {"failures", cover.failures}}}};
        if (!cover.ok()) exit_code = kVerifyFail;
    });

    // bipartize <problem>
    std::string bip_path;
    auto* sub_bip = app.add_subcommand("bipartize", "vertex-splitting bipartite transform");
    sub_bip->add_option("problem", bip_path, "problem JSON file")->required();
    sub_bip->callback([&] {
        ParsedProblem prob = load_problem(bip_path);
        BipartizeResult bp = bipartize(prob.spec);
        PointList pts = enumerate_lattice_points(bp.original, cfg.caps());
        json phi = json::array();
        for (int i = 0; i < pts.size(); ++i)
            phi.push_back(json{{"point", pts[i]}, {"image", bp.forward(pts[i])}});
        report = {{"command", "bipartize"},
                  {"slack_cap", bp.slack_cap},
                  {"transformed", spec_to_json(bp.transformed)},
                  {"points", pts.size()},
                  {"phi", phi}};
    });

    // verify-all
    auto* sub_all = app.add_subcommand("verify-all", "run the acceptance criteria");
    sub_all->callback([&] {
        AcceptanceReport rep = run_acceptance(&std::cerr);
        json arr = json::array();
        int passed = 0;
        for (const CriterionResult& c : rep.criteria) {
            arr.push_back(json{{"number", c.number},
                               {"title", c.title},
                               {"passed", c.passed},
                               {"detail", c.detail}});
            passed += c.passed ? 1 : 0;
        }
        report = {{"command", "verify-all"},
                  {"passed", passed},
                  {"total", static_cast<long long>(rep.criteria.size())},
                  {"all_passed", rep.all_passed()},
                  {"criteria", arr}};
        if (!rep.all_passed()) exit_code = kVerifyFail;
    });

    // let --cap-*/--seed/--out appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        emit(report, cfg.out);
        return exit_code;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const InvariantError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
