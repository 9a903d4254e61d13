#include "sepgraph/generators.hpp"
#include "sepgraph/labeled_graph.hpp"
#include "sepgraph/oct.hpp"
#include "sepgraph/parity.hpp"
#include "sepgraph/pointsep.hpp"
#include "sepgraph/render.hpp"
#include "sepgraph/scene_io.hpp"
#include "sepgraph/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

namespace {

using namespace sepgraph;

int log_level() {
    const char* env = std::getenv("SEPGRAPH_LOG");
    return env ? std::atoi(env) : 0;
}

void logmsg(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[sepgraph] " << msg << "\n";
}

void emit(const std::string& path, const Json& j) {
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        save_json(path, j);
}

void emit_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(path);
        out << text;
    }
}

Json error_json(const std::string& kind, const std::string& detail) {
    Json j;
    j["error"] = kind;
    j["detail"] = detail;
    return j;
}

int fail(int code, const std::string& kind, const std::string& detail) {
    std::cerr << error_json(kind, detail).dump() << "\n";
    return code;
}

int validated_scene(const std::string& path, Scene& sc) {
    sc = load_scene(path);
    auto violations = validate_scene(sc);
    if (!violations.empty()) {
        Json v = Json::array();
        for (const auto& viol : violations)
            v.push_back(Json{{"code", viol.code}, {"detail", viol.detail}});
        std::cerr << Json{{"error", "InvalidScene"}, {"violations", v}}.dump(2)
                  << "\n";
        return 1;
    }
    return 0;
}

std::vector<std::pair<int, int>> requested_pairs(const Scene& sc,
                                                 const std::string& mode) {
    if (mode == "all") {
        std::vector<std::pair<int, int>> P;
        for (int i = 0; i < static_cast<int>(sc.points.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(sc.points.size()); ++j)
                P.push_back({i, j});
        return P;
    }
    return sc.pairs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separation toolkit for connected obstacles in the plane"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    std::uint64_t seed = 0;

    auto* sep2 = app.add_subcommand("sep2", "minimum (s,t) separator");
    sep2->add_option("--in", in_path)->required();
    sep2->add_option("--out", out_path);
    sep2->add_option("--seed", seed);

    auto* remove = app.add_subcommand("remove", "obstacle removal");
    std::string mode = "exact";
    int budget = 0;
    std::string lp_arith = "rational";
    double tol = 1e-9;
    bool report_ratio = false;
    remove->add_option("--in", in_path)->required();
    remove->add_option("--out", out_path);
    remove->add_option("--mode", mode)->check(CLI::IsMember({"exact", "approx"}));
    remove->add_option("--budget", budget);
    remove->add_option("--lp-arith", lp_arith)
        ->check(CLI::IsMember({"rational", "float"}));
    remove->add_option("--tol", tol);
    remove->add_flag("--report-ratio", report_ratio);
    remove->add_option("--seed", seed);

    auto* psep = app.add_subcommand("psep", "generalized points separation");
    std::string strategy = "section6";
    std::string pairs_mode = "listed";
    int cap_n = 15, cap_k = 3, cap_p = 3;
    psep->add_option("--in", in_path)->required();
    psep->add_option("--out", out_path);
    psep->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"brute", "section5", "section6"}));
    psep->add_option("--pairs", pairs_mode)->check(CLI::IsMember({"all", "listed"}));
    psep->add_option("--cap-n", cap_n);
    psep->add_option("--cap-k", cap_k);
    psep->add_option("--cap-p", cap_p);
    psep->add_option("--seed", seed);

    auto* exp = app.add_subcommand("export", "labeled graph and debug exports");
    std::string what = "dot";
    std::string exp_mode = "st";
    exp->add_option("--in", in_path)->required();
    exp->add_option("--out", out_path);
    exp->add_option("--what", what)
        ->check(CLI::IsMember({"dot", "arrangement"}));
    exp->add_option("--mode", exp_mode)
        ->check(CLI::IsMember({"st", "pairs", "points"}));
    exp->add_option("--seed", seed);

    auto* render = app.add_subcommand("render", "deterministic SVG");
    std::string result_path;
    render->add_option("--in", in_path)->required();
    render->add_option("--result", result_path);
    render->add_option("--out", out_path);
    render->add_option("--seed", seed);

    auto* gen = app.add_subcommand("gen", "scene generators");
    std::string family = "ring";
    GeneratorSpec spec;
    gen->add_option("--family", family)
        ->check(CLI::IsMember({"ring", "nested-rings", "grid", "random-rects"}));
    gen->add_option("--m", spec.m);
    gen->add_option("--depth", spec.depth);
    gen->add_option("--w", spec.w);
    gen->add_option("--h", spec.h);
    gen->add_option("--n", spec.n);
    gen->add_option("--scale", spec.scale);
    gen->add_option("--points", spec.k_points);
    gen->add_option("--seed", spec.seed);
    gen->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "recheck a result document");
    std::string verify_result_path;
    verify->add_option("--in", in_path)->required();
    verify->add_option("--result", verify_result_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sep2->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            auto curves = route_reference_curves(sc, LabelMode::ST, seed);
            LabeledMultigraph g = build_labeled_graph(sc, curves);
            std::vector<Rat> w(g.n, Rat(1));
            auto best = shortest_odd_cycle(g, w);
            Json res = make_sep2_result(sc, best, g);
            emit(out_path, res);
            return best ? 0 : 2;
        }
        if (remove->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            RemovalOptions opts;
            opts.exact = mode == "exact";
            opts.budget = budget;
            opts.lp.arith =
                lp_arith == "rational" ? LpArith::Rational : LpArith::Float;
            opts.lp.tol = tol;
            opts.report_ratio = report_ratio;
            opts.route_seed = seed;
            std::optional<FractionalSolution> lp;
            auto res = obstacle_removal(sc, opts);
            if (res && !opts.exact) {
                auto curves = route_reference_curves(sc, LabelMode::ST, seed);
                lp = lp_hit_odd_cycles(build_labeled_graph(sc, curves), opts.lp);
            }
            Json j = make_remove_result(sc, opts, res, lp);
            emit(out_path, j);
            return res ? 0 : 2;
        }
        if (psep->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            auto P = requested_pairs(sc, pairs_mode);
            PointsepCaps caps;
            caps.brute_cap = cap_n;
            caps.max_k = cap_k;
            caps.max_p = cap_p;
            GpsStrategy strat = strategy == "brute"
                                    ? GpsStrategy::Brute
                                    : (strategy == "section5" ? GpsStrategy::Section5
                                                              : GpsStrategy::Section6);
            GpsResult res = gps_solve(sc, P, strat, caps, seed);
            Scene annotated = sc;
            annotated.pairs = P;
            Json j = make_psep_result(annotated, P, strat, res, res.induced);
            emit(out_path, j);
            return res.no_separator ? 2 : 0;
        }
        if (exp->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            if (what == "dot") {
                LabelMode m = exp_mode == "st"
                                  ? LabelMode::ST
                                  : (exp_mode == "pairs" ? LabelMode::Pairs
                                                         : LabelMode::Points);
                Scene scene = sc;
                if (m == LabelMode::Points && !scene.anchor) {
                    logmsg("adding a default anchor for points mode");
                    GpsResult dummy;  // anchor selection lives in gps_solve
                }
                auto curves = route_reference_curves(scene, m, seed);
                LabeledMultigraph g = build_labeled_graph(scene, curves);
                emit_text(out_path, to_dot(g));
            } else {
                std::vector<int> all;
                for (int i = 0; i < static_cast<int>(sc.obstacles.size()); ++i)
                    all.push_back(i);
                Arrangement arr = build_arrangement(boundary_segments(sc, all));
                emit(out_path, arrangement_to_json(arr));
            }
            return 0;
        }
        if (render->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            std::set<int> separator;
            std::vector<Polyline> witness;
            if (!result_path.empty()) {
                Json res = load_json(result_path);
                for (const char* key : {"separator", "deleted"})
                    if (res.contains(key))
                        for (const auto& v : res.at(key))
                            separator.insert(v.get<int>());
                if (res.contains("witness")) {
                    Polyline w;
                    for (const auto& pj : res.at("witness"))
                        w.vertices.push_back(point_from_json(pj));
                    witness.push_back(w);
                }
            }
            auto curves = route_reference_curves(sc, LabelMode::ST, seed);
            emit_text(out_path, render_svg(sc, separator, curves.curves, witness));
            return 0;
        }
        if (gen->parsed()) {
            spec.family =
                family == "ring"
                    ? GeneratorSpec::Family::Ring
                    : (family == "nested-rings"
                           ? GeneratorSpec::Family::NestedRings
                           : (family == "grid" ? GeneratorSpec::Family::Grid
                                               : GeneratorSpec::Family::RandomRects));
            Scene sc = generate_scene(spec);
            emit(out_path, scene_to_json(sc));
            return 0;
        }
        if (verify->parsed()) {
            Scene sc;
            if (int rc = validated_scene(in_path, sc)) return rc;
            Json res = load_json(verify_result_path);
            auto fails = verify_result(sc, res);
            if (fails.empty()) {
                logmsg("verification passed");
                return 0;
            }
            Json j;
            j["error"] = "VerificationFailed";
            j["failures"] = fails;
            std::cerr << j.dump(2) << "\n";
            return 3;
        }
    } catch (const ParseError& e) {
        return fail(1, "ParseError", e.what());
    } catch (const CapExceeded& e) {
        return fail(1, "CapExceeded", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(1, "InvalidInput", e.what());
    } catch (const std::exception& e) {
        return fail(3, "InternalError", e.what());
    }
    return 1;
}
