// Command-line front end: every headline statement about ball-bodies in this
// library is reachable as one subcommand with a machine-readable report.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/geom.hpp"
#include "ballbody/lens.hpp"
#include "ballbody/lps.hpp"
#include "ballbody/random_bodies.hpp"
#include "ballbody/reports.hpp"
#include "ballbody/symmetry.hpp"

using namespace ballbody;

namespace {

struct Common {
    std::uint64_t seed = 1;
    int grid = 0;  // 0 picks the per-command default
    double tol_override = -1.0;
    std::string format = "json";
    std::string out;
    int cases = 0;  // 0 picks the per-suite default
};

ToleranceConfig tolerances(const Common& c) {
    ToleranceConfig t;
    if (c.tol_override > 0.0) t.eps_geom = c.tol_override;
    return t;
}

int grid_or(const Common& c, int fallback) {
    if (c.grid == 0) return fallback;
    if (c.grid < 64) throw std::invalid_argument("--grid must be at least 64");
    return c.grid;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + c.out);
    f << text;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Vec3 parse_triple(const std::string& s) {
    Vec3 v;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &extra) != 3)
        throw std::invalid_argument("expected three comma-separated numbers, got: " + s);
    return v;
}

Vec2 parse_pair(const std::string& s) {
    Vec2 v;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &v.x, &v.y, &extra) != 2)
        throw std::invalid_argument("expected two comma-separated numbers, got: " + s);
    return v;
}

PointSet parse_point_set_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("body spec: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("points"))
            throw std::invalid_argument("body spec: expected an object with a points field");
        std::vector<Vec2> pts;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("body spec: each point must be [x, y]");
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return PointSet::make(std::move(pts));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("body spec: ") + e.what());
    }
}

// ---------------------------------------------------------------- commands

int run_counterexample(const Common& c, const std::string& c0_str) {
    CounterexampleReport rep;
    if (c0_str.empty()) {
        rep = verify_counterexample();
    } else {
        rep = verify_counterexample(parse_triple(c0_str), {0.4154, 0.7262});
    }
    emit(c, c.format == "csv" ? quantity_report_csv(rep.quantities)
                              : counterexample_report_json(rep));
    return rep.pass ? 0 : 1;
}

int run_flat(const Common& c, double eps) {
    FlatResult fr = flat_counterexample(eps, tolerances(c));
    emit(c, c.format == "csv" ? quantity_report_csv(fr.quantities) : flat_report_json(fr));
    return fr.pass ? 0 : 1;
}

int run_lps(const Common& c, const std::string& specfile, const std::string& trange) {
    ToleranceConfig tol = tolerances(c);
    LinearParameterSystem sys = parse_system_json(slurp(specfile));
    int n = grid_or(c, 201);

    std::vector<double> ts;
    if (!trange.empty()) {
        Vec2 r = parse_pair(trange);
        if (!(r.x < r.y)) throw std::invalid_argument("--t-range needs t0 < t1");
        ts = uniform_grid(r.x, r.y, n);
    } else if (n == 201) {
        ts = default_trace_grid(sys, tol);
    } else {
        FeasibilityInterval fi = feasibility_interval(sys, tol);
        ts = fi.unbounded ? uniform_grid(-1.0, 1.0, n)
                          : uniform_grid(fi.t_min, fi.t_max, n);
    }

    VolumeTrace vol = volume_trace(sys, ts, tol);
    auto [dv, rt] = dual_volume_trace(sys, ts, tol);
    VolumeTrace orad = outradius_trace(sys, ts);

    ConvexityVerdict v1 = convexity_verdict(vol);
    ConvexityVerdict v2 = convexity_verdict(rt, true);
    ConvexityVerdict v3 = convexity_verdict(orad, false, 1e-9);
    bool pass = v1.holds && v2.holds && v3.holds;

    if (c.format == "csv") {
        emit(c, traces_to_csv({vol, dv, rt, orad}));
    } else {
        std::ostringstream os;
        os << "{\"schema\":\"ballbody/1\",\"report\":\"lps\",\"pass\":"
           << (pass ? "true" : "false") << ",\"verdicts\":[" << verdict_json(v1) << ","
           << verdict_json(v2) << "," << verdict_json(v3) << "]}\n";
        emit(c, os.str());
    }
    return pass ? 0 : 1;
}

int run_steiner2d(const Common& c, const std::string& bodyspec, const std::string& dir_str) {
    ToleranceConfig tol = tolerances(c);
    DiskPolygon K = bodyspec == "random" ? random_disk_polygon(c.seed)
                                         : chull(parse_point_set_json(slurp(bodyspec)), tol);
    Vec2 u = dir_str.empty() ? Vec2{0.0, 1.0} : parse_pair(dir_str);

    EnvelopeBody env = steiner_symmetral(K, u, grid_or(c, kEnvelopeGridDefault), tol);
    SymmetralVerdict verdict = verify_in_S2(env, tol);
    DualVolumePair dual = steiner_dual_volume_check(K, u, tol);
    bool dual_ok = dual.after >= dual.before - 1e-6;
    bool pass = verdict.pass && dual_ok;

    if (c.format == "csv") {
        emit(c, envelope_to_csv(env));
    } else {
        std::ostringstream os;
        os << "{\"schema\":\"ballbody/1\",\"report\":\"steiner2d\",\"pass\":"
           << (pass ? "true" : "false")
           << ",\"min_curvature\":" << json_number(verdict.min_curvature)
           << ",\"hausdorff_to_chull\":" << json_number(verdict.hausdorff_to_chull)
           << ",\"endpoint_support_ok\":" << (verdict.endpoint_support_ok ? "true" : "false")
           << ",\"dual_volume_before\":" << json_number(dual.before)
           << ",\"dual_volume_after\":" << json_number(dual.after)
           << ",\"dual_monotone\":" << (dual_ok ? "true" : "false") << "}\n";
        emit(c, os.str());
    }
    return pass ? 0 : 1;
}

// ------------------------------------------------------------------ suites

struct CaseResult {
    int index;
    std::uint64_t seed;
    bool pass;
};

bool duality_case(std::uint64_t s, const ToleranceConfig& tol) {
    PointSet A = random_point_set(s);
    DiskPolygon K = chull(A, tol);
    for (Vec2 p : A.pts)
        if (!contains(K, p, tol)) return false;
    if (K.kind != BodyClass::Proper) return false;

    auto vertices_agree = [](const DiskPolygon& a, const DiskPolygon& b) {
        if (a.kind != b.kind || a.vertices.size() != b.vertices.size()) return false;
        for (std::size_t i = 0; i < a.vertices.size(); ++i)
            if (norm(a.vertices[i] - b.vertices[i]) > 1e-9) return false;
        return true;
    };

    // triple dual collapses: the dual equals the c-hull of its own vertices
    DiskPolygon D = cdual(A, tol);
    if (D.kind != BodyClass::Proper) return false;
    if (!vertices_agree(D, chull(PointSet::make(D.vertices), tol))) return false;

    // idempotence of the hull through its vertex set
    if (!vertices_agree(K, chull(PointSet::make(K.vertices), tol))) return false;

    // order reversal on a nested pair: more points, smaller dual
    auto rng = seeded_engine(s, 0xda3e39cb94b95bdbULL);
    std::vector<Vec2> extended = A.pts;
    extended.push_back(random_point_in_disk(rng, 0.45));
    extended.push_back(random_point_in_disk(rng, 0.45));
    DiskPolygon DB = cdual(PointSet::make(extended), tol);
    if (DB.kind != BodyClass::Proper) return false;
    for (Vec2 v : DB.vertices)
        if (!contains(D, v, tol)) return false;
    return true;
}

bool santalo_case(std::uint64_t s, const ToleranceConfig& tol) {
    PointSet A = random_point_set(s);
    DiskPolygon K = chull(A, tol);
    DiskPolygon D = cdual(A, tol);
    if (K.kind != BodyClass::Proper || D.kind != BodyClass::Proper) return false;

    double wK = mean_width(K);
    if (std::abs(mean_width(D) - (1.0 - wK)) > 1e-9) return false;

    // averaging with the reflection commutes with duality:
    // h of M_u(K^c) at theta equals 1 - h of M_u(K) at theta + pi
    auto rng = seeded_engine(s, 0x2545f4914f6cdd1dULL);
    Vec2 u = random_direction(rng);
    const double two_pi = 6.283185307179586476925286766559;
    MinkowskiSymmetral MD = minkowski_symmetral(D, u, 0, tol);
    MinkowskiSymmetral MK = minkowski_symmetral(K, u, 0, tol);
    for (int i = 0; i < 512; ++i) {
        double th = two_pi * i / 512.0;
        if (std::abs(MD.pieces.value(th) - (1.0 - MK.pieces.value(th + 0.5 * two_pi))) > 1e-6)
            return false;
    }

    const double pi = 3.14159265358979323846;
    double aD = area(D);
    if (aD > (1.0 - wK) * (1.0 - wK) * pi + 1e-6) return false;  // mean-width route
    double rho = std::sqrt(area(K) / pi);
    return aD <= (1.0 - rho) * (1.0 - rho) * pi + 1e-6;  // volume route
}

bool steiner2d_case(std::uint64_t s, int grid, const ToleranceConfig& tol) {
    DiskPolygon K = random_disk_polygon(s);
    auto rng = seeded_engine(s, 0xc2b2ae3d27d4eb4fULL);
    Vec2 u = random_direction(rng);
    EnvelopeBody env = steiner_symmetral(K, u, grid, tol);
    if (!verify_in_S2(env, tol).pass) return false;
    DualVolumePair dual = steiner_dual_volume_check(K, u, tol);
    return dual.after >= dual.before - 1e-6;
}

bool lps2d_case(std::uint64_t s, const ToleranceConfig& tol) {
    LinearParameterSystem sys = random_system(s);
    std::vector<double> ts = default_trace_grid(sys, tol);
    if (!convexity_verdict(volume_trace(sys, ts, tol)).holds) return false;
    auto [dv, rt] = dual_volume_trace(sys, ts, tol);
    if (!convexity_verdict(rt, true).holds) return false;
    return convexity_verdict(outradius_trace(sys, ts), false, 1e-9).holds;
}

bool lens_fixed_case(int which, const ToleranceConfig& tol) {
    if (which == 0) {
        // quadrature against the closed form of the planar section integral
        for (int i = 0; i <= 400; ++i) {
            double d = i / 400.0;
            double closed = 0.5 * (std::asin(d) - d * std::sqrt(1.0 - d * d));
            if (std::abs(lens_F(2, d, tol) - closed) > 1e-8) return false;
        }
        return true;
    }
    // strict growth and midpoint convexity across dimensions
    for (int n = 2; n <= 5; ++n) {
        std::vector<double> vals;
        for (int i = 0; i <= 400; ++i) vals.push_back(lens_F(n, 0.99 * i / 400.0, tol));
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (!(vals[i] > vals[i - 1])) return false;
        for (std::size_t i = 1; i + 1 < vals.size(); ++i)
            if (vals[i - 1] + vals[i + 1] - 2.0 * vals[i] < -1e-12) return false;
    }
    return true;
}

bool lens_random_case(std::uint64_t s, const ToleranceConfig& tol) {
    auto rng = seeded_engine(s, 0x165667b19e3779f9ULL);
    int n = 2 + static_cast<int>(rng() % 4);
    double d = uniform_in(rng, 0.05, 0.9);
    DerivativeCheck dc = lens_volume_derivative_check(n, d, tol);
    return std::abs(dc.lhs - dc.rhs) <= 1e-6 * std::max(1.0, std::abs(dc.rhs));
}

int run_suite(const Common& c, const std::string& name) {
    ToleranceConfig tol = tolerances(c);
    std::vector<CaseResult> results;

    auto run_cases = [&](int n, auto&& fn) {
        for (int i = 0; i < n; ++i) {
            std::uint64_t s = mix_seed(c.seed, static_cast<std::uint64_t>(i));
            bool ok = false;
            try {
                ok = fn(i, s);
            } catch (const std::exception&) {
                ok = false;
            }
            results.push_back({i, s, ok});
        }
    };

    if (name == "duality") {
        run_cases(c.cases ? c.cases : 200, [&](int, std::uint64_t s) { return duality_case(s, tol); });
    } else if (name == "steiner2d") {
        int grid = grid_or(c, kEnvelopeGridDefault);
        run_cases(c.cases ? c.cases : 200,
                  [&](int, std::uint64_t s) { return steiner2d_case(s, grid, tol); });
    } else if (name == "lps2d") {
        run_cases(c.cases ? c.cases : 100, [&](int, std::uint64_t s) { return lps2d_case(s, tol); });
    } else if (name == "santalo") {
        run_cases(c.cases ? c.cases : 100, [&](int, std::uint64_t s) { return santalo_case(s, tol); });
    } else if (name == "lens") {
        run_cases(2 + (c.cases ? c.cases : 50), [&](int i, std::uint64_t s) {
            return i < 2 ? lens_fixed_case(i, tol) : lens_random_case(s, tol);
        });
    } else {
        throw std::invalid_argument("unknown suite: " + name +
                                    " (expected duality, steiner2d, lps2d, santalo, lens)");
    }

    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    bool pass = passed == static_cast<int>(results.size());

    if (c.format == "csv") {
        CsvTable table;
        table.header = {"case", "seed", "pass"};
        for (const auto& r : results) {
            char seedbuf[32];
            std::snprintf(seedbuf, sizeof seedbuf, "%" PRIu64, r.seed);
            table.rows.push_back({std::to_string(r.index), seedbuf, r.pass ? "1" : "0"});
        }
        emit(c, csv_to_string(table));
    } else {
        std::ostringstream os;
        os << "{\"schema\":\"ballbody/1\",\"report\":\"suite\",\"suite\":\"" << json_escape(name)
           << "\",\"cases\":" << results.size() << ",\"passed\":" << passed
           << ",\"pass\":" << (pass ? "true" : "false") << ",\"results\":[";
        for (std::size_t i = 0; i < results.size(); ++i) {
            char seedbuf[32];
            std::snprintf(seedbuf, sizeof seedbuf, "%" PRIu64, results[i].seed);
            os << (i ? "," : "") << "{\"case\":" << results[i].index << ",\"seed\":\"" << seedbuf
               << "\",\"pass\":" << (results[i].pass ? "true" : "false") << "}";
        }
        os << "]}\n";
        emit(c, os.str());
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometry of intersections of unit balls: duality, symmetrizations, "
                 "parameter systems, and the 3D curvature counterexample"};
    app.require_subcommand(1);

    Common c;
    app.add_option("--seed", c.seed, "base seed for randomized cases");
    app.add_option("--grid", c.grid, "sampling grid size (command-specific default)");
    app.add_option("--tol", c.tol_override, "geometric tolerance override");
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", c.out, "write the report to a file instead of stdout");
    app.add_option("--cases", c.cases, "number of randomized cases for suites");

    auto* ce = app.add_subcommand("counterexample",
                                  "reproduce the 3D lens whose Steiner symmetral leaves the class");
    std::string c0_str;
    ce->add_option("--c0", c0_str, "override the upper ball center as x,y,z");
    ce->fallthrough();

    auto* fl = app.add_subcommand("flat", "construct a symmetral with curvature below epsilon");
    double eps = 0.0;
    fl->add_option("epsilon", eps, "curvature target in (0,1)")->required();
    fl->fallthrough();

    auto* lp = app.add_subcommand("lps", "trace a linear parameter system and judge convexity");
    std::string specfile, trange;
    lp->add_option("spec", specfile, "JSON file with points, velocities, direction")->required();
    lp->add_option("--t-range", trange, "override the parameter range as t0,t1");
    lp->fallthrough();

    auto* st = app.add_subcommand("steiner2d",
                                  "Steiner-symmetrize one planar body and verify the class");
    std::string bodyspec, dir_str;
    st->add_option("body", bodyspec, "JSON file with a points field, or the word 'random'")
        ->required();
    st->add_option("--direction", dir_str, "symmetrization direction as x,y (default 0,1)");
    st->fallthrough();

    auto* su = app.add_subcommand("suite", "run a named randomized property suite");
    std::string suite_name;
    su->add_option("name", suite_name, "duality | steiner2d | lps2d | santalo | lens")->required();
    su->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ce->parsed()) return run_counterexample(c, c0_str);
        if (fl->parsed()) return run_flat(c, eps);
        if (lp->parsed()) return run_lps(c, specfile, trange);
        if (st->parsed()) return run_steiner2d(c, bodyspec, dir_str);
        if (su->parsed()) return run_suite(c, suite_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
