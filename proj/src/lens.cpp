#include "ballbody/lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ballbody {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const Vec3 kCounterexampleCenter{-0.2794, 0.2451, 0.36};
const Vec2 kCounterexampleBase{0.4154, 0.7262};

QuantityCheck row(std::string name, double computed, std::optional<double> reference,
                  double tolerance) {
    QuantityCheck q;
    q.name = std::move(name);
    q.computed = computed;
    q.reference = reference;
    q.tolerance = tolerance;
    q.pass = reference ? std::abs(computed - *reference) <= tolerance : true;
    return q;
}

QuantityCheck flag_row(std::string name, double computed, bool pass) {
    QuantityCheck q;
    q.name = std::move(name);
    q.computed = computed;
    q.tolerance = 0.0;
    q.pass = pass;
    return q;
}

}  // namespace

double lens_F(int n, double d, const ToleranceConfig& tol) {
    if (n < 1) throw std::invalid_argument("lens_F: dimension must be at least 1");
    if (d < 0.0) throw std::invalid_argument("lens_F: negative tip half-distance");
    if (d > 1.0) throw std::invalid_argument("lens_F: tip half-distance above 1");
    if (d == 0.0) return 0.0;
    if (n == 1) return d;
    const double plateau = std::sqrt(std::max(0.0, (1.0 - d) * (1.0 + d)));
    auto integrand = [&](double t) {
        double w = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t))) - plateau;
        return std::pow(std::max(0.0, w), n - 1);
    };
    // the integrand's derivatives blow up like a square root only at d = 1;
    // the sine substitution handles both regimes
    return integrate(integrand, 0.0, d, tol.eps_quad, EndpointRule::SqrtSingularity);
}

double lens_volume(int n, double d, const ToleranceConfig& tol) {
    if (n < 2) throw std::invalid_argument("lens_volume: dimension must be at least 2");
    if (d < 0.0) throw std::invalid_argument("lens_volume: negative tip half-distance");
    if (d > 1.0) return inf;  // points farther apart than any containing ball
    return 2.0 * unit_ball_volume(n - 1) * lens_F(n, d, tol);
}

double lens_conjugate_halfdist(double h) {
    if (h < 0.0 || h > 1.0)
        throw std::invalid_argument("lens_conjugate_halfdist: argument outside [0,1]");
    return std::sqrt(std::max(0.0, (1.0 - h) * (1.0 + h)));
}

DerivativeCheck lens_volume_derivative_check(int n, double d, const ToleranceConfig& tol) {
    if (n < 2) throw std::invalid_argument("derivative check: dimension must be at least 2");
    if (!(d > 0.0 && d < 1.0))
        throw std::invalid_argument("derivative check: tip half-distance must lie in (0,1)");
    if (d > 1.0 - 1e-4)
        throw std::invalid_argument("derivative check: too close to the blow-up at 1");
    const double h = 1e-5;
    DerivativeCheck out;
    out.lhs = (lens_F(n, d + h, tol) - lens_F(n, d - h, tol)) / (2.0 * h);
    out.rhs = (n - 1) * d / std::sqrt(1.0 - d * d) * lens_F(n - 1, d, tol);
    return out;
}

double two_point_chull_volume(const std::vector<double>& x, const std::vector<double>& y,
                              const ToleranceConfig& tol) {
    if (x.size() != y.size())
        throw std::invalid_argument("two_point_chull_volume: dimension mismatch");
    if (x.size() < 2) throw std::invalid_argument("two_point_chull_volume: dimension too small");
    double dd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dd += (x[i] - y[i]) * (x[i] - y[i]);
    double d = 0.5 * std::sqrt(dd);
    if (d > 1.0) return inf;
    return lens_volume(static_cast<int>(x.size()), d, tol);
}

double psi(double s, double t) { return std::sqrt(1.0 + s * s + t * t) * (1.0 + s * s); }

double sectional_curvature(double hessian_11, Vec2 gradient) {
    return std::abs(hessian_11) / psi(gradient.x, gradient.y);
}

Lens3 Lens3::from_centers(Vec3 c_plus, Vec3 c_minus, bool allow_degenerate) {
    if (!allow_degenerate && !(norm(c_plus - c_minus) < 2.0))
        throw std::invalid_argument("lens centers too far apart for a nonempty interior");
    Lens3 L;
    L.base_plus = {c_plus.x, c_plus.y};
    L.z_plus = c_plus.z;
    L.base_minus = {c_minus.x, c_minus.y};
    L.z_minus = c_minus.z;
    L.q_plus = 1.0 - norm2(L.base_plus);
    L.q_minus = 1.0 - norm2(L.base_minus);
    return L;
}

Lens3 Lens3::counterexample() {
    Vec3 c = kCounterexampleCenter;
    return from_centers(c, {-c.x, -c.y, -c.z});
}

double SpherePatch::q(Vec2 w) const { return q0 + 2.0 * dot(w, center) - norm2(w); }

double SpherePatch::value(Vec2 w) const {
    double qq = q(w);
    if (qq <= 0.0)
        throw std::invalid_argument("evaluation outside the domain of patch " + name);
    return zc + orientation * std::sqrt(qq);
}

Vec2 SpherePatch::gradient(Vec2 w) const {
    double qq = q(w);
    if (qq <= 0.0)
        throw std::invalid_argument("evaluation outside the domain of patch " + name);
    double s = std::sqrt(qq);
    return (orientation / s) * (center - w);
}

std::array<double, 3> SpherePatch::hessian(Vec2 w) const {
    double qq = q(w);
    if (qq <= 0.0)
        throw std::invalid_argument("evaluation outside the domain of patch " + name);
    double s = std::sqrt(qq);
    Vec2 e = w - center;
    double s3 = s * s * s;
    return {-orientation * (s * s + e.x * e.x) / s3, -orientation * (e.x * e.y) / s3,
            -orientation * (s * s + e.y * e.y) / s3};
}

LensPatches lens_patches(const Lens3& lens) {
    LensPatches P;
    P.f_upper = {"f_upper", lens.base_plus, lens.z_plus, lens.q_plus, +1.0};
    P.f_lower = {"f_lower", lens.base_plus, lens.z_plus, lens.q_plus, -1.0};
    P.g_upper = {"g_upper", lens.base_minus, lens.z_minus, lens.q_minus, +1.0};
    P.g_lower = {"g_lower", lens.base_minus, lens.z_minus, lens.q_minus, -1.0};
    return P;
}

FiberClass fiber_classification(const Lens3& lens, Vec2 w, const ToleranceConfig& tol) {
    LensPatches P = lens_patches(lens);
    double qp = P.f_upper.q(w), qm = P.g_upper.q(w);
    if (qp <= 0.0 || qm <= 0.0) return FiberClass::Outside;
    double sp = std::sqrt(qp), sm = std::sqrt(qm);
    double lo_p = lens.z_plus - sp, hi_p = lens.z_plus + sp;
    double lo_m = lens.z_minus - sm, hi_m = lens.z_minus + sm;
    if (std::max(lo_p, lo_m) > std::min(hi_p, hi_m) + tol.eps_geom) return FiberClass::Outside;
    bool lower_from_plus = lo_p >= lo_m;
    bool upper_from_plus = hi_p <= hi_m;
    return lower_from_plus != upper_from_plus ? FiberClass::Cross : FiberClass::OneBall;
}

double steiner_fiber_curvature(const Lens3& lens, Vec2 w, Vec2 dir, bool one_ball_returns_unit,
                               const ToleranceConfig& tol) {
    FiberClass fc = fiber_classification(lens, w, tol);
    if (fc == FiberClass::Outside)
        throw std::invalid_argument("fiber outside the lens projection");
    if (fc == FiberClass::OneBall) {
        if (one_ball_returns_unit) return 1.0;
        throw std::runtime_error("curvature governed by a single sphere");
    }
    double dn = norm(dir);
    if (!(dn > 1e-12)) throw std::invalid_argument("curvature direction must be nonzero");
    Vec2 d = (1.0 / dn) * dir;

    /* Whichever way the fiber crosses, the averaged graph differs from
     * (s_plus + s_minus)/2 by a constant, so gradients and Hessians come
     * from the two sphere halves alone. */
    LensPatches P = lens_patches(lens);
    auto half = [&](const SpherePatch& patch, double& hdd, Vec2& grad) {
        double s = std::sqrt(patch.q(w));
        Vec2 e = w - patch.center;
        grad = (-1.0 / s) * e;
        hdd = -(s * s + dot(d, e) * dot(d, e)) / (s * s * s);
    };
    double hp, hm;
    Vec2 gp, gm;
    half(P.f_upper, hp, gp);
    half(P.g_upper, hm, gm);
    Vec2 g = 0.5 * (gp + gm);
    double hdd = 0.5 * (hp + hm);
    return std::abs(hdd) / psi(dot(d, g), cross(d, g));
}

namespace {

CounterexampleReport verify_counterexample_impl(Vec3 c0, Vec2 w, bool reference_data) {
    CounterexampleReport rep;
    rep.lens = Lens3::from_centers(c0, {-c0.x, -c0.y, -c0.z});
    rep.w = w;
    LensPatches P = lens_patches(rep.lens);

    auto maybe = [&](double v) {
        return reference_data ? std::optional<double>(v) : std::nullopt;
    };

    double qp = P.f_upper.q(w), qm = P.g_upper.q(w);
    rep.quantities.push_back(
        flag_row("w_inside_projection", std::min(qp, qm), std::min(qp, qm) > 0.0));
    if (!(qp > 0.0 && qm > 0.0)) {
        rep.kappa = std::numeric_limits<double>::quiet_NaN();
        rep.pass = false;
        return rep;
    }

    double g_low = P.g_lower.value(w), f_low = P.f_lower.value(w);
    double g_up = P.g_upper.value(w), f_up = P.f_upper.value(w);
    rep.quantities.push_back(row("g_lower_at_w", g_low, maybe(-0.56), 0.01));
    rep.quantities.push_back(row("f_lower_at_w", f_low, maybe(-0.175), 0.01));
    rep.quantities.push_back(row("g_upper_at_w", g_up, maybe(-0.165), 0.01));
    rep.quantities.push_back(row("f_upper_at_w", f_up, maybe(0.89), 0.01));

    // gradients of the defining sphere graphs (upper halves)
    Vec2 grad_f = P.f_upper.gradient(w), grad_g = P.g_upper.gradient(w);
    rep.quantities.push_back(row("grad_f_x", grad_f.x, maybe(-1.300), 0.001));
    rep.quantities.push_back(row("grad_f_y", grad_f.y, maybe(-0.900), 0.001));
    rep.quantities.push_back(row("grad_g_x", grad_g.x, maybe(-0.697), 0.001));
    rep.quantities.push_back(row("grad_g_y", grad_g.y, maybe(-4.977), 0.001));

    Vec2 grad_h = 0.5 * (grad_f + grad_g);
    double psi_mid = psi(grad_h.x, grad_h.y);
    double psi_mean = 0.5 * (psi(grad_f.x, grad_f.y) + psi(grad_g.x, grad_g.y));
    rep.quantities.push_back(row("psi_midpoint", psi_mid, maybe(6.51), 0.01));
    rep.quantities.push_back(row("psi_mean", psi_mean, maybe(6.32), 0.01));

    FiberClass fc = fiber_classification(rep.lens, w);
    rep.quantities.push_back(
        flag_row("cross_fiber", fc == FiberClass::Cross ? 1.0 : 0.0, fc == FiberClass::Cross));
    if (fc == FiberClass::Outside) {
        // both caps cover w but the balls are disjoint above it
        rep.kappa = std::numeric_limits<double>::quiet_NaN();
        rep.pass = false;
        return rep;
    }
    if (reference_data) {
        double margin =
            std::min({f_low - g_low, g_up - f_low, f_up - g_up});
        rep.quantities.push_back(flag_row("fiber_ordering_margin", margin, margin > 0.0));
    }

    if (fc == FiberClass::Cross) {
        rep.kappa = steiner_fiber_curvature(rep.lens, w, {1.0, 0.0});
        rep.quantities.push_back(row("kappa_e1", rep.kappa, maybe(0.9708), 0.001));
    } else {
        rep.kappa = steiner_fiber_curvature(rep.lens, w, {1.0, 0.0}, true);
        rep.quantities.push_back(row("kappa_e1", rep.kappa, std::nullopt, 0.0));
    }
    // guard band: a fiber bounded twice by the same sphere radius evaluates
    // to 1 only up to roundoff, and must not count as a violation
    rep.violation_found = rep.kappa < 1.0 - 1e-9;
    if (reference_data)
        rep.quantities.push_back(
            flag_row("kappa_below_one", rep.kappa, rep.violation_found));

    rep.pass = all_pass(rep.quantities) && rep.violation_found;
    return rep;
}

}  // namespace

CounterexampleReport verify_counterexample() {
    return verify_counterexample_impl(kCounterexampleCenter, kCounterexampleBase, true);
}

CounterexampleReport verify_counterexample(Vec3 c0, Vec2 w) {
    bool reference = c0.x == kCounterexampleCenter.x && c0.y == kCounterexampleCenter.y &&
                     c0.z == kCounterexampleCenter.z && w.x == kCounterexampleBase.x &&
                     w.y == kCounterexampleBase.y;
    return verify_counterexample_impl(c0, w, reference);
}

std::string counterexample_report_json(const CounterexampleReport& rep) {
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"report\":\"counterexample_3d\",\"pass\":"
       << (rep.pass ? "true" : "false")
       << ",\"violation_found\":" << (rep.violation_found ? "true" : "false")
       << ",\"kappa\":" << json_number(rep.kappa)
       << ",\"quantities\":" << quantities_json(rep.quantities) << "}\n";
    return os.str();
}

double psi_gap(double t, double k) {
    if (!(t > 0.0)) throw std::invalid_argument("psi_gap: t must be positive");
    if (!(k > 1.0)) throw std::invalid_argument("psi_gap: exponent must exceed 1");
    double tk = std::pow(t, k);
    double direct = psi(t, tk) / (0.5 * (psi(2.0 * t, 0.0) + psi(0.0, 2.0 * tk)));
    double closed = 2.0 * std::sqrt(1.0 + t * t + tk * tk) * (1.0 + t * t) /
                    (std::pow(1.0 + 4.0 * t * t, 1.5) + std::sqrt(1.0 + 4.0 * tk * tk));
    if (std::abs(direct - closed) > 1e-10 * std::max(1.0, std::abs(closed)))
        throw std::runtime_error("psi_gap: evaluation routes disagree");
    return closed;
}

ConstructedLens construct_lens_with_gradients(Vec2 u, Vec2 v, const ToleranceConfig& tol) {
    ConstructedLens out;
    const double qp = 1.0 / (1.0 + norm2(u));  // exact form of 1 - |base_plus|^2
    const double qm = 1.0 / (1.0 + norm2(v));
    const double sp = std::sqrt(qp), sm = std::sqrt(qm);
    out.lens.base_plus = (-sp) * u;
    out.lens.z_plus = std::max(sp, sm);
    out.lens.base_minus = sm * v;
    out.lens.z_minus = 0.0;
    out.lens.q_plus = qp;
    out.lens.q_minus = qm;

    LensPatches P = lens_patches(out.lens);

    /* Central differences with a step balancing the n-th derivative growth
     * ~ q^{-(2n-1)/2} of a flat cap against roundoff. */
    auto fd_gradient = [](const SpherePatch& patch, double step) {
        return Vec2{(patch.value({step, 0.0}) - patch.value({-step, 0.0})) / (2.0 * step),
                    (patch.value({0.0, step}) - patch.value({0.0, -step})) / (2.0 * step)};
    };
    double hstep_p = 6.7e-6 * std::pow(qp, 5.0 / 6.0);
    double hstep_m = 6.7e-6 * std::pow(qm, 5.0 / 6.0);
    Vec2 fd_u = fd_gradient(P.f_lower, hstep_p);
    Vec2 fd_v = fd_gradient(P.g_upper, hstep_m);

    double tol_u = 1e-6 * std::max({1.0, std::abs(u.x), std::abs(u.y)});
    double tol_v = 1e-6 * std::max({1.0, std::abs(v.x), std::abs(v.y)});
    out.certificate.push_back(row("grad_lower_x", fd_u.x, u.x, tol_u));
    out.certificate.push_back(row("grad_lower_y", fd_u.y, u.y, tol_u));
    out.certificate.push_back(row("grad_upper_x", fd_v.x, v.x, tol_v));
    out.certificate.push_back(row("grad_upper_y", fd_v.y, v.y, tol_v));

    // both fiber endpoints at the origin must sit on the lens boundary
    double lower_margin = P.f_lower.value({0, 0}) - P.g_lower.value({0, 0});
    double upper_margin = P.f_upper.value({0, 0}) - P.g_upper.value({0, 0});
    out.certificate.push_back(flag_row("lower_endpoint_margin", lower_margin, lower_margin > 0.0));
    out.certificate.push_back(flag_row("upper_endpoint_margin", upper_margin, upper_margin > 0.0));
    FiberClass fc = fiber_classification(out.lens, {0, 0}, tol);
    out.certificate.push_back(
        flag_row("cross_at_origin", fc == FiberClass::Cross ? 1.0 : 0.0, fc == FiberClass::Cross));

    out.pass = all_pass(out.certificate);
    return out;
}

FlatResult flat_counterexample(double epsilon, const ToleranceConfig& tol) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("flat counterexample: epsilon must lie in (0,1)");
    FlatResult out;
    double t = 1.0;
    double gap = psi_gap(t, 2.0);
    while (gap <= 1.0 / epsilon) {
        t *= 2.0;
        if (t > 1.153e18)  // 2^60
            throw std::runtime_error("flat counterexample: parameter search exceeded range");
        gap = psi_gap(t, 2.0);
    }
    out.t = t;
    out.gap = gap;

    ConstructedLens built = construct_lens_with_gradients({2.0 * t, 0.0}, {0.0, 2.0 * t * t}, tol);
    out.lens = built.lens;
    out.kappa = steiner_fiber_curvature(out.lens, {0, 0}, {1.0, 0.0}, false, tol);

    out.quantities.push_back(flag_row("t_parameter", t, true));
    out.quantities.push_back(flag_row("psi_gap", gap, true));
    out.quantities.push_back(flag_row("kappa", out.kappa, out.kappa < epsilon));
    out.quantities.push_back(row("kappa_times_gap", out.kappa * gap, 1.0, 1e-6));
    out.quantities.push_back(
        flag_row("construction_certificate", built.pass ? 1.0 : 0.0, built.pass));
    out.pass = all_pass(out.quantities);
    return out;
}

std::string flat_report_json(const FlatResult& rep) {
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"report\":\"flat_symmetral\",\"pass\":"
       << (rep.pass ? "true" : "false") << ",\"t\":" << json_number(rep.t)
       << ",\"kappa\":" << json_number(rep.kappa) << ",\"center_plus\":["
       << json_number(rep.lens.base_plus.x) << "," << json_number(rep.lens.base_plus.y) << ","
       << json_number(rep.lens.z_plus) << "],\"center_minus\":["
       << json_number(rep.lens.base_minus.x) << "," << json_number(rep.lens.base_minus.y) << ","
       << json_number(rep.lens.z_minus) << "],\"quantities\":" << quantities_json(rep.quantities)
       << "}\n";
    return os.str();
}

std::vector<Vec3> supporting_balls(const std::vector<Vec3>& centers, Vec3 p,
                                   const ToleranceConfig& tol) {
    if (centers.empty()) throw std::invalid_argument("supporting_balls: no centers");
    std::vector<Vec3> active;
    bool on_boundary = false;
    for (const Vec3& c : centers) {
        double d = norm(p - c);
        if (d > 1.0 + tol.eps_geom)
            throw std::invalid_argument("supporting_balls: point lies outside the body");
        if (std::abs(d - 1.0) <= tol.eps_geom) {
            active.push_back(c);
            on_boundary = true;
        }
    }
    if (!on_boundary)
        throw std::invalid_argument("supporting_balls: point lies in the interior");
    return active;
}

}  // namespace ballbody
