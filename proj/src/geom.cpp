#include "ballbody/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ballbody {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }
double dist(Vec2 a, Vec2 b) { return norm(a - b); }
Vec2 unit_vec(double angle) { return {std::cos(angle), std::sin(angle)}; }

Vec2 normalized(Vec2 a) {
    double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {a.x / n, a.y / n};
}

double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

const ToleranceConfig& default_tolerances() {
    static const ToleranceConfig cfg{};
    return cfg;
}

void validate(const ToleranceConfig& tol) {
    if (!(tol.eps_geom > 0.0 && tol.eps_geom < 1e-6))
        throw std::invalid_argument("eps_geom must lie in (0, 1e-6)");
    if (!(tol.eps_quad > 0.0 && tol.eps_quad < 1e-4))
        throw std::invalid_argument("eps_quad must lie in (0, 1e-4)");
    if (tol.grid_default < 64)
        throw std::invalid_argument("grid_default must be at least 64");
}

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
}

Vec2 reflect_point(Vec2 p, const ReflectionAxis& axis) {
    double n2 = norm2(axis.direction);
    if (std::abs(n2 - 1.0) > 1e-9)
        throw std::invalid_argument("reflection axis direction must be a unit vector");
    double excess = dot(p, axis.direction) - axis.offset;
    return p - (2.0 * excess) * axis.direction;
}

std::vector<Vec2> circle_circle_intersection(Vec2 c1, Vec2 c2, double r,
                                             const ToleranceConfig& tol) {
    if (!(r > 0.0)) throw std::invalid_argument("circle radius must be positive");
    double d = dist(c1, c2);
    if (d < tol.eps_geom) throw std::invalid_argument("degenerate center pair");
    if (d > 2.0 * r + tol.eps_geom) return {};
    Vec2 mid = 0.5 * (c1 + c2);
    if (d >= 2.0 * r - tol.eps_geom) return {mid};  // snapped tangency
    double h = std::sqrt(std::max(0.0, r * r - 0.25 * d * d));
    Vec2 left = (1.0 / d) * perp(c2 - c1);
    return {mid + h * left, mid - h * left};
}

namespace {

// circumscribed circle through three points; collinear inputs fall back to the
// best two-point diameter that holds all three
Ball2 circle_through(Vec2 a, Vec2 b) {
    return {0.5 * (a + b), 0.5 * dist(a, b)};
}

bool ball_holds(const Ball2& ball, Vec2 p) {
    // tiny multiplicative slack keeps the recursion stable
    double rr = ball.radius * ball.radius;
    return norm2(p - ball.center) <= rr + 1e-12 * (1.0 + rr);
}

Ball2 circle_through(Vec2 a, Vec2 b, Vec2 c) {
    Vec2 ab = b - a, ac = c - a;
    double den = 2.0 * cross(ab, ac);
    if (std::abs(den) < 1e-14 * (norm2(ab) + norm2(ac))) {
        for (const Ball2& cand : {circle_through(a, b), circle_through(a, c), circle_through(b, c)})
            if (ball_holds(cand, a) && ball_holds(cand, b) && ball_holds(cand, c)) return cand;
    }
    double pab = norm2(ab), pac = norm2(ac);
    Vec2 center = a + (1.0 / den) * Vec2{ac.y * pab - ab.y * pac, ab.x * pac - ac.x * pab};
    return {center, dist(center, a)};
}

Ball2 ball_of_support(const std::vector<Vec2>& support) {
    switch (support.size()) {
        case 0: return {{0.0, 0.0}, 0.0};
        case 1: return {support[0], 0.0};
        case 2: return circle_through(support[0], support[1]);
        default: return circle_through(support[0], support[1], support[2]);
    }
}

Ball2 welzl(std::vector<Vec2>& pts, std::size_t n, std::vector<Vec2>& support) {
    if (n == 0 || support.size() == 3) return ball_of_support(support);
    Ball2 ball = welzl(pts, n - 1, support);
    if (ball_holds(ball, pts[n - 1])) return ball;
    support.push_back(pts[n - 1]);
    ball = welzl(pts, n - 1, support);
    support.pop_back();
    return ball;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Ball2 smallest_enclosing_ball(const std::vector<Vec2>& points, std::uint64_t shuffle_seed) {
    if (points.empty()) throw std::invalid_argument("smallest_enclosing_ball: empty point set");
    std::vector<Vec2> pts = points;
    // deterministic Fisher-Yates so results are reproducible bit for bit
    std::uint64_t state = shuffle_seed;
    for (std::size_t i = pts.size() - 1; i > 0; --i) {
        state = mix_seed(state, i);
        std::swap(pts[i], pts[state % (i + 1)]);
    }
    std::vector<Vec2> support;
    support.reserve(3);
    return welzl(pts, pts.size(), support);
}

namespace {

/* 7-point Gauss / 15-point Kronrod pair on [-1, 1]. */
constexpr double kron_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kron_weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double gauss_weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct GkEstimate {
    double integral;
    double error;
};

GkEstimate gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        double x = mid + half * kron_nodes[i];
        double y = f(x);
        if (!std::isfinite(y)) {
            std::ostringstream msg;
            msg << "integrand not finite at abscissa " << x;
            throw std::runtime_error(msg.str());
        }
        kron += kron_weights[i] * y;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * y;
    }
    kron *= half;
    gauss *= half;
    double err = std::pow(200.0 * std::abs(kron - gauss), 1.5);
    return {kron, std::max(err, std::abs(kron) * 1e-16)};
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int depth) {
    GkEstimate est = gauss_kronrod(f, a, b);
    if (est.error <= tol || b - a < 1e-14 * (1.0 + std::abs(a) + std::abs(b))) return est.integral;
    if (depth > 60) throw std::runtime_error("integrate: interval subdivision failed to converge");
    double mid = 0.5 * (a + b);
    return integrate_adaptive(f, a, mid, 0.5 * tol, depth + 1) +
           integrate_adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 EndpointRule rule) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    if (rule == EndpointRule::SqrtSingularity) {
        double m = 0.5 * (a + b), r = 0.5 * (b - a);
        auto g = [&f, m, r](double theta) { return f(m + r * std::sin(theta)) * r * std::cos(theta); };
        constexpr double half_pi = std::numbers::pi / 2.0;
        return sign * integrate_adaptive(g, -half_pi, half_pi, tol, 0);
    }
    return sign * integrate_adaptive(f, a, b, tol, 0);
}

double unit_ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("unit_ball_volume: dimension must be nonnegative");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

std::vector<Vec2> dedup_points(std::vector<Vec2> pts, double eps) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    // sort by x so the scan only needs a bounded look-back window
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&pts](std::size_t a, std::size_t b) {
        return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
    });
    std::vector<bool> dup(pts.size(), false);
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
        if (dup[order[ii]]) continue;
        for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
            if (pts[order[jj]].x - pts[order[ii]].x > eps) break;
            if (!dup[order[jj]] && dist(pts[order[ii]], pts[order[jj]]) <= eps) dup[order[jj]] = true;
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!dup[i]) out.push_back(pts[i]);
    return out;
}

}  // namespace ballbody
