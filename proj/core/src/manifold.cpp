#include "soblab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soblab/errors.hpp"

namespace soblab {

namespace {
constexpr double kAntipodalTol = 1e-10;
constexpr double kTangencyTol = 1e-9;
}  // namespace

Manifold Manifold::euclidean(int n) {
    if (n < 1) throw ContractViolation("euclidean: dimension must be >= 1");
    return Manifold(ManifoldKind::euclidean, n, n);
}

Manifold Manifold::sphere(int n) {
    if (n < 1) throw ContractViolation("sphere: dimension must be >= 1");
    return Manifold(ManifoldKind::sphere, n, n + 1);
}

Manifold Manifold::circle() { return Manifold(ManifoldKind::circle, 1, 2); }

Manifold Manifold::interval(double a, double b) {
    if (!(a < b)) throw ContractViolation("interval: need a < b");
    Manifold m(ManifoldKind::interval, 1, 1);
    m.lo_ = {a};
    m.hi_ = {b};
    return m;
}

Manifold Manifold::rectangle(double ax, double bx, double ay, double by) {
    if (!(ax < bx && ay < by)) throw ContractViolation("rectangle: degenerate bounds");
    Manifold m(ManifoldKind::rectangle, 2, 2);
    m.lo_ = {ax, ay};
    m.hi_ = {bx, by};
    return m;
}

Manifold Manifold::disk(double radius) {
    if (!(radius > 0)) throw ContractViolation("disk: radius must be positive");
    Manifold m(ManifoldKind::disk, 2, 2);
    m.lo_ = {0.0};
    m.hi_ = {radius};
    return m;
}

double Manifold::injectivity_radius() const {
    if (kind_ == ManifoldKind::sphere || kind_ == ManifoldKind::circle) return M_PI;
    return std::numeric_limits<double>::infinity();
}

bool Manifold::contains(const Vec& x, double tol) const {
    if (static_cast<int>(x.size()) != ambient_dim_) return false;
    switch (kind_) {
        case ManifoldKind::sphere:
        case ManifoldKind::circle:
            return std::fabs(norm(x) - 1.0) <= tol;
        case ManifoldKind::euclidean:
            return true;
        case ManifoldKind::interval:
            return x[0] >= lo_[0] - tol && x[0] <= hi_[0] + tol;
        case ManifoldKind::rectangle:
            return x[0] >= lo_[0] - tol && x[0] <= hi_[0] + tol && x[1] >= lo_[1] - tol &&
                   x[1] <= hi_[1] + tol;
        case ManifoldKind::disk:
            return norm(x) <= hi_[0] + tol;
    }
    return false;
}

bool Manifold::is_tangent_at(const Vec& x, const Vec& v, double tol) const {
    if (v.size() != x.size() || static_cast<int>(x.size()) != ambient_dim_) return false;
    if (flat()) return true;
    return std::fabs(dot(x, v)) <= tol * std::max(1.0, norm(v));
}

void Manifold::check_point(const Vec& x) const {
    if (static_cast<int>(x.size()) != ambient_dim_)
        throw ContractViolation("point has wrong ambient dimension");
}

Vec Manifold::exp_map(const Vec& x, const Vec& v) const {
    check_point(x);
    if (flat()) return x + v;
    if (!is_tangent_at(x, v, kTangencyTol))
        throw std::domain_error("exp_map: velocity is not tangent at the base point");
    double theta = norm(v);
    if (theta == 0.0) return x;
    double c = std::cos(theta), s = std::sin(theta);
    Vec y = c * x + (s / theta) * v;
    return (1.0 / norm(y)) * y;  // renormalize against drift
}

Vec Manifold::log_map(const Vec& x, const Vec& y) const {
    check_point(x);
    check_point(y);
    if (flat()) return y - x;
    double c = std::clamp(dot(x, y), -1.0, 1.0);
    Vec w = y - c * x;
    double s = norm(w);
    if (c < -1.0 + kAntipodalTol && s < kAntipodalTol)
        throw SingularityError("log_map: antipodal points");
    if (s == 0.0) return zeros(x.size());
    double theta = std::atan2(s, c);
    return (theta / s) * w;
}

double Manifold::geodesic_distance(const Vec& x, const Vec& y) const {
    check_point(x);
    check_point(y);
    if (x == y) return 0.0;
    if (flat()) return norm(y - x);
    double c = std::clamp(dot(x, y), -1.0, 1.0);
    double s = norm(y - c * x);
    return std::atan2(s, c);
}

Vec Manifold::parallel_transport(const Vec& x, const Vec& y, const Vec& v) const {
    check_point(x);
    check_point(y);
    if (flat()) return v;
    if (!is_tangent_at(x, v, kTangencyTol))
        throw std::domain_error("parallel_transport: vector is not tangent at the base point");
    double c = std::clamp(dot(x, y), -1.0, 1.0);
    Vec w = y - c * x;
    double s = norm(w);
    if (s < kAntipodalTol) {
        if (c > 0.0) return v;  // coincident points
        throw SingularityError("parallel_transport: antipodal points");
    }
    // Rotate the (x, w-hat) plane by the geodesic angle; the orthogonal
    // complement of the plane is carried unchanged.
    Vec what = (1.0 / s) * w;
    double a = dot(v, what);
    double b = dot(v, x);  // zero for exact tangents, kept for stability
    Vec vperp = v - a * what - b * x;
    double ct = c, st = s;  // cos/sin of the transport angle
    Vec x_img = ct * x + st * what;
    Vec w_img = ct * what - st * x;
    return vperp + a * w_img + b * x_img;
}

Vec Manifold::project_to_tangent(const Vec& x, const Vec& w) const {
    check_point(x);
    if (flat()) return w;
    return w - dot(w, x) * x;
}

std::vector<Vec> Manifold::tangent_frame(const Vec& x) const {
    check_point(x);
    std::vector<Vec> frame;
    if (flat()) {
        for (int i = 0; i < ambient_dim_; ++i) {
            Vec e = zeros(ambient_dim_);
            e[i] = 1.0;
            frame.push_back(e);
        }
        return frame;
    }
    // Standard axes in fixed order, projected to the tangent space and
    // orthonormalized; an axis nearly parallel to x leaves a negligible
    // residual and is skipped (the later axes then fill the frame).
    for (int i = 0; i < ambient_dim_ && static_cast<int>(frame.size()) < intrinsic_dim_; ++i) {
        Vec e = zeros(ambient_dim_);
        e[i] = 1.0;
        Vec t = project_to_tangent(x, e);
        for (const Vec& f : frame) t = t - dot(t, f) * f;
        double n = norm(t);
        if (n > 1e-6) frame.push_back((1.0 / n) * t);
    }
    if (static_cast<int>(frame.size()) != intrinsic_dim_)
        throw std::runtime_error("tangent_frame: failed to build a frame");
    return frame;
}

std::string Manifold::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case ManifoldKind::euclidean: os << "euclidean(" << intrinsic_dim_ << ")"; break;
        case ManifoldKind::sphere: os << "sphere(" << intrinsic_dim_ << ")"; break;
        case ManifoldKind::circle: os << "circle"; break;
        case ManifoldKind::interval: os << "interval(" << lo_[0] << "," << hi_[0] << ")"; break;
        case ManifoldKind::rectangle:
            os << "rectangle(" << lo_[0] << "," << hi_[0] << "," << lo_[1] << "," << hi_[1] << ")";
            break;
        case ManifoldKind::disk: os << "disk(" << hi_[0] << ")"; break;
    }
    return os.str();
}

Manifold Manifold::from_string(const std::string& s) {
    auto args = [&]() {
        std::vector<double> out;
        auto l = s.find('('), r = s.find(')');
        if (l == std::string::npos || r == std::string::npos) return out;
        std::istringstream is(s.substr(l + 1, r - l - 1));
        std::string tok;
        while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
        return out;
    }();
    if (s.rfind("euclidean", 0) == 0) return euclidean(static_cast<int>(args.at(0)));
    if (s.rfind("sphere", 0) == 0) return sphere(static_cast<int>(args.at(0)));
    if (s.rfind("circle", 0) == 0) return circle();
    if (s.rfind("interval", 0) == 0) return interval(args.at(0), args.at(1));
    if (s.rfind("rectangle", 0) == 0) return rectangle(args.at(0), args.at(1), args.at(2), args.at(3));
    if (s.rfind("disk", 0) == 0) return disk(args.at(0));
    throw ContractViolation("unknown manifold spec: " + s);
}

}  // namespace soblab
