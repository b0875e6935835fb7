#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace varfrac {

// Node coordinates. 1D grids use only the first component (second is 0).
using Point = std::array<double, 2>;

inline double sq_distance(const Point& a, const Point& b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double t = a[d] - b[d];
        s += t * t;
    }
    return s;
}

inline double distance(const Point& a, const Point& b, int dim) {
    return std::sqrt(sq_distance(a, b, dim));
}

struct Box {
    int dim = 1;
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};

    double span(int axis) const { return hi[axis] - lo[axis]; }

    double volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= span(d);
        return v;
    }

    bool strictly_contains(const Point& x) const {
        for (int d = 0; d < dim; ++d)
            if (!(x[d] > lo[d] && x[d] < hi[d])) return false;
        return true;
    }

    static Box interval(double a, double b) { return Box{1, {a, 0.0}, {b, 0.0}}; }
    static Box rectangle(double ax, double bx, double ay, double by) {
        return Box{2, {ax, ay}, {bx, by}};
    }
};

// Catalog of admissible domain shapes. Membership is decided pointwise;
// boundary_distance exists for every catalog shape and is used to keep
// randomly drawn bump supports strictly inside the domain.
class OmegaShape {
public:
    enum class Kind { Interval, Rectangle, Disk, Custom };

    static OmegaShape interval(double a, double b) {
        require(b > a, "interval: need a < b");
        OmegaShape s;
        s.kind_ = Kind::Interval;
        s.lo_ = {a, 0.0};
        s.hi_ = {b, 0.0};
        return s;
    }

    static OmegaShape rectangle(double ax, double bx, double ay, double by) {
        require(bx > ax && by > ay, "rectangle: need positive side lengths");
        OmegaShape s;
        s.kind_ = Kind::Rectangle;
        s.lo_ = {ax, ay};
        s.hi_ = {bx, by};
        return s;
    }

    static OmegaShape disk(double cx, double cy, double radius) {
        require(radius > 0.0, "disk: need radius > 0");
        OmegaShape s;
        s.kind_ = Kind::Disk;
        s.lo_ = {cx, cy};
        s.radius_ = radius;
        return s;
    }

    static OmegaShape custom(std::function<bool(const Point&)> predicate) {
        OmegaShape s;
        s.kind_ = Kind::Custom;
        s.predicate_ = std::move(predicate);
        return s;
    }

    Kind kind() const { return kind_; }

    bool contains(const Point& x) const {
        switch (kind_) {
            case Kind::Interval: return x[0] > lo_[0] && x[0] < hi_[0];
            case Kind::Rectangle:
                return x[0] > lo_[0] && x[0] < hi_[0] && x[1] > lo_[1] && x[1] < hi_[1];
            case Kind::Disk: {
                const double dx = x[0] - lo_[0], dy = x[1] - lo_[1];
                return dx * dx + dy * dy < radius_ * radius_;
            }
            case Kind::Custom: return predicate_(x);
        }
        return false;
    }

    // Distance from an interior point to the boundary; not available for
    // custom predicates.
    double boundary_distance(const Point& x) const {
        switch (kind_) {
            case Kind::Interval: return std::min(x[0] - lo_[0], hi_[0] - x[0]);
            case Kind::Rectangle:
                return std::min(std::min(x[0] - lo_[0], hi_[0] - x[0]),
                                std::min(x[1] - lo_[1], hi_[1] - x[1]));
            case Kind::Disk: {
                const double dx = x[0] - lo_[0], dy = x[1] - lo_[1];
                return radius_ - std::sqrt(dx * dx + dy * dy);
            }
            case Kind::Custom:
                throw std::logic_error("boundary_distance is undefined for custom shapes");
        }
        return 0.0;
    }

    Box bounding_box(int dim) const {
        switch (kind_) {
            case Kind::Interval: return Box::interval(lo_[0], hi_[0]);
            case Kind::Rectangle: return Box::rectangle(lo_[0], hi_[0], lo_[1], hi_[1]);
            case Kind::Disk:
                return Box::rectangle(lo_[0] - radius_, lo_[0] + radius_,
                                      lo_[1] - radius_, lo_[1] + radius_);
            case Kind::Custom:
                throw std::logic_error("bounding_box is undefined for custom shapes");
        }
        return Box{dim, {}, {}};
    }

    // Diameter of the catalog shape, used as the default collar width.
    double diameter() const {
        switch (kind_) {
            case Kind::Interval: return hi_[0] - lo_[0];
            case Kind::Rectangle: {
                const double dx = hi_[0] - lo_[0], dy = hi_[1] - lo_[1];
                return std::sqrt(dx * dx + dy * dy);
            }
            case Kind::Disk: return 2.0 * radius_;
            case Kind::Custom:
                throw std::logic_error("diameter is undefined for custom shapes");
        }
        return 0.0;
    }

    // Interval [a,b], rectangle corners, or disk center, depending on kind.
    const Point& param_lo() const { return lo_; }
    const Point& param_hi() const { return hi_; }
    double radius() const { return radius_; }

private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    Kind kind_ = Kind::Interval;
    Point lo_{0.0, 0.0};
    Point hi_{0.0, 0.0};
    double radius_ = 0.0;
    std::function<bool(const Point&)> predicate_;
};

}  // namespace varfrac
