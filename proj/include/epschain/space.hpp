#ifndef EPSCHAIN_SPACE_HPP
#define EPSCHAIN_SPACE_HPP

// Finite metric samples, closed metric entourages, and the samplers for the
// example spaces (Texas circle, Warsaw circle, circle, parallel lines,
// interval).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epschain {

using VertexId = std::uint32_t;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Radius of a closed metric entourage: the pair (x, y) belongs to it iff
/// dist(x, y) <= epsilon.
class Scale {
public:
    constexpr Scale() = default;
    explicit Scale(double epsilon) : epsilon_(epsilon) {
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
            throw std::invalid_argument("scale must be a finite nonnegative number");
    }

    constexpr double epsilon() const noexcept { return epsilon_; }

    /// Closed comparison, no tolerance.
    constexpr bool admits(double distance) const noexcept { return distance <= epsilon_; }

    friend constexpr bool operator==(Scale, Scale) = default;
    friend constexpr auto operator<=>(Scale a, Scale b) { return a.epsilon_ <=> b.epsilon_; }

private:
    double epsilon_ = 0.0;
};

/// A finite metric space given either by planar coordinates or by an
/// explicit distance matrix, with optional per-point part labels.
class PointCloud {
public:
    PointCloud() = default;

    static PointCloud from_points(std::string name, std::vector<Point2> points,
                                  std::vector<std::string> parts = {},
                                  std::vector<std::string> labels = {}) {
        PointCloud c;
        c.name_ = std::move(name);
        c.points_ = std::move(points);
        c.size_ = c.points_.size();
        c.set_labels(std::move(parts), std::move(labels));
        for (const auto& p : c.points_)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("point coordinates must be finite");
        return c;
    }

    /// Rows must be square, symmetric (exactly), with a zero diagonal and
    /// satisfy the triangle inequality up to a relative 1e-12 slack.
    static PointCloud from_matrix(std::string name, std::vector<std::vector<double>> matrix,
                                  std::vector<std::string> parts = {},
                                  std::vector<std::string> labels = {}) {
        PointCloud c;
        c.name_ = std::move(name);
        c.size_ = matrix.size();
        c.matrix_.reserve(c.size_ * c.size_);
        for (const auto& row : matrix) {
            if (row.size() != c.size_)
                throw std::invalid_argument("distance matrix must be square");
            c.matrix_.insert(c.matrix_.end(), row.begin(), row.end());
        }
        const std::size_t n = c.size_;
        for (std::size_t i = 0; i < n; ++i) {
            if (c.matrix_[i * n + i] != 0.0)
                throw std::invalid_argument("distance matrix must have a zero diagonal");
            for (std::size_t j = 0; j < n; ++j) {
                const double d = c.matrix_[i * n + j];
                if (!(d >= 0.0) || !std::isfinite(d))
                    throw std::invalid_argument("distances must be finite and nonnegative");
                if (d != c.matrix_[j * n + i])
                    throw std::invalid_argument("distance matrix is not symmetric");
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const double direct = c.matrix_[i * n + k];
                    const double via = c.matrix_[i * n + j] + c.matrix_[j * n + k];
                    if (direct > via * (1.0 + 1e-12))
                        throw std::invalid_argument("distance matrix violates the triangle inequality");
                }
        c.set_labels(std::move(parts), std::move(labels));
        return c;
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool has_coordinates() const noexcept { return matrix_.empty() || size_ == 0; }

    const std::vector<Point2>& points() const noexcept { return points_; }
    const Point2& point(std::size_t i) const {
        check(i);
        if (!has_coordinates())
            throw std::logic_error("cloud is given by a distance matrix");
        return points_[i];
    }

    std::vector<std::vector<double>> matrix() const {
        std::vector<std::vector<double>> rows;
        if (has_coordinates())
            return rows;
        for (std::size_t i = 0; i < size_; ++i)
            rows.emplace_back(matrix_.begin() + static_cast<std::ptrdiff_t>(i * size_),
                              matrix_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size_));
        return rows;
    }

    const std::vector<std::string>& parts() const noexcept { return parts_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

    /// Empty string when the cloud carries no labels.
    std::string_view label(std::size_t i) const {
        check(i);
        return labels_.empty() ? std::string_view{} : std::string_view{labels_[i]};
    }

    double distance(std::size_t i, std::size_t j) const {
        check(i);
        check(j);
        return distance_unchecked(i, j);
    }

    double distance_unchecked(std::size_t i, std::size_t j) const noexcept {
        if (!matrix_.empty())
            return matrix_[i * size_ + j];
        return std::hypot(points_[i].x - points_[j].x, points_[i].y - points_[j].y);
    }

    bool in_entourage(std::size_t i, std::size_t j, Scale s) const {
        return s.admits(distance(i, j));
    }

    /// Indices j != i with distance(i, j) <= epsilon, ascending.
    std::vector<VertexId> neighbors(std::size_t i, Scale s) const {
        check(i);
        std::vector<VertexId> out;
        for (std::size_t j = 0; j < size_; ++j)
            if (j != i && s.admits(distance_unchecked(i, j)))
                out.push_back(static_cast<VertexId>(j));
        return out;
    }

    /// First index whose coordinates equal p exactly.
    std::optional<VertexId> find_point(Point2 p) const {
        if (!has_coordinates())
            return std::nullopt;
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == p)
                return static_cast<VertexId>(i);
        return std::nullopt;
    }

    void check(std::size_t i) const {
        if (i >= size_)
            throw std::out_of_range("point index " + std::to_string(i) + " out of range (size " +
                                    std::to_string(size_) + ")");
    }

    friend bool operator==(const PointCloud& a, const PointCloud& b) {
        return a.name_ == b.name_ && a.size_ == b.size_ && a.points_ == b.points_ &&
               a.matrix_ == b.matrix_ && a.parts_ == b.parts_ && a.labels_ == b.labels_;
    }

private:
    void set_labels(std::vector<std::string> parts, std::vector<std::string> labels) {
        if (!labels.empty() && labels.size() != size_)
            throw std::invalid_argument("label count must match point count");
        for (const auto& l : labels)
            if (std::find(parts.begin(), parts.end(), l) == parts.end())
                throw std::invalid_argument("label '" + l + "' is not a declared part");
        parts_ = std::move(parts);
        labels_ = std::move(labels);
    }

    std::string name_;
    std::size_t size_ = 0;
    std::vector<Point2> points_;
    std::vector<double> matrix_;  // row-major, empty for coordinate clouds
    std::vector<std::string> parts_;
    std::vector<std::string> labels_;
};

/// Adjacency of the entourage graph at one scale, in CSR form. Neighbor
/// lists are ascending and exclude the vertex itself.
class NeighborhoodGraph {
public:
    NeighborhoodGraph(const PointCloud& cloud, Scale scale) : cloud_(&cloud), scale_(scale) {
        const std::size_t n = cloud.size();
        std::vector<std::vector<VertexId>> adj(n);
        if (cloud.has_coordinates()) {
            // sweep in x order; pairs further apart in x than epsilon cannot be close
            std::vector<VertexId> order(n);
            for (std::size_t i = 0; i < n; ++i)
                order[i] = static_cast<VertexId>(i);
            const auto& pts = cloud.points();
            std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
                return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && a < b);
            });
            for (std::size_t a = 0; a < n; ++a) {
                const VertexId i = order[a];
                for (std::size_t b = a + 1; b < n; ++b) {
                    const VertexId j = order[b];
                    if (pts[j].x - pts[i].x > scale.epsilon())
                        break;
                    if (scale.admits(cloud.distance_unchecked(i, j))) {
                        adj[i].push_back(j);
                        adj[j].push_back(i);
                    }
                }
            }
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (scale.admits(cloud.distance_unchecked(i, j))) {
                        adj[i].push_back(static_cast<VertexId>(j));
                        adj[j].push_back(static_cast<VertexId>(i));
                    }
        }
        offsets_.reserve(n + 1);
        offsets_.push_back(0);
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            targets_.insert(targets_.end(), list.begin(), list.end());
            offsets_.push_back(targets_.size());
        }
    }

    const PointCloud& cloud() const noexcept { return *cloud_; }
    Scale scale() const noexcept { return scale_; }
    std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const VertexId> neighbors(std::size_t i) const {
        cloud_->check(i);
        return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
    }

    bool adjacent(VertexId i, VertexId j) const {
        auto n = neighbors(i);
        return std::binary_search(n.begin(), n.end(), j);
    }

    /// Undirected edges (i < j), ascending.
    std::vector<std::pair<VertexId, VertexId>> edge_list() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count());
        for (std::size_t i = 0; i < vertex_count(); ++i)
            for (VertexId j : neighbors(i))
                if (j > i)
                    out.emplace_back(static_cast<VertexId>(i), j);
        return out;
    }

private:
    const PointCloud* cloud_;
    Scale scale_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> targets_;
};

enum class Family { texas_circle, warsaw_circle, circle, parallel_lines, interval, explicit_points };

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::texas_circle: return "texas_circle";
    case Family::warsaw_circle: return "warsaw_circle";
    case Family::circle: return "circle";
    case Family::parallel_lines: return "parallel_lines";
    case Family::interval: return "interval";
    case Family::explicit_points: return "explicit";
    }
    return "explicit";
}

inline Family parse_family(std::string_view s) {
    for (Family f : {Family::texas_circle, Family::warsaw_circle, Family::circle,
                     Family::parallel_lines, Family::interval, Family::explicit_points})
        if (family_name(f) == s)
            return f;
    throw std::invalid_argument("unknown space family '" + std::string(s) + "'");
}

/// Parameters of a sampled space. Only the fields relevant to the chosen
/// family are read.
struct SpaceSpec {
    Family family = Family::circle;
    std::string name;
    double domain_multiple = 8.0;  // texas: graph and axis run over [pi, domain_multiple * pi]
    double step = 0.05;            // spacing along curve parts
    double segment_step = 0.05;    // texas: spacing along the vertical segment
    double gap = 1.0;              // parallel lines: vertical separation
    double length = 2.0;           // parallel lines / interval: horizontal extent
    std::size_t count = 6;         // circle: number of points
    double warsaw_x_min = 0.05;    // warsaw: the oscillating curve is cut at this x
    std::vector<Point2> must_include;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

inline double texas_profile(double x) {
    const double s = std::sin(x);
    return s * s + 1.0 / x;
}

namespace detail {

struct SampleBuilder {
    std::vector<Point2> points;
    std::vector<std::string> labels;

    void add(Point2 p, const std::string& label) {
        points.push_back(p);
        labels.push_back(label);
    }

    // Points along the polyline a -> b, spacing at most `step`, endpoints
    // included unless `skip_first`.
    void segment(Point2 a, Point2 b, double step, const std::string& label, bool skip_first) {
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step)));
        for (std::size_t k = skip_first ? 1 : 0; k <= pieces; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(pieces);
            add({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, label);
        }
    }

    // Forced points keep their exact coordinates and take the label of the
    // nearest sampled point. Exact duplicates are not repeated.
    void include(std::span<const Point2> forced) {
        const std::size_t sampled = points.size();
        for (const Point2& p : forced) {
            if (std::find(points.begin(), points.end(), p) != points.end())
                continue;
            std::string label = labels.empty() ? std::string("explicit") : labels.front();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < sampled; ++i) {
                const double d = std::hypot(points[i].x - p.x, points[i].y - p.y);
                if (d < best) {
                    best = d;
                    label = labels[i];
                }
            }
            add(p, label);
        }
    }
};

inline std::size_t grid_count(double extent, double step) {
    // number of k >= 0 with k * step <= extent, forgiving one rounding step
    return static_cast<std::size_t>(std::floor(extent / step * (1.0 + 1e-12))) + 1;
}

}  // namespace detail

/// Deterministic sample of the family described by `spec`.
inline PointCloud generate(const SpaceSpec& spec) {
    using std::numbers::pi;
    if (!(spec.step > 0.0) || !(spec.segment_step > 0.0))
        throw std::invalid_argument("sampling steps must be strictly positive");
    detail::SampleBuilder b;
    std::vector<std::string> parts;
    std::string name = spec.name.empty() ? std::string(family_name(spec.family)) : spec.name;

    switch (spec.family) {
    case Family::texas_circle: {
        if (!(spec.domain_multiple > 1.0))
            throw std::invalid_argument("texas_circle domain end must exceed pi");
        parts = {"graph", "axis", "segment"};
        const double end = spec.domain_multiple * pi;
        const std::size_t count = detail::grid_count(end - pi, spec.step);
        for (std::size_t k = 0; k < count; ++k) {
            const double x = pi + static_cast<double>(k) * spec.step;
            b.add({x, texas_profile(x)}, "graph");
        }
        for (std::size_t k = 0; k < count; ++k)
            b.add({pi + static_cast<double>(k) * spec.step, 0.0}, "axis");
        // interior of the segment; its endpoints are the first graph and axis points
        const double top = 1.0 / pi;
        for (std::size_t j = 1; static_cast<double>(j) * spec.segment_step < top; ++j)
            b.add({pi, static_cast<double>(j) * spec.segment_step}, "segment");
        break;
    }
    case Family::warsaw_circle: {
        if (!(spec.warsaw_x_min > 0.0) || !(spec.warsaw_x_min < 1.0))
            throw std::invalid_argument("warsaw_circle cut-off must lie in (0, 1)");
        parts = {"curve", "bar", "arc"};
        // arc-length stepping along y = sin(1/x) from x = 1 down to the cut-off
        double x = 1.0;
        while (x >= spec.warsaw_x_min) {
            b.add({x, std::sin(1.0 / x)}, "curve");
            const double slope = std::cos(1.0 / x) / (x * x);
            x -= spec.step / std::sqrt(1.0 + slope * slope);
        }
        b.segment({0.0, -1.0}, {0.0, 1.0}, spec.step, "bar", false);
        b.segment({0.0, -1.0}, {0.0, -1.5}, spec.step, "arc", true);
        b.segment({0.0, -1.5}, {1.0, -1.5}, spec.step, "arc", true);
        b.segment({1.0, -1.5}, {1.0, std::sin(1.0)}, spec.step, "arc", true);
        b.points.pop_back();  // (1, sin 1) is the first curve point
        b.labels.pop_back();
        break;
    }
    case Family::circle: {
        if (spec.count == 0)
            throw std::invalid_argument("circle needs at least one point");
        parts = {"circle"};
        for (std::size_t k = 0; k < spec.count; ++k) {
            const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(spec.count);
            b.add({std::cos(t), std::sin(t)}, "circle");
        }
        break;
    }
    case Family::parallel_lines: {
        if (!(spec.gap > 0.0) || !(spec.length >= 0.0))
            throw std::invalid_argument("parallel_lines needs a positive gap and nonnegative length");
        parts = {"lower", "upper"};
        const std::size_t count = detail::grid_count(spec.length, spec.step);
        for (const auto& [label, y] : {std::pair{"lower", 0.0}, std::pair{"upper", spec.gap}})
            for (std::size_t k = 0; k < count; ++k)
                b.add({static_cast<double>(k) * spec.step, y}, label);
        break;
    }
    case Family::interval: {
        if (!(spec.length >= 0.0))
            throw std::invalid_argument("interval needs a nonnegative length");
        parts = {"interval"};
        const std::size_t count = detail::grid_count(spec.length, spec.step);
        for (std::size_t k = 0; k < count; ++k)
            b.add({static_cast<double>(k) * spec.step, 0.0}, "interval");
        break;
    }
    case Family::explicit_points:
        parts = {"explicit"};
        break;
    }
    b.include(spec.must_include);
    if (b.points.empty())
        parts.clear();
    return PointCloud::from_points(std::move(name), std::move(b.points), std::move(parts),
                                   b.points.empty() ? std::vector<std::string>{} : std::move(b.labels));
}

}  // namespace epschain

#endif
