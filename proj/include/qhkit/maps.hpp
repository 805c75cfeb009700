#pragma once

// Homeomorphisms between regions with closed-form forward and inverse
// evaluation: identity, affine maps, the inversion z/|z|^2, the three-piece
// shear of the upper half-plane, and compositions of these.

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qhkit/errors.hpp"
#include "qhkit/geometry.hpp"
#include "qhkit/spaces.hpp"

namespace qhkit {

enum class MapKind { Identity, Affine, Inversion, HalfPlaneShear, Composition };

inline const char* to_string(MapKind k) {
    switch (k) {
        case MapKind::Identity: return "identity";
        case MapKind::Affine: return "affine";
        case MapKind::Inversion: return "inversion";
        case MapKind::HalfPlaneShear: return "halfplane-shear";
        case MapKind::Composition: return "composition";
    }
    return "?";
}

/// Immutable description of a homeomorphism f: source -> image.
class MapSpec {
public:
    static MapSpec identity(std::shared_ptr<const Region> domain) {
        MapSpec f(MapKind::Identity, domain, domain);
        return f;
    }

    /// (x, y) -> (a x + b y + e, c x + d y + f). The image region is declared
    /// by the caller and must be the true image of the source.
    static MapSpec affine(std::array<double, 6> coeffs, std::shared_ptr<const Region> source,
                          std::shared_ptr<const Region> image) {
        const double det = coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2];
        if (!std::isfinite(det) || std::abs(det) < 1e-14) throw ConfigurationError("affine map is not invertible");
        MapSpec f(MapKind::Affine, std::move(source), std::move(image));
        f.coeffs_ = coeffs;
        return f;
    }

    /// z -> z / |z|^2 on the punctured plane.
    static MapSpec inversion() {
        auto g = builtin::punctured_plane();
        return MapSpec(MapKind::Inversion, g, g);
    }

    /// Identity for x <= 0; x + i(x+1)y for x >= 0, 0 < y <= 1; x + i(x+y) for x >= 0, y > 1.
    static MapSpec half_plane_shear() {
        auto g = builtin::upper_half_plane();
        return MapSpec(MapKind::HalfPlaneShear, g, g);
    }

    MapKind kind() const { return kind_; }
    const Region& source() const { return *source_; }
    const Region& image() const { return *image_; }
    const std::shared_ptr<const Region>& source_ptr() const { return source_; }
    const std::shared_ptr<const Region>& image_ptr() const { return image_; }
    const std::array<double, 6>& coeffs() const { return coeffs_; }
    /// Factors of a composition in order of application.
    const std::vector<MapSpec>& parts() const { return parts_; }

    std::string name() const {
        if (kind_ != MapKind::Composition) return to_string(kind_);
        std::string s;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
            if (!s.empty()) s += " o ";
            s += it->name();
        }
        return s;
    }

    Point2 eval(Point2 p) const {
        if (!source_->contains(p)) throw MembershipError("point is not in the source region of " + name());
        return apply(p);
    }

    Point2 invert(Point2 q) const {
        if (!image_->contains(q)) throw MembershipError("point is not in the image region of " + name());
        return apply_inverse(q);
    }

    /// Composition g o f; f is applied first.
    friend MapSpec compose(const MapSpec& g, const MapSpec& f) {
        if (!(f.image() == g.source())) throw CompositionError("image of " + f.name() + " is not the source of " + g.name());
        MapSpec h(MapKind::Composition, f.source_, g.image_);
        auto append = [&](const MapSpec& m) {
            if (m.kind_ == MapKind::Composition) {
                h.parts_.insert(h.parts_.end(), m.parts_.begin(), m.parts_.end());
            } else {
                h.parts_.push_back(m);
            }
        };
        append(f);
        append(g);
        return h;
    }

private:
    MapSpec(MapKind kind, std::shared_ptr<const Region> source, std::shared_ptr<const Region> image)
        : kind_(kind), source_(std::move(source)), image_(std::move(image)) {
        if (!source_ || !image_) throw ConfigurationError("map needs source and image regions");
    }

    Point2 apply(Point2 p) const {
        switch (kind_) {
            case MapKind::Identity:
                return p;
            case MapKind::Affine:
                return {coeffs_[0] * p.x + coeffs_[1] * p.y + coeffs_[4], coeffs_[2] * p.x + coeffs_[3] * p.y + coeffs_[5]};
            case MapKind::Inversion: {
                const double r2 = p.x * p.x + p.y * p.y;
                return {p.x / r2, p.y / r2};
            }
            case MapKind::HalfPlaneShear:
                if (p.x <= 0.0) return p;
                if (p.y <= 1.0) return {p.x, (p.x + 1.0) * p.y};
                return {p.x, p.x + p.y};
            case MapKind::Composition:
                for (const auto& m : parts_) p = m.eval(p);
                return p;
        }
        return p;
    }

    Point2 apply_inverse(Point2 q) const {
        switch (kind_) {
            case MapKind::Identity:
                return q;
            case MapKind::Affine: {
                const double det = coeffs_[0] * coeffs_[3] - coeffs_[1] * coeffs_[2];
                const double u = q.x - coeffs_[4];
                const double v = q.y - coeffs_[5];
                return {(coeffs_[3] * u - coeffs_[1] * v) / det, (coeffs_[0] * v - coeffs_[2] * u) / det};
            }
            case MapKind::Inversion: {
                const double r2 = q.x * q.x + q.y * q.y;
                return {q.x / r2, q.y / r2};
            }
            case MapKind::HalfPlaneShear:
                if (q.x <= 0.0) return q;
                if (q.y <= q.x + 1.0) return {q.x, q.y / (q.x + 1.0)};
                return {q.x, q.y - q.x};
            case MapKind::Composition:
                for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) q = it->invert(q);
                return q;
        }
        return q;
    }

    MapKind kind_;
    std::shared_ptr<const Region> source_;
    std::shared_ptr<const Region> image_;
    std::array<double, 6> coeffs_{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
    std::vector<MapSpec> parts_;
};

inline Point2 eval_map(const MapSpec& f, Point2 x) { return f.eval(x); }

inline Point2 invert_map(const MapSpec& f, Point2 y) { return f.invert(y); }

/// Element-wise evaluation; a point outside the source aborts with its index.
inline std::vector<Point2> pushforward_points(const MapSpec& f, const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!f.source().contains(pts[i])) {
            throw IndexedMembershipError(i, "not in the source region of " + f.name());
        }
        out.push_back(f.eval(pts[i]));
    }
    return out;
}

}  // namespace qhkit
