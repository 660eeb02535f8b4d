#pragma once

#include "apf/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <vector>

namespace apf {

struct RPoint {
    Rational x;
    Rational y;

    bool operator==(const RPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const RPoint& o) const { return !(*this == o); }
};

inline RPoint operator+(const RPoint& a, const RPoint& b) { return {a.x + b.x, a.y + b.y}; }
inline RPoint operator-(const RPoint& a, const RPoint& b) { return {a.x - b.x, a.y - b.y}; }
inline RPoint operator*(const Rational& s, const RPoint& p) { return {s * p.x, s * p.y}; }

// Lexicographic order: (x,y) < (x',y') iff x < x', or x = x' and y < y'.
inline std::strong_ordering lex_compare(const RPoint& p, const RPoint& q) {
    if (p.x < q.x) return std::strong_ordering::less;
    if (p.x > q.x) return std::strong_ordering::greater;
    if (p.y < q.y) return std::strong_ordering::less;
    if (p.y > q.y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline bool lex_less(const RPoint& p, const RPoint& q) {
    return lex_compare(p, q) == std::strong_ordering::less;
}

inline Rational cross(const RPoint& o, const RPoint& a, const RPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// True iff b lies strictly inside the open segment (a, c). Endpoints do not
// count, and a degenerate segment (a == c) has no interior.
inline bool strictly_between(const RPoint& a, const RPoint& b, const RPoint& c) {
    if (a == c) return false;
    if (cross(a, b, c) != 0) return false;
    if (a.x != c.x) {
        const Rational lo = std::min(a.x, c.x);
        const Rational hi = std::max(a.x, c.x);
        return lo < b.x && b.x < hi;
    }
    const Rational lo = std::min(a.y, c.y);
    const Rational hi = std::max(a.y, c.y);
    return lo < b.y && b.y < hi;
}

struct HorizontalAxis {
    Rational axis_y;
    bool has_point_on_axis;
};

// Detects reflectional symmetry about a horizontal line. The only candidate
// axis for a nonempty set is y = (min_y + max_y) / 2.
inline std::optional<HorizontalAxis> horizontal_symmetry_axis(const std::vector<RPoint>& points) {
    if (points.empty()) return std::nullopt;
    Rational min_y = points[0].y, max_y = points[0].y;
    for (const auto& p : points) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const Rational axis = (min_y + max_y) / 2;
    std::vector<RPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    bool on_axis = false;
    for (const auto& p : points) {
        if (p.y == axis) on_axis = true;
        const RPoint mirror{p.x, 2 * axis - p.y};
        if (!std::binary_search(sorted.begin(), sorted.end(), mirror, lex_less)) return std::nullopt;
    }
    return HorizontalAxis{axis, on_axis};
}

// The eight axis-aligned isometries: four rotations and four reflections.
enum class Isometry {
    identity,
    rot90,
    rot180,
    rot270,
    flip_x,         // (x, y) -> (x, -y)
    flip_y,         // (x, y) -> (-x, y)
    flip_diag,      // (x, y) -> (y, x)
    flip_antidiag,  // (x, y) -> (-y, -x)
};

constexpr std::array<Isometry, 8> kAllIsometries = {
    Isometry::identity, Isometry::rot90,  Isometry::rot180,    Isometry::rot270,
    Isometry::flip_x,   Isometry::flip_y, Isometry::flip_diag, Isometry::flip_antidiag,
};

inline RPoint apply_isometry(Isometry m, const RPoint& p) {
    switch (m) {
        case Isometry::identity: return p;
        case Isometry::rot90: return {-p.y, p.x};
        case Isometry::rot180: return {-p.x, -p.y};
        case Isometry::rot270: return {p.y, -p.x};
        case Isometry::flip_x: return {p.x, -p.y};
        case Isometry::flip_y: return {-p.x, p.y};
        case Isometry::flip_diag: return {p.y, p.x};
        case Isometry::flip_antidiag: return {-p.y, -p.x};
    }
    return p;
}

inline Isometry inverse_isometry(Isometry m) {
    if (m == Isometry::rot90) return Isometry::rot270;
    if (m == Isometry::rot270) return Isometry::rot90;
    return m;  // the rest are involutions
}

// p -> scale * isometry(p) + translation, with scale > 0.
struct AxisAlignedSimilarity {
    Isometry isometry = Isometry::identity;
    Rational scale = 1;
    RPoint translation{0, 0};

    RPoint apply(const RPoint& p) const {
        return scale * apply_isometry(isometry, p) + translation;
    }

    AxisAlignedSimilarity inverse() const {
        AxisAlignedSimilarity inv;
        inv.isometry = inverse_isometry(isometry);
        inv.scale = 1 / scale;
        const RPoint t = apply_isometry(inv.isometry, translation);
        inv.translation = {-inv.scale * t.x, -inv.scale * t.y};
        return inv;
    }
};

// Searches for T in the restricted group with T(A) = B as sets. For each
// isometry the lexicographic extremes of the transformed A must map to the
// extremes of B (positive scale preserves lex order), which pins scale and
// translation; the candidate is then verified by set equality.
inline std::optional<AxisAlignedSimilarity> match_axis_aligned_similarity(
    const std::vector<RPoint>& a, const std::vector<RPoint>& b) {
    if (a.empty() || a.size() != b.size()) return std::nullopt;

    std::vector<RPoint> b_sorted = b;
    std::sort(b_sorted.begin(), b_sorted.end(), lex_less);

    for (Isometry m : kAllIsometries) {
        std::vector<RPoint> img(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) img[i] = apply_isometry(m, a[i]);
        std::sort(img.begin(), img.end(), lex_less);

        AxisAlignedSimilarity t;
        t.isometry = m;
        if (a.size() == 1) {
            t.scale = 1;
            t.translation = b_sorted[0] - img[0];
        } else {
            const RPoint da = img.back() - img.front();
            const RPoint db = b_sorted.back() - b_sorted.front();
            Rational s;
            if (da.x != 0) {
                s = db.x / da.x;
                if (s * da.y != db.y) continue;
            } else {
                if (db.x != 0) continue;
                s = db.y / da.y;
            }
            if (s <= 0) continue;
            t.scale = s;
            t.translation = b_sorted.front() - s * img.front();
        }

        bool ok = true;
        for (std::size_t i = 0; i < img.size() && ok; ++i) {
            const RPoint mapped = t.scale * img[i] + t.translation;
            ok = mapped == b_sorted[i];
        }
        if (ok) return t;
    }
    return std::nullopt;
}

}  // namespace apf
