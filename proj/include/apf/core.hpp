#pragma once

#include "apf/geom.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apf {

enum class Mode { one_axis, two_axis };

inline const char* mode_name(Mode m) { return m == Mode::one_axis ? "one-axis" : "two-axis"; }

// One-axis mode uses all six lights; two-axis only off/leader/done.
enum class Light { off, terminal, candidate, symmetry, leader, done };

inline const char* light_name(Light c) {
    switch (c) {
        case Light::off: return "off";
        case Light::terminal: return "terminal";
        case Light::candidate: return "candidate";
        case Light::symmetry: return "symmetry";
        case Light::leader: return "leader";
        case Light::done: return "done";
    }
    return "?";
}

inline std::optional<Light> light_from_name(const std::string& s) {
    for (Light c : {Light::off, Light::terminal, Light::candidate, Light::symmetry, Light::leader,
                    Light::done})
        if (s == light_name(c)) return c;
    return std::nullopt;
}

// Persistent local coordinate system of a robot. The X direction and
// orientation are globally agreed in both modes; only the Y sign and the
// private unit distance vary. In two-axis mode y_sign is +1 for everyone.
struct LocalFrame {
    int y_sign = 1;       // +1 or -1
    Rational unit = 1;    // > 0

    RPoint to_local(const RPoint& origin, const RPoint& p) const {
        return {(p.x - origin.x) / unit, Rational(y_sign) * (p.y - origin.y) / unit};
    }

    RPoint to_global(const RPoint& origin, const RPoint& local) const {
        return {origin.x + local.x * unit, origin.y + Rational(y_sign) * local.y * unit};
    }
};

inline RPoint to_local(const LocalFrame& f, const RPoint& origin, const RPoint& p) {
    return f.to_local(origin, p);
}
inline RPoint to_global(const LocalFrame& f, const RPoint& origin, const RPoint& local) {
    return f.to_global(origin, local);
}

// Rigid constant-speed linear motion between two instants.
struct Motion {
    RPoint from;
    RPoint to;
    Rational t_start;
    Rational t_end;  // > t_start

    RPoint position_at(const Rational& t) const {
        if (t <= t_start) return from;
        if (t >= t_end) return to;
        const Rational u = (t - t_start) / (t_end - t_start);
        return {from.x + u * (to.x - from.x), from.y + u * (to.y - from.y)};
    }
};

// Cycle progress of a robot. Only `moving` affects what others can observe
// (interpolated position); the pending states matter for stability.
enum class Activity { idle, snapshot_taken, color_pending, moving };

struct RobotState {
    int id = 0;  // simulator-only; never exposed to the algorithms
    RPoint pos{0, 0};
    Light light = Light::off;
    LocalFrame frame;
    Activity activity = Activity::idle;
    std::optional<Motion> motion;  // set while activity == moving

    RPoint position_at(const Rational& t) const {
        if (motion) return motion->position_at(t);
        return pos;
    }

    bool stable() const { return activity == Activity::idle; }
};

// What a robot actually computes from: positions of visible robots in its
// own frame plus their lights. No identities, own position is the origin
// and is not listed.
struct LocalView {
    std::vector<std::pair<RPoint, Light>> visible;  // sorted by (position, light)
    Light own_color = Light::off;
    int n = 1;  // total robot count, known from the pattern length
};

struct VisibleRobot {
    int id;
    RPoint pos;  // global
    Light light;
};

// The robots r' != observer such that no third robot lies strictly between
// observer and r' at time t. Moving robots are seen at their interpolated
// positions with their current lights.
inline std::vector<VisibleRobot> visible_set(const std::vector<RobotState>& world, int observer,
                                             const Rational& t) {
    const RPoint own = world[static_cast<std::size_t>(observer)].position_at(t);
    std::vector<RPoint> at;
    at.reserve(world.size());
    for (const auto& r : world) at.push_back(r.position_at(t));

    for (std::size_t i = 0; i < world.size(); ++i)
        for (std::size_t j = i + 1; j < world.size(); ++j)
            if (at[i] == at[j])
                throw std::logic_error("visible_set: coincident robots (collision not flagged?)");

    std::vector<VisibleRobot> out;
    for (std::size_t i = 0; i < world.size(); ++i) {
        if (static_cast<int>(i) == observer) continue;
        bool blocked = false;
        for (std::size_t k = 0; k < world.size() && !blocked; ++k) {
            if (static_cast<int>(k) == observer || k == i) continue;
            blocked = strictly_between(own, at[k], at[i]);
        }
        if (!blocked) out.push_back({world[i].id, at[i], world[i].light});
    }
    return out;
}

// LOOK phase: visible robots mapped through the observer's persistent frame.
inline LocalView take_snapshot(const std::vector<RobotState>& world, int observer,
                               const Rational& t, int n) {
    const auto& self = world[static_cast<std::size_t>(observer)];
    const RPoint own = self.position_at(t);
    LocalView view;
    view.own_color = self.light;
    view.n = n;
    for (const auto& vr : visible_set(world, observer, t))
        view.visible.emplace_back(self.frame.to_local(own, vr.pos), vr.light);
    std::sort(view.visible.begin(), view.visible.end(), [](const auto& a, const auto& b) {
        auto c = lex_compare(a.first, b.first);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return static_cast<int>(a.second) < static_cast<int>(b.second);
    });
    return view;
}

// Input pattern: n distinct points from the closed nonnegative quadrant,
// listed in lexicographic order.
struct Pattern {
    std::vector<RPoint> points;

    int n() const { return static_cast<int>(points.size()); }

    // Empty string when valid, otherwise a diagnostic.
    static std::string validate(const std::vector<RPoint>& pts) {
        if (pts.empty()) return "pattern is empty";
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i].x < 0 || pts[i].y < 0)
                return "pattern point " + std::to_string(i) + " has a negative coordinate";
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto c = lex_compare(pts[i], pts[i + 1]);
            if (c == std::strong_ordering::equal)
                return "pattern points " + std::to_string(i) + " and " + std::to_string(i + 1) +
                       " are duplicates";
            if (c == std::strong_ordering::greater)
                return "pattern is not sorted lexicographically at index " + std::to_string(i);
        }
        return "";
    }

    static Pattern from_points(std::vector<RPoint> pts) {
        const std::string err = validate(pts);
        if (!err.empty()) throw std::invalid_argument(err);
        return Pattern{std::move(pts)};
    }
};

}  // namespace apf
