#pragma once

// Decision functions of the pattern-formation protocol. Every function here
// is a pure map from a local snapshot (plus the input pattern) to an action;
// none of them can observe global state, robot identities, or the clock.
//
// Whenever a structural assumption about the view fails (an expected partner
// is missing, the shared frame cannot be reconstructed), the functions fall
// back to the null action: under an asynchronous scheduler such snapshots
// are transient and the robot is meant to wait.

#include "apf/core.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace apf {

struct Action {
    std::optional<Light> color;
    std::optional<RPoint> dest;  // in the acting robot's local coordinates
    const char* tag = "null";

    bool is_null() const { return !color.has_value() && !dest.has_value(); }
};

inline Action null_action() { return {}; }

// ---------------------------------------------------------------------------
// Phase 1: reduce the leftmost robots to a leader or a candidate pair.

// True iff the caller may leave the leftmost vertical line: it is leftmost
// and terminal on its line, or the only robot to its left is a candidate and
// the half-line on the far side is free.
inline bool leftmost_terminal(const LocalView& view) {
    int left_count = 0;
    RPoint left_pos{0, 0};
    Light left_light = Light::off;
    bool above = false, below = false;
    for (const auto& [p, c] : view.visible) {
        if (p.x < 0) {
            ++left_count;
            left_pos = p;
            left_light = c;
        } else if (p.x == 0) {
            (p.y > 0 ? above : below) = true;
        }
    }
    if (left_count == 0) return !above || !below;
    if (left_count == 1 && left_light == Light::candidate) {
        if (left_pos.y > 0) return !below;
        if (left_pos.y < 0) return !above;
        return !above || !below;  // level partner: either far half-line counts
    }
    return false;
}

// Horizontal step left: to the nearest vertical line carrying a robot on the
// right, or one local unit when no robot is to the right.
inline RPoint compute_destination(const LocalView& view) {
    std::optional<Rational> d;
    for (const auto& [p, c] : view.visible)
        if (p.x > 0 && (!d || p.x < *d)) d = p.x;
    if (!d) return {Rational(-1), Rational(0)};
    return {-*d, Rational(0)};
}

// Descend below every other robot, then claim the leader light.
inline Action become_leader(const LocalView& view) {
    bool any_below = false;
    std::optional<RPoint> bottom;
    for (const auto& [p, c] : view.visible) {
        if (p.y <= 0) any_below = true;
        if (!bottom || p.y < bottom->y || (p.y == bottom->y && p.x < bottom->x)) bottom = p;
    }
    if (!any_below) return {Light::leader, std::nullopt, "p1_set_leader"};
    const Rational d = rat_abs(bottom->y);
    return {std::nullopt, RPoint{Rational(0), -(d + 1)}, "p1_become_leader_descend"};
}

inline Action phase1_step(const LocalView& view) {
    if (view.own_color == Light::off) {
        bool any_left_closed = false, all_off = true;
        for (const auto& [p, c] : view.visible) {
            if (p.x <= 0) any_left_closed = true;
            if (c != Light::off) all_off = false;
        }
        if (!any_left_closed && all_off) return become_leader(view);
        if (leftmost_terminal(view))
            return {Light::terminal, compute_destination(view), "p1_terminal_move"};
        return null_action();
    }
    if (view.own_color == Light::terminal)
        return {Light::candidate, std::nullopt, "p1_terminal_to_candidate"};
    if (view.own_color == Light::candidate) {
        for (const auto& [p, c] : view.visible)
            if (p.x > 0 && c == Light::candidate)
                return {Light::off, std::nullopt, "p1_candidate_reset"};
        for (const auto& [p, c] : view.visible)
            if (p.x < 0 && c == Light::off)
                return {Light::off, std::nullopt, "p1_candidate_reset"};
        return null_action();
    }
    return null_action();
}

// ---------------------------------------------------------------------------
// Phase 2: break the candidate tie by comparing the half-plane strings.

// Per-cycle logical frame of a candidate: +Y towards the partner robot on
// the caller's vertical line. Positions are the caller's local coordinates
// with y multiplied by `flip`, so the partner sits at (0, partner_dist).
struct Phase2Frame {
    int flip = 1;
    Rational partner_dist;  // > 0
    Light partner_light = Light::candidate;
    Rational lprime_x;  // distance between L and L' in local units (d_LL')
    Rational k_y;       // logical y of the line K
    Rational d_self;    // |k_y|
    Rational d_partner; // |partner_dist - k_y|
    std::vector<std::pair<RPoint, Light>> logical;  // all visible robots, logical coords
};

inline std::optional<Phase2Frame> make_phase2_frame(const LocalView& view) {
    // the partner: exactly one candidate- or symmetry-lit robot on my line
    std::optional<std::pair<RPoint, Light>> partner;
    for (const auto& [p, c] : view.visible) {
        if (p.x == 0 && (c == Light::candidate || c == Light::symmetry)) {
            if (partner) return std::nullopt;
            partner = {p, c};
        }
    }
    if (!partner || partner->first.y == 0) return std::nullopt;

    Phase2Frame f;
    f.flip = partner->first.y > 0 ? 1 : -1;
    f.partner_dist = rat_abs(partner->first.y);
    f.partner_light = partner->second;

    std::optional<Rational> lx;
    for (const auto& [p, c] : view.visible)
        if (p.x > 0 && (!lx || p.x < *lx)) lx = p.x;
    if (!lx) return std::nullopt;
    f.lprime_x = *lx;

    Rational sum = 0;
    int count = 0;
    for (const auto& [p, c] : view.visible) {
        f.logical.emplace_back(RPoint{p.x, Rational(f.flip) * p.y}, c);
        if (p.x == *lx) {
            sum += Rational(f.flip) * p.y;
            ++count;
        }
    }
    f.k_y = sum / count;
    f.d_self = rat_abs(f.k_y);
    f.d_partner = rat_abs(f.partner_dist - f.k_y);
    return f;
}

// Sorted position string of one half-plane; missing terms compare as the
// null element, which is larger than every real term.
struct LambdaString {
    std::vector<RPoint> terms;
};

inline int lambda_compare(const LambdaString& a, const LambdaString& b) {
    const std::size_t len = std::max(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < len; ++i) {
        const bool ha = i < a.terms.size(), hb = i < b.terms.size();
        if (ha && !hb) return -1;  // term < null
        if (!ha && hb) return 1;
        if (!ha && !hb) return 0;
        const auto c = lex_compare(a.terms[i], b.terms[i]);
        if (c == std::strong_ordering::less) return -1;
        if (c == std::strong_ordering::greater) return 1;
    }
    return 0;
}

struct LambdaStrings {
    LambdaString lambda_self, lambda_other;
    LambdaString lprime_self, lprime_other;
};

// Builds the four strings in the shared half-plane coordinate systems:
// origin at K intersect L', +X agreed, +Y into the respective half-plane,
// unit d_LL' so both candidates derive identical numbers from geometry
// alone. Only robots strictly right of L participate; robots on K belong
// to neither string.
inline LambdaStrings lambda_strings(const Phase2Frame& f) {
    LambdaStrings out;
    const Rational w = f.lprime_x;
    for (const auto& [p, c] : f.logical) {
        if (p.x <= 0) continue;
        const Rational cx = (p.x - w) / w;
        if (p.y < f.k_y) {  // my side of K (I sit at logical y = 0 < k_y)
            out.lambda_self.terms.push_back({cx, (f.k_y - p.y) / w});
        } else if (p.y > f.k_y) {
            out.lambda_other.terms.push_back({cx, (p.y - f.k_y) / w});
        }
    }
    auto finish = [](LambdaString& s) {
        std::sort(s.terms.begin(), s.terms.end(), lex_less);
    };
    finish(out.lambda_self);
    finish(out.lambda_other);
    for (const auto& t : out.lambda_self.terms)
        if (t.x == 0) out.lprime_self.terms.push_back(t);
    for (const auto& t : out.lambda_other.terms)
        if (t.x == 0) out.lprime_other.terms.push_back(t);
    return out;
}

// Left step for the retiring candidate, capped at half the distance to the
// line through the partner and the highest robot on L' beyond it, which
// keeps both candidates visible from L' throughout the move.
inline RPoint compute_destination2(const Phase2Frame& f) {
    std::optional<Rational> max_y;
    for (const auto& [p, c] : f.logical)
        if (p.x == f.lprime_x && p.y > f.partner_dist && (!max_y || p.y > *max_y)) max_y = p.y;
    if (!max_y) return {Rational(-1), Rational(0)};
    const Rational x = -f.lprime_x / 2 * (f.partner_dist / (*max_y - f.partner_dist));
    return {x, Rational(0)};
}

inline Action phase2_step(const LocalView& view) {
    if (view.own_color == Light::candidate) {
        auto frame = make_phase2_frame(view);
        if (!frame) return null_action();
        const Phase2Frame& f = *frame;
        auto to_local_y = [&f](const Rational& logical_y) {
            return Rational(f.flip) * logical_y;
        };

        if (f.partner_light == Light::symmetry) {
            if (f.d_self < f.d_partner) {
                const Rational step = f.d_partner - f.d_self;
                return {std::nullopt, RPoint{Rational(0), to_local_y(-step)}, "p2_equalize"};
            }
            if (f.d_self == f.d_partner)
                return {Light::symmetry, std::nullopt, "p2_set_symmetry"};
            return null_action();
        }

        // partner is a candidate
        const bool different_open_halves = 0 < f.k_y && f.k_y < f.partner_dist;
        if (!different_open_halves) {
            if (f.d_self > f.d_partner)
                return {std::nullopt, compute_destination2(f), "p2_cd2_left"};
            return null_action();
        }

        const auto strings = lambda_strings(f);
        const int lp = lambda_compare(strings.lprime_self, strings.lprime_other);
        if (lp < 0) return {std::nullopt, compute_destination2(f), "p2_cd2_left"};
        if (lp > 0) return null_action();

        if (f.d_self < f.d_partner) return null_action();

        const bool sees_all = static_cast<int>(view.visible.size()) + 1 == view.n;
        bool none_behind = true;
        for (const auto& [p, c] : f.logical)
            if (p.y < 0) none_behind = false;
        if (!(sees_all && none_behind)) {
            // double the distance from K to gain an unobstructed, extremal view
            return {std::nullopt, RPoint{Rational(0), to_local_y(-f.d_self)},
                    sees_all ? "p2_climb_clear" : "p2_climb_blocked"};
        }

        const int l = lambda_compare(strings.lambda_self, strings.lambda_other);
        if (l < 0) return {std::nullopt, compute_destination2(f), "p2_cd2_left"};
        if (l > 0)
            return {std::nullopt, RPoint{f.lprime_x / 2, Rational(0)}, "p2_right"};
        bool k_occupied = false;
        for (const auto& [p, c] : f.logical)
            if (p.y == f.k_y) k_occupied = true;
        if (!k_occupied) return {std::nullopt, compute_destination2(f), "p2_cd2_left"};
        return {Light::symmetry, std::nullopt, "p2_set_symmetry"};
    }

    if (view.own_color == Light::symmetry) {
        for (const auto& [p, c] : view.visible)
            if (p.x < 0 && c == Light::off)
                return {Light::off, std::nullopt, "p2_symmetry_reset"};
        return null_action();
    }

    if (view.own_color == Light::off) {
        // two symmetry-lit robots to my left on one vertical line mark K;
        // the leftmost robot on K escapes past their line
        std::vector<RPoint> syms;
        for (const auto& [p, c] : view.visible)
            if (c == Light::symmetry && p.x < 0) syms.push_back(p);
        if (syms.size() != 2 || syms[0].x != syms[1].x) return null_action();
        const Rational mid = (syms[0].y + syms[1].y) / 2;
        if (mid != 0) return null_action();  // I am not on K
        for (const auto& [p, c] : view.visible)
            if (p.y == 0 && p.x < 0) return null_action();  // not leftmost on K
        const Rational d = -syms[0].x;
        return {std::nullopt, RPoint{-(d + 1), Rational(0)}, "p2_k_robot_left"};
    }

    return null_action();
}

// ---------------------------------------------------------------------------
// Stage 2: form the pattern from a leader configuration.

// Staging abscissas: each target gets a distinct point on the leader's
// horizontal line, offset from its own vertical line by at most eps/2 so
// the staging order matches the lexicographic target order.
inline std::vector<Rational> psi_targets(const Pattern& pattern, Rational* eps_out = nullptr) {
    const auto& pts = pattern.points;
    Rational eps = 1;
    bool any_gap = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].x != pts[i].x) {
            const Rational gap = pts[i + 1].x - pts[i].x;
            if (!any_gap || gap < eps) eps = gap;
            any_gap = true;
        }
    }
    if (!any_gap) eps = 1;
    if (eps_out) *eps_out = eps;

    std::vector<Rational> psi(pts.size());
    std::size_t i = 0;
    while (i < pts.size()) {
        std::size_t j = i;
        while (j < pts.size() && pts[j].x == pts[i].x) ++j;
        const std::size_t m = j - i;  // targets on this vertical line
        for (std::size_t k = 0; k < m; ++k) {
            if (m == 1)
                psi[i + k] = pts[i].x;
            else
                psi[i + k] = pts[i].x + Rational(k) / (2 * Rational(m - 1)) * eps;
        }
        i = j;
    }
    return psi;
}

namespace detail {

// Shared frame recovered from the leader (at agreed (-1,-1)) and the robot
// on its vertical line (at agreed (-1,0)). All quantities are in the
// observer's local coordinates; `flip` maps local y to agreed-up y.
struct AgreedFrame {
    RPoint leader;  // local position of the leader
    int flip;
    Rational unit;  // agreed unit in local units

    RPoint to_local_pt(const RPoint& agreed) const {
        const Rational lx = leader.x + unit * (1 + agreed.x);
        const Rational ly_logical = Rational(flip) * leader.y + unit * (1 + agreed.y);
        return {lx, Rational(flip) * ly_logical};
    }

    RPoint to_agreed_pt(const RPoint& local) const {
        const Rational ax = (local.x - leader.x) / unit - 1;
        const Rational ay = Rational(flip) * (local.y - leader.y) / unit - 1;
        return {ax, ay};
    }
};

}  // namespace detail

// True iff the robot staged at (Psi(i), -1) may proceed to its target: the
// first line robot goes unconditionally, later ones wait for a done-lit
// robot at the previous target.
inline bool partial_formation(const LocalView& view, const Pattern& pattern, int i) {
    if (i == 2) return true;
    if (i < 1 || i >= pattern.n()) return false;

    // reconstruct the agreed frame: leader on my horizontal line plus the
    // robot on the leader's vertical line
    std::optional<RPoint> leader;
    for (const auto& [p, c] : view.visible)
        if (c == Light::leader) leader = p;
    if (!leader || leader->y != 0 || leader->x >= 0) return false;
    std::optional<RPoint> ru;
    for (const auto& [p, c] : view.visible) {
        if (p.x == leader->x && c != Light::leader) {
            if (ru) return false;
            ru = p;
        }
    }
    if (!ru || ru->y == 0) return false;
    detail::AgreedFrame f{*leader, ru->y > 0 ? 1 : -1, rat_abs(ru->y)};
    const RPoint prev = f.to_local_pt(pattern.points[static_cast<std::size_t>(i - 1)]);
    for (const auto& [p, c] : view.visible)
        if (c == Light::done && p == prev) return true;
    return false;
}

inline Action stage2_step(const LocalView& view, const Pattern& pattern) {
    const int n = pattern.n();

    if (view.own_color == Light::leader) {
        for (const auto& [p, c] : view.visible)
            if (c == Light::off) return null_action();
        if (n == 1) return {Light::done, std::nullopt, "s2_leader_done"};

        // the leftmost (bottommost on ties towards my line) robot is at s1;
        // it and my own position pin the agreed frame
        std::optional<RPoint> anchor;
        int flip = 0;
        for (const auto& [p, c] : view.visible) {
            if (p.y == 0) return null_action();  // nobody may share my line now
            const int s = p.y > 0 ? 1 : -1;
            if (flip == 0) flip = s;
            if (s != flip) return null_action();
        }
        for (const auto& [p, c] : view.visible) {
            if (!anchor || p.x < anchor->x ||
                (p.x == anchor->x && Rational(flip) * p.y < Rational(flip) * anchor->y))
                anchor = p;
        }
        if (!anchor) return null_action();
        const RPoint p1 = pattern.points[1];
        if (anchor->x <= 0) return null_action();
        const Rational unit = anchor->x / (p1.x + 1);
        if (Rational(flip) * anchor->y != (p1.y + 1) * unit) return null_action();
        detail::AgreedFrame f{{Rational(0), Rational(0)}, flip, unit};
        return {Light::done, f.to_local_pt(pattern.points[0]), "s2_leader_done"};
    }

    if (view.own_color != Light::off) return null_action();

    std::optional<RPoint> leader;
    for (const auto& [p, c] : view.visible) {
        if (c == Light::leader) {
            if (leader) return null_action();
            leader = p;
        }
    }
    if (!leader) return null_action();
    const Rational lx = leader->x, ly = leader->y;

    if (lx < 0 && ly != 0) {
        // leader strictly below-left in agreed terms (my side of its line is up)
        const int flip = ly < 0 ? 1 : -1;
        auto logical_y = [&](const RPoint& p) { return Rational(flip) * p.y; };
        const Rational leader_ly = logical_y(*leader);

        for (const auto& [p, c] : view.visible)
            if (c == Light::done) return {Light::done, std::nullopt, "s2_done_adopt"};

        if (n == 2 && view.visible.size() == 1) {
            // only the leader is there; if I already sit on the s1 ray from
            // the leader, the formation is complete up to the frame scale
            const RPoint p1 = pattern.points[1];
            if ((-lx) * (p1.y + 1) == (-leader_ly) * (p1.x + 1))
                return {Light::done, std::nullopt, "s2_done_n2"};
        }

        for (const auto& [p, c] : view.visible) {
            const Rational py = logical_y(p);
            if (py < 0 && py > leader_ly && p.x > lx) return null_action();  // not my turn
            if (py == 0 && p.x < 0 && p.x > lx) return null_action();  // not leftmost on my line
        }

        std::optional<RPoint> ru;
        int on_line = 0;
        for (const auto& [p, c] : view.visible) {
            if (p.x == lx && c != Light::leader) {
                ++on_line;
                ru = p;
            }
        }
        if (on_line == 0)
            return {std::nullopt, RPoint{lx, Rational(0)}, "s2_to_leader_line"};
        if (on_line > 1) return null_action();
        if (logical_y(*ru) <= leader_ly) return null_action();
        const Rational unit = logical_y(*ru) - leader_ly;

        int k = 0;
        for (const auto& [p, c] : view.visible)
            if (c == Light::off && logical_y(p) == leader_ly) ++k;
        if (k + 2 > n - 1) return null_action();
        const auto psi = psi_targets(pattern);
        detail::AgreedFrame f{*leader, flip, unit};
        const RPoint dest = f.to_local_pt({psi[static_cast<std::size_t>(k + 2)], Rational(-1)});
        return {std::nullopt, dest, "s2_to_staging"};
    }

    if (ly == 0 && lx < 0) {
        // staged on the leader's horizontal line
        std::optional<RPoint> ru;
        int on_line = 0;
        for (const auto& [p, c] : view.visible) {
            if (p.x == lx && c != Light::leader) {
                ++on_line;
                ru = p;
            }
        }
        if (on_line != 1 || ru->y == 0) return null_action();
        const int flip = ru->y > 0 ? 1 : -1;
        for (const auto& [p, c] : view.visible)
            if (c == Light::off && Rational(flip) * p.y > 0 && p.x > lx) return null_action();

        detail::AgreedFrame f{*leader, flip, rat_abs(ru->y)};
        const Rational my_ax = f.to_agreed_pt({Rational(0), Rational(0)}).x;
        const auto psi = psi_targets(pattern);
        int idx = -1;
        for (int i = 0; i < n; ++i)
            if (psi[static_cast<std::size_t>(i)] == my_ax) idx = i;
        if (idx < 0) return null_action();
        if (!partial_formation(view, pattern, idx)) return null_action();
        return {Light::done, f.to_local_pt(pattern.points[static_cast<std::size_t>(idx)]),
                "s2_to_target"};
    }

    if (lx == 0 && ly != 0) {
        // I am the robot on the leader's vertical line
        const int flip = ly < 0 ? 1 : -1;
        for (const auto& [p, c] : view.visible) {
            if (p == *leader) continue;
            const Rational py = Rational(flip) * p.y;
            if (c == Light::off && py >= 0) return null_action();
            if (py < 0) return null_action();
        }
        detail::AgreedFrame f{*leader, flip, rat_abs(ly)};
        return {std::nullopt, f.to_local_pt(pattern.points[1]), "s2_ru_to_s1"};
    }

    return null_action();
}

// ---------------------------------------------------------------------------
// Entry points.

inline Action dispatch(const LocalView& view, const Pattern& pattern) {
    bool leader_seen = view.own_color == Light::leader;
    for (const auto& [p, c] : view.visible) leader_seen = leader_seen || c == Light::leader;
    if (leader_seen) return stage2_step(view, pattern);

    std::vector<RPoint> candidates;
    if (view.own_color == Light::candidate) candidates.push_back({Rational(0), Rational(0)});
    bool symmetry_seen = view.own_color == Light::symmetry;
    for (const auto& [p, c] : view.visible) {
        if (c == Light::candidate) candidates.push_back(p);
        if (c == Light::symmetry) symmetry_seen = true;
    }
    bool candidate_pair = false;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (candidates[i].x == candidates[j].x) candidate_pair = true;
    if (candidate_pair || symmetry_seen) return phase2_step(view);
    return phase1_step(view);
}

inline Action two_axis_step(const LocalView& view, const Pattern& pattern) {
    bool leader_seen = view.own_color == Light::leader;
    for (const auto& [p, c] : view.visible) leader_seen = leader_seen || c == Light::leader;
    if (leader_seen) return stage2_step(view, pattern);

    if (view.own_color != Light::off) return null_action();
    bool any_left_closed = false, any_left_open = false, below_on_line = false, all_off = true;
    for (const auto& [p, c] : view.visible) {
        if (p.x <= 0) any_left_closed = true;
        if (p.x < 0) any_left_open = true;
        if (p.x == 0 && p.y < 0) below_on_line = true;
        if (c != Light::off) all_off = false;
    }
    if (!any_left_closed && all_off) return become_leader(view);
    if (!any_left_open && !below_on_line)
        return {std::nullopt, RPoint{Rational(-1), Rational(0)}, "2x_move_left"};
    return null_action();
}

inline Action decide(const LocalView& view, const Pattern& pattern, Mode mode) {
    return mode == Mode::one_axis ? dispatch(view, pattern) : two_axis_step(view, pattern);
}

}  // namespace apf
