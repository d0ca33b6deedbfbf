#include "rectcart/relax.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace rectcart {

namespace {

enum : int { frame_left = 0, frame_bottom = 1, frame_right = 2, frame_top = 3 };

// Collinear pieces meeting at a crossing must move together; gives them one id.
void merge_crossings(RelaxLayout &L)
{
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> root(L.segment_count());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int a) {
            while (root[static_cast<std::size_t>(a)] != a)
                a = root[static_cast<std::size_t>(a)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(a)])];
            return a;
        };
        // per segment: (coordinate, segment) of rectangle ends met from each side
        std::vector<std::array<std::vector<std::pair<double, int>>, 2>> ends(L.segment_count());
        for (const auto &sd : L.sides)
            for (int k = 0; k < 4; ++k) {
                const auto seg = static_cast<std::size_t>(sd[static_cast<std::size_t>(k)]);
                const int side = k < 2 ? 1 : 0;
                const bool hor = L.horizontal[seg];
                for (int e : hor ? std::array<int, 2>{sd[0], sd[2]} : std::array<int, 2>{sd[1], sd[3]})
                    ends[seg][static_cast<std::size_t>(side)].emplace_back(L.pos[static_cast<std::size_t>(e)], e);
            }
        for (auto &e : ends) {
            std::map<double, int> low;
            for (const auto &[at, seg] : e[0])
                low[at] = seg;
            for (const auto &[at, seg] : e[1]) {
                auto it = low.find(at);
                if (it == low.end() || it->second == seg || L.fixed[static_cast<std::size_t>(seg)] ||
                    L.fixed[static_cast<std::size_t>(it->second)])
                    continue;
                const int a = find(seg), b = find(it->second);
                if (a != b) {
                    root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                    changed = true;
                }
            }
        }
        if (!changed)
            break;
        std::vector<int> id(L.segment_count(), -1);
        std::vector<double> pos;
        std::vector<char> hor, fixed;
        for (std::size_t s = 0; s < L.segment_count(); ++s) {
            const auto r = static_cast<std::size_t>(find(static_cast<int>(s)));
            if (id[r] < 0) {
                id[r] = static_cast<int>(pos.size());
                pos.push_back(L.pos[r]);
                hor.push_back(L.horizontal[r]);
                fixed.push_back(L.fixed[r]);
            }
            id[s] = id[r];
        }
        for (auto &sd : L.sides)
            for (auto &x : sd)
                x = id[static_cast<std::size_t>(x)];
        L.pos = std::move(pos);
        L.horizontal = std::move(hor);
        L.fixed = std::move(fixed);
    }
}

} // namespace

Rect<double> RelaxLayout::rect(std::size_t r) const
{
    const auto &s = sides[r];
    return {pos[static_cast<std::size_t>(s[0])], pos[static_cast<std::size_t>(s[1])], pos[static_cast<std::size_t>(s[2])],
            pos[static_cast<std::size_t>(s[3])]};
}

std::vector<double> RelaxLayout::vertex_areas() const
{
    std::vector<double> a(static_cast<std::size_t>(vertices), 0.0);
    for (std::size_t r = 0; r < rect_count(); ++r)
        a[static_cast<std::size_t>(owner[r])] += rect(r).area();
    return a;
}

std::vector<Polygon<double>> RelaxLayout::polygons() const
{
    std::vector<std::vector<Rect<double>>> parts(static_cast<std::size_t>(vertices));
    for (std::size_t r = 0; r < rect_count(); ++r)
        parts[static_cast<std::size_t>(owner[r])].push_back(rect(r));
    std::vector<Polygon<double>> out;
    out.reserve(parts.size());
    for (const auto &p : parts)
        out.push_back(union_outline(std::span<const Rect<double>>(p)));
    return out;
}

RelaxLayout seed_layout(const RectSubdivision &sub, int vertices, double width, double height)
{
    if (!(width > 0 && height > 0))
        throw PreconditionError("frame sides must be positive");
    const auto &box = sub.bbox;
    const Rational bw = box.width(), bh = box.height();
    auto sx = [&](const Rational &x) { return Rational((x - box.x0) / bw).get_d() * width; };
    auto sy = [&](const Rational &y) { return Rational((y - box.y0) / bh).get_d() * height; };

    RelaxLayout L;
    L.width = width;
    L.height = height;
    L.vertices = vertices;
    L.pos = {0.0, 0.0, width, height};
    L.horizontal = {0, 1, 0, 1};
    L.fixed = {1, 1, 1, 1};
    // maximal segments by line for side lookup
    std::map<Rational, std::vector<std::pair<std::size_t, MaximalSegment<Rational>>>> hlines, vlines;
    const auto segs = maximal_segments(sub);
    for (const auto &s : segs) {
        const std::size_t id = L.pos.size();
        L.pos.push_back(s.horizontal ? sy(s.at) : sx(s.at));
        L.horizontal.push_back(s.horizontal ? 1 : 0);
        L.fixed.push_back(0);
        (s.horizontal ? hlines : vlines)[s.at].emplace_back(id, s);
    }
    auto find = [](const auto &lines, const Rational &at, const Rational &lo, const Rational &hi) -> int {
        auto it = lines.find(at);
        if (it != lines.end())
            for (const auto &[id, s] : it->second)
                if (!(lo < s.lo) && !(s.hi < hi))
                    return static_cast<int>(id);
        throw GeometryError("rectangle side not on a maximal segment");
    };
    for (const auto &p : sub.rects) {
        const auto &r = p.r;
        std::array<int, 4> s{};
        s[0] = r.x0 == box.x0 ? frame_left : find(vlines, r.x0, r.y0, r.y1);
        s[1] = r.y0 == box.y0 ? frame_bottom : find(hlines, r.y0, r.x0, r.x1);
        s[2] = r.x1 == box.x1 ? frame_right : find(vlines, r.x1, r.y0, r.y1);
        s[3] = r.y1 == box.y1 ? frame_top : find(hlines, r.y1, r.x0, r.x1);
        L.owner.push_back(p.owner);
        L.part.push_back(p.part);
        L.sides.push_back(s);
    }
    merge_crossings(L);
    return L;
}

RelaxLayout balance_seed(const RelaxLayout &seed, const std::vector<double> &weights, int rounds)
{
    if (static_cast<int>(weights.size()) != seed.vertices)
        throw PreconditionError("balance_seed: one weight per vertex");
    const auto targets = split_weights(weights, seed);
    RelaxLayout L = seed;
    // distinct coordinates per axis (0: x, 1: y) and the gaps between them
    std::array<std::vector<double>, 2> coord;
    for (std::size_t s = 0; s < L.segment_count(); ++s)
        coord[L.horizontal[s] ? 1 : 0].push_back(L.pos[s]);
    for (auto &c : coord) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    auto index = [&](std::size_t axis, double p) {
        const auto &c = coord[axis];
        return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), p) - c.begin());
    };
    // per rectangle: first and one-past-last gap on each axis
    std::vector<std::array<std::size_t, 4>> span(L.rect_count());
    for (std::size_t r = 0; r < L.rect_count(); ++r) {
        const auto q = L.rect(r);
        span[r] = {index(0, q.x0), index(1, q.y0), index(0, q.x1), index(1, q.y1)};
    }
    const std::array<double, 2> side{L.width, L.height};
    std::array<std::vector<double>, 2> at;
    for (std::size_t a = 0; a < 2; ++a) {
        std::vector<double> gap;
        double smallest = side[a];
        for (std::size_t k = 0; k + 1 < coord[a].size(); ++k) {
            gap.push_back(coord[a][k + 1] - coord[a][k]);
            smallest = std::min(smallest, gap.back());
        }
        const double floor_gap = 0.1 * smallest;
        // sum_r t_r log A_r splits into one term per axis, sum_r t_r log(extent_r),
        // with each extent a sum of gaps: the EM update
        // g_k <- g_k * sum_{r over k} t_r / extent_r, rescaled to the side, never lowers it
        std::vector<double> acc;
        at[a].assign(gap.size() + 1, 0.0);
        for (int round = 0; round < rounds; ++round) {
            std::partial_sum(gap.begin(), gap.end(), at[a].begin() + 1);
            acc.assign(gap.size() + 1, 0.0);
            for (std::size_t r = 0; r < L.rect_count(); ++r) {
                const double c = targets[r] / (at[a][span[r][a + 2]] - at[a][span[r][a]]);
                acc[span[r][a]] += c;
                acc[span[r][a + 2]] -= c;
            }
            double running = 0, total = 0;
            for (std::size_t k = 0; k < gap.size(); ++k) {
                running += acc[k];
                gap[k] *= running;
                total += gap[k];
            }
            // gaps only under zero-target rectangles would vanish
            double clamped = 0;
            for (auto &g : gap) {
                g = std::max(g * side[a] / total, floor_gap);
                clamped += g;
            }
            for (auto &g : gap)
                g *= side[a] / clamped;
        }
        std::partial_sum(gap.begin(), gap.end(), at[a].begin() + 1);
    }
    for (std::size_t s = 0; s < L.segment_count(); ++s) {
        const std::size_t a = L.horizontal[s] ? 1 : 0;
        L.pos[s] = L.fixed[s] ? seed.pos[s] : at[a][index(a, seed.pos[s])];
    }
    return L;
}

std::vector<double> split_weights(const std::vector<double> &weights, const RelaxLayout &layout)
{
    // a vertex whose B part is missing puts its whole weight on H
    std::vector<int> carriers(static_cast<std::size_t>(layout.vertices), 0);
    auto carries = [&](std::size_t r) { return layout.part[r] == Part::H || layout.part[r] == Part::B; };
    for (std::size_t r = 0; r < layout.rect_count(); ++r)
        if (carries(r))
            ++carriers[static_cast<std::size_t>(layout.owner[r])];
    std::vector<double> t(layout.rect_count(), 0.0);
    for (std::size_t r = 0; r < t.size(); ++r) {
        const auto v = static_cast<std::size_t>(layout.owner[r]);
        if (carriers[v] == 0)
            throw PreconditionError("vertex without H or B rectangle");
        if (carries(r))
            t[r] = weights.at(v) / carriers[v];
    }
    return t;
}

double wall_force(std::span<const PressureContact> low, std::span<const PressureContact> high)
{
    double f = 0;
    for (const auto &c : low)
        f += c.pressure * c.length;
    for (const auto &c : high)
        f -= c.pressure * c.length;
    return f;
}

namespace {

// low side: rectangles having the segment as right/top side
void incidences(const RelaxLayout &L, std::vector<std::vector<int>> &low, std::vector<std::vector<int>> &high)
{
    low.assign(L.segment_count(), {});
    high.assign(L.segment_count(), {});
    for (std::size_t r = 0; r < L.rect_count(); ++r) {
        const auto &s = L.sides[r];
        high[static_cast<std::size_t>(s[0])].push_back(static_cast<int>(r));
        high[static_cast<std::size_t>(s[1])].push_back(static_cast<int>(r));
        low[static_cast<std::size_t>(s[2])].push_back(static_cast<int>(r));
        low[static_cast<std::size_t>(s[3])].push_back(static_cast<int>(r));
    }
}

double contact_length(const RelaxLayout &L, int r, int segment)
{
    const auto box = L.rect(static_cast<std::size_t>(r));
    return L.horizontal[static_cast<std::size_t>(segment)] ? box.width() : box.height();
}

// region[r] is the pressure region of rectangle r
std::vector<double> region_pressures(const RelaxLayout &L, const std::vector<int> &region,
                                     const std::vector<double> &weights)
{
    std::vector<double> p(weights.size(), 0.0);
    for (std::size_t r = 0; r < L.rect_count(); ++r)
        p[static_cast<std::size_t>(region[r])] += L.rect(r).area();
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(p[k] > 0))
            throw GeometryError("zero-area region");
        p[k] = weights[k] / p[k];
    }
    return p;
}

double segment_force(const RelaxLayout &L, const std::vector<int> &region, const std::vector<double> &pressure,
                     const std::vector<int> &low, const std::vector<int> &high, int s)
{
    double f = 0;
    for (int r : low)
        f += pressure[static_cast<std::size_t>(region[static_cast<std::size_t>(r)])] * contact_length(L, r, s);
    for (int r : high)
        f -= pressure[static_cast<std::size_t>(region[static_cast<std::size_t>(r)])] * contact_length(L, r, s);
    return f;
}

std::vector<double> all_forces(const RelaxLayout &layout, const std::vector<int> &region,
                               const std::vector<double> &weights)
{
    std::vector<std::vector<int>> low, high;
    incidences(layout, low, high);
    const auto pressure = region_pressures(layout, region, weights);
    std::vector<double> f(layout.segment_count(), 0.0);
    for (std::size_t s = 0; s < f.size(); ++s)
        if (!layout.fixed[s])
            f[s] = segment_force(layout, region, pressure, low[s], high[s], static_cast<int>(s));
    return f;
}

} // namespace

std::vector<double> forces(const RelaxLayout &layout, const std::vector<double> &weights)
{
    if (weights.size() != static_cast<std::size_t>(layout.vertices))
        throw PreconditionError("weight count does not match the layout");
    return all_forces(layout, layout.owner, weights);
}

std::vector<double> rect_forces(const RelaxLayout &layout, const std::vector<double> &targets)
{
    if (targets.size() != layout.rect_count())
        throw PreconditionError("target count does not match the layout");
    std::vector<int> region(layout.rect_count());
    std::iota(region.begin(), region.end(), 0);
    return all_forces(layout, region, targets);
}

Relaxer::Relaxer(RelaxLayout seed, std::vector<double> weights, RelaxParams params)
    : layout_(std::move(seed)), weights_(std::move(weights)), params_(params)
{
    if (static_cast<int>(weights_.size()) != layout_.vertices)
        throw PreconditionError("weight count does not match the layout");
    for (double w : weights_)
        if (!(w > 0))
            throw PreconditionError("non-positive weight");
    if (!(params_.eta > 0) || !(params_.target_error >= 0))
        throw PreconditionError("invalid relaxation parameters");
    targets_ = split_weights(weights_, layout_);
    // pressure regions: the polygons, then the rectangles with their split targets
    if (!(params_.split_pull >= 0))
        throw PreconditionError("invalid relaxation parameters");
    region_.assign(layout_.rect_count(), {-1, -1});
    if (params_.pressure != Pressure::rectangle) {
        region_weight_ = weights_;
        for (std::size_t r = 0; r < layout_.rect_count(); ++r)
            region_[r][0] = layout_.owner[r];
    }
    const double pull = params_.pressure == Pressure::rectangle ? 1.0 : params_.split_pull;
    if (pull > 0)
        for (std::size_t r = 0; r < layout_.rect_count(); ++r) {
            region_[r][1] = static_cast<int>(region_weight_.size());
            region_weight_.push_back(pull * targets_[r]);
        }
    incidences(layout_, low_rects_, high_rects_);

    delta_ = params_.delta_rel * std::min(layout_.width, layout_.height);
    const double delta = delta_;
    above_.assign(layout_.segment_count(), {});
    below_.assign(layout_.segment_count(), {});
    auto keep_order = [&](int lo, int hi, double gap) {
        above_[static_cast<std::size_t>(hi)].push_back({lo, gap});
        below_[static_cast<std::size_t>(lo)].push_back({hi, gap});
    };
    for (const auto &s : layout_.sides) {
        keep_order(s[0], s[2], delta);
        keep_order(s[1], s[3], delta);
    }
    // Breakpoints met along each segment from its two sides keep their order,
    // so every contact keeps at least delta of length and none appears.
    for (std::size_t seg = 0; seg < layout_.segment_count(); ++seg) {
        const bool hor = layout_.horizontal[seg];
        struct Mark {
            double at;
            int segment;
            int side;
        };
        std::vector<Mark> marks;
        for (int side = 0; side < 2; ++side) {
            const auto &rs = side == 0 ? low_rects_[seg] : high_rects_[seg];
            for (int r : rs) {
                const auto &sd = layout_.sides[static_cast<std::size_t>(r)];
                // ends of the rectangle along the segment
                for (int e : hor ? std::array<int, 2>{sd[0], sd[2]} : std::array<int, 2>{sd[1], sd[3]})
                    marks.push_back({layout_.pos[static_cast<std::size_t>(e)], e, side});
            }
        }
        std::sort(marks.begin(), marks.end(), [](const Mark &a, const Mark &b) {
            return a.at < b.at || (a.at == b.at && a.segment < b.segment);
        });
        marks.erase(std::unique(marks.begin(), marks.end(),
                                [](const Mark &a, const Mark &b) { return a.segment == b.segment && a.side == b.side; }),
                    marks.end());
        for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
            const auto &a = marks[k];
            const auto &b = marks[k + 1];
            if (a.segment == b.segment || a.side == b.side)
                continue;
            if (a.at < b.at) {
                keep_order(a.segment, b.segment, delta);
            } else {
                keep_order(a.segment, b.segment, 0.0);
                keep_order(b.segment, a.segment, 0.0);
            }
        }
    }
}

double Relaxer::error() const
{
    const auto areas = layout_.vertex_areas();
    double e = 0;
    for (std::size_t v = 0; v < areas.size(); ++v)
        e = std::max(e, std::abs(areas[v] - weights_[v]) / weights_[v]);
    return e;
}

namespace {

// Maximum-weight closure (if i is taken, every j with an arc i -> j is too)
// by a minimum cut. Marks the chosen nodes in `chosen`.
void max_closure(const std::vector<double> &weight, const std::vector<std::pair<int, int>> &arcs,
                 std::vector<double> &cap, std::vector<int> &parent, std::vector<int> &queue, std::vector<char> &chosen)
{
    const int k = static_cast<int>(weight.size());
    const int src = k, snk = k + 1, m = k + 2;
    cap.assign(static_cast<std::size_t>(m * m), 0.0);
    auto at = [&](int i, int j) -> double & { return cap[static_cast<std::size_t>(i * m + j)]; };
    for (int i = 0; i < k; ++i) {
        if (weight[static_cast<std::size_t>(i)] > 0)
            at(src, i) = weight[static_cast<std::size_t>(i)];
        else
            at(i, snk) = -weight[static_cast<std::size_t>(i)];
    }
    for (const auto &[i, j] : arcs)
        at(i, j) = INFINITY;
    auto reach = [&]() {
        parent.assign(static_cast<std::size_t>(m), -1);
        parent[static_cast<std::size_t>(src)] = src;
        queue.assign(1, src);
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int j = 0; j < m; ++j)
                if (parent[static_cast<std::size_t>(j)] < 0 && at(queue[q], j) > 0) {
                    parent[static_cast<std::size_t>(j)] = queue[q];
                    queue.push_back(j);
                }
        return parent[static_cast<std::size_t>(snk)] >= 0;
    };
    while (reach()) {
        double push = INFINITY;
        for (int j = snk; j != src; j = parent[static_cast<std::size_t>(j)])
            push = std::min(push, at(parent[static_cast<std::size_t>(j)], j));
        for (int j = snk; j != src; j = parent[static_cast<std::size_t>(j)]) {
            at(parent[static_cast<std::size_t>(j)], j) -= push;
            at(j, parent[static_cast<std::size_t>(j)]) += push;
        }
    }
    chosen.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        chosen[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(i)] >= 0;
}

} // namespace

// Segments held at their minimal gap move as rigid groups. Within each set of
// segments connected by tight gaps, and for each direction, the group with the
// largest total force that drags along everything it presses against.
void Relaxer::collect_candidates()
{
    auto &w = scratch_;
    const double tol = 1e-9 * delta_;
    const std::size_t count = layout_.segment_count();
    w.cands.clear();
    w.groups.clear();
    w.root.resize(count);
    std::iota(w.root.begin(), w.root.end(), 0);
    auto find = [&](int x) {
        while (w.root[static_cast<std::size_t>(x)] != x)
            x = w.root[static_cast<std::size_t>(x)] = w.root[static_cast<std::size_t>(w.root[static_cast<std::size_t>(x)])];
        return x;
    };
    w.tight.clear();
    for (std::size_t s = 0; s < count; ++s)
        for (const auto &g : below_[s])
            if (layout_.pos[static_cast<std::size_t>(g.other)] - g.min - layout_.pos[s] <= tol) {
                w.tight.emplace_back(static_cast<int>(s), g.other);
                w.root[static_cast<std::size_t>(find(static_cast<int>(s)))] = find(g.other);
            }
    for (std::size_t s = 0; s < count; ++s)
        w.root[s] = find(static_cast<int>(s));
    // segments and tight pairs bucketed by component
    w.start.assign(count + 1, 0);
    for (std::size_t s = 0; s < count; ++s)
        ++w.start[static_cast<std::size_t>(w.root[s]) + 1];
    for (std::size_t c = 0; c < count; ++c)
        w.start[c + 1] += w.start[c];
    w.order.resize(count);
    w.fill.assign(w.start.begin(), w.start.end() - 1);
    for (std::size_t s = 0; s < count; ++s)
        w.order[static_cast<std::size_t>(w.fill[static_cast<std::size_t>(w.root[s])]++)] = static_cast<int>(s);
    std::sort(w.tight.begin(), w.tight.end(), [&](const auto &x, const auto &y) {
        return w.root[static_cast<std::size_t>(x.first)] < w.root[static_cast<std::size_t>(y.first)];
    });

    w.local.assign(count, -1);
    std::size_t next_pair = 0;
    for (std::size_t c = 0; c < count; ++c) {
        const int *mem = w.order.data() + w.start[c];
        const auto size = static_cast<std::size_t>(w.start[c + 1] - w.start[c]);
        if (size == 0)
            continue;
        if (size == 1) {
            const auto s = static_cast<std::size_t>(mem[0]);
            const double f = w.force[s];
            if (!layout_.fixed[s] && f != 0) {
                w.cands.push_back({std::abs(f), mem[0], f > 0 ? 1 : -1, w.groups.size(), w.groups.size() + 1});
                w.groups.push_back(mem[0]);
            }
            continue;
        }
        const std::size_t pair_begin = next_pair;
        while (next_pair < w.tight.size() && static_cast<std::size_t>(w.root[static_cast<std::size_t>(w.tight[next_pair].first)]) == c)
            ++next_pair;
        for (std::size_t i = 0; i < size; ++i)
            w.local[static_cast<std::size_t>(mem[i])] = static_cast<int>(i);
        for (int dir : {1, -1}) {
            // arcs i -> j: moving i in direction dir pushes j
            w.arcs.clear();
            for (std::size_t t = pair_begin; t < next_pair; ++t) {
                const int i = w.local[static_cast<std::size_t>(w.tight[t].first)];
                const int j = w.local[static_cast<std::size_t>(w.tight[t].second)];
                w.arcs.push_back(dir > 0 ? std::pair{i, j} : std::pair{j, i});
            }
            // nothing that ends up pushing the frame can move
            w.blocked.assign(size, 0);
            w.queue.clear();
            for (std::size_t i = 0; i < size; ++i)
                if (layout_.fixed[static_cast<std::size_t>(mem[i])]) {
                    w.blocked[i] = 1;
                    w.queue.push_back(static_cast<int>(i));
                }
            for (std::size_t q = 0; q < w.queue.size(); ++q)
                for (const auto &[i, j] : w.arcs)
                    if (j == w.queue[q] && !w.blocked[static_cast<std::size_t>(i)]) {
                        w.blocked[static_cast<std::size_t>(i)] = 1;
                        w.queue.push_back(i);
                    }
            w.weight.resize(size);
            bool any = false;
            for (std::size_t i = 0; i < size; ++i) {
                w.weight[i] = w.blocked[i] ? 0.0 : w.force[static_cast<std::size_t>(mem[i])] * dir;
                any = any || w.weight[i] > 0;
            }
            if (!any)
                continue;
            w.live.clear();
            for (const auto &arc : w.arcs)
                if (!w.blocked[static_cast<std::size_t>(arc.first)])
                    w.live.push_back(arc);
            max_closure(w.weight, w.live, w.cap, w.parent, w.queue, w.chosen);
            Candidate cand{0, -1, dir, w.groups.size(), w.groups.size()};
            double strongest = 0;
            for (std::size_t i = 0; i < size; ++i) {
                if (!w.chosen[i] || w.blocked[i])
                    continue;
                const int s = mem[i];
                w.groups.push_back(s);
                cand.magnitude += w.weight[i];
                if (std::abs(w.force[static_cast<std::size_t>(s)]) > strongest) {
                    strongest = std::abs(w.force[static_cast<std::size_t>(s)]);
                    cand.segment = s;
                }
            }
            cand.end = w.groups.size();
            if (cand.magnitude > 0 && cand.segment >= 0)
                w.cands.push_back(cand);
            else
                w.groups.resize(cand.begin);
        }
        for (std::size_t i = 0; i < size; ++i)
            w.local[static_cast<std::size_t>(mem[i])] = -1;
    }
}

std::optional<int> Relaxer::step()
{
    auto &w = scratch_;
    w.areas.assign(region_weight_.size(), 0.0);
    for (std::size_t r = 0; r < layout_.rect_count(); ++r)
        for (int k : region_[r])
            if (k >= 0)
                w.areas[static_cast<std::size_t>(k)] += layout_.rect(r).area();
    // pressure felt at the walls of each rectangle
    w.felt.assign(layout_.rect_count(), 0.0);
    for (std::size_t r = 0; r < layout_.rect_count(); ++r)
        for (int k : region_[r])
            if (k >= 0)
                w.felt[r] += region_weight_[static_cast<std::size_t>(k)] / w.areas[static_cast<std::size_t>(k)];
    w.force.assign(layout_.segment_count(), 0.0);
    for (std::size_t s = 0; s < layout_.segment_count(); ++s) {
        if (layout_.fixed[s])
            continue;
        const int id = static_cast<int>(s);
        double f = 0;
        for (int r : low_rects_[s])
            f += w.felt[static_cast<std::size_t>(r)] * contact_length(layout_, r, id);
        for (int r : high_rects_[s])
            f -= w.felt[static_cast<std::size_t>(r)] * contact_length(layout_, r, id);
        w.force[s] = f;
    }
    collect_candidates();
    std::sort(w.cands.begin(), w.cands.end(), [](const Candidate &a, const Candidate &b) {
        return a.magnitude > b.magnitude || (a.magnitude == b.magnitude && a.segment < b.segment);
    });
    const double tiny = 1e-15 * std::max(layout_.width, layout_.height);
    w.coef.assign(w.areas.size(), 0.0);
    w.member.assign(layout_.segment_count(), 0);
    for (const auto &cand : w.cands) {
        const int dir = cand.dir;
        const auto group = std::span<const int>(w.groups).subspan(cand.begin, cand.end - cand.begin);
        // area change of each region per unit translation of the group
        w.touched.clear();
        auto add = [&](int r, double l) {
            for (int k : region_[static_cast<std::size_t>(r)]) {
                if (k < 0)
                    continue;
                const auto v = static_cast<std::size_t>(k);
                if (w.coef[v] == 0)
                    w.touched.push_back(v);
                w.coef[v] += l;
            }
        };
        for (int m : group) {
            w.member[static_cast<std::size_t>(m)] = 1;
            for (int r : low_rects_[static_cast<std::size_t>(m)])
                add(r, contact_length(layout_, r, m));
            for (int r : high_rects_[static_cast<std::size_t>(m)])
                add(r, -contact_length(layout_, r, m));
        }
        double c = 0;
        for (auto v : w.touched) {
            c += region_weight_[v] * w.coef[v] * w.coef[v] / (w.areas[v] * w.areas[v]);
            w.coef[v] = 0;
        }
        double room = INFINITY;
        for (int m : group) {
            const auto mm = static_cast<std::size_t>(m);
            for (const auto &g : dir > 0 ? below_[mm] : above_[mm]) {
                const auto o = static_cast<std::size_t>(g.other);
                if (w.member[o])
                    continue;
                room = std::min(room, dir > 0 ? layout_.pos[o] - g.min - layout_.pos[mm]
                                              : layout_.pos[mm] - g.min - layout_.pos[o]);
            }
        }
        for (int m : group)
            w.member[static_cast<std::size_t>(m)] = 0;
        const double f = cand.magnitude * dir;
        double d = params_.eta * (c > 0 ? f / c : f);
        d = dir > 0 ? std::min(d, std::max(room, 0.0)) : std::max(d, -std::max(room, 0.0));
        if (std::abs(d) <= tiny)
            continue;
        for (int m : group)
            layout_.pos[static_cast<std::size_t>(m)] += d;
        return cand.segment;
    }
    return std::nullopt;
}

RelaxStats Relaxer::run(const std::function<void(const Relaxer &)> &observer)
{
    const auto start = std::chrono::steady_clock::now();
    RelaxStats st;
    st.final_error = error();
    while (st.final_error >= params_.target_error && st.iterations < params_.max_iterations) {
        if (!step())
            break;
        ++st.iterations;
        if (observer)
            observer(*this);
        st.final_error = error();
    }
    st.converged = st.final_error < params_.target_error;
    st.milliseconds = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return st;
}

RelaxLayout relax_step(const RelaxLayout &layout, const std::vector<double> &weights, const RelaxParams &params)
{
    Relaxer r(layout, weights, params);
    if (!r.step())
        throw PreconditionError("no movable segment");
    return r.layout();
}

std::pair<CartogramLayout, RelaxStats> relax(const RelaxLayout &seed, const std::vector<double> &weights,
                                             const RelaxParams &params,
                                             const std::function<void(const Relaxer &)> &observer)
{
    Relaxer r(seed, weights, params);
    const auto stats = r.run(observer);
    CartogramLayout c;
    c.layout = r.layout();
    c.weights = weights;
    c.areas = c.layout.vertex_areas();
    for (std::size_t v = 0; v < c.areas.size(); ++v)
        c.pressure.push_back(weights[v] / c.areas[v]);
    c.polygons = c.layout.polygons();
    return {std::move(c), stats};
}

double cartographic_error(std::span<const Polygon<double>> polygons, const std::vector<double> &weights)
{
    double e = 0;
    for (std::size_t v = 0; v < polygons.size(); ++v)
        e = std::max(e, std::abs(polygon_area(polygons[v]) - weights.at(v)) / weights.at(v));
    return e;
}

double min_feature_size(const RelaxLayout &layout, const std::vector<double> &targets)
{
    double m = INFINITY;
    for (std::size_t r = 0; r < layout.rect_count(); ++r)
        if (targets[r] > 0) {
            const auto b = layout.rect(r);
            m = std::min({m, b.width(), b.height()});
        }
    return m;
}

std::string stats_csv_header() { return "instance,n,iterations,final_error,ms\n"; }

std::string stats_csv_row(const std::string &id, int n, const RelaxStats &s)
{
    std::ostringstream out;
    out.precision(9);
    out << id << ',' << n << ',' << s.iterations << ',' << s.final_error << ',' << s.milliseconds << '\n';
    return out.str();
}

} // namespace rectcart
