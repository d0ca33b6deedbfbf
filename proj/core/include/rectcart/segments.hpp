#pragma once

// Maximal segments of a rectangular tiling and the one-sidedness test.

#include "rectcart/geometry.hpp"

#include <map>
#include <span>
#include <vector>

namespace rectcart {

template <class T>
struct MaximalSegment {
    bool horizontal = true;
    T at;     // y for horizontal, x for vertical
    T lo, hi; // extent along the segment
    // Coordinates where perpendicular edges end in the relative interior:
    // below/left (neg) and above/right (pos).
    std::vector<T> neg, pos;

    bool one_sided() const { return neg.empty() || pos.empty(); }
};

// Throws GeometryError when the rectangles do not tile the frame.
template <class T>
void check_tiling(const Rect<T> &frame, std::span<const Rect<T>> rects)
{
    T sum = 0;
    for (const auto &r : rects) {
        if (r.degenerate())
            throw GeometryError("degenerate rectangle in tiling");
        if (r.x0 < frame.x0 || r.y0 < frame.y0 || frame.x1 < r.x1 || frame.y1 < r.y1)
            throw GeometryError("rectangle outside the frame");
        sum += r.area();
    }
    if (!(sum == frame.area()))
        throw GeometryError("rectangles do not cover the frame");
    // pairwise interior-disjointness by a sweep over x
    std::vector<std::size_t> idx(rects.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rects[a].x0 < rects[b].x0; });
    std::multimap<T, std::size_t> active; // keyed by x1
    for (std::size_t i : idx) {
        const auto &r = rects[i];
        while (!active.empty() && !(r.x0 < active.begin()->first))
            active.erase(active.begin());
        for (const auto &[x1, j] : active)
            if (interiors_overlap(r, rects[j]))
                throw GeometryError("overlapping rectangles in tiling");
        active.emplace(r.x1, i);
    }
}

template <class T>
std::vector<MaximalSegment<T>> maximal_segments(const Rect<T> &frame, std::span<const Rect<T>> rects)
{
    std::vector<MaximalSegment<T>> out;
    for (int axis = 0; axis < 2; ++axis) {
        const bool horizontal = axis == 0;
        std::map<T, std::vector<std::pair<T, T>>> lines;
        for (const auto &r : rects) {
            if (horizontal) {
                if (!(r.y0 == frame.y0)) lines[r.y0].emplace_back(r.x0, r.x1);
                if (!(r.y1 == frame.y1)) lines[r.y1].emplace_back(r.x0, r.x1);
            } else {
                if (!(r.x0 == frame.x0)) lines[r.x0].emplace_back(r.y0, r.y1);
                if (!(r.x1 == frame.x1)) lines[r.x1].emplace_back(r.y0, r.y1);
            }
        }
        const std::size_t first = out.size();
        std::map<T, std::vector<std::size_t>> by_line;
        for (auto &[at, iv] : lines) {
            std::sort(iv.begin(), iv.end());
            for (const auto &[a, b] : iv) {
                if (out.size() > first && out.back().at == at && !(out.back().hi < a)) {
                    if (out.back().hi < b)
                        out.back().hi = b;
                    continue;
                }
                MaximalSegment<T> s;
                s.horizontal = horizontal;
                s.at = at;
                s.lo = a;
                s.hi = b;
                out.push_back(std::move(s));
                by_line[at].push_back(out.size() - 1);
            }
        }
        auto attach = [&](const T &line, const T &along, bool positive) {
            auto it = by_line.find(line);
            if (it == by_line.end())
                return;
            for (std::size_t k : it->second) {
                auto &s = out[k];
                if (s.lo < along && along < s.hi) {
                    auto &side = positive ? s.pos : s.neg;
                    side.push_back(along);
                    return;
                }
            }
        };
        for (const auto &r : rects) {
            if (horizontal) {
                attach(r.y0, r.x0, true);
                attach(r.y0, r.x1, true);
                attach(r.y1, r.x0, false);
                attach(r.y1, r.x1, false);
            } else {
                attach(r.x0, r.y0, true);
                attach(r.x0, r.y1, true);
                attach(r.x1, r.y0, false);
                attach(r.x1, r.y1, false);
            }
        }
        for (std::size_t k = first; k < out.size(); ++k) {
            for (auto *side : {&out[k].neg, &out[k].pos}) {
                std::sort(side->begin(), side->end());
                side->erase(std::unique(side->begin(), side->end()), side->end());
            }
        }
    }
    return out;
}

// Every maximal segment one-sided (sufficient for area-universality).
template <class T>
bool all_one_sided(const Rect<T> &frame, std::span<const Rect<T>> rects)
{
    check_tiling(frame, rects);
    for (const auto &s : maximal_segments(frame, rects))
        if (!s.one_sided())
            return false;
    return true;
}

} // namespace rectcart
