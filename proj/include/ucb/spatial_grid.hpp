#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ucb/geom.hpp"

namespace ucb {

// Uniform bucket grid over the bounding boxes of a set of discs.
//
// for_each_candidate(p, f) visits every disc whose box (inflated by pad)
// contains p, possibly with extra discs, each exactly once. A disc that
// classifies p as Inside or Boundary is always visited when pad >= eps.
class DiscGrid {
public:
    DiscGrid(std::span<const Circle> discs, double pad) {
        for (const Circle& c : discs) {
            box_.expand(c.cx - c.r - pad, c.cy - c.r - pad);
            box_.expand(c.cx + c.r + pad, c.cy + c.r + pad);
        }
        if (discs.empty()) {
            return;
        }
        cells_per_axis_ = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(discs.size())))), 1, 1024);
        cell_w_ = std::max((box_.max_x - box_.min_x) / static_cast<double>(cells_per_axis_), 1e-300);
        cell_h_ = std::max((box_.max_y - box_.min_y) / static_cast<double>(cells_per_axis_), 1e-300);
        buckets_.resize(cells_per_axis_ * cells_per_axis_);
        for (std::size_t i = 0; i < discs.size(); ++i) {
            const Circle& c = discs[i];
            const std::size_t x0 = col(c.cx - c.r - pad);
            const std::size_t x1 = col(c.cx + c.r + pad);
            const std::size_t y0 = row(c.cy - c.r - pad);
            const std::size_t y1 = row(c.cy + c.r + pad);
            for (std::size_t y = y0; y <= y1; ++y) {
                for (std::size_t x = x0; x <= x1; ++x) {
                    buckets_[y * cells_per_axis_ + x].push_back(i);
                }
            }
        }
    }

    template <class Visit>
    void for_each_candidate(const Point& p, Visit&& visit) const {
        if (buckets_.empty() || p.x < box_.min_x || p.x > box_.max_x || p.y < box_.min_y ||
            p.y > box_.max_y) {
            return;
        }
        for (std::size_t i : buckets_[row(p.y) * cells_per_axis_ + col(p.x)]) {
            visit(i);
        }
    }

private:
    std::size_t col(double x) const { return index(x, box_.min_x, cell_w_); }
    std::size_t row(double y) const { return index(y, box_.min_y, cell_h_); }

    std::size_t index(double v, double origin, double width) const {
        const double t = std::floor((v - origin) / width);
        if (!(t > 0.0)) {
            return 0;
        }
        return std::min(static_cast<std::size_t>(t), cells_per_axis_ - 1);
    }

    BoundingBox box_;
    std::size_t cells_per_axis_ = 0;
    double cell_w_ = 1.0;
    double cell_h_ = 1.0;
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace ucb
