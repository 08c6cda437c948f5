#pragma once

#include <cstdint>

namespace topo {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

// Squared Euclidean distance.  All range tests in this library compare
// squared distances against squared radii, so no floating point appears
// anywhere and ties on the boundary are exact.
inline std::int64_t dist_sq(const Point& a, const Point& b) {
    std::int64_t dx = a.x - b.x;
    std::int64_t dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace topo
