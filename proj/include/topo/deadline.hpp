#pragma once

#include <chrono>
#include <cstdint>

#include "topo/errors.hpp"

namespace topo {

/// Wall-clock cutoff for the exhaustive searches.  A zero budget means no
/// limit.  `check` is cheap enough to call inside tight search loops.
struct Deadline {
    std::chrono::steady_clock::time_point end{};
    bool limited = false;

    static Deadline after_ms(std::int64_t ms) {
        Deadline d;
        if (ms > 0) {
            d.limited = true;
            d.end = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        }
        return d;
    }

    void check(const char* what) const {
        if (limited && std::chrono::steady_clock::now() > end) throw timeout_error(what);
    }
};

}  // namespace topo
