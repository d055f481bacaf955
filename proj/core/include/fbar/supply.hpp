#pragma once

#include <cstdint>
#include <string>

namespace fbar {

// Monotone fresh-name supply. A single supply is threaded through the whole
// generation pipeline so that runs with the same seed produce byte-identical
// output.
class NameSupply {
public:
    explicit NameSupply(std::uint64_t seed = 0) : next_(seed) {}

    // "x", "x1", "x2", ... for prefix "x" (counter 0 omits the number).
    std::string fresh(const std::string& prefix) {
        std::uint64_t n = next_++;
        if (n == 0) return prefix;
        return prefix + std::to_string(n);
    }

    std::uint64_t counter() const { return next_; }

private:
    std::uint64_t next_;
};

} // namespace fbar
