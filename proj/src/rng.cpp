#include "gaf/rng.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace gaf {

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_index: empty range");
    }
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t zone = (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    std::uint64_t draw = next_u64();
    while (draw >= zone) {
        draw = next_u64();
    }
    return static_cast<std::size_t>(draw % bound);
}

double Rng::uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::string Rng::serialize() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
}

Rng Rng::deserialize(const std::string& text) {
    Rng rng;
    std::istringstream in(text);
    in >> rng.engine_;
    if (in.fail()) {
        throw std::invalid_argument("invalid rng state text");
    }
    return rng;
}

}  // namespace gaf
