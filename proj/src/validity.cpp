#include "rotodyne/validity.hpp"

#include <array>
#include <utility>

namespace rotodyne {

std::string ValidityFlags::to_string() const {
    if (ok()) {
        return "ok";
    }
    static constexpr std::array<std::pair<Flag, const char*>, 4> names{{
        {Flag::regime, "regime"},
        {Flag::large_zeta, "large_zeta"},
        {Flag::quasi_cycle, "quasi_cycle"},
        {Flag::quasi_cycle_phase, "quasi_cycle_phase"},
    }};
    std::string out;
    for (const auto& [flag, name] : names) {
        if (has(flag)) {
            if (!out.empty()) {
                out += '|';
            }
            out += name;
        }
    }
    return out;
}

} // namespace rotodyne
