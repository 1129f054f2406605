// validity.hpp: non-fatal warning flags carried by rate and phase results

#pragma once

#include <cstdint>
#include <string>

namespace rotodyne {

enum class Flag : std::uint32_t {
    regime = 1u << 0,            // regime guard of a closed-form family violated
    large_zeta = 1u << 1,        // zeta above the first-order warning threshold
    quasi_cycle = 1u << 2,       // pi n A / Omega0 >= 0.1
    quasi_cycle_phase = 1u << 3, // 8 pi^2 n A / Omega0 >= 0.1 (4 A phi / Omega0 with phi = 2 pi n)
};

class ValidityFlags {
public:
    void set(Flag f) { bits_ |= static_cast<std::uint32_t>(f); }
    bool has(Flag f) const { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
    bool ok() const { return bits_ == 0; }
    std::uint32_t bits() const { return bits_; }

    ValidityFlags& operator|=(const ValidityFlags& other) {
        bits_ |= other.bits_;
        return *this;
    }
    friend bool operator==(const ValidityFlags&, const ValidityFlags&) = default;

    // "ok", or the set flag names joined by '|'.
    std::string to_string() const;

private:
    std::uint32_t bits_{0};
};

} // namespace rotodyne
