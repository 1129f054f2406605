#include "rotodyne/rates.hpp"

namespace rotodyne {

std::string_view to_string(Frame frame) {
    return frame == Frame::lab ? "lab" : "comoving";
}

std::string_view to_string(RateFamily family) {
    switch (family) {
    case RateFamily::general:
        return "general";
    case RateFamily::case1:
        return "case1";
    case RateFamily::case2:
        return "case2";
    }
    return "unknown";
}

RateFamily parse_rate_family(std::string_view name) {
    if (name == "general") {
        return RateFamily::general;
    }
    if (name == "case1") {
        return RateFamily::case1;
    }
    if (name == "case2") {
        return RateFamily::case2;
    }
    throw InputError("unknown rate family '" + std::string(name) + "' (expected general, case1 or case2)");
}

} // namespace rotodyne
