#include "dfarm/geo/units.hpp"

#include "dfarm/error.hpp"

#include <numbers>
#include <string>

namespace dfarm::geo {

namespace {

// Size of one unit in its dimension's base unit (metre or radian).
double base_factor(Unit u) noexcept {
    switch (u) {
    case Unit::m: return 1.0;
    case Unit::km: return 1000.0;
    case Unit::ft: return 0.3048;
    case Unit::mi: return 1609.344;
    case Unit::nmi: return 1852.0;
    case Unit::deg: return std::numbers::pi / 180.0;
    case Unit::rad: return 1.0;
    }
    return 1.0;
}

}  // namespace

Dimension dimension(Unit u) noexcept { return u == Unit::deg || u == Unit::rad ? Dimension::angle : Dimension::length; }

const char* to_string(Unit u) noexcept {
    switch (u) {
    case Unit::m: return "m";
    case Unit::km: return "km";
    case Unit::ft: return "ft";
    case Unit::mi: return "mi";
    case Unit::nmi: return "NM";
    case Unit::deg: return "deg";
    case Unit::rad: return "rad";
    }
    return "?";
}

Unit unit_from_string(std::string_view text) {
    if (text == "m") return Unit::m;
    if (text == "km") return Unit::km;
    if (text == "ft") return Unit::ft;
    if (text == "mi") return Unit::mi;
    if (text == "NM" || text == "nmi" || text == "nm") return Unit::nmi;
    if (text == "deg") return Unit::deg;
    if (text == "rad") return Unit::rad;
    throw InvalidArgument("unknown unit '" + std::string(text) + "'");
}

double convert_unit(double value, Unit from, Unit to) {
    if (dimension(from) != dimension(to))
        throw DomainError(std::string("cannot convert ") + to_string(from) + " to " + to_string(to) +
                          ": different dimensions");
    if (from == to) return value;
    // Degrees are converted through their exact ratio so 180 deg is pi rad
    // without an extra rounding step.
    if (from == Unit::deg && to == Unit::rad) return value * std::numbers::pi / 180.0;
    if (from == Unit::rad && to == Unit::deg) return value * 180.0 / std::numbers::pi;
    return value * base_factor(from) / base_factor(to);
}

}  // namespace dfarm::geo
