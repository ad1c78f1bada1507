#pragma once

#include <string_view>

namespace dfarm::geo {

enum class Unit { m, km, ft, mi, nmi, deg, rad };
enum class Dimension { length, angle };

Dimension dimension(Unit u) noexcept;
const char* to_string(Unit u) noexcept;
// Accepts m, km, ft, mi, NM (or nmi), deg, rad.
Unit unit_from_string(std::string_view text);

// Exact factors: 1 ft = 0.3048 m, 1 mi = 1609.344 m, 1 NM = 1852 m,
// 1 deg = pi/180 rad. Converting across dimensions is a DomainError.
double convert_unit(double value, Unit from, Unit to);

}  // namespace dfarm::geo
