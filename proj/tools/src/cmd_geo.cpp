#include "common.hpp"

#include "dfarm/geo/coords.hpp"
#include "dfarm/geo/units.hpp"

#include <memory>
#include <ostream>

namespace dfarm::cli {

void add_geo_command(CLI::App& app, Context& ctx) {
    auto* geo_cmd = app.add_subcommand("geo", "Unit conversion and WGS-84 coordinate utilities");
    geo_cmd->require_subcommand(1);

    {
        auto* cmd = geo_cmd->add_subcommand("convert", "Convert VALUE between units (m km ft mi NM deg rad)");
        struct Opts {
            double value = 0.0;
            std::string from, to;
        };
        auto o = std::make_shared<Opts>();
        cmd->add_option("value", o->value)->required();
        cmd->add_option("from", o->from)->required();
        cmd->add_option("to", o->to)->required();
        cmd->callback([&ctx, o] {
            ctx.action = [&ctx, o] {
                ctx.out << format_number(geo::convert_unit(o->value, geo::unit_from_string(o->from),
                                                           geo::unit_from_string(o->to)))
                        << "\n";
            };
        });
    }
    {
        auto* cmd = geo_cmd->add_subcommand("to-ecef", "Geodetic LAT LON [ALT] (deg, deg, m) to ECEF x y z (m)");
        struct Opts {
            double lat = 0.0, lon = 0.0, alt = 0.0;
        };
        auto o = std::make_shared<Opts>();
        cmd->add_option("lat", o->lat)->required();
        cmd->add_option("lon", o->lon)->required();
        cmd->add_option("alt", o->alt);
        cmd->callback([&ctx, o] {
            ctx.action = [&ctx, o] {
                const auto e = geo::geodetic_to_ecef({o->lat, o->lon, o->alt});
                ctx.out << format_number(e.x) << " " << format_number(e.y) << " " << format_number(e.z) << "\n";
            };
        });
    }
    {
        auto* cmd = geo_cmd->add_subcommand("to-geodetic", "ECEF X Y Z (m) to geodetic lat lon alt (deg, deg, m)");
        struct Opts {
            double x = 0.0, y = 0.0, z = 0.0;
        };
        auto o = std::make_shared<Opts>();
        cmd->add_option("x", o->x)->required();
        cmd->add_option("y", o->y)->required();
        cmd->add_option("z", o->z)->required();
        cmd->callback([&ctx, o] {
            ctx.action = [&ctx, o] {
                const auto g = geo::ecef_to_geodetic({o->x, o->y, o->z});
                ctx.out << format_number(g.lat) << " " << format_number(g.lon) << " " << format_number(g.alt) << "\n";
            };
        });
    }
    {
        auto* cmd = geo_cmd->add_subcommand("distance", "Great-circle distance (m) and initial bearing (deg)");
        struct Opts {
            double lat1 = 0.0, lon1 = 0.0, lat2 = 0.0, lon2 = 0.0;
        };
        auto o = std::make_shared<Opts>();
        cmd->add_option("lat1", o->lat1)->required();
        cmd->add_option("lon1", o->lon1)->required();
        cmd->add_option("lat2", o->lat2)->required();
        cmd->add_option("lon2", o->lon2)->required();
        cmd->callback([&ctx, o] {
            ctx.action = [&ctx, o] {
                const auto d = geo::distance_bearing({o->lat1, o->lon1, 0.0}, {o->lat2, o->lon2, 0.0});
                ctx.out << format_number(d.distance) << " " << format_number(d.bearing) << "\n";
            };
        });
    }
}

}  // namespace dfarm::cli
