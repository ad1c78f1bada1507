#include "dfarm_cli/cli.hpp"

#include "common.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <ostream>

namespace dfarm::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dfarm: design, run and analyze simulation experiments", "dfarm"};
    app.require_subcommand(1);
    Context ctx{out, err, {}};
    add_doe_command(app, ctx);
    add_run_command(app, ctx);
    add_analyze_command(app, ctx);
    add_model_command(app, ctx);
    add_geo_command(app, ctx);
    add_casestudy_command(app, ctx);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (!ctx.action) {
        err << app.help();
        return kExitUsage;
    }
    try {
        ctx.action();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace dfarm::cli
