#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    using namespace pdlsep::cli;
    CLI::App app{"pdlsep: PDL formulas, pushdown languages and palindrome separation at bounded size"};
    app.fallthrough();
    app.require_subcommand(1);
    Context ctx;
    app.add_option("--env", ctx.env_file, "language environment file");
    app.add_option("--bounds", ctx.bounds_text, "depth=D,branch=B,len=N");
    app.add_option("--jobs", ctx.jobs, "worker threads");
    app.add_flag("--json", ctx.json, "emit a JSON document");

    Action action;
    register_logic(app, action, ctx);
    register_lang(app, action, ctx);
    register_separation(app, action, ctx);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        ctx.prepare();
        const int code = action(ctx);
        ctx.emit();
        return code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const pdlsep::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kUnknown;
    } catch (const pdlsep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
}
