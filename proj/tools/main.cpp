#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace singkit::cli;
    CLI::App app{"singkit: invariants of map germs over Q and F_p"};
    app.require_subcommand(1);
    Options opts;
    std::string script_path = "-";
    std::string chosen;
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("script", script_path, "session script ('-' for stdin)");
        sub->add_option("--format", opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--jet", opts.jet, "x-degree bound D (default 8)");
        sub->add_option("--tdeg", opts.tdeg, "t-degree bound T (default 2D)");
        sub->add_option("--group", opts.group, "R, K or A (default K)");
        sub->add_option("--level", opts.level, "filtration level, -1 for extended tangent spaces");
        sub->add_flag("--log", opts.log, "print group elements used by reductions");
        sub->add_option("--map", opts.map, "name of the map or unfolding to use");
        sub->add_option("--ideal", opts.ideal, "ideal a as m^d or comma-separated generators");
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kParseError;
    }

    std::string script;
    if (script_path == "-") {
        script.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(script_path);
        if (!in) {
            std::cerr << "error: cannot read " << script_path << "\n";
            return kParseError;
        }
        script.assign(std::istreambuf_iterator<char>(in), {});
    }
    Outcome r = run(chosen, script, opts);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
