#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "bbmstab/cli.hpp"
#include "bbmstab/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"stability analysis of proportional solitary waves in coupled BBM systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string input;
    std::string out_dir;
    bool quiet = false;
    app.add_option("--input", input, "problem JSON: file path, or - for stdin");
    app.add_option("--out", out_dir, "directory for CSV / snapshot artifacts");
    app.add_flag("--quiet", quiet, "suppress report bodies (errors still print)");

    app.add_subcommand("analyze", "ratios, criterion matrix, verdict per ratio");
    app.add_subcommand("spectrum", "linearized-operator spectra at one speed");
    app.add_subcommand("dprime", "d'' over a speed grid, CSV");
    app.add_subcommand("simulate", "perturbed time evolution with deviation tracking");
    auto* example = app.add_subcommand("example", "replay built-in golden examples");
    int index = 0;
    example->add_option("index", index, "example number 1..4 (default: all)")
        ->check(CLI::Range(1, 4));

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        std::string text;
        if (name == "example")
            text = index ? std::to_string(index) : "";
        else
            text = bbmstab::read_input(input);
        return bbmstab::dispatch(name, text, out_dir, quiet, std::cout, std::cerr);
    } catch (const bbmstab::Error& e) {
        std::cerr << nlohmann::json{{"error", e.code}, {"message", e.what()}}.dump()
                  << "\n";
        return e.code == "schema" ? 2 : 1;
    }
}
