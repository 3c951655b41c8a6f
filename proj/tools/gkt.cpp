#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gkt/cli/commands.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gkt::InvalidArgument("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gorenstein K-theory of finite-dimensional algebras"};
    app.require_subcommand(1);

    gkt::cli::RunOptions opt;
    bool json = false;
    std::size_t max_len = 0, dim_cap = 0, iter_cap = 0;
    std::uint64_t seed = 0;
    std::uint32_t field = 0;
    auto* o_max = app.add_option("--max-len", max_len, "longest path considered when building the algebra");
    auto* o_dim = app.add_option("--dim-cap", dim_cap, "largest module dimension explored by the catalog");
    auto* o_iter = app.add_option("--iter-cap", iter_cap, "closure rounds for the catalog");
    auto* o_seed = app.add_option("--seed", seed, "seed for randomized steps");
    auto* o_field = app.add_option("--field", field, "compute over GF(p) instead of the file's field");
    app.add_flag("--json", json, "machine-readable output");

    std::vector<std::string> files;
    std::string cmd;
    for (const auto& name : gkt::cli::commands()) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        if (name == "compare")
            sub->add_option("files", files, "two algebra files")->required()->expected(2);
        else if (name == "semt")
            sub->add_option("files", files, "two algebra files, then optionally M and N bimodule files")
                ->required()
                ->expected(2, 4);
        else
            sub->add_option("file", files, "algebra file")->required()->expected(1);
        sub->callback([&cmd, name] { cmd = name; });
    }
    CLI11_PARSE(app, argc, argv);

    if (*o_max) opt.max_len = max_len;
    if (*o_dim) opt.dim_cap = dim_cap;
    if (*o_iter) opt.iter_cap = iter_cap;
    if (*o_seed) opt.seed = seed;
    if (*o_field) opt.field = field;

    gkt::cli::RunResult r;
    try {
        std::vector<std::string> algebras, bimodules;
        for (std::size_t i = 0; i < files.size(); ++i) (i < 2 || cmd != "semt" ? algebras : bimodules).push_back(slurp(files[i]));
        if (cmd == "semt" && files.size() == 3) throw gkt::InvalidArgument("semt needs both bimodule files M and N");
        r = gkt::cli::run(cmd, algebras, bimodules, opt);
    } catch (const std::exception& e) {
        r.json = gkt::cli::Json{{"error", e.what()}, {"kind", "error"}};
        r.exit_code = 1;
    }
    if (json) {
        std::cout << r.json.dump(2) << "\n";
    } else if (r.json.contains("error")) {
        std::cerr << "error: " << r.json["error"].get<std::string>() << "\n";
    } else {
        std::cout << gkt::cli::render_text(r.json);
    }
    return r.exit_code;
}
