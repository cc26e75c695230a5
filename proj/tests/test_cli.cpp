#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subtle/checks.hpp"
#include "subtle/cli.hpp"

namespace fs = std::filesystem;
using subtle::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args)
{
    std::ostringstream o, e;
    const int code = run(args, o, e);
    return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("subtle_cli_" + name);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("golden cases reproduce byte for byte")
{
    const auto cases = subtle::checks::load_golden(SUBTLE_GOLDEN_DIR);
    REQUIRE(cases.size() >= 20);
    for (const auto& g : cases) {
        INFO(g.name);
        const auto r = call(g.argv);
        CHECK(r.code == g.exit_code);
        CHECK(r.out == g.expected);
        // a second run is identical
        CHECK(call(g.argv).out == r.out);
    }
}

TEST_CASE("documented examples")
{
    auto t = call({"ring", "table", "BU:1", "--model", "real", "--box", "4", "4"});
    CHECK(t.code == 0);
    CHECK(t.out.find("box: (4)[4]") != std::string::npos);
    auto j = call({"ring", "table", "BU:1", "--model", "real", "--box", "4", "4", "--format", "json"});
    const auto data = nlohmann::json::parse(j.out);
    bool found = false;
    for (const auto& e : data["entries"])
        if (e[0] == 2 && e[1] == 3) {
            CHECK(e[2] == 1);
            found = true;
        }
    CHECK(found);
    CHECK(data["entries"].size() == 25);

    CHECK(call({"motive", "eval", "N^1 * N^-1"}).out == "T\n");

    auto h = call({"hom", "verify", "comp:2", "--model", "real", "--format", "json", "--box", "4", "4"});
    CHECK(h.code == 0);
    const auto hj = nlohmann::json::parse(h.out);
    CHECK(hj["well_defined"] == true);
    CHECK(hj["surjective"] == true);
}

TEST_CASE("exit codes")
{
    CHECK(call({}).code == 2);
    CHECK(call({"ring"}).code == 2);
    CHECK(call({"ring", "table", "Nope:3"}).code == 2);
    CHECK(call({"ring", "table", "H", "--box", "3"}).code == 2);
    CHECK(call({"ring", "table", "H", "--format", "yaml"}).code == 2);
    CHECK(call({"field", "show", "--model", "no_such_model"}).code == 2);
    CHECK(call({"hom", "kernel", "pq:1"}).code == 2);
    CHECK(call({"hom", "verify", "comp:x"}).code == 2);
    CHECK(call({"motive", "eval", "Mt *"}).code == 2);
    auto help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("motive") != std::string::npos);
}

TEST_CASE("out file and config file")
{
    const auto dir = scratch("cfg");
    const auto out = dir / "table.json";
    const auto cfg = dir / "config.json";
    {
        std::ofstream f(cfg);
        f << R"({"model": "finite_field", "box": [3, 2], "format": "json"})";
    }
    auto r = call({"ring", "table", "H", "--config", cfg.string(), "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["model"] == "finite_field");
    CHECK(j["box"] == nlohmann::json::array({3, 2}));
    // flags override the config file
    auto t = call({"ring", "table", "H", "--config", cfg.string(), "--format", "text", "--model", "real"});
    CHECK(t.out.find("model: real") != std::string::npos);
    CHECK(t.out.find("box: (3)[2]") != std::string::npos);
    {
        std::ofstream f(cfg);
        f << R"({"format": "xml"})";
    }
    CHECK(call({"ring", "table", "H", "--config", cfg.string()}).code == 2);
    CHECK(call({"ring", "table", "H", "--config", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("model search path")
{
    const auto dir = scratch("models");
    {
        std::ofstream f(dir / "two_symbols.json");
        f << R"({"generators": ["a", "b"], "relations": ["a^2", "b^2 + a*b"], "alpha": "b", "minus_one": "a"})";
    }
    ::setenv("SUBTLE_MODEL_DIR", dir.string().c_str(), 1);
    auto r = call({"field", "show", "--model", "two_symbols", "--box", "3", "3", "--format", "json"});
    ::unsetenv("SUBTLE_MODEL_DIR");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["alpha"] == "b");
    CHECK(j["km_dims"] == nlohmann::json::array({1, 2, 1, 0}));
    // by path, with a ring on top
    auto t = call({"sq1", "check", "BOp:1", "--model", (dir / "two_symbols.json").string(), "--box", "3", "3"});
    CHECK(t.code == 0);
}

TEST_CASE("verification failures exit 1")
{
    const auto dir = scratch("fail");
    const auto map = dir / "map.json";
    {
        std::ofstream f(map);
        f << R"({"source": "BU:1", "target": "Xalpha", "images": {"c_1": "rho*mu", "d_1": "0"}})";
    }
    auto r = call({"hom", "verify", map.string(), "--box", "3", "3"});
    CHECK(r.code == 1);
    CHECK(r.out.find("relation tau*d_1 + rho*c_1 maps to") != std::string::npos);
}
