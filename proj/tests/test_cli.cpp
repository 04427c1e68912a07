#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "synccode/oracle.hpp"
#include "synccode/pb_export.hpp"
#include "synccode/verifier.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / "synccode_cli_test";
    fs::create_directories(dir);
    const fs::path outfile = dir / "stdout.txt";
    const std::string cmd =
        std::string(SYNCCODE_CLI_PATH) + " " + args + " > " + outfile.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(outfile);
    std::ostringstream os;
    os << in.rdbuf();
    return {WEXITSTATUS(status), os.str()};
}

}  // namespace

TEST_CASE("cli verify exit codes follow the solver convention") {
    CHECK(run_cli("verify --code ____00011____01011 --n 9").exit_code == 0);
    CHECK(run_cli("verify --code ____00011____01011 --n 8").exit_code == 20);
    CHECK(run_cli("verify --code 01x --n 1").exit_code == 2);  // usage error
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("cli find and minx") {
    const auto sat = run_cli("find --d 2 --k 6 --n 4");
    CHECK(sat.exit_code == 0);
    CHECK(sat.out.find("s SATISFIABLE") != std::string::npos);

    CHECK(run_cli("find --d 2 --k 5 --n 4").exit_code == 20);

    const auto mk = run_cli("minx --d 2 --n 4");
    CHECK(mk.exit_code == 0);
    CHECK(mk.out.find("k = 6") != std::string::npos);

    CHECK(run_cli("minx --d 2 --n 2").exit_code == 20);  // INF

    const auto oracle = run_cli("oracle --d 2 --n 5 --min-k");
    CHECK(oracle.exit_code == 0);
    CHECK(oracle.out.find("k = 3") != std::string::npos);

    CHECK(run_cli("reliability --code ________0").out.find("reliability=none") !=
          std::string::npos);
}

TEST_CASE("cli encode/decode round trip in text mode") {
    const fs::path dir = fs::temp_directory_path() / "synccode_cli_test";
    fs::create_directories(dir);
    const fs::path data = dir / "data.txt";
    const fs::path stream = dir / "stream.txt";
    const fs::path back = dir / "back.txt";
    std::ofstream(data) << "01110100\n";

    CHECK(run_cli("encode --code __110 --text --in " + data.string() + " --out " +
                  stream.string())
              .exit_code == 0);
    std::ifstream s(stream);
    std::string encoded;
    s >> encoded;
    CHECK(encoded == "01110111100111000110");

    CHECK(run_cli("decode --code __110 --text --in " + stream.string() + " --out " +
                  back.string())
              .exit_code == 0);
    std::ifstream b(back);
    std::string decoded;
    b >> decoded;
    CHECK(decoded == "01110100");

    // a mid-stream offset drops the partial leading block
    const auto r = run_cli("decode --code __110 --text --offset 7 --in " + stream.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0100\n");
}

TEST_CASE("cli export and import round trip") {
    const fs::path dir = fs::temp_directory_path() / "synccode_cli_test";
    fs::create_directories(dir);
    const fs::path model = dir / "inst.opb";
    const fs::path solution = dir / "solver_out.txt";

    CHECK(run_cli("export --d 2 --k 3 --n 5 --format opb --out " + model.string()).exit_code ==
          0);

    // fake an external solver's output for a known satisfying code
    using namespace synccode;
    const auto found = oracle_exists(Params(2, 3, 5));
    REQUIRE(found.sat());
    const auto map = VariableMap::for_params(Params(2, 3, 5), true);
    std::ofstream sol(solution);
    sol << "s SATISFIABLE\nv";
    for (int i = 0; i < 5; ++i) {
        const Symbol s = found.code->at(i);
        sol << (is_control(s) ? " x" : " -x") << map.k_var(i);
        sol << (s == Symbol::One ? " x" : " -x") << map.v_var(i);
    }
    for (int i = 0; i < 5; ++i)
        for (int g = 1; g < 5; ++g) {
            const Symbol a = found.code->at(i);
            const Symbol b = found.code->at(mod_reduce(i + g, 5));
            const bool y = is_control(a) && is_control(b) && a != b;
            sol << (y ? " x" : " -x") << map.y_var(i, g);
        }
    sol << "\n";
    sol.close();

    const auto r = run_cli("import --model " + model.string() + " --solution " +
                           solution.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verified") != std::string::npos);
    CHECK(r.out.find(found.code->str()) != std::string::npos);
}

TEST_CASE("cli table renders the published grid cells") {
    const auto r = run_cli("table --d 2..2 --n 4..6 --timeout 60 --jobs 2");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.find("2") != std::string::npos);
    CHECK(row.find("6") != std::string::npos);
    CHECK(row.find("3") != std::string::npos);
}

TEST_CASE("cli catalog verifies the seed file") {
    const auto r = run_cli(std::string("catalog --quiet --file ") + SYNCCODE_DATA_DIR +
                           "/catalog_seed.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verified 12 entries") != std::string::npos);
}
