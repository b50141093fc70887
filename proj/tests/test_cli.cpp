#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli_app.hpp"

using namespace qmem;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "qmem_cli_tests";
    fs::create_directories(dir);
    return dir;
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("number formatting is round-trip exact") {
    CHECK(cli::format_number(0.1) == "0.10000000000000001");
    CHECK(cli::format_number(1.0) == "1");
    CHECK(cli::format_number(-2.5e-20) == "-2.4999999999999999e-20");
    for (double x : {3.141592653589793, 1e-300, 123456.789}) {
        CHECK(std::stod(cli::format_number(x)) == x);
    }
}

TEST_CASE("run: coherent loop is pinched") {
    const CliResult r = invoke({"run", "--scenario", "coherent", "--omega", "1", "--omega0", "1", "--x0", "1",
                             "--amplitude", "1"});
    CHECK(r.code == cli::kExitOk);
    CHECK(has(r.out, "pinched = true"));
    CHECK(has(r.out, "area_geometric = 0.36"));
    CHECK(has(r.out, "analytic_valid = true"));
}

TEST_CASE("run: Fock loop is not pinched") {
    const CliResult r = invoke({"run", "--scenario", "fock", "--omega", "5"});
    CHECK(r.code == cli::kExitOk);
    CHECK(has(r.out, "pinched = false"));
    CHECK(has(r.out, "cutoff = 1"));
}

TEST_CASE("run: invalid configurations exit with 2") {
    CHECK(invoke({"run", "--scenario", "squeezed", "--amplitude", "1.5"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--scenario", "thermal"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--omega", "-1"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--steps-per-period", "100"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--scenario", "fock", "--cutoff", "0"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--with-entropy"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"run", "--output", "/nonexistent-dir/x.csv"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"frobnicate"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({}).code == cli::kExitInvalidConfig);
    const CliResult bad = invoke({"run", "--scenario", "squeezed", "--amplitude", "1.5"});
    CHECK(has(bad.err, "alpha"));
}

TEST_CASE("run: CSV output is deterministic and well formed") {
    const fs::path dir = scratch_dir();
    const fs::path a = dir / "a.csv", b = dir / "b.csv";
    REQUIRE(invoke({"run", "--scenario", "squeezed", "--steps-per-period", "256", "--output", a.string()}).code == 0);
    REQUIRE(invoke({"run", "--scenario", "squeezed", "--steps-per-period", "256", "--output", b.string()}).code == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    std::istringstream lines(text);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "t,drive,theta,n_out_b1,n_out_b2,input_obs,entropy");
    CHECK(first.back() == ',');  // entropy column empty
    std::size_t rows = 1;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 257);
}

TEST_CASE("run: entropy column and JSON summary") {
    const fs::path dir = scratch_dir();
    const fs::path csv = dir / "fock.csv", json = dir / "fock.json";
    const CliResult r = invoke({"run", "--scenario", "fock", "--omega", "2", "--steps-per-period", "512",
                             "--with-entropy", "--output", csv.string(), "--json", json.string()});
    REQUIRE(r.code == 0);
    CHECK(has(r.out, "entropy_max = "));
    const auto doc = nlohmann::json::parse(slurp(json));
    CHECK(doc["scenario"] == "fock");
    CHECK(doc["pinched"] == false);
    CHECK(doc["steps_per_period"] == 512);
    CHECK(doc["area_geometric"].get<double>() > 0.5);
    CHECK(doc["entropy_min"].get<double>() >= 0.0);
    std::istringstream lines(slurp(csv));
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(first.back() != ',');
}

TEST_CASE("sweep: areas decrease for coherent and Fock") {
    const CliResult c = invoke({"sweep", "--scenario", "coherent", "--omegas", "5,1,2"});
    CHECK(c.code == 0);
    CHECK(has(c.out, "monotone_decreasing = true"));
    // rows come out ordered by frequency
    CHECK(c.out.find("\n1,") < c.out.find("\n2,"));
    CHECK(c.out.find("\n2,") < c.out.find("\n5,"));

    const CliResult f = invoke({"sweep", "--scenario", "fock", "--omegas", "5,10,50"});
    CHECK(f.code == 0);
    CHECK(has(f.out, "monotone_decreasing = true"));
}

TEST_CASE("sweep: needs at least two distinct frequencies") {
    CHECK(invoke({"sweep", "--omegas", "1"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"sweep", "--omegas", "1,1"}).code == cli::kExitInvalidConfig);
    CHECK(invoke({"sweep"}).code == cli::kExitInvalidConfig);
}

TEST_CASE("sweep: per-frequency dumps") {
    const fs::path dir = scratch_dir() / "dumps";
    fs::remove_all(dir);
    REQUIRE(invoke({"sweep", "--scenario", "coherent", "--omegas", "1,2", "--steps-per-period", "256",
                 "--dump-dir", dir.string()})
                .code == 0);
    CHECK(fs::exists(dir / "coherent_omega_1.csv"));
    CHECK(fs::exists(dir / "coherent_omega_2.csv"));
}

TEST_CASE("compose: effective splitter") {
    const CliResult zero = invoke({"compose", "--theta", "0", "--phi-t", "1.5707963267948966"});
    CHECK(zero.code == 0);
    CHECK(has(zero.out, "Theta = 0\n"));
    const CliResult pi = invoke({"compose", "--theta", "3.141592653589793", "--phi-t", "1.5707963267948966"});
    CHECK(has(pi.out, "Theta = 3.14159265358979"));
    std::istringstream lines(pi.out);
    for (std::string line; std::getline(lines, line);) {
        if (line.rfind("identity_defect = ", 0) == 0) CHECK(std::stod(line.substr(18)) <= 1e-12);
    }
    CHECK(invoke({"compose", "--theta", "nan"}).code == cli::kExitInvalidConfig);
}
