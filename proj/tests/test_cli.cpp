#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out, err;
};

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("corrdyn_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path p = workdir() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

Run cli(const std::string& args) {
    fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
    std::string cmd = "cd '" + workdir().string() + "' && '" CORRDYN_CLI "' " + args + " > '" + out.string() + "' 2> '" +
                      err.string() + "'";
    int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_file(out), read_file(err)};
}

// Drops "# " preamble lines of a CSV output.
std::string csv_body(const std::string& text) {
    std::istringstream in(text);
    std::string line, body;
    while (std::getline(in, line))
        if (line.rfind("# ", 0) != 0) body += line + "\n";
    return body;
}

const std::string kTwoValued = "poly = \"w^2 - z^2 - 1\"\nlabel = \"two-valued example\"\n";
const std::string kSquare = "# z -> z^2\npoly = \"w - z^2\"\n";

}  // namespace

TEST_CASE("compose prints the chain of the squared two-valued example") {
    write_file("a.corr", kTwoValued);
    auto r = cli("compose -f a.corr -g a.corr");
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["chain"] == "2·(w^2 - z^2 - 2)");
    CHECK(j["lambda0"] == 4);
    CHECK(j["lambda1"] == 4);
    CHECK(j["report"]["dropped"].empty());
    CHECK(j["config"]["seed"] == 1);
}

TEST_CASE("lov reports log 2 for the two-valued example") {
    write_file("a.corr", kTwoValued);
    auto r = cli("lov -f a.corr --n 5");
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["lov_value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][4]["lambda0"] == 32);
}

TEST_CASE("entropy writes a CSV with the config, seed and bound") {
    write_file("a.corr", kTwoValued);
    auto r = cli("entropy -f a.corr --n 4,8 --eps 0.1,0.3 --samples 400 --starts 20 --seed 7");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("# config: ", 0) == 0);
    CHECK(r.out.find("\"seed\":7") != std::string::npos);
    auto pos = r.out.find("# summary: ");
    REQUIRE(pos != std::string::npos);
    auto summary = Json::parse(r.out.substr(pos + 11, r.out.find('\n', pos) - pos - 11));
    CHECK(summary["bound"].get<double>() == doctest::Approx(std::log(2.0)));
    CHECK(summary["estimator"] == "greedy");
    auto body = csv_body(r.out);
    CHECK(body.rfind("n,epsilon,separated_count,rate,orbits\n", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 5);
}

TEST_CASE("fixed-points of z^2 match the Lefschetz count") {
    write_file("sq.corr", kSquare);
    auto r = cli("fixed-points -f sq.corr --n 3");
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    for (int n = 1; n <= 3; ++n) {
        CHECK(j["rows"][n - 1]["projective_count"] == 1 + (1 << n));
        CHECK(j["rows"][n - 1]["lefschetz"] == 1 + (1 << n));
    }
}

TEST_CASE("psi flags the Julia point of z^2") {
    write_file("sq.corr", kSquare);
    auto r = cli("psi -f sq.corr --x 1,0 --r 0.1 --n 2,4,6,8 --points 2000 --branches 1 --format json");
    REQUIRE(r.status == 0);
    CHECK(Json::parse(r.out)["divergent"] == true);
}

TEST_CASE("domain errors exit 1 with an error JSON on stderr") {
    write_file("bad.corr", "poly = \"(3*w - 2)*(w*z + 1)\"\n");
    auto r = cli("compose -f bad.corr");
    CHECK(r.status == 1);
    auto j = Json::parse(r.err);
    CHECK(j["error"] == "degenerate_component");
    CHECK(r.out.empty());

    write_file("a.corr", kTwoValued);
    auto cap = cli("iterate -f a.corr --n 20");
    CHECK(cap.status == 1);
    auto e = Json::parse(cap.err);
    CHECK(e["error"] == "degree_cap_exceeded");
    CHECK(e["partial"].size() == 8);

    write_file("junk.corr", "polynomial = \"w - z\"\n");
    CHECK(cli("lov -f junk.corr --n 2").status == 1);
    write_file("float.corr", "poly = \"w - 0.5*z\"\n");
    CHECK(Json::parse(cli("lov -f float.corr --n 2").err)["error"] == "parse_error");
}

TEST_CASE("usage errors exit 2") {
    write_file("a.corr", kTwoValued);
    CHECK(cli("").status == 2);
    CHECK(cli("frobnicate").status == 2);
    CHECK(cli("lov --n 3").status == 2);
    CHECK(cli("lov -f missing.corr --n 3").status == 2);
    CHECK(cli("phi -f a.corr --x 0 --r 0.9 --n 4").status == 2);
    CHECK(cli("phi -f a.corr --x nowhere --r 0.1 --n 4").status == 2);
    CHECK(cli("entropy -f a.corr --n 4 --eps 0.1 --samples 10 --starts 20").status == 2);
    CHECK(cli("scan -f a.corr --r 0.1 --n 4 --resolution 4096,2").status == 2);
    CHECK(cli("compose -f a.corr --format csv").status == 2);
    CHECK(cli("selftest --scale 2").status == 2);
    CHECK(cli("--help").status == 0);
}

TEST_CASE("outputs are written atomically and do not depend on the thread count") {
    write_file("a.corr", kTwoValued);
    const std::string args = "phi -f a.corr --x 0.4,-0.2 --r 0.1,0.2 --n 6,12 --points 200 --seed 5 -o phi.csv";
    REQUIRE(cli("--threads 1 " + args).status == 0);
    std::string one = read_file(workdir() / "phi.csv");
    REQUIRE(cli("--threads 6 " + args).status == 0);
    std::string six = read_file(workdir() / "phi.csv");
    CHECK(one == six);
    CHECK(one.find("# config: ") == 0);
    CHECK_FALSE(fs::exists(workdir() / "phi.csv.tmp"));

    REQUIRE(cli("--threads 1 scan -f a.corr --r 0.2 --n 8 --resolution 5,4 --points 20 -o s.csv --plot s.gp").status == 0);
    std::string s1 = read_file(workdir() / "s.csv");
    REQUIRE(cli("--threads 5 scan -f a.corr --r 0.2 --n 8 --resolution 5,4 --points 20 -o s.csv --plot s.gp").status == 0);
    CHECK(read_file(workdir() / "s.csv") == s1);
    CHECK(std::count(s1.begin(), s1.end(), '\n') == 2 + 1 + 20);
    CHECK(read_file(workdir() / "s.gp").find("'s.csv'") != std::string::npos);
}

TEST_CASE("entropy-from reads a start list") {
    write_file("a.corr", kTwoValued);
    write_file("y.txt", "# starts\n0.5\n0.2, 0.7\n");
    auto r = cli("entropy-from -f a.corr --points-file y.txt --n 5 --eps 0.1 --samples 64 --format json");
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["bound_kind"] == "lov_from");
    CHECK(j["rows"][0]["orbits"] == 64);
}
