#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qhkit/cli.hpp"

namespace fs = std::filesystem;
using qhkit::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qhkit");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, double> parse_kv(const std::string& text) {
    std::map<std::string, double> m;
    std::istringstream in(text);
    std::string k;
    double v;
    while (in >> k >> v) m[k] = v;
    return m;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "qhkit_cli_test" / name;
    fs::remove_all(p);
    return p;
}

const std::string kBall = R"({"kind":"ball","center":[0,0],"radius":1})";
const std::string kSlit = R"({"kind":"slit_disk"})";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("dist in the unit disk") {
        const Result r = invoke({"dist", "--domain", kBall, "--x", "0,0", "--y", "0.5,0", "--level", "4"});
        REQUIRE(r.code == 0);
        const auto kv = parse_kv(r.out);
        // segment from the center is a geodesic: k = j = log 2
        CHECK(kv.at("j") == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(kv.at("k_lower") <= kv.at("k_upper") + kv.at("k_upper_tol"));
        CHECK(std::abs(kv.at("k_upper") - std::log(2.0)) <= 1e-3);
    }

    TEST_CASE("dist with x = y is zero") {
        const Result r = invoke({"dist", "--domain", kBall, "--x", "0.2,0.1", "--y", "0.2,0.1"});
        REQUIRE(r.code == 0);
        const auto kv = parse_kv(r.out);
        CHECK(kv.at("k_upper") == 0.0);
        CHECK(kv.at("k_lower") == 0.0);
        CHECK(kv.at("j") == 0.0);
    }

    TEST_CASE("outside points are rejected with the point named") {
        const Result r = invoke({"dist", "--domain", kBall, "--x", "2,0", "--y", "0,0"});
        CHECK(r.code == 2);
        CHECK(r.err.find("(2,0)") != std::string::npos);
        const Result s = invoke({"dist", "--domain", kSlit, "--x", "0.5,0", "--y", "0,0.5"});
        CHECK(s.code == 2);
    }

    TEST_CASE("usage errors") {
        CHECK(invoke({}).code == 2);
        CHECK(invoke({"bogus"}).code == 2);
        CHECK(invoke({"dist", "--x", "0,0", "--y", "0,0"}).code == 2);
        CHECK(invoke({"dist", "--domain", "{not json", "--x", "0,0", "--y", "0,0"}).code == 2);
        CHECK(invoke({"dist", "--domain", kBall, "--x", "0,0", "--y", "0,0", "--level", "99"}).code == 2);
        CHECK(invoke({"check", "nonsense", "--map", "{}"}).code == 2);
        CHECK(invoke({"experiment", "nonsense"}).code == 2);
        const Result v = invoke({"experiment", "lemma1", "--s", "1.5", "--out", scratch("bad").string()});
        CHECK(v.code == 2);
        CHECK(v.err.find("/s_values/0") != std::string::npos);
        CHECK(invoke({"--help"}).code == 0);
    }

    TEST_CASE("geodesic around the slit") {
        const fs::path dir = scratch("geo");
        const Result r =
            invoke({"geodesic", "--domain", kSlit, "--x", "0.5,0.1", "--y", "0.5,-0.1", "--level", "4", "--out", dir.string()});
        REQUIRE(r.code == 0);
        std::istringstream in(slurp(dir / "geodesic.csv"));
        std::string line;
        std::getline(in, line);
        CHECK(line == "x,y");
        std::vector<std::pair<double, double>> pts;
        while (std::getline(in, line)) {
            const auto c = line.find(',');
            pts.emplace_back(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)));
        }
        REQUIRE(pts.size() >= 2);
        CHECK(pts.front().first == 0.5);
        CHECK(pts.back().second == -0.1);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const auto [x0, y0] = pts[i - 1];
            const auto [x1, y1] = pts[i];
            if ((y0 > 0) == (y1 > 0) && y0 != 0 && y1 != 0) continue;
            const double xc = y0 == y1 ? x0 : x0 + (x1 - x0) * (0 - y0) / (y1 - y0);
            CHECK_FALSE((xc > 0.0 && xc < 1.0));
        }
        CHECK(fs::exists(dir / "geodesic.json"));
    }

    TEST_CASE("check writes reports and returns 1 on failure") {
        const fs::path dir = scratch("check");
        const std::string id = R"({"kind":"identity","source":)" + kBall + "}";
        const Result pass = invoke({"check", "qh", "--map", id, "--pairs", "20", "--level", "3", "--out", dir.string()});
        CHECK(pass.code == 0);
        CHECK(fs::exists(dir / "check_qh_seed1.json"));
        CHECK(fs::exists(dir / "check_qh_seed1.manifest.json"));
        const std::string rs = R"({"kind":"radial_stretch","a":2,"source":)" + kBall + "}";
        const Result fail =
            invoke({"check", "cqh", "--map", rs, "--M", "1", "--C", "0", "--pairs", "20", "--level", "3", "--out", dir.string()});
        CHECK(fail.code == 1);
        CHECK(fail.out.find("verdict cqh fail") != std::string::npos);
        CHECK(fs::exists(dir / "check_cqh_seed1_witnesses.csv"));
    }

    TEST_CASE("identical reruns are byte identical") {
        const fs::path dir = scratch("rerun");
        const std::vector<std::string> args = {"experiment", "lemma1", "--trials", "10", "--seed", "4", "--out", dir.string()};
        REQUIRE(invoke(args).code == 0);
        std::map<std::string, std::string> first;
        for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename().string()] = slurp(e.path());
        REQUIRE(first.count("lemma1_seed4.csv") == 1);
        REQUIRE(invoke(args).code == 0);
        for (const auto& [name, text] : first) CHECK(slurp(dir / name) == text);
    }
}
