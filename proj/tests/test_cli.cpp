#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "edgedim/cli.hpp"
#include "edgedim/errors.hpp"

using namespace edgedim;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("grid syntax")
    {
        CHECK(parse_grid("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
        CHECK(parse_grid("0:1:3") == std::vector<double>{0.0, 0.5, 1.0});
        const auto g = parse_grid("log:1:100:3");
        REQUIRE(g.size() == 3);
        CHECK(g[1] == doctest::Approx(10.0));
        CHECK(parse_grid("7:9:1") == std::vector<double>{7.0});
        CHECK_THROWS_AS(parse_grid(""), ConfigError);
        CHECK_THROWS_AS(parse_grid("1,,2"), ConfigError);
        CHECK_THROWS_AS(parse_grid("0:1"), ConfigError);
        CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
        CHECK_THROWS_AS(parse_grid("log:0:1:3"), ConfigError);
        CHECK_THROWS_AS(parse_grid("1,x"), ConfigError);
    }

    TEST_CASE("usage errors exit with 2")
    {
        CHECK(run({}).code == kExitConfig);
        CHECK(run({"nonsense"}).code == kExitConfig);
        CHECK(run({"capacity-sweep"}).code == kExitConfig);
        CHECK(run({"capacity-sweep", "--axis", "r"}).code == kExitConfig);
        CHECK(run({"capacity-sweep", "--axis", "r", "--grid", ""}).code == kExitConfig);
        CHECK(run({"capacity-sweep", "--axis", "q", "--grid", "1"}).code == kExitConfig);
        CHECK(run({"validate", "--n", "0"}).code == kExitConfig);
        CHECK(run({"validate", "--which", "everything"}).code == kExitConfig);
        CHECK(run({"dimension", "--config", "/nonexistent/edgedim.json"}).code == kExitConfig);
        CHECK(run({"pareto", "--grid", "0,0.5"}).code == kExitConfig);
        CHECK(run({"dimension", "--axis", "delta", "--grid", "4", "--fixed-ratio", "0.25"}).code == kExitConfig);
        CHECK(run({"--help"}).code == kExitOk);
    }

    TEST_CASE("config errors carry the field")
    {
        const std::string path = "edgedim_cli_bad.json";
        {
            std::ofstream f(path);
            f << R"({"qos": {"omega": 0.8}})";
        }
        const Run r = run({"dimension", "--config", path});
        std::remove(path.c_str());
        CHECK(r.code == kExitConfig);
        CHECK(r.err.find("qos.omega") != std::string::npos);
    }

    TEST_CASE("capacity sweep CSV")
    {
        const Run r = run({"capacity-sweep", "--axis", "epsilon", "--grid", "0,0.25,0.5,0.75,1", "--family", "m=1,16"});
        CHECK(r.code == kExitOk);
        CHECK(lines(r.out) == 11);
        CHECK(r.out.rfind("regime,family,family_value,r_km,b_hz,m_antennas,epsilon,lambda_b,delta,r_th_km,power_regime,"
                          "capacity_bps\n",
                          0) == 0);
        CHECK(r.out.find('\r') == std::string::npos);
        CHECK(r.out.find("noise_limited,m,1,1.29579514993,1000000,1,0,2,4,inf,fractional,") != std::string::npos);
    }

    TEST_CASE("single solve emits JSON")
    {
        const Run r = run({"dimension"});
        CHECK(r.code == kExitOk);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["status"] == "ok");
        CHECK(j["solution"]["certificate"] == "Both");
        CHECK(j["solution"]["residuals"].contains("wait_tail"));
        CHECK(j["constants"]["kappa5"].get<double>() == doctest::Approx(424.42204852580434));
        CHECK(j["success_probability"].get<double>() == doctest::Approx(0.8).epsilon(1e-8));
    }

    TEST_CASE("infeasible solve exits with 3 and names the constraint")
    {
        const std::string path = "edgedim_cli_infeasible.json";
        {
            std::ofstream f(path);
            f << R"({"qos": {"d_max": 1e-7}})";
        }
        const Run r = run({"dimension", "--config", path});
        std::remove(path.c_str());
        CHECK(r.code == kExitInfeasible);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["status"] == "infeasible");
        CHECK(j["constraint"] == "deadline");
    }

    TEST_CASE("dimension sweep rows")
    {
        const Run r = run({"dimension", "--axis", "lambda_b", "--grid", "0.5,1,2", "--family", "lambda=50,100",
                           "--threads", "3"});
        CHECK(r.code == kExitOk);
        CHECK(lines(r.out) == 7);
        CHECK(r.out.find("invalid") == std::string::npos);
        const Run ratio = run({"dimension", "--axis", "lambda_b", "--grid", "1,2", "--fixed-ratio", "0.25"});
        CHECK(ratio.code == kExitOk);
        CHECK(ratio.out.find("\n1,4,100,0.5,ok,") != std::string::npos);
        CHECK(ratio.out.find("\n2,8,100,0.5,ok,") != std::string::npos);
    }

    TEST_CASE("pareto CSV")
    {
        const Run r = run({"pareto"});
        CHECK(r.code == kExitOk);
        CHECK(lines(r.out) == 22);
        const Run one = run({"pareto", "--grid", "0.5"});
        const Run dim = run({"dimension"});
        const auto j = nlohmann::json::parse(dim.out);
        std::ostringstream b;
        b.precision(12);
        b << j["solution"]["b_opt_hz"].get<double>();
        CHECK(one.out.find("\n0.5,ok," + b.str() + ",") != std::string::npos);
        CHECK(one.out.find(",yes,Both,") != std::string::npos);
    }

    TEST_CASE("identical config and seed give identical bytes")
    {
        const std::vector<std::string> args{"validate", "--which", "queue", "--n", "20000", "--seed", "17"};
        const Run a = run(args);
        const Run b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        const Run c = run({"validate", "--which", "queue", "--n", "20000", "--seed", "18"});
        CHECK(c.out != a.out);

        const std::vector<std::string> sweep{"dimension", "--axis", "beta1", "--grid", "0.2:0.8:4", "--threads", "1"};
        std::vector<std::string> sweep4 = sweep;
        sweep4.back() = "4";
        CHECK(run(sweep).out == run(sweep4).out);
    }

    TEST_CASE("validate reports and writes to --out")
    {
        const std::string path = "edgedim_cli_report.json";
        const Run r = run({"validate", "--which", "queue", "--n", "100000", "--out", path});
        CHECK(r.code == kExitOk);
        CHECK(r.out.empty());
        std::ifstream f(path);
        const auto j = nlohmann::json::parse(f);
        f.close();
        std::remove(path.c_str());
        CHECK(j["pass"] == true);
        CHECK(j["checks"].size() == 5);
    }
}
