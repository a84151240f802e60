#include "vb/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vb::cli;

namespace {

JobConfig config(std::vector<std::string> args) { return parse_args(args); }

struct Invocation {
    int status;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = main_entry(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("intersect emits the exact value as a string") {
    const auto r = invoke({"intersect", "--ell", "1", "--g", "3", "--profile", "1,1,1,5", "--format", "json"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "vb-1");
    CHECK(doc["command"] == "intersect");
    CHECK(doc["outputs"]["value"] == "1/2");
    CHECK(doc["inputs"]["profile"] == "1,1,1,5");
    CHECK_FALSE(doc.contains("pass"));
}

TEST_CASE("rank command") {
    const auto r = invoke({"rank", "--ell", "2", "--weights", "1,1,1,1", "--format", "json"});
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["outputs"]["rank"] == "2");
}

TEST_CASE("verify poscomb passes with a coefficient table") {
    const auto r = invoke({"verify", "poscomb", "--ell", "3", "--g", "7", "--format", "json"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["outputs"]["c[3]"] == "220");
    CHECK(doc["inputs"]["target"] == "poscomb");
}

TEST_CASE("tables") {
    const auto closed = invoke({"table", "closed-form", "--g", "3", "--format", "csv"});
    CHECK(closed.status == 0);
    CHECK(closed.out == "ell,F_1,F_2,F_3\n1,1/2,0,1/2\n2,0,1/3,0\n3,0,0,1/4\n");

    const auto ranks = invoke({"table", "ranks", "--ell", "2", "--jmax", "6", "--format", "csv"});
    CHECK(ranks.out == "j,t=0,t=1,t=2\n0,1,0,0\n1,0,1,0\n2,1,0,1\n3,0,2,0\n4,2,0,2\n5,0,4,0\n6,4,0,4\n");

    const auto classes = invoke({"table", "classes", "--g", "3", "--format", "csv"});
    CHECK(classes.out.find("1,3/14,1/7,2/7\n") != std::string::npos);
    CHECK(classes.out.find('\r') == std::string::npos);
}

TEST_CASE("table ranges beyond the desk scale are refused with a cost estimate") {
    const auto r = invoke({"table", "cb-vectors", "--g", "20"});
    CHECK(r.status == 1);
    CHECK(r.err.find("estimated cost") != std::string::npos);
    CHECK(invoke({"table", "cb-vectors", "--g", "13", "--limit", "13"}).status == 0);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).status == 1);
    CHECK(invoke({"--help"}).status == 0);
    CHECK(invoke({"frobnicate"}).status == 1);
    CHECK(invoke({"rank", "--ell", "2", "--weights", "1,x"}).status == 1);
    CHECK(invoke({"rank", "--ell", "2"}).status == 1);
    CHECK(invoke({"rank", "--ell", "2", "--weights", "1,1", "--g", "3"}).status == 1);
    CHECK(invoke({"verify", "nonsense", "--ell", "2"}).status == 1);

    const auto pre = invoke({"rank", "--ell", "2", "--weights", "1,3"});
    CHECK(pre.status == 1);
    CHECK(pre.err.find("sl2 weights must lie in [0, level]") != std::string::npos);

    const auto scope = invoke({"intersect", "--ell", "3", "--g", "3", "--profile", "3,3,1,1"});
    CHECK(scope.status == 1);
    CHECK(scope.err.find("out of scope: d=1 case") != std::string::npos);

    Report failed;
    failed.pass = false;
    CHECK(exit_status_for(failed) == 2);
    failed.pass = true;
    CHECK(exit_status_for(failed) == 0);
    failed.status = "excluded";
    CHECK(exit_status_for(failed) == 1);
}

TEST_CASE("excluded F-curve input reports the recorded fact") {
    const auto r = invoke({"verify", "fcurve", "--ell", "4", "--k", "3", "--n", "8", "--profile", "2,2,2,2", "--format", "json"});
    CHECK(r.status == 1);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "excluded");
    CHECK(doc["outputs"]["reason"] == "hypothesis k < 3*ell/4 violated");
    CHECK_FALSE(doc.contains("pass"));
}

TEST_CASE("JSON reports round-trip byte for byte") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"verify", "same-face", "--gmax", "5"},
             {"table", "classes", "--g", "6"},
             {"intersect", "--d", "2", "--weights", "1/2,1/2,1/2,1/2,1/2,1/2", "--parts", "1,2/3/4/5,6"},
             {"cb-intersect", "--family", "kequalsell", "--ell", "3", "--n", "10"}}) {
        JobConfig c = config(args);
        c.format = Format::Json;
        const std::string text = render(execute(c), Format::Json);
        CHECK(nlohmann::json::parse(text).dump(2) + "\n" == text);
    }
}

TEST_CASE("identical configs give identical output for any thread count") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"verify", "poscomb", "--gmax", "8"},
             {"verify", "same-face", "--gmax", "8"},
             {"table", "cb-vectors", "--g", "10"}}) {
        JobConfig c = config(args);
        c.format = Format::Json;
        c.threads = 1;
        const std::string one = render(execute(c), Format::Json);
        CHECK(render(execute(c), Format::Json) == one);
        for (int t : {2, 3, 8}) {
            c.threads = t;
            CHECK(render(execute(c), Format::Json) == one);
        }
    }
}

TEST_CASE("config text and flag precedence") {
    const auto kv = parse_config_text("# job\ncommand = verify\ntarget=poscomb\n  --ell = 2 \ng = 4 # trailing\n\n");
    CHECK(kv.at("command") == "verify");
    CHECK(kv.at("target") == "poscomb");
    CHECK(kv.at("ell") == "2");
    CHECK(kv.at("g") == "4");
    CHECK_THROWS_AS(parse_config_text("no equals sign"), UsageError);
}

TEST_CASE("oracle mode agrees") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"table", "ranks", "--ell", "3", "--jmax", "11", "--check-oracle"},
             {"table", "closed-form", "--g", "8", "--check-oracle"},
             {"table", "cb-vectors", "--g", "5", "--check-oracle"},
             {"class", "--ell", "2", "--g", "5", "--check-oracle"},
             {"verify", "poscomb", "--ell", "2", "--g", "5", "--check-oracle"},
             {"rank", "--ell", "3", "--weights", "1,2,3,2,1,1", "--check-oracle"}}) {
        const auto r = invoke([&] {
            auto a = args;
            a.insert(a.end(), {"--format", "json"});
            return a;
        }());
        CHECK(r.status == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["outputs"]["oracle_agrees"] == true);
        CHECK(doc["outputs"]["oracle_checks"].get<int>() > 0);
    }
}

TEST_CASE("plain output") {
    const auto r = invoke({"sigma", "--ell", "2", "--g", "3", "--size", "4"});
    CHECK(r.status == 0);
    CHECK(r.out.find("sigma: 1\n") != std::string::npos);
    CHECK(r.out.find("phi: 1/2\n") != std::string::npos);
}

TEST_CASE("config file with flags overriding") {
    const auto path = std::filesystem::temp_directory_path() / "vb_test_job.cfg";
    {
        std::ofstream f(path);
        f << "command = verify\ntarget = poscomb\nell = 1\ng = 3\nformat = json\n";
    }
    const auto from_file = invoke({"--config", path.string()});
    CHECK(from_file.status == 0);
    CHECK(nlohmann::json::parse(from_file.out)["inputs"]["g"] == "3");

    const auto overridden = invoke({"--config", path.string(), "verify", "--g", "5"});
    CHECK(overridden.status == 0);
    const auto doc = nlohmann::json::parse(overridden.out);
    CHECK(doc["inputs"]["g"] == "5");
    CHECK(doc["inputs"]["target"] == "poscomb");
    std::filesystem::remove(path);
}
