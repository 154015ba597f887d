// Runs the command-line tool as a subprocess.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>

#include <catch_amalgamated.hpp>
#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(OCTWALK_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    while (auto n = fread(buf.data(), 1, buf.size(), p.get())) out.append(buf.data(), n);
    int status = pclose(p.release());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json run_json(const std::string& args, int want_code = 0) {
    auto r = run(args);
    INFO(args << "\n" << r.out);
    REQUIRE(r.code == want_code);
    return nlohmann::json::parse(r.out);
}

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("octwalk_cli_" + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST_CASE("count") {
    auto r = run("count --model '---;--+;-+0;+00' --order 8 --at 0,0,0,8");
    CHECK(r.code == 0);
    CHECK(r.out == "28\n");
    auto q = run("count --model '--;-0*2;-+;+0;+-' --order 2 --at 0,0,2");
    CHECK(q.out == "2\n");
    auto j = run_json("count --model '---;--+;-+0;+00' --order 8 --mod 1000000007");
    CHECK(j["series"]["x0y0z0"][8] == "28");
    CHECK(j["mode"] == "mod 1000000007");
    CHECK(run("count --model '---' --order 4 --mod 1000").code == 2);
}

TEST_CASE("project") {
    auto j = run_json("project --model '+00;0-0;-0+;00-'");
    CHECK(j["unused"] == "0-0");
    CHECK(j["dimension"] == 2);
    CHECK(j["projection"].contains("quadrant_model"));
}

TEST_CASE("group and orbitsum") {
    auto g = run_json("group --model '-0;0-;++' --elements");
    CHECK(g["order"] == 6);
    CHECK(g["elements"].size() == 6);
    auto inf = run_json("group --model '-0;0-;+-;++' --bound 50");
    CHECK(inf["status"] == "exceeds");
    CHECK(inf["order"] == ">=50");
    auto o = run_json("orbitsum --model '--;-0*2;-+;+0;+-'");
    CHECK(o["orbit_sum_zero"] == false);
    CHECK(o["extraction"]["holds"] == true);
}

TEST_CASE("hadamard") {
    auto h = run_json("hadamard --model '+00;++0;-0+;-0-;--+;---' --check 8");
    CHECK(h["hadamard"] == true);
    for (const auto& d : h["decompositions"]) CHECK(d["assembled_equals_counts"] == true);
    auto k = run_json("hadamard --model '-00;0-0;00-;+++'");
    CHECK(k["hadamard"] == false);
}

TEST_CASE("verify exit codes follow the reports") {
    auto v = run_json("verify closed-forms");
    CHECK(v.size() == 4);
    for (const auto& r : v) CHECK(r["status"] == "pass");
    auto fe = run_json("verify functional-equation --model '-0-;-++;0-+;+0-;+++' --order 6");
    CHECK(fe[0]["status"] == "pass");
    auto s1 = run_json("verify extraction --model '++;+0;-+;-0*2;--' --order 6", 1);
    CHECK(s1[0]["status"] == "inconclusive");
    CHECK(run("verify no-such-suite").code == 2);
}

TEST_CASE("guess from an array and from a count export") {
    std::string arr = temp("arr.json");
    {
        std::ofstream out(arr);
        out << "[";
        for (int n = 0; n < 40; ++n) out << (n ? "," : "") << (1LL << n);
        out << "]";
    }
    auto g = run_json("guess --input " + arr + " --r-max 1 --d-max 1");
    REQUIRE(g["candidates"].size() == 1);
    CHECK(g["candidates"][0]["recurrence"] == "(1)*a(n+1) + (-2)*a(n) = 0");
    std::filesystem::remove(arr);

    std::string exp = temp("export.json");
    auto c = run("count --model '--;-0*2;-+;+0;+-' --order 110");
    {
        std::ofstream out(exp);
        out << c.out;
    }
    auto h = run_json("guess --input " + exp + " --series x0y0 --r-max 3 --d-max 4 --use 100");
    REQUIRE_FALSE(h["candidates"].empty());
    CHECK(h["candidates"][0]["holds_on_all_terms"] == true);
    std::filesystem::remove(exp);
}

TEST_CASE("classify, resume and tables") {
    std::string store = temp("store.jsonl");
    std::filesystem::remove(store);
    auto a = run("classify --scope quadrant --store " + store + " --quiet --jobs 2");
    CHECK(a.code == 0);
    CHECK(a.out.find("79 = [7,23,27,16,5,1]") != std::string::npos);
    CHECK(a.out.find("computed 79") != std::string::npos);
    auto b = run("classify --scope quadrant --store " + store + " --quiet");
    CHECK(b.out.find("computed 0, already in store 79") != std::string::npos);
    auto t = run_json("tables " + store + " --json");
    CHECK(t[0]["missing"] == 0);
    CHECK(run("classify --scope quadrant --bound 100 --store " + store + " --quiet").code == 2);
    std::filesystem::remove(store);
}

TEST_CASE("census dimension split") {
    auto j = run_json("census --max-card 4");
    CHECK(j["total"] == 1498);
    CHECK(j["dimension_3"]["by_cardinality"][3] == 1);
}

TEST_CASE("usage errors") {
    CHECK(run("").code != 0);
    CHECK(run("count").code != 0);
}
