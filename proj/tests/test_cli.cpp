#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const char* cli = std::getenv("QSWAP_CLI");
    REQUIRE_MESSAGE(cli, "QSWAP_CLI must point at the CLI binary");
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("run on a passing builtin exits 0 with a JSON report") {
    Result r = run("run builtin:cascade-fock-phi+ --format json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"bell_label\": \"phi+\"") != std::string::npos);
    CHECK(r.out.find("\"probability\": 0.5") != std::string::npos);
}

TEST_CASE("consecutive runs are byte-identical") {
    Result a = run("run builtin:swap-cascade-fock --format json");
    Result b = run("run builtin:swap-cascade-fock --format json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Result c = run("run builtin:swap-cascade-fock --format csv");
    Result d = run("run builtin:swap-cascade-fock --format csv");
    CHECK(c.out == d.out);
}

TEST_CASE("missing file exits 1") {
    Result r = run("run missing.qsp");
    CHECK(r.code == 1);
}

TEST_CASE("parse errors exit 1") {
    std::string path = write_temp("bad.qsp", "qsp 1\nrotate A9 MA\n");
    CHECK(run("run " + path).code == 1);
}

TEST_CASE("failing assertion exits 2") {
    std::string path = write_temp(
        "failing.qsp",
        "qsp 1\natom A1 cascade\nprepare A1 g\nrotate A1 MA\nmeasure A1\n"
        "assert probability A1=f 0.9 1e-3\n");
    Result r = run("run " + path);
    CHECK(r.code == 2);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("file protocols default their name to the file stem") {
    std::string path = write_temp("stem-check.qsp", "qsp 1\nfield vacuum\n");
    Result r = run("run " + path + " --format json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"name\": \"stem-check\"") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("run").code == 1);
    CHECK(run("sweep prepare-cascade-coherent alpha 1:2:0").code == 1);
    CHECK(run("sweep prepare-cascade-coherent alpha nonsense").code == 1);
    CHECK(run("frobnicate").code == 1);
}

TEST_CASE("sweep prints CSV rows in grid order") {
    Result r = run("sweep prepare-cascade-coherent alpha 0.5:4.0:0.5");
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("parameter,value,success_probability,conditional_fidelity\n", 0) ==
            0);
    int rows = -1; // don't count the header
    for (char c : r.out) rows += (c == '\n');
    CHECK(rows == 8);
    // success probability approaches 1/2 as alpha grows
    auto last = r.out.find_last_of('\n', r.out.size() - 2);
    std::string last_row = r.out.substr(last + 1);
    double v = 0, p = 0, f = 0;
    REQUIRE(std::sscanf(last_row.c_str(), "alpha,%lf,%lf,%lf", &v, &p, &f) == 3);
    CHECK(v == doctest::Approx(4.0));
    CHECK(p > 0.49);
    CHECK(p <= 0.5);
}

TEST_CASE("cutoff flag and environment override") {
    Result flag = run("run builtin:cascade-fock-phi+ --cutoff 9 --format json");
    CHECK(flag.out.find("\"cutoff\": 9") != std::string::npos);
    Result env = run("run builtin:cascade-fock-phi+ --format json");
    CHECK(env.out.find("\"cutoff\": 12") != std::string::npos);
    setenv("QSWAP_CUTOFF_OVERRIDE", "10", 1);
    Result env2 = run("run builtin:cascade-fock-phi+ --format json");
    unsetenv("QSWAP_CUTOFF_OVERRIDE");
    CHECK(env2.out.find("\"cutoff\": 10") != std::string::npos);
}

TEST_CASE("timing is opt-in so default reports stay deterministic") {
    Result plain = run("run builtin:cascade-fock-phi+ --format json");
    CHECK(plain.out.find("wall_time_ms") == std::string::npos);
    Result timed = run("run builtin:cascade-fock-phi+ --format json --timing");
    CHECK(timed.out.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("verify passes clean and fails under an injected fault") {
    Result ok = run("verify");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    Result filtered = run("verify --filter parity");
    CHECK(filtered.code == 0);
    CHECK(filtered.out.find("coherent-overlap") == std::string::npos);

    Result broken = run("verify --inject-fault parity-sign");
    CHECK(broken.code == 2);
    CHECK(broken.out.find("FAIL") != std::string::npos);
}

TEST_CASE("list names every builtin") {
    Result r = run("list");
    CHECK(r.code == 0);
    CHECK(r.out.find("cascade-coherent-phi+\n") != std::string::npos);
    CHECK(r.out.find("swap-lambda-fock\n") != std::string::npos);
}

TEST_CASE("alpha flag reshapes coherent builtins") {
    Result r = run("run builtin:swap-cascade-coherent --alpha 2 --format csv");
    CHECK(r.code == 0);
    // 8 branches with per-branch labels
    int rows = -1;
    for (char c : r.out) rows += (c == '\n');
    CHECK(rows == 8);
    CHECK(r.out.find("phi+") != std::string::npos);
    CHECK(r.out.find("psi-") != std::string::npos);
}
