#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string bin() {
    const char* b = std::getenv("COURANT_VERIFY_BIN");
    return b ? b : "./courant-verify";
}

std::string models() {
    const char* d = std::getenv("COURANT_MODELS_DIR");
    return d ? d : "models";
}

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = bin() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int rc = pclose(p);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

} // namespace

TEST_CASE("check-courant exits 0 on a passing model") {
    auto r = run("check-courant " + models() + "/standard_r1.model");
    CAPTURE(r.out);
    CHECK(r.status == 0);
    CHECK(r.out.find("PASS jacobi") != std::string::npos);
}

TEST_CASE("check-courant exits 1 with a Jacobiator witness on so3_broken") {
    auto r = run("check-courant " + models() + "/so3_broken.model");
    CAPTURE(r.out);
    CHECK(r.status == 1);
    CHECK(r.out.find("FAIL jacobi") != std::string::npos);
    CHECK(r.out.find("e1") != std::string::npos);
    CHECK(r.out.find("e2") != std::string::npos);
    CHECK(r.out.find("e3") != std::string::npos);
}

TEST_CASE("cme on the so(3) point model reports the exact bracket") {
    auto r = run("cme " + models() + "/so3_point.model");
    CAPTURE(r.out);
    CHECK(r.status == 0);
    CHECK(r.out.find("{S,S} = 0 (exact)") != std::string::npos);
}

TEST_CASE("machine reports are byte identical across runs and job counts") {
    std::string args = "examples run --format machine --seed 7 --models-dir " + models();
    auto a = run(args + " --jobs 1");
    auto b = run(args + " --jobs 4");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("courant-report 1\n") == 0);
    CHECK(a.out.find("seed 7") != std::string::npos);
    CHECK(a.out.rfind("result pass\n") == a.out.size() - 12);
    CHECK(a.out.find("\n") != std::string::npos);
    // timing never leaks into the machine format
    CHECK(a.out.find("s)") == std::string::npos);
}

TEST_CASE("extension and reduction suites run from model files") {
    CHECK(run("extend " + models() + "/hyperbolic_lift.model").status == 0);
    auto bad = run("extend " + models() + "/lift_noncoisotropic.model");
    CAPTURE(bad.out);
    CHECK(bad.status == 1);
    CHECK(bad.out.find("coisotropy") != std::string::npos);
    CHECK(run("reduce " + models() + "/complexified_c1_reduce.model --order 3").status == 0);
}

TEST_CASE("bcov-equiv and cy-check run without a model file") {
    auto r = run("bcov-equiv --dim 1 --order 3");
    CAPTURE(r.out);
    CHECK(r.status == 0);
    CHECK(run("cy-check --dim 1 --order 2").status == 0);
}

TEST_CASE("bad usage and bad files exit with distinct codes") {
    CHECK(run("frobnicate").status == 2);
    CHECK(run("check-courant --walk").status == 2);
    CHECK(run("check-courant " + models() + "/standard_r1.model --format yaml").status == 2);
    auto diag = run("check-courant " + models() + "/bad_pairing.model");
    CAPTURE(diag.out);
    CHECK(diag.status == 3);
    CHECK(diag.out.find("pairing witness") != std::string::npos);
    auto unres = run("check-courant " + models() + "/bad_unresolved.model");
    CHECK(unres.status == 3);
    CHECK(unres.out.find("unresolved reference") != std::string::npos);
}

TEST_CASE("examples list names every shipped fixture") {
    auto r = run("examples list --models-dir " + models());
    CHECK(r.status == 0);
    CHECK(r.out.find("standard_r1.model check-courant pass") != std::string::npos);
    CHECK(r.out.find("so3_broken.model check-courant fail") != std::string::npos);
}
