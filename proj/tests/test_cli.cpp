// Copyright 2026 The PAAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, bool has_env_prefix = false) {
    const std::string cmd =
        (has_env_prefix ? args.substr(0, args.find(' ') + 1) : ""s) + "\"" + PAAS_BIN + "\" " +
        (has_env_prefix ? args.substr(args.find(' ') + 1) : args) + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("paas_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& rel = "") const { return (path / rel).string(); }
};

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("no subcommand fails") {
    const RunResult r = run("");
    CHECK(r.status != 0);
}

TEST_CASE("synth writes a dataset and reports split counts") {
    TempDir tmp("synth");
    const RunResult r =
        run("synth --pack default --out " + tmp.str("d") + " --count 4 --width 16 --height 16 --seed 3");
    CAPTURE(r.output);
    REQUIRE(r.status == 0);
    CHECK(contains(r.output, "manifest"));
    CHECK(contains(r.output, "genuine"));
    CHECK(fs::exists(tmp.path / "d" / "manifest.jsonl"));
    CHECK(fs::exists(tmp.path / "d" / "genuine_0000_mosaic.pgm"));
    CHECK(fs::exists(tmp.path / "d" / "screen_0003_dolp.pfm"));
}

TEST_CASE("synth is byte-identical across reruns with one seed") {
    TempDir tmp("det");
    const std::string args = " --pack confusable --count 3 --width 16 --height 16 --seed 11 --out ";
    REQUIRE(run("synth" + args + tmp.str("a")).status == 0);
    REQUIRE(run("synth" + args + tmp.str("b")).status == 0);
    for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
        CAPTURE(entry.path().filename().string());
        CHECK(file_bytes(entry.path()) == file_bytes(tmp.path / "b" / entry.path().filename()));
    }
}

TEST_CASE("dolp on a synthesized mosaic recovers a plausible mean") {
    TempDir tmp("dolp");
    REQUIRE(run("synth --pack default --out " + tmp.str("d") +
                " --count 1 --width 32 --height 32 --seed 7")
                .status == 0);
    const RunResult r = run("dolp --input " + tmp.str("d/screen_0000_mosaic.pgm") + " --out " +
                            tmp.str("out.pfm"));
    CAPTURE(r.output);
    REQUIRE(r.status == 0);
    CHECK(contains(r.output, "dolp min"));
    CHECK(fs::exists(tmp.path / "out.pfm"));
    // The screen profile is strongly polarized, so the mean is large.
    const auto pos = r.output.find("mean ");
    REQUIRE(pos != std::string::npos);
    const double mean = std::stod(r.output.substr(pos + 5));
    CHECK(mean > 0.5);
    CHECK(mean <= 1.0);
}

TEST_CASE("dolp accepts nearest demosaicing and the alternate DOLP mode") {
    TempDir tmp("modes");
    REQUIRE(run("synth --pack default --out " + tmp.str("d") +
                " --count 1 --width 16 --height 16 --seed 7")
                .status == 0);
    const RunResult r = run("dolp --input " + tmp.str("d/genuine_0000_mosaic.pgm") +
                            " --method nearest --dolp-mode paper");
    CAPTURE(r.output);
    CHECK(r.status == 0);
    CHECK(contains(r.output, "dolp min"));
}

TEST_CASE("missing inputs and malformed files produce clean errors") {
    TempDir tmp("err");

    RunResult r = run("dolp");
    CHECK(r.status != 0);  // --input is required

    r = run("dolp --input " + tmp.str("nope.pgm"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));

    std::ofstream(tmp.str("junk.pgm"), std::ios::binary) << "P5 garbage";
    r = run("dolp --input " + tmp.str("junk.pgm"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));

    r = run("synth --config " + tmp.str("missing.json") + " --out " + tmp.str("x"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));

    r = run("synth --pack bogus --out " + tmp.str("y"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));

    r = run("train --manifest " + tmp.str("missing.jsonl"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));
}

TEST_CASE("train then eval produces checkpoints and a stable report") {
    TempDir tmp("flow");
    REQUIRE(run("synth --pack confusable --out " + tmp.str("d") +
                " --count 6 --width 32 --height 32 --seed 5")
                .status == 0);

    const RunResult tr = run("train --manifest " + tmp.str("d/manifest.jsonl") + " --out " +
                             tmp.str("m") + " --epochs 2 --seed 9");
    CAPTURE(tr.output);
    REQUIRE(tr.status == 0);
    CHECK(fs::exists(tmp.path / "m" / "embed.ckpt"));
    CHECK(fs::exists(tmp.path / "m" / "svm.ckpt"));
    const std::string loss = file_bytes(tmp.path / "m" / "loss.csv");
    CHECK(contains(loss, "epoch,loss"));

    const std::string eval_args = "eval --manifest " + tmp.str("d/manifest.jsonl") + " --models " +
                                  tmp.str("m") + " --methods mean,paas --channel dolp --out ";
    const RunResult ev = run(eval_args + tmp.str("r1"));
    CAPTURE(ev.output);
    REQUIRE(ev.status == 0);
    const std::string report = file_bytes(tmp.path / "r1" / "report.csv");
    CHECK(contains(report, "channel,method,eer,tpr_at_1e2,tpr_at_1e3"));
    CHECK(contains(report, "dolp,mean,"));
    CHECK(contains(report, "dolp,paas,"));
    CHECK(fs::exists(tmp.path / "r1" / "roc_paas_dolp.csv"));
    CHECK(fs::exists(tmp.path / "r1" / "roc_mean_dolp.csv"));

    // A rerun with a worker pool must stay byte-identical.
    REQUIRE(run("PAAS_THREADS=4 " + eval_args + tmp.str("r2"), true).status == 0);
    CHECK(report == file_bytes(tmp.path / "r2" / "report.csv"));
}

TEST_CASE("eval without checkpoints fails only when the learned method is requested") {
    TempDir tmp("nockpt");
    REQUIRE(run("synth --pack confusable --out " + tmp.str("d") +
                " --count 4 --width 16 --height 16 --seed 2")
                .status == 0);

    RunResult r = run("eval --manifest " + tmp.str("d/manifest.jsonl") + " --models " +
                      tmp.str("none") + " --methods paas --out " + tmp.str("r"));
    CHECK(r.status == 1);
    CHECK(contains(r.output, "error:"));

    r = run("eval --manifest " + tmp.str("d/manifest.jsonl") + " --models " + tmp.str("none") +
            " --methods mean,std,kurtosis --out " + tmp.str("r"));
    CAPTURE(r.output);
    CHECK(r.status == 0);
}
