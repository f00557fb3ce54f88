/*
Copyright 2026 The pramcheck Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Runs the pramcheck binary and checks exit codes and output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PRAMCHECK_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Runs without merging stderr, for JSON on stdout.
Run run_stdout(const std::string& args) {
  const std::string cmd =
      std::string(PRAMCHECK_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("pramcheck_cli_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text = "") {
    const fs::path p = path_ / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& name) {
  return std::string(PRAMCHECK_TESTDATA_DIR) + "/" + name;
}

const char* kFifo = "p1 W x 1\np1 W x 2\np0 R x 2\np0 R x 1\n";

}  // namespace

TEST_CASE("verify: FIFO violation") {
  TempDir dir;
  const std::string trace = dir.file("fifo.trace", kFifo);
  const Run r = run("verify " + trace + " --focus p0");
  CHECK(r.code == 1);
  CHECK(r.out.find("p1 W x 1") != std::string::npos);
  CHECK(r.out.find("p1 W x 2") != std::string::npos);
  CHECK(r.out.find("INCONSISTENT") != std::string::npos);
}

TEST_CASE("verify: JSON report") {
  TempDir dir;
  const std::string trace = dir.file("fifo.trace", kFifo);
  const std::string witness = dir.file("w");
  const Run r = run_stdout("verify " + trace + " --all --json --witness-out " +
                           witness);
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["consistent"] == false);
  CHECK(j["variant"] == "SU");
  CHECK(j["n"] == 4);
  REQUIRE(j["per_process"].size() == 2);
  const auto& p1 = j["per_process"][0];
  CHECK(p1["focus"] == "p1");
  CHECK(p1["algorithm"] == "read-centric");
  CHECK(p1["verdict"] == "consistent");
  REQUIRE(p1.contains("witness_file"));
  CHECK(slurp(p1["witness_file"].get<std::string>()).size() > 0);
  const auto& p0 = j["per_process"][1];
  CHECK(p0["verdict"] == "inconsistent");
  CHECK(p0["cycle"].size() == 3);
  CHECK_FALSE(p0.contains("witness_file"));
}

TEST_CASE("verify: the closure example schedule and cascade trace") {
  CHECK(run("check-schedule " + data("closure_cascade.trace") + " " +
            data("closure_cascade.sched"))
            .out.find("LEGAL") == 0);
  for (const char* algo : {"rw-closure", "read-centric", "oracle"}) {
    const Run r = run("verify " + data("closure_cascade.trace") +
                      " --focus p0 --algorithm " + algo);
    CHECK(r.code == 0);
    const Run bad = run("verify " + data("topo_cycle.trace") +
                        " --focus p0 --algorithm " + algo);
    CHECK(bad.code == 1);
  }
}

TEST_CASE("check-schedule: illegal order and focus witness") {
  TempDir dir;
  const std::string trace = dir.file("fifo.trace", kFifo);
  const Run bad = run("check-schedule " + trace + " " +
                      dir.file("s", "0\n1\n3\n2\n"));
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("ILLEGAL:", 0) == 0);
  const std::string ok = dir.file("ok.trace", "p1 W x 1\np1 W x 2\np0 R x 1\n");
  CHECK(run("check-schedule " + ok + " " + dir.file("s2", "0\n2\n1\n") +
            " --focus p0")
            .code == 0);
  // Program order of p1 broken.
  CHECK(run("check-schedule " + ok + " " + dir.file("s3", "1\n0\n2\n") +
            " --focus p0")
            .code == 1);
}

TEST_CASE("reduce, then verify with the oracle") {
  TempDir dir;
  const std::string trace = dir.file("red.trace");
  const std::string witness = dir.file("red.sched");
  REQUIRE(run("reduce --m 2 --B 7 --sizes 3,3,2,2,2,2 -o " + trace +
              " --with-witness " + witness)
              .code == 0);
  CHECK(run("check-schedule " + trace + " " + witness + " --focus P0").code ==
        0);
  const Run v = run("verify " + trace + " --focus P0 --algorithm oracle");
  CHECK(v.code == 0);
  CHECK(v.out.find("CONSISTENT") != std::string::npos);
}

TEST_CASE("reduce: invalid instance") {
  const Run r = run("reduce --m 1 --B 4 --sizes 1,1,2");
  CHECK(r.code == 64);
  CHECK(r.out.find("B/4") != std::string::npos);
}

TEST_CASE("gen then verify") {
  TempDir dir;
  const std::string trace = dir.file("g.trace");
  REQUIRE(run("gen --seed 11 --processes 4 --vars 3 --ops 80 -o " + trace)
              .code == 0);
  CHECK(run("verify " + trace + " --all").code == 0);
  CHECK(run("verify " + trace + " --all --algorithm rw-closure").code == 0);
  const std::string dup = dir.file("d.trace");
  REQUIRE(run("gen --seed 3 --ops 10 --policy duplicate -o " + dup).code == 0);
  const Run j = run_stdout("verify " + dup + " --all --json");
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["per_process"][0]["algorithm"] ==
        "oracle");
}

TEST_CASE("mutate") {
  TempDir dir;
  const std::string trace =
      dir.file("t", "p1 W x 1\np1 W x 2\np0 R x 1\np0 R x 2\n");
  const std::string out = dir.file("m");
  REQUIRE(run("mutate " + trace + " --seed 1 --kind reorder-reads -o " + out)
              .code == 0);
  CHECK(slurp(out) == kFifo);
  CHECK(run("mutate " + dir.file("w", "p1 W x 1\n") +
            " --seed 1 --kind reorder-reads")
            .code == 64);
}

TEST_CASE("timeouts have their own exit code") {
  TempDir dir;
  const std::string trace =
      dir.file("t", "p1 W x 1\np2 W x 2\np0 R x 2\np0 R x 1\n");
  const Run r = run_stdout("verify " + trace +
                           " --focus p0 --algorithm oracle --budget 1 --json");
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.out)["consistent"].is_null());
}

TEST_CASE("usage errors") {
  TempDir dir;
  const std::string trace = dir.file("fifo.trace", kFifo);
  CHECK(run("verify " + trace).code == 64);
  CHECK(run("verify " + trace + " --focus p0 --all").code == 64);
  CHECK(run("verify " + trace + " --focus nobody").code == 64);
  CHECK(run("verify " + dir.file("missing")).code == 64);
  CHECK(run("verify " + dir.file("bad", "p1 W x\n") + " --all").code == 64);
  CHECK(run("verify " + trace + " --focus p0 --algorithm fast").code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("--help").code == 0);
  const std::string dup = dir.file("dup", "p1 W x 1\np2 W x 1\np0 R x 1\n");
  CHECK(run("verify " + dup + " --all --algorithm read-centric").code == 64);
}

TEST_CASE("dump-graph writes edges") {
  TempDir dir;
  const std::string trace = dir.file("fifo.trace", kFifo);
  const std::string dump = dir.file("g.txt");
  run("verify " + trace + " --focus p0 --algorithm rw-closure --dump-graph " +
      dump);
  const std::string text = slurp(dump);
  CHECK(text.find("0 1 PO") != std::string::npos);
  CHECK(text.find("WpW") != std::string::npos);
}
