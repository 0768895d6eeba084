// Copyright 2026 The wikitc Authors.
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/test_support.h"
#include "wikitc/cli.h"

namespace wikitc {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("wikitc_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

// A directory holding the synthetic corpus, its knowledge base and a
// config file with the given extra lines.
struct Workspace {
  fs::path dir;
  fs::path config;
};

Workspace make_workspace(const std::string &name, const std::string &extra) {
  Workspace ws{scratch_dir(name), {}};
  auto corpus = testing::make_synthetic_corpus(1);
  write(ws.dir / "corpus.tsv", write_tsv_corpus(corpus.docs));
  write(ws.dir / "kb.tsv", write_kb_dump(corpus.kb));
  ws.config = ws.dir / "run.conf";
  write(ws.config,
        "# synthetic run\n"
        "dataset = custom\n"
        "corpus = corpus.tsv\n"
        "kb = kb.tsv\n"
        "mode = single\n"
        "seed = 3\n"
        "out = out\n" +
            extra);
  return ws;
}

int run_cli(const std::string &args) {
  std::string cmd = std::string(WIKITC_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_CASE("minimal config") {
  fs::path dir = scratch_dir("minimal");
  write(dir / "c.tsv", "");
  ExperimentConfig cfg = parse_config("dataset = custom\ncorpus = c.tsv\n", dir.string());
  CHECK(cfg.preset == named_preset("baseline"));
  CHECK(cfg.corpus == (dir / "c.tsv").string());
  CHECK(cfg.out == (dir / "wikitc-run").string());
  CHECK(cfg.eval == EvalMode::kCrossValidation);
  CHECK(cfg.folds == 4);
  CHECK(cfg.min_rank == 5);
  CHECK(cfg.svm.c == 1.0);
}

TEST_CASE("config errors") {
  fs::path dir = scratch_dir("errors");
  write(dir / "c.tsv", "");
  const std::string base = "dataset = custom\ncorpus = c.tsv\n";
  auto error_of = [&](const std::string &text) -> std::string {
    try {
      parse_config(text, dir.string());
    } catch (const ConfigError &e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of(base + "foo = 1\n").find("foo") != std::string::npos);
  CHECK(error_of(base + "seed = 1\nseed = 2\n").find("duplicate") != std::string::npos);
  CHECK(error_of(base + "preset = A4\n").find("kb") != std::string::npos);
  CHECK(error_of(base + "representation = T2\n").find("gazetteer") != std::string::npos);
  CHECK(error_of(base + "kb = missing.tsv\n").find("missing.tsv") != std::string::npos);
  CHECK(error_of(base + "folds = 1\n") != "");
  CHECK(error_of(base + "svm.c = 0\n") != "");
  CHECK(error_of(base + "mode = both\n") != "");
  CHECK(error_of(base + "seed = -4\n") != "");
  CHECK(error_of(base + "e1 = perhaps\n") != "");
  CHECK(error_of("corpus = c.tsv\n").find("dataset") != std::string::npos);
  CHECK(error_of(base + "just words\n") != "");
}

TEST_CASE("presets resolve and overrides apply on top") {
  fs::path dir = scratch_dir("presets");
  write(dir / "c.tsv", "");
  write(dir / "kb.tsv", "");
  const std::string base = "dataset = custom\ncorpus = c.tsv\nkb = kb.tsv\n";
  ExperimentConfig a4 = parse_config(base + "preset = A4\n", dir.string());
  CHECK(a4.preset.representation == Representation::kT1);
  CHECK(a4.preset.use_e2);
  CHECK_FALSE(a4.preset.use_e1);
  CHECK(a4.preset.k == 20);
  CHECK(a4.preset.include_linked);
  CHECK(a4.preset.apply_e4);
  CHECK(a4.preset.apply_e5);

  ExperimentConfig custom =
      parse_config(base + "preset = custom\ne1 = true\nk = 7\ne4 = false\n", dir.string());
  CHECK(custom.preset.name == "custom");
  CHECK(custom.preset.use_e1);
  CHECK(custom.preset.k == 7);
  CHECK_FALSE(custom.preset.apply_e4);

  ExperimentConfig news = parse_config("dataset = news20\ncorpus = .\n", dir.string());
  CHECK(news.mode == PredictMode::kSingleLabel);
  CHECK(news.eval == EvalMode::kCrossValidation);
  ExperimentConfig reuters = parse_config("dataset = reuters10\ncorpus = .\n", dir.string());
  CHECK(reuters.mode == PredictMode::kMultiLabel);
  CHECK(reuters.eval == EvalMode::kFixedSplit);
}

TEST_CASE("snapshot round trip") {
  Workspace ws = make_workspace("snapshot",
                                "preset = A3\ntitle_term = usa\nmin_rank = 4\nsvm.c = 0.5\n"
                                "svm.tolerance = 1e-5\nfolds = 3\nthreads = 2\n");
  ExperimentConfig cfg = load_config(ws.config.string());
  std::string snap = config_snapshot(cfg);
  ExperimentConfig back = parse_config(snap, "/");
  CHECK(back == cfg);
  CHECK(config_snapshot(back) == snap);
}

std::string slurp(const fs::path &p) { return read_file(p.string()); }

TEST_CASE("run on the synthetic corpus") {
  Workspace ws = make_workspace("run", "preset = A4\ndump_models = true\nthreads = 2\n");
  ExperimentConfig cfg = load_config(ws.config.string());
  RunResult run = run_experiment(cfg);
  CHECK(run.run_name == "A4");
  REQUIRE(run.baseline.has_value());
  CHECK(run.result.reports().size() == 4);
  CHECK(run.result.macro_f.mean > run.baseline->macro_f.mean);

  fs::path out = ws.dir / "out";
  CHECK(fs::exists(out / "metrics.tsv"));
  CHECK(fs::exists(out / "improvement.tsv"));
  CHECK(fs::exists(out / "manifest.txt"));
  CHECK(fs::exists(out / "models" / "A4" / "fold1" / "vocabulary.tsv"));
  std::string metrics = slurp(out / "metrics.tsv");
  CHECK(metrics.rfind("run\tfold\t", 0) == 0);
  CHECK(metrics.find("\nbaseline\tmean\t") != std::string::npos);
  CHECK(metrics.find("\nA4\tmean\t") != std::string::npos);
  std::string improvement = slurp(out / "improvement.tsv");
  CHECK(improvement.find("\nbaseline\t") != std::string::npos);
  CHECK(improvement.find("\nA4\t") != std::string::npos);

  // The manifest is a config file whose comments carry the checksums.
  std::string manifest = slurp(out / "manifest.txt");
  CHECK(manifest.find("# sha256\tcorpus\t" + sha256_path((ws.dir / "corpus.tsv").string())) !=
        std::string::npos);
  CHECK(parse_config(manifest, "/") == cfg);

  // Identical inputs give byte-identical reports.
  std::string first_improvement = improvement;
  fs::remove_all(out);
  run_experiment(cfg);
  CHECK(slurp(out / "metrics.tsv") == metrics);
  CHECK(slurp(out / "improvement.tsv") == first_improvement);
  CHECK(read_metric_means(metrics).size() == 2);
  CHECK(report_from_metrics({metrics}, "baseline") == first_improvement);
}

TEST_CASE("baseline run on a separable corpus") {
  fs::path dir = scratch_dir("separable");
  std::vector<RawDocument> docs;
  for (int i = 0; i < 40; ++i) {
    RawDocument d;
    d.id = std::to_string(i);
    d.labels = {i % 2 ? "odd" : "even"};
    d.body = std::string(i % 2 ? "lantern harbor" : "granite meadow") + " report " +
             std::to_string(i);
    docs.push_back(d);
  }
  write(dir / "corpus.tsv", write_tsv_corpus(docs));
  write(dir / "run.conf", "dataset = custom\ncorpus = corpus.tsv\nout = out\n");
  RunResult run = run_experiment(load_config((dir / "run.conf").string()));
  CHECK(run.result.micro_f.mean == 1.0);
  CHECK_FALSE(run.baseline.has_value());
}

TEST_CASE("stage errors name the stage") {
  fs::path dir = scratch_dir("stage");
  write(dir / "corpus.tsv", "not\ta valid corpus line\n");
  write(dir / "run.conf", "dataset = custom\ncorpus = corpus.tsv\nout = out\n");
  try {
    run_experiment(load_config((dir / "run.conf").string()));
    FAIL("expected a stage error");
  } catch (const StageError &e) {
    CHECK(e.stage() == "load");
  }
}

TEST_CASE("checksums") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  fs::path dir = scratch_dir("sha");
  write(dir / "a.txt", "abc");
  CHECK(sha256_path((dir / "a.txt").string()) == sha256_hex("abc"));
  std::string before = sha256_path(dir.string());
  write(dir / "b.txt", "x");
  CHECK(sha256_path(dir.string()) != before);
}

TEST_CASE("command-line exit codes") {
  Workspace ws = make_workspace("binary", "preset = A1\ncompare_baseline = false\n");
  const std::string conf = ws.config.string();
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("") != 0);
  CHECK(run_cli("frobnicate") != 0);
  CHECK(run_cli("run --config " + conf) == 0);
  CHECK(fs::exists(ws.dir / "out" / "metrics.tsv"));
  CHECK(run_cli("run --config " + conf + " --preset A9") == 1);
  CHECK(run_cli("run --config /nonexistent.conf") != 0);
  CHECK(run_cli("index build --dump " + (ws.dir / "kb.tsv").string() + " --out " +
                (ws.dir / "index").string()) == 0);
  CHECK(fs::exists(ws.dir / "index" / "index_stats.tsv"));
  CHECK(run_cli("index search --dump " + (ws.dir / "kb.tsv").string() +
                " --query 'contents:x -pageRank:[1 TO 5]'") == 0);
  CHECK(run_cli("index search --dump " + (ws.dir / "kb.tsv").string() + " --query nocolon") == 1);
  auto corpus = testing::make_synthetic_corpus(1);
  CHECK(run_cli("enrich preview --config " + conf + " --doc-id " + corpus.docs[0].id) == 0);
  CHECK(run_cli("enrich preview --config " + conf + " --doc-id no-such-doc") == 1);
  CHECK(run_cli("report " + (ws.dir / "out" / "metrics.tsv").string() + " --baseline A1") == 0);
  CHECK(run_cli("report " + (ws.dir / "out" / "metrics.tsv").string()) == 1);
}

TEST_CASE("enrichment preview") {
  Workspace ws = make_workspace("preview", "preset = A4\n");
  ExperimentConfig cfg = load_config(ws.config.string());
  auto corpus = testing::make_synthetic_corpus(1);
  std::string text = preview_enrichment(cfg, corpus.docs[0].id);
  CHECK(text.rfind("document\t" + corpus.docs[0].id + "\n", 0) == 0);
  CHECK(text.find("\nquery\t") != std::string::npos);
  CHECK(text.find("\nknowledge\t") != std::string::npos);
}

}  // namespace
}  // namespace wikitc
