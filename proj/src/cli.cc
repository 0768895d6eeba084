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

#include "wikitc/cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "wikitc/kbindex.h"
#include "wikitc/textproc.h"

#ifndef WIKITC_VERSION
#define WIKITC_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace wikitc {

const char *const kVersion = WIKITC_VERSION;

const char *dataset_name(Dataset d) {
  switch (d) {
    case Dataset::kReuters10: return "reuters10";
    case Dataset::kReuters90: return "reuters90";
    case Dataset::kNews20: return "news20";
    case Dataset::kCustom: return "custom";
  }
  return "custom";
}

namespace {

const std::vector<std::string> kKeys = {
    "dataset", "corpus", "kb", "stoplist", "gazetteer", "lexicon",
    "preset", "representation", "e1", "e2", "e3", "e4", "e5", "k", "linked",
    "title_term", "min_rank", "svm.c", "svm.tolerance", "svm.max_epochs",
    "mode", "eval", "folds", "seed", "threads", "out", "dump_models",
    "compare_baseline"};

bool parse_bool(const std::string &key, const std::string &v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

template <typename T>
T parse_integer(const std::string &key, const std::string &v) {
  T value{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return value;
}

double parse_real(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return value;
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

void require_exists(const std::string &key, const std::string &path) {
  if (!path.empty() && !fs::exists(path)) {
    throw ConfigError(key + ": path does not exist: " + path);
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string &base_dir) {
  std::map<std::string, std::string> values;
  std::vector<std::string> unknown;
  std::size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      unknown.push_back(key);
      continue;
    }
    if (!values.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
  }
  if (!unknown.empty()) {
    throw ConfigError("unknown config keys: " + join(unknown, ", "));
  }
  auto get = [&](const std::string &key) -> const std::string * {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  for (const char *key : {"dataset", "corpus"}) {
    if (!get(key)) throw ConfigError(std::string("missing required key '") + key + "'");
  }

  ExperimentConfig cfg;
  const std::string &ds = *get("dataset");
  if (ds == "reuters10") cfg.dataset = Dataset::kReuters10;
  else if (ds == "reuters90") cfg.dataset = Dataset::kReuters90;
  else if (ds == "news20") cfg.dataset = Dataset::kNews20;
  else if (ds == "custom") cfg.dataset = Dataset::kCustom;
  else throw ConfigError("dataset: expected reuters10, reuters90, news20 or custom, got '" + ds + "'");
  const bool reuters =
      cfg.dataset == Dataset::kReuters10 || cfg.dataset == Dataset::kReuters90;
  cfg.mode = cfg.dataset == Dataset::kNews20 ? PredictMode::kSingleLabel
                                             : PredictMode::kMultiLabel;
  cfg.eval = reuters ? EvalMode::kFixedSplit : EvalMode::kCrossValidation;

  cfg.corpus = resolve(base_dir, *get("corpus"));
  if (auto v = get("kb")) cfg.kb = resolve(base_dir, *v);
  if (auto v = get("stoplist")) cfg.stoplist = resolve(base_dir, *v);
  if (auto v = get("gazetteer")) cfg.gazetteer = resolve(base_dir, *v);
  if (auto v = get("lexicon")) cfg.lexicon = resolve(base_dir, *v);
  cfg.out = resolve(base_dir, get("out") ? *get("out") : "wikitc-run");

  std::string preset_name = get("preset") ? *get("preset") : "baseline";
  if (preset_name == "custom") {
    cfg.preset = named_preset("baseline");
    cfg.preset.name = "custom";
  } else {
    cfg.preset = named_preset(preset_name);
  }
  if (auto v = get("representation")) {
    try {
      cfg.preset.representation = parse_representation(*v);
    } catch (const std::exception &e) {
      throw ConfigError(std::string("representation: ") + e.what());
    }
  }
  if (auto v = get("e1")) cfg.preset.use_e1 = parse_bool("e1", *v);
  if (auto v = get("e2")) cfg.preset.use_e2 = parse_bool("e2", *v);
  if (auto v = get("e3")) cfg.preset.use_e3 = parse_bool("e3", *v);
  if (auto v = get("e4")) cfg.preset.apply_e4 = parse_bool("e4", *v);
  if (auto v = get("e5")) cfg.preset.apply_e5 = parse_bool("e5", *v);
  if (auto v = get("k")) cfg.preset.k = parse_integer<std::size_t>("k", *v);
  if (auto v = get("linked")) cfg.preset.include_linked = parse_bool("linked", *v);
  validate_preset(cfg.preset);

  if (auto v = get("title_term"); v && !v->empty()) cfg.title_term = *v;
  if (auto v = get("min_rank")) cfg.min_rank = parse_integer<std::int64_t>("min_rank", *v);
  if (auto v = get("svm.c")) cfg.svm.c = parse_real("svm.c", *v);
  if (auto v = get("svm.tolerance")) cfg.svm.tolerance = parse_real("svm.tolerance", *v);
  if (auto v = get("svm.max_epochs")) cfg.svm.max_epochs = parse_integer<int>("svm.max_epochs", *v);
  if (!(cfg.svm.c > 0.0)) throw ConfigError("svm.c must be positive");
  if (!(cfg.svm.tolerance > 0.0)) throw ConfigError("svm.tolerance must be positive");
  if (cfg.svm.max_epochs < 1) throw ConfigError("svm.max_epochs must be >= 1");
  if (auto v = get("mode")) {
    if (*v == "multi") cfg.mode = PredictMode::kMultiLabel;
    else if (*v == "single") cfg.mode = PredictMode::kSingleLabel;
    else throw ConfigError("mode: expected multi or single, got '" + *v + "'");
  }
  if (auto v = get("eval")) {
    if (*v == "cv") cfg.eval = EvalMode::kCrossValidation;
    else if (*v == "fixed") cfg.eval = EvalMode::kFixedSplit;
    else throw ConfigError("eval: expected cv or fixed, got '" + *v + "'");
  }
  if (auto v = get("folds")) cfg.folds = parse_integer<int>("folds", *v);
  if (cfg.folds < 2) throw ConfigError("folds must be >= 2");
  if (auto v = get("seed")) cfg.seed = parse_integer<std::uint64_t>("seed", *v);
  cfg.svm.seed = cfg.seed;
  if (auto v = get("threads")) cfg.threads = parse_integer<unsigned>("threads", *v);
  if (auto v = get("dump_models")) cfg.dump_models = parse_bool("dump_models", *v);
  if (auto v = get("compare_baseline")) cfg.compare_baseline = parse_bool("compare_baseline", *v);

  require_exists("corpus", cfg.corpus);
  require_exists("kb", cfg.kb);
  require_exists("stoplist", cfg.stoplist);
  require_exists("gazetteer", cfg.gazetteer);
  require_exists("lexicon", cfg.lexicon);
  if (!cfg.preset.is_baseline() && cfg.kb.empty()) {
    throw ConfigError("missing required key 'kb' (preset " + cfg.preset.name +
                      " enriches from the knowledge base)");
  }
  if ((cfg.preset.representation == Representation::kT2 ||
       cfg.preset.representation == Representation::kT4) &&
      cfg.gazetteer.empty()) {
    throw ConfigError(std::string("representation ") +
                      representation_name(cfg.preset.representation) +
                      " needs a gazetteer");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string &path) {
  std::string text = read_file(path);
  std::string base = fs::absolute(path).parent_path().string();
  return parse_config(text, base);
}

std::string config_snapshot(const ExperimentConfig &cfg) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "dataset = " << dataset_name(cfg.dataset) << '\n'
      << "corpus = " << cfg.corpus << '\n';
  if (!cfg.kb.empty()) out << "kb = " << cfg.kb << '\n';
  if (!cfg.stoplist.empty()) out << "stoplist = " << cfg.stoplist << '\n';
  if (!cfg.gazetteer.empty()) out << "gazetteer = " << cfg.gazetteer << '\n';
  if (!cfg.lexicon.empty()) out << "lexicon = " << cfg.lexicon << '\n';
  out << "preset = " << cfg.preset.name << '\n'
      << "representation = " << representation_name(cfg.preset.representation) << '\n'
      << "e1 = " << b(cfg.preset.use_e1) << '\n'
      << "e2 = " << b(cfg.preset.use_e2) << '\n'
      << "e3 = " << b(cfg.preset.use_e3) << '\n'
      << "e4 = " << b(cfg.preset.apply_e4) << '\n'
      << "e5 = " << b(cfg.preset.apply_e5) << '\n'
      << "k = " << cfg.preset.k << '\n'
      << "linked = " << b(cfg.preset.include_linked) << '\n';
  if (cfg.title_term) out << "title_term = " << *cfg.title_term << '\n';
  out << "min_rank = " << cfg.min_rank << '\n'
      << "svm.c = " << real_text(cfg.svm.c) << '\n'
      << "svm.tolerance = " << real_text(cfg.svm.tolerance) << '\n'
      << "svm.max_epochs = " << cfg.svm.max_epochs << '\n'
      << "mode = " << (cfg.mode == PredictMode::kSingleLabel ? "single" : "multi") << '\n'
      << "eval = " << (cfg.eval == EvalMode::kFixedSplit ? "fixed" : "cv") << '\n'
      << "folds = " << cfg.folds << '\n'
      << "seed = " << cfg.seed << '\n'
      << "threads = " << cfg.threads << '\n'
      << "out = " << cfg.out << '\n'
      << "dump_models = " << b(cfg.dump_models) << '\n'
      << "compare_baseline = " << b(cfg.compare_baseline) << '\n';
  return out.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_path(const std::string &path) {
  if (!fs::is_directory(path)) return sha256_hex(read_file(path));
  std::vector<std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(path)) {
    if (entry.is_regular_file()) {
      files.push_back(fs::relative(entry.path(), path).generic_string());
    }
  }
  std::sort(files.begin(), files.end());
  std::string listing;
  for (const auto &f : files) {
    listing += f + '\t' + sha256_hex(read_file((fs::path(path) / f).string())) + '\n';
  }
  return sha256_hex(listing);
}

LoadedCorpus load_experiment_corpus(const ExperimentConfig &cfg) {
  Corpus corpus;
  switch (cfg.dataset) {
    case Dataset::kReuters10:
    case Dataset::kReuters90:
      corpus = fs::is_directory(cfg.corpus)
                   ? load_reuters_dir(cfg.corpus)
                   : load_reuters_sgml(read_file(cfg.corpus));
      std::erase_if(corpus.documents, [](const RawDocument &d) {
        return d.split_hint == SplitHint::kUnsplit;
      });
      break;
    case Dataset::kNews20:
      corpus = load_20newsgroups(cfg.corpus);
      break;
    case Dataset::kCustom:
      corpus = load_tsv_corpus(read_file(cfg.corpus));
      break;
  }
  LoadedCorpus out;
  out.warnings = std::move(corpus.warnings);
  if (cfg.dataset == Dataset::kReuters10) {
    out.categories =
        select_category_subset(corpus.documents, SubsetMode::kTopTen).categories;
  } else if (cfg.dataset == Dataset::kReuters90) {
    out.categories = select_category_subset(corpus.documents,
                                            SubsetMode::kAtLeastOneTrainOneTest)
                         .categories;
  } else {
    std::set<std::string> all;
    for (const auto &d : corpus.documents) all.insert(d.labels.begin(), d.labels.end());
    out.categories.assign(all.begin(), all.end());
  }
  out.documents = admit(corpus.documents, out.categories);
  if (out.documents.empty()) throw ConfigError("no admitted documents");
  return out;
}

namespace {

struct Resources {
  TextResources text;
  Index index;
};

Resources load_resources(const ExperimentConfig &cfg, bool need_index) {
  Resources r;
  if (!cfg.stoplist.empty()) {
    r.text.stoplist =
        std::make_shared<Stoplist>(parse_stoplist(read_file(cfg.stoplist)));
  } else {
    r.text.stoplist = std::make_shared<Stoplist>(default_stoplist());
  }
  if (!cfg.gazetteer.empty()) {
    r.text.tagger =
        std::make_shared<Gazetteer>(Gazetteer::parse(read_file(cfg.gazetteer)));
  }
  if (!cfg.lexicon.empty()) {
    r.text.nouns =
        std::make_shared<NounLexicon>(NounLexicon::parse(read_file(cfg.lexicon)));
  } else {
    r.text.nouns = std::make_shared<NounLexicon>();
  }
  if (need_index) r.index = Index::build(parse_kb_dump(read_file(cfg.kb)));
  return r;
}

E2Options e2_options(const ExperimentConfig &cfg) {
  E2Options o;
  o.title_term = cfg.title_term;
  o.min_rank = cfg.min_rank;
  return o;
}

std::vector<TaggedDocument> prepare_documents(const std::vector<RawDocument> &docs,
                                              const Preset &preset,
                                              const Resources &res,
                                              const E2Options &options,
                                              unsigned threads) {
  std::vector<TaggedDocument> out(docs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, docs.size()));
  std::vector<std::string> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < docs.size(); i += threads) {
        out[i] = apply_preset(docs[i], preset, res.index, res.text, options);
      }
    } catch (const std::exception &e) {
      errors[t] = e.what();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto &th : pool) th.join();
  for (const auto &e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return out;
}

CvResult evaluate_preset(const ExperimentConfig &cfg,
                         const std::vector<TaggedDocument> &docs,
                         const std::vector<RawDocument> &raw,
                         const std::vector<std::string> &categories) {
  PipelineConfig pipeline;
  pipeline.svm = cfg.svm;
  pipeline.mode = cfg.mode;
  pipeline.threads = cfg.threads;
  if (cfg.eval == EvalMode::kCrossValidation) {
    return run_cv(docs, categories, pipeline, cfg.folds, cfg.seed);
  }
  std::vector<TaggedDocument> train, test;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (raw[i].split_hint == SplitHint::kTrain) train.push_back(docs[i]);
    else if (raw[i].split_hint == SplitHint::kTest) test.push_back(docs[i]);
  }
  if (train.empty() || test.empty()) {
    throw ConfigError("fixed-split evaluation needs train and test documents");
  }
  return run_fixed_split(train, test, categories, pipeline);
}

std::string safe_file_name(std::string name) {
  for (char &c : name) {
    if (c == '/' || c == '\\' || c == ':' || static_cast<unsigned char>(c) < 0x20) c = '_';
  }
  return name;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed: " + path.string());
}

void dump_models(const fs::path &dir, const std::string &run, const CvResult &r) {
  for (std::size_t f = 0; f < r.folds.size(); ++f) {
    fs::path fold_dir = dir / safe_file_name(run) / ("fold" + std::to_string(f + 1));
    fs::create_directories(fold_dir);
    const auto &fold = r.folds[f];
    write_text(fold_dir / "vocabulary.tsv", fold.vocabulary.dump());
    for (std::size_t c = 0; c < fold.models.categories.size(); ++c) {
      write_text(fold_dir / (safe_file_name(fold.models.categories[c]) + ".model"),
                 write_model(fold.models.models[c]));
    }
  }
}

template <typename F>
auto timed(std::vector<StageTiming> &timings, const std::string &stage, F &&f) {
  auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    timings.push_back({stage, d.count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record();
    } else {
      auto value = f();
      record();
      return value;
    }
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig &cfg) {
  RunResult run;
  run.run_name = cfg.preset.name;
  auto &timings = run.timings;
  const bool enrich = !cfg.preset.is_baseline();
  const bool with_baseline = enrich && cfg.compare_baseline;

  LoadedCorpus corpus = timed(timings, "load", [&] { return load_experiment_corpus(cfg); });
  Resources res = timed(timings, "resources", [&] { return load_resources(cfg, enrich); });
  const E2Options options = e2_options(cfg);

  auto docs = timed(timings, "represent+enrich", [&] {
    return prepare_documents(corpus.documents, cfg.preset, res, options, cfg.threads);
  });
  run.result = timed(timings, "train+evaluate", [&] {
    return evaluate_preset(cfg, docs, corpus.documents, corpus.categories);
  });
  if (with_baseline) {
    Preset base = named_preset("baseline");
    base.representation = cfg.preset.representation;
    auto base_docs = timed(timings, "baseline represent", [&] {
      return prepare_documents(corpus.documents, base, res, options, cfg.threads);
    });
    run.baseline = timed(timings, "baseline train+evaluate", [&] {
      return evaluate_preset(cfg, base_docs, corpus.documents, corpus.categories);
    });
  }

  timed(timings, "write", [&] {
    fs::path out(cfg.out);
    fs::create_directories(out);
    std::string metrics;
    if (run.baseline) metrics += metrics_tsv("baseline", *run.baseline) + '\n';
    metrics += metrics_tsv(run.run_name, run.result);
    write_text(out / "metrics.tsv", metrics);
    if (run.baseline) {
      NamedReport base{"baseline", run.baseline->micro_f.mean, run.baseline->macro_f.mean};
      NamedReport mine{run.run_name, run.result.micro_f.mean, run.result.macro_f.mean};
      write_text(out / "improvement.tsv", improvement_tsv(base, {mine}));
    }
    if (cfg.dump_models) {
      if (run.baseline) dump_models(out / "models", "baseline", *run.baseline);
      dump_models(out / "models", run.run_name, run.result);
    }
  });

  std::ostringstream manifest;
  manifest << "# wikitc run manifest\n"
           << "# version\t" << kVersion << '\n'
           << "# documents\t" << corpus.documents.size() << '\n'
           << "# categories\t" << corpus.categories.size() << '\n'
           << "# sha256\tcorpus\t" << sha256_path(cfg.corpus) << '\n';
  for (auto [key, path] : {std::pair{"kb", &cfg.kb}, std::pair{"stoplist", &cfg.stoplist},
                           std::pair{"gazetteer", &cfg.gazetteer},
                           std::pair{"lexicon", &cfg.lexicon}}) {
    if (!path->empty()) manifest << "# sha256\t" << key << '\t' << sha256_path(*path) << '\n';
  }
  for (const auto &t : timings) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", t.seconds);
    manifest << "# seconds\t" << t.stage << '\t' << buf << '\n';
  }
  for (const auto &w : corpus.warnings) manifest << "# warning\t" << w << '\n';
  for (const auto &w : run.result.warnings) manifest << "# warning\t" << w << '\n';
  manifest << config_snapshot(cfg);
  run.manifest = manifest.str();
  write_text(fs::path(cfg.out) / "manifest.txt", run.manifest);
  return run;
}

std::string preview_enrichment(const ExperimentConfig &cfg,
                               const std::string &doc_id) {
  LoadedCorpus corpus = load_experiment_corpus(cfg);
  auto it = std::find_if(corpus.documents.begin(), corpus.documents.end(),
                         [&](const RawDocument &d) { return d.id == doc_id; });
  if (it == corpus.documents.end()) {
    throw ConfigError("no admitted document with id '" + doc_id + "'");
  }
  const bool enrich = !cfg.preset.is_baseline();
  Resources res = load_resources(cfg, enrich);
  const E2Options options = e2_options(cfg);
  TaggedDocument before = represent(*it, cfg.preset.representation, res.text);

  auto render = [](const TaggedDocument &doc) {
    std::string s;
    for (const auto &t : doc.tokens) {
      if (!s.empty()) s += ' ';
      s += t.token.surface;
      if (t.tag != EntityTag::kNone) s += std::string("/") + entity_tag_name(t.tag);
    }
    return s;
  };
  std::ostringstream out;
  out << "document\t" << it->id << '\n'
      << "labels\t" << join({it->labels.begin(), it->labels.end()}, "|") << '\n'
      << "preset\t" << cfg.preset.name << '\n'
      << "before\t" << render(before) << '\n';
  if (enrich) {
    if (cfg.preset.use_e2) {
      out << "query\t"
          << serialize_query(build_e2_query(before, options.title_term, options.min_rank))
          << '\n';
    }
    if (cfg.preset.use_e3) {
      out << "query\t"
          << serialize_query(build_e3_query(before, options.title_term, options.min_rank))
          << '\n';
    }
    auto terms = enrichment_terms(before, cfg.preset, res.index, *res.text.stoplist, options);
    out << "knowledge\t" << join(terms, " ") << '\n';
    TaggedDocument after = apply_preset(*it, cfg.preset, res.index, res.text, options);
    out << "after\t" << render(after) << '\n';
  }
  return out.str();
}

void build_index_artifacts(const std::string &dump_path, const std::string &out_dir) {
  Index index = Index::build(parse_kb_dump(read_file(dump_path)));
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "kb.tsv", write_kb_dump(index.records()));
  std::ostringstream stats;
  stats << "field\tterms\tpostings\n";
  for (std::size_t f = 0; f < kIndexedFieldCount; ++f) {
    Field field = static_cast<Field>(f);
    std::size_t postings = 0;
    auto terms = index.field_terms(field);
    for (const auto &entry : terms) postings += entry.second;
    stats << field_name(field) << '\t' << terms.size() << '\t' << postings << '\n';
  }
  stats << "records\t" << index.size() << "\t-\n";
  write_text(fs::path(out_dir) / "index_stats.tsv", stats.str());
}

std::vector<NamedReport> read_metric_means(std::string_view metrics_text) {
  std::vector<NamedReport> out;
  for (const auto &line : split(metrics_text, '\n')) {
    auto f = split(line, '\t');
    if (f.size() == 6 && f[1] == "mean") {
      out.push_back({f[0], parse_real("micro_f", f[4]), parse_real("macro_f", f[5])});
    }
  }
  return out;
}

std::string report_from_metrics(const std::vector<std::string> &metrics_texts,
                                const std::string &baseline_name) {
  std::vector<NamedReport> all;
  for (const auto &text : metrics_texts) {
    auto means = read_metric_means(text);
    all.insert(all.end(), means.begin(), means.end());
  }
  auto base = std::find_if(all.begin(), all.end(), [&](const NamedReport &r) {
    return r.name == baseline_name;
  });
  if (base == all.end()) {
    throw ConfigError("no run named '" + baseline_name + "' in the metrics files");
  }
  NamedReport baseline = *base;
  std::vector<NamedReport> runs;
  std::set<std::string> seen{baseline_name};
  for (const auto &r : all) {
    if (seen.insert(r.name).second) runs.push_back(r);
  }
  return improvement_tsv(baseline, runs);
}

}  // namespace wikitc
