/*
 * Copyright 2026 The rankeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The `rankeval` command line: generate, evaluate, compare, report, oracle.
//
// Exit codes: 0 success, 2 bad flags or unparsable input, 1 any other
// failure. All randomness flows from --seed (default: $RANKEVAL_SEED, else
// kDefaultSeed). Outputs are assembled in memory and written once.

#ifndef RANKEVAL_CLI_HPP_
#define RANKEVAL_CLI_HPP_

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "rankeval/core_log.hpp"
#include "rankeval/evaluation.hpp"
#include "rankeval/jsonl.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/metrics.hpp"
#include "rankeval/rankers.hpp"
#include "rankeval/simulate.hpp"

namespace rankeval::cli {

inline constexpr std::uint64_t kDefaultSeed = 20171201;
inline constexpr std::size_t kDefaultSlices = 20;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct KRange {
  std::size_t first = 1;
  std::size_t last = 1;
};

// "3" or the inclusive range "1..4".
inline KRange ParseKRange(const std::string& text) {
  auto parse_one = [&text](const std::string& part) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::logic_error&) {
      throw UsageError("bad k '" + text + "'");
    }
    if (used != part.size() || v == 0) throw UsageError("bad k '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t k = parse_one(text);
    return {k, k};
  }
  KRange r{parse_one(text.substr(0, dots)), parse_one(text.substr(dots + 2))};
  if (r.first > r.last) throw UsageError("empty k range '" + text + "'");
  return r;
}

inline std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("bad number '" + item + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

inline std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct RunConfig {
  std::string subcommand;
  std::string oracle_kind;  // "retention" or "metric"
  std::string logs;
  std::string method;
  std::string k = "1";
  std::string ranker;
  std::string ranker_a;
  std::string ranker_b;
  std::uint64_t seed = kDefaultSeed;
  std::size_t num_slices = kDefaultSlices;
  std::string out = "-";
  std::string tsv;
  std::string slices_out;
  std::string plot_dir;
  // generate / oracle metric
  std::size_t queries = 0;
  std::size_t n = 5;
  std::string bias;
  std::string grid;
  bool single_click = true;
  // report
  std::vector<std::string> eval1;
  std::vector<std::string> eval2;
  std::vector<std::string> interleave;
  std::string name1 = "ranker1";
  std::string name2 = "ranker2";
};

namespace internal {

inline std::vector<LogRecord> LoadLogs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return ReadLogs(in);
}

inline void Emit(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << content;
  if (!f) throw Error("write failed: " + path);
}

inline ClickModel MakeClickModel(const RunConfig& cfg) {
  ClickModel model;
  if (!cfg.bias.empty()) model.position_bias = ParseDoubleList(cfg.bias);
  model.single_click = cfg.single_click;
  return model;
}

inline SimConfig MakeSimConfig(const RunConfig& cfg) {
  SimConfig sim;
  sim.num_queries = cfg.queries;
  sim.n = cfg.n;
  sim.seed = cfg.seed;
  if (!cfg.grid.empty()) sim.relevance_grid = ParseDoubleList(cfg.grid);
  return sim;
}

inline std::string MrrRowName(std::size_t k) {
  return "mrr@" + std::to_string(k);
}

inline int RunGenerate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.queries == 0) throw UsageError("--queries must be positive");
  const ClickModel model = MakeClickModel(cfg);
  const SimConfig sim = MakeSimConfig(cfg);
  try {
    CheckSimConfig(sim);
    CheckClickModel(model, sim.n);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::ostringstream body;
  WriteLogs(body, GenerateLogs(sim, model));
  Emit(cfg.out, body.str(), out);
  return 0;
}

inline int RunEvaluate(const RunConfig& cfg, std::ostream& out) {
  const Method method = ParseMethod(cfg.method);
  if (method == Method::kRandInterleave) {
    throw UsageError("evaluate takes --method direct|trunc; use compare");
  }
  const KRange ks = ParseKRange(cfg.k);
  const Ranker ranker = ParseRanker(cfg.ranker);
  const std::vector<LogRecord> logs = LoadLogs(cfg.logs);
  const auto rankings = RankAll(logs, ranker);
  const auto slices = HalfSampleSlices(logs.size(), cfg.num_slices, cfg.seed);
  const auto all = AllIndices(logs.size());

  std::ostringstream csv;
  csv << "method,k,eligible,matched,metric_name,metric_value\n";
  for (std::size_t k = ks.first; k <= ks.last; ++k) {
    const auto scores = ScoreRecords(logs, rankings, method, k);
    auto row = [&](const std::string& name, const MrrStat& s) {
      csv << MethodName(method) << ',' << k << ',' << s.eligible << ','
          << s.matched << ',' << name << ','
          << (s.mrr ? FormatDouble(*s.mrr) : "NA") << '\n';
    };
    row(MrrRowName(k), ReduceMrr(scores, all));
    for (std::size_t i = 0; i < slices.size(); ++i) {
      row(MrrRowName(k) + "/slice=" + std::to_string(i),
          ReduceMrr(scores, slices[i]));
    }
  }
  Emit(cfg.out, csv.str(), out);
  return 0;
}

inline void InterleaveCells(std::ostream& os, const InterleaveStat& s) {
  os << s.eligible << ',' << s.matched << ',' << FormatDouble(s.clicks_a) << ','
     << FormatDouble(s.clicks_b) << ',' << s.wins_a << ',' << s.wins_b << ','
     << s.ties;
}

inline int RunCompare(const RunConfig& cfg, std::ostream& out) {
  if (ParseMethod(cfg.method) != Method::kRandInterleave) {
    throw UsageError("compare takes --method rand-interleave");
  }
  const KRange ks = ParseKRange(cfg.k);
  const Ranker ranker_a = ParseRanker(cfg.ranker_a);
  const Ranker ranker_b = ParseRanker(cfg.ranker_b);
  const std::vector<LogRecord> logs = LoadLogs(cfg.logs);
  const auto rankings_a = RankAll(logs, ranker_a);
  const auto rankings_b = RankAll(logs, ranker_b);
  const auto slices = HalfSampleSlices(logs.size(), cfg.num_slices, cfg.seed);
  const auto all = AllIndices(logs.size());

  std::ostringstream csv, tsv, per_slice;
  csv << "k,eligible,matched,clicks_a,clicks_b,wins_a,wins_b,ties\n";
  tsv << "k\tranker2_norm\tstderr\n";
  per_slice
      << "k,slice,eligible,matched,clicks_a,clicks_b,wins_a,wins_b,ties\n";
  for (std::size_t k = ks.first; k <= ks.last; ++k) {
    const auto scores =
        ScoreInterleaved(logs, rankings_a, rankings_b, k, cfg.seed);
    csv << k << ',';
    InterleaveCells(csv, ReduceInterleave(scores, all));
    csv << '\n';

    std::vector<MetricSample> s1, s2;
    bool defined = true;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const InterleaveStat st = ReduceInterleave(scores, slices[i]);
      per_slice << k << ',' << i << ',';
      InterleaveCells(per_slice, st);
      per_slice << '\n';
      if (st.matched == 0) defined = false;
      s1.push_back({Method::kRandInterleave, k, ranker_a.name(), i, st.clicks_a,
                    st.matched});
      s2.push_back({Method::kRandInterleave, k, ranker_b.name(), i, st.clicks_b,
                    st.matched});
    }
    std::optional<ComparisonReport> rep;
    if (defined) {
      try {
        rep = RelativeReport(s1, s2);
      } catch (const Error&) {
      }
    }
    tsv << k << '\t' << (rep ? FormatDouble(rep->ranker2_norm) : "NA") << '\t'
        << (rep ? FormatDouble(rep->std_error) : "NA") << '\n';
  }
  Emit(cfg.out, csv.str(), out);
  if (!cfg.tsv.empty()) Emit(cfg.tsv, tsv.str(), out);
  if (!cfg.slices_out.empty()) Emit(cfg.slices_out, per_slice.str(), out);
  return 0;
}

inline std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// (method, k) -> slice -> value; NA slices hold nullopt.
using SliceTable = std::map<std::pair<Method, std::size_t>,
                            std::map<std::size_t, std::optional<double>>>;

template <typename RowFn>
void ReadCsv(const std::string& path, std::size_t columns, RowFn&& fn) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || line.empty()) continue;
    auto cells = SplitCsvLine(line);
    if (cells.size() != columns) {
      throw ParseError(
          line_no, path + ": expected " + std::to_string(columns) + " columns");
    }
    try {
      fn(cells);
    } catch (const std::logic_error&) {
      throw ParseError(line_no, path + ": malformed row");
    }
  }
}

inline void LoadEvaluation(const std::string& path, SliceTable& table) {
  ReadCsv(path, 6, [&](const std::vector<std::string>& c) {
    const Method method = ParseMethod(c[0]);
    const std::size_t k = std::stoul(c[1]);
    const std::string& name = c[4];
    const auto at = name.find("/slice=");
    if (at == std::string::npos) return;  // whole-log row
    const std::size_t slice = std::stoul(name.substr(at + 7));
    std::optional<double> v;
    if (c[5] != "NA") v = std::stod(c[5]);
    table[{method, k}][slice] = v;
  });
}

inline void LoadInterleave(const std::string& path, SliceTable& t1,
                           SliceTable& t2) {
  ReadCsv(path, 9, [&](const std::vector<std::string>& c) {
    const std::size_t k = std::stoul(c[0]);
    const std::size_t slice = std::stoul(c[1]);
    const bool matched = std::stoul(c[3]) > 0;
    const auto key = std::make_pair(Method::kRandInterleave, k);
    t1[key][slice] =
        matched ? std::optional<double>(std::stod(c[4])) : std::nullopt;
    t2[key][slice] =
        matched ? std::optional<double>(std::stod(c[5])) : std::nullopt;
  });
}

inline int RunReport(const RunConfig& cfg, std::ostream& out) {
  SliceTable t1, t2;
  for (const auto& p : cfg.eval1) LoadEvaluation(p, t1);
  for (const auto& p : cfg.eval2) LoadEvaluation(p, t2);
  for (const auto& p : cfg.interleave) LoadInterleave(p, t1, t2);

  std::ostringstream table;
  table << "method,k,ranker1,ranker2,ranker2_norm,stderr,slices,separation\n";
  std::map<Method, std::ostringstream> plots;
  for (const auto& [key, slices1] : t1) {
    const auto [method, k] = key;
    auto it2 = t2.find(key);
    std::optional<ComparisonReport> rep;
    std::size_t count = slices1.size();
    if (it2 != t2.end() && it2->second.size() == slices1.size()) {
      std::vector<MetricSample> s1, s2;
      bool defined = true;
      for (const auto& [slice, v1] : slices1) {
        auto v2 = it2->second.find(slice);
        if (!v1 || v2 == it2->second.end() || !v2->second) {
          defined = false;
          break;
        }
        s1.push_back({method, k, cfg.name1, slice, *v1, 0});
        s2.push_back({method, k, cfg.name2, slice, *v2->second, 0});
      }
      if (defined) {
        try {
          rep = RelativeReport(s1, s2);
        } catch (const Error&) {
        }
      }
    }
    table << MethodName(method) << ',' << k << ',' << cfg.name1 << ','
          << cfg.name2 << ',';
    if (rep) {
      table << FormatDouble(rep->ranker2_norm) << ','
            << FormatDouble(rep->std_error) << ',' << rep->slices << ','
            << (rep->separation ? "true" : "false") << '\n';
    } else {
      table << "NA,NA," << count << ",NA\n";
    }
    auto& plot = plots[method];
    if (plot.tellp() == 0) plot << "k\tranker2_norm\tstderr\n";
    plot << k << '\t' << (rep ? FormatDouble(rep->ranker2_norm) : "NA") << '\t'
         << (rep ? FormatDouble(rep->std_error) : "NA") << '\n';
  }
  Emit(cfg.out, table.str(), out);
  if (!cfg.plot_dir.empty()) {
    std::filesystem::create_directories(cfg.plot_dir);
    for (const auto& [method, plot] : plots) {
      const auto path = std::filesystem::path(cfg.plot_dir) /
                        (std::string(MethodName(method)) + ".tsv");
      Emit(path.string(), plot.str(), out);
    }
  }
  return 0;
}

inline Ranking DefaultIds(std::size_t count) {
  Ranking ids;
  for (std::size_t i = 1; i <= count; ++i)
    ids.push_back("d" + std::to_string(i));
  return ids;
}

inline int RunOracle(const RunConfig& cfg, std::ostream& out) {
  const KRange ks = ParseKRange(cfg.k);
  std::ostringstream body;
  if (cfg.oracle_kind == "retention") {
    const Method method = ParseMethod(cfg.method);
    for (std::size_t k = ks.first; k <= ks.last; ++k) {
      const std::size_t universe = method == Method::kDirect ? cfg.n : k;
      Ranking a =
          cfg.ranker_a.empty() ? DefaultIds(universe) : SplitList(cfg.ranker_a);
      std::optional<Ranking> b;
      if (method == Method::kRandInterleave) {
        b = cfg.ranker_b.empty() ? a : SplitList(cfg.ranker_b);
      }
      const Rational r = RetentionOracle(method, cfg.n, k, a, b);
      body << MethodName(method) << '\t' << k << '\t' << r.ToString() << '\t'
           << FormatDouble(r.ToDouble()) << '\n';
    }
  } else if (cfg.oracle_kind == "metric") {
    const Ranker ranker = ParseRanker(cfg.ranker);
    const ClickModel model = MakeClickModel(cfg);
    std::vector<LogRecord> logs;
    if (!cfg.logs.empty()) logs = LoadLogs(cfg.logs);
    for (std::size_t k = ks.first; k <= ks.last; ++k) {
      double v;
      if (!logs.empty()) {
        v = ExpectedMetricOracle(ranker, logs, model, k);
      } else {
        if (cfg.queries == 0) throw UsageError("--queries or --logs required");
        v = ExpectedMetricOracle(ranker, MakeSimConfig(cfg), model, k);
      }
      body << "mrr@" << k << '\t' << FormatDouble(v) << '\n';
    }
  } else {
    throw UsageError("oracle takes 'retention' or 'metric'");
  }
  Emit(cfg.out, body.str(), out);
  return 0;
}

}  // namespace internal

// Executes one parsed command. Returns the process exit status.
inline int Run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "generate") return internal::RunGenerate(cfg, out);
    if (cfg.subcommand == "evaluate") return internal::RunEvaluate(cfg, out);
    if (cfg.subcommand == "compare") return internal::RunCompare(cfg, out);
    if (cfg.subcommand == "report") return internal::RunReport(cfg, out);
    if (cfg.subcommand == "oracle") return internal::RunOracle(cfg, out);
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const ParseError& e) {
    err << "rankeval: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "rankeval: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "rankeval: " << e.what() << '\n';
    return 1;
  }
}

inline std::uint64_t SeedFromEnvironment() {
  const char* env = std::getenv("RANKEVAL_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  try {
    return std::stoull(env);
  } catch (const std::logic_error&) {
    throw UsageError(std::string("bad RANKEVAL_SEED '") + env + "'");
  }
}

// Parses argv (program name first) and runs the selected subcommand.
inline int Main(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.seed = SeedFromEnvironment();
  } catch (const UsageError& e) {
    err << "rankeval: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Offline comparison of rankers on uniformly randomized logs",
               "rankeval"};
  app.require_subcommand(1);

  auto add_seed = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for every random stream");
  };
  auto add_slices = [&cfg](CLI::App* sub) {
    sub->add_option("--slices", cfg.num_slices, "Number of 50% slices")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  };
  auto add_model = [&cfg](CLI::App* sub) {
    sub->add_option("--bias", cfg.bias,
                    "Comma-separated examination probabilities per position");
    sub->add_option("--grid", cfg.grid, "Comma-separated relevance grid");
    sub->add_flag("--single-click,!--multi-click", cfg.single_click,
                  "Stop the click scan at the first click (default)");
  };

  auto* generate = app.add_subcommand("generate", "Write synthetic logs");
  generate->add_option("--queries", cfg.queries, "Number of queries")
      ->required();
  generate->add_option("--n", cfg.n, "Docs per query");
  generate->add_option("--out", cfg.out, "Output JSONL ('-' for stdout)");
  add_seed(generate);
  add_model(generate);

  auto* evaluate =
      app.add_subcommand("evaluate", "MRR@k of one ranker via matching");
  evaluate->add_option("--method", cfg.method, "direct|trunc")->required();
  evaluate->add_option("--k", cfg.k, "Cutoff k or inclusive range a..b")
      ->required();
  evaluate
      ->add_option("--ranker", cfg.ranker, "score:<field>|oracle:<s>:<seed>")
      ->required();
  evaluate->add_option("--logs", cfg.logs, "Input JSONL")->required();
  evaluate->add_option("--out", cfg.out, "Output CSV ('-' for stdout)");
  add_seed(evaluate);
  add_slices(evaluate);

  auto* compare = app.add_subcommand(
      "compare", "Rand-interleaving comparison of two rankers");
  compare->add_option("--method", cfg.method, "rand-interleave")->required();
  compare->add_option("--k", cfg.k, "Cutoff k or inclusive range a..b")
      ->required();
  compare->add_option("--ranker-a", cfg.ranker_a, "Ranker 1 (baseline)")
      ->required();
  compare->add_option("--ranker-b", cfg.ranker_b, "Ranker 2")->required();
  compare->add_option("--logs", cfg.logs, "Input JSONL")->required();
  compare->add_option("--out", cfg.out, "Output CSV ('-' for stdout)");
  compare->add_option("--tsv", cfg.tsv, "Plot TSV: k, ranker2_norm, stderr");
  compare->add_option("--slices-out", cfg.slices_out, "Per-slice CSV");
  add_seed(compare);
  add_slices(compare);

  auto* report = app.add_subcommand("report", "Normalized comparison table");
  report->add_option("--eval1", cfg.eval1, "evaluate CSVs of ranker 1");
  report->add_option("--eval2", cfg.eval2, "evaluate CSVs of ranker 2");
  report->add_option("--interleave", cfg.interleave,
                     "compare --slices-out CSVs");
  report->add_option("--name1", cfg.name1, "Label of ranker 1");
  report->add_option("--name2", cfg.name2, "Label of ranker 2");
  report->add_option("--out", cfg.out, "Output CSV ('-' for stdout)");
  report->add_option("--plot-dir", cfg.plot_dir,
                     "Directory for one <method>.tsv per method");

  auto* oracle = app.add_subcommand("oracle", "Exact oracles");
  oracle->require_subcommand(1);
  auto* retention = oracle->add_subcommand("retention", "Exact match rate");
  retention->add_option("--method", cfg.method, "direct|trunc|rand-interleave")
      ->required();
  retention->add_option("--n", cfg.n, "Docs per record (direct)");
  retention->add_option("--k", cfg.k, "Cutoff k or range")->required();
  retention->add_option("--ranker-a", cfg.ranker_a, "Comma-separated doc ids");
  retention->add_option("--ranker-b", cfg.ranker_b, "Comma-separated doc ids");
  retention->add_option("--out", cfg.out, "Output ('-' for stdout)");
  auto* metric = oracle->add_subcommand("metric", "Exact expected MRR@k");
  metric->add_option("--ranker", cfg.ranker, "Ranker designator")->required();
  metric->add_option("--k", cfg.k, "Cutoff k or range")->required();
  metric->add_option("--queries", cfg.queries, "Simulated queries");
  metric->add_option("--n", cfg.n, "Docs per query");
  metric->add_option("--logs", cfg.logs, "Use candidate sets of this JSONL");
  metric->add_option("--out", cfg.out, "Output ('-' for stdout)");
  add_seed(metric);
  add_model(metric);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  for (auto* sub : {generate, evaluate, compare, report, oracle}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }
  if (retention->parsed()) cfg.oracle_kind = "retention";
  if (metric->parsed()) cfg.oracle_kind = "metric";
  return Run(cfg, out, err);
}

}  // namespace rankeval::cli

#endif  // RANKEVAL_CLI_HPP_
