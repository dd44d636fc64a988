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

// JSONL log format, one record per line:
//
//   {"query_id": "q1",
//    "candidates": [{"doc_id": "d1", "relevance": 0.7, "scores": {"a": 1.2}}],
//    "presented": ["d1"], "clicks": [1]}
//
// Unknown fields are kept in `extra` and written back after the known ones.

#ifndef RANKEVAL_JSONL_HPP_
#define RANKEVAL_JSONL_HPP_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rankeval/core_log.hpp"

namespace rankeval {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace internal {

inline const nlohmann::ordered_json& Require(const nlohmann::ordered_json& obj,
                                             const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(std::string("missing field '") + key + "'");
  return *it;
}

inline Doc DocFromJson(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw Error("candidate is not an object");
  Doc doc;
  for (const auto& [key, value] : j.items()) {
    if (key == "doc_id") {
      if (!value.is_string()) throw Error("doc_id must be a string");
      doc.doc_id = value.get<std::string>();
    } else if (key == "relevance") {
      if (value.is_null()) continue;
      if (!value.is_number()) throw Error("relevance must be a number");
      doc.relevance = value.get<double>();
    } else if (key == "scores") {
      if (!value.is_object()) throw Error("scores must be an object");
      for (const auto& [name, score] : value.items()) {
        if (!score.is_number()) throw Error("score must be a number");
        doc.scores[name] = score.get<double>();
      }
    } else {
      doc.extra[key] = value;
    }
  }
  if (!j.contains("doc_id")) throw Error("missing field 'doc_id'");
  return doc;
}

}  // namespace internal

inline LogRecord RecordFromJson(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw Error("record is not an object");
  LogRecord record;
  const auto& qid = internal::Require(j, "query_id");
  if (!qid.is_string()) throw Error("query_id must be a string");
  record.query_id = qid.get<std::string>();

  const auto& candidates = internal::Require(j, "candidates");
  if (!candidates.is_array()) throw Error("candidates must be an array");
  for (const auto& c : candidates) {
    record.candidates.push_back(internal::DocFromJson(c));
  }

  const auto& presented = internal::Require(j, "presented");
  if (!presented.is_array()) throw Error("presented must be an array");
  for (const auto& id : presented) {
    if (!id.is_string()) throw Error("presented entries must be strings");
    record.presented.push_back(id.get<std::string>());
  }

  const auto& clicks = internal::Require(j, "clicks");
  if (!clicks.is_array()) throw Error("clicks must be an array");
  for (const auto& p : clicks) {
    if (!p.is_number_integer()) throw Error("click positions must be integers");
    record.clicks.push_back(p.get<int>());
  }

  for (const auto& [key, value] : j.items()) {
    if (key != "query_id" && key != "candidates" && key != "presented" &&
        key != "clicks") {
      record.extra[key] = value;
    }
  }
  return record;
}

inline nlohmann::ordered_json RecordToJson(const LogRecord& record) {
  nlohmann::ordered_json j;
  j["query_id"] = record.query_id;
  nlohmann::ordered_json candidates = nlohmann::ordered_json::array();
  for (const Doc& doc : record.candidates) {
    nlohmann::ordered_json d;
    d["doc_id"] = doc.doc_id;
    if (doc.relevance) d["relevance"] = *doc.relevance;
    if (!doc.scores.empty()) d["scores"] = doc.scores;
    for (const auto& [key, value] : doc.extra.items()) d[key] = value;
    candidates.push_back(std::move(d));
  }
  j["candidates"] = std::move(candidates);
  j["presented"] = record.presented;
  j["clicks"] = record.clicks;
  for (const auto& [key, value] : record.extra.items()) j[key] = value;
  return j;
}

inline std::string FormatRecord(const LogRecord& record) {
  return RecordToJson(record).dump();
}

// Parses one line. Records must also pass Validate(); violations are
// reported as parse errors.
inline LogRecord ParseRecord(const std::string& line, std::size_t line_no) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  LogRecord record;
  try {
    record = RecordFromJson(j);
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
  ValidationResult v = Validate(record);
  if (!v.ok()) throw ParseError(line_no, v.violations.front());
  return record;
}

// Blank lines are skipped but still counted for line numbers.
inline std::vector<LogRecord> ReadLogs(std::istream& in) {
  std::vector<LogRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    records.push_back(ParseRecord(line, line_no));
  }
  return records;
}

inline void WriteLogs(std::ostream& out,
                      const std::vector<LogRecord>& records) {
  for (const LogRecord& record : records) out << FormatRecord(record) << '\n';
}

}  // namespace rankeval

#endif  // RANKEVAL_JSONL_HPP_
