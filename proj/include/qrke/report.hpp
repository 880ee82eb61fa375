// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qrke {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Output of one run, built as parallel text lines and structured records.
// Structured output carries no timing or other machine-dependent fields, so
// a given input always produces byte-identical structured output; timings
// go to the text stream only.
class RunReport {
 public:
  explicit RunReport(std::string experiment);

  void line(const std::string& text);
  void record(Json obj);
  void both(const std::string& text, Json obj);

  void set_verdict(const std::string& verdict) { verdict_ = verdict; }
  const std::string& verdict() const { return verdict_; }
  const std::string& experiment() const { return experiment_; }

  std::string to_text() const;
  // One JSON object per line: a schema_version header record, the data
  // records, then a closing verdict record.
  std::string to_structured() const;

 private:
  std::string experiment_;
  std::vector<std::string> lines_;
  std::vector<Json> records_;
  std::string verdict_;
};

}  // namespace qrke
