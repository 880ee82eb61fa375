// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/report.hpp"

#include <utility>

namespace qrke {

RunReport::RunReport(std::string experiment)
    : experiment_(std::move(experiment)) {}

void RunReport::line(const std::string& text) { lines_.push_back(text); }

void RunReport::record(Json obj) { records_.push_back(std::move(obj)); }

void RunReport::both(const std::string& text, Json obj) {
  lines_.push_back(text);
  records_.push_back(std::move(obj));
}

std::string RunReport::to_text() const {
  std::string out;
  for (const std::string& l : lines_) {
    out += l;
    out += '\n';
  }
  if (!verdict_.empty()) {
    out += "verdict: " + verdict_ + "\n";
  }
  return out;
}

std::string RunReport::to_structured() const {
  Json head;
  head["schema_version"] = kSchemaVersion;
  head["experiment"] = experiment_;
  std::string out = head.dump() + "\n";
  for (const Json& r : records_) {
    out += r.dump();
    out += '\n';
  }
  Json tail;
  tail["verdict"] = verdict_.empty() ? "none" : verdict_;
  out += tail.dump() + "\n";
  return out;
}

}  // namespace qrke
