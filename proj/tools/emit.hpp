// Copyright 2026 The qsw Authors
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

// Hand-rolled JSON/CSV writers: every float is printed with %.17g so JSON and
// CSV emissions of a run carry the same digits and repeat byte for byte.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsw_cli {

std::string format_number(double v);
std::string json_string(const std::string& s);

/// Minimal streaming JSON writer with fixed two-space indentation.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(bool inline_values = false);
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(long v);
  JsonWriter& value(unsigned long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }

  const std::string& str() const { return out_; }

 private:
  struct Frame {
    bool first = true;
    bool inline_values = false;
  };
  void before_value();
  void newline();

  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

}  // namespace qsw_cli
