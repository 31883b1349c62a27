// Copyright 2026 The Cosig Authors.
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

#ifndef COSIG_IO_HPP
#define COSIG_IO_HPP

// Instance files are JSON documents:
//
//   { "m": 3, "p": [..], "n": 2, "values": [[..], [..]],
//     "signals": ["s0", "s1", "s2"], "edges": [[0, "s0"], [1, 2], ..],
//     "k": 2, "no_info": "s0",
//     "prior": { "support": [[[..], [..]], ..], "probs": [..] },
//     "scheme": { "components": [ { "weight": 0.5, "map": ["s0", ..] },
//                                 { "weight": 0.5,
//                                   "lottery": { "s0": 0.25, .. } } ] } }
//
// `edges` omitted means complete. Edge and map entries name a signal by
// label or by index. `prior` and `scheme` are optional; a scheme file is a
// document with just the `scheme` block.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosig/evaluate.hpp"
#include "cosig/instance.hpp"

namespace cosig {

Instance parse_instance(const std::string& text);

/// The `prior` block of an instance document, if present.
std::optional<Prior> parse_prior(const std::string& text,
                                 const Instance& inst);

/// A `scheme` block, either at the root or under the `scheme` key.
Scheme parse_scheme(const std::string& text, const Instance& inst);

std::string format_instance(const Instance& inst,
                            const std::optional<Prior>& prior = std::nullopt);
std::string format_scheme(const Instance& inst, const Scheme& scheme);

/// 12 significant digits.
std::string format_number(double value);

/// `# key=value` lines, one per entry.
std::string format_config_header(
    const std::vector<std::pair<std::string, std::string>>& config);

/// Header `signal,prob,winner,first,second`, one row per sent signal.
std::string format_report_csv(const Instance& inst,
                              const AuctionReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cosig

#endif  // COSIG_IO_HPP
