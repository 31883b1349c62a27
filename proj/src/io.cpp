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

#include "cosig/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cosig/error.hpp"
#include "json.hpp"

namespace cosig {
namespace {

using nlohmann::json;

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& Field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

double Number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + " must be a number");
  return v.get<double>();
}

int Integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw ValidationError(where + " must be an integer");
  }
  return v.get<int>();
}

const json& Array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + " must be an array");
  return v;
}

int SignalIndex(const json& v, const Instance& inst, const std::string& where) {
  if (v.is_number_integer()) {
    const int s = v.get<int>();
    if (s < 0 || s >= inst.num_signals()) {
      throw ValidationError(where + ": signal index " + std::to_string(s) +
                            " out of range");
    }
    return s;
  }
  if (v.is_string()) {
    const auto label = v.get<std::string>();
    for (int s = 0; s < inst.num_signals(); ++s) {
      if (inst.signals[s] == label) return s;
    }
    throw ValidationError(where + ": unknown signal '" + label + "'");
  }
  throw ValidationError(where + ": signal must be a label or an index");
}

Eigen::MatrixXd ReadMatrix(const json& rows, int n, int m,
                       const std::string& where) {
  Array(rows, where);
  if (static_cast<int>(rows.size()) != n) {
    throw ValidationError(where + " must have " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd out(n, m);
  for (int i = 0; i < n; ++i) {
    const json& row = Array(rows[i], where);
    if (static_cast<int>(row.size()) != m) {
      throw ValidationError(where + " row " + std::to_string(i) + " must have " +
                            std::to_string(m) + " entries");
    }
    for (int j = 0; j < m; ++j) out(i, j) = Number(row[j], where);
  }
  return out;
}

json MatrixJson(const Eigen::MatrixXd& v) {
  json rows = json::array();
  for (Index i = 0; i < v.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < v.cols(); ++j) row.push_back(v(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json SchemeJson(const Instance& inst, const Scheme& scheme) {
  json comps = json::array();
  for (const auto& c : scheme.components) {
    json entry;
    entry["weight"] = c.weight;
    if (const auto* map = std::get_if<SignalMap>(&c.rule)) {
      json labels = json::array();
      for (int s : *map) labels.push_back(inst.signals.at(s));
      entry["map"] = std::move(labels);
    } else {
      const auto& lottery = std::get<SignalLottery>(c.rule);
      json probs = json::object();
      for (Index s = 0; s < lottery.probs.size(); ++s) {
        if (lottery.probs(s) != 0.0) probs[inst.signals.at(s)] = lottery.probs(s);
      }
      entry["lottery"] = std::move(probs);
    }
    comps.push_back(std::move(entry));
  }
  return json{{"components", std::move(comps)}};
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = Parse(text);
  Instance inst;
  const int m = Integer(Field(doc, "m"), "m");
  const int n = Integer(Field(doc, "n"), "n");
  if (m < 1 || n < 1) throw ValidationError("m and n must be positive");
  const json& p = Array(Field(doc, "p"), "p");
  if (static_cast<int>(p.size()) != m) {
    throw ValidationError("p must have m entries");
  }
  inst.p.resize(m);
  for (int j = 0; j < m; ++j) inst.p(j) = Number(p[j], "p");
  inst.values = ReadMatrix(Field(doc, "values"), n, m, "values");
  for (const auto& label : Array(Field(doc, "signals"), "signals")) {
    if (!label.is_string()) throw ValidationError("signal labels must be strings");
    inst.signals.push_back(label.get<std::string>());
  }
  for (std::size_t a = 0; a < inst.signals.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.signals.size(); ++b) {
      if (inst.signals[a] == inst.signals[b]) {
        throw ValidationError("duplicate signal label '" + inst.signals[a] + "'");
      }
    }
  }
  inst.k = Integer(Field(doc, "k"), "k");
  if (doc.contains("edges") && !doc.at("edges").is_null()) {
    inst.edges = EdgeMatrix::Constant(m, inst.num_signals(), false);
    for (const auto& e : Array(doc.at("edges"), "edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ValidationError("each edge must be [item, signal]");
      }
      const int j = Integer(e[0], "edge item");
      if (j < 0 || j >= m) {
        throw ValidationError("edge item " + std::to_string(j) + " out of range");
      }
      inst.edges(j, SignalIndex(e[1], inst, "edge")) = true;
    }
  } else {
    inst.edges = EdgeMatrix::Constant(m, inst.num_signals(), true);
  }
  if (doc.contains("no_info") && !doc.at("no_info").is_null()) {
    inst.no_info = SignalIndex(doc.at("no_info"), inst, "no_info");
  }
  inst.validate();
  return inst;
}

std::optional<Prior> parse_prior(const std::string& text,
                                 const Instance& inst) {
  const json doc = Parse(text);
  if (!doc.is_object() || !doc.contains("prior")) return std::nullopt;
  const json& block = doc.at("prior");
  Prior prior;
  for (const auto& entry : Array(Field(block, "support"), "prior.support")) {
    prior.support.push_back(ReadMatrix(entry, inst.num_players(), inst.num_items(),
                                   "prior.support"));
  }
  for (const auto& q : Array(Field(block, "probs"), "prior.probs")) {
    prior.probs.push_back(Number(q, "prior.probs"));
  }
  prior.validate(inst);
  return prior;
}

Scheme parse_scheme(const std::string& text, const Instance& inst) {
  const json doc = Parse(text);
  const json& block =
      doc.is_object() && doc.contains("scheme") ? doc.at("scheme") : doc;
  Scheme scheme;
  for (const auto& c : Array(Field(block, "components"), "components")) {
    SchemeComponent comp;
    comp.weight = Number(Field(c, "weight"), "weight");
    if (c.contains("map")) {
      SignalMap map;
      for (const auto& s : Array(c.at("map"), "map")) {
        map.push_back(SignalIndex(s, inst, "map"));
      }
      comp.rule = std::move(map);
    } else if (c.contains("lottery")) {
      SignalLottery lottery{Eigen::VectorXd::Zero(inst.num_signals())};
      const json& probs = c.at("lottery");
      if (!probs.is_object()) {
        throw ValidationError("lottery must map signal labels to probabilities");
      }
      for (const auto& [label, q] : probs.items()) {
        lottery.probs(SignalIndex(json(label), inst, "lottery")) =
            Number(q, "lottery");
      }
      comp.rule = std::move(lottery);
    } else {
      throw ValidationError("component needs a 'map' or a 'lottery'");
    }
    scheme.components.push_back(std::move(comp));
  }
  scheme.validate(inst);
  return scheme;
}

std::string format_instance(const Instance& inst,
                            const std::optional<Prior>& prior) {
  json doc;
  doc["m"] = inst.num_items();
  doc["n"] = inst.num_players();
  doc["p"] = std::vector<double>(inst.p.data(), inst.p.data() + inst.p.size());
  doc["values"] = MatrixJson(inst.values);
  doc["signals"] = inst.signals;
  doc["k"] = inst.k;
  if (!inst.is_complete()) {
    json edges = json::array();
    for (int j = 0; j < inst.num_items(); ++j) {
      for (int s = 0; s < inst.num_signals(); ++s) {
        if (inst.allows(j, s)) edges.push_back(json{j, inst.signals[s]});
      }
    }
    doc["edges"] = std::move(edges);
  }
  if (inst.no_info) doc["no_info"] = inst.signals.at(*inst.no_info);
  if (prior) {
    json support = json::array();
    for (const auto& v : prior->support) support.push_back(MatrixJson(v));
    doc["prior"] = json{{"support", std::move(support)},
                        {"probs", prior->probs}};
  }
  return doc.dump(2) + "\n";
}

std::string format_scheme(const Instance& inst, const Scheme& scheme) {
  return json{{"scheme", SchemeJson(inst, scheme)}}.dump(2) + "\n";
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_config_header(
    const std::vector<std::pair<std::string, std::string>>& config) {
  std::string out;
  for (const auto& [key, value] : config) out += "# " + key + "=" + value + "\n";
  return out;
}

std::string format_report_csv(const Instance& inst,
                              const AuctionReport& report) {
  std::string out = "signal,prob,winner,first,second\n";
  for (const auto& r : report.records) {
    out += inst.signals.at(r.signal) + "," + format_number(r.prob) + "," +
           std::to_string(r.winner) + "," + format_number(r.first) + "," +
           format_number(r.second) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

}  // namespace cosig
