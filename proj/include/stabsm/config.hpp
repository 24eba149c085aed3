// Copyright 2026 The stabsm Authors
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

#ifndef STABSM_CONFIG_HPP
#define STABSM_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabsm/channels.hpp"
#include "stabsm/codes.hpp"

namespace stabsm {

/// Flat key-value config with [section] headers. Keys are stored as
/// "section.key"; serialization is canonical (sorted keys), so a RunConfig
/// round-trips bit-identically and hashes stably.
class KVConfig {
  public:
    static KVConfig parse(const std::string &text);
    static KVConfig load(const std::string &path);

    std::string serialize() const;
    uint64_t hash() const;  // FNV-1a over the canonical serialization

    bool has(const std::string &key) const { return kv_.count(key) > 0; }
    std::string get(const std::string &key, const std::string &fallback = "") const;
    double get_num(const std::string &key, double fallback) const;
    long get_int(const std::string &key, long fallback) const;
    std::vector<int> get_ints(const std::string &key) const;     // comma separated
    std::vector<double> get_nums(const std::string &key) const;  // comma separated
    void set(const std::string &key, const std::string &value) { kv_[key] = value; }

    const std::map<std::string, std::string> &entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

/// A fully reproducible run description. Anything the CLI accepts as a flag
/// has a config equivalent; flags win.
struct RunConfig {
    KVConfig kv;

    CodeSpec code() const;            // builtin name or inline [code] section
    ChannelSpec channel(const CodeSpec &code) const;
    Torus torus(const CodeSpec &code) const;
    int n() const { return (int)kv.get_int("run.n", 2); }
    uint64_t seed() const { return (uint64_t)kv.get_int("run.seed", 1); }
    uint64_t hash() const { return kv.hash(); }
};

/// CSV schema used by sample/threshold/report. Every row carries the config
/// hash; report refuses to merge rows with mismatched schema versions.
inline constexpr const char *kCsvSchema = "stabsm-csv-1";

}  // namespace stabsm

#endif
