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

#include "stabsm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stabsm {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

KVConfig KVConfig::parse(const std::string &text) {
    KVConfig cfg;
    std::istringstream in(text);
    std::string line, section = "run";
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') {
            continue;
        }
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        cfg.kv_[section + "." + trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return cfg;
}

KVConfig KVConfig::load(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string KVConfig::serialize() const {
    // canonical: sections alphabetical, keys alphabetical (map order)
    std::string cur_section;
    std::string out;
    for (const auto &[k, v] : kv_) {
        size_t dot = k.find('.');
        std::string section = k.substr(0, dot), key = k.substr(dot + 1);
        if (section != cur_section) {
            out += "[" + section + "]\n";
            cur_section = section;
        }
        out += key + " = " + v + "\n";
    }
    return out;
}

uint64_t KVConfig::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : serialize()) {
        h ^= (unsigned char)c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string KVConfig::get(const std::string &key, const std::string &fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double KVConfig::get_num(const std::string &key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stod(it->second);
}

long KVConfig::get_int(const std::string &key, long fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stol(it->second);
}

std::vector<int> KVConfig::get_ints(const std::string &key) const {
    std::vector<int> out;
    std::istringstream ss(get(key));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
    }
    return out;
}

std::vector<double> KVConfig::get_nums(const std::string &key) const {
    std::vector<double> out;
    std::istringstream ss(get(key));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) {
            out.push_back(std::stod(tok));
        }
    }
    return out;
}

CodeSpec RunConfig::code() const {
    std::string name = kv.get("run.code", "");
    if (!name.empty() && name != "inline") {
        return builtin_code(name);
    }
    // inline definition in the [code] section
    if (!kv.has("code.name") || !kv.has("code.d") || !kv.has("code.l")) {
        throw std::invalid_argument("inline code requires code.name, code.d, code.l");
    }
    int d = (int)kv.get_int("code.d", 0);
    int l = (int)kv.get_int("code.l", 0);
    CodeSpec c;
    c.name = kv.get("code.name");
    c.d = d;
    c.l = l;
    std::vector<std::vector<LaurentPoly>> cols;
    for (int j = 1;; j++) {
        std::string zkey = "code.stabilizer." + std::to_string(j) + ".z";
        std::string xkey = "code.stabilizer." + std::to_string(j) + ".x";
        if (!kv.has(zkey) && !kv.has(xkey)) {
            break;
        }
        std::vector<LaurentPoly> col;
        auto parse_block = [&](const std::string &key) {
            std::istringstream ss(kv.get(key, ""));
            std::string tok;
            std::vector<LaurentPoly> polys;
            while (std::getline(ss, tok, ',')) {
                polys.push_back(parse_poly(tok, d));
            }
            while ((int)polys.size() < l) {
                polys.push_back(LaurentPoly::zero(d));
            }
            return polys;
        };
        std::vector<LaurentPoly> zb = parse_block(zkey), xb = parse_block(xkey);
        col.insert(col.end(), zb.begin(), zb.end());
        col.insert(col.end(), xb.begin(), xb.end());
        cols.push_back(col);
    }
    if (cols.empty()) {
        throw std::invalid_argument("inline code has no stabilizer columns");
    }
    c.S = PolyMatrix(2 * l, (int)cols.size(), d);
    for (size_t j = 0; j < cols.size(); j++) {
        for (int r = 0; r < 2 * l; r++) {
            c.S.at(r, (int)j) = cols[j][r];
        }
    }
    c.type_labels.resize(cols.size());
    c.css = true;
    for (size_t j = 0; j < cols.size(); j++) {
        bool hz = false, hx = false;
        for (int r = 0; r < l; r++) {
            hz |= !c.S.at(r, (int)j).is_zero();
        }
        for (int r = l; r < 2 * l; r++) {
            hx |= !c.S.at(r, (int)j).is_zero();
        }
        c.type_labels[j] = hz && hx ? StabType::Mixed : (hz ? StabType::Z : StabType::X);
        if (c.type_labels[j] == StabType::Mixed) {
            c.css = false;
        }
        c.type_names.push_back(kv.get("code.stabilizer." + std::to_string(j + 1) + ".name",
                                      "S" + std::to_string(j + 1)));
    }
    if (!commute_check(c.S)) {
        throw std::invalid_argument("inline code fails the commutation check");
    }
    return c;
}

ChannelSpec RunConfig::channel(const CodeSpec &code) const {
    std::string name = kv.get("run.channel", "");
    double p = kv.get_num("run.p", 0.1);
    if (!name.empty() && name != "inline") {
        return builtin_channel(name, code, p);
    }
    ChannelSpec ch;
    ch.name = kv.get("channel.name", "inline");
    for (int j = 1;; j++) {
        std::string base = "channel.generator." + std::to_string(j);
        if (!kv.has(base + ".z") && !kv.has(base + ".x")) {
            break;
        }
        PolyVec v(code.l, code.d);
        auto fill = [&](const std::string &key, int off) {
            std::istringstream ss(kv.get(key, ""));
            std::string tok;
            int r = 0;
            while (std::getline(ss, tok, ',') && r < code.l) {
                v.e[off + r++] = parse_poly(tok, code.d);
            }
        };
        fill(base + ".z", 0);
        fill(base + ".x", code.l);
        ErrorGenerator g;
        g.name = kv.get(base + ".name", "G" + std::to_string(j));
        g.pattern = v;
        g.p = kv.get_num(base + ".p", p);
        if (g.pattern.is_zero()) {
            throw std::invalid_argument("channel generator " + g.name + " is the identity");
        }
        ch.generators.push_back(std::move(g));
    }
    if (ch.generators.empty()) {
        throw std::invalid_argument("channel has no generators");
    }
    return ch;
}

Torus RunConfig::torus(const CodeSpec &code) const {
    std::vector<int> dims = kv.get_ints("run.L");
    if (dims.empty()) {
        throw std::invalid_argument("run.L (torus extents) is required");
    }
    if ((int)dims.size() == 1) {
        dims.assign((size_t)code.d, dims[0]);
    }
    if ((int)dims.size() != code.d) {
        throw std::invalid_argument("run.L dimension count does not match the code");
    }
    return Torus(dims, code.l);
}

}  // namespace stabsm
