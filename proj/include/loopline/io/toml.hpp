// Copyright 2026 Loopline Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// A deliberately small TOML reader covering the subset used by the config
// files in this project: [tables], scalar values (integer, float, bool,
// quoted string) and flat arrays of scalars. Nested tables and multi-line
// constructs are out of scope.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace loopline::toml {

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<std::int64_t, double, bool, std::string, Array> data;

    bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
    bool is_float() const { return std::holds_alternative<double>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }

    std::int64_t as_int() const {
        if (is_int()) return std::get<std::int64_t>(data);
        throw std::runtime_error("toml value is not an integer");
    }
    double as_double() const {
        if (is_int()) return static_cast<double>(std::get<std::int64_t>(data));
        if (is_float()) return std::get<double>(data);
        throw std::runtime_error("toml value is not a number");
    }
    bool as_bool() const {
        if (is_bool()) return std::get<bool>(data);
        throw std::runtime_error("toml value is not a bool");
    }
    const std::string& as_string() const {
        if (is_string()) return std::get<std::string>(data);
        throw std::runtime_error("toml value is not a string");
    }
    const Array& as_array() const {
        if (is_array()) return std::get<Array>(data);
        throw std::runtime_error("toml value is not an array");
    }
};

class Table {
  public:
    void set(const std::string& key, Value v) { entries_[key] = std::move(v); }

    bool contains(const std::string& key) const { return entries_.count(key) > 0; }

    const Value& at(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw std::runtime_error("missing toml key: " + key);
        return it->second;
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        return contains(key) ? at(key).as_int() : fallback;
    }
    double get_double(const std::string& key, double fallback) const {
        return contains(key) ? at(key).as_double() : fallback;
    }
    std::string get_string(const std::string& key, const std::string& fallback) const {
        return contains(key) ? at(key).as_string() : fallback;
    }
    bool get_bool(const std::string& key, bool fallback) const {
        return contains(key) ? at(key).as_bool() : fallback;
    }

    const std::map<std::string, Value>& entries() const { return entries_; }

  private:
    std::map<std::string, Value> entries_;
};

class Document {
  public:
    Table& table(const std::string& name) { return tables_[name]; }

    bool has_table(const std::string& name) const { return tables_.count(name) > 0; }

    const Table& at(const std::string& name) const {
        auto it = tables_.find(name);
        if (it == tables_.end()) throw std::runtime_error("missing toml table: " + name);
        return it->second;
    }

    /// The unnamed top-level table.
    const Table& root() const { return at(""); }

    const std::map<std::string, Table>& tables() const { return tables_; }

  private:
    std::map<std::string, Table> tables_ = {{"", Table{}}};
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string drop_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

Value parse_scalar(const std::string& raw);

inline Value parse_value(const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) throw std::runtime_error("empty toml value");
    if (s.front() == '[') {
        if (s.back() != ']') throw std::runtime_error("unterminated toml array");
        Array items;
        std::string body = s.substr(1, s.size() - 2);
        std::string current;
        bool in_string = false;
        for (char c : body) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!strip(current).empty()) items.push_back(parse_scalar(strip(current)));
                current.clear();
            } else {
                current += c;
            }
        }
        if (!strip(current).empty()) items.push_back(parse_scalar(strip(current)));
        return Value{items};
    }
    return parse_scalar(s);
}

inline Value parse_scalar(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return Value{s.substr(1, s.size() - 2)};
    if (s == "true") return Value{true};
    if (s == "false") return Value{false};
    bool looks_float = s.find_first_of(".eE") != std::string::npos &&
                       s.find_first_not_of("+-0123456789.eE_") == std::string::npos;
    std::string digits;
    for (char c : s)
        if (c != '_') digits += c;
    try {
        if (!looks_float) {
            std::size_t used = 0;
            std::int64_t v = std::stoll(digits, &used);
            if (used == digits.size()) return Value{v};
        }
        std::size_t used = 0;
        double v = std::stod(digits, &used);
        if (used == digits.size()) return Value{v};
    } catch (const std::exception&) {
    }
    throw std::runtime_error("cannot parse toml value: " + s);
}

}  // namespace detail

inline Document parse(std::istream& in) {
    Document doc;
    std::string current;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip(detail::drop_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw std::runtime_error("bad toml table header at line " + std::to_string(lineno));
            current = detail::strip(s.substr(1, s.size() - 2));
            doc.table(current);
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("expected key = value at line " + std::to_string(lineno));
        std::string key = detail::strip(s.substr(0, eq));
        doc.table(current).set(key, detail::parse_value(s.substr(eq + 1)));
    }
    return doc;
}

inline Document parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

inline Document parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse(in);
}

}  // namespace loopline::toml
