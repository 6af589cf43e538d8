// Copyright 2026 The zeno-dynamics Authors
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

#pragma once

// Flat `key = value` experiment configuration.
//
//   omega_a, omega, g, T, N              required
//   field.kind = fock | coherent | superposed          required
//     fock:        field.n
//     coherent:    field.alpha_re, field.alpha_im (default 0)
//     superposed:  field.n, field.theta, field.phi (default 0)
//   atom.kind = ground | excited | bloch               default ground
//     bloch:       atom.polar, atom.azimuth (default 0)
//   truncation = auto | <int>                          default auto
//   sweep = [64, 128, 256]                             default none
//   routes = [exact, superoperator, effective]         default all
//   output.path, output.format = csv | json            default zeno_trace.<format>
//   seed = <uint64>                                    default none
//
// `#` starts a comment. Unknown, duplicate and inapplicable keys are errors.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/engine.hpp"
#include "zeno/errors.hpp"

namespace zeno {
namespace cli {

enum class OutputFormat { Csv, Json };

inline constexpr std::string_view format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

struct ExperimentSpec {
    ZenoRunConfig run;
    std::vector<int> sweep;  // empty: single run at run.num_measurements
    std::vector<Route> routes{Route::Exact, Route::Superoperator, Route::Effective};
    std::string output_path = "zeno_trace.csv";
    OutputFormat output_format = OutputFormat::Csv;
    std::optional<std::uint64_t> seed;

    std::vector<int> n_values() const {
        return sweep.empty() ? std::vector<int>{run.num_measurements} : sweep;
    }

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// %.17g: round-trips every double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::optional<Route> parse_route(std::string_view s) {
    if (s == "exact") return Route::Exact;
    if (s == "super" || s == "superoperator") return Route::Superoperator;
    if (s == "effective") return Route::Effective;
    return std::nullopt;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const Entry& entry(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError(key, 0, "missing required key");
        used_.insert(key);
        return it->second;
    }

    std::optional<Entry> optional(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return entry(key);
    }

    double number(const std::string& key) { return to_double(key, entry(key)); }

    long long integer(const std::string& key) { return to_integer(key, entry(key)); }

    static double to_double(const std::string& key, const Entry& e) {
        const char* s = e.value.c_str();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s, &end);
        if (e.value.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
            throw ConfigError(key, e.line, "expected a finite number, got '" + e.value + "'");
        return v;
    }

    static long long to_integer(const std::string& key, const Entry& e) {
        const char* s = e.value.c_str();
        char* end = nullptr;
        errno = 0;
        const long long v = std::strtoll(s, &end, 10);
        if (e.value.empty() || *end != '\0' || errno == ERANGE)
            throw ConfigError(key, e.line, "expected an integer, got '" + e.value + "'");
        return v;
    }

    // Every key present must have been consumed.
    void reject_unused(const std::set<std::string>& known) const {
        for (const auto& [key, e] : entries_) {
            if (used_.count(key)) continue;
            if (known.count(key)) throw ConfigError(key, e.line, "key not applicable to this configuration");
            throw ConfigError(key, e.line, "unknown key");
        }
    }

private:
    std::map<std::string, Entry> entries_;
    std::set<std::string> used_;
};

inline std::vector<std::string> split_list(const std::string& key, const Entry& e) {
    std::string body = e.value;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw ConfigError(key, e.line, "unterminated list");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::string> items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, e.line, "empty list element");
        items.push_back(item);
    }
    return items;
}

inline int checked_int(const std::string& key, const Entry& e, long long v, long long lo) {
    if (v < lo || v > std::numeric_limits<int>::max())
        throw ConfigError(key, e.line, "value " + std::to_string(v) + " out of range (must be >= " +
                                           std::to_string(lo) + ")");
    return static_cast<int>(v);
}

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "omega_a",     "omega",       "g",           "T",           "N",
        "field.kind",  "field.alpha_re", "field.alpha_im", "field.n", "field.theta",
        "field.phi",   "atom.kind",   "atom.polar",  "atom.azimuth", "truncation",
        "sweep",       "routes",      "output.path", "output.format", "seed"};
    return keys;
}

}  // namespace detail

inline ExperimentSpec parse_config(std::string_view text) {
    std::map<std::string, detail::Entry> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError("", line_no, "empty key");
        if (!detail::known_keys().count(key)) throw ConfigError(key, line_no, "unknown key");
        if (entries.count(key))
            throw ConfigError(key, line_no,
                              "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
        entries.emplace(key, detail::Entry{value, line_no});
    }

    detail::Reader rd(std::move(entries));
    ExperimentSpec spec;
    auto& run = spec.run;

    run.params.omega_a = rd.number("omega_a");
    run.params.omega = rd.number("omega");
    run.params.g = rd.number("g");
    if (run.params.g < 0.0) throw ConfigError("g", rd.entry("g").line, "coupling must be >= 0");
    run.total_time = rd.number("T");
    if (!(run.total_time > 0.0)) throw ConfigError("T", rd.entry("T").line, "total time must be > 0");
    run.num_measurements = detail::checked_int("N", rd.entry("N"), rd.integer("N"), 1);

    const auto& kind = rd.entry("field.kind");
    if (kind.value == "fock") {
        run.field = states::Fock{detail::checked_int("field.n", rd.entry("field.n"), rd.integer("field.n"), 0)};
    } else if (kind.value == "coherent") {
        const double re = rd.number("field.alpha_re");
        const double im = rd.has("field.alpha_im") ? rd.number("field.alpha_im") : 0.0;
        run.field = states::Coherent{{re, im}};
    } else if (kind.value == "superposed") {
        states::SuperposedFock f;
        f.n = detail::checked_int("field.n", rd.entry("field.n"), rd.integer("field.n"), 0);
        f.theta = rd.number("field.theta");
        if (rd.has("field.phi")) f.phi = rd.number("field.phi");
        run.field = f;
    } else {
        throw ConfigError("field.kind", kind.line,
                          "expected fock, coherent or superposed, got '" + kind.value + "'");
    }

    if (auto atom = rd.optional("atom.kind")) {
        if (atom->value == "ground") {
            run.atom = states::Ground{};
        } else if (atom->value == "excited") {
            run.atom = states::Excited{};
        } else if (atom->value == "bloch") {
            states::BlochVector b;
            b.polar = rd.number("atom.polar");
            if (rd.has("atom.azimuth")) b.azimuth = rd.number("atom.azimuth");
            run.atom = b;
        } else {
            throw ConfigError("atom.kind", atom->line,
                              "expected ground, excited or bloch, got '" + atom->value + "'");
        }
    }

    if (auto tr = rd.optional("truncation")) {
        if (tr->value != "auto")
            run.truncation = detail::checked_int("truncation", *tr, detail::Reader::to_integer("truncation", *tr), 2);
    }

    if (auto sw = rd.optional("sweep")) {
        for (const auto& item : detail::split_list("sweep", *sw)) {
            const detail::Entry e{item, sw->line};
            const int n = detail::checked_int("sweep", e, detail::Reader::to_integer("sweep", e), 1);
            if (!spec.sweep.empty() && n <= spec.sweep.back())
                throw ConfigError("sweep", sw->line, "sweep values must be strictly increasing");
            spec.sweep.push_back(n);
        }
        if (spec.sweep.empty()) throw ConfigError("sweep", sw->line, "empty sweep");
    }

    if (auto rt = rd.optional("routes")) {
        spec.routes.clear();
        const auto items = detail::split_list("routes", *rt);
        if (items.size() == 1 && items[0] == "all") {
            spec.routes = {Route::Exact, Route::Superoperator, Route::Effective};
        } else {
            for (const auto& item : items) {
                auto r = parse_route(item);
                if (!r) throw ConfigError("routes", rt->line, "unknown route '" + item + "'");
                for (Route seen : spec.routes)
                    if (seen == *r) throw ConfigError("routes", rt->line, "duplicate route '" + item + "'");
                spec.routes.push_back(*r);
            }
        }
        if (spec.routes.empty()) throw ConfigError("routes", rt->line, "at least one route required");
    }

    if (auto fmt = rd.optional("output.format")) {
        if (fmt->value == "csv") spec.output_format = OutputFormat::Csv;
        else if (fmt->value == "json") spec.output_format = OutputFormat::Json;
        else throw ConfigError("output.format", fmt->line, "expected csv or json, got '" + fmt->value + "'");
    }
    if (auto path = rd.optional("output.path")) {
        std::string p = path->value;
        if (p.size() >= 2 && p.front() == '"' && p.back() == '"') p = p.substr(1, p.size() - 2);
        if (p.empty()) throw ConfigError("output.path", path->line, "empty path");
        spec.output_path = p;
    } else {
        spec.output_path = "zeno_trace." + std::string(format_name(spec.output_format));
    }

    if (auto seed = rd.optional("seed")) {
        const char* s = seed->value.c_str();
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (seed->value.empty() || seed->value.front() == '-' || *end != '\0' || errno == ERANGE)
            throw ConfigError("seed", seed->line, "expected a nonnegative integer, got '" + seed->value + "'");
        spec.seed = static_cast<std::uint64_t>(v);
    }

    rd.reject_unused(detail::known_keys());

    try {
        run.validate();
    } catch (const DomainError& e) {
        throw ConfigError("", 0, e.what());
    }
    return spec;
}

/// Inverse of parse_config: parse_config(serialize_config(s)) == s.
inline std::string serialize_config(const ExperimentSpec& spec) {
    std::ostringstream out;
    const auto& run = spec.run;
    out << "omega_a = " << format_double(run.params.omega_a) << '\n'
        << "omega = " << format_double(run.params.omega) << '\n'
        << "g = " << format_double(run.params.g) << '\n'
        << "T = " << format_double(run.total_time) << '\n'
        << "N = " << run.num_measurements << '\n';
    if (const auto* f = std::get_if<states::Fock>(&run.field)) {
        out << "field.kind = fock\nfield.n = " << f->n << '\n';
    } else if (const auto* c = std::get_if<states::Coherent>(&run.field)) {
        out << "field.kind = coherent\nfield.alpha_re = " << format_double(c->alpha.real())
            << "\nfield.alpha_im = " << format_double(c->alpha.imag()) << '\n';
    } else if (const auto* s = std::get_if<states::SuperposedFock>(&run.field)) {
        out << "field.kind = superposed\nfield.n = " << s->n << "\nfield.theta = " << format_double(s->theta)
            << "\nfield.phi = " << format_double(s->phi) << '\n';
    }
    if (std::holds_alternative<states::Ground>(run.atom)) {
        out << "atom.kind = ground\n";
    } else if (std::holds_alternative<states::Excited>(run.atom)) {
        out << "atom.kind = excited\n";
    } else if (const auto* b = std::get_if<states::BlochVector>(&run.atom)) {
        out << "atom.kind = bloch\natom.polar = " << format_double(b->polar)
            << "\natom.azimuth = " << format_double(b->azimuth) << '\n';
    }
    out << "truncation = " << (run.truncation ? std::to_string(*run.truncation) : "auto") << '\n';
    if (!spec.sweep.empty()) {
        out << "sweep = [";
        for (std::size_t i = 0; i < spec.sweep.size(); ++i) out << (i ? ", " : "") << spec.sweep[i];
        out << "]\n";
    }
    out << "routes = [";
    for (std::size_t i = 0; i < spec.routes.size(); ++i) out << (i ? ", " : "") << route_name(spec.routes[i]);
    out << "]\n";
    out << "output.path = " << spec.output_path << '\n'
        << "output.format = " << format_name(spec.output_format) << '\n';
    if (spec.seed) out << "seed = " << *spec.seed << '\n';
    return out.str();
}

}  // namespace cli
}  // namespace zeno
