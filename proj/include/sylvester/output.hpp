#pragma once

// Machine-readable result records: one JSON object per line, or CSV with a
// header row naming the fields. Numbers are written in shortest round-trip
// form so both formats carry identical values.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sylvester/distribution.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/geomc.hpp"
#include "sylvester/quad.hpp"

namespace sylvester {

struct OutputRecord {
    std::string family;
    int d = 0;
    std::optional<double> beta;
    std::string method;
    double value = 0.0;
    std::optional<double> abs_error;
    std::optional<double> stderr_;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;

    bool operator==(const OutputRecord&) const = default;

    static OutputRecord deterministic(const Distribution& dist, const EvalResult& r) {
        OutputRecord o;
        o.family = to_string(dist.family);
        o.d = dist.d;
        if (dist.has_beta()) o.beta = dist.beta;
        o.method = to_string(r.method);
        o.value = r.value;
        o.abs_error = r.abs_error_estimate;
        return o;
    }

    static OutputRecord monte_carlo(const Distribution& dist, const McResult& r) {
        OutputRecord o;
        o.family = to_string(dist.family);
        o.d = dist.d;
        if (dist.has_beta()) o.beta = dist.beta;
        o.method = "montecarlo";
        o.value = r.estimate;
        o.stderr_ = r.stderr_;
        o.trials = r.trials;
        o.seed = r.seed;
        return o;
    }
};

enum class Format { json, csv };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return std::nullopt;
}

inline constexpr const char* kRecordFields[] = {"family", "d",      "beta",   "method", "value",
                                                "abs_error", "stderr", "trials", "seed"};

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> opt_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

// JSON has no literal for non-finite numbers; they travel as strings.
inline nlohmann::json num_json(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline double num_from(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("record: bad number '" + s + "'");
}

inline std::string shortest(double v) {
    if (std::isnan(v)) return "nan";
    return fmt_num(v);
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["d"] = r.d;
    j["beta"] = r.beta ? detail::num_json(*r.beta) : nlohmann::json(nullptr);
    j["method"] = r.method;
    j["value"] = detail::num_json(r.value);
    j["abs_error"] = r.abs_error ? detail::num_json(*r.abs_error) : nlohmann::json(nullptr);
    j["stderr"] = r.stderr_ ? detail::num_json(*r.stderr_) : nlohmann::json(nullptr);
    j["trials"] = detail::opt_json(r.trials);
    j["seed"] = detail::opt_json(r.seed);
    return j;
}

inline std::string to_json_line(const OutputRecord& r) { return to_json(r).dump(); }

inline OutputRecord parse_json_record(std::string_view line) {
    const auto j = nlohmann::json::parse(line);
    OutputRecord r;
    r.family = j.at("family").get<std::string>();
    r.d = j.at("d").get<int>();
    auto opt_num = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return detail::num_from(j.at(key));
    };
    r.beta = opt_num("beta");
    r.method = j.at("method").get<std::string>();
    r.value = detail::num_from(j.at("value"));
    r.abs_error = opt_num("abs_error");
    r.stderr_ = opt_num("stderr");
    r.trials = detail::opt_from<std::int64_t>(j, "trials");
    r.seed = detail::opt_from<std::uint64_t>(j, "seed");
    return r;
}

inline std::string csv_header() {
    std::string s;
    for (const char* f : kRecordFields) {
        if (!s.empty()) s += ',';
        s += f;
    }
    return s;
}

inline std::string to_csv_row(const OutputRecord& r) {
    using detail::shortest;
    auto opt = [](const auto& v, auto fmt) { return v ? fmt(*v) : std::string(); };
    auto num = [](double v) { return shortest(v); };
    auto integer = [](auto v) { return std::to_string(v); };
    std::vector<std::string> cells = {detail::csv_quote(r.family),
                                      std::to_string(r.d),
                                      opt(r.beta, num),
                                      detail::csv_quote(r.method),
                                      shortest(r.value),
                                      opt(r.abs_error, num),
                                      opt(r.stderr_, num),
                                      opt(r.trials, integer),
                                      opt(r.seed, integer)};
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

/// Writes records in the chosen format, emitting the CSV header once.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format fmt) : out_(out), fmt_(fmt) {}

    void write(const OutputRecord& r) {
        if (fmt_ == Format::json) {
            out_ << to_json_line(r) << '\n';
            return;
        }
        if (!header_done_) {
            out_ << csv_header() << '\n';
            header_done_ = true;
        }
        out_ << to_csv_row(r) << '\n';
    }

private:
    std::ostream& out_;
    Format fmt_;
    bool header_done_ = false;
};

}  // namespace sylvester
