#pragma once

// Text formats: model JSON, grid specs, number lists, fixed-precision numbers.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "spline.hpp"

namespace radial_tps {

/// 17 significant digits, locale independent.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Parses a double from the whole of `text` (surrounding blanks allowed).
inline double parse_number(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ArgumentError("not a number: '" + std::string(text) + "'");
    return v;
}

/// Comma-separated inline list, e.g. "1,2,5".
inline std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        try {
            out.push_back(parse_number(field));
        } catch (const ArgumentError&) {
            throw ArgumentError("entry " + std::to_string(out.size() + 1) + ": not a number: '" + std::string(field) +
                                "'");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Single-column CSV: one number per line; blank lines and lines starting
/// with '#' are skipped, as is a non-numeric first line (header).
inline std::vector<double> parse_column(std::string_view text) {
    std::vector<double> out;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos || line.front() == '#') continue;
        try {
            out.push_back(parse_number(line));
        } catch (const ArgumentError&) {
            if (out.empty() && line_no == 1) continue;
            throw ArgumentError("row " + std::to_string(line_no) + ": not a number: '" + std::string(line) + "'");
        }
    }
    return out;
}

/// `start:stop:count` with start < stop and count >= 2.
struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;

    double operator[](std::size_t i) const {
        if (i + 1 == count) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }

    std::vector<double> points() const {
        std::vector<double> p(count);
        for (std::size_t i = 0; i < count; ++i) p[i] = (*this)[i];
        return p;
    }
};

inline GridSpec parse_grid(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ArgumentError("grid must be start:stop:count, got '" + std::string(text) + "'");
    GridSpec g;
    g.start = parse_number(text.substr(0, c1));
    g.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
    const double count = parse_number(text.substr(c2 + 1));
    if (!(g.start < g.stop)) throw ArgumentError("grid: start must be less than stop");
    if (!(count >= 2.0) || count != std::floor(count) || count > 1e8)
        throw ArgumentError("grid: count must be an integer >= 2");
    g.count = static_cast<std::size_t>(count);
    return g;
}

/// {"knots":[...],"c":x,"a":[...],"kind":"A"|"B","alpha":x} in this field
/// order; alpha only for kind A. Numbers carry 17 significant digits.
inline std::string model_to_json(const DilateModel& model) {
    auto list = [](std::span<const double> v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_g17(v[i]);
        return s + "]";
    };
    std::string s = "{\"knots\":" + list(model.knots().radii()) + ",\"c\":" + format_g17(model.c()) +
                    ",\"a\":" + list(model.a()) + ",\"kind\":\"" + (model.kind() == ModelKind::TypeA ? "A" : "B") + "\"";
    if (model.alpha()) s += ",\"alpha\":" + format_g17(*model.alpha());
    return s + "}";
}

inline DilateModel model_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("model JSON: ") + e.what());
    }
    try {
        const auto knots = j.at("knots").get<std::vector<double>>();
        const auto a = j.at("a").get<std::vector<double>>();
        const double c = j.at("c").get<double>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "A") {
            if (!j.contains("alpha")) throw ArgumentError("model JSON: kind A requires alpha");
            return DilateModel(KnotSet(knots), c, a, ModelKind::TypeA, j.at("alpha").get<double>());
        }
        if (kind == "B") return DilateModel(KnotSet(knots), c, a, ModelKind::TypeB);
        throw ArgumentError("model JSON: kind must be \"A\" or \"B\"");
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("model JSON: ") + e.what());
    }
}

}  // namespace radial_tps
