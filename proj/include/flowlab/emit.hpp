#pragma once

// CSV and SVG emitters for step functions. CSV is the canonical figure-data
// format: header `breakpoint,value`, one row per arc, decimal strings by
// default and exact fraction strings in exact mode (exact mode re-parses to
// the identical function). SVG is a dependency-free step-plot convenience.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowlab/rational.hpp"
#include "flowlab/step_function.hpp"

namespace flowlab {

struct EmitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string step_csv(const StepFunction& f, bool exact, int decimal_digits = 24) {
    std::ostringstream out;
    out << "breakpoint,value\n";
    for (size_t i = 0; i < f.arc_count(); ++i) {
        if (exact)
            out << to_fraction(f.breakpoints()[i]) << "," << to_fraction(f.values()[i]) << "\n";
        else
            out << to_decimal(f.breakpoints()[i], decimal_digits) << ","
                << to_decimal(f.values()[i], decimal_digits) << "\n";
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EmitError("cannot open for writing: " + path);
    out << content;
    if (!out) throw EmitError("write failed: " + path);
}

// parse a CSV produced in exact mode back into a step function
inline StepFunction parse_step_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "breakpoint,value")
        throw EmitError("bad CSV header");
    std::vector<std::pair<Rat, Rat>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw EmitError("bad CSV row: " + line);
        rows.emplace_back(parse_rational(line.substr(0, comma)),
                          parse_rational(line.substr(comma + 1)));
    }
    if (rows.empty()) throw EmitError("empty CSV");
    // rebuild through indicator algebra to reuse canonicalization: the final
    // row's value covers the wrap arc, earlier rows overwrite their arcs
    StepFunction f = StepFunction::constant(rows.back().second);
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        Rat jump = rows[i].second - rows.back().second;
        if (jump == 0) continue;
        f = f + StepFunction::indicator(rows[i].first, rows[i + 1].first).scale(jump);
    }
    return f;
}

// grid CSV: lines A_k = k / q, one row per k
inline std::string grid_csv(const Int& q) {
    std::ostringstream out;
    out << "k,position\n";
    for (Int k = 0; k < q; ++k) out << k.get_str() << "," << to_fraction(rat(k, q)) << "\n";
    return out.str();
}

// minimal self-contained step plot
inline std::string step_svg(const StepFunction& f, const Int& grid_q, int width = 900,
                            int height = 420) {
    const auto& breaks = f.breakpoints();
    const auto& values = f.values();
    Rat vmin(0), vmax(0);
    for (const auto& v : values) {
        if (v < vmin) vmin = v;
        if (v > vmax) vmax = v;
    }
    vmin -= 1;
    vmax += 1;
    double lo = vmin.get_d(), hi = vmax.get_d();
    auto sx = [&](double x) { return 40.0 + x * (width - 60); };
    auto sy = [&](double y) { return height - 30.0 - (y - lo) / (hi - lo) * (height - 60); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // grid lines A_k = k/q
    if (grid_q > 0) {
        for (Int k = 0; k < grid_q; ++k) {
            double x = sx(rat(k, grid_q).get_d());
            out << "<line x1=\"" << x << "\" y1=\"" << sy(lo) << "\" x2=\"" << x << "\" y2=\""
                << sy(hi) << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
        }
    }
    // zero axis
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1) << "\" y2=\""
        << sy(0) << "\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n";
    // step segments (horizontal per arc, vertical connectors)
    size_t k = breaks.size();
    for (size_t i = 0; i < k; ++i) {
        double x0 = breaks[i].get_d();
        double x1 = (i + 1 < k) ? breaks[i + 1].get_d() : 1.0;
        double y = values[i].get_d();
        out << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(y) << "\" x2=\"" << sx(x1)
            << "\" y2=\"" << sy(y) << "\" stroke=\"#1f4e9c\" stroke-width=\"1.6\"/>\n";
    }
    // wrap arc tail [0, b_0) when the first breakpoint is positive
    if (breaks[0] > 0) {
        double y = values[k - 1].get_d();
        out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(y) << "\" x2=\""
            << sx(breaks[0].get_d()) << "\" y2=\"" << sy(y)
            << "\" stroke=\"#1f4e9c\" stroke-width=\"1.6\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace flowlab
