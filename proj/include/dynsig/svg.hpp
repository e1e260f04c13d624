#pragma once

// State-by-[0,1) rectangle diagram of a dynamic signal: one panel per
// period, one row per state, every interval of a cell drawn in the cell's
// color and labeled with its id.

#include "dynsig/dynamic_signal.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

namespace dynsig::svg {

struct Layout {
    double bar_width = 480;
    double row_height = 36;
    double row_gap = 8;
    double label_width = 90;
    double panel_gap = 36;
    double margin = 16;
};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline const std::string& color(std::size_t i) {
    static const std::array<std::string, 10> palette{"#1f4e9c", "#e4572e", "#f2a541", "#2e933c", "#8e44ad",
                                                     "#17becf", "#b5651d", "#d81b60", "#7f7f7f", "#bcbd22"};
    return palette[i % palette.size()];
}

inline std::string render(const DynamicSignal& ds, const Layout& L = {}) {
    const std::size_t n_states = ds.states.size();
    const double panel_height = 24 + static_cast<double>(n_states) * (L.row_height + L.row_gap) + 18;
    const double width = 2 * L.margin + L.label_width + L.bar_width;
    const double height = 2 * L.margin + static_cast<double>(ds.horizon()) * panel_height + static_cast<double>(ds.horizon() - 1) * L.panel_gap;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t t = 0; t < ds.horizon(); ++t) {
        const double top = L.margin + static_cast<double>(t) * (panel_height + L.panel_gap);
        const double x0 = L.margin + L.label_width;
        out << "<g id=\"period-" << t + 1 << "\">\n";
        out << "<text x=\"" << num(L.margin) << "\" y=\"" << num(top + 16) << "\" font-size=\"15\" font-weight=\"bold\">period "
            << t + 1 << "</text>\n";
        const Signal& sig = ds.periods[t];
        for (std::size_t s = 0; s < n_states; ++s) {
            const double y = top + 24 + static_cast<double>(s) * (L.row_height + L.row_gap);
            out << "<text x=\"" << num(L.margin) << "\" y=\"" << num(y + L.row_height / 2 + 5) << "\" font-size=\"13\">"
                << escape(ds.states.labels[s]) << "</text>\n";
            for (std::size_t c = 0; c < sig.cells.size(); ++c) {
                for (const auto& p : sig.cells[c].sections[s].intervals()) {
                    const double x = x0 + p.lo.to_double() * L.bar_width;
                    const double w = p.length().to_double() * L.bar_width;
                    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
                        << num(L.row_height) << "\" fill=\"" << color(c) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
                    out << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(y + L.row_height / 2 + 5)
                        << "\" font-size=\"12\" fill=\"white\" text-anchor=\"middle\">" << escape(sig.cells[c].id) << "</text>\n";
                }
            }
        }
        const double axis_y = top + 24 + static_cast<double>(n_states) * (L.row_height + L.row_gap) + 10;
        out << "<text x=\"" << num(x0) << "\" y=\"" << num(axis_y) << "\" font-size=\"11\" text-anchor=\"middle\">0</text>\n";
        out << "<text x=\"" << num(x0 + L.bar_width) << "\" y=\"" << num(axis_y) << "\" font-size=\"11\" text-anchor=\"middle\">1</text>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace dynsig::svg
