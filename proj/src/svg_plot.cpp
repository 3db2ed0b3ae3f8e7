#include "machlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace machlab {
namespace {

constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f6fb4", "#c23b22", "#2a8f4e",
                                   "#8456b8", "#b07c1f", "#3b3b3b"};
    return colors[i % 6];
}

} // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::vector<PlotSeries>& series,
                      const std::optional<FittedLine>& fit) {
    double lx0 = 0, lx1 = 0, ly0 = 0, ly1 = 0;
    bool any = false;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
            const double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
            if (!any) {
                lx0 = lx1 = lx;
                ly0 = ly1 = ly;
                any = true;
            }
            lx0 = std::min(lx0, lx);
            lx1 = std::max(lx1, lx);
            ly0 = std::min(ly0, ly);
            ly1 = std::max(ly1, ly);
        }
    if (!any) {
        lx0 = ly0 = -1;
        lx1 = ly1 = 1;
    }
    if (lx1 - lx0 < 1e-9) { lx0 -= 0.5; lx1 += 0.5; }
    if (ly1 - ly0 < 1e-9) { ly0 -= 0.5; ly1 += 0.5; }
    const double padx = 0.05 * (lx1 - lx0), pady = 0.05 * (ly1 - ly0);
    lx0 -= padx; lx1 += padx; ly0 -= pady; ly1 += pady;

    auto X = [&](double lx) { return ML + (lx - lx0) / (lx1 - lx0) * (W - ML - MR); };
    auto Y = [&](double ly) { return H - MB - (ly - ly0) / (ly1 - ly0) * (H - MT - MB); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_loglog_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // decade grid
    for (int d = static_cast<int>(std::ceil(lx0)); d <= std::floor(lx1); ++d) {
        out << "<line x1=\"" << num(X(d)) << "\" y1=\"" << num(Y(ly0))
            << "\" x2=\"" << num(X(d)) << "\" y2=\"" << num(Y(ly1))
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(X(d)) << "\" y=\"" << num(H - MB + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">1e"
            << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ly0)); d <= std::floor(ly1); ++d) {
        out << "<line x1=\"" << num(X(lx0)) << "\" y1=\"" << num(Y(d))
            << "\" x2=\"" << num(X(lx1)) << "\" y2=\"" << num(Y(d))
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(ML - 8) << "\" y=\"" << num(Y(d) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">1e"
            << d << "</text>\n";
    }
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\""
        << W - ML - MR << "\" height=\"" << H - MT - MB
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    if (fit) {
        const double ln10 = std::log(10.0);
        auto ly_of = [&](double lx) {
            return (fit->intercept + fit->slope * lx * ln10) / ln10;
        };
        out << "<line x1=\"" << num(X(lx0)) << "\" y1=\"" << num(Y(ly_of(lx0)))
            << "\" x2=\"" << num(X(lx1)) << "\" y2=\"" << num(Y(ly_of(lx1)))
            << "\" stroke=\"#999999\" stroke-dasharray=\"6,4\"/>\n";
        out << "<text x=\"" << num(W - MR - 6) << "\" y=\"" << num(MT + 16)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << fit->label << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
            out << "<circle cx=\"" << num(X(std::log10(s.x[i]))) << "\" cy=\""
                << num(Y(std::log10(s.y[i]))) << "\" r=\"4\" fill=\""
                << palette(si) << "\"/>\n";
        }
        out << "<text x=\"" << num(ML + 8) << "\" y=\""
            << num(MT + 16 + 16 * static_cast<double>(si))
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << palette(si) << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_loglog_svg: write failed");
}

} // namespace machlab
