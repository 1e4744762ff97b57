#include "volent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace volent::svg {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void points_attr(std::ostringstream& os, const std::vector<std::pair<double, double>>& pts) {
    os << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << pts[i].first << ',' << pts[i].second;
    }
    os << '"';
}

}  // namespace

Document::Document(double width, double height) : w_(width), h_(height) {
    body_ << std::setprecision(6);
}

void Document::circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke,
                      double width) {
    body_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
}

void Document::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                       const std::string& stroke, double width) {
    body_ << "<polygon";
    points_attr(body_, pts);
    body_ << " fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
}

void Document::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                        const std::string& dash) {
    body_ << "<polyline";
    points_attr(body_, pts);
    body_ << " fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << '"';
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << '"';
    body_ << "/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width) {
    body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\""
          << stroke << "\" stroke-width=\"" << width << "\"/>\n";
}

void Document::text(double x, double y, const std::string& s, int size, const std::string& anchor) {
    body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"" << size
          << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
}

std::string Document::str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
       << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
}

std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series, int width, int height) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
    if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad; y1 += pad;

    const double L = 70, R = 20, T = 40, B = 50;
    const double pw = width - L - R, ph = height - T - B;
    auto X = [&](double x) { return L + pw * (x - x0) / (x1 - x0); };
    auto Y = [&](double y) { return T + ph * (1.0 - (y - y0) / (y1 - y0)); };

    Document doc(width, height);
    doc.text(width / 2.0, 22, title, 14, "middle");
    doc.line(L, T + ph, L + pw, T + ph, "#000", 1);
    doc.line(L, T, L, T + ph, "#000", 1);
    for (int i = 0; i <= 4; ++i) {
        double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        std::ostringstream a, b;
        a << std::setprecision(3) << xv;
        b << std::setprecision(4) << yv;
        doc.text(X(xv), T + ph + 18, a.str(), 11, "middle");
        doc.text(L - 6, Y(yv) + 4, b.str(), 11, "end");
        doc.line(L, Y(yv), L + pw, Y(yv), "#e5e5e5", 0.5);
    }
    doc.text(L + pw / 2, height - 12, xlabel, 12, "middle");
    doc.text(16, T + ph / 2, ylabel, 12, "middle");
    double ly = T + 14;
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (auto [x, y] : s.points)
            if (std::isfinite(x) && std::isfinite(y)) pts.emplace_back(X(x), Y(y));
        doc.polyline(pts, s.color, 1.6, s.dashed ? "6,4" : "");
        doc.line(L + pw - 150, ly - 4, L + pw - 130, ly - 4, s.color, 2);
        doc.text(L + pw - 125, ly, s.label, 11);
        ly += 16;
    }
    return doc.str();
}

}  // namespace volent::svg
