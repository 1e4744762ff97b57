#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace volent::svg {

class Document {
public:
    Document(double width, double height);

    void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke, double width);
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                 const std::string& stroke, double width);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                  const std::string& dash = "");
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width);
    void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "start");

    std::string str() const;

private:
    double w_, h_;
    std::ostringstream body_;
};

// Line chart with linear axes. Each series is (label, points, color, dashed).
struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color;
    bool dashed = false;
};

std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series, int width = 640, int height = 420);

}  // namespace volent::svg
