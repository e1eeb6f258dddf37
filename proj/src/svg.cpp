#include "dchain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dchain {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string cover_svg(const PuncturedDisk& pd, const DiskCover& cover) {
  constexpr double kSize = 800.0;
  const double span = 2.2 * pd.radius;
  const double scale = kSize / span;
  const cplx lo = pd.center - cplx(1.1 * pd.radius, 1.1 * pd.radius);
  auto X = [&](cplx z) { return num((z.real() - lo.real()) * scale); };
  auto Y = [&](cplx z) { return num(kSize - (z.imag() - lo.imag()) * scale); };
  auto R = [&](double r) { return num(std::max(r * scale, 0.3)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<circle cx=\"" << X(pd.center) << "\" cy=\"" << Y(pd.center) << "\" r=\"" << R(pd.radius)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  os << "<g fill=\"#4a90d9\" fill-opacity=\"0.15\" stroke=\"#2a5b9a\" stroke-width=\"0.5\">\n";
  for (const Disk& D : cover.disks)
    os << "<circle cx=\"" << X(D.center) << "\" cy=\"" << Y(D.center) << "\" r=\"" << R(D.radius) << "\"/>\n";
  os << "</g>\n";
  if (cover.path.size() >= 2) {
    os << "<polyline fill=\"none\" stroke=\"#d9822b\" stroke-width=\"1.2\" points=\"";
    for (cplx z : cover.path) os << X(z) << ',' << Y(z) << ' ';
    os << "\"/>\n";
  }
  for (cplx z : pd.punctures) {
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"" << R(pd.delta)
       << "\" fill=\"#c0392b\" fill-opacity=\"0.3\" stroke=\"#c0392b\"/>\n";
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"2\" fill=\"#c0392b\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::vector<SvgSeries>& series) {
  constexpr double kW = 720.0, kH = 480.0, kPad = 60.0;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
  if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
  auto X = [&](double v) { return num(kPad + (v - x0) / (x1 - x0) * (kW - 2 * kPad)); };
  auto Y = [&](double v) { return num(kH - kPad - (v - y0) / (y1 - y0) * (kH - 2 * kPad)); };
  static const char* kColours[] = {"#2a5b9a", "#c0392b", "#27ae60", "#8e44ad"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16 << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
     << "</text>\n";
  os << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad << "\" height=\""
     << kH - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    os << "<text x=\"" << X(xv) << "\" y=\"" << kH - kPad + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << num(xv) << "</text>\n";
    os << "<text x=\"" << kPad - 6 << "\" y=\"" << Y(yv) << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv)
       << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = kColours[k % 4];
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
        os << "<circle cx=\"" << X(s.x[i]) << "\" cy=\"" << Y(s.y[i]) << "\" r=\"4\" fill=\"" << col << "\"/>\n";
    os << "<text x=\"" << kPad + 10 << "\" y=\"" << kPad + 18 + 16 * k << "\" font-size=\"12\" fill=\"" << col
       << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dchain
