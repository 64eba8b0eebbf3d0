#include "xyvort/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "xyvort/error.hpp"

namespace xyvort {

namespace {

// Fixed-precision formatting keeps documents byte-identical across runs.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

void open_svg(std::ostringstream& os, double width, double height) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
     << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" fill=\"white\"/>\n";
}

}  // namespace

void RenderOptions::validate() const {
  if (!(log_floor > 0.0)) throw ValidationError("log_floor must be positive");
  if (!(cell > 0.0) || !(decades > 0.0)) throw ValidationError("canvas sizes must be positive");
  if (!(max_half_length > 0.0) || max_half_length > 0.5) {
    throw ValidationError("max_half_length must lie in (0, 0.5]");
  }
}

double cross_half_length(double magnitude, const RenderOptions& options) {
  const double full = options.max_half_length * options.cell;
  if (options.length_mode == LengthMode::Equal) return full;
  if (!(magnitude > 0.0)) return 0.0;
  const double span = std::log10(magnitude) - std::log10(options.log_floor);
  return std::clamp(span, 0.0, options.decades) / options.decades * full;
}

std::string render_crosses(const VorticityField& field, const Lattice& lattice,
                           const RenderOptions& options) {
  options.validate();
  const double margin = options.cell;
  std::ostringstream os;
  if (field.size() == 0) {
    open_svg(os, 2 * margin, 2 * margin);
    os << "</svg>\n";
    return os.str();
  }
  if (field.size() != lattice.size()) {
    throw ValidationError("field and lattice sizes differ");
  }
  const double width = (lattice.width() - 1) * options.cell + 2 * margin;
  const double height = (lattice.height() - 1) * options.cell + 2 * margin;
  open_svg(os, width, height);
  os << "<g stroke-linecap=\"round\" stroke-width=\"" << num(options.stroke_width) << "\">\n";
  for (const Site& s : lattice.sites()) {
    const auto& v = field.sites[s.index];
    const double cx = margin + s.col * options.cell;
    const double cy = margin + (lattice.height() - 1 - s.row) * options.cell;
    const std::string& color = s.interior() ? options.interior_color : options.boundary_color;
    const double r = v.cross.magnitude;
    if (v.cross.degenerate || r < options.log_floor) {
      os << "<circle class=\"dot\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
         << num(options.dot_radius) << "\" fill=\"" << color << "\"/>\n";
      continue;
    }
    const double h = cross_half_length(r, options);
    const double c = std::cos(v.cross.angle);
    const double sn = std::sin(v.cross.angle);
    // SVG y grows downward, so the lattice's northward direction flips sign.
    const double ux = h * c, uy = -h * sn;
    const double px = -h * sn, py = -h * c;
    os << "<g class=\"cross\" stroke=\"" << color << "\">"
       << "<line x1=\"" << num(cx - ux) << "\" y1=\"" << num(cy - uy) << "\" x2=\"" << num(cx + ux)
       << "\" y2=\"" << num(cy + uy) << "\"/>"
       << "<line x1=\"" << num(cx - px) << "\" y1=\"" << num(cy - py) << "\" x2=\"" << num(cx + px)
       << "\" y2=\"" << num(cy + py) << "\"/></g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_idos(const std::vector<std::pair<double, std::size_t>>& curve,
                        const std::string& title) {
  if (curve.empty()) throw ValidationError("cannot plot an empty IDOS curve");
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].first < curve[i - 1].first || curve[i].second < curve[i - 1].second) {
      throw ValidationError("IDOS curve must be nondecreasing");
    }
  }
  constexpr double W = 640, H = 420, left = 70, right = 20, top = 40, bottom = 50;
  const double x0 = curve.front().first;
  const double x1 = std::max(curve.back().first, x0 + 1e-12);
  const double ymax = std::max<double>(1.0, static_cast<double>(curve.back().second));
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto sy = [&](double y) { return H - bottom - y / ymax * (H - top - bottom); };

  std::ostringstream os;
  open_svg(os, W, H);
  if (!title.empty()) {
    os << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"14\">" << escape(title) << "</text>\n";
  }
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line class=\"axis\" x1=\"" << num(left) << "\" y1=\"" << num(H - bottom) << "\" x2=\""
     << num(W - right) << "\" y2=\"" << num(H - bottom) << "\"/>\n"
     << "<line class=\"axis\" x1=\"" << num(left) << "\" y1=\"" << num(H - bottom) << "\" x2=\""
     << num(left) << "\" y2=\"" << num(top) << "\"/>\n</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = x0 + (x1 - x0) * t / 4.0;
    const double y = ymax * t / 4.0;
    os << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(H - bottom + 16)
       << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(y) + 4)
       << "\" text-anchor=\"end\">" << static_cast<long long>(std::llround(y)) << "</text>\n";
  }
  os << "<text x=\"" << num((left + W - right) / 2) << "\" y=\"" << num(H - 10)
     << "\" text-anchor=\"middle\">lambda</text>\n"
     << "<text x=\"16\" y=\"" << num((top + H - bottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num((top + H - bottom) / 2)
     << ")\">rho(lambda)</text>\n</g>\n";

  // Horizontal then vertical segments: a right-continuous step function.
  os << "<path class=\"idos\" fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"1.5\" d=\"M"
     << num(sx(curve[0].first)) << ' ' << num(sy(static_cast<double>(curve[0].second)));
  for (std::size_t i = 1; i < curve.size(); ++i) {
    os << " H" << num(sx(curve[i].first));
    if (curve[i].second != curve[i - 1].second) {
      os << " V" << num(sy(static_cast<double>(curve[i].second)));
    }
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace xyvort
