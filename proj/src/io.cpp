#include "hofj/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hofj {

Vector read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_vector: cannot open '" + path + "'");
  // Peek: a JSON array begins with '['.
  char first = 0;
  in >> std::ws;
  first = static_cast<char>(in.peek());
  std::vector<double> values;
  if (first == '[') {
    nlohmann::json j;
    in >> j;
    if (!j.is_array()) throw std::runtime_error("read_vector: expected a JSON array");
    values = j.get<std::vector<double>>();
  } else {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ls(line);
      std::string tok;
      if (!(ls >> tok)) continue;
      if (tok[0] == '#' || tok[0] == '%') continue;
      try {
        values.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("read_vector: malformed value on line " +
                                 std::to_string(line_no) + " of '" + path + "'");
      }
    }
  }
  if (values.empty()) throw std::runtime_error("read_vector: no values in '" + path + "'");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_vector(const Vector& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vector: cannot open '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j = std::vector<double>(v.data(), v.data() + v.size());
    out << j.dump() << '\n';
  } else {
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
  }
}

void write_sparsifier(const SparsifierOutput& sp, const std::string& path) {
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sparsifier: cannot open '" + path + "'");
    out << std::setprecision(17);
    for (const Edge& e : sp.merged_edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  }
  nlohmann::json j{{"M", sp.sample_budget},
                   {"mode", sampling_mode_name(sp.mode)},
                   {"seed", sp.seed},
                   {"merged_edge_count", sp.merged_edge_count},
                   {"self_loop_samples", sp.self_loop_samples},
                   {"per_r_counts", sp.per_r_counts},
                   {"total_added_weight", sp.total_added_weight},
                   {"self_loop_weight", sp.self_loop_weight}};
  if (sp.epsilon_estimate) j["epsilon_estimate"] = *sp.epsilon_estimate;
  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("write_sparsifier: cannot open '" + path + ".json'");
  side << j.dump(2) << '\n';
}

void write_trace_csv(const std::string& path, const std::vector<double>& deltas,
                     const std::vector<double>& bounds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open '" + path + "'");
  out << std::setprecision(17);
  out << "step,max_delta" << (bounds.empty() ? "" : ",bound_value") << '\n';
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out << (i + 1) << ',' << deltas[i];
    if (!bounds.empty()) out << ',' << (i < bounds.size() ? bounds[i] : std::nan(""));
    out << '\n';
  }
}

void write_svg_curve(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<double>& xs, const std::vector<double>& ys,
                     bool log_x, bool log_y) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("write_svg_curve: need matching non-empty series");
  const double width = 640, height = 420, pad = 60;
  auto tx = [&](double v) { return log_x ? std::log10(std::max(v, 1e-300)) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
  double xmin = tx(xs[0]), xmax = xmin, ymin = ty(ys[0]), ymax = ymin;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, tx(xs[i]));
    xmax = std::max(xmax, tx(xs[i]));
    ymin = std::min(ymin, ty(ys[i]));
    ymax = std::max(ymax, ty(ys[i]));
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double v) { return pad + (tx(v) - xmin) / (xmax - xmin) * (width - 2 * pad); };
  auto py = [&](double v) {
    return height - pad - (ty(v) - ymin) / (ymax - ymin) * (height - 2 * pad);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg_curve: cannot open '" + path + "'");
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";
  out << "<text x='" << width / 2 << "' y='" << height - 12
      << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
  out << "<text x='16' y='" << height / 2 << "' text-anchor='middle' font-size='12' "
      << "transform='rotate(-90 16 " << height / 2 << ")'>" << y_label << "</text>\n";
  out << "<line x1='" << pad << "' y1='" << height - pad << "' x2='" << width - pad << "' y2='"
      << height - pad << "' stroke='black'/>\n";
  out << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='" << height - pad
      << "' stroke='black'/>\n";
  out << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
  for (std::size_t i = 0; i < xs.size(); ++i) out << px(xs[i]) << ',' << py(ys[i]) << ' ';
  out << "'/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << "<circle cx='" << px(xs[i]) << "' cy='" << py(ys[i])
        << "' r='3' fill='steelblue'/>\n";
  out << "</svg>\n";
}

}  // namespace hofj
