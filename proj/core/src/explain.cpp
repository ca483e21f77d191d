#include "mapsx/explain.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace mapsx {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Quantize through the plan file's printed precision.
double round12(double v) {
  return std::strtod(fmt12(v).c_str(), nullptr);
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c"};

const char* agent_color(std::size_t index) {
  return kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

}  // namespace

PlanDocument to_document(const ExplainablePlan& plan, std::uint64_t hash) {
  PlanDocument doc;
  doc.scene_hash = hash;
  doc.planner = planner_name(plan.planner);
  doc.mode = mode_name(plan.mode);
  doc.r = plan.r_used ? std::to_string(*plan.r_used) : "inf";
  doc.seed = plan.seed;
  doc.dt = round12(plan.dt);
  doc.segments = plan.segmentation.count;
  for (double t : plan.segmentation.times) doc.boundary_times.push_back(round12(t));

  // A row's segment changes exactly at the (inner) boundary times: the row at
  // t_l is the first row of segment l+1; the final boundary stays in segment s.
  const auto segment_at = [&](double t) {
    int seg = 1;
    for (std::size_t b = 0; b + 1 < doc.boundary_times.size(); ++b) {
      if (doc.boundary_times[b] <= t) ++seg;
    }
    return std::min(seg, doc.segments);
  };

  for (std::size_t i = 0; i < plan.trajectories.size(); ++i) {
    PlanDocument::AgentTrack track;
    track.name = plan.agent_names[i];
    const int dims = i < plan.state_dims.size() ? plan.state_dims[i] : 2;
    for (const TimedState& ts : plan.trajectories[i]) {
      const double t = round12(ts.t);
      track.time.push_back(t);
      track.segment.push_back(segment_at(t));
      std::vector<double> row;
      for (int d = 0; d < dims; ++d) row.push_back(round12(ts.state.q[d]));
      track.values.push_back(std::move(row));
    }
    doc.tracks.push_back(std::move(track));
  }
  return doc;
}

std::string write_plan(const PlanDocument& doc) {
  std::string out;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016" PRIx64, doc.scene_hash);
  out += std::string("# scene_hash: ") + hash + "\n";
  out += "# planner: " + doc.planner + "\n";
  out += "# mode: " + doc.mode + "\n";
  out += "# r: " + doc.r + "\n";
  out += "# seed: " + std::to_string(doc.seed) + "\n";
  out += "# dt: " + fmt12(doc.dt) + "\n";
  out += "# segments: " + std::to_string(doc.segments) + "\n";
  out += "# boundary_times:";
  for (double t : doc.boundary_times) out += " " + fmt12(t);
  out += "\n";
  for (const auto& track : doc.tracks) {
    for (std::size_t row = 0; row < track.time.size(); ++row) {
      out += track.name + " " + std::to_string(track.segment[row]) + " " + fmt12(track.time[row]);
      for (double v : track.values[row]) out += " " + fmt12(v);
      out += "\n";
    }
  }
  return out;
}

std::string write_plan(const ExplainablePlan& plan, const Scene& scene) {
  return write_plan(to_document(plan, scene_hash(scene)));
}

PlanDocument parse_plan(const std::string& text) {
  PlanDocument doc;
  doc.segments = 0;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false;

  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "scene_hash:") {
        std::string hex;
        hs >> hex;
        doc.scene_hash = std::strtoull(hex.c_str(), nullptr, 16);
      } else if (key == "planner:") {
        hs >> doc.planner;
      } else if (key == "mode:") {
        hs >> doc.mode;
      } else if (key == "r:") {
        hs >> doc.r;
      } else if (key == "seed:") {
        hs >> doc.seed;
      } else if (key == "dt:") {
        hs >> doc.dt;
      } else if (key == "segments:") {
        hs >> doc.segments;
      } else if (key == "boundary_times:") {
        double t;
        while (hs >> t) doc.boundary_times.push_back(t);
      }
      saw_header = true;
      continue;
    }

    std::istringstream rs(line);
    std::string name;
    int seg;
    double t;
    if (!(rs >> name >> seg >> t)) {
      throw PlanFormatError("line " + std::to_string(lineno) + ": malformed data row");
    }
    std::vector<double> values;
    double v;
    while (rs >> v) values.push_back(v);
    if (values.size() < 2) {
      throw PlanFormatError("line " + std::to_string(lineno) + ": row needs at least x y");
    }
    if (doc.tracks.empty() || doc.tracks.back().name != name) {
      PlanDocument::AgentTrack track;
      track.name = name;
      doc.tracks.push_back(std::move(track));
    }
    auto& track = doc.tracks.back();
    if (!track.time.empty() && t < track.time.back()) {
      throw PlanFormatError("line " + std::to_string(lineno) + ": rows not time-sorted");
    }
    if (!track.segment.empty() && seg < track.segment.back()) {
      throw PlanFormatError("line " + std::to_string(lineno) + ": segment index decreased");
    }
    track.segment.push_back(seg);
    track.time.push_back(t);
    track.values.push_back(std::move(values));
  }

  if (!saw_header || doc.segments < 1) throw PlanFormatError("missing or invalid plan header");
  if (doc.tracks.empty()) throw PlanFormatError("plan has no trajectory rows");
  if (doc.boundary_times.size() != static_cast<std::size_t>(doc.segments)) {
    throw PlanFormatError("boundary_times count does not match segments");
  }
  for (const auto& track : doc.tracks) {
    for (int s : track.segment) {
      if (s < 1 || s > doc.segments) throw PlanFormatError("segment index out of range");
    }
  }
  return doc;
}

namespace {

struct Canvas {
  double xmin, ymin, xmax, ymax, extent;
  // Workspace y grows upward; SVG y grows downward.
  double flip(double y) const { return ymax + ymin - y; }
};

void emit_obstacle(std::string& svg, const Canvas& cv, const Obstacle& o) {
  if (const auto* r = std::get_if<Aabb>(&o)) {
    svg += "  <rect x=\"" + fmt6(r->xmin) + "\" y=\"" + fmt6(cv.flip(r->ymax)) + "\" width=\"" +
           fmt6(r->xmax - r->xmin) + "\" height=\"" + fmt6(r->ymax - r->ymin) +
           "\" fill=\"#b0b0b0\"/>\n";
  } else {
    svg += "  <polygon points=\"";
    const auto& verts = std::get<ConvexPolygon>(o).vertices;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (i) svg += " ";
      svg += fmt6(verts[i].x) + "," + fmt6(cv.flip(verts[i].y));
    }
    svg += "\" fill=\"#b0b0b0\"/>\n";
  }
}

void emit_goal(std::string& svg, const Canvas& cv, const GoalRegion& goal, const char* color) {
  if (const auto* disc = std::get_if<GoalDisc>(&goal)) {
    svg += "  <circle cx=\"" + fmt6(disc->center.x) + "\" cy=\"" + fmt6(cv.flip(disc->center.y)) +
           "\" r=\"" + fmt6(disc->radius) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + fmt6(cv.extent * 0.004) + "\"/>\n";
  } else {
    const auto& r = std::get<GoalRect>(goal);
    svg += "  <rect x=\"" + fmt6(r.xmin) + "\" y=\"" + fmt6(cv.flip(r.ymax)) + "\" width=\"" +
           fmt6(r.xmax - r.xmin) + "\" height=\"" + fmt6(r.ymax - r.ymin) +
           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt6(cv.extent * 0.004) +
           "\"/>\n";
  }
}

// One image: the rows of each track with time in [t_lo, t_hi].
std::string render_window(const PlanDocument& doc, const Scene& scene, double t_lo, double t_hi,
                          const std::string& caption) {
  const auto& ws = scene.workspace;
  Canvas cv{ws.xmin, ws.ymin, ws.xmax, ws.ymax, std::max(ws.width(), ws.height())};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt6(ws.xmin) + " " +
         fmt6(ws.ymin) + " " + fmt6(ws.width()) + " " + fmt6(ws.height()) +
         "\" width=\"640\" height=\"640\">\n";
  svg += "  <rect x=\"" + fmt6(ws.xmin) + "\" y=\"" + fmt6(ws.ymin) + "\" width=\"" +
         fmt6(ws.width()) + "\" height=\"" + fmt6(ws.height()) +
         "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" + fmt6(cv.extent * 0.006) +
         "\"/>\n";
  for (const auto& o : scene.obstacles) emit_obstacle(svg, cv, o);

  for (std::size_t i = 0; i < doc.tracks.size(); ++i) {
    const auto& track = doc.tracks[i];
    const char* color = agent_color(i);

    std::vector<Point2> pts;
    for (std::size_t row = 0; row < track.time.size(); ++row) {
      if (track.time[row] >= t_lo && track.time[row] <= t_hi) {
        pts.push_back({track.values[row][0], track.values[row][1]});
      }
    }
    if (pts.empty()) continue;

    svg += "  <polyline points=\"";
    for (std::size_t p = 0; p < pts.size(); ++p) {
      if (p) svg += " ";
      svg += fmt6(pts[p].x) + "," + fmt6(cv.flip(pts[p].y));
    }
    svg += "\" fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" +
           fmt6(cv.extent * 0.006) + "\"/>\n";

    // Small circle at the window's start position.
    svg += "  <circle cx=\"" + fmt6(pts.front().x) + "\" cy=\"" + fmt6(cv.flip(pts.front().y)) +
           "\" r=\"" + fmt6(cv.extent * 0.012) + "\" fill=\"" + color + "\"/>\n";

    if (i < scene.agents.size()) emit_goal(svg, cv, scene.agents[i].goal, color);
  }

  svg += "  <text x=\"" + fmt6(ws.xmin + 0.02 * ws.width()) + "\" y=\"" +
         fmt6(ws.ymin + 0.05 * ws.height()) + "\" font-size=\"" + fmt6(cv.extent * 0.045) +
         "\" font-family=\"sans-serif\">" + caption + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::vector<std::string> render_segments(const PlanDocument& doc, const Scene& scene) {
  std::vector<std::string> images;
  const double t_end = doc.boundary_times.empty() ? 0.0 : doc.boundary_times.back();
  images.push_back(
      render_window(doc, scene, 0.0, t_end, "Δt = [0, " + fmt6(t_end) + "] s"));
  double t_lo = 0.0;
  for (int s = 0; s < doc.segments; ++s) {
    const double t_hi = doc.boundary_times[static_cast<std::size_t>(s)];
    const std::string caption = "Δt_" + std::to_string(s + 1) + " = [" + fmt6(t_lo) + ", " +
                                fmt6(t_hi) + "] s";
    images.push_back(render_window(doc, scene, t_lo, t_hi, caption));
    t_lo = t_hi;
  }
  return images;
}

std::vector<std::string> render_segments(const ExplainablePlan& plan, const Scene& scene) {
  return render_segments(to_document(plan, scene_hash(scene)), scene);
}

std::vector<std::string> image_file_names(int segments) {
  std::vector<std::string> names;
  names.push_back("plan_full.svg");
  for (int s = 1; s <= segments; ++s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "plan_seg_%02d.svg", s);
    names.push_back(buf);
  }
  return names;
}

}  // namespace mapsx
