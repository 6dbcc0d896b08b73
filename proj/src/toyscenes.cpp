#include "itx/toyscenes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>

#include "itx/errors.hpp"
#include "json.hpp"

namespace itx {

namespace {

// 5x7 bitmap font, rows top to bottom, 'X' = lit.
const std::map<char, std::array<const char*, 7>>& font5x7() {
  static const std::map<char, std::array<const char*, 7>> font = {
      {' ', {".....", ".....", ".....", ".....", ".....", ".....", "....."}},
      {'A', {".XXX.", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"}},
      {'B', {"XXXX.", "X...X", "X...X", "XXXX.", "X...X", "X...X", "XXXX."}},
      {'C', {".XXX.", "X...X", "X....", "X....", "X....", "X...X", ".XXX."}},
      {'D', {"XXXX.", "X...X", "X...X", "X...X", "X...X", "X...X", "XXXX."}},
      {'E', {"XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "XXXXX"}},
      {'F', {"XXXXX", "X....", "X....", "XXXX.", "X....", "X....", "X...."}},
      {'G', {".XXX.", "X...X", "X....", "X.XXX", "X...X", "X...X", ".XXX."}},
      {'H', {"X...X", "X...X", "X...X", "XXXXX", "X...X", "X...X", "X...X"}},
      {'I', {"XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "XXXXX"}},
      {'J', {"..XXX", "...X.", "...X.", "...X.", "...X.", "X..X.", ".XX.."}},
      {'K', {"X...X", "X..X.", "X.X..", "XX...", "X.X..", "X..X.", "X...X"}},
      {'L', {"X....", "X....", "X....", "X....", "X....", "X....", "XXXXX"}},
      {'M', {"X...X", "XX.XX", "X.X.X", "X.X.X", "X...X", "X...X", "X...X"}},
      {'N', {"X...X", "XX..X", "X.X.X", "X..XX", "X...X", "X...X", "X...X"}},
      {'O', {".XXX.", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."}},
      {'P', {"XXXX.", "X...X", "X...X", "XXXX.", "X....", "X....", "X...."}},
      {'Q', {".XXX.", "X...X", "X...X", "X...X", "X.X.X", "X..X.", ".XX.X"}},
      {'R', {"XXXX.", "X...X", "X...X", "XXXX.", "X.X..", "X..X.", "X...X"}},
      {'S', {".XXXX", "X....", "X....", ".XXX.", "....X", "....X", "XXXX."}},
      {'T', {"XXXXX", "..X..", "..X..", "..X..", "..X..", "..X..", "..X.."}},
      {'U', {"X...X", "X...X", "X...X", "X...X", "X...X", "X...X", ".XXX."}},
      {'V', {"X...X", "X...X", "X...X", "X...X", "X...X", ".X.X.", "..X.."}},
      {'W', {"X...X", "X...X", "X...X", "X.X.X", "X.X.X", "XX.XX", "X...X"}},
      {'X', {"X...X", "X...X", ".X.X.", "..X..", ".X.X.", "X...X", "X...X"}},
      {'Y', {"X...X", "X...X", ".X.X.", "..X..", "..X..", "..X..", "..X.."}},
      {'Z', {"XXXXX", "....X", "...X.", "..X..", ".X...", "X....", "XXXXX"}},
      {'0', {".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."}},
      {'1', {"..X..", ".XX..", "..X..", "..X..", "..X..", "..X..", "XXXXX"}},
      {'2', {".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"}},
      {'3', {"XXXXX", "...X.", "..X..", "...X.", "....X", "X...X", ".XXX."}},
      {'4', {"...X.", "..XX.", ".X.X.", "X..X.", "XXXXX", "...X.", "...X."}},
      {'5', {"XXXXX", "X....", "XXXX.", "....X", "....X", "X...X", ".XXX."}},
      {'6', {"..XX.", ".X...", "X....", "XXXX.", "X...X", "X...X", ".XXX."}},
      {'7', {"XXXXX", "....X", "...X.", "..X..", ".X...", ".X...", ".X..."}},
      {'8', {".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."}},
      {'9', {".XXX.", "X...X", "X...X", ".XXXX", "....X", "...X.", ".XX.."}},
  };
  return font;
}

void check_wifi(const Scene& s) {
  if (s.kind != SceneKind::WifiArcs) throw BadParams("scene is not wifi_arcs");
  if (s.radii.empty()) throw BadParams("wifi_arcs needs at least one radius");
  for (double r : s.radii)
    if (!(r > 0.0)) throw BadParams("wifi_arcs radii must be positive");
  if (!(s.theta1 > s.theta0) || s.theta1 - s.theta0 > 2.0 * M_PI)
    throw BadParams("wifi_arcs angular span");
  if (!(s.half_width > 0.0)) throw BadParams("wifi_arcs band half-width");
  if (s.center.size() != 2) throw BadParams("wifi_arcs center must be 2-D");
}

Point gauss2(const Point& mean, double sigma, Rng& rng) {
  return {mean[0] + sigma * rng.normal(), mean[1] + sigma * rng.normal()};
}

}  // namespace

std::string scene_kind_name(SceneKind k) {
  switch (k) {
    case SceneKind::Gaussian: return "gaussian";
    case SceneKind::WifiArcs: return "wifi_arcs";
    case SceneKind::AcceptText: return "accept_text";
    case SceneKind::SwissRoll: return "swiss_roll";
    case SceneKind::Ball: return "ball";
    case SceneKind::Annulus: return "annulus";
    case SceneKind::Triangle: return "triangle";
  }
  throw UnknownScene("bad kind");
}

SceneKind scene_kind_from_name(const std::string& name) {
  if (name == "gaussian") return SceneKind::Gaussian;
  if (name == "wifi_arcs") return SceneKind::WifiArcs;
  if (name == "accept_text") return SceneKind::AcceptText;
  if (name == "swiss_roll") return SceneKind::SwissRoll;
  if (name == "ball") return SceneKind::Ball;
  if (name == "annulus") return SceneKind::Annulus;
  if (name == "triangle") return SceneKind::Triangle;
  throw UnknownScene(name);
}

Scene Scene::gaussian(Point mean, double sigma, std::uint64_t seed) {
  if (mean.size() != 2) throw BadParams("gaussian scene is 2-D");
  if (!(sigma > 0.0)) throw BadParams("gaussian sigma must be positive");
  Scene s;
  s.kind = SceneKind::Gaussian;
  s.mean = std::move(mean);
  s.sigma = sigma;
  s.seed = seed;
  return s;
}

Scene Scene::wifi_arcs(std::uint64_t seed) {
  Scene s;
  s.kind = SceneKind::WifiArcs;
  s.seed = seed;
  return s;
}

Scene Scene::accept_text(std::string l1, std::string l2, std::uint64_t seed) {
  Scene s;
  s.kind = SceneKind::AcceptText;
  s.line1 = std::move(l1);
  s.line2 = std::move(l2);
  s.seed = seed;
  if (accept_pixel_centers(s).empty()) throw BadParams("accept_text rasterizes to nothing");
  return s;
}

Scene Scene::swiss_roll(std::uint64_t seed) {
  Scene s;
  s.kind = SceneKind::SwissRoll;
  s.seed = seed;
  return s;
}

Scene Scene::ball(double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw BadParams("ball radius must be positive");
  Scene s;
  s.kind = SceneKind::Ball;
  s.radius = radius;
  s.seed = seed;
  return s;
}

Scene Scene::annulus(double r_inner, double r_outer, std::uint64_t seed) {
  if (!(0.0 <= r_inner && r_inner < r_outer)) throw BadParams("annulus radii");
  Scene s;
  s.kind = SceneKind::Annulus;
  s.r_inner = r_inner;
  s.r_outer = r_outer;
  s.seed = seed;
  return s;
}

Scene Scene::triangle(std::uint64_t seed) {
  Scene s;
  s.kind = SceneKind::Triangle;
  s.seed = seed;
  return s;
}

std::vector<Point> accept_pixel_centers(const Scene& scene) {
  const auto& font = font5x7();
  const std::string lines[2] = {scene.line1, scene.line2};
  const std::size_t max_len = std::max(scene.line1.size(), scene.line2.size());
  if (max_len == 0) throw BadParams("accept_text needs non-empty text");
  const double glyph_w = 6.0;  // 5 columns + 1 spacing
  const double total_w = (glyph_w * max_len - 1.0) * scene.pixel;
  const double line_h = 7.0 * scene.pixel;
  const double gap = scene.line_gap * scene.pixel;

  std::vector<Point> centers;
  for (int line = 0; line < 2; ++line) {
    const std::string& text = lines[line];
    const double x0 = scene.text_center[0] - 0.5 * (glyph_w * text.size() - 1.0) * scene.pixel;
    // line 0 sits above the center, line 1 below
    const double y_top = scene.text_center[1] + (line == 0 ? gap / 2.0 + line_h : -gap / 2.0);
    for (std::size_t ci = 0; ci < text.size(); ++ci) {
      const char ch = std::toupper(static_cast<unsigned char>(text[ci]));
      const auto it = font.find(ch);
      if (it == font.end()) throw BadParams(std::string("no glyph for '") + ch + "'");
      for (int row = 0; row < 7; ++row)
        for (int col = 0; col < 5; ++col)
          if (it->second[row][col] == 'X')
            centers.push_back({x0 + (glyph_w * ci + col + 0.5) * scene.pixel,
                               y_top - (row + 0.5) * scene.pixel});
    }
  }
  (void)total_w;
  return centers;
}

bool accept_contains(const Scene& scene, const Point& x) {
  const std::vector<Point> centers = accept_pixel_centers(scene);
  const double h = scene.pixel / 2.0 + 1e-12;
  for (const Point& c : centers)
    if (std::fabs(x[0] - c[0]) <= h && std::fabs(x[1] - c[1]) <= h) return true;
  return false;
}

std::vector<double> arc_mass_fractions(const Scene& wifi) {
  check_wifi(wifi);
  std::vector<double> f(wifi.radii.begin(), wifi.radii.end());
  double total = 0.0;
  for (double r : f) total += r;
  for (double& r : f) r /= total;
  return f;
}

Point sample_one(const Scene& scene, Rng& rng) {
  switch (scene.kind) {
    case SceneKind::Gaussian:
      return gauss2(scene.mean, scene.sigma, rng);
    case SceneKind::WifiArcs: {
      check_wifi(scene);
      const std::vector<double> frac = arc_mass_fractions(scene);
      const double u = rng.uniform();
      std::size_t k = 0;
      double acc = 0.0;
      for (; k + 1 < frac.size(); ++k) {
        acc += frac[k];
        if (u < acc) break;
      }
      const double theta = rng.uniform(scene.theta0, scene.theta1);
      const double r = scene.radii[k] + rng.uniform(-scene.half_width, scene.half_width);
      return {scene.center[0] + r * std::cos(theta), scene.center[1] + r * std::sin(theta)};
    }
    case SceneKind::AcceptText: {
      // Cached per call site via sample(); here recompute (cheap at toy sizes).
      const std::vector<Point> centers = accept_pixel_centers(scene);
      const int k = rng.uniform_int(0, static_cast<int>(centers.size()) - 1);
      const double h = scene.pixel / 2.0;
      return {centers[k][0] + rng.uniform(-h, h), centers[k][1] + rng.uniform(-h, h)};
    }
    case SceneKind::SwissRoll: {
      const double t1 = scene.roll_t1;
      const double speed_max = std::sqrt(1.0 + t1 * t1);
      double t;
      do {
        t = rng.uniform(scene.roll_t0, scene.roll_t1);
      } while (rng.uniform() * speed_max > std::sqrt(1.0 + t * t));
      const double r = scene.roll_rmax * t / t1;
      Point p = {r * std::cos(t), r * std::sin(t)};
      if (scene.roll_noise > 0.0) {
        p[0] += scene.roll_noise * rng.normal();
        p[1] += scene.roll_noise * rng.normal();
      }
      return p;
    }
    case SceneKind::Ball: {
      const double r = scene.radius * std::sqrt(rng.uniform());
      const double a = rng.uniform(0.0, 2.0 * M_PI);
      return {r * std::cos(a), r * std::sin(a)};
    }
    case SceneKind::Annulus: {
      const double u = rng.uniform();
      const double r2 = scene.r_inner * scene.r_inner +
                        u * (scene.r_outer * scene.r_outer - scene.r_inner * scene.r_inner);
      const double r = std::sqrt(r2);
      const double a = rng.uniform(0.0, 2.0 * M_PI);
      return {r * std::cos(a), r * std::sin(a)};
    }
    case SceneKind::Triangle: {
      const int k = rng.uniform_int(0, 2);
      const double a = M_PI / 2.0 + k * 2.0 * M_PI / 3.0;
      const Point v = {scene.tri_radius * std::cos(a), scene.tri_radius * std::sin(a)};
      return gauss2(v, scene.tri_sigma, rng);
    }
  }
  throw UnknownScene("bad kind");
}

std::vector<Point> sample(const Scene& scene, int n) {
  if (n < 1) throw BadParams("sample needs n >= 1");
  Rng rng(scene.seed);
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sample_one(scene, rng));
  return out;
}

Point swiss2ball_et_map(const Point& x, double r) {
  if (x.size() != 2) throw DimensionMismatch("swiss2ball_et_map is 2-D");
  if (!(r > 0.0)) throw BadParams("swiss2ball_et_map radius");
  const double norm = std::hypot(x[0], x[1]);
  if (norm <= r) return x;
  const double s = r / norm;
  return {x[0] * s, x[1] * s};
}

double arc_distance(const Point& x, const Scene& wifi, int k) {
  check_wifi(wifi);
  if (k < 0 || k >= static_cast<int>(wifi.radii.size())) throw BadParams("arc index");
  const double dx = x[0] - wifi.center[0];
  const double dy = x[1] - wifi.center[1];
  const double r = std::hypot(dx, dy);
  const double phi = std::atan2(dy, dx);
  const double rad = wifi.radii[k];
  if (phi >= wifi.theta0 && phi <= wifi.theta1) return std::fabs(r - rad);
  const auto endpoint_dist = [&](double theta) {
    const double ex = wifi.center[0] + rad * std::cos(theta);
    const double ey = wifi.center[1] + rad * std::sin(theta);
    return std::hypot(x[0] - ex, x[1] - ey);
  };
  return std::min(endpoint_dist(wifi.theta0), endpoint_dist(wifi.theta1));
}

int arc_membership(const Point& x, const Scene& wifi, double eps) {
  check_wifi(wifi);
  int best = -1;
  double best_d = eps;
  for (int k = 0; k < static_cast<int>(wifi.radii.size()); ++k) {
    const double d = arc_distance(x, wifi, k);
    if (d <= best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::string scene_to_json(const Scene& s) {
  nlohmann::json j;
  j["name"] = scene_kind_name(s.kind);
  j["seed"] = s.seed;
  switch (s.kind) {
    case SceneKind::Gaussian:
      j["mean"] = s.mean;
      j["sigma"] = s.sigma;
      break;
    case SceneKind::WifiArcs:
      j["center"] = s.center;
      j["radii"] = s.radii;
      j["theta0"] = s.theta0;
      j["theta1"] = s.theta1;
      j["half_width"] = s.half_width;
      break;
    case SceneKind::AcceptText:
      j["line1"] = s.line1;
      j["line2"] = s.line2;
      j["pixel"] = s.pixel;
      j["text_center"] = s.text_center;
      j["line_gap"] = s.line_gap;
      break;
    case SceneKind::SwissRoll:
      j["rmax"] = s.roll_rmax;
      j["t0"] = s.roll_t0;
      j["t1"] = s.roll_t1;
      j["noise"] = s.roll_noise;
      break;
    case SceneKind::Ball:
      j["radius"] = s.radius;
      break;
    case SceneKind::Annulus:
      j["r_inner"] = s.r_inner;
      j["r_outer"] = s.r_outer;
      break;
    case SceneKind::Triangle:
      j["tri_radius"] = s.tri_radius;
      j["tri_sigma"] = s.tri_sigma;
      break;
  }
  return j.dump();
}

Scene scene_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadParams(std::string("scene json: ") + e.what());
  }
  Scene s;
  s.kind = scene_kind_from_name(j.at("name").get<std::string>());
  s.seed = j.value("seed", 0ULL);
  switch (s.kind) {
    case SceneKind::Gaussian:
      s.mean = j.value("mean", s.mean);
      s.sigma = j.value("sigma", s.sigma);
      break;
    case SceneKind::WifiArcs:
      s.center = j.value("center", s.center);
      s.radii = j.value("radii", s.radii);
      s.theta0 = j.value("theta0", s.theta0);
      s.theta1 = j.value("theta1", s.theta1);
      s.half_width = j.value("half_width", s.half_width);
      break;
    case SceneKind::AcceptText:
      s.line1 = j.value("line1", s.line1);
      s.line2 = j.value("line2", s.line2);
      s.pixel = j.value("pixel", s.pixel);
      s.text_center = j.value("text_center", s.text_center);
      s.line_gap = j.value("line_gap", s.line_gap);
      break;
    case SceneKind::SwissRoll:
      s.roll_rmax = j.value("rmax", s.roll_rmax);
      s.roll_t0 = j.value("t0", s.roll_t0);
      s.roll_t1 = j.value("t1", s.roll_t1);
      s.roll_noise = j.value("noise", s.roll_noise);
      break;
    case SceneKind::Ball:
      s.radius = j.value("radius", s.radius);
      break;
    case SceneKind::Annulus:
      s.r_inner = j.value("r_inner", s.r_inner);
      s.r_outer = j.value("r_outer", s.r_outer);
      break;
    case SceneKind::Triangle:
      s.tri_radius = j.value("tri_radius", s.tri_radius);
      s.tri_sigma = j.value("tri_sigma", s.tri_sigma);
      break;
  }
  return s;
}

ScenePair named_scene_pair(const std::string& name, std::uint64_t seed) {
  if (name == "wifi")
    return {Scene::gaussian({0.0, 2.0}, 0.2, seed), Scene::wifi_arcs(seed + 1)};
  if (name == "accept")
    return {Scene::gaussian({0.0, 1.2}, 0.2, seed), Scene::accept_text("ACCEPT", "ACCEPT", seed + 1)};
  if (name == "swiss2ball")
    return {Scene::swiss_roll(seed), Scene::ball(0.5, seed + 1)};
  if (name == "ball2circle")
    return {Scene::ball(0.5, seed), Scene::annulus(0.75, 1.0, seed + 1)};
  if (name == "triangle")
    return {Scene::gaussian({0.0, 0.0}, 0.15, seed), Scene::triangle(seed + 1)};
  throw UnknownScene(name + " (expected wifi, accept, swiss2ball, ball2circle or triangle)");
}

}  // namespace itx
