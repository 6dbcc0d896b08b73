#pragma once

#include <string>
#include <vector>

#include "itx/measures.hpp"
#include "itx/rng.hpp"

// Seeded 2-D scene generators: a Gaussian blob, three concentric arcs, a
// rasterized two-line text, a swiss roll, a uniform ball/annulus and a
// three-blob triangle. Sampling is a pure function of (scene, seed, n).
namespace itx {

enum class SceneKind { Gaussian, WifiArcs, AcceptText, SwissRoll, Ball, Annulus, Triangle };

std::string scene_kind_name(SceneKind k);
SceneKind scene_kind_from_name(const std::string& name);

struct Scene {
  SceneKind kind = SceneKind::Gaussian;
  std::uint64_t seed = 0;

  // gaussian
  Point mean = {0.0, 0.0};
  double sigma = 1.0;

  // wifi_arcs: concentric arc bands, mass per arc proportional to the
  // centerline length radius * (theta1 - theta0).
  Point center = {0.0, 0.0};
  std::vector<double> radii = {0.6, 1.0, 1.4};
  double theta0 = M_PI / 4.0;
  double theta1 = 3.0 * M_PI / 4.0;
  double half_width = 0.05;

  // accept_text: two lines rasterized with the embedded 5x7 font, each
  // sample uniform inside a random lit pixel cell.
  std::string line1 = "ACCEPT";
  std::string line2 = "ACCEPT";
  double pixel = 0.05;
  Point text_center = {0.0, 0.0};
  double line_gap = 3.0;  // in pixel rows

  // swiss_roll: radius grows linearly with angle t in [t0, t1], uniform
  // along arc length, optional isotropic noise.
  double roll_rmax = 1.0;
  double roll_t0 = 1.5 * M_PI;
  double roll_t1 = 4.5 * M_PI;
  double roll_noise = 0.0;

  // ball / annulus (area-uniform)
  double radius = 0.5;
  double r_inner = 0.75;
  double r_outer = 1.0;

  // triangle: three gaussian blobs at the vertices of an equilateral
  // triangle inscribed in a circle.
  double tri_radius = 1.0;
  double tri_sigma = 0.1;

  static Scene gaussian(Point mean, double sigma, std::uint64_t seed);
  static Scene wifi_arcs(std::uint64_t seed);
  static Scene accept_text(std::string l1, std::string l2, std::uint64_t seed);
  static Scene swiss_roll(std::uint64_t seed);
  static Scene ball(double radius, std::uint64_t seed);
  static Scene annulus(double r_inner, double r_outer, std::uint64_t seed);
  static Scene triangle(std::uint64_t seed);
};

// Draws one point, advancing the supplied stream.
Point sample_one(const Scene& scene, Rng& rng);

// n i.i.d. points from a fresh stream seeded with scene.seed.
std::vector<Point> sample(const Scene& scene, int n);

// Identity inside the closed ball of radius R, radial projection onto the
// sphere of radius R outside.
Point swiss2ball_et_map(const Point& x, double r);

// Index of the arc whose band contains x within eps, or -1. Distance is
// measured to the arc centerline, respecting the angular span.
int arc_membership(const Point& x, const Scene& wifi, double eps);

// Distance from x to arc k's centerline (used by the membership test).
double arc_distance(const Point& x, const Scene& wifi, int k);

// Relative centerline lengths of the arcs (sampling probabilities).
std::vector<double> arc_mass_fractions(const Scene& wifi);

// Lit-pixel centers of the rasterized text (unit mass spread uniformly).
std::vector<Point> accept_pixel_centers(const Scene& scene);
bool accept_contains(const Scene& scene, const Point& x);

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

// The experiment pairs used by the command-line runner:
//   wifi       gaussian above the arcs -> three arcs
//   accept     gaussian above the text -> two-line text
//   swiss2ball swiss roll -> uniform ball (closed-form reference map)
//   ball2circle uniform ball -> annulus around it
//   triangle   gaussian at the center -> three vertex blobs
struct ScenePair {
  Scene p;
  Scene q;
};
ScenePair named_scene_pair(const std::string& name, std::uint64_t seed);

}  // namespace itx
