#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dsamp {

/// A via modelled as a disk; coordinates are in nanometers.
struct Via {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Via &) const = default;
};

/// Ordered vias of a single layer with a uniform diameter.
///
/// Construction validates the invariants: ids are 0..n-1 in order, no two
/// vias share coordinates and the diameter is positive.
class Layout {
public:
  Layout() = default;
  Layout(std::vector<Via> vias, double diameter,
         std::optional<std::uint64_t> seed = std::nullopt);

  /// Builds a layout from bare coordinates, assigning ids in order.
  static Layout from_points(const std::vector<std::pair<double, double>> &xy,
                            double diameter,
                            std::optional<std::uint64_t> seed = std::nullopt);

  const std::vector<Via> &vias() const { return vias_; }
  const Via &operator[](std::size_t i) const { return vias_[i]; }
  std::size_t size() const { return vias_.size(); }
  bool empty() const { return vias_.empty(); }
  double diameter() const { return diameter_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  bool operator==(const Layout &) const = default;

private:
  std::vector<Via> vias_;
  double diameter_ = 10.0;
  std::optional<std::uint64_t> seed_;
};

enum class Tech { Axis193i, EuvAngle, Unrestricted };

std::string to_string(Tech t);
Tech parse_tech(const std::string &s);

/// Technology parameters shared by graph construction, group enumeration
/// and the formulations. Defaults are the 193i experimental setting.
struct TechRules {
  double litho_dist = 31.0; // border to border
  double l0 = 20.0;         // center to center
  double u0 = 40.0;
  Tech tech = Tech::Axis193i;
  double angle_min_deg = 135.0;
  double angle_max_deg = 225.0;
  int k_max = 3;
  int color_bound = 5;
  // Conflicts at exactly litho_dist count when set.
  bool inclusive_conflict = false;
  // Only consulted for Tech::Unrestricted; the other technologies already
  // exclude right-angle bends through their own filters.
  bool forbid_l_shapes = false;

  void validate() const;
};

enum class LayoutFormat { PointList, GeneratedManifest };

Layout load_layout(const std::filesystem::path &path,
                   LayoutFormat format = LayoutFormat::PointList);
Layout parse_layout(std::istream &in,
                    LayoutFormat format = LayoutFormat::PointList);
void write_layout(std::ostream &out, const Layout &layout);
void save_layout(const std::filesystem::path &path, const Layout &layout);

/// Formats a coordinate with at most three decimals and no trailing zeros.
std::string format_coord(double v);

double center_distance(const Via &a, const Via &b);

/// max(0, |a - b| - diameter) for two disks of the same diameter.
double border_distance(const Via &a, const Via &b, double diameter);

/// Smallest center-to-center distance over all pairs (infinity for < 2 vias).
double min_center_distance(const Layout &layout);

/// Uniformly rescales the layout so the minimum border-to-border distance
/// and the diameter both equal `target_pitch`.
Layout rescale_to_pitch(const Layout &layout, double target_pitch);

/// Random grid-snapped layout whose conflict density |E|/|V| under `rules`
/// approximates `density_target`. Deterministic in (n, density_target, seed).
Layout generate_random_layout(std::size_t n, double density_target,
                              std::uint64_t seed, const TechRules &rules = {},
                              double diameter = 10.0);

/// Single connected cluster of n vias grown outward one via at a time, each
/// placed within conflict reach of an existing via and chosen so the running
/// |E|/|V| stays near `density_target`. Deterministic in (n, target, seed).
Layout generate_cluster_layout(std::size_t n, double density_target,
                               std::uint64_t seed, const TechRules &rules = {},
                               double diameter = 10.0);

namespace tol {
inline constexpr double kRelative = 1e-9;
inline constexpr double kAxis = 1e-6; // nm
inline constexpr double kAngleRad = 1e-6;

bool less(double a, double b);
bool less_equal(double a, double b);
} // namespace tol

} // namespace dsamp
