#include "dsamp/error.hpp"

#include <sstream>

namespace dsamp {

namespace {

std::string join_ids(const std::vector<int> &ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i)
    os << (i ? ", " : "") << ids[i];
  return os.str();
}

} // namespace

DuplicateViaError::DuplicateViaError(std::vector<int> ids)
    : Error("duplicate via coordinates for ids " + join_ids(ids)),
      ids_(std::move(ids)) {}

DensityUnreachable::DensityUnreachable(double target, double achieved)
    : Error("density target " + std::to_string(target) +
            " unreachable, achieved " + std::to_string(achieved)),
      achieved_(achieved) {}

CatalogTooLarge::CatalogTooLarge(std::size_t count, int worst_vertex,
                                 std::size_t worst_count)
    : Error("group catalog exceeds cap: " + std::to_string(count) +
            " groups, vertex " + std::to_string(worst_vertex) + " is in " +
            std::to_string(worst_count)),
      count_(count), worst_vertex_(worst_vertex) {}

ModelTooLarge::ModelTooLarge(std::size_t variables, std::size_t cap)
    : Error("model needs " + std::to_string(variables) +
            " variables, cap is " + std::to_string(cap)),
      variables_(variables), cap_(cap) {}

Infeasible::Infeasible(int color_bound, int lower_bound)
    : Error("no coloring with at most " + std::to_string(color_bound) +
            " colors (lower bound " + std::to_string(lower_bound) + ")"),
      color_bound_(color_bound) {}

static std::string join_names(const std::vector<std::string> &names) {
  std::string out;
  for (std::size_t i = 0; i < names.size() && i < 20; ++i)
    out += (i ? " " : "") + names[i];
  if (names.size() > 20)
    out += " ...";
  return out;
}

MissingVariables::MissingVariables(std::vector<std::string> names)
    : Error("assignment misses variables: " + join_names(names)),
      names_(std::move(names)) {}

} // namespace dsamp
